//! Simple loop-free digraphs and the reachability and connectivity
//! primitives shared by every solver.

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::set::VertexSet;

/// A simple digraph on vertices `0..n` with sorted in- and out-adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    arcs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Follow arcs tail to head.
    Forward,
    /// Follow arcs head to tail.
    Backward,
}

/// A strongly connected component and whether it carries a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: VertexSet,
    pub cyclic: bool,
}

/// Index correspondence between a graph and one of its induced subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    /// `to_old[new]` is the host vertex behind subgraph vertex `new`.
    pub to_old: Vec<usize>,
    /// `to_new[old]` is the subgraph vertex for host vertex `old`, if kept.
    pub to_new: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.to_new.len(), set.iter().map(|v| self.to_old[v]))
    }

    pub fn restrict(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.to_old.len(), set.iter().filter_map(|v| self.to_new[v]))
    }
}

impl DirectedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        DirectedGraph { out_adj: vec![Vec::new(); n], in_adj: vec![Vec::new(); n], arcs: 0 }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = DirectedGraph::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.out_adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateArc(u, v)),
            Err(pos) => self.out_adj[u].insert(pos, v),
        }
        let pos = self.in_adj[v].binary_search(&u).unwrap_err();
        self.in_adj[v].insert(pos, u);
        self.arcs += 1;
        Ok(())
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        self.out_adj.len() - 1
    }

    /// Bidirected digraph modelling an undirected graph: each edge `{u,v}`
    /// becomes the two arcs `(u,v)` and `(v,u)`.
    pub fn to_bidirected<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = DirectedGraph::new(n);
        for (u, v) in edges {
            g.add_arc(u, v)?;
            g.add_arc(v, u)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.in_degree(v) + self.out_degree(v)
    }

    /// Maximum over vertices of in-degree plus out-degree (0 when empty).
    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// All arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj.iter().enumerate().flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn reverse(&self) -> DirectedGraph {
        DirectedGraph { out_adj: self.in_adj.clone(), in_adj: self.out_adj.clone(), arcs: self.arcs }
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.in_degree(v) == 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.out_degree(v) == 0).collect()
    }

    /// Vertices reachable from `seeds` (forward) or reaching them (backward).
    pub fn reach(&self, seeds: &VertexSet, direction: Direction) -> VertexSet {
        self.reach_avoiding(seeds, direction, &VertexSet::new(self.n()))
    }

    /// Reachability in `G - blocked`; seeds inside `blocked` are ignored.
    pub fn reach_avoiding(&self, seeds: &VertexSet, direction: Direction, blocked: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n());
        let mut queue = VecDeque::new();
        for v in seeds {
            if !blocked.contains(v) && seen.insert(v) {
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            let next = match direction {
                Direction::Forward => &self.out_adj[u],
                Direction::Backward => &self.in_adj[u],
            };
            for &w in next {
                if !blocked.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Strongly connected components via an iterative Tarjan traversal,
    /// ordered by smallest member.
    pub fn strongly_connected_components(&self) -> Vec<Component> {
        const UNVISITED: usize = usize::MAX;
        let n = self.n();
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut counter = 0;
        // (vertex, position in its out-list)
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            call.push((root, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if let Some(&w) = self.out_adj[v].get(*pos) {
                    *pos += 1;
                    if index[w] == UNVISITED {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut members = VertexSet::new(n);
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        members.insert(w);
                        if w == v {
                            break;
                        }
                    }
                    let cyclic = members.len() >= 2;
                    components.push(Component { vertices: members, cyclic });
                }
            }
        }
        components.sort_by_key(|c| c.vertices.iter().next());
        components
    }

    /// Components of the underlying undirected graph, ordered by smallest member.
    pub fn weakly_connected_components(&self) -> Vec<VertexSet> {
        self.weak_components_within(&self.vertices())
    }

    /// Weak components of `G[within]`.
    pub fn weak_components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = VertexSet::new(n);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for root in within {
            if !seen.insert(root) {
                continue;
            }
            let mut comp = VertexSet::new(n);
            comp.insert(root);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in self.out_adj[u].iter().chain(&self.in_adj[u]) {
                    if within.contains(w) && seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// `G[keep]` with vertices renumbered in increasing order of host id.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (DirectedGraph, VertexMap) {
        let to_old: Vec<usize> = keep.to_vec();
        let mut to_new = vec![None; self.n()];
        for (new, &old) in to_old.iter().enumerate() {
            to_new[old] = Some(new);
        }
        let mut g = DirectedGraph::new(to_old.len());
        for (new_u, &old_u) in to_old.iter().enumerate() {
            for &old_v in &self.out_adj[old_u] {
                if let Some(new_v) = to_new[old_v] {
                    g.out_adj[new_u].push(new_v);
                    g.in_adj[new_v].push(new_u);
                    g.arcs += 1;
                }
            }
        }
        // renumbering is monotone, so pushes in tail order keep in-lists sorted
        (g, VertexMap { to_old, to_new })
    }

    /// In-degree of `v` inside `G[within]`.
    pub fn in_degree_within(&self, v: usize, within: &VertexSet) -> usize {
        self.in_adj[v].iter().filter(|&&u| within.contains(u)).count()
    }

    pub fn out_degree_within(&self, v: usize, within: &VertexSet) -> usize {
        self.out_adj[v].iter().filter(|&&u| within.contains(u)).count()
    }

    /// A topological order, or the vertices of some directed cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>, Vec<usize>> {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &self.out_adj[u] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        let cyclic = self
            .strongly_connected_components()
            .into_iter()
            .find(|c| c.cyclic)
            .expect("leftover vertices imply a cycle");
        Err(self.cycle_in(&cyclic.vertices))
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    // Walks successors inside a strongly connected set until a vertex repeats.
    fn cycle_in(&self, scc: &VertexSet) -> Vec<usize> {
        let start = scc.iter().next().expect("nonempty component");
        let mut pos = vec![usize::MAX; self.n()];
        let mut walk = Vec::new();
        let mut v = start;
        loop {
            if pos[v] != usize::MAX {
                return walk.split_off(pos[v]);
            }
            pos[v] = walk.len();
            walk.push(v);
            v = *self.out_adj[v].iter().find(|&&w| scc.contains(w)).expect("cyclic component has internal successors");
        }
    }
}
