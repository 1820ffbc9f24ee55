//! Unit-capacity vertex cuts via augmenting paths on the split graph.

use std::collections::VecDeque;

use crate::graph::DirectedGraph;
use crate::set::VertexSet;

const INF: u32 = u32::MAX / 4;

struct Edge {
    to: usize,
    cap: u32,
}

struct Network {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { edges: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0 });
    }

    // One BFS augmentation; returns the bottleneck pushed, or 0.
    fn augment(&mut self, source: usize, sink: usize) -> u32 {
        let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &e in &self.adj[u] {
                let to = self.edges[e].to;
                if self.edges[e].cap > 0 && !seen[to] {
                    seen[to] = true;
                    pred[to] = Some(e);
                    queue.push_back(to);
                }
            }
        }
        if !seen[sink] {
            return 0;
        }
        let mut bottleneck = INF;
        let mut v = sink;
        while let Some(e) = pred[v] {
            bottleneck = bottleneck.min(self.edges[e].cap);
            v = self.edges[e ^ 1].to;
        }
        let mut v = sink;
        while let Some(e) = pred[v] {
            self.edges[e].cap -= bottleneck;
            self.edges[e ^ 1].cap += bottleneck;
            v = self.edges[e ^ 1].to;
        }
        bottleneck
    }

    // Nodes that can still reach `sink` through positive residual capacity.
    fn co_reachable(&self, sink: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[sink] = true;
        let mut queue = VecDeque::from([sink]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                // edge e: v -> u; its twin u -> v has residual cap edges[e^1].cap
                let u = self.edges[e].to;
                if self.edges[e ^ 1].cap > 0 && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// A minimum vertex cut separating `from` from `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCut {
    pub size: usize,
    /// The minimum cut whose `from` side is as large as possible.
    pub furthest: VertexSet,
}

/// Minimum number of vertices outside `from ∪ to ∪ removed` whose deletion
/// leaves no `from`→`to` path in `g - removed`.
///
/// Returns `None` when that number exceeds `limit`, including the case of
/// an arc running directly from `from` into `to`.
pub fn min_vertex_cut(
    g: &DirectedGraph,
    from: &VertexSet,
    to: &VertexSet,
    removed: &VertexSet,
    limit: usize,
) -> Option<VertexCut> {
    let n = g.n();
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut net = Network::new(2 * n + 2);
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| 2 * v + 1;
    for v in 0..n {
        if removed.contains(v) {
            continue;
        }
        let terminal = from.contains(v) || to.contains(v);
        net.add(node_in(v), node_out(v), if terminal { INF } else { 1 });
        for &w in g.out_neighbors(v) {
            if !removed.contains(w) {
                net.add(node_out(v), node_in(w), INF);
            }
        }
        if from.contains(v) {
            net.add(source, node_in(v), INF);
        }
        if to.contains(v) {
            net.add(node_out(v), sink, INF);
        }
    }
    let mut flow: u64 = 0;
    loop {
        let pushed = net.augment(source, sink);
        if pushed == 0 {
            break;
        }
        flow += u64::from(pushed);
        if flow > limit as u64 {
            return None;
        }
    }
    let sink_side = net.co_reachable(sink);
    let mut furthest = VertexSet::new(n);
    for v in 0..n {
        if !removed.contains(v) && !sink_side[node_in(v)] && sink_side[node_out(v)] {
            furthest.insert(v);
        }
    }
    debug_assert_eq!(furthest.len() as u64, flow);
    Some(VertexCut { size: flow as usize, furthest })
}
