//! Instance generators for three hardness constructions. Each maps a
//! source problem to a DAG instance that is YES exactly when the source
//! is, which makes them a ground-truth corpus for the solvers.

use crate::engine::Instance;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// CNF formula over variables `1..=num_vars`; literal `-i` negates `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

/// Sets over the elements `0..universe` and a budget on how many to pick.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub universe: usize,
    /// Sorted element lists.
    pub sets: Vec<Vec<usize>>,
    pub budget: usize,
}

/// Simple undirected graph; edges stored as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A generated instance with one human-readable name per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub instance: Instance,
    pub labels: Vec<String>,
}

struct Builder {
    graph: DirectedGraph,
    labels: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder { graph: DirectedGraph::new(0), labels: Vec::new() }
    }

    fn vertex(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.graph.add_vertex()
    }

    fn arc(&mut self, u: usize, v: usize) {
        self.graph.add_arc(u, v).expect("generator arcs are simple");
    }

    fn finish(self, b: usize, k: usize, p: usize) -> Generated {
        Generated { instance: Instance::new(self.graph, b, k, p), labels: self.labels }
    }
}

impl CnfFormula {
    /// At most 3 literals per clause, no repeated literal, and every
    /// variable in at most 3 clauses with at most 2 per polarity.
    pub fn validate(&self) -> Result<()> {
        let mut pos = vec![0usize; self.num_vars + 1];
        let mut neg = vec![0usize; self.num_vars + 1];
        for (j, clause) in self.clauses.iter().enumerate() {
            if clause.len() > 3 {
                return Err(Error::InvalidSource(format!("clause {} has {} literals", j + 1, clause.len())));
            }
            for (a, &lit) in clause.iter().enumerate() {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > self.num_vars {
                    return Err(Error::InvalidSource(format!("clause {} has bad literal {lit}", j + 1)));
                }
                if clause[..a].contains(&lit) {
                    return Err(Error::InvalidSource(format!("clause {} repeats literal {lit}", j + 1)));
                }
                if lit > 0 {
                    pos[var] += 1;
                } else {
                    neg[var] += 1;
                }
            }
        }
        for var in 1..=self.num_vars {
            if pos[var] > 2 || neg[var] > 2 {
                return Err(Error::InvalidSource(format!("variable x{var} used more than twice with one sign")));
            }
            if pos[var] + neg[var] > 3 {
                return Err(Error::InvalidSource(format!("variable x{var} occurs more than 3 times")));
            }
        }
        Ok(())
    }
}

/// Variable gadgets `x_i, x̄_i -> r_i` with `k-1` helpers `Y_i` on `r_i`,
/// each fed by `k` sources (`Z_i`); clause gadgets `v_j` fed by their
/// literals and by `k-1` helpers `U_j`, each fed by `k` sources (`W_j`).
pub fn gen_from_sat(f: &CnfFormula, k: usize) -> Result<Generated> {
    if k == 0 {
        return Err(Error::InvalidSource("k must be at least 1".into()));
    }
    f.validate()?;
    let (n, m) = (f.num_vars, f.clauses.len());
    let mut gb = Builder::new();
    let mut pos = Vec::with_capacity(n);
    let mut neg = Vec::with_capacity(n);
    for i in 1..=n {
        let x = gb.vertex(format!("x{i}"));
        let nx = gb.vertex(format!("~x{i}"));
        let r = gb.vertex(format!("r{i}"));
        gb.arc(x, r);
        gb.arc(nx, r);
        feeders(&mut gb, r, k, &format!("y{i}"), &format!("z{i}"));
        pos.push(x);
        neg.push(nx);
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let v = gb.vertex(format!("c{}", j + 1));
        for &lit in clause {
            let var = lit.unsigned_abs() as usize - 1;
            gb.arc(if lit > 0 { pos[var] } else { neg[var] }, v);
        }
        feeders(&mut gb, v, k, &format!("u{}", j + 1), &format!("w{}", j + 1));
    }
    let b = n * (k * (k - 1) + 1) + m * k * (k - 1);
    let p = n * ((k + 1) * (k - 1) + 2) + m * ((k + 1) * (k - 1) + 1);
    Ok(gb.finish(b, k, p))
}

// k-1 helpers into `target`, each with k private sources.
fn feeders(gb: &mut Builder, target: usize, k: usize, helper: &str, source: &str) {
    for h in 1..k {
        let y = gb.vertex(format!("{helper}#{h}"));
        gb.arc(y, target);
        for s in 1..=k {
            let z = gb.vertex(format!("{source}#{h}.{s}"));
            gb.arc(z, y);
        }
    }
}

/// Branch vertices, one sink `w_uv` per edge fed by both ends, and `k-2`
/// extra sources feeding every `w_uv`. Anchors `b + k - 2`, target
/// `b(b+1)/2 + k - 2`.
pub fn gen_from_clique(g: &UndirectedGraph, b: usize, k: usize) -> Result<Generated> {
    if b == 0 {
        return Err(Error::InvalidSource("clique size must be positive".into()));
    }
    if k < 2 {
        return Err(Error::InvalidSource("clique construction needs k >= 2".into()));
    }
    let mut gb = Builder::new();
    for v in 1..=g.n {
        gb.vertex(format!("v{v}"));
    }
    let mut subdivisions = Vec::with_capacity(g.edges.len());
    for &(u, v) in &g.edges {
        if u == v || u >= g.n || v >= g.n {
            return Err(Error::InvalidSource(format!("bad edge {{{}, {}}}", u + 1, v + 1)));
        }
        let w = gb.vertex(format!("w_{{{},{}}}", u + 1, v + 1));
        gb.graph.add_arc(u, w).map_err(|_| Error::InvalidSource("duplicate edge".into()))?;
        gb.arc(v, w);
        subdivisions.push(w);
    }
    for i in 1..=k - 2 {
        let z = gb.vertex(format!("z{i}"));
        for &w in &subdivisions {
            gb.arc(z, w);
        }
    }
    Ok(gb.finish(b + k - 2, k, b * (b + 1) / 2 + k - 2))
}

/// Path length (in arcs) from each element chain to its sink.
pub fn setcover_path_length(sc: &SetCoverInstance) -> usize {
    2 * sc.sets.len() * sc.universe + sc.sets.len()
}

/// `k = 1`, maximum degree 3: a chain `v_i -> x_{i,j}...` per set, a
/// chain `y_{j,i}...` per element followed by a long path to the sink
/// `w_j`, and arcs `x_{i,j} -> y_{j,i}`.
pub fn gen_from_setcover(sc: &SetCoverInstance) -> Result<Generated> {
    let n = sc.universe;
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, set) in sc.sets.iter().enumerate() {
        for (a, &e) in set.iter().enumerate() {
            if e >= n {
                return Err(Error::InvalidSource(format!("set {} names element {}", i + 1, e + 1)));
            }
            if set[..a].contains(&e) {
                return Err(Error::InvalidSource(format!("set {} repeats element {}", i + 1, e + 1)));
            }
            containing[e].push(i);
        }
    }
    if let Some(e) = containing.iter().position(Vec::is_empty) {
        return Err(Error::InvalidSource(format!("element {} lies in no set", e + 1)));
    }
    let ell = setcover_path_length(sc);
    let mut gb = Builder::new();
    // x[i][e] for e in set i
    let mut x: Vec<Vec<(usize, usize)>> = Vec::with_capacity(sc.sets.len());
    for (i, set) in sc.sets.iter().enumerate() {
        let mut prev = gb.vertex(format!("v{}", i + 1));
        let mut row = Vec::with_capacity(set.len());
        let mut sorted = set.clone();
        sorted.sort_unstable();
        for e in sorted {
            let xv = gb.vertex(format!("x_{{{},{}}}", i + 1, e + 1));
            gb.arc(prev, xv);
            row.push((e, xv));
            prev = xv;
        }
        x.push(row);
    }
    for (e, sets) in containing.iter().enumerate() {
        let mut prev = None;
        for &i in sets {
            let y = gb.vertex(format!("y_{{{},{}}}", e + 1, i + 1));
            if let Some(p) = prev {
                gb.arc(p, y);
            }
            let xv = x[i].iter().find(|&&(el, _)| el == e).expect("element listed in set").1;
            gb.arc(xv, y);
            prev = Some(y);
        }
        let mut prev = prev.expect("element lies in some set");
        for step in 1..ell {
            let mid = gb.vertex(format!("P{}#{step}", e + 1));
            gb.arc(prev, mid);
            prev = mid;
        }
        let w = gb.vertex(format!("w{}", e + 1));
        gb.arc(prev, w);
    }
    Ok(gb.finish(sc.budget, 1, n * ell))
}

/// Raises `k` on a `k = 1` DAG of maximum degree 3: a chain of `k`-sets
/// `D_1, ..., D_n` with consecutive sets completely joined, and `k-1`
/// vertices of `D_i` pointing at base vertex `i`.
pub fn amplify_k(base: &Instance, k: usize, delta: usize) -> Result<Generated> {
    if k < 2 {
        return Err(Error::InvalidSource("amplification needs k >= 2".into()));
    }
    if delta <= 2 * k {
        return Err(Error::InvalidSource(format!("Δ = {delta} must exceed 2k = {}", 2 * k)));
    }
    let g = &base.graph;
    let n = g.n();
    if base.k != 1 {
        return Err(Error::InvalidSource(format!("base instance has k = {}, expected 1", base.k)));
    }
    if g.max_degree() > 3 {
        return Err(Error::InvalidSource("base graph has a vertex of degree above 3".into()));
    }
    if n < 3 {
        return Err(Error::InvalidSource("base graph needs at least 3 vertices".into()));
    }
    if !g.is_acyclic() {
        return Err(Error::InvalidSource("base graph has a cycle".into()));
    }
    let mut gb = Builder::new();
    for v in 1..=n {
        gb.vertex(format!("v{v}"));
    }
    for (u, v) in g.arcs() {
        gb.arc(u, v);
    }
    let mut prev: Vec<usize> = Vec::new();
    for i in 0..n {
        let layer: Vec<usize> = (1..=k).map(|j| gb.vertex(format!("D{}#{j}", i + 1))).collect();
        for &d in &layer[..k - 1] {
            gb.arc(d, i);
        }
        for &u in &prev {
            for &d in &layer {
                gb.arc(u, d);
            }
        }
        prev = layer;
    }
    Ok(gb.finish(base.b + k, k, base.p + n * k))
}
