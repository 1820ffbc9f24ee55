//! Anchored-core closure, solution checking, instance normalization and
//! the exhaustive anchor-enumeration oracle.

use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::set::VertexSet;

/// The `(b, k, p)` triple of one question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub b: usize,
    pub k: usize,
    pub p: usize,
}

/// Can at most `b` anchors hold an induced subgraph of at least `p`
/// vertices in which every non-anchor has in-degree at least `k`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: DirectedGraph,
    pub b: usize,
    pub k: usize,
    pub p: usize,
}

impl Instance {
    pub fn new(graph: DirectedGraph, b: usize, k: usize, p: usize) -> Self {
        Instance { graph, b, k, p }
    }

    pub fn with_params(graph: DirectedGraph, params: Params) -> Self {
        Instance::new(graph, params.b, params.k, params.p)
    }

    pub fn params(&self) -> Params {
        Params { b: self.b, k: self.k, p: self.p }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Anchor set and core vertex set, anchors contained in the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub anchors: VertexSet,
    pub core: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(Solution),
    No,
    /// No solution whose core has at most this many vertices.
    NoUpTo(usize),
    /// The instance lies outside every implemented tractable regime.
    Unsupported(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Verdict::Yes(s) => Some(s),
            _ => None,
        }
    }
}

/// Why a claimed solution fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OutOfRange { vertex: usize },
    AnchorOutsideCore { vertex: usize },
    TooManyAnchors { anchors: usize, budget: usize },
    CoreTooSmall { size: usize, target: usize },
    LowInDegree { vertex: usize, in_degree: usize, k: usize },
}

impl fmt::Display for Violation {
    // vertices are reported 1-based, matching the file formats
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::OutOfRange { vertex } => write!(f, "vertex {} is not in the graph", vertex + 1),
            Violation::AnchorOutsideCore { vertex } => {
                write!(f, "anchor {} is not in the core", vertex + 1)
            }
            Violation::TooManyAnchors { anchors, budget } => {
                write!(f, "{anchors} anchors exceed the budget b = {budget}")
            }
            Violation::CoreTooSmall { size, target } => {
                write!(f, "core has {size} vertices, fewer than p = {target}")
            }
            Violation::LowInDegree { vertex, in_degree, k } => {
                write!(f, "non-anchor {} has in-degree {in_degree} < k = {k} inside the core", vertex + 1)
            }
        }
    }
}

/// Result of [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    /// `b < p <= n` and `k >= 1` hold.
    Reduced(Instance),
    Immediate(Verdict),
}

/// Iterated withdrawal: repeatedly delete non-anchors whose in-degree
/// among surviving vertices is below `k`. Anchors always survive.
pub fn peel(g: &DirectedGraph, k: usize, anchors: &VertexSet) -> VertexSet {
    peel_within(g, k, anchors, &g.vertices())
}

/// [`peel`] restricted to the subgraph `G[within]`.
pub fn peel_within(g: &DirectedGraph, k: usize, anchors: &VertexSet, within: &VertexSet) -> VertexSet {
    let mut alive = within.clone();
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.in_degree_within(v, within)).collect();
    let mut queue: Vec<usize> = within.iter().filter(|&v| !anchors.contains(v) && deg[v] < k).collect();
    let mut queued = VertexSet::from_iter(g.n(), queue.iter().copied());
    while let Some(v) = queue.pop() {
        alive.remove(v);
        for &w in g.out_neighbors(v) {
            if !alive.contains(w) {
                continue;
            }
            deg[w] -= 1;
            if deg[w] < k && !anchors.contains(w) && queued.insert(w) {
                queue.push(w);
            }
        }
    }
    alive
}

/// Checks every solution constraint, reporting the first failure.
pub fn check_solution(inst: &Instance, sol: &Solution) -> std::result::Result<(), Violation> {
    let n = inst.n();
    for set in [&sol.anchors, &sol.core] {
        if set.universe() != n {
            let vertex = set.iter().find(|&v| v >= n).unwrap_or(set.universe().max(n));
            return Err(Violation::OutOfRange { vertex });
        }
    }
    if let Some(vertex) = sol.anchors.iter().find(|&a| !sol.core.contains(a)) {
        return Err(Violation::AnchorOutsideCore { vertex });
    }
    let anchors = sol.anchors.len();
    if anchors > inst.b {
        return Err(Violation::TooManyAnchors { anchors, budget: inst.b });
    }
    let size = sol.core.len();
    if size < inst.p {
        return Err(Violation::CoreTooSmall { size, target: inst.p });
    }
    for v in sol.core.iter().filter(|&v| !sol.anchors.contains(v)) {
        let in_degree = inst.graph.in_degree_within(v, &sol.core);
        if in_degree < inst.k {
            return Err(Violation::LowInDegree { vertex: v, in_degree, k: inst.k });
        }
    }
    Ok(())
}

pub fn verify_solution(inst: &Instance, sol: &Solution) -> bool {
    check_solution(inst, sol).is_ok()
}

/// Settles trivial parameter ranges, otherwise returns the instance with
/// `b < p <= n` and `k >= 1`.
pub fn normalize(inst: &Instance) -> Normalized {
    let n = inst.n();
    if inst.p > n {
        return Normalized::Immediate(Verdict::No);
    }
    if inst.b >= inst.p {
        let chosen = VertexSet::from_iter(n, 0..inst.p);
        return Normalized::Immediate(Verdict::Yes(Solution { anchors: chosen.clone(), core: chosen }));
    }
    if inst.k == 0 {
        return Normalized::Immediate(Verdict::Yes(Solution {
            anchors: VertexSet::new(n),
            core: VertexSet::from_iter(n, 0..inst.p),
        }));
    }
    Normalized::Reduced(inst.clone())
}

pub const DEFAULT_ORACLE_CAP: u128 = 10_000_000;

/// Number of subsets of an `n`-set with at most `b` elements.
pub fn subsets_up_to(n: usize, b: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=b.min(n) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Visits the `size`-subsets of `from..n` in lexicographic order, each
/// prefixed by `prefix`.
pub(crate) fn for_each_combination<B>(
    n: usize,
    size: usize,
    from: usize,
    prefix: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if size == 0 {
        return visit(prefix);
    }
    if n < size {
        return ControlFlow::Continue(());
    }
    for v in from..=n - size {
        prefix.push(v);
        let flow = for_each_combination(n, size - 1, v + 1, prefix, visit);
        prefix.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Exhaustive search over all anchor sets of size at most `b`, smallest
/// first and lexicographic within a size; each set is closed by [`peel`].
pub fn oracle_solve(inst: &Instance) -> Result<Verdict> {
    oracle_solve_capped(inst, DEFAULT_ORACLE_CAP)
}

pub fn oracle_solve_capped(inst: &Instance, cap: u128) -> Result<Verdict> {
    let inst = match normalize(inst) {
        Normalized::Immediate(v) => return Ok(v),
        Normalized::Reduced(i) => i,
    };
    let n = inst.n();
    let needed = subsets_up_to(n, inst.b);
    if needed > cap {
        return Err(Error::BudgetExceeded { needed, cap });
    }
    let g = &inst.graph;
    let try_anchors = |anchors: &[usize]| -> Option<Solution> {
        let set = VertexSet::from_iter(n, anchors.iter().copied());
        let core = peel(g, inst.k, &set);
        (core.len() >= inst.p).then_some(Solution { anchors: set, core })
    };
    if let Some(sol) = try_anchors(&[]) {
        return Ok(Verdict::Yes(sol));
    }
    for size in 1..=inst.b {
        // the first anchor splits the lexicographic order into ordered blocks
        let hit = (0..n).into_par_iter().find_map_first(|first| {
            let mut prefix = vec![first];
            let flow = for_each_combination(n, size - 1, first + 1, &mut prefix, &mut |a| match try_anchors(a) {
                Some(sol) => ControlFlow::Break(sol),
                None => ControlFlow::Continue(()),
            });
            match flow {
                ControlFlow::Break(sol) => Some(sol),
                ControlFlow::Continue(()) => None,
            }
        });
        if let Some(sol) = hit {
            return Ok(Verdict::Yes(sol));
        }
    }
    Ok(Verdict::No)
}
