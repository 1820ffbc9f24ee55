//! The `k = 1` solver: absorb everything reachable from a cycle, anchor
//! sources of the remaining DAG, and pick sources by exact partial set
//! cover over their reachability sets.

use std::ops::ControlFlow;

use crate::engine::{for_each_combination, normalize, Instance, Normalized, Solution, Verdict};
use crate::error::{Error, Result};
use crate::graph::Direction;
use crate::set::VertexSet;

/// Choose at most `budget` of `sets` covering at least `target` elements.
#[derive(Clone, Debug)]
pub struct SetCoverQuery {
    pub universe: usize,
    pub sets: Vec<VertexSet>,
    pub budget: usize,
    pub target: usize,
}

/// Exact partial set cover. Index sets are tried by increasing size and
/// lexicographically within a size; a branch is cut when even the largest
/// remaining sets cannot lift the coverage to `target`.
pub fn partial_set_cover(q: &SetCoverQuery) -> Option<Vec<usize>> {
    if q.target == 0 {
        return Some(Vec::new());
    }
    let r = q.sets.len();
    let sizes: Vec<usize> = q.sets.iter().map(VertexSet::len).collect();
    // suffix_top[i] holds the sizes of sets i.. in decreasing order
    let mut suffix_top: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    for i in (0..r).rev() {
        let mut top = suffix_top[i + 1].clone();
        let pos = top.partition_point(|&x| x >= sizes[i]);
        top.insert(pos, sizes[i]);
        top.truncate(q.budget.min(r));
        suffix_top[i] = top;
    }
    for size in 1..=q.budget.min(r) {
        let mut chosen = Vec::with_capacity(size);
        let found = search(q, &suffix_top, size, 0, &VertexSet::new(q.universe), &mut chosen);
        if found {
            return Some(chosen);
        }
    }
    None
}

fn search(
    q: &SetCoverQuery,
    suffix_top: &[Vec<usize>],
    remaining: usize,
    from: usize,
    covered: &VertexSet,
    chosen: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return covered.len() >= q.target;
    }
    let r = q.sets.len();
    if r < from + remaining {
        return false;
    }
    let have = covered.len();
    let bound: usize = suffix_top[from].iter().take(remaining).sum();
    if have + bound < q.target {
        return false;
    }
    for i in from..=r - remaining {
        let next = covered.union(&q.sets[i]);
        chosen.push(i);
        if search(q, suffix_top, remaining - 1, i + 1, &next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Brute force over every index subset of size at most `budget`; the
/// reference the pruned search is tested against.
pub fn partial_set_cover_exhaustive(q: &SetCoverQuery) -> Option<Vec<usize>> {
    for size in 0..=q.budget.min(q.sets.len()) {
        let hit = for_each_combination(q.sets.len(), size, 0, &mut Vec::new(), &mut |idx| {
            let mut cov = VertexSet::new(q.universe);
            for &i in idx {
                cov.union_with(&q.sets[i]);
            }
            if cov.len() >= q.target {
                ControlFlow::Break(idx.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(found) = hit {
            return Some(found);
        }
    }
    None
}

pub fn solve_k1(inst: &Instance) -> Result<Verdict> {
    if inst.k != 1 {
        return Err(Error::Contract(format!("k = 1 solver called with k = {}", inst.k)));
    }
    let inst = match normalize(inst) {
        Normalized::Immediate(v) => return Ok(v),
        Normalized::Reduced(i) => i,
    };
    let g = &inst.graph;
    let n = g.n();

    // everything reachable from a cycle stays engaged without anchors
    let mut cyclic = VertexSet::new(n);
    for comp in g.strongly_connected_components() {
        if comp.cyclic {
            cyclic.union_with(&comp.vertices);
        }
    }
    let absorbed = g.reach(&cyclic, Direction::Forward);
    if inst.b + absorbed.len() >= inst.p {
        let extra = inst.p.saturating_sub(absorbed.len());
        let anchors = VertexSet::from_iter(n, (0..n).filter(|v| !absorbed.contains(*v)).take(extra));
        let core = anchors.union(&absorbed);
        return Ok(Verdict::Yes(Solution { anchors, core }));
    }
    let target = inst.p - absorbed.len();

    let (dag, map) = g.induced_subgraph(&absorbed.complement());
    let sources = dag.sources();
    if sources.len() <= inst.b {
        let anchors = map.lift(&VertexSet::from_iter(dag.n(), sources.iter().copied()));
        return Ok(Verdict::Yes(Solution { anchors, core: g.vertices() }));
    }
    let reach_sets: Vec<VertexSet> =
        sources.iter().map(|&s| dag.reach(&VertexSet::from_iter(dag.n(), [s]), Direction::Forward)).collect();
    let query = SetCoverQuery { universe: dag.n(), sets: reach_sets, budget: inst.b, target };
    let Some(chosen) = partial_set_cover(&query) else {
        return Ok(Verdict::No);
    };
    let mut anchors = VertexSet::new(dag.n());
    let mut core = VertexSet::new(dag.n());
    for &i in &chosen {
        anchors.insert(sources[i]);
        core.union_with(&query.sets[i]);
    }
    let mut core = map.lift(&core);
    core.union_with(&absorbed);
    Ok(Verdict::Yes(Solution { anchors: map.lift(&anchors), core }))
}

/// Moves every anchor onto a source whose reachability set contains it,
/// keeping a valid `k = 1` solution valid on an acyclic graph.
pub fn canonicalize_anchors(inst: &Instance, sol: &Solution) -> Solution {
    let g = &inst.graph;
    let n = g.n();
    let mut anchors = VertexSet::new(n);
    for a in &sol.anchors {
        let ancestors = g.reach(&VertexSet::from_iter(n, [a]), Direction::Backward);
        let source = ancestors.iter().find(|&v| g.in_degree(v) == 0).unwrap_or(a);
        anchors.insert(source);
    }
    let core = crate::engine::peel(g, 1, &anchors);
    Solution { anchors, core }
}
