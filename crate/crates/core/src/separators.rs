//! Important `s`–`t` vertex separators.
//!
//! A separator `S` is important when it is minimal and no separator of at
//! most `|S|` vertices leaves a strictly larger set of vertices able to
//! reach `t`. Enumeration runs the classical branching on the arc-reversed
//! graph, where that set becomes the region reachable from `t`, and keeps
//! only candidates that pass an exact flow-based importance test.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::engine::for_each_combination;
use crate::error::{Error, Result};
use crate::flow::min_vertex_cut;
use crate::graph::{DirectedGraph, Direction};
use crate::set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorSet {
    pub vertices: VertexSet,
    pub s: usize,
    pub t: usize,
}

/// Subset budget for the brute-force importance check.
pub const BRUTE_FORCE_CAP: u128 = 5_000_000;

fn check_terminals(g: &DirectedGraph, s: usize, t: usize) -> Result<()> {
    let n = g.n();
    if s >= n || t >= n {
        return Err(Error::Contract(format!("terminal out of range for {n} vertices")));
    }
    if s == t {
        return Err(Error::Contract("s and t coincide".into()));
    }
    if g.has_arc(s, t) {
        return Err(Error::Contract(format!("arc {} -> {} makes every separator impossible", s + 1, t + 1)));
    }
    Ok(())
}

fn check_candidate(g: &DirectedGraph, s: usize, t: usize, sep: &VertexSet) -> Result<()> {
    check_terminals(g, s, t)?;
    if sep.universe() != g.n() {
        return Err(Error::Contract("separator over a different vertex universe".into()));
    }
    if sep.contains(s) || sep.contains(t) {
        return Err(Error::Contract("separator contains a terminal".into()));
    }
    Ok(())
}

fn separates(g: &DirectedGraph, s: usize, t: usize, sep: &VertexSet) -> bool {
    let from_s = g.reach_avoiding(&VertexSet::from_iter(g.n(), [s]), Direction::Forward, sep);
    !from_s.contains(t)
}

/// Vertices that reach `t` once `sep` is deleted.
pub fn reaching_target(g: &DirectedGraph, t: usize, sep: &VertexSet) -> VertexSet {
    g.reach_avoiding(&VertexSet::from_iter(g.n(), [t]), Direction::Backward, sep)
}

pub fn is_separator(g: &DirectedGraph, s: usize, t: usize, sep: &VertexSet) -> Result<bool> {
    check_candidate(g, s, t, sep)?;
    Ok(separates(g, s, t, sep))
}

fn is_minimal(g: &DirectedGraph, s: usize, t: usize, sep: &VertexSet) -> bool {
    // supersets of separators separate, so single-vertex removals suffice
    sep.iter().all(|v| {
        let mut smaller = sep.clone();
        smaller.remove(v);
        !separates(g, s, t, &smaller)
    })
}

/// Definition check by exhaustive enumeration of every vertex subset of
/// size at most `|sep|`. Intended for small graphs.
pub fn is_important(g: &DirectedGraph, s: usize, t: usize, sep: &VertexSet, h: usize) -> Result<bool> {
    check_candidate(g, s, t, sep)?;
    let size = sep.len();
    if size > h {
        return Err(Error::Contract(format!("separator of size {size} exceeds h = {h}")));
    }
    if !separates(g, s, t, sep) || !is_minimal(g, s, t, sep) {
        return Ok(false);
    }
    let pool: Vec<usize> = (0..g.n()).filter(|&v| v != s && v != t).collect();
    let needed = crate::engine::subsets_up_to(pool.len(), size);
    if needed > BRUTE_FORCE_CAP {
        return Err(Error::BudgetExceeded { needed, cap: BRUTE_FORCE_CAP });
    }
    let region = reaching_target(g, t, sep);
    let n = g.n();
    for other_size in 0..=size {
        let dominated = for_each_combination(pool.len(), other_size, 0, &mut Vec::new(), &mut |idx| {
            let other = VertexSet::from_iter(n, idx.iter().map(|&i| pool[i]));
            if separates(g, s, t, &other) {
                let wider = reaching_target(g, t, &other);
                if region.is_subset(&wider) && region != wider {
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if dominated.is_break() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Polynomial importance test: `sep` is important iff it is a minimal
/// separator and, for every `v ∈ sep`, separating `region ∪ {v}` from `s`
/// (with `region` the vertices reaching `t` in `G - sep`) costs more than
/// `|sep|` vertices.
pub fn is_important_fast(g: &DirectedGraph, s: usize, t: usize, sep: &VertexSet) -> bool {
    if !separates(g, s, t, sep) || !is_minimal(g, s, t, sep) {
        return false;
    }
    let reversed = g.reverse();
    let region = reaching_target(g, t, sep);
    let target = VertexSet::from_iter(g.n(), [s]);
    let none = VertexSet::new(g.n());
    sep.iter().all(|v| {
        let mut grown = region.clone();
        grown.insert(v);
        min_vertex_cut(&reversed, &grown, &target, &none, sep.len()).is_none()
    })
}

/// All important `s`–`t` separators with at most `h` vertices, sorted
/// lexicographically by vertex list.
pub fn enumerate_important_separators(g: &DirectedGraph, s: usize, t: usize, h: usize) -> Result<Vec<SeparatorSet>> {
    check_terminals(g, s, t)?;
    let n = g.n();
    let reversed = g.reverse();
    let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut source_side = VertexSet::new(n);
    source_side.insert(t);
    let sink = VertexSet::from_iter(n, [s]);
    branch(&reversed, source_side, &sink, VertexSet::new(n), h, &mut candidates);
    Ok(candidates
        .into_iter()
        .map(|list| VertexSet::from_iter(n, list))
        .filter(|sep| is_important_fast(g, s, t, sep))
        .map(|vertices| SeparatorSet { vertices, s, t })
        .collect())
}

// Branching on the reversed graph: the furthest minimum cut from the
// `from` side is either partly in the separator or pushed into `from`.
fn branch(
    reversed: &DirectedGraph,
    from: VertexSet,
    to: &VertexSet,
    chosen: VertexSet,
    budget: usize,
    out: &mut BTreeSet<Vec<usize>>,
) {
    let Some(cut) = min_vertex_cut(reversed, &from, to, &chosen, budget) else {
        return;
    };
    if cut.size == 0 {
        out.insert(chosen.to_vec());
        return;
    }
    let v = cut.furthest.iter().next().expect("nonzero cut has a vertex");
    let mut with_v = chosen.clone();
    with_v.insert(v);
    branch(reversed, from.clone(), to, with_v, budget - 1, out);
    let mut grown = from;
    grown.insert(v);
    branch(reversed, grown, to, chosen, budget, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, items: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, items.iter().copied())
    }

    fn lists(seps: &[SeparatorSet]) -> Vec<Vec<usize>> {
        seps.iter().map(|s| s.vertices.to_vec()).collect()
    }

    // s=0, a=1, t=2
    fn short_path() -> DirectedGraph {
        DirectedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap()
    }

    // s=0, a=1, b=2, t=3
    fn long_path() -> DirectedGraph {
        DirectedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn diamond() -> DirectedGraph {
        DirectedGraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn separator_examples() {
        assert!(is_separator(&short_path(), 0, 2, &set(3, &[1])).unwrap());
        assert!(!is_separator(&short_path(), 0, 2, &VertexSet::new(3)).unwrap());
        assert!(!is_separator(&diamond(), 0, 3, &set(4, &[1])).unwrap());
    }

    #[test]
    fn importance_examples() {
        let g = long_path();
        assert!(is_important(&g, 0, 3, &set(4, &[1]), 2).unwrap());
        assert!(!is_important(&g, 0, 3, &set(4, &[2]), 2).unwrap());
        assert!(is_important(&diamond(), 0, 3, &set(4, &[1, 2]), 2).unwrap());
        // s=0, a=1, b=2, c=3, t=4
        let fan = DirectedGraph::from_arcs(5, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        assert!(!is_important(&fan, 0, 4, &set(5, &[2, 3]), 2).unwrap());
        assert!(is_important(&fan, 0, 4, &set(5, &[1]), 2).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(lists(&enumerate_important_separators(&long_path(), 0, 3, 2).unwrap()), vec![vec![1]]);
        assert!(enumerate_important_separators(&diamond(), 0, 3, 1).unwrap().is_empty());
        assert_eq!(lists(&enumerate_important_separators(&diamond(), 0, 3, 2).unwrap()), vec![vec![1, 2]]);
    }

    #[test]
    fn unreachable_target_has_only_the_empty_separator() {
        let g = DirectedGraph::from_arcs(3, [(1, 0)]).unwrap();
        let seps = enumerate_important_separators(&g, 0, 2, 2).unwrap();
        assert_eq!(lists(&seps), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn contract_errors() {
        let g = short_path();
        assert!(enumerate_important_separators(&g, 0, 1, 2).is_err());
        assert!(is_separator(&g, 0, 2, &set(3, &[0])).is_err());
        assert!(is_important(&g, 0, 2, &set(3, &[1]), 0).is_err());
    }
}
