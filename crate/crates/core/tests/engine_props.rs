mod common;

use common::{random_bounded, random_digraph, random_order_peel, random_undirected, rng, subset_oracle, valid};
use dakc::engine::{check_solution, normalize, oracle_solve_capped, peel, Normalized, Violation};
use dakc::graph::DirectedGraph;
use dakc::{oracle_solve, Error, Instance, Solution, Verdict, VertexSet};
use rand::Rng;

fn random_anchors(r: &mut impl Rng, n: usize, prob: f64) -> Vec<bool> {
    (0..n).map(|_| r.gen_bool(prob)).collect()
}

fn as_set(flags: &[bool]) -> VertexSet {
    VertexSet::from_iter(flags.len(), (0..flags.len()).filter(|&v| flags[v]))
}

#[test]
fn peel_is_order_independent() {
    let mut r = rng(1);
    for _ in 0..200 {
        let n = r.gen_range(1..=12);
        let density = r.gen_range(0.05..0.5);
        let g = random_digraph(&mut r, n, density);
        let k = r.gen_range(1..=3);
        let anchors = random_anchors(&mut r, n, 0.2);
        let reference = peel(&g, k, &as_set(&anchors));
        for _ in 0..10 {
            let alive = random_order_peel(&mut r, &g, k, &anchors);
            assert_eq!(as_set(&alive), reference);
        }
    }
}

#[test]
fn peel_is_monotone_and_maximal() {
    let mut r = rng(2);
    for _ in 0..150 {
        let n = r.gen_range(1..=8);
        let density = r.gen_range(0.1..0.6);
        let g = random_digraph(&mut r, n, density);
        let k = r.gen_range(1..=2);
        let small = random_anchors(&mut r, n, 0.2);
        let big: Vec<bool> = small.iter().map(|&a| a || r.gen_bool(0.3)).collect();
        let core_small = peel(&g, k, &as_set(&small));
        let core_big = peel(&g, k, &as_set(&big));
        assert!(core_small.is_subset(&core_big));
        // every valid core containing the anchors lies inside the closure
        for mask in 0u64..1 << n {
            let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            if (0..n).any(|v| small[v] && !inside[v]) {
                continue;
            }
            let ok = (0..n).all(|v| !inside[v] || small[v] || common::in_deg(&g, v, &inside) >= k);
            if ok {
                assert!(as_set(&inside).is_subset(&core_small));
            }
        }
    }
}

#[test]
fn schelling_paths_unravel() {
    for n in 3..=10 {
        let g = DirectedGraph::from_arcs(n, (0..n - 1).map(|i| (i, i + 1))).unwrap();
        assert!(peel(&g, 1, &VertexSet::new(n)).is_empty());
        assert_eq!(peel(&g, 1, &VertexSet::from_iter(n, [0])).len(), n);
    }
}

#[test]
fn oracle_matches_subset_enumeration() {
    let mut r = rng(3);
    for _ in 0..300 {
        let n = r.gen_range(1..=9);
        let density = r.gen_range(0.1..0.5);
        let g = random_digraph(&mut r, n, density);
        let inst = Instance::new(g, r.gen_range(0..=3), r.gen_range(0..=3), r.gen_range(0..=n + 1));
        let verdict = oracle_solve(&inst).unwrap();
        let reference = subset_oracle(&inst, n);
        assert_eq!(verdict.is_yes(), reference.is_some(), "{inst:?}");
        if let Verdict::Yes(sol) = &verdict {
            assert!(valid(&inst, sol));
        }
    }
}

#[test]
fn oracle_reports_the_first_anchor_set_in_shortlex_order() {
    // the two-parent example: {1,2} is the only pair that works
    let g = DirectedGraph::from_arcs(3, [(0, 2), (1, 2)]).unwrap();
    let sol = oracle_solve(&Instance::new(g, 2, 2, 3)).unwrap();
    assert_eq!(sol.solution().unwrap().anchors.to_vec(), vec![0, 1]);
    let g = DirectedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
    let sol = oracle_solve(&Instance::new(g, 1, 1, 3)).unwrap();
    assert_eq!(sol.solution().unwrap().anchors.to_vec(), vec![0]);
}

#[test]
fn oracle_cap_is_enforced() {
    let g = DirectedGraph::new(40);
    let inst = Instance::new(g, 10, 1, 20);
    match oracle_solve_capped(&inst, 1000) {
        Err(Error::BudgetExceeded { cap, needed }) => {
            assert_eq!(cap, 1000);
            assert!(needed > 1000);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn undirected_cores_match_bidirected_modeling() {
    let mut r = rng(4);
    for _ in 0..150 {
        let n = r.gen_range(1..=8);
        let density = r.gen_range(0.2..0.7);
        let ug = random_undirected(&mut r, n, density);
        let (b, k, p) = (r.gen_range(0..=2), r.gen_range(1..=3), r.gen_range(1..=n));
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in &ug.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let undirected_yes = (0u64..1 << n).any(|mask| {
            let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            let size = inside.iter().filter(|&&x| x).count();
            let needy = (0..n).filter(|&v| inside[v] && (0..n).filter(|&u| inside[u] && adj[u][v]).count() < k).count();
            size >= p && needy <= b
        });
        let g = DirectedGraph::to_bidirected(n, ug.edges.iter().copied()).unwrap();
        assert_eq!(g.arc_count(), 2 * ug.edges.len());
        let verdict = oracle_solve(&Instance::new(g, b, k, p)).unwrap();
        assert_eq!(verdict.is_yes(), undirected_yes);
    }
}

#[test]
fn normalization_cases() {
    let path = DirectedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
    assert_eq!(normalize(&Instance::new(path.clone(), 1, 1, 4)), Normalized::Immediate(Verdict::No));
    match normalize(&Instance::new(path.clone(), 2, 1, 2)) {
        Normalized::Immediate(Verdict::Yes(sol)) => assert_eq!(sol.anchors.len(), 2),
        other => panic!("unexpected {other:?}"),
    }
    match normalize(&Instance::new(path.clone(), 0, 0, 3)) {
        Normalized::Immediate(Verdict::Yes(sol)) => assert!(sol.anchors.is_empty()),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(normalize(&Instance::new(path, 1, 1, 3)), Normalized::Reduced(_)));
}

#[test]
fn violations_are_named() {
    let g = DirectedGraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
    let inst = Instance::new(g, 1, 1, 3);
    let sol = |a: &[usize], h: &[usize]| Solution {
        anchors: VertexSet::from_iter(3, a.iter().copied()),
        core: VertexSet::from_iter(3, h.iter().copied()),
    };
    assert_eq!(check_solution(&inst, &sol(&[0], &[0, 1, 2])), Ok(()));
    assert_eq!(
        check_solution(&inst, &sol(&[1], &[0, 1, 2])),
        Err(Violation::LowInDegree { vertex: 0, in_degree: 0, k: 1 })
    );
    assert_eq!(check_solution(&inst, &sol(&[0], &[0, 2])), Err(Violation::CoreTooSmall { size: 2, target: 3 }));
    assert_eq!(
        check_solution(&inst, &sol(&[0, 1], &[0, 1, 2])),
        Err(Violation::TooManyAnchors { anchors: 2, budget: 1 })
    );
    assert_eq!(check_solution(&inst, &sol(&[0], &[1, 2])), Err(Violation::AnchorOutsideCore { vertex: 0 }));
    let text = Violation::LowInDegree { vertex: 0, in_degree: 0, k: 1 }.to_string();
    assert!(text.contains("non-anchor 1"));
}

#[test]
fn bounded_degree_generator_respects_delta() {
    let mut r = rng(5);
    for _ in 0..50 {
        let acyclic = r.gen_bool(0.5);
        let g = random_bounded(&mut r, 10, 4, 60, acyclic);
        assert!(g.max_degree() <= 4);
    }
}
