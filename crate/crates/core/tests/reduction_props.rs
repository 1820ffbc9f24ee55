mod common;

use common::{cover_brute, has_clique, random_cnf, random_setcover, random_undirected, rng, sat_brute};
use dakc::reductions::{
    amplify_k, gen_from_clique, gen_from_sat, gen_from_setcover, setcover_path_length, CnfFormula, SetCoverInstance,
    UndirectedGraph,
};
use dakc::{oracle_solve, Instance};
use rand::Rng;

fn oracle_yes(inst: &Instance) -> bool {
    oracle_solve(inst).unwrap().is_yes()
}

#[test]
fn sat_sizes_follow_the_closed_forms() {
    let mut r = rng(51);
    for _ in 0..40 {
        let vars = r.gen_range(1..=6);
        let f = random_cnf(&mut r, vars, 6);
        let (n, m) = (f.num_vars, f.clauses.len());
        for k in 1..=4 {
            let gen = gen_from_sat(&f, k).unwrap();
            let inst = &gen.instance;
            assert_eq!(inst.b, n * (k * (k - 1) + 1) + m * k * (k - 1));
            assert_eq!(inst.p, n * ((k + 1) * (k - 1) + 2) + m * ((k + 1) * (k - 1) + 1));
            assert_eq!(inst.n(), 3 * n + m + (n + m) * (k - 1) * (k + 1));
            assert_eq!(gen.labels.len(), inst.n());
            assert!(inst.graph.is_acyclic());
            assert!(inst.graph.max_degree() <= k + 2);
        }
    }
}

#[test]
fn sat_examples_match_the_oracle() {
    let single = CnfFormula { num_vars: 1, clauses: vec![vec![1]] };
    assert!(oracle_yes(&gen_from_sat(&single, 1).unwrap().instance));
    assert!(oracle_yes(&gen_from_sat(&single, 2).unwrap().instance));
    let clash = CnfFormula { num_vars: 1, clauses: vec![vec![1], vec![-1]] };
    assert!(!oracle_yes(&gen_from_sat(&clash, 1).unwrap().instance));
}

#[test]
fn sat_equivalence_small() {
    let mut r = rng(52);
    for _ in 0..40 {
        let vars = r.gen_range(1..=4);
        let f = random_cnf(&mut r, vars, 5);
        let gen = gen_from_sat(&f, 1).unwrap();
        assert_eq!(oracle_yes(&gen.instance), sat_brute(&f), "{f:?}");
    }
}

#[test]
fn clique_examples_and_structure() {
    let tri = UndirectedGraph { n: 3, edges: vec![(0, 1), (0, 2), (1, 2)] };
    assert!(oracle_yes(&gen_from_clique(&tri, 2, 2).unwrap().instance));
    assert!(oracle_yes(&gen_from_clique(&tri, 2, 3).unwrap().instance));
    let path = UndirectedGraph { n: 3, edges: vec![(0, 1), (1, 2)] };
    assert!(!oracle_yes(&gen_from_clique(&path, 3, 2).unwrap().instance));

    let mut r = rng(53);
    for _ in 0..30 {
        let n = r.gen_range(1..=7);
        let density = r.gen_range(0.2..0.8);
        let g = random_undirected(&mut r, n, density);
        let b = r.gen_range(1..=4);
        let k = r.gen_range(2..=3);
        let inst = gen_from_clique(&g, b, k).unwrap().instance;
        assert_eq!(inst.n(), n + g.edges.len() + k - 2);
        assert_eq!((inst.b, inst.p, inst.k), (b + k - 2, b * (b + 1) / 2 + k - 2, k));
        assert!(inst.graph.is_acyclic());
        assert_eq!(oracle_yes(&inst), has_clique(&g, b));
    }
}

#[test]
fn setcover_examples_and_structure() {
    let one = SetCoverInstance { universe: 1, sets: vec![vec![0]], budget: 1 };
    assert!(oracle_yes(&gen_from_setcover(&one).unwrap().instance));
    let two = SetCoverInstance { universe: 2, sets: vec![vec![0], vec![1]], budget: 1 };
    assert!(!oracle_yes(&gen_from_setcover(&two).unwrap().instance));
    let two_b2 = SetCoverInstance { budget: 2, ..two.clone() };
    assert!(oracle_yes(&gen_from_setcover(&two_b2).unwrap().instance));

    let mut r = rng(54);
    for _ in 0..20 {
        let (universe, sets, budget) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=2));
        let sc = random_setcover(&mut r, universe, sets, budget);
        let inst = gen_from_setcover(&sc).unwrap().instance;
        let ell = setcover_path_length(&sc);
        assert_eq!(inst.p, sc.universe * ell);
        assert_eq!(inst.k, 1);
        assert!(inst.graph.is_acyclic());
        assert!(inst.graph.max_degree() <= 3);
        assert_eq!(inst.graph.sources().len(), sc.sets.len());
        // an empty set leaves its head vertex isolated
        let empty = sc.sets.iter().filter(|s| s.is_empty()).count();
        assert_eq!(inst.graph.sinks().len(), sc.universe + empty);
        assert_eq!(oracle_yes(&inst), cover_brute(&sc));
    }
}

#[test]
fn amplification_preserves_the_answer() {
    let one = SetCoverInstance { universe: 1, sets: vec![vec![0]], budget: 1 };
    let two = SetCoverInstance { universe: 2, sets: vec![vec![0], vec![1]], budget: 1 };
    for (sc, expected) in [(one, true), (two, false)] {
        let base = gen_from_setcover(&sc).unwrap().instance;
        let amp = amplify_k(&base, 2, 5).unwrap().instance;
        assert_eq!(amp.n(), 3 * base.n());
        assert_eq!((amp.b, amp.p), (base.b + 2, base.p + 2 * base.n()));
        assert!(amp.graph.is_acyclic());
        assert!(amp.graph.max_degree() <= 5);
        assert_eq!(oracle_yes(&base), expected);
        assert_eq!(oracle_yes(&amp), expected);
    }
}

#[test]
fn amplification_degree_bounds_for_larger_k() {
    let sc = SetCoverInstance { universe: 2, sets: vec![vec![0, 1], vec![1]], budget: 1 };
    let base = gen_from_setcover(&sc).unwrap().instance;
    for k in 2..=4 {
        let amp = amplify_k(&base, k, 2 * k + 1).unwrap().instance;
        assert!(amp.graph.max_degree() <= 2 * k + 1);
        for v in 0..base.n() {
            assert_eq!(amp.graph.degree(v), base.graph.degree(v) + k - 1);
        }
    }
    assert!(amplify_k(&base, 1, 5).is_err());
    assert!(amplify_k(&base, 3, 6).is_err());
}
