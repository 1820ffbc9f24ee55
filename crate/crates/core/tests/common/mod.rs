//! Random instance generators and brute-force reference solvers shared by
//! the integration tests. Nothing here calls into the solvers under test.

#![allow(dead_code)]

use dakc::graph::DirectedGraph;
use dakc::reductions::{CnfFormula, SetCoverInstance, UndirectedGraph};
use dakc::{Instance, Solution, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each ordered pair becomes an arc with probability `density`.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> DirectedGraph {
    let mut g = DirectedGraph::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                g.add_arc(u, v).unwrap();
            }
        }
    }
    g
}

/// Random arcs in random order, skipping any that would push a vertex
/// above total degree `delta`. With `acyclic`, arcs only run from lower to
/// higher positions of a random permutation.
pub fn random_bounded(rng: &mut ChaCha8Rng, n: usize, delta: usize, attempts: usize, acyclic: bool) -> DirectedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut g = DirectedGraph::new(n);
    if n < 2 {
        return g;
    }
    for _ in 0..attempts {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || g.has_arc(u, v) || g.degree(u) >= delta || g.degree(v) >= delta {
            continue;
        }
        if acyclic && pos[u] > pos[v] {
            continue;
        }
        g.add_arc(u, v).unwrap();
    }
    g
}

/// In-degree of `v` inside `set`, from scratch.
pub fn in_deg(g: &DirectedGraph, v: usize, set: &[bool]) -> usize {
    g.in_neighbors(v).iter().filter(|&&u| set[u]).count()
}

/// Decides the instance by enumerating every candidate core `H` with
/// `p <= |H| <= q`: the vertices of `H` with in-degree below `k` inside
/// `H` are exactly the anchors it needs.
pub fn subset_oracle(inst: &Instance, q: usize) -> Option<Solution> {
    let n = inst.n();
    assert!(n <= 20);
    let mut best: Option<u64> = None;
    for mask in 0u64..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < inst.p || size > q {
            continue;
        }
        let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let needy = (0..n).filter(|&v| inside[v] && in_deg(&inst.graph, v, &inside) < inst.k).count();
        if needy <= inst.b {
            best = Some(mask);
            break;
        }
    }
    best.map(|mask| {
        let core = VertexSet::from_mask(n, mask);
        let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let anchors = VertexSet::from_iter(n, core.iter().filter(|&v| in_deg(&inst.graph, v, &inside) < inst.k));
        Solution { anchors, core }
    })
}

/// Independent solution check.
pub fn valid(inst: &Instance, sol: &Solution) -> bool {
    let n = inst.n();
    let inside: Vec<bool> = (0..n).map(|v| sol.core.contains(v)).collect();
    sol.anchors.iter().all(|a| inside[a])
        && sol.anchors.len() <= inst.b
        && sol.core.len() >= inst.p
        && (0..n).all(|v| !inside[v] || sol.anchors.contains(v) || in_deg(&inst.graph, v, &inside) >= inst.k)
}

/// Withdrawal in a random order: repeatedly pick a random violating
/// non-anchor and delete it.
pub fn random_order_peel(rng: &mut ChaCha8Rng, g: &DirectedGraph, k: usize, anchors: &[bool]) -> Vec<bool> {
    let n = g.n();
    let mut alive = vec![true; n];
    loop {
        let bad: Vec<usize> = (0..n).filter(|&v| alive[v] && !anchors[v] && in_deg(g, v, &alive) < k).collect();
        let Some(&v) = bad.choose(rng) else {
            return alive;
        };
        alive[v] = false;
    }
}

pub fn reaches(g: &DirectedGraph, from: usize, to: usize, blocked: &[bool]) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        for &w in g.out_neighbors(u) {
            if !seen[w] && !blocked[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Vertices that reach `t` after deleting `blocked`.
pub fn reaching(g: &DirectedGraph, t: usize, blocked: &[bool]) -> Vec<bool> {
    (0..g.n()).map(|v| !blocked[v] && reaches(g, v, t, blocked)).collect()
}

/// Important separators of size at most `h` straight from the definition.
pub fn brute_important(g: &DirectedGraph, s: usize, t: usize, h: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let pool: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut seps: Vec<(Vec<usize>, Vec<bool>)> = Vec::new();
    for mask in 0u64..(1 << pool.len()) {
        if mask.count_ones() as usize > h {
            continue;
        }
        let members: Vec<usize> = (0..pool.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pool[i]).collect();
        let mut blocked = vec![false; n];
        for &v in &members {
            blocked[v] = true;
        }
        if !reaches(g, s, t, &blocked) {
            seps.push((members, blocked));
        }
    }
    let separating: Vec<Vec<usize>> = seps.iter().map(|(m, _)| m.clone()).collect();
    let mut out = Vec::new();
    for (members, blocked) in &seps {
        let minimal = members.iter().all(|&v| {
            let smaller: Vec<usize> = members.iter().copied().filter(|&w| w != v).collect();
            !separating.contains(&smaller)
        });
        if !minimal {
            continue;
        }
        let region = reaching(g, t, blocked);
        let dominated = seps.iter().any(|(other, oblocked)| {
            if other.len() > members.len() {
                return false;
            }
            let wider = reaching(g, t, oblocked);
            (0..n).all(|v| !region[v] || wider[v]) && wider != region
        });
        if !dominated {
            out.push(members.clone());
        }
    }
    out.sort();
    out
}

pub fn sat_brute(f: &CnfFormula) -> bool {
    (0u64..1 << f.num_vars).any(|assign| {
        f.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let value = assign >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    })
}

/// Random formula obeying the generator's occurrence limits: each
/// variable gets 1 to 3 occurrences, at most 2 of either sign.
pub fn random_cnf(rng: &mut ChaCha8Rng, vars: usize, max_clauses: usize) -> CnfFormula {
    loop {
        let m = rng.gen_range(1..=max_clauses);
        let mut clauses: Vec<Vec<i32>> = vec![Vec::new(); m];
        for var in 1..=vars as i32 {
            let uses = rng.gen_range(1..=3usize);
            let mut pos = 0;
            let mut neg = 0;
            for _ in 0..uses {
                let positive = if pos == 2 {
                    false
                } else if neg == 2 {
                    true
                } else {
                    rng.gen_bool(0.5)
                };
                let lit = if positive { var } else { -var };
                let j = rng.gen_range(0..m);
                if clauses[j].len() >= 3 || clauses[j].contains(&lit) {
                    continue;
                }
                clauses[j].push(lit);
                if positive {
                    pos += 1;
                } else {
                    neg += 1;
                }
            }
        }
        if clauses.iter().all(|c| !c.is_empty()) {
            return CnfFormula { num_vars: vars, clauses };
        }
    }
}

pub fn random_undirected(rng: &mut ChaCha8Rng, n: usize, density: f64) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph { n, edges }
}

pub fn has_clique(g: &UndirectedGraph, size: usize) -> bool {
    let mut adj = vec![vec![false; g.n]; g.n];
    for &(u, v) in &g.edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    (0u64..1 << g.n).any(|mask| {
        if mask.count_ones() as usize != size {
            return false;
        }
        let members: Vec<usize> = (0..g.n).filter(|&v| mask >> v & 1 == 1).collect();
        members.iter().enumerate().all(|(i, &u)| members[i + 1..].iter().all(|&v| adj[u][v]))
    })
}

/// Every element lies in at least one set.
pub fn random_setcover(rng: &mut ChaCha8Rng, universe: usize, sets: usize, budget: usize) -> SetCoverInstance {
    loop {
        let lists: Vec<Vec<usize>> = (0..sets).map(|_| (0..universe).filter(|_| rng.gen_bool(0.5)).collect()).collect();
        if (0..universe).all(|e| lists.iter().any(|s| s.contains(&e))) {
            return SetCoverInstance { universe, sets: lists, budget };
        }
    }
}

pub fn cover_brute(sc: &SetCoverInstance) -> bool {
    (0u64..1 << sc.sets.len()).any(|mask| {
        mask.count_ones() as usize <= sc.budget
            && (0..sc.universe).all(|e| (0..sc.sets.len()).any(|i| mask >> i & 1 == 1 && sc.sets[i].contains(&e)))
    })
}
