//! Random separation search for solutions with a bounded core.
//!
//! Each trial 2-colors the vertices. If some solution has all its core
//! vertices red and all their outside neighbours blue, its core is a union
//! of weak components of the red subgraph, and choosing those components
//! is a knapsack over (deficient vertices, size) pairs.
//!
//! Seeded colorings come from SplitMix64 run in counter mode: the word
//! holding vertices `64j..64j+63` in trial `i` is
//! `mix(seed + GAMMA * (i * words + j + 1))` with `GAMMA = 0x9E3779B97F4A7C15`
//! and `mix` the SplitMix64 finalizer; vertex `v` is red iff bit `v % 64`
//! of its word is set.

use rayon::prelude::*;

use crate::engine::{verify_solution, Instance, Solution, Verdict};
use crate::error::{Error, Result};
use crate::set::VertexSet;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Red vertex set of a 2-coloring; the rest is blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub red: VertexSet,
}

impl Coloring {
    /// The `trial`-th coloring of the seeded stream.
    pub fn seeded(seed: u64, trial: u64, n: usize) -> Coloring {
        let words = n.div_ceil(64) as u64;
        let mut red = VertexSet::new(n);
        for j in 0..words {
            let counter = trial.wrapping_mul(words).wrapping_add(j).wrapping_add(1);
            let word = mix(seed.wrapping_add(GAMMA.wrapping_mul(counter)));
            for bit in 0..64 {
                let v = (j * 64 + bit) as usize;
                if v >= n {
                    break;
                }
                if word >> bit & 1 == 1 {
                    red.insert(v);
                }
            }
        }
        Coloring { red }
    }
}

/// A red component with the vertices that would need anchoring in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    pub component: VertexSet,
    pub deficient: VertexSet,
}

impl ComponentSummary {
    pub fn anchors_needed(&self) -> usize {
        self.deficient.len()
    }

    pub fn size(&self) -> usize {
        self.component.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Pseudo-random colorings; a negative answer may be wrong with
    /// probability at most `eps`.
    Seeded,
    /// Every coloring with between `p` and `q` red vertices, in increasing
    /// numeric order of the red bit mask.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    pub seed: u64,
    pub eps: f64,
    pub trial_cap: u64,
    /// Largest vertex count accepted in exhaustive mode.
    pub exhaustive_threshold: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: SearchMode::Exhaustive,
            seed: 0,
            eps: 0.01,
            trial_cap: 1_000_000,
            exhaustive_threshold: 20,
        }
    }
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig::default()
    }

    pub fn seeded(seed: u64) -> Self {
        SearchConfig { mode: SearchMode::Seeded, seed, ..SearchConfig::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::Contract(format!("failure probability {} outside (0,1)", self.eps)));
        }
        Ok(())
    }
}

/// Verdict of a bounded search plus how much work it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// `Yes` or `NoUpTo(q)`.
    pub verdict: Verdict,
    pub trials: u64,
    /// The seeded trial count was cut down to `trial_cap`.
    pub capped: bool,
}

/// Trials needed so that `(1 - 2^-(Δ+1)q)^trials <= eps`.
pub fn seeded_trial_count(max_degree: usize, q: usize, eps: f64) -> f64 {
    let exponent = ((max_degree + 1) * q) as f64;
    ((1.0 / eps).ln() * exponent.exp2()).ceil().max(1.0)
}

/// Red components of `G[red]` with their deficient vertices, dropping
/// components that need more than `b` anchors.
pub fn summarize(inst: &Instance, red: &VertexSet) -> Vec<ComponentSummary> {
    let g = &inst.graph;
    g.weak_components_within(red)
        .into_iter()
        .filter_map(|component| {
            let deficient =
                VertexSet::from_iter(g.n(), component.iter().filter(|&v| g.in_degree_within(v, &component) < inst.k));
            (deficient.len() <= inst.b).then_some(ComponentSummary { component, deficient })
        })
        .collect()
}

/// One trial for a fixed coloring.
pub fn run_trial(inst: &Instance, coloring: &Coloring) -> Option<Solution> {
    let summaries = summarize(inst, &coloring.red);
    let items: Vec<(usize, usize)> = summaries.iter().map(|s| (s.anchors_needed(), s.size())).collect();
    let chosen = knapsack_select(&items, inst.b, inst.p)?;
    let n = inst.n();
    let mut anchors = VertexSet::new(n);
    let mut core = VertexSet::new(n);
    for i in chosen {
        anchors.union_with(&summaries[i].deficient);
        core.union_with(&summaries[i].component);
    }
    Some(Solution { anchors, core })
}

/// 0/1 knapsack: indices with total weight at most `capacity` and total
/// value at least `target`. The DP keeps the best value per capacity; the
/// answer uses the least capacity that reaches `target` and the
/// backtrace prefers lower indices.
pub fn knapsack_select(items: &[(usize, usize)], capacity: usize, target: usize) -> Option<Vec<usize>> {
    let r = items.len();
    // best[i][c]: largest value from items[..i] with weight <= c
    let mut best = vec![vec![0usize; capacity + 1]; r + 1];
    for (i, &(weight, value)) in items.iter().enumerate() {
        for c in 0..=capacity {
            let skip = best[i][c];
            best[i + 1][c] = if weight <= c { skip.max(best[i][c - weight] + value) } else { skip };
        }
    }
    let mut c = (0..=capacity).find(|&c| best[r][c] >= target)?;
    let mut chosen = Vec::new();
    for i in (0..r).rev() {
        if best[i + 1][c] != best[i][c] {
            chosen.push(i);
            c -= items[i].0;
        }
    }
    chosen.reverse();
    Some(chosen)
}

/// Looks for a solution whose core has at most `q` vertices. A `Yes` may
/// carry a larger core; `NoUpTo(q)` is exact in exhaustive mode.
pub fn bounded_core_search(inst: &Instance, q: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if q < inst.p {
        return Err(Error::Contract(format!("size bound q = {q} below target p = {}", inst.p)));
    }
    cfg.validate()?;
    let n = inst.n();
    let (hit, trials, capped) = match cfg.mode {
        SearchMode::Exhaustive => {
            if n > cfg.exhaustive_threshold || n >= 64 {
                return Err(Error::ExhaustiveTooLarge { n, threshold: cfg.exhaustive_threshold });
            }
            let total = 1u64 << n;
            let hit = (0..total).into_par_iter().find_map_first(|mask| {
                let reds = mask.count_ones() as usize;
                if reds < inst.p || reds > q {
                    return None;
                }
                let coloring = Coloring { red: VertexSet::from_mask(n, mask) };
                run_trial(inst, &coloring).map(|sol| (mask, sol))
            });
            match hit {
                Some((mask, sol)) => (Some(sol), mask + 1, false),
                None => (None, total, false),
            }
        }
        SearchMode::Seeded => {
            let wanted = seeded_trial_count(inst.graph.max_degree(), q, cfg.eps);
            let capped = wanted > cfg.trial_cap as f64;
            let total = if capped { cfg.trial_cap } else { wanted as u64 };
            let hit = (0..total).into_par_iter().find_map_first(|trial| {
                let coloring = Coloring::seeded(cfg.seed, trial, n);
                run_trial(inst, &coloring).map(|sol| (trial, sol))
            });
            match hit {
                Some((trial, sol)) => (Some(sol), trial + 1, capped),
                None => (None, total, capped),
            }
        }
    };
    let verdict = match hit {
        Some(sol) => {
            if !verify_solution(inst, &sol) {
                return Err(Error::Contract("bounded search assembled an invalid solution".into()));
            }
            Verdict::Yes(sol)
        }
        None => Verdict::NoUpTo(q),
    };
    Ok(SearchOutcome { verdict, trials, capped })
}
