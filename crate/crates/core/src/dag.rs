//! Bounded-degree DAGs: look for a core of exactly `p` vertices, and if
//! there is none, delete a sink and try again.

use crate::bounded::{bounded_core_search, SearchConfig};
use crate::degree::{Run, SolverKind};
use crate::engine::{normalize, Instance, Normalized, Solution, Verdict};
use crate::error::{Error, Result};
use crate::set::VertexSet;

pub fn solve_dag(inst: &Instance, cfg: &SearchConfig) -> Result<Run> {
    solve_dag_with(inst, cfg, &mut |sinks: &[usize]| sinks[0])
}

/// [`solve_dag`] with the sink to delete picked by `choose` from the
/// current sinks (in host ids, increasing).
#[doc(hidden)]
pub fn solve_dag_with(inst: &Instance, cfg: &SearchConfig, choose: &mut dyn FnMut(&[usize]) -> usize) -> Result<Run> {
    if let Err(cycle) = inst.graph.topological_order() {
        return Err(Error::Cyclic { cycle });
    }
    let inst = match normalize(inst) {
        Normalized::Immediate(v) => return Ok(Run::new(v, SolverKind::Trivial)),
        Normalized::Reduced(i) => i,
    };
    let n = inst.n();
    let mut run = Run::new(Verdict::No, SolverKind::Dag);
    let mut alive = VertexSet::full(n);
    loop {
        let (graph, map) = inst.graph.induced_subgraph(&alive);
        let current = Instance::new(graph, inst.b, inst.k, inst.p);
        let out = bounded_core_search(&current, inst.p, cfg)?;
        run.trials += out.trials;
        run.capped |= out.capped;
        if let Verdict::Yes(sol) = out.verdict {
            run.verdict = Verdict::Yes(Solution { anchors: map.lift(&sol.anchors), core: map.lift(&sol.core) });
            return Ok(run);
        }
        if alive.len() == inst.p {
            return Ok(run);
        }
        let sinks: Vec<usize> = current.graph.sinks().into_iter().map(|v| map.to_old[v]).collect();
        let t = choose(&sinks);
        if !sinks.contains(&t) {
            return Err(Error::Contract(format!("vertex {} is not a sink", t + 1)));
        }
        alive.remove(t);
    }
}
