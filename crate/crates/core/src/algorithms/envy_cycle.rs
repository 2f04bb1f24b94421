use super::{check_order, CaseTag, EventKind, Potential, SolveResult, Trace};
use crate::envy::EnvyGraph;
use crate::error::{Error, Result};
use crate::fairness::{check_allocation, Criterion};
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;

/// Generalized envy-graph procedure for mixed items, kept as a reference.
///
/// Items arrive in `order`. An item goes to a source of the envy graph
/// restricted to agents with non-negative marginal value for it, or to a
/// sink of the whole envy graph when nobody has one. Envy cycles are then
/// removed by rotating bundles along them. The output is not EF1 for
/// general utilities; the case tag carries its EF1 verdict.
pub fn run_generalized_envy_graph<T: Scalar>(inst: &Instance<T>, order: &[usize]) -> Result<SolveResult<T>> {
    check_order(order, inst.items())?;
    let n = inst.agents();
    let mut bundles = vec![ItemSet::EMPTY; n];
    let mut pool = inst.ground_set();
    let mut trace = Trace::default();
    trace.record(inst, EventKind::Start, None, None, &bundles, pool, Potential::None);
    let mut shifts = 0usize;

    for &s in order {
        let graph = EnvyGraph::from_bundles(inst, &bundles);
        let willing: Vec<usize> = (0..n)
            .filter(|&i| {
                let gain = inst.value(i, bundles[i].with(s)) - inst.value(i, bundles[i]);
                !gain.is_negative()
            })
            .collect();
        let target = if willing.is_empty() { graph.sink() } else { graph.source_among(&willing) };
        let Some(k) = target else {
            return Err(Error::Internal("envy graph has neither the required source nor a sink".into()));
        };
        bundles[k] = bundles[k].with(s);
        pool = pool.without(s);
        trace.record(inst, EventKind::Place, Some(k), Some(s), &bundles, pool, Potential::None);

        // Each rotation strictly raises the utility of every agent on the
        // cycle, so the loop ends; the cap only guards against bugs.
        let mut guard = 0usize;
        while let Some(cycle) = EnvyGraph::from_bundles(inst, &bundles).find_cycle() {
            let taken: Vec<ItemSet> =
                cycle.iter().enumerate().map(|(t, _)| bundles[cycle[(t + 1) % cycle.len()]]).collect();
            for (agent, bundle) in cycle.iter().zip(taken) {
                bundles[*agent] = bundle;
            }
            shifts += 1;
            trace.record(inst, EventKind::ShiftCycle, Some(cycle[0]), None, &bundles, pool, Potential::None);
            guard += 1;
            if guard > 1_000_000 {
                return Err(Error::Internal("cycle elimination does not terminate".into()));
            }
        }
    }

    let allocation = Allocation::from_partition(bundles);
    let ef1 = check_allocation(inst, &allocation, Criterion::Ef1).pass();
    Ok(SolveResult { allocation, case: CaseTag::EnvyGraph { ef1, shifts }, trace })
}
