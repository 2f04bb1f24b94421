use super::{require, CaseTag, EventKind, Potential, SolveResult, Trace};
use crate::error::{Error, Result};
use crate::fairness::{satisfies, Criterion};
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::{max_of, Scalar};
use crate::utility::UtilityFunction;

/// EFX⁺₀ allocation of chores for identical, monotone non-increasing utilities.
///
/// Keeps a pool of unallocated chores. Each round gives the lowest pooled
/// chore to a happiest agent `k`. If that keeps the partial allocation
/// EFX⁺₀ the chore stays; otherwise `k`'s bundle is cut back to a minimal
/// envious subset of `π(k) + s` and everything else in `π(k) + s` returns
/// to the pool. The first kind of round shrinks the pool without raising
/// welfare, the second strictly lowers welfare.
pub fn solve_efx_chores_identical<T: Scalar>(inst: &Instance<T>) -> Result<SolveResult<T>> {
    let flags = inst.flags();
    require(flags.identical, || "efx-chores needs identical utilities (flag 'identical' missing)".into())?;
    require(flags.class.nonincreasing, || {
        "efx-chores needs monotone utilities (flag 'monotone-nonincreasing' missing)".into()
    })?;

    let n = inst.agents();
    let u = inst.utility(0);
    let mut bundles = vec![ItemSet::EMPTY; n];
    let mut pool = inst.ground_set();
    let mut trace = Trace::default();
    let snapshot = |bundles: &[ItemSet], pool: ItemSet| Potential::PoolWelfare {
        pool: pool.len(),
        welfare: inst.welfare(bundles),
    };
    trace.record(inst, EventKind::Start, None, None, &bundles, pool, snapshot(&bundles, pool));

    let mut repools = 0;
    while let Some(s) = pool.first() {
        let values: Vec<T> = bundles.iter().map(|b| u.value(*b)).collect();
        let k = happiest(&values);
        let candidate = bundles[k].with(s);
        let mut tentative = bundles.clone();
        tentative[k] = candidate;
        if satisfies(inst, &tentative, Criterion::EfxPlusZero) {
            bundles = tentative;
            pool = pool.without(s);
            trace.record(inst, EventKind::Place, Some(k), Some(s), &bundles, pool, snapshot(&bundles, pool));
        } else {
            let kept = minimal_envious_subset(u, candidate, &values)?;
            pool = pool.without(s).union(candidate.difference(kept));
            bundles[k] = kept;
            repools += 1;
            trace.record(inst, EventKind::Repool, Some(k), Some(s), &bundles, pool, snapshot(&bundles, pool));
        }
    }

    Ok(SolveResult {
        allocation: Allocation::from_partition(bundles),
        case: CaseTag::Chores { rounds: trace.len() - 1, repools },
        trace,
    })
}

/// Lowest-index agent with the largest bundle value.
fn happiest<T: Scalar>(values: &[T]) -> usize {
    let best = max_of(values).expect("at least one agent");
    values.iter().position(|v| v == best).unwrap()
}

/// Inclusionwise-minimal envious subset of `candidate`.
///
/// Returns `X ⊆ candidate` with `u(X) < max(thresholds)` such that no single
/// deletion keeps it below the threshold. Items are tried for deletion in
/// ascending order, repeating until nothing can be deleted; for monotone
/// non-increasing `u` this is a single pass and the result has no envious
/// proper subset at all.
pub fn minimal_envious_subset<T: Scalar>(
    u: &UtilityFunction<T>,
    candidate: ItemSet,
    thresholds: &[T],
) -> Result<ItemSet> {
    let Some(limit) = max_of(thresholds) else {
        return Err(Error::Precondition("no thresholds given".into()));
    };
    if !candidate.fits(u.items()) {
        return Err(Error::SetOutOfRange { bits: candidate.bits(), m: u.items() });
    }
    if u.value(candidate) >= *limit {
        return Err(Error::Precondition(format!(
            "{candidate} is not envious: its value {} is not below {limit}",
            u.value(candidate)
        )));
    }
    let mut kept = candidate;
    loop {
        let mut changed = false;
        for r in kept {
            let smaller = kept.without(r);
            if u.value(smaller) < *limit {
                kept = smaller;
                changed = true;
            }
        }
        if !changed {
            return Ok(kept);
        }
    }
}

/// Two-agent EFX⁺₀ chore allocation with non-identical monotone utilities.
///
/// Partitions the chores with agent 1's utility as the common one, then lets
/// agent 2 pick the part it prefers (the first part on ties).
pub fn solve_cut_and_choose_chores<T: Scalar>(inst: &Instance<T>) -> Result<SolveResult<T>> {
    require(inst.agents() == 2, || format!("cut-and-choose needs exactly 2 agents, got {}", inst.agents()))?;
    require(inst.flags().class.nonincreasing, || {
        let bad = (0..2).find(|&i| !inst.agent_class(i).nonincreasing).unwrap_or(0);
        format!("cut-and-choose needs the flag 'monotone-nonincreasing' (missing for agent {})", bad + 1)
    })?;

    let cutter = Instance::identical(2, inst.utility(0).clone())?;
    let cut = solve_efx_chores_identical(&cutter)?;
    let (first, second) = (cut.allocation.bundle(0), cut.allocation.bundle(1));
    let chooser = inst.utility(1);
    let took_first = chooser.value(first) >= chooser.value(second);
    let bundles = if took_first { vec![second, first] } else { vec![first, second] };

    // Re-evaluate the cutting rounds under the real instance.
    let mut trace = Trace::default();
    for r in &cut.trace.rounds {
        let potential = Potential::PoolWelfare { pool: r.pool.len(), welfare: inst.welfare(&r.bundles) };
        trace.record(inst, r.event, r.agent, r.item, &r.bundles, r.pool, potential);
    }
    let potential = Potential::PoolWelfare { pool: 0, welfare: inst.welfare(&bundles) };
    trace.record(inst, EventKind::Choose, Some(1), None, &bundles, ItemSet::EMPTY, potential);

    Ok(SolveResult {
        allocation: Allocation::from_partition(bundles),
        case: CaseTag::CutAndChoose { chooser_took_first: took_first },
        trace,
    })
}
