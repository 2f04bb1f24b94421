use super::{require, CaseTag, EventKind, Potential, SolveResult, Trace};
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;

fn require_identical_negative_boolean<T: Scalar>(inst: &Instance<T>, what: &str) -> Result<()> {
    let flags = inst.flags();
    require(flags.identical, || format!("{what} needs identical utilities (flag 'identical' missing)"))?;
    require(flags.class.negative_boolean, || {
        format!("{what} needs {{0,-1}}-valued utilities (flag 'negative-boolean' missing)")
    })
}

/// `m · #{i : u(π(i)) = −1} + Σ_{i : u(π(i)) = 0} |π(i)|`.
pub fn potential_phi<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> Result<u64> {
    require_identical_negative_boolean(inst, "the potential")?;
    Ok(phi(inst, alloc.bundles()))
}

fn phi<T: Scalar>(inst: &Instance<T>, bundles: &[ItemSet]) -> u64 {
    let m = inst.items() as u64;
    let u = inst.utility(0);
    bundles.iter().map(|b| if u.value(*b).is_zero() { b.len() as u64 } else { m }).sum()
}

/// EFX⁺₀ allocation for identical {0,−1}-valued utilities.
///
/// Starts with every item at agent 1. While some agent `i` with value −1
/// envies an agent `j` with value 0 and owns an item whose removal keeps
/// `π(i)` at −1, moves the lowest such item from the lexicographically
/// first such pair `(i, j)` to `j`. Those are exactly the non-EFX envies
/// under EFX⁺₀ here. The potential rises by at least one per move and is at
/// most `m · n`.
pub fn solve_negative_boolean_identical<T: Scalar>(inst: &Instance<T>) -> Result<SolveResult<T>> {
    require_identical_negative_boolean(inst, "neg-boolean")?;
    let n = inst.agents();
    let m = inst.items();
    let u = inst.utility(0);
    let mut bundles = vec![ItemSet::EMPTY; n];
    bundles[0] = inst.ground_set();

    let mut trace = Trace::default();
    trace.record(inst, EventKind::Start, None, None, &bundles, ItemSet::EMPTY, Potential::Phi(phi(inst, &bundles)));

    let limit = (m * n) as u64;
    let mut moves = 0u64;
    while let Some((i, j, s)) = first_non_efx_envy(u, &bundles) {
        bundles[i] = bundles[i].without(s);
        bundles[j] = bundles[j].with(s);
        moves += 1;
        if moves > limit {
            return Err(Error::Internal(format!("more than m·n = {limit} moves")));
        }
        trace.record(
            inst,
            EventKind::Move,
            Some(j),
            Some(s),
            &bundles,
            ItemSet::EMPTY,
            Potential::Phi(phi(inst, &bundles)),
        );
    }

    Ok(SolveResult {
        allocation: Allocation::from_partition(bundles),
        case: CaseTag::NegativeBoolean { moves: moves as usize },
        trace,
    })
}

fn first_non_efx_envy<T: Scalar>(
    u: &crate::utility::UtilityFunction<T>,
    bundles: &[ItemSet],
) -> Option<(usize, usize, usize)> {
    let values: Vec<T> = bundles.iter().map(|b| u.value(*b)).collect();
    for (i, own) in bundles.iter().enumerate() {
        if !values[i].is_negative() {
            continue;
        }
        let Some(s) = own.iter().find(|&s| u.value(own.without(s)).is_negative()) else {
            continue;
        };
        if let Some(j) = (0..bundles.len()).find(|&j| j != i && values[j].is_zero()) {
            return Some((i, j, s));
        }
    }
    None
}
