use super::{require, CaseTag, EventKind, Potential, SolveResult, Trace};
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;
use crate::utility::MAX_TABLE_ITEMS;

/// How the bundle handed out at each step is found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinimalSetSearch {
    /// Start from a valued set and delete single items (highest item first)
    /// while some remaining agent still values the result at 1. The final
    /// set has no single deletion valued 1 by any remaining agent.
    #[default]
    Greedy,
    /// Smallest valued set, ties broken by bitmask. Exponential in the
    /// number of remaining items.
    Exact,
}

/// EFX⁰₋ allocation for {0,1}-valued utilities, greedy minimal sets.
pub fn solve_boolean<T: Scalar>(inst: &Instance<T>) -> Result<SolveResult<T>> {
    solve_boolean_with(inst, MinimalSetSearch::Greedy)
}

/// Hands out bundles one agent at a time. Each step picks a minimal set of
/// remaining items valued 1 by some remaining agent and gives it to the
/// lowest such agent; when no remaining agent values any remaining set, the
/// lowest remaining agent gets nothing. The last agent takes what is left.
pub fn solve_boolean_with<T: Scalar>(inst: &Instance<T>, search: MinimalSetSearch) -> Result<SolveResult<T>> {
    require(inst.flags().class.boolean, || {
        let bad = (0..inst.agents()).find(|&i| !inst.agent_class(i).boolean).unwrap_or(0);
        format!("boolean needs the flag 'boolean' (missing for agent {})", bad + 1)
    })?;

    let n = inst.agents();
    let one = T::one();
    let mut bundles = vec![ItemSet::EMPTY; n];
    let mut remaining_agents: Vec<usize> = (0..n).collect();
    let mut remaining = inst.ground_set();
    let mut trace = Trace::default();
    trace.record(inst, EventKind::Start, None, None, &bundles, remaining, Potential::None);
    let mut valued_bundles = 0;

    while remaining_agents.len() >= 2 {
        let valued_by_some = |x: ItemSet| remaining_agents.iter().any(|&i| inst.value(i, x) == one);
        let found = match search {
            MinimalSetSearch::Greedy => greedy_minimal(remaining, &valued_by_some)?,
            MinimalSetSearch::Exact => exact_minimal(remaining, &valued_by_some)?,
        };
        let (agent, bundle) = match found {
            Some(x) => {
                let agent = *remaining_agents
                    .iter()
                    .find(|&&i| inst.value(i, x) == one)
                    .expect("set is valued by a remaining agent");
                valued_bundles += 1;
                (agent, x)
            }
            None => (remaining_agents[0], ItemSet::EMPTY),
        };
        bundles[agent] = bundle;
        remaining = remaining.difference(bundle);
        remaining_agents.retain(|&i| i != agent);
        trace.record(inst, EventKind::Assign, Some(agent), None, &bundles, remaining, Potential::None);
    }
    let last = remaining_agents[0];
    bundles[last] = remaining;
    if inst.value(last, remaining) == one {
        valued_bundles += 1;
    }
    trace.record(inst, EventKind::Assign, Some(last), None, &bundles, ItemSet::EMPTY, Potential::None);

    Ok(SolveResult {
        allocation: Allocation::from_partition(bundles),
        case: CaseTag::Boolean { valued_bundles },
        trace,
    })
}

fn greedy_minimal(remaining: ItemSet, valued: &impl Fn(ItemSet) -> bool) -> Result<Option<ItemSet>> {
    let start = if valued(remaining) {
        Some(remaining)
    } else {
        if remaining.len() > MAX_TABLE_ITEMS {
            return Err(Error::TableCap(remaining.len()));
        }
        remaining.subsets().find(|x| valued(*x))
    };
    let Some(mut x) = start else {
        return Ok(None);
    };
    'descend: loop {
        for s in x.iter_rev() {
            if valued(x.without(s)) {
                x = x.without(s);
                continue 'descend;
            }
        }
        return Ok(Some(x));
    }
}

fn exact_minimal(remaining: ItemSet, valued: &impl Fn(ItemSet) -> bool) -> Result<Option<ItemSet>> {
    if remaining.len() > MAX_TABLE_ITEMS {
        return Err(Error::TableCap(remaining.len()));
    }
    let mut subsets: Vec<ItemSet> = remaining.subsets().collect();
    subsets.sort_by_key(|x| (x.len(), x.bits()));
    Ok(subsets.into_iter().find(|x| valued(*x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::{check_allocation, Criterion};
    use crate::utility::UtilityFunction;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn threshold_instance() {
        let u = UtilityFunction::threshold(3, r(1), 2).unwrap();
        let inst = Instance::identical(2, u).unwrap();
        let res = solve_boolean(&inst).unwrap();
        assert_eq!(res.allocation.to_string(), "({1,2},{3})");
        assert!(check_allocation(&inst, &res.allocation, Criterion::EfxZeroMinus).pass());
        assert!(!check_allocation(&inst, &res.allocation, Criterion::EfxPlusZero).pass());
    }

    #[test]
    fn all_zero_gives_everything_to_last() {
        let inst = Instance::identical(3, UtilityFunction::<Rational>::zero(4).unwrap()).unwrap();
        let res = solve_boolean(&inst).unwrap();
        assert_eq!(res.allocation.to_string(), "({},{},{1,2,3,4})");
        assert!(check_allocation(&inst, &res.allocation, Criterion::Ef).pass());
    }

    #[test]
    fn distinct_single_item_wishes() {
        let u1 = UtilityFunction::superset(3, r(1), ItemSet::singleton(0)).unwrap();
        let u2 = UtilityFunction::superset(3, r(1), ItemSet::singleton(1)).unwrap();
        let inst = Instance::new(vec![u1, u2]).unwrap();
        let res = solve_boolean(&inst).unwrap();
        assert_eq!(res.allocation.to_string(), "({1},{2,3})");
        assert!(check_allocation(&inst, &res.allocation, Criterion::Ef).pass());
    }

    #[test]
    fn non_monotone_start_set() {
        // only {2} is valued; the full set is not
        let u = UtilityFunction::table(2, vec![r(0), r(0), r(1), r(0)]).unwrap();
        let inst = Instance::identical(2, u).unwrap();
        for search in [MinimalSetSearch::Greedy, MinimalSetSearch::Exact] {
            let res = solve_boolean_with(&inst, search).unwrap();
            assert_eq!(res.allocation.to_string(), "({2},{1})");
        }
    }

    #[test]
    fn rejects_non_boolean() {
        let u = UtilityFunction::threshold(3, r(2), 2).unwrap();
        let inst = Instance::identical(2, u).unwrap();
        assert!(matches!(solve_boolean(&inst), Err(Error::Unsupported(_))));
    }
}
