use std::fmt;

use super::{check_order, CaseTag, EventKind, Potential, SolveResult, Trace};
use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;

/// Branch of the prefix/suffix argument that fired. `split` is the number of
/// items in the prefix `F_split`; `agent` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ef1Case {
    /// Some agent values `F_split` and `L_split` equally.
    Equality { split: usize, agent: usize },
    /// `agent` weakly prefers the prefix and the other weakly prefers the suffix.
    Crossing { split: usize, agent: usize },
    /// `u₁(S) > 0`, `u₁(F_j) ≤ u₁(L_{j+1})`: agent 1 takes `L_{j+1}`.
    Subcase11 { split: usize },
    /// `u₁(S) > 0`, `u₁(F_j) > u₁(L_{j+1})`: agent 1 takes `F_j`.
    Subcase12 { split: usize },
    /// `u₁(S) < 0`, `u₁(F_j) ≥ u₁(L_{j+1})`: agent 1 takes `F_{j+1}`.
    Subcase21 { split: usize },
    /// `u₁(S) < 0`, `u₁(F_j) < u₁(L_{j+1})`: agent 1 takes `L_j`.
    Subcase22 { split: usize },
}

impl fmt::Display for Ef1Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Ef1Case::Equality { split, agent } => {
                write!(f, "equality at j={split} (agent {})", agent + 1)
            }
            Ef1Case::Crossing { split, agent } => {
                write!(f, "crossing at j={split} (agent {})", agent + 1)
            }
            Ef1Case::Subcase11 { split } => write!(f, "subcase 1.1 at j={split}"),
            Ef1Case::Subcase12 { split } => write!(f, "subcase 1.2 at j={split}"),
            Ef1Case::Subcase21 { split } => write!(f, "subcase 2.1 at j={split}"),
            Ef1Case::Subcase22 { split } => write!(f, "subcase 2.2 at j={split}"),
        }
    }
}

/// EF1 allocation for two agents with arbitrary utilities.
///
/// Both bundles are always a prefix `F_t` and the complementary suffix `L_t`
/// of `order`. The scan order is: equal valuations of some split, then a
/// split the two agents rank oppositely, then the sign-change argument on
/// agent 1's valuations. Each scan takes the first hit in ascending split
/// order.
#[allow(clippy::needless_range_loop)]
pub fn solve_ef1_two_agents<T: Scalar>(inst: &Instance<T>, order: &[usize]) -> Result<SolveResult<T>> {
    if inst.agents() != 2 {
        return Err(Error::Unsupported(format!(
            "the prefix/suffix procedure needs exactly 2 agents, got {}",
            inst.agents()
        )));
    }
    let m = inst.items();
    check_order(order, m)?;

    let mut prefixes = Vec::with_capacity(m + 1);
    let mut acc = ItemSet::EMPTY;
    prefixes.push(acc);
    for &s in order {
        acc = acc.with(s);
        prefixes.push(acc);
    }
    let full = inst.ground_set();
    let prefix = |j: usize| prefixes[j];
    let suffix = |j: usize| full.difference(prefixes[j]);
    // vals[i][j] = (u_i(F_j), u_i(L_j))
    let vals: Vec<Vec<(T, T)>> =
        (0..2).map(|i| (0..=m).map(|j| (inst.value(i, prefix(j)), inst.value(i, suffix(j)))).collect()).collect();

    let (bundles, case) = 'found: {
        for j in 0..=m {
            for i in 0..2 {
                let (f, l) = &vals[i][j];
                if f == l {
                    let o = 1 - i;
                    let (fo, lo) = &vals[o][j];
                    let mut b = [ItemSet::EMPTY; 2];
                    if fo <= lo {
                        b[i] = prefix(j);
                        b[o] = suffix(j);
                    } else {
                        b[i] = suffix(j);
                        b[o] = prefix(j);
                    }
                    break 'found (b, Ef1Case::Equality { split: j, agent: i });
                }
            }
        }
        for j in 0..=m {
            for i in 0..2 {
                let o = 1 - i;
                let (f, l) = &vals[i][j];
                let (fo, lo) = &vals[o][j];
                if f >= l && fo <= lo {
                    let mut b = [ItemSet::EMPTY; 2];
                    b[i] = prefix(j);
                    b[o] = suffix(j);
                    break 'found (b, Ef1Case::Crossing { split: j, agent: i });
                }
            }
        }
        let whole = inst.value(0, full);
        let u1 = &vals[0];
        let positive = whole.is_positive();
        let flip = (0..m).find(|&j| {
            let (f, l) = &u1[j];
            let (f1, l1) = &u1[j + 1];
            if positive {
                f < l && f1 > l1
            } else {
                f > l && f1 < l1
            }
        });
        let Some(j) = flip else {
            return Err(Error::Internal("no sign change between prefix and suffix valuations".into()));
        };
        let f_j = &u1[j].0;
        let l_next = &u1[j + 1].1;
        break 'found if positive {
            if f_j <= l_next {
                ([suffix(j + 1), prefix(j + 1)], Ef1Case::Subcase11 { split: j })
            } else {
                ([prefix(j), suffix(j)], Ef1Case::Subcase12 { split: j })
            }
        } else if f_j >= l_next {
            ([prefix(j + 1), suffix(j + 1)], Ef1Case::Subcase21 { split: j })
        } else {
            ([suffix(j), prefix(j)], Ef1Case::Subcase22 { split: j })
        };
    };

    let mut trace = Trace::default();
    trace.record(inst, EventKind::Start, None, None, &[ItemSet::EMPTY; 2], full, Potential::None);
    trace.record(inst, EventKind::Assign, None, None, &bundles, ItemSet::EMPTY, Potential::None);
    Ok(SolveResult { allocation: Allocation::from_partition(bundles.to_vec()), case: CaseTag::Ef1(case), trace })
}
