//! Constructive allocation procedures.
//!
//! | procedure                            | setting                                   | guarantee |
//! |--------------------------------------|-------------------------------------------|-----------|
//! | [`solve_ef1_two_agents`]             | two agents, arbitrary utilities           | EF1       |
//! | [`solve_efx_chores_identical`]       | identical monotone non-increasing         | EFX⁺₀     |
//! | [`solve_cut_and_choose_chores`]      | two agents, monotone non-increasing       | EFX⁺₀     |
//! | [`solve_boolean`]                    | {0,1}-valued utilities                    | EFX⁰₋     |
//! | [`solve_negative_boolean_identical`] | identical {0,−1}-valued utilities         | EFX⁺₀     |
//! | [`run_generalized_envy_graph`]       | reference only, no guarantee in general   | none      |
//!
//! Ties are always broken towards the lowest index, so every procedure is a
//! deterministic function of its inputs.

mod boolean;
mod chores;
mod ef1_two;
mod envy_cycle;
mod neg_boolean;

use std::fmt;
use std::str::FromStr;

pub use boolean::{solve_boolean, solve_boolean_with, MinimalSetSearch};
pub use chores::{minimal_envious_subset, solve_cut_and_choose_chores, solve_efx_chores_identical};
pub use ef1_two::{solve_ef1_two_agents, Ef1Case};
pub use envy_cycle::run_generalized_envy_graph;
pub use neg_boolean::{potential_phi, solve_negative_boolean_identical};

use crate::error::{Error, Result};
use crate::fairness::Criterion;
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// Initial state before any step.
    Start,
    /// An item was added to a bundle.
    Place,
    /// A bundle was cut back to a minimal envious subset and the rest returned to the pool.
    Repool,
    /// An item moved from one bundle to another.
    Move,
    /// Bundles rotated along an envy cycle.
    ShiftCycle,
    /// A bundle was fixed for an agent.
    Assign,
    /// A bundle choice was made (cut-and-choose).
    Choose,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Start => "start",
            EventKind::Place => "place",
            EventKind::Repool => "repool",
            EventKind::Move => "move",
            EventKind::ShiftCycle => "shift-cycle",
            EventKind::Assign => "assign",
            EventKind::Choose => "choose",
        }
    }
}

/// Progress measure recorded with each round.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential<T> {
    None,
    /// Unallocated chores and utilitarian welfare.
    PoolWelfare {
        pool: usize,
        welfare: T,
    },
    /// The integer potential of the negative-Boolean procedure.
    Phi(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Round<T> {
    pub index: usize,
    pub event: EventKind,
    /// Agent whose bundle changed, where meaningful.
    pub agent: Option<usize>,
    /// Item involved, where meaningful.
    pub item: Option<usize>,
    pub bundles: Vec<ItemSet>,
    pub pool: ItemSet,
    pub welfare: T,
    pub potential: Potential<T>,
}

/// Round-by-round log of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace<T> {
    pub rounds: Vec<Round<T>>,
}

impl<T> Default for Trace<T> {
    fn default() -> Self {
        Trace { rounds: Vec::new() }
    }
}

impl<T: Scalar> Trace<T> {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn record(
        &mut self,
        inst: &Instance<T>,
        event: EventKind,
        agent: Option<usize>,
        item: Option<usize>,
        bundles: &[ItemSet],
        pool: ItemSet,
        potential: Potential<T>,
    ) {
        let index = self.rounds.len();
        self.rounds.push(Round {
            index,
            event,
            agent,
            item,
            bundles: bundles.to_vec(),
            pool,
            welfare: inst.welfare(bundles),
            potential,
        });
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Rounds of the given kind.
    pub fn count(&self, event: EventKind) -> usize {
        self.rounds.iter().filter(|r| r.event == event).count()
    }

    /// Audits a chore-allocation trace: every round must either shrink the
    /// pool without raising welfare, or strictly lower welfare. Returns the
    /// longest run of rounds of the first kind between welfare decreases.
    pub fn audit_pool_welfare(&self) -> Result<usize, String> {
        let mut run = 0usize;
        let mut longest = 0usize;
        for pair in self.rounds.windows(2) {
            let (prev, cur) = (&pair[0], &pair[1]);
            if cur.welfare < prev.welfare {
                run = 0;
            } else if cur.pool.len() < prev.pool.len() && cur.welfare <= prev.welfare {
                run += 1;
                longest = longest.max(run);
            } else {
                return Err(format!(
                    "round {}: pool {} -> {}, welfare {} -> {}",
                    cur.index,
                    prev.pool.len(),
                    cur.pool.len(),
                    prev.welfare,
                    cur.welfare
                ));
            }
        }
        Ok(longest)
    }

    /// The recorded integer potential, if every round carries one.
    pub fn phi_values(&self) -> Option<Vec<u64>> {
        self.rounds
            .iter()
            .map(|r| match r.potential {
                Potential::Phi(v) => Some(v),
                _ => None,
            })
            .collect()
    }
}

/// Which branch of a procedure produced the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseTag {
    Ef1(Ef1Case),
    Chores { rounds: usize, repools: usize },
    CutAndChoose { chooser_took_first: bool },
    Boolean { valued_bundles: usize },
    NegativeBoolean { moves: usize },
    EnvyGraph { ef1: bool, shifts: usize },
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Ef1(c) => write!(f, "{c}"),
            CaseTag::Chores { rounds, repools } => {
                write!(f, "rounds={rounds} repools={repools}")
            }
            CaseTag::CutAndChoose { chooser_took_first } => {
                let which = if *chooser_took_first { 1 } else { 2 };
                write!(f, "chooser took part {which}")
            }
            CaseTag::Boolean { valued_bundles } => write!(f, "valued bundles={valued_bundles}"),
            CaseTag::NegativeBoolean { moves } => write!(f, "moves={moves}"),
            CaseTag::EnvyGraph { ef1, shifts } => {
                write!(f, "shifts={shifts} ef1={}", if *ef1 { "pass" } else { "fail" })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<T> {
    pub allocation: Allocation,
    pub case: CaseTag,
    pub trace: Trace<T>,
}

/// The procedures by command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Ef1Two,
    EfxChores,
    CutChoose,
    Boolean,
    NegBoolean,
    EnvyGraphReference,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Ef1Two,
        Algorithm::EfxChores,
        Algorithm::CutChoose,
        Algorithm::Boolean,
        Algorithm::NegBoolean,
        Algorithm::EnvyGraphReference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ef1Two => "ef1-two",
            Algorithm::EfxChores => "efx-chores",
            Algorithm::CutChoose => "cut-choose",
            Algorithm::Boolean => "boolean",
            Algorithm::NegBoolean => "neg-boolean",
            Algorithm::EnvyGraphReference => "aziz-ref",
        }
    }

    /// The criterion the procedure's output is proven to satisfy.
    pub fn guarantee(self) -> Option<Criterion> {
        match self {
            Algorithm::Ef1Two => Some(Criterion::Ef1),
            Algorithm::EfxChores | Algorithm::CutChoose | Algorithm::NegBoolean => Some(Criterion::EfxPlusZero),
            Algorithm::Boolean => Some(Criterion::EfxZeroMinus),
            Algorithm::EnvyGraphReference => None,
        }
    }

    /// Runs the procedure. `order` is only used by the order-driven procedures
    /// and defaults to the identity.
    pub fn run<T: Scalar>(self, inst: &Instance<T>, order: Option<&[usize]>) -> Result<SolveResult<T>> {
        let identity: Vec<usize> = (0..inst.items()).collect();
        let order = order.unwrap_or(&identity);
        match self {
            Algorithm::Ef1Two => solve_ef1_two_agents(inst, order),
            Algorithm::EfxChores => solve_efx_chores_identical(inst),
            Algorithm::CutChoose => solve_cut_and_choose_chores(inst),
            Algorithm::Boolean => solve_boolean(inst),
            Algorithm::NegBoolean => solve_negative_boolean_identical(inst),
            Algorithm::EnvyGraphReference => run_generalized_envy_graph(inst, order),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
            Error::Precondition(format!("unknown algorithm '{s}', expected one of {}", names.join(", ")))
        })
    }
}

/// Validates that `order` is a permutation of `0..m`.
pub(crate) fn check_order(order: &[usize], m: usize) -> Result<()> {
    if order.len() != m {
        return Err(Error::Precondition(format!("order lists {} items, the instance has {m}", order.len())));
    }
    let mut seen = vec![false; m];
    for &s in order {
        if s >= m || std::mem::replace(&mut seen[s], true) {
            return Err(Error::Precondition(format!(
                "order is not a permutation of the items (offending entry {})",
                s + 1
            )));
        }
    }
    Ok(())
}

pub(crate) fn require(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(what()))
    }
}
