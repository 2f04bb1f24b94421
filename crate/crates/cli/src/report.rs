//! Machine-readable reports. Every report serializes to one JSON object;
//! the text forms carry the same information.

use std::fmt::Write as _;

use fairdiv_core::algorithms::{Potential, Round};
use fairdiv_core::fairness::Verdict;
use fairdiv_core::{Allocation, ItemClassification, Rational, RationalInstance, Violation};
use serde::Serialize;

use crate::io::{one_based_items, Value};

fn bundles(a: &Allocation) -> Vec<Vec<usize>> {
    a.bundles().iter().map(|b| one_based_items(*b)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Classes {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub zero: Vec<usize>,
}

impl From<&ItemClassification> for Classes {
    fn from(c: &ItemClassification) -> Self {
        Classes { plus: one_based_items(c.plus), minus: one_based_items(c.minus), zero: one_based_items(c.zero) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item: Option<usize>,
    /// Value of the bundle after removing `item`, from the envier's view.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_after_removal: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub envier: usize,
    pub envied: usize,
    pub own_value: Value,
    pub envied_value: Value,
    pub own_classes: Classes,
    pub envied_classes: Classes,
    pub violations: Vec<ViolationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub criterion: &'static str,
    pub allocation: Vec<Vec<usize>>,
    pub pass: bool,
    pub witnesses: Vec<WitnessReport>,
}

impl CheckReport {
    pub fn new(inst: &RationalInstance, alloc: &Allocation, verdict: &Verdict<Rational>) -> Self {
        let witnesses = verdict
            .violations
            .iter()
            .map(|w| {
                let u = inst.utility(w.envier);
                let violations = w
                    .violations
                    .iter()
                    .map(|v| {
                        let after = match *v {
                            Violation::EnviedItem(s) => Some(u.value(alloc.bundle(w.envied).without(s))),
                            Violation::OwnItem(s) => Some(u.value(alloc.bundle(w.envier).without(s))),
                            _ => None,
                        };
                        ViolationReport {
                            kind: v.kind(),
                            item: v.item().map(|s| s + 1),
                            value_after_removal: after.map(Value),
                        }
                    })
                    .collect();
                WitnessReport {
                    envier: w.envier + 1,
                    envied: w.envied + 1,
                    own_value: Value(w.own_value.clone()),
                    envied_value: Value(w.envied_value.clone()),
                    own_classes: (&w.own_classes).into(),
                    envied_classes: (&w.envied_classes).into(),
                    violations,
                }
            })
            .collect();
        CheckReport {
            command: "check",
            criterion: verdict.criterion.name(),
            allocation: bundles(alloc),
            pass: verdict.pass(),
            witnesses,
        }
    }

    pub fn text(&self, alloc: &Allocation) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "criterion: {}", self.criterion);
        let _ = writeln!(out, "allocation: {alloc}");
        let _ = writeln!(out, "result: {}", if self.pass { "pass" } else { "fail" });
        for w in &self.witnesses {
            let (i, j) = (w.envier, w.envied);
            let _ = writeln!(
                out,
                "agent {i} envies agent {j}: u{i}(π{i}) = {} < u{i}(π{j}) = {}",
                w.own_value.0, w.envied_value.0
            );
            let _ = writeln!(out, "  own bundle    {}", classes_text(&w.own_classes));
            let _ = writeln!(out, "  envied bundle {}", classes_text(&w.envied_classes));
            for v in &w.violations {
                let line = match (v.kind, v.item, &v.value_after_removal) {
                    ("envied-item", Some(s), Some(after)) => {
                        format!("envied-item {s}: u{i}(π{j} − {s}) = {} > {}", after.0, w.own_value.0)
                    }
                    ("own-item", Some(s), Some(after)) => {
                        format!("own-item {s}: u{i}(π{i} − {s}) = {} < {}", after.0, w.envied_value.0)
                    }
                    ("non-emptiness", ..) => "non-emptiness: no item is eligible for removal".to_string(),
                    ("no-removable-item", ..) => {
                        format!("no-removable-item: no single removal from π{i} ∪ π{j} ends the envy")
                    }
                    (kind, ..) => kind.to_string(),
                };
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

fn classes_text(c: &Classes) -> String {
    let list = |v: &[usize]| format!("{{{}}}", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
    format!("S+ = {}  S- = {}  S0 = {}", list(&c.plus), list(&c.minus), list(&c.zero))
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionCheck {
    pub criterion: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub command: &'static str,
    pub algorithm: &'static str,
    pub allocation: Vec<Vec<usize>>,
    pub case: String,
    /// `u_i(π(i))` per agent.
    pub values: Vec<Value>,
    pub guarantee: Option<&'static str>,
    pub checks: Vec<CriterionCheck>,
    pub rounds: usize,
}

impl SolveReport {
    pub fn text(&self, alloc: &Allocation) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algorithm: {}", self.algorithm);
        let _ = writeln!(out, "allocation: {alloc}");
        let _ = writeln!(out, "case: {}", self.case);
        let values: Vec<String> = self.values.iter().map(|v| v.0.to_string()).collect();
        let _ = writeln!(out, "values: {}", values.join(", "));
        let _ = writeln!(out, "rounds: {}", self.rounds);
        for c in &self.checks {
            let _ = writeln!(out, "{}: {}", c.criterion, if c.pass { "pass" } else { "fail" });
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum PotentialReport {
    PoolWelfare { pool: usize, welfare: Value },
    Phi { phi: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundReport {
    pub round: usize,
    pub event: &'static str,
    pub agent: Option<usize>,
    pub item: Option<usize>,
    pub bundles: Vec<Vec<usize>>,
    pub pool: Vec<usize>,
    pub welfare: Value,
    pub potential: Option<PotentialReport>,
}

impl From<&Round<Rational>> for RoundReport {
    fn from(r: &Round<Rational>) -> Self {
        RoundReport {
            round: r.index,
            event: r.event.name(),
            agent: r.agent.map(|i| i + 1),
            item: r.item.map(|s| s + 1),
            bundles: r.bundles.iter().map(|b| one_based_items(*b)).collect(),
            pool: one_based_items(r.pool),
            welfare: Value(r.welfare.clone()),
            potential: match &r.potential {
                Potential::None => None,
                Potential::PoolWelfare { pool, welfare } => {
                    Some(PotentialReport::PoolWelfare { pool: *pool, welfare: Value(welfare.clone()) })
                }
                Potential::Phi(v) => Some(PotentialReport::Phi { phi: *v }),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub command: &'static str,
    pub criterion: &'static str,
    pub mode: &'static str,
    pub symmetry: bool,
    /// Satisfying allocations seen (0 or 1 in `first` mode).
    pub count: u64,
    /// Size of the search space, `n^m`.
    pub explored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all: Option<Vec<Vec<Vec<usize>>>>,
}

impl SearchReport {
    pub fn text(&self, found: Option<&Allocation>, all: Option<&[Allocation]>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "criterion: {}", self.criterion);
        let _ = writeln!(out, "mode: {}", self.mode);
        match self.mode {
            "first" => match found {
                Some(a) => {
                    let _ = writeln!(out, "found: {a}");
                }
                None => {
                    let _ = writeln!(out, "found: none");
                }
            },
            "all" => {
                for a in all.unwrap_or_default() {
                    let _ = writeln!(out, "{a}");
                }
                let _ = writeln!(out, "{} / {}", self.count, self.explored);
            }
            _ => {
                let _ = writeln!(out, "{} / {}", self.count, self.explored);
            }
        }
        out
    }
}

pub fn allocation_json(a: &Allocation) -> Vec<Vec<usize>> {
    bundles(a)
}
