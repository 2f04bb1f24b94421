//! Built-in worked examples with hard-coded expected outcomes.

use std::fmt::Write as _;

use fairdiv_core::algorithms::{
    potential_phi, run_generalized_envy_graph, solve_boolean, solve_ef1_two_agents, solve_negative_boolean_identical,
    EventKind, Potential,
};
use fairdiv_core::fairness::satisfies;
use fairdiv_core::oracle::{search_allocation, SearchOptions};
use fairdiv_core::{
    check_allocation, Allocation, Criterion, Instance, ItemSet, Rational, RationalInstance, UtilityFunction,
};
use serde::Serialize;

use crate::CliError;

pub const NAMES: [&str; 7] = [
    "thm2-counterexample",
    "aziz-flaw",
    "efx00-two-goods",
    "nonemptiness-example",
    "boolean-no-efxplus0",
    "negboolean-no-efx0minus",
    "thm5-run",
];

#[derive(Debug, Clone, Serialize)]
pub struct DemoCheck {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub demo: &'static str,
    pub description: &'static str,
    pub checks: Vec<DemoCheck>,
    pub pass: bool,
}

impl DemoReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "demo: {}", self.demo);
        let _ = writeln!(out, "{}", self.description);
        let w = self.checks.iter().map(|c| c.check.chars().count()).max().unwrap_or(0);
        let e = self.checks.iter().map(|c| c.expected.chars().count()).max().unwrap_or(0).max(8);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "  {:<w$}  expected {:<e$}  actual {}  {}",
                c.check,
                c.expected,
                c.actual,
                if c.ok { "ok" } else { "MISMATCH" },
            );
        }
        let _ = writeln!(out, "result: {}", if self.pass { "match" } else { "mismatch" });
        out
    }
}

struct Builder {
    checks: Vec<DemoCheck>,
}

impl Builder {
    fn new() -> Self {
        Builder { checks: Vec::new() }
    }

    fn expect(&mut self, check: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let ok = expected == actual;
        self.checks.push(DemoCheck { check: check.into(), expected, actual, ok });
    }

    fn finish(self, demo: &'static str, description: &'static str) -> DemoReport {
        let pass = self.checks.iter().all(|c| c.ok);
        DemoReport { demo, description, checks: self.checks, pass }
    }
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn table(m: usize, vals: &[i64]) -> UtilityFunction<Rational> {
    UtilityFunction::table(m, vals.iter().map(|&v| r(v)).collect()).expect("valid demo table")
}

fn alloc(bundles: &[&[usize]], m: usize) -> Allocation {
    let sets = bundles.iter().map(|b| ItemSet::from_items(b.iter().map(|s| s - 1))).collect();
    Allocation::new(sets, m).expect("valid demo allocation")
}

fn count(inst: &RationalInstance, c: Criterion) -> Result<String, CliError> {
    let res = search_allocation(inst, c, &SearchOptions::default())?;
    Ok(format!("{} / {}", res.count, res.explored))
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// The non-monotone identical utility with no EFX⁺₋ allocation for two agents.
pub fn lattice_instance() -> RationalInstance {
    Instance::identical(2, table(3, &[0, 1, 2, 3, 0, 0, 3, 4])).expect("valid")
}

/// Identical utility on which the generalized envy-graph procedure is not EF1.
pub fn flaw_instance() -> RationalInstance {
    Instance::identical(2, table(3, &[0, 1, -1, 1, -1, 1, 1, 1])).expect("valid")
}

pub fn two_goods_instance() -> RationalInstance {
    Instance::identical(2, UtilityFunction::additive(vec![r(1), r(0)]).expect("valid")).expect("valid")
}

pub fn nonemptiness_instance() -> RationalInstance {
    Instance::identical(2, table(2, &[0, 2, 2, 1])).expect("valid")
}

/// `u(X) = value` iff `|X| ≥ 2`, three items, two agents.
pub fn threshold_instance(value: i64) -> RationalInstance {
    Instance::identical(2, UtilityFunction::threshold(3, r(value), 2).expect("valid")).expect("valid")
}

/// Items of the first witness for `c`, 1-based, or "none".
fn witness_items(inst: &RationalInstance, a: &Allocation, c: Criterion) -> String {
    match check_allocation(inst, a, c).first() {
        None => "none".into(),
        Some(w) => {
            let items: Vec<String> =
                w.violations.iter().filter_map(|v| v.item()).map(|s| (s + 1).to_string()).collect();
            format!("agent {} -> {}: items {{{}}}", w.envier + 1, w.envied + 1, items.join(","))
        }
    }
}

fn thm2() -> Result<DemoReport, CliError> {
    let inst = lattice_instance();
    let mut b = Builder::new();
    b.expect("efx-plus-minus count", "0 / 8", count(&inst, Criterion::EfxPlusMinus)?);
    let cases: [(&[&[usize]], &str); 4] = [
        (&[&[1, 2, 3], &[]], "agent 2 -> 1: items {1,3}"),
        (&[&[1, 2], &[3]], "agent 2 -> 1: items {1,2}"),
        (&[&[2, 3], &[1]], "agent 2 -> 1: items {3}"),
        (&[&[1, 3], &[2]], "agent 1 -> 2: items {3}"),
    ];
    for (bundles, expected) in cases {
        let a = alloc(bundles, 3);
        b.expect(format!("witness for {a}"), expected, witness_items(&inst, &a, Criterion::EfxPlusMinus));
    }
    let ef1 = search_allocation(&inst, Criterion::Ef1, &SearchOptions::mode(fairdiv_core::oracle::SearchMode::First))?;
    let found = ef1.found.map(|a| a.to_string()).unwrap_or_else(|| "none".into());
    b.expect("first ef1 allocation", "({1,2,3},{})", found);
    Ok(b.finish(
        "thm2-counterexample",
        "Two agents, identical non-monotone utility u(1)=1 u(2)=2 u(3)=0 u(12)=3 u(13)=0 u(23)=3 u(123)=4: \
         no EFX+- allocation exists, though EF1 ones do.",
    ))
}

fn aziz_flaw() -> Result<DemoReport, CliError> {
    let inst = flaw_instance();
    let order = [0, 1, 2];
    let mut b = Builder::new();
    let reference = run_generalized_envy_graph(&inst, &order)?.allocation;
    b.expect("aziz-ref allocation", "({1,2,3},{})", &reference);
    b.expect("aziz-ref ef1", "fail", pass_fail(satisfies(&inst, reference.bundles(), Criterion::Ef1)));
    let ours = solve_ef1_two_agents(&inst, &order)?;
    b.expect("ef1-two allocation", "({1},{2,3})", &ours.allocation);
    b.expect("ef1-two case", "equality at j=1 (agent 1)", &ours.case);
    b.expect("ef1-two ef1", "pass", pass_fail(satisfies(&inst, ours.allocation.bundles(), Criterion::Ef1)));
    Ok(b.finish(
        "aziz-flaw",
        "Identical utility u(1)=1 u(2)=u(3)=-1, every 2- and 3-item set worth 1, items arriving 1,2,3: \
         the generalized envy-graph procedure gives everything to agent 1, which is not EF1.",
    ))
}

fn two_goods() -> Result<DemoReport, CliError> {
    let inst = two_goods_instance();
    let mut b = Builder::new();
    b.expect("efx-zero-zero count", "0 / 4", count(&inst, Criterion::EfxZeroZero)?);
    b.expect("efx-zero-minus count", "2 / 4", count(&inst, Criterion::EfxZeroMinus)?);
    b.expect("efx-plus-zero count", "2 / 4", count(&inst, Criterion::EfxPlusZero)?);
    Ok(b.finish(
        "efx00-two-goods",
        "Two agents, two goods, identical additive values 1 and 0: no EFX00 allocation exists.",
    ))
}

fn nonemptiness() -> Result<DemoReport, CliError> {
    let inst = nonemptiness_instance();
    let a = alloc(&[&[], &[1, 2]], 2);
    let mut b = Builder::new();
    let verdict = check_allocation(&inst, &a, Criterion::EfxPlusMinus);
    b.expect("efx-plus-minus on ({},{1,2})", "fail", pass_fail(verdict.pass()));
    let kinds = verdict
        .first()
        .map(|w| w.violations.iter().map(|v| v.kind()).collect::<Vec<_>>().join(","))
        .unwrap_or_else(|| "none".into());
    b.expect("witness kind", "non-emptiness", kinds);
    let classes = inst.utility(0).classify_items(ItemSet::full(2));
    b.expect(
        "sign sets of {1,2}",
        "S+ = {}  S- = {1,2}  S0 = {}",
        format!(
            "S+ = {}  S- = {}  S0 = {}",
            classes.plus.display_one_based(),
            classes.minus.display_one_based(),
            classes.zero.display_one_based()
        ),
    );
    Ok(b.finish(
        "nonemptiness-example",
        "Identical utility u(1)=u(2)=2, u(12)=1: agent 1 with nothing envies agent 2 holding {1,2}; \
         no item qualifies for removal, so only the non-emptiness clause rejects the allocation.",
    ))
}

fn boolean_no_efxplus0() -> Result<DemoReport, CliError> {
    let inst = threshold_instance(1);
    let mut b = Builder::new();
    b.expect("efx-plus-zero count", "0 / 8", count(&inst, Criterion::EfxPlusZero)?);
    let res = solve_boolean(&inst)?;
    b.expect("boolean allocation", "({1,2},{3})", &res.allocation);
    b.expect(
        "boolean efx-zero-minus",
        "pass",
        pass_fail(satisfies(&inst, res.allocation.bundles(), Criterion::EfxZeroMinus)),
    );
    Ok(b.finish(
        "boolean-no-efxplus0",
        "Two agents, three items, u(X)=1 iff |X|>=2: the Boolean procedure finds an EFX0- allocation, \
         but no EFX+0 allocation exists.",
    ))
}

fn negboolean_no_efx0minus() -> Result<DemoReport, CliError> {
    let inst = threshold_instance(-1);
    let mut b = Builder::new();
    b.expect("efx-zero-minus count", "0 / 8", count(&inst, Criterion::EfxZeroMinus)?);
    let res = solve_negative_boolean_identical(&inst)?;
    b.expect(
        "neg-boolean efx-plus-zero",
        "pass",
        pass_fail(satisfies(&inst, res.allocation.bundles(), Criterion::EfxPlusZero)),
    );
    Ok(b.finish(
        "negboolean-no-efx0minus",
        "Two agents, three items, u(X)=-1 iff |X|>=2: an EFX+0 allocation exists, but no EFX0- allocation.",
    ))
}

fn thm5_run() -> Result<DemoReport, CliError> {
    let inst = threshold_instance(-1);
    let res = solve_negative_boolean_identical(&inst)?;
    let mut b = Builder::new();
    let start = alloc(&[&[1, 2, 3], &[]], 3);
    b.expect("phi of ({1,2,3},{})", 3, potential_phi(&inst, &start)?);
    b.expect("moves", 1, res.trace.count(EventKind::Move));
    let moved: Vec<String> = res
        .trace
        .rounds
        .iter()
        .filter(|r| r.event == EventKind::Move)
        .map(|r| format!("item {} to agent {}", r.item.map_or(0, |s| s + 1), r.agent.map_or(0, |i| i + 1)))
        .collect();
    b.expect("move", "item 1 to agent 2", moved.join("; "));
    let phis: Vec<String> = res
        .trace
        .rounds
        .iter()
        .map(|r| match r.potential {
            Potential::Phi(v) => v.to_string(),
            _ => "-".into(),
        })
        .collect();
    b.expect("phi per round", "3 -> 4", phis.join(" -> "));
    b.expect("final allocation", "({2,3},{1})", &res.allocation);
    b.expect("efx-plus-zero", "pass", pass_fail(satisfies(&inst, res.allocation.bundles(), Criterion::EfxPlusZero)));
    Ok(b.finish(
        "thm5-run",
        "Negative-Boolean procedure on u(X)=-1 iff |X|>=2 with two agents: one move, potential 3 -> 4.",
    ))
}

pub fn run(name: &str) -> Result<DemoReport, CliError> {
    match name {
        "thm2-counterexample" => thm2(),
        "aziz-flaw" => aziz_flaw(),
        "efx00-two-goods" => two_goods(),
        "nonemptiness-example" => nonemptiness(),
        "boolean-no-efxplus0" => boolean_no_efxplus0(),
        "negboolean-no-efx0minus" => negboolean_no_efx0minus(),
        "thm5-run" => thm5_run(),
        _ => Err(CliError::Usage(format!("unknown demo '{name}', available: {}", NAMES.join(", ")))),
    }
}
