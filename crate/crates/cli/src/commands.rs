use std::fmt::Write as _;

use fairdiv_core::algorithms::Algorithm;
use fairdiv_core::fairness::{check_allocation_all, satisfies};
use fairdiv_core::generators::{gen_instance, GeneratorSpec, UtilityKind};
use fairdiv_core::oracle::{search_allocation, SearchMode, SearchOptions, DEFAULT_BUDGET};
use fairdiv_core::{check_allocation, Criterion, Rational, RationalInstance};

use crate::io::{load_allocation, load_instance, write_file, AllocationFile, InstanceFile, Value};
use crate::report::{allocation_json, CheckReport, CriterionCheck, RoundReport, SearchReport, SolveReport};
use crate::{demos, CheckArgs, CliError, DemoArgs, GenArgs, Outcome, SearchArgs, SolveArgs};

pub const BUDGET_VAR: &str = "FAIRDIV_BUDGET";

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

fn criterion(name: &str) -> Result<Criterion, CliError> {
    Ok(name.parse()?)
}

pub fn check(a: &CheckArgs) -> Result<Outcome, CliError> {
    let c = criterion(&a.criterion)?;
    let inst = load_instance(&a.instance)?;
    let alloc = load_allocation(&a.allocation, &inst)?;
    let verdict =
        if a.all_witnesses { check_allocation_all(&inst, &alloc, c) } else { check_allocation(&inst, &alloc, c) };
    let report = CheckReport::new(&inst, &alloc, &verdict);
    let stdout = if a.json { json_line(&report) } else { report.text(&alloc) };
    Ok(Outcome { code: if report.pass { 0 } else { 1 }, stdout, stderr: String::new() })
}

fn order_argument(algorithm: Algorithm, order: &Option<Vec<usize>>) -> Result<Option<Vec<usize>>, CliError> {
    let Some(order) = order else {
        return Ok(None);
    };
    if !matches!(algorithm, Algorithm::Ef1Two | Algorithm::EnvyGraphReference) {
        return Err(CliError::Usage(format!("--order does not apply to {algorithm}")));
    }
    if order.contains(&0) {
        return Err(CliError::Usage("--order uses items 1..m".into()));
    }
    Ok(Some(order.iter().map(|k| k - 1).collect()))
}

fn values(inst: &RationalInstance, alloc: &fairdiv_core::Allocation) -> Vec<Value> {
    (0..inst.agents()).map(|i| Value(inst.value(i, alloc.bundle(i)))).collect()
}

pub fn solve(a: &SolveArgs) -> Result<Outcome, CliError> {
    let algorithm: Algorithm = a.algorithm.parse()?;
    let inst = load_instance(&a.instance)?;
    let order = order_argument(algorithm, &a.order)?;
    let res = algorithm.run(&inst, order.as_deref())?;
    let alloc = &res.allocation;

    let audited = algorithm.guarantee().unwrap_or(Criterion::Ef1);
    let checks = vec![CriterionCheck { criterion: audited.name(), pass: satisfies(&inst, alloc.bundles(), audited) }];
    let report = SolveReport {
        command: "solve",
        algorithm: algorithm.name(),
        allocation: allocation_json(alloc),
        case: res.case.to_string(),
        values: values(&inst, alloc),
        guarantee: algorithm.guarantee().map(Criterion::name),
        checks,
        rounds: res.trace.len(),
    };

    let mut out = Outcome::default();
    if let Some(target) = &a.trace {
        let lines: String = res.trace.rounds.iter().map(|r| json_line(&RoundReport::from(r))).collect();
        match target {
            Some(path) => write_file(path, &lines)?,
            None => out.stdout.push_str(&lines),
        }
    }
    if let Some(path) = &a.out {
        write_file(path, &AllocationFile::from_allocation(alloc).to_json())?;
    }
    out.stdout.push_str(&if a.json { json_line(&report) } else { report.text(alloc) });

    let pass = report.checks[0].pass;
    match algorithm.guarantee() {
        Some(c) if !pass => {
            out.code = 3;
            let _ = writeln!(out.stderr, "internal error: {algorithm} returned an allocation that fails {c}");
        }
        None if !pass => {
            let _ = writeln!(out.stderr, "warning: the {algorithm} allocation {alloc} is not EF1");
        }
        _ => {}
    }
    Ok(out)
}

fn budget() -> Result<u128, CliError> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .replace('_', "")
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_VAR}='{v}' is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn search(a: &SearchArgs) -> Result<Outcome, CliError> {
    let c = criterion(&a.criterion)?;
    let mode: SearchMode = a.mode.parse()?;
    if a.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let inst = load_instance(&a.instance)?;
    let opts = SearchOptions { mode, budget: budget()?, jobs: a.jobs, symmetry: a.symmetry };
    let res = search_allocation(&inst, c, &opts)?;
    let report = SearchReport {
        command: "search",
        criterion: c.name(),
        mode: match mode {
            SearchMode::First => "first",
            SearchMode::All => "all",
            SearchMode::Count => "count",
        },
        symmetry: a.symmetry,
        count: res.count,
        explored: res.explored,
        found: res.found.as_ref().map(allocation_json),
        all: res.all.as_ref().map(|v| v.iter().map(allocation_json).collect()),
    };
    let stdout = if a.json { json_line(&report) } else { report.text(res.found.as_ref(), res.all.as_deref()) };
    Ok(Outcome { code: if res.count > 0 { 0 } else { 1 }, stdout, stderr: String::new() })
}

pub fn gen(a: &GenArgs) -> Result<Outcome, CliError> {
    let kind: UtilityKind = a.class.parse()?;
    let spec = GeneratorSpec::new(kind, a.agents, a.items, a.seed).identical(a.identical).values(a.min, a.max);
    let inst = gen_instance::<Rational>(&spec)?;
    let text = InstanceFile::from_instance(&inst).to_json();
    let mut out = Outcome::default();
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => out.stdout = text,
    }
    Ok(out)
}

pub fn demo(a: &DemoArgs) -> Result<Outcome, CliError> {
    let report = demos::run(&a.name)?;
    let stdout = if a.json { json_line(&report) } else { report.text() };
    Ok(Outcome { code: if report.pass { 0 } else { 1 }, stdout, stderr: String::new() })
}
