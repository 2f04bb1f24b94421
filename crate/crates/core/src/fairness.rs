//! Envy-freeness and its relaxations.
//!
//! Every criterion has the same shape: for each ordered pair `(i, j)` of
//! distinct agents, either `i` does not envy `j` (condition (i)), or a
//! criterion-specific relaxation holds (condition (ii)). A pair satisfying
//! (i) is never probed for (ii).
//!
//! The four EFX variants differ in which items of the envied bundle `π(j)`
//! and of the envier's own bundle `π(i)` are quantified over:
//!
//! | criterion        | envied bundle | own bundle |
//! |------------------|---------------|------------|
//! | `EfxZeroZero`    | S⁺ ∪ S⁰       | S⁻ ∪ S⁰    |
//! | `EfxZeroMinus`   | S⁺ ∪ S⁰       | S⁻         |
//! | `EfxPlusZero`    | S⁺            | S⁻ ∪ S⁰    |
//! | `EfxPlusMinus`   | S⁺            | S⁻         |
//!
//! Removing an envied-side item must leave `u_i(π(i)) ≥ u_i(π(j) − s)`,
//! removing an own-side item must leave `u_i(π(i) − s) ≥ u_i(π(j))`, and the
//! union of the quantified sets must be non-empty.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance};
use crate::items::ItemSet;
use crate::scalar::Scalar;
use crate::utility::ItemClassification;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Ef,
    Ef1,
    EfxZeroZero,
    EfxZeroMinus,
    EfxPlusZero,
    EfxPlusMinus,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::Ef,
        Criterion::Ef1,
        Criterion::EfxZeroZero,
        Criterion::EfxZeroMinus,
        Criterion::EfxPlusZero,
        Criterion::EfxPlusMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Ef => "ef",
            Criterion::Ef1 => "ef1",
            Criterion::EfxZeroZero => "efx-zero-zero",
            Criterion::EfxZeroMinus => "efx-zero-minus",
            Criterion::EfxPlusZero => "efx-plus-zero",
            Criterion::EfxPlusMinus => "efx-plus-minus",
        }
    }

    pub fn is_efx(self) -> bool {
        self.efx_scope().is_some()
    }

    /// `(zero items on the envied side, zero items on the own side)` for EFX variants.
    fn efx_scope(self) -> Option<(bool, bool)> {
        match self {
            Criterion::EfxZeroZero => Some((true, true)),
            Criterion::EfxZeroMinus => Some((true, false)),
            Criterion::EfxPlusZero => Some((false, true)),
            Criterion::EfxPlusMinus => Some((false, false)),
            Criterion::Ef | Criterion::Ef1 => None,
        }
    }

    /// Criteria this one directly implies.
    pub fn implies(self) -> &'static [Criterion] {
        match self {
            Criterion::Ef => &[Criterion::EfxZeroZero],
            Criterion::EfxZeroZero => &[Criterion::EfxZeroMinus, Criterion::EfxPlusZero, Criterion::Ef1],
            Criterion::EfxZeroMinus | Criterion::EfxPlusZero => &[Criterion::EfxPlusMinus],
            Criterion::Ef1 | Criterion::EfxPlusMinus => &[],
        }
    }

    /// Reflexive-transitive closure of [`Criterion::implies`].
    pub fn is_at_least_as_strong_as(self, other: Criterion) -> bool {
        self == other || self.implies().iter().any(|c| c.is_at_least_as_strong_as(other))
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !matches!(c, '-' | '_')).flat_map(char::to_lowercase).collect();
        Ok(match key.as_str() {
            "ef" => Criterion::Ef,
            "ef1" => Criterion::Ef1,
            "efxzerozero" | "efx00" => Criterion::EfxZeroZero,
            "efxzerominus" | "efx0minus" | "efx0" => Criterion::EfxZeroMinus,
            "efxpluszero" | "efxplus0" => Criterion::EfxPlusZero,
            "efxplusminus" | "efx" => Criterion::EfxPlusMinus,
            _ => {
                let names: Vec<_> = Criterion::ALL.iter().map(|c| c.name()).collect();
                return Err(Error::Precondition(format!(
                    "unknown criterion '{s}', expected one of {}",
                    names.join(", ")
                )));
            }
        })
    }
}

/// One reason a pair fails its criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Plain envy, for EF.
    Envy,
    /// Removing this item from the envied bundle leaves the envy in place.
    EnviedItem(usize),
    /// Removing this item from the envier's own bundle leaves the envy in place.
    OwnItem(usize),
    /// No item of either bundle falls into the quantified classes.
    NonEmptiness,
    /// EF1: no single removal from either bundle removes the envy.
    NoRemovableItem,
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Envy => "envy",
            Violation::EnviedItem(_) => "envied-item",
            Violation::OwnItem(_) => "own-item",
            Violation::NonEmptiness => "non-emptiness",
            Violation::NoRemovableItem => "no-removable-item",
        }
    }

    pub fn item(&self) -> Option<usize> {
        match self {
            Violation::EnviedItem(s) | Violation::OwnItem(s) => Some(*s),
            _ => None,
        }
    }
}

/// Evidence that agent `envier` holds a non-permitted envy towards `envied`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub envier: usize,
    pub envied: usize,
    /// `u_envier(π(envier))`
    pub own_value: T,
    /// `u_envier(π(envied))`
    pub envied_value: T,
    /// Classification of `π(envier)` under the envier's utility.
    pub own_classes: ItemClassification,
    /// Classification of `π(envied)` under the envier's utility.
    pub envied_classes: ItemClassification,
    pub violations: Vec<Violation>,
}

impl<T: Scalar> Witness<T> {
    pub fn has_kind(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind() == kind)
    }

    /// Re-derives every recorded violation from the definitions.
    pub fn replay(&self, inst: &Instance<T>, alloc: &Allocation, c: Criterion) -> bool {
        let u = inst.utility(self.envier);
        let own = alloc.bundle(self.envier);
        let other = alloc.bundle(self.envied);
        if u.value(own) != self.own_value || u.value(other) != self.envied_value {
            return false;
        }
        if u.classify_items(own) != self.own_classes || u.classify_items(other) != self.envied_classes {
            return false;
        }
        if self.own_value >= self.envied_value || self.violations.is_empty() {
            return false;
        }
        let (envied_scope, own_scope) = match c.efx_scope() {
            Some((ez, oz)) => (
                quantified(&self.envied_classes.plus, &self.envied_classes.zero, ez),
                quantified(&self.own_classes.minus, &self.own_classes.zero, oz),
            ),
            None => (ItemSet::EMPTY, ItemSet::EMPTY),
        };
        self.violations.iter().all(|v| match *v {
            Violation::Envy => c == Criterion::Ef,
            Violation::EnviedItem(s) => envied_scope.contains(s) && self.own_value < u.value(other.without(s)),
            Violation::OwnItem(s) => own_scope.contains(s) && u.value(own.without(s)) < self.envied_value,
            Violation::NonEmptiness => c.is_efx() && envied_scope.is_empty() && own_scope.is_empty(),
            Violation::NoRemovableItem => {
                c == Criterion::Ef1
                    && own.union(other).iter().all(|s| u.value(own.without(s)) < u.value(other.without(s)))
            }
        })
    }
}

fn quantified(base: &ItemSet, zero: &ItemSet, with_zero: bool) -> ItemSet {
    if with_zero {
        base.union(*zero)
    } else {
        *base
    }
}

/// Outcome of checking one criterion on one allocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<T> {
    pub criterion: Criterion,
    /// Failing pairs in lexicographic `(envier, envied)` order. By default
    /// only the first failing pair is recorded.
    pub violations: Vec<Witness<T>>,
}

impl<T> Verdict<T> {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Witness<T>> {
        self.violations.first()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvyKind {
    NoEnvy,
    EfxEnvy,
    NonEfxEnvy,
}

/// Checks `alloc` against `c`, stopping at the first failing pair.
pub fn check_allocation<T: Scalar>(inst: &Instance<T>, alloc: &Allocation, c: Criterion) -> Verdict<T> {
    check_bundles(inst, alloc.bundles(), c, false)
}

/// Like [`check_allocation`] but records every failing pair.
pub fn check_allocation_all<T: Scalar>(inst: &Instance<T>, alloc: &Allocation, c: Criterion) -> Verdict<T> {
    check_bundles(inst, alloc.bundles(), c, true)
}

/// Checks a vector of disjoint bundles that need not cover every item.
pub fn check_bundles<T: Scalar>(inst: &Instance<T>, bundles: &[ItemSet], c: Criterion, all_pairs: bool) -> Verdict<T> {
    let n = bundles.len();
    let mut violations = Vec::new();
    'outer: for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(w) = check_pair(inst, bundles, i, j, c) {
                violations.push(w);
                if !all_pairs {
                    break 'outer;
                }
            }
        }
    }
    Verdict { criterion: c, violations }
}

/// `true` when `bundles` satisfy `c`; skips witness construction.
pub fn satisfies<T: Scalar>(inst: &Instance<T>, bundles: &[ItemSet], c: Criterion) -> bool {
    let n = bundles.len();
    (0..n).all(|i| (0..n).all(|j| i == j || pair_ok(inst, bundles, i, j, c)))
}

fn pair_ok<T: Scalar>(inst: &Instance<T>, bundles: &[ItemSet], i: usize, j: usize, c: Criterion) -> bool {
    let u = inst.utility(i);
    let (own, other) = (bundles[i], bundles[j]);
    let own_value = u.value(own);
    let envied_value = u.value(other);
    if own_value >= envied_value {
        return true;
    }
    match c {
        Criterion::Ef => false,
        Criterion::Ef1 => own.union(other).iter().any(|s| u.value(own.without(s)) >= u.value(other.without(s))),
        _ => {
            let (ez, oz) = c.efx_scope().expect("efx criterion");
            let own_cls = u.classify_items(own);
            let env_cls = u.classify_items(other);
            let envied_scope = quantified(&env_cls.plus, &env_cls.zero, ez);
            let own_scope = quantified(&own_cls.minus, &own_cls.zero, oz);
            !(envied_scope.is_empty() && own_scope.is_empty())
                && envied_scope.iter().all(|s| own_value >= u.value(other.without(s)))
                && own_scope.iter().all(|s| u.value(own.without(s)) >= envied_value)
        }
    }
}

fn check_pair<T: Scalar>(
    inst: &Instance<T>,
    bundles: &[ItemSet],
    i: usize,
    j: usize,
    c: Criterion,
) -> Option<Witness<T>> {
    let u = inst.utility(i);
    let (own, other) = (bundles[i], bundles[j]);
    let own_value = u.value(own);
    let envied_value = u.value(other);
    if own_value >= envied_value {
        return None;
    }
    let own_classes = u.classify_items(own);
    let envied_classes = u.classify_items(other);
    let mut violations = Vec::new();
    match c.efx_scope() {
        None if c == Criterion::Ef => violations.push(Violation::Envy),
        None => {
            let removable = own.union(other).iter().any(|s| u.value(own.without(s)) >= u.value(other.without(s)));
            if !removable {
                violations.push(Violation::NoRemovableItem);
            }
        }
        Some((ez, oz)) => {
            let envied_scope = quantified(&envied_classes.plus, &envied_classes.zero, ez);
            let own_scope = quantified(&own_classes.minus, &own_classes.zero, oz);
            for s in envied_scope {
                if own_value < u.value(other.without(s)) {
                    violations.push(Violation::EnviedItem(s));
                }
            }
            for s in own_scope {
                if u.value(own.without(s)) < envied_value {
                    violations.push(Violation::OwnItem(s));
                }
            }
            if envied_scope.is_empty() && own_scope.is_empty() {
                violations.push(Violation::NonEmptiness);
            }
        }
    }
    if violations.is_empty() {
        return None;
    }
    Some(Witness { envier: i, envied: j, own_value, envied_value, own_classes, envied_classes, violations })
}

/// Whether `i`'s view of `j` is envy-free, an envy permitted by the EFX
/// variant `c`, or a non-EFX envy.
pub fn classify_envy<T: Scalar>(
    inst: &Instance<T>,
    alloc: &Allocation,
    i: usize,
    j: usize,
    c: Criterion,
) -> Result<EnvyKind> {
    if !c.is_efx() {
        return Err(Error::Unsupported(format!("envy classification is defined for EFX variants, not {c}")));
    }
    let n = alloc.agents();
    if i >= n || j >= n {
        return Err(Error::Precondition(format!("agents {} and {} must be at most {n}", i + 1, j + 1)));
    }
    if i == j {
        return Err(Error::Precondition("an agent cannot envy itself".into()));
    }
    let bundles = alloc.bundles();
    if inst.value(i, bundles[i]) >= inst.value(i, bundles[j]) {
        return Ok(EnvyKind::NoEnvy);
    }
    Ok(if pair_ok(inst, bundles, i, j, c) { EnvyKind::EfxEnvy } else { EnvyKind::NonEfxEnvy })
}
