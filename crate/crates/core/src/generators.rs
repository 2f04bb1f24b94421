//! Seeded random instances for every utility class.
//!
//! The random stream is SplitMix64 seeded directly with the 64-bit seed:
//!
//! ```text
//! state ← state + 0x9E3779B97F4A7C15
//! z ← state
//! z ← (z ⊕ (z >> 30)) · 0xBF58476D1CE4E5B9
//! z ← (z ⊕ (z >> 27)) · 0x94D049BB133111EB
//! output z ⊕ (z >> 31)
//! ```
//!
//! An integer in `[lo, hi]` is `lo + (x mod (hi − lo + 1))` for the next
//! output `x`; a fair coin is the top bit of the next output. Draws happen
//! agent by agent (once when identical) and, within an agent, in ascending
//! bitmask order for tables or ascending item order for additive values.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::items::ItemSet;
use crate::scalar::Scalar;
use crate::utility::{UtilityFunction, MAX_TABLE_ITEMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UtilityKind {
    /// Arbitrary table.
    General,
    /// Monotone non-increasing table.
    Chores,
    /// Monotone non-decreasing table.
    Goods,
    Additive,
    /// {0,1}-valued table.
    Boolean,
    /// {0,−1}-valued table.
    NegativeBoolean,
}

impl UtilityKind {
    pub const ALL: [UtilityKind; 6] = [
        UtilityKind::General,
        UtilityKind::Chores,
        UtilityKind::Goods,
        UtilityKind::Additive,
        UtilityKind::Boolean,
        UtilityKind::NegativeBoolean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UtilityKind::General => "general",
            UtilityKind::Chores => "chores",
            UtilityKind::Goods => "goods",
            UtilityKind::Additive => "additive",
            UtilityKind::Boolean => "boolean",
            UtilityKind::NegativeBoolean => "negative-boolean",
        }
    }

    fn uses_table(self) -> bool {
        self != UtilityKind::Additive
    }
}

impl fmt::Display for UtilityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UtilityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "monotone-nonincreasing" => "chores",
            "monotone-nondecreasing" => "goods",
            "neg-boolean" => "negative-boolean",
            other => other,
        };
        UtilityKind::ALL.into_iter().find(|k| k.name() == alias).ok_or_else(|| {
            let names: Vec<_> = UtilityKind::ALL.iter().map(|k| k.name()).collect();
            Error::Precondition(format!("unknown class '{s}', expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: UtilityKind,
    pub identical: bool,
    pub agents: usize,
    pub items: usize,
    /// Inclusive integer range for sampled values.
    pub min_value: i64,
    pub max_value: i64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: UtilityKind, agents: usize, items: usize, seed: u64) -> Self {
        GeneratorSpec { kind, identical: false, agents, items, min_value: -10, max_value: 10, seed }
    }

    pub fn identical(mut self, identical: bool) -> Self {
        self.identical = identical;
        self
    }

    pub fn values(mut self, min_value: i64, max_value: i64) -> Self {
        self.min_value = min_value;
        self.max_value = max_value;
        self
    }
}

struct Stream(SplitMix64);

impl Stream {
    fn new(seed: u64) -> Self {
        Stream(SplitMix64::seed_from_u64(seed))
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi as i128 - lo as i128 + 1) as u128;
        let offset = (self.0.next_u64() as u128 % span) as i128;
        (lo as i128 + offset) as i64
    }

    fn coin(&mut self) -> bool {
        self.0.next_u64() >> 63 == 1
    }
}

/// Deterministic instance for `spec`.
pub fn gen_instance<T: Scalar>(spec: &GeneratorSpec) -> Result<Instance<T>> {
    if spec.agents == 0 {
        return Err(Error::Precondition("at least one agent is required".into()));
    }
    if spec.kind.uses_table() && spec.items > MAX_TABLE_ITEMS {
        return Err(Error::TableCap(spec.items));
    }
    if spec.min_value > spec.max_value {
        return Err(Error::Precondition(format!("empty value range [{}, {}]", spec.min_value, spec.max_value)));
    }
    let mut stream = Stream::new(spec.seed);
    if spec.identical {
        let u = gen_utility(spec, &mut stream)?;
        Instance::identical(spec.agents, u)
    } else {
        let utilities = (0..spec.agents).map(|_| gen_utility(spec, &mut stream)).collect::<Result<Vec<_>>>()?;
        Instance::new(utilities)
    }
}

fn gen_utility<T: Scalar>(spec: &GeneratorSpec, stream: &mut Stream) -> Result<UtilityFunction<T>> {
    let m = spec.items;
    let (lo, hi) = (spec.min_value, spec.max_value);
    let table = |stream: &mut Stream, draw: &mut dyn FnMut(&mut Stream) -> i64| -> Vec<i64> {
        let mut vals = vec![0i64; 1 << m];
        for v in vals.iter_mut().skip(1) {
            *v = draw(stream);
        }
        vals
    };
    let ints = match spec.kind {
        UtilityKind::Additive => {
            let vals = (0..m).map(|_| T::from_int(stream.int(lo, hi))).collect();
            return UtilityFunction::additive(vals);
        }
        UtilityKind::General => table(stream, &mut |s| s.int(lo, hi)),
        UtilityKind::Chores => monotone_closure(table(stream, &mut |s| s.int(lo, hi)), m, i64::min),
        UtilityKind::Goods => monotone_closure(table(stream, &mut |s| s.int(lo, hi)), m, i64::max),
        UtilityKind::Boolean => table(stream, &mut |s| i64::from(s.coin())),
        UtilityKind::NegativeBoolean => table(stream, &mut |s| -i64::from(s.coin())),
    };
    UtilityFunction::table(m, ints.into_iter().map(T::from_int).collect())
}

/// `u(X) ← pick(u(X), u(X − s))` over all `s ∈ X`, by increasing `|X|`.
/// With `min` this yields a non-increasing function, with `max` a
/// non-decreasing one; `u(∅)` stays 0.
fn monotone_closure(mut vals: Vec<i64>, m: usize, pick: fn(i64, i64) -> i64) -> Vec<i64> {
    let mut order: Vec<u64> = (1..1u64 << m).collect();
    order.sort_by_key(|b| (b.count_ones(), *b));
    for bits in order {
        let x = ItemSet::from_bits(bits);
        let best = x.iter().fold(vals[bits as usize], |acc, s| pick(acc, vals[x.without(s).bits() as usize]));
        vals[bits as usize] = best;
    }
    vals
}
