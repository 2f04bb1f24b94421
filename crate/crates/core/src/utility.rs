use std::fmt;

use crate::error::{Error, Result};
use crate::items::{ItemSet, MAX_ITEMS};
use crate::scalar::Scalar;

/// Dense value tables are limited to this many items (2^20 entries).
pub const MAX_TABLE_ITEMS: usize = 20;

/// How a utility function is stored.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation<T> {
    /// One value per subset, indexed by bitmask.
    Table(Vec<T>),
    /// `u(X) = Σ_{s∈X} values[s]`.
    Additive(Vec<T>),
    /// `u(X) = value` if `|X| ≥ min_size`, else 0.
    Threshold { value: T, min_size: usize },
    /// `u(X) = value` if `X ⊇ of`, else 0.
    Superset { value: T, of: ItemSet },
}

/// A set function `u: 2^S → T` with `u(∅) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityFunction<T> {
    m: usize,
    repr: Representation<T>,
}

/// Items of a bundle split by the sign of their marginal value to the rest of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ItemClassification {
    /// Deleting the item lowers the utility.
    pub plus: ItemSet,
    /// Deleting the item raises the utility.
    pub minus: ItemSet,
    /// Deleting the item leaves the utility unchanged.
    pub zero: ItemSet,
}

/// Structural properties a utility function may have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UtilityClass {
    pub additive: bool,
    pub nondecreasing: bool,
    pub nonincreasing: bool,
    pub boolean: bool,
    pub negative_boolean: bool,
}

impl UtilityClass {
    pub const ALL: UtilityClass = UtilityClass {
        additive: true,
        nondecreasing: true,
        nonincreasing: true,
        boolean: true,
        negative_boolean: true,
    };

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.additive {
            out.push("additive");
        }
        if self.nondecreasing {
            out.push("monotone-nondecreasing");
        }
        if self.nonincreasing {
            out.push("monotone-nonincreasing");
        }
        if self.boolean {
            out.push("boolean");
        }
        if self.negative_boolean {
            out.push("negative-boolean");
        }
        out
    }

    /// Flags present in both.
    pub fn meet(self, other: UtilityClass) -> UtilityClass {
        UtilityClass {
            additive: self.additive && other.additive,
            nondecreasing: self.nondecreasing && other.nondecreasing,
            nonincreasing: self.nonincreasing && other.nonincreasing,
            boolean: self.boolean && other.boolean,
            negative_boolean: self.negative_boolean && other.negative_boolean,
        }
    }
}

impl fmt::Display for UtilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

impl<T: Scalar> UtilityFunction<T> {
    /// Dense table over `m` items; `values[mask]` is the utility of the set `mask`.
    pub fn table(m: usize, values: Vec<T>) -> Result<Self> {
        if m > MAX_TABLE_ITEMS {
            return Err(Error::TableCap(m));
        }
        if values.len() != 1usize << m {
            return Err(Error::InvalidUtility(format!(
                "table over {m} items needs {} values, got {}",
                1usize << m,
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidUtility(format!("the empty set must have value 0, got {}", values[0])));
        }
        Ok(UtilityFunction { m, repr: Representation::Table(values) })
    }

    /// Builds a table by evaluating `f` on every subset of `0..m`.
    pub fn from_fn(m: usize, mut f: impl FnMut(ItemSet) -> T) -> Result<Self> {
        if m > MAX_TABLE_ITEMS {
            return Err(Error::TableCap(m));
        }
        let values = (0..1u64 << m).map(|b| f(ItemSet::from_bits(b))).collect();
        Self::table(m, values)
    }

    pub fn additive(values: Vec<T>) -> Result<Self> {
        if values.len() > MAX_ITEMS {
            return Err(Error::InvalidUtility(format!("{} items exceed the limit of {MAX_ITEMS}", values.len())));
        }
        Ok(UtilityFunction { m: values.len(), repr: Representation::Additive(values) })
    }

    /// `value` on every set of at least `min_size` items, 0 elsewhere.
    pub fn threshold(m: usize, value: T, min_size: usize) -> Result<Self> {
        check_ground(m)?;
        if min_size == 0 && !value.is_zero() {
            return Err(Error::InvalidUtility("threshold 0 would give the empty set a non-zero value".into()));
        }
        Ok(UtilityFunction { m, repr: Representation::Threshold { value, min_size } })
    }

    /// `value` on every superset of `of`, 0 elsewhere.
    pub fn superset(m: usize, value: T, of: ItemSet) -> Result<Self> {
        check_ground(m)?;
        if !of.fits(m) {
            return Err(Error::SetOutOfRange { bits: of.bits(), m });
        }
        if of.is_empty() && !value.is_zero() {
            return Err(Error::InvalidUtility(
                "superset of the empty set would give the empty set a non-zero value".into(),
            ));
        }
        Ok(UtilityFunction { m, repr: Representation::Superset { value, of } })
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::threshold(m, T::zero(), 0)
    }

    pub fn items(&self) -> usize {
        self.m
    }

    pub fn representation(&self) -> &Representation<T> {
        &self.repr
    }

    pub fn ground_set(&self) -> ItemSet {
        ItemSet::full(self.m)
    }

    pub fn evaluate(&self, x: ItemSet) -> Result<T> {
        if !x.fits(self.m) {
            return Err(Error::SetOutOfRange { bits: x.bits(), m: self.m });
        }
        Ok(self.value(x))
    }

    /// Unchecked evaluation; `x` must lie in the ground set.
    pub fn value(&self, x: ItemSet) -> T {
        debug_assert!(x.fits(self.m), "{x:?} outside {} items", self.m);
        match &self.repr {
            Representation::Table(values) => values[x.bits() as usize].clone(),
            Representation::Additive(values) => x.iter().fold(T::zero(), |acc, s| acc + values[s].clone()),
            Representation::Threshold { value, min_size } => {
                if x.len() >= *min_size {
                    value.clone()
                } else {
                    T::zero()
                }
            }
            Representation::Superset { value, of } => {
                if of.is_subset(x) {
                    value.clone()
                } else {
                    T::zero()
                }
            }
        }
    }

    /// `u(s | X) = u(X + s) - u(X)`, defined for `s ∉ X`.
    pub fn marginal(&self, s: usize, x: ItemSet) -> Result<T> {
        if s >= self.m {
            return Err(Error::ItemOutOfRange { item: s, m: self.m });
        }
        if x.contains(s) {
            return Err(Error::Precondition(format!("item {} already belongs to {x}", s + 1)));
        }
        let x_val = self.evaluate(x)?;
        Ok(self.value(x.with(s)) - x_val)
    }

    /// Splits `x` by the sign of `u(s | x - s)`.
    pub fn classify_items(&self, x: ItemSet) -> ItemClassification {
        let whole = self.value(x);
        let mut out = ItemClassification::default();
        for s in x {
            let gain = whole.clone() - self.value(x.without(s));
            if gain.is_positive() {
                out.plus = out.plus.with(s);
            } else if gain.is_negative() {
                out.minus = out.minus.with(s);
            } else {
                out.zero = out.zero.with(s);
            }
        }
        out
    }

    /// Expands any representation into a dense table.
    pub fn to_table(&self) -> Result<Self> {
        match &self.repr {
            Representation::Table(_) => Ok(self.clone()),
            _ => Self::from_fn(self.m, |x| self.value(x)),
        }
    }

    /// Pointwise equality of the two set functions.
    pub fn same_function(&self, other: &Self) -> bool {
        if self.m != other.m {
            return false;
        }
        if self.repr == other.repr {
            return true;
        }
        if self.m > MAX_TABLE_ITEMS {
            // Distinct compact forms over huge ground sets: only additive
            // forms can be compared without enumeration.
            return match (&self.repr, &other.repr) {
                (Representation::Additive(a), Representation::Additive(b)) => a == b,
                _ => false,
            };
        }
        ItemSet::full(self.m).subsets().all(|x| self.value(x) == other.value(x))
    }

    /// Every class flag that holds for this function.
    ///
    /// Exhaustive over all subsets (additivity) and all covering pairs
    /// `(X, X + s)` (monotonicity) when the ground set fits a dense table;
    /// closed-form reasoning otherwise.
    pub fn classify(&self) -> UtilityClass {
        if self.m <= MAX_TABLE_ITEMS {
            self.classify_exhaustive()
        } else {
            self.classify_closed_form()
        }
    }

    pub(crate) fn classify_exhaustive(&self) -> UtilityClass {
        let one = T::one();
        let minus_one = -T::one();
        let mut class = UtilityClass::ALL;
        let full = ItemSet::full(self.m);
        let singles: Vec<T> = (0..self.m).map(|s| self.value(ItemSet::singleton(s))).collect();
        for x in full.subsets() {
            let vx = self.value(x);
            if !(vx.is_zero() || vx == one) {
                class.boolean = false;
            }
            if !(vx.is_zero() || vx == minus_one) {
                class.negative_boolean = false;
            }
            if let Some(low) = x.first() {
                if vx != self.value(x.without(low)) + singles[low].clone() {
                    class.additive = false;
                }
            }
            for s in full.difference(x) {
                let up = self.value(x.with(s));
                if vx > up {
                    class.nondecreasing = false;
                }
                if vx < up {
                    class.nonincreasing = false;
                }
            }
        }
        class
    }

    pub(crate) fn classify_closed_form(&self) -> UtilityClass {
        let one = T::one();
        let minus_one = -T::one();
        let two_valued = |v: &T, t_reachable: bool, additive: bool| {
            if v.is_zero() || !t_reachable {
                return UtilityClass::ALL;
            }
            UtilityClass {
                additive,
                nondecreasing: v.is_positive(),
                nonincreasing: v.is_negative(),
                boolean: *v == one,
                negative_boolean: *v == minus_one,
            }
        };
        match &self.repr {
            Representation::Table(_) => self.classify_exhaustive(),
            Representation::Additive(values) => {
                let nonzero: Vec<&T> = values.iter().filter(|v| !v.is_zero()).collect();
                UtilityClass {
                    additive: true,
                    nondecreasing: values.iter().all(|v| !v.is_negative()),
                    nonincreasing: values.iter().all(|v| !v.is_positive()),
                    boolean: nonzero.len() <= 1 && nonzero.iter().all(|v| **v == one),
                    negative_boolean: nonzero.len() <= 1 && nonzero.iter().all(|v| **v == minus_one),
                }
            }
            Representation::Threshold { value, min_size } => {
                let reachable = *min_size <= self.m;
                let additive = *min_size == 1 && self.m == 1;
                two_valued(value, reachable, additive)
            }
            Representation::Superset { value, of } => two_valued(value, true, of.len() == 1),
        }
    }
}

fn check_ground(m: usize) -> Result<()> {
    if m > MAX_ITEMS {
        return Err(Error::InvalidUtility(format!("{m} items exceed the limit of {MAX_ITEMS}")));
    }
    Ok(())
}
