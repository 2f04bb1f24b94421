use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// Value type of a utility function.
///
/// Comparisons go through `PartialOrd`; every algorithm in this crate only
/// ever compares values produced by additions and subtractions of table
/// entries, so exact types give exact answers and floating types give the
/// usual floating answers.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }
}

impl Scalar for i64 {
    fn from_int(v: i64) -> Self {
        v
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
}

/// Largest of the given values, `None` for an empty slice.
pub fn max_of<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> Option<&'a T> {
    values.into_iter().fold(None, |best, v| match best {
        Some(b) if *b >= *v => Some(b),
        _ => Some(v),
    })
}
