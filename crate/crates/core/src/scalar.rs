//! Scalar types for shares and densities.
//!
//! Density arguments compare against exact fractions, so the default
//! instantiation everywhere is [`crate::Rational`]; floating point is
//! available for plotting and quick diagnostics.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::Num;

pub trait Scalar: Num + Clone + PartialOrd + Debug + Display {
    fn from_count(c: usize) -> Self;

    fn ratio(num: usize, den: usize) -> Self {
        Self::from_count(num) / Self::from_count(den)
    }
}

macro_rules! impl_float {
    ($($t:ty)*) => ($(
        impl Scalar for $t {
            #[inline]
            fn from_count(c: usize) -> Self {
                c as $t
            }
        }
    )*)
}

macro_rules! impl_ratio {
    ($($t:ty)*) => ($(
        impl Scalar for Ratio<$t> {
            #[inline]
            fn from_count(c: usize) -> Self {
                Ratio::from_integer(<$t>::try_from(c).expect("count fits the rational base type"))
            }
        }
    )*)
}

impl_float!(f32 f64);
impl_ratio!(i32 i64 i128);
