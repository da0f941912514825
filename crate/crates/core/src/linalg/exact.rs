//! Integer scalars for the fraction-free kernels.
//!
//! The kernels are written once against [`Exact`] and instantiated with a
//! fixed-width type first. Any overflow makes the fixed-width run return
//! `None`, and the caller repeats the computation with [`BigInt`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) trait Exact: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

macro_rules! fixed_width {
    ($t:ty) => {
        impl Exact for $t {
            #[inline]
            fn zero() -> Self {
                0
            }
            #[inline]
            fn one() -> Self {
                1
            }
            #[inline]
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            #[inline]
            fn is_zero(&self) -> bool {
                *self == 0
            }
            #[inline]
            fn add(&self, other: &Self) -> Option<Self> {
                self.checked_add(*other)
            }
            #[inline]
            fn sub(&self, other: &Self) -> Option<Self> {
                self.checked_sub(*other)
            }
            #[inline]
            fn mul(&self, other: &Self) -> Option<Self> {
                self.checked_mul(*other)
            }
            #[inline]
            fn neg(&self) -> Option<Self> {
                self.checked_neg()
            }
            #[inline]
            fn div_exact(&self, other: &Self) -> Option<Self> {
                debug_assert_eq!(self % other, 0, "inexact division");
                self.checked_div(*other)
            }
            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    };
}

fixed_width!(i64);
fixed_width!(i128);

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % other)), "inexact division");
        Some(self / other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}
