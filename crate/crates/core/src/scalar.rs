//! The coefficient-ring abstraction shared by polynomials and series.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

/// A commutative field of exact scalars.
///
/// `zero`/`one` must be usable as the identities of every element; for
/// cyclotomic numbers they live at the rational level and coerce upward.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Integer power; `None` when a negative power of zero is requested.
    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        Some(acc)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}
