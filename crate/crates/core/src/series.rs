//! Truncated formal power series in `t` with polynomial coefficients.
//!
//! Coefficients use the exponential convention: entry `m` is the value that
//! multiplies `t^m / m!`, so products pick up binomial weights.

use std::ops::{Add, Mul, Neg, Sub};

use crate::combinat::{binomial_row, factorial};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<S> {
    order: usize,
    coeffs: Vec<QPoly<S>>,
}

impl<S: Scalar> TruncSeries<S> {
    /// Builds a series from EGF coefficients, padding with zeros or dropping
    /// terms above `order`.
    pub fn new(order: usize, mut coeffs: Vec<QPoly<S>>) -> Self {
        coeffs.resize(order + 1, QPoly::zero());
        TruncSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(QPoly::one(), order)
    }

    pub fn constant(c: QPoly<S>, order: usize) -> Self {
        Self::new(order, vec![c])
    }

    /// Series from ordinary coefficients `Σ a_m t^m`.
    pub fn from_ordinary(order: usize, coeffs: Vec<QPoly<S>>) -> Self {
        let egf = coeffs
            .into_iter()
            .enumerate()
            .map(|(m, a)| a.scale(&S::from_rational(&factorial(m))))
            .collect();
        Self::new(order, egf)
    }

    /// The formal variable `t`.
    pub fn t(order: usize) -> Self {
        Self::new(order, vec![QPoly::zero(), QPoly::one()])
    }

    /// `e^{c t}`: coefficient `m` is `c^m`.
    pub fn exp_linear(c: &QPoly<S>, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pw = QPoly::one();
        for _ in 0..=order {
            let next = &pw * c;
            coeffs.push(pw);
            pw = next;
        }
        Self::new(order, coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[QPoly<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &QPoly<S> {
        &self.coeffs[m]
    }

    pub fn into_coeffs(self) -> Vec<QPoly<S>> {
        self.coeffs
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn scale_poly(&self, c: &QPoly<S>) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `t`; stays at the same order.
    pub fn mul_t(&self) -> Self {
        let mut coeffs = vec![QPoly::zero()];
        coeffs.extend(
            self.coeffs[..self.order]
                .iter()
                .enumerate()
                .map(|(i, a)| a.scale(&S::from_i64(i as i64 + 1))),
        );
        Self::new(self.order, coeffs)
    }

    /// Division by `t`. Requires a vanishing constant term and costs one order.
    pub fn div_t(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotDivisible { remainder: self.coeffs[0].to_string() });
        }
        if self.order == 0 {
            return Err(Error::InvalidParam("cannot divide an order-0 series by t".into()));
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(m, a)| a.scale(&S::from_i64(m as i64 + 1).inv().unwrap()))
            .collect();
        Ok(Self::new(self.order - 1, coeffs))
    }

    /// Multiplicative inverse; the constant term must be a nonzero scalar.
    pub fn inv(&self) -> Result<Self> {
        let a0 = self.coeffs[0]
            .as_constant()
            .and_then(|c| c.inv())
            .ok_or_else(|| Error::NotAUnit { constant: self.coeffs[0].to_string() })?;
        let mut out: Vec<QPoly<S>> = Vec::with_capacity(self.order + 1);
        out.push(QPoly::constant(a0.clone()));
        for m in 1..=self.order {
            let row = binomial_row(m);
            let mut acc = QPoly::zero();
            for i in 1..=m {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                let term = (&self.coeffs[i] * &out[m - i]).scale(&S::from_rational(&row[i]));
                acc = &acc + &term;
            }
            out.push(acc.scale(&-a0.clone()));
        }
        Ok(Self::new(self.order, out))
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(self.order, rhs.order, "series truncation orders differ");
    }
}

impl<'a, S: Scalar> Add<&'a TruncSeries<S>> for &'a TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn add(self, rhs: &'a TruncSeries<S>) -> TruncSeries<S> {
        self.check_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TruncSeries::new(self.order, coeffs)
    }
}

impl<'a, S: Scalar> Sub<&'a TruncSeries<S>> for &'a TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn sub(self, rhs: &'a TruncSeries<S>) -> TruncSeries<S> {
        self.check_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TruncSeries::new(self.order, coeffs)
    }
}

impl<S: Scalar> Neg for &TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn neg(self) -> TruncSeries<S> {
        TruncSeries::new(self.order, self.coeffs.iter().map(|a| -a).collect())
    }
}

/// Cauchy product under the EGF convention:
/// `(ab)_m = Σ_i C(m,i) a_i b_{m-i}`.
impl<'a, S: Scalar> Mul<&'a TruncSeries<S>> for &'a TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn mul(self, rhs: &'a TruncSeries<S>) -> TruncSeries<S> {
        self.check_order(rhs);
        let coeffs = (0..=self.order)
            .map(|m| {
                let row = binomial_row(m);
                (0..=m).fold(QPoly::zero(), |acc, i| {
                    if self.coeffs[i].is_zero() || rhs.coeffs[m - i].is_zero() {
                        return acc;
                    }
                    let term = (&self.coeffs[i] * &rhs.coeffs[m - i]).scale(&S::from_rational(&row[i]));
                    &acc + &term
                })
            })
            .collect();
        TruncSeries::new(self.order, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    type P = QPoly<Rational>;

    #[test]
    fn t_squared_under_egf() {
        let t = TruncSeries::<Rational>::t(3);
        let sq = &t * &t;
        assert_eq!(sq.coeff(2), &P::from_ints(&[2]));
        assert!(sq.coeff(1).is_zero() && sq.coeff(3).is_zero());
    }

    #[test]
    fn geometric_inverse() {
        let a = TruncSeries::from_ordinary(4, vec![P::one(), P::from_ints(&[-1])]);
        let b = a.inv().unwrap();
        for m in 0..=4 {
            assert_eq!(b.coeff(m), &P::constant(factorial(m)));
        }
        assert_eq!(b.inv().unwrap(), a);
    }

    #[test]
    fn non_unit_rejected() {
        let t = TruncSeries::<Rational>::t(3);
        assert!(matches!(t.inv(), Err(Error::NotAUnit { .. })));
        // constant term q is not a scalar, so not a unit of Q[q]
        let s = TruncSeries::constant(P::q(), 2);
        assert!(matches!(s.inv(), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn exponentials() {
        let e0 = TruncSeries::exp_linear(&P::zero(), 3);
        assert_eq!(e0, TruncSeries::one(3));
        let eq = TruncSeries::exp_linear(&P::q(), 3);
        for m in 0..=3 {
            assert_eq!(eq.coeff(m), &P::q().pow(m as u32));
        }
        let e2q = TruncSeries::exp_linear(&P::from_ints(&[0, 2]), 4);
        assert_eq!(e2q.coeff(4), &P::from_ints(&[0, 0, 0, 0, 16]));
        // e^{qt} e^{2t} = e^{(q+2)t}
        let prod = &eq.clone() * &TruncSeries::exp_linear(&P::from_ints(&[2]), 3);
        assert_eq!(prod, TruncSeries::exp_linear(&P::from_ints(&[2, 1]), 3));
    }

    #[test]
    fn t_multiplication_round_trip() {
        let e = TruncSeries::exp_linear(&P::q(), 5);
        let back = e.mul_t().div_t().unwrap();
        assert_eq!(back.coeffs(), &e.coeffs()[..5]);
        assert!(e.div_t().is_err());
    }
}
