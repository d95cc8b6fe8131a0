//! Apostol–Bernoulli polynomials `B_m(q, λ)` and generalized Frobenius–Euler
//! polynomials `H_m^{(p)}(q, λ, γ)`.
//!
//! Both families come from generating functions of the form
//! `f(t) e^{qt} / (λe^t − γ)`. The primary route compares coefficients of
//! `t^m/m!` and solves a triangular recurrence; the `series_oracle_*`
//! functions expand the generating functions directly with truncated series
//! and serve as the independent second route.

use crate::combinat::binomial_row;
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::scalar::Scalar;
use crate::series::TruncSeries;

/// `B_0 .. B_{m_max}` for one `λ`.
///
/// For `λ ≠ 1`: `(λ−1) B_m = m q^{m−1} − λ Σ_{i<m} C(m,i) B_i` with `B_0 = 0`.
/// For `λ = 1` the classical recurrence
/// `Σ_{i≤m} C(m+1,i) B_i = (m+1) q^m` is used instead.
pub fn apostol_bernoulli_table<S: Scalar>(m_max: usize, lambda: &S) -> Vec<QPoly<S>> {
    let mut out: Vec<QPoly<S>> = Vec::with_capacity(m_max + 1);
    if lambda.is_one() {
        for m in 0..=m_max {
            let row = binomial_row(m + 1);
            let mut acc = QPoly::monomial(S::from_i64(m as i64 + 1), m);
            for (i, b) in out.iter().enumerate() {
                acc = &acc - &b.scale(&S::from_rational(&row[i]));
            }
            out.push(acc.scale(&S::from_i64(m as i64 + 1).inv().unwrap()));
        }
        return out;
    }
    let denom_inv = (lambda.clone() - S::one()).inv().expect("lambda != 1");
    out.push(QPoly::zero());
    for m in 1..=m_max {
        let row = binomial_row(m);
        let mut sum = QPoly::zero();
        for (i, b) in out.iter().enumerate() {
            sum = &sum + &b.scale(&S::from_rational(&row[i]));
        }
        let rhs = &QPoly::monomial(S::from_i64(m as i64), m - 1) - &sum.scale(lambda);
        out.push(rhs.scale(&denom_inv));
    }
    out
}

pub fn apostol_bernoulli<S: Scalar>(m: usize, lambda: &S) -> QPoly<S> {
    apostol_bernoulli_table(m, lambda).pop().unwrap()
}

/// `B_i(λ) := B_i(0, λ)`.
pub fn apostol_bernoulli_number<S: Scalar>(i: usize, lambda: &S) -> S {
    apostol_bernoulli(i, lambda).coeff(0)
}

fn frobenius_prefactor<S: Scalar>(p: i64, lambda: &S, gamma: &S) -> Result<(S, S)> {
    let gap = lambda.clone() - gamma.clone();
    let gap_inv = gap.inv().ok_or_else(|| Error::ParameterCollision {
        lambda: lambda.to_string(),
        k: None,
    })?;
    let one_minus = S::one() - gamma.clone();
    let factor = one_minus.pow(p).ok_or(Error::InvalidPower { p })?;
    Ok((factor, gap_inv))
}

/// `H_0 .. H_{m_max}` via
/// `(λ−γ) H_m = (1−γ)^p q^m − λ Σ_{i<m} C(m,i) H_i`.
pub fn frobenius_euler_table<S: Scalar>(m_max: usize, p: i64, lambda: &S, gamma: &S) -> Result<Vec<QPoly<S>>> {
    let (factor, gap_inv) = frobenius_prefactor(p, lambda, gamma)?;
    let mut out: Vec<QPoly<S>> = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let row = binomial_row(m);
        let mut sum = QPoly::zero();
        for (i, h) in out.iter().enumerate() {
            sum = &sum + &h.scale(&S::from_rational(&row[i]));
        }
        let rhs = &QPoly::monomial(factor.clone(), m) - &sum.scale(lambda);
        out.push(rhs.scale(&gap_inv));
    }
    Ok(out)
}

pub fn frobenius_euler<S: Scalar>(m: usize, p: i64, lambda: &S, gamma: &S) -> Result<QPoly<S>> {
    Ok(frobenius_euler_table(m, p, lambda, gamma)?.pop().unwrap())
}

/// `λe^{st} − γ` to the given order.
pub fn lambda_exp_minus<S: Scalar>(lambda: &S, scale: &S, gamma: &S, order: usize) -> TruncSeries<S> {
    let e = TruncSeries::exp_linear(&QPoly::constant(scale.clone()), order).scale(lambda);
    &e - &TruncSeries::constant(QPoly::constant(gamma.clone()), order)
}

/// `t / (λe^{st} − 1)` as a truncated series. When `λ = 1` the factor `t`
/// is divided out of `e^{st} − 1` first so the constant term stays a unit.
pub fn t_over_lambda_exp_minus_one<S: Scalar>(lambda: &S, scale: &S, order: usize) -> Result<TruncSeries<S>> {
    if lambda.is_one() {
        lambda_exp_minus(lambda, scale, &S::one(), order + 1).div_t()?.inv()
    } else {
        Ok(lambda_exp_minus(lambda, scale, &S::one(), order).inv()?.mul_t())
    }
}

/// `B_0 .. B_{m_max}` read off `t · e^{qt} / (λe^t − 1)`.
pub fn series_oracle_b<S: Scalar>(m_max: usize, lambda: &S) -> Result<Vec<QPoly<S>>> {
    let kernel = t_over_lambda_exp_minus_one(lambda, &S::one(), m_max)?;
    let e_qt = TruncSeries::exp_linear(&QPoly::q(), m_max);
    Ok((&kernel * &e_qt).into_coeffs())
}

/// `H_0 .. H_{m_max}` read off `(1−γ)^p e^{qt} / (λe^t − γ)`.
pub fn series_oracle_h<S: Scalar>(m_max: usize, p: i64, lambda: &S, gamma: &S) -> Result<Vec<QPoly<S>>> {
    let denom = lambda_exp_minus(lambda, &S::one(), gamma, m_max);
    let inv = denom.inv().map_err(|_| Error::ParameterCollision { lambda: lambda.to_string(), k: None })?;
    let factor = (S::one() - gamma.clone()).pow(p).ok_or(Error::InvalidPower { p })?;
    let e_qt = TruncSeries::exp_linear(&QPoly::q(), m_max);
    Ok((&inv * &e_qt).scale(&factor).into_coeffs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{zeta_pow, CycloNum};
    use crate::rational::Rational;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn rp(c: &[Rational]) -> QPoly<Rational> {
        QPoly::new(c.to_vec())
    }

    #[test]
    fn bernoulli_examples() {
        let two = Rational::from(2);
        assert!(apostol_bernoulli(0, &two).is_zero());
        assert_eq!(apostol_bernoulli(1, &two), QPoly::from_ints(&[1]));
        assert_eq!(apostol_bernoulli(2, &two), QPoly::from_ints(&[-4, 2]));
        assert_eq!(apostol_bernoulli(2, &Rational::one()), rp(&[r(1, 6), r(-1, 1), r(1, 1)]));
        assert_eq!(apostol_bernoulli_number(0, &two), Rational::zero());
        assert_eq!(apostol_bernoulli_number(1, &two), Rational::one());
        assert_eq!(apostol_bernoulli_number(1, &Rational::one()), r(-1, 2));
    }

    /// Classical Bernoulli numbers from the Akiyama–Tanigawa algorithm, an
    /// independent route to `B_m(0, 1)` (with the `B_1 = +1/2` convention
    /// flipped back to `−1/2`).
    fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut a: Vec<Rational> = Vec::new();
        for m in 0..=n {
            a.push(r(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = Rational::from(j as i64) * (&a[j - 1] - &a[j]);
            }
            out.push(a[0].clone());
        }
        out[1] = -out[1].clone();
        out
    }

    #[test]
    fn classical_numbers_match_independent_algorithm() {
        let expected = akiyama_tanigawa(12);
        let table = apostol_bernoulli_table(12, &Rational::one());
        for (m, b) in table.iter().enumerate() {
            assert_eq!(b.coeff(0), expected[m], "B_{m}");
        }
    }

    #[test]
    fn frobenius_euler_low_orders() {
        let lambda = r(3, 1);
        let gamma = r(1, 2);
        for p in [-2, 0, 1, 3] {
            let factor = (Rational::one() - gamma.clone()).pow(p).unwrap();
            let gap = &lambda - &gamma;
            let h = frobenius_euler_table(1, p, &lambda, &gamma).unwrap();
            assert_eq!(h[0], QPoly::constant(&factor / &gap));
            let expect1 = rp(&[-(&(&factor * &lambda) / &(&gap * &gap)), &factor / &gap]);
            assert_eq!(h[1], expect1);
        }
    }

    #[test]
    fn frobenius_euler_errors() {
        let m1 = Rational::from(-1);
        assert!(matches!(frobenius_euler(2, 1, &m1, &m1), Err(Error::ParameterCollision { .. })));
        assert!(matches!(
            frobenius_euler(2, -1, &Rational::from(2), &Rational::one()),
            Err(Error::InvalidPower { p: -1 })
        ));
        // collision inside the cyclotomic field: λ = −1 = ζ_4^2
        let lam = CycloNum::from_rational(&m1);
        assert!(frobenius_euler(1, 1, &lam, &zeta_pow(4, -2)).is_err());
    }

    #[test]
    fn oracle_spot_values() {
        let two = Rational::from(2);
        let b = series_oracle_b(1, &two).unwrap();
        assert!(b[0].is_zero());
        assert_eq!(b[1], QPoly::from_ints(&[1]));
        let g = zeta_pow(3, 1);
        let h = series_oracle_h(0, 1, &CycloNum::one(), &g).unwrap();
        assert_eq!(h[0], QPoly::one());
        let p0 = series_oracle_h(4, 0, &r(1, 3), &r(2, 1)).unwrap();
        assert_eq!(p0, frobenius_euler_table(4, 0, &r(1, 3), &r(2, 1)).unwrap());
    }

    #[test]
    fn appell_derivative_property() {
        for lam in [r(1, 1), r(2, 1), r(-1, 2)] {
            let t = apostol_bernoulli_table(8, &lam);
            for m in 1..=8 {
                assert_eq!(t[m].derivative(), t[m - 1].scale(&Rational::from(m as i64)));
            }
        }
        let t = frobenius_euler_table(7, 2, &CycloNum::from_i64(2), &zeta_pow(5, 2)).unwrap();
        for m in 1..=7 {
            assert_eq!(t[m].derivative(), t[m - 1].scale(&CycloNum::from_i64(m as i64)));
        }
    }
}
