//! Dedekind-type sums
//! `E_{m,n}^{r,p}(q,λ;C) = Σ_{k=1}^{n−1} ζ^{−kr} H_{m−1}^{(p)}(q,λ,ζ^{−k}) C_{−k} / (1−ζ^k)^p`
//! with `ζ = ζ_n`, their exponential generating series, and the power sums
//! `V_n^{(k)}(λ)` over totatives.

use crate::appell::{frobenius_euler_table, lambda_exp_minus};
use crate::cyclotomic::{zeta_pow, CycloNum};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::series::TruncSeries;
use crate::spectra::PeriodicSeq;

pub use crate::arith::{divisors, euler_phi, gcd, moebius, totatives};

/// Parameters of one E-sum. `q` stays symbolic; the period `n` is the
/// sequence's.
#[derive(Clone, Debug)]
pub struct ESumParams<'a> {
    pub m: usize,
    pub r: i64,
    pub p: i64,
    pub lambda: CycloNum,
    pub seq: &'a PeriodicSeq,
}

impl ESumParams<'_> {
    pub fn n(&self) -> u32 {
        self.seq.n()
    }
}

/// Fails with the offending `k` when `λ = ζ_n^{−k}` for some `1 ≤ k < n`.
pub fn check_collision(n: u32, lambda: &CycloNum) -> Result<()> {
    if lambda.level() != 1 && lambda.level() != n {
        return Err(Error::InvalidParam(format!(
            "lambda lives at level {}, sums are over level {n}",
            lambda.level()
        )));
    }
    for k in 1..i64::from(n) {
        if *lambda == zeta_pow(n, -k) {
            return Err(Error::ParameterCollision { lambda: lambda.to_string(), k: Some(k) });
        }
    }
    Ok(())
}

/// `ζ^{−kr} C_{−k} (1 − ζ^k)^{−p}`.
fn weight(seq: &PeriodicSeq, k: i64, r: i64, p: i64) -> Result<CycloNum> {
    let n = seq.n();
    let base = CycloNum::one() - zeta_pow(n, k);
    let denom = base.pow(-p).ok_or(Error::DivisionByZero)?;
    Ok(zeta_pow(n, -k * r) * seq.get(-k).clone() * denom)
}

/// `E_1 .. E_{m_max}` sharing one Frobenius–Euler table per root.
pub fn e_sum_table(m_max: usize, r: i64, p: i64, lambda: &CycloNum, seq: &PeriodicSeq) -> Result<Vec<QPoly<CycloNum>>> {
    if m_max == 0 {
        return Err(Error::InvalidParam("m must be >= 1".into()));
    }
    let n = seq.n();
    check_collision(n, lambda)?;
    let mut out = vec![QPoly::zero(); m_max];
    for k in 1..i64::from(n) {
        if seq.get(-k).is_zero() {
            continue;
        }
        let w = weight(seq, k, r, p)?;
        let gamma = zeta_pow(n, -k);
        let h = frobenius_euler_table(m_max - 1, p, lambda, &gamma).map_err(|e| match e {
            Error::ParameterCollision { lambda, .. } => Error::ParameterCollision { lambda, k: Some(k) },
            other => other,
        })?;
        for (acc, hm) in out.iter_mut().zip(&h) {
            *acc = &*acc + &hm.scale(&w);
        }
    }
    Ok(out)
}

/// `E_{m,n}^{r,p}(q, λ; C)` as a polynomial in `q` of degree ≤ m−1.
pub fn e_sum(params: &ESumParams<'_>) -> Result<QPoly<CycloNum>> {
    Ok(e_sum_table(params.m, params.r, params.p, &params.lambda, params.seq)?
        .pop()
        .unwrap())
}

/// The generating series `Σ_m E_{m+1} t^m/m!` in the closed form
/// `(−1)^p Σ_{k=1}^{n−1} ζ^{−k(r+p)} C_{−k} e^{qt} / (λe^t − ζ^{−k})`.
pub fn g_series_oracle(r: i64, p: i64, lambda: &CycloNum, seq: &PeriodicSeq, order: usize) -> Result<TruncSeries<CycloNum>> {
    let n = seq.n();
    check_collision(n, lambda)?;
    let e_qt = TruncSeries::exp_linear(&QPoly::q(), order);
    let mut acc = TruncSeries::zero(order);
    for k in 1..i64::from(n) {
        let c = seq.get(-k);
        if c.is_zero() {
            continue;
        }
        let coef = zeta_pow(n, -k * (r + p)) * c.clone();
        let denom = lambda_exp_minus(lambda, &CycloNum::one(), &zeta_pow(n, -k), order).inv()?;
        acc = &acc + &denom.scale(&coef);
    }
    let sign = if p.rem_euclid(2) == 0 { CycloNum::one() } else { -CycloNum::one() };
    Ok((&acc * &e_qt).scale(&sign))
}

/// `V_n^{(k)}(λ) = Σ_{1≤j≤n, (j,n)=1} j^k λ^j`.
pub fn v_sum<S: Scalar>(n: u32, k: u32, lambda: &S) -> S {
    totatives(u64::from(n)).into_iter().fold(S::zero(), |acc, j| {
        let jk = S::from_i64(j as i64).pow(i64::from(k)).unwrap();
        acc + jk * lambda.pow(j as i64).expect("nonnegative power")
    })
}

/// Ramanujan sum `c_n(k) = Σ_{(j,n)=1} ζ_n^{kj}`, evaluated in `Q(ζ_n)`.
pub fn ramanujan_sum(n: u32, k: i64) -> Rational {
    let s = totatives(u64::from(n))
        .into_iter()
        .fold(CycloNum::rational(n, &Rational::zero()), |acc, j| acc + zeta_pow(n, k * j as i64));
    s.is_rational().expect("Ramanujan sums are rational")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{family, Family};

    fn lam(a: i64, b: i64) -> CycloNum {
        CycloNum::from_rational(&Rational::new(a, b))
    }

    #[test]
    fn delta_sums_vanish() {
        for n in 2..=6 {
            let seq = family(&Family::Delta, n).unwrap();
            for p in [-1, 0, 2] {
                let e = e_sum_table(4, 1, p, &lam(2, 1), &seq).unwrap();
                assert!(e.iter().all(QPoly::is_zero));
            }
            assert!(g_series_oracle(0, 1, &lam(-1, 2), &seq, 4).unwrap().coeffs().iter().all(QPoly::is_zero));
        }
    }

    #[test]
    fn single_term_example() {
        let seq = PeriodicSeq::from_rationals(&[Rational::zero(), Rational::one()]).unwrap();
        let p = ESumParams { m: 1, r: 0, p: 1, lambda: lam(2, 1), seq: &seq };
        assert_eq!(e_sum(&p).unwrap(), QPoly::constant(lam(1, 3)));
        let g = g_series_oracle(0, 1, &lam(2, 1), &seq, 0).unwrap();
        assert_eq!(g.coeff(0), &QPoly::constant(lam(1, 3)));
    }

    #[test]
    fn collisions_name_k() {
        let seq = family(&Family::Ramanujan, 4).unwrap();
        let p = ESumParams { m: 2, r: 0, p: 1, lambda: lam(-1, 1), seq: &seq };
        assert_eq!(
            e_sum(&p),
            Err(Error::ParameterCollision { lambda: "-1".into(), k: Some(2) })
        );
        // odd period: −1 is not an n-th root of unity
        let seq = family(&Family::Ramanujan, 5).unwrap();
        assert!(e_sum(&ESumParams { seq: &seq, ..p }).is_ok());
    }

    #[test]
    fn degree_bound() {
        let seq = family(&Family::Random { seed: 3 }, 5).unwrap();
        let e = e_sum_table(6, 2, -1, &lam(3, 1), &seq).unwrap();
        for (i, poly) in e.iter().enumerate() {
            assert!(poly.degree().is_none_or(|d| d <= i));
        }
    }

    #[test]
    fn power_sums() {
        assert_eq!(v_sum(6, 0, &Rational::one()), Rational::from(2));
        assert_eq!(v_sum(6, 1, &Rational::one()), Rational::from(6));
        assert_eq!(v_sum(6, 0, &Rational::from(2)), Rational::from(34));
    }

    #[test]
    fn ramanujan_sums() {
        assert_eq!(ramanujan_sum(6, 2), Rational::from(-1));
        for n in 1..=12u32 {
            assert_eq!(ramanujan_sum(n, 0), Rational::from(euler_phi(u64::from(n)) as i64));
            assert_eq!(ramanujan_sum(n, 1), Rational::from(moebius(u64::from(n))));
        }
        let mu_sum: i64 = divisors(6).into_iter().map(moebius).sum();
        assert_eq!(mu_sum, 0);
    }
}
