use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::report::{IdentityCase, Status};
use super::Identity;
use crate::appell::{apostol_bernoulli, apostol_bernoulli_number, t_over_lambda_exp_minus_one};
use crate::arith::{euler_phi, totatives};
use crate::combinat::factorial;
use crate::cyclotomic::CycloNum;
use crate::dedekind::{check_collision, e_sum, e_sum_table, g_series_oracle, v_sum, ESumParams};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::series::TruncSeries;
use crate::spectra::{dft_inverse, interp_poly, lagrange_oracle, moebius_form, moebius_form_shifted, PeriodicSeq};

/// A fully specified identity instance, ready to evaluate.
#[derive(Clone, Debug)]
pub(super) enum CaseSpec {
    Prop1 { seq: Arc<PeriodicSeq>, label: String, r: i64 },
    Prop2 { m: usize, r: i64, p: i64, lambda: Rational, seq: Arc<PeriodicSeq>, label: String },
    Mult { m: usize, n: u32, lambda: Rational },
    Section4 { m: usize, n: u32, r: i64, p: i64, lambda: Rational },
    Moebius { n: u32 },
    Gseries { r: i64, p: i64, lambda: Rational, seq: Arc<PeriodicSeq>, label: String, order: usize },
}

enum Side {
    Poly(QPoly<CycloNum>),
    Series(TruncSeries<CycloNum>),
}

impl Side {
    fn render(&self) -> String {
        match self {
            Side::Poly(p) => p.to_string(),
            Side::Series(s) => {
                let parts: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
                format!("[{}]", parts.join("; "))
            }
        }
    }

    fn equals(&self, other: &Side) -> bool {
        match (self, other) {
            (Side::Poly(a), Side::Poly(b)) => a == b,
            (Side::Series(a), Side::Series(b)) => a == b,
            _ => false,
        }
    }

    /// Adds 1 to the constant coefficient.
    fn perturb(self) -> Side {
        let bump = |p: &QPoly<CycloNum>| p + &QPoly::one();
        match self {
            Side::Poly(p) => Side::Poly(bump(&p)),
            Side::Series(s) => {
                let mut c = s.coeffs().to_vec();
                c[0] = bump(&c[0]);
                Side::Series(TruncSeries::new(s.order(), c))
            }
        }
    }
}

struct Comparison {
    lhs: Side,
    rhs: Side,
    /// Failures of auxiliary sub-identities checked alongside the main one.
    extra: Vec<String>,
}

impl Comparison {
    fn new(lhs: Side, rhs: Side) -> Self {
        Comparison { lhs, rhs, extra: Vec::new() }
    }
}

fn lift(p: &QPoly<Rational>) -> QPoly<CycloNum> {
    p.map(CycloNum::from_rational)
}

fn cyc(r: &Rational) -> CycloNum {
    CycloNum::from_rational(r)
}

fn sign(e: i64) -> CycloNum {
    if e.rem_euclid(2) == 0 {
        CycloNum::one()
    } else {
        -CycloNum::one()
    }
}

impl CaseSpec {
    pub(super) fn identity(&self) -> Identity {
        match self {
            CaseSpec::Prop1 { .. } => Identity::Prop1,
            CaseSpec::Prop2 { .. } => Identity::Prop2,
            CaseSpec::Mult { .. } => Identity::Mult,
            CaseSpec::Section4 { .. } => Identity::Section4,
            CaseSpec::Moebius { .. } => Identity::Moebius,
            CaseSpec::Gseries { .. } => Identity::Gseries,
        }
    }

    fn params(&self) -> BTreeMap<String, Value> {
        let v = match self {
            CaseSpec::Prop1 { seq, label, r } => json!({"n": seq.n(), "r": r, "seq": label}),
            CaseSpec::Prop2 { m, r, p, lambda, seq, label } => {
                json!({"m": m, "n": seq.n(), "r": r, "p": p, "lambda": lambda.to_string(), "seq": label})
            }
            CaseSpec::Mult { m, n, lambda } => json!({"m": m, "n": n, "lambda": lambda.to_string()}),
            CaseSpec::Section4 { m, n, r, p, lambda } => {
                json!({"m": m, "n": n, "r": r, "p": p, "lambda": lambda.to_string(), "seq": "ramanujan"})
            }
            CaseSpec::Moebius { n } => json!({"n": n}),
            CaseSpec::Gseries { r, p, lambda, seq, label, order } => {
                json!({"n": seq.n(), "r": r, "p": p, "lambda": lambda.to_string(), "seq": label, "order": order})
            }
        };
        match v {
            Value::Object(map) => map.into_iter().collect(),
            _ => unreachable!(),
        }
    }

    fn compare(&self) -> Result<Comparison> {
        match self {
            CaseSpec::Prop1 { seq, r, .. } => prop1_sides(seq, *r),
            CaseSpec::Prop2 { m, r, p, lambda, seq, .. } => prop2_sides(*m, *r, *p, lambda, seq),
            CaseSpec::Mult { m, n, lambda } => mult_sides(*m, *n, lambda),
            CaseSpec::Section4 { m, n, r, p, lambda } => section4_sides(*m, *n, *r, *p, lambda),
            CaseSpec::Moebius { n } => moebius_sides(*n),
            CaseSpec::Gseries { r, p, lambda, seq, order, .. } => gseries_sides(*r, *p, lambda, seq, *order),
        }
    }

    /// `perturb` is the mutation hook: it corrupts the right-hand side so
    /// that a correct case must fail.
    pub(super) fn evaluate(&self, perturb: bool) -> IdentityCase {
        let mut case = IdentityCase {
            identity: self.identity(),
            params: self.params(),
            status: Status::Pass,
            reason: None,
            lhs: None,
            rhs: None,
        };
        match self.compare() {
            Ok(mut cmp) => {
                if perturb {
                    cmp.rhs = cmp.rhs.perturb();
                    cmp.extra.push("right-hand side perturbed by mutation hook".into());
                }
                let equal = cmp.lhs.equals(&cmp.rhs);
                case.lhs = Some(cmp.lhs.render());
                case.rhs = Some(cmp.rhs.render());
                let mut reasons = cmp.extra;
                if !equal {
                    reasons.insert(0, "lhs != rhs".into());
                }
                if !reasons.is_empty() {
                    case.status = Status::Fail;
                    case.reason = Some(reasons.join("; "));
                }
            }
            Err(e @ Error::ParameterCollision { .. }) => {
                case.status = Status::Skipped;
                case.reason = Some(e.to_string());
            }
            Err(e) => {
                case.status = Status::Fail;
                case.reason = Some(e.to_string());
            }
        }
        case
    }
}

fn prop1_sides(seq: &PeriodicSeq, r: i64) -> Result<Comparison> {
    let coeff_form = interp_poly(&dft_inverse(seq), r);
    let lagrange = lagrange_oracle(seq, r);
    let mut cmp = Comparison::new(Side::Poly(coeff_form.clone()), Side::Poly(lagrange.clone()));
    let n = seq.n() as usize;
    for (name, p) in [("coefficient form", &coeff_form), ("lagrange form", &lagrange)] {
        if p.degree().is_some_and(|d| d >= n) {
            cmp.extra.push(format!("{name} has degree >= n"));
        }
    }
    Ok(cmp)
}

/// `C_0 B_m(nq,λ) − n^m Σ_j K_{j−r−p+1} λ^j B_m(q + j/n, λ^n)`.
fn prop2_rhs(m: usize, r: i64, p: i64, lambda: &Rational, seq: &PeriodicSeq) -> QPoly<CycloNum> {
    let n = seq.n();
    let nn = i64::from(n);
    let nr = Rational::from(nn);
    let spectrum = dft_inverse(seq);
    let b_nq = lift(&apostol_bernoulli(m, lambda).compose_scale(&nr));
    let lambda_n = lambda.pow(nn).unwrap();
    let b_n = apostol_bernoulli(m, &lambda_n);
    let mut sum = QPoly::zero();
    for j in 0..nn {
        let k = spectrum.get(j - r - p + 1);
        if k.is_zero() {
            continue;
        }
        let coef = k.clone() * cyc(&lambda.pow(j).unwrap());
        let shifted = lift(&b_n.shift(&Rational::new(j, nn)));
        sum = &sum + &shifted.scale(&coef);
    }
    let n_pow_m = cyc(&nr.pow(m as i64).unwrap());
    &b_nq.scale(seq.get(0)) - &sum.scale(&n_pow_m)
}

fn prop2_sides(m: usize, r: i64, p: i64, lambda: &Rational, seq: &PeriodicSeq) -> Result<Comparison> {
    let params = ESumParams { m, r, p, lambda: cyc(lambda), seq };
    let n = CycloNum::from_i64(i64::from(seq.n()));
    let e = e_sum(&params)?;
    let lhs = e.compose_scale(&n).scale(&(sign(p - 1) * CycloNum::from_i64(m as i64)));
    Ok(Comparison::new(Side::Poly(lhs), Side::Poly(prop2_rhs(m, r, p, lambda, seq))))
}

fn mult_sides(m: usize, n: u32, lambda: &Rational) -> Result<Comparison> {
    let nn = i64::from(n);
    let nr = Rational::from(nn);
    let lhs = apostol_bernoulli(m, lambda).compose_scale(&nr);
    let b_n = apostol_bernoulli(m, &lambda.pow(nn).unwrap());
    let mut sum = QPoly::zero();
    for j in 0..nn {
        sum = &sum + &b_n.shift(&Rational::new(j, nn)).scale(&lambda.pow(j).unwrap());
    }
    let rhs = sum.scale(&nr.pow(m as i64 - 1).unwrap());
    Ok(Comparison::new(Side::Poly(lift(&lhs)), Side::Poly(lift(&rhs))))
}

/// The closed form
/// `φ(n) B_m(nq,λ) − Σ_{i+k≤m} n^{m−k} m!/(i!k!) B_i(λ^n) V_n^{(k)}(λ) q^{m−i−k}/(m−i−k)!`.
pub fn section4_rhs(m: usize, n: u32, lambda: &Rational) -> QPoly<Rational> {
    let nr = Rational::from(i64::from(n));
    let phi = Rational::from(euler_phi(u64::from(n)) as i64);
    let lambda_n = lambda.pow(i64::from(n)).unwrap();
    let mut sum = QPoly::zero();
    for i in 0..=m {
        let b_i = apostol_bernoulli_number(i, &lambda_n);
        if b_i.is_zero() {
            continue;
        }
        for k in 0..=(m - i) {
            let coef = nr.pow((m - k) as i64).unwrap() * factorial(m) / (factorial(i) * factorial(k))
                * b_i.clone()
                * v_sum(n, k as u32, lambda)
                / factorial(m - i - k);
            sum = &sum + &QPoly::monomial(coef, m - i - k);
        }
    }
    &apostol_bernoulli(m, lambda).compose_scale(&nr).scale(&phi) - &sum
}

fn section4_sides(m: usize, n: u32, r: i64, p: i64, lambda: &Rational) -> Result<Comparison> {
    if r + p != 1 {
        return Err(Error::InvalidParam(format!("closed form needs r + p = 1, got r={r}, p={p}")));
    }
    let seq = crate::spectra::family(&crate::spectra::Family::Ramanujan, n)?;
    let params = ESumParams { m, r, p, lambda: cyc(lambda), seq: &seq };
    let e = e_sum(&params)?;
    let lhs = e
        .compose_scale(&CycloNum::from_i64(i64::from(n)))
        .scale(&(sign(p - 1) * CycloNum::from_i64(m as i64)));
    Ok(Comparison::new(Side::Poly(lhs), Side::Poly(lift(&section4_rhs(m, n, lambda)))))
}

fn moebius_sides(n: u32) -> Result<Comparison> {
    if n < 2 {
        return Err(Error::InvalidParam("Möbius form needs n >= 2".into()));
    }
    let direct = totatives(u64::from(n))
        .into_iter()
        .fold(QPoly::zero(), |acc, j| &acc + &QPoly::monomial(Rational::one(), j as usize));
    let plain = moebius_form(n)?;
    let shifted = moebius_form_shifted(n)?;
    let mut cmp = Comparison::new(Side::Poly(lift(&direct)), Side::Poly(lift(&plain)));
    if shifted != direct {
        cmp.extra.push(format!("q^d form {shifted} differs from totative sum {direct}"));
    }
    Ok(cmp)
}

fn gseries_sides(r: i64, p: i64, lambda: &Rational, seq: &PeriodicSeq, order: usize) -> Result<Comparison> {
    if order < 1 {
        return Err(Error::InvalidParam("series chain needs order >= 1".into()));
    }
    let n = seq.n();
    let nn = i64::from(n);
    let lam = cyc(lambda);
    check_collision(n, &lam)?;
    let n_c = CycloNum::from_i64(nn);
    let nq = QPoly::monomial(n_c.clone(), 1);

    // C_0 · t/(λe^t − 1) · e^{nqt}
    let kernel = t_over_lambda_exp_minus_one(&lam, &CycloNum::one(), order)?;
    let base = (&kernel * &TruncSeries::exp_linear(&nq, order)).scale(seq.get(0));
    // t · G · e^{(n−1)qt}
    let g = g_series_oracle(r, p, &lam, seq, order)?;
    let shift_exp = TruncSeries::exp_linear(&QPoly::monomial(CycloNum::from_i64(nn - 1), 1), order);
    let tg = (&g * &shift_exp).mul_t();
    let lhs = &base + &tg.scale(&sign(p));

    // n · t/(λ^n e^{nt} − 1) · Σ_j K_{j−r−p+1} λ^j e^{(nq + j)t}
    let spectrum = dft_inverse(seq);
    let mut inner = TruncSeries::zero(order);
    for j in 0..nn {
        let k = spectrum.get(j - r - p + 1);
        if k.is_zero() {
            continue;
        }
        let exponent = &nq + &QPoly::constant(CycloNum::from_i64(j));
        let term = TruncSeries::exp_linear(&exponent, order).scale(&(k.clone() * cyc(&lambda.pow(j).unwrap())));
        inner = &inner + &term;
    }
    let kernel_n = t_over_lambda_exp_minus_one(&cyc(&lambda.pow(nn).unwrap()), &n_c, order)?;
    let rhs = (&kernel_n * &inner).scale(&n_c);

    let mut cmp = Comparison::new(Side::Series(lhs), Side::Series(rhs));
    // coefficient m of t·G·e^{(n−1)qt} is m·E_m(nq), and coefficient m of G is E_{m+1}
    let e = e_sum_table(order + 1, r, p, &lam, seq)?;
    if !tg.coeff(0).is_zero() {
        cmp.extra.push("t·G·e^{(n-1)qt} has a nonzero constant term".into());
    }
    for m in 1..=order {
        let expected = e[m - 1].compose_scale(&n_c).scale(&CycloNum::from_i64(m as i64));
        if tg.coeff(m) != &expected {
            cmp.extra.push(format!("coefficient {m} of t·G·e^(n-1)qt differs from m·E_m(nq)"));
        }
    }
    for m in 0..=order {
        if g.coeff(m) != &e[m] {
            cmp.extra.push(format!("coefficient {m} of G differs from E_{}", m + 1));
        }
    }
    Ok(cmp)
}

pub fn check_prop1(seq: &PeriodicSeq, label: &str, r: i64) -> IdentityCase {
    CaseSpec::Prop1 { seq: Arc::new(seq.clone()), label: label.into(), r }.evaluate(false)
}

pub fn check_prop2(m: usize, r: i64, p: i64, lambda: &Rational, seq: &PeriodicSeq, label: &str) -> IdentityCase {
    CaseSpec::Prop2 { m, r, p, lambda: lambda.clone(), seq: Arc::new(seq.clone()), label: label.into() }
        .evaluate(false)
}

pub fn check_mult_formula(m: usize, n: u32, lambda: &Rational) -> IdentityCase {
    CaseSpec::Mult { m, n, lambda: lambda.clone() }.evaluate(false)
}

pub fn check_section4_closed_form(m: usize, n: u32, r: i64, p: i64, lambda: &Rational) -> IdentityCase {
    CaseSpec::Section4 { m, n, r, p, lambda: lambda.clone() }.evaluate(false)
}

pub fn check_moebius_interp(n: u32) -> IdentityCase {
    CaseSpec::Moebius { n }.evaluate(false)
}

pub fn check_gseries_chain(r: i64, p: i64, lambda: &Rational, seq: &PeriodicSeq, label: &str, order: usize) -> IdentityCase {
    CaseSpec::Gseries { r, p, lambda: lambda.clone(), seq: Arc::new(seq.clone()), label: label.into(), order }
        .evaluate(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{family, Family};

    fn rat(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn mult_formula_hand_case() {
        let c = check_mult_formula(1, 2, &rat(2, 1));
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.lhs.as_deref(), Some("1"));
        assert!(check_mult_formula(2, 2, &Rational::one()).passed());
    }

    #[test]
    fn prop1_ramanujan_six() {
        let seq = family(&Family::Ramanujan, 6).unwrap();
        let c = check_prop1(&seq, "ramanujan", 0);
        assert!(c.passed());
        assert_eq!(c.lhs.as_deref(), Some("q^5 + q"));
        let constant = PeriodicSeq::from_rationals(&vec![rat(2, 3); 4]).unwrap();
        assert!(check_prop1(&constant, "const", 3).passed());
    }

    #[test]
    fn prop2_delta_and_ramanujan() {
        for n in [2u32, 3, 5] {
            let delta = family(&Family::Delta, n).unwrap();
            let ram = family(&Family::Ramanujan, n).unwrap();
            for m in 1..=3 {
                assert!(check_prop2(m, 1, 2, &rat(3, 1), &delta, "delta").passed());
                assert!(check_prop2(m, 0, 1, &rat(-1, 2), &ram, "ramanujan").passed());
            }
        }
    }

    #[test]
    fn section4_agrees_with_prop2() {
        let ram = family(&Family::Ramanujan, 6).unwrap();
        for (r, p) in [(1, 0), (0, 1), (-1, 2)] {
            for m in 1..=3 {
                let s4 = check_section4_closed_form(m, 6, r, p, &rat(2, 1));
                let p2 = check_prop2(m, r, p, &rat(2, 1), &ram, "ramanujan");
                assert!(s4.passed() && p2.passed());
                assert_eq!(s4.lhs, p2.lhs);
            }
        }
        let bad = check_section4_closed_form(2, 6, 1, 1, &rat(2, 1));
        assert_eq!(bad.status, Status::Fail);
    }

    #[test]
    fn moebius_cases() {
        let c = check_moebius_interp(6);
        assert!(c.passed());
        assert_eq!(c.lhs.as_deref(), Some("q^5 + q"));
        assert_eq!(check_moebius_interp(4).lhs.as_deref(), Some("q^3 + q"));
        assert!(check_moebius_interp(7).passed());
    }

    #[test]
    fn collisions_are_skipped() {
        let ram = family(&Family::Ramanujan, 4).unwrap();
        let c = check_prop2(2, 0, 1, &rat(-1, 1), &ram, "ramanujan");
        assert_eq!(c.status, Status::Skipped);
        assert!(c.reason.unwrap().contains("k = 2"));
        let g = check_gseries_chain(0, 1, &rat(-1, 1), &ram, "ramanujan", 3);
        assert_eq!(g.status, Status::Skipped);
    }

    #[test]
    fn gseries_small() {
        let seq = family(&Family::Random { seed: 5 }, 3).unwrap();
        let c = check_gseries_chain(1, -1, &rat(2, 1), &seq, "random:seed=5", 4);
        assert!(c.passed(), "{:?}", c.reason);
        let delta = family(&Family::Delta, 4).unwrap();
        assert!(check_gseries_chain(0, 0, &Rational::one(), &delta, "delta", 4).passed());
    }

    #[test]
    fn perturbation_fails() {
        let spec = CaseSpec::Mult { m: 2, n: 3, lambda: rat(2, 1) };
        assert!(spec.evaluate(false).passed());
        assert_eq!(spec.evaluate(true).status, Status::Fail);
    }
}
