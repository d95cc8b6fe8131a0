//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! Elements are residues modulo the n-th cyclotomic polynomial `Φ_n`, stored
//! as an integer coefficient vector over one positive common denominator.
//! Level 1 is `Q` itself; level-1 values coerce into any other level, every
//! other mixed-level operation is a programming error and panics.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// The n-th cyclotomic polynomial, monic with integer coefficients
/// (`coeffs[i]` multiplies `x^i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloPolyMod {
    pub n: u32,
    pub coeffs: Vec<BigInt>,
}

impl CycloPolyMod {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_poly(&self) -> QPoly<Rational> {
        QPoly::new(self.coeffs.iter().cloned().map(Rational::from_int).collect())
    }
}

/// Per-level data: the modulus and the reduced powers `x^j mod Φ_n`, `j < n`.
#[derive(Debug)]
struct Level {
    modulus: CycloPolyMod,
    zeta_powers: Vec<Vec<BigInt>>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<Level>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Level>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn level_data(n: u32) -> Arc<Level> {
    assert!(n >= 1, "cyclotomic level must be >= 1");
    if let Some(l) = cache().read().unwrap().get(&n) {
        return l.clone();
    }
    // Built outside the lock; construction is deterministic, so a racing
    // insert stores an identical value.
    let built = Arc::new(build_level(n));
    cache().write().unwrap().entry(n).or_insert(built).clone()
}

fn build_level(n: u32) -> Level {
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = Rational::from(-1);
    num[n as usize] = Rational::one();
    let mut phi = QPoly::new(num);
    for d in divisors(u64::from(n)) {
        if d as u32 != n {
            phi = phi
                .div_exact(&level_data(d as u32).modulus.to_poly())
                .expect("Φ_d divides x^n - 1");
        }
    }
    let coeffs: Vec<BigInt> = phi
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.numer().clone()
        })
        .collect();
    let modulus = CycloPolyMod { n, coeffs };
    let deg = modulus.degree();
    let mut zeta_powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); deg];
    cur[0] = BigInt::one();
    for _ in 0..n {
        zeta_powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient
        let top = cur.pop().unwrap();
        cur.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (c, m) in cur.iter_mut().zip(&modulus.coeffs) {
                *c -= &top * m;
            }
        }
    }
    Level { modulus, zeta_powers }
}

/// The n-th cyclotomic polynomial, built by exact division of `x^n - 1` by
/// `Φ_d` for the proper divisors `d` of `n`.
pub fn cyclotomic_poly(n: u32) -> CycloPolyMod {
    level_data(n).modulus.clone()
}

/// Element of `Q(ζ_n)` in canonical reduced form.
#[derive(Clone)]
pub struct CycloNum {
    level: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn normalized(level: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            num.iter_mut().for_each(|c| *c = &*c / &g);
            den /= &g;
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        CycloNum { level, num, den }
    }

    /// A rational embedded at level `n`.
    pub fn rational(level: u32, r: &Rational) -> Self {
        let deg = level_data(level).modulus.degree();
        let mut num = vec![BigInt::zero(); deg];
        num[0] = r.numer().clone();
        CycloNum { level, num, den: r.denom().clone() }
    }

    /// Residue of `Σ coeffs[i] ζ_n^i`; any length is accepted and reduced.
    pub fn from_coeffs(level: u32, coeffs: &[Rational]) -> Self {
        let data = level_data(level);
        let deg = data.modulus.degree();
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); deg];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for (t, z) in num.iter_mut().zip(&data.zeta_powers[i % level as usize]) {
                *t += &scaled * z;
            }
        }
        Self::normalized(level, num, den)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Coordinates in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::from_big(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value when every coordinate above index 0 vanishes.
    pub fn is_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::from_big(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Same value expressed at `level`; only rationals may change level.
    pub fn at_level(&self, level: u32) -> Self {
        if self.level == level {
            return self.clone();
        }
        match self.is_rational() {
            Some(r) => Self::rational(level, &r),
            None => panic!("cannot move a level-{} element to level {level}", self.level),
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.level == b.level {
            (a.clone(), b.clone())
        } else if a.level == 1 {
            (a.at_level(b.level), b.clone())
        } else if b.level == 1 {
            (a.clone(), b.at_level(a.level))
        } else {
            panic!("cyclotomic level mismatch: {} vs {}", a.level, b.level)
        }
    }

    fn add_impl(a: &Self, b: &Self, negate_b: bool) -> Self {
        let (a, b) = Self::aligned(a, b);
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let lhs = x * &b.den;
                let rhs = y * &a.den;
                if negate_b { lhs - rhs } else { lhs + rhs }
            })
            .collect();
        Self::normalized(a.level, num, &a.den * &b.den)
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        if a.level == 1 || b.level == 1 {
            let (r, other) = if a.level == 1 { (a, b) } else { (b, a) };
            let num = other.num.iter().map(|c| c * &r.num[0]).collect();
            return Self::normalized(other.level, num, &r.den * &other.den);
        }
        assert_eq!(a.level, b.level, "cyclotomic level mismatch");
        let data = level_data(a.level);
        let deg = data.modulus.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for i in (deg..prod.len()).rev() {
            let top = std::mem::take(&mut prod[i]);
            if top.is_zero() {
                continue;
            }
            for (j, m) in data.modulus.coeffs[..deg].iter().enumerate() {
                prod[i - deg + j] -= &top * m;
            }
        }
        prod.truncate(deg);
        Self::normalized(a.level, prod, &a.den * &b.den)
    }

    fn to_poly(&self) -> QPoly<Rational> {
        QPoly::new(self.coeffs())
    }

    /// Field inverse by the extended Euclidean algorithm against `Φ_n`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.is_rational() {
            return Ok(Self::rational(self.level, &r.recip().unwrap()));
        }
        let modulus = level_data(self.level).modulus.to_poly();
        let (mut r0, mut r1) = (modulus, self.to_poly());
        let (mut s0, mut s1) = (QPoly::<Rational>::zero(), QPoly::one());
        while r1.degree().is_some_and(|d| d > 0) {
            let (quot, rem) = r0.div_rem(&r1)?;
            let s2 = &s0 - &(&quot * &s1);
            (r0, r1) = (r1, rem);
            (s0, s1) = (s1, s2);
        }
        let c = r1.as_constant().and_then(|c| c.recip()).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_coeffs(self.level, s1.scale(&c).coeffs()))
    }

    /// Numerical value under `ζ_n ↦ e^{2πi/n}`. Only 53-bit (f64) precision
    /// is available.
    pub fn embed_complex(&self, precision: u32) -> Result<Complex64> {
        if precision != 53 {
            return Err(Error::UnsupportedPrecision(precision));
        }
        let den = Rational::from_int(self.den.clone());
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = (&Rational::from_int(c.clone()) / &den).to_f64();
            acc += zeta_complex(self.level, i as i64) * v;
        }
        Ok(acc)
    }

    /// Evaluates an integer polynomial (lowest degree first) at this element.
    pub fn eval_poly(&self, coeffs: &[BigInt]) -> Self {
        coeffs.iter().rev().fold(Self::rational(self.level, &Rational::zero()), |acc, c| {
            acc * self.clone() + Self::rational(self.level, &Rational::from_int(c.clone()))
        })
    }
}

/// `e^{2πik/n}` in floating point.
pub fn zeta_complex(n: u32, k: i64) -> Complex64 {
    let k = k.rem_euclid(i64::from(n));
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / f64::from(n))
}

/// `ζ_n^{k mod n}`.
pub fn zeta_pow(n: u32, k: i64) -> CycloNum {
    let data = level_data(n);
    let idx = k.rem_euclid(i64::from(n)) as usize;
    CycloNum { level: n, num: data.zeta_powers[idx].clone(), den: BigInt::one() }
}

pub fn cyclo_inv(a: &CycloNum) -> Result<CycloNum> {
    a.inverse()
}

pub fn is_rational(a: &CycloNum) -> Option<Rational> {
    a.is_rational()
}

pub fn embed_complex(a: &CycloNum, precision: u32) -> Result<Complex64> {
    a.embed_complex(precision)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.den == other.den && self.num == other.num;
        }
        match (self.is_rational(), other.is_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", CycloJson::from(self))
    }
}

/// Rationals print as `a/b`; everything else as the JSON object form.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.is_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{}", CycloJson::from(self)),
        }
    }
}

/// Wire form `{"level": n, "coeffs": ["a/b", ...]}` with exactly `φ(n)` entries.
#[derive(Serialize, Deserialize)]
pub struct CycloJson {
    pub level: u32,
    pub coeffs: Vec<Rational>,
}

impl From<&CycloNum> for CycloJson {
    fn from(a: &CycloNum) -> Self {
        CycloJson { level: a.level, coeffs: a.coeffs() }
    }
}

impl fmt::Display for CycloJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

impl TryFrom<CycloJson> for CycloNum {
    type Error = Error;

    fn try_from(j: CycloJson) -> Result<Self> {
        if j.level == 0 {
            return Err(Error::Parse("cyclotomic level must be >= 1".into()));
        }
        let deg = level_data(j.level).modulus.degree();
        if j.coeffs.len() != deg {
            return Err(Error::Parse(format!(
                "level {} needs exactly {deg} coefficients, got {}",
                j.level,
                j.coeffs.len()
            )));
        }
        Ok(CycloNum::from_coeffs(j.level, &j.coeffs))
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CycloJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        CycloNum::add_impl(&self, &rhs, false)
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        CycloNum::add_impl(&self, &rhs, true)
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        CycloNum::mul_impl(&self, &rhs)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        CycloNum::add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        CycloNum::add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        CycloNum::mul_impl(self, rhs)
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        self.num.iter_mut().for_each(|c| *c = -&*c);
        self
    }
}

impl Scalar for CycloNum {
    fn zero() -> Self {
        CycloNum::rational(1, &Rational::zero())
    }
    fn one() -> Self {
        CycloNum::rational(1, &Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        CycloNum::rational(1, r)
    }
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
    }
}
