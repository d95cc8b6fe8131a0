//! n-periodic sequences over `Q(ζ_n)`, the exact DFT pair, the built-in
//! weight families, and the interpolation polynomial `C^{(r)}(q)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, moebius, totatives};
use crate::cyclotomic::{zeta_pow, CycloJson, CycloNum};
use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::Rational;
use crate::scalar::Scalar;

macro_rules! periodic_common {
    ($name:ident) => {
        impl $name {
            /// Values are moved to level `n`; only rationals may change level.
            pub fn new(n: u32, values: Vec<CycloNum>) -> Result<Self> {
                if n < 2 {
                    return Err(Error::InvalidParam(format!("period must be >= 2, got {n}")));
                }
                if values.len() != n as usize {
                    return Err(Error::InvalidParam(format!(
                        "expected {n} values, got {}",
                        values.len()
                    )));
                }
                let mut lifted = Vec::with_capacity(values.len());
                for v in values {
                    if v.level() != n && v.is_rational().is_none() {
                        return Err(Error::InvalidParam(format!(
                            "value at level {} in a period-{n} sequence",
                            v.level()
                        )));
                    }
                    lifted.push(v.at_level(n));
                }
                Ok($name { n, values: lifted })
            }

            pub fn from_rationals(values: &[Rational]) -> Result<Self> {
                let n = values.len() as u32;
                Self::new(n, values.iter().map(CycloNum::from_rational).collect())
            }

            pub fn zero(n: u32) -> Self {
                let z = CycloNum::rational(n, &Rational::zero());
                Self::new(n, vec![z; n as usize]).expect("period >= 2")
            }

            pub fn n(&self) -> u32 {
                self.n
            }

            pub fn values(&self) -> &[CycloNum] {
                &self.values
            }

            /// Entry at `k mod n`.
            pub fn get(&self, k: i64) -> &CycloNum {
                &self.values[k.rem_euclid(i64::from(self.n)) as usize]
            }
        }
    };
}

/// Periodic sequence `C_k`, the "time" side of the transform.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSeq {
    n: u32,
    values: Vec<CycloNum>,
}

/// Spectrum `K_j` with `C_k = Σ_j K_j ζ_n^{kj}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSeq {
    n: u32,
    values: Vec<CycloNum>,
}

periodic_common!(PeriodicSeq);
periodic_common!(SpectralSeq);

/// `C_k = Σ_j K_j ζ_n^{kj}`.
pub fn dft_forward(spec: &SpectralSeq) -> PeriodicSeq {
    let n = spec.n;
    let values = (0..i64::from(n))
        .map(|k| {
            (0..i64::from(n)).fold(CycloNum::rational(n, &Rational::zero()), |acc, j| {
                acc + spec.get(j).clone() * zeta_pow(n, k * j)
            })
        })
        .collect();
    PeriodicSeq { n, values }
}

/// `K_j = (1/n) Σ_k C_k ζ_n^{−kj}`.
pub fn dft_inverse(seq: &PeriodicSeq) -> SpectralSeq {
    let n = seq.n;
    let inv_n = CycloNum::from_rational(&Rational::new(1, i64::from(n)));
    let values = (0..i64::from(n))
        .map(|j| {
            let s = (0..i64::from(n)).fold(CycloNum::rational(n, &Rational::zero()), |acc, k| {
                acc + seq.get(k).clone() * zeta_pow(n, -k * j)
            });
            s * inv_n.clone()
        })
        .collect();
    SpectralSeq { n, values }
}

/// Named weight sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `C = (n, 0, …, 0)`, spectrum identically 1.
    Delta,
    /// Ramanujan sums: spectrum is the totative indicator.
    Ramanujan,
    /// `C_k = 1/(1 − ζ^{−ak})` for `0 < k < n`.
    FourierDedekind { a: i64, c0: Option<Rational> },
    /// `C_k = 1/(1 − ζ^{ak})` for `0 < k < n`.
    ApostolDedekind { a: i64, c0: Option<Rational> },
    /// Seeded random rationals with numerators in `[-9, 9]` and denominators in `[1, 5]`.
    Random { seed: u64 },
}

impl Family {
    /// Families whose `C_0` is not determined and must be given explicitly
    /// before `C_0` is read.
    pub fn missing_c0(&self) -> bool {
        matches!(
            self,
            Family::FourierDedekind { c0: None, .. } | Family::ApostolDedekind { c0: None, .. }
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, a, c0) = match self {
            Family::Delta => return f.write_str("delta"),
            Family::Ramanujan => return f.write_str("ramanujan"),
            Family::Random { seed } => return write!(f, "random:seed={seed}"),
            Family::FourierDedekind { a, c0 } => ("fourier-dedekind", a, c0),
            Family::ApostolDedekind { a, c0 } => ("apostol-dedekind", a, c0),
        };
        write!(f, "{name}:a={a}")?;
        if let Some(c0) = c0 {
            write!(f, ",c0={c0}")?;
        }
        Ok(())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let mut a = None;
        let mut c0 = None;
        let mut seed = None;
        for kv in args.split(',').filter(|kv| !kv.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {s:?}")))?;
            let bad = || Error::Parse(format!("bad value for {k} in {s:?}"));
            match k.trim() {
                "a" => a = Some(v.trim().parse::<i64>().map_err(|_| bad())?),
                "c0" => c0 = Some(v.parse::<Rational>()?),
                "seed" => seed = Some(v.trim().parse::<u64>().map_err(|_| bad())?),
                _ => return Err(Error::Parse(format!("unknown key {k:?} in {s:?}"))),
            }
        }
        let need_a = || a.ok_or_else(|| Error::Parse(format!("{name} requires a=<int>")));
        match name.trim() {
            "delta" => Ok(Family::Delta),
            "ramanujan" => Ok(Family::Ramanujan),
            "fourier-dedekind" => Ok(Family::FourierDedekind { a: need_a()?, c0 }),
            "apostol-dedekind" => Ok(Family::ApostolDedekind { a: need_a()?, c0 }),
            "random" => Ok(Family::Random {
                seed: seed.ok_or_else(|| Error::Parse("random requires seed=<int>".into()))?,
            }),
            other => Err(Error::Parse(format!("unknown sequence family {other:?}"))),
        }
    }
}

/// The named sequence at period `n`.
pub fn family(fam: &Family, n: u32) -> Result<PeriodicSeq> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("period must be >= 2, got {n}")));
    }
    let nn = i64::from(n);
    let zero = || CycloNum::rational(n, &Rational::zero());
    match fam {
        Family::Delta => {
            let mut v = vec![zero(); n as usize];
            v[0] = CycloNum::rational(n, &Rational::from(nn));
            PeriodicSeq::new(n, v)
        }
        Family::Ramanujan => Ok(dft_forward(&totative_spectrum(n))),
        Family::FourierDedekind { a, c0 } | Family::ApostolDedekind { a, c0 } => {
            if gcd(*a, nn) != 1 {
                return Err(Error::InvalidParam(format!(
                    "{fam} needs gcd(a, n) = 1, but gcd({a}, {n}) = {}",
                    gcd(*a, nn)
                )));
            }
            let sign = if matches!(fam, Family::FourierDedekind { .. }) { -1 } else { 1 };
            let mut v = Vec::with_capacity(n as usize);
            v.push(CycloNum::rational(n, c0.as_ref().unwrap_or(&Rational::zero())));
            for k in 1..nn {
                let denom = CycloNum::one() - zeta_pow(n, sign * a * k);
                v.push(denom.inverse()?);
            }
            PeriodicSeq::new(n, v)
        }
        Family::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(n));
            let v: Vec<Rational> = (0..n)
                .map(|_| Rational::new(rng.random_range(-9..=9i64), rng.random_range(1..=5i64)))
                .collect();
            PeriodicSeq::from_rationals(&v)
        }
    }
}

/// `K_j = 1` when `gcd(j, n) = 1`, else 0 (indices taken mod n).
pub fn totative_spectrum(n: u32) -> SpectralSeq {
    let mut v = vec![CycloNum::rational(n, &Rational::zero()); n as usize];
    for j in totatives(u64::from(n)) {
        v[(j % u64::from(n)) as usize] = CycloNum::rational(n, &Rational::one());
    }
    SpectralSeq::new(n, v).expect("n >= 2")
}

/// `C^{(r)}(q) = Σ_{j<n} K_{j−r} q^j` (coefficient form).
pub fn interp_poly(spec: &SpectralSeq, r: i64) -> QPoly<CycloNum> {
    QPoly::new((0..i64::from(spec.n)).map(|j| spec.get(j - r).clone()).collect())
}

/// The polynomial of degree `< n` through `(ζ^{−k}, ζ^{−kr} C_{−k})`,
/// built by explicit Lagrange interpolation without the transform.
pub fn lagrange_oracle(seq: &PeriodicSeq, r: i64) -> QPoly<CycloNum> {
    let n = seq.n;
    let nn = i64::from(n);
    let node = |k: i64| zeta_pow(n, -k);
    let mut out = QPoly::zero();
    for k in 0..nn {
        let y = zeta_pow(n, -k * r) * seq.get(-k).clone();
        if y.is_zero() {
            continue;
        }
        let mut basis = QPoly::one();
        let mut denom = CycloNum::one();
        for l in (0..nn).filter(|&l| l != k) {
            basis = &basis * &QPoly::new(vec![-node(l), CycloNum::one()]);
            denom = denom * (node(k) - node(l));
        }
        let w = y * denom.inverse().expect("distinct nodes");
        out = &out + &basis.scale(&w);
    }
    out
}

/// `(q^n − 1) Σ_{d|n} μ(d)/(q^d − 1)`, each quotient by exact division.
pub fn moebius_form(n: u32) -> Result<QPoly<Rational>> {
    moebius_form_impl(n, false)
}

/// `(q^n − 1) Σ_{d|n} μ(d) q^d/(q^d − 1)`.
pub fn moebius_form_shifted(n: u32) -> Result<QPoly<Rational>> {
    moebius_form_impl(n, true)
}

fn moebius_form_impl(n: u32, with_qd: bool) -> Result<QPoly<Rational>> {
    let qn1 = &QPoly::monomial(Rational::one(), n as usize) - &QPoly::one();
    let mut acc = QPoly::zero();
    for d in divisors(u64::from(n)) {
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        let qd1 = &QPoly::monomial(Rational::one(), d as usize) - &QPoly::one();
        let mut term = qn1.div_exact(&qd1)?;
        if with_qd {
            term = &term * &QPoly::monomial(Rational::one(), d as usize);
        }
        acc = &acc + &term.scale(&Rational::from(mu));
    }
    Ok(acc)
}

/// Sequence file: `{"n": int, "values": [scalar-or-cyclonum, ...]}`.
#[derive(Serialize, Deserialize)]
pub struct SequenceFile {
    pub n: u32,
    pub values: Vec<SequenceValue>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceValue {
    Scalar(Rational),
    Cyclo(CycloJson),
}

impl SequenceFile {
    pub fn parse(text: &str) -> Result<PeriodicSeq> {
        let file: SequenceFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("sequence file: {e}")))?;
        let values = file
            .values
            .into_iter()
            .map(|v| match v {
                SequenceValue::Scalar(r) => Ok(CycloNum::from_rational(&r)),
                SequenceValue::Cyclo(c) => CycloNum::try_from(c),
            })
            .collect::<Result<Vec<_>>>()?;
        PeriodicSeq::new(file.n, values)
    }
}
