//! Dense univariate polynomials in `q` over an exact scalar field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Dense polynomial; `coeffs[i]` multiplies `q^i`.
///
/// Always canonical: the leading stored coefficient is nonzero, and the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq)]
pub struct QPoly<S> {
    coeffs: Vec<S>,
}

/// Rendering of exponents in [`QPoly::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyStyle {
    Ascii,
    Unicode,
}

impl<S: Scalar> QPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c · q^k`
    pub fn monomial(c: S, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        QPoly { coeffs }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(S::one(), 1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// The constant polynomial's value, if this polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<S> {
        match self.coeffs.len() {
            0 => Some(S::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QPoly<T> {
        QPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    /// Formal derivative in `q`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `f(q + c)` by Horner composition.
    pub fn shift(&self, c: &S) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let lin = QPoly::new(vec![c.clone(), S::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * &lin) + &Self::constant(a.clone()))
    }

    /// `f(c · q)`.
    pub fn compose_scale(&self, c: &S) -> Self {
        let mut pw = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Self::new(out)
    }

    /// Euclidean division `self = quot · g + rem` with `deg rem < deg g`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self)> {
        let lead_inv = g.leading().ok_or(Error::DivisionByZero)?.inv().ok_or(Error::DivisionByZero)?;
        let dg = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); rem.len() - dg];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dg].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * b.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; fails with `NotDivisible` on a nonzero remainder.
    pub fn div_exact(&self, g: &Self) -> Result<Self> {
        let (quot, rem) = self.div_rem(g)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible { remainder: rem.to_string() })
        }
    }

    pub fn render(&self, style: PolyStyle) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, body) = match c.to_rational() {
                Some(r) => {
                    let a = r.abs();
                    let body = if k == 0 {
                        a.to_string()
                    } else if a.is_one() {
                        String::new()
                    } else {
                        format!("{a}*")
                    };
                    (r.is_negative(), body)
                }
                None => (false, if k == 0 { c.to_string() } else { format!("{c}*") }),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
            if k >= 1 {
                out.push('q');
            }
            if k >= 2 {
                match style {
                    PolyStyle::Ascii => out.push_str(&format!("^{k}")),
                    PolyStyle::Unicode => out.push_str(&superscript(k)),
                }
            }
        }
        out
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

impl QPoly<Rational> {
    /// `Σ c_i q^i` from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }
}

impl<S: Scalar> fmt::Display for QPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(PolyStyle::Ascii))
    }
}

impl<'a, S: Scalar> Add<&'a QPoly<S>> for &'a QPoly<S> {
    type Output = QPoly<S>;
    fn add(self, rhs: &'a QPoly<S>) -> QPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Sub<&'a QPoly<S>> for &'a QPoly<S> {
    type Output = QPoly<S>;
    fn sub(self, rhs: &'a QPoly<S>) -> QPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, S: Scalar> Mul<&'a QPoly<S>> for &'a QPoly<S> {
    type Output = QPoly<S>;
    fn mul(self, rhs: &'a QPoly<S>) -> QPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        QPoly::new(out)
    }
}

impl<S: Scalar> Neg for &QPoly<S> {
    type Output = QPoly<S>;
    fn neg(self) -> QPoly<S> {
        QPoly { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for QPoly<S> {
            type Output = QPoly<S>;
            fn $m(self, rhs: QPoly<S>) -> QPoly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}

by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl<S: Scalar> Neg for QPoly<S> {
    type Output = QPoly<S>;
    fn neg(self) -> QPoly<S> {
        -&self
    }
}
