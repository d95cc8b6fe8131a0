//! Floating-point reference evaluation of the E-sums, independent of the
//! exact cyclotomic arithmetic.

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub fn root(n: u32, k: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / f64::from(n))
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `H_m^{(p)}(q, λ, γ)` at a numeric `q`, in complex floating point.
pub fn frobenius_euler_f64(m: usize, p: i64, q: f64, lambda: f64, gamma: Complex64) -> Complex64 {
    let factor = (Complex64::new(1.0, 0.0) - gamma).powi(p as i32);
    let gap = Complex64::new(lambda, 0.0) - gamma;
    let mut h: Vec<Complex64> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let mut sum = Complex64::new(0.0, 0.0);
        for (i, hi) in h.iter().enumerate() {
            sum += hi * binom(j, i);
        }
        h.push((factor * q.powi(j as i32) - sum * lambda) / gap);
    }
    h[m]
}

/// Direct floating evaluation of the E-sum with weights given as a function of k.
pub fn e_sum_f64(m: usize, n: u32, r: i64, p: i64, q: f64, lambda: f64, weight: impl Fn(i64) -> Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..i64::from(n) {
        let gamma = root(n, -k);
        let h = frobenius_euler_f64(m - 1, p, q, lambda, gamma);
        let denom = (Complex64::new(1.0, 0.0) - root(n, k)).powi(p as i32);
        acc += root(n, -k * r) * h * weight(-k) / denom;
    }
    acc
}

/// `C_k = 1/(1 − ζ^{sign·a·k})` in floating point (`C_0` is never read by the sum).
pub fn dedekind_weight(n: u32, a: i64, sign: i64) -> impl Fn(i64) -> Complex64 {
    move |k| Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - root(n, sign * a * k))
}

pub fn close(exact: Complex64, approx: Complex64, rel: f64) -> bool {
    (exact - approx).norm() <= rel * exact.norm().max(1.0)
}
