use num_bigint::BigInt;

use crate::rational::Rational;

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_int(acc)
}

pub fn factorial(n: usize) -> Rational {
    Rational::from_int((1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i)))
}

/// Row `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<Rational> {
    (0..=n).map(|k| binomial(n, k)).collect()
}
