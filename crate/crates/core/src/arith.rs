//! Elementary arithmetic functions by trial division.

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Prime factorization as `(p, exponent)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius requires n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `1 ≤ j ≤ n` with `gcd(j, n) = 1`.
pub fn totatives(n: u64) -> Vec<u64> {
    (1..=n).filter(|&j| gcd(j as i64, n as i64) == 1).collect()
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn against_brute_force() {
        for n in 1..=60u64 {
            let brute_phi = (1..=n).filter(|&j| gcd(j as i64, n as i64) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute_phi, "phi({n})");
            // μ via the defining sum Σ_{d|n} μ(d) = [n = 1]
            let s: i64 = divisors(n).into_iter().map(moebius).sum();
            assert_eq!(s, i64::from(n == 1), "mobius sum for {n}");
        }
    }

    #[test]
    fn named_values() {
        assert_eq!(euler_phi(6), 2);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(totatives(6), vec![1, 5]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(totatives(1), vec![1]);
        assert_eq!(gcd(-4, 6), 2);
    }
}
