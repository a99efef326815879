//! Integer arithmetic helpers and prime factorization of 64-bit integers.
//!
//! Factorization runs trial division up to a fixed budget and hands any
//! remaining cofactor to Pollard's rho (Brent variant) with a deterministic
//! increment sequence, so results and failures are reproducible.

use std::collections::HashMap;
use std::sync::OnceLock;

use parking_lot::RwLock;
use serde::Serialize;

use crate::error::{Error, Result};

const TRIAL_DIVISION_BUDGET: u64 = 1_000_000;
const FACTOR_LIMIT: u64 = 1 << 63;

/// Prime factorization as `(prime, exponent)` pairs with ascending primes.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct IntFactorization {
    factors: Vec<(u64, u32)>,
}

impl IntFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, k)| acc * p.pow(k))
    }

    /// `Some(p)` when the factored value is a power of the single prime `p`.
    pub fn single_prime(&self) -> Option<u64> {
        match self.factors.as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow("power"))
}

/// Deterministic primality check by trial division up to the square root.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Miller-Rabin with a witness set that is deterministic for all `u64`.
fn is_prime_mr(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. Tries increments 1, 2, 3, ... in order.
fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho increments exhausted")
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_mr(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, out);
    split_large(n / d, out);
}

fn factor_uncached(mut n: u64) -> IntFactorization {
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, k: u32, factors: &mut Vec<(u64, u32)>| {
        if k > 0 {
            factors.push((p, k));
        }
    };
    let mut k = 0;
    while n.is_multiple_of(2) {
        n /= 2;
        k += 1;
    }
    push(2, k, &mut factors);
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_BUDGET && d.saturating_mul(d) <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        push(d, k, &mut factors);
        d += 2;
    }
    if n > 1 {
        if d.saturating_mul(d) > n {
            factors.push((n, 1));
        } else {
            let mut rest = Vec::new();
            split_large(n, &mut rest);
            rest.sort_unstable();
            for p in rest {
                match factors.last_mut() {
                    Some((q, k)) if *q == p => *k += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    IntFactorization { factors }
}

fn cache() -> &'static RwLock<HashMap<u64, IntFactorization>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, IntFactorization>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Complete prime factorization of `n` for `1 <= n < 2^63`.
///
/// Results are memoized in an insert-only process-wide cache.
pub fn factor_integer(n: u64) -> Result<IntFactorization> {
    if n == 0 || n >= FACTOR_LIMIT {
        return Err(Error::OutOfRange(format!(
            "factor_integer requires 1 <= n < 2^63, got {n}"
        )));
    }
    if let Some(hit) = cache().read().get(&n) {
        return Ok(hit.clone());
    }
    let result = factor_uncached(n);
    cache().write().entry(n).or_insert_with(|| result.clone());
    Ok(result)
}

/// Smallest `t >= 0` with `p^t >= b`, by integer comparison.
pub fn min_power_at_least(p: u64, b: u64) -> u32 {
    let mut t = 0u32;
    let mut acc = 1u64;
    while acc < b {
        acc = acc.saturating_mul(p);
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(n: u64) -> Vec<(u64, u32)> {
        factor_integer(n).unwrap().factors().to_vec()
    }

    #[test]
    fn small_values() {
        assert_eq!(pairs(15), vec![(3, 1), (5, 1)]);
        assert_eq!(pairs(1), vec![]);
        assert_eq!(pairs(2), vec![(2, 1)]);
        assert_eq!(
            pairs(1_048_575),
            vec![(3, 1), (5, 2), (11, 1), (31, 1), (41, 1)]
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(factor_integer(0), Err(Error::OutOfRange(_))));
        assert!(matches!(factor_integer(1 << 63), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn large_semiprime_goes_through_rho() {
        // both primes exceed the trial-division budget
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(pairs(p * q), vec![(p, 1), (q, 1)]);
        let n = 2u64.pow(62) - 1;
        let f = factor_integer(n).unwrap();
        assert_eq!(f.value(), n);
        assert!(f.primes().all(is_prime_mr));
    }

    #[test]
    fn trial_and_miller_rabin_agree() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_trial(n), is_prime_mr(n), "n = {n}");
        }
    }

    #[test]
    fn min_power() {
        assert_eq!(min_power_at_least(2, 1), 0);
        assert_eq!(min_power_at_least(2, 3), 2);
        assert_eq!(min_power_at_least(3, 4), 2);
        assert_eq!(min_power_at_least(5, 4), 1);
    }

    proptest::proptest! {
        #[test]
        fn reconstructs(n in 1u64..(1u64 << 40)) {
            let f = factor_integer(n).unwrap();
            proptest::prop_assert_eq!(f.value(), n);
            for w in f.factors().windows(2) {
                proptest::prop_assert!(w[0].0 < w[1].0);
            }
            for p in f.primes() {
                proptest::prop_assert!(is_prime_trial(p));
            }
        }
    }
}
