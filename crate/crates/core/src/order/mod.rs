//! Order of a polynomial: the least `n > 0` with `g | x^n - 1`, where
//! `f = x^r g` and `g(0) != 0`.
//!
//! [`ord`] reduces to irreducible prime powers through the factorization of
//! `g`: for irreducible `g` of order `e`, `ord(g^b) = e p^t` with `t` the
//! least integer such that `p^t >= b`, and orders of pairwise coprime factors
//! combine by lcm. [`ord_bruteforce`] walks powers of `x` directly and shares
//! nothing with that pipeline.

pub mod integer;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Poly, DEFAULT_SEED};

pub use integer::{factor_integer, IntFactorization};

/// One line of the order ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorOrder {
    #[serde(serialize_with = "serialize_poly")]
    pub factor: Poly,
    pub multiplicity: u32,
    /// Order of the irreducible factor itself.
    pub irreducible_order: u64,
    /// Least `t` with `p^t >= multiplicity`.
    pub p_exponent: u32,
    pub contribution: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderResult {
    pub order: u64,
    /// Power of `x` removed before factoring.
    pub strip_exponent: usize,
    pub per_factor: Vec<FactorOrder>,
}

fn serialize_poly<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Writes `f = x^r g` with `g(0) != 0`.
pub fn strip_x_power(f: &Poly) -> Result<(usize, Poly)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let r = f.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    Ok((r, Poly::new(f.field(), f.coeffs()[r..].to_vec())))
}

/// `q^d - 1` with overflow checking.
pub fn unit_group_order(q: u64, d: usize) -> Result<u64> {
    let d = u32::try_from(d).map_err(|_| Error::Overflow("q^d - 1"))?;
    q.checked_pow(d)
        .filter(|&v| v <= 1 << 63)
        .map(|v| v - 1)
        .ok_or(Error::Overflow("q^d - 1"))
}

/// Order of an irreducible `g` with `g(0) != 0`: the multiplicative order
/// of `x` in `F_q[x]/(g)`, obtained by stripping primes of `q^d - 1`.
pub fn ord_irreducible(g: &Poly) -> Result<u64> {
    let d = g.deg().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if g.coeff(0).is_zero() {
        return Err(Error::XDividesG);
    }
    if !g.is_irreducible()? {
        return Err(Error::ReduciblePolynomial);
    }
    let g = g.monic();
    let group = unit_group_order(g.field().q(), d)?;
    let x = Poly::x(g.field());
    let mut order = group;
    for prime in factor_integer(group)?.primes() {
        while order % prime == 0 && x.powmod(order / prime, &g)?.is_one() {
            order /= prime;
        }
    }
    Ok(order)
}

/// `ord(g^b) = e p^t` for irreducible `g`.
pub fn ord_prime_power(g: &Poly, b: u32) -> Result<u64> {
    if b == 0 {
        return Err(Error::InvalidArgument(
            "multiplicity must be positive".into(),
        ));
    }
    let e = ord_irreducible(g)?;
    let p = g.field().p();
    let t = integer::min_power_at_least(p, b as u64);
    e.checked_mul(integer::checked_pow(p, t)?)
        .ok_or(Error::Overflow("ord_prime_power"))
}

/// Order of `f` through factorization, with a per-factor ledger.
pub fn ord(f: &Poly) -> Result<OrderResult> {
    ord_seeded(f, DEFAULT_SEED)
}

pub fn ord_seeded(f: &Poly, seed: u64) -> Result<OrderResult> {
    let (r, g) = strip_x_power(f)?;
    let p = f.field().p();
    let mut per_factor = Vec::new();
    let mut order = 1u64;
    for (factor, multiplicity) in g.factor_seeded(seed)?.factors {
        let irreducible_order = ord_irreducible(&factor)?;
        let p_exponent = integer::min_power_at_least(p, multiplicity as u64);
        let contribution = irreducible_order
            .checked_mul(integer::checked_pow(p, p_exponent)?)
            .ok_or(Error::Overflow("order contribution"))?;
        order = integer::checked_lcm(order, contribution)?;
        per_factor.push(FactorOrder {
            factor,
            multiplicity,
            irreducible_order,
            p_exponent,
            contribution,
        });
    }
    Ok(OrderResult {
        order,
        strip_exponent: r,
        per_factor,
    })
}

/// Smallest `n` with `g | x^n - 1`, found by stepping `h <- h x mod g`.
/// `limit` defaults to `q^{deg g} - 1`, which the true order never exceeds.
pub fn ord_bruteforce(f: &Poly, limit: Option<u64>) -> Result<u64> {
    let (_, g) = strip_x_power(f)?;
    let d = g.deg().expect("nonzero");
    if d == 0 {
        return Ok(1);
    }
    let limit = match limit {
        Some(l) => l,
        None => unit_group_order(g.field().q(), d).unwrap_or(u64::MAX),
    };
    let field = g.field();
    let g = g.monic();
    let m = g.coeffs();
    // h holds d coefficients of x^n mod g
    let mut h = vec![field.zero(); d];
    if d == 1 {
        h[0] = field.neg(m[0]);
    } else {
        h[1] = field.one();
    }
    let one = {
        let mut v = vec![field.zero(); d];
        v[0] = field.one();
        v
    };
    let mut n = 1u64;
    while h != one {
        if n >= limit {
            return Err(Error::LimitExceeded(limit));
        }
        // multiply by x: shift up and fold the overflow term back
        let top = h[d - 1];
        for i in (1..d).rev() {
            h[i] = field.sub(h[i - 1], field.mul(top, m[i]));
        }
        h[0] = field.neg(field.mul(top, m[0]));
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn poly(field: &FieldCtx, c: &[i64]) -> Poly {
        Poly::from_ints(field, c)
    }

    #[test]
    fn strip() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(
            strip_x_power(&poly(&f2, &[0, 0, 1, 1])).unwrap(),
            (2, poly(&f2, &[1, 1]))
        );
        let g = poly(&f2, &[1, 1, 1]);
        assert_eq!(strip_x_power(&g).unwrap(), (0, g));
        assert_eq!(
            strip_x_power(&Poly::monomial(&f2, f2.one(), 5)).unwrap(),
            (5, Poly::one(&f2))
        );
        assert_eq!(strip_x_power(&Poly::zero(&f2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn irreducible_orders() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(ord_irreducible(&poly(&f2, &[1, 1, 1])).unwrap(), 3);
        assert_eq!(ord_irreducible(&poly(&f2, &[1, 1, 0, 1])).unwrap(), 7);
        for p in [2, 3, 5, 7] {
            let fp = FieldCtx::prime(p).unwrap();
            assert_eq!(ord_irreducible(&poly(&fp, &[-1, 1])).unwrap(), 1);
        }
        assert_eq!(
            ord_irreducible(&poly(&f2, &[1, 0, 1])),
            Err(Error::ReduciblePolynomial)
        );
        assert_eq!(
            ord_irreducible(&poly(&f2, &[0, 1, 1])),
            Err(Error::XDividesG)
        );
    }

    #[test]
    fn prime_powers() {
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(ord_prime_power(&poly(&f5, &[-3, 1]), 2).unwrap(), 20);
        let g = poly(&f5, &[2, 1, 1]);
        assert_eq!(
            ord_prime_power(&g, 1).unwrap(),
            ord_irreducible(&g).unwrap()
        );
        let f2 = FieldCtx::prime(2).unwrap();
        let x1 = poly(&f2, &[1, 1]);
        assert_eq!(ord_prime_power(&x1, 3).unwrap(), 4);
        // (x+1)^3 divides x^4 - 1 but no x^n - 1 for n < 4
        let cube = x1.pow(3);
        let hits: Vec<usize> = (1..=4)
            .filter(|&n| cube.divides(&Poly::x_pow_minus_one(&f2, n)).unwrap())
            .collect();
        assert_eq!(hits, vec![4]);
    }

    #[test]
    fn pipeline_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f = poly(&f2, &[1, 0, 0, 0, 1, 1]);
        let res = ord(&f).unwrap();
        assert_eq!(res.order, 21);
        assert_eq!(res.per_factor.len(), 2);
        assert_eq!(res.per_factor[0].contribution, 3);
        assert_eq!(res.per_factor[1].contribution, 7);
        let f5 = FieldCtx::prime(5).unwrap();
        let fib = poly(&f5, &[-1, -1, 1]);
        let res = ord(&fib).unwrap();
        assert_eq!(res.order, 20);
        assert_eq!(res.per_factor[0].irreducible_order, 4);
        assert_eq!(res.per_factor[0].p_exponent, 1);
        assert_eq!(ord(&poly(&f2, &[-1, -1, 1])).unwrap().order, 3);
        assert_eq!(ord(&Poly::constant(&f5, f5.from_int(3))).unwrap().order, 1);
        assert_eq!(ord(&Poly::zero(&f5)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn bruteforce_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        let f3 = FieldCtx::prime(3).unwrap();
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(ord_bruteforce(&poly(&f2, &[1, 1, 1]), None).unwrap(), 3);
        assert_eq!(ord_bruteforce(&poly(&f3, &[-1, 1]), None).unwrap(), 1);
        assert_eq!(ord_bruteforce(&poly(&f5, &[-1, -1, 1]), None).unwrap(), 20);
        assert_eq!(
            ord_bruteforce(&poly(&f5, &[-1, -1, 1]), Some(10)),
            Err(Error::LimitExceeded(10))
        );
    }

    #[test]
    fn ledger_serializes_polys_as_text() {
        let f2 = FieldCtx::prime(2).unwrap();
        let res = ord(&poly(&f2, &[0, 1, 0, 0, 0, 1, 1])).unwrap();
        let json = serde_json::to_value(&res).unwrap();
        assert_eq!(json["order"], 21);
        assert_eq!(json["strip_exponent"], 1);
        assert_eq!(json["per_factor"][0]["factor"], "x^2+x+1");
    }
}
