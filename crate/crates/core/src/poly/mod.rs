//! Dense univariate polynomials over a [`FieldCtx`].

mod factor;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

pub use factor::{Factorization, DEFAULT_SEED};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

/// A polynomial with little-endian coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} over {})", self, self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(self, 'x'))
    }
}

impl Poly {
    pub fn new(field: &FieldCtx, mut coeffs: Vec<FieldElement>) -> Self {
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from element indices (see [`FieldElement::index`]).
    pub fn from_indices(field: &FieldCtx, coeffs: &[u64]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| field.element(c % field.q()).expect("reduced index"))
            .collect();
        Self::new(field, coeffs)
    }

    /// Builds a polynomial whose coefficients are integers mapped into `F_p`.
    pub fn from_ints(field: &FieldCtx, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldCtx) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FieldCtx) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldCtx, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &FieldCtx) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &FieldCtx, c: FieldElement, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: &FieldCtx, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = field.one();
        coeffs[0] = field.sub(coeffs[0], field.one());
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as an option, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.field.one())
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    fn with(&self, coeffs: Vec<FieldElement>) -> Poly {
        Poly::new(&self.field, coeffs)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.with(add_raw(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.with(self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.with(mul_raw(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        self.with(self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc == self.field.one() => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.with(mul_raw(&self.field, &acc.coeffs, &base.coeffs));
            }
            n >>= 1;
            if n > 0 {
                base = self.with(mul_raw(&self.field, &base.coeffs, &base.coeffs));
            }
        }
        acc
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = divmod_raw(&self.field, &self.coeffs, &divisor.coeffs);
        Ok((self.with(q), self.with(r)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        rem_in_place(&self.field, &mut r, &divisor.coeffs);
        Ok(self.with(r))
    }

    /// Exact quotient; errors unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            rem_in_place(&self.field, &mut a, &b);
            std::mem::swap(&mut a, &mut b);
        }
        Ok(self.with(a).monic())
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check(other)?;
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = s0.sub(&q.mul(&s1)?)?;
            let t = t0.sub(&q.mul(&t1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => Ok((r0, s0, t0)),
            Some(lc) => {
                let inv = f.inv(lc)?;
                Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
            }
        }
    }

    pub fn eval(&self, at: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| {
            self.field.add(self.field.mul(acc, at), c)
        })
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
                .collect(),
        )
    }

    /// `self^n mod modulus` by square-and-multiply.
    pub fn powmod(&self, n: u64, modulus: &Poly) -> Result<Poly> {
        self.check(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let m = &modulus.coeffs;
        let mut base = self.coeffs.clone();
        rem_in_place(f, &mut base, m);
        let mut acc = vec![f.one()];
        rem_in_place(f, &mut acc, m);
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = mul_raw(f, &acc, &base);
                rem_in_place(f, &mut acc, m);
            }
            n >>= 1;
            if n > 0 {
                base = mul_raw(f, &base, &base);
                rem_in_place(f, &mut base, m);
            }
        }
        Ok(self.with(acc))
    }

    /// `(self * other) mod modulus`.
    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(other)?.rem(modulus)
    }

    /// `x^{q^j} mod modulus`, by `j` successive `q`-th powers.
    pub fn x_frobenius(modulus: &Poly, j: usize) -> Result<Poly> {
        let q = modulus.field.q();
        let mut h = Poly::x(&modulus.field).rem(modulus)?;
        for _ in 0..j {
            h = h.powmod(q, modulus)?;
        }
        Ok(h)
    }

    /// Polynomial whose coefficients are the `p`-th roots of those at
    /// indices divisible by `p`. Requires a vanishing derivative.
    pub(crate) fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        debug_assert!(self.derivative().is_zero());
        self.with(
            self.coeffs
                .iter()
                .step_by(p)
                .map(|&c| f.pth_root(c))
                .collect(),
        )
    }

    /// Rabin's test: `x^{q^d} = x mod f` and `gcd(x^{q^{d/l}} - x, f) = 1`
    /// for every prime `l | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.deg() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let primes: Vec<usize> = crate::order::integer::factor_integer(d as u64)?
            .primes()
            .map(|l| l as usize)
            .collect();
        // x^{q^j} for increasing j, recorded where needed
        let q = self.field.q();
        let mut h = x.clone();
        let mut powers = vec![h.clone()];
        for _ in 0..d {
            h = h.powmod(q, &f)?;
            powers.push(h.clone());
        }
        if powers[d] != x.rem(&f)? {
            return Ok(false);
        }
        for l in primes {
            let g = powers[d / l].sub(&x)?.gcd(&f)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical comparison: degree first, then coefficient indices from
    /// the constant term upwards.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .map(|c| c.index())
                .cmp(other.coeffs.iter().map(|c| c.index()))
        })
    }
}

fn trim(v: &mut Vec<FieldElement>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn add_raw(f: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul_raw(f: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Reduces `a` modulo the nonzero `m` in place.
pub(crate) fn rem_in_place(f: &FieldCtx, a: &mut Vec<FieldElement>, m: &[FieldElement]) {
    let dm = m.len() - 1;
    let lc_inv = f.inv(m[dm]).expect("nonzero divisor");
    while a.len() > dm {
        let top = a.len() - 1;
        let c = f.mul(a[top], lc_inv);
        if !c.is_zero() {
            let shift = top - dm;
            for (j, &mj) in m.iter().enumerate() {
                a[shift + j] = f.sub(a[shift + j], f.mul(c, mj));
            }
        }
        a.pop();
        trim(a);
    }
    trim(a);
}

fn divmod_raw(
    f: &FieldCtx,
    a: &[FieldElement],
    m: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let dm = m.len() - 1;
    if a.len() <= dm {
        return (Vec::new(), a.to_vec());
    }
    let lc_inv = f.inv(m[dm]).expect("nonzero divisor");
    let mut r = a.to_vec();
    let mut q = vec![f.zero(); a.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let c = f.mul(r[top], lc_inv);
        let shift = top - dm;
        q[shift] = c;
        if !c.is_zero() {
            for (j, &mj) in m.iter().enumerate() {
                r[shift + j] = f.sub(r[shift + j], f.mul(c, mj));
            }
        }
        r.pop();
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}
