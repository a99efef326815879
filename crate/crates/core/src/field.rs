//! Finite fields `F_{p^e}` with exact element arithmetic.
//!
//! An element is stored as the integer `sum c_i p^i` of its little-endian
//! coefficient vector `(c_0, ..., c_{e-1})` in the power basis of the modulus
//! root. The encoding is canonical, so it doubles as the element's index in
//! `0..q` and as the enumeration order of [`FieldCtx::elements`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::integer::{factor_integer, is_prime_trial};
use crate::poly::Poly;

/// Characteristics at or above this value are rejected.
pub const MAX_CHARACTERISTIC: u64 = 1 << 20;

const MAX_DEGREE: usize = 63;
const TABLE_LIMIT: u64 = 256;

/// An element of some [`FieldCtx`]. Only meaningful together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    /// Position of this element in the field's enumeration order.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    e: usize,
    q: u64,
    /// Monic modulus, `e + 1` coefficients, present iff `e > 1`.
    modulus: Option<Vec<u64>>,
    /// `p^i` for `i in 0..=e`.
    radix: Vec<u64>,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// A finite field `F_q`, `q = p^e`. Cheap to clone and immutable.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_field(self))
    }
}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Builds `F_{p^e}`.
    ///
    /// `modulus` is a little-endian coefficient vector over `F_p`. When it is
    /// absent and `e > 1`, the lexicographically smallest monic irreducible
    /// of degree `e` is used, comparing `c_0` first.
    pub fn new(p: u64, e: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if !is_prime_trial(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let mut radix = vec![1u64];
        for _ in 0..e {
            let next = radix
                .last()
                .and_then(|r| r.checked_mul(p))
                .filter(|&r| r < 1 << 63)
                .ok_or(Error::FieldTooLarge { p, e })?;
            radix.push(next);
        }
        if e > MAX_DEGREE {
            return Err(Error::FieldTooLarge { p, e });
        }
        let q = radix[e];

        let base = FieldCtx(Arc::new(Inner {
            p,
            e: 1,
            q: p,
            modulus: None,
            radix: vec![1, p],
            tables: None,
        }));

        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|c| c % p).collect();
                let deg = m.iter().rposition(|&c| c != 0).unwrap_or(0);
                if deg != e {
                    return Err(Error::DegreeMismatch {
                        expected: e,
                        found: deg,
                    });
                }
                if m[deg] != 1 {
                    return Err(Error::NonMonicModulus);
                }
                let m = m[..=deg].to_vec();
                let poly = Poly::from_indices(&base, &m);
                if !poly.is_irreducible()? {
                    return Err(Error::ReducibleModulus(p));
                }
                (e > 1).then_some(m)
            }
            None if e > 1 => Some(smallest_irreducible(&base, e)?),
            None => None,
        };

        let mut inner = Inner {
            p,
            e,
            q,
            modulus,
            radix,
            tables: None,
        };
        if e > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldCtx(Arc::new(inner)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> usize {
        self.0.e
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// Defining modulus over `F_p`, little-endian; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    /// The prime subfield `F_p` as its own context.
    pub fn prime_subfield(&self) -> FieldCtx {
        if self.is_prime_field() {
            self.clone()
        } else {
            FieldCtx::prime(self.0.p).expect("characteristic already validated")
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The generator `g = t mod modulus` of the power basis (for `e > 1`).
    pub fn generator(&self) -> Option<FieldElement> {
        (self.0.e > 1).then_some(FieldElement(self.0.p))
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// Element with the given little-endian coefficients (reduced mod `p`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.e {
            return Err(Error::LengthMismatch {
                expected: self.0.e,
                found: coeffs.len(),
            });
        }
        Ok(FieldElement(
            coeffs
                .iter()
                .zip(&self.0.radix)
                .map(|(&c, &r)| (c % self.0.p) * r)
                .sum(),
        ))
    }

    /// Element at `index` in enumeration order.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.0.q {
            return Err(Error::ForeignElement(format!(
                "index {index} >= q = {}",
                self.0.q
            )));
        }
        Ok(FieldElement(index))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.0.q
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut out = vec![0u64; self.0.e];
        let mut v = a.0;
        for c in out.iter_mut() {
            *c = v % self.0.p;
            v /= self.0.p;
        }
        out
    }

    /// `Some(c)` when `a` lies in the prime subfield.
    pub fn as_prime(&self, a: FieldElement) -> Option<u64> {
        (a.0 < self.0.p).then_some(a.0)
    }

    /// All `q` elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = &*self.0;
        if s.e == 1 {
            let t = a.0 + b.0;
            return FieldElement(if t >= s.p { t - s.p } else { t });
        }
        if s.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if let Some(t) = &s.tables {
            return FieldElement(t.add[(a.0 * s.q + b.0) as usize] as u64);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        for r in &s.radix[..s.e] {
            let d = (x % s.p + y % s.p) % s.p;
            out += d * r;
            x /= s.p;
            y /= s.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let s = &*self.0;
        if s.p == 2 || a.0 == 0 {
            return a;
        }
        if s.e == 1 {
            return FieldElement(s.p - a.0);
        }
        let mut x = a.0;
        let mut out = 0u64;
        for r in &s.radix[..s.e] {
            let d = x % s.p;
            out += ((s.p - d) % s.p) * r;
            x /= s.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = &*self.0;
        if s.e == 1 {
            return FieldElement(a.0 * b.0 % s.p);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        if let Some(t) = &s.tables {
            return FieldElement(t.mul[(a.0 * s.q + b.0) as usize] as u64);
        }
        mul_slow(s, a.0, b.0)
    }

    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.0.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Unique `b` with `b^p = a` (inverse Frobenius, `a^{p^{e-1}}`).
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.0.e {
            r = self.pow(r, self.0.p);
        }
        r
    }

    /// Smallest `n >= 1` with `a^n = 1`, found by stripping prime factors
    /// of `q - 1` from the exponent.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = self.0.q - 1;
        let mut order = group;
        for (prime, _) in factor_integer(group)?.factors() {
            while order.is_multiple_of(*prime) && self.pow(a, order / prime) == self.one() {
                order /= prime;
            }
        }
        Ok(order)
    }
}

fn mul_slow(s: &Inner, a: u64, b: u64) -> FieldElement {
    let e = s.e;
    let p = s.p;
    let modulus = s.modulus.as_ref().expect("extension field has a modulus");
    let mut da = [0u64; MAX_DEGREE + 1];
    let mut db = [0u64; MAX_DEGREE + 1];
    let (mut x, mut y) = (a, b);
    for i in 0..e {
        da[i] = x % p;
        db[i] = y % p;
        x /= p;
        y /= p;
    }
    let mut prod = [0u64; 2 * MAX_DEGREE + 2];
    for i in 0..e {
        if da[i] == 0 {
            continue;
        }
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for i in (e..2 * e - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..e {
            let sub = c * modulus[j] % p;
            prod[i - e + j] = (prod[i - e + j] + p - sub) % p;
        }
    }
    FieldElement(prod[..e].iter().zip(&s.radix).map(|(c, r)| c * r).sum())
}

fn build_tables(s: &Inner) -> Tables {
    let q = s.q as usize;
    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..s.q {
        for b in 0..s.q {
            let (mut x, mut y) = (a, b);
            let mut sum = 0u64;
            for r in &s.radix[..s.e] {
                sum += ((x % s.p + y % s.p) % s.p) * r;
                x /= s.p;
                y /= s.p;
            }
            let idx = (a * s.q + b) as usize;
            add[idx] = sum as u16;
            mul[idx] = if a == 0 || b == 0 {
                0
            } else {
                mul_slow(s, a, b).0 as u16
            };
        }
    }
    Tables { add, mul }
}

/// Lexicographically smallest monic irreducible of degree `e` over `F_p`,
/// with `c_0` the most significant coordinate.
fn smallest_irreducible(base: &FieldCtx, e: usize) -> Result<Vec<u64>> {
    let p = base.p();
    let count = p
        .checked_pow(e as u32)
        .ok_or(Error::Overflow("modulus search"))?;
    for n in 0..count {
        let mut coeffs = vec![0u64; e + 1];
        let mut v = n;
        for i in (0..e).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        coeffs[e] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if Poly::from_indices(base, &coeffs).is_irreducible()? {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
