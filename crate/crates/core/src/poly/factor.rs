//! Complete factorization over `F_q`: square-free decomposition, then
//! distinct-degree and equal-degree (Cantor-Zassenhaus) splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Seed used for equal-degree splitting unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed_f1e1d;

/// `unit * prod(g_i ^ b_i)` with monic irreducible, pairwise distinct `g_i`
/// in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn reconstruct(&self, field: &crate::field::FieldCtx) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (g, b)| {
                acc.mul(&g.pow(*b as u64)).expect("factors share the field")
            })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, b)| b == 1)
    }
}

impl Poly {
    /// Factors with the default seed.
    pub fn factor(&self) -> Result<Factorization> {
        self.factor_seeded(DEFAULT_SEED)
    }

    /// Factors, driving equal-degree splitting from `seed`. The result does
    /// not depend on the seed.
    pub fn factor_seeded(&self, seed: u64) -> Result<Factorization> {
        let unit = self.leading().ok_or(Error::ZeroPolynomial)?;
        let monic = self.monic();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        if monic.deg() != Some(0) {
            for (part, mult) in monic.squarefree_decomposition()? {
                for (product, d) in part.distinct_degree()? {
                    for g in product.equal_degree(d, &mut rng)? {
                        factors.push((g, mult));
                    }
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
        for (g, m) in factors {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        Ok(Factorization {
            unit,
            factors: merged,
        })
    }

    /// Pairs `(s_i, i)` of pairwise coprime square-free monic parts with
    /// `self = prod s_i^i`. Expects a monic input.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, u32)>> {
        let field = self.field();
        let p = field.p() as u32;
        let mut out = Vec::new();
        if self.deg().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let mut c = self.gcd(&self.derivative())?;
        let mut w = self.div_exact(&c)?;
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c)?;
            let fac = w.div_exact(&y)?;
            if !fac.is_one() {
                out.push((fac, i));
            }
            c = c.div_exact(&y)?;
            w = y;
            i += 1;
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree_decomposition()? {
                out.push((g, m * p));
            }
        }
        Ok(out)
    }

    /// Splits a square-free monic polynomial into `(product, d)` where each
    /// product collects all irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Result<Vec<(Poly, usize)>> {
        let field = self.field();
        let x = Poly::x(field);
        let mut rest = self.clone();
        let mut out = Vec::new();
        let mut h = x.rem(&rest)?;
        let mut d = 1;
        while rest.deg().unwrap_or(0) >= 2 * d {
            h = h.powmod(field.q(), &rest)?;
            let g = h.sub(&x)?.gcd(&rest)?;
            if !g.is_one() {
                rest = rest.div_exact(&g)?;
                h = h.rem(&rest)?;
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(k) = rest.deg().filter(|&k| k > 0) {
            out.push((rest, k));
        }
        Ok(out)
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    pub fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Result<Vec<Poly>> {
        let n = self.deg().ok_or(Error::ZeroPolynomial)?;
        if n == d {
            return Ok(vec![self.clone()]);
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        loop {
            let a = random_below(self, rng);
            if a.deg().unwrap_or(0) == 0 {
                continue;
            }
            let mut g = a.gcd(self)?;
            if g.is_one() {
                g = self.splitting_map(&a, d)?.gcd(self)?;
            }
            if let Some(k) = g.deg() {
                if k > 0 && k < n {
                    let other = self.div_exact(&g)?;
                    let mut out = g.equal_degree(d, rng)?;
                    out.extend(other.equal_degree(d, rng)?);
                    return Ok(out);
                }
            }
        }
    }

    /// `a^{(q^d-1)/2} - 1` in odd characteristic, the absolute trace of `a`
    /// in characteristic two; both taken modulo `self`.
    fn splitting_map(&self, a: &Poly, d: usize) -> Result<Poly> {
        let field = self.field();
        let q = field.q();
        if field.p() == 2 {
            let steps = field.e() * d;
            let mut term = a.rem(self)?;
            let mut acc = term.clone();
            for _ in 1..steps {
                term = term.mulmod(&term, self)?;
                acc = acc.add(&term)?;
            }
            Ok(acc)
        } else {
            // (q^d - 1)/2 = (1 + q + ... + q^{d-1}) * (q - 1)/2
            let mut term = a.rem(self)?;
            let mut acc = term.clone();
            for _ in 1..d {
                term = term.powmod(q, self)?;
                acc = acc.mulmod(&term, self)?;
            }
            acc.powmod((q - 1) / 2, self)?.sub(&Poly::one(field))
        }
    }
}

fn random_below<R: Rng>(f: &Poly, rng: &mut R) -> Poly {
    let field = f.field();
    let n = f.deg().unwrap_or(0);
    let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..field.q())).collect();
    Poly::from_indices(field, &coeffs)
}
