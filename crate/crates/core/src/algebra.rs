//! Cyclic group algebras `A_n = F_p[t]/(t^n - 1)`.
//!
//! When `p` does not divide `n`, `t^n - 1` is squarefree and the Chinese
//! remainder theorem splits `A_n` into one field `F_p[t]/(f_i)` per
//! irreducible factor. Otherwise only direct simulation in the quotient ring
//! is available.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::poly::{Factorization, Poly};
use crate::product::{period_set_over_ring, ProductRingCtx, RingElement, RingMethod};
use crate::ring::FiniteRing;
use crate::sequence::{exhaustive_periods, Recurrence};

/// `F_p[t]/(t^n - 1)`, elements stored as `n` little-endian coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicAlgebra {
    field: FieldCtx,
    n: usize,
}

impl CyclicAlgebra {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(CyclicAlgebra {
            field: FieldCtx::prime(p)?,
            n,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn from_poly(&self, f: &Poly) -> Vec<FieldElement> {
        let mut out = vec![self.field.zero(); self.n];
        for (i, &c) in f.coeffs().iter().enumerate() {
            out[i % self.n] = self.field.add(out[i % self.n], c);
        }
        out
    }

    pub fn to_poly(&self, a: &[FieldElement]) -> Poly {
        Poly::new(&self.field, a.to_vec())
    }

    fn modulus(&self) -> Poly {
        Poly::x_pow_minus_one(&self.field, self.n)
    }
}

impl FiniteRing for CyclicAlgebra {
    type Elem = Vec<FieldElement>;

    fn size(&self) -> Option<u64> {
        self.field.q().checked_pow(u32::try_from(self.n).ok()?)
    }

    fn zero(&self) -> Vec<FieldElement> {
        vec![self.field.zero(); self.n]
    }

    fn one(&self) -> Vec<FieldElement> {
        let mut v = self.zero();
        v[0] = self.field.one();
        v
    }

    fn add(&self, a: &Vec<FieldElement>, b: &Vec<FieldElement>) -> Vec<FieldElement> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    /// Cyclic convolution: `t^n` wraps to `1`.
    fn mul(&self, a: &Vec<FieldElement>, b: &Vec<FieldElement>) -> Vec<FieldElement> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let k = (i + j) % self.n;
                out[k] = f.add(out[k], f.mul(x, y));
            }
        }
        out
    }

    fn is_unit(&self, a: &Vec<FieldElement>) -> bool {
        self.to_poly(a)
            .gcd(&self.modulus())
            .map(|g| g.is_one())
            .unwrap_or(false)
    }

    fn contains(&self, a: &Vec<FieldElement>) -> bool {
        a.len() == self.n && a.iter().all(|&x| self.field.contains(x))
    }

    fn element(&self, mut index: u64) -> Vec<FieldElement> {
        let p = self.field.q();
        (0..self.n)
            .map(|_| {
                let x = self.field.element(index % p).expect("digit below p");
                index /= p;
                x
            })
            .collect()
    }

    fn index_of(&self, a: &Vec<FieldElement>) -> u64 {
        a.iter()
            .rev()
            .fold(0u64, |acc, x| acc * self.field.q() + x.index())
    }

    fn format_elem(&self, a: &Vec<FieldElement>) -> String {
        crate::text::format_poly(&self.to_poly(a), 't')
    }
}

/// `A_n` together with the factorization of `t^n - 1` and, when it is
/// squarefree, the isomorphic product of fields.
#[derive(Debug, Clone)]
pub struct GroupAlgebraSpec {
    pub p: u64,
    pub n: usize,
    pub algebra: CyclicAlgebra,
    pub factorization: Factorization,
    pub semisimple: bool,
    /// Component `i` is `F_p[t]/(f_i)` for the `i`-th factor in canonical
    /// order.
    pub decomposition: Option<ProductRingCtx>,
}

impl GroupAlgebraSpec {
    /// Always `false` for `n >= 2`, since `t - 1` is a proper factor.
    pub fn is_field(&self) -> bool {
        matches!(self.factorization.factors.as_slice(), [(_, 1)])
    }

    pub fn factor_count(&self) -> usize {
        self.factorization.factors.len()
    }

    /// Reduces `a` modulo every factor of `t^n - 1`.
    pub fn crt_map(&self, a: &[FieldElement]) -> Result<RingElement> {
        let ring = self
            .decomposition
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("algebra is not semisimple".into()))?;
        if !self.algebra.contains(&a.to_vec()) {
            return Err(Error::ForeignElement(format!("{a:?}")));
        }
        let a = self.algebra.to_poly(a);
        let parts = ring
            .components()
            .iter()
            .zip(&self.factorization.factors)
            .map(|(comp, (f, _))| {
                let r = a.rem(f)?;
                let digits: Vec<u64> = r.coeffs().iter().map(|c| c.index()).collect();
                comp.from_coeffs(&digits)
            })
            .collect::<Result<Vec<_>>>()?;
        ring.element(parts)
    }

    /// The recurrence over the decomposition with coefficients `crt_map(c_i)`.
    pub fn crt_recurrence(
        &self,
        rec: &Recurrence<CyclicAlgebra>,
    ) -> Result<Recurrence<ProductRingCtx>> {
        let ring = self
            .decomposition
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("algebra is not semisimple".into()))?;
        let coeffs = rec
            .coeffs()
            .iter()
            .map(|c| self.crt_map(c))
            .collect::<Result<Vec<_>>>()?;
        Recurrence::new(ring, coeffs)
    }
}

pub fn make_group_algebra(p: u64, n: usize) -> Result<GroupAlgebraSpec> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let algebra = CyclicAlgebra::new(p, n)?;
    let factorization = algebra.modulus().factor()?;
    let semisimple = factorization.factors.iter().all(|&(_, m)| m == 1);
    let decomposition = if semisimple {
        let components = factorization
            .factors
            .iter()
            .map(|(f, _)| {
                let d = f.deg().expect("nonconstant factor");
                if d == 1 {
                    FieldCtx::prime(p)
                } else {
                    let digits: Vec<u64> = f.coeffs().iter().map(|c| c.index()).collect();
                    FieldCtx::new(p, d, Some(&digits))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Some(ProductRingCtx::new(components)?)
    } else {
        None
    };
    Ok(GroupAlgebraSpec {
        p,
        n,
        algebra,
        factorization,
        semisimple,
        decomposition,
    })
}

/// How [`group_algebra_max_period`] obtained its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxPeriodMethod {
    LcmClosure,
    Bruteforce,
}

/// Largest period of a degree-`k` recurrence over `A_n`.
///
/// Semisimple algebras use the lcm-closure of the component period sets.
/// Otherwise every unit-`c_0` recurrence is run from every state, which
/// must fit within `budget`.
pub fn group_algebra_max_period(
    spec: &GroupAlgebraSpec,
    k: usize,
    budget: u64,
) -> Result<(u64, MaxPeriodMethod)> {
    match &spec.decomposition {
        Some(ring) => {
            let sets = period_set_over_ring(k, ring, RingMethod::Auto, budget)?;
            Ok((
                sets.period_set.max().unwrap_or(1),
                MaxPeriodMethod::LcmClosure,
            ))
        }
        None => {
            let periods = exhaustive_periods(&spec.algebra, k, budget)?;
            Ok((
                periods.last().copied().unwrap_or(1),
                MaxPeriodMethod::Bruteforce,
            ))
        }
    }
}
