//! Finite products of finite fields `R = F_{q_1} + ... + F_{q_r}` with
//! componentwise arithmetic. A recurrence over `R` is `r` independent field
//! recurrences, so periods combine by lcm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::order::integer::checked_lcm;
use crate::order::unit_group_order;
use crate::period_set::{closed_form, order_set_bruteforce, PeriodSet, Provenance};
use crate::ring::FiniteRing;
use crate::sequence::{period_bruteforce, Recurrence};

#[derive(Debug, Clone, PartialEq)]
pub struct ProductRingCtx {
    components: Vec<FieldCtx>,
}

/// A tuple with one entry per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub parts: Vec<FieldElement>,
}

impl ProductRingCtx {
    pub fn new(components: Vec<FieldCtx>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "a product ring needs at least one component".into(),
            ));
        }
        Ok(ProductRingCtx { components })
    }

    /// Builds the ring from field specs such as `"2"`, `"3^2"` or `"9"`.
    pub fn from_specs<S: AsRef<str>>(specs: &[S]) -> Result<Self> {
        let components = specs
            .iter()
            .map(|s| crate::text::parse_field(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn components(&self) -> &[FieldCtx] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_field(&self) -> bool {
        self.components.len() == 1
    }

    pub fn element(&self, parts: Vec<FieldElement>) -> Result<RingElement> {
        let e = RingElement { parts };
        if !FiniteRing::contains(self, &e) {
            return Err(Error::ForeignElement(format!("{:?}", e.parts)));
        }
        Ok(e)
    }

    /// The element with the same integer in every component.
    pub fn from_int(&self, n: i64) -> RingElement {
        RingElement {
            parts: self.components.iter().map(|f| f.from_int(n)).collect(),
        }
    }

    fn component(&self, i: usize) -> Result<&FieldCtx> {
        if i == 0 || i > self.components.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.components.len(),
            });
        }
        Ok(&self.components[i - 1])
    }
}

impl FiniteRing for ProductRingCtx {
    type Elem = RingElement;

    fn size(&self) -> Option<u64> {
        self.components
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.q()))
    }

    fn zero(&self) -> RingElement {
        self.from_int(0)
    }

    fn one(&self) -> RingElement {
        self.from_int(1)
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            parts: self
                .components
                .iter()
                .zip(a.parts.iter().zip(&b.parts))
                .map(|(f, (&x, &y))| f.add(x, y))
                .collect(),
        }
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            parts: self
                .components
                .iter()
                .zip(a.parts.iter().zip(&b.parts))
                .map(|(f, (&x, &y))| f.mul(x, y))
                .collect(),
        }
    }

    fn is_unit(&self, a: &RingElement) -> bool {
        a.parts.iter().all(|x| !x.is_zero())
    }

    fn contains(&self, a: &RingElement) -> bool {
        a.parts.len() == self.components.len()
            && self
                .components
                .iter()
                .zip(&a.parts)
                .all(|(f, &x)| f.contains(x))
    }

    /// Mixed radix with the first component least significant.
    fn element(&self, mut index: u64) -> RingElement {
        let parts = self
            .components
            .iter()
            .map(|f| {
                let x = f.element(index % f.q()).expect("digit below q");
                index /= f.q();
                x
            })
            .collect();
        RingElement { parts }
    }

    fn index_of(&self, a: &RingElement) -> u64 {
        self.components
            .iter()
            .zip(&a.parts)
            .rev()
            .fold(0u64, |acc, (f, x)| acc * f.q() + x.index())
    }

    fn format_elem(&self, a: &RingElement) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(&a.parts)
            .map(|(f, &x)| crate::text::format_element(f, x))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// `pi_i(a)`, with components numbered from 1.
pub fn project(ring: &ProductRingCtx, a: &RingElement, i: usize) -> Result<FieldElement> {
    ring.component(i)?;
    Ok(a.parts[i - 1])
}

/// Termwise projection of a sequence onto component `i`.
pub fn project_sequence(
    ring: &ProductRingCtx,
    seq: &[RingElement],
    i: usize,
) -> Result<Vec<FieldElement>> {
    seq.iter().map(|a| project(ring, a, i)).collect()
}

/// The field recurrence obtained by projecting every coefficient.
pub fn component_recurrence(
    rec: &Recurrence<ProductRingCtx>,
    i: usize,
) -> Result<Recurrence<FieldCtx>> {
    let ring = rec.ring();
    let field = ring.component(i)?;
    let coeffs = project_sequence(ring, rec.coeffs(), i)?;
    Recurrence::new(field, coeffs)
}

/// Period over `R` as the lcm of the component periods.
pub fn period_over_ring(rec: &Recurrence<ProductRingCtx>, s0: &[RingElement]) -> Result<u64> {
    let ring = rec.ring();
    if s0.len() != rec.degree() {
        return Err(Error::LengthMismatch {
            expected: rec.degree(),
            found: s0.len(),
        });
    }
    if let Some(bad) = s0.iter().find(|a| !FiniteRing::contains(ring, a)) {
        return Err(Error::ForeignElement(format!("{:?}", bad.parts)));
    }
    let mut period = 1u64;
    for i in 1..=ring.rank() {
        let comp = component_recurrence(rec, i)?;
        let state = project_sequence(ring, s0, i)?;
        period = checked_lcm(period, period_bruteforce(&comp, &state)?)?;
    }
    Ok(period)
}

/// Period over `R` by stepping ring states directly.
pub fn period_over_ring_direct(
    rec: &Recurrence<ProductRingCtx>,
    s0: &[RingElement],
) -> Result<u64> {
    period_bruteforce(rec, s0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RingMethod {
    /// Closed forms for `k <= 4`, enumeration above.
    Auto,
    Closed,
    Bruteforce,
}

/// `P(k, F_q)` for one component.
pub fn component_period_set(
    field: &FieldCtx,
    k: usize,
    method: RingMethod,
    budget: u64,
) -> Result<PeriodSet> {
    match method {
        RingMethod::Closed => closed_form(k, field.q()),
        RingMethod::Auto if k <= 4 => closed_form(k, field.q()),
        _ => order_set_bruteforce(field, k, budget),
    }
}

/// `{lcm(w_1, ..., w_r) : w_i in S_i}`, folding one set at a time.
pub fn lcm_closure(sets: &[PeriodSet]) -> Result<PeriodSet> {
    let mut acc = PeriodSet::new([1]);
    for s in sets {
        let mut next = Vec::with_capacity(acc.len() * s.len());
        for a in acc.iter() {
            for b in s.iter() {
                next.push(checked_lcm(a, b)?);
            }
        }
        acc = PeriodSet::new(next);
    }
    Ok(acc.with_provenance(Provenance::LcmClosure))
}

/// Component period sets and their lcm-closure `P(k, R)`.
#[derive(Debug, Clone, Serialize)]
pub struct RingPeriodSets {
    pub components: Vec<PeriodSet>,
    pub period_set: PeriodSet,
}

pub fn period_set_over_ring(
    k: usize,
    ring: &ProductRingCtx,
    method: RingMethod,
    budget: u64,
) -> Result<RingPeriodSets> {
    let components = ring
        .components()
        .iter()
        .map(|f| component_period_set(f, k, method, budget))
        .collect::<Result<Vec<_>>>()?;
    let period_set = lcm_closure(&components)?;
    Ok(RingPeriodSets {
        components,
        period_set,
    })
}

/// `prod (q_i^k - 1)`, an upper bound for every period over `R`.
pub fn max_period_bound(k: usize, ring: &ProductRingCtx) -> Result<u64> {
    ring.components().iter().try_fold(1u64, |acc, f| {
        acc.checked_mul(unit_group_order(f.q(), k)?)
            .ok_or(Error::Overflow("max_period_bound"))
    })
}

/// Whether the largest period reaches `|R|^k - 1`, and whether that agrees
/// with `R` being a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldCharacterization {
    pub k: usize,
    pub rank: usize,
    pub max_period: u64,
    pub bound: u64,
    pub ring_size_pow_minus_one: u64,
    pub achieved: bool,
    pub is_field: bool,
    pub consistent: bool,
}

pub fn verify_field_characterization(
    k: usize,
    ring: &ProductRingCtx,
    budget: u64,
) -> Result<FieldCharacterization> {
    let sets = period_set_over_ring(k, ring, RingMethod::Auto, budget)?;
    let max_period = sets.period_set.max().unwrap_or(1);
    let size = ring.size().ok_or(Error::Overflow("ring size"))?;
    let ring_size_pow_minus_one = unit_group_order(size, k)?;
    let achieved = max_period == ring_size_pow_minus_one;
    let is_field = ring.is_field();
    Ok(FieldCharacterization {
        k,
        rank: ring.rank(),
        max_period,
        bound: max_period_bound(k, ring)?,
        ring_size_pow_minus_one,
        achieved,
        is_field,
        consistent: achieved == is_field,
    })
}
