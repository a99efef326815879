//! Period sets `P(k, F_q)`: divisor-set algebra, the general lower bound,
//! the closed forms for `k <= 4`, and exhaustive enumeration of polynomial
//! orders.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::order::integer::{checked_pow, min_power_at_least};
use crate::order::{factor_integer, ord, unit_group_order};
use crate::poly::Poly;

/// How a [`PeriodSet`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// The general containment formula.
    FormulaContainment,
    /// The closed forms for degrees 1 through 4.
    FormulaClosed,
    /// Enumeration of polynomial orders or recurrences.
    Bruteforce,
    /// lcm-closure of component period sets.
    LcmClosure,
}

/// A sorted, deduplicated set of positive integers. Equality ignores
/// provenance.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodSet {
    elems: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

impl PeriodSet {
    pub fn new(elems: impl IntoIterator<Item = u64>) -> Self {
        let set: BTreeSet<u64> = elems.into_iter().collect();
        PeriodSet {
            elems: set.into_iter().collect(),
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elems.binary_search(&n).is_ok()
    }

    pub fn max(&self) -> Option<u64> {
        self.elems.last().copied()
    }

    pub fn is_subset(&self, other: &PeriodSet) -> bool {
        self.elems.iter().all(|&n| other.contains(n))
    }

    /// Elements of `self` missing from `other`.
    pub fn difference(&self, other: &PeriodSet) -> PeriodSet {
        PeriodSet::new(self.elems.iter().copied().filter(|&n| !other.contains(n)))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elems.iter().copied()
    }
}

impl PartialEq for PeriodSet {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for PeriodSet {}

impl std::fmt::Display for PeriodSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, n) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "}}")
    }
}

/// `D(n)`, the positive divisors of `n`.
pub fn divisors(n: u64) -> Result<PeriodSet> {
    let mut out = vec![1u64];
    for &(p, k) in factor_integer(n)?.factors() {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
    }
    Ok(PeriodSet::new(out))
}

/// `aS = {a x : x in S}`.
pub fn set_scale(a: u64, s: &PeriodSet) -> Result<PeriodSet> {
    let elems = s
        .iter()
        .map(|x| x.checked_mul(a).ok_or(Error::Overflow("set_scale")))
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodSet::new(elems))
}

/// `S1 S2 = {x y : x in S1, y in S2}`.
pub fn set_product(a: &PeriodSet, b: &PeriodSet) -> Result<PeriodSet> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        for y in b.iter() {
            out.push(x.checked_mul(y).ok_or(Error::Overflow("set_product"))?);
        }
    }
    Ok(PeriodSet::new(out))
}

pub fn set_union<'a>(sets: impl IntoIterator<Item = &'a PeriodSet>) -> PeriodSet {
    PeriodSet::new(sets.into_iter().flat_map(|s| s.iter()))
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power_parts(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let f = factor_integer(q).map_err(|_| Error::NotPrimePower(q))?;
    match f.factors() {
        [(p, e)] => Ok((*p, *e)),
        _ => Err(Error::NotPrimePower(q)),
    }
}

/// `D(q^i - 1)`.
fn unit_divisors(q: u64, i: usize) -> Result<PeriodSet> {
    divisors(unit_group_order(q, i)?)
}

/// The union over `1 <= i <= k` of `{p^j : 0 <= j <= t_i} D(q^i - 1)`, where
/// `t_i` is the least `t` with `p^t >= floor(k / i)`. Every element is a
/// period of some degree-`k` recurrence over `F_q`.
pub fn lower_bound(k: usize, q: u64) -> Result<PeriodSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let (p, _) = prime_power_parts(q)?;
    let mut parts = Vec::with_capacity(k);
    for i in 1..=k {
        let t = min_power_at_least(p, (k / i) as u64);
        let powers = PeriodSet::new(
            (0..=t)
                .map(|j| checked_pow(p, j))
                .collect::<Result<Vec<_>>>()?,
        );
        parts.push(set_product(&powers, &unit_divisors(q, i)?)?);
    }
    Ok(set_union(&parts).with_provenance(Provenance::FormulaContainment))
}

/// Exact `P(k, F_q)` for `1 <= k <= 4`.
pub fn closed_form(k: usize, q: u64) -> Result<PeriodSet> {
    let (p, _) = prime_power_parts(q)?;
    let d = |i: usize| unit_divisors(q, i);
    let parts = match k {
        1 => vec![d(1)?],
        2 => vec![d(2)?, set_scale(p, &d(1)?)?],
        3 if p == 2 => vec![d(3)?, d(2)?, set_product(&PeriodSet::new([2, 4]), &d(1)?)?],
        3 => vec![d(3)?, d(2)?, set_scale(p, &d(1)?)?],
        4 if p <= 3 => vec![
            d(4)?,
            d(3)?,
            set_scale(p, &d(2)?)?,
            set_scale(p * p, &d(1)?)?,
        ],
        4 => vec![d(4)?, d(3)?, set_scale(p, &d(2)?)?],
        _ => return Err(Error::DegreeOutOfRange(k)),
    };
    Ok(set_union(&parts).with_provenance(Provenance::FormulaClosed))
}

/// `{ord f : f monic of degree k over F_q}` by enumerating all `q^k` monic
/// polynomials in little-endian counting order.
pub fn order_set_bruteforce(field: &FieldCtx, k: usize, budget: u64) -> Result<PeriodSet> {
    order_set_bruteforce_with_progress(field, k, budget, &|_, _| {})
}

/// As [`order_set_bruteforce`], calling `progress(done, total)` as chunks of
/// the enumeration complete.
pub fn order_set_bruteforce_with_progress(
    field: &FieldCtx,
    k: usize,
    budget: u64,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<PeriodSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let q = field.q();
    let total = u32::try_from(k)
        .ok()
        .and_then(|k| q.checked_pow(k))
        .ok_or(Error::Overflow("q^k"))?;
    if total > budget {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    const CHUNK: u64 = 256;
    let chunks = total.div_ceil(CHUNK);
    let done = AtomicU64::new(0);
    let sets = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<BTreeSet<u64>> {
            let range = c * CHUNK..((c + 1) * CHUNK).min(total);
            let size = range.end - range.start;
            let mut local = BTreeSet::new();
            for n in range {
                let mut coeffs = Vec::with_capacity(k + 1);
                let mut v = n;
                for _ in 0..k {
                    coeffs.push(field.element(v % q)?);
                    v /= q;
                }
                coeffs.push(field.one());
                local.insert(ord(&Poly::new(field, coeffs))?.order);
            }
            progress(done.fetch_add(size, Ordering::Relaxed) + size, total);
            Ok(local)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodSet::new(sets.into_iter().flatten()).with_provenance(Provenance::Bruteforce))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> PeriodSet {
        PeriodSet::new(v.iter().copied())
    }

    #[test]
    fn divisor_sets() {
        assert_eq!(divisors(6).unwrap(), set(&[1, 2, 3, 6]));
        assert_eq!(divisors(1).unwrap(), set(&[1]));
        assert_eq!(divisors(15).unwrap(), set(&[1, 3, 5, 15]));
        assert!(divisors(0).is_err());
        for n in 1..500u64 {
            let naive: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap().elems(), naive.as_slice());
        }
    }

    #[test]
    fn set_algebra() {
        let d6 = divisors(6).unwrap();
        assert_eq!(set_scale(5, &d6).unwrap(), set(&[5, 10, 15, 30]));
        assert_eq!(
            set_product(&divisors(2).unwrap(), &d6).unwrap(),
            set(&[1, 2, 3, 4, 6, 12])
        );
        assert_eq!(set_scale(1, &d6).unwrap(), d6);
        assert!(set_scale(u64::MAX, &d6).is_err());
        assert_eq!(set_union([&set(&[1, 4]), &set(&[2, 4])]), set(&[1, 2, 4]));
    }

    #[test]
    fn closed_forms_over_f2() {
        let expected: [&[u64]; 4] = [
            &[1],
            &[1, 2, 3],
            &[1, 2, 3, 4, 7],
            &[1, 2, 3, 4, 5, 6, 7, 15],
        ];
        for (k, want) in (1..=4).zip(expected) {
            assert_eq!(closed_form(k, 2).unwrap().elems(), want, "k = {k}");
        }
        assert_eq!(
            closed_form(2, 5).unwrap().elems(),
            &[1, 2, 3, 4, 5, 6, 8, 10, 12, 20, 24]
        );
        assert_eq!(closed_form(5, 2), Err(Error::DegreeOutOfRange(5)));
        assert_eq!(closed_form(2, 6), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn lower_bound_examples() {
        for q in [2, 3, 4, 5, 7, 9] {
            assert_eq!(lower_bound(1, q).unwrap(), divisors(q - 1).unwrap());
        }
        assert_eq!(
            lower_bound(4, 2).unwrap().elems(),
            &[1, 2, 3, 4, 5, 6, 7, 15]
        );
        let five = lower_bound(5, 2).unwrap();
        assert!(!five.contains(21));
        assert!(five.contains(31));
        assert_eq!(lower_bound(3, 12), Err(Error::NotPrimePower(12)));
    }

    #[test]
    fn bruteforce_small() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(order_set_bruteforce(&f2, 1, 100).unwrap().elems(), &[1]);
        assert_eq!(
            order_set_bruteforce(&f2, 4, 100).unwrap().elems(),
            &[1, 2, 3, 4, 5, 6, 7, 15]
        );
        assert!(order_set_bruteforce(&f2, 5, 100).unwrap().contains(21));
        assert_eq!(
            order_set_bruteforce(&f2, 5, 16),
            Err(Error::BudgetExceeded {
                needed: 32,
                budget: 16
            })
        );
    }

    #[test]
    fn bruteforce_progress_reaches_total() {
        let f3 = FieldCtx::prime(3).unwrap();
        let last = AtomicU64::new(0);
        order_set_bruteforce_with_progress(&f3, 6, 1000, &|done, total| {
            assert_eq!(total, 729);
            last.fetch_max(done, Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(last.load(Ordering::Relaxed), 729);
    }

    #[test]
    fn containment_and_monotonicity() {
        for q in [2u64, 3] {
            let f = FieldCtx::prime(q).unwrap();
            let mut prev: Option<PeriodSet> = None;
            for k in 1..=5 {
                let brute = order_set_bruteforce(&f, k, 1_000_000).unwrap();
                assert!(lower_bound(k, q).unwrap().is_subset(&brute), "q={q} k={k}");
                assert_eq!(brute.max(), Some(q.pow(k as u32) - 1));
                if let Some(p) = prev {
                    assert!(p.is_subset(&brute));
                }
                prev = Some(brute);
            }
        }
    }

    #[test]
    fn divisor_nesting() {
        for q in [2u64, 3, 4, 5] {
            for i in 1..=4usize {
                for j in (i..=8).filter(|j| j % i == 0) {
                    let di = unit_divisors(q, i).unwrap();
                    assert!(di.is_subset(&unit_divisors(q, j).unwrap()));
                }
            }
        }
    }

    #[test]
    fn strict_extra_at_degree_five() {
        let f2 = FieldCtx::prime(2).unwrap();
        let extra = order_set_bruteforce(&f2, 5, 1000)
            .unwrap()
            .difference(&lower_bound(5, 2).unwrap());
        assert!(extra.contains(21));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power_parts(9).unwrap(), (3, 2));
        assert_eq!(prime_power_parts(7).unwrap(), (7, 1));
        assert_eq!(prime_power_parts(1), Err(Error::NotPrimePower(1)));
        assert_eq!(prime_power_parts(0), Err(Error::NotPrimePower(0)));
    }
}
