//! Linear recurrence sequences `a_{n+k} = sum_{i<k} c_i a_{n+i}` over a
//! [`FiniteRing`], with `c_0` a unit so every sequence is purely periodic.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::poly::Poly;
use crate::ring::FiniteRing;

/// Coefficients `(c_0, ..., c_{k-1})` of a degree-`k` recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence<R: FiniteRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: FiniteRing> Recurrence<R> {
    pub fn new(ring: &R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "recurrence degree must be at least 1".into(),
            ));
        }
        if let Some(bad) = coeffs.iter().find(|c| !ring.contains(c)) {
            return Err(Error::ForeignElement(format!("{bad:?}")));
        }
        if !ring.is_unit(&coeffs[0]) {
            return Err(Error::NonUnitC0);
        }
        Ok(Recurrence {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// The term following `state`.
    pub fn next_term(&self, state: &[R::Elem]) -> R::Elem {
        self.coeffs
            .iter()
            .zip(state)
            .fold(self.ring.zero(), |acc, (c, a)| {
                self.ring.add(&acc, &self.ring.mul(c, a))
            })
    }

    /// Advances `state` by one step in place.
    pub fn step(&self, state: &mut [R::Elem]) {
        let next = self.next_term(state);
        state.rotate_left(1);
        *state.last_mut().expect("degree >= 1") = next;
    }

    fn check_state(&self, s0: &[R::Elem]) -> Result<()> {
        if s0.len() != self.degree() {
            return Err(Error::LengthMismatch {
                expected: self.degree(),
                found: s0.len(),
            });
        }
        if let Some(bad) = s0.iter().find(|a| !self.ring.contains(a)) {
            return Err(Error::ForeignElement(format!("{bad:?}")));
        }
        Ok(())
    }

    /// `(0, ..., 0, 1)`.
    pub fn impulse_state(&self) -> Vec<R::Elem> {
        let mut s = vec![self.ring.zero(); self.degree()];
        s[self.degree() - 1] = self.ring.one();
        s
    }
}

/// First `n` terms of the sequence with initial state `s0`.
pub fn generate<R: FiniteRing>(
    rec: &Recurrence<R>,
    s0: &[R::Elem],
    n: usize,
) -> Result<Vec<R::Elem>> {
    rec.check_state(s0)?;
    let mut state = s0.to_vec();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(state[0].clone());
        rec.step(&mut state);
    }
    Ok(out)
}

/// State vectors `s_0, ..., s_{n-1}`.
pub fn trajectory<R: FiniteRing>(
    rec: &Recurrence<R>,
    s0: &[R::Elem],
    n: usize,
) -> Result<Vec<Vec<R::Elem>>> {
    rec.check_state(s0)?;
    let mut state = s0.to_vec();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(state.clone());
        rec.step(&mut state);
    }
    Ok(out)
}

/// Number of steps until the state first returns to `s0`.
pub fn period_bruteforce<R: FiniteRing>(rec: &Recurrence<R>, s0: &[R::Elem]) -> Result<u64> {
    rec.check_state(s0)?;
    let cap = rec
        .ring
        .size()
        .and_then(|s| s.checked_pow(rec.degree() as u32))
        .unwrap_or(u64::MAX);
    let mut state = s0.to_vec();
    let mut n = 0u64;
    loop {
        rec.step(&mut state);
        n += 1;
        if state == s0 {
            return Ok(n);
        }
        if n >= cap {
            return Err(Error::CapExceeded(cap));
        }
    }
}

/// A generated prefix together with its measured period.
#[derive(Debug, Clone)]
pub struct SequenceRun<R: FiniteRing> {
    pub recurrence: Recurrence<R>,
    pub initial: Vec<R::Elem>,
    pub prefix: Vec<R::Elem>,
    pub period: Option<u64>,
}

impl<R: FiniteRing> SequenceRun<R> {
    pub fn new(rec: &Recurrence<R>, s0: &[R::Elem], terms: usize, measure: bool) -> Result<Self> {
        let prefix = generate(rec, s0, terms)?;
        let period = if measure {
            Some(period_bruteforce(rec, s0)?)
        } else {
            None
        };
        Ok(SequenceRun {
            recurrence: rec.clone(),
            initial: s0.to_vec(),
            prefix,
            period,
        })
    }
}

/// `x^k - sum c_i x^i`.
pub fn char_poly(rec: &Recurrence<FieldCtx>) -> Poly {
    let f = rec.ring();
    let mut coeffs: Vec<FieldElement> = rec.coeffs().iter().map(|&c| f.neg(c)).collect();
    coeffs.push(f.one());
    Poly::new(f, coeffs)
}

/// The recurrence whose characteristic polynomial is the monic `f` with
/// `f(0) != 0`.
pub fn recurrence_for(f: &Poly) -> Result<Recurrence<FieldCtx>> {
    let k = f.deg().ok_or(Error::ZeroPolynomial)?;
    if k == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let field = f.field();
    let f = f.monic();
    let coeffs = f.coeffs()[..k].iter().map(|&c| field.neg(c)).collect();
    Recurrence::new(field, coeffs)
}

/// Period of the sequence started from `(0, ..., 0, 1)`, by simulation.
pub fn impulse_response_period(rec: &Recurrence<FieldCtx>) -> Result<u64> {
    period_bruteforce(rec, &rec.impulse_state())
}

/// Companion matrix `C` with `s_{n+1} = s_n C` for row state vectors.
pub fn companion_matrix(rec: &Recurrence<FieldCtx>) -> Vec<Vec<FieldElement>> {
    let f = rec.ring();
    let k = rec.degree();
    let mut m = vec![vec![f.zero(); k]; k];
    for (i, row) in m.iter_mut().enumerate() {
        if i > 0 {
            row[i - 1] = f.one();
        }
        row[k - 1] = rec.coeffs()[i];
    }
    m
}

fn mat_mul(
    f: &FieldCtx,
    a: &[Vec<FieldElement>],
    b: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    let k = a.len();
    let mut out = vec![vec![f.zero(); k]; k];
    for i in 0..k {
        for l in 0..k {
            let x = a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..k {
                out[i][j] = f.add(out[i][j], f.mul(x, b[l][j]));
            }
        }
    }
    out
}

/// Least `n` with `C^n = I` by repeated matrix multiplication.
pub fn companion_order_bruteforce(rec: &Recurrence<FieldCtx>, cap: Option<u64>) -> Result<u64> {
    let f = rec.ring();
    let k = rec.degree();
    let cap = cap.unwrap_or_else(|| crate::order::unit_group_order(f.q(), k).unwrap_or(u64::MAX));
    let c = companion_matrix(rec);
    let identity: Vec<Vec<FieldElement>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect();
    let mut power = c.clone();
    let mut n = 1u64;
    while power != identity {
        if n >= cap {
            return Err(Error::CapExceeded(cap));
        }
        power = mat_mul(f, &power, &c);
        n += 1;
    }
    Ok(n)
}

/// Minimal polynomial of a sequence from a prefix, by Berlekamp-Massey.
///
/// Needs at least `2 * degree_bound` terms; the result is exact whenever the
/// linear complexity of the sequence is at most `degree_bound`. The all-zero
/// prefix yields `1`.
pub fn minimal_poly(
    field: &FieldCtx,
    prefix: &[FieldElement],
    degree_bound: usize,
) -> Result<Poly> {
    let needed = 2 * degree_bound;
    if prefix.len() < needed {
        return Err(Error::InsufficientPrefix {
            needed,
            found: prefix.len(),
        });
    }
    if let Some(bad) = prefix.iter().find(|a| !field.contains(**a)) {
        return Err(Error::ForeignElement(format!("{bad:?}")));
    }
    let f = field;
    // connection polynomial C(z) = 1 + c_1 z + ... + c_L z^L
    let mut conn = vec![f.one()];
    let mut prev = vec![f.one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = f.one();
    for n in 0..prefix.len() {
        let mut disc = prefix[n];
        for i in 1..=len.min(conn.len() - 1) {
            disc = f.add(disc, f.mul(conn[i], prefix[n - i]));
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let scale = f.div(disc, prev_disc)?;
        let mut next = conn.clone();
        if next.len() < prev.len() + shift {
            next.resize(prev.len() + shift, f.zero());
        }
        for (i, &b) in prev.iter().enumerate() {
            next[i + shift] = f.sub(next[i + shift], f.mul(scale, b));
        }
        if 2 * len <= n {
            prev = std::mem::replace(&mut conn, next);
            len = n + 1 - len;
            prev_disc = disc;
            shift = 1;
        } else {
            conn = next;
            shift += 1;
        }
    }
    // m(x) = x^L C(1/x)
    let coeffs = (0..=len)
        .map(|j| conn.get(len - j).copied().unwrap_or(f.zero()))
        .collect();
    Ok(Poly::new(field, coeffs))
}

/// Every period attained by some degree-`k` recurrence with unit `c_0` and
/// some initial state, by walking the full state permutation of each
/// recurrence. Work is `#recurrences * |R|^k`, which must stay within
/// `budget`.
pub fn exhaustive_periods<R: FiniteRing>(ring: &R, k: usize, budget: u64) -> Result<BTreeSet<u64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let size = ring.size().ok_or(Error::Overflow("ring size"))?;
    let states = size
        .checked_pow(k as u32)
        .ok_or(Error::Overflow("state count"))?;
    let units: Vec<R::Elem> = (0..size)
        .map(|i| ring.element(i))
        .filter(|a| ring.is_unit(a))
        .collect();
    let tails = size
        .checked_pow(k as u32 - 1)
        .ok_or(Error::Overflow("recurrence count"))?;
    let recs = (units.len() as u64)
        .checked_mul(tails)
        .ok_or(Error::Overflow("recurrence count"))?;
    let work = recs.saturating_mul(states);
    if work > budget {
        return Err(Error::BudgetExceeded {
            needed: work,
            budget,
        });
    }
    let state_of = |mut idx: u64| -> Vec<R::Elem> {
        (0..k)
            .map(|_| {
                let e = ring.element(idx % size);
                idx /= size;
                e
            })
            .collect()
    };
    let index_of = |s: &[R::Elem]| -> u64 {
        s.iter()
            .rev()
            .fold(0u64, |acc, a| acc * size + ring.index_of(a))
    };
    let found = (0..recs)
        .into_par_iter()
        .map(|r| {
            let mut coeffs = vec![units[(r % units.len() as u64) as usize].clone()];
            coeffs.extend(state_of(r / units.len() as u64).into_iter().take(k - 1));
            let rec = Recurrence::new(ring, coeffs).expect("unit c_0");
            let mut seen = vec![false; states as usize];
            let mut local = BTreeSet::new();
            for start in 0..states {
                if seen[start as usize] {
                    continue;
                }
                let mut state = state_of(start);
                let mut len = 0u64;
                loop {
                    seen[index_of(&state) as usize] = true;
                    rec.step(&mut state);
                    len += 1;
                    if index_of(&state) == start {
                        break;
                    }
                }
                local.insert(len);
            }
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found)
}

/// Serializable snapshot of a run, used for machine-readable output.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub terms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Vec<Vec<String>>>,
}
