//! The `verify` subcommand: known values and cross-checks between
//! independent computations, grouped by topic.

use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use crate::algebra::{group_algebra_max_period, make_group_algebra};
use crate::error::Result;
use crate::field::FieldCtx;
use crate::order::{ord, ord_bruteforce};
use crate::period_set::{
    closed_form, divisors, lower_bound, order_set_bruteforce, set_product, set_scale, PeriodSet,
};
use crate::poly::Poly;
use crate::product::{
    period_over_ring, period_set_over_ring, verify_field_characterization, ProductRingCtx,
    RingMethod,
};
use crate::ring::FiniteRing;
use crate::sequence::{
    char_poly, companion_order_bruteforce, exhaustive_periods, generate, impulse_response_period,
    minimal_poly, period_bruteforce, Recurrence,
};

const BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    All,
    /// Polynomial orders, sequences and minimal polynomials.
    Orders,
    /// Period sets over a single field.
    PeriodSets,
    /// Product rings and group algebras.
    Rings,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub topic: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub scope: Scope,
    pub checks: Vec<Check>,
    pub pass: bool,
}

struct Runner {
    topic: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    /// Records a check comparing the expected and computed renderings.
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(String, String)>) {
        let start = Instant::now();
        let (expected, computed, pass) = match f() {
            Ok((e, c)) => {
                let pass = e == c;
                (e, c, pass)
            }
            Err(err) => ("success".into(), format!("error: {err}"), false),
        };
        self.checks.push(Check {
            name: name.into(),
            topic: self.topic.into(),
            expected,
            computed,
            pass,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
}

fn fp(p: u64) -> Result<FieldCtx> {
    FieldCtx::prime(p)
}

fn set(v: &[u64]) -> String {
    PeriodSet::new(v.iter().copied()).to_string()
}

fn rec(f: &FieldCtx, c: &[i64]) -> Result<Recurrence<FieldCtx>> {
    Recurrence::new(f, c.iter().map(|&x| f.from_int(x)).collect())
}

/// All monic polynomials of degree `k` over `f`.
fn monic_polys(f: &FieldCtx, k: usize) -> Vec<Poly> {
    let q = f.q();
    (0..q.pow(k as u32))
        .map(|mut n| {
            let mut c: Vec<_> = (0..k)
                .map(|_| {
                    let x = f.element(n % q).expect("digit");
                    n /= q;
                    x
                })
                .collect();
            c.push(f.one());
            Poly::new(f, c)
        })
        .collect()
}

fn orders(r: &mut Runner) {
    r.check("ord(x^5+x^4+1)/F_2 = 21", || {
        let f2 = fp(2)?;
        let f = Poly::from_ints(&f2, &[1, 0, 0, 0, 1, 1]);
        Ok(("21".into(), ord(&f)?.order.to_string()))
    });
    r.check("ord_bruteforce(x^5+x^4+1)/F_2 = 21", || {
        let f2 = fp(2)?;
        let f = Poly::from_ints(&f2, &[1, 0, 0, 0, 1, 1]);
        Ok(("21".into(), ord_bruteforce(&f, None)?.to_string()))
    });
    r.check("impulse response of x^5+x^4+1 has period 21", || {
        Ok((
            "21".into(),
            impulse_response_period(&rec(&fp(2)?, &[1, 0, 0, 0, 1])?)?.to_string(),
        ))
    });
    r.check("ord(x^2-x-1)/F_5 = 20", || {
        let f5 = fp(5)?;
        Ok((
            "20".into(),
            ord(&Poly::from_ints(&f5, &[-1, -1, 1]))?.order.to_string(),
        ))
    });
    r.check("ord(x^2-x-1)/F_2 = 3", || {
        let f2 = fp(2)?;
        Ok((
            "3".into(),
            ord(&Poly::from_ints(&f2, &[-1, -1, 1]))?.order.to_string(),
        ))
    });
    r.check("3 has multiplicative order 4 in F_5", || {
        let f5 = fp(5)?;
        Ok((
            "4".into(),
            f5.multiplicative_order(f5.from_int(3))?.to_string(),
        ))
    });
    r.check("Fibonacci mod 2 from (0,1)", || {
        let f2 = fp(2)?;
        let fib = rec(&f2, &[1, 1])?;
        let s0 = [f2.zero(), f2.one()];
        let terms: Vec<String> = generate(&fib, &s0, 8)?
            .iter()
            .map(|a| a.index().to_string())
            .collect();
        Ok((
            "0,1,1,0,1,1,0,1 period 3".into(),
            format!(
                "{} period {}",
                terms.join(","),
                period_bruteforce(&fib, &s0)?
            ),
        ))
    });
    r.check("Fibonacci mod 5 has period 20", || {
        let f5 = fp(5)?;
        Ok((
            "20".into(),
            period_bruteforce(&rec(&f5, &[1, 1])?, &[f5.zero(), f5.one()])?.to_string(),
        ))
    });
    r.check(
        "Fibonacci period divides 2(p+1) for p = 2,3 mod 5, p < 50",
        || {
            let mut bad = Vec::new();
            for p in (2..50u64)
                .filter(|&p| crate::order::integer::is_prime_trial(p) && matches!(p % 5, 2 | 3))
            {
                let rho = impulse_response_period(&rec(&fp(p)?, &[1, 1])?)?;
                if (2 * (p + 1)) % rho != 0 {
                    bad.push(p);
                }
            }
            Ok((
                "no exceptions".into(),
                if bad.is_empty() {
                    "no exceptions".into()
                } else {
                    format!("{bad:?}")
                },
            ))
        },
    );
    r.check(
        "pipeline = bruteforce order, all monic degree 1..4 over F_2, F_3",
        || {
            let (mut count, mut mismatches) = (0, 0);
            for p in [2, 3] {
                let f = fp(p)?;
                for k in 1..=4 {
                    for g in monic_polys(&f, k) {
                        count += 1;
                        if ord(&g)?.order != ord_bruteforce(&g, None)? {
                            mismatches += 1;
                        }
                    }
                }
            }
            Ok(("150 agree".into(), format!("{} agree", count - mismatches)))
        },
    );
    r.check(
        "impulse period = companion order = ord(char poly), q in {2,3}, k <= 3",
        || {
            let mut bad = 0;
            for p in [2, 3] {
                let f = fp(p)?;
                for k in 1..=3 {
                    for g in monic_polys(&f, k)
                        .into_iter()
                        .filter(|g| !g.coeff(0).is_zero())
                    {
                        let rc = crate::sequence::recurrence_for(&g)?;
                        let o = ord(&char_poly(&rc))?.order;
                        if impulse_response_period(&rc)? != o
                            || companion_order_bruteforce(&rc, None)? != o
                        {
                            bad += 1;
                        }
                    }
                }
            }
            Ok(("0 mismatches".into(), format!("{bad} mismatches")))
        },
    );
    r.check("minimal polynomial of 0,1,1,0,1,1,0,1 over F_2", || {
        let f2 = fp(2)?;
        let prefix: Vec<_> = [0, 1, 1, 0, 1, 1, 0, 1]
            .iter()
            .map(|&x| f2.from_int(x))
            .collect();
        Ok(("x^2+x+1".into(), minimal_poly(&f2, &prefix, 2)?.to_string()))
    });
}

fn period_sets(r: &mut Runner) {
    r.check("D(6), 5D(6), D(2)D(6)", || {
        let d6 = divisors(6)?;
        Ok((
            "{1,2,3,6} {5,10,15,30} {1,2,3,4,6,12}".into(),
            format!(
                "{} {} {}",
                d6,
                set_scale(5, &d6)?,
                set_product(&divisors(2)?, &d6)?
            ),
        ))
    });
    let golden: [(usize, &[u64]); 4] = [
        (1, &[1]),
        (2, &[1, 2, 3]),
        (3, &[1, 2, 3, 4, 7]),
        (4, &[1, 2, 3, 4, 5, 6, 7, 15]),
    ];
    for (k, want) in golden {
        r.check(&format!("P({k},F_2) = {}", set(want)), || {
            let f2 = fp(2)?;
            let closed = closed_form(k, 2)?;
            let brute = order_set_bruteforce(&f2, k, BUDGET)?;
            Ok((
                format!("{0} / {0}", set(want)),
                format!("{closed} / {brute}"),
            ))
        });
    }
    r.check("P(2,F_5) closed form", || {
        Ok((
            set(&[1, 2, 3, 4, 5, 6, 8, 10, 12, 20, 24]),
            closed_form(2, 5)?.to_string(),
        ))
    });
    r.check(
        "closed form = enumeration for k <= 4, q in {2,3,4,5,7,8,9}",
        || {
            let mut bad = Vec::new();
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                let f = crate::text::parse_field(&q.to_string())?;
                for k in 1..=4 {
                    if closed_form(k, q)? != order_set_bruteforce(&f, k, BUDGET)? {
                        bad.push((q, k));
                    }
                }
            }
            Ok((
                "all 28 equal".into(),
                if bad.is_empty() {
                    "all 28 equal".into()
                } else {
                    format!("differ at {bad:?}")
                },
            ))
        },
    );
    r.check("21 in O(5,F_2) but not in the lower bound", || {
        let brute = order_set_bruteforce(&fp(2)?, 5, BUDGET)?;
        let bound = lower_bound(5, 2)?;
        Ok((
            "true false".into(),
            format!("{} {}", brute.contains(21), bound.contains(21)),
        ))
    });
}

fn rings(r: &mut Runner) {
    r.check("P(1, F_2⊕F_3⊕F_5) = {1,2,4}", || {
        let ring = ProductRingCtx::from_specs(&["2", "3", "5"])?;
        Ok((
            set(&[1, 2, 4]),
            period_set_over_ring(1, &ring, RingMethod::Auto, BUDGET)?
                .period_set
                .to_string(),
        ))
    });
    r.check("P(2, F_2⊕F_3⊕F_5) has 16 elements ending 120", || {
        let ring = ProductRingCtx::from_specs(&["2", "3", "5"])?;
        let s = period_set_over_ring(2, &ring, RingMethod::Auto, BUDGET)?.period_set;
        Ok((
            "16 elements, max 120".into(),
            format!("{} elements, max {}", s.len(), s.max().unwrap_or(0)),
        ))
    });
    r.check(
        "Fibonacci over F_2⊕F_5 from ((0,0),(1,1)) has period 60",
        || {
            let ring = ProductRingCtx::from_specs(&["2", "5"])?;
            let one = ring.one();
            let fib = Recurrence::new(&ring, vec![one.clone(), one.clone()])?;
            Ok((
                "60".into(),
                period_over_ring(&fib, &[ring.zero(), one])?.to_string(),
            ))
        },
    );
    r.check(
        "lcm-closure = exhaustive enumeration over F_2⊕F_3, k <= 2",
        || {
            let ring = ProductRingCtx::from_specs(&["2", "3"])?;
            let mut out = Vec::new();
            for k in 1..=2 {
                let brute = PeriodSet::new(exhaustive_periods(&ring, k, BUDGET)?);
                let closure = period_set_over_ring(k, &ring, RingMethod::Auto, BUDGET)?.period_set;
                out.push(brute == closure);
            }
            Ok(("[true, true]".into(), format!("{out:?}")))
        },
    );
    r.check("max period = |R|^k - 1 exactly for fields", || {
        let mut bad = Vec::new();
        for specs in [&["2"][..], &["4"], &["2", "3"], &["2", "3", "5"]] {
            let ring = ProductRingCtx::from_specs(specs)?;
            for k in 1..=2 {
                if !verify_field_characterization(k, &ring, BUDGET)?.consistent {
                    bad.push((specs.join("+"), k));
                }
            }
        }
        Ok((
            "consistent".into(),
            if bad.is_empty() {
                "consistent".into()
            } else {
                format!("{bad:?}")
            },
        ))
    });
    r.check(
        "A_5 over F_2 = F_2 ⊕ F_16 with degree-1 max period 15",
        || {
            let spec = make_group_algebra(2, 5)?;
            let qs: Vec<u64> = spec
                .decomposition
                .as_ref()
                .map(|d| d.components().iter().map(|f| f.q()).collect())
                .unwrap_or_default();
            let (max, _) = group_algebra_max_period(&spec, 1, BUDGET)?;
            Ok(("[2, 16] 15".into(), format!("{qs:?} {max}")))
        },
    );
}

type Section = (Scope, &'static str, fn(&mut Runner));

pub fn run_verify(scope: Scope) -> VerifyReport {
    let mut checks = Vec::new();
    let sections: [Section; 3] = [
        (Scope::Orders, "orders and sequences", orders),
        (Scope::PeriodSets, "period sets", period_sets),
        (Scope::Rings, "product rings", rings),
    ];
    for (s, topic, f) in sections {
        if scope == Scope::All || scope == s {
            let mut runner = Runner {
                topic,
                checks: Vec::new(),
            };
            f(&mut runner);
            checks.extend(runner.checks);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        scope,
        checks,
        pass,
    }
}
