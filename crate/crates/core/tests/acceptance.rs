//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use period_lab::algebra::{group_algebra_max_period, make_group_algebra};
use period_lab::order::{ord, ord_bruteforce};
use period_lab::period_set::{closed_form, lower_bound, order_set_bruteforce, PeriodSet};
use period_lab::product::{period_over_ring, period_set_over_ring, ProductRingCtx, RingMethod};
use period_lab::ring::FiniteRing;
use period_lab::sequence::{
    char_poly, companion_order_bruteforce, generate, impulse_response_period, minimal_poly,
    period_bruteforce, Recurrence,
};
use period_lab::text::{parse_field, parse_poly};
use period_lab::{FieldCtx, FieldElement, Poly};

type Outcome = Result<String, String>;

const BUDGET: u64 = 1_000_000;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn field(spec: &str) -> FieldCtx {
    parse_field(spec).expect("valid field spec")
}

/// Digits of `n` in base `q`, `len` of them, as field elements.
fn digits(f: &FieldCtx, mut n: u64, len: usize) -> Vec<FieldElement> {
    (0..len)
        .map(|_| {
            let x = f.element(n % f.q()).unwrap();
            n /= f.q();
            x
        })
        .collect()
}

fn monic(f: &FieldCtx, n: u64, k: usize) -> Poly {
    let mut c = digits(f, n, k);
    c.push(f.one());
    Poly::new(f, c)
}

/// Divisors of `n` by trial division.
fn naive_divisors(n: u64) -> BTreeSet<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn c1_closed_forms_equal_enumeration() -> Outcome {
    let mut cases = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field(&q.to_string());
        for k in 1..=4 {
            let brute = order_set_bruteforce(&f, k, BUDGET).map_err(e)?;
            let closed = closed_form(k, q).map_err(e)?;
            ensure!(
                brute == closed,
                "q={q} k={k}: enumeration {brute} vs closed form {closed}"
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} (k, q) pairs equal"))
}

fn c2_golden_sets_over_f2() -> Outcome {
    let golden: [&[u64]; 4] = [
        &[1],
        &[1, 2, 3],
        &[1, 2, 3, 4, 7],
        &[1, 2, 3, 4, 5, 6, 7, 15],
    ];
    let f2 = field("2");
    for (k, want) in (1..=4).zip(golden) {
        let closed = closed_form(k, 2).map_err(e)?;
        let brute = order_set_bruteforce(&f2, k, BUDGET).map_err(e)?;
        ensure!(closed.elems() == want, "closed form P({k},F_2) = {closed}");
        ensure!(brute.elems() == want, "enumerated P({k},F_2) = {brute}");
    }
    Ok("P(1..4, F_2) exact".into())
}

fn c3_strictness_at_degree_five() -> Outcome {
    let f2 = field("2");
    let f = parse_poly(&f2, "x^5+x^4+1").map_err(e)?;
    let pipeline = ord(&f).map_err(e)?.order;
    let brute = ord_bruteforce(&f, None).map_err(e)?;
    let rec = Recurrence::new(&f2, digits(&f2, 0b10001, 5)).map_err(e)?;
    ensure!(char_poly(&rec) == f, "recurrence does not match x^5+x^4+1");
    let impulse = impulse_response_period(&rec).map_err(e)?;
    ensure!(
        (pipeline, brute, impulse) == (21, 21, 21),
        "pipeline {pipeline}, bruteforce {brute}, impulse {impulse}"
    );
    let o5 = order_set_bruteforce(&f2, 5, BUDGET).map_err(e)?;
    ensure!(o5.contains(21), "21 missing from O(5,F_2)");
    let bound = lower_bound(5, 2).map_err(e)?;
    ensure!(!bound.contains(21), "21 in the lower bound");
    // independently: 21 divides no 2^k - 1 with k <= 5, so no p^j multiple reaches it
    ensure!(
        (1..=5).all(|k| !naive_divisors((1 << k) - 1).contains(&21)),
        "21 divides some 2^k - 1"
    );
    Ok("21 by pipeline, bruteforce and simulation; 21 in O(5,F_2) \\ bound".into())
}

fn c4_pipeline_matches_bruteforce() -> Outcome {
    let mut counts = Vec::new();
    for p in [2u64, 3] {
        let f = field(&p.to_string());
        let mut count = 0;
        for k in 1..=4usize {
            for n in 0..p.pow(k as u32) {
                let g = monic(&f, n, k);
                let a = ord(&g).map_err(e)?.order;
                let b = ord_bruteforce(&g, None).map_err(e)?;
                ensure!(a == b, "{g} over F_{p}: pipeline {a}, bruteforce {b}");
                count += 1;
            }
        }
        counts.push(count);
    }
    ensure!(counts == [30, 120], "polynomial counts {counts:?}");
    Ok("30 + 120 polynomials agree".into())
}

fn c5_period_order_matrix() -> Outcome {
    let mut recs = 0;
    let mut states = 0;
    for p in [2u64, 3] {
        let f = field(&p.to_string());
        for k in 1..=3usize {
            let total = p.pow(k as u32);
            for n in 0..total {
                let c = digits(&f, n, k);
                if c[0].is_zero() {
                    continue;
                }
                let rec = Recurrence::new(&f, c).map_err(e)?;
                let o = ord(&char_poly(&rec)).map_err(e)?.order;
                let imp = impulse_response_period(&rec).map_err(e)?;
                let mat = companion_order_bruteforce(&rec, None).map_err(e)?;
                ensure!(
                    imp == o && mat == o,
                    "{}: impulse {imp}, matrix {mat}, ord {o}",
                    char_poly(&rec)
                );
                for s in 0..total {
                    let rho = period_bruteforce(&rec, &digits(&f, s, k)).map_err(e)?;
                    ensure!(o % rho == 0, "period {rho} does not divide ord {o}");
                    states += 1;
                }
                recs += 1;
            }
        }
    }
    Ok(format!("{recs} recurrences, {states} initial states"))
}

fn c6_fibonacci() -> Outcome {
    let fib = |p: u64| {
        let f = field(&p.to_string());
        let rec = Recurrence::new(&f, vec![f.one(), f.one()]).unwrap();
        (f, rec)
    };
    let (f2, r2) = fib(2);
    let s0 = [f2.zero(), f2.one()];
    let terms: Vec<u64> = generate(&r2, &s0, 8)
        .map_err(e)?
        .iter()
        .map(|x| x.index())
        .collect();
    ensure!(terms == [0, 1, 1, 0, 1, 1, 0, 1], "F_2 terms {terms:?}");
    let rho2 = period_bruteforce(&r2, &s0).map_err(e)?;
    ensure!(rho2 == 3, "period over F_2 is {rho2}");
    let (f5, r5) = fib(5);
    let rho5 = period_bruteforce(&r5, &[f5.zero(), f5.one()]).map_err(e)?;
    ensure!(rho5 == 20, "period over F_5 is {rho5}");
    let mut primes = Vec::new();
    for p in (2..50u64).filter(|&p| (2..p).all(|d| p % d != 0) && matches!(p % 5, 2 | 3)) {
        let (_, r) = fib(p);
        let rho = impulse_response_period(&r).map_err(e)?;
        ensure!(
            2 * (p + 1) % rho == 0,
            "p={p}: period {rho} does not divide {}",
            2 * (p + 1)
        );
        primes.push(p);
    }
    Ok(format!(
        "3 over F_2, 20 over F_5, divisibility for p in {primes:?}"
    ))
}

fn c7_minimal_polynomial() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fields: Vec<FieldCtx> = ["2", "3", "4", "5"].iter().map(|s| field(s)).collect();
    for _ in 0..200 {
        let f = &fields[rng.gen_range(0..fields.len())];
        let k = rng.gen_range(1..=4usize);
        let mut c = digits(f, rng.gen_range(0..f.q().pow(k as u32)), k);
        if c[0].is_zero() {
            c[0] = f.one();
        }
        let rec = Recurrence::new(f, c).map_err(e)?;
        let s0 = digits(f, rng.gen_range(0..f.q().pow(k as u32)), k);
        let prefix = generate(&rec, &s0, 2 * k).map_err(e)?;
        let m = minimal_poly(f, &prefix, k).map_err(e)?;
        let rho = period_bruteforce(&rec, &s0).map_err(e)?;
        let om = ord(&m).map_err(e)?.order;
        ensure!(om == rho, "ord(m) = {om} but period {rho} for m = {m}");
        ensure!(
            m.divides(&char_poly(&rec)).map_err(e)?,
            "{m} does not divide {}",
            char_poly(&rec)
        );
    }
    Ok("200 sequences".into())
}

fn c8_product_ring_golden_sets() -> Outcome {
    let ring = ProductRingCtx::from_specs(&["2", "3", "5"]).map_err(e)?;
    let p1 = period_set_over_ring(1, &ring, RingMethod::Auto, BUDGET)
        .map_err(e)?
        .period_set;
    ensure!(p1.elems() == [1, 2, 4], "P(1,R) = {p1}");
    let p2 = period_set_over_ring(2, &ring, RingMethod::Auto, BUDGET)
        .map_err(e)?
        .period_set;
    ensure!(
        p2.elems() == [1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30, 40, 60, 120],
        "P(2,R) = {p2}"
    );
    Ok(format!("P(1,R) = {p1}, P(2,R) = {p2}"))
}

/// Every period of every unit-`c_0` recurrence from every state, by direct
/// simulation of ring states.
fn all_ring_periods(ring: &ProductRingCtx, k: usize) -> BTreeSet<u64> {
    let size = ring.size().unwrap();
    let tuple = |mut n: u64| -> Vec<_> {
        (0..k)
            .map(|_| {
                let x = FiniteRing::element(ring, n % size);
                n /= size;
                x
            })
            .collect()
    };
    let mut out = BTreeSet::new();
    for c in 0..size.pow(k as u32) {
        let coeffs = tuple(c);
        if !ring.is_unit(&coeffs[0]) {
            continue;
        }
        let rec = Recurrence::new(ring, coeffs).unwrap();
        for s in 0..size.pow(k as u32) {
            out.insert(period_bruteforce(&rec, &tuple(s)).unwrap());
        }
    }
    out
}

fn c9_lcm_closure_oracle() -> Outcome {
    let ring = ProductRingCtx::from_specs(&["2", "3"]).map_err(e)?;
    for k in 1..=2 {
        let closure = period_set_over_ring(k, &ring, RingMethod::Auto, BUDGET)
            .map_err(e)?
            .period_set;
        let brute = PeriodSet::new(all_ring_periods(&ring, k));
        ensure!(
            closure == brute,
            "k={k}: closure {closure}, enumeration {brute}"
        );
    }
    Ok("F_2⊕F_3, k = 1, 2".into())
}

fn c10_max_period_iff_field() -> Outcome {
    let mut lines = Vec::new();
    for specs in [&["2"][..], &["4"], &["2", "3"], &["2", "3", "5"]] {
        let ring = ProductRingCtx::from_specs(specs).map_err(e)?;
        for k in 1..=2usize {
            let closure = period_set_over_ring(k, &ring, RingMethod::Auto, BUDGET)
                .map_err(e)?
                .period_set;
            let max = closure.max().unwrap();
            let brute_max = *all_ring_periods(&ring, k).iter().max().unwrap();
            ensure!(
                max == brute_max,
                "{specs:?} k={k}: closure max {max}, enumeration max {brute_max}"
            );
            let top = ring.size().unwrap().pow(k as u32) - 1;
            ensure!(
                (max == top) == (ring.rank() == 1),
                "{specs:?} k={k}: max {max}, |R|^k-1 = {top}, r = {}",
                ring.rank()
            );
            lines.push(format!("{}:{k}:{max}/{top}", specs.join("+")));
        }
    }
    Ok(lines.join(" "))
}

fn c11_group_algebra() -> Outcome {
    let spec = make_group_algebra(2, 5).map_err(e)?;
    ensure!(spec.semisimple, "A_5 over F_2 not semisimple");
    let ring = spec.decomposition.clone().ok_or("no decomposition")?;
    let qs: Vec<u64> = ring.components().iter().map(|f| f.q()).collect();
    ensure!(qs == [2, 16], "components {qs:?}");
    let (max, _) = group_algebra_max_period(&spec, 1, BUDGET).map_err(e)?;
    ensure!(max == 15 && max >= (1 << 4) - 1, "max period {max}");
    let a = &spec.algebra;
    // sampled recurrence: a_{n+2} = t a_{n+1} + (1 + t + t^2) a_n in F_2[t]/(t^5 - 1)
    let c0 = a.from_poly(&parse_poly(a.field(), "1+t+t^2").map_err(e)?);
    let c1 = a.from_poly(&parse_poly(a.field(), "t").map_err(e)?);
    let rec = Recurrence::new(a, vec![c0, c1]).map_err(e)?;
    let s0 = vec![
        a.one(),
        a.from_poly(&parse_poly(a.field(), "t^3+t").map_err(e)?),
    ];
    let direct = period_bruteforce(&rec, &s0).map_err(e)?;
    let crt = spec.crt_recurrence(&rec).map_err(e)?;
    let mapped: Vec<_> = s0
        .iter()
        .map(|x| spec.crt_map(x))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    let via_crt = period_over_ring(&crt, &mapped).map_err(e)?;
    ensure!(
        direct == via_crt,
        "quotient simulation {direct}, CRT {via_crt}"
    );
    Ok(format!(
        "F_2 ⊕ F_16, max period 15, sampled period {direct}"
    ))
}

fn c12_property_suites() -> Outcome {
    // factorization reconstruction
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let fields: Vec<FieldCtx> = ["2", "3", "5"].iter().map(|s| field(s)).collect();
    for _ in 0..1000 {
        let f = &fields[rng.gen_range(0..3)];
        let deg = rng.gen_range(0..=8usize);
        let mut c = digits(f, rng.gen_range(0..f.q().pow(deg as u32 + 1)), deg + 1);
        if c[deg].is_zero() {
            c[deg] = f.one();
        }
        let g = Poly::new(f, c);
        let fact = g.factor().map_err(e)?;
        ensure!(fact.reconstruct(f) == g, "reconstruction failed for {g}");
        for (h, _) in &fact.factors {
            ensure!(
                h.is_monic() && h.is_irreducible().map_err(e)?,
                "{h} is not monic irreducible"
            );
        }
    }
    // field axioms, exhaustively
    let mut fields_checked = 0;
    for q in 2..=64u64 {
        let Ok(f) = parse_field(&q.to_string()) else {
            continue;
        };
        let elems: Vec<FieldElement> = f.elements().collect();
        for &a in &elems {
            if !a.is_zero() {
                ensure!(
                    f.mul(f.inv(a).map_err(e)?, a) == f.one(),
                    "F_{q}: inverse of {a:?}"
                );
            }
            ensure!(f.add(a, f.neg(a)) == f.zero(), "F_{q}: additive inverse");
            for &b in &elems {
                ensure!(
                    f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a),
                    "F_{q}: commutativity"
                );
                for &c in &elems {
                    ensure!(
                        f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)),
                        "F_{q}: associativity"
                    );
                    ensure!(
                        f.add(f.add(a, b), c) == f.add(a, f.add(b, c)),
                        "F_{q}: additive associativity"
                    );
                    ensure!(
                        f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
                        "F_{q}: distributivity"
                    );
                }
            }
        }
        fields_checked += 1;
    }
    ensure!(fields_checked == 27, "checked {fields_checked} fields");
    // CLI JSON round trip and determinism
    let invocations: [&[&str]; 5] = [
        &[
            "--format",
            "json",
            "ord",
            "--field",
            "3^2",
            "--poly",
            "x^3+[1,2]*x+[0,1]",
            "--explain",
        ],
        &[
            "--format",
            "json",
            "period-set",
            "--field",
            "3",
            "--degree",
            "3",
            "--method",
            "all",
        ],
        &[
            "--format", "json", "simulate", "--field", "5", "--rec", "1,1", "--init", "0,1",
            "--period",
        ],
        &[
            "--format",
            "json",
            "ring",
            "period-set",
            "--components",
            "2,3,5",
            "--degree",
            "2",
        ],
        &[
            "--format",
            "json",
            "minpoly",
            "--field",
            "2",
            "--terms",
            "0,0,0,0,1,1,1,1,1,0",
            "--bound",
            "5",
        ],
    ];
    for args in invocations {
        let run = || {
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code = period_lab::cli::run(
                std::iter::once("period-lab").chain(args.iter().copied()),
                &mut out,
                &mut err,
            );
            (code, out)
        };
        let (c1, o1) = run();
        let (c2, o2) = run();
        ensure!(c1 == 0 && c2 == 0, "{args:?} exited {c1}");
        ensure!(o1 == o2, "{args:?} is not deterministic");
        let v: serde_json::Value = serde_json::from_slice(&o1).map_err(e)?;
        ensure!(
            v["schema"] == "period-lab/1",
            "{args:?} lacks the schema key"
        );
        let reserialized = serde_json::to_string_pretty(&v).map_err(e)? + "\n";
        ensure!(
            reserialized.as_bytes() == o1.as_slice(),
            "{args:?} JSON does not round-trip"
        );
        for key in ["poly", "minimal_poly"] {
            if let Some(text) = v[key].as_str() {
                let f = field(if key == "poly" { "3^2" } else { "2" });
                let p = parse_poly(&f, text).map_err(e)?;
                ensure!(p.to_string() == text, "{text} does not reparse identically");
            }
        }
    }
    Ok("1000 factorizations, 27 fields, 5 CLI invocations".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "1 closed forms equal enumeration for k <= 4",
            c1_closed_forms_equal_enumeration,
        ),
        ("2 golden period sets over F_2", c2_golden_sets_over_f2),
        ("3 strictness at degree 5", c3_strictness_at_degree_five),
        (
            "4 order pipeline vs bruteforce",
            c4_pipeline_matches_bruteforce,
        ),
        ("5 period, order and matrix order", c5_period_order_matrix),
        ("6 Fibonacci periods", c6_fibonacci),
        ("7 minimal polynomial", c7_minimal_polynomial),
        ("8 product ring golden sets", c8_product_ring_golden_sets),
        ("9 lcm-closure vs ring enumeration", c9_lcm_closure_oracle),
        ("10 maximal period iff field", c10_max_period_iff_field),
        ("11 group algebra A_5 over F_2", c11_group_algebra),
        ("12 property suites", c12_property_suites),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({ms} ms): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({ms} ms): {why}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
