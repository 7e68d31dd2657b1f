//! Cross-checks of the ⋆ engine against an independent exact evaluation and
//! against failing sets frozen from a separate implementation.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use orbitcensus_core::exactmath::{div_count, prime_factors, prime_power};
use orbitcensus_core::starcheck::{
    builtin_case, evaluate_star, scan_thresholds, Outcome, ScanMode, Variant, CASES,
};
use serde::Deserialize;

#[derive(Deserialize)]
struct Frozen {
    e: u32,
    variant: String,
    b: u32,
    mode: String,
    cap: u64,
    evaluated: usize,
    failing: Vec<u64>,
    indeterminate: Vec<u64>,
}

fn frozen() -> Vec<Frozen> {
    serde_json::from_str(include_str!("fixtures/star_failing.json")).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn qi(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Terms as `(2 beta, a)` with `a` already rounded up, written out by hand
/// from the printed tables (no shared code with the engine).
fn oracle_terms(e: u32, paper: bool, w: u64, r: u64, m: u32) -> Vec<(u64, BigInt)> {
    let two = m.is_multiple_of(2);
    let sq = if two { (w as f64).sqrt().round() as i64 } else { 0 };
    assert!(!two || (sq * sq) as u64 == w);
    let divm = div_count(m as u64) as i64;
    let wm1 = w as i64 - 1;
    let odd = |af_e2: i64| -> BigRational {
        prime_factors(m as u64)
            .into_iter()
            .filter(|&t| t != 2)
            .map(|t| {
                let root = (r as i64).pow(m / t as u32);
                q((t as i64 - 1) * af_e2 * wm1, root - 1)
            })
            .fold(BigRational::zero(), |a, b| a + b)
    };
    let ind2 = two as i64;
    let d2 = if wm1 % 2 == 0 { 2 } else { 0 };
    let d3 = if wm1 % 3 == 0 { 3 } else { 0 };
    let rows: Vec<(u64, BigRational)> = match e {
        16 => vec![
            (16, q(256, 1)),
            (24, q(720, 1)),
            (20, q(16416, 1)),
            (16, q(964096, 1)),
            (16, q(ind2 * 31104 * 256 * (sq + 1), 1) + odd(31104 * 256)),
        ],
        9 => vec![
            (6, q(243, 2)),
            (12, q(15390, 1)),
            (12, q(648, 1)),
            (if paper { 12 } else { 10 }, q(95 * 243, 2)),
            (9, q((divm - ind2) * 93312 * wm1 + ind2 * 93312 * (sq + 1), 1)),
        ],
        8 => vec![
            (8, q(256, 1)),
            (12, q(180, 1)),
            (4, q(180, 1)),
            (8, q(17280, 1)),
            (8, q(23808, 1)),
            (8, q(ind2 * 1296 * 64 * (sq + 1), 1) + odd(1296 * 64)),
        ],
        4 => vec![
            (4, q(32, 1)),
            (6, q(60, 1)),
            (if paper { 6 } else { 2 }, q(60, 1)),
            (4, q(672, 1)),
            (4, q(80 * d3, 2)),
            (4, q(ind2 * 1152 * (sq + 1), 1) + odd(1152)),
        ],
        3 => vec![
            (2, q(27, 2)),
            (4, q(9 * d2, 1)),
            (4, q(36, 1)),
            (2, q(36, 1)),
            (0, q(36, 1)),
            (
                3,
                q((divm - ind2) * 216 * wm1, 1)
                    + q(ind2 * 216 * (sq + 1), 1) * if paper { q(1, 2) } else { q(1, 1) },
            ),
        ],
        2 => vec![
            (2, q(4, 1)),
            (2, q(24, 1)),
            (2, q(8 * d3, 2)),
            (2, q(ind2 * if paper { 24 } else { 12 } * (sq + 1), 1) + odd(24)),
        ],
        _ => unreachable!(),
    };
    rows.into_iter().map(|(tb, a)| (tb, a.ceil().to_integer())).collect()
}

/// Exact truth of the inequality: the left side is `X + Y sqrt(W)` with
/// integers `X`, `Y >= 0`, compared against `R` without any rounding.
fn oracle_holds(e: u32, paper: bool, w: u64, b: u32) -> bool {
    let (r, m) = prime_power(&BigInt::from(w)).unwrap();
    let r: u64 = r.try_into().unwrap();
    let wb = BigInt::from(w);
    let mut x = BigInt::zero();
    let mut y = BigInt::zero();
    for (twice_beta, a) in oracle_terms(e, paper, w, r, m) {
        let twice = twice_beta * b as u64;
        let whole = wb.pow((twice / 2) as u32);
        if twice.is_multiple_of(2) {
            x += &a * (whole - 1);
        } else {
            x -= &a;
            y += &a * whole;
        }
    }
    let rhs = wb.pow(e * b) - 1;
    let slack = qi(&rhs) - qi(&x);
    if !slack.is_positive() {
        return false;
    }
    // Y sqrt(W) < slack  <=>  Y^2 W < slack^2
    qi(&(&y * &y * &wb)) < &slack * &slack
}

fn admissible(e: u32, w: u64) -> Option<u32> {
    let (r, m) = prime_power(&BigInt::from(w))?;
    let r: u64 = r.try_into().ok()?;
    let d = if e.is_multiple_of(3) { 3 } else { 2 };
    (!(e as u64).is_multiple_of(r) && (w - 1).is_multiple_of(d)).then_some(m)
}

#[test]
fn engine_agrees_with_exact_oracle() {
    for e in CASES {
        for variant in [Variant::Paper, Variant::Corrected] {
            let case = builtin_case(e, variant).unwrap();
            for w in 2..=500u64 {
                let Some(m) = admissible(e, w) else { continue };
                for b in 1..=3 {
                    let v = evaluate_star(&case, &BigInt::from(w), b, m).unwrap();
                    let truth = oracle_holds(e, variant == Variant::Paper, w, b);
                    match v.verdict {
                        Outcome::Holds => assert!(truth, "e={e} W={w} b={b} {variant}"),
                        Outcome::Fails => assert!(!truth, "e={e} W={w} b={b} {variant}"),
                        Outcome::Indeterminate => panic!("indeterminate at e={e} W={w} b={b}"),
                    }
                }
            }
        }
    }
}

#[test]
fn scans_match_frozen_failing_sets() {
    let all = frozen();
    assert_eq!(all.len(), 48);
    for f in all {
        let variant: Variant = f.variant.parse().unwrap();
        let mode: ScanMode = f.mode.parse().unwrap();
        let s = scan_thresholds(&builtin_case(f.e, variant).unwrap(), f.b, mode, f.cap).unwrap();
        let tag = format!("e={} {} b={} {}", f.e, f.variant, f.b, f.mode);
        assert_eq!(s.evaluated, f.evaluated, "{tag}");
        assert_eq!(s.failing, f.failing, "{tag}");
        assert_eq!(s.indeterminate, f.indeterminate, "{tag}");
        assert_eq!(s.minimal_pass, f.failing.last().map_or(2, |w| w + 1), "{tag}");
    }
}

#[test]
fn larger_b_never_hurts() {
    for e in CASES {
        let case = builtin_case(e, Variant::Corrected).unwrap();
        for w in 2..=500u64 {
            let Some(m) = admissible(e, w) else { continue };
            let mut held = false;
            for b in 1..=4 {
                let now = evaluate_star(&case, &BigInt::from(w), b, m).unwrap().verdict == Outcome::Holds;
                assert!(!held || now, "e={e} W={w}: holds at b={} but not b={b}", b - 1);
                held = now;
            }
        }
    }
}

#[test]
fn failing_sets_are_finite_in_the_scanned_range() {
    // beta < e termwise, so for each case the ratio lhs/rhs tends to zero;
    // large enough |W| (with m = 1) always passes.
    for e in CASES {
        let case = builtin_case(e, Variant::Corrected).unwrap();
        let big = (10_000u64..).find(|&w| admissible(e, w) == Some(1)).unwrap();
        assert_eq!(evaluate_star(&case, &BigInt::from(big), 1, 1).unwrap().verdict, Outcome::Holds);
    }
}

#[test]
fn variants_differ_only_where_frozen() {
    let mut diffs: BTreeMap<(u32, u32), BTreeSet<u64>> = BTreeMap::new();
    for e in CASES {
        let paper = builtin_case(e, Variant::Paper).unwrap();
        let corrected = builtin_case(e, Variant::Corrected).unwrap();
        for b in 1..=2 {
            for w in 2..=500u64 {
                let Some(m) = admissible(e, w) else { continue };
                let wb = BigInt::from(w);
                let p = evaluate_star(&paper, &wb, b, m).unwrap().verdict;
                let c = evaluate_star(&corrected, &wb, b, m).unwrap().verdict;
                if p != c {
                    diffs.entry((e, b)).or_default().insert(w);
                }
            }
        }
    }
    let expected: BTreeMap<(u32, u32), BTreeSet<u64>> = [
        ((2, 1), vec![289, 361]),
        ((2, 2), vec![9]),
        ((3, 1), vec![256]),
        ((4, 1), vec![71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 169]),
        ((4, 2), vec![11]),
    ]
    .into_iter()
    .map(|(k, v)| (k, v.into_iter().collect()))
    .collect();
    assert_eq!(diffs, expected);
}

#[test]
fn prime_power_failures_beyond_the_default_cap() {
    // odd t | m makes the outside-A coefficient grow like |W|^(1 - 1/t), so
    // for small e the failures persist well past the default cap
    let beyond = |e: u32| -> Vec<u64> {
        let s = scan_thresholds(&builtin_case(e, Variant::Corrected).unwrap(), 1, ScanMode::PrimePower, 20_000).unwrap();
        assert!(s.indeterminate.is_empty());
        s.failing.into_iter().filter(|&w| w > 500).collect()
    };
    assert_eq!(beyond(2), vec![729, 1331, 2187, 2197, 3125, 4913, 6859, 12167, 15625, 16807, 19683]);
    assert_eq!(beyond(3), vec![1024, 2197, 4096, 6859, 15625, 16384, 16807]);
    assert_eq!(beyond(4), vec![2187]);
    for e in [8, 9, 16] {
        assert!(beyond(e).is_empty(), "e={e}");
    }
}
