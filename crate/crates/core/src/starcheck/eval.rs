use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::cases::{StarCase, Variant};
use super::expr::EvalContext;
use crate::error::{Error, Result};
use crate::exactmath::{is_prime_u64, pow_half, prime_power, Bracket, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Fails,
    Indeterminate,
}

fn decimal<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct TermValue {
    pub label: &'static str,
    pub beta: HalfInt,
    /// The coefficient, rounded up.
    #[serde(serialize_with = "decimal")]
    pub a: BigInt,
    /// Upper bound for `a * (|W|^(beta b) - 1)`.
    #[serde(serialize_with = "decimal")]
    pub contribution: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarVerdict {
    pub e: u32,
    pub variant: Variant,
    #[serde(rename = "W", serialize_with = "decimal")]
    pub w: BigInt,
    pub b: u32,
    pub m: u32,
    pub verdict: Outcome,
    #[serde(serialize_with = "decimal")]
    pub lhs_upper: BigInt,
    #[serde(serialize_with = "decimal")]
    pub lhs_lower: BigInt,
    #[serde(serialize_with = "decimal")]
    pub rhs: BigInt,
    /// `rhs - lhs_upper`; positive exactly when the inequality holds.
    #[serde(skip)]
    pub margin: BigInt,
    pub per_term: Vec<TermValue>,
}

/// Checks that `(W, m)` is admissible for `case`, returning the prime `r`.
pub fn check_admissible(case: &StarCase, w: &BigInt, m: u32) -> Result<BigInt> {
    let (r, mm) = prime_power(w)
        .ok_or_else(|| Error::Inadmissible(format!("|W| = {w} is not a prime power")))?;
    if mm != m {
        return Err(Error::Inadmissible(format!("|W| = {w} = {r}^{mm}, but m = {m}")));
    }
    if !r.gcd(&BigInt::from(case.e)).is_one() {
        return Err(Error::Inadmissible(format!("gcd(r, e) = gcd({r}, {}) is not 1", case.e)));
    }
    let d = case.required_divisor;
    if !((w - 1u32) % d).is_zero() {
        return Err(Error::Inadmissible(format!("{d} does not divide |W| - 1 = {}", w - 1u32)));
    }
    Ok(r)
}

fn ceil_int(q: &num_rational::BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// Evaluates `sum a_i (|W|^(beta_i b) - 1) < |W|^(e b) - 1` exactly.
pub fn evaluate_star(case: &StarCase, w: &BigInt, b: u32, m: u32) -> Result<StarVerdict> {
    if b == 0 || m == 0 {
        return Err(Error::Inadmissible("b and m must be at least 1".into()));
    }
    check_admissible(case, w, m)?;
    let ctx = EvalContext::new(w.clone(), b, m);
    let mut lhs_upper = BigInt::zero();
    let mut lhs_lower = BigInt::zero();
    let mut per_term = Vec::with_capacity(case.terms.len());
    for t in &case.terms {
        let a = t.coef.eval(&ctx)?;
        let (a_lo, a_hi) = (ceil_int(&a.lo), ceil_int(&a.hi));
        let exp = t.beta.scale(b as u64);
        let hi = &a_hi * (pow_half(w, exp, Bracket::Upper) - 1u32);
        let lo = &a_lo * (pow_half(w, exp, Bracket::Lower) - 1u32);
        lhs_upper += &hi;
        lhs_lower += &lo;
        per_term.push(TermValue { label: t.label, beta: t.beta, a: a_hi, contribution: hi });
    }
    let rhs = w.pow(case.e * b) - 1u32;
    let verdict = if lhs_upper < rhs {
        Outcome::Holds
    } else if lhs_lower >= rhs {
        Outcome::Fails
    } else {
        Outcome::Indeterminate
    };
    Ok(StarVerdict {
        e: case.e,
        variant: case.variant,
        w: w.clone(),
        b,
        m,
        verdict,
        margin: &rhs - &lhs_upper,
        lhs_upper,
        lhs_lower,
        rhs,
        per_term,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Prime,
    PrimePower,
}

impl std::str::FromStr for ScanMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" => Ok(ScanMode::Prime),
            "prime-power" => Ok(ScanMode::PrimePower),
            other => Err(Error::Precondition(format!("unknown scan mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub e: u32,
    pub variant: Variant,
    pub b: u32,
    pub mode: ScanMode,
    pub cap: u64,
    /// Number of admissible `|W|` examined.
    pub evaluated: usize,
    pub failing: Vec<u64>,
    pub indeterminate: Vec<u64>,
    /// Least `T` such that every admissible `|W|` in `[T, cap]` satisfies the
    /// inequality.
    pub minimal_pass: u64,
}

/// Evaluates every admissible `|W| <= cap` of the given kind. No monotonicity
/// in `|W|` is assumed.
pub fn scan_thresholds(case: &StarCase, b: u32, mode: ScanMode, cap: u64) -> Result<ScanReport> {
    let candidates: Vec<(u64, u32)> = (2..=cap)
        .filter_map(|w| {
            let (r, m) = prime_power(&BigInt::from(w))?;
            let r = r.to_u64()?;
            let kind_ok = match mode {
                ScanMode::Prime => m == 1 && is_prime_u64(r),
                ScanMode::PrimePower => true,
            };
            (kind_ok && check_admissible(case, &BigInt::from(w), m).is_ok()).then_some((w, m))
        })
        .collect();
    let verdicts: Vec<(u64, Outcome)> = candidates
        .par_iter()
        .map(|&(w, m)| evaluate_star(case, &BigInt::from(w), b, m).map(|v| (w, v.verdict)))
        .collect::<Result<_>>()?;
    let pick = |o: Outcome| verdicts.iter().filter(|(_, v)| *v == o).map(|(w, _)| *w).collect::<Vec<_>>();
    let failing = pick(Outcome::Fails);
    let indeterminate = pick(Outcome::Indeterminate);
    let minimal_pass = failing.iter().chain(&indeterminate).max().map_or(2, |w| w + 1);
    Ok(ScanReport {
        e: case.e,
        variant: case.variant,
        b,
        mode,
        cap,
        evaluated: verdicts.len(),
        failing,
        indeterminate,
        minimal_pass,
    })
}

/// `dim(W) * |A/F| * e^2 * (|W| - 1)`, an upper bound for `|G|`.
pub fn group_order_bound(dim_w: u64, af_bound: u64, e: u64, w: &BigInt) -> BigInt {
    BigInt::from(dim_w) * af_bound * e * e * (w - 1u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starcheck::cases::builtin_case;

    fn check(e: u32, w: u64, b: u32, m: u32) -> Outcome {
        evaluate_star(&builtin_case(e, Variant::Corrected).unwrap(), &BigInt::from(w), b, m)
            .unwrap()
            .verdict
    }

    #[test]
    fn documented_verdicts() {
        assert_eq!(check(16, 7, 1, 1), Outcome::Holds);
        assert_eq!(check(8, 19, 1, 1), Outcome::Holds);
        assert_eq!(check(8, 17, 1, 1), Outcome::Fails);
        assert_eq!(check(2, 9, 2, 2), Outcome::Holds);
    }

    #[test]
    fn inadmissible_parameters_are_reported() {
        let case = builtin_case(9, Variant::Corrected).unwrap();
        let err = |w: u64, m: u32| evaluate_star(&case, &BigInt::from(w), 1, m).unwrap_err();
        assert!(matches!(err(12, 1), Error::Inadmissible(s) if s.contains("prime power")));
        assert!(matches!(err(49, 1), Error::Inadmissible(s) if s.contains("m = 1")));
        assert!(matches!(err(11, 1), Error::Inadmissible(s) if s.contains("3 does not divide")));
        assert!(matches!(err(27, 3), Error::Inadmissible(s) if s.contains("gcd")));
        let c2 = builtin_case(2, Variant::Corrected).unwrap();
        assert!(matches!(
            evaluate_star(&c2, &BigInt::from(8), 1, 3).unwrap_err(),
            Error::Inadmissible(s) if s.contains("gcd")
        ));
    }

    #[test]
    fn verdict_fields_are_consistent() {
        let case = builtin_case(9, Variant::Corrected).unwrap();
        let v = evaluate_star(&case, &BigInt::from(31), 1, 1).unwrap();
        assert_eq!(v.rhs, BigInt::from(31).pow(9) - 1);
        assert_eq!(v.per_term.iter().map(|t| &t.contribution).sum::<BigInt>(), v.lhs_upper);
        // m = 1: the beta = 4.5 term has a zero coefficient, so all is exact
        assert_eq!(v.lhs_lower, v.lhs_upper);
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.starts_with(r#"{"e":9,"variant":"corrected","W":"31","b":1,"m":1,"verdict":"holds","lhs_upper":""#));
        // 7^3 is not a square, so W^4.5 is bracketed
        let v = evaluate_star(&case, &BigInt::from(343), 1, 3).unwrap();
        assert!(v.lhs_lower < v.lhs_upper);
    }

    #[test]
    fn group_order_bound_examples() {
        assert_eq!(group_order_bound(1, 6, 2, &BigInt::from(23)), BigInt::from(528));
        assert_eq!(group_order_bound(1, 24, 3, &BigInt::from(43)), BigInt::from(9072));
    }

    #[test]
    fn scan_minimal_pass_is_past_the_last_failure() {
        let case = builtin_case(8, Variant::Corrected).unwrap();
        let s = scan_thresholds(&case, 1, ScanMode::Prime, 100).unwrap();
        assert_eq!(s.failing, vec![3, 5, 7, 11, 13, 17]);
        assert_eq!(s.minimal_pass, 18);
        assert!(s.indeterminate.is_empty());
    }
}
