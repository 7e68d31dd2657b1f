//! Coefficient tables `(label, beta, a)` for each value of `e`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::expr::{c, frac, CoefExpr};
use crate::error::{Error, Result};
use crate::exactmath::HalfInt;

/// Which transcription of the tables to use. `Paper` keeps every constant
/// exactly as printed; `Corrected` repairs the handful of entries where the
/// printed value contradicts the derivation next to it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Paper,
    #[default]
    Corrected,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Paper => "paper",
            Variant::Corrected => "corrected",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Variant::Paper),
            "corrected" => Ok(Variant::Corrected),
            other => Err(Error::Precondition(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StarTerm {
    pub label: &'static str,
    /// `|C_V(P)| <= |W|^(beta b)` for every `P` counted by this term.
    pub beta: HalfInt,
    pub coef: CoefExpr,
}

#[derive(Clone, Debug)]
pub struct StarCase {
    pub e: u32,
    pub variant: Variant,
    /// Prime that must divide `|W| - 1`.
    pub required_divisor: u64,
    /// Upper bound for `|A/F|`.
    pub af_bound: u64,
    pub terms: Vec<StarTerm>,
}

pub const CASES: [u32; 6] = [2, 3, 4, 8, 9, 16];

fn term(label: &'static str, beta: HalfInt, coef: CoefExpr) -> StarTerm {
    StarTerm { label, beta, coef }
}

fn w(n: u64) -> HalfInt {
    HalfInt::whole(n)
}

/// Elements outside `A`, split by prime `t | m`: the order-2 part is
/// `[2|m] * two_part`, each odd prime contributes
/// `(t-1) |A/F| e^2 (|W|-1) / (|W|^(1/t) - 1)`.
fn outside_a(two_part: CoefExpr, af: u64, e: u32) -> CoefExpr {
    use CoefExpr::*;
    let odd = (T - c(1)) * c((af * (e as u64).pow(2)) as i64) * (W - c(1)) / (RootWT - c(1));
    Ind2M * two_part + CoefExpr::sum_odd_primes(odd)
}

pub fn builtin_case(e: u32, variant: Variant) -> Result<StarCase> {
    use CoefExpr::*;
    let paper = variant == Variant::Paper;
    let sqrt_w1 = || SqrtW + c(1);
    let (required_divisor, af_bound, terms) = match e {
        16 => {
            let af = 6u64.pow(4) * 24;
            (2, af, vec![
                term("A1", w(8), c(2).pow(8)),
                term("A2", w(12), c(90) * c(2).pow(2) * c(2)),
                term("A3", w(10), c(513) * c(2).pow(4) * c(2)),
                term("A4", w(8), c(1883) * c(2).pow(8) * c(2)),
                term("A5", w(8), outside_a(c(6).pow(4) * c(24) * c(2).pow(8) * sqrt_w1(), af, 16)),
            ])
        }
        9 => {
            // |A/F| <= 24^2 * 2
            let af = 24u64.pow(2) * 2;
            let k = c(2) * c(24).pow(2) * c(3).pow(4);
            let a5 = (DivM - Ind2M) * k.clone() * (W - c(1)) + Ind2M * k * sqrt_w1();
            (3, af, vec![
                term("A1", w(3), c(3).pow(5) / c(2)),
                term("A2", w(6), c(95) * c(3).pow(4) * c(2)),
                term("A3", w(6), c(16) * c(3).pow(4) / c(2)),
                term("A4", w(if paper { 6 } else { 5 }), c(95) * c(3).pow(5) / c(2)),
                term("A5", HalfInt::from_twice(9), a5),
            ])
        }
        8 => {
            let af = 6u64.pow(4);
            (2, af, vec![
                term("A1", w(4), c(2).pow(8)),
                term("A21", w(6), c(45) * c(2).pow(2)),
                term("A22", w(2), c(45) * c(2).pow(2)),
                term("A3", w(4), c(135) * c(2).pow(6) * c(2)),
                term("A4", w(4), c(248) * c(2).pow(6) * frac(3, 2)),
                term("A5", w(4), outside_a(c(6).pow(4) * c(2).pow(6) * sqrt_w1(), af, 8)),
            ])
        }
        4 => {
            let af = 2 * 6u64.pow(2);
            (2, af, vec![
                term("A1", w(2), c(2).pow(5)),
                term("A21", w(3), c(15) * c(2).pow(2)),
                term("A22", w(if paper { 3 } else { 1 }), c(15) * c(2).pow(2)),
                term("A3", w(2), c(21) * c(2).pow(4) * c(2)),
                term("A4", w(2), (c(4) * c(2).pow(2) + c(4) * c(2).pow(4)) * D3 / c(2)),
                term("A5", w(2), outside_a(c(2) * c(6).pow(2) * c(2).pow(4) * sqrt_w1(), af, 4)),
            ])
        }
        3 => {
            let af = 24;
            let k = c(24) * c(3).pow(2);
            let half = if paper { frac(1, 2) } else { c(1) };
            let a5 = (DivM - Ind2M) * k.clone() * (W - c(1)) + Ind2M * half * k * sqrt_w1();
            (3, af, vec![
                term("A1", w(1), c(3).pow(3) / c(2)),
                term("A2", w(2), c(1) * c(3).pow(2) * D2),
                term("A31", w(2), c(8) * c(3).pow(2) / c(2)),
                term("A32", w(1), c(8) * c(3).pow(2) / c(2)),
                term("A33", w(0), c(8) * c(3).pow(2) / c(2)),
                term("A5", HalfInt::from_twice(3), a5),
            ])
        }
        2 => {
            let af = 6;
            let two = if paper { c(6) } else { c(3) };
            (2, af, vec![
                term("A1", w(1), c(4)),
                term("A2", w(1), c(3) * c(2).pow(2) * c(2)),
                term("A3", w(1), c(2) * c(2).pow(2) * D3 / c(2)),
                term("A4", w(1), outside_a(two * c(2).pow(2) * sqrt_w1(), af, 2)),
            ])
        }
        other => return Err(Error::UnknownCase(other)),
    };
    Ok(StarCase { e, variant, required_divisor, af_bound, terms })
}
