//! Coefficient expressions and their exact interval evaluation.

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{div_count, iroot_ceil, iroot_floor, isqrt_ceil, isqrt_floor, prime_factors};

/// A closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn int(v: BigInt) -> Self {
        Interval::point(BigRational::from_integer(v))
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        Interval::new(lo, hi)
    }

    fn div(&self, o: &Interval) -> Result<Interval> {
        if !o.lo.is_positive() && !o.hi.is_negative() {
            return Err(Error::Precondition("division by an interval containing zero".into()));
        }
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        Ok(self.mul(&inv))
    }
}

/// Parameters an expression may refer to.
#[derive(Clone, Debug)]
pub struct EvalContext {
    /// `|W| = r^m`.
    pub w: BigInt,
    pub b: u32,
    pub m: u32,
    /// Bound while evaluating the body of [`CoefExpr::SumOddPrimesOfM`].
    odd_prime: Option<u32>,
}

impl EvalContext {
    pub fn new(w: BigInt, b: u32, m: u32) -> Self {
        EvalContext { w, b, m, odd_prime: None }
    }
}

/// Expression tree for a coefficient `a_i`.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefExpr {
    Const(BigRational),
    /// `|W|`.
    W,
    B,
    M,
    /// `|W|^(1/2)`, bracketed by integer square roots.
    SqrtW,
    /// Number of distinct primes dividing `m`.
    DivM,
    /// `2` if `2 | |W| - 1`, else 0.
    D2,
    /// `3` if `3 | |W| - 1`, else 0.
    D3,
    /// `1` if `2 | m`, else 0.
    Ind2M,
    /// The odd prime `t` bound by an enclosing sum.
    T,
    /// `|W|^(1/t)` for the bound odd prime `t`, bracketed by integer roots.
    RootWT,
    /// Sum of the body over the odd primes `t` dividing `m`.
    SumOddPrimesOfM(Box<CoefExpr>),
    Add(Box<CoefExpr>, Box<CoefExpr>),
    Sub(Box<CoefExpr>, Box<CoefExpr>),
    Mul(Box<CoefExpr>, Box<CoefExpr>),
    Div(Box<CoefExpr>, Box<CoefExpr>),
    Pow(Box<CoefExpr>, u32),
}

/// Integer constant.
pub fn c(n: i64) -> CoefExpr {
    CoefExpr::Const(BigRational::from_integer(n.into()))
}

/// Rational constant `n / d`.
pub fn frac(n: i64, d: i64) -> CoefExpr {
    CoefExpr::Const(BigRational::new(n.into(), d.into()))
}

impl CoefExpr {
    pub fn pow(self, k: u32) -> CoefExpr {
        CoefExpr::Pow(Box::new(self), k)
    }

    pub fn sum_odd_primes(body: CoefExpr) -> CoefExpr {
        CoefExpr::SumOddPrimesOfM(Box::new(body))
    }

    pub fn eval(&self, ctx: &EvalContext) -> Result<Interval> {
        use CoefExpr::*;
        let int = |n: u64| Ok(Interval::int(BigInt::from(n)));
        match self {
            Const(v) => Ok(Interval::point(v.clone())),
            W => Ok(Interval::int(ctx.w.clone())),
            B => int(ctx.b as u64),
            M => int(ctx.m as u64),
            SqrtW => Ok(Interval::new(
                BigRational::from_integer(isqrt_floor(&ctx.w)?),
                BigRational::from_integer(isqrt_ceil(&ctx.w)?),
            )),
            DivM => int(div_count(ctx.m as u64) as u64),
            D2 | D3 => {
                let p = if matches!(self, D2) { 2u64 } else { 3 };
                let w1: BigInt = &ctx.w - 1;
                let divides = (&w1 % BigInt::from(p)).is_zero();
                int(if divides { p } else { 0 })
            }
            Ind2M => int(ctx.m.is_multiple_of(2) as u64),
            T => ctx
                .odd_prime
                .map(|t| Interval::int(BigInt::from(t)))
                .ok_or_else(|| Error::Precondition("t used outside a sum over primes".into())),
            RootWT => {
                let t = ctx
                    .odd_prime
                    .ok_or_else(|| Error::Precondition("W^(1/t) used outside a sum over primes".into()))?;
                Ok(Interval::new(
                    BigRational::from_integer(iroot_floor(&ctx.w, t)?),
                    BigRational::from_integer(iroot_ceil(&ctx.w, t)?),
                ))
            }
            SumOddPrimesOfM(body) => {
                let mut acc = Interval::int(BigInt::zero());
                for t in prime_factors(ctx.m as u64).into_iter().filter(|&t| t != 2) {
                    let inner = EvalContext { odd_prime: Some(t as u32), ..ctx.clone() };
                    acc = acc.add(&body.eval(&inner)?);
                }
                Ok(acc)
            }
            Add(a, b) => Ok(a.eval(ctx)?.add(&b.eval(ctx)?)),
            Sub(a, b) => Ok(a.eval(ctx)?.sub(&b.eval(ctx)?)),
            Mul(a, b) => Ok(a.eval(ctx)?.mul(&b.eval(ctx)?)),
            Div(a, b) => a.eval(ctx)?.div(&b.eval(ctx)?),
            Pow(a, k) => {
                let base = a.eval(ctx)?;
                let mut acc = Interval::int(BigInt::one());
                for _ in 0..*k {
                    acc = acc.mul(&base);
                }
                Ok(acc)
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $variant:ident) => {
        impl ops::$tr for CoefExpr {
            type Output = CoefExpr;
            fn $f(self, rhs: CoefExpr) -> CoefExpr {
                CoefExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl fmt::Display for CoefExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CoefExpr::*;
        match self {
            Const(v) => write!(f, "{v}"),
            W => f.write_str("W"),
            B => f.write_str("b"),
            M => f.write_str("m"),
            SqrtW => f.write_str("sqrt(W)"),
            DivM => f.write_str("Div(m)"),
            D2 => f.write_str("D2(W-1)"),
            D3 => f.write_str("D3(W-1)"),
            Ind2M => f.write_str("[2|m]"),
            T => f.write_str("t"),
            RootWT => f.write_str("W^(1/t)"),
            SumOddPrimesOfM(body) => write!(f, "sum[odd prime t|m]({body})"),
            Add(a, b) => write!(f, "({a} + {b})"),
            Sub(a, b) => write!(f, "({a} - {b})"),
            Mul(a, b) => write!(f, "{a}*{b}"),
            Div(a, b) => write!(f, "{a}/({b})"),
            Pow(a, k) => write!(f, "{a}^{k}"),
        }
    }
}
