//! The ⋆ inequality `sum a_i (|W|^(beta_i b) - 1) < |W|^(e b) - 1`: coefficient
//! tables per `e`, exact evaluation and threshold scans.

mod cases;
mod eval;
mod expr;

pub use cases::{builtin_case, StarCase, StarTerm, Variant, CASES};
pub use eval::{
    check_admissible, evaluate_star, group_order_bound, scan_thresholds, Outcome, ScanMode, ScanReport,
    StarVerdict, TermValue,
};
pub use expr::{c, frac, CoefExpr, EvalContext, Interval};
