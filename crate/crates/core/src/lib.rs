//! Exact computations around regular orbits of solvable linear groups:
//! finite-field linear algebra, enumerated matrix and semilinear groups,
//! element censuses, brute-force orbit scans and the ⋆ inequality engine.

pub mod census;
pub mod error;
pub mod exactmath;
pub mod gflinalg;
pub mod groupkit;
pub mod models;
pub mod orbitscan;
pub mod starcheck;
pub mod verify;

pub use error::{Error, Result};
