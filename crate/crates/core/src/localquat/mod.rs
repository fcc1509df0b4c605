//! Laurent series over `F_q`, the quaternion division algebra over
//! `F_q((t))`, its skew-element orbit census, and Artin-Schreier
//! solvability.

mod artin;
mod census;
mod laurent;
mod quaternion;

pub use artin::{artin_schreier_analyze, artin_schreier_equivalent, artin_schreier_solvable, AsOutcome, AsReport};
pub use census::{c2_orbit_census, classify_skew_pair, solve_norm_equation, CensusReport, PairOutcome, DEFAULT_BUDGET};
pub use laurent::{Laurent, SeriesField, SquareClass};
pub use quaternion::{QuatAlgebra, Quaternion};
