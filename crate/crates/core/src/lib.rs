//! Certified solution of Kepler's equation `E - e sin E = M`.
//!
//! The crate picks a starter `E~(e, M)` that provably satisfies the
//! alpha-test `beta * gamma < 3 - 2 sqrt(2)`, which guarantees that plain
//! Newton iteration contracts the error like `(1/2)^(2^n - 1)` from the very
//! first step. On top of that sit the verification tools: the alpha-test
//! evaluator itself, the classical starter atlas S1-S10, the analytic
//! regions where each simple starter is certified, and piecewise-constant
//! starter tables for a tunable guarantee margin.
//!
//! Modules:
//!
//! - [`model`]: the Kepler function, its derivative cycle, anomaly folding,
//!   orbit geometry.
//! - [`alpha`]: beta, gamma and the alpha-test, with a brute-force gamma
//!   oracle.
//! - [`starters`]: every starter formula plus the region predicates R1-R7.
//! - [`solver`]: certified Newton driver, fixed-point baseline, bisection
//!   ground truth.
//! - [`lookup`]: the piecewise-constant starter grid with binary and JSON
//!   persistence.

pub mod alpha;
pub mod error;
pub mod lookup;
pub mod model;
pub mod solver;
pub mod starters;

pub use alpha::{AlphaReport, alpha0, alpha_test};
pub use error::KeplerError;
pub use lookup::{LookupTable, build_table, table_size_for_eps, table_starter};
pub use model::{
    AnomalyReduction, EllipseGeometry, OrbitPoint, eccentric_to_position, eval_f,
    eval_f_derivative, reduce_anomaly, restore_anomaly,
};
pub use solver::{
    SolveMode, SolveResult, bisection_oracle, fixed_point_baseline, iterations_for_digits,
    newton_step, solve, solve_with_starter,
};
pub use starters::{
    RegionId, StarterBranch, StarterKind, StarterValue, analytic_starter, classical_starter,
    containment_checks, evaluate_starter, in_region, starter_for_region, thm1_starter,
};
