//! Newton iteration under the certified-contraction contract, iteration
//! budgeting, the classical fixed-point baseline, and an independent
//! bisection oracle used as ground truth by the test apparatus.

use std::f64::consts::PI;

use crate::error::KeplerError;
use crate::model::{self, OrbitPoint, eval_f, eval_f_derivative};
use crate::starters::{StarterKind, StarterValue, evaluate_starter, thm1_starter};

/// Residual mode gives up after this many Newton steps. With a certified
/// starter the loop converges in a handful of iterations; hitting this cap
/// is an internal failure, not an expected outcome.
pub const RESIDUAL_ITERATION_CAP: u32 = 50;

/// Digits beyond binary64 resolution are not deliverable; digit requests
/// saturate here.
pub const MAX_MEANINGFUL_DIGITS: u32 = 15;

/// Bisection never runs coarser than this.
pub const ORACLE_TOL_FLOOR: f64 = 1e-15;

/// Stopping rule for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveMode {
    /// Run exactly `iterations_for_digits(min(N, 15))` Newton steps.
    Digits(u32),
    /// Iterate until `|f(E)| <= tol`.
    ResidualTol(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    /// Eccentric anomaly in the frame of the raw input anomaly.
    pub eccentric_anomaly: f64,
    pub iterations: u32,
    /// `|E - e sin E - M_raw|` recomputed at return.
    pub residual: f64,
    pub starter: StarterValue,
    /// True when the starter carries a certificate (the piecewise starter,
    /// here); Newton then contracts quadratically from the first step.
    pub certified: bool,
    /// Set when a digits request exceeded [`MAX_MEANINGFUL_DIGITS`] and was
    /// saturated.
    pub digits_capped: bool,
}

/// One Newton step `E - f(E) / f'(E)`. Total for `e < 1` since
/// `f' >= 1 - e > 0`.
pub fn newton_step(p: &OrbitPoint, e_anomaly: f64) -> f64 {
    e_anomaly - eval_f(p, e_anomaly) / eval_f_derivative(p, e_anomaly, 1)
}

/// Newton steps needed for `10^-N` accuracy from a certified starter:
/// `ceil(log2(1 + log2(pi) + N log2(10)))`. The initial error is at most
/// `pi` and every step squares the contraction factor.
pub fn iterations_for_digits(digits: u32) -> Result<u32, KeplerError> {
    if digits < 1 {
        return Err(KeplerError::DigitsOutOfRange(digits));
    }
    let inner = 1.0 + PI.log2() + 10.0f64.log2() * digits as f64;
    Ok(inner.log2().ceil() as u32)
}

/// Solves `E - e sin E = M` for any finite raw mean anomaly using the
/// certified piecewise starter.
pub fn solve(e: f64, m_raw: f64, mode: SolveMode) -> Result<SolveResult, KeplerError> {
    solve_from(e, m_raw, None, mode)
}

/// Like [`solve`] but with an explicit starter choice. Only the piecewise
/// starter carries the convergence certificate; anything else leaves
/// `certified = false` in the result.
pub fn solve_with_starter(
    e: f64,
    m_raw: f64,
    kind: StarterKind,
    mode: SolveMode,
) -> Result<SolveResult, KeplerError> {
    solve_from(e, m_raw, Some(kind), mode)
}

fn solve_from(
    e: f64,
    m_raw: f64,
    kind: Option<StarterKind>,
    mode: SolveMode,
) -> Result<SolveResult, KeplerError> {
    let reduction = model::reduce_anomaly(m_raw)?;
    let p = reduction.orbit_point(e)?;
    let starter = match kind {
        None => thm1_starter(&p),
        Some(k) => evaluate_starter(k, &p)?,
    };
    let certified = matches!(kind, None | Some(StarterKind::Thm1));

    let mut current = starter.value;
    let mut iterations = 0u32;
    let mut digits_capped = false;
    match mode {
        SolveMode::Digits(requested) => {
            if requested < 1 {
                return Err(KeplerError::DigitsOutOfRange(requested));
            }
            digits_capped = requested > MAX_MEANINGFUL_DIGITS;
            let steps = iterations_for_digits(requested.min(MAX_MEANINGFUL_DIGITS))?;
            for _ in 0..steps {
                current = newton_step(&p, current);
            }
            iterations = steps;
        }
        SolveMode::ResidualTol(tol) => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(KeplerError::ToleranceOutOfRange(tol));
            }
            while eval_f(&p, current).abs() > tol {
                if iterations >= RESIDUAL_ITERATION_CAP {
                    return Err(KeplerError::NewtonStalled(RESIDUAL_ITERATION_CAP));
                }
                current = newton_step(&p, current);
                iterations += 1;
            }
        }
    }

    let eccentric_anomaly = model::restore_anomaly(current, &reduction);
    let residual = (eccentric_anomaly - e * eccentric_anomaly.sin() - m_raw).abs();
    Ok(SolveResult {
        eccentric_anomaly,
        iterations,
        residual,
        starter,
        certified,
        digits_capped,
    })
}

/// The fixed-point baseline `E <- M + e sin E`, iterated `n` times. Linear
/// convergence with rate `e`; kept as the historical comparison point.
pub fn fixed_point_baseline(p: &OrbitPoint, start: f64, n: u32) -> f64 {
    let mut e_anomaly = start;
    for _ in 0..n {
        e_anomaly = p.m() + p.e() * e_anomaly.sin();
    }
    e_anomaly
}

/// Ground-truth root by bisection on `[0, pi]`, independent of the Newton
/// path. Returns the bracket midpoint once the bracket is narrower than
/// `tol` (floored at [`ORACLE_TOL_FLOOR`]).
pub fn bisection_oracle(p: &OrbitPoint, tol: f64) -> f64 {
    bisect_observed(p, tol, |_, _| {})
}

/// Bisection with a bracket observer, so tests can watch the invariant
/// `f(lo) <= 0 <= f(hi)` hold at every step.
pub(crate) fn bisect_observed(
    p: &OrbitPoint,
    tol: f64,
    mut observe: impl FnMut(f64, f64),
) -> f64 {
    let tol = tol.max(ORACLE_TOL_FLOOR);
    let (mut lo, mut hi) = (0.0f64, PI);
    // f(0) = -M <= 0 always. In exact arithmetic f(pi) = pi - M >= 0 too,
    // but the float value dips to -e sin(pi_f64) ~ -1.2e-16 when M = pi;
    // both ends double as exact-root short-circuits.
    if eval_f(p, lo) >= 0.0 {
        return lo;
    }
    if eval_f(p, hi) <= 0.0 {
        return hi;
    }
    while hi - lo > tol {
        observe(lo, hi);
        let mid = 0.5 * (lo + hi);
        if eval_f(p, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
