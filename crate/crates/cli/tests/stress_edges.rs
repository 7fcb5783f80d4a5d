//! Extreme-edge probes: eccentricities within a few ulps of 1, mean
//! anomalies down to the subnormal range, and the exact branch boundaries
//! of the piecewise starter. The certificate must hold at all of them.

use std::f64::consts::PI;

use kepler_alpha::{OrbitPoint, SolveMode, alpha_test, bisection_oracle, solve, thm1_starter};

#[test]
fn certified_starter_survives_the_extreme_corner() {
    let mut eccentricities = vec![0.0, 0.5, 3.0 / 11.0];
    for k in 1..=15 {
        eccentricities.push(1.0 - 10.0f64.powi(-k));
    }
    let mut anomalies = vec![0.0, PI / 7.0, PI / 4.0, 2.0 * PI / 3.0, PI];
    for k in 1..=300 {
        anomalies.push(10.0f64.powi(-k));
    }
    for &e in &eccentricities {
        for &m in &anomalies {
            let p = OrbitPoint::new(e, m).unwrap();
            let starter = thm1_starter(&p);
            assert!(
                starter.value.is_finite(),
                "starter blew up at (e = {e}, M = {m})"
            );
            let report = alpha_test(&p, starter.value);
            assert!(
                report.passes,
                "alpha = {} at (e = {e}, M = {m}), branch {:?}",
                report.alpha, starter.branch
            );
        }
    }
}

#[test]
fn solver_agrees_with_the_oracle_at_the_edges() {
    for &e in &[0.0, 0.9, 0.999, 0.999999, 1.0 - 1e-12] {
        for &m in &[0.0, 1e-9, 0.5, PI / 2.0, 3.0, PI] {
            let result = solve(e, m, SolveMode::ResidualTol(1e-13)).unwrap();
            let p = OrbitPoint::new(e, m).unwrap();
            let oracle = bisection_oracle(&p, 1e-15);
            // A residual below tol only pins E to within tol / f'(E*); the
            // window widens near the (1, 0) corner where f' collapses.
            let f_prime = 1.0 - e * oracle.cos();
            let window = 1e-13 / f_prime + 1e-12;
            assert!(
                (result.eccentric_anomaly - oracle).abs() <= window,
                "solver {} vs oracle {oracle} at (e = {e}, M = {m})",
                result.eccentric_anomaly
            );
            assert!(result.iterations <= 10);
        }
    }
}

#[test]
fn branch_boundaries_are_covered_from_both_sides() {
    // Points straddling every piecewise-starter condition boundary.
    let half = 0.5f64;
    let boundaries = [
        (half - 1e-12, PI / 5.0),
        (half + 1e-12, PI / 5.0),
        (0.9, PI / 4.0 - 1e-12),
        (0.9, PI / 4.0 + 1e-12),
        (0.9, PI / 7.0 - 1e-12),
        (0.9, PI / 7.0 + 1e-12),
        (0.9, 2.0 * PI / 3.0 - 1e-12),
        (0.9, 2.0 * PI / 3.0 + 1e-12),
    ];
    for (e, m) in boundaries {
        let p = OrbitPoint::new(e, m).unwrap();
        let report = alpha_test(&p, thm1_starter(&p).value);
        assert!(report.passes, "boundary point (e = {e}, M = {m}) failed");
    }
}
