//! The alpha-test: decides whether a starter is an approximate zero of the
//! Kepler function, i.e. whether unguarded Newton iteration from it is
//! guaranteed to contract the error like `(1/2)^(2^n - 1)`.
//!
//! The test compares `alpha = beta * gamma` against `alpha0 = 3 - 2 sqrt(2)`,
//! where `beta` is the length of the first Newton step and `gamma` is a
//! supremum over all scaled higher derivatives,
//!
//! ```text
//! gamma = sup_{k >= 2} | f^(k)(E~) / (k! f'(E~)) | ^ (1 / (k - 1)).
//! ```
//!
//! For the Kepler function the derivative magnitudes take only two values,
//! `e |sin E~|` (even `k`) and `e |cos E~|` (odd `k >= 3`), so the supremum
//! splits into two parity classes. Each class is scanned upward and the scan
//! stops at the first `k` with `x >= k! / (k+1)^(k-1)`: from that point on
//! the whole term sequence is decreasing (the thresholds themselves decrease
//! towards zero, which also guarantees termination for every `x > 0`).

use crate::model::{OrbitPoint, eval_f, eval_f_derivative};

/// `k!` for `k <= 22`, the full range where the factorial is exactly
/// representable in binary64.
const FACTORIALS: [f64; 23] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
];

/// Largest `k` evaluated in the direct domain; beyond this the scan works
/// with logarithms (`k!` overflows binary64 at `k = 171`).
const DIRECT_K_MAX: u32 = 20;

/// Hard cap on the scan. The stop threshold falls below the smallest
/// positive subnormal around `k = 760`, so this is unreachable.
const SCAN_K_CAP: u32 = 2_000;

/// Outcome of the alpha-test for one `(point, starter)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaReport {
    pub beta: f64,
    pub gamma: f64,
    /// Exact product of the stored `beta` and `gamma` fields.
    pub alpha: f64,
    /// Strict comparison `alpha < alpha0()`.
    pub passes: bool,
    /// Smallest `k` achieving the supremum in `gamma`; 0 when `gamma = 0`.
    pub gamma_argmax_k: u32,
}

/// The Smale/Wang-Han threshold `3 - 2 sqrt(2)`, about `0.1715728`.
pub fn alpha0() -> f64 {
    3.0 - 2.0 * 2.0f64.sqrt()
}

/// `beta = |f(E~) / f'(E~)|`, the absolute length of the first Newton step.
pub fn beta(p: &OrbitPoint, e_tilde: f64) -> f64 {
    (eval_f(p, e_tilde) / eval_f_derivative(p, e_tilde, 1)).abs()
}

/// `gamma` together with the smallest `k` achieving the supremum.
pub fn gamma(p: &OrbitPoint, e_tilde: f64) -> (f64, u32) {
    let f_prime = eval_f_derivative(p, e_tilde, 1);
    let x_even = p.e() * e_tilde.sin().abs() / f_prime;
    let x_odd = p.e() * e_tilde.cos().abs() / f_prime;
    let (even_sup, even_k, _) = parity_class_sup(x_even, 2);
    let (odd_sup, odd_k, _) = parity_class_sup(x_odd, 3);
    if even_sup == 0.0 && odd_sup == 0.0 {
        (0.0, 0)
    } else if even_sup > odd_sup {
        (even_sup, even_k)
    } else if odd_sup > even_sup {
        (odd_sup, odd_k)
    } else {
        (even_sup, even_k.min(odd_k))
    }
}

/// Supremum of `(x / k!)^(1/(k-1))` over one parity class starting at
/// `first_k` (2 for even, 3 for odd), with the argmax and the number of
/// terms inspected. Classes with `x = 0` contribute exactly 0.
fn parity_class_sup(x: f64, first_k: u32) -> (f64, u32, u32) {
    if x == 0.0 {
        return (0.0, 0, 0);
    }
    debug_assert!(x > 0.0 && x.is_finite());
    let ln_x = x.ln();
    let mut ln_factorial = FACTORIALS[first_k as usize].ln();
    let mut best = 0.0f64;
    let mut best_k = 0u32;
    let mut k = first_k;
    let mut inspected = 0u32;
    loop {
        inspected += 1;
        let km1 = (k - 1) as f64;
        let term = if k == 2 {
            0.5 * x
        } else if k <= DIRECT_K_MAX {
            (x / FACTORIALS[k as usize]).powf(1.0 / km1)
        } else {
            ((ln_x - ln_factorial) / km1).exp()
        };
        if term > best {
            best = term;
            best_k = k;
        }
        let past_peak = if k <= DIRECT_K_MAX {
            x >= FACTORIALS[k as usize] / ((k + 1) as f64).powi(k as i32 - 1)
        } else {
            ln_x >= ln_factorial - km1 * ((k + 1) as f64).ln()
        };
        if past_peak {
            return (best, best_k, inspected);
        }
        k += 2;
        assert!(k < SCAN_K_CAP, "gamma scan failed to terminate for x = {x}");
        ln_factorial = if (k as usize) < FACTORIALS.len() {
            FACTORIALS[k as usize].ln()
        } else {
            ln_factorial + (((k - 1) as f64) * (k as f64)).ln()
        };
    }
}

/// Exhaustive oracle for [`gamma`]: the maximum of
/// `(|f^(k)(E~)| / (k! f'(E~)))^(1/(k-1))` over `k = 2..=k_max`, evaluated in
/// the logarithmic domain so the factorial never overflows.
///
/// Panics if `k_max < 2`.
pub fn gamma_bruteforce(p: &OrbitPoint, e_tilde: f64, k_max: u32) -> f64 {
    assert!(k_max >= 2, "k_max must be at least 2");
    let ln_f_prime = eval_f_derivative(p, e_tilde, 1).ln();
    let mut best = 0.0f64;
    let mut ln_factorial = 0.0f64;
    for k in 2..=k_max {
        ln_factorial += (k as f64).ln();
        let magnitude = eval_f_derivative(p, e_tilde, k).abs();
        if magnitude == 0.0 {
            continue;
        }
        let ln_x = magnitude.ln() - ln_f_prime;
        let term = ((ln_x - ln_factorial) / (k - 1) as f64).exp();
        if term > best {
            best = term;
        }
    }
    best
}

/// Runs the full alpha-test for a candidate starter.
pub fn alpha_test(p: &OrbitPoint, e_tilde: f64) -> AlphaReport {
    let beta_value = beta(p, e_tilde);
    let (gamma_value, gamma_argmax_k) = gamma(p, e_tilde);
    let alpha = beta_value * gamma_value;
    AlphaReport {
        beta: beta_value,
        gamma: gamma_value,
        alpha,
        passes: alpha < alpha0(),
        gamma_argmax_k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::bisection_oracle;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn point(e: f64, m: f64) -> OrbitPoint {
        OrbitPoint::new(e, m).unwrap()
    }

    #[test]
    fn alpha0_matches_the_reference_value() {
        let a0 = alpha0();
        assert!((a0 - 0.171_572_875_253_809_9).abs() < 1e-15);
        assert!(a0 < 0.1715729);
        assert!(6.0 * a0 > 1.0);
    }

    #[test]
    fn factorial_table_is_consistent() {
        for k in 1..FACTORIALS.len() {
            assert_eq!(FACTORIALS[k], FACTORIALS[k - 1] * k as f64);
        }
    }

    #[test]
    fn beta_examples() {
        // At the exact root the Newton step vanishes (up to the oracle width).
        let p = point(0.5, 0.5);
        let root = bisection_oracle(&p, 1e-15);
        assert!(beta(&p, root) < 1e-14);

        // e = 0: beta = |E - M| / 1.
        assert_eq!(beta(&point(0.0, 1.0), 2.0), 1.0);

        // 0.5 sin(1) / (1 - 0.5 cos(1)).
        let b = beta(&point(0.5, 1.0), 1.0);
        let expected = 0.5 * 1.0f64.sin() / (1.0 - 0.5 * 1.0f64.cos());
        assert!((b - expected).abs() < 1e-16);
        assert!((b - 0.576_469_352_654_799_1).abs() < 1e-15);
    }

    #[test]
    fn gamma_vanishes_for_circular_orbits() {
        for e_tilde in [0.0, 0.3, 1.0, PI] {
            assert_eq!(gamma(&point(0.0, 1.0), e_tilde), (0.0, 0));
        }
        assert_eq!(gamma_bruteforce(&point(0.0, 1.0), 1.0, 50), 0.0);
    }

    #[test]
    fn gamma_at_zero_matches_the_odd_class_formula() {
        // At E~ = 0 only the odd class survives; at e = 3/11 the class sits
        // exactly at the scan's stop threshold and the supremum collapses to
        // sqrt(e / (6 (1 - e))) = sqrt(1/16) = 1/4.
        let e = 3.0 / 11.0;
        let (g, argmax) = gamma(&point(e, 0.5), 0.0);
        assert!((g - 0.25).abs() < 1e-15, "gamma = {g}");
        assert_eq!(argmax, 3);
    }

    #[test]
    fn gamma_example_at_half_eccentricity() {
        let p = point(0.5, 1.0);
        let (g, argmax) = gamma(&p, 1.0);
        // x_even ~ 0.5765 < 2/3, so the even scan compares k = 2 and k = 4
        // and the cube-root term wins.
        assert_eq!(argmax, 4);
        assert!((g - 0.288_528_240_437_004_4).abs() < 1e-14);
        let oracle = gamma_bruteforce(&p, 1.0, 200);
        assert!((g - oracle).abs() <= 1e-12 * oracle.max(1.0));
    }

    #[test]
    fn gamma_matches_bruteforce_in_the_corner_stress_case() {
        let p = point(0.99, 0.01);
        let (g, _) = gamma(&p, 0.5);
        let oracle = gamma_bruteforce(&p, 0.5, 200);
        assert!((g - oracle).abs() <= 1e-12 * oracle.max(1.0));
    }

    #[test]
    #[should_panic(expected = "k_max")]
    fn bruteforce_rejects_small_k_max() {
        gamma_bruteforce(&point(0.5, 1.0), 1.0, 1);
    }

    #[test]
    fn scan_terminates_quickly_even_for_tiny_x() {
        let (_, _, inspected) = parity_class_sup(1e-308, 2);
        assert!(inspected <= 1000, "inspected {inspected} terms");
        let (_, _, inspected) = parity_class_sup(1e-308, 3);
        assert!(inspected <= 1000, "inspected {inspected} terms");
    }

    #[test]
    fn direct_and_log_term_evaluation_agree() {
        for x in [1e-6, 1e-3, 0.1, 0.5, 2.0 / 3.0, 10.0, 1e4f64] {
            let ln_x = x.ln();
            for k in 2u32..=20 {
                let km1 = (k - 1) as f64;
                let direct = (x / FACTORIALS[k as usize]).powf(1.0 / km1);
                let logged = ((ln_x - FACTORIALS[k as usize].ln()) / km1).exp();
                assert!(
                    (direct - logged).abs() <= 4e-15 * direct.max(1e-300),
                    "k = {k}, x = {x}: {direct} vs {logged}"
                );
            }
        }
    }

    #[test]
    fn alpha_test_examples() {
        // Exact root: beta ~ 0, certain pass.
        let p = point(0.5, 0.5);
        let root = bisection_oracle(&p, 1e-15);
        let report = alpha_test(&p, root);
        assert!(report.passes);
        assert!(report.alpha < 1e-14);

        // A genuinely zero alpha: e = 0 kills every higher derivative.
        let report = alpha_test(&point(0.0, 1.0), 2.0);
        assert_eq!(report.alpha, 0.0);
        assert!(report.passes);

        // 2*pi/3 inside its certified region.
        let report = alpha_test(&point(0.9, 1.0), 2.0 * PI / 3.0);
        assert!(report.passes);

        let report = alpha_test(&point(0.5, 1.0), 1.0);
        assert!((report.alpha - 0.166_327_687_987_348_18).abs() < 1e-14);
        assert!(report.passes);
    }

    #[test]
    fn report_fields_are_consistent() {
        let report = alpha_test(&point(0.7, 0.3), 0.8);
        assert_eq!(report.alpha, report.beta * report.gamma);
        assert_eq!(report.passes, report.alpha < alpha0());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn gamma_agrees_with_the_bruteforce_oracle(
            e in 0.0..0.9999f64,
            m in 0.0..PI,
            e_tilde in 0.0..PI,
        ) {
            let p = point(e, m);
            let (g, _) = gamma(&p, e_tilde);
            let oracle = gamma_bruteforce(&p, e_tilde, 200);
            prop_assert!(
                (g - oracle).abs() <= 1e-12 * g.max(1.0),
                "gamma = {g}, oracle = {oracle} at e = {e}, E~ = {e_tilde}"
            );
        }

        #[test]
        fn gamma_depends_only_on_derivative_magnitudes(
            e in 0.0..0.9999f64,
            m in 0.0..PI,
            e_tilde in 0.0..PI,
        ) {
            // sin is odd and cos even, so E~ and -E~ see the same magnitudes.
            let p = point(e, m);
            let (plus, _) = gamma(&p, e_tilde);
            let (minus, _) = gamma(&p, -e_tilde);
            prop_assert!((plus - minus).abs() <= 1e-15 * plus.max(1.0));
        }

        #[test]
        fn alpha_passes_at_the_oracle_root(e in 0.0..0.999f64, m in 0.0..PI) {
            let p = point(e, m);
            let root = bisection_oracle(&p, 1e-15);
            prop_assert!(alpha_test(&p, root).passes);
        }
    }
}
