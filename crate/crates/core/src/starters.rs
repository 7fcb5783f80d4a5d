//! Starter formulas and the regions where they are certified.
//!
//! Three families live here: the classical starters S1-S10 collected from
//! the literature, the analytic starters (the constants 0, pi, 2pi/3, pi/2,
//! the rational M/(1-e) and the cube-root corner formula) with their
//! certified regions R1-R7, and the five-branch piecewise starter that is
//! certified on the whole canonical domain.

use std::f64::consts::PI;

use crate::alpha::alpha0;
use crate::error::KeplerError;
use crate::model::OrbitPoint;

/// Every starter formula implemented by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarterKind {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    Zero,
    Pi,
    TwoPiOver3,
    PiOver2,
    MOverOneMinusE,
    CubeRootCorner,
    Thm1,
}

impl StarterKind {
    pub const ALL: [StarterKind; 17] = [
        StarterKind::S1,
        StarterKind::S2,
        StarterKind::S3,
        StarterKind::S4,
        StarterKind::S5,
        StarterKind::S6,
        StarterKind::S7,
        StarterKind::S8,
        StarterKind::S9,
        StarterKind::S10,
        StarterKind::Zero,
        StarterKind::Pi,
        StarterKind::TwoPiOver3,
        StarterKind::PiOver2,
        StarterKind::MOverOneMinusE,
        StarterKind::CubeRootCorner,
        StarterKind::Thm1,
    ];

    pub const CLASSICAL: [StarterKind; 10] = [
        StarterKind::S1,
        StarterKind::S2,
        StarterKind::S3,
        StarterKind::S4,
        StarterKind::S5,
        StarterKind::S6,
        StarterKind::S7,
        StarterKind::S8,
        StarterKind::S9,
        StarterKind::S10,
    ];

    pub fn is_classical(self) -> bool {
        matches!(
            self,
            StarterKind::S1
                | StarterKind::S2
                | StarterKind::S3
                | StarterKind::S4
                | StarterKind::S5
                | StarterKind::S6
                | StarterKind::S7
                | StarterKind::S8
                | StarterKind::S9
                | StarterKind::S10
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            StarterKind::S1 => "s1",
            StarterKind::S2 => "s2",
            StarterKind::S3 => "s3",
            StarterKind::S4 => "s4",
            StarterKind::S5 => "s5",
            StarterKind::S6 => "s6",
            StarterKind::S7 => "s7",
            StarterKind::S8 => "s8",
            StarterKind::S9 => "s9",
            StarterKind::S10 => "s10",
            StarterKind::Zero => "zero",
            StarterKind::Pi => "pi",
            StarterKind::TwoPiOver3 => "two-pi-over-3",
            StarterKind::PiOver2 => "pi-over-2",
            StarterKind::MOverOneMinusE => "m-over-1-minus-e",
            StarterKind::CubeRootCorner => "cube-root-corner",
            StarterKind::Thm1 => "thm1",
        }
    }
}

/// Which branch of the piecewise starter produced a value. Starters with a
/// single formula report [`StarterBranch::Direct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StarterBranch {
    MeanAnomaly,
    TwoPiOver3,
    PiOver2,
    MOverOneMinusE,
    CubeRoot,
    Direct,
}

impl StarterBranch {
    pub fn name(self) -> &'static str {
        match self {
            StarterBranch::MeanAnomaly => "m",
            StarterBranch::TwoPiOver3 => "two-pi-over-3",
            StarterBranch::PiOver2 => "pi-over-2",
            StarterBranch::MOverOneMinusE => "m-over-1-minus-e",
            StarterBranch::CubeRoot => "cube-root",
            StarterBranch::Direct => "direct",
        }
    }
}

/// An initial guess for the eccentric anomaly, tagged with the branch that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarterValue {
    pub value: f64,
    pub branch: StarterBranch,
}

impl StarterValue {
    fn direct(value: f64) -> Self {
        Self {
            value,
            branch: StarterBranch::Direct,
        }
    }
}

/// The cube-root corner formula `(6 M e^2)^(1/3) / e - 2 (1 - e) / (6 M e^2)^(1/3)`.
///
/// Callers must keep `M > 0` and `e > 0` away from this.
pub(crate) fn cube_root_starter(e: f64, m: f64) -> f64 {
    let c = (6.0 * m * e * e).cbrt();
    c / e - 2.0 * (1.0 - e) / c
}

/// Right-hand side of the piecewise starter's fourth branch condition,
/// `(12 alpha0)^(1/4) (1 - e)^(3/2) / sqrt(e)`. Also the M-bound of R6.
pub(crate) fn rational_branch_bound(e: f64) -> f64 {
    (12.0 * alpha0()).powf(0.25) * (1.0 - e).powf(1.5) / e.sqrt()
}

/// Evaluates one of the classical starters S1-S10 verbatim.
///
/// S10 divides by `e` twice and is a domain error at `e = 0`; callers that
/// want a total function substitute S1 there themselves.
///
/// Panics if `kind` is not one of S1-S10.
pub fn classical_starter(kind: StarterKind, p: &OrbitPoint) -> Result<StarterValue, KeplerError> {
    let (e, m) = (p.e(), p.m());
    let value = match kind {
        StarterKind::S1 => m,
        StarterKind::S2 => m + e * m.sin(),
        StarterKind::S3 => m + e * m.sin() * (1.0 + e * m.cos()),
        StarterKind::S4 => m + e,
        StarterKind::S5 => m + e * m.sin() / (1.0 - (m + e).sin() + m.sin()),
        StarterKind::S6 => m + e * (PI - m) / (1.0 + e),
        StarterKind::S7 => {
            let s4 = m + e;
            let s6 = m + e * (PI - m) / (1.0 + e);
            (m / (1.0 - e)).min(s4).min(s6)
        }
        StarterKind::S8 => {
            let s3 = m + e * m.sin() * (1.0 + e * m.cos());
            s3 + e.powi(4) * (PI - s3) / (20.0 * PI)
        }
        StarterKind::S9 => m + e * m.sin() * (1.0 - 2.0 * e * m.cos() + e * e).powf(-0.5),
        StarterKind::S10 => {
            if e == 0.0 {
                return Err(KeplerError::StarterUndefined {
                    kind: "s10",
                    why: "r = 3M/e and q = 2(1-e)/e divide by e",
                });
            }
            let r = 3.0 * m / e;
            let q = 2.0 * (1.0 - e) / e;
            let s = ((r * r + q * q * q).sqrt() + r).cbrt();
            s - q / s
        }
        other => panic!("classical_starter called with non-classical kind {other:?}"),
    };
    Ok(StarterValue::direct(value))
}

/// Evaluates one of the analytic starters.
///
/// Panics if `kind` is not one of Zero, Pi, TwoPiOver3, PiOver2,
/// MOverOneMinusE, CubeRootCorner.
pub fn analytic_starter(kind: StarterKind, p: &OrbitPoint) -> Result<StarterValue, KeplerError> {
    let (e, m) = (p.e(), p.m());
    let value = match kind {
        StarterKind::Zero => 0.0,
        StarterKind::Pi => PI,
        StarterKind::TwoPiOver3 => 2.0 * PI / 3.0,
        StarterKind::PiOver2 => PI / 2.0,
        // e < 1 is an OrbitPoint invariant, so the division is safe.
        StarterKind::MOverOneMinusE => m / (1.0 - e),
        StarterKind::CubeRootCorner => {
            if m <= 0.0 {
                return Err(KeplerError::StarterUndefined {
                    kind: "cube-root-corner",
                    why: "requires M > 0",
                });
            }
            if e <= 0.0 {
                return Err(KeplerError::StarterUndefined {
                    kind: "cube-root-corner",
                    why: "requires e > 0",
                });
            }
            cube_root_starter(e, m)
        }
        other => panic!("analytic_starter called with non-analytic kind {other:?}"),
    };
    Ok(StarterValue::direct(value))
}

/// The certified piecewise starter, total on `[0, 1) x [0, pi]`.
///
/// The five branches are tried in order, first match wins:
///
/// 1. `M`                 if `e <= 1/2` or `M >= 2pi/3`
/// 2. `2pi/3`             if `e >= 1/2` and `pi/4 <= M <= 2pi/3`
/// 3. `pi/2`              if `e >= 1/2` and `pi/7 <= M <= pi/4`
/// 4. `M / (1 - e)`       if `e >= 1/2`, `M <= pi/7` and
///    `M < (12 alpha0)^(1/4) (1-e)^(3/2) / sqrt(e)`
/// 5. the cube-root corner formula otherwise.
///
/// Branch 5 can only fire with `M > 0`: at `M = 0` the branch-4 bound is
/// strictly positive, so branch 4 catches the point first.
pub fn thm1_starter(p: &OrbitPoint) -> StarterValue {
    let (e, m) = (p.e(), p.m());
    if e <= 0.5 || m >= 2.0 * PI / 3.0 {
        return StarterValue {
            value: m,
            branch: StarterBranch::MeanAnomaly,
        };
    }
    if e >= 0.5 && (PI / 4.0..=2.0 * PI / 3.0).contains(&m) {
        return StarterValue {
            value: 2.0 * PI / 3.0,
            branch: StarterBranch::TwoPiOver3,
        };
    }
    if e >= 0.5 && (PI / 7.0..=PI / 4.0).contains(&m) {
        return StarterValue {
            value: PI / 2.0,
            branch: StarterBranch::PiOver2,
        };
    }
    if e >= 0.5 && m <= PI / 7.0 && m < rational_branch_bound(e) {
        return StarterValue {
            value: m / (1.0 - e),
            branch: StarterBranch::MOverOneMinusE,
        };
    }
    debug_assert!(m > 0.0, "cube-root branch is unreachable at M = 0");
    StarterValue {
        value: cube_root_starter(e, m),
        branch: StarterBranch::CubeRoot,
    }
}

/// Dispatches any [`StarterKind`] to its formula.
pub fn evaluate_starter(kind: StarterKind, p: &OrbitPoint) -> Result<StarterValue, KeplerError> {
    match kind {
        k if k.is_classical() => classical_starter(k, p),
        StarterKind::Thm1 => Ok(thm1_starter(p)),
        k => analytic_starter(k, p),
    }
}

/// The analytic regions where the simple starters carry a certificate,
/// each a decidable predicate on the canonical domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    /// Region where `E~ = M` is certified: `{e <= 1/2} u {M >= 2pi/3} u R2`.
    ThmEM,
    /// Region where `E~ = 2pi/3` is certified.
    ThmE2Pi3,
    /// Region where `E~ = pi/2` is certified.
    ThmEPi2,
}

impl RegionId {
    pub const ALL: [RegionId; 10] = [
        RegionId::R1,
        RegionId::R2,
        RegionId::R3,
        RegionId::R4,
        RegionId::R5,
        RegionId::R6,
        RegionId::R7,
        RegionId::ThmEM,
        RegionId::ThmE2Pi3,
        RegionId::ThmEPi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionId::R1 => "R1",
            RegionId::R2 => "R2",
            RegionId::R3 => "R3",
            RegionId::R4 => "R4",
            RegionId::R5 => "R5",
            RegionId::R6 => "R6",
            RegionId::R7 => "R7",
            RegionId::ThmEM => "thm-E-M",
            RegionId::ThmE2Pi3 => "thm-E-2pi3",
            RegionId::ThmEPi2 => "thm-E-pi2",
        }
    }
}

/// The starter each region certifies.
pub fn starter_for_region(region: RegionId) -> StarterKind {
    match region {
        RegionId::R1 | RegionId::R2 => StarterKind::Zero,
        RegionId::R3 | RegionId::R4 => StarterKind::Pi,
        RegionId::R5 | RegionId::R6 => StarterKind::MOverOneMinusE,
        RegionId::R7 => StarterKind::CubeRootCorner,
        RegionId::ThmEM => StarterKind::S1,
        RegionId::ThmE2Pi3 => StarterKind::TwoPiOver3,
        RegionId::ThmEPi2 => StarterKind::PiOver2,
    }
}

/// Evaluates a region's defining inequalities. Boundary strictness is part
/// of each region's definition and is preserved exactly.
pub fn in_region(region: RegionId, p: &OrbitPoint) -> bool {
    let (e, m) = (p.e(), p.m());
    let a0 = alpha0();
    match region {
        RegionId::R1 => e <= 3.0 / 11.0 && m <= 4.0 * a0 * (1.0 - e),
        RegionId::R2 => {
            e >= 3.0 / 11.0 && m <= 6.0f64.sqrt() * a0 * (1.0 - e).powf(1.5) / e.sqrt()
        }
        RegionId::R3 => e <= 3.0 / 5.0 && m > PI - 4.0 * a0 * (1.0 + e),
        RegionId::R4 => {
            e >= 3.0 / 5.0 && m > PI - 6.0f64.sqrt() * a0 * (1.0 + e).powf(1.5) / e.sqrt()
        }
        // At e = 0 both bounds are +inf and every M qualifies; the starter
        // M/(1-e) is exact there.
        RegionId::R5 => {
            e <= 3.0 / 11.0
                && m < rational_branch_bound(e)
                    .min((24.0 * a0).powf(1.0 / 3.0) * (1.0 - e).powf(4.0 / 3.0) / e.powf(1.0 / 3.0))
        }
        RegionId::R6 => e >= 3.0 / 11.0 && m < rational_branch_bound(e),
        RegionId::R7 => {
            e >= 3.0 / 11.0
                && m <= PI / 7.0
                && m > 8.0 * (1.0 - e).powf(1.5) / (27.0 * 6.0f64.sqrt() * a0 * e.sqrt())
        }
        RegionId::ThmEM => e <= 0.5 || m >= 2.0 * PI / 3.0 || in_region(RegionId::R2, p),
        RegionId::ThmE2Pi3 => e >= 0.5 && (PI / 4.0..=2.0 * PI / 3.0).contains(&m),
        RegionId::ThmEPi2 => e >= 0.5 && (PI / 7.0..=PI / 4.0).contains(&m),
    }
}

/// One failed inclusion found by [`containment_checks`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContainmentViolation {
    pub check: &'static str,
    pub e: f64,
    pub m: f64,
}

/// Outcome of the region-containment sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentReport {
    pub points_checked: u64,
    pub violations: Vec<ContainmentViolation>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the region inclusions the piecewise starter relies on, by dense
/// sampling on a 1000 x 1000 grid (one million points): `R1 ue R5`,
/// `R2 ue R6`, and every cube-root branch point lies in `R7`. The scalar
/// inequality `(12 alpha0)^(1/4) > 8 / (27 sqrt(6) alpha0)` that makes the
/// last inclusion work is checked first.
pub fn containment_checks() -> ContainmentReport {
    let mut violations = Vec::new();
    let a0 = alpha0();
    let quartic = (12.0 * a0).powf(0.25);
    let r7_coefficient = 8.0 / (27.0 * 6.0f64.sqrt() * a0);
    let quartic_dominates = quartic > r7_coefficient;
    if !quartic_dominates {
        violations.push(ContainmentViolation {
            check: "(12 alpha0)^(1/4) > 8 / (27 sqrt(6) alpha0)",
            e: f64::NAN,
            m: f64::NAN,
        });
    }

    const GRID: u64 = 1000;
    let mut points_checked = 0;
    for i in 0..GRID {
        let e = i as f64 / GRID as f64;
        for j in 0..GRID {
            let m = PI * (j as f64 / GRID as f64);
            points_checked += 1;
            let p = OrbitPoint::new(e, m).expect("grid point is in the canonical domain");
            if in_region(RegionId::R1, &p) && !in_region(RegionId::R5, &p) {
                violations.push(ContainmentViolation {
                    check: "R1 in R5",
                    e,
                    m,
                });
            }
            if in_region(RegionId::R2, &p) && !in_region(RegionId::R6, &p) {
                violations.push(ContainmentViolation {
                    check: "R2 in R6",
                    e,
                    m,
                });
            }
            if thm1_starter(&p).branch == StarterBranch::CubeRoot && !in_region(RegionId::R7, &p) {
                violations.push(ContainmentViolation {
                    check: "thm1 cube-root branch in R7",
                    e,
                    m,
                });
            }
        }
    }
    ContainmentReport {
        points_checked,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::alpha_test;
    use crate::model::eval_f;
    use proptest::prelude::*;

    fn point(e: f64, m: f64) -> OrbitPoint {
        OrbitPoint::new(e, m).unwrap()
    }

    fn starter(kind: StarterKind, e: f64, m: f64) -> f64 {
        evaluate_starter(kind, &point(e, m)).unwrap().value
    }

    #[test]
    fn table_one_spot_values() {
        assert_eq!(starter(StarterKind::S1, 0.3, 1.0), 1.0);
        assert_eq!(starter(StarterKind::S4, 0.3, 1.0), 1.3);
        let s2 = starter(StarterKind::S2, 0.3, 1.0);
        assert!((s2 - (1.0 + 0.3 * 1.0f64.sin())).abs() < 1e-16);
    }

    #[test]
    fn s7_is_the_minimum_of_its_three_candidates() {
        for (e, m) in [(0.1, 0.2), (0.9, 0.05), (0.5, 2.0), (0.99, 3.0)] {
            let p = point(e, m);
            let s7 = classical_starter(StarterKind::S7, &p).unwrap().value;
            let s4 = classical_starter(StarterKind::S4, &p).unwrap().value;
            let s6 = classical_starter(StarterKind::S6, &p).unwrap().value;
            let rational = m / (1.0 - e);
            assert_eq!(s7, rational.min(s4).min(s6));
        }
    }

    #[test]
    fn s10_solves_the_depressed_cubic() {
        // The closed form is the real root of E(1-e) + e E^3 / 6 = M.
        let s10 = starter(StarterKind::S10, 0.5, PI);
        let residual = s10 * 0.5 + 0.5 * s10.powi(3) / 6.0 - PI;
        assert!(residual.abs() < 1e-12, "residual {residual}");
        assert!((s10 - 2.763_965_147_206_756).abs() < 1e-12);
    }

    #[test]
    fn s10_is_rejected_at_zero_eccentricity() {
        assert!(matches!(
            classical_starter(StarterKind::S10, &point(0.0, 1.0)),
            Err(KeplerError::StarterUndefined { kind: "s10", .. })
        ));
    }

    proptest! {
        #[test]
        fn s10_root_property(e in 1e-6..(1.0 - 1e-6), m in 0.0..PI) {
            let s10 = starter(StarterKind::S10, e, m);
            let residual = s10 * (1.0 - e) + e * s10.powi(3) / 6.0 - m;
            prop_assert!(
                residual.abs() < 1e-10 * (1.0 + m),
                "residual {residual} at e = {e}, M = {m}"
            );
        }

        #[test]
        fn f_at_m_is_never_positive(e in 0.0..0.999999f64, m in 0.0..PI) {
            // f(M) = -e sin M <= 0 on [0, pi]: the M starter never overshoots.
            prop_assert!(eval_f(&point(e, m), m) <= 0.0);
        }
    }

    #[test]
    fn analytic_starter_examples() {
        assert_eq!(starter(StarterKind::Zero, 0.7, 2.0), 0.0);
        assert_eq!(starter(StarterKind::Pi, 0.7, 2.0), PI);
        assert_eq!(starter(StarterKind::MOverOneMinusE, 0.5, 0.1), 0.2);
        let corner = starter(StarterKind::CubeRootCorner, 1.0 - 1e-9, 0.001);
        assert!((corner - 0.181_712_048_337_360_8).abs() < 1e-12);
        // Thm 4.3 region: the alpha-test must accept it.
        assert!(alpha_test(&point(1.0 - 1e-9, 0.001), corner).passes);
    }

    #[test]
    fn cube_root_corner_domain_errors() {
        assert!(matches!(
            analytic_starter(StarterKind::CubeRootCorner, &point(0.5, 0.0)),
            Err(KeplerError::StarterUndefined { .. })
        ));
        assert!(matches!(
            analytic_starter(StarterKind::CubeRootCorner, &point(0.0, 0.5)),
            Err(KeplerError::StarterUndefined { .. })
        ));
    }

    #[test]
    fn thm1_branch_examples() {
        let s = thm1_starter(&point(0.3, 1.0));
        assert_eq!(s.value, 1.0);
        assert_eq!(s.branch, StarterBranch::MeanAnomaly);

        let s = thm1_starter(&point(0.9, 1.0));
        assert_eq!(s.value, 2.0 * PI / 3.0);
        assert_eq!(s.branch, StarterBranch::TwoPiOver3);

        let s = thm1_starter(&point(0.9, 0.6));
        assert_eq!(s.value, PI / 2.0);
        assert_eq!(s.branch, StarterBranch::PiOver2);

        // M below the branch-4 bound: 0.001 < (12 a0)^(1/4) * 0.5^1.5 / sqrt(0.5).
        let s = thm1_starter(&point(0.5000001, 0.001));
        assert_eq!(s.branch, StarterBranch::MOverOneMinusE);

        // M = 0.3 <= pi/7 but far above the branch-4 bound at e = 0.99.
        let s = thm1_starter(&point(0.99, 0.3));
        assert_eq!(s.branch, StarterBranch::CubeRoot);
        assert!((s.value - 1.2039704996096658).abs() < 1e-12);
        assert!(alpha_test(&point(0.99, 0.3), s.value).passes);
    }

    #[test]
    fn thm1_handles_the_left_edge_of_the_corner() {
        // M = 0 with large e must take the rational branch (the bound is
        // strictly positive), never the cube-root one.
        for e in [0.5000001, 0.75, 0.9, 0.999999] {
            let s = thm1_starter(&point(e, 0.0));
            assert_eq!(s.branch, StarterBranch::MOverOneMinusE);
            assert_eq!(s.value, 0.0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn thm1_branches_partition_the_domain(e in 0.0..0.999999f64, m in 0.0..PI) {
            let p = point(e, m);
            let s = thm1_starter(&p);
            prop_assert!(s.value.is_finite());
            // Re-derive the branch from the ordered conditions; it must agree.
            let expected = if e <= 0.5 || m >= 2.0 * PI / 3.0 {
                StarterBranch::MeanAnomaly
            } else if (PI / 4.0..=2.0 * PI / 3.0).contains(&m) {
                StarterBranch::TwoPiOver3
            } else if (PI / 7.0..=PI / 4.0).contains(&m) {
                StarterBranch::PiOver2
            } else if m < rational_branch_bound(e) {
                StarterBranch::MOverOneMinusE
            } else {
                StarterBranch::CubeRoot
            };
            prop_assert_eq!(s.branch, expected);
        }
    }

    #[test]
    fn region_examples() {
        assert!(in_region(RegionId::R1, &point(0.0, 0.0)));
        // 0.5 <= 4 alpha0 (1 - 0.2) = 0.549..., so the point is inside.
        assert!(in_region(RegionId::R1, &point(0.2, 0.5)));
        assert!(!in_region(RegionId::R1, &point(0.2, 0.56)));
        assert!(in_region(RegionId::ThmE2Pi3, &point(0.9, 1.0)));
        assert!(!in_region(RegionId::ThmE2Pi3, &point(0.4, 1.0)));
        // R2 excludes small eccentricities by definition.
        assert!(!in_region(RegionId::R2, &point(0.1, 0.01)));
        assert!(in_region(RegionId::R5, &point(0.0, 3.0)));
    }

    #[test]
    fn region_starters_pass_on_a_coarse_sample() {
        // A cheap in-module version of the soundness sweep; the verification
        // suite runs the full low-discrepancy version.
        let mut checked = 0u32;
        for region in RegionId::ALL {
            let kind = starter_for_region(region);
            for i in 0..40 {
                let e = i as f64 / 40.0;
                for j in 0..=40 {
                    let m = PI * (j as f64 / 40.0);
                    let p = point(e, m);
                    if !in_region(region, &p) {
                        continue;
                    }
                    let s = evaluate_starter(kind, &p).unwrap();
                    assert!(
                        alpha_test(&p, s.value).passes,
                        "{} failed at (e = {e}, M = {m})",
                        region.name()
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 500, "sample grid barely hit the regions");
    }

    #[test]
    fn containments_hold_on_the_dense_grid() {
        let report = containment_checks();
        assert_eq!(report.points_checked, 1_000_000);
        assert!(
            report.passed(),
            "violations: {:?}",
            &report.violations[..report.violations.len().min(5)]
        );
    }

    #[test]
    fn corner_bound_inequality_has_the_expected_magnitudes() {
        let quartic = (12.0 * alpha0()).powf(0.25);
        let r7_coefficient = 8.0 / (27.0 * 6.0f64.sqrt() * alpha0());
        assert!((quartic - 1.1977).abs() < 1e-3);
        assert!((r7_coefficient - 0.7051).abs() < 1e-3);
        assert!(quartic > r7_coefficient);
    }
}
