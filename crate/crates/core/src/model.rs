//! Problem domain: the Kepler function `f(E) = E - e sin E - M`, its
//! derivative cycle, anomaly normalization and ellipse geometry.
//!
//! Everything downstream (the alpha-test, the starters, the solver) works on
//! the canonical domain `e in [0, 1)`, `M in [0, pi]`. Raw mean anomalies are
//! folded into that rectangle by [`reduce_anomaly`] and unfolded again by
//! [`restore_anomaly`], using the reflection symmetry
//! `E(e, 2pi - M) = 2pi - E(e, M)` and the `2pi` periodicity in `M`.

use std::f64::consts::{PI, TAU};

use crate::error::KeplerError;

/// A validated problem instance: eccentricity `e` in `[0, 1)` and mean
/// anomaly `M` in the canonical range `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitPoint {
    e: f64,
    m: f64,
}

impl OrbitPoint {
    pub fn new(e: f64, m: f64) -> Result<Self, KeplerError> {
        if !(0.0..1.0).contains(&e) {
            return Err(KeplerError::EccentricityOutOfRange(e));
        }
        if !(0.0..=PI).contains(&m) {
            return Err(KeplerError::MeanAnomalyOutOfRange(m));
        }
        Ok(Self { e, m })
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn m(&self) -> f64 {
        self.m
    }
}

/// Result of folding a raw mean anomaly into the canonical domain.
///
/// `canonical_m` is the folded angle in `[0, pi]`; pair it with an
/// eccentricity via [`AnomalyReduction::orbit_point`] to get the canonical
/// problem instance. `reflected` is set exactly when the principal angle of
/// the input lay in `(pi, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomalyReduction {
    pub canonical_m: f64,
    pub reflected: bool,
    pub revolutions: i64,
}

impl AnomalyReduction {
    pub fn orbit_point(&self, e: f64) -> Result<OrbitPoint, KeplerError> {
        OrbitPoint::new(e, self.canonical_m)
    }
}

/// Folds any finite mean anomaly into `[0, pi]`, recording the number of
/// full revolutions and whether the angle was reflected about `pi`.
///
/// Exact multiples of `2pi` map to canonical `M = 0`, keeping the canonical
/// domain closed on the left.
pub fn reduce_anomaly(m_raw: f64) -> Result<AnomalyReduction, KeplerError> {
    if !m_raw.is_finite() {
        return Err(KeplerError::NonFiniteInput(m_raw));
    }
    let principal = m_raw.rem_euclid(TAU);
    let revolutions = ((m_raw - principal) / TAU).round() as i64;
    if principal <= PI {
        Ok(AnomalyReduction {
            canonical_m: principal,
            reflected: false,
            revolutions,
        })
    } else {
        Ok(AnomalyReduction {
            canonical_m: TAU - principal,
            reflected: true,
            revolutions,
        })
    }
}

/// Maps an eccentric anomaly solved on the canonical domain back to the
/// frame of the original raw mean anomaly.
pub fn restore_anomaly(e_canonical: f64, reduction: &AnomalyReduction) -> f64 {
    if reduction.reflected {
        TAU.mul_add((reduction.revolutions + 1) as f64, -e_canonical)
    } else {
        TAU.mul_add(reduction.revolutions as f64, e_canonical)
    }
}

/// The Kepler function `f(E) = E - e sin(E) - M`, strictly increasing on
/// `[0, pi]` with `f(0) <= 0 <= f(pi)`.
pub fn eval_f(p: &OrbitPoint, e_anomaly: f64) -> f64 {
    e_anomaly - p.e * e_anomaly.sin() - p.m
}

/// Signed `k`-th derivative of the Kepler function.
///
/// `f'(E) = 1 - e cos E`; from there the derivatives of `-e sin E` cycle
/// with period four: `f'' = e sin E`, `f''' = e cos E`, `f'''' = -e sin E`,
/// `f''''' = -e cos E`, and so on. Only the magnitudes (`e |sin E|` for even
/// `k`, `e |cos E|` for odd `k >= 3`) feed the alpha-test; the signs are
/// exposed for finite-difference checks.
///
/// Panics if `k == 0`.
pub fn eval_f_derivative(p: &OrbitPoint, e_anomaly: f64, k: u32) -> f64 {
    assert!(k >= 1, "derivative order must be at least 1");
    if k == 1 {
        return 1.0 - p.e * e_anomaly.cos();
    }
    match k % 4 {
        2 => p.e * e_anomaly.sin(),
        3 => p.e * e_anomaly.cos(),
        0 => -p.e * e_anomaly.sin(),
        _ => -p.e * e_anomaly.cos(),
    }
}

/// Orbit ellipse in its own plane, origin at the center, x-axis towards
/// the perihelion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    a: f64,
    b: f64,
}

impl EllipseGeometry {
    /// Builds the geometry from the semi-major axis and the eccentricity,
    /// deriving `b = a sqrt(1 - e^2)`.
    pub fn new(semi_major: f64, e: f64) -> Result<Self, KeplerError> {
        if !(semi_major.is_finite() && semi_major > 0.0) {
            return Err(KeplerError::SemiMajorAxisOutOfRange(semi_major));
        }
        if !(0.0..1.0).contains(&e) {
            return Err(KeplerError::EccentricityOutOfRange(e));
        }
        Ok(Self {
            a: semi_major,
            b: semi_major * (1.0 - e * e).sqrt(),
        })
    }

    /// Builds the geometry directly from both axes (`0 < b <= a`).
    pub fn from_axes(semi_major: f64, semi_minor: f64) -> Result<Self, KeplerError> {
        if !(semi_major.is_finite() && semi_major > 0.0) {
            return Err(KeplerError::SemiMajorAxisOutOfRange(semi_major));
        }
        if !(semi_minor.is_finite() && semi_minor > 0.0 && semi_minor <= semi_major) {
            return Err(KeplerError::SemiMajorAxisOutOfRange(semi_minor));
        }
        Ok(Self {
            a: semi_major,
            b: semi_minor,
        })
    }

    pub fn semi_major(&self) -> f64 {
        self.a
    }

    pub fn semi_minor(&self) -> f64 {
        self.b
    }

    pub fn eccentricity(&self) -> f64 {
        let ratio = self.b / self.a;
        (1.0 - ratio * ratio).max(0.0).sqrt()
    }
}

/// Planar coordinates of the orbiting body: `(a cos E, b sin E)`.
pub fn eccentric_to_position(g: &EllipseGeometry, e_anomaly: f64) -> (f64, f64) {
    (g.a * e_anomaly.cos(), g.b * e_anomaly.sin())
}
