//! Low-discrepancy sampling of the canonical domain and of the analytic
//! regions.

use std::f64::consts::PI;

use kepler_alpha::{OrbitPoint, RegionId, in_region};

/// Van der Corput radical inverse of `index` in the given base.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv_base = 1.0 / base as f64;
    let mut factor = inv_base;
    let mut result = 0.0;
    while index > 0 {
        result += factor * (index % base) as f64;
        index /= base;
        factor *= inv_base;
    }
    result
}

/// The `index`-th point of the Halton (2, 3) sequence mapped onto
/// `[0, 1) x [0, pi]`.
pub fn halton_point(index: u64) -> (f64, f64) {
    (radical_inverse(index, 2), PI * radical_inverse(index, 3))
}

/// `count` low-discrepancy points inside `region`, by rejection from the
/// canonical rectangle. The seed offsets the Halton index, so suites stay
/// reproducible under `--seed`.
///
/// Panics if the rejection budget is exhausted, which would mean the region
/// predicate rejects essentially everything; the thinnest analytic region
/// still covers a few percent of the rectangle.
pub fn region_points(region: RegionId, count: usize, seed: u64) -> Vec<OrbitPoint> {
    let mut points = Vec::with_capacity(count);
    let mut index = 1 + seed.wrapping_mul(1_000_003);
    let budget = (count as u64).saturating_mul(10_000);
    let mut draws = 0u64;
    while points.len() < count {
        draws += 1;
        assert!(
            draws <= budget,
            "rejection sampling starved for region {} after {draws} draws",
            region.name()
        );
        let (e, m) = halton_point(index);
        index += 1;
        let p = OrbitPoint::new(e, m).expect("halton point is in the canonical domain");
        if in_region(region, &p) {
            points.push(p);
        }
    }
    points
}

/// `count` low-discrepancy points of the canonical rectangle, filtered by
/// an arbitrary keep-predicate (used to stay clear of a table's corner).
pub fn domain_points(count: usize, seed: u64, keep: impl Fn(&OrbitPoint) -> bool) -> Vec<OrbitPoint> {
    let mut points = Vec::with_capacity(count);
    let mut index = 1 + seed.wrapping_mul(1_000_003);
    let budget = (count as u64).saturating_mul(10_000);
    let mut draws = 0u64;
    while points.len() < count {
        draws += 1;
        assert!(draws <= budget, "domain sampling starved after {draws} draws");
        let (e, m) = halton_point(index);
        index += 1;
        let p = OrbitPoint::new(e, m).expect("halton point is in the canonical domain");
        if keep(&p) {
            points.push(p);
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base_two_prefix() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert_eq!(radical_inverse(4, 2), 0.125);
    }

    #[test]
    fn region_sampling_lands_inside() {
        for region in RegionId::ALL {
            let points = region_points(region, 200, 0);
            assert_eq!(points.len(), 200);
            for p in &points {
                assert!(in_region(region, p), "{} sample escaped", region.name());
            }
        }
    }

    #[test]
    fn seeds_shift_the_sequence() {
        let a = region_points(RegionId::R1, 10, 0);
        let b = region_points(RegionId::R1, 10, 1);
        assert_ne!(a[0].m(), b[0].m());
        let a_again = region_points(RegionId::R1, 10, 0);
        assert_eq!(a[0].e(), a_again[0].e());
    }
}
