//! The verification suites behind `kepler-alpha verify`.
//!
//! Each suite reruns one slice of the certification story and reports one
//! PASS/FAIL line per check. Randomized suites draw every point from the
//! seed handed in, so runs are reproducible.

use std::f64::consts::PI;
use std::time::Instant;

use kepler_alpha::{
    LookupTable, OrbitPoint, RegionId, StarterKind, alpha_test, bisection_oracle, build_table,
    containment_checks, evaluate_starter, eval_f, fixed_point_baseline, newton_step,
    starter_for_region, table_starter, thm1_starter,
};

use crate::rng::SplitMix64;
use crate::sample::{domain_points, region_points};
use crate::sweep::{find_corner_failure, sweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Regions,
    Contraction,
    Thm1,
    Corner,
    Lookup,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Regions => "regions",
            Suite::Contraction => "contraction",
            Suite::Thm1 => "thm1",
            Suite::Corner => "corner",
            Suite::Lookup => "lookup",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub passed: bool,
    /// Reported but never gates the suite (the residual-monotonicity
    /// observation, which the certificate does not promise).
    pub informational: bool,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let tag = if check.informational {
                "INFO"
            } else if check.passed {
                "PASS"
            } else {
                "FAIL"
            };
            out.push_str(&format!("{tag} [{}] {}\n", self.suite.name(), check.label));
        }
        out
    }
}

fn check(passed: bool, label: String) -> CheckLine {
    CheckLine {
        passed,
        informational: false,
        label,
    }
}

pub fn run_suite(suite: Suite, samples: Option<u64>, seed: u64) -> SuiteReport {
    let checks = match suite {
        Suite::Regions => regions_suite(samples.unwrap_or(10_000) as usize, seed),
        Suite::Contraction => contraction_suite(samples.unwrap_or(1_000) as usize, seed),
        Suite::Thm1 => thm1_suite(samples.unwrap_or(1_000_000), seed),
        Suite::Corner => corner_suite(),
        Suite::Lookup => lookup_suite(samples.unwrap_or(10_000) as usize, seed),
    };
    SuiteReport { suite, checks }
}

/// Analytic-region soundness plus the containment sweep: every sampled
/// point of a certified region must pass the alpha-test with the starter
/// the region belongs to.
fn regions_suite(samples: usize, seed: u64) -> Vec<CheckLine> {
    let mut checks = Vec::new();
    for region in RegionId::ALL {
        let kind = starter_for_region(region);
        let mut failures = 0u64;
        let mut first_failure = None;
        for p in region_points(region, samples, seed) {
            let starter = evaluate_starter(kind, &p)
                .expect("region starters are defined on their own regions");
            if !alpha_test(&p, starter.value).passes {
                failures += 1;
                first_failure.get_or_insert((p.e(), p.m()));
            }
        }
        let label = match first_failure {
            None => format!(
                "{}: {samples} samples pass with starter {}",
                region.name(),
                kind.name()
            ),
            Some((e, m)) => format!(
                "{}: {failures} failures with starter {} (first at e = {e}, M = {m})",
                region.name(),
                kind.name()
            ),
        };
        checks.push(check(failures == 0, label));
    }

    let report = containment_checks();
    checks.push(check(
        report.passed(),
        format!(
            "containments R1 in R5, R2 in R6, cube-root branch in R7: {} violations on {} grid points",
            report.violations.len(),
            report.points_checked
        ),
    ));
    checks
}

/// Newton's certified contraction and the fixed-point baseline rate, each
/// against the bisection oracle.
fn contraction_suite(samples: usize, seed: u64) -> Vec<CheckLine> {
    let mut rng = SplitMix64::new(seed);
    let mut contraction_violations = 0u64;
    let mut rate_violations = 0u64;
    let mut residual_growth = 0u64;
    for _ in 0..samples {
        let p = OrbitPoint::new(rng.in_range(0.0, 0.999), rng.in_range(0.0, PI)).unwrap();
        let root = bisection_oracle(&p, 1e-15);
        let start = thm1_starter(&p).value;
        let initial = (start - root).abs();

        let mut current = start;
        let mut previous_residual = eval_f(&p, current).abs();
        for n in 1..=4u32 {
            current = newton_step(&p, current);
            let bound = 0.5f64.powi(2i32.pow(n) - 1) * initial + 1e-12;
            if (current - root).abs() > bound {
                contraction_violations += 1;
            }
            let residual = eval_f(&p, current).abs();
            if n >= 2 && residual > previous_residual {
                residual_growth += 1;
            }
            previous_residual = residual;
        }

        let mut iterate = p.m();
        for _ in 0..20 {
            let next = fixed_point_baseline(&p, iterate, 1);
            if (next - root).abs() > p.e() * (iterate - root).abs() + 1e-14 {
                rate_violations += 1;
            }
            iterate = next;
        }
    }
    vec![
        check(
            contraction_violations == 0,
            format!(
                "newton error within (1/2)^(2^n - 1) of the start error for n = 1..4 \
                 ({samples} points, {contraction_violations} violations)"
            ),
        ),
        check(
            rate_violations == 0,
            format!(
                "fixed-point error contracts by at least e per step over 20 steps \
                 ({samples} points, {rate_violations} violations)"
            ),
        ),
        CheckLine {
            passed: true,
            informational: true,
            label: format!(
                "newton residual grew between consecutive iterates {residual_growth} times \
                 (observation only; the certificate bounds the error, not the residual)"
            ),
        },
    ]
}

/// The headline claim: the piecewise starter passes the alpha-test on the
/// whole canonical domain.
fn thm1_suite(samples: u64, seed: u64) -> Vec<CheckLine> {
    let map = sweep(StarterKind::Thm1, 1000);
    let mut checks = vec![check(
        map.pass_fraction() == 1.0,
        format!(
            "grid sweep 1000: pass fraction {} over {} nodes",
            map.pass_fraction(),
            map.total_cells()
        ),
    )];

    let mut rng = SplitMix64::new(seed);
    let mut failures = 0u64;
    for _ in 0..samples {
        let p = OrbitPoint::new(rng.next_f64(), rng.in_range(0.0, PI)).unwrap();
        let starter = thm1_starter(&p);
        if !starter.value.is_finite() || !alpha_test(&p, starter.value).passes {
            failures += 1;
        }
    }
    checks.push(check(
        failures == 0,
        format!("{samples} seeded random points pass ({failures} failures)"),
    ));
    checks
}

/// The falsification probe: every classical starter must break near the
/// (1, 0) corner, while the certified starters must not.
fn corner_suite() -> Vec<CheckLine> {
    let mut checks = Vec::new();
    for kind in StarterKind::CLASSICAL {
        if kind == StarterKind::S10 {
            continue;
        }
        let found = find_corner_failure(kind, 0.99, 0.05);
        let label = match found {
            Some((e, m)) => format!("{} fails at (e = {e}, M = {m})", kind.name()),
            None => format!("{}: no corner failure found", kind.name()),
        };
        checks.push(check(found.is_some(), label));
    }
    for kind in [StarterKind::Thm1, StarterKind::S10] {
        let found = find_corner_failure(kind, 0.99, 0.05);
        let label = match found {
            None => format!("{} has no corner failure", kind.name()),
            Some((e, m)) => format!("{} unexpectedly fails at (e = {e}, M = {m})", kind.name()),
        };
        checks.push(check(found.is_none(), label));
    }
    checks
}

/// Builds and certifies the starter tables: entry invariants, alpha-test
/// soundness outside the corner, the serialization round trip, and the
/// production-size build.
fn lookup_suite(samples: usize, seed: u64) -> Vec<CheckLine> {
    let mut checks = Vec::new();

    let table = build_table(0.5).expect("eps = 0.5 is buildable");
    checks.push(check(
        table.size() == 60 && table.check_all_entries().is_ok(),
        format!(
            "eps = 0.5 table: N = {}, all {} entries satisfy the construction invariants",
            table.size(),
            table.size() * (table.size() + 1)
        ),
    ));

    let outside = outside_corner_points(&table, samples, seed);
    let mut alpha_failures = 0u64;
    let mut chain_failures = 0u64;
    let chain_bound = (PI + 2.0) / table.size() as f64;
    for p in &outside {
        let starter = table_starter(&table, p).expect("outside-corner query");
        if !alpha_test(p, starter.value).passes {
            alpha_failures += 1;
        }
        if eval_f(p, starter.value).abs() >= chain_bound {
            chain_failures += 1;
        }
    }
    checks.push(check(
        alpha_failures == 0,
        format!("{samples} outside-corner queries pass the alpha-test ({alpha_failures} failures)"),
    ));
    checks.push(check(
        chain_failures == 0,
        format!(
            "starter residual |f(E~)| < (pi + 2)/N at all {samples} queried points \
             ({chain_failures} failures)"
        ),
    ));

    let round_trip = LookupTable::from_bytes(&table.to_bytes());
    checks.push(check(
        round_trip.as_ref().is_ok_and(|t| *t == table),
        "binary serialization round-trips bit-exactly".to_string(),
    ));

    let started = Instant::now();
    let production = build_table(0.1).expect("eps = 0.1 is buildable");
    let elapsed = started.elapsed();
    checks.push(check(
        production.size() == 1499 && elapsed.as_secs_f64() < 60.0,
        format!(
            "eps = 0.1 table (N = {}) built in {:.2}s (budget 60s)",
            production.size(),
            elapsed.as_secs_f64()
        ),
    ));
    let mut spot_failures = 0u64;
    for p in outside_corner_points(&production, 1_000, seed ^ 0x5eed) {
        let starter = table_starter(&production, &p).expect("outside-corner query");
        if !alpha_test(&p, starter.value).passes {
            spot_failures += 1;
        }
    }
    checks.push(check(
        spot_failures == 0,
        format!("eps = 0.1 table: 1000 spot queries pass ({spot_failures} failures)"),
    ));
    checks
}

fn outside_corner_points(table: &LookupTable, count: usize, seed: u64) -> Vec<OrbitPoint> {
    let corner_e = 1.0 - table.eps();
    let corner_m = (1.0 - table.eps()).acos();
    domain_points(count, seed, |p| !(p.e() >= corner_e && p.m() <= corner_m))
}
