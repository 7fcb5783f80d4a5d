//! Dense alpha-test sweeps over the canonical domain and the corner
//! falsification probe.

use std::f64::consts::PI;

use kepler_alpha::{OrbitPoint, StarterKind, alpha_test, evaluate_starter};
use rayon::prelude::*;

/// Outcome of the alpha-test at one grid node. `NotApplicable` marks nodes
/// where the starter formula itself is undefined (S10 at `e = 0`); those
/// count as failures in the pass fraction but are flagged distinctly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub alpha: f64,
    pub status: CellStatus,
}

/// Alpha-test outcomes for one starter on the grid `e = i / grid_n`
/// (`i = 0..grid_n`), `M = pi j / grid_n` (`j = 0..=grid_n`): `grid_n` rows
/// of `grid_n + 1` cells, row-major.
#[derive(Debug, Clone)]
pub struct RegionMap {
    grid_n: u32,
    starter: StarterKind,
    cells: Vec<Cell>,
}

/// Condensed view of a sweep, with the failures inside the probe corner
/// window (`e >= 0.99`, `M <= 0.05`) listed explicitly.
#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub starter: StarterKind,
    pub pass_fraction: f64,
    pub corner_failures: Vec<(f64, f64)>,
}

/// Evaluates the alpha-test at every node of the `grid_n` grid. Rows are
/// independent, so the sweep parallelizes over `e`; the cell order is fixed
/// by the grid, never by the scheduler.
pub fn sweep(kind: StarterKind, grid_n: u32) -> RegionMap {
    assert!(grid_n >= 2, "sweep needs at least a 2x2 grid");
    let columns = grid_n as usize + 1;
    let mut cells = vec![
        Cell {
            alpha: f64::NAN,
            status: CellStatus::Fail,
        };
        grid_n as usize * columns
    ];
    cells
        .par_chunks_mut(columns)
        .enumerate()
        .for_each(|(i, row)| {
            let e = i as f64 / grid_n as f64;
            for (j, cell) in row.iter_mut().enumerate() {
                let m = PI * (j as f64 / grid_n as f64);
                let p = OrbitPoint::new(e, m).expect("grid node is in the canonical domain");
                *cell = match evaluate_starter(kind, &p) {
                    Err(_) => Cell {
                        alpha: f64::NAN,
                        status: CellStatus::NotApplicable,
                    },
                    Ok(starter) => {
                        let report = alpha_test(&p, starter.value);
                        Cell {
                            alpha: report.alpha,
                            status: if report.passes {
                                CellStatus::Pass
                            } else {
                                CellStatus::Fail
                            },
                        }
                    }
                };
            }
        });
    RegionMap {
        grid_n,
        starter: kind,
        cells,
    }
}

impl RegionMap {
    pub fn grid_n(&self) -> u32 {
        self.grid_n
    }

    pub fn starter(&self) -> StarterKind {
        self.starter
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: u32, j: u32) -> Cell {
        self.cells[i as usize * (self.grid_n as usize + 1) + j as usize]
    }

    /// The `(e, M)` coordinates of node `(i, j)`.
    pub fn coords(&self, i: u32, j: u32) -> (f64, f64) {
        (
            i as f64 / self.grid_n as f64,
            PI * (j as f64 / self.grid_n as f64),
        )
    }

    /// Row-major iteration, `j` inner.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, Cell)> + '_ {
        let columns = self.grid_n + 1;
        self.cells
            .iter()
            .enumerate()
            .map(move |(flat, cell)| (flat as u32 / columns, flat as u32 % columns, *cell))
    }

    pub fn pass_count(&self) -> u64 {
        self.cells
            .iter()
            .filter(|c| c.status == CellStatus::Pass)
            .count() as u64
    }

    pub fn not_applicable_count(&self) -> u64 {
        self.cells
            .iter()
            .filter(|c| c.status == CellStatus::NotApplicable)
            .count() as u64
    }

    pub fn total_cells(&self) -> u64 {
        self.cells.len() as u64
    }

    pub fn pass_fraction(&self) -> f64 {
        self.pass_count() as f64 / self.total_cells() as f64
    }

    pub fn summary(&self) -> SweepSummary {
        let corner_failures = self
            .iter()
            .filter(|(_, _, cell)| cell.status != CellStatus::Pass)
            .map(|(i, j, _)| self.coords(i, j))
            .filter(|(e, m)| *e >= 0.99 && *m <= 0.05)
            .collect();
        SweepSummary {
            starter: self.starter,
            pass_fraction: self.pass_fraction(),
            corner_failures,
        }
    }
}

/// Searches a refining grid ladder over `[e_min, 1) x (0, m_max]` for a
/// point where the starter fails the alpha-test. Returns the first failure
/// in scan order (deterministic) or `None` once the finest grid is clean.
/// Nodes where the starter is undefined are skipped, not counted as
/// failures.
pub fn find_corner_failure(kind: StarterKind, e_min: f64, m_max: f64) -> Option<(f64, f64)> {
    assert!(e_min < 1.0, "e_min must stay below 1");
    assert!(m_max > 0.0, "m_max must be positive");
    let m_max = m_max.min(PI);
    let mut grid = 8u32;
    while grid <= 256 {
        for i in 0..grid {
            let e = e_min + (1.0 - e_min) * (i as f64 / grid as f64);
            for j in 1..=grid {
                let m = m_max * (j as f64 / grid as f64);
                let p = OrbitPoint::new(e, m).expect("probe point is in the canonical domain");
                if let Ok(starter) = evaluate_starter(kind, &p)
                    && !alpha_test(&p, starter.value).passes
                {
                    return Some((e, m));
                }
            }
        }
        grid *= 2;
    }
    None
}
