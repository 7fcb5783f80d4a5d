//! Command-line surface for the certified Kepler solver: solving, alpha
//! reports, grid sweeps reproducing the region maps, starter-table
//! management, and the verification suites.

pub mod app;
pub mod output;
pub mod rng;
pub mod sample;
pub mod sweep;
pub mod verify;

pub use app::cli_main;
pub use output::{write_region_csv, write_region_pgm};
pub use sweep::{Cell, CellStatus, RegionMap, SweepSummary, find_corner_failure, sweep};
pub use verify::{Suite, SuiteReport, run_suite};
