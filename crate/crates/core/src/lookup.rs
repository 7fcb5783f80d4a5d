//! Piecewise-constant starter tables.
//!
//! For a requested guarantee parameter `eps` the table picks the smallest
//! `N > (pi + 2) / (2 alpha0 eps^2)`, then stores, for every cell
//! `(i, j)` with `i in 0..N`, `j in 0..=N`, a value `E_ij` found by
//! bisecting `g(E) = E - (i/N) sin E - pi j / N` on `[pi j / N, pi]` until
//! `|g| < 1/N`. Looking up `i = floor(N e)`, `j = ceil(M N / pi)` then
//! yields a starter that passes the alpha-test everywhere outside the
//! excluded corner `[1 - eps, 1) x [0, arccos(1 - eps)]`.
//!
//! Corner queries bypass the grid entirely: when `eps < 1 - cos(pi/7)` the
//! corner is covered by the rational/cube-root branch pair of the piecewise
//! starter, and the query is served by that logic; for coarser tables the
//! corner is simply unsupported.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::alpha0;
use crate::error::KeplerError;
use crate::model::OrbitPoint;
use crate::starters::{StarterBranch, StarterValue, cube_root_starter, rational_branch_bound};

pub const TABLE_MAGIC: [u8; 4] = *b"KALT";
pub const TABLE_FORMAT_VERSION: u32 = 1;
const HEADER_BYTES: u64 = 24;

/// Builder refuses grids beyond this many entries (2^28 entries = 2 GiB);
/// epsilon below ~0.024 needs a bigger machine, not a silent attempt.
const MAX_ENTRIES: u64 = 1 << 28;

/// How many entries [`LookupTable::from_bytes`] re-validates.
const DESERIALIZE_SPOT_CHECKS: u64 = 100;

/// Largest epsilon for which the excluded corner can be served by the
/// rational/cube-root extension: `1 - cos(pi/7)`, about `0.09903`.
pub fn corner_extension_max_eps() -> f64 {
    1.0 - (PI / 7.0).cos()
}

/// The dense starter grid for one `eps`, immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct LookupTable {
    eps: f64,
    n: u64,
    /// Row-major, `i` outer (N rows), `j` inner (N + 1 columns).
    entries: Vec<f64>,
}

/// Smallest integer strictly greater than `(pi + 2) / (2 alpha0 eps^2)`.
pub fn table_size_for_eps(eps: f64) -> Result<u64, KeplerError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(KeplerError::EpsilonOutOfRange(eps));
    }
    let bound = (PI + 2.0) / (2.0 * alpha0() * eps * eps);
    Ok(bound.floor() as u64 + 1)
}

/// Root of `g(E) = E - (i/N) sin E - pi j / N` on `[pi j / N, pi]`,
/// bisected until `|g| < 1/N`.
///
/// The left endpoint is tried first: for `i = 0` the function is linear
/// with its root exactly there, and for `j = N` the endpoint is `pi`
/// itself, so those rows and columns come out exact.
fn bisect_entry(n: u64, i: u64, j: u64) -> f64 {
    let ecc = i as f64 / n as f64;
    let target = PI * (j as f64 / n as f64);
    let tol = 1.0 / n as f64;
    let g = |e_val: f64| e_val - ecc * e_val.sin() - target;
    if g(target).abs() < tol {
        return target;
    }
    let (mut lo, mut hi) = (target, PI);
    // |g(mid)| <= 2 * (hi - lo), so ~log2(2 pi N) halvings suffice.
    for _ in 0..128 {
        let mid = 0.5 * (lo + hi);
        let val = g(mid);
        if val.abs() < tol {
            return mid;
        }
        if val < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    unreachable!("bisection on a monotone bracket cannot take 128 steps to reach |g| < 1/N");
}

/// Builds the full table for `eps`. Rows are independent, so the build
/// parallelizes over `i`; every entry is a fixed midpoint-bisection in
/// binary64 and therefore platform-reproducible.
pub fn build_table(eps: f64) -> Result<LookupTable, KeplerError> {
    let n = table_size_for_eps(eps)?;
    let total = n * (n + 1);
    if total > MAX_ENTRIES {
        return Err(KeplerError::TableTooLarge {
            eps,
            n,
            max: MAX_ENTRIES,
        });
    }
    let columns = (n + 1) as usize;
    let mut entries = vec![0.0f64; total as usize];
    entries
        .par_chunks_mut(columns)
        .enumerate()
        .for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = bisect_entry(n, i as u64, j as u64);
            }
        });
    Ok(LookupTable { eps, n, entries })
}

/// Starter lookup: `i = floor(N e)`, `j = ceil(M N / pi)` outside the
/// corner; inside it, the rational/cube-root pair when the table is fine
/// enough (`eps < 1 - cos(pi/7)`), otherwise an unsupported-region error.
pub fn table_starter(table: &LookupTable, p: &OrbitPoint) -> Result<StarterValue, KeplerError> {
    let (e, m) = (p.e(), p.m());
    if e >= 1.0 - table.eps && m <= (1.0 - table.eps).acos() {
        return corner_starter(table.eps, p);
    }
    // e < 1 makes floor(N e) <= N - 1 and M <= pi makes ceil(M N / pi) <= N
    // in exact arithmetic; the clamps absorb the float rounding of the
    // products right at those edges.
    let i = ((table.n as f64 * e).floor() as u64).min(table.n - 1);
    let j = ((m * table.n as f64 / PI).ceil() as u64).min(table.n);
    Ok(StarterValue {
        value: table.entries[(i * (table.n + 1) + j) as usize],
        branch: StarterBranch::Direct,
    })
}

fn corner_starter(eps: f64, p: &OrbitPoint) -> Result<StarterValue, KeplerError> {
    let limit = corner_extension_max_eps();
    if eps >= limit {
        return Err(KeplerError::CornerUnsupported { eps, limit });
    }
    let (e, m) = (p.e(), p.m());
    if e >= 0.5 && m <= PI / 7.0 && m < rational_branch_bound(e) {
        Ok(StarterValue {
            value: m / (1.0 - e),
            branch: StarterBranch::MOverOneMinusE,
        })
    } else {
        Ok(StarterValue {
            value: cube_root_starter(e, m),
            branch: StarterBranch::CubeRoot,
        })
    }
}

#[derive(Serialize)]
struct TableJson<'a> {
    eps: f64,
    #[serde(rename = "N")]
    n: u64,
    entries: &'a [f64],
}

impl LookupTable {
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Grid size N; the table stores N rows and N + 1 columns.
    pub fn size(&self) -> u64 {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn entry(&self, i: u64, j: u64) -> f64 {
        self.entries[(i * (self.n + 1) + j) as usize]
    }

    fn expected_bytes(n: u64) -> u64 {
        HEADER_BYTES + 8 * n * (n + 1)
    }

    /// Canonical binary encoding: `KALT`, version u32 LE, eps f64 LE,
    /// N u64 LE, then the N (N + 1) entries as f64 LE, row-major.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::expected_bytes(self.n) as usize);
        out.extend_from_slice(&TABLE_MAGIC);
        out.extend_from_slice(&TABLE_FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.eps.to_le_bytes());
        out.extend_from_slice(&self.n.to_le_bytes());
        for value in &self.entries {
            out.extend_from_slice(&value.to_le_bytes());
        }
        out
    }

    /// Decodes and validates a binary table: magic, version, length, the
    /// `N` bound for the stored `eps`, and the construction invariants on
    /// a deterministic spot-check sample of entries.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, KeplerError> {
        if bytes.len() < HEADER_BYTES as usize {
            return Err(KeplerError::TableTruncated { found: bytes.len() });
        }
        if bytes[0..4] != TABLE_MAGIC {
            return Err(KeplerError::TableBadMagic);
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != TABLE_FORMAT_VERSION {
            return Err(KeplerError::TableVersionMismatch(version));
        }
        let eps = f64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let n = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
        if !(eps > 0.0 && eps < 1.0) {
            return Err(KeplerError::EpsilonOutOfRange(eps));
        }
        let required = table_size_for_eps(eps)?;
        if n < required {
            return Err(KeplerError::TableUndersized { n, eps, required });
        }
        if n.checked_mul(n + 1).is_none_or(|total| total > MAX_ENTRIES) {
            return Err(KeplerError::TableTooLarge {
                eps,
                n,
                max: MAX_ENTRIES,
            });
        }
        let expected = Self::expected_bytes(n);
        if bytes.len() as u64 != expected {
            return Err(KeplerError::TableSizeMismatch {
                expected,
                found: bytes.len() as u64,
            });
        }
        let entries: Vec<f64> = bytes[HEADER_BYTES as usize..]
            .chunks_exact(8)
            .map(|chunk| f64::from_le_bytes(chunk.try_into().unwrap()))
            .collect();
        let table = Self { eps, n, entries };

        let total = n * (n + 1);
        let mut state = 0x4b414c54u64; // "KALT" as a seed
        for _ in 0..DESERIALIZE_SPOT_CHECKS.min(total) {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let flat = (state >> 16) % total;
            table.check_entry(flat / (n + 1), flat % (n + 1))?;
        }
        Ok(table)
    }

    /// Re-derives the construction invariants for one entry:
    /// `pi j / N <= E_ij <= pi` and `|E_ij - (i/N) sin E_ij - pi j / N| < 1/N`.
    pub fn check_entry(&self, i: u64, j: u64) -> Result<(), KeplerError> {
        let value = self.entry(i, j);
        let low = PI * (j as f64 / self.n as f64);
        let residual = value - (i as f64 / self.n as f64) * value.sin() - low;
        // Written so that a NaN entry fails both clauses.
        let in_bracket = value >= low && value <= PI;
        let residual_small = residual.abs() < 1.0 / self.n as f64;
        if !in_bracket || !residual_small {
            return Err(KeplerError::TableEntryInvariant { i, j });
        }
        Ok(())
    }

    /// Runs [`LookupTable::check_entry`] over the whole grid (parallel).
    pub fn check_all_entries(&self) -> Result<(), KeplerError> {
        let columns = self.n + 1;
        (0..self.n * columns)
            .into_par_iter()
            .try_for_each(|flat| self.check_entry(flat / columns, flat % columns))
    }

    pub fn write_to(&self, path: &Path) -> Result<(), KeplerError> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self, KeplerError> {
        Self::from_bytes(&std::fs::read(path)?)
    }

    /// Interoperability export: `{"eps": ..., "N": ..., "entries": [...]}`,
    /// row-major. The binary format is the canonical one.
    pub fn write_json<W: Write>(&self, writer: W) -> Result<(), KeplerError> {
        serde_json::to_writer(
            writer,
            &TableJson {
                eps: self.eps,
                n: self.n,
                entries: &self.entries,
            },
        )?;
        Ok(())
    }
}
