//! Bit-pinned export formats for region maps.
//!
//! CSV: header `e,M,alpha,passes`, one row per cell (row-major, `j` inner),
//! reals as 17-significant-digit decimals. PGM: binary `P5`, width
//! `grid_n + 1`, height `grid_n`, 255 = pass, 0 = fail, 128 = not
//! applicable.

use std::io::{self, Write};

use crate::sweep::{CellStatus, RegionMap};

pub fn write_region_csv<W: Write>(map: &RegionMap, out: &mut W) -> io::Result<()> {
    writeln!(out, "e,M,alpha,passes")?;
    for (i, j, cell) in map.iter() {
        let (e, m) = map.coords(i, j);
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{}",
            e,
            m,
            cell.alpha,
            cell.status == CellStatus::Pass
        )?;
    }
    Ok(())
}

pub fn write_region_pgm<W: Write>(map: &RegionMap, out: &mut W) -> io::Result<()> {
    write!(out, "P5\n{} {}\n255\n", map.grid_n() + 1, map.grid_n())?;
    let bytes: Vec<u8> = map
        .cells()
        .iter()
        .map(|cell| match cell.status {
            CellStatus::Pass => 255,
            CellStatus::Fail => 0,
            CellStatus::NotApplicable => 128,
        })
        .collect();
    out.write_all(&bytes)
}
