//! Field export: CSV and raw binary, plus a binary loader for round-trips.

use std::io::{BufWriter, Read, Write};
use std::path::Path;

use phasespace_core::{PhaseGrid, PhaseSpaceField};

use crate::CliError;

pub const MAGIC: &[u8; 4] = b"PSF1";

fn io_err(what: &str, e: std::io::Error) -> CliError {
    CliError::numeric(format!("{what}: {e}"))
}

/// 17 significant digits: exact round-trip for every double.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Header `re_alpha,im_alpha,value`, rows in row-major (re outer) order.
pub fn write_csv(field: &PhaseSpaceField, path: &Path) -> Result<(), CliError> {
    let file = std::fs::File::create(path).map_err(|e| io_err("csv write", e))?;
    let mut w = BufWriter::new(file);
    let mut run = || -> std::io::Result<()> {
        writeln!(w, "re_alpha,im_alpha,value")?;
        let n = field.grid.points_per_axis;
        for i_re in 0..n {
            for i_im in 0..n {
                writeln!(
                    w,
                    "{},{},{}",
                    fmt_f64(field.grid.coord(i_re)),
                    fmt_f64(field.grid.coord(i_im)),
                    fmt_f64(field.value(i_re, i_im)),
                )?;
            }
        }
        w.flush()
    };
    run().map_err(|e| io_err("csv write", e))
}

/// Layout: magic "PSF1" | u32 n_re | u32 n_im | f64 half_extent | f64 order
/// | n_re*n_im f64 samples, all little-endian, row-major over (re, im).
pub fn write_bin(field: &PhaseSpaceField, path: &Path) -> Result<(), CliError> {
    let file = std::fs::File::create(path).map_err(|e| io_err("bin write", e))?;
    let mut w = BufWriter::new(file);
    let n = field.grid.points_per_axis as u32;
    let mut run = || -> std::io::Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&n.to_le_bytes())?;
        w.write_all(&n.to_le_bytes())?;
        w.write_all(&field.grid.half_extent.to_le_bytes())?;
        w.write_all(&field.order.to_le_bytes())?;
        for v in &field.values {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()
    };
    run().map_err(|e| io_err("bin write", e))
}

/// Inverse of [`write_bin`].
pub fn read_bin(path: &Path) -> Result<PhaseSpaceField, CliError> {
    let mut file = std::fs::File::open(path).map_err(|e| io_err("bin read", e))?;
    let mut buf = Vec::new();
    file.read_to_end(&mut buf).map_err(|e| io_err("bin read", e))?;
    let bad = |msg: &str| CliError::numeric(format!("bin read {}: {msg}", path.display()));
    if buf.len() < 28 || &buf[0..4] != MAGIC {
        return Err(bad("missing PSF1 magic"));
    }
    let n_re = u32::from_le_bytes(buf[4..8].try_into().unwrap()) as usize;
    let n_im = u32::from_le_bytes(buf[8..12].try_into().unwrap()) as usize;
    let half_extent = f64::from_le_bytes(buf[12..20].try_into().unwrap());
    let order = f64::from_le_bytes(buf[20..28].try_into().unwrap());
    let expected = 28 + 8 * n_re * n_im;
    if n_re != n_im || buf.len() != expected {
        return Err(bad("inconsistent dimensions"));
    }
    let values = buf[28..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let grid = PhaseGrid::new(half_extent, n_re).map_err(CliError::from_core)?;
    Ok(PhaseSpaceField {
        grid,
        values,
        order,
        state_tag: String::new(),
        max_imag: 0.0,
        clipped: 0,
    })
}

pub fn write_json<T: serde::Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::numeric(format!("json serialise: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| io_err("json write", e))
}
