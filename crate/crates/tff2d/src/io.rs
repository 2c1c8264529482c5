//! On-disk formats: result CSVs, a flat binary grid dump, cached mode
//! blocks, and a gnuplot helper script.
//!
//! Floats are written with Rust's shortest-roundtrip formatting, so equal
//! bit patterns always produce equal bytes; file comparison is a valid
//! determinism check.

use crate::farfield::{ModeBlock, Square};
use crate::Result;
use num_complex::Complex64;
use std::io::{BufRead, Read, Write};

/// One evaluated point: location, convolution value, membership flag.
#[derive(Debug, Clone, Copy)]
pub struct PointValue {
    pub x: [f64; 2],
    pub value: f64,
    pub inside: bool,
}

pub const POINTS_HEADER: &str = "x1,x2,value,inside";

pub fn write_points_csv(mut w: impl Write, rows: &[PointValue]) -> std::io::Result<()> {
    writeln!(w, "{POINTS_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            r.x[0],
            r.x[1],
            r.value,
            if r.inside { 1 } else { 0 }
        )?;
    }
    Ok(())
}

pub fn read_points_csv(r: impl BufRead) -> Result<Vec<PointValue>> {
    let mut rows = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if i == 0 {
            continue;
        }
        let parts: Vec<&str> = line.trim().split(',').collect();
        if parts.len() != 4 {
            return Err(crate::Error::config(format!(
                "line {}: expected 4 fields",
                i + 1
            )));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| crate::Error::config(format!("line {}: bad float {s:?}", i + 1)))
        };
        rows.push(PointValue {
            x: [num(parts[0])?, num(parts[1])?],
            value: num(parts[2])?,
            inside: parts[3] == "1",
        });
    }
    Ok(rows)
}

/// Grid CSV: the same four columns, nodes row-major over the square.
pub fn write_grid_csv(
    mut w: impl Write,
    square: Square,
    n: usize,
    values: &[f64],
    inside: &[bool],
) -> std::io::Result<()> {
    writeln!(w, "{POINTS_HEADER}")?;
    for i in 0..n {
        for j in 0..n {
            let x = square.node(i, j, n);
            writeln!(
                w,
                "{},{},{},{}",
                x[0],
                x[1],
                values[i * n + j],
                if inside[i * n + j] { 1 } else { 0 }
            )?;
        }
    }
    Ok(())
}

const GRID_MAGIC: &[u8; 8] = b"TFF2GRID";

/// Flat binary grid: magic, two little-endian u64 dimensions, then
/// row-major little-endian f64 values.
pub fn write_grid_binary(
    mut w: impl Write,
    n1: usize,
    n2: usize,
    values: &[f64],
) -> std::io::Result<()> {
    assert_eq!(values.len(), n1 * n2);
    w.write_all(GRID_MAGIC)?;
    w.write_all(&(n1 as u64).to_le_bytes())?;
    w.write_all(&(n2 as u64).to_le_bytes())?;
    for v in values {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_grid_binary(mut r: impl Read) -> Result<(usize, usize, Vec<f64>)> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != GRID_MAGIC {
        return Err(crate::Error::config("not a grid dump (bad magic)"));
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let n1 = u64::from_le_bytes(b8) as usize;
    r.read_exact(&mut b8)?;
    let n2 = u64::from_le_bytes(b8) as usize;
    let mut values = vec![0.0; n1 * n2];
    for v in values.iter_mut() {
        r.read_exact(&mut b8)?;
        *v = f64::from_le_bytes(b8);
    }
    Ok((n1, n2, values))
}

const MODES_MAGIC: &[u8; 8] = b"TFF2CHI\0";

/// Cached mode block: magic, u64 order, square anchor and period, then
/// interleaved re/im little-endian f64 pairs, row-major.
pub fn write_mode_block(mut w: impl Write, block: &ModeBlock) -> std::io::Result<()> {
    w.write_all(MODES_MAGIC)?;
    w.write_all(&(block.order as u64).to_le_bytes())?;
    w.write_all(&block.square.s0.to_le_bytes())?;
    w.write_all(&block.square.period.to_le_bytes())?;
    for c in &block.c {
        w.write_all(&c.re.to_le_bytes())?;
        w.write_all(&c.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_mode_block(mut r: impl Read) -> Result<ModeBlock> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MODES_MAGIC {
        return Err(crate::Error::config("not a mode block (bad magic)"));
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let order = u64::from_le_bytes(b8) as usize;
    r.read_exact(&mut b8)?;
    let s0 = f64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let period = f64::from_le_bytes(b8);
    let side = 2 * order + 1;
    let mut c = vec![Complex64::default(); side * side];
    for v in c.iter_mut() {
        r.read_exact(&mut b8)?;
        let re = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let im = f64::from_le_bytes(b8);
        *v = Complex64::new(re, im);
    }
    Ok(ModeBlock {
        square: Square { s0, period },
        order,
        c,
    })
}

/// gnuplot script rendering a grid CSV as a heat map.
pub fn gnuplot_script(csv_name: &str, png_name: &str) -> String {
    format!(
        "set terminal pngcairo size 900,800\n\
         set output '{png_name}'\n\
         set datafile separator ','\n\
         set view map\n\
         set size ratio -1\n\
         set palette rgbformulae 33,13,10\n\
         splot '{csv_name}' skip 1 using 1:2:3 with points pt 5 ps 0.5 palette notitle\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_csv_roundtrip() {
        let rows = vec![
            PointValue {
                x: [1.5, 0.0],
                value: 30.235399363084,
                inside: true,
            },
            PointValue {
                x: [-0.1, 0.25],
                value: f64::NAN,
                inside: false,
            },
        ];
        let mut buf = Vec::new();
        write_points_csv(&mut buf, &rows).unwrap();
        let back = read_points_csv(&buf[..]).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].value.to_bits(), rows[0].value.to_bits());
        assert!(back[1].value.is_nan());
        assert!(!back[1].inside);
    }

    #[test]
    fn grid_binary_roundtrip() {
        let values: Vec<f64> = (0..12).map(|i| (i as f64).sqrt()).collect();
        let mut buf = Vec::new();
        write_grid_binary(&mut buf, 3, 4, &values).unwrap();
        let (n1, n2, back) = read_grid_binary(&buf[..]).unwrap();
        assert_eq!((n1, n2), (3, 4));
        assert_eq!(back, values);
    }

    #[test]
    fn mode_block_roundtrip() {
        let mut block = ModeBlock::zeros(Square::centered(2.0), 3);
        block.set(1, -2, Complex64::new(0.5, -0.25));
        block.set(-1, 2, Complex64::new(0.5, 0.25));
        let mut buf = Vec::new();
        write_mode_block(&mut buf, &block).unwrap();
        let back = read_mode_block(&buf[..]).unwrap();
        assert_eq!(back.order, 3);
        assert_eq!(back.c, block.c);
        assert_eq!(back.square, block.square);
    }
}
