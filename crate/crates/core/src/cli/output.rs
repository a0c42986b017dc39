//! CSV and PPM writers.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FwError, Result};
use crate::poly::Poly;

/// Fixed 17-significant-digit scientific notation; independent of locale and
/// exact under a parse round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A CSV cell: integers print verbatim, reals with [`fmt_f64`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl Cell {
    fn render(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_f64(v),
        }
    }
}

/// Renders a header and rows into CSV text.
pub fn csv_string(header: &[&str], rows: &[Vec<Cell>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| FwError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(FwError::invalid("CSV row width does not match the header"));
        }
        w.write_record(row.iter().map(|c| c.render()))
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| FwError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is ASCII"))
}

/// Parses CSV text written by [`csv_string`] back into a header and rows of
/// `f64` (`inf` allowed).
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| FwError::invalid(format!("bad CSV: {e}"));
    let header = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let row = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| FwError::invalid(format!("bad number '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Rectangle `[x0, x1] x [y0, y1]` sampled at `nx x ny` pixel centers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Window {
    /// Parses `x0,x1,y0,y1,nx,ny`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(FwError::invalid(format!(
                "grid '{s}' must be x0,x1,y0,y1,nx,ny"
            )));
        }
        let f = |i: usize| {
            parts[i]
                .parse::<f64>()
                .map_err(|_| FwError::invalid(format!("bad grid value '{}'", parts[i])))
        };
        let n = |i: usize| {
            parts[i]
                .parse::<usize>()
                .map_err(|_| FwError::invalid(format!("bad grid count '{}'", parts[i])))
        };
        let w = Window {
            x0: f(0)?,
            x1: f(1)?,
            y0: f(2)?,
            y1: f(3)?,
            nx: n(4)?,
            ny: n(5)?,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.x0, self.x1, self.y0, self.y1]
            .iter()
            .all(|v| v.is_finite());
        if !ok || !(self.x1 > self.x0) || !(self.y1 > self.y0) {
            return Err(FwError::invalid("grid needs finite x0 < x1 and y0 < y1"));
        }
        if self.nx == 0 || self.ny == 0 || self.nx > 4096 || self.ny > 4096 {
            return Err(FwError::invalid(format!(
                "grid resolution {}x{} must lie within 1..=4096 per axis",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    /// Center of pixel `(i, j)`, row `j = 0` at the top.
    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        let x = self.x0 + (i as f64 + 0.5) * (self.x1 - self.x0) / self.nx as f64;
        let y = self.y1 - (j as f64 + 0.5) * (self.y1 - self.y0) / self.ny as f64;
        Complex64::new(x, y)
    }

    /// Pixel centers in row-major order from the top-left.
    pub fn points(&self) -> Vec<Complex64> {
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| (i, j)))
            .map(|(i, j)| self.point(i, j))
            .collect()
    }
}

/// HSV with full saturation and value to 8-bit RGB.
pub fn hue_to_rgb(h: f64) -> [u8; 3] {
    let h6 = (h.rem_euclid(1.0)) * 6.0;
    let sector = (h6.floor() as usize).min(5);
    let f = h6 - sector as f64;
    let (r, g, b) = match sector {
        0 => (1.0, f, 0.0),
        1 => (1.0 - f, 1.0, 0.0),
        2 => (0.0, 1.0, f),
        3 => (0.0, 1.0 - f, 1.0),
        4 => (f, 0.0, 1.0),
        _ => (1.0, 0.0, 1.0 - f),
    };
    let q = |v: f64| (v * 255.0).round() as u8;
    [q(r), q(g), q(b)]
}

/// Binary P6 image of `p` over `win`, hue `(arg p(z) + pi)/(2 pi)`.
pub fn phase_portrait(p: &Poly, win: &Window) -> Vec<u8> {
    let pixels: Vec<[u8; 3]> = win
        .points()
        .par_iter()
        .map(|&z| hue_to_rgb((p.eval(z).arg() + PI) / (2.0 * PI)))
        .collect();
    let mut out = format!("P6\n{} {}\n255\n", win.nx, win.ny).into_bytes();
    out.reserve(pixels.len() * 3);
    for px in pixels {
        out.extend_from_slice(&px);
    }
    out
}

/// Decoded P6 image: `(width, height, rgb bytes)`.
pub fn parse_ppm(bytes: &[u8]) -> Result<(usize, usize, Vec<u8>)> {
    let bad = || FwError::invalid("not a binary P6 image");
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad());
        }
        fields.push(
            std::str::from_utf8(&bytes[start..pos])
                .map_err(|_| bad())?
                .to_owned(),
        );
    }
    pos += 1;
    if fields[0] != "P6" || fields[3] != "255" {
        return Err(bad());
    }
    let w: usize = fields[1].parse().map_err(|_| bad())?;
    let h: usize = fields[2].parse().map_err(|_| bad())?;
    let data = bytes.get(pos..).ok_or_else(bad)?.to_vec();
    if data.len() != 3 * w * h {
        return Err(bad());
    }
    Ok((w, h, data))
}

fn arg_change(p: &Poly, a: Complex64, b: Complex64, depth: usize) -> Result<f64> {
    let (pa, pb) = (p.eval(a), p.eval(b));
    if pa.norm() == 0.0 || pb.norm() == 0.0 {
        return Err(FwError::domain(
            "polynomial vanishes on the window boundary",
        ));
    }
    let d = (pb / pa).arg();
    if d.abs() < 0.25 {
        return Ok(d);
    }
    if depth > 48 {
        return Err(FwError::domain("a zero lies on the window boundary"));
    }
    let m = 0.5 * (a + b);
    Ok(arg_change(p, a, m, depth + 1)? + arg_change(p, m, b, depth + 1)?)
}

/// Number of zeros of `p` inside the window rectangle, by the argument
/// principle along its boundary.
pub fn zeros_in_window(p: &Poly, win: &Window) -> Result<usize> {
    let c = [
        Complex64::new(win.x0, win.y0),
        Complex64::new(win.x1, win.y0),
        Complex64::new(win.x1, win.y1),
        Complex64::new(win.x0, win.y1),
    ];
    let mut total = 0.0;
    for s in 0..4 {
        let (a, b) = (c[s], c[(s + 1) % 4]);
        // split each side so that the first test step is already short
        let pieces = 64;
        for j in 0..pieces {
            let pa = a + (b - a) * (j as f64 / pieces as f64);
            let pb = a + (b - a) * ((j + 1) as f64 / pieces as f64);
            total += arg_change(p, pa, pb, 0)?;
        }
    }
    let n = total / (2.0 * PI);
    Ok(n.round().max(0.0) as usize)
}
