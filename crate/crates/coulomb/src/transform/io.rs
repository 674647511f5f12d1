//! Profile and table I/O: CSV with headers `r,value`, `sigma,value` or
//! `r,re,im`, a JSON variant carrying full grid metadata, and gnuplot stubs.
//!
//! Numbers are written in Rust's shortest round-trip form, so reading a file
//! back reproduces every f64 bit for bit (at most 17 significant digits).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;

use super::profile::RadialProfile;
use crate::error::{CoulombError, Result};

fn io_err(path: &Path, e: impl std::fmt::Display) -> CoulombError {
    CoulombError::Input(format!("{}: {e}", path.display()))
}

/// Shortest round-trip decimal form of `x`, switching to exponent notation
/// for very large or small magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Writes a two-column table with header `<x_name>,value`.
pub fn write_real_csv(path: &Path, x_name: &str, xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(CoulombError::Input("column lengths differ".into()));
    }
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    w.write_record([x_name, "value"]).map_err(|e| io_err(path, e))?;
    for (x, y) in xs.iter().zip(ys) {
        w.write_record([fmt_f64(*x), fmt_f64(*y)]).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// Writes a complex table with header `r,re,im`.
pub fn write_complex_csv(path: &Path, rs: &[f64], vals: &[Complex64]) -> Result<()> {
    if rs.len() != vals.len() {
        return Err(CoulombError::Input("column lengths differ".into()));
    }
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(path, e))?;
    w.write_record(["r", "re", "im"]).map_err(|e| io_err(path, e))?;
    for (r, v) in rs.iter().zip(vals) {
        w.write_record([fmt_f64(*r), fmt_f64(v.re), fmt_f64(v.im)]).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// A parsed real two-column table.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTable {
    /// `r` or `sigma`.
    pub x_name: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

/// Reads a `r,value` or `sigma,value` table.
pub fn read_real_csv(path: &Path) -> Result<RealTable> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| io_err(path, e))?;
    let headers = rd.headers().map_err(|e| io_err(path, e))?.clone();
    let names: Vec<&str> = headers.iter().map(str::trim).collect();
    if names.len() != 2 || !(names[0] == "r" || names[0] == "sigma") || names[1] != "value" {
        return Err(io_err(path, format!("expected header `r,value` or `sigma,value`, got `{}`", names.join(","))));
    }
    let x_name = names[0].to_string();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (line, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| io_err(path, e))?;
        let parse = |i: usize| -> Result<f64> {
            rec.get(i)
                .ok_or_else(|| io_err(path, format!("row {}: missing column", line + 2)))?
                .trim()
                .parse::<f64>()
                .map_err(|e| io_err(path, format!("row {}: {e}", line + 2)))
        };
        xs.push(parse(0)?);
        ys.push(parse(1)?);
    }
    Ok(RealTable { x_name, xs, ys })
}

/// Reads a complex `r,re,im` table.
pub fn read_complex_csv(path: &Path) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| io_err(path, e))?;
    let headers = rd.headers().map_err(|e| io_err(path, e))?.clone();
    let names: Vec<&str> = headers.iter().map(str::trim).collect();
    if names != ["r", "re", "im"] {
        return Err(io_err(path, format!("expected header `r,re,im`, got `{}`", names.join(","))));
    }
    let (mut rs, mut vs) = (Vec::new(), Vec::new());
    for rec in rd.records() {
        let rec = rec.map_err(|e| io_err(path, e))?;
        let p = |i: usize| -> Result<f64> {
            rec.get(i).unwrap_or("").trim().parse::<f64>().map_err(|e| io_err(path, e))
        };
        rs.push(p(0)?);
        vs.push(Complex64::new(p(1)?, p(2)?));
    }
    Ok((rs, vs))
}

/// Serializes any record as pretty JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let f = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(f);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io_err(path, e))?;
    writeln!(w).map_err(|e| io_err(path, e))?;
    w.flush().map_err(|e| io_err(path, e))
}

/// Deserializes a JSON record.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let f = File::open(path).map_err(|e| io_err(path, e))?;
    serde_json::from_reader(std::io::BufReader::new(f)).map_err(|e| io_err(path, e))
}

/// Reads a profile: `.json` files carry nodes, values, weights and support;
/// anything else is parsed as a `r,value` CSV with trapezoid weights.
pub fn read_profile(path: &Path) -> Result<RadialProfile> {
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        let p: RadialProfile = read_json(path)?;
        p.validate()?;
        Ok(p)
    } else {
        let t = read_real_csv(path)?;
        if t.x_name != "r" {
            return Err(io_err(path, "a profile needs an `r,value` header"));
        }
        RadialProfile::from_samples(t.xs, t.ys)
    }
}

/// Writes a profile as CSV (`r,value`) or, for a `.json` path, as JSON.
pub fn write_profile(path: &Path, p: &RadialProfile) -> Result<()> {
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        write_json(path, p)
    } else {
        write_real_csv(path, "r", &p.nodes, &p.values)
    }
}

/// Writes a gnuplot script that plots `data` (a CSV written by this module)
/// with the given column pairs, e.g. `[(1, 2)]` or `[(1, 2), (1, 3)]`.
pub fn write_gnuplot_stub(script: &Path, data: &Path, xlabel: &str, columns: &[(usize, usize)], logscale: bool) -> Result<()> {
    let f = File::create(script).map_err(|e| io_err(script, e))?;
    let mut w = BufWriter::new(f);
    let d = data.display();
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set xlabel '{xlabel}'\nset key autotitle columnhead\n"));
    if logscale {
        s.push_str("set logscale xy\n");
    }
    let plots: Vec<String> = columns.iter().map(|(x, y)| format!("'{d}' using {x}:{y} with lines")).collect();
    s.push_str(&format!("plot {}\n", plots.join(", ")));
    w.write_all(s.as_bytes()).map_err(|e| io_err(script, e))?;
    w.flush().map_err(|e| io_err(script, e))
}
