//! The subcommands. Each returns an [`Outcome`]; writing the manifest and
//! mapping errors to exit codes happens in [`super::run`].

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::validate::run_suite;
use super::{
    CliError, Direction, EigenArgs, EvolveArgs, Format, GreenArgs, KernelArgs, Outcome, OutputArgs, ProfileArgs,
    ScanArgs, TransformArgs, ValidateArgs,
};
use crate::eigenbasis::{e_basis, spectral_density, Charge};
use crate::error::{CoulombError, Result};
use crate::evolution::{decay_scan, default_output_grid, kernel_estimate, propagate, SpectralTable};
use crate::transform::io::{fmt_f64, read_complex_csv, read_json, read_profile, read_real_csv, write_gnuplot_stub, write_json};
use crate::transform::{
    forward_transform, green_kernel, inverse_transform, trapezoid_weights, ComplexProfile, CorpusProfile, RadialProfile,
    SigmaGrid, TransformedProfile,
};

/// One row of the `eigen` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRow {
    pub sigma: f64,
    pub r: f64,
    pub e: f64,
    pub regime: String,
    pub err_est: f64,
}

/// Transform of complex data: ĝ = ĝ[Re u] + i·ĝ[Im u] on a σ grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexTransform {
    pub charge: f64,
    pub sigma_nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<Complex64>,
}

/// JSON profile files hold either kind of profile.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ProfileFile {
    Real(RadialProfile),
    Complex(ComplexProfile),
}

/// JSON spectra hold either kind of transform.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SpectrumFile {
    Real(TransformedProfile),
    Complex(ComplexTransform),
}

enum Cell {
    Num(f64),
    Text(String),
}

/// A long-format table written as CSV.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn write_csv(&self, path: &Path) -> Result<()> {
        let err = |e: csv::Error| CoulombError::Input(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(path).map_err(err)?;
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| match c {
                Cell::Num(x) => fmt_f64(*x),
                Cell::Text(s) => s.clone(),
            }))
            .map_err(err)?;
        }
        w.flush().map_err(|e| CoulombError::Input(format!("{}: {e}", path.display())))
    }
}

fn complex_table(x_name: &'static str, xs: &[f64], vals: &[Complex64]) -> Table {
    Table {
        columns: vec![x_name, "re", "im"],
        rows: xs.iter().zip(vals).map(|(x, v)| vec![Cell::Num(*x), Cell::Num(v.re), Cell::Num(v.im)]).collect(),
    }
}

fn real_table(x_name: &'static str, xs: &[f64], vals: &[f64]) -> Table {
    Table { columns: vec![x_name, "value"], rows: xs.iter().zip(vals).map(|(x, v)| vec![Cell::Num(*x), Cell::Num(*v)]).collect() }
}

fn check_output(out: &OutputArgs) -> std::result::Result<(), CliError> {
    if out.gnuplot && out.out.is_none() {
        return Err(CliError::Usage("--gnuplot needs --out".into()));
    }
    if out.gnuplot && out.resolved_format() == Format::Json {
        return Err(CliError::Usage("--gnuplot needs csv output".into()));
    }
    Ok(())
}

/// Plot description for the gnuplot stub: x label, column pairs, log axes.
struct Plot {
    xlabel: &'static str,
    columns: Vec<(usize, usize)>,
    logscale: bool,
}

/// Writes the table or the JSON value to `--out` (plus the optional gnuplot
/// stub) and stores the JSON value as the printable result.
fn emit(out: &OutputArgs, table: Table, value: serde_json::Value, plot: Plot, outcome: &mut Outcome) -> Result<()> {
    if let Some(path) = &out.out {
        match out.resolved_format() {
            Format::Csv => table.write_csv(path)?,
            Format::Json => write_json(path, &value)?,
        }
        outcome.outputs.push(path.clone());
        if out.gnuplot {
            let gp = PathBuf::from(format!("{}.gp", path.display()));
            write_gnuplot_stub(&gp, path, plot.xlabel, &plot.columns, plot.logscale)?;
            outcome.outputs.push(gp);
        }
    }
    outcome.result = value;
    Ok(())
}

fn write_result(out: &Option<PathBuf>, value: serde_json::Value, outcome: &mut Outcome) -> Result<()> {
    if let Some(path) = out {
        write_json(path, &value)?;
        outcome.outputs.push(path.clone());
    }
    outcome.result = value;
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

enum Loaded {
    Real(RadialProfile),
    Complex(ComplexProfile),
}

/// Reads `--profile`: an existing file, else a corpus profile name.
fn load_profile(p: &ProfileArgs) -> Result<Loaded> {
    let path = Path::new(&p.profile);
    if path.is_file() {
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            return match read_json::<ProfileFile>(path)? {
                ProfileFile::Real(r) => {
                    r.validate()?;
                    Ok(Loaded::Real(r))
                }
                ProfileFile::Complex(c) => Ok(Loaded::Complex(c)),
            };
        }
        let header = std::fs::read_to_string(path)
            .map_err(|e| CoulombError::Input(format!("{}: {e}", path.display())))?
            .lines()
            .next()
            .unwrap_or("")
            .to_string();
        if header.split(',').count() == 3 {
            let (nodes, values) = read_complex_csv(path)?;
            RadialProfile::from_samples(nodes.clone(), vec![0.0; nodes.len()])?;
            let weights = trapezoid_weights(&nodes);
            return Ok(Loaded::Complex(ComplexProfile { nodes, values, weights }));
        }
        return Ok(Loaded::Real(read_profile(path)?));
    }
    match CorpusProfile::from_name(&p.profile) {
        Some(c) => Ok(Loaded::Real(c.sample(p.panel_width)?)),
        None => Err(CoulombError::domain("profile", format!("`{}` is neither a file nor a corpus profile name", p.profile))),
    }
}

/// Splits complex data into real and imaginary profiles on the same nodes.
fn split(c: &ComplexProfile) -> Result<(RadialProfile, RadialProfile)> {
    let n = c.nodes.len();
    if n == 0 || c.values.len() != n || c.weights.len() != n {
        return Err(CoulombError::Input("complex profile lengths differ or are empty".into()));
    }
    let support = (c.nodes[0], c.nodes[n - 1]);
    let part = |g: fn(&Complex64) -> f64| RadialProfile { nodes: c.nodes.clone(), values: c.values.iter().map(g).collect(), weights: c.weights.clone(), support };
    let (re, im) = (part(|z| z.re), part(|z| z.im));
    re.validate()?;
    Ok((re, im))
}

fn nonempty(name: &'static str, g: &[f64]) -> Result<()> {
    if g.is_empty() {
        return Err(CoulombError::domain(name, "grid is empty"));
    }
    if let Some(x) = g.iter().find(|x| !x.is_finite()) {
        return Err(CoulombError::domain(name, format!("non-finite value {x}")));
    }
    Ok(())
}

/// Table of e(σ, r) over the product of the two grids (σ outer).
pub fn cmd_eigen(a: &EigenArgs) -> std::result::Result<Outcome, CliError> {
    check_output(&a.output)?;
    let q = Charge::new(a.q)?;
    nonempty("sigma-grid", &a.sigma_grid.0)?;
    nonempty("r-grid", &a.r_grid.0)?;
    let pairs: Vec<(f64, f64)> = a.sigma_grid.0.iter().flat_map(|&s| a.r_grid.0.iter().map(move |&r| (s, r))).collect();
    let rows: Vec<EigenRow> = pairs
        .par_iter()
        .map(|&(sigma, r)| {
            let e = e_basis(q, sigma, r, a.tol)?;
            Ok(EigenRow { sigma, r, e: e.value, regime: e.regime.as_str().to_string(), err_est: e.err_est })
        })
        .collect::<Result<_>>()?;
    let mut outcome = Outcome::default();
    outcome.tolerances.insert("max_err_est".into(), rows.iter().map(|r| r.err_est).fold(0.0, f64::max));
    outcome.summary = json!({ "rows": rows.len() });
    let table = Table {
        columns: vec!["sigma", "r", "e", "regime", "err_est"],
        rows: rows
            .iter()
            .map(|w| vec![Cell::Num(w.sigma), Cell::Num(w.r), Cell::Num(w.e), Cell::Text(w.regime.clone()), Cell::Num(w.err_est)])
            .collect(),
    };
    let value = json!({ "rows": rows });
    emit(&a.output, table, value, Plot { xlabel: "r", columns: vec![(2, 3)], logscale: false }, &mut outcome)?;
    Ok(outcome)
}

/// Runs a validation suite; exit code 1 when any check fails.
pub fn cmd_validate(a: &ValidateArgs) -> std::result::Result<Outcome, CliError> {
    let report = run_suite(a.suite)?;
    for c in &report.checks {
        eprintln!("{} {}: {:.6e} (threshold {:e})", c.verdict(), c.name, c.measured, c.threshold);
    }
    let mut outcome = Outcome { exit_code: if report.pass { 0 } else { 1 }, ..Outcome::default() };
    outcome.summary = json!({
        "suite": report.suite,
        "pass": report.pass,
        "failed": report.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect::<Vec<_>>(),
    });
    write_result(&a.out, to_json(&report), &mut outcome)?;
    Ok(outcome)
}

/// u(t) = e^{itH}f on the default output grid.
pub fn cmd_evolve(a: &EvolveArgs) -> std::result::Result<Outcome, CliError> {
    check_output(&a.output)?;
    let q = Charge::new(a.q)?;
    let cfg = a.quad.config();
    let (table, norm_in) = match load_profile(&a.profile)? {
        Loaded::Real(f) => (SpectralTable::build(q, &f, None, &cfg)?, f.norm_sq()),
        Loaded::Complex(c) => {
            let (re, im) = split(&c)?;
            (SpectralTable::build(q, &re, Some(&im), &cfg)?, re.norm_sq() + im.norm_sq())
        }
    };
    let (nodes, weights) = default_output_grid(&table, a.t);
    let res = propagate(q, &table, a.t, &nodes, Some(weights), &cfg)?;
    let norm_out = res.profile.norm_sq();
    let mut outcome = Outcome::default();
    outcome.tolerances.insert("quad_err".into(), res.quad_err);
    outcome.tolerances.insert("table_tail".into(), table.tail);
    outcome.tolerances.insert("sigma_hi".into(), table.hi());
    outcome.summary = json!({
        "t": a.t,
        "sup_norm": res.sup_norm,
        "norm_in": norm_in,
        "norm_out": norm_out,
        "radii": res.profile.nodes.len(),
    });
    let csv = complex_table("r", &res.profile.nodes, &res.profile.values);
    emit(&a.output, csv, to_json(&res.profile), Plot { xlabel: "r", columns: vec![(1, 2), (1, 3)], logscale: false }, &mut outcome)?;
    Ok(outcome)
}

/// Decay scan over log-spaced times.
pub fn cmd_scan(a: &ScanArgs) -> std::result::Result<Outcome, CliError> {
    check_output(&a.output)?;
    let q = Charge::new(a.q)?;
    if a.points < 2 {
        return Err(CoulombError::domain("points", "need at least two times").into());
    }
    if !(a.t_min > 0.0 && a.t_max > a.t_min) {
        return Err(CoulombError::domain("t-min", format!("need 0 < t-min < t-max, got [{}, {}]", a.t_min, a.t_max)).into());
    }
    let f = match load_profile(&a.profile)? {
        Loaded::Real(f) => f,
        Loaded::Complex(_) => return Err(CliError::Usage("scan needs a real profile".into())),
    };
    let n = a.points;
    let times: Vec<f64> = (0..n).map(|i| a.t_min * (a.t_max / a.t_min).powf(i as f64 / (n - 1) as f64)).collect();
    let scan = decay_scan(q, &f, &times, &a.quad.config())?;
    let mut outcome = Outcome::default();
    let worst = scan.quad_errs.iter().zip(&scan.sup_norms).map(|(e, s)| e / s).fold(0.0, f64::max);
    outcome.tolerances.insert("max_rel_quad_err".into(), worst);
    outcome.summary = json!({
        "verdict": scan.verdict,
        "slope_sup": scan.slope_sup,
        "slope_ratio": scan.slope_ratio,
        "max_over_median": scan.max_over_median,
        "l1_norm": scan.l1_norm,
    });
    let table = Table {
        columns: vec!["t", "sup_norm", "ratio", "argmax_r", "quad_err"],
        rows: (0..n)
            .map(|i| {
                [scan.t_values[i], scan.sup_norms[i], scan.ratios[i], scan.argmax_r[i], scan.quad_errs[i]]
                    .into_iter()
                    .map(Cell::Num)
                    .collect()
            })
            .collect(),
    };
    emit(&a.output, table, to_json(&scan), Plot { xlabel: "t", columns: vec![(1, 2), (1, 3)], logscale: true }, &mut outcome)?;
    Ok(outcome)
}

/// One mollified kernel value K_t(r, s).
pub fn cmd_kernel(a: &KernelArgs) -> std::result::Result<Outcome, CliError> {
    let q = Charge::new(a.q)?;
    let k = kernel_estimate(q, a.t, a.r, a.s, &a.quad.config())?;
    let mut outcome = Outcome::default();
    outcome.tolerances.insert("mollifier_eps".into(), k.mollifier_eps);
    outcome.summary = json!({ "value": k.value, "abs": k.value.norm(), "extrapolated": k.extrapolated });
    write_result(&a.out, to_json(&k), &mut outcome)?;
    Ok(outcome)
}

/// Forward transform of a profile or inverse transform of a spectrum.
pub fn cmd_transform(a: &TransformArgs) -> std::result::Result<Outcome, CliError> {
    check_output(&a.output)?;
    let q = Charge::new(a.q)?;
    let mut outcome = Outcome::default();
    match a.direction {
        Direction::Fwd => {
            let (re, im) = match load_profile(&a.profile)? {
                Loaded::Real(f) => (f, None),
                Loaded::Complex(c) => {
                    let (re, im) = split(&c)?;
                    (re, Some(im))
                }
            };
            let r_scale = a.r_scale.unwrap_or(re.support.1);
            let grid = SigmaGrid::new(a.sigma_max, r_scale)?;
            let fr = forward_transform(q, &re, &grid)?;
            outcome.summary = json!({ "sigma_nodes": grid.nodes.len(), "r_scale": r_scale });
            let plot = Plot { xlabel: "sigma", columns: vec![(1, 2)], logscale: false };
            match im {
                None => {
                    let ratio = fr.norm_sq() / re.norm_sq();
                    outcome.tolerances.insert("plancherel_ratio_truncated".into(), ratio);
                    let table = real_table("sigma", &fr.sigma_nodes, &fr.values);
                    emit(&a.output, table, to_json(&fr), plot, &mut outcome)?;
                }
                Some(im) => {
                    let fi = forward_transform(q, &im, &grid)?;
                    let values: Vec<Complex64> = fr.values.iter().zip(&fi.values).map(|(x, y)| Complex64::new(*x, *y)).collect();
                    let ratio = (fr.norm_sq() + fi.norm_sq()) / (re.norm_sq() + im.norm_sq());
                    outcome.tolerances.insert("plancherel_ratio_truncated".into(), ratio);
                    let ct = ComplexTransform { charge: q.value(), sigma_nodes: fr.sigma_nodes, weights: fr.weights, values };
                    let table = complex_table("sigma", &ct.sigma_nodes, &ct.values);
                    emit(&a.output, table, to_json(&ct), plot, &mut outcome)?;
                }
            }
        }
        Direction::Inv => {
            let r_grid = a.r_grid.as_ref().ok_or_else(|| CliError::Usage("--direction inv needs --r-grid".into()))?;
            nonempty("r-grid", &r_grid.0)?;
            let spectrum = load_spectrum(q, Path::new(&a.profile.profile))?;
            let density = |nodes: &[f64]| nodes.iter().map(|&s| spectral_density(q, s).density).collect::<Vec<_>>();
            let plot = Plot { xlabel: "r", columns: vec![(1, 2)], logscale: false };
            match spectrum {
                SpectrumFile::Real(t) => {
                    let u = inverse_transform(q, &t, &r_grid.0)?;
                    let table = real_table("r", &u.nodes, &u.values);
                    emit(&a.output, table, to_json(&u), plot, &mut outcome)?;
                }
                SpectrumFile::Complex(c) => {
                    let part = |g: fn(&Complex64) -> f64| TransformedProfile {
                        sigma_nodes: c.sigma_nodes.clone(),
                        weights: c.weights.clone(),
                        values: c.values.iter().map(g).collect(),
                        density_at_nodes: density(&c.sigma_nodes),
                        charge: c.charge,
                    };
                    let ur = inverse_transform(q, &part(|z| z.re), &r_grid.0)?;
                    let ui = inverse_transform(q, &part(|z| z.im), &r_grid.0)?;
                    let values: Vec<Complex64> = ur.values.iter().zip(&ui.values).map(|(x, y)| Complex64::new(*x, *y)).collect();
                    let u = ComplexProfile { nodes: ur.nodes, values, weights: ur.weights };
                    let table = complex_table("r", &u.nodes, &u.values);
                    emit(&a.output, table, to_json(&u), plot, &mut outcome)?;
                }
            }
        }
    }
    Ok(outcome)
}

/// Reads a spectrum: JSON from `--direction fwd`, or a `sigma,value` /
/// `sigma,re,im` CSV (trapezoid weights).
fn load_spectrum(q: Charge, path: &Path) -> Result<SpectrumFile> {
    if !path.is_file() {
        return Err(CoulombError::domain("profile", format!("`{}`: inverse transform needs a spectrum file", path.display())));
    }
    let spectrum = if path.extension().and_then(|e| e.to_str()) == Some("json") {
        read_json::<SpectrumFile>(path)?
    } else {
        let text = std::fs::read_to_string(path).map_err(|e| CoulombError::Input(format!("{}: {e}", path.display())))?;
        if text.lines().next().unwrap_or("").split(',').count() == 3 {
            let mut rd = csv::Reader::from_reader(text.as_bytes());
            let (mut xs, mut vs) = (Vec::new(), Vec::new());
            for rec in rd.records() {
                let rec = rec.map_err(|e| CoulombError::Input(format!("{}: {e}", path.display())))?;
                let p = |i: usize| rec.get(i).unwrap_or("").trim().parse::<f64>().map_err(|e| CoulombError::Input(format!("{}: {e}", path.display())));
                xs.push(p(0)?);
                vs.push(Complex64::new(p(1)?, p(2)?));
            }
            let weights = trapezoid_weights(&xs);
            SpectrumFile::Complex(ComplexTransform { charge: q.value(), sigma_nodes: xs, weights, values: vs })
        } else {
            let t = read_real_csv(path)?;
            if t.x_name != "sigma" {
                return Err(CoulombError::Input(format!("{}: a spectrum needs a `sigma,value` header", path.display())));
            }
            let weights = trapezoid_weights(&t.xs);
            let density_at_nodes = t.xs.iter().map(|&s| spectral_density(q, s).density).collect();
            SpectrumFile::Real(TransformedProfile { sigma_nodes: t.xs, weights, values: t.ys, density_at_nodes, charge: q.value() })
        }
    };
    let charge = match &spectrum {
        SpectrumFile::Real(t) => t.charge,
        SpectrumFile::Complex(c) => c.charge,
    };
    if charge != q.value() {
        return Err(CoulombError::domain("q", format!("spectrum was computed at q = {charge}, not {}", q.value())));
    }
    Ok(spectrum)
}

/// One resolvent kernel value.
pub fn cmd_green(a: &GreenArgs) -> std::result::Result<Outcome, CliError> {
    let q = Charge::new(a.q)?;
    let g = green_kernel(q, Complex64::new(a.z_re, a.z_im), a.r, a.s)?;
    let mut outcome = Outcome::default();
    outcome.summary = json!({ "value": g.value });
    write_result(&a.out, to_json(&g), &mut outcome)?;
    Ok(outcome)
}
