//! CSV files produced and consumed by the command-line tool.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so files are byte-identical across runs with the same input.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geodesic::GeodesicSolution;
use crate::geometry::PathSamples;
use crate::model::ConfigPoint;
use crate::simulate::{SweepRow, Trajectory};

pub const PROTOCOL_HEADER: [&str; 3] = ["s", "x_l", "x_r"];
pub const SUMMARY_HEADER: [&str; 4] = ["index", "length_js_sqrt", "terminal_gap", "theta0_rad"];
pub const TRAJECTORY_HEADER: [&str; 7] = ["t_s", "x_l", "x_r", "n_alpha_l", "n_beta_r", "temperature_k", "work_j"];
pub const SWEEP_HEADER: [&str; 3] = ["tau_s", "w_ex_j", "l2_over_tau_j"];

/// Shortest round-trip representation; scientific notation outside
/// `[1e-4, 1e16)`.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Config(format!("{}: {other:?}", path.display())),
    }
}

fn write_rows<const N: usize>(path: &Path, header: [&str; N], rows: impl Iterator<Item = [f64; N]>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(row.iter().map(|&v| fmt_num(v))).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_protocol(path: &Path, protocol: &PathSamples) -> Result<()> {
    let rows = protocol.s().iter().zip(protocol.points()).map(|(&s, p)| [s, p.x_l, p.x_r]);
    write_rows(path, PROTOCOL_HEADER, rows)
}

/// Reads an `s,x_l,x_r` protocol file.
pub fn read_protocol(path: &Path) -> Result<PathSamples> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let header = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.iter().map(str::trim).collect::<Vec<_>>() != PROTOCOL_HEADER {
        return Err(Error::Config(format!(
            "{}: expected header {}, got {}",
            path.display(),
            PROTOCOL_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut s = Vec::new();
    let mut pts = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let parse = |i: usize| -> Result<f64> {
            let field = rec.get(i).unwrap_or("").trim();
            field.parse().map_err(|_| {
                Error::Config(format!("{}: row {}: cannot parse '{field}' as a number", path.display(), line + 2))
            })
        };
        s.push(parse(0)?);
        pts.push(ConfigPoint { x_l: parse(1)?, x_r: parse(2)? });
    }
    PathSamples::new(s, pts)
}

pub fn write_geodesic_summary(path: &Path, solutions: &[GeodesicSolution]) -> Result<()> {
    let rows = solutions
        .iter()
        .enumerate()
        .map(|(i, g)| [i as f64, g.length, g.terminal_gap, g.initial_angle]);
    write_rows(path, SUMMARY_HEADER, rows)
}

pub fn write_trajectory(path: &Path, tr: &Trajectory) -> Result<()> {
    let rows = tr.samples.iter().map(|s| {
        [
            s.t,
            s.state.config.x_l,
            s.state.config.x_r,
            s.state.n_alpha_l,
            s.state.n_beta_r,
            s.state.temperature,
            s.work,
        ]
    });
    write_rows(path, TRAJECTORY_HEADER, rows)
}

pub fn write_sweep(path: &Path, rows: &[SweepRow]) -> Result<()> {
    write_rows(path, SWEEP_HEADER, rows.iter().map(|r| [r.tau, r.excess_work, r.l_squared_over_tau]))
}
