//! CSV and JSON writers for profiles, band tables, flow tables and
//! bifurcation points. Floats are written with 15 significant digits.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use crate::bifurcation::{BifurcationPoint, FlowRow};
use crate::delaunay::{ProfileOptions, ProfileSolution};
use crate::error::{Error, Result};
use crate::spectral::BandTable;

/// 15 significant digits in scientific notation.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.14e}")
}

fn csv_writer<W: Write>(out: W, header: &[&str]) -> Result<csv::Writer<W>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    Ok(w)
}

fn finish<W: Write>(w: csv::Writer<W>) -> Result<()> {
    w.into_inner().map_err(|e| Error::Serialize(e.to_string()))?.flush().map_err(|e| Error::Serialize(e.to_string()))
}

pub fn write_profile_csv<W: Write>(profile: &ProfileSolution, out: W) -> Result<()> {
    let mut w = csv_writer(out, &["s", "t", "sigma", "dsigma", "kappa"])?;
    for p in &profile.samples {
        w.write_record([p.s, p.t, p.sigma, p.dsigma, p.kappa].map(fmt_num))?;
    }
    finish(w)
}

/// Metadata accompanying a profile export.
pub fn profile_metadata(profile: &ProfileSolution, opts: &ProfileOptions) -> serde_json::Value {
    json!({
        "tau": profile.tau,
        "s_tau": profile.s_tau,
        "period": profile.period,
        "samples_per_period": profile.samples_per_period,
        "periods": profile.periods,
        "substeps": profile.substeps,
        "tolerances": {
            "ode": opts.tolerance,
            "achieved": profile.error_estimate,
            "energy_drift": profile.max_energy_drift(),
        },
        "period_method": format!("{:?}", opts.period_method),
    })
}

pub fn write_band_csv<W: Write>(table: &BandTable, out: W) -> Result<()> {
    let mut w = csv_writer(out, &["tau", "k", "alpha", "lambda"])?;
    for (tau, k, alpha, lambda) in table.rows() {
        w.write_record([fmt_num(tau), k.to_string(), fmt_num(alpha), fmt_num(lambda)])?;
    }
    finish(w)
}

pub fn write_flow_csv<W: Write>(rows: &[FlowRow], out: W) -> Result<()> {
    let mut w = csv_writer(out, &["tau", "n", "k", "value"])?;
    for r in rows {
        w.write_record([fmt_num(r.tau), r.n.to_string(), r.k.to_string(), fmt_num(r.value)])?;
    }
    finish(w)
}

pub fn write_bifurcation_csv<W: Write>(points: &[BifurcationPoint], out: W) -> Result<()> {
    let mut w = csv_writer(
        out,
        &["j", "alpha", "beta", "tau", "band_index", "slope", "dtau_slope", "residual", "conjectural"],
    )?;
    for p in points {
        w.write_record([
            p.symmetry.j.to_string(),
            fmt_num(p.symmetry.alpha),
            fmt_num(p.symmetry.beta(1)),
            fmt_num(p.tau_star),
            p.band_index.to_string(),
            fmt_num(p.slope),
            fmt_num(p.dtau_slope),
            fmt_num(p.residual),
            p.conjectural.to_string(),
        ])?;
    }
    finish(w)
}

/// Pretty JSON of any serializable value.
pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(|e| Error::Serialize(e.to_string()))
}

/// Opens `path` for buffered writing, mapping failures to [`Error::Io`].
pub fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::solve_profile;

    #[test]
    fn profile_csv_header_and_rows() {
        let p = solve_profile(-1.0, 16, 1, &ProfileOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("s,t,sigma,dsigma,kappa"));
        assert_eq!(lines.count(), 17);
        let meta = profile_metadata(&p, &ProfileOptions::default());
        assert_eq!(meta["samples_per_period"], 16);
    }

    #[test]
    fn fifteen_digits() {
        assert_eq!(fmt_num(0.834_626_841_674_073), "8.34626841674073e-1");
    }
}
