//! CSV and JSON emitters for analysis results.

use std::io::Write;

use serde::Serialize;
use twistcube_core::metrics::{MatchingCut, MixingProfile, RouteTrace};
use twistcube_core::spectral::{Histogram, MomentReport, SpectrumResult};
use twistcube_core::symmetry::AutReport;

use crate::error::Result;

fn write_rows<W: Write, R: Serialize>(w: W, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush().map_err(|e| crate::error::CliError::io("<csv>", e))?;
    Ok(())
}

#[derive(Serialize)]
struct EigenRow {
    index: usize,
    eigenvalue: f64,
}

/// `index,eigenvalue`, descending.
pub fn spectrum_csv<W: Write>(s: &SpectrumResult, w: W) -> Result<()> {
    write_rows(w, s.eigenvalues.iter().enumerate().map(|(index, &eigenvalue)| EigenRow { index, eigenvalue }))
}

/// `index,eigenvalue,residual` for the leading eigenvalues.
pub fn top_csv<W: Write>(values: &[f64], residuals: &[f64], w: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        index: usize,
        eigenvalue: f64,
        residual: f64,
    }
    write_rows(
        w,
        values.iter().zip(residuals).enumerate().map(|(index, (&eigenvalue, &residual))| Row {
            index,
            eigenvalue,
            residual,
        }),
    )
}

/// `k,m_k,catalan,abs_error`, plus `spectral_m_k` when a spectrum was attached.
pub fn moments_csv<W: Write>(r: &MomentReport, w: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        k: u32,
        m_k: f64,
        catalan: f64,
        abs_error: f64,
    }
    #[derive(Serialize)]
    struct RowWithSpectrum {
        k: u32,
        m_k: f64,
        catalan: f64,
        abs_error: f64,
        spectral_m_k: f64,
    }
    match &r.spectral {
        None => write_rows(
            w,
            r.rows.iter().map(|m| Row { k: m.k, m_k: m.m_k, catalan: m.catalan, abs_error: m.abs_error }),
        ),
        Some(s) => write_rows(
            w,
            r.rows.iter().zip(s).map(|(m, &spectral_m_k)| RowWithSpectrum {
                k: m.k,
                m_k: m.m_k,
                catalan: m.catalan,
                abs_error: m.abs_error,
                spectral_m_k,
            }),
        ),
    }
}

/// `bin_left,bin_right,mass,semicircle_ref,gaussian_ref,semicircle_printed_ref`.
pub fn histogram_csv<W: Write>(h: &Histogram, w: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        bin_left: f64,
        bin_right: f64,
        mass: f64,
        semicircle_ref: f64,
        gaussian_ref: f64,
        semicircle_printed_ref: f64,
    }
    write_rows(
        w,
        h.bins.iter().map(|b| Row {
            bin_left: b.left,
            bin_right: b.right,
            mass: b.mass,
            semicircle_ref: b.semicircle_ref,
            gaussian_ref: b.gaussian_ref,
            semicircle_printed_ref: b.semicircle_printed_ref,
        }),
    )
}

/// `t,tv`.
pub fn mixing_csv<W: Write>(m: &MixingProfile, w: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        t: usize,
        tv: f64,
    }
    write_rows(w, m.tv.iter().enumerate().map(|(t, &tv)| Row { t, tv }))
}

/// `vertex,theta`.
pub fn cycles_csv<W: Write>(counts: &[(u32, u64)], w: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        vertex: u32,
        theta: u64,
    }
    write_rows(w, counts.iter().map(|&(vertex, theta)| Row { vertex, theta }))
}

/// One result row of a batch run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub model: &'static str,
    pub n: u32,
    pub seed: u64,
    pub metric: String,
    pub value: String,
}

/// `model,n,seed,metric,value`.
pub fn results_csv<W: Write>(rows: &[ResultRow], w: W) -> Result<()> {
    write_rows(w, rows)
}

/// `side,crossing_edges,trivial` with the side as a hex bitmask.
pub fn cuts_csv<W: Write>(cuts: &[MatchingCut], w: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        side: String,
        crossing_edges: usize,
        trivial: bool,
    }
    write_rows(
        w,
        cuts.iter().map(|c| Row { side: format!("{:#x}", c.side), crossing_edges: c.crossing.len(), trivial: c.trivial }),
    )
}

pub fn cuts_json(cuts: &[MatchingCut]) -> serde_json::Value {
    serde_json::Value::Array(
        cuts.iter()
            .map(|c| {
                serde_json::json!({
                    "side": format!("{:#x}", c.side),
                    "crossing": c.crossing.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
                    "trivial": c.trivial,
                })
            })
            .collect(),
    )
}

pub fn route_json(r: &RouteTrace) -> serde_json::Value {
    let mut path = vec![r.source.0];
    path.extend(r.hops.iter().map(|h| h.vertex.0));
    serde_json::json!({
        "source": r.source.0,
        "target": r.target.0,
        "length": r.len(),
        "path": path,
        "generations": r.hops.iter().map(|h| h.generation).collect::<Vec<_>>(),
    })
}

/// Generators as image arrays, the order as a decimal string and kind tags.
pub fn aut_json(r: &AutReport) -> serde_json::Value {
    serde_json::json!({
        "vertex_count": r.vertex_count,
        "order": r.order.to_string(),
        "trivial": r.is_trivial(),
        "generators": r.generators,
        "kinds": r.kinds.iter().map(|k| k.name()).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write>(value: &serde_json::Value, mut w: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)
}
