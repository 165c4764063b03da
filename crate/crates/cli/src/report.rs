use std::fmt::Write;

use glshp::lsq::{EpsilonClass, StartKind};
use glshp::wronskian::{ClosedFormSource, ClosedFormW3, WronskianReport};
use glshp::Solution64;
use serde::Serialize;

use crate::args::Grid;

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub problem: String,
    pub alpha: f64,
    pub beta: f64,
    pub converged: bool,
    pub coefficients: Vec<Coefficient>,
    pub jvalue: f64,
    pub j_hpm: f64,
    pub j_guess: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub start: String,
    pub wronskian: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<EpsilonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridReport>,
}

#[derive(Debug, Serialize)]
pub struct Coefficient {
    pub name: String,
    pub basis: String,
    pub value: f64,
    /// Fixed by the initial conditions rather than fitted.
    pub fixed: bool,
    pub hpm_start: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Certificate {
    pub unknown: String,
    pub x: f64,
    pub t: f64,
    pub order: f64,
    pub value: f64,
    pub threshold: f64,
    pub independent: bool,
    pub matrix: Vec<Vec<f64>>,
    pub mid_composition_annihilations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedForms>,
}

/// Closed-form determinants of the three-function basis at the same point.
#[derive(Debug, Serialize)]
pub struct ClosedForms {
    pub derived: f64,
    pub reference: f64,
}

#[derive(Debug, Serialize)]
pub struct EpsilonReport {
    pub epsilon: f64,
    pub pointwise: bool,
    pub weak: bool,
    pub sup: f64,
    pub weak_value: f64,
}

#[derive(Debug, Serialize)]
pub struct GridReport {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct WronskianOutput {
    pub problem: String,
    pub alpha: f64,
    pub beta: f64,
    pub certificates: Vec<Certificate>,
}

pub fn start_name(s: StartKind) -> String {
    match s {
        StartKind::Hpm => "hpm".into(),
        StartKind::Zero => "zero".into(),
        StartKind::Random(k) => format!("random-{k}"),
    }
}

pub fn certificate(
    unknown: &str,
    r: &WronskianReport<f64>,
    closed: Option<(f64, glshp::wronskian::FunctionOrder)>,
) -> Certificate {
    let closed_form = closed.and_then(|(order_value, fo)| {
        let eval = |source| ClosedFormW3::new(order_value, fo, source).eval(r.x, r.t).ok();
        Some(ClosedForms {
            derived: eval(ClosedFormSource::Derived)?,
            reference: eval(ClosedFormSource::Reference)?,
        })
    });
    Certificate {
        unknown: unknown.into(),
        x: r.x,
        t: r.t,
        order: r.order,
        value: r.value,
        threshold: r.threshold,
        independent: r.independent,
        matrix: r.matrix.clone(),
        mid_composition_annihilations: r.mid_composition_annihilations,
        closed_form,
    }
}

pub fn epsilon(c: &EpsilonClass<f64>) -> EpsilonReport {
    EpsilonReport {
        epsilon: c.epsilon,
        pointwise: c.pointwise,
        weak: c.weak,
        sup: c.sup,
        weak_value: c.weak_value,
    }
}

pub fn coefficients(sol: &Solution64) -> Vec<Coefficient> {
    let mut out = Vec::new();
    for u in &sol.unknowns {
        let a = &u.ansatz;
        for (i, label) in a.basis.labels.iter().enumerate() {
            let hpm_start = a.free.iter().position(|&k| k == i).map(|k| u.hpm_start[k]);
            out.push(Coefficient {
                name: format!("{}{i}", a.symbol()),
                basis: label.clone(),
                value: u.coefficients[i],
                fixed: a.fixed.contains_key(&i),
                hpm_start,
            });
        }
    }
    out
}

/// Lattice values `[x, t, u(, v)]`, `t` in the outer loop.
pub fn grid_rows(sol: &Solution64, grid: Grid) -> glshp::Result<Vec<Vec<f64>>> {
    let mut rows = Vec::with_capacity(grid.nx * grid.nt);
    for j in 0..grid.nt {
        let t = j as f64 / (grid.nt - 1) as f64;
        for i in 0..grid.nx {
            let x = i as f64 / (grid.nx - 1) as f64;
            let mut row = vec![x, t];
            row.extend(sol.eval(x, t)?);
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn grid_columns(sol: &Solution64) -> Vec<String> {
    let mut cols = vec!["x".to_string(), "t".to_string()];
    cols.extend(sol.unknowns.iter().map(|u| u.unknown().name().to_string()));
    cols
}

/// CSV with 17 significant digits, so every value re-parses to the same double.
pub fn csv(columns: &[String], rows: &[Vec<f64>]) -> String {
    let mut s = columns.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(s, "{}", cells.join(","));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_values_round_trip() {
        let vals = [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE, 0.0];
        let text = csv(&["a".into()], &vals.iter().map(|&v| vec![v]).collect::<Vec<_>>());
        let back: Vec<f64> = text.lines().skip(1).map(|l| l.parse().unwrap()).collect();
        for (a, b) in vals.iter().zip(&back) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
