//! Graded cohomology table of the derived conformal algebra of `A^n`.
//!
//! Rows are computed in the bundle grading `d` of `S^d(G)(1)|_Q`, where
//! `H^1` in row `d` is `Coker(y_{d-1,q})`. [`Indexing::Theorem`] shifts `H^1`
//! down by one so that row `d` holds `Coker(y_{d,q})`; `H^0` is graded by the
//! polynomial degree of the Killing field in both cases.

use rayon::prelude::*;
use serde::Serialize;

use crate::bott::{les_restriction_to_q_with, quadric_h1_formula, GradedCohomology};
use crate::error::{Error, Result};
use crate::killing::ck_kernel_dim;
use crate::polyspaces::QuadraticForm;
use crate::weights::sym_dim;
use crate::young_map::{connecting_rank, kernel_cokernel_dims};

/// Largest `dim S^m ⊗ S^2` for which `y_{m,q}` is ranked exactly.
pub const DEFAULT_EXACT_LIMIT: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    /// Row `d` holds `Coker(y_{d,q})`.
    #[default]
    Theorem,
    /// Row `d` holds `H^•(Q, S^d(G)(1)|_Q)`.
    Bundle,
}

/// How the `H^1` entry of a row was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// No connecting map involved.
    Direct,
    /// Exact rank of `y_{m,q}`, cross-checked against the dimension formula.
    Exact,
    /// Weyl-dimension difference only (outside the exact range).
    Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub d: u32,
    pub h0: u64,
    pub h1: u64,
    pub h0_label: Option<String>,
    pub h1_label: Option<String>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub n: usize,
    pub dmax: u32,
    pub indexing: Indexing,
    pub rows: Vec<TableRow>,
    pub h0_total: u64,
    pub h1_total: u64,
}

fn y_source_target(n: usize, m: u32) -> usize {
    sym_dim(n, i64::from(m)) * sym_dim(n, 2)
}

/// One row in the bundle grading.
fn bundle_row(n: usize, d: u32, exact_limit: usize) -> Result<(GradedCohomology, Method)> {
    let exact = d < 3 || y_source_target(n, d - 1) <= exact_limit;
    let method = match (d < 3, exact) {
        (true, _) => Method::Direct,
        (false, true) => Method::Exact,
        (false, false) => Method::Formula,
    };
    let h = if exact {
        les_restriction_to_q_with(n, d, connecting_rank)?
    } else {
        // injectivity of y_{d-1,q}
        les_restriction_to_q_with(n, d, |n, m| Ok(sym_dim(n, i64::from(m))))?
    };
    if let Some(i) = h.degrees().find(|&i| i >= 2) {
        return Err(Error::integrity(
            "reconf",
            format!("n = {n}, d = {d}: nonzero H^{i}"),
        ));
    }
    if d >= 3 {
        let formula = quadric_h1_formula(n, d)?;
        if h.dim(1) != formula || h.dim(0) != 0 {
            return Err(Error::integrity(
                "reconf",
                format!(
                    "n = {n}, d = {d}: exact H^1 = {}, dimension formula = {formula}",
                    h.dim(1)
                ),
            ));
        }
    }
    Ok((h, method))
}

pub fn reconf_table(n: usize, dmax: u32, indexing: Indexing) -> Result<CohomologyTable> {
    reconf_table_with_limit(n, dmax, indexing, DEFAULT_EXACT_LIMIT)
}

/// [`reconf_table`] with an explicit exact-range bound.
pub fn reconf_table_with_limit(
    n: usize,
    dmax: u32,
    indexing: Indexing,
    exact_limit: usize,
) -> Result<CohomologyTable> {
    if n < 3 || dmax < 3 {
        return Err(Error::precondition(
            "reconf",
            format!("need n >= 3 and dmax >= 3, got n = {n}, dmax = {dmax}"),
        ));
    }
    let last = match indexing {
        Indexing::Theorem => dmax + 1,
        Indexing::Bundle => dmax,
    };
    let bundle: Vec<(GradedCohomology, Method)> = (0..=last)
        .into_par_iter()
        .map(|d| bundle_row(n, d, exact_limit))
        .collect::<Result<_>>()?;
    let label = |h: &GradedCohomology, i: usize| h.get(i).map(|p| p.label());
    let rows: Vec<TableRow> = (0..=dmax as usize)
        .map(|d| {
            let h1_src = match indexing {
                Indexing::Theorem => d + 1,
                Indexing::Bundle => d,
            };
            let (h0, _) = &bundle[d];
            let (h1, method) = &bundle[h1_src];
            TableRow {
                d: d as u32,
                h0: h0.dim(0),
                h1: h1.dim(1),
                h0_label: label(h0, 0),
                h1_label: label(h1, 1),
                method: *method,
            }
        })
        .collect();
    let h0_total: u64 = rows.iter().map(|r| r.h0).sum();
    let expected = ((n + 2) * (n + 1) / 2) as u64;
    if h0_total != expected {
        return Err(Error::integrity(
            "reconf",
            format!("n = {n}: H^0 total {h0_total}, expected {expected}"),
        ));
    }
    Ok(CohomologyTable {
        n,
        dmax,
        indexing,
        h1_total: rows.iter().map(|r| r.h1).sum(),
        h0_total,
        rows,
    })
}

impl CohomologyTable {
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("d\tH0\tH1\tmethod\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                r.d,
                r.h0,
                r.h1,
                method_name(r.method)
            ));
        }
        s.push_str(&format!("total\t{}\t{}\t\n", self.h0_total, self.h1_total));
        s
    }

    pub fn to_pretty(&self) -> String {
        let header = ["d", "H^0", "H^1", "H^0 as rep", "H^1 as rep", "method"];
        let body: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.d.to_string(),
                    r.h0.to_string(),
                    r.h1.to_string(),
                    r.h0_label.clone().unwrap_or_else(|| "0".into()),
                    r.h1_label.clone().unwrap_or_else(|| "0".into()),
                    method_name(r.method).into(),
                ]
            })
            .collect();
        let mut out = format!(
            "Cohomology of Rconf(A^{}) ({} indexing)\n",
            self.n,
            match self.indexing {
                Indexing::Theorem => "theorem",
                Indexing::Bundle => "bundle",
            }
        );
        out.push_str(&align(&header.map(String::from), &body));
        out.push_str(&format!(
            "total through d = {}: H^0 = {}, H^1 = {}\n",
            self.dmax, self.h0_total, self.h1_total
        ));
        out
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Direct => "direct",
        Method::Exact => "exact",
        Method::Formula => "formula",
    }
}

/// Left-aligned columns separated by two spaces.
pub fn align<const K: usize>(header: &[String; K], body: &[[String; K]]) -> String {
    let mut widths: [usize; K] = std::array::from_fn(|i| header[i].chars().count());
    for row in body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String; K]| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header);
    for row in body {
        out.push_str(&line(row));
    }
    out
}

/// Graded dimensions of `H^0` and `H^1` for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityRow {
    pub n: usize,
    pub h0: Vec<u64>,
    pub h1: Vec<u64>,
    /// `None` when `H^0` is infinite-dimensional (`n = 2`).
    pub h0_total: Option<u64>,
    /// Whether `H^1` is nonzero in infinitely many degrees.
    pub h1_unbounded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub dmax: u32,
    pub rows: Vec<ContinuityRow>,
}

/// Theorem-indexed graded dimensions for each `n` in `ns` (within `2..=6`).
pub fn continuity_report(ns: &[usize], dmax: u32) -> Result<ContinuityReport> {
    if let Some(&bad) = ns.iter().find(|&&n| !(2..=6).contains(&n)) {
        return Err(Error::precondition(
            "reconf",
            format!("continuity report covers 2 <= n <= 6, got n = {bad}"),
        ));
    }
    let dmax = dmax.max(3);
    let rows = ns
        .iter()
        .map(|&n| {
            if n == 2 {
                let q = QuadraticForm::standard(2);
                let h0 = (0..=dmax)
                    .map(|d| ck_kernel_dim(2, d).map(|k| k as u64))
                    .collect::<Result<_>>()?;
                let h1 = (0..=dmax)
                    .map(|d| {
                        if d < 2 {
                            Ok(0)
                        } else {
                            kernel_cokernel_dims(2, d, &q).map(|kc| kc.coker as u64)
                        }
                    })
                    .collect::<Result<_>>()?;
                Ok(ContinuityRow {
                    n,
                    h0,
                    h1,
                    h0_total: None,
                    h1_unbounded: false,
                })
            } else {
                let t = reconf_table(n, dmax, Indexing::Theorem)?;
                Ok(ContinuityRow {
                    n,
                    h0: t.rows.iter().map(|r| r.h0).collect(),
                    h1: t.rows.iter().map(|r| r.h1).collect(),
                    h0_total: Some(t.h0_total),
                    h1_unbounded: true,
                })
            }
        })
        .collect::<Result<_>>()?;
    Ok(ContinuityReport { dmax, rows })
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl ContinuityReport {
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tH0\tH1\tH0_total\n");
        for r in &self.rows {
            let total = r
                .h0_total
                .map_or_else(|| "inf".to_string(), |t| t.to_string());
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                r.n,
                join(&r.h0),
                join(&r.h1),
                total
            ));
        }
        s
    }

    pub fn to_pretty(&self) -> String {
        let header = ["n", "H^0 by degree", "H^1 by degree", "dim H^0"].map(String::from);
        let body: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| {
                let tail = if r.h1_unbounded { ",..." } else { ",0,..." };
                let h0_tail = if r.h0_total.is_none() {
                    ",..."
                } else {
                    ",0,..."
                };
                [
                    r.n.to_string(),
                    format!("{}{h0_tail}", join(&r.h0)),
                    format!("{}{tail}", join(&r.h1)),
                    r.h0_total
                        .map_or_else(|| "infinite".into(), |t| t.to_string()),
                ]
            })
            .collect();
        let mut out = format!("Graded dimensions through d = {}\n", self.dmax);
        out.push_str(&align(&header, &body));
        out
    }
}
