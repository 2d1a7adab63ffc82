//! Pointwise codimension-two classification of a surface over a grid.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use zmc_core::codim2::{self, Codim2Class, Immersion};
use zmc_core::{Error, ExpectedPde, HeightField};

use crate::config::GridSpec;
use crate::error::{ForgeError, Result};
use crate::report::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassRow {
    /// Grid coordinates in the field's own variables.
    pub u: f64,
    pub v: f64,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    /// A class name, or `not-spacelike`.
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSummary {
    pub schema_version: &'static str,
    pub surface: String,
    pub immersion: Immersion,
    /// The `(y, z)` field was swapped so `H` sees `x = h(z, y)`.
    pub swapped: bool,
    pub tol: f64,
    pub points: usize,
    pub counts: BTreeMap<String, usize>,
}

fn class_name(c: Codim2Class) -> &'static str {
    match c {
        Codim2Class::Maximal => "maximal",
        Codim2Class::WeaklyUntrapped => "weakly-untrapped",
        Codim2Class::StarSurface => "star",
        Codim2Class::WeaklyUntrappedAndStar => "weakly-untrapped-and-star",
    }
}

/// Classifies every grid node in the domain. Born–Infeld fields under `H`
/// are swapped first, since `H` reads its field with the time variable first.
pub fn classify_grid(
    hf: &HeightField,
    im: Immersion,
    grid: &GridSpec,
    tol: f64,
) -> Result<(Vec<ClassRow>, ClassSummary)> {
    grid.validate()?;
    let swapped = im == Immersion::H && hf.expected_pde() == ExpectedPde::Bie;
    let field = if swapped { hf.swapped() } else { hf.clone() };
    let mut rows = Vec::new();
    let mut counts = BTreeMap::new();
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let [u, v] = grid.node(i, j);
            if !hf.contains_with_margin(u, v, grid.margin) {
                continue;
            }
            let at = if swapped { (v, u) } else { (u, v) };
            let row = match codim2::immerse(im, &field, at.0, at.1) {
                Ok(d) => {
                    let class = class_name(d.classify(tol)).to_string();
                    ClassRow { u, v, k1: Some(d.k1), k2: Some(d.k2), class }
                }
                Err(Error::NotSpacelike(..)) => ClassRow { u, v, k1: None, k2: None, class: "not-spacelike".into() },
                // poles and branch points inside the margin are skipped like the mesh does
                Err(_) => continue,
            };
            *counts.entry(row.class.clone()).or_insert(0) += 1;
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(Error::Domain(format!("no grid node of {grid:?} lies in the domain of {}", hf.id())).into());
    }
    let summary = ClassSummary {
        schema_version: SCHEMA_VERSION,
        surface: hf.id().to_string(),
        immersion: im,
        swapped,
        tol,
        points: rows.len(),
        counts,
    };
    Ok((rows, summary))
}

pub fn write_csv(rows: &[ClassRow], path: &Path) -> Result<()> {
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["u", "v", "k1", "k2", "class"])?;
    for r in rows {
        w.write_record([r.u.to_string(), r.v.to_string(), opt(r.k1), opt(r.k2), r.class.clone()])?;
    }
    w.flush().map_err(|e| ForgeError::io(path, e))
}
