//! Grid sampling of a height field into an OBJ mesh with a CSV sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};

use zmc_core::residual::{causal_character_graph, residual_for, GraphKind, DEFAULT_LIGHTLIKE_TOL};
use zmc_core::{Error, ExpectedPde, HeightField};

use crate::config::GridSpec;
use crate::error::{ForgeError, Result};

/// One kept grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub x: f64,
    pub y: f64,
    pub height: f64,
    /// `|residual|` of the field's expected equation, 0 when it has none.
    pub residual: f64,
    pub causal: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vertex>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn max_residual(&self) -> f64 {
        self.vertices.iter().map(|v| v.residual).fold(0.0, f64::max)
    }
}

/// Causal character of the graph a field defines, by its equation.
fn causal_label(hf: &HeightField, j: &zmc_core::Jet2<f64>) -> &'static str {
    use zmc_core::residual::CausalCharacter::*;
    let kind = match hf.expected_pde() {
        ExpectedPde::Zmc => GraphKind::Xy,
        ExpectedPde::Bie => GraphKind::Yz,
        // a graph over the spacelike plane in Euclidean space
        _ => return "riemannian",
    };
    match causal_character_graph(j, kind, DEFAULT_LIGHTLIKE_TOL) {
        Spacelike => "spacelike",
        Timelike => "timelike",
        Lightlike => "lightlike",
    }
}

/// Evaluates `hf` on the nodes of `grid`. Nodes outside the domain shrunk by
/// `grid.margin` are omitted together with every triangle touching them.
pub fn sample_mesh(hf: &HeightField, grid: &GridSpec) -> Result<Mesh> {
    grid.validate()?;
    let mut index = vec![None; grid.nx * grid.ny];
    let mut vertices = Vec::new();
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let [x, y] = grid.node(i, j);
            if !hf.contains_with_margin(x, y, grid.margin) {
                continue;
            }
            let Ok(jet) = hf.eval(x, y) else { continue };
            let residual = residual_for(hf.expected_pde(), &jet).map_or(0.0, f64::abs);
            index[j * grid.nx + i] = Some(vertices.len());
            vertices.push(Vertex { x, y, height: jet.v, residual, causal: causal_label(hf, &jet) });
        }
    }
    if vertices.is_empty() {
        return Err(Error::Domain(format!("no grid node of {grid:?} lies in the domain of {}", hf.id())).into());
    }
    let mut triangles = Vec::new();
    for j in 0..grid.ny - 1 {
        for i in 0..grid.nx - 1 {
            let at = |di: usize, dj: usize| index[(j + dj) * grid.nx + i + di];
            if let (Some(a), Some(b), Some(c), Some(d)) = (at(0, 0), at(1, 0), at(1, 1), at(0, 1)) {
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            }
        }
    }
    Ok(Mesh { vertices, triangles })
}

/// Sidecar path: `surface.obj` becomes `surface.csv`.
pub fn sidecar_path(obj: &Path) -> PathBuf {
    obj.with_extension("csv")
}

/// Writes the OBJ (1-based faces) and its CSV sidecar.
pub fn write_mesh(mesh: &Mesh, obj_path: &Path, header: &str) -> Result<PathBuf> {
    let mut obj = String::new();
    for line in header.lines() {
        obj.push_str(&format!("# {line}\n"));
    }
    for v in &mesh.vertices {
        obj.push_str(&format!("v {:e} {:e} {:e}\n", v.x, v.y, v.height));
    }
    for t in &mesh.triangles {
        obj.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
    }
    std::fs::File::create(obj_path)
        .and_then(|mut f| f.write_all(obj.as_bytes()))
        .map_err(|e| ForgeError::io(obj_path, e))?;

    let csv_path = sidecar_path(obj_path);
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["x", "y", "height", "residual", "causal"])?;
    for v in &mesh.vertices {
        w.write_record([
            v.x.to_string(),
            v.y.to_string(),
            v.height.to_string(),
            v.residual.to_string(),
            v.causal.into(),
        ])?;
    }
    w.flush().map_err(|e| ForgeError::io(&csv_path, e))?;
    Ok(csv_path)
}
