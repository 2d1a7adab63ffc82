//! Graph surfaces immersed in Minkowski 4-space `(x, y, z, w)` with metric
//! `dx² + dy² + dz² − dw²`, their lightlike normal pairs and expansion
//! scalars `k₁`, `k₂`.
//!
//! ```text
//! F(x, y) = (x, y, f(x, y), 0)
//! G(x, y) = (0, y, x, g(x, y))
//! H(y, z) = (0, h(y, z), z, y)
//! ```
//!
//! The `k`'s are the displayed polynomial expressions, which differ from the
//! trace `gⁱʲ Fᵢⱼ·ν` by a positive factor. That factor never changes the sign
//! of `k₁k₂` or whether a `k` vanishes, so the classification is unaffected.
//!
//! For `H` the `k₁` expression is the Born–Infeld operator with `y` and `z`
//! exchanged, so a Born–Infeld solution `χ(y, z)` immerses as `χ(z, y)`; use
//! [`HeightField::swapped`].

use serde::{Deserialize, Serialize};

use crate::catalog::HeightField;
use crate::error::{Error, Result};
use crate::scalar::Jet2;

/// Tolerance on the `k`'s for classification.
pub const DEFAULT_CLASS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Immersion {
    F,
    G,
    H,
}

impl std::str::FromStr for Immersion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(Immersion::F),
            "G" | "g" => Ok(Immersion::G),
            "H" | "h" => Ok(Immersion::H),
            _ => Err(Error::InvalidParam(format!("unknown immersion {s:?} (use F, G or H)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Codim2Class {
    Maximal,
    WeaklyUntrapped,
    StarSurface,
    WeaklyUntrappedAndStar,
}

impl Codim2Class {
    pub fn is_weakly_untrapped(self) -> bool {
        !matches!(self, Codim2Class::StarSurface)
    }

    pub fn is_star(self) -> bool {
        !matches!(self, Codim2Class::WeaklyUntrapped)
    }
}

/// `⟨u, v⟩` for signature `(+, +, +, −)`.
pub fn minkowski_dot(u: &[f64; 4], v: &[f64; 4]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Codim2Data {
    pub point: [f64; 2],
    pub immersion: Immersion,
    /// `[[g11, g12], [g12, g22]]`
    pub induced_metric: [[f64; 2]; 2],
    pub nu1: [f64; 4],
    pub nu2: [f64; 4],
    pub k1: f64,
    pub k2: f64,
}

impl Codim2Data {
    /// Largest `|⟨νᵢ, νᵢ⟩|` relative to the size of the normals.
    pub fn lightlike_residual(&self) -> f64 {
        [self.nu1, self.nu2]
            .iter()
            .map(|n| minkowski_dot(n, n).abs() / n.iter().map(|c| c * c).sum::<f64>().max(1.0))
            .fold(0.0, f64::max)
    }

    /// Timelike component of each normal is positive.
    pub fn future_pointing(&self) -> [bool; 2] {
        [self.nu1[3] > 0.0, self.nu2[3] > 0.0]
    }

    pub fn metric_positive_definite(&self) -> bool {
        let g = &self.induced_metric;
        g[0][0] > 0.0 && g[0][0] * g[1][1] - g[0][1] * g[1][0] > 0.0
    }

    /// Replaces `νᵢ` by `λᵢνᵢ`; the mean curvature vector is fixed, so `kᵢ`
    /// becomes `kᵢ/λᵢ`.
    pub fn rescaled(&self, l1: f64, l2: f64) -> Self {
        let mut out = *self;
        out.nu1 = self.nu1.map(|c| c * l1);
        out.nu2 = self.nu2.map(|c| c * l2);
        out.k1 = self.k1 / l1;
        out.k2 = self.k2 / l2;
        out
    }

    pub fn classify(&self, tol: f64) -> Codim2Class {
        let (k1, k2) = (self.k1, self.k2);
        if k1.abs() <= tol && k2.abs() <= tol {
            return Codim2Class::Maximal;
        }
        let p = k1 * k2;
        match (p <= tol * tol, p >= -tol * tol) {
            (true, true) => Codim2Class::WeaklyUntrappedAndStar,
            (true, false) => Codim2Class::WeaklyUntrapped,
            _ => Codim2Class::StarSurface,
        }
    }
}

/// Builds the immersion data from a real jet at `point`.
pub fn from_jet(immersion: Immersion, j: &Jet2<f64>, point: [f64; 2]) -> Result<Codim2Data> {
    let (a, b) = (j.fx(), j.fy());
    let (aa, ab, bb) = (j.fxx(), j.fxy(), j.fyy());
    match immersion {
        Immersion::F => {
            let r = (1.0 + a * a + b * b).sqrt();
            let k1 = (1.0 + b * b) * aa + (1.0 + a * a) * bb - 2.0 * a * b * ab;
            Ok(Codim2Data {
                point,
                immersion,
                induced_metric: [[1.0 + a * a, a * b], [a * b, 1.0 + b * b]],
                nu1: [a, b, -1.0, r],
                nu2: [-a, -b, 1.0, r],
                k1,
                k2: -k1,
            })
        }
        Immersion::G => {
            let q = 1.0 - a * a - b * b;
            if q <= 0.0 {
                return Err(Error::NotSpacelike(point[0], point[1]));
            }
            let r = q.sqrt();
            let k1 = (1.0 - b * b) * aa + (1.0 - a * a) * bb + 2.0 * a * b * ab;
            Ok(Codim2Data {
                point,
                immersion,
                induced_metric: [[1.0 - a * a, -a * b], [-a * b, 1.0 - b * b]],
                nu1: [r, b, a, 1.0],
                nu2: [-r, b, a, 1.0],
                k1,
                k2: k1,
            })
        }
        Immersion::H => {
            // a = h_y, b = h_z
            let q = a * a - 1.0 - b * b;
            if q <= 0.0 {
                return Err(Error::NotSpacelike(point[0], point[1]));
            }
            let r = q.sqrt();
            let k1 = (1.0 + b * b) * aa - (1.0 - a * a) * bb - 2.0 * a * b * ab;
            Ok(Codim2Data {
                point,
                immersion,
                induced_metric: [[a * a - 1.0, a * b], [a * b, b * b + 1.0]],
                nu1: [r, 1.0, -b, a],
                nu2: [r, -1.0, b, -a],
                k1,
                k2: -k1,
            })
        }
    }
}

pub fn immerse(immersion: Immersion, hf: &HeightField, u: f64, v: f64) -> Result<Codim2Data> {
    from_jet(immersion, &hf.eval(u, v)?, [u, v])
}

pub fn immerse_f(f: &HeightField, x: f64, y: f64) -> Result<Codim2Data> {
    immerse(Immersion::F, f, x, y)
}

pub fn immerse_g(g: &HeightField, x: f64, y: f64) -> Result<Codim2Data> {
    immerse(Immersion::G, g, x, y)
}

pub fn immerse_h(h: &HeightField, y: f64, z: f64) -> Result<Codim2Data> {
    immerse(Immersion::H, h, y, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, DilationSpec, FamilyParam};
    use crate::residual::{residual_bie, residual_mse};

    #[test]
    fn planes_are_maximal() {
        let c = catalog::constant(1.5);
        for im in [Immersion::F, Immersion::G] {
            let d = immerse(im, &c, 0.2, 0.3).unwrap();
            assert_eq!(d.classify(DEFAULT_CLASS_TOL), Codim2Class::Maximal);
        }
        let lin = Jet2::new(0.0, [2.0, 0.0], [0.0; 3]);
        let d = from_jet(Immersion::H, &lin, [0.0, 0.0]).unwrap();
        assert_eq!(d.classify(DEFAULT_CLASS_TOL), Codim2Class::Maximal);
    }

    #[test]
    fn f_curvature_is_mse_residual() {
        let d = DilationSpec::real(1.3, 0.7, 0.1, 1.2, -0.2);
        let f = catalog::dilate(&catalog::helicoid(), &d).unwrap();
        let j = f.eval(0.9, 0.4).unwrap();
        let data = from_jet(Immersion::F, &j, [0.9, 0.4]).unwrap();
        assert!((data.k1 - residual_mse(&j)).abs() <= 1e-13);
        assert_eq!(data.classify(DEFAULT_CLASS_TOL), Codim2Class::WeaklyUntrapped);
        assert!(data.lightlike_residual() <= 1e-12);
        assert_eq!(data.future_pointing(), [true, true]);
    }

    #[test]
    fn g_requires_spacelike() {
        let steep = Jet2::new(0.0, [1.0, 0.5], [0.0; 3]);
        assert!(matches!(from_jet(Immersion::G, &steep, [1.0, 2.0]), Err(Error::NotSpacelike(..))));
    }

    #[test]
    fn h_uses_swapped_born_infeld_field() {
        // χ is spacelike near the edge of its domain.
        let p = FamilyParam::new(0.8).unwrap();
        let chi = catalog::chi(p);
        let (y, z) = (1.0, 0.98);
        let jc = chi.eval(y, z).unwrap();
        assert!(residual_bie(&jc).abs() < 1e-9);
        let d = immerse_h(&chi.swapped(), z, y).unwrap();
        assert!(d.k1.abs() <= 1e-9, "{d:?}");
        assert!(d.metric_positive_definite());
        let fp = d.future_pointing();
        assert!(fp[0] != fp[1], "one stated normal is past-pointing");
    }

    #[test]
    fn rescaling_keeps_class() {
        let data = Codim2Data {
            point: [0.0, 0.0],
            immersion: Immersion::G,
            induced_metric: [[1.0, 0.0], [0.0, 1.0]],
            nu1: [1.0, 0.0, 0.0, 1.0],
            nu2: [-1.0, 0.0, 0.0, 1.0],
            k1: 0.3,
            k2: 0.3,
        };
        for l in [0.5, 2.0, 10.0] {
            assert_eq!(data.rescaled(l, l).classify(1e-8), Codim2Class::StarSurface);
        }
    }
}
