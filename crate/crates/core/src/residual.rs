//! Left-hand sides of the three zero mean curvature equations.
//!
//! All operators read only the gradient and Hessian of a jet, so they are
//! invariant under adding a constant to the height.

use serde::{Deserialize, Serialize};

use crate::catalog::{ExpectedPde, HeightField};
use crate::error::{Error, Result};
use crate::scalar::{Jet2, Scalar};

/// Half-width of the lightlike band used when none is configured.
pub const DEFAULT_LIGHTLIKE_TOL: f64 = 1e-9;

pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Largest accepted gap between jet and finite-difference residuals.
pub const FD_ACCEPT_GAP: f64 = 1e-6;

/// `(1+f_x²) f_yy − 2 f_x f_y f_xy + (1+f_y²) f_xx`
pub fn residual_mse<T: Scalar>(j: &Jet2<T>) -> T {
    let (fx, fy) = (j.fx(), j.fy());
    let one = T::one();
    (one + fx * fx) * j.fyy() - T::from_f64(2.0) * fx * fy * j.fxy() + (one + fy * fy) * j.fxx()
}

/// `(1−g_x²) g_yy + 2 g_x g_y g_xy + (1−g_y²) g_xx`
pub fn residual_zmc<T: Scalar>(j: &Jet2<T>) -> T {
    let (gx, gy) = (j.fx(), j.fy());
    let one = T::one();
    (one - gx * gx) * j.fyy() + T::from_f64(2.0) * gx * gy * j.fxy() + (one - gy * gy) * j.fxx()
}

/// `(1+h_y²) h_zz − 2 h_y h_z h_yz + (h_z²−1) h_yy`, with the jet's first
/// variable read as `y` and the second as `z`.
pub fn residual_bie<T: Scalar>(j: &Jet2<T>) -> T {
    let (hy, hz) = (j.fx(), j.fy());
    let one = T::one();
    (one + hy * hy) * j.fyy() - T::from_f64(2.0) * hy * hz * j.fxy() + (hz * hz - one) * j.fxx()
}

/// Residual of the given equation; `None` for [`ExpectedPde::None`].
pub fn residual_for<T: Scalar>(pde: ExpectedPde, j: &Jet2<T>) -> Option<T> {
    match pde {
        ExpectedPde::Mse => Some(residual_mse(j)),
        ExpectedPde::Zmc => Some(residual_zmc(j)),
        ExpectedPde::Bie => Some(residual_bie(j)),
        ExpectedPde::None => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Which coordinate plane of Minkowski 3-space the graph sits over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphKind {
    /// `t = g(x, y)` over the spacelike plane.
    Xy,
    /// `x = h(y, z)` over the timelike plane, `z` the time coordinate.
    Yz,
}

/// The quantity whose sign decides the causal character; zero is lightlike.
pub fn causal_quantity(j: &Jet2<f64>, kind: GraphKind) -> f64 {
    match kind {
        GraphKind::Xy => j.fx() * j.fx() + j.fy() * j.fy() - 1.0,
        GraphKind::Yz => 1.0 + j.fx() * j.fx() - j.fy() * j.fy(),
    }
}

pub fn causal_character_graph(j: &Jet2<f64>, kind: GraphKind, tol: f64) -> CausalCharacter {
    let q = causal_quantity(j, kind);
    // For xy-graphs q > 0 is timelike; for yz-graphs q > 0 is also timelike.
    if q < -tol {
        CausalCharacter::Spacelike
    } else if q > tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdReport {
    pub point: [f64; 2],
    pub step: f64,
    pub jet_residual: f64,
    pub fd_residual: f64,
    pub gap: f64,
    /// Largest gap between jet and stencil derivatives (first and second order).
    pub derivative_gap: f64,
}

impl FdReport {
    pub fn accepted(&self) -> bool {
        self.gap <= FD_ACCEPT_GAP
    }
}

/// Derivatives from 5-point central stencils; the mixed term is a
/// Richardson combination of steps `h` and `2h`.
pub fn fd_jet(hf: &HeightField, x: f64, y: f64, h: f64) -> Result<Jet2<f64>> {
    let f = |dx: f64, dy: f64| hf.value(x + dx, y + dy);
    let f0 = f(0.0, 0.0)?;
    let d1 = |p2: f64, p1: f64, m1: f64, m2: f64| (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    let d2 = |p2: f64, p1: f64, m1: f64, m2: f64| (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
    let (xp2, xp1, xm1, xm2) = (f(2.0 * h, 0.0)?, f(h, 0.0)?, f(-h, 0.0)?, f(-2.0 * h, 0.0)?);
    let (yp2, yp1, ym1, ym2) = (f(0.0, 2.0 * h)?, f(0.0, h)?, f(0.0, -h)?, f(0.0, -2.0 * h)?);
    let cross = |s: f64| -> Result<f64> { Ok((f(s, s)? - f(s, -s)? - f(-s, s)? + f(-s, -s)?) / (4.0 * s * s)) };
    let fxy = (16.0 * cross(h)? - cross(2.0 * h)?) / 15.0;
    Ok(Jet2::new(
        f0,
        [d1(xp2, xp1, xm1, xm2), d1(yp2, yp1, ym1, ym2)],
        [d2(xp2, xp1, xm1, xm2), fxy, d2(yp2, yp1, ym1, ym2)],
    ))
}

/// Jet residual against the residual of stencil derivatives.
pub fn fd_crosscheck(hf: &HeightField, pde: ExpectedPde, point: [f64; 2], h: f64) -> Result<FdReport> {
    if pde == ExpectedPde::None {
        return Err(Error::InvalidParam("finite-difference check needs a target equation".into()));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParam(format!("step must be positive, got {h}")));
    }
    let [x, y] = point;
    let reach = 4.0 * h;
    for i in [-1.0, 0.0, 1.0] {
        for k in [-1.0, 0.0, 1.0] {
            if !hf.contains(x + i * reach, y + k * reach) {
                return Err(Error::Domain(format!(
                    "stencil around ({x}, {y}) with step {h} leaves the domain of {}",
                    hf.id()
                )));
            }
        }
    }
    let jet = hf.eval(x, y)?;
    let fd = fd_jet(hf, x, y, h)?;
    let jet_residual = residual_for(pde, &jet).unwrap_or(0.0);
    let fd_residual = residual_for(pde, &fd).unwrap_or(0.0);
    Ok(FdReport {
        point,
        step: h,
        jet_residual,
        fd_residual,
        gap: (jet_residual - fd_residual).abs(),
        derivative_gap: jet.max_diff(&fd),
    })
}
