//! Real and complex scalars, principal-branch elementary functions, and
//! second-order jets in two variables.
//!
//! Everything downstream evaluates through [`Jet2`], generic over the
//! [`Scalar`] trait, which is implemented for `f64` and for
//! [`ComplexScalar`]. Elementary functions never hand back a NaN or an
//! infinity: singular arguments become an [`Error`] at the point where they
//! arise.

mod jet;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use jet::Jet2;

/// Complex numbers in double precision.
pub type ComplexScalar = Complex64;

/// Relative distance below which an argument is treated as sitting on a
/// pole or branch point.
const SINGULAR_EPS: f64 = 8.0 * f64::EPSILON;

fn near_zero(z: f64, scale: f64) -> bool {
    z <= SINGULAR_EPS * scale.max(1.0)
}

/// Principal-branch inverse hyperbolic tangent.
///
/// Branch cuts lie on the real axis for `|Re z| > 1`. On the cut the sign of
/// the imaginary zero selects the side, so `atanh(conj z) = conj(atanh z)`
/// holds exactly, cuts included.
pub fn complex_atanh(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("atanh({z})")));
    }
    if near_zero((z - 1.0).norm(), 1.0) || near_zero((z + 1.0).norm(), 1.0) {
        return Err(Error::BranchPoint(format!("atanh at {z}")));
    }
    if z.re.is_sign_negative() {
        // for Re z near -1 the ln1p argument below sits near -1 and cancels
        return complex_atanh(-z).map(|w| -w);
    }
    let (x, y) = (z.re, z.im);
    // Re atanh z = 1/4 log(|1+z|^2 / |1-z|^2), Im = 1/2 arg((1+z)(1-conj z)).
    let one_minus = 1.0 - x;
    let re = if y == 0.0 && x < 1.0 { x.atanh() } else { 0.25 * (4.0 * x / (one_minus * one_minus + y * y)).ln_1p() };
    let im = 0.5 * (2.0 * y).atan2(one_minus * (1.0 + x) - y * y);
    Ok(Complex64::new(re, im))
}

/// Principal-branch inverse tangent, `atan z = -i atanh(i z)`.
///
/// Branch cuts lie on the imaginary axis for `|Im z| > 1`.
pub fn complex_atan(z: Complex64) -> Result<Complex64> {
    let w = complex_atanh(Complex64::new(-z.im, z.re)).map_err(|e| match e {
        Error::BranchPoint(_) => Error::BranchPoint(format!("atan at {z}")),
        other => other,
    })?;
    Ok(Complex64::new(w.im, -w.re))
}

/// Scalar field the jets are built over: `f64` or [`ComplexScalar`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    /// `None` when `z` has a nonzero imaginary part and `Self` is real.
    fn from_complex(z: Complex64) -> Option<Self>;
    fn from_parts(re: f64, im: f64) -> Self;
    fn to_complex(self) -> Complex64;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn abs(self) -> f64;
    fn is_finite(self) -> bool;

    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn exp(self) -> Self;

    fn checked_tan(self) -> Result<Self>;
    fn checked_tanh(self) -> Result<Self>;
    fn checked_atan(self) -> Result<Self>;
    fn checked_atanh(self) -> Result<Self>;
    fn checked_ln(self) -> Result<Self>;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn checked_recip(self) -> Result<Self> {
        if near_zero(self.abs(), 0.0) {
            return Err(Error::Pole(format!("1/x at {self:?}")));
        }
        finite(Self::one() / self, "recip")
    }
}

fn finite<T: Scalar>(v: T, what: &str) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_complex(z: Complex64) -> Option<Self> {
        (z.im == 0.0).then_some(z.re)
    }

    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    fn re(self) -> f64 {
        self
    }

    fn im(self) -> f64 {
        0.0
    }

    fn abs(self) -> f64 {
        f64::abs(self)
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn sin(self) -> Self {
        f64::sin(self)
    }

    fn cos(self) -> Self {
        f64::cos(self)
    }

    fn sinh(self) -> Self {
        f64::sinh(self)
    }

    fn cosh(self) -> Self {
        f64::cosh(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn checked_tan(self) -> Result<Self> {
        if near_zero(f64::cos(self).abs(), self.abs()) {
            return Err(Error::Pole(format!("tan at {self}")));
        }
        finite(f64::tan(self), "tan")
    }

    fn checked_tanh(self) -> Result<Self> {
        finite(f64::tanh(self), "tanh")
    }

    fn checked_atan(self) -> Result<Self> {
        finite(f64::atan(self), "atan")
    }

    fn checked_atanh(self) -> Result<Self> {
        if self.abs() >= 1.0 || near_zero(1.0 - self.abs(), 1.0) {
            return Err(Error::Domain(format!("real atanh needs |x| < 1, got {self}")));
        }
        // std's atanh cancels next to -1, so evaluate on the positive side
        finite(f64::atanh(self.abs()).copysign(self), "atanh")
    }

    fn checked_ln(self) -> Result<Self> {
        if self <= 0.0 {
            return Err(Error::Domain(format!("real log needs x > 0, got {self}")));
        }
        finite(f64::ln(self), "ln")
    }
}

impl Scalar for Complex64 {
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn from_complex(z: Complex64) -> Option<Self> {
        Some(z)
    }

    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }

    fn to_complex(self) -> Complex64 {
        self
    }

    fn re(self) -> f64 {
        self.re
    }

    fn im(self) -> f64 {
        self.im
    }

    fn abs(self) -> f64 {
        self.norm()
    }

    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }

    fn sin(self) -> Self {
        Complex64::sin(self)
    }

    fn cos(self) -> Self {
        Complex64::cos(self)
    }

    fn sinh(self) -> Self {
        Complex64::sinh(self)
    }

    fn cosh(self) -> Self {
        Complex64::cosh(self)
    }

    fn exp(self) -> Self {
        Complex64::exp(self)
    }

    fn checked_tan(self) -> Result<Self> {
        let c = Complex64::cos(self);
        if near_zero(c.norm(), self.re.abs()) {
            return Err(Error::Pole(format!("tan at {self}")));
        }
        finite(Complex64::tan(self), "tan")
    }

    fn checked_tanh(self) -> Result<Self> {
        let c = Complex64::cosh(self);
        if near_zero(c.norm(), self.im.abs()) {
            return Err(Error::Pole(format!("tanh at {self}")));
        }
        finite(Complex64::tanh(self), "tanh")
    }

    fn checked_atan(self) -> Result<Self> {
        complex_atan(self)
    }

    fn checked_atanh(self) -> Result<Self> {
        complex_atanh(self)
    }

    fn checked_ln(self) -> Result<Self> {
        if self.norm() == 0.0 {
            return Err(Error::Domain("log of 0".into()));
        }
        finite(Complex64::ln(self), "ln")
    }
}

/// Elementary functions with exact first and second derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Sin,
    Cos,
    Tan,
    Cot,
    Sec,
    Csc,
    Exp,
    Log,
    Sinh,
    Cosh,
    Tanh,
    Atan,
    Atanh,
    Recip,
}

impl Elementary {
    pub const ALL: [Elementary; 14] = [
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Tan,
        Elementary::Cot,
        Elementary::Sec,
        Elementary::Csc,
        Elementary::Exp,
        Elementary::Log,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Tanh,
        Elementary::Atan,
        Elementary::Atanh,
        Elementary::Recip,
    ];

    /// Value, first and second derivative at `v`.
    pub fn derivatives<T: Scalar>(self, v: T) -> Result<[T; 3]> {
        let one = T::one();
        let two = T::from_f64(2.0);
        let d = match self {
            Elementary::Sin => {
                let (s, c) = (v.sin(), v.cos());
                [s, c, -s]
            }
            Elementary::Cos => {
                let (s, c) = (v.sin(), v.cos());
                [c, -s, -c]
            }
            Elementary::Tan => {
                let t = v.checked_tan()?;
                let dt = one + t * t;
                [t, dt, two * t * dt]
            }
            Elementary::Cot => {
                let s = v.sin();
                if near_zero(s.abs(), v.re().abs()) {
                    return Err(Error::Pole(format!("cot at {v:?}")));
                }
                let k = v.cos() / s;
                let dk = one + k * k;
                [k, -dk, two * k * dk]
            }
            Elementary::Sec => {
                let c = v.cos();
                if near_zero(c.abs(), v.re().abs()) {
                    return Err(Error::Pole(format!("sec at {v:?}")));
                }
                let s = one / c;
                let t = v.sin() * s;
                [s, s * t, s * (t * t + s * s)]
            }
            Elementary::Csc => {
                let sn = v.sin();
                if near_zero(sn.abs(), v.re().abs()) {
                    return Err(Error::Pole(format!("csc at {v:?}")));
                }
                let c = one / sn;
                let k = v.cos() * c;
                [c, -c * k, c * (k * k + c * c)]
            }
            Elementary::Exp => {
                let e = v.exp();
                [e, e, e]
            }
            Elementary::Log => {
                let l = v.checked_ln()?;
                let r = v.checked_recip()?;
                [l, r, -r * r]
            }
            Elementary::Sinh => [v.sinh(), v.cosh(), v.sinh()],
            Elementary::Cosh => [v.cosh(), v.sinh(), v.cosh()],
            Elementary::Tanh => {
                let t = v.checked_tanh()?;
                let dt = one - t * t;
                [t, dt, -two * t * dt]
            }
            Elementary::Atan => {
                let a = v.checked_atan()?;
                let q = (one + v * v).checked_recip()?;
                [a, q, -two * v * q * q]
            }
            Elementary::Atanh => {
                let a = v.checked_atanh()?;
                let q = (one - v * v).checked_recip()?;
                [a, q, two * v * q * q]
            }
            Elementary::Recip => {
                let r = v.checked_recip()?;
                [r, -r * r, two * r * r * r]
            }
        };
        if d.iter().all(|x| x.is_finite()) {
            Ok(d)
        } else {
            Err(Error::NonFinite(format!("{self:?} at {v:?}")))
        }
    }
}

/// Applies an elementary function to a jet by the second-order chain rule.
pub fn jet_apply<T: Scalar>(f: Elementary, j: Jet2<T>) -> Result<Jet2<T>> {
    if !j.is_finite() {
        return Err(Error::NonFinite(format!("{f:?} input jet")));
    }
    Ok(j.compose(f.derivatives(j.v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn atan_and_atanh_special_values() {
        assert_eq!(complex_atan(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((complex_atan(c(1.0, 0.0)).unwrap() - c(FRAC_PI_4, 0.0)).norm() < 1e-15);
        let half = complex_atan(c(0.0, 0.5)).unwrap();
        assert!((half - c(0.0, 0.5f64.atanh())).norm() < 1e-15);
        assert_eq!(complex_atanh(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((complex_atanh(c(0.0, 1.0)).unwrap() - c(0.0, FRAC_PI_4)).norm() < 1e-15);
    }

    #[test]
    fn atanh_conjugate_symmetry_is_exact() {
        let z = c(0.3, 0.2);
        assert_eq!(complex_atanh(z.conj()).unwrap(), complex_atanh(z).unwrap().conj());
    }

    #[test]
    fn branch_points_are_errors() {
        assert!(matches!(complex_atan(c(0.0, 1.0)), Err(Error::BranchPoint(_))));
        assert!(matches!(complex_atan(c(0.0, -1.0)), Err(Error::BranchPoint(_))));
        assert!(matches!(complex_atanh(c(1.0, 0.0)), Err(Error::BranchPoint(_))));
        assert!(matches!(complex_atanh(c(-1.0, 0.0)), Err(Error::BranchPoint(_))));
    }

    #[test]
    fn cut_sides_follow_sign_of_zero() {
        let above = complex_atanh(c(2.0, 0.0)).unwrap();
        let below = complex_atanh(c(2.0, -0.0)).unwrap();
        assert!((above.im - FRAC_PI_2).abs() < 1e-15);
        assert!((below.im + FRAC_PI_2).abs() < 1e-15);
        // 1/2 log|(1 + 2) / (1 - 2)|
        assert!((above.re - 0.5 * 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn real_domain_errors() {
        assert!(matches!(0.0f64.checked_ln(), Err(Error::Domain(_))));
        assert!(matches!(1.0f64.checked_atanh(), Err(Error::Domain(_))));
        assert!(matches!((-1.0f64).checked_atanh(), Err(Error::Domain(_))));
        assert!(matches!(FRAC_PI_2.checked_tan(), Err(Error::Pole(_))));
        assert!(matches!((3.0 * FRAC_PI_2).checked_tan(), Err(Error::Pole(_))));
        assert!(matches!(Elementary::Cot.derivatives(0.0f64), Err(Error::Pole(_))));
    }

    #[test]
    fn complex_tanh_pole() {
        assert!(matches!(c(0.0, FRAC_PI_2).checked_tanh(), Err(Error::Pole(_))));
        assert!(c(0.5, FRAC_PI_2).checked_tanh().is_ok());
    }
}
