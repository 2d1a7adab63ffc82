use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{jet_apply, Elementary, Scalar};
use crate::error::Result;

/// A value with its gradient and Hessian in two variables `(x, y)`.
///
/// The Hessian keeps a single mixed slot, so symmetry holds by construction:
/// `d2 = [f_xx, f_xy, f_yy]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<T> {
    pub v: T,
    pub d1: [T; 2],
    pub d2: [T; 3],
}

impl<T: Scalar> Jet2<T> {
    pub fn new(v: T, d1: [T; 2], d2: [T; 3]) -> Self {
        Jet2 { v, d1, d2 }
    }

    pub fn constant(v: T) -> Self {
        let z = T::zero();
        Jet2 { v, d1: [z, z], d2: [z, z, z] }
    }

    /// The coordinate function `x` at `x`.
    pub fn seed_x(x: T) -> Self {
        let (z, o) = (T::zero(), T::one());
        Jet2 { v: x, d1: [o, z], d2: [z, z, z] }
    }

    /// The coordinate function `y` at `y`.
    pub fn seed_y(y: T) -> Self {
        let (z, o) = (T::zero(), T::one());
        Jet2 { v: y, d1: [z, o], d2: [z, z, z] }
    }

    pub fn fx(&self) -> T {
        self.d1[0]
    }

    pub fn fy(&self) -> T {
        self.d1[1]
    }

    pub fn fxx(&self) -> T {
        self.d2[0]
    }

    pub fn fxy(&self) -> T {
        self.d2[1]
    }

    pub fn fyy(&self) -> T {
        self.d2[2]
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.iter().all(|x| x.is_finite()) && self.d2.iter().all(|x| x.is_finite())
    }

    /// Chain rule for `g(self)` given `[g, g', g'']` at `self.v`.
    pub fn compose(self, g: [T; 3]) -> Self {
        let [_, g1, g2] = g;
        let [a, b] = self.d1;
        Jet2 {
            v: g[0],
            d1: [g1 * a, g1 * b],
            d2: [g2 * a * a + g1 * self.d2[0], g2 * a * b + g1 * self.d2[1], g2 * b * b + g1 * self.d2[2]],
        }
    }

    pub fn apply(self, f: Elementary) -> Result<Self> {
        jet_apply(f, self)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.apply(Elementary::Recip)?)
    }

    pub fn scale(self, c: T) -> Self {
        Jet2 { v: self.v * c, d1: self.d1.map(|d| d * c), d2: self.d2.map(|d| d * c) }
    }

    pub fn add_const(mut self, c: T) -> Self {
        self.v = self.v + c;
        self
    }

    pub fn map<U>(self, f: impl Fn(T) -> U) -> Jet2<U> {
        Jet2 { v: f(self.v), d1: self.d1.map(&f), d2: self.d2.map(&f) }
    }

    pub fn to_complex(self) -> Jet2<Complex64> {
        self.map(Scalar::to_complex)
    }

    /// Componentwise real part.
    pub fn re(self) -> Jet2<f64> {
        self.map(Scalar::re)
    }

    /// Largest imaginary part over the value and all derivatives.
    pub fn max_imag(&self) -> f64 {
        std::iter::once(self.v).chain(self.d1).chain(self.d2).map(|x| x.im().abs()).fold(0.0, f64::max)
    }

    /// Largest componentwise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let d = *self - *other;
        std::iter::once(d.v).chain(d.d1).chain(d.d2).map(|x| x.abs()).fold(0.0, f64::max)
    }
}

impl<T: Scalar> Add for Jet2<T> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Jet2 {
            v: self.v + o.v,
            d1: [self.d1[0] + o.d1[0], self.d1[1] + o.d1[1]],
            d2: [self.d2[0] + o.d2[0], self.d2[1] + o.d2[1], self.d2[2] + o.d2[2]],
        }
    }
}

impl<T: Scalar> Sub for Jet2<T> {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Scalar> Neg for Jet2<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self.map(|x| -x)
    }
}

impl<T: Scalar> Mul for Jet2<T> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Jet2 {
            v: a.v * b.v,
            d1: [a.d1[0] * b.v + a.v * b.d1[0], a.d1[1] * b.v + a.v * b.d1[1]],
            d2: [
                a.d2[0] * b.v + a.d1[0] * b.d1[0] + a.d1[0] * b.d1[0] + a.v * b.d2[0],
                a.d2[1] * b.v + a.d1[0] * b.d1[1] + a.d1[1] * b.d1[0] + a.v * b.d2[1],
                a.d2[2] * b.v + a.d1[1] * b.d1[1] + a.d1[1] * b.d1[1] + a.v * b.d2[2],
            ],
        }
    }
}
