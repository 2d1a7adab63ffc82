//! Named height functions and the operators that build new ones from them.
//!
//! A [`HeightField`] is a small expression tree: a base surface, an affine
//! (possibly complex) substitution of its arguments, or a weighted sum.
//! Evaluation runs through [`Jet2`], so every field comes with exact first
//! and second derivatives. Fields whose tree carries a complex coefficient
//! are evaluated by analytic continuation and reduced to real jets only after
//! checking the imaginary part.
//!
//! Family members take a [`FamilyParam`]. In the Scherk-type families the
//! numerator argument is `x·sin(θ)/2` and the denominator argument is
//! `y·sin(θ/2)`:
//!
//! ```text
//! phi(x, y; θ) = -sec(θ/2) atan( tanh(x sinθ/2) / tan(y sin(θ/2)) )
//! psi(x, y; θ) =  sec(θ/2) atan( tan(x sinθ/2) / tanh(y sin(θ/2)) )
//! chi(y, z; θ) =  sec(θ/2) atanh( tanh(z sinθ/2) / tanh(y sin(θ/2)) )
//! ```

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Elementary, Jet2, Scalar};

/// Default distance kept from poles, cuts and domain boundaries.
pub const DEFAULT_DOMAIN_MARGIN: f64 = 1e-6;

/// Default bound on the imaginary part of a field declared real.
pub const DEFAULT_IMAG_TOL: f64 = 1e-10;

/// Family angle `θ ∈ (0, π/2)` with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyParam {
    pub theta: f64,
    /// `sin(θ/2)`
    pub half_sin: f64,
    /// `sin(θ)/2`
    pub full_sin_half: f64,
    /// `sec(θ/2)`
    pub sec_half: f64,
    /// `π / sin(θ/2)`, the period of the helicoid decomposition.
    pub s_real: f64,
    /// `|s|` for the purely imaginary period `s = iπ / sin(θ/2)`.
    pub s_imag: f64,
}

impl FamilyParam {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < FRAC_PI_2) {
            return Err(Error::InvalidParam(format!("family angle must lie in (0, pi/2), got {theta}")));
        }
        let half_sin = (theta / 2.0).sin();
        Ok(FamilyParam {
            theta,
            half_sin,
            full_sin_half: theta.sin() / 2.0,
            sec_half: 1.0 / (theta / 2.0).cos(),
            s_real: PI / half_sin,
            s_imag: PI / half_sin,
        })
    }

    pub fn half_cos(&self) -> f64 {
        (self.theta / 2.0).cos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

/// The zero mean curvature equation a field is expected to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedPde {
    /// Minimal surface equation over the Euclidean xy-plane.
    Mse,
    /// ZMC equation over the spacelike xy-plane of Minkowski 3-space.
    Zmc,
    /// Born–Infeld equation over the timelike yz-plane.
    Bie,
    None,
}

impl fmt::Display for ExpectedPde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExpectedPde::Mse => "mse",
            ExpectedPde::Zmc => "zmc",
            ExpectedPde::Bie => "bie",
            ExpectedPde::None => "none",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseField {
    Constant(f64),
    /// `log(cos x / cos y)`
    Scherk,
    /// `log(cosh x / cosh y)`
    ScherkMaximal,
    /// `log(cos y / cosh z)`
    BiSoliton,
    /// `atan(y / x)`
    Helicoid,
    /// `atanh(z / y)`
    HyperbolicHelicoid,
    Phi(FamilyParam),
    Psi(FamilyParam),
    Chi(FamilyParam),
    /// `-atan(x / y)`, the θ→0 limit of `phi`.
    PhiLimit,
    /// `atan(x / y)`, the θ→0 limit of `psi`.
    PsiLimit,
}

impl BaseField {
    fn eval<T: Scalar>(&self, u: Jet2<T>, v: Jet2<T>) -> Result<Jet2<T>> {
        use Elementary::*;
        let k = T::from_f64;
        match *self {
            BaseField::Constant(c) => Ok(Jet2::constant(k(c))),
            // Difference of logs keeps f(t, t) = 0 exact.
            BaseField::Scherk => Ok(u.apply(Cos)?.apply(Log)? - v.apply(Cos)?.apply(Log)?),
            BaseField::ScherkMaximal => Ok(u.apply(Cosh)?.apply(Log)? - v.apply(Cosh)?.apply(Log)?),
            BaseField::BiSoliton => Ok(u.apply(Cos)?.apply(Log)? - v.apply(Cosh)?.apply(Log)?),
            BaseField::Helicoid => v.checked_div(u)?.apply(Atan),
            BaseField::HyperbolicHelicoid => v.checked_div(u)?.apply(Atanh),
            BaseField::Phi(p) => {
                let num = u.scale(k(p.full_sin_half)).apply(Tanh)?;
                let cot = v.scale(k(p.half_sin)).apply(Cot)?;
                Ok((num * cot).apply(Atan)?.scale(k(-p.sec_half)))
            }
            BaseField::Psi(p) => {
                let num = u.scale(k(p.full_sin_half)).apply(Tan)?;
                let den = v.scale(k(p.half_sin)).apply(Tanh)?;
                Ok(num.checked_div(den)?.apply(Atan)?.scale(k(p.sec_half)))
            }
            BaseField::Chi(p) => {
                let num = v.scale(k(p.full_sin_half)).apply(Tanh)?;
                let den = u.scale(k(p.half_sin)).apply(Tanh)?;
                Ok(num.checked_div(den)?.apply(Atanh)?.scale(k(p.sec_half)))
            }
            BaseField::PhiLimit => Ok(-u.checked_div(v)?.apply(Atan)?),
            BaseField::PsiLimit => u.checked_div(v)?.apply(Atan),
        }
    }

    /// Real domain, kept `margin` away from poles, cuts and boundaries.
    fn contains(&self, x: f64, y: f64, margin: f64) -> bool {
        if !(x.is_finite() && y.is_finite()) {
            return false;
        }
        match *self {
            BaseField::Constant(_) | BaseField::ScherkMaximal => true,
            BaseField::Scherk => x.cos() > margin && y.cos() > margin,
            BaseField::BiSoliton => x.cos() > margin,
            BaseField::Helicoid => x.abs() > margin,
            BaseField::HyperbolicHelicoid => x.abs() - y.abs() > margin,
            BaseField::Phi(p) => (y * p.half_sin).sin().abs() > margin,
            BaseField::Psi(p) => (y * p.half_sin).tanh().abs() > margin && (x * p.full_sin_half).cos().abs() > margin,
            BaseField::Chi(p) => {
                let den = (x * p.half_sin).tanh();
                den.abs() > margin && 1.0 - ((y * p.full_sin_half).tanh() / den).abs() > margin
            }
            BaseField::PhiLimit | BaseField::PsiLimit => y.abs() > margin,
        }
    }

    fn parity(&self) -> [Parity; 2] {
        match self {
            BaseField::Constant(_) | BaseField::Scherk | BaseField::ScherkMaximal | BaseField::BiSoliton => {
                [Parity::Even, Parity::Even]
            }
            _ => [Parity::Odd, Parity::Odd],
        }
    }

    fn expected_pde(&self) -> ExpectedPde {
        match self {
            BaseField::Constant(_) => ExpectedPde::None,
            BaseField::Scherk | BaseField::Phi(_) | BaseField::PhiLimit => ExpectedPde::Mse,
            BaseField::Helicoid => ExpectedPde::Mse,
            BaseField::ScherkMaximal | BaseField::Psi(_) | BaseField::PsiLimit => ExpectedPde::Zmc,
            BaseField::BiSoliton | BaseField::HyperbolicHelicoid | BaseField::Chi(_) => ExpectedPde::Bie,
        }
    }

    fn param(&self) -> Option<FamilyParam> {
        match *self {
            BaseField::Phi(p) | BaseField::Psi(p) | BaseField::Chi(p) => Some(p),
            _ => None,
        }
    }
}

/// `out(u, v) = scale · f(M·(u, v) + shift) + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgMap {
    pub scale: Complex64,
    pub matrix: [[Complex64; 2]; 2],
    pub shift: [Complex64; 2],
    pub offset: Complex64,
}

impl ArgMap {
    fn is_real(&self) -> bool {
        std::iter::once(self.scale)
            .chain(self.matrix.iter().flatten().copied())
            .chain(self.shift)
            .chain(std::iter::once(self.offset))
            .all(|c| c.im == 0.0)
    }

    fn swap() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        ArgMap { scale: o, matrix: [[z, o], [o, z]], shift: [z, z], offset: z }
    }

    fn map_real(&self, x: f64, y: f64) -> (f64, f64) {
        let m = &self.matrix;
        (m[0][0].re * x + m[0][1].re * y + self.shift[0].re, m[1][0].re * x + m[1][1].re * y + self.shift[1].re)
    }

    fn coeff<T: Scalar>(c: Complex64) -> Result<T> {
        T::from_complex(c).ok_or_else(|| Error::InvalidParam("complex coefficient in a real evaluation".into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum FieldExpr {
    Base(BaseField),
    Map(Box<FieldExpr>, ArgMap),
    Sum(Vec<(Complex64, FieldExpr)>, Complex64),
}

impl FieldExpr {
    fn is_real(&self) -> bool {
        match self {
            FieldExpr::Base(_) => true,
            FieldExpr::Map(inner, m) => m.is_real() && inner.is_real(),
            FieldExpr::Sum(terms, offset) => offset.im == 0.0 && terms.iter().all(|(c, e)| c.im == 0.0 && e.is_real()),
        }
    }

    fn eval<T: Scalar>(&self, u: Jet2<T>, v: Jet2<T>) -> Result<Jet2<T>> {
        match self {
            FieldExpr::Base(b) => b.eval(u, v),
            FieldExpr::Map(inner, m) => {
                let c = ArgMap::coeff::<T>;
                let mu = u.scale(c(m.matrix[0][0])?) + v.scale(c(m.matrix[0][1])?);
                let mv = u.scale(c(m.matrix[1][0])?) + v.scale(c(m.matrix[1][1])?);
                let out = inner.eval(mu.add_const(c(m.shift[0])?), mv.add_const(c(m.shift[1])?))?;
                Ok(out.scale(c(m.scale)?).add_const(c(m.offset)?))
            }
            FieldExpr::Sum(terms, offset) => {
                let mut acc = Jet2::constant(ArgMap::coeff::<T>(*offset)?);
                for (w, e) in terms {
                    acc = acc + e.eval(u, v)?.scale(ArgMap::coeff::<T>(*w)?);
                }
                Ok(acc)
            }
        }
    }

    /// True when a family member with a `tan`/`cot` factor occurs.
    fn has_trig_pole(&self) -> bool {
        match self {
            FieldExpr::Base(b) => matches!(b, BaseField::Phi(_) | BaseField::Psi(_)),
            FieldExpr::Map(inner, _) => inner.has_trig_pole(),
            FieldExpr::Sum(terms, _) => terms.iter().any(|(_, e)| e.has_trig_pole()),
        }
    }

    /// Only meaningful when `is_real()`.
    fn contains(&self, x: f64, y: f64, margin: f64) -> bool {
        match self {
            FieldExpr::Base(b) => b.contains(x, y, margin),
            FieldExpr::Map(inner, m) => {
                let (u, v) = m.map_real(x, y);
                inner.contains(u, v, margin)
            }
            FieldExpr::Sum(terms, _) => terms.iter().all(|(_, e)| e.contains(x, y, margin)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum DomainRule {
    /// Derived from the base predicates through real substitutions.
    Intrinsic,
    /// Borrowed from another field, e.g. the known closed form of a Wick rotation.
    Like(Box<HeightField>),
    /// Any point where complex evaluation succeeds.
    Evaluable,
}

/// A named height function with domain, parity and PDE metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightField {
    id: String,
    params: Option<FamilyParam>,
    expr: FieldExpr,
    domain: DomainRule,
    parity: [Parity; 2],
    expected_pde: ExpectedPde,
    margin: f64,
    imag_tol: f64,
}

impl HeightField {
    fn from_base(id: &str, base: BaseField) -> Self {
        HeightField {
            id: id.to_string(),
            params: base.param(),
            parity: base.parity(),
            expected_pde: base.expected_pde(),
            expr: FieldExpr::Base(base),
            domain: DomainRule::Intrinsic,
            margin: DEFAULT_DOMAIN_MARGIN,
            imag_tol: DEFAULT_IMAG_TOL,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn params(&self) -> Option<FamilyParam> {
        self.params
    }

    pub fn parity(&self) -> [Parity; 2] {
        self.parity
    }

    pub fn expected_pde(&self) -> ExpectedPde {
        self.expected_pde
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// True when no complex coefficient appears anywhere in the field.
    pub fn is_real_form(&self) -> bool {
        self.expr.is_real()
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    pub fn with_imag_tol(mut self, tol: f64) -> Self {
        self.imag_tol = tol;
        self
    }

    pub fn with_expected_pde(mut self, pde: ExpectedPde) -> Self {
        self.expected_pde = pde;
        self
    }

    pub fn with_parity(mut self, parity: [Parity; 2]) -> Self {
        self.parity = parity;
        self
    }

    /// Use `other`'s domain predicate for this field.
    pub fn with_domain_of(mut self, other: &HeightField) -> Self {
        self.domain = DomainRule::Like(Box::new(other.clone()));
        self
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.contains_with_margin(x, y, self.margin)
    }

    pub fn contains_with_margin(&self, x: f64, y: f64, margin: f64) -> bool {
        match &self.domain {
            DomainRule::Like(other) => other.contains_with_margin(x, y, margin),
            DomainRule::Intrinsic if self.expr.is_real() => self.expr.contains(x, y, margin),
            _ => self.eval_complex(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).is_ok(),
        }
    }

    /// Value and derivatives at a real point of the domain.
    pub fn eval(&self, x: f64, y: f64) -> Result<Jet2<f64>> {
        if !self.contains(x, y) {
            // Report a pole or branch point as such when the formula hits one.
            if self.expr.is_real() && self.expr.has_trig_pole() {
                if let Err(e @ (Error::Pole(_) | Error::BranchPoint(_))) =
                    self.expr.eval(Jet2::seed_x(x), Jet2::seed_y(y))
                {
                    return Err(e);
                }
            }
            return Err(Error::Domain(format!("({x}, {y}) outside the domain of {}", self.id)));
        }
        if self.expr.is_real() {
            return self.expr.eval(Jet2::seed_x(x), Jet2::seed_y(y));
        }
        let j = self.eval_complex(Complex64::new(x, 0.0), Complex64::new(y, 0.0))?;
        let im = j.v.im.abs();
        if im > self.imag_tol * j.v.re.abs().max(1.0) {
            return Err(Error::NotReal(im));
        }
        Ok(j.re())
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.eval(x, y)?.v)
    }

    /// Analytic continuation to a complex point, derivatives taken with
    /// respect to the (complex) arguments. No domain predicate is applied.
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Result<Jet2<Complex64>> {
        let j = self.expr.eval(Jet2::seed_x(x), Jet2::seed_y(y))?;
        if j.is_finite() {
            Ok(j)
        } else {
            Err(Error::NonFinite(format!("{} at ({x}, {y})", self.id)))
        }
    }

    /// General argument substitution. Parity and PDE tags are reset.
    pub fn substituted(&self, id: impl Into<String>, map: ArgMap) -> HeightField {
        let real = map.is_real() && self.expr.is_real();
        HeightField {
            id: id.into(),
            params: self.params,
            expr: FieldExpr::Map(Box::new(self.expr.clone()), map),
            domain: match (&self.domain, real) {
                (DomainRule::Intrinsic, true) => DomainRule::Intrinsic,
                _ => DomainRule::Evaluable,
            },
            parity: [Parity::Neither, Parity::Neither],
            expected_pde: ExpectedPde::None,
            margin: self.margin,
            imag_tol: self.imag_tol,
        }
    }

    /// `(x, y) ↦ f(y, x)`.
    pub fn swapped(&self) -> HeightField {
        let mut out = self.substituted(format!("swap({})", self.id), ArgMap::swap());
        out.parity = [self.parity[1], self.parity[0]];
        out.expected_pde = match self.expected_pde {
            ExpectedPde::Mse => ExpectedPde::Mse,
            ExpectedPde::Zmc => ExpectedPde::Zmc,
            _ => ExpectedPde::None,
        };
        if let DomainRule::Like(other) = &self.domain {
            out.domain = DomainRule::Like(Box::new(other.swapped()));
        }
        out
    }

    /// `offset + Σ weight·field`.
    pub fn sum(id: impl Into<String>, terms: &[(Complex64, HeightField)], offset: Complex64) -> HeightField {
        let expr = FieldExpr::Sum(terms.iter().map(|(w, f)| (*w, f.expr.clone())).collect(), offset);
        let intrinsic = expr.is_real() && terms.iter().all(|(_, f)| f.domain == DomainRule::Intrinsic);
        HeightField {
            id: id.into(),
            params: None,
            expr,
            domain: if intrinsic { DomainRule::Intrinsic } else { DomainRule::Evaluable },
            parity: [Parity::Neither, Parity::Neither],
            expected_pde: ExpectedPde::None,
            margin: terms.first().map_or(DEFAULT_DOMAIN_MARGIN, |(_, f)| f.margin),
            imag_tol: DEFAULT_IMAG_TOL,
        }
    }
}

/// `k·f(m1·x + n1, m2·y + n2)` with real or complex constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationSpec {
    pub k: Complex64,
    pub m1: Complex64,
    pub n1: Complex64,
    pub m2: Complex64,
    pub n2: Complex64,
}

impl DilationSpec {
    pub fn new(k: Complex64, m1: Complex64, n1: Complex64, m2: Complex64, n2: Complex64) -> Self {
        DilationSpec { k, m1, n1, m2, n2 }
    }

    pub fn real(k: f64, m1: f64, n1: f64, m2: f64, n2: f64) -> Self {
        let c = |x| Complex64::new(x, 0.0);
        DilationSpec::new(c(k), c(m1), c(n1), c(m2), c(n2))
    }

    pub fn identity() -> Self {
        DilationSpec::real(1.0, 1.0, 0.0, 1.0, 0.0)
    }

    pub fn is_identity(&self) -> bool {
        *self == DilationSpec::identity()
    }

    fn validate(&self) -> Result<()> {
        if self.m1.norm() == 0.0 || self.m2.norm() == 0.0 {
            return Err(Error::DegenerateDilation(format!(
                "m1 = {}, m2 = {} (both must be nonzero)",
                self.m1, self.m2
            )));
        }
        let all = [self.k, self.m1, self.n1, self.m2, self.n2];
        if all.iter().any(|c| !c.is_finite()) {
            return Err(Error::DegenerateDilation("non-finite constant".into()));
        }
        Ok(())
    }

    fn arg_map(&self) -> ArgMap {
        let z = Complex64::new(0.0, 0.0);
        ArgMap { scale: self.k, matrix: [[self.m1, z], [z, self.m2]], shift: [self.n1, self.n2], offset: z }
    }
}

/// Dilated copy `k·f(m1·x + n1, m2·y + n2)` of a field.
pub fn dilate(hf: &HeightField, d: &DilationSpec) -> Result<HeightField> {
    d.validate()?;
    if d.is_identity() {
        return Ok(hf.clone());
    }
    Ok(hf.substituted(format!("dilate({})", hf.id), d.arg_map()))
}

pub fn constant(c: f64) -> HeightField {
    HeightField::from_base("constant", BaseField::Constant(c))
}

pub fn scherk() -> HeightField {
    HeightField::from_base("scherk", BaseField::Scherk)
}

pub fn scherk_maximal() -> HeightField {
    HeightField::from_base("scherk-maximal", BaseField::ScherkMaximal)
}

pub fn bi_soliton() -> HeightField {
    HeightField::from_base("bi-soliton", BaseField::BiSoliton)
}

pub fn helicoid() -> HeightField {
    HeightField::from_base("helicoid", BaseField::Helicoid)
}

pub fn hyperbolic_helicoid() -> HeightField {
    HeightField::from_base("hyperbolic-helicoid", BaseField::HyperbolicHelicoid)
}

pub fn phi(p: FamilyParam) -> HeightField {
    HeightField::from_base("phi", BaseField::Phi(p))
}

pub fn psi(p: FamilyParam) -> HeightField {
    HeightField::from_base("psi", BaseField::Psi(p))
}

pub fn chi(p: FamilyParam) -> HeightField {
    HeightField::from_base("chi", BaseField::Chi(p))
}

pub fn phi_limit() -> HeightField {
    HeightField::from_base("phi-limit", BaseField::PhiLimit)
}

pub fn psi_limit() -> HeightField {
    HeightField::from_base("psi-limit", BaseField::PsiLimit)
}

/// Catalog ids addressable from the command line.
pub const CATALOG_IDS: [&str; 11] = [
    "scherk",
    "scherk-maximal",
    "bi-soliton",
    "helicoid",
    "hyperbolic-helicoid",
    "phi",
    "psi",
    "chi",
    "phi-limit",
    "psi-limit",
    "chi-limit",
];

/// Looks up a catalog field; family members need `theta`.
pub fn by_id(id: &str, theta: Option<f64>) -> Result<HeightField> {
    let family = |f: fn(FamilyParam) -> HeightField| -> Result<HeightField> {
        let t = theta.ok_or_else(|| Error::InvalidParam(format!("{id} needs a theta")))?;
        Ok(f(FamilyParam::new(t)?))
    };
    match id {
        "scherk" => Ok(scherk()),
        "scherk-maximal" => Ok(scherk_maximal()),
        "bi-soliton" => Ok(bi_soliton()),
        "helicoid" => Ok(helicoid()),
        "hyperbolic-helicoid" | "chi-limit" => Ok(hyperbolic_helicoid().with_id(id)),
        "phi" => family(phi),
        "psi" => family(psi),
        "chi" => family(chi),
        "phi-limit" => Ok(phi_limit()),
        "psi-limit" => Ok(psi_limit()),
        _ => Err(Error::InvalidParam(format!("unknown surface id {id:?}"))),
    }
}

pub fn scherk_classical(x: f64, y: f64) -> Result<Jet2<f64>> {
    scherk().eval(x, y)
}

pub fn scherk_maximal_classical(x: f64, y: f64) -> Result<Jet2<f64>> {
    scherk_maximal().eval(x, y)
}

pub fn bi_soliton_classical(y: f64, z: f64) -> Result<Jet2<f64>> {
    bi_soliton().eval(y, z)
}

pub fn helicoid_at(x: f64, y: f64) -> Result<Jet2<f64>> {
    helicoid().eval(x, y)
}

pub fn hyperbolic_helicoid_at(y: f64, z: f64) -> Result<Jet2<f64>> {
    hyperbolic_helicoid().eval(y, z)
}

pub fn phi_family(x: f64, y: f64, p: FamilyParam) -> Result<Jet2<f64>> {
    phi(p).eval(x, y)
}

pub fn psi_family(x: f64, y: f64, p: FamilyParam) -> Result<Jet2<f64>> {
    psi(p).eval(x, y)
}

pub fn chi_family(y: f64, z: f64, p: FamilyParam) -> Result<Jet2<f64>> {
    chi(p).eval(y, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitFamily {
    Phi,
    Psi,
    Chi,
}

/// A family member compared against its θ→0 limit surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitComparison {
    pub family: LimitFamily,
    pub theta: f64,
    pub point: [f64; 2],
    pub family_value: f64,
    pub limit_value: f64,
    pub gap: f64,
    /// Sign of `x/y`, only for `phi`, where the limit can be written as
    /// `-ε·π/2 + atan(y/x)`.
    pub epsilon_sign: Option<i8>,
}

pub fn limit_comparison(family: LimitFamily, theta: f64, a: f64, b: f64) -> Result<LimitComparison> {
    let p = FamilyParam::new(theta)?;
    let (member, limit) = match family {
        LimitFamily::Phi => (phi(p), phi_limit()),
        LimitFamily::Psi => (psi(p), psi_limit()),
        LimitFamily::Chi => (chi(p), hyperbolic_helicoid()),
    };
    let family_value = member.value(a, b)?;
    let limit_value = limit.value(a, b)?;
    let epsilon_sign = match family {
        LimitFamily::Phi if a != 0.0 => Some(if a / b > 0.0 { 1 } else { -1 }),
        _ => None,
    };
    Ok(LimitComparison {
        family,
        theta,
        point: [a, b],
        family_value,
        limit_value,
        gap: (family_value - limit_value).abs(),
        epsilon_sign,
    })
}

/// Measured order `log2(gap(θ) / gap(θ/2))` of the approach to the limit.
pub fn limit_order(family: LimitFamily, theta: f64, a: f64, b: f64) -> Result<f64> {
    let g1 = limit_comparison(family, theta, a, b)?.gap;
    let g2 = limit_comparison(family, theta / 2.0, a, b)?.gap;
    Ok((g1 / g2).log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_param_rejects_out_of_range() {
        assert!(FamilyParam::new(0.0).is_err());
        assert!(FamilyParam::new(FRAC_PI_2).is_err());
        assert!(FamilyParam::new(-0.1).is_err());
        let p = FamilyParam::new(0.8).unwrap();
        assert!((p.s_real - PI / 0.4f64.sin()).abs() < 1e-14);
    }

    #[test]
    fn scherk_values() {
        assert_eq!(scherk_classical(0.0, 0.0).unwrap().v, 0.0);
        for t in [-1.2, -0.3, 0.0, 0.9, 1.5] {
            assert_eq!(scherk_classical(t, t).unwrap().v, 0.0);
        }
        assert!(matches!(scherk_classical(2.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn scherk_value_against_direct_formula() {
        // log(cos 1 / cos 0.5) to 20 digits
        let expected = -0.485042229942291545359;
        assert!((scherk_classical(1.0, 0.5).unwrap().v - expected).abs() < 1e-15);
    }

    #[test]
    fn helicoid_values() {
        assert_eq!(helicoid_at(1.0, 0.0).unwrap().v, 0.0);
        assert!((helicoid_at(1.0, 1.0).unwrap().v - PI / 4.0).abs() < 1e-15);
        assert!(matches!(helicoid_at(0.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn hyperbolic_helicoid_values() {
        assert_eq!(hyperbolic_helicoid_at(1.0, 0.0).unwrap().v, 0.0);
        assert!((hyperbolic_helicoid_at(2.0, 1.0).unwrap().v - 0.5f64.atanh()).abs() < 1e-15);
        let a = hyperbolic_helicoid_at(2.0, 0.7).unwrap().v;
        let b = hyperbolic_helicoid_at(2.0, -0.7).unwrap().v;
        assert_eq!(a, -b);
        assert!(matches!(hyperbolic_helicoid_at(1.0, 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn family_zero_lines() {
        let p = FamilyParam::new(0.9).unwrap();
        assert_eq!(phi_family(0.0, 0.7, p).unwrap().v, 0.0);
        assert_eq!(psi_family(0.0, 0.7, p).unwrap().v, 0.0);
        assert_eq!(chi_family(0.7, 0.0, p).unwrap().v, 0.0);
    }

    #[test]
    fn phi_pole_where_tan_vanishes() {
        let p = FamilyParam::new(0.9).unwrap();
        assert!(matches!(phi(p).eval(0.3, 0.0), Err(Error::Pole(_))));
        assert!(matches!(phi(p).eval(0.3, 1e-9), Err(Error::Domain(_))));
        assert!(matches!(phi(p).eval_complex(0.3.into(), 0.0.into()), Err(Error::Pole(_))));
    }

    #[test]
    fn limits_at_small_theta() {
        let c = limit_comparison(LimitFamily::Phi, 1e-3, 1.0, 2.0).unwrap();
        assert!(c.gap <= 1e-5, "{c:?}");
        assert_eq!(c.epsilon_sign, Some(1));
        let alt = -PI / 2.0 + (2.0f64 / 1.0).atan();
        assert!((c.limit_value - alt).abs() < 1e-15);
        assert!(limit_comparison(LimitFamily::Psi, 1e-3, 1.0, 2.0).unwrap().gap <= 1e-5);
        assert!(limit_comparison(LimitFamily::Chi, 1e-3, 2.0, 1.0).unwrap().gap <= 1e-5);
    }

    #[test]
    fn phi_limit_sign_indicator() {
        let c = limit_comparison(LimitFamily::Phi, 1e-3, -1.0, 2.0).unwrap();
        assert_eq!(c.epsilon_sign, Some(-1));
        let alt = PI / 2.0 + (2.0f64 / -1.0).atan();
        assert!((c.limit_value - alt).abs() < 1e-15);
    }

    #[test]
    fn dilation_rules() {
        let h = helicoid();
        let same = dilate(&h, &DilationSpec::identity()).unwrap();
        assert_eq!(same.value(0.7, 0.3).unwrap(), h.value(0.7, 0.3).unwrap());
        let bad = DilationSpec::real(1.0, 0.0, 0.0, 1.0, 0.0);
        assert!(matches!(dilate(&h, &bad), Err(Error::DegenerateDilation(_))));
        let shifted = dilate(&h, &DilationSpec::real(1.0, 1.0, -0.4, 1.0, 0.0)).unwrap();
        let (x, y) = (1.3, 0.8);
        assert_eq!(shifted.value(x, y).unwrap(), (y / (x - 0.4)).atan());
        assert!(matches!(shifted.eval(0.4, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn complex_dilation_gives_thm32_summand() {
        let p = FamilyParam::new(0.8).unwrap();
        let n = 3.0;
        let spec = DilationSpec::new(
            1.0.into(),
            1.0.into(),
            Complex64::new(0.0, -n * p.s_imag),
            p.half_cos().into(),
            0.0.into(),
        );
        let f = dilate(&hyperbolic_helicoid(), &spec).unwrap();
        assert!(!f.is_real_form());
        for (y, z) in [(2.0, 0.5), (1.1, -0.3), (-0.7, 0.2)] {
            let got = f.eval_complex(y.into(), z.into()).unwrap().v;
            let s = Complex64::new(0.0, p.s_imag);
            let w = Complex64::new(z * p.half_cos(), 0.0) / (Complex64::new(y, 0.0) - s * n);
            let want = crate::scalar::complex_atanh(w).unwrap();
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn swap_and_sum() {
        let h = helicoid().swapped();
        assert_eq!(h.value(2.0, 1.0).unwrap(), (2.0f64 / 1.0).atan());
        let s = HeightField::sum("twice", &[(2.0.into(), helicoid()), ((-1.0).into(), helicoid())], 0.5.into());
        assert!((s.value(1.0, 1.0).unwrap() - (PI / 4.0 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn by_id_lookup() {
        for id in CATALOG_IDS {
            let f = by_id(id, Some(0.7)).unwrap();
            assert_eq!(f.id(), id);
        }
        assert!(by_id("phi", None).is_err());
        assert!(by_id("enneper", None).is_err());
    }
}
