//! Infinite and finite decompositions of the Scherk-type families.
//!
//! The infinite ones write `ψ` as a bilateral sum of dilated helicoids and `χ`
//! as a bilateral sum of dilated hyperbolic helicoids with purely imaginary
//! period. The finite ones regroup the Euler–Ramanujan series into `n`
//! dilated copies of `φ`, `ψ` or `χ`.
//!
//! Finite right-hand sides are assembled as [`HeightField`] sums, so value
//! and derivative checks share one code path.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, ArgMap, DilationSpec, FamilyParam, HeightField};
use crate::error::{Error, Result};
use crate::scalar::Jet2;
use crate::series::{self, branch_offset_scaled, OddFn, SeriesEval};

/// Acceptance thresholds for one finite decomposition comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompTolerances {
    /// Value gap after branch correction.
    pub value: f64,
    /// Largest gap among first and second derivatives.
    pub derivative: f64,
    /// Imaginary part of a complex right-hand side.
    pub imag: f64,
}

impl Default for DecompTolerances {
    fn default() -> Self {
        DecompTolerances { value: 1e-9, derivative: 1e-7, imag: 1e-10 }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `tan(x sinθ/2) / tanh(y sin(θ/2)) > 0`
pub fn psi_positive(x: f64, y: f64, p: &FamilyParam) -> bool {
    (x * p.full_sin_half).tan() / (y * p.half_sin).tanh() > 0.0
}

/// `tanh(x sinθ/2) / tan(y sin(θ/2)) > 0`
pub fn phi_positive(x: f64, y: f64, p: &FamilyParam) -> bool {
    (x * p.full_sin_half).tanh() / (y * p.half_sin).tan() > 0.0
}

/// The `n`-th summand `atan(y / (x cos(θ/2) − n s))` as a dilated helicoid.
pub fn psi_summand(p: &FamilyParam, n: i64) -> Result<HeightField> {
    let d = DilationSpec::real(1.0, p.half_cos(), -(n as f64) * p.s_real, 1.0, 0.0);
    catalog::dilate(&catalog::helicoid(), &d)
}

/// The `n`-th summand `atanh(z cos(θ/2) / (y − n s))`, `s = iπ/sin(θ/2)`, as
/// a dilated hyperbolic helicoid.
pub fn chi_summand(p: &FamilyParam, n: i64) -> Result<HeightField> {
    let d =
        DilationSpec::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, -(n as f64) * p.s_imag), c(p.half_cos(), 0.0), c(0.0, 0.0));
    catalog::dilate(&catalog::hyperbolic_helicoid(), &d)
}

/// `sec(θ/2)·[π/2 − Σ_n atan(y / (x cos(θ/2) − n s))]`, summed in pairs.
pub fn psi_infinite_rhs(x: f64, y: f64, p: &FamilyParam, n: usize) -> Result<SeriesEval<f64>> {
    Ok(psi_infinite_sweep(x, y, p, &[n])?.remove(0))
}

/// [`psi_infinite_rhs`] at every checkpoint of the ascending list `ns`.
pub fn psi_infinite_sweep(x: f64, y: f64, p: &FamilyParam, ns: &[usize]) -> Result<Vec<SeriesEval<f64>>> {
    if !psi_positive(x, y, p) {
        return Err(Error::DomainConstraint(format!(
            "tan(x sin(θ)/2) / tanh(y sin(θ/2)) must be positive at ({x}, {y})"
        )));
    }
    let sweep = series::odd_pair_sweep(OddFn::Atan, y, x * p.half_cos(), -p.s_real, ns)?;
    Ok(sweep.into_iter().map(|s| s.map(|v| p.sec_half * (FRAC_PI_2 - v), p.sec_half)).collect())
}

/// Complex pair sum for `χ` with the size of its imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSeries {
    pub eval: SeriesEval<Complex64>,
    pub im_residual: f64,
}

fn chi_guard(y: f64, z: f64, p: &FamilyParam) -> Result<()> {
    if catalog::chi(*p).contains(y, z) {
        Ok(())
    } else {
        Err(Error::DomainConstraint(format!("({y}, {z}) outside the domain of chi")))
    }
}

/// `sec(θ/2)·Σ_n atanh(z cos(θ/2) / (y − n s))` with `s = iπ/sin(θ/2)`.
pub fn chi_infinite_rhs(y: f64, z: f64, p: &FamilyParam, n: usize) -> Result<ChiSeries> {
    Ok(chi_infinite_sweep(y, z, p, &[n])?.remove(0))
}

/// [`chi_infinite_rhs`] at every checkpoint of the ascending list `ns`.
pub fn chi_infinite_sweep(y: f64, z: f64, p: &FamilyParam, ns: &[usize]) -> Result<Vec<ChiSeries>> {
    chi_guard(y, z, p)?;
    let sweep = series::odd_pair_sweep(OddFn::Atanh, c(z * p.half_cos(), 0.0), c(y, 0.0), c(0.0, -p.s_imag), ns)?;
    Ok(sweep
        .into_iter()
        .map(|s| {
            let eval = s.map(|v| v * p.sec_half, p.sec_half);
            ChiSeries { eval, im_residual: eval.value.im.abs() }
        })
        .collect())
}

/// `½ sec(θ/2)·Σ_n log|(y − ns + z cos(θ/2)) / (y − ns − z cos(θ/2))|`.
///
/// Each summand is evaluated as `¼ ln1p(4yζ / ((y−ζ)² + t²))` with
/// `ζ = z cos(θ/2)` and `t = nπ/sin(θ/2)`.
pub fn chi_infinite_log_rhs(y: f64, z: f64, p: &FamilyParam, n: usize) -> Result<SeriesEval<f64>> {
    chi_guard(y, z, p)?;
    let zeta = z * p.half_cos();
    let term = |k: usize| {
        let t = k as f64 * p.s_imag;
        0.25 * (4.0 * y * zeta / ((y - zeta).powi(2) + t * t)).ln_1p()
    };
    let mut acc = crate::sum::Neumaier::new();
    let mut mass = crate::sum::Neumaier::new();
    acc.add(term(0));
    mass.add(term(0).abs());
    for k in 1..=n {
        let t = term(k);
        acc.add(2.0 * t);
        mass.add(2.0 * t.abs());
    }
    let tail = series::odd_pair_tail(OddFn::Atanh, c(zeta, 0.0), c(y, 0.0), c(0.0, -p.s_imag), n)?;
    let value = acc.value();
    let rounding = if zeta == 0.0 { 0.0 } else { series::rounding_allowance(value.abs(), mass.value()) };
    Ok(SeriesEval {
        value: p.sec_half * value,
        n_pairs: n,
        tail_bound: p.sec_half * (tail + rounding),
        policy: series::TermsPolicy::PairedBilateral,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    #[serde(rename = "1")]
    P1,
    #[serde(rename = "2")]
    P2,
    #[serde(rename = "3")]
    P3,
    #[serde(rename = "4")]
    P4,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::P1, Part::P2, Part::P3, Part::P4];

    pub fn number(self) -> u8 {
        match self {
            Part::P1 => 1,
            Part::P2 => 2,
            Part::P3 => 3,
            Part::P4 => 4,
        }
    }

    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Part::P1),
            2 => Ok(Part::P2),
            3 => Ok(Part::P3),
            4 => Ok(Part::P4),
            _ => Err(Error::InvalidParam(format!("finite decomposition part must be 1..4, got {k}"))),
        }
    }
}

/// Which printed form of a right-hand side is evaluated.
///
/// For part 1 the three differ:
///
/// * `Statement`: `ψ(2x/n + 2mπ csc(2β̃)/n, 2y cos(2β̃); 2β̃)`
/// * `Proof`: the last line of the derivation, `ψ(2x cosβ/n + …, 2y cos β̃; 2β̃)`,
///   after `x ↦ x sec β`: `ψ(2x/n + 2mπ csc(2β̃)/n, 2y cos β̃; 2β̃)`
/// * `Rederived`: `ψ(2x + 2mπ csc(2β̃)/n, 2y cos β̃; 2β̃)`
///
/// All three share the prefactor `cos β̃ / cos β` and the offset
/// `(1 − n)(π/2) sec β`. For parts 2 to 4 all three name the same formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Statement,
    Proof,
    Rederived,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Statement, Variant::Proof, Variant::Rederived];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Statement => "statement",
            Variant::Proof => "proof",
            Variant::Rederived => "rederived",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "statement" => Ok(Variant::Statement),
            "proof" => Ok(Variant::Proof),
            "rederived" => Ok(Variant::Rederived),
            _ => Err(Error::InvalidParam(format!("unknown variant {s:?}"))),
        }
    }
}

/// Both sides of one finite decomposition as height fields.
#[derive(Debug, Clone)]
pub struct FiniteDecomposition {
    pub part: Part,
    pub variant: Variant,
    pub beta: f64,
    pub n: usize,
    pub lhs: HeightField,
    pub rhs: HeightField,
    /// Unit of the branch offset `q`.
    pub branch_unit: f64,
    lhs_param: FamilyParam,
}

fn swap_map(scale_u: f64, scale_v: f64, shift: [Complex64; 2]) -> ArgMap {
    let z = c(0.0, 0.0);
    ArgMap { scale: c(1.0, 0.0), matrix: [[z, c(scale_u, 0.0)], [c(scale_v, 0.0), z]], shift, offset: z }
}

fn param(theta: f64, what: &str) -> Result<FamilyParam> {
    FamilyParam::new(theta)
        .map_err(|_| Error::DomainConstraint(format!("{what} = {theta} leaves the family range (0, pi/2)")))
}

impl FiniteDecomposition {
    pub fn new(part: Part, variant: Variant, beta: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParam("n must be at least 1".into()));
        }
        let nf = n as f64;
        let sec = |t: f64| 1.0 / t.cos();
        let csc = |t: f64| 1.0 / t.sin();
        let real = |x: f64| c(x, 0.0);
        match part {
            Part::P1 => {
                let p = param(2.0 * beta, "2β")?;
                let bt = (beta.sin() / nf).asin() / 2.0;
                let q = param(2.0 * bt, "2β̃")?;
                let lhs = catalog::dilate(&catalog::psi(p), &DilationSpec::real(1.0, sec(beta), 0.0, 1.0, 0.0))?;
                let (m1, m2) = match variant {
                    Variant::Statement => (2.0 / nf, 2.0 * (2.0 * bt).cos()),
                    Variant::Proof => (2.0 / nf, 2.0 * bt.cos()),
                    Variant::Rederived => (2.0, 2.0 * bt.cos()),
                };
                let weight = bt.cos() / beta.cos();
                let terms = (0..n)
                    .map(|m| {
                        let shift = 2.0 * m as f64 * PI * csc(2.0 * bt) / nf;
                        let d = DilationSpec::real(1.0, m1, shift, m2, 0.0);
                        Ok((real(weight), catalog::dilate(&catalog::psi(q), &d)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let offset = (1.0 - nf) * FRAC_PI_2 * sec(beta);
                let rhs = HeightField::sum(format!("thm4.1-p1-{variant}"), &terms, real(offset));
                Ok(FiniteDecomposition { part, variant, beta, n, lhs, rhs, branch_unit: PI * sec(beta), lhs_param: p })
            }
            Part::P2 | Part::P3 => {
                let p = param(4.0 * beta, "4β")?;
                let q = param(2.0 * beta, "2β")?;
                let x_scale = sec(beta) * sec(2.0 * beta);
                let weight = real(beta.cos() / (2.0 * beta).cos());
                let (lhs_base, offset) = if part == Part::P2 {
                    (catalog::psi(p), FRAC_PI_2 * sec(2.0 * beta))
                } else {
                    (catalog::phi(p), -nf * FRAC_PI_2 * sec(2.0 * beta))
                };
                let lhs = catalog::dilate(&lhs_base, &DilationSpec::real(1.0, x_scale, 0.0, 1.0, 0.0))?;
                let terms: Vec<_> = (0..n)
                    .map(|m| {
                        let mf = m as f64;
                        let (field, shift) = if part == Part::P2 {
                            // φ(2y/n, 2x/n + mπ csc β / n; 2β)
                            (catalog::phi(q), [real(0.0), real(mf * PI * csc(beta) / nf)])
                        } else {
                            // ψ(2y/n + 2mπ csc 2β / n, 2x/n; 2β)
                            (catalog::psi(q), [real(2.0 * mf * PI * csc(2.0 * beta) / nf), real(0.0)])
                        };
                        (weight, field.substituted("term", swap_map(2.0 / nf, 2.0 / nf, shift)))
                    })
                    .collect();
                let rhs = HeightField::sum(format!("thm4.1-p{}", part.number()), &terms, real(offset));
                Ok(FiniteDecomposition {
                    part,
                    variant,
                    beta,
                    n,
                    lhs,
                    rhs,
                    branch_unit: PI * sec(2.0 * beta),
                    lhs_param: p,
                })
            }
            Part::P4 => {
                let p = param(2.0 * beta, "2β")?;
                let lhs = catalog::chi(p);
                let terms = (0..n)
                    .map(|m| {
                        // χ(y/n − i mπ csc β / n, z/n; 2β)
                        let d = DilationSpec::new(
                            real(1.0),
                            real(1.0 / nf),
                            c(0.0, -(m as f64) * PI * csc(beta) / nf),
                            real(1.0 / nf),
                            real(0.0),
                        );
                        Ok((real(1.0), catalog::dilate(&catalog::chi(p), &d)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let rhs = HeightField::sum("thm4.1-p4", &terms, real(0.0));
                Ok(FiniteDecomposition { part, variant, beta, n, lhs, rhs, branch_unit: PI * sec(beta), lhs_param: p })
            }
        }
    }

    /// Whether the stated constraint holds at `(u, v)`: the positivity that
    /// licenses `atan t + atan(1/t) = π/2` for parts 1 to 3, membership in the
    /// domain of `χ` for part 4.
    pub fn constraint_holds(&self, u: f64, v: f64) -> bool {
        let x = match self.part {
            Part::P1 => u / self.beta.cos(),
            Part::P2 | Part::P3 => u / (self.beta.cos() * (2.0 * self.beta).cos()),
            Part::P4 => return self.lhs.contains(u, v),
        };
        let p = &self.lhs_param;
        let ok = match self.part {
            Part::P3 => phi_positive(x, v, p),
            _ => psi_positive(x, v, p),
        };
        ok && self.lhs.contains(u, v)
    }

    /// Compares both sides at `(u, v)` without enforcing the constraint.
    pub fn evaluate(&self, u: f64, v: f64) -> Result<DecompReport> {
        self.evaluate_with(u, v, &DecompTolerances::default())
    }

    pub fn evaluate_with(&self, u: f64, v: f64, tol: &DecompTolerances) -> Result<DecompReport> {
        let domain_ok = self.constraint_holds(u, v);
        let lj = self.lhs.eval(u, v)?;
        let rj = self.rhs.eval_complex(c(u, 0.0), c(v, 0.0))?;
        let im_residual = rj.v.im.abs();
        let b = branch_offset_scaled(lj.v, rj.v.re, self.branch_unit);
        let rj_re = rj.re();
        let derivative_gap = Jet2::new(0.0, lj.d1, lj.d2).max_diff(&Jet2::new(0.0, rj_re.d1, rj_re.d2));
        let derivative_imag = rj.max_imag();
        let pass = b.gap <= tol.value
            && im_residual <= tol.imag
            && derivative_gap <= tol.derivative
            && derivative_imag <= tol.derivative;
        Ok(DecompReport {
            part: self.part.number(),
            variant: self.variant,
            point: [u, v],
            beta: self.beta,
            n: self.n,
            lhs: lj.v,
            rhs: rj.v.re,
            gap: b.gap,
            branch_q: b.q,
            branch_unit: self.branch_unit,
            im_residual,
            derivative_gap,
            domain_ok,
            pass,
        })
    }
}

/// Comparison of both sides of a decomposition at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompReport {
    pub part: u8,
    pub variant: Variant,
    pub point: [f64; 2],
    pub beta: f64,
    pub n: usize,
    pub lhs: f64,
    /// Real part of the right-hand side.
    pub rhs: f64,
    /// `|lhs − rhs − q·unit|`
    pub gap: f64,
    pub branch_q: i64,
    pub branch_unit: f64,
    pub im_residual: f64,
    /// Largest gap among first and second derivatives.
    pub derivative_gap: f64,
    pub domain_ok: bool,
    pub pass: bool,
}

/// Evaluates one finite decomposition at a point; errors outside its constraint.
pub fn finite_decomp_check(part: Part, variant: Variant, u: f64, v: f64, beta: f64, n: usize) -> Result<DecompReport> {
    let d = FiniteDecomposition::new(part, variant, beta, n)?;
    if !d.constraint_holds(u, v) {
        return Err(Error::DomainConstraint(format!(
            "part {} constraint fails at ({u}, {v}) for beta = {beta}",
            part.number()
        )));
    }
    d.evaluate(u, v)
}

/// Outcome of one variant over a point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantOutcome {
    pub variant: Variant,
    pub points: usize,
    pub max_gap: f64,
    pub max_derivative_gap: f64,
    pub max_im_residual: f64,
    /// Distinct branch offsets seen, ascending.
    pub branch_q: Vec<i64>,
    pub passes: bool,
}

/// Aggregates per-point reports: a variant passes when every point passes
/// with a single branch offset.
pub fn summarize(variant: Variant, reports: &[DecompReport]) -> VariantOutcome {
    let mut qs: Vec<i64> = reports.iter().map(|r| r.branch_q).collect();
    qs.sort_unstable();
    qs.dedup();
    let max = |f: fn(&DecompReport) -> f64| reports.iter().map(f).fold(0.0, f64::max);
    VariantOutcome {
        variant,
        points: reports.len(),
        max_gap: max(|r| r.gap),
        max_derivative_gap: max(|r| r.derivative_gap),
        max_im_residual: max(|r| r.im_residual),
        passes: !reports.is_empty() && qs.len() == 1 && reports.iter().all(|r| r.pass),
        branch_q: qs,
    }
}

/// All three variants of one part over the same points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Adjudication {
    pub part: u8,
    pub beta: f64,
    pub n: usize,
    pub outcomes: Vec<VariantOutcome>,
    /// Variants that pass on the whole point set.
    pub closing: Vec<Variant>,
}

pub fn adjudicate(part: Part, beta: f64, n: usize, points: &[[f64; 2]]) -> Result<Adjudication> {
    adjudicate_with(part, beta, n, points, &DecompTolerances::default())
}

pub fn adjudicate_with(
    part: Part,
    beta: f64,
    n: usize,
    points: &[[f64; 2]],
    tol: &DecompTolerances,
) -> Result<Adjudication> {
    let mut outcomes = Vec::new();
    for v in Variant::ALL {
        let d = FiniteDecomposition::new(part, v, beta, n)?;
        let reports = points.iter().map(|&[u, w]| d.evaluate_with(u, w, tol)).collect::<Result<Vec<_>>>()?;
        outcomes.push(summarize(v, &reports));
    }
    let closing = outcomes.iter().filter(|o| o.passes).map(|o| o.variant).collect();
    Ok(Adjudication { part: part.number(), beta, n, outcomes, closing })
}
