//! Wick rotations between the minimal, maximal and Born–Infeld equations.
//!
//! | rule | forward                         | inverse                    | hypothesis          |
//! |------|---------------------------------|----------------------------|---------------------|
//! | 2.1  | `g(x,y) = ±f(ix, iy)`           | `f(x,y) = g(ix, iy)`       | even/even, odd/odd  |
//! | 2.2  | `h(y,z) = f(y, iz)`             | `f(x,y) = h(x, iy)`        | even in 2nd var     |
//! | 2.3  | `h(y,z) = −i f(z, iy)`          | `f(x,y) = −i h(iy, x)`     | odd in 2nd var      |
//!
//! Outputs are built by analytic continuation of the input's closed form and
//! are checked to be real on a probe grid before they are returned.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, ArgMap, ExpectedPde, HeightField, Parity};
use crate::error::{Error, Result};
use crate::residual::residual_for;
use crate::sample::{self, SampleBox};

pub const PARITY_PROBES: usize = 64;
pub const PARITY_RADIUS: f64 = 0.5;
pub const PARITY_TOL: f64 = 1e-10;
pub const REALNESS_TOL: f64 = 1e-10;
pub const REALNESS_GRID: usize = 50;
pub const DEFAULT_PARITY_SEED: u64 = 0x5eed_2001;
/// Residual points keep this distance from poles and domain edges.
pub const RESIDUAL_SAMPLE_MARGIN: f64 = 0.05;

/// Default probe box for realness checks.
pub const DEFAULT_PROBE_BOX: SampleBox = SampleBox::new([-1.2, 1.2], [-1.2, 1.2]);

pub const WICK_HELICOID_NOTE: &str = "the odd helicoid atan(y/x) under the even rule gives the \
complex Wick helicoid h(y, z) = i·atanh(z/y), a complex-valued Born-Infeld solution";

/// Measured symmetry of a field under `x ↦ −x` and `y ↦ −y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParityProfile {
    pub x: Parity,
    pub y: Parity,
    /// `[even, odd]` asymmetry residuals in the first variable.
    pub x_residual: [f64; 2],
    /// `[even, odd]` asymmetry residuals in the second variable.
    pub y_residual: [f64; 2],
    pub n_probes: usize,
}

impl ParityProfile {
    fn tag(r: [f64; 2]) -> Parity {
        if r[0] <= PARITY_TOL {
            Parity::Even
        } else if r[1] <= PARITY_TOL {
            Parity::Odd
        } else {
            Parity::Neither
        }
    }

    /// `var` is 0 or 1. The zero field is both even and odd.
    pub fn is_even_in(&self, var: usize) -> bool {
        [self.x_residual, self.y_residual][var][0] <= PARITY_TOL
    }

    pub fn is_odd_in(&self, var: usize) -> bool {
        [self.x_residual, self.y_residual][var][1] <= PARITY_TOL
    }
}

/// Probes `n_probes` seeded points of the disc of radius 0.5 and their
/// reflections in each axis.
pub fn parity_profile(hf: &HeightField, n_probes: usize, seed: u64) -> Result<ParityProfile> {
    let mut rng = sample::rng(seed);
    let pts = sample::sample_ball(&mut rng, PARITY_RADIUS, n_probes, |x, y| hf.contains(x, y))?;
    let mut xr = [0.0f64; 2];
    let mut yr = [0.0f64; 2];
    for [x, y] in pts {
        let f = hf.value(x, y)?;
        let scale = f.abs().max(1.0);
        for (r, (rx, ry)) in [(&mut xr, (-x, y)), (&mut yr, (x, -y))] {
            if !hf.contains(rx, ry) {
                return Err(Error::Domain(format!("reflection ({rx}, {ry}) leaves the domain of {}", hf.id())));
            }
            let g = hf.value(rx, ry)?;
            r[0] = r[0].max((f - g).abs() / scale);
            r[1] = r[1].max((f + g).abs() / scale);
        }
    }
    Ok(ParityProfile { x: ParityProfile::tag(xr), y: ParityProfile::tag(yr), x_residual: xr, y_residual: yr, n_probes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WickRule {
    #[serde(rename = "2.1")]
    MseToZmc,
    #[serde(rename = "2.2")]
    MseToBieEven,
    #[serde(rename = "2.3")]
    MseToBieOdd,
}

impl WickRule {
    pub const ALL: [WickRule; 3] = [WickRule::MseToZmc, WickRule::MseToBieEven, WickRule::MseToBieOdd];

    pub fn label(self) -> &'static str {
        match self {
            WickRule::MseToZmc => "2.1",
            WickRule::MseToBieEven => "2.2",
            WickRule::MseToBieOdd => "2.3",
        }
    }

    /// Equation solved by the output.
    pub fn target(self, dir: Direction) -> ExpectedPde {
        match (self, dir) {
            (_, Direction::Inverse) => ExpectedPde::Mse,
            (WickRule::MseToZmc, _) => ExpectedPde::Zmc,
            _ => ExpectedPde::Bie,
        }
    }
}

impl fmt::Display for WickRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for WickRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2.1" => Ok(WickRule::MseToZmc),
            "2.2" => Ok(WickRule::MseToBieEven),
            "2.3" => Ok(WickRule::MseToBieOdd),
            _ => Err(Error::InvalidParam(format!("unknown Wick rule {s:?} (use 2.1, 2.2 or 2.3)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The substitution of a rule, with the sign chosen for odd inputs of 2.1.
fn rule_map(rule: WickRule, dir: Direction, odd: bool) -> ArgMap {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let (scale, matrix) = match (rule, dir) {
        // odd in both variables means even jointly, so the sign is needed both ways
        (WickRule::MseToZmc, _) => (if odd { -o } else { o }, [[i, z], [z, i]]),
        (WickRule::MseToBieEven, _) => (o, [[o, z], [z, i]]),
        (WickRule::MseToBieOdd, Direction::Forward) => (-i, [[z, o], [i, z]]),
        (WickRule::MseToBieOdd, Direction::Inverse) => (-i, [[z, i], [o, z]]),
    };
    ArgMap { scale, matrix, shift: [z, z], offset: z }
}

/// Known closed form of a rule applied to a catalog field.
pub fn expected_partner(source: &HeightField, rule: WickRule, dir: Direction) -> Option<HeightField> {
    let p = source.params();
    let neg = |f: HeightField| {
        let id = format!("-{}", f.id());
        HeightField::sum(id, &[(c(-1.0, 0.0), f)], c(0.0, 0.0))
    };
    let out = match (source.id(), rule, dir) {
        ("scherk", WickRule::MseToZmc, Direction::Forward) => catalog::scherk_maximal(),
        ("scherk-maximal", WickRule::MseToZmc, Direction::Inverse) => catalog::scherk(),
        ("phi", WickRule::MseToZmc, Direction::Forward) => catalog::psi(p?),
        ("psi", WickRule::MseToZmc, Direction::Inverse) => catalog::phi(p?),
        ("helicoid", WickRule::MseToZmc, _) => neg(catalog::helicoid()),
        ("scherk", WickRule::MseToBieEven, Direction::Forward) => catalog::bi_soliton(),
        ("bi-soliton", WickRule::MseToBieEven, Direction::Inverse) => catalog::scherk(),
        ("phi", WickRule::MseToBieOdd, Direction::Forward) => catalog::chi(p?),
        ("chi", WickRule::MseToBieOdd, Direction::Inverse) => catalog::phi(p?),
        ("helicoid", WickRule::MseToBieOdd, Direction::Forward) => {
            catalog::hyperbolic_helicoid().swapped().with_id("atanh(y/z)")
        }
        _ => return None,
    };
    Some(out)
}

/// Applies a rule without checking parity or realness.
pub fn apply_unchecked(hf: &HeightField, rule: WickRule, dir: Direction, odd: bool) -> HeightField {
    let suffix = if dir == Direction::Inverse { "-inv" } else { "" };
    let out = hf
        .substituted(format!("wick{}{suffix}({})", rule.label(), hf.id()), rule_map(rule, dir, odd))
        .with_expected_pde(rule.target(dir));
    match expected_partner(hf, rule, dir) {
        Some(partner) => out.with_domain_of(&partner),
        None => out,
    }
}

/// Largest relative imaginary part of `hf` over the grid points inside its domain.
pub fn max_imag_on_grid(hf: &HeightField, b: &SampleBox, n: usize) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut count = 0;
    for [x, y] in b.grid(n) {
        if !hf.contains(x, y) {
            continue;
        }
        if let Ok(j) = hf.eval_complex(c(x, 0.0), c(y, 0.0)) {
            count += 1;
            worst = worst.max(j.v.im.abs() / j.v.re.abs().max(1.0));
        }
    }
    (worst, count)
}

fn parity_error(hf: &HeightField, rule: WickRule, what: &str, prof: &ParityProfile) -> Error {
    Error::Parity(format!(
        "{} is not {what} (residuals x: {:?}, y: {:?}) so rule {rule} does not apply; \
         canonical failure: {WICK_HELICOID_NOTE}",
        hf.id(),
        prof.x_residual,
        prof.y_residual
    ))
}

/// Checks the parity hypothesis, applies the rule and verifies realness.
pub fn transform(hf: &HeightField, rule: WickRule, dir: Direction, probe: &SampleBox) -> Result<HeightField> {
    let prof = parity_profile(hf, PARITY_PROBES, DEFAULT_PARITY_SEED)?;
    let odd = match (rule, dir) {
        (WickRule::MseToZmc, _) => {
            if prof.is_even_in(0) && prof.is_even_in(1) {
                false
            } else if prof.is_odd_in(0) && prof.is_odd_in(1) {
                true
            } else {
                return Err(parity_error(hf, rule, "even/even or odd/odd", &prof));
            }
        }
        (WickRule::MseToBieEven, _) => {
            if !prof.is_even_in(1) {
                return Err(parity_error(hf, rule, "even in its second variable", &prof));
            }
            false
        }
        (WickRule::MseToBieOdd, Direction::Forward) => {
            if !prof.is_odd_in(1) {
                return Err(parity_error(hf, rule, "odd in its second variable", &prof));
            }
            true
        }
        (WickRule::MseToBieOdd, Direction::Inverse) => {
            if !prof.is_odd_in(0) {
                return Err(parity_error(hf, rule, "odd in its first variable", &prof));
            }
            true
        }
    };
    let out = apply_unchecked(hf, rule, dir, odd);
    let (imag, count) = max_imag_on_grid(&out, probe, REALNESS_GRID);
    if count == 0 {
        return Err(Error::Domain(format!("no probe point of {probe:?} lies in the domain of {}", out.id())));
    }
    if imag > REALNESS_TOL {
        return Err(Error::NotReal(imag));
    }
    Ok(out.with_imag_tol(REALNESS_TOL))
}

pub fn wick_mse_to_zmc(hf: &HeightField) -> Result<HeightField> {
    transform(hf, WickRule::MseToZmc, Direction::Forward, &DEFAULT_PROBE_BOX)
}

pub fn wick_zmc_to_mse(hg: &HeightField) -> Result<HeightField> {
    transform(hg, WickRule::MseToZmc, Direction::Inverse, &DEFAULT_PROBE_BOX)
}

pub fn wick_mse_to_bie_even(hf: &HeightField) -> Result<HeightField> {
    transform(hf, WickRule::MseToBieEven, Direction::Forward, &DEFAULT_PROBE_BOX)
}

pub fn wick_bie_to_mse_even(hh: &HeightField) -> Result<HeightField> {
    transform(hh, WickRule::MseToBieEven, Direction::Inverse, &DEFAULT_PROBE_BOX)
}

pub fn wick_mse_to_bie_odd(hf: &HeightField) -> Result<HeightField> {
    transform(hf, WickRule::MseToBieOdd, Direction::Forward, &DEFAULT_PROBE_BOX)
}

pub fn wick_bie_to_mse_odd(hh: &HeightField) -> Result<HeightField> {
    transform(hh, WickRule::MseToBieOdd, Direction::Inverse, &DEFAULT_PROBE_BOX)
}

/// Realness, residual and partner comparison of one transform.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WickReport {
    pub source: String,
    pub rule: WickRule,
    pub direction: Direction,
    pub output: String,
    pub target_pde: ExpectedPde,
    pub grid_points: usize,
    pub max_imag: f64,
    pub residual_points: usize,
    pub max_residual: f64,
    pub partner: Option<String>,
    pub max_partner_gap: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
}

/// Runs `transform` and measures the result on `n_residual` seeded points.
pub fn wick_report(
    hf: &HeightField,
    rule: WickRule,
    dir: Direction,
    probe: &SampleBox,
    n_residual: usize,
    seed: u64,
    residual_tol: f64,
) -> WickReport {
    let mut rep = WickReport {
        source: hf.id().to_string(),
        rule,
        direction: dir,
        output: String::new(),
        target_pde: rule.target(dir),
        grid_points: 0,
        max_imag: f64::NAN,
        residual_points: 0,
        max_residual: f64::NAN,
        partner: None,
        max_partner_gap: None,
        pass: false,
        error: None,
    };
    let out = match transform(hf, rule, dir, probe) {
        Ok(o) => o,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    rep.output = out.id().to_string();
    (rep.max_imag, rep.grid_points) = max_imag_on_grid(&out, probe, REALNESS_GRID);
    let partner = expected_partner(hf, rule, dir);
    let pts = match sample::sample_box(&mut sample::rng(seed), probe, n_residual, |x, y| {
        out.contains_with_margin(x, y, RESIDUAL_SAMPLE_MARGIN)
    }) {
        Ok(p) => p,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    let mut worst = 0.0f64;
    let mut gap = 0.0f64;
    for [x, y] in pts {
        match out.eval(x, y) {
            Ok(j) => {
                worst = worst.max(residual_for(rep.target_pde, &j).unwrap_or(0.0).abs());
                if let Some(p) = &partner {
                    if let Ok(v) = p.value(x, y) {
                        gap = gap.max((v - j.v).abs());
                    }
                }
            }
            Err(e) => {
                rep.error = Some(e.to_string());
                return rep;
            }
        }
    }
    rep.residual_points = n_residual;
    rep.max_residual = worst;
    rep.partner = partner.map(|p| p.id().to_string());
    rep.max_partner_gap = rep.partner.as_ref().map(|_| gap);
    rep.pass =
        rep.max_imag <= REALNESS_TOL && worst <= residual_tol && rep.max_partner_gap.map_or(true, |g| g <= 1e-10);
    rep
}
