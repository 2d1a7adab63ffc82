//! The Euler–Ramanujan identity
//!
//! ```text
//! atan(tanh a · cot b) = Σ_{k∈ℤ} atan( a / (b + kπ) )
//! ```
//!
//! with the bilateral sum taken in `(k, −k)` pairs, and its finite regrouping
//! into `n` cot-terms.
//!
//! # Tail bound
//!
//! Every series here has terms `t(a / (b + kP))` with `t` odd and equal to
//! `atan` or `atanh`. Write `w± = a/(b ± kP)` and `t(w) = w + R(w)`. For both
//! functions and complex `|w| < 1`, `|R(w)| ≤ |w|³ / (3(1 − |w|²))`. Then
//!
//! ```text
//! |w+ + w−| = 2|a||b| / |b² − k²P²| ≤ 2|a||b| / (k²|P|² − |b|²)
//! |w±|      ≤ r_k = |a| / (k|P| − |b|)
//! |pair_k|  ≤ 2|a||b| / (k²|P|² − |b|²) + (2/3) r_k³ / (1 − r_k²)
//! ```
//!
//! With `c = |b|/|P| < N`, comparing with integrals of decreasing functions,
//!
//! ```text
//! Σ_{k>N} |pair_k| ≤ (2|a||b|/|P|²) · atanh(c/N)/c
//!                  + (2/3)/(1 − r²_{N+1}) · |a|³ / (2|P|³ (N − c)²)
//! ```
//!
//! Pairs before the bound applies (small `k`, large `|a|`) are added
//! explicitly as `|t(w+)| + |t(w−)|`. A rounding allowance of
//! `4ε(|value| + Σ|terms|)` is added on top.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Elementary, Scalar};
use crate::sum::{CompensatedSum, Neumaier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermsPolicy {
    PairedBilateral,
}

/// `value = term₀ + Σ_{k=1..N} (term_k + term_{−k})`, with
/// `|value − limit| ≤ tail_bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEval<T> {
    pub value: T,
    pub n_pairs: usize,
    pub tail_bound: f64,
    pub policy: TermsPolicy,
}

impl<T: Scalar> SeriesEval<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U, bound_scale: f64) -> SeriesEval<U> {
        SeriesEval {
            value: f(self.value),
            n_pairs: self.n_pairs,
            tail_bound: self.tail_bound * bound_scale,
            policy: self.policy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OddFn {
    Atan,
    Atanh,
}

impl OddFn {
    fn eval<T: Scalar>(self, w: T) -> Result<T> {
        match self {
            OddFn::Atan => w.checked_atan(),
            OddFn::Atanh => w.checked_atanh(),
        }
    }
}

fn term<T: Scalar>(f: OddFn, a: T, b: T, p: T, k: f64) -> Result<T> {
    let den = b + p * T::from_f64(k);
    if den.abs() == 0.0 {
        return Err(Error::Pole(format!("b + kP = 0 at k = {k}")));
    }
    f.eval(a * den.checked_recip()?)
}

/// Bound on `Σ_{k>n} |pair_k|`; requires `n > c` and `r_{n+1} < 1`.
fn asymptotic_tail(a: f64, b: f64, p: f64, n: usize) -> f64 {
    let nf = n as f64;
    let c = b / p;
    let lin = if b == 0.0 { 0.0 } else { 2.0 * a * b / (p * p) * (c / nf).atanh() / c };
    let r1 = a / ((nf + 1.0) * p - b);
    let cubic = (2.0 / 3.0) / (1.0 - r1 * r1) * a.powi(3) / (2.0 * p.powi(3) * (nf - c).powi(2));
    lin + cubic
}

/// Bound on `Σ_{k>n} |pair_k|` without the rounding allowance: explicit
/// pre-asymptotic pairs followed by the asymptotic estimate.
pub(crate) fn odd_pair_tail<T: Scalar>(f: OddFn, a: T, b: T, p: T, n: usize) -> Result<f64> {
    let (aa, ab, ap) = (a.abs(), b.abs(), p.abs());
    if ap == 0.0 {
        return Err(Error::InvalidParam("zero period".into()));
    }
    if aa == 0.0 {
        return Ok(0.0);
    }
    let c = ab / ap;
    let mut k0 = n.max(c.floor() as usize + 1);
    while ((k0 + 1) as f64) * ap - ab <= 2.0 * aa {
        k0 += 1;
    }
    let mut pre = Neumaier::new();
    for k in n + 1..=k0 {
        let kf = k as f64;
        pre.add(term(f, a, b, p, kf)?.abs() + term(f, a, b, p, -kf)?.abs());
    }
    Ok(pre.value() + asymptotic_tail(aa, ab, ap, k0))
}

/// Paired sum of `t(a/(b + kP))` over `|k| ≤ n` with its proven tail bound.
pub(crate) fn odd_pair_series<T: Scalar>(f: OddFn, a: T, b: T, p: T, n: usize) -> Result<SeriesEval<T>> {
    Ok(odd_pair_sweep(f, a, b, p, &[n])?.remove(0))
}

/// The paired sums at every checkpoint of the ascending list `ns`, in one pass.
pub(crate) fn odd_pair_sweep<T: Scalar>(f: OddFn, a: T, b: T, p: T, ns: &[usize]) -> Result<Vec<SeriesEval<T>>> {
    check_checkpoints(ns)?;
    let mut acc = CompensatedSum::new();
    let mut mass = Neumaier::new();
    let t0 = term(f, a, b, p, 0.0)?;
    acc.add(t0);
    mass.add(t0.abs());
    let mut out = Vec::with_capacity(ns.len());
    let mut k = 0;
    for &n in ns {
        while k < n {
            k += 1;
            let kf = k as f64;
            let (tp, tm) = (term(f, a, b, p, kf)?, term(f, a, b, p, -kf)?);
            acc.add(tp + tm);
            mass.add(tp.abs() + tm.abs());
        }
        let value: T = acc.value();
        let rounding = if a.abs() == 0.0 { 0.0 } else { rounding_allowance(value.abs(), mass.value()) };
        let tail = odd_pair_tail(f, a, b, p, n)?;
        out.push(SeriesEval { value, n_pairs: n, tail_bound: tail + rounding, policy: TermsPolicy::PairedBilateral });
    }
    Ok(out)
}

pub(crate) fn check_checkpoints(ns: &[usize]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::InvalidParam("empty list of truncations".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParam(format!("truncations must be strictly ascending: {ns:?}")));
    }
    Ok(())
}

/// `4ε(|value| + Σ|terms|)`
pub(crate) fn rounding_allowance(value: f64, mass: f64) -> f64 {
    4.0 * f64::EPSILON * (value + mass)
}

/// `atan(tanh a · cot b)` on principal branches.
pub fn er_closed<T: Scalar>(a: T, b: T) -> Result<T> {
    let [cot, _, _] = Elementary::Cot.derivatives(b)?;
    (a.checked_tanh()? * cot).checked_atan()
}

/// Paired bilateral partial sum of `atan(a / (b + kπ))` over `|k| ≤ n`.
pub fn er_partial<T: Scalar>(a: T, b: T, n: usize) -> Result<SeriesEval<T>> {
    odd_pair_series(OddFn::Atan, a, b, T::from_f64(PI), n)
}

/// [`er_partial`] at every checkpoint of the ascending list `ns`, in one pass.
pub fn er_partial_sweep<T: Scalar>(a: T, b: T, ns: &[usize]) -> Result<Vec<SeriesEval<T>>> {
    odd_pair_sweep(OddFn::Atan, a, b, T::from_f64(PI), ns)
}

/// `Σ_{m=0}^{n−1} atan( tanh(a/n) · cot((b + mπ)/n) )`.
pub fn er_regroup_finite<T: Scalar>(a: T, b: T, n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidParam("regrouping needs n ≥ 1".into()));
    }
    let nf = T::from_f64(n as f64);
    let inv = nf.checked_recip()?;
    let mut acc = CompensatedSum::new();
    for m in 0..n {
        let bm = (b + T::from_f64(m as f64 * PI)) * inv;
        acc.add(er_closed(a * inv, bm)?);
    }
    Ok(acc.value())
}

/// `lhs − rhs = q·unit + gap` with `q` the nearest integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchOffset {
    pub q: i64,
    pub gap: f64,
}

pub fn branch_offset_scaled(lhs: f64, rhs: f64, unit: f64) -> BranchOffset {
    let d = lhs - rhs;
    let q = (d / unit).round();
    BranchOffset { q: q as i64, gap: (d - q * unit).abs() }
}

/// Branch offset in units of `π`.
pub fn branch_offset(lhs: f64, rhs: f64) -> BranchOffset {
    branch_offset_scaled(lhs, rhs, PI)
}

/// Pair sum against the closed form at complex `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexAgreement {
    /// Nearest multiple of `π` to `Re(sum − closed)`.
    pub q: i64,
    /// `|sum − closed − qπ|`
    pub gap: f64,
    pub tail_bound: f64,
}

impl ComplexAgreement {
    /// Agreement modulo `π`; `q == 0` on top of this is agreement outright.
    pub fn agrees(&self) -> bool {
        self.gap <= self.tail_bound
    }
}

/// Compares [`er_partial`] with [`er_closed`] off the real axis, where the
/// identity is only known to hold on some neighbourhood of the real cell.
pub fn er_complex_agreement(a: Complex64, b: Complex64, n: usize) -> Result<ComplexAgreement> {
    let s = er_partial(a, b, n)?;
    let d = s.value - er_closed(a, b)?;
    let q = (d.re / PI).round();
    Ok(ComplexAgreement { q: q as i64, gap: (d - Complex64::new(q * PI, 0.0)).norm(), tail_bound: s.tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn closed_trivial_values() {
        assert_eq!(er_closed(0.0, 1.3).unwrap(), 0.0);
        assert!(er_closed(0.7, PI / 2.0).unwrap().abs() < 1e-16);
        assert!(matches!(er_closed(0.7, 0.0), Err(Error::Pole(_))));
    }

    #[test]
    fn zero_a_has_zero_tail() {
        let s = er_partial(0.0, 1.0, 50).unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.tail_bound, 0.0);
    }

    #[test]
    fn partial_within_bound() {
        for n in [10, 1000] {
            let s = er_partial(1.0, 1.0, n).unwrap();
            let gap = (s.value - er_closed(1.0, 1.0).unwrap()).abs();
            assert!(gap <= s.tail_bound, "n={n} gap={gap} bound={}", s.tail_bound);
            assert!(s.tail_bound < 3.0 * gap + 1e-15, "bound should be tight");
        }
    }

    #[test]
    fn large_a_uses_explicit_prefix() {
        let s = er_partial(40.0, 0.3, 3).unwrap();
        let gap = (s.value - er_closed(40.0, 0.3).unwrap()).abs();
        assert!(gap <= s.tail_bound);
    }

    #[test]
    fn sweep_matches_single_evaluations() {
        let sweep = er_partial_sweep(0.9, 1.7, &[0, 3, 50]).unwrap();
        for s in &sweep {
            assert_eq!(*s, er_partial(0.9, 1.7, s.n_pairs).unwrap());
        }
        assert!(er_partial_sweep(0.9, 1.7, &[]).is_err());
        assert!(er_partial_sweep(0.9, 1.7, &[5, 5]).is_err());
    }

    #[test]
    fn pole_term() {
        assert!(matches!(er_partial(1.0, -PI, 3), Err(Error::Pole(_))));
    }

    #[test]
    fn regroup_single_term_is_closed_form() {
        for (a, b) in [(1.0, 1.0), (-0.4, 2.5), (2.0, 0.2)] {
            assert_eq!(er_regroup_finite(a, b, 1).unwrap(), er_closed(a, b).unwrap());
        }
        assert_eq!(er_regroup_finite(0.0, 1.0, 4).unwrap(), 0.0);
    }

    #[test]
    fn branch_offsets() {
        assert_eq!(branch_offset(0.3, 0.3), BranchOffset { q: 0, gap: 0.0 });
        let b = branch_offset(0.3 + PI, 0.3);
        assert_eq!(b.q, 1);
        assert!(b.gap <= 1e-15);
        assert_eq!(branch_offset_scaled(-4.0, 0.0, 2.0).q, -2);
    }

    #[test]
    fn complex_partial_converges() {
        let (a, b) = (Complex64::new(0.8, 0.15), Complex64::new(1.1, -0.1));
        let s = er_partial(a, b, 2000).unwrap();
        let gap = (s.value - er_closed(a, b).unwrap()).norm();
        assert!(gap <= s.tail_bound, "gap={gap} bound={}", s.tail_bound);
    }

    #[test]
    fn complex_agreement_near_and_off_the_real_cell() {
        let near = er_complex_agreement(Complex64::new(0.7, 0.3), Complex64::new(1.0, -0.2), 2000).unwrap();
        assert!(near.agrees() && near.q == 0, "{near:?}");
        // far from the real axis the sides differ by a whole multiple of π
        let far = er_complex_agreement(Complex64::new(0.7, 2.0), Complex64::new(1.0, 2.0), 2000).unwrap();
        assert!(far.agrees() && far.q != 0, "{far:?}");
    }
}
