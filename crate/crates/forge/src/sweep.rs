//! Convergence sweeps of the three series against their closed forms.

use std::path::Path;
use std::str::FromStr;

use zmc_core::catalog::{self, FamilyParam};
use zmc_core::decomp;
use zmc_core::series::{er_closed, er_partial_sweep};

use crate::error::{ForgeError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    /// The arctangent pair series at `(a, b)`.
    Er,
    /// `ψ` against its helicoid sum at `(x, y)`.
    Psi,
    /// `χ` against the real part of its complex sum at `(y, z)`.
    Chi,
}

impl FromStr for SweepTarget {
    type Err = ForgeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" => Ok(SweepTarget::Er),
            "thm3.1" => Ok(SweepTarget::Psi),
            "thm3.2" => Ok(SweepTarget::Chi),
            _ => Err(ForgeError::Config(format!("unknown sweep target {s:?} (use er, thm3.1 or thm3.2)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub value: f64,
    pub gap: f64,
    pub tail_bound: f64,
}

/// One row per entry of `ns`, which must be non-empty and strictly ascending.
/// `theta` is required for the family targets.
pub fn sweep(target: SweepTarget, point: [f64; 2], theta: Option<f64>, ns: &[usize]) -> Result<Vec<SweepRow>> {
    if ns.is_empty() {
        return Err(ForgeError::Config("n_list is empty".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ForgeError::Config(format!("n_list must be strictly ascending, got {ns:?}")));
    }
    let [u, v] = point;
    let param = || -> Result<FamilyParam> {
        let t = theta.ok_or_else(|| ForgeError::Config("this target needs --theta".into()))?;
        Ok(FamilyParam::new(t)?)
    };
    let rows = match target {
        SweepTarget::Er => {
            let closed = er_closed(u, v)?;
            er_partial_sweep(u, v, ns)?
                .into_iter()
                .map(|s| SweepRow {
                    n: s.n_pairs,
                    value: s.value,
                    gap: (s.value - closed).abs(),
                    tail_bound: s.tail_bound,
                })
                .collect()
        }
        SweepTarget::Psi => {
            let p = param()?;
            let lhs = catalog::psi_family(u, v, p)?.v;
            decomp::psi_infinite_sweep(u, v, &p, ns)?
                .into_iter()
                .map(|s| SweepRow {
                    n: s.n_pairs,
                    value: s.value,
                    gap: (s.value - lhs).abs(),
                    tail_bound: s.tail_bound,
                })
                .collect()
        }
        SweepTarget::Chi => {
            let p = param()?;
            let lhs = catalog::chi_family(u, v, p)?.v;
            decomp::chi_infinite_sweep(u, v, &p, ns)?
                .into_iter()
                .map(|s| {
                    let re = s.eval.value.re;
                    SweepRow { n: s.eval.n_pairs, value: re, gap: (re - lhs).abs(), tail_bound: s.eval.tail_bound }
                })
                .collect()
        }
    };
    Ok(rows)
}

/// `1, 2, 5, 10, 20, 50, …` below `n_max`, then `n_max` itself.
pub fn decade_list(n_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut decade = 1usize;
    'outer: loop {
        for m in [1, 2, 5] {
            let Some(n) = decade.checked_mul(m) else { break 'outer };
            if n >= n_max {
                break 'outer;
            }
            out.push(n);
        }
        match decade.checked_mul(10) {
            Some(d) => decade = d,
            None => break,
        }
    }
    out.push(n_max);
    out
}

pub fn write_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["N", "value", "gap", "tail_bound"])?;
    for r in rows {
        w.write_record([r.n.to_string(), r.value.to_string(), r.gap.to_string(), r.tail_bound.to_string()])?;
    }
    w.flush().map_err(|e| ForgeError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_gap_decreases_over_decades() {
        let rows = sweep(SweepTarget::Er, [1.0, 1.0], None, &[10, 100, 1000, 10_000]).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.windows(2).all(|w| w[1].gap < w[0].gap && w[1].tail_bound <= w[0].tail_bound));
        assert!(rows.iter().all(|r| r.gap <= r.tail_bound));
    }

    #[test]
    fn chi_reference_point_stays_under_the_bound() {
        let rows = sweep(SweepTarget::Chi, [2.0, 0.5], Some(0.8), &[1, 10, 100, 1000]).unwrap();
        assert!(rows.iter().all(|r| r.gap <= r.tail_bound), "{rows:?}");
    }

    #[test]
    fn empty_or_unsorted_lists_are_config_errors() {
        assert!(matches!(sweep(SweepTarget::Er, [1.0, 1.0], None, &[]), Err(ForgeError::Config(_))));
        assert!(matches!(sweep(SweepTarget::Er, [1.0, 1.0], None, &[10, 10]), Err(ForgeError::Config(_))));
        assert!(matches!(sweep(SweepTarget::Psi, [0.4, 0.7], None, &[10]), Err(ForgeError::Config(_))));
    }

    #[test]
    fn decades_end_at_n_max() {
        assert_eq!(decade_list(1000), vec![1, 2, 5, 10, 20, 50, 100, 200, 500, 1000]);
        assert_eq!(decade_list(30), vec![1, 2, 5, 10, 20, 30]);
        assert_eq!(decade_list(1), vec![1]);
    }
}
