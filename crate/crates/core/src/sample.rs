//! Seeded point sets: rejection sampling in boxes and balls, and regular grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed coordinate box `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub x: [f64; 2],
    pub y: [f64; 2],
}

impl SampleBox {
    pub const fn new(x: [f64; 2], y: [f64; 2]) -> Self {
        SampleBox { x, y }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && r[0] < r[1];
        if ok(self.x) && ok(self.y) {
            Ok(())
        } else {
            Err(Error::InvalidParam(format!("empty or non-finite box {self:?}")))
        }
    }

    /// `n × n` cell-centred grid, row-major in `y`.
    pub fn grid(&self, n: usize) -> Vec<[f64; 2]> {
        let at = |r: [f64; 2], i: usize| r[0] + (r[1] - r[0]) * (i as f64 + 0.5) / n as f64;
        (0..n).flat_map(|j| (0..n).map(move |i| [at(self.x, i), at(self.y, j)])).collect()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` uniform points of the box that pass `accept`, in draw order.
pub fn sample_box(
    rng: &mut ChaCha8Rng,
    b: &SampleBox,
    n: usize,
    mut accept: impl FnMut(f64, f64) -> bool,
) -> Result<Vec<[f64; 2]>> {
    b.validate()?;
    let max_draws = 2000 * n.max(1);
    let mut out = Vec::with_capacity(n);
    for _ in 0..max_draws {
        if out.len() == n {
            break;
        }
        let x = rng.gen_range(b.x[0]..b.x[1]);
        let y = rng.gen_range(b.y[0]..b.y[1]);
        if accept(x, y) {
            out.push([x, y]);
        }
    }
    if out.len() < n {
        return Err(Error::Domain(format!("only {} of {n} points accepted in box {b:?}", out.len())));
    }
    Ok(out)
}

/// `n` uniform points of the disc of radius `r` about the origin.
pub fn sample_ball(
    rng: &mut ChaCha8Rng,
    r: f64,
    n: usize,
    mut accept: impl FnMut(f64, f64) -> bool,
) -> Result<Vec<[f64; 2]>> {
    let b = SampleBox::new([-r, r], [-r, r]);
    sample_box(rng, &b, n, |x, y| x * x + y * y <= r * r && accept(x, y))
}
