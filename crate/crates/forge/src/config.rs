//! TOML configuration. Every field has a default, so an empty file is a
//! valid config; unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use zmc_core::decomp::DecompTolerances;
use zmc_core::sample::SampleBox;

use crate::error::{ForgeError, Result};

/// Environment variable naming the config file used when `--config` is absent.
pub const CONFIG_ENV: &str = "ZMC_FORGE_CONFIG";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    /// Omits wall time from reports so equal inputs give equal bytes.
    pub deterministic: bool,
    pub tolerances: Tolerances,
    pub sizes: Sizes,
    /// Family angles for the catalog suite.
    pub thetas: Vec<f64>,
    /// Truncations for series suites and sweeps, strictly ascending.
    pub n_list: Vec<usize>,
    /// Term counts for the finite decompositions.
    pub decomp_n: Vec<usize>,
    pub boxes: Boxes,
    pub betas: Betas,
    /// Sampled points keep this distance from poles and domain edges.
    pub sample_margin: f64,
    pub grid: GridSpec,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 20_240_601,
            deterministic: true,
            tolerances: Tolerances::default(),
            sizes: Sizes::default(),
            thetas: vec![0.3, 0.7, 1.2],
            n_list: vec![10, 100, 1_000, 10_000, 100_000, 500_000, 1_000_000],
            decomp_n: vec![1, 2, 3, 5],
            boxes: Boxes::default(),
            betas: Betas::default(),
            sample_margin: 0.05,
            grid: GridSpec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// PDE residual of catalog entries.
    pub residual: f64,
    pub wick_imag: f64,
    pub wick_residual: f64,
    /// The non-real Wick image must exceed this somewhere.
    pub wick_negative_imag: f64,
    /// Partial sum gap at the largest truncation.
    pub er_final_gap: f64,
    /// Range for `gap(N/2) / gap(N)`.
    pub er_halving: [f64; 2],
    pub regroup: f64,
    pub psi_final_gap: f64,
    pub psi_tail_bound: f64,
    pub summand: f64,
    pub chi_imag: f64,
    pub log_form: f64,
    pub decomp_value: f64,
    pub decomp_derivative: f64,
    pub decomp_imag: f64,
    pub identity: f64,
    pub class: f64,
    pub lightlike: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-9,
            wick_imag: 1e-10,
            wick_residual: 1e-8,
            wick_negative_imag: 1e-3,
            er_final_gap: 1e-4,
            er_halving: [1.8, 2.2],
            regroup: 1e-10,
            psi_final_gap: 1e-3,
            psi_tail_bound: 5e-2,
            summand: 1e-14,
            chi_imag: 1e-12,
            log_form: 1e-13,
            decomp_value: 1e-9,
            decomp_derivative: 1e-7,
            decomp_imag: 1e-10,
            identity: 1e-10,
            class: 1e-8,
            lightlike: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn decomp(&self) -> DecompTolerances {
        DecompTolerances { value: self.decomp_value, derivative: self.decomp_derivative, imag: self.decomp_imag }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Sizes {
    pub catalog_points: usize,
    pub wick_grid: usize,
    pub codim2_surface_points: usize,
    pub er_points: usize,
    pub regroup_points: usize,
    pub thm31_points: usize,
    pub thm32_points: usize,
    pub log_form_pairs: usize,
    pub decomp_points: usize,
    pub codim2_points: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes {
            catalog_points: 200,
            wick_grid: 50,
            codim2_surface_points: 100,
            er_points: 100,
            regroup_points: 100,
            thm31_points: 100,
            thm32_points: 50,
            log_form_pairs: 100,
            decomp_points: 50,
            codim2_points: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Boxes {
    pub catalog: SampleBox,
    pub wick: SampleBox,
    /// `(a, b)` for the Euler–Ramanujan identity.
    pub er: SampleBox,
    pub psi: SampleBox,
    pub chi: SampleBox,
    /// `(x, y)` for parts 1 to 3 of the finite decompositions.
    pub decomp: SampleBox,
    /// `(y, z)` for part 4.
    pub decomp_p4: SampleBox,
    /// Where parts 1 to 3 are probed outside their constraint.
    pub decomp_map: SampleBox,
}

impl Default for Boxes {
    fn default() -> Self {
        Boxes {
            catalog: SampleBox::new([-2.0, 2.0], [-2.0, 2.0]),
            wick: SampleBox::new([-1.2, 1.2], [-1.2, 1.2]),
            er: SampleBox::new([-3.0, 3.0], [0.05, std::f64::consts::PI - 0.05]),
            psi: SampleBox::new([-3.0, 3.0], [-3.0, 3.0]),
            chi: SampleBox::new([-3.0, 3.0], [-3.0, 3.0]),
            decomp: SampleBox::new([0.05, 1.0], [0.1, 1.5]),
            decomp_p4: SampleBox::new([1.0, 3.0], [-0.8, 0.8]),
            decomp_map: SampleBox::new([-4.0, 4.0], [-4.0, 4.0]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Betas {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
}

impl Default for Betas {
    fn default() -> Self {
        Betas { p1: 0.3, p2: 0.3, p3: 0.3, p4: 0.5 }
    }
}

impl Betas {
    pub fn for_part(&self, part: u8) -> f64 {
        match part {
            1 => self.p1,
            2 => self.p2,
            3 => self.p3,
            _ => self.p4,
        }
    }
}

/// Regular grid with endpoints included, for meshes and classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub ny: usize,
    /// Distance kept from poles and domain edges.
    pub margin: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { x_min: -2.0, x_max: 2.0, nx: 41, y_min: -2.0, y_max: 2.0, ny: 41, margin: 1e-3 }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max, self.margin].iter().all(|v| v.is_finite());
        if !finite || self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(ForgeError::Config(format!("grid bounds must be finite with min < max: {self:?}")));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(ForgeError::Config(format!("grid needs nx, ny >= 2, got {} x {}", self.nx, self.ny)));
        }
        if self.margin < 0.0 {
            return Err(ForgeError::Config(format!("grid margin must be >= 0, got {}", self.margin)));
        }
        Ok(())
    }

    /// Coordinates of node `(i, j)`.
    pub fn node(&self, i: usize, j: usize) -> [f64; 2] {
        let lerp = |a: f64, b: f64, k: usize, n: usize| a + (b - a) * k as f64 / (n - 1) as f64;
        [lerp(self.x_min, self.x_max, i, self.nx), lerp(self.y_min, self.y_max, j, self.ny)]
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        let cfg: Config = toml::from_str(text).map_err(|e| ForgeError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ForgeError::Config(format!("cannot read {}: {e}", path.display())))?;
        Config::from_toml(&text).map_err(|e| match e {
            ForgeError::Config(m) => ForgeError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// `--config` if given, else the file named by [`CONFIG_ENV`], else defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Config> {
        let from_env = std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
        match explicit.map(Path::to_path_buf).or(from_env) {
            Some(p) => Config::from_path(&p),
            None => Ok(Config::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(ForgeError::Config(m));
        if let Some(t) = self.thetas.iter().find(|t| !(**t > 0.0 && **t < std::f64::consts::FRAC_PI_2)) {
            return bad(format!("theta {t} outside (0, pi/2)"));
        }
        if self.thetas.is_empty() {
            return bad("thetas is empty".into());
        }
        if self.n_list.is_empty() {
            return bad("n_list is empty".into());
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("n_list must be strictly ascending: {:?}", self.n_list));
        }
        if self.decomp_n.is_empty() || self.decomp_n.contains(&0) {
            return bad(format!("decomp_n must be non-empty with n >= 1: {:?}", self.decomp_n));
        }
        let s = &self.sizes;
        let sizes = [
            s.catalog_points,
            s.wick_grid,
            s.codim2_surface_points,
            s.er_points,
            s.regroup_points,
            s.thm31_points,
            s.thm32_points,
            s.log_form_pairs,
            s.decomp_points,
            s.codim2_points,
        ];
        if sizes.contains(&0) {
            return bad(format!("every size must be positive: {s:?}"));
        }
        let b = &self.boxes;
        for (name, bx) in [
            ("catalog", b.catalog),
            ("wick", b.wick),
            ("er", b.er),
            ("psi", b.psi),
            ("chi", b.chi),
            ("decomp", b.decomp),
            ("decomp_p4", b.decomp_p4),
            ("decomp_map", b.decomp_map),
        ] {
            bx.validate().map_err(|e| ForgeError::Config(format!("boxes.{name}: {e}")))?;
        }
        if self.sample_margin.is_nan() || self.sample_margin < 0.0 {
            return bad(format!("sample_margin must be >= 0, got {}", self.sample_margin));
        }
        self.grid.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn partial_tables_keep_other_defaults() {
        let cfg = Config::from_toml("seed = 7\n[tolerances]\nresidual = 1e-8\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.tolerances.residual, 1e-8);
        assert_eq!(cfg.tolerances.class, 1e-8);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(Config::from_toml("sede = 1"), Err(ForgeError::Config(_))));
        assert!(matches!(Config::from_toml("n_list = []"), Err(ForgeError::Config(_))));
        assert!(matches!(Config::from_toml("n_list = [10, 5]"), Err(ForgeError::Config(_))));
        assert!(matches!(Config::from_toml("thetas = [2.0]"), Err(ForgeError::Config(_))));
        assert!(matches!(Config::from_toml("[grid]\nnx = 0"), Err(ForgeError::Config(_))));
    }

    #[test]
    fn default_config_round_trips() {
        let text = toml::to_string(&Config::default()).unwrap();
        assert_eq!(Config::from_toml(&text).unwrap(), Config::default());
    }

    #[test]
    fn grid_nodes_include_endpoints() {
        let g = GridSpec { x_min: 0.1, x_max: 2.0, nx: 32, y_min: 0.1, y_max: 2.0, ny: 32, margin: 0.0 };
        assert_eq!(g.node(0, 0), [0.1, 0.1]);
        assert_eq!(g.node(31, 31), [2.0, 2.0]);
    }
}
