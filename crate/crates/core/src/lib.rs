//! Zero mean curvature surfaces, their Wick rotations, and the series and
//! finite decompositions that relate Scherk-type families to helicoids.
//!
//! Everything is evaluated through [`Jet2`], a value with exact first and
//! second derivatives over real or complex scalars, so residuals of the
//! minimal, maximal and Born–Infeld equations come out of the same call that
//! produces the height.
//!
//! ```
//! use zmc_core::{catalog, residual};
//!
//! let p = catalog::FamilyParam::new(0.7).unwrap();
//! let j = catalog::psi(p).eval(0.4, 0.9).unwrap();
//! assert!(residual::residual_zmc(&j).abs() < 1e-12);
//! ```

pub mod catalog;
pub mod codim2;
pub mod decomp;
pub mod error;
pub mod residual;
pub mod sample;
pub mod scalar;
pub mod series;
pub mod sum;
pub mod wick;

pub use catalog::{DilationSpec, ExpectedPde, FamilyParam, HeightField, Parity};
pub use error::{Error, Result};
pub use scalar::{ComplexScalar, Jet2, Scalar};
pub use series::SeriesEval;

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(jets, "jets.md");
    chapter!(catalog, "catalog.md");
    chapter!(wick, "wick.md");
    chapter!(series, "series.md");
    chapter!(decompositions, "decompositions.md");
    chapter!(codim2, "codim2.md");
}
