//! Microwave cavity modes and their coupling to NV spin ensembles in diamond.
//!
//! The pipeline goes geometry → mesh → modes → observables (filling factors,
//! Q budget) → spin coupling → reflection spectra. [`report`] glues the
//! stages together for the `nvcavity` binary.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod constants;
pub mod error;
pub mod geometry;
pub mod materials;
pub mod mesh;
pub mod modes;
pub mod observables;
pub mod report;
pub mod specfile;
pub mod spectra;
pub mod spin;
pub mod table;

pub use error::{Error, Result};
pub use geometry::{CavityGeometry, GeometryVariant, Region};
pub use materials::{Material, MaterialLibrary};
pub use mesh::{build_mesh, AxiMesh};
pub use modes::{solve_axisymmetric_te0, FieldSolution, ModeResult};
pub use observables::{FillingFactors, QBudget};
pub use specfile::{parse_spec, parse_spec_str, CavitySpec};
pub use spectra::SpectroscopyParams;
pub use spin::{CouplingReport, Pathway, Regime, SpinEnsemble};
