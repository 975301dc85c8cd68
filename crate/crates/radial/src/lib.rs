//! Radial discretisation of functions on ℝ³.
//!
//! Fields are sampled on a uniform cell-centred grid; integrals use the
//! weights of [`RadialGrid`], derivatives a fourth-order stencil in the
//! variable `r·u`. Dilations interpolate with monotone cubics, whereas the
//! amplitude/length rescalings of [`rescale`] act exactly by relabelling the grid.

pub mod band;
pub mod dump;
pub mod error;
pub mod field;
pub mod grid;
pub mod interp;
pub mod laplacian;
pub mod params;
pub mod rescale;

pub use band::{Band5, Band5Lu};
pub use dump::{read_dump, write_dump, DumpMeta};
pub use error::{RadialError, Result};
pub use field::RadialField;
pub use grid::RadialGrid;
pub use interp::{resample, MonotoneCubic};
pub use params::GppParams;
pub use rescale::{dilate, dilate_lossy, rescale_family, RescaleKind, ScaleMap};

use std::sync::Arc;

/// Convenience constructor returning a shareable grid.
pub fn build_grid(n: usize, r_max: f64) -> Result<Arc<RadialGrid>> {
    RadialGrid::new(n, r_max).map(Arc::new)
}
