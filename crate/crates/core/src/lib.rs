//! Wavelet scattering transforms on periodic 1D, 2D and 3D grids.
//!
//! A [`Plan`] precomputes a filter bank at every resolution the cascade
//! visits together with the table of scattering paths. [`Plan::scatter`]
//! then evaluates
//!
//! * order 0: `x * phi_J`,
//! * order 1: `|x * psi_l1| * phi_J`,
//! * order 2: `||x * psi_l1| * psi_l2| * phi_J` for `j2 > j1`,
//!
//! all subsampled to stride `2^J`, one first-order subtree at a time.
//!
//! ```
//! use scatter_core::{plan_1d, RealGrid};
//!
//! let plan = plan_1d(256, 4, 2, 0).unwrap();
//! let x = RealGrid::from_fn(&[256], |i| (0.3 * i[0] as f64).sin());
//! let s = plan.scatter(&x).unwrap();
//! assert_eq!(s.coefficients.shape(), &[plan.paths().len(), 16]);
//! ```

mod cascade;
mod error;
pub mod filterbank;
pub mod oracle;
mod paths;
mod plan;
mod scattering1d;
mod scattering2d;
mod scattering3d;
pub mod spectral;

pub use cascade::{ScatteringOutput, Stats};
pub use error::{Result, ScatterError};
pub use filterbank::{FilterBank, FilterIndex};
pub use paths::{PathMeta, PathRule};
pub use plan::Plan;
pub use scattering1d::plan_1d;
pub use scattering2d::{path_count_2d, plan_2d};
pub use scattering3d::plan_3d;
pub use spectral::{ComplexGrid, RealGrid};
