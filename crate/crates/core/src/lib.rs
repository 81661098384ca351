//! Bound states of an electron in a two-dimensional quantum ring with a
//! confining well of finite depth and Rashba spin-orbit coupling.
//!
//! Everything is expressed in dimensionless units: lengths in units of the
//! outer ring radius, energies in units of `ħ²/(2μρ_o²)`. The radial spinor
//! components `u` (angular factor `e^{imφ}`) and `w` (`e^{i(m+1)φ}`) are
//! written exactly in terms of Bessel functions in the three regions
//! `0 < r < r_i`, `r_i < r < 1` and `r > 1`; continuity of `u, u', w, w'` at
//! both interfaces gives an 8 × 8 homogeneous system whose determinant
//! vanishes at the bound-state energies.
//!
//! ```no_run
//! use rashba_ring::{spectrum, RingConfig};
//!
//! let cfg = RingConfig::new(0, 25.0, 5.0, 0.2).unwrap();
//! for level in spectrum::find_levels(&cfg, &Default::default()).unwrap() {
//!     println!("{:.2}", level.e);
//! }
//! ```

// `!(x > 0.0)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod cli;
pub mod error;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{PhysicalParams, RingConfig};
