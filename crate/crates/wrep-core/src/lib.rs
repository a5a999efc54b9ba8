//! Numerical engine for the Weierstrass representation of minimal surfaces.
//!
//! The crate is organized in three layers:
//!
//! * [`quad`] — polygonal paths in the complex plane and adaptive
//!   Gauss–Kronrod quadrature of vector fields along them;
//! * [`weierstrass`] — the generic representation engine: Gauss-map data,
//!   immersion, differential, unit normal, and Gauss curvature, with the
//!   classical helicoid and catenoid in [`classics`] as closed-form oracles;
//! * [`family`] and [`limit`] — a one-parameter family of embedded minimal
//!   disks whose curvature blows up at one interior point, together with the
//!   anchored small-parameter subsequence, its limit surfaces, winding
//!   counts, and convergence/blow-up measurements.
//!
//! The crate is `no_std`-compatible (`alloc` is required): disable default
//! features and enable `libm` to build without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("wrep-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod classics;
pub mod error;
pub mod family;
pub mod limit;
pub mod quad;
pub mod weierstrass;

pub use error::Error;
pub use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
