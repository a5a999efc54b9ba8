//! Error type shared by the quadrature, engine, and family layers.

use core::fmt;

use num_complex::Complex64;

/// Everything that can go wrong while evaluating an immersion or one of the
/// derived certificates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Adaptive quadrature could not reach the requested tolerance within
    /// its subdivision budget.
    NonConvergence { achieved: f64, requested: f64 },
    /// The integrand produced a NaN or infinity at a quadrature node.
    NonFiniteField { at: Complex64 },
    /// A path node or evaluation point left the attached domain.
    DomainViolation { at: Complex64 },
    /// Two paths that must share endpoints (or a path and its base point)
    /// do not.
    EndpointMismatch,
    /// The operation requires exponential Gauss data with `phi = dz`.
    UnsupportedData,
    /// The height differential vanishes at the evaluation point.
    ZeroDensity,
    /// Evaluation at a pole of the data.
    PoleHit { at: Complex64 },
    /// A root solve was asked for a root outside its bracket.
    RootNotBracketed,
    /// A scalar argument is outside its documented range.
    InvalidParameter { what: &'static str },
    /// A polygonal path failed construction.
    InvalidPath { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonConvergence { achieved, requested } => write!(
                f,
                "quadrature did not converge: error estimate {achieved:.3e} > tolerance {requested:.3e}"
            ),
            Error::NonFiniteField { at } => {
                write!(f, "integrand is not finite at z = {at}")
            }
            Error::DomainViolation { at } => {
                write!(f, "point z = {at} is outside the domain")
            }
            Error::EndpointMismatch => write!(f, "paths do not share the required endpoints"),
            Error::UnsupportedData => {
                write!(f, "operation requires exponential Gauss data with phi = dz")
            }
            Error::ZeroDensity => write!(f, "height differential vanishes at the point"),
            Error::PoleHit { at } => write!(f, "evaluation at a pole, z = {at}"),
            Error::RootNotBracketed => write!(f, "root is not bracketed by the search interval"),
            Error::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            Error::InvalidPath { reason } => write!(f, "invalid path: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
