//! The Weierstrass representation engine.
//!
//! A meromorphic Gauss map `g` and a holomorphic height differential `phi`
//! on a domain induce a conformal minimal immersion
//!
//! ```text
//! F(z) = Re  int_{z0}^{z} ( (g^-1 - g)/2 , i (g^-1 + g)/2 , 1 ) phi
//! ```
//!
//! integrated along a path from the base point.  For exponential data
//! `g = e^{i h}` with `phi = dz` the integrand is evaluated through the real
//! coordinate fields of the differential,
//!
//! ```text
//! dF/dx = ( sinh v cos u,  sinh v sin u, 1 )
//! dF/dy = ( cosh v sin u, -cosh v cos u, 0 )        h = u + i v,
//! ```
//!
//! which keeps the quadrature integrand real and smooth.

use num_complex::Complex64;
#[allow(unused_imports)] // required for float math in no_std builds
use num_traits::Float;

use crate::error::Error;
use crate::quad::{integrate_segment_with, PolyPath};
use crate::Result;

/// Membership test for the region a set of Gauss data lives on.
pub trait Domain: Sync {
    fn contains(&self, z: Complex64) -> bool;
}

/// A holomorphic function together with its complex derivative.
///
/// Implementations must be stateless: evaluation order is unspecified and
/// may be concurrent.
pub trait Holomorphic: Sync {
    fn eval(&self, z: Complex64) -> Complex64;
    fn derivative(&self, z: Complex64) -> Complex64;
}

/// Adapter for building Gauss data out of plain closures.
pub struct FnHolomorphic<F, G> {
    pub f: F,
    pub df: G,
}

impl<F, G> Holomorphic for FnHolomorphic<F, G>
where
    F: Fn(Complex64) -> Complex64 + Sync,
    G: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }
    fn derivative(&self, z: Complex64) -> Complex64 {
        (self.df)(z)
    }
}

/// Which height differential the data carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiKind {
    /// `phi = dz`
    Dz,
    /// `phi = dz / z`
    DzOverZ,
}

/// How the Gauss map is presented.
///
/// The engine is built around the exponential form `g = e^{i h}`, which has
/// no zeros or poles wherever `h` is finite.  The direct form exists for
/// pole-free classical data such as the catenoid's `g(z) = z` on an annulus
/// and is integrated through the generic complex-valued route.
pub enum GaussMap<'a> {
    /// `g = e^{i h}` with `h` the carried exponent.
    Exponential(&'a dyn Holomorphic),
    /// `g` itself.
    Direct(&'a dyn Holomorphic),
}

/// Weierstrass input data: Gauss map, height differential, base point, and
/// the domain the path integrals must stay inside.
pub struct GaussData<'a> {
    pub gauss: GaussMap<'a>,
    pub phi: PhiKind,
    pub base_point: Complex64,
    pub domain: &'a dyn Domain,
}

impl<'a> GaussData<'a> {
    /// The Gauss map value at `z`.
    pub fn gauss_value(&self, z: Complex64) -> Complex64 {
        match self.gauss {
            GaussMap::Exponential(h) => {
                let hv = h.eval(z);
                // e^{i(u+iv)} = e^{-v} (cos u + i sin u)
                let m = (-hv.im).exp();
                Complex64::new(m * hv.re.cos(), m * hv.re.sin())
            }
            GaussMap::Direct(g) => g.eval(z),
        }
    }

    /// The complex derivative of the Gauss map at `z`.
    pub fn gauss_derivative(&self, z: Complex64) -> Complex64 {
        match self.gauss {
            GaussMap::Exponential(h) => {
                Complex64::new(0.0, 1.0) * self.gauss_value(z) * h.derivative(z)
            }
            GaussMap::Direct(g) => g.derivative(z),
        }
    }

    /// `|phi/dz|` at `z`.
    pub fn phi_density(&self, z: Complex64) -> f64 {
        match self.phi {
            PhiKind::Dz => 1.0,
            PhiKind::DzOverZ => z.norm().recip(),
        }
    }
}

/// One evaluated point of an immersed surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    /// Source parameter `z = x + i y`.
    pub param: Complex64,
    /// Immersion point in R^3.
    pub position: [f64; 3],
    /// Unit normal.
    pub normal: [f64; 3],
    /// Exponent value `h(z) = u + i v` of the Gauss map `g = e^{i h}`.
    pub exponent: Complex64,
    /// Gauss curvature, always <= 0 on a minimal surface.
    pub gauss_curvature: f64,
    /// Squared norm of the second fundamental form, `-2 K` by definition.
    pub second_fundamental_norm_sq: f64,
}

impl SurfaceSample {
    /// Assemble a sample from exponential Gauss data with `phi = dz`.
    pub fn from_exponent(
        param: Complex64,
        position: [f64; 3],
        exponent: Complex64,
        exponent_derivative: Complex64,
    ) -> Self {
        let k = curvature_from_exponent(exponent_derivative, exponent.im);
        SurfaceSample {
            param,
            position,
            normal: normal_from_exponent(exponent),
            exponent,
            gauss_curvature: k,
            second_fundamental_norm_sq: -2.0 * k,
        }
    }
}

/// The coordinate fields of the differential for `g = e^{i h}`, `phi = dz`.
pub fn differential_fields(h: Complex64) -> ([f64; 3], [f64; 3]) {
    let (u, v) = (h.re, h.im);
    let (su, cu) = (u.sin(), u.cos());
    let (sv, cv) = (v.sinh(), v.cosh());
    ([sv * cu, sv * su, 1.0], [cv * su, -cv * cu, 0.0])
}

/// The differential `(dF/dx, dF/dy)` at `z`.
///
/// Requires exponential Gauss data with `phi = dz`.
pub fn differential(data: &GaussData<'_>, z: Complex64) -> Result<([f64; 3], [f64; 3])> {
    let GaussMap::Exponential(h) = data.gauss else {
        return Err(Error::UnsupportedData);
    };
    if data.phi != PhiKind::Dz {
        return Err(Error::UnsupportedData);
    }
    if !data.domain.contains(z) {
        return Err(Error::DomainViolation { at: z });
    }
    Ok(differential_fields(h.eval(z)))
}

/// Unit normal from the Gauss map value: stereographic unprojection
/// `(2 Re g, 2 Im g, |g|^2 - 1) / (|g|^2 + 1)`.
pub fn unit_normal(g: Complex64) -> [f64; 3] {
    let n2 = g.norm_sqr();
    let d = n2 + 1.0;
    [2.0 * g.re / d, 2.0 * g.im / d, (n2 - 1.0) / d]
}

/// Unit normal for `g = e^{i h}` straight from the exponent,
/// `(cos u sech v, sin u sech v, -tanh v)`.
pub fn normal_from_exponent(h: Complex64) -> [f64; 3] {
    let (u, v) = (h.re, h.im);
    let sech = v.cosh().recip();
    [u.cos() * sech, u.sin() * sech, -v.tanh()]
}

/// Gauss curvature `K = -[ 4 |dg| |g| / ( |phi| (1 + |g|^2)^2 ) ]^2`.
pub fn gauss_curvature(g: Complex64, dzg: Complex64, phi_density: f64) -> Result<f64> {
    if phi_density == 0.0 {
        return Err(Error::ZeroDensity);
    }
    let n2 = g.norm_sqr();
    let root = 4.0 * dzg.norm() * g.norm() / (phi_density * (1.0 + n2) * (1.0 + n2));
    Ok(-(root * root))
}

/// Gauss curvature for `g = e^{i h}`, `phi = dz`: `K = -(|h'| / cosh^2 v)^2`.
pub fn curvature_from_exponent(dzh: Complex64, v: f64) -> f64 {
    let c = v.cosh();
    let root = dzh.norm() / (c * c);
    -(root * root)
}

/// Integrate the coordinate fields of exponential data along one straight
/// leg, with domain checks at every quadrature node.
pub(crate) fn exponential_leg(
    h: &dyn Holomorphic,
    domain: &dyn Domain,
    z_start: Complex64,
    z_end: Complex64,
    tol: f64,
) -> Result<[f64; 3]> {
    let delta = z_end - z_start;
    let len = delta.norm();
    if len == 0.0 {
        return Ok([0.0; 3]);
    }
    let (ux, uy) = (delta.re / len, delta.im / len);
    integrate_segment_with(
        |z| {
            if !domain.contains(z) {
                return Err(Error::DomainViolation { at: z });
            }
            let (fx, fy) = differential_fields(h.eval(z));
            Ok([
                ux * fx[0] + uy * fy[0],
                ux * fx[1] + uy * fy[1],
                ux * fx[2] + uy * fy[2],
            ])
        },
        z_start,
        z_end,
        tol,
    )
}

/// Evaluate the immersion at the end of `path`.
///
/// The path must start at the base point of `data` and stay inside its
/// domain; each straight leg is integrated adaptively with per-component
/// absolute tolerance `tol`.
pub fn immerse(data: &GaussData<'_>, path: &PolyPath, tol: f64) -> Result<[f64; 3]> {
    if path.start() != data.base_point {
        return Err(Error::EndpointMismatch);
    }
    for &z in path.vertices() {
        if !data.domain.contains(z) {
            return Err(Error::DomainViolation { at: z });
        }
    }
    let mut total = [0.0f64; 3];
    for (za, zb) in path.segments() {
        let leg = match (&data.gauss, data.phi) {
            (GaussMap::Exponential(h), PhiKind::Dz) => {
                exponential_leg(*h, data.domain, za, zb, tol)?
            }
            _ => generic_leg(data, za, zb, tol)?,
        };
        for c in 0..3 {
            total[c] += leg[c];
        }
    }
    Ok(total)
}

/// Generic complex-integrand route: integrate `Re( W(z) phi )` directly.
fn generic_leg(data: &GaussData<'_>, za: Complex64, zb: Complex64, tol: f64) -> Result<[f64; 3]> {
    let delta = zb - za;
    let len = delta.norm();
    if len == 0.0 {
        return Ok([0.0; 3]);
    }
    let scale = delta / len;
    integrate_segment_with(
        |z| {
            if !data.domain.contains(z) {
                return Err(Error::DomainViolation { at: z });
            }
            let g = data.gauss_value(z);
            let ginv = g.inv();
            let w1 = (ginv - g) * 0.5;
            let w2 = Complex64::new(0.0, 0.5) * (ginv + g);
            let factor = match data.phi {
                PhiKind::Dz => scale,
                PhiKind::DzOverZ => scale / z,
            };
            Ok([(w1 * factor).re, (w2 * factor).re, factor.re])
        },
        za,
        zb,
        tol,
    )
}

/// Sample one vertical column `x + i y`, `y in ys` (sorted ascending), of an
/// exponential-data surface: one axis integration from the (real) base point
/// to `(x, 0)`, then incremental vertical legs outward in both directions.
/// `translate` is added to every position (base-point normalization).
pub(crate) fn sample_vertical_column(
    h: &dyn Holomorphic,
    domain: &dyn Domain,
    base: Complex64,
    translate: [f64; 3],
    x: f64,
    ys: &[f64],
    tol: f64,
) -> Result<alloc::vec::Vec<SurfaceSample>> {
    debug_assert!(ys.windows(2).all(|w| w[0] <= w[1]), "ys must be sorted");
    let axis = Complex64::new(x, 0.0);
    for &z in &[base, axis] {
        if !domain.contains(z) {
            return Err(Error::DomainViolation { at: z });
        }
    }
    let f_axis = exponential_leg(h, domain, base, axis, tol)?;

    let make = |z: Complex64, rel: [f64; 3]| {
        SurfaceSample::from_exponent(
            z,
            [rel[0] + translate[0], rel[1] + translate[1], rel[2] + translate[2]],
            h.eval(z),
            h.derivative(z),
        )
    };

    let mut out: alloc::vec::Vec<Option<SurfaceSample>> = alloc::vec![None; ys.len()];
    // Upward sweep over positive y, then downward over negative y, each leg
    // integrated from the previous sample of its side.
    for direction in [1.0f64, -1.0] {
        let mut cur = f_axis;
        let mut prev = axis;
        let indices: alloc::vec::Vec<usize> = if direction > 0.0 {
            (0..ys.len()).filter(|&i| ys[i] > 0.0).collect()
        } else {
            (0..ys.len()).rev().filter(|&i| ys[i] < 0.0).collect()
        };
        for i in indices {
            let z = Complex64::new(x, ys[i]);
            if !domain.contains(z) {
                return Err(Error::DomainViolation { at: z });
            }
            let leg = exponential_leg(h, domain, prev, z, tol)?;
            for c in 0..3 {
                cur[c] += leg[c];
            }
            out[i] = Some(make(z, cur));
            prev = z;
        }
    }
    for (i, slot) in out.iter_mut().enumerate() {
        if slot.is_none() {
            slot.replace(make(axis, f_axis));
            debug_assert_eq!(ys[i], 0.0);
        }
    }
    Ok(out.into_iter().map(|s| s.expect("filled above")).collect())
}

/// Euclidean distance between the immersion evaluated along two paths with
/// shared endpoints.  For simply connected domains and pole-free data this
/// must be at the quadrature-noise level.
pub fn path_independence_residual(
    data: &GaussData<'_>,
    path1: &PolyPath,
    path2: &PolyPath,
    tol: f64,
) -> Result<f64> {
    if path1.start() != path2.start() || path1.end() != path2.end() {
        return Err(Error::EndpointMismatch);
    }
    let a = immerse(data, path1, tol)?;
    let b = immerse(data, path2, tol)?;
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    Ok((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt())
}
