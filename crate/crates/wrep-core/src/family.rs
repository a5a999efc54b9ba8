//! A one-parameter family of embedded minimal disks with curvature blow-up.
//!
//! For a parameter `a` in `(0, 1/2)` the Gauss map is `g = e^{i h}` with
//! exponent `h(z) = arctan(z/a) / a` and height differential `phi = dz`, on
//! the teardrop-shaped domain
//!
//! ```text
//! |x| <= 1/2,   |y| <= (x^2 + a^2)^{3/4} / 2 .
//! ```
//!
//! The exponent is evaluated through the principal branch, which is valid
//! here: the branch cuts sit on `{x = 0, |y| >= a}` while the domain meets
//! the imaginary axis only in `|y| <= a^{3/2}/2 < a`.  The immersion is
//! based at the origin and integrated along L-shaped paths (axis leg, then
//! vertical leg); the straight segment to a point can leave the domain for
//! small `a`, the L-path never does.
//!
//! Horizontal slices of the image are graphs over a line segment, the slice
//! endpoints stay a quantified distance away from the slice center, and the
//! curvature at the origin is exactly `a^{-4}`; the certificates in this
//! module measure all three facts.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // required for float math in no_std builds
use num_traits::Float;

use crate::error::Error;
use crate::quad::{integrate_segment_with, PolyPath};
use crate::weierstrass::{self, Domain, Holomorphic, SurfaceSample};
use crate::Result;

/// The family parameter, strictly inside `(0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FamilyParameter(f64);

impl FamilyParameter {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && 0.0 < a && a < 0.5 {
            Ok(Self(a))
        } else {
            Err(Error::InvalidParameter { what: "family parameter must lie in (0, 1/2)" })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The source domains: the family teardrop for finite `a`, and the limit
/// region (and its two components) obtained by intersecting over all `a`
/// and removing the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainSpec {
    /// `|x| <= 1/2, |y| <= (x^2 + a^2)^{3/4}/2`.
    Family(FamilyParameter),
    /// `0 < |x| <= 1/2, |y| <= |x|^{3/2}/2`.
    Limit,
    /// The `x > 0` component of the limit region.
    LimitPositive,
    /// The `x < 0` component of the limit region.
    LimitNegative,
}

impl DomainSpec {
    /// Half-width of the domain above `x`.
    pub fn half_width(&self, x: f64) -> f64 {
        match self {
            DomainSpec::Family(a) => {
                let a = a.value();
                (x * x + a * a).powf(0.75) * 0.5
            }
            _ => x.abs().powf(1.5) * 0.5,
        }
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN coordinates are outside
    pub fn contains(&self, z: Complex64) -> bool {
        let (x, y) = (z.re, z.im);
        if !(x.abs() <= 0.5) || !(y.abs() <= self.half_width(x)) {
            return false;
        }
        match self {
            DomainSpec::Family(_) => true,
            DomainSpec::Limit => x != 0.0,
            DomainSpec::LimitPositive => x > 0.0,
            DomainSpec::LimitNegative => x < 0.0,
        }
    }
}

impl Domain for DomainSpec {
    fn contains(&self, z: Complex64) -> bool {
        DomainSpec::contains(self, z)
    }
}

/// The exponent `h(z) = arctan(z/a)/a` as a holomorphic-function handle.
#[derive(Debug, Clone, Copy)]
pub struct FamilyExponent {
    a: FamilyParameter,
}

impl FamilyExponent {
    pub fn new(a: FamilyParameter) -> Self {
        Self { a }
    }
}

impl Holomorphic for FamilyExponent {
    fn eval(&self, z: Complex64) -> Complex64 {
        exponent_raw(self.a, z)
    }
    fn derivative(&self, z: Complex64) -> Complex64 {
        let a = self.a.value();
        (z * z + Complex64::new(a * a, 0.0)).inv()
    }
}

/// Principal-branch evaluation of the exponent, without a domain check.
///
/// Real and imaginary parts are computed directly,
/// `u = atan2(2X, 1 - X^2 - Y^2) / (2a)` and
/// `v = ln(1 + 4Y/((1-Y)^2 + X^2)) / (4a)` with `X + iY = z/a`; the `ln_1p`
/// form stays accurate where the ratio is close to one.
pub fn exponent_raw(a: FamilyParameter, z: Complex64) -> Complex64 {
    let a = a.value();
    let xs = z.re / a;
    let ys = z.im / a;
    let u = (2.0 * xs).atan2(1.0 - xs * xs - ys * ys) / (2.0 * a);
    let v = (4.0 * ys / ((1.0 - ys) * (1.0 - ys) + xs * xs)).ln_1p() / (4.0 * a);
    Complex64::new(u, v)
}

/// The exponent `h(z) = u + iv` at a point of the family domain.
pub fn exponent(a: FamilyParameter, z: Complex64) -> Result<Complex64> {
    if !DomainSpec::Family(a).contains(z) {
        return Err(Error::DomainViolation { at: z });
    }
    Ok(exponent_raw(a, z))
}

/// The complex derivative of the exponent, `1/(z^2 + a^2)`.
pub fn exponent_derivative(a: FamilyParameter, z: Complex64) -> Result<Complex64> {
    let a = a.value();
    let w = z * z + Complex64::new(a * a, 0.0);
    if w.re == 0.0 && w.im == 0.0 {
        return Err(Error::PoleHit { at: z });
    }
    Ok(w.inv())
}

/// Axis phase `u(x, 0) = arctan(x/a)/a`, evaluated through the same code
/// path as [`exponent_raw`] so anchoring residuals are consistent.
pub fn axis_phase(a: FamilyParameter, x: f64) -> f64 {
    exponent_raw(a, Complex64::new(x, 0.0)).re
}

/// Gauss curvature `K(z) = -|z^2 + a^2|^{-2} / cosh^4 v`.
pub fn curvature(a: FamilyParameter, z: Complex64) -> Result<f64> {
    if !DomainSpec::Family(a).contains(z) {
        return Err(Error::DomainViolation { at: z });
    }
    let av = a.value();
    let w = z * z + Complex64::new(av * av, 0.0);
    let v = exponent_raw(a, z).im;
    let c = v.cosh();
    Ok(-1.0 / (w.norm_sqr() * c * c * c * c))
}

/// The imaginary part `v(z)` of the exponent; zero exactly on the axis, and
/// nonzero (with the sign of `y`) everywhere else, so the surface normal is
/// vertical only along the axis image.
pub fn vertical_normal_locus(a: FamilyParameter, z: Complex64) -> Result<f64> {
    if !DomainSpec::Family(a).contains(z) {
        return Err(Error::DomainViolation { at: z });
    }
    Ok(exponent_raw(a, z).im)
}

/// The canonical L-shaped integration path `0 -> (x, 0) -> (x, y)`.
///
/// Both legs lie in the family domain because the half-width constraint
/// depends only on `x`; degenerate legs are dropped.
pub fn canonical_path(a: FamilyParameter, z: Complex64) -> Result<PolyPath> {
    if !DomainSpec::Family(a).contains(z) {
        return Err(Error::DomainViolation { at: z });
    }
    let origin = Complex64::new(0.0, 0.0);
    let corner = Complex64::new(z.re, 0.0);
    let mut vertices = alloc::vec![origin];
    if corner != origin {
        vertices.push(corner);
    }
    if z != corner {
        vertices.push(z);
    }
    PolyPath::new(vertices)
}

/// Weierstrass data of the family member `a`.
///
/// Borrowed handles must outlive the returned data; callers typically keep
/// the exponent and domain on the stack next to the evaluation.
pub fn gauss_data<'a>(
    exponent: &'a FamilyExponent,
    domain: &'a DomainSpec,
) -> weierstrass::GaussData<'a> {
    weierstrass::GaussData {
        gauss: weierstrass::GaussMap::Exponential(exponent),
        phi: weierstrass::PhiKind::Dz,
        base_point: Complex64::new(0.0, 0.0),
        domain,
    }
}

/// Evaluate the immersion at `z` along the canonical path.
pub fn immerse(a: FamilyParameter, z: Complex64, tol: f64) -> Result<[f64; 3]> {
    let exp = FamilyExponent::new(a);
    let dom = DomainSpec::Family(a);
    let data = gauss_data(&exp, &dom);
    let path = canonical_path(a, z)?;
    weierstrass::immerse(&data, &path, tol)
}

/// Cross-check evaluation of the exponent by integrating its derivative
/// along the canonical path (the family domain is simply connected, so the
/// result must match the principal-branch formula).
pub fn exponent_by_integration(a: FamilyParameter, z: Complex64, tol: f64) -> Result<Complex64> {
    let path = canonical_path(a, z)?;
    let dom = DomainSpec::Family(a);
    let mut total = Complex64::new(0.0, 0.0);
    for (za, zb) in path.segments() {
        let delta = zb - za;
        let len = delta.norm();
        let dir = delta / len;
        let leg = integrate_segment_with(
            |w| {
                if !dom.contains(w) {
                    return Err(Error::DomainViolation { at: w });
                }
                let d = exponent_derivative(a, w)? * dir;
                Ok([d.re, d.im, 0.0])
            },
            za,
            zb,
            tol,
        )?;
        total += Complex64::new(leg[0], leg[1]);
    }
    Ok(total)
}

/// Sample one vertical column of the surface at `x`, with `y = s * y_w(x)`
/// for each `s` in `s_values` (sorted ascending, `s in [-1, 1]`).
pub fn sample_column(
    a: FamilyParameter,
    x: f64,
    s_values: &[f64],
    tol: f64,
) -> Result<Vec<SurfaceSample>> {
    let dom = DomainSpec::Family(a);
    let yw = dom.half_width(x);
    let ys: Vec<f64> = s_values.iter().map(|s| s * yw).collect();
    let exp = FamilyExponent::new(a);
    weierstrass::sample_vertical_column(
        &exp,
        &dom,
        Complex64::new(0.0, 0.0),
        [0.0; 3],
        x,
        &ys,
        tol,
    )
}

/// A sampled horizontal slice `y -> F(x, y)` of one family surface.
#[derive(Debug, Clone)]
pub struct SliceCurve {
    pub a: FamilyParameter,
    pub x: f64,
    pub samples: Vec<SurfaceSample>,
    /// Direction `(sin u(x,0), -cos u(x,0))` of the line the slice graphs
    /// over, in the horizontal plane.
    pub axis_direction: [f64; 2],
}

/// Sample the slice at height `x` with `n_samples` uniform points in
/// `y in [-y_w, y_w]`; `n_samples` must be odd and at least 3 so the axis
/// point is a sample.
pub fn slice(a: FamilyParameter, x: f64, n_samples: usize, tol: f64) -> Result<SliceCurve> {
    if n_samples < 3 || n_samples % 2 == 0 {
        return Err(Error::InvalidParameter { what: "slice sample count must be odd and >= 3" });
    }
    let m = (n_samples - 1) as f64;
    let s_values: Vec<f64> = (0..n_samples).map(|j| (2 * j as i64 - m as i64) as f64 / m).collect();
    let samples = sample_column(a, x, &s_values, tol)?;
    let u0 = axis_phase(a, x);
    Ok(SliceCurve { a, x, samples, axis_direction: [u0.sin(), -u0.cos()] })
}

/// Measured endpoint separation of a slice against its closed-form lower
/// bound `(x^2+a^2)^{3/4}/16 * exp((x^2+a^2)^{-1/4}/11)`.
#[derive(Debug, Clone, Copy)]
pub struct SeparationCertificate {
    pub a: f64,
    pub x: f64,
    /// `min over signs of |F(x, +-y_w) - F(x, 0)|`.
    pub measured_separation: f64,
    /// The analytic lower bound on the slice-endpoint separation.
    pub analytic_lower_bound: f64,
}

impl SeparationCertificate {
    pub fn holds(&self) -> bool {
        self.measured_separation > self.analytic_lower_bound && self.analytic_lower_bound > 0.0
    }
}

/// The separation lower bound as a plain function of `(a, x)`.
pub fn separation_lower_bound(a: FamilyParameter, x: f64) -> f64 {
    let s4 = x * x + a.value() * a.value();
    s4.powf(0.75) / 16.0 * (s4.powf(-0.25) / 11.0).exp()
}

/// Measure the endpoint separation of the slice at `x`.
pub fn separation(a: FamilyParameter, x: f64, tol: f64) -> Result<SeparationCertificate> {
    let samples = sample_column(a, x, &[-1.0, 0.0, 1.0], tol)?;
    let dist = |p: &[f64; 3], q: &[f64; 3]| {
        let d = [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    };
    let center = samples[1].position;
    let measured = dist(&samples[0].position, &center).min(dist(&samples[2].position, &center));
    Ok(SeparationCertificate {
        a: a.value(),
        x,
        measured_separation: measured,
        analytic_lower_bound: separation_lower_bound(a, x),
    })
}

/// Empirical uniform separation radius: the minimum measured endpoint
/// separation over a grid of parameters and heights.
pub fn estimate_r0(a_list: &[FamilyParameter], x_grid: &[f64], tol: f64) -> Result<f64> {
    if a_list.is_empty() || x_grid.is_empty() {
        return Err(Error::InvalidParameter { what: "estimate_r0 needs non-empty grids" });
    }
    let mut r0 = f64::INFINITY;
    for &a in a_list {
        for &x in x_grid {
            r0 = r0.min(separation(a, x, tol)?.measured_separation);
        }
    }
    Ok(r0)
}
