//! Classical surfaces used as closed-form oracles for the engine.
//!
//! The helicoid is exponential data `h(z) = z`, `phi = dz` on the plane; the
//! catenoid is the direct Gauss map `g(z) = z` with `phi = dz/z` on an
//! annulus.  Both have elementary closed forms the quadrature path must
//! reproduce.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // required for float math in no_std builds
use num_traits::Float;

use crate::error::Error;
use crate::quad::PolyPath;
use crate::weierstrass::{Domain, GaussData, GaussMap, Holomorphic, PhiKind};
use crate::Result;

/// The identity function; exponent of the helicoid and Gauss map of the
/// catenoid.
pub struct Identity;

impl Holomorphic for Identity {
    fn eval(&self, z: Complex64) -> Complex64 {
        z
    }
    fn derivative(&self, _z: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
}

/// The whole complex plane.
pub struct WholePlane;

impl Domain for WholePlane {
    fn contains(&self, _z: Complex64) -> bool {
        true
    }
}

/// A closed annulus `inner <= |z| <= outer`, optionally slit along the
/// negative real axis so it becomes simply connected.
#[derive(Debug, Clone, Copy)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
    pub slit: bool,
}

impl Domain for Annulus {
    fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        if !(self.inner <= r && r <= self.outer) {
            return false;
        }
        !(self.slit && z.im == 0.0 && z.re < 0.0)
    }
}

static IDENTITY: Identity = Identity;
static PLANE: WholePlane = WholePlane;
static CATENOID_SLIT: Annulus = Annulus { inner: 0.5, outer: 2.0, slit: true };
static CATENOID_FULL: Annulus = Annulus { inner: 0.5, outer: 2.0, slit: false };

/// Helicoid data: `g = e^{iz}`, `phi = dz`, based at the origin.
pub fn helicoid() -> GaussData<'static> {
    GaussData {
        gauss: GaussMap::Exponential(&IDENTITY),
        phi: PhiKind::Dz,
        base_point: Complex64::new(0.0, 0.0),
        domain: &PLANE,
    }
}

/// The helicoid immersion in closed form, `(sinh y sin x, -sinh y cos x, x)`.
pub fn helicoid_closed_form(z: Complex64) -> [f64; 3] {
    let (x, y) = (z.re, z.im);
    [y.sinh() * x.sin(), -y.sinh() * x.cos(), x]
}

/// Catenoid data: `g = z`, `phi = dz/z`, based at `z = 1`, on the slit
/// annulus `0.5 <= |z| <= 2` (simply connected, so single-valued).
pub fn catenoid() -> GaussData<'static> {
    GaussData {
        gauss: GaussMap::Direct(&IDENTITY),
        phi: PhiKind::DzOverZ,
        base_point: Complex64::new(1.0, 0.0),
        domain: &CATENOID_SLIT,
    }
}

/// Catenoid data on the full annulus; loops around the origin are allowed
/// and must have vanishing real periods.
pub fn catenoid_full_annulus() -> GaussData<'static> {
    GaussData {
        gauss: GaussMap::Direct(&IDENTITY),
        phi: PhiKind::DzOverZ,
        base_point: Complex64::new(1.0, 0.0),
        domain: &CATENOID_FULL,
    }
}

/// The catenoid immersion in closed form,
/// `(1 - Re(z + 1/z)/2, -Im(z - 1/z)/2, ln |z|)`.
pub fn catenoid_closed_form(z: Complex64) -> [f64; 3] {
    let zi = z.inv();
    [1.0 - (z + zi).re * 0.5, -(z - zi).im * 0.5, z.norm().ln()]
}

/// Polygonal path inside an annulus from `z = r0` on the positive real axis
/// to `r e^{i theta}`: a radial leg followed by chords along the circle of
/// radius `r`, each subtending at most `max_arc_step` radians.
pub fn annulus_path(from_radius: f64, to: Complex64, max_arc_step: f64) -> Result<PolyPath> {
    if !(from_radius > 0.0 && max_arc_step > 0.0) {
        return Err(Error::InvalidParameter { what: "annulus path needs positive radius and step" });
    }
    let r = to.norm();
    let theta = to.arg();
    let mut vertices = Vec::new();
    vertices.push(Complex64::new(from_radius, 0.0));
    if r != from_radius {
        vertices.push(Complex64::new(r, 0.0));
    }
    let steps = (theta.abs() / max_arc_step).ceil() as usize;
    for j in 1..=steps {
        let t = theta * (j as f64) / (steps as f64);
        vertices.push(Complex64::new(r * t.cos(), r * t.sin()));
    }
    if let Some(last) = vertices.last_mut() {
        *last = to; // land exactly on the target
    }
    vertices.dedup();
    PolyPath::new(vertices)
}

/// Closed polygonal loop around the origin along the circle of radius `r`,
/// starting and ending at `z = r`.
pub fn circle_loop(r: f64, chords: usize) -> Result<PolyPath> {
    if chords < 3 {
        return Err(Error::InvalidParameter { what: "a loop needs at least 3 chords" });
    }
    let mut vertices = Vec::with_capacity(chords + 1);
    for j in 0..chords {
        let t = core::f64::consts::TAU * (j as f64) / (chords as f64);
        vertices.push(Complex64::new(r * t.cos(), r * t.sin()));
    }
    vertices.push(Complex64::new(r, 0.0));
    PolyPath::new(vertices)
}
