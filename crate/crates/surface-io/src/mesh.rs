//! Surface meshes sampled on the `(x, s)` parametrization.
//!
//! Domains here are vertically convex over their `x`-projection, so a
//! rectangle in `(x, s)` with `y = s * y_w(x)` covers the curved region
//! without clipping.  Each `x`-column costs one axis integration plus
//! incremental vertical legs.

use serde::Serialize;
use wrep_core::family::{self, FamilyParameter};
use wrep_core::limit::{self, Sign};
use wrep_core::weierstrass::SurfaceSample;
use wrep_core::Complex64;

use crate::Result;

/// Which surface a mesh samples.
#[derive(Debug, Clone, Copy)]
pub enum MeshSource {
    /// One member of the disk family.
    Family(FamilyParameter),
    /// A limit surface, meshed over `x_min <= sign * x <= 1/2`.
    Limit { sign: Sign, x_min: f64 },
    /// The helicoid oracle over `[-x_half, x_half] x [-y_half, y_half]`,
    /// evaluated in closed form.
    Helicoid { x_half: f64, y_half: f64 },
}

impl MeshSource {
    pub fn label(&self) -> String {
        match self {
            MeshSource::Family(a) => format!("family a={}", a.value()),
            MeshSource::Limit { sign: Sign::Plus, x_min } => format!("limit+ x_min={x_min}"),
            MeshSource::Limit { sign: Sign::Minus, x_min } => format!("limit- x_min={x_min}"),
            MeshSource::Helicoid { x_half, y_half } => {
                format!("helicoid x_half={x_half} y_half={y_half}")
            }
        }
    }
}

/// How a mesh was produced; embedded in exports and reports.
#[derive(Debug, Clone, Serialize)]
pub struct MeshProvenance {
    pub source: String,
    pub nx: usize,
    pub ns: usize,
    pub tol: f64,
    /// Radius of the ball the surface is meant to be restricted to, when
    /// one was computed (`min(r0/2, 1/4)`); recorded, not applied.
    pub ball_radius: Option<f64>,
}

/// A grid of surface samples with a triangulation.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    pub provenance: MeshProvenance,
    /// Column abscissas, ascending.
    pub xs: Vec<f64>,
    /// Row parameters `s in [-1, 1]`, ascending; `y = s * y_w(x)`.
    pub s_values: Vec<f64>,
    /// Row-major samples, index `ix * ns + is`.
    pub samples: Vec<SurfaceSample>,
    /// Index triples, consistently oriented, no degenerate triangles.
    pub triangles: Vec<[u32; 3]>,
}

impl SurfaceMesh {
    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn ns(&self) -> usize {
        self.s_values.len()
    }

    pub fn sample(&self, ix: usize, is: usize) -> &SurfaceSample {
        &self.samples[ix * self.ns() + is]
    }
}

fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn symmetric_unit_grid(n: usize) -> Vec<f64> {
    let m = (n - 1) as i64;
    (0..n as i64).map(|j| (2 * j - m) as f64 / m as f64).collect()
}

fn triangulate(nx: usize, ns: usize) -> Vec<[u32; 3]> {
    let mut tris = Vec::with_capacity(2 * (nx - 1) * (ns - 1));
    for ix in 0..nx - 1 {
        for is in 0..ns - 1 {
            let v00 = (ix * ns + is) as u32;
            let v01 = v00 + 1;
            let v10 = ((ix + 1) * ns + is) as u32;
            let v11 = v10 + 1;
            tris.push([v00, v10, v11]);
            tris.push([v00, v11, v01]);
        }
    }
    tris
}

fn helicoid_column(x: f64, s_values: &[f64], y_half: f64) -> Vec<SurfaceSample> {
    s_values
        .iter()
        .map(|&s| {
            let z = Complex64::new(x, s * y_half);
            SurfaceSample::from_exponent(
                z,
                wrep_core::classics::helicoid_closed_form(z),
                z,
                Complex64::new(1.0, 0.0),
            )
        })
        .collect()
}

/// Sample a mesh on the given columns with `ns` uniform `s`-rows.
pub fn sample_mesh_columns(
    source: &MeshSource,
    xs: Vec<f64>,
    ns: usize,
    tol: f64,
) -> Result<SurfaceMesh> {
    if xs.len() < 2 || ns < 2 {
        return Err(wrep_core::Error::InvalidParameter { what: "mesh grid needs nx, ns >= 2" }.into());
    }
    let s_values = symmetric_unit_grid(ns);
    let mut samples = Vec::with_capacity(xs.len() * ns);
    for &x in &xs {
        let column = match source {
            MeshSource::Family(a) => family::sample_column(*a, x, &s_values, tol)?,
            MeshSource::Limit { sign, .. } => limit::sample_column(*sign, x, &s_values, tol)?,
            MeshSource::Helicoid { y_half, .. } => helicoid_column(x, &s_values, *y_half),
        };
        samples.extend(column);
    }
    let triangles = triangulate(xs.len(), ns);
    Ok(SurfaceMesh {
        provenance: MeshProvenance {
            source: source.label(),
            nx: xs.len(),
            ns,
            tol,
            ball_radius: None,
        },
        xs,
        s_values,
        samples,
        triangles,
    })
}

/// Sample a mesh with `nx` uniform columns over the source's full range.
pub fn sample_mesh(source: &MeshSource, nx: usize, ns: usize, tol: f64) -> Result<SurfaceMesh> {
    if nx < 2 || ns < 2 {
        return Err(wrep_core::Error::InvalidParameter { what: "mesh grid needs nx, ns >= 2" }.into());
    }
    let xs = match source {
        MeshSource::Family(_) => uniform(-0.5, 0.5, nx),
        MeshSource::Limit { sign: Sign::Plus, x_min } => uniform(*x_min, 0.5, nx),
        MeshSource::Limit { sign: Sign::Minus, x_min } => uniform(-0.5, -x_min, nx),
        MeshSource::Helicoid { x_half, .. } => uniform(-x_half, *x_half, nx),
    };
    sample_mesh_columns(source, xs, ns, tol)
}

/// Columns spaced uniformly in the axis phase `u(x, 0)`, so consecutive
/// columns never differ by more than `max_phase_step` radians of winding.
/// Uniform-in-`x` columns alias the spiral near the axis once the phase
/// step `dx/(x^2+a^2)` passes pi; these never do.
pub fn phase_uniform_columns(a: FamilyParameter, max_phase_step: f64, min_columns: usize) -> Vec<f64> {
    let u_max = family::axis_phase(a, 0.5);
    let mut n = ((2.0 * u_max / max_phase_step).ceil() as usize).max(min_columns.max(8));
    if n % 2 == 1 {
        n += 1;
    }
    let av = a.value();
    let mut xs: Vec<f64> = (0..=n)
        .map(|j| {
            let u = -u_max + 2.0 * u_max * j as f64 / n as f64;
            av * (av * u).tan()
        })
        .collect();
    xs[0] = -0.5;
    let last = xs.len() - 1;
    xs[last] = 0.5;
    xs.dedup();
    xs
}
