//! Splitting a meshed surface into its two multi-valued graph sheets.
//!
//! Away from the vertical axis the surfaces here are graphical: the normal
//! is never vertical off the axis, and the two halves `y > 0` and `y < 0`
//! of the parameter domain map to two sheets that wind around the axis.
//! This module lifts mesh samples to cylindrical coordinates with a
//! continuously unwrapped angle and certifies graphhood: within the working
//! radius, no two samples of one sheet occupy the same `(radius, angle)`
//! cell at materially different heights, and the height is monotone in the
//! unwrapped angle along every radius band.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use crate::mesh::SurfaceMesh;

/// Decomposition failures, with the offending samples by `(ix, is)` grid
/// index.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecomposeError {
    #[error("mesh has no off-axis samples")]
    NoOffAxisSamples,
    #[error("vertical normal off the axis at sample ({ix}, {is})")]
    VerticalNormal { ix: usize, is: usize },
    #[error("angle unwrap aliased at sample ({ix}, {is}); column resolution is too coarse")]
    UnwrapAliased { ix: usize, is: usize },
    #[error("graph violation between samples {first:?} and {second:?}: height gap {gap}")]
    GraphViolation { first: (usize, usize), second: (usize, usize), gap: f64 },
}

/// Options for the decomposition.
#[derive(Debug, Clone, Copy)]
pub struct DecomposeOptions {
    /// Radius of the cylinder within which graphhood is certified.
    pub working_radius: f64,
    /// Angular cell size for the collision check, radians.
    pub theta_bin: f64,
    /// Number of radius bands inside the working radius.
    pub rho_bins: usize,
    /// Largest height gap tolerated inside one cell.
    pub height_tol: f64,
}

impl DecomposeOptions {
    pub fn new(working_radius: f64) -> Self {
        DecomposeOptions {
            working_radius,
            theta_bin: 0.02,
            rho_bins: 48,
            height_tol: 0.04,
        }
    }
}

/// Which parameter half-plane a sheet comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheetSide {
    PositiveY,
    NegativeY,
}

/// One sample lifted to cylindrical coordinates.
#[derive(Debug, Clone, Copy)]
pub struct CylindricalSample {
    pub ix: usize,
    pub is: usize,
    pub radius: f64,
    /// Continuously unwrapped angle.
    pub theta: f64,
    /// Height `x3`.
    pub height: f64,
}

/// One certified sheet.
#[derive(Debug, Clone)]
pub struct SheetDescriptor {
    pub side: SheetSide,
    pub samples: Vec<CylindricalSample>,
    pub theta_min: f64,
    pub theta_max: f64,
}

impl SheetDescriptor {
    /// Total number of turns the sheet makes around the axis.
    pub fn turns(&self) -> f64 {
        (self.theta_max - self.theta_min) / TAU
    }

    /// Unwrapped angle range over samples with `h_lo <= height <= h_hi`.
    pub fn theta_range_in_slab(&self, h_lo: f64, h_hi: f64) -> Option<f64> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in &self.samples {
            if h_lo <= s.height && s.height <= h_hi {
                lo = lo.min(s.theta);
                hi = hi.max(s.theta);
            }
        }
        (lo <= hi).then_some(hi - lo)
    }
}

fn wrap_to_pi(t: f64) -> f64 {
    t - TAU * (t / TAU).round()
}

fn decompose_side(
    mesh: &SurfaceMesh,
    side: SheetSide,
    opts: &DecomposeOptions,
) -> Result<SheetDescriptor, DecomposeError> {
    let ns = mesh.ns();
    let mut samples: Vec<CylindricalSample> = Vec::new();

    // The exponent phase predicts the sheet angle up to the slice-graph
    // deviation (< 1 rad): guide = u - pi/2 on the y > 0 sheet and
    // u + pi/2 on y < 0.  It anchors the unwrap and catches aliasing.
    let guide_shift = match side {
        SheetSide::PositiveY => -PI / 2.0,
        SheetSide::NegativeY => PI / 2.0,
    };

    let mut prev_outer: Option<f64> = None;
    let mut offset: Option<f64> = None;
    for ix in 0..mesh.nx() {
        // off-axis rows of this column, outermost (largest |y|) first
        let rows: Vec<usize> = match side {
            SheetSide::PositiveY => (0..ns).rev().filter(|&is| mesh.sample(ix, is).param.im > 0.0).collect(),
            SheetSide::NegativeY => (0..ns).filter(|&is| mesh.sample(ix, is).param.im < 0.0).collect(),
        };
        let mut prev_theta: Option<f64> = None;
        for (row_pos, &is) in rows.iter().enumerate() {
            let s = mesh.sample(ix, is);
            if s.exponent.im == 0.0 {
                return Err(DecomposeError::VerticalNormal { ix, is });
            }
            let raw = s.position[1].atan2(s.position[0]);
            let anchor = match (row_pos, prev_theta, prev_outer) {
                (0, _, Some(p)) => p,
                (0, _, None) => raw,
                (_, Some(p), _) => p,
                _ => raw,
            };
            let theta = raw + TAU * ((anchor - raw) / TAU).round();
            if row_pos == 0 {
                prev_outer = Some(theta);
            }
            prev_theta = Some(theta);

            let guide = s.exponent.re + guide_shift;
            let d = theta - guide;
            match offset {
                None => offset = Some(d - wrap_to_pi(d)),
                Some(off) => {
                    if (d - off).abs() >= PI {
                        return Err(DecomposeError::UnwrapAliased { ix, is });
                    }
                }
            }
            samples.push(CylindricalSample {
                ix,
                is,
                radius: s.position[0].hypot(s.position[1]),
                theta,
                height: s.position[2],
            });
        }
    }
    if samples.is_empty() {
        return Err(DecomposeError::NoOffAxisSamples);
    }

    // Collision check inside the working radius: one cell, one height.
    let rho_step = opts.working_radius / opts.rho_bins as f64;
    let mut cells: BTreeMap<(i64, i64), (usize, usize)> = BTreeMap::new();
    let mut bands: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, s) in samples.iter().enumerate() {
        if !(s.radius > 0.0 && s.radius < opts.working_radius) {
            continue;
        }
        let key = ((s.radius / rho_step).floor() as i64, (s.theta / opts.theta_bin).floor() as i64);
        match cells.get(&key) {
            None => {
                cells.insert(key, (i, i));
            }
            Some(&(lo, hi)) => {
                let mut lo = lo;
                let mut hi = hi;
                if samples[i].height < samples[lo].height {
                    lo = i;
                }
                if samples[i].height > samples[hi].height {
                    hi = i;
                }
                let gap = samples[hi].height - samples[lo].height;
                if gap > opts.height_tol {
                    return Err(DecomposeError::GraphViolation {
                        first: (samples[lo].ix, samples[lo].is),
                        second: (samples[hi].ix, samples[hi].is),
                        gap,
                    });
                }
                cells.insert(key, (lo, hi));
            }
        }
        bands.entry(key.0).or_default().push(i);
    }

    // Monotone sweep: within each radius band the height must be
    // non-decreasing in the unwrapped angle.
    for indices in bands.values() {
        let mut sorted = indices.clone();
        sorted.sort_by(|&a, &b| {
            samples[a]
                .theta
                .total_cmp(&samples[b].theta)
                .then(samples[a].height.total_cmp(&samples[b].height))
        });
        for w in sorted.windows(2) {
            let (p, q) = (&samples[w[0]], &samples[w[1]]);
            if q.height < p.height - 1e-9 {
                return Err(DecomposeError::GraphViolation {
                    first: (p.ix, p.is),
                    second: (q.ix, q.is),
                    gap: p.height - q.height,
                });
            }
        }
    }

    let theta_min = samples.iter().map(|s| s.theta).fold(f64::INFINITY, f64::min);
    let theta_max = samples.iter().map(|s| s.theta).fold(f64::NEG_INFINITY, f64::max);
    Ok(SheetDescriptor { side, samples, theta_min, theta_max })
}

/// Split the mesh into its `y > 0` and `y < 0` sheets (the `y = 0` column
/// is the axis), unwrap the angle, and certify graphhood within the working
/// radius.
pub fn decompose_multigraph(
    mesh: &SurfaceMesh,
    opts: &DecomposeOptions,
) -> Result<[SheetDescriptor; 2], DecomposeError> {
    let plus = decompose_side(mesh, SheetSide::PositiveY, opts)?;
    let minus = decompose_side(mesh, SheetSide::NegativeY, opts)?;
    Ok([plus, minus])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{sample_mesh, sample_mesh_columns, phase_uniform_columns, MeshSource};
    use wrep_core::family::FamilyParameter;
    use wrep_core::limit::Sign;

    #[test]
    fn helicoid_decomposes_into_shifted_infinite_graphs() {
        // On the helicoid both sheets are graphs height = angle + const with
        // constants differing by pi.
        let mesh = sample_mesh(
            &MeshSource::Helicoid { x_half: 2.0 * PI, y_half: 1.0 },
            257,
            9,
            1e-12,
        )
        .unwrap();
        let opts = DecomposeOptions::new(1.0f64.sinh() * 1.01);
        let [plus, minus] = decompose_multigraph(&mesh, &opts).unwrap();
        assert!(plus.turns() > 1.9, "two full turns of winding: {}", plus.turns());
        let offset_plus = plus.samples[0].height - plus.samples[0].theta;
        for s in &plus.samples {
            assert!((s.height - s.theta - offset_plus).abs() < 1e-9);
        }
        let offset_minus = minus.samples[0].height - minus.samples[0].theta;
        for s in &minus.samples {
            assert!((s.height - s.theta - offset_minus).abs() < 1e-9);
        }
        assert!(((offset_plus - offset_minus).abs() - PI).abs() < 1e-9);
    }

    #[test]
    fn family_mesh_decomposes_cleanly() {
        let a = FamilyParameter::new(0.1).unwrap();
        let xs = phase_uniform_columns(a, 0.5, 64);
        let mesh = sample_mesh_columns(&MeshSource::Family(a), xs, 9, 1e-12).unwrap();
        let [plus, minus] = decompose_multigraph(&mesh, &DecomposeOptions::new(0.007)).unwrap();
        assert_eq!(plus.side, SheetSide::PositiveY);
        assert!(plus.samples.iter().all(|s| mesh.sample(s.ix, s.is).param.im > 0.0));
        assert!(minus.samples.iter().all(|s| mesh.sample(s.ix, s.is).param.im < 0.0));
        // every off-axis sample appears in exactly one sheet
        let off_axis = mesh.samples.iter().filter(|s| s.param.im != 0.0).count();
        assert_eq!(plus.samples.len() + minus.samples.len(), off_axis);
    }

    #[test]
    fn axis_only_mesh_is_rejected() {
        // ns = 3 with s in {-1, 0, 1} has off-axis rows; squeeze them away
        // by meshing the family at x columns only where y_w is tiny is not
        // possible, so build a degenerate helicoid strip with y_half = 0
        // instead: every sample sits on the axis.
        let mesh = sample_mesh(&MeshSource::Helicoid { x_half: 1.0, y_half: 0.0 }, 5, 3, 1e-12)
            .unwrap();
        let got = decompose_multigraph(&mesh, &DecomposeOptions::new(1.0));
        assert!(matches!(got, Err(DecomposeError::NoOffAxisSamples)), "{got:?}");
    }

    #[test]
    fn aliased_mesh_is_detected() {
        // Uniform columns on a small-a member wind far more than pi between
        // adjacent columns near the axis; the unwrap guard must refuse.
        let a = FamilyParameter::new(0.01).unwrap();
        let mesh = sample_mesh(&MeshSource::Family(a), 33, 5, 1e-10).unwrap();
        let got = decompose_multigraph(&mesh, &DecomposeOptions::new(0.007));
        assert!(matches!(got, Err(DecomposeError::UnwrapAliased { .. })), "{got:?}");
    }

    #[test]
    fn limit_mesh_decomposes() {
        let mesh = sample_mesh(&MeshSource::Limit { sign: Sign::Plus, x_min: 0.0625 }, 225, 9, 1e-12)
            .unwrap();
        let [plus, _minus] = decompose_multigraph(&mesh, &DecomposeOptions::new(0.007)).unwrap();
        // winding grows toward the plane like 1/(2x)
        assert!(plus.turns() > 1.0, "turns {}", plus.turns());
    }
}
