//! Polygonal paths and adaptive Gauss–Kronrod quadrature along them.
//!
//! Line integrals are taken in the real-arclength convention: for a segment
//! `z(t) = z0 + t (z1 - z0)`, `t in [0, 1]`, the integral of a vector field
//! `f` is `|z1 - z0| * int_0^1 f(z(t)) dt`, one component at a time.  Each
//! segment is integrated with an embedded 7/15-node Gauss–Kronrod pair and
//! globally adaptive bisection driven by the worst per-component error
//! estimate.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // required for float math in no_std builds
use num_traits::Float;

use crate::error::Error;
use crate::Result;

/// Hard cap on the number of interval bisections per segment.
pub const MAX_SUBDIVISIONS: usize = 1 << 16;

/// Consecutive no-progress bisections tolerated before giving up.
const STAGNATION_LIMIT: u32 = 20;

// 15-point Kronrod nodes (positive half, descending) and weights, with the
// embedded 7-point Gauss weights. Values from the QUADPACK QK15 rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_97,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

/// QUADPACK error rescaling: damp the raw `|K15 - G7|` estimate toward the
/// oscillation measure and never report less than the 50-ulp roundoff floor.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[derive(Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    val: [f64; 3],
    err: [f64; 3],
}

impl Segment {
    fn worst(&self) -> f64 {
        self.err[0].max(self.err[1]).max(self.err[2])
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.worst() == other.worst()
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.worst().total_cmp(&other.worst())
    }
}

/// One Gauss–Kronrod pass over `[lo, hi]` in parameter space.
fn kronrod_pass<F>(f: &mut F, lo: f64, hi: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<[f64; 3]>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let mut fv = [[0.0f64; 3]; 15];
    // node order: 0..7 -> center - half*xgk[j], 7 -> center, 8..15 -> center + half*xgk[14-j]
    let fc = f(center)?;
    fv[7] = fc;
    for j in 0..7 {
        fv[j] = f(center - half * XGK[j])?;
        fv[14 - j] = f(center + half * XGK[j])?;
    }

    let mut val = [0.0f64; 3];
    let mut err = [0.0f64; 3];
    for c in 0..3 {
        let mut resk = WGK[7] * fc[c];
        let mut resg = WG[3] * fc[c];
        let mut resabs = resk.abs();
        for j in 0..7 {
            let fsum = fv[j][c] + fv[14 - j][c];
            resk += WGK[j] * fsum;
            resabs += WGK[j] * (fv[j][c].abs() + fv[14 - j][c].abs());
            if j % 2 == 1 {
                resg += WG[j / 2] * fsum;
            }
        }
        let mean = 0.5 * resk;
        let mut resasc = WGK[7] * (fc[c] - mean).abs();
        for j in 0..7 {
            resasc += WGK[j] * ((fv[j][c] - mean).abs() + (fv[14 - j][c] - mean).abs());
        }
        val[c] = resk * half;
        err[c] = rescale_error((resk - resg) * half, resabs * half.abs(), resasc * half.abs());
    }
    Ok(Segment { lo, hi, val, err })
}

/// Adaptive integration of `f` over the parameter interval `[0, 1]`.
fn adaptive<F>(mut f: F, tol: f64) -> Result<[f64; 3]>
where
    F: FnMut(f64) -> Result<[f64; 3]>,
{
    let root = kronrod_pass(&mut f, 0.0, 1.0)?;
    let mut total_err = root.err;
    let mut heap = BinaryHeap::new();
    heap.push(root);
    // Intervals too narrow to bisect further; their values still count.
    let mut frozen: Vec<Segment> = Vec::new();

    let mut splits = 0usize;
    let mut stagnant = 0u32;

    let converged =
        |e: &[f64; 3]| e[0] <= tol && e[1] <= tol && e[2] <= tol;

    while !converged(&total_err) {
        let achieved = total_err[0].max(total_err[1]).max(total_err[2]);
        if splits >= MAX_SUBDIVISIONS || stagnant >= STAGNATION_LIMIT {
            return Err(Error::NonConvergence { achieved, requested: tol });
        }
        let Some(parent) = heap.pop() else {
            return Err(Error::NonConvergence { achieved, requested: tol });
        };
        let mid = 0.5 * (parent.lo + parent.hi);
        if !(parent.lo < mid && mid < parent.hi) {
            frozen.push(parent);
            continue;
        }
        splits += 1;
        let left = kronrod_pass(&mut f, parent.lo, mid)?;
        let right = kronrod_pass(&mut f, mid, parent.hi)?;

        let mut child_worst = 0.0f64;
        let mut value_shift = 0.0f64;
        for (c, err) in total_err.iter_mut().enumerate() {
            *err += left.err[c] + right.err[c] - parent.err[c];
            child_worst = child_worst.max(left.err[c] + right.err[c]);
            value_shift = value_shift.max((left.val[c] + right.val[c] - parent.val[c]).abs());
        }
        // QUADPACK-style roundoff detection: the split neither moved the
        // value nor reduced the error, so the estimate is roundoff-limited.
        let parent_worst = parent.worst();
        if child_worst >= 0.99 * parent_worst && value_shift <= 1.0e-5 * parent_worst.max(1.0) {
            stagnant += 1;
        }
        heap.push(left);
        heap.push(right);
    }

    let mut out = [0.0f64; 3];
    for seg in frozen.iter().chain(heap.iter()) {
        for (acc, v) in out.iter_mut().zip(seg.val) {
            *acc += v;
        }
    }
    Ok(out)
}

/// Integrate a checked field along the straight segment from `z_start` to
/// `z_end` in the arclength convention. The field may reject a node (for
/// example with a domain violation); rejection aborts the integration.
pub(crate) fn integrate_segment_with<F>(
    mut field: F,
    z_start: Complex64,
    z_end: Complex64,
    tol: f64,
) -> Result<[f64; 3]>
where
    F: FnMut(Complex64) -> Result<[f64; 3]>,
{
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN tolerances
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter { what: "tolerance must be positive" });
    }
    let delta = z_end - z_start;
    let len = delta.norm();
    if len == 0.0 {
        return Ok([0.0; 3]);
    }
    adaptive(
        move |t| {
            let z = z_start + delta * t;
            let v = field(z)?;
            if v.iter().all(|x| x.is_finite()) {
                Ok([v[0] * len, v[1] * len, v[2] * len])
            } else {
                Err(Error::NonFiniteField { at: z })
            }
        },
        tol,
    )
}

/// Integrate `field` along the straight segment from `z_start` to `z_end`.
///
/// Returns the triple `|z_end - z_start| * int_0^1 field(z(t)) dt` with an
/// estimated absolute error at most `tol` in every component.
pub fn integrate_segment<F>(
    field: F,
    z_start: Complex64,
    z_end: Complex64,
    tol: f64,
) -> Result<[f64; 3]>
where
    F: Fn(Complex64) -> [f64; 3],
{
    integrate_segment_with(|z| Ok(field(z)), z_start, z_end, tol)
}

/// A polygonal path in the complex plane.
///
/// A single-vertex path is the trivial path (empty integral); consecutive
/// vertices must otherwise be distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPath {
    vertices: Vec<Complex64>,
}

impl PolyPath {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath { reason: "a path needs at least one vertex" });
        }
        if vertices.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidPath { reason: "path vertices must be finite" });
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPath { reason: "consecutive vertices must be distinct" });
        }
        Ok(Self { vertices })
    }

    /// The trivial path that stays at `z`.
    pub fn trivial(z: Complex64) -> Self {
        Self { vertices: alloc::vec![z] }
    }

    /// The straight segment from `a` to `b`.
    pub fn segment(a: Complex64, b: Complex64) -> Result<Self> {
        Self::new(alloc::vec![a, b])
    }

    pub fn start(&self) -> Complex64 {
        self.vertices[0]
    }

    pub fn end(&self) -> Complex64 {
        *self.vertices.last().expect("paths are never empty")
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    /// The straight segments making up the path.
    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}
