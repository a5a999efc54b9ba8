//! The small-parameter limit: anchored subsequence, limit surfaces, winding
//! counts, and convergence/blow-up measurements.
//!
//! As `a -> 0` the exponent gradients converge to those of `-1/z` on the
//! limit region, but the phases `u` diverge; the family therefore only
//! converges along subsequences with anchored phase.  Anchoring is made
//! constructive here by solving `u_a(1/2, 0) = 2 pi k` for `a`: the Gauss
//! maps of the selected members then converge to that of the exponent
//! `-1/z + 2` on the `x > 0` component (and `-1/z - 2` on `x < 0`, by
//! oddness), and the immersions converge to two spiraling disks living
//! strictly above and below the horizontal plane.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // required for float math in no_std builds
use num_traits::Float;

use crate::error::Error;
use crate::family::{self, DomainSpec, FamilyExponent, FamilyParameter};
use crate::weierstrass::{self, Holomorphic, SurfaceSample};
use crate::Result;

/// Which limit surface: above (`x3 > 0`) or below (`x3 < 0`) the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn signum(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// The anchoring constant: the limit exponent vanishes at the base
    /// point `+-1/2`, so the additive constant is `+-2`.
    fn anchor(self) -> f64 {
        2.0 * self.signum()
    }

    pub fn domain(self) -> DomainSpec {
        match self {
            Sign::Plus => DomainSpec::LimitPositive,
            Sign::Minus => DomainSpec::LimitNegative,
        }
    }

    pub fn base_point(self) -> Complex64 {
        Complex64::new(0.5 * self.signum(), 0.0)
    }
}

/// The limit exponent `-1/z +- 2` as a holomorphic-function handle.
#[derive(Debug, Clone, Copy)]
pub struct LimitExponent {
    sign: Sign,
}

impl LimitExponent {
    pub fn new(sign: Sign) -> Self {
        Self { sign }
    }
}

impl Holomorphic for LimitExponent {
    fn eval(&self, z: Complex64) -> Complex64 {
        -z.inv() + Complex64::new(self.sign.anchor(), 0.0)
    }
    fn derivative(&self, z: Complex64) -> Complex64 {
        (z * z).inv()
    }
}

/// The limit exponent at a point of the matching limit component.
pub fn limit_exponent(sign: Sign, z: Complex64) -> Result<Complex64> {
    if !sign.domain().contains(z) {
        return Err(Error::DomainViolation { at: z });
    }
    Ok(LimitExponent::new(sign).eval(z))
}

/// One anchored member of the subsequence: `u_{a_k}(1/2, 0) = 2 pi k`.
#[derive(Debug, Clone, Copy)]
pub struct SubsequenceChoice {
    pub index: u32,
    pub a: FamilyParameter,
    /// The measured anchor phase `u_{a_k}(1/2, 0)`, within solver tolerance
    /// of `2 pi k`.
    pub anchor_phase: f64,
}

/// Solve the phase-anchoring equation `arctan(1/(2a))/a = 2 pi k` for `a`.
///
/// The left side is strictly decreasing in `a` and unbounded as `a -> 0`,
/// so a unique root exists in `(0, 1/2)` for every `k >= 1`; it is located
/// by bisection down to floating-point resolution.
pub fn select_subsequence(k: u32) -> Result<SubsequenceChoice> {
    if k < 1 {
        return Err(Error::InvalidParameter { what: "subsequence index must be >= 1" });
    }
    let target = core::f64::consts::TAU * k as f64;
    let phase = |a: f64| family::axis_phase(FamilyParameter::new(a).expect("bracket"), 0.5);

    let mut hi = 0.499;
    if phase(hi) >= target {
        return Err(Error::RootNotBracketed);
    }
    // first-order guess (pi/2)/(2 pi k + 2), then widen downward
    let mut lo = 0.5 * core::f64::consts::FRAC_PI_2 / (target + 2.0);
    let mut guard = 0;
    while phase(lo) <= target {
        lo *= 0.5;
        guard += 1;
        if guard > 60 {
            return Err(Error::RootNotBracketed);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phase(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick the endpoint with the smaller residual
    let (rl, rh) = ((phase(lo) - target).abs(), (phase(hi) - target).abs());
    let a = if rl <= rh { lo } else { hi };
    Ok(SubsequenceChoice { index: k, a: FamilyParameter::new(a)?, anchor_phase: phase(a) })
}

/// Evaluate the limit immersion at `z`, normalized so the base point
/// `(+-1/2, 0)` maps to `(0, 0, +-1/2)`.
pub fn immerse(sign: Sign, z: Complex64, tol: f64) -> Result<[f64; 3]> {
    if !sign.domain().contains(z) {
        return Err(Error::DomainViolation { at: z });
    }
    let exp = LimitExponent::new(sign);
    let dom = sign.domain();
    let base = sign.base_point();
    let corner = Complex64::new(z.re, 0.0);
    let mut f = weierstrass::exponential_leg(&exp, &dom, base, corner, tol)?;
    let leg = weierstrass::exponential_leg(&exp, &dom, corner, z, tol)?;
    for c in 0..3 {
        f[c] += leg[c];
    }
    f[2] += 0.5 * sign.signum();
    Ok(f)
}

/// Sample one vertical column of the limit surface at `x`, `y = s * y_w(x)`
/// with the limit half-width `|x|^{3/2}/2`.
pub fn sample_column(sign: Sign, x: f64, s_values: &[f64], tol: f64) -> Result<Vec<SurfaceSample>> {
    let dom = sign.domain();
    let yw = dom.half_width(x);
    let ys: Vec<f64> = s_values.iter().map(|s| s * yw).collect();
    let exp = LimitExponent::new(sign);
    weierstrass::sample_vertical_column(
        &exp,
        &dom,
        sign.base_point(),
        [0.0, 0.0, 0.5 * sign.signum()],
        x,
        &ys,
        tol,
    )
}

/// Whose axis phase a winding count measures.
#[derive(Debug, Clone, Copy)]
pub enum WindingSource {
    Family(FamilyParameter),
    Limit,
}

/// Number of turns the slice-line direction makes between heights `t1` and
/// `t2`: `|u(t1, 0) - u(t2, 0)| / 2 pi`.  In the limit this is exactly
/// `(1/t1 - 1/t2) / 2 pi`; in particular `t2 = 2 t1` gives `1/(4 pi t1)`
/// turns.
pub fn winding_count(source: WindingSource, t1: f64, t2: f64) -> Result<f64> {
    if !(0.0 < t1 && t1 <= t2 && t2 <= 0.5) {
        return Err(Error::InvalidParameter { what: "winding heights must satisfy 0 < t1 <= t2 <= 1/2" });
    }
    let u = |t: f64| -> Result<f64> {
        match source {
            WindingSource::Family(a) => {
                if a.value() > t1 {
                    return Err(Error::InvalidParameter { what: "winding needs a <= t1" });
                }
                Ok(family::axis_phase(a, t))
            }
            WindingSource::Limit => Ok(2.0 - t.recip()),
        }
    };
    Ok((u(t1)? - u(t2)?).abs() / core::f64::consts::TAU)
}

/// A parameter rectangle `{sign * x in [x_lo, x_hi], s in [-1, 1]}` inside
/// the limit region, sampled on an `nx x ns` grid with the limit
/// half-width.
#[derive(Debug, Clone, Copy)]
pub struct CompactSet {
    pub sign: Sign,
    pub x_lo: f64,
    pub x_hi: f64,
    pub nx: usize,
    pub ns: usize,
}

impl CompactSet {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.x_lo && self.x_lo <= self.x_hi && self.x_hi <= 0.5) {
            return Err(Error::InvalidParameter {
                what: "compact set must be bounded away from x = 0 and inside |x| <= 1/2",
            });
        }
        if self.nx < 2 || self.ns < 2 {
            return Err(Error::InvalidParameter { what: "compact set grid needs nx, ns >= 2" });
        }
        Ok(())
    }
}

/// Sup-norm distances between one anchored family member and the limit
/// surface over a compact set.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceEntry {
    pub index: u32,
    pub a: f64,
    /// `sup |F_
    /// a_k(z) - F_limit(z)|` over the grid.
    pub sup_position_error: f64,
    /// `sup |v_{a_k}(z) - Im(-1/z)|` over the grid.
    pub sup_v_error: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub region: CompactSet,
    pub entries: Vec<ConvergenceEntry>,
}

impl ConvergenceReport {
    /// Both sup columns strictly decreasing along the subsequence.
    pub fn strictly_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| {
            w[1].sup_position_error < w[0].sup_position_error
                && w[1].sup_v_error < w[0].sup_v_error
        })
    }

    /// Least-squares slope of `ln sup` against `ln a_k`.
    pub fn log_log_slopes(&self) -> Option<(f64, f64)> {
        if self.entries.len() < 2 {
            return None;
        }
        let slope = |ys: Vec<f64>| {
            let xs: Vec<f64> = self.entries.iter().map(|e| e.a.ln()).collect();
            let n = xs.len() as f64;
            let mx = xs.iter().sum::<f64>() / n;
            let my = ys.iter().sum::<f64>() / n;
            let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
            let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
            num / den
        };
        let sp = slope(self.entries.iter().map(|e| e.sup_position_error.ln()).collect());
        let sv = slope(self.entries.iter().map(|e| e.sup_v_error.ln()).collect());
        Some((sp, sv))
    }
}

/// Measure convergence of the anchored subsequence toward the limit surface
/// over a compact set.
pub fn convergence_report(k_list: &[u32], region: &CompactSet, tol: f64) -> Result<ConvergenceReport> {
    region.validate()?;
    if k_list.is_empty() {
        return Err(Error::InvalidParameter { what: "convergence report needs a non-empty k list" });
    }
    let sgn = region.sign.signum();
    let xs: Vec<f64> = (0..region.nx)
        .map(|i| sgn * (region.x_lo + (region.x_hi - region.x_lo) * i as f64 / (region.nx - 1) as f64))
        .collect();
    let m = (region.ns - 1) as f64;
    let s_values: Vec<f64> = (0..region.ns).map(|j| (2 * j as i64 - m as i64) as f64 / m).collect();

    // Limit-surface columns, shared across all k.
    let mut limit_cols: Vec<Vec<SurfaceSample>> = Vec::with_capacity(xs.len());
    for &x in &xs {
        limit_cols.push(sample_column(region.sign, x, &s_values, tol)?);
    }

    let lim_dom = region.sign.domain();
    let mut entries = Vec::with_capacity(k_list.len());
    for &k in k_list {
        let choice = select_subsequence(k)?;
        let a = choice.a;
        let exp = FamilyExponent::new(a);
        let fam_dom = DomainSpec::Family(a);
        let mut sup_f = 0.0f64;
        let mut sup_v = 0.0f64;
        for (ix, &x) in xs.iter().enumerate() {
            // the family column sampled with the limit half-width, so both
            // surfaces are evaluated at identical parameters
            let yw = lim_dom.half_width(x);
            let ys: Vec<f64> = s_values.iter().map(|s| s * yw).collect();
            let col = weierstrass::sample_vertical_column(
                &exp,
                &fam_dom,
                Complex64::new(0.0, 0.0),
                [0.0; 3],
                x,
                &ys,
                tol,
            )?;
            for (sample, lim) in col.iter().zip(&limit_cols[ix]) {
                let d = [
                    sample.position[0] - lim.position[0],
                    sample.position[1] - lim.position[1],
                    sample.position[2] - lim.position[2],
                ];
                sup_f = sup_f.max((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt());
                sup_v = sup_v.max((sample.exponent.im - lim.exponent.im).abs());
            }
        }
        entries.push(ConvergenceEntry {
            index: k,
            a: a.value(),
            sup_position_error: sup_f,
            sup_v_error: sup_v,
        });
    }
    Ok(ConvergenceReport { region: *region, entries })
}

/// Per-member curvature summary: the density at the origin against the
/// sampled supremum away from the origin.
#[derive(Debug, Clone, Copy)]
pub struct BlowupRow {
    pub index: u32,
    pub a: f64,
    /// `|A|^2(0) = 2 a^{-4}`.
    pub center_density: f64,
    /// Sampled `sup |A|^2` over mesh points with `|F| > delta`.
    pub sup_outside: f64,
    /// Number of mesh samples outside the ball.
    pub outside_count: usize,
}

#[derive(Debug, Clone)]
pub struct BlowupReport {
    pub delta: f64,
    pub stability_factor: f64,
    pub nx: usize,
    pub ns: usize,
    pub rows: Vec<BlowupRow>,
}

impl BlowupReport {
    /// The center column diverges monotonically.
    pub fn center_strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].center_density > w[0].center_density)
    }

    /// Max/min ratio of the away-from-origin supremum across the rows.
    pub fn outside_ratio(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for r in &self.rows {
            lo = lo.min(r.sup_outside);
            hi = hi.max(r.sup_outside);
        }
        hi / lo
    }

    pub fn passes(&self) -> bool {
        self.center_strictly_increasing()
            && self.rows.iter().all(|r| r.outside_count > 0)
            && self.outside_ratio() <= self.stability_factor
    }
}

/// Curvature blow-up report over the anchored subsequence: `|A|^2` at the
/// origin per member, and the sampled supremum of `|A|^2` over mesh
/// positions outside the ball of radius `delta`, on a fixed `nx x ns` mesh.
pub fn blowup_report(
    k_list: &[u32],
    delta: f64,
    nx: usize,
    ns: usize,
    stability_factor: f64,
    tol: f64,
) -> Result<BlowupReport> {
    if k_list.is_empty() {
        return Err(Error::InvalidParameter { what: "blow-up report needs a non-empty k list" });
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN deltas
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter { what: "delta must be positive" });
    }
    if nx < 2 || ns < 2 {
        return Err(Error::InvalidParameter { what: "blow-up mesh needs nx, ns >= 2" });
    }
    let xs: Vec<f64> = (0..nx).map(|i| -0.5 + i as f64 / (nx - 1) as f64).collect();
    let m = (ns - 1) as f64;
    let s_values: Vec<f64> = (0..ns).map(|j| (2 * j as i64 - m as i64) as f64 / m).collect();

    let mut rows = Vec::with_capacity(k_list.len());
    for &k in k_list {
        let choice = select_subsequence(k)?;
        let a = choice.a;
        let center_density = -2.0 * family::curvature(a, Complex64::new(0.0, 0.0))?;
        let mut sup_outside = 0.0f64;
        let mut outside_count = 0usize;
        for &x in &xs {
            for sample in family::sample_column(a, x, &s_values, tol)? {
                let p = sample.position;
                let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
                if r2 > delta * delta {
                    outside_count += 1;
                    sup_outside = sup_outside.max(sample.second_fundamental_norm_sq);
                }
            }
        }
        rows.push(BlowupRow { index: k, a: a.value(), center_density, sup_outside, outside_count });
    }
    Ok(BlowupReport { delta, stability_factor, nx, ns, rows })
}
