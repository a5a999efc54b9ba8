//! Report builders: the embedding certificate suite and the end-to-end
//! theorem/convergence reports.

use wrep_core::classics;
use wrep_core::family::{self, FamilyParameter};
use wrep_core::limit::{self, CompactSet, Sign, WindingSource};
use wrep_core::quad::PolyPath;
use wrep_core::weierstrass::{differential_fields, immerse, path_independence_residual};
use wrep_core::Complex64;

use crate::mesh::{phase_uniform_columns, sample_mesh, sample_mesh_columns, MeshSource};
use crate::multigraph::{decompose_multigraph, DecomposeOptions};
use crate::report::{Certificate, ReportDocument, ReportKind, ReportSection, Table};
use crate::Result;

fn l_path(z: Complex64) -> PolyPath {
    let origin = Complex64::new(0.0, 0.0);
    let corner = Complex64::new(z.re, 0.0);
    let mut v = vec![origin];
    if corner != origin {
        v.push(corner);
    }
    if z != corner {
        v.push(z);
    }
    PolyPath::new(v).expect("L-path vertices are distinct")
}

/// The evaluation grid the certificate suite runs on.
#[derive(Debug, Clone)]
pub struct GridPreset {
    pub name: &'static str,
    pub a_values: Vec<f64>,
    pub x_values: Vec<f64>,
    pub slice_samples: usize,
}

impl GridPreset {
    /// The default verification grid: four parameters spanning a decade,
    /// nine heights covering the domain, 41-point slices.
    pub fn acceptance() -> Self {
        GridPreset {
            name: "acceptance",
            a_values: vec![0.1, 0.05, 0.02, 0.01],
            x_values: vec![0.0, 0.0625, -0.0625, 0.125, -0.125, 0.25, -0.25, 0.5, -0.5],
            slice_samples: 41,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "acceptance" => Some(Self::acceptance()),
            _ => None,
        }
    }

    pub fn parameters(&self) -> Result<Vec<FamilyParameter>> {
        self.a_values
            .iter()
            .map(|&a| FamilyParameter::new(a).map_err(Into::into))
            .collect()
    }
}

/// Empirical separation radius of the grid and the recorded ball radius
/// `R = min(r0/2, 1/4)`.
pub fn grid_ball_radius(preset: &GridPreset, tol: f64) -> Result<(f64, f64)> {
    let r0 = family::estimate_r0(&preset.parameters()?, &preset.x_values, tol)?;
    Ok((r0, (r0 / 2.0).min(0.25)))
}

/// Run the embedding certificate suite: slice-graph bounds, endpoint
/// separation, axis/height identities, and the vertical-normal locus.
pub fn embedding_report(preset: &GridPreset, tol: f64) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(ReportKind::Embedding);
    doc.set_parameter("grid_preset", preset.name);
    doc.set_parameter("tol", tol);
    doc.set_parameter("slice_samples", preset.slice_samples as u64);

    let params = preset.parameters()?;

    let mut slice_sec = ReportSection::new("slice_graphs");
    let mut sep_sec = ReportSection::new("separation");
    let mut axis_sec = ReportSection::new("axis_and_height");
    let mut locus_sec = ReportSection::new("vertical_normal_locus");
    let mut fam_dot = 0.0f64;
    let mut fam_norm_gap = 0.0f64;

    for &a in &params {
        let av = a.value();
        let mut sup_height = 0.0f64;
        for &x in &preset.x_values {
            let sl = family::slice(a, x, preset.slice_samples, tol)?;
            let u0 = family::axis_phase(a, x);
            let mut max_du = 0.0f64;
            let mut min_cos = f64::INFINITY;
            let mut min_v_edge = f64::INFINITY;
            for s in &sl.samples {
                let du = (s.exponent.re - u0).abs();
                max_du = max_du.max(du);
                min_cos = min_cos.min(du.cos());
                sup_height = sup_height.max((s.position[2] - x).abs());
                let (dx, dy) = differential_fields(s.exponent);
                fam_dot = fam_dot.max((dx[0] * dy[0] + dx[1] * dy[1] + dx[2] * dy[2]).abs());
                let nx = (dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2]).sqrt();
                let ny = (dy[0] * dy[0] + dy[1] * dy[1] + dy[2] * dy[2]).sqrt();
                fam_norm_gap = fam_norm_gap.max((nx - ny).abs());
            }
            for edge in [&sl.samples[0], sl.samples.last().unwrap()] {
                min_v_edge = min_v_edge.min(edge.exponent.im.abs());
            }
            let phase_bound = x.abs() / (2.0 * (x * x + av * av).sqrt());
            slice_sec.certificates.push(Certificate::less(
                format!("phase_excursion a={av} x={x}"),
                max_du,
                phase_bound + 1e-10,
            ));
            slice_sec.certificates.push(Certificate::greater(
                format!("direction_cosine a={av} x={x}"),
                min_cos,
                0.5,
            ));

            let cert = family::separation(a, x, tol)?;
            sep_sec.certificates.push(Certificate::greater(
                format!("separation a={av} x={x}"),
                cert.measured_separation,
                cert.analytic_lower_bound,
            ));

            locus_sec.certificates.push(Certificate::greater(
                format!("edge_tilt a={av} x={x}"),
                min_v_edge,
                3.0 / (32.0 * (x * x + av * av).powf(0.25)) * (1.0 - 1e-12),
            ));
        }
        axis_sec.certificates.push(Certificate::abs_le(
            format!("height_identity a={av}"),
            sup_height,
            1e-11,
        ));
        let mut axis_err = 0.0f64;
        for t in [0.0, 0.125, -0.125, 0.25, -0.25, 0.49, -0.49] {
            let f = family::immerse(a, Complex64::new(t, 0.0), tol)?;
            axis_err = axis_err
                .max(f[0].abs())
                .max(f[1].abs())
                .max((f[2] - t).abs());
        }
        axis_sec.certificates.push(Certificate::abs_le(
            format!("axis_identity a={av}"),
            axis_err,
            1e-12,
        ));
    }

    let (r0, ball) = grid_ball_radius(preset, tol)?;
    sep_sec.certificates.push(Certificate::greater("r0_estimate".to_string(), r0, 0.005));
    doc.set_parameter("r0_estimate", r0);
    doc.set_parameter("ball_radius", ball);

    let mut oracle_sec = engine_oracle_section(tol)?;
    oracle_sec.certificates.push(Certificate::abs_le("family_conformality_dot", fam_dot, 1e-12));
    oracle_sec
        .certificates
        .push(Certificate::abs_le("family_conformality_norm_gap", fam_norm_gap, 1e-12));

    doc.sections.extend([slice_sec, sep_sec, axis_sec, locus_sec, oracle_sec]);
    Ok(doc)
}

/// Closed-form oracle checks of the engine itself: the helicoid and
/// catenoid immersions, conformality of the differential, and the discrete
/// harmonicity of the immersion components.
fn engine_oracle_section(tol: f64) -> Result<ReportSection> {
    use std::f64::consts::{PI, TAU};
    let mut sec = ReportSection::new("engine_oracles");

    let heli = classics::helicoid();
    let mut sup = 0.0f64;
    let mut sup_dot = 0.0f64;
    let mut sup_sq = 0.0f64;
    for i in 0..33 {
        let x = -PI + TAU * i as f64 / 32.0;
        for j in 0..17 {
            let y = -1.0 + 2.0 * j as f64 / 16.0;
            let z = Complex64::new(x, y);
            let f = immerse(&heli, &l_path(z), tol)?;
            let cf = classics::helicoid_closed_form(z);
            for k in 0..3 {
                sup = sup.max((f[k] - cf[k]).abs());
            }
            let (dx, dy) = differential_fields(z);
            sup_dot = sup_dot.max((dx[0] * dy[0] + dx[1] * dy[1] + dx[2] * dy[2]).abs());
            let nx2 = dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2];
            let ny2 = dy[0] * dy[0] + dy[1] * dy[1] + dy[2] * dy[2];
            sup_sq = sup_sq.max((nx2 - ny2).abs());
        }
    }
    sec.certificates.push(Certificate::abs_le("helicoid_oracle_sup", sup, 1e-9));
    sec.certificates.push(Certificate::abs_le("helicoid_conformality_dot", sup_dot, 1e-12));
    sec.certificates.push(Certificate::abs_le("helicoid_conformality_squares", sup_sq, 1e-12));

    let cat = classics::catenoid();
    let mut cat_sup = 0.0f64;
    for i in 0..8 {
        let r = 0.6 + 1.2 * i as f64 / 7.0;
        for j in 0..8 {
            let th = -2.35 + 4.7 * j as f64 / 7.0;
            let z = Complex64::from_polar(r, th);
            let path = classics::annulus_path(1.0, z, PI / 16.0)?;
            let f = immerse(&cat, &path, tol)?;
            cat_sup = cat_sup
                .max(((f[0] - 1.0) * (f[0] - 1.0) + f[1] * f[1] - f[2].cosh() * f[2].cosh()).abs());
        }
    }
    sec.certificates.push(Certificate::abs_le("catenoid_identity_sup", cat_sup, 1e-9));
    let lp = classics::circle_loop(1.0, 16)?;
    let trivial = PolyPath::trivial(Complex64::new(1.0, 0.0));
    let period =
        path_independence_residual(&classics::catenoid_full_annulus(), &lp, &trivial, tol)?;
    sec.certificates.push(Certificate::abs_le("catenoid_loop_period", period, 1e-10));

    // five-point Laplacian halving ratio at one helicoid and one family point
    let lap = |eval: &dyn Fn(Complex64) -> wrep_core::Result<[f64; 3]>,
               z: Complex64,
               h: f64|
     -> wrep_core::Result<f64> {
        let center = eval(z)?;
        let xp = eval(z + Complex64::new(h, 0.0))?;
        let xm = eval(z - Complex64::new(h, 0.0))?;
        let yp = eval(z + Complex64::new(0.0, h))?;
        let ym = eval(z - Complex64::new(0.0, h))?;
        let mut worst = 0.0f64;
        for k in 0..3 {
            worst = worst.max(((xp[k] + xm[k] + yp[k] + ym[k] - 4.0 * center[k]) / (h * h)).abs());
        }
        Ok(worst)
    };
    let eval_h = |z: Complex64| immerse(&heli, &l_path(z), 1e-13);
    let z0 = Complex64::new(0.6, 0.5);
    let ratio_h = lap(&eval_h, z0, 2e-2)? / lap(&eval_h, z0, 1e-2)?;
    sec.certificates.push(Certificate::greater("helicoid_laplacian_halving_ratio", ratio_h, 3.8));
    let a = FamilyParameter::new(0.1)?;
    let eval_f = |z: Complex64| family::immerse(a, z, 1e-13);
    let zf = Complex64::new(0.2, 0.004);
    let ratio_f = lap(&eval_f, zf, 1e-3)? / lap(&eval_f, zf, 5e-4)?;
    sec.certificates.push(Certificate::greater("family_laplacian_halving_ratio", ratio_f, 3.8));

    Ok(sec)
}

/// The four-part theorem report: curvature blow-up at the origin, bounded
/// curvature away from it, multigraph decomposition, and convergence to the
/// limit surfaces.
pub fn theorem_report(
    k_list: &[u32],
    delta: f64,
    nx: usize,
    ns: usize,
    stability_factor: f64,
    tol: f64,
) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(ReportKind::Theorem);
    doc.set_parameter("k_list", k_list.to_vec());
    doc.set_parameter("delta", delta);
    doc.set_parameter("mesh_nx", nx as u64);
    doc.set_parameter("mesh_ns", ns as u64);
    doc.set_parameter("stability_factor", stability_factor);
    doc.set_parameter("tol", tol);

    let blow = limit::blowup_report(k_list, delta, nx, ns, stability_factor, tol)?;

    // (1) blow-up at the origin
    let mut sec1 = ReportSection::new("curvature_blowup_at_origin");
    sec1.tables.push(Table {
        name: "center_density".into(),
        columns: vec!["k".into(), "a".into(), "A_sq_origin".into()],
        rows: blow.rows.iter().map(|r| vec![r.index as f64, r.a, r.center_density]).collect(),
    });
    let min_growth = blow
        .rows
        .windows(2)
        .map(|w| w[1].center_density / w[0].center_density)
        .fold(f64::INFINITY, f64::min);
    sec1.certificates.push(Certificate::greater("center_density_strictly_increasing", min_growth, 1.0));
    let total_growth = blow.rows.last().unwrap().center_density / blow.rows[0].center_density;
    sec1.certificates.push(Certificate::greater("center_density_diverges", total_growth, 10.0));
    let law_defect = blow
        .rows
        .iter()
        .map(|r| (r.center_density * r.a.powi(4) - 2.0).abs())
        .fold(0.0f64, f64::max);
    sec1.certificates.push(Certificate::abs_le("center_density_law_a4", law_defect, 2e-10));

    // (2) bounded curvature away from the origin
    let mut sec2 = ReportSection::new("curvature_away_from_origin");
    sec2.tables.push(Table {
        name: "sup_outside_delta_ball".into(),
        columns: vec!["k".into(), "a".into(), "sup_A_sq".into(), "samples_outside".into()],
        rows: blow
            .rows
            .iter()
            .map(|r| vec![r.index as f64, r.a, r.sup_outside, r.outside_count as f64])
            .collect(),
    });
    sec2.certificates.push(Certificate::less(
        "sup_outside_stable_across_k",
        blow.outside_ratio(),
        stability_factor,
    ));

    // (3) multigraph decomposition
    let choices: Vec<_> = k_list
        .iter()
        .map(|&k| limit::select_subsequence(k))
        .collect::<wrep_core::Result<_>>()?;
    let a_list: Vec<FamilyParameter> = choices.iter().map(|c| c.a).collect();
    let r0 = family::estimate_r0(&a_list, &GridPreset::acceptance().x_values, tol)?;
    let ball = (r0 / 2.0).min(0.25);
    doc.set_parameter("r0_estimate", r0);
    doc.set_parameter("ball_radius", ball);

    let mut sec3 = ReportSection::new("multigraph_decomposition");
    let mut rows = Vec::new();
    for choice in &choices {
        let xs = phase_uniform_columns(choice.a, 0.5, 129);
        let mesh = sample_mesh_columns(&MeshSource::Family(choice.a), xs, ns.min(41), tol)?;
        let min_tilt = mesh
            .samples
            .iter()
            .filter(|s| s.param.im != 0.0)
            .map(|s| s.exponent.im.abs())
            .fold(f64::INFINITY, f64::min);
        let opts = DecomposeOptions::new(r0);
        let (violations, turns) = match decompose_multigraph(&mesh, &opts) {
            Ok([plus, _minus]) => (0.0, plus.turns()),
            Err(_) => (1.0, f64::NAN),
        };
        rows.push(vec![choice.index as f64, choice.a.value(), turns]);
        sec3.certificates.push(Certificate::less(
            format!("graph_violations k={}", choice.index),
            violations,
            0.5,
        ));
        sec3.certificates.push(Certificate::greater(
            format!("off_axis_tilt k={}", choice.index),
            min_tilt,
            0.0,
        ));
    }
    sec3.tables.push(Table {
        name: "sheets".into(),
        columns: vec!["k".into(), "a".into(), "turns_positive_sheet".into()],
        rows,
    });

    // (4) convergence to the limit surfaces, their winding, and their
    // containment strictly off the horizontal plane
    let region = CompactSet { sign: Sign::Plus, x_lo: 0.125, x_hi: 0.5, nx: 17, ns: 9 };
    let conv = limit::convergence_report(k_list, &region, tol)?;
    let mut sec4 = ReportSection::new("convergence_to_limit");
    sec4.tables.push(Table {
        name: "sup_errors".into(),
        columns: vec!["k".into(), "a".into(), "sup_position_error".into(), "sup_v_error".into()],
        rows: conv
            .entries
            .iter()
            .map(|e| vec![e.index as f64, e.a, e.sup_position_error, e.sup_v_error])
            .collect(),
    });
    sec4.certificates.push(Certificate::greater(
        "sup_errors_strictly_decreasing",
        if conv.strictly_decreasing() { 1.0 } else { 0.0 },
        0.5,
    ));
    if let Some((sp, sv)) = conv.log_log_slopes() {
        sec4.certificates.push(Certificate::abs_le("position_rate_slope_minus_2", sp - 2.0, 0.5));
        sec4.certificates.push(Certificate::abs_le("v_rate_slope_minus_2", sv - 2.0, 0.5));
    }

    let mut winding_defect = 0.0f64;
    let mut limit_defect = 0.0f64;
    for t in [0.05, 0.1, 0.2] {
        let a = FamilyParameter::new(t / 10.0)?;
        let turns = limit::winding_count(WindingSource::Family(a), t, 2.0 * t)?;
        winding_defect = winding_defect.max((turns * 4.0 * std::f64::consts::PI * t - 1.0).abs());
        let exact = limit::winding_count(WindingSource::Limit, t, 2.0 * t)?;
        limit_defect = limit_defect.max((exact * 4.0 * std::f64::consts::PI * t - 1.0).abs());
    }
    sec4.certificates.push(Certificate::abs_le("winding_defect_at_a_over_t_0.1", winding_defect, 0.01));
    sec4.certificates.push(Certificate::abs_le("limit_winding_defect", limit_defect, 1e-12));

    let rows = ns.clamp(9, 41);
    let upper = sample_mesh(&MeshSource::Limit { sign: Sign::Plus, x_min: 0.0625 }, 225, rows, tol)?;
    let lower = sample_mesh(&MeshSource::Limit { sign: Sign::Minus, x_min: 0.0625 }, 225, rows, tol)?;
    let min_upper = upper.samples.iter().map(|s| s.position[2]).fold(f64::INFINITY, f64::min);
    let max_lower = lower.samples.iter().map(|s| s.position[2]).fold(f64::NEG_INFINITY, f64::max);
    sec4.certificates.push(Certificate::greater("upper_leaf_above_plane", min_upper, 0.0));
    sec4.certificates.push(Certificate::less("lower_leaf_below_plane", max_lower, 0.0));
    let [sheet, _] = decompose_multigraph(&upper, &DecomposeOptions::new(r0))
        .map_err(crate::Error::Decompose)?;
    let mut growth_defect = 0.0f64;
    let mut prev: Option<f64> = None;
    for t in [0.25, 0.125, 0.0625] {
        let range = sheet
            .theta_range_in_slab(t, 2.0 * t)
            .ok_or(wrep_core::Error::InvalidParameter { what: "empty winding slab" })?;
        if let Some(p) = prev {
            growth_defect = growth_defect.max((range / p - 2.0).abs());
        }
        prev = Some(range);
    }
    sec4.certificates.push(Certificate::abs_le("spiral_growth_ratio_minus_2", growth_defect, 0.1));

    doc.sections.extend([sec1, sec2, sec3, sec4]);
    Ok(doc)
}

/// Convergence-only report over a compact subset of the positive limit
/// component.
pub fn convergence_document(k_list: &[u32], x_lo: f64, nx: usize, ns: usize, tol: f64) -> Result<ReportDocument> {
    let region = CompactSet { sign: Sign::Plus, x_lo, x_hi: 0.5, nx, ns };
    let conv = limit::convergence_report(k_list, &region, tol)?;
    let mut doc = ReportDocument::new(ReportKind::Convergence);
    doc.set_parameter("k_list", k_list.to_vec());
    doc.set_parameter("x_lo", x_lo);
    doc.set_parameter("nx", nx as u64);
    doc.set_parameter("ns", ns as u64);
    doc.set_parameter("tol", tol);
    let mut sec = ReportSection::new("convergence_to_limit");
    sec.tables.push(Table {
        name: "sup_errors".into(),
        columns: vec!["k".into(), "a".into(), "sup_position_error".into(), "sup_v_error".into()],
        rows: conv
            .entries
            .iter()
            .map(|e| vec![e.index as f64, e.a, e.sup_position_error, e.sup_v_error])
            .collect(),
    });
    sec.certificates.push(Certificate::greater(
        "sup_errors_strictly_decreasing",
        if conv.strictly_decreasing() { 1.0 } else { 0.0 },
        0.5,
    ));
    if conv.entries.len() >= 3 {
        if let Some((sp, sv)) = conv.log_log_slopes() {
            sec.certificates.push(Certificate::abs_le("position_rate_slope_minus_2", sp - 2.0, 0.5));
            sec.certificates.push(Certificate::abs_le("v_rate_slope_minus_2", sv - 2.0, 0.5));
        }
    }
    doc.sections.push(sec);
    Ok(doc)
}
