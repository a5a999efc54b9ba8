//! Acceptance suite: one test per verification criterion, each printing a
//! PASS line with the measured values (run with `--nocapture` to see them).
//!
//! The evaluation grid is `a in {0.1, 0.05, 0.02, 0.01}`,
//! `x in {0, +-1/16, +-1/8, +-1/4, +-1/2}`, 41-point slices; quadrature
//! tolerance 1e-12 throughout.

use std::f64::consts::{PI, TAU};
use std::sync::LazyLock;

use surface_io::mesh::{phase_uniform_columns, sample_mesh, sample_mesh_columns, MeshSource};
use surface_io::multigraph::{decompose_multigraph, DecomposeOptions};
use wrep_core::classics;
use wrep_core::family::{self, FamilyParameter};
use wrep_core::limit::{self, CompactSet, Sign, WindingSource};
use wrep_core::quad::PolyPath;
use wrep_core::weierstrass::{differential_fields, immerse};
use wrep_core::Complex64;

const TOL: f64 = 1e-12;
const GRID_A: [f64; 4] = [0.1, 0.05, 0.02, 0.01];
const GRID_X: [f64; 9] = [0.0, 0.0625, -0.0625, 0.125, -0.125, 0.25, -0.25, 0.5, -0.5];
const K_LIST: [u32; 4] = [3, 6, 12, 24];

fn fp(a: f64) -> FamilyParameter {
    FamilyParameter::new(a).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn l_path(z: Complex64) -> PolyPath {
    let mut v = vec![c(0.0, 0.0)];
    let corner = c(z.re, 0.0);
    if corner != v[0] {
        v.push(corner);
    }
    if z != corner {
        v.push(z);
    }
    PolyPath::new(v).unwrap()
}

static R0_ESTIMATE: LazyLock<f64> = LazyLock::new(|| {
    let params: Vec<FamilyParameter> = GRID_A.iter().map(|&a| fp(a)).collect();
    family::estimate_r0(&params, &GRID_X, TOL).unwrap()
});

#[test]
fn criterion_01_blowup_law() {
    for a in GRID_A {
        let k = family::curvature(fp(a), c(0.0, 0.0)).unwrap();
        let k_scaled = k.abs() * a.powi(4);
        let density_scaled = -2.0 * k * a.powi(4);
        assert!((k_scaled - 1.0).abs() <= 1e-10, "a={a}: |K|(0) a^4 = {k_scaled}");
        assert!(
            (density_scaled - 2.0).abs() <= 2.0 * 1e-10,
            "a={a}: |A|^2(0) a^4 = {density_scaled}"
        );
    }
    println!("acceptance 01 blow-up law: PASS (|K|(0) a^4 = 1, |A|^2(0) a^4 = 2 to 1e-10)");
}

#[test]
fn criterion_02_helicoid_oracle() {
    let data = classics::helicoid();
    let mut sup = 0.0f64;
    for i in 0..33 {
        let x = -PI + TAU * i as f64 / 32.0;
        for j in 0..17 {
            let y = -1.0 + 2.0 * j as f64 / 16.0;
            let z = c(x, y);
            let f = immerse(&data, &l_path(z), TOL).unwrap();
            let cf = classics::helicoid_closed_form(z);
            for k in 0..3 {
                sup = sup.max((f[k] - cf[k]).abs());
            }
        }
    }
    assert!(sup <= 1e-9, "helicoid sup error {sup}");
    println!("acceptance 02 helicoid oracle: PASS (sup error {sup:.3e} <= 1e-9 on 33x17)");
}

#[test]
fn criterion_03_catenoid_oracle() {
    let data = classics::catenoid();
    let mut sup = 0.0f64;
    for i in 0..8 {
        let r = 0.6 + 1.2 * i as f64 / 7.0;
        for j in 0..8 {
            let th = -2.35 + 4.7 * j as f64 / 7.0;
            let z = Complex64::from_polar(r, th);
            let path = classics::annulus_path(1.0, z, PI / 16.0).unwrap();
            let f = immerse(&data, &path, TOL).unwrap();
            let residual = ((f[0] - 1.0) * (f[0] - 1.0) + f[1] * f[1] - f[2].cosh() * f[2].cosh()).abs();
            sup = sup.max(residual);
        }
    }
    assert!(sup <= 1e-9, "catenoid identity residual {sup}");

    let full = classics::catenoid_full_annulus();
    let lp = classics::circle_loop(1.0, 16).unwrap();
    let trivial = PolyPath::trivial(c(1.0, 0.0));
    let period = wrep_core::weierstrass::path_independence_residual(&full, &lp, &trivial, TOL).unwrap();
    assert!(period <= 1e-10, "loop period residual {period}");
    println!(
        "acceptance 03 catenoid oracle: PASS (identity {sup:.3e} <= 1e-9 on 64 samples, period {period:.3e} <= 1e-10)"
    );
}

#[test]
fn criterion_04_height_identity() {
    let mut sup = 0.0f64;
    for a in GRID_A {
        for x in GRID_X {
            let sl = family::slice(fp(a), x, 41, TOL).unwrap();
            for s in &sl.samples {
                sup = sup.max((s.position[2] - x).abs());
            }
        }
    }
    assert!(sup <= 1e-11, "height identity sup {sup}");
    println!("acceptance 04 height identity: PASS (sup |x3 - x| = {sup:.3e} <= 1e-11)");
}

#[test]
fn criterion_05_axis_identity() {
    let mut sup = 0.0f64;
    for a in GRID_A {
        for t in [0.0, 0.125, -0.125, 0.25, -0.25, 0.49, -0.49] {
            let f = family::immerse(fp(a), c(t, 0.0), TOL).unwrap();
            sup = sup.max(f[0].abs()).max(f[1].abs()).max((f[2] - t).abs());
        }
    }
    assert!(sup <= 1e-12, "axis identity sup {sup}");
    println!("acceptance 05 axis identity: PASS (sup |F(t,0) - (0,0,t)| = {sup:.3e} <= 1e-12)");
}

#[test]
fn criterion_06_slice_graph_certificates() {
    let mut worst_margin = f64::INFINITY;
    let mut min_cos = f64::INFINITY;
    for a in GRID_A {
        for x in GRID_X {
            let sl = family::slice(fp(a), x, 41, TOL).unwrap();
            let u0 = family::axis_phase(fp(a), x);
            let bound = x.abs() / (2.0 * (x * x + a * a).sqrt());
            for s in &sl.samples {
                let du = (s.exponent.re - u0).abs();
                worst_margin = worst_margin.min(bound + 1e-10 - du);
                min_cos = min_cos.min((s.exponent.re - u0).cos());
            }
        }
    }
    assert!(worst_margin >= 0.0, "phase excursion exceeds the bound by {}", -worst_margin);
    assert!(min_cos > 0.5, "direction cosine {min_cos}");
    println!(
        "acceptance 06 slice-graph certificates: PASS (min bound margin {worst_margin:.3e}, min cos = {min_cos:.4} > 1/2)"
    );
}

#[test]
fn criterion_07_separation_certificates() {
    let mut min_ratio = f64::INFINITY;
    for a in GRID_A {
        for x in GRID_X {
            let cert = family::separation(fp(a), x, TOL).unwrap();
            assert!(
                cert.holds(),
                "separation fails at a={a}, x={x}: measured {} vs bound {}",
                cert.measured_separation,
                cert.analytic_lower_bound
            );
            min_ratio = min_ratio.min(cert.measured_separation / cert.analytic_lower_bound);
        }
    }
    let r0 = *R0_ESTIMATE;
    assert!(r0 > 0.005, "r0 estimate {r0}");
    println!(
        "acceptance 07 separation certificates: PASS (min measured/bound = {min_ratio:.3}, r0 = {r0:.5} > 0.005)"
    );
}

#[test]
fn criterion_08_winding() {
    let mut worst = 0.0f64;
    for t in [0.05, 0.1, 0.2] {
        let a = fp(t / 10.0);
        let turns = limit::winding_count(WindingSource::Family(a), t, 2.0 * t).unwrap();
        let err = (turns * 4.0 * PI * t - 1.0).abs();
        worst = worst.max(err);
        assert!(err <= 0.01, "t={t}: |turns 4 pi t - 1| = {err}");
        let exact = limit::winding_count(WindingSource::Limit, t, 2.0 * t).unwrap();
        let lim_err = (exact * 4.0 * PI * t - 1.0).abs();
        assert!(lim_err <= 1e-12, "limit winding identity off by {lim_err}");
    }
    println!("acceptance 08 winding: PASS (worst finite-a defect {worst:.5} <= 0.01, limit exact to 1e-12)");
}

#[test]
fn criterion_09_convergence() {
    let region = CompactSet { sign: Sign::Plus, x_lo: 0.125, x_hi: 0.5, nx: 17, ns: 9 };
    let rep = limit::convergence_report(&K_LIST, &region, TOL).unwrap();
    assert!(rep.strictly_decreasing(), "sup columns not strictly decreasing: {:?}", rep.entries);
    let (sp, sv) = rep.log_log_slopes().unwrap();
    assert!((1.5..=2.5).contains(&sp), "position slope {sp}");
    assert!((1.5..=2.5).contains(&sv), "v slope {sv}");
    println!(
        "acceptance 09 convergence: PASS (strictly decreasing, log-log slopes position {sp:.3}, v {sv:.3} in [1.5, 2.5])"
    );
}

#[test]
fn criterion_10_bounded_curvature_away_from_origin() {
    let rep = limit::blowup_report(&K_LIST, 0.1, 129, 41, 1.1, TOL).unwrap();
    let sups: Vec<f64> = rep.rows.iter().map(|r| r.sup_outside).collect();
    let ratio = rep.outside_ratio();
    println!(
        "acceptance 10 bounded curvature away from 0: sup |A|^2 outside B_0.1 per k = {sups:?}, max/min = {ratio:.3}"
    );
    assert!(rep.center_strictly_increasing());
    assert!(
        rep.passes(),
        "sup|A|^2 outside B_0.1 varies by {:.1}% across k = {K_LIST:?} (column {sups:?}); \
         the required < 10% stability is not attainable for this subsequence: at the ball \
         boundary x ~ 0.1 the curvature 2/(x^2+a_k^2)^2 still carries the a_k^2 = {:.2e} of \
         the k = 3 member, a 2.4x effect that only fades for k >= 12 (see the companion \
         stability test at larger k)",
        (ratio - 1.0) * 100.0,
        0.0753f64 * 0.0753
    );
}

/// Companion to criterion 10: the away-from-origin supremum does stabilize
/// to within 10% once the subsequence parameter is small against the ball
/// radius (a_k << delta), here for k in {12, 24, 48, 96}.
#[test]
fn curvature_sup_stabilizes_for_smaller_parameters() {
    let rep = limit::blowup_report(&[12, 24, 48, 96], 0.1, 129, 41, 1.1, TOL).unwrap();
    let ratio = rep.outside_ratio();
    assert!(rep.passes(), "ratio {ratio:.4} exceeds 1.1");
    println!("acceptance 10b curvature sup stability at k >= 12: PASS (max/min = {ratio:.4} <= 1.1)");
}

#[test]
fn criterion_11_conformality_and_minimality() {
    // analytic identities on the helicoid grid (squares form)
    let mut sup_dot = 0.0f64;
    let mut sup_sq = 0.0f64;
    for i in 0..33 {
        let x = -PI + TAU * i as f64 / 32.0;
        for j in 0..17 {
            let y = -1.0 + 2.0 * j as f64 / 16.0;
            let (dx, dy) = differential_fields(c(x, y));
            sup_dot = sup_dot.max((dx[0] * dy[0] + dx[1] * dy[1] + dx[2] * dy[2]).abs());
            let nx2 = dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2];
            let ny2 = dy[0] * dy[0] + dy[1] * dy[1] + dy[2] * dy[2];
            sup_sq = sup_sq.max((nx2 - ny2).abs());
        }
    }
    assert!(sup_dot <= 1e-12, "helicoid <Fx, Fy> sup {sup_dot}");
    assert!(sup_sq <= 1e-12, "helicoid |Fx|^2 - |Fy|^2 sup {sup_sq}");

    // family samples: dot product and norm equality (the squared form is
    // below f64 resolution at cosh^2 v ~ 5e3, the norms are not)
    let mut fam_dot = 0.0f64;
    let mut fam_norm = 0.0f64;
    for a in GRID_A {
        for x in GRID_X {
            let sl = family::slice(fp(a), x, 41, TOL).unwrap();
            for s in &sl.samples {
                let (dx, dy) = differential_fields(s.exponent);
                fam_dot = fam_dot.max((dx[0] * dy[0] + dx[1] * dy[1] + dx[2] * dy[2]).abs());
                let nx = (dx[0] * dx[0] + dx[1] * dx[1] + dx[2] * dx[2]).sqrt();
                let ny = (dy[0] * dy[0] + dy[1] * dy[1] + dy[2] * dy[2]).sqrt();
                fam_norm = fam_norm.max((nx - ny).abs());
            }
        }
    }
    assert!(fam_dot <= 1e-12, "family <Fx, Fy> sup {fam_dot}");
    assert!(fam_norm <= 1e-12, "family ||Fx| - |Fy|| sup {fam_norm}");

    // minimality proxy: the five-point Laplacian of the immersion shrinks
    // at second order when the grid step halves
    let lap = |eval: &dyn Fn(Complex64) -> [f64; 3], z: Complex64, h: f64| -> f64 {
        let center = eval(z);
        let xp = eval(z + c(h, 0.0));
        let xm = eval(z - c(h, 0.0));
        let yp = eval(z + c(0.0, h));
        let ym = eval(z - c(0.0, h));
        let mut worst = 0.0f64;
        for k in 0..3 {
            worst = worst.max(((xp[k] + xm[k] + yp[k] + ym[k] - 4.0 * center[k]) / (h * h)).abs());
        }
        worst
    };
    let heli = classics::helicoid();
    let eval_h = |z: Complex64| immerse(&heli, &l_path(z), 1e-13).unwrap();
    let r_h = lap(&eval_h, c(0.6, 0.5), 2e-2) / lap(&eval_h, c(0.6, 0.5), 1e-2);
    assert!(r_h >= 3.8, "helicoid Laplacian ratio {r_h}");
    let a = fp(0.1);
    let eval_f = |z: Complex64| family::immerse(a, z, 1e-13).unwrap();
    let r_f = lap(&eval_f, c(0.2, 0.004), 1e-3) / lap(&eval_f, c(0.2, 0.004), 5e-4);
    assert!(r_f >= 3.8, "family Laplacian ratio {r_f}");

    println!(
        "acceptance 11 conformality & minimality: PASS (dot {:.2e}, squares {sup_sq:.2e}, norms {fam_norm:.2e} <= 1e-12; Laplacian ratios {r_h:.2} and {r_f:.2} >= 3.8)",
        sup_dot.max(fam_dot)
    );
}

#[test]
fn criterion_12_multigraph_decomposition() {
    let r0 = *R0_ESTIMATE;
    let mut meshes = Vec::new();
    for a in GRID_A {
        let a = fp(a);
        let xs = phase_uniform_columns(a, 0.5, 129);
        meshes.push((
            format!("family a={}", a.value()),
            sample_mesh_columns(&MeshSource::Family(a), xs, 41, TOL).unwrap(),
            DecomposeOptions::new(r0),
        ));
    }
    for (sign, name) in [(Sign::Plus, "limit+"), (Sign::Minus, "limit-")] {
        meshes.push((
            name.to_string(),
            sample_mesh(&MeshSource::Limit { sign, x_min: 0.0625 }, 225, 41, TOL).unwrap(),
            DecomposeOptions::new(r0),
        ));
    }
    meshes.push((
        "helicoid".to_string(),
        sample_mesh(&MeshSource::Helicoid { x_half: PI, y_half: 1.0 }, 129, 17, TOL).unwrap(),
        DecomposeOptions::new(1.0f64.sinh()),
    ));

    for (name, mesh, opts) in &meshes {
        let mut min_tilt = f64::INFINITY;
        for s in &mesh.samples {
            if s.param.im != 0.0 {
                min_tilt = min_tilt.min(s.exponent.im.abs());
                assert!(s.exponent.im != 0.0, "{name}: vertical normal off the axis");
            }
        }
        let [plus, minus] = decompose_multigraph(mesh, opts)
            .unwrap_or_else(|e| panic!("{name}: decomposition failed: {e}"));
        let off_axis = mesh.samples.iter().filter(|s| s.param.im != 0.0).count();
        assert_eq!(plus.samples.len() + minus.samples.len(), off_axis, "{name}");
        println!(
            "acceptance 12 multigraph on {name}: zero violations, min off-axis |v| = {min_tilt:.3e}, winding = {:.2} turns",
            plus.turns()
        );
    }
    println!("acceptance 12 multigraph decomposition: PASS ({} meshes, zero graph violations)", meshes.len());
}

#[test]
fn criterion_13_spiral_containment_and_growth() {
    // 225 columns so the slab endpoints 1/16, 1/8, 1/4, 1/2 land on grid
    // columns exactly
    let plus = sample_mesh(&MeshSource::Limit { sign: Sign::Plus, x_min: 0.0625 }, 225, 41, TOL).unwrap();
    let minus = sample_mesh(&MeshSource::Limit { sign: Sign::Minus, x_min: 0.0625 }, 225, 41, TOL).unwrap();
    for s in &plus.samples {
        assert!(s.position[2] > 0.0 && s.position[2] <= 0.5, "upper leaf leaves its half-space");
    }
    for s in &minus.samples {
        assert!(s.position[2] < 0.0 && s.position[2] >= -0.5, "lower leaf leaves its half-space");
    }

    let [sheet, _] = decompose_multigraph(&plus, &DecomposeOptions::new(*R0_ESTIMATE)).unwrap();
    let mut ranges = Vec::new();
    for t in [0.25, 0.125, 0.0625] {
        let r = sheet.theta_range_in_slab(t, 2.0 * t).expect("slab is populated");
        ranges.push((t, r));
    }
    let mut ratios = Vec::new();
    for w in ranges.windows(2) {
        let ratio = w[1].1 / w[0].1;
        assert!((1.9..=2.1).contains(&ratio), "theta-range ratio {ratio} out of [1.9, 2.1]");
        ratios.push(ratio);
    }
    println!(
        "acceptance 13 spiral containment & growth: PASS (leaves strictly off the plane; theta ranges {:?}, halving ratios {ratios:?})",
        ranges
    );
}
