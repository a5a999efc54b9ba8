//! End-to-end exercises of the `minidisk` command line through its public
//! entry point, including exit codes, file outputs, determinism, and the
//! config-file override order.

use std::fs;

use surface_io::cli::run_cli_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["minidisk"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn winding_prints_measured_and_limit_turns() {
    let (code, out, _) = run(&["winding", "--a", "0.001", "--t1", "0.1", "--t2", "0.2"]);
    assert_eq!(code, 0);
    assert!(out.contains("0.79572"), "measured turns missing: {out}");
    assert!(out.contains("0.79577"), "limit turns missing: {out}");
}

#[test]
fn winding_limit_flag() {
    let (code, out, _) = run(&["winding", "--limit", "--t1", "0.1", "--t2", "0.2"]);
    assert_eq!(code, 0);
    assert!(out.contains("limit turns"));
}

#[test]
fn winding_rejects_heights_out_of_range() {
    let (code, _, err) = run(&["winding", "--a", "0.01", "--t1", "0.3", "--t2", "0.6"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn unknown_flag_exits_2_with_usage() {
    let (code, _, err) = run(&["mesh", "--bogus"]);
    assert_eq!(code, 2);
    assert!(err.to_lowercase().contains("usage") || err.contains("unexpected"), "{err}");
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("minidisk"));
}

#[test]
fn missing_required_out_is_usage_error() {
    let (code, _, err) = run(&["mesh", "--a", "0.1"]);
    assert_eq!(code, 2);
    assert!(err.contains("--out"));
}

#[test]
fn family_parameter_out_of_range_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.obj");
    let (code, _, err) = run(&["mesh", "--a", "0.7", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("family parameter"));
}

#[test]
fn mesh_obj_export_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.obj");
    let (code, stdout, _) = run(&[
        "mesh", "--a", "0.1", "--nx", "9", "--ns", "5", "--format", "obj", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("wrote"));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 45);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 8 * 4);
}

#[test]
fn mesh_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&p1, &p2] {
        let (code, _, _) = run(&[
            "mesh", "--a", "0.05", "--nx", "7", "--ns", "5", "--format", "csv", "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let (b1, b2) = (fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    assert_eq!(b1, b2, "identical args must produce byte-identical output");
    let text = String::from_utf8(b1).unwrap();
    assert_eq!(text.split("\r\n").filter(|l| !l.is_empty()).count(), 7 * 5 + 1);
}

#[test]
fn limit_mesh_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("limit.ply");
    let (code, _, _) = run(&[
        "mesh", "--limit", "plus", "--nx", "9", "--ns", "5", "--format", "ply", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("ply\n"));
    assert!(text.contains("element vertex 45"));
}

#[test]
fn slice_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let (code, stdout, _) = run(&[
        "slice", "--a", "0.1", "--x", "0.25", "--n", "21", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("21 samples"));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.split("\r\n").filter(|l| !l.is_empty()).count(), 22);
}

#[test]
fn verify_acceptance_preset_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("r1.json"), dir.path().join("r2.json"));
    for p in [&p1, &p2] {
        let (code, stdout, _) = run(&["verify", "--grid-preset", "acceptance", "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0, "verify must pass: {stdout}");
        assert!(stdout.contains("PASS slice_graphs"));
        assert!(stdout.contains("PASS separation"));
    }
    assert_eq!(fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&p1).unwrap()).unwrap();
    assert_eq!(json["kind"], "embedding");
    assert!(json["parameters"]["r0_estimate"].as_f64().unwrap() > 0.005);
}

#[test]
fn verify_rejects_unknown_preset() {
    let (code, _, err) = run(&["verify", "--grid-preset", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("preset"));
}

#[test]
fn theorem_report_sections_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("theorem.json");
    let (code, stdout, _) = run(&[
        "theorem", "--k-list", "2,4", "--delta", "0.2", "--nx", "33", "--ns", "9",
        "--stability", "10", "--tol", "1e-10", "--out", out.to_str().unwrap(),
    ]);
    for name in [
        "curvature_blowup_at_origin",
        "curvature_away_from_origin",
        "multigraph_decomposition",
        "convergence_to_limit",
    ] {
        assert!(stdout.contains(name), "missing section line {name}: {stdout}");
    }
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["sections"].as_array().unwrap().len(), 4);
    let all_pass = json["sections"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["certificates"].as_array().unwrap())
        .all(|c| c["pass"].as_bool().unwrap());
    assert_eq!(code, if all_pass { 0 } else { 1 }, "exit code must track the certificates");
}

#[test]
fn converge_passes_on_decreasing_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("conv.json");
    let (code, stdout, _) = run(&[
        "converge", "--k-list", "6,12", "--xmin", "0.125", "--nx", "5", "--ns", "3", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["kind"], "convergence");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let cfg = dir.path().join("run.conf");
    fs::write(
        &cfg,
        format!("# slice defaults\na = 0.1\nx = 0.25\nn = 21\nout = {}\n", out.display()),
    )
    .unwrap();
    let (code, _, _) = run(&["slice", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        fs::read_to_string(&out).unwrap().split("\r\n").filter(|l| !l.is_empty()).count(),
        22
    );
    // the explicit flag wins over the config value
    let (code, _, _) = run(&["slice", "--config", cfg.to_str().unwrap(), "--n", "11"]);
    assert_eq!(code, 0);
    assert_eq!(
        fs::read_to_string(&out).unwrap().split("\r\n").filter(|l| !l.is_empty()).count(),
        12
    );
}

#[test]
fn config_file_syntax_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "this is not a key value line\n").unwrap();
    let (code, _, err) = run(&["winding", "--config", cfg.to_str().unwrap(), "--limit", "--t1", "0.1", "--t2", "0.2"]);
    assert_eq!(code, 2);
    assert!(err.contains("key=value"));
}
