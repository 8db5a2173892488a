mod common;

use std::fs;

use common::{code, sopq, stdout, validate, Fixture};
use serde_json::{json, Value};

fn build_model(fx: &Fixture, p: usize, q: usize, seed: &str) -> std::path::PathBuf {
    let curve = fx.curve(2);
    // W₀ = K ⊕ K⁻¹ ⊕ O^{n−2}
    let n = q - p + 1;
    let w0 = fx.write(
        "w0.json",
        &json!({"hyperbolic_twists": [1], "trivial_count": n - 2}),
    );
    let mut twists = vec![p as i64 - 1, p as i64 + 1];
    twists.extend(std::iter::repeat_n(p as i64, n - 2));
    let eta_p = fx.write("eta_p.json", &common::eta_p_coords(&twists, 2, 4));
    let out = fx.path("model.json");
    let o = sopq(&[
        "model",
        "build",
        "--p",
        &p.to_string(),
        "--q",
        &q.to_string(),
        "--genus",
        "2",
        "--f",
        curve.to_str().unwrap(),
        "--w0",
        w0.to_str().unwrap(),
        "--eta-p",
        eta_p.to_str().unwrap(),
        "--seed",
        seed,
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn atlas_count_reports_96() {
    let o = sopq(&["atlas", "count", "--p", "3", "--q", "5", "--genus", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("total: 96"));
    let o = sopq(&[
        "atlas", "count", "--p", "3", "--q", "5", "--genus", "2", "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["totals"]["total"], "96");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&sopq(&["atlas", "count", "--p", "3"])), 2);
    assert_eq!(
        code(&sopq(&[
            "atlas", "count", "--p", "3", "--q", "5", "--genus", "2", "--bogus"
        ])),
        2
    );
    assert_eq!(
        code(&sopq(&[
            "atlas", "count", "--p", "2", "--q", "2", "--genus", "2"
        ])),
        2
    );
    assert_eq!(
        code(&sopq(&["model", "verify", "/nonexistent/model.json"])),
        2
    );
    let fx = Fixture::new();
    let curve = fx.curve(2);
    // curve genus disagrees with --genus
    let o = sopq(&[
        "curve",
        "basis",
        "--genus",
        "3",
        "--f",
        curve.to_str().unwrap(),
        "--m",
        "2",
    ]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    // neither --diffs nor --seed
    let o = sopq(&[
        "hitchin",
        "roundtrip",
        "--p",
        "3",
        "--genus",
        "2",
        "--f",
        curve.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn curve_basis_lists_riemann_roch_many() {
    let fx = Fixture::new();
    let curve = fx.curve(3);
    let o = sopq(&[
        "curve",
        "basis",
        "--genus",
        "3",
        "--f",
        curve.to_str().unwrap(),
        "--m",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("dim H^0(K^3) = 10\n"));
    assert_eq!(out.lines().count(), 11);
}

#[test]
fn hitchin_roundtrip_with_seed_and_file() {
    let fx = Fixture::new();
    let curve = fx.curve(2);
    let o = sopq(&[
        "hitchin",
        "roundtrip",
        "--p",
        "3",
        "--genus",
        "2",
        "--f",
        curve.to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.ends_with("PASS\n"));
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(
        lines[0].split_once(" in ").unwrap().1.trim(),
        lines[1].split_once(" out ").unwrap().1.trim()
    );

    let diffs = fx.write(
        "diffs.json",
        &json!([["1/2", "0", "-3"], ["1", "0", "0", "2/7", "0", "0", "1"]]),
    );
    let o = sopq(&[
        "hitchin",
        "roundtrip",
        "--p",
        "3",
        "--genus",
        "2",
        "--f",
        curve.to_str().unwrap(),
        "--diffs",
        diffs.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["input"], v["output"]);
    assert_eq!(v["input"][0], json!(["1/2", "0/1", "-3/1"]));

    let bad = fx.write("bad.json", &json!([["1/2"]]));
    let o = sopq(&[
        "hitchin",
        "roundtrip",
        "--p",
        "3",
        "--genus",
        "2",
        "--f",
        curve.to_str().unwrap(),
        "--diffs",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn model_build_verify_charpoly() {
    let fx = Fixture::new();
    let model = build_model(&fx, 3, 5, "11");
    let o = sopq(&["model", "verify", model.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("SKIP polystability"));
    let o = sopq(&["model", "charpoly", model.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
    assert_eq!(v["pfaffian"]["twist"], 4);
}

#[test]
fn label_level_torsion_is_rejected() {
    let fx = Fixture::new();
    let curve = fx.curve(2);
    let w0 = fx.write(
        "w0.json",
        &json!({"hyperbolic_twists": [], "trivial_count": 2, "torsion_label": "0100"}),
    );
    let eta_p = fx.write("eta_p.json", &common::eta_p_coords(&[3, 3], 2, 0));
    let o = sopq(&[
        "model",
        "build",
        "--p",
        "3",
        "--q",
        "4",
        "--genus",
        "2",
        "--f",
        curve.to_str().unwrap(),
        "--w0",
        w0.to_str().unwrap(),
        "--eta-p",
        eta_p.to_str().unwrap(),
        "--seed",
        "1",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("label-level only"));
}

#[test]
fn corrupted_model_exits_1_naming_the_check() {
    let fx = Fixture::new();
    let model = build_model(&fx, 3, 4, "3");
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap();
    // first unit entry of the σ block sits at row 1, column q−p+1
    v["eta"]["entries"][1][2]["a"] = json!([]);
    let bad = fx.write("corrupted.json", &v);
    let o = sopq(&["model", "verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL section_block"), "{}", stdout(&o));

    let renamed = fs::read_to_string(&model)
        .unwrap()
        .replacen("\"eta\"", "\"etta\"", 1);
    fs::write(fx.path("renamed.json"), renamed).unwrap();
    let o = sopq(&["model", "verify", fx.path("renamed.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("etta"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let fx = Fixture::new();
    let curve = fx.curve(2);
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "atlas", "count", "--p", "2", "--q", "5", "--genus", "3", "--json",
        ],
        vec!["atlas", "dims", "--p", "4", "--q", "7", "--genus", "3"],
        vec![
            "hitchin",
            "roundtrip",
            "--p",
            "4",
            "--genus",
            "2",
            "--f",
            curve.to_str().unwrap(),
            "--seed",
            "99",
            "--json",
        ],
    ];
    for args in runs {
        let a = sopq(&args);
        let b = sopq(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(code(&a), 0);
    }
    let m1 = fs::read(build_model(&fx, 4, 6, "5")).unwrap();
    let m2 = fs::read(build_model(&fx, 4, 6, "5")).unwrap();
    assert_eq!(m1, m2);
}

#[test]
fn json_outputs_match_schemas() {
    let fx = Fixture::new();
    let curve = fx.curve(2);
    let c = curve.to_str().unwrap();
    let model = build_model(&fx, 3, 5, "2");
    let m = model.to_str().unwrap();
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec![
                "atlas", "count", "--p", "3", "--q", "5", "--genus", "2", "--json",
            ],
            "component_report.schema.json",
        ),
        (
            vec![
                "atlas", "count", "--p", "3", "--q", "4", "--genus", "2", "--json",
            ],
            "component_report.schema.json",
        ),
        (
            vec![
                "atlas", "count", "--p", "3", "--q", "3", "--genus", "4", "--json",
            ],
            "component_report.schema.json",
        ),
        (
            vec![
                "atlas", "count", "--p", "2", "--q", "4", "--genus", "2", "--json",
            ],
            "component_report.schema.json",
        ),
        (
            vec![
                "atlas", "dims", "--p", "3", "--q", "6", "--genus", "2", "--json",
            ],
            "dims.schema.json",
        ),
        (
            vec![
                "curve", "basis", "--genus", "2", "--f", c, "--m", "3", "--json",
            ],
            "basis.schema.json",
        ),
        (
            vec![
                "hitchin",
                "roundtrip",
                "--p",
                "3",
                "--genus",
                "2",
                "--f",
                c,
                "--seed",
                "1",
                "--json",
            ],
            "roundtrip.schema.json",
        ),
        (
            vec!["model", "verify", m, "--json"],
            "verification_report.schema.json",
        ),
        (
            vec!["model", "charpoly", m, "--json"],
            "charpoly.schema.json",
        ),
    ];
    for (args, schema) in cases {
        let o = sopq(&args);
        assert_eq!(code(&o), 0, "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        validate(&v, schema).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
    let v: Value = serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap();
    validate(&v, "model.schema.json").unwrap();
    // the validator does reject bad documents
    let mut broken = v.clone();
    broken["version"] = json!("2");
    assert!(validate(&broken, "model.schema.json").is_err());
    broken = v;
    broken["extra"] = json!(1);
    assert!(validate(&broken, "model.schema.json").is_err());
}
