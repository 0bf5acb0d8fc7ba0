use covariant_forge::verifier::verify_free_generation;
use covariant_forge::{v3_free_basis, Prime};
use covariant_forge_cli::{run_with, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("covariant-forge").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn verify_v2_small() {
    let (code, out, _) = call(&["verify", "--p", "3", "--m", "2", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["schema"], "covariant-forge/1");
    assert_eq!(v["cutoff"], 9);
}

#[test]
fn generators_base_case() {
    let (code, out, _) = call(&["generators", "--p", "5", "--m", "3", "--n", "1"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    assert_eq!(gens[0]["coeffs"], serde_json::json!(["1"]));
    assert_eq!(gens[1]["coeffs"], serde_json::json!(["x2^5 + 4*x2*x3^4"]));
    assert_eq!(v["algebra"], serde_json::json!(["a1", "a2", "a3"]));
}

#[test]
fn hilbert_kernel_series() {
    let (code, out, _) = call(&[
        "hilbert",
        "--p",
        "5",
        "--m",
        "3",
        "--n",
        "3",
        "--max-degree",
        "6",
    ]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["numerator"], "1 + 2*t + 2*t^4 + t^5");
    assert_eq!(v["expansion"], serde_json::json!([1, 3, 4, 6, 9, 13, 18]));
    assert_eq!(v["routes_agree"], true);
}

#[test]
fn hilbert_printed_multiplicity_has_negative_constant() {
    let args = [
        "hilbert",
        "--p",
        "5",
        "--m",
        "3",
        "--series",
        "multiplicity",
        "--k",
        "1",
    ];
    let (_, out, _) = call(&[&args[..], &["--as-printed"]].concat());
    assert_eq!(json(&out)["expansion"][0], -1);
    let (_, out, _) = call(&args);
    assert_eq!(json(&out)["expansion"][0], 1);
}

#[test]
fn generators_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.json");
    let path_s = path.to_str().unwrap();
    let args = [
        "generators",
        "--p",
        "5",
        "--m",
        "3",
        "--n",
        "4",
        "--set",
        "completed",
        "--output",
        path_s,
    ];
    let (code, _, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = call(&["verify", "--generators", path_s]);
    assert_eq!(code, EXIT_OK);
    let in_process =
        verify_free_generation(&v3_free_basis(Prime::new(5).unwrap(), 4).unwrap(), 16).unwrap();
    assert_eq!(json(&out), serde_json::to_value(&in_process).unwrap());
}

#[test]
fn nested_v3_set_fails_verification() {
    let (code, out, _) = call(&["verify", "--p", "5", "--m", "3", "--n", "2"]);
    assert_eq!(code, EXIT_FAIL);
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["degrees"][5]["free"], false);
}

#[test]
fn mutated_fixture_exits_one() {
    let (code, out, _) = call(&[
        "verify",
        "--generators",
        &fixture("s4_p5_missing_generator.json"),
    ]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn all_checks_combined() {
    let (code, out, _) = call(&[
        "verify",
        "--p",
        "5",
        "--m",
        "2",
        "--n",
        "3",
        "--check",
        "all",
        "--samples",
        "30",
    ]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    for key in ["free", "hilbert", "weights"] {
        assert_eq!(v["reports"][key]["pass"], true, "{key}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--p",
        "5",
        "--m",
        "3",
        "--n",
        "3",
        "--check",
        "all",
        "--set",
        "completed",
        "--samples",
        "20",
    ];
    let first = call(&args);
    let second = call(&args);
    assert_eq!(first.0, EXIT_OK);
    assert_eq!(first, second);
}

#[test]
fn invalid_arguments_exit_two() {
    for args in [
        vec!["verify", "--p", "4"],
        vec!["verify", "--p", "5", "--m", "4"],
        vec!["verify", "--p", "5", "--n", "0"],
        vec!["verify", "--p", "5", "--n", "6"],
        vec!["verify", "--p", "3", "--max-degree", "16"],
        vec!["generators", "--p", "5", "--m", "3", "--n", "5"],
        vec!["hilbert", "--p", "5", "--series", "multiplicity"],
        vec!["expand-norm", "--p", "2"],
        vec!["verify"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, _, _) = call(&["verify", "--generators", "/nonexistent/file.json"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn expand_norm_and_decompose() {
    let (code, out, _) = call(&["expand-norm", "--p", "11"]);
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["reconstruction_matches"], true);
    assert_eq!(
        v["d1_norm_not_divisible_by_x3_power"]
            .as_array()
            .unwrap()
            .len(),
        5
    );

    let (code, out, _) = call(&["decompose", "--p", "3", "--m", "3", "--max-degree", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["tables"][2]["mu"], serde_json::json!([0, 0, 2]));
}

#[test]
fn text_formats() {
    let (code, out, _) = call(&[
        "hilbert",
        "--p",
        "3",
        "--format",
        "text",
        "--n",
        "2",
        "--max-degree",
        "4",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("H(t) = "));
    let (_, out, _) = call(&["verify", "--p", "3", "--n", "2", "--format", "text"]);
    assert!(out.trim_end().ends_with("PASS"));
}
