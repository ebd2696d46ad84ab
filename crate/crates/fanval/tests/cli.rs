use std::path::PathBuf;

use fanval::cli::run;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn fanval(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("fanval").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn fanval_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out) = fanval(&full);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn chi_of_boolean_arrangement() {
    let (code, out) = fanval(&["chi", "--arrangement", &data("boolean2.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "t^2 + 2t + 1");

    let (_, v) = fanval_json(&["chi", "--arrangement", &data("braid3.json")]);
    assert_eq!(v["whitney"], serde_json::json!([0, 2, 3, 1]));
    assert_eq!(v["routes_agree"], true);
}

#[test]
fn chi_csv() {
    let (code, out) = fanval(&["chi", "--arrangement", &data("generic3.json"), "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "k,w_k\n0,1\n1,3\n2,3\n3,1\n");
}

#[test]
fn regions_and_flats() {
    let (_, v) = fanval_json(&["regions", "--arrangement", &data("braid3.json")]);
    assert_eq!(v["count"], 6);
    let (_, v) = fanval_json(&["flats", "--arrangement", &data("braid3.json")]);
    let mobius: Vec<i64> = v["flats"].as_array().unwrap().iter().map(|f| f["mobius"].as_i64().unwrap()).collect();
    assert_eq!(mobius, [1, -1, -1, -1, 2]);
}

#[test]
fn projection_onto_wedge() {
    let (code, v) = fanval_json(&["project", "--cone", &data("wedge2.json"), "--point", "3,0"]);
    assert_eq!(code, 0);
    // nearest point of the ray through (2,1) to (3,0) is (12/5, 6/5)
    assert_eq!(v["projection"], serde_json::json!(["12/5", "6/5"]));
    assert_eq!(v["distance_sq"], "9/5");
}

#[test]
fn moreau_counts() {
    let (code, v) = fanval_json(&["moreau", "--cone", &data("orthant3.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["moreau_faces"], 27);
    assert_eq!(v["intervals"], 27);
}

#[test]
fn intrinsic_is_reproducible() {
    let args = ["intrinsic", "--cone", &data("halfspace3.json"), "-N", "5000", "--seed", "11", "--format", "json"];
    let (_, a) = fanval(&args);
    let (_, b) = fanval(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["samples"], 5000);
    let values = v["values"].as_array().unwrap();
    let sum: f64 = values.iter().map(|x| x.as_f64().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-12);

    let (_, trace) = fanval(&["intrinsic", "--cone", &data("halfspace3.json"), "-N", "100", "--trace", "--format", "csv"]);
    assert_eq!(trace.lines().count(), 21);
}

#[test]
fn vk_of_wedge() {
    let (code, v) = fanval_json(&["vk", "--cone", &data("wedge2.json"), "-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn exceptional_of_boolean() {
    let (_, v) = fanval_json(&["exceptional", "--arrangement", &data("boolean2.json")]);
    assert_eq!(v["normals"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn verify_reports() {
    for (theorem, input) in [
        ("key", "generic3.json"),
        ("vk-arr", "braid3.json"),
        ("ks-indicator", "boolean2.json"),
        ("polar-duality", "wedge2.json"),
        ("hug-kabluchko", "orthant3.json"),
        ("sommerville", "orthant3.json"),
        ("euler-involution", "wedge2.json"),
        ("moreau-iso", "halfspace3.json"),
        ("recovery", "orthant3.json"),
        ("zaslavsky", "quadrants.json"),
        ("klivans-swartz", "boolean2.json"),
    ] {
        let (code, v) = fanval_json(&["verify", "--theorem", theorem, "--input", &data(input), "-N", "20000"]);
        assert_eq!(code, 0, "{theorem}: {v}");
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["theorem"], theorem);
    }
    let (code, _) = fanval(&["verify", "--theorem", "vk-val", "--cone", &data("orthant3.json"), "--normal", "1,-1,0"]);
    assert_eq!(code, 0);
}

#[test]
fn key_on_a_line_and_halfplane_volumes() {
    let (code, out) = fanval(&["verify", "--theorem", "key", "--arrangement", &data("line.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS key"));

    let (_, v) = fanval_json(&["intrinsic", "--cone", &data("halfspace2.json"), "-N", "100000"]);
    for (k, want) in [(0, 0.0), (1, 0.5), (2, 0.5)] {
        let got = v["values"][k].as_f64().unwrap();
        let radius = v["ci_radius"][k].as_f64().unwrap();
        assert!((got - want).abs() <= radius, "v_{k} = {got}, want {want} ± {radius}");
    }
}

#[test]
fn exit_codes() {
    // missing file, wrong kind, malformed argument, bad flag value
    assert_eq!(fanval(&["chi", "--arrangement", &data("nope.json")]).0, 2);
    assert_eq!(fanval(&["chi", "--arrangement", &data("orthant3.json")]).0, 2);
    assert_eq!(fanval(&["project", "--cone", &data("wedge2.json"), "--point", "1,x"]).0, 2);
    assert_eq!(fanval(&["intrinsic", "--cone", &data("wedge2.json"), "-N", "0"]).0, 2);
    assert_eq!(fanval(&["verify", "--theorem", "key", "--input", &data("orthant3.json")]).0, 2);
    assert_eq!(fanval(&["moreau", "--cone", &data("orthant3.json"), "--format", "csv"]).0, 2);
}

#[test]
fn suite_subset() {
    let (code, out) = fanval(&["suite", "--only", "1,7"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("criterion  1 PASS"));
    assert!(lines[1].starts_with("criterion  7 PASS"));
}
