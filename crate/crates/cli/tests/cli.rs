use std::process::{Command, Output};

use serde_json::Value;
use unicover::PrecisionContext;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unicover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn str_at<'a>(v: &'a Value, key: &str) -> &'a str {
    v[key].as_str().unwrap_or_else(|| panic!("{key} is not a string"))
}

/// Every string that looks numeric must survive a parse and print cycle at
/// the active precision.
fn assert_round_trip(v: &Value, ctx: PrecisionContext) {
    match v {
        Value::String(s) if s.parse::<f64>().is_ok() => {
            assert_eq!(ctx.parse(s).unwrap().to_string(), *s);
        }
        Value::Number(n) => assert!(n.is_u64(), "binary float {n} in output"),
        Value::Array(a) => a.iter().for_each(|x| assert_round_trip(x, ctx)),
        Value::Object(o) => o.values().for_each(|x| assert_round_trip(x, ctx)),
        _ => {}
    }
}

#[test]
fn table1_rows_and_precision() {
    let v = json(&["table1", "--rows", "5", "--precision", "50"]);
    assert_eq!(v["schema"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let ctx = PrecisionContext::new(50).unwrap();
    let sci = |s: &str| ctx.parse(s).unwrap().to_scientific(13);
    assert_eq!(sci(str_at(&rows[2], "a")), "3.750723412843e-11");
    assert_eq!(sci(str_at(&rows[3], "a")), "8.454119457933e-21");
    assert_round_trip(&v, ctx);

    let one = json(&["table1", "--rows", "1"]);
    assert_eq!(one["rows"].as_array().unwrap().len(), 1);

    let low = json(&["table1", "--rows", "5", "--precision", "30"]);
    for (a, b) in rows.iter().zip(low["rows"].as_array().unwrap()) {
        for key in ["x", "a"] {
            assert_eq!(sci(str_at(a, key)), sci(str_at(b, key)));
        }
    }
}

#[test]
fn table1_text_and_usage_errors() {
    let out = run(&["table1", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1.339745962156e-1"));
    assert!(text.contains("4.288332272809e-40"));
    assert_eq!(code(&["table1", "--rows", "0"]), 2);
    assert_eq!(code(&["table1", "--precision", "20"]), 2);
    assert_eq!(code(&["table1", "--bogus"]), 2);
}

#[test]
fn area_reports_the_construction() {
    let v = json(&["area", "--sigma-deg", "1.3"]);
    assert!(str_at(&v, "area").starts_with("0.844115376859376"));
    assert!(str_at(&v, "angle_WYL_deg").starts_with("90.00593"));
    assert!(str_at(&v, "angle_MWY_deg").starts_with("122.9276"));
    assert_eq!(v["constraints_ok"], true);
    assert_eq!(v["wxy_in_Bprime"], true);
    for name in ["O", "N", "L", "M", "W", "X", "Y", "A1", "F1"] {
        assert!(v["points"][name]["x"].is_string(), "{name}");
    }
    assert_eq!(v["boundary"].as_array().unwrap().len(), 11);
    assert_round_trip(&v, PrecisionContext::new(50).unwrap());
}

#[test]
fn area_at_the_optimum_with_extra_digits() {
    let v = json(&["area", "--sigma-deg", "1.294389444703601012", "--precision", "100"]);
    assert!(str_at(&v, "area").starts_with("0.844115297128419059"));
    assert_round_trip(&v, PrecisionContext::new(100).unwrap());
}

#[test]
fn infeasible_slant_is_still_a_success() {
    let v = json(&["area", "--sigma-deg", "0.5"]);
    assert_eq!(v["constraints_ok"], false);
    let v = json(&["area", "--sigma-deg", "0.5", "--precision", "80"]);
    assert_eq!(v["constraints_ok"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["area", "--sigma-deg", "12"]), 2);
    assert_eq!(code(&["area", "--sigma-deg", "0"]), 2);
    assert_eq!(code(&["area", "--sigma-deg", "-1"]), 2);
    assert_eq!(code(&["area", "--sigma-deg", "abc"]), 2);
    assert_eq!(code(&["area"]), 2);

    let out = run(&["area", "--sigma-deg", "1e-45"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["error"], "degenerate");
    assert_eq!(err["schema"], 1);
    assert!(!err["points"].as_array().unwrap().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.json");
    assert_eq!(code(&["area", "--sigma-deg", "1.3", "-o", bad.to_str().unwrap()]), 4);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("area.json");
    assert_eq!(code(&["area", "--sigma-deg", "1.3", "-o", path.to_str().unwrap()]), 0);
    let stdout = run(&["area", "--sigma-deg", "1.3"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn optimize_finds_the_root() {
    let v = json(&["optimize", "--precision", "60"]);
    let ctx = PrecisionContext::new(60).unwrap();
    let sigma = ctx.parse(str_at(&v, "sigma_star_deg")).unwrap();
    assert_eq!(sigma.to_scientific(19), "1.294389444703601012e0");
    let area = ctx.parse(str_at(&v, "area")).unwrap();
    assert_eq!(area.to_scientific(18), "8.44115297128419059e-1");
    assert_eq!(v["all_constraints_verified"], true);
    assert_round_trip(&v, ctx);

    let narrow = json(&["optimize", "--precision", "60", "--bracket-deg", "1.29", "1.3"]);
    let other = ctx.parse(str_at(&narrow, "sigma_star_deg")).unwrap();
    assert_eq!(other.to_scientific(19), sigma.to_scientific(19));
    assert_eq!(code(&["optimize", "--bracket-deg", "1.4", "1.5"]), 2);
}

#[test]
fn validate_small_batch() {
    let args = ["validate", "--samples", "60", "--seed", "7", "--sigma-deg", "1.3", "--boundary-samples", "4000"];
    let out = run(&args);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["curves"], 60);
    assert_eq!(v["failures"], 0);
    assert!(v["worst_violation"].is_string());
    assert_eq!(run(&args).stdout, out.stdout);

    let mut mutated = args.to_vec();
    mutated.extend(["--inflate-wxy", "1000"]);
    let m = json(&mutated);
    assert!(m["failures"].as_u64().unwrap() > 0);
    assert!(m["witnesses"][0]["max_violation"].is_string());

    assert_eq!(code(&["validate", "--sigma-deg", "0.5", "--samples", "1"]), 2);
    assert_eq!(code(&["validate", "--samples", "1", "--inflate-wxy", "0.5"]), 2);
}

fn svg_doc(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let mut full = args.to_vec();
    full.extend(["-o", path.to_str().unwrap()]);
    assert_eq!(code(&full), 0);
    std::fs::read_to_string(path).unwrap()
}

fn circle(doc: &roxmltree::Document, name: &str) -> (f64, f64) {
    let node = doc
        .descendants()
        .find(|n| n.attribute("id") == Some(&format!("point-{name}")))
        .unwrap_or_else(|| panic!("point {name} missing"));
    let get = |a: &str| node.attribute(a).unwrap().parse::<f64>().unwrap();
    (get("cx"), get("cy"))
}

#[test]
fn svg_is_well_formed_with_true_arcs() {
    let text = svg_doc(&["svg", "--sigma-deg", "1.3"]);
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    let path = doc
        .descendants()
        .find(|n| n.attribute("id") == Some("boundary"))
        .unwrap();
    let d = path.attribute("d").unwrap();
    assert_eq!(d.matches(" A ").count(), 2);
    for label in ["A", "B", "C", "D", "E", "F"] {
        assert!(text.contains(&format!("id=\"triangle-{label}\"")));
    }
    // the whole hexagon is in frame at scale 1
    for v in ["A1", "B1", "C1", "D1", "E1", "F1"] {
        let (x, y) = circle(&doc, v);
        assert!((0.0..=800.0).contains(&x) && (0.0..=800.0).contains(&y), "{v}");
    }
}

#[test]
fn svg_zoom_frames_the_sliver() {
    let text = svg_doc(&["svg", "--sigma-deg", "1.3", "--zoom", "X", "--scale", "10"]);
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(circle(&doc, "X"), (400.0, 400.0));
    for name in ["W", "X", "Y"] {
        let (x, y) = circle(&doc, name);
        assert!((0.0..=800.0).contains(&x) && (0.0..=800.0).contains(&y), "{name} at {x},{y}");
    }
    let deep = svg_doc(&["svg", "--sigma-deg", "1.3", "--zoom", "X", "--scale", "1e5"]);
    let doc = roxmltree::Document::parse(&deep).unwrap();
    assert_eq!(circle(&doc, "X"), (400.0, 400.0));
    let arcs = doc
        .descendants()
        .find(|n| n.attribute("id") == Some("boundary"))
        .unwrap()
        .attribute("d")
        .unwrap()
        .matches(" A ")
        .count();
    assert_eq!(arcs, 2);

    let at = svg_doc(&["svg", "--zoom", "0,0", "--scale", "2"]);
    roxmltree::Document::parse(&at).unwrap();
}

#[test]
fn svg_rejects_unknown_points_and_bad_paths() {
    let out = run(&["svg", "--zoom", "Q"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr).unwrap();
    for name in ["O", "N", "L", "M", "W", "X", "Y", "A1", "F1"] {
        assert!(msg.contains(name));
    }
    assert_eq!(code(&["svg", "--scale", "-3"]), 2);
    assert_eq!(code(&["svg", "-o", "/proc/definitely/not/here.svg"]), 4);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["table1", "--rows", "5"],
        vec!["area", "--sigma-deg", "1.3"],
        vec!["svg", "--zoom", "W", "--scale", "100"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}
