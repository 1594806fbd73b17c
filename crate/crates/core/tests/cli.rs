use std::path::Path;
use std::process::{Command, Output};

use harmonic_maps::catalog::{make_named, CatalogEntry};
use harmonic_maps::radius_analysis::{convex_test_at_radius, starlike_test_at_radius};

fn hmap(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hmap"));
    cmd.args(args).env_remove("HMAP_TRUNC_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("hmap runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Row {
    curve: usize,
    kind: String,
    param: f64,
    u: f64,
    v: f64,
}

fn read_csv(path: &Path) -> Vec<Row> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("curve_id,kind,param,t,u,v"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Row {
                curve: f[0].parse().unwrap(),
                kind: f[1].to_string(),
                param: f[2].parse().unwrap(),
                u: f[4].parse().unwrap(),
                v: f[5].parse().unwrap(),
            }
        })
        .collect()
}

#[test]
fn radius_command_brackets_convexity_radius() {
    let o = hmap(&["radius", "--function", "F", "--kind", "convex", "--tol", "1e-6"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let json: serde_json::Value = serde_json::from_str(&out[..out.rfind('}').unwrap() + 1]).unwrap();
    let (lo, hi) = (json["r_lo"].as_f64().unwrap(), json["r_hi"].as_f64().unwrap());
    assert!(lo <= 2.0 - 3f64.sqrt() && 2.0 - 3f64.sqrt() <= hi);
    assert!(out.contains("0.26794"));
}

#[test]
fn classify_m_alpha_passes_for_f_i() {
    let o = hmap(&["classify", "--function", "f_alpha:0,1", "--check", "m-alpha"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"passed\": true"));
}

#[test]
fn classify_failure_exits_one() {
    // z + z^2/2 + ... is not covered by the weighted-sum test
    let o = hmap(&["classify", "--function", "L", "--check", "weighted-sums"], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.svg");
    let o = hmap(&["plot", "--function", "L", "--radii", "0.9", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("viewBox") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn csv_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = hmap(
            &["plot", "--function", "conv(F,L)", "--radii", "0.3,0.8", "--circles", "4", "--out", p.to_str().unwrap()],
            &[],
        );
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn identity_circles_in_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("id.csv");
    let o = hmap(&["plot", "--function", "identity", "--radii", "0.25,0.7", "--out", p.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0));
    let rows = read_csv(&p);
    let circles: Vec<&Row> = rows.iter().filter(|r| r.kind == "circle").collect();
    assert_eq!(circles.len(), 2 * 256);
    for r in circles {
        assert!(((r.u * r.u + r.v * r.v).sqrt() - r.param).abs() < 1e-12);
    }
}

#[test]
fn example22_outer_circle_is_not_starlike() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("ex22.csv");
    let o = hmap(
        &["plot", "--function", "example22", "--radii", "0.95", "--samples", "2048", "--out", p.to_str().unwrap()],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let rows = read_csv(&p);
    let circle: Vec<&Row> = rows.iter().filter(|r| r.curve == 0).collect();
    let backwards = circle
        .windows(2)
        .filter(|w| {
            let (a, b) = (w[0], w[1]);
            a.u * b.v - a.v * b.u < 0.0
        })
        .count();
    assert!(backwards > 0, "the radius vector turns backwards somewhere");
    let f = make_named(&CatalogEntry::Example22, 64).unwrap();
    assert!(!starlike_test_at_radius(&f, 0.95, 4096).unwrap().passed);
}

#[test]
fn f_convexity_circles() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("fc.csv");
    let radii = format!("{},0.5", 2.0 - 3f64.sqrt());
    let o = hmap(&["plot", "--function", "F", "--radii", &radii, "--out", p.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0));
    let rows = read_csv(&p);
    let mut params: Vec<f64> = rows.iter().filter(|r| r.kind == "circle").map(|r| r.param).collect();
    params.dedup();
    assert_eq!(params.len(), 2);
    let f = make_named(&CatalogEntry::F, 64).unwrap();
    assert!(convex_test_at_radius(&f, 2.0 - 3f64.sqrt() - 1e-9, 4096).unwrap().passed);
    assert!(!convex_test_at_radius(&f, 0.5, 4096).unwrap().passed);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hmap(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(hmap(&["radius", "--function", "F", "--kind", "round"], &[]).status.code(), Some(2));
    assert_eq!(hmap(&["radius", "--function", "nope", "--kind", "convex"], &[]).status.code(), Some(2));
    assert_eq!(hmap(&["plot", "--function", "F", "--radii", "1.5", "--out", "x.svg"], &[]).status.code(), Some(2));
    let o = hmap(&["convolve", "--left", "F", "--right", "L"], &[("HMAP_TRUNC_ORDER", "abc")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(hmap(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn truncation_order_from_environment() {
    let o = hmap(&["convolve", "--left", "L", "--right", "L", "--emit", "coeffs"], &[("HMAP_TRUNC_ORDER", "20")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,a_re,a_im,b_re,b_im");
    assert_eq!(lines.len(), 1 + 21);
    assert_eq!(lines[5], "4,6.25,0,2.25,0");
}

#[test]
fn convolve_report_is_json() {
    let o = hmap(&["convolve", "--left", "L", "--right", "F", "--emit", "report"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sense_preserving"]["passed"], serde_json::Value::Bool(true));
    assert_eq!(v["truncation_order"], 64);
}

#[test]
fn verify_exit_status_is_and_of_records() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["coefficients", "radii", "convolution"] {
        let p = dir.path().join(format!("{suite}.json"));
        let o = hmap(&["verify", "--suite", suite, "--out", p.to_str().unwrap()], &[]);
        let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let records = report["records"].as_array().unwrap();
        assert!(!records.is_empty());
        for r in records {
            for key in ["claim_id", "paper_anchor", "computed", "expected", "tolerance", "passed"] {
                assert!(r.get(key).is_some(), "{suite}: missing {key}");
            }
        }
        let all = records.iter().all(|r| r["passed"].as_bool().unwrap());
        assert_eq!(o.status.code(), Some(if all { 0 } else { 1 }), "{suite}");
    }
}
