//! End-to-end tests of the `polycub` binary: rule export and re-use,
//! sample-file integration, the gauss and check subcommands, and the
//! weight-file path of `--weight`.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;

fn polycub(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_polycub"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = polycub(args);
    assert!(
        out.status.success(),
        "polycub {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn rule_csv_has_grid_rows_plus_center() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rule.csv");
    let path_str = path.to_str().unwrap();
    stdout_of(&[
        "rule", "--weight", "w1", "--N", "10", "--M", "9", "--K", "1", "--N1", "10", "--R", "1",
        "--format", "csv", "--out", path_str,
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,s,r,phi,x,y,weight");
    assert_eq!(lines.len(), 1 + 90 + 1, "header + 90 grid rows + center row");
    assert!(lines.last().unwrap().starts_with("0,0,0,0,0,0,"));
    assert!(text.ends_with('\n'));
    assert!(!text.contains('\r'));
}

#[test]
fn integrate_samples_of_ones_gives_2pi_for_w1() {
    let dir = tempfile::tempdir().unwrap();
    let rule_path = dir.path().join("rule.csv");
    stdout_of(&[
        "rule", "--weight", "w1", "--N", "25", "--M", "9", "--K", "1", "--N1", "25", "--format",
        "csv", "--out", rule_path.to_str().unwrap(),
    ]);

    let samples_path = dir.path().join("ones.csv");
    let mut text = String::from("m,s,value\n");
    for m in 1..=25 {
        for s in 1..=9 {
            text.push_str(&format!("{m},{s},1.0\n"));
        }
    }
    text.push_str("0,0,1.0\n");
    std::fs::write(&samples_path, text).unwrap();

    let out = stdout_of(&[
        "integrate",
        "--rule",
        rule_path.to_str().unwrap(),
        "--samples",
        samples_path.to_str().unwrap(),
    ]);
    let value: f64 = out.trim().parse().unwrap();
    assert!((value - 2.0 * PI).abs() <= 1e-10, "got {value}");
}

#[test]
fn integrate_fn_reproduces_the_paper_cell() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let rule_path = dir.path().join(format!("rule.{format}"));
        stdout_of(&[
            "rule", "--weight", "w1", "--N", "50", "--M", "25", "--K", "1", "--N1", "50",
            "--format", format, "--out", rule_path.to_str().unwrap(),
        ]);
        let out = stdout_of(&[
            "integrate",
            "--rule",
            rule_path.to_str().unwrap(),
            "--fn",
            "f0",
        ]);
        let value: f64 = out.trim().parse().unwrap();
        assert!(
            (value - 6.754424177151970).abs() <= 1e-11,
            "{format}: got {value:.15}"
        );
    }
}

#[test]
fn gauss_subcommand_emits_nodes_and_weights() {
    let out = stdout_of(&["gauss", "--weight", "w1", "--k", "0", "--ell", "1", "--N", "1"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "j,t,lambda");
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "1");
    let t: f64 = fields[1].parse().unwrap();
    let lambda: f64 = fields[2].parse().unwrap();
    assert!((t - 1.0 / 3.0).abs() <= 1e-14);
    assert!((lambda - 2.0 * (2.0 * PI).sqrt()).abs() <= 1e-13);
}

#[test]
fn check_subcommand_reports_nonnegative_slack() {
    let out = stdout_of(&["check", "--weight", "w2", "--N", "10", "--M", "25", "--K", "22"]);
    assert!(out.contains("lhs = "));
    assert!(out.contains("rhs = "));
    let slack_line = out.lines().find(|l| l.starts_with("slack = ")).unwrap();
    let slack: f64 = slack_line.trim_start_matches("slack = ").parse().unwrap();
    assert!(slack >= -1e-10);
}

#[test]
fn weight_flag_accepts_a_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let weight_path = dir.path().join("weight.json");
    // the w1 expansion, spelled out as a custom weight file
    std::fs::write(
        &weight_path,
        r#"{
  "R": 1.0,
  "terms": [
    { "k": 0, "ell": 1, "kind": "power", "c": 2.5066282746310002, "gamma": -1.0 },
    { "k": 1, "ell": 1, "kind": "power", "c": 1.7724538509055160, "gamma": 0.0 }
  ]
}"#,
    )
    .unwrap();
    let rule_path = dir.path().join("rule.json");
    stdout_of(&[
        "rule", "--weight", weight_path.to_str().unwrap(), "--N", "25", "--M", "9", "--K", "1",
        "--N1", "25", "--format", "json", "--out", rule_path.to_str().unwrap(),
    ]);
    let out = stdout_of(&[
        "integrate",
        "--rule",
        rule_path.to_str().unwrap(),
        "--fn",
        "f0",
    ]);
    let value: f64 = out.trim().parse().unwrap();
    assert!((value - 6.754423468244570).abs() <= 1e-11, "got {value:.15}");
}

#[test]
fn bench_md_table_matches_reference_layout() {
    let out = stdout_of(&[
        "bench", "--weight", "w1", "--fn", "f0", "--N", "10", "--M", "9", "--K", "1", "--format",
        "md",
    ]);
    assert!(out.contains("# f0 / w1 (K = 1)"));
    assert!(out.contains("## values"));
    assert!(out.contains("## errors"));
    assert!(out.contains("6.75436363942671"));
}

#[test]
fn center_node_rule_carries_a_center_weight() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rule.csv");
    stdout_of(&[
        "rule", "--weight", "w1", "--N", "10", "--M", "9", "--K", "1", "--N1", "10", "--center",
        "node", "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let center = text.lines().last().unwrap();
    let weight: f64 = center.rsplit(',').next().unwrap().parse().unwrap();
    assert!(weight != 0.0, "center-node policy must weight f(0)");
}

#[test]
fn malformed_inputs_fail_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let rule_path = dir.path().join("rule.csv");
    stdout_of(&[
        "rule", "--weight", "w1", "--N", "5", "--M", "9", "--K", "1", "--N1", "6", "--format",
        "csv", "--out", rule_path.to_str().unwrap(),
    ]);

    // empty samples file
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = polycub(&[
        "integrate",
        "--rule",
        rule_path.to_str().unwrap(),
        "--samples",
        empty.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty samples file"));

    // missing cell
    let partial = dir.path().join("partial.csv");
    std::fs::write(&partial, "m,s,value\n1,1,0.5\n0,0,1.0\n6,9,0.25\n").unwrap();
    let out = polycub(&[
        "integrate",
        "--rule",
        rule_path.to_str().unwrap(),
        "--samples",
        partial.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));

    // even M is rejected at rule build time
    let out = polycub(&[
        "rule", "--weight", "w1", "--N", "5", "--M", "8", "--K", "1", "--N1", "6", "--format",
        "csv", "--out", dir.path().join("x.csv").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}
