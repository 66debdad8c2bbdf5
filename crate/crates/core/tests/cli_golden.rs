use modzeros::cli::run_with;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let argv = std::iter::once("modzeros").chain(args.iter().copied());
    let code = run_with(argv, &mut o, &mut e);
    (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn expand_golden() {
    let (c, out, _) = call(&["expand", "--form", "E4", "--trunc", "2"]);
    assert_eq!((c, out.as_str()), (0, "1 + 240*q + 2160*q^2 + O(q^3)\n"));
    let (_, out, _) = call(&["expand", "--form", "Delta", "--trunc", "4", "--format", "json"]);
    assert_eq!(out, "{\"lead\":1,\"trunc\":4,\"coeffs\":[\"1\",\"-24\",\"252\",\"-1472\"]}\n");
    let (_, out, _) = call(&["expand", "--form", "j", "--trunc", "1", "--format", "csv"]);
    assert_eq!(out, "n,coeff\n-1,1\n0,744\n1,196884\n");
    // Delta E4^3 - 696 Delta^2 = q + (162252 + 696 * 48) q^3 + ...
    let (_, out, _) = call(&["expand", "--form", "g", "--k", "24", "--m", "1", "--trunc", "3"]);
    assert_eq!(out, "q + 195660*q^3 + O(q^4)\n");
}

#[test]
fn arc_table_csv() {
    let (c, out, _) = call(&["expand", "--form", "E4", "--arc", "--grid-step", "0.1", "--format", "csv"]);
    assert_eq!(c, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("theta,value,err"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 7);
    assert!((rows[0][0] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!((rows[0][1] + 1.4557629).abs() < 1e-6, "e4 at i is -E4(i)");
    assert!(rows.last().unwrap()[1].abs() < 1e-9);
}

#[test]
fn faber_golden() {
    let (c, out, _) = call(&["faber", "--k", "48", "--m", "1"]);
    assert_eq!(c, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["k"], 48);
    assert_eq!(v["m"], 1);
    assert_eq!(v["coeffs"], serde_json::json!(["-24903328", "931860", "-2136", "1"]));
    let (_, out, _) = call(&["faber", "--k", "48", "--m", "1", "--format", "text"]);
    assert_eq!(out, "t^3 - 2136t^2 + 931860t - 24903328\n");
}

#[test]
fn roots_text() {
    let (c, out, _) = call(&["roots", "--k", "48", "--m", "1", "--format", "text"]);
    assert_eq!(c, 0);
    assert_eq!(out, "28.570329\n565.181405\n1542.248266\n");
}

#[test]
fn arc_zeros_schema() {
    let (c, out, _) = call(&["arc-zeros", "--k", "48", "--m", "1"]);
    assert_eq!(c, 0);
    let v = &json_lines(&out)[0];
    for key in ["id", "arc_angles", "faber_roots_in", "faber_roots_out", "nontrivial", "valence_ok", "cross_oracle"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["nontrivial"], 3);
    assert_eq!(v["valence_ok"], true);
    assert_eq!(v["cross_oracle"], true);
}

#[test]
fn verify_bounds_ledger() {
    let (c, out, err) = call(&["verify-bounds"]);
    assert_eq!(c, 0, "{err}");
    let lines = json_lines(&out);
    assert!(lines.len() > 100);
    for v in &lines {
        for key in ["name", "group", "claimed", "computed", "err", "relation", "satisfied", "method", "binding"] {
            assert!(v.get(key).is_some(), "missing {key} in {v}");
        }
        if v["binding"] == true {
            assert_eq!(v["satisfied"], true, "{v}");
        }
    }
    let (c, out, _) = call(&["verify-bounds", "--group", "constants"]);
    assert_eq!(c, 0);
    assert!(json_lines(&out).iter().all(|v| v["group"] == "constants"));
    assert_eq!(call(&["verify-bounds", "--group", "nope"]).0, 2);
}

#[test]
fn verify_thm2_table() {
    let (c, out, _) = call(&["verify-thm2", "--format", "csv"]);
    assert_eq!(c, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 85);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    assert_eq!(lines[1], "12,1,0,1,0,0,0,0,0,true");
}

#[test]
fn mrl_check_exit_status() {
    let (c, out, _) = call(&["mrl-check", "--k", "192", "--m", "1", "--grid-step", "0.01"]);
    assert_eq!(c, 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["satisfied"], true);
    assert_eq!(v["hypothesis"], true);
    assert_eq!(call(&["mrl-check", "--k", "192", "--m", "1", "--grid-step", "0"]).0, 2);
}

#[test]
fn dist_csv() {
    let (c, out, _) = call(&["dist", "--k-list", "120,240", "--bins", "5"]);
    assert_eq!(c, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "k,bin,count,discrepancy,max_bin_deviation");
    assert_eq!(lines.len(), 11);
    let total: usize = lines[1..6].iter().map(|l| l.split(',').nth(2).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 9);
}

#[test]
fn deterministic_output() {
    for args in [
        &["verify-bounds"][..],
        &["arc-zeros", "--k", "100", "--m", "2"],
        &["dist", "--k-list", "120,480"],
        &["miller", "--k", "36", "--gap"],
    ] {
        assert_eq!(call(args).1, call(args).1, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("modzeros-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f48.json");
    let (c, out, _) = call(&["faber", "--k", "48", "--m", "1", "--out", path.to_str().unwrap()]);
    assert_eq!((c, out.as_str()), (0, ""));
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"-24903328\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["faber", "--k", "48"],
        &["faber", "--k", "47", "--m", "1"],
        &["roots", "--k", "48", "--m", "7"],
        &["expand", "--form", "g", "--k", "24"],
        &["dist", "--k-list", "120", "--bins", "0"],
        &["miller", "--k", "24", "--format", "csv"],
    ] {
        assert_eq!(call(args).0, 2, "{args:?}");
    }
}

#[test]
fn help_lists_flags() {
    for sub in ["expand", "miller", "faber", "roots", "arc-zeros", "verify-bounds", "verify-thm2", "mrl-check", "dist"] {
        let (c, out, _) = call(&[sub, "--help"]);
        assert_eq!(c, 0);
        assert!(out.contains("--out"), "{sub}");
    }
}
