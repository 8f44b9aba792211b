use std::process::Command;

fn hsc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hsc")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn verify_all_small_field_passes() {
    let (code, out) = hsc(&["verify", "--q", "3", "--claim", "all"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(" PASS ")).count(), 13);
}

#[test]
fn unknown_claim_is_usage_error() {
    assert_eq!(hsc(&["verify", "--q", "3", "--claim", "nonsense"]).0, 2);
    assert_eq!(hsc(&["verify", "--q", "6"]).0, 2);
    assert_eq!(hsc(&["min-dist", "--q", "3", "--method", "guess"]).0, 2);
}

#[test]
fn build_code_writes_generator_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let (code, _) = hsc(&["build-code", "--q", "4", "--lambda", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let g = v["generator"].as_array().unwrap();
    assert_eq!(g.len(), 8);
    assert!(g.iter().all(|row| row.as_array().unwrap().len() == 52));
}

#[test]
fn min_dist_methods_agree() {
    for m in ["exhaustive", "columns", "bz", "auto"] {
        let (code, out) = hsc(&["min-dist", "--q", "3", "--method", m, "--format", "csv"]);
        assert_eq!(code, 0);
        let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(&row[..4], &["21", "5", "14", "14"], "{m}");
    }
}

#[test]
fn json_report_is_deterministic() {
    let a = hsc(&["verify", "--q", "3", "--claim", "structure", "--format", "json"]).1;
    let b = hsc(&["verify", "--q", "3", "--claim", "structure", "--format", "json"]).1;
    let strip = |s: &str| s.lines().filter(|l| !l.contains("elapsed_ms") && !l.contains(" ms")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn conics_lists_rich_conics() {
    let (code, out) = hsc(&["conics", "--q", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["max_incidence"], 7);
    assert_eq!(v["orbit_size"], 13);
}
