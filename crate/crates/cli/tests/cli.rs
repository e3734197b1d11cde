use std::fs;
use std::process::{Command, Output};

fn hardy_sign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy-sign"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_header_and_row() {
    let o = hardy_sign(&["eval", "30"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,z,zeta_abs,theta,s,n_raw,n_int,predicted_sign,sign_agrees"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "30.0000000000000");
    assert_eq!(row[6], "3");
    assert_eq!(row[8], "true");
}

#[test]
fn json_carries_schema_version() {
    for args in [
        &["eval", "100", "--format", "json"][..],
        &["zeros", "--to", "30", "--format", "json"],
        &["stats", "50", "--format", "json"],
        &["gram", "--to", "2", "--format", "json"],
    ] {
        let o = hardy_sign(args);
        assert!(o.status.success(), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["schema_version"], 1, "{args:?}");
    }
}

#[test]
fn zeros_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.tsv");
    let p = path.to_str().unwrap();
    let o = hardy_sign(&["zeros", "--to", "50", "--format", "tsv", "--out", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let file = fs::read(&path).unwrap();
    let again = hardy_sign(&["zeros", "--to", "50", "--format", "tsv"]);
    assert_eq!(file, again.stdout);
    let text = String::from_utf8(file).unwrap();
    assert_eq!(text.lines().next().unwrap(), "index\tgamma\tz_residual");
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn verify_passes_and_is_deterministic_across_thread_counts() {
    let args = ["verify", "--to", "60", "--samples", "200"];
    let a = hardy_sign(&args);
    assert!(a.status.success());
    let b = Command::new(env!("CARGO_BIN_EXE_hardy-sign"))
        .args(args)
        .env("HARDY_SIGN_THREADS", "1")
        .output()
        .unwrap();
    assert!(b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&a).lines().next().unwrap(),
        "t,z_sign,n_parity,predicted_sign,agrees,dist_to_nearest_gamma"
    );
}

#[test]
fn stats_and_gram() {
    let o = hardy_sign(&["stats", "100"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "T,total,even_count,ratio,floor_identity\n100.000000000000,29,14,0.482758620689655,true\n"
    );
    let o = hardy_sign(&["gram", "--from", "-1", "--to", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("n,gram_point,theta_residual\n-1,9.66690805"));
    assert!(text.contains("\n0,17.8455995"));
}

#[test]
fn errors_exit_nonzero_with_json_summary() {
    for args in [
        &["eval", "30", "--em-terms", "40"][..],
        &["stats", "-1"],
        &["gram", "--from", "3", "--to", "1"],
    ] {
        let o = hardy_sign(args);
        assert!(!o.status.success(), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_eq!(v["status"], "error");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_hardy-sign"))
        .args(["eval", "30"])
        .env("HARDY_SIGN_THREADS", "many")
        .output()
        .unwrap();
    assert!(!o.status.success());
}
