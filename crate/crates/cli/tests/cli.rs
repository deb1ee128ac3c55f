use std::fs;
use std::process::Command;

fn cfqmc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cfqmc"))
}

#[test]
fn study_from_config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let config = dir.path().join("study.toml");
    let defaults = cfqmc().arg("default-config").output().unwrap();
    assert!(defaults.status.success());
    fs::write(&config, &defaults.stdout).unwrap();

    let status = cfqmc()
        .args(["study", "--config"])
        .arg(&config)
        .args(["--methods", "mc,rqmc,rqmc-cf", "--budget-max", "512", "--replicates", "8"])
        .arg("--out-dir")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));

    let rows = fs::read_to_string(out.join("rows.csv")).unwrap();
    let data: Vec<&str> = rows.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "method,budget,rmse,std,mean_estimate,true_integral");
    assert_eq!(data.len(), 1 + 3 * 6);
    assert!(rows.contains("# replicates = 8"));
    assert!(out.join("slopes.csv").exists());
    assert!(out.join("plot.csv").exists());
}

#[test]
fn empty_methods_are_rejected_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let config = dir.path().join("bad.toml");
    let text = String::from_utf8(cfqmc().arg("default-config").output().unwrap().stdout).unwrap();
    let text =
        text.lines().map(|l| if l.starts_with("methods") { "methods = []" } else { l }).collect::<Vec<_>>().join("\n");
    fs::write(&config, text).unwrap();

    let res = cfqmc().args(["study", "--config"]).arg(&config).arg("--out-dir").arg(&out).output().unwrap();
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("methods"));
    assert!(!out.exists());
}

#[test]
fn unknown_function_fails() {
    let res = cfqmc().args(["study", "--fn", "nope", "--budget-max", "64"]).output().unwrap();
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn constant_function_reports_degenerate_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let res = cfqmc()
        .args(["study", "--fn", "constant", "--budget-max", "128", "--replicates", "3", "--out-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(res.status.success());
    let slopes = fs::read_to_string(dir.path().join("slopes.csv")).unwrap();
    assert!(slopes.lines().filter(|l| l.ends_with(",degenerate")).count() == 4, "{slopes}");
}
