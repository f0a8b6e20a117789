use std::path::Path;
use std::process::{Command, Output};

fn cimlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cimlink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn ber_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "realizations = 3\nsymbols_per_realization = 10\n");
    let out = dir.path().join("out");
    let o = cimlink(&[
        "ber",
        "--config",
        &cfg,
        "--seed",
        "5",
        "--geometry",
        "URA,ULA",
        "--hardware",
        "OP,HE",
        "--nf",
        "6",
        "--power-range",
        "-20:-10:5",
        "--workers",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("ber.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "geometry,B,M,hardware,N_F,P_dBm,bits_total,bit_errors,ber,seed"
    );
    assert_eq!(lines.len(), 1 + 2 * 2 * 3);
    assert!(lines[1].starts_with("URA,2,4,OP,,-20,"));
    assert!(lines.iter().any(|l| l.starts_with("ULA,2,4,HE,6,-10,")));
    assert!(lines[1..].iter().all(|l| l.ends_with(",5")));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["seed"], 5);
    assert_eq!(manifest["config"]["hardware"][1], "HE(6)");
    assert!(manifest["version"].is_string());
}

#[test]
fn ber_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "realizations = 4\nsymbols_per_realization = 10\ngeometries = [\"CCA\"]\npower_dbm = [-15.0]\n",
    );
    let mut bodies = Vec::new();
    for (run, workers) in [("a", "1"), ("b", "3")] {
        let out = dir.path().join(run);
        let o = cimlink(&[
            "ber",
            "--config",
            &cfg,
            "--workers",
            workers,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        bodies.push(std::fs::read(out.join("ber.csv")).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "realisations = 3\n");
    let o = cimlink(&["ber", "--config", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("realisations"));
    assert!(!dir.path().join("o").exists());
}

#[test]
fn invalid_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o");
    let out = out.to_str().unwrap();
    for args in [
        vec!["ber", "--geometry", "XYZ", "--out", out],
        vec!["ber", "--hardware", "HE", "--out", out],
        vec!["ber", "--nf", "1", "--out", out],
        vec!["ber", "--power-range", "10:0:5", "--out", out],
    ] {
        assert!(!cimlink(&args).status.success(), "{args:?}");
    }
}

#[test]
fn pattern_emits_grid_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pat");
    let o = cimlink(&[
        "pattern",
        "--geometry",
        "URA",
        "--az",
        "0",
        "--el",
        "0",
        "--resolution",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = stdout(&o);
    assert!(table.contains("Directivity (dBi)"));
    assert!(table.contains("HPBW"));
    assert!(table.contains("ASLD (dB)"));
    assert_eq!(std::fs::read_to_string(out.join("summary.txt")).unwrap(), table);

    let csv = std::fs::read_to_string(out.join("pattern_URA_az0_el0.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "az_deg,el_deg,directivity_dbi");
    assert_eq!(lines.count(), 360 * 180);
}

#[test]
fn codebook_reports_quantization_error() {
    let o = cimlink(&[
        "codebook",
        "--geometry",
        "ULA",
        "--hardware",
        "OP,HE(4)",
        "--order",
        "4",
        "--seed",
        "3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("ULA: N = 82"));
    assert!(text.contains("HE(4), B = 4"));
    // HE(4) has a 45 degree step, OP realizes phases exactly
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter_map(|l| {
            let v: Vec<f64> = l.split_whitespace().filter_map(|t| t.parse().ok()).collect();
            (v.len() == 6).then_some(v)
        })
        .collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[..4].iter().all(|r| r[4] < 1e-9 && r[5] < 1e-9));
    assert!(rows[4..].iter().all(|r| r[4] < 45.0 && r[5] < 45.0 && r[4] > 0.0));
}

#[test]
fn verify_passes() {
    let o = cimlink(&["verify", "--seed", "2"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("[PASS] fps-exhaustive"));
    assert!(!text.contains("[FAIL]"));
}
