use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir")).args(args).output().expect("run casimir")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// (header, rows) of a CSV document, skipping `#` metadata.
fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (h, rows) = table(text);
    let i = h.iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn ideal_pressure_example() {
    let out = stdout(&["pressure", "--m1", "ideal", "--m2", "ideal", "--gap", "1um", "--temp", "0K"]);
    assert!(out.contains("# constants=CODATA-2018"));
    let p = column(&out, "P_total_Pa")[0];
    assert!((p / -1.3e-3 - 1.0).abs() < 5e-3);
}

#[test]
fn vacuum_gap_has_no_force() {
    let out = stdout(&["pressure", "--m1", "vacuum", "--m2", "gold", "--gap", "1um", "--temp", "300K"]);
    assert_eq!(column(&out, "P_total_Pa"), vec![0.0]);
}

#[test]
fn diagnose_reports_both_frequencies() {
    let out = stdout(&["diagnose", "--material", "gold", "--temp", "300K"]);
    let f_tau = column(&out, "inv_2pi_tau_Hz")[0];
    let f_t = column(&out, "omega_T_over_2pi_Hz")[0];
    assert!((f_tau / 5.9e12 - 1.0).abs() < 0.01);
    assert!((f_t / 6.25e12 - 1.0).abs() < 0.01);
}

#[test]
fn output_is_reproducible() {
    let args = ["sweep", "--m1", "gold", "--m2", "gold", "--gaps", "0.2um:2um:4", "--temps", "0K,300K"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(table(&String::from_utf8(a.stdout).unwrap()).1.len(), 8);
}

#[test]
fn bad_quantity_is_a_usage_error() {
    let out = run(&["pressure", "--m1", "ideal", "--m2", "ideal", "--gap", "1", "--temp", "0K"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "parse");
    assert!(err["message"].as_str().unwrap().contains("missing unit"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["pressure", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["message"].is_string());
}

#[test]
fn lossless_pair_on_real_axis_is_rejected() {
    let out = run(&[
        "pressure", "--m1", "gold-plasma", "--m2", "gold-plasma", "--gap", "1um", "--temp", "300K", "--engine", "real-axis",
    ]);
    assert_ne!(out.status.code(), Some(0));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["code"].is_string());
}

#[test]
fn json_mirrors_csv() {
    let base = ["free-energy", "--m1", "gold", "--m2", "ideal", "--gap", "500nm", "--temp", "300K"];
    let csv = stdout(&base);
    let mut with_json = base.to_vec();
    with_json.extend(["--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&with_json)).unwrap();
    let (header, rows) = table(&csv);
    let cols: Vec<&str> = doc["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(cols, header);
    for (j, cell) in rows[0].iter().enumerate() {
        match &doc["rows"][0][j] {
            Value::Null => assert!(cell.is_empty()),
            v => assert_eq!(v.as_f64().unwrap(), cell.parse::<f64>().unwrap()),
        }
    }
    for line in csv.lines().filter_map(|l| l.strip_prefix("# ")) {
        let (k, v) = line.split_once('=').unwrap();
        assert_eq!(doc["meta"][k], v);
    }
}

#[test]
fn map_writes_sidecar() {
    let dir = std::env::temp_dir().join(format!("casimir-map-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let sidecar = dir.join("map.json");
    let out = stdout(&[
        "map", "--m1", "gold", "--m2", "gold", "--gap", "150nm", "--omega-points", "4", "--kappa-points", "3",
        "--sidecar", sidecar.to_str().unwrap(),
    ]);
    // three rows (TE, TM, sum) per cell
    assert_eq!(table(&out).1.len(), 4 * 3 * 3);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(side["omega_grid_rad_s"].as_array().unwrap().len(), 4);
    assert_eq!(side["kappa_grid_per_m"].as_array().unwrap().len(), 3);
    assert!(side["overlays"]["diffusivity"].as_f64().unwrap() > 0.0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn perfect_conductor_map_is_zero() {
    let out = stdout(&["map", "--m1", "ideal", "--m2", "ideal", "--gap", "1um", "--omegas", "1THz,10THz", "--kappa-d", "0.1,1,10"]);
    assert!(column(&out, "value_si").iter().all(|&v| v == 0.0));
}

#[test]
fn material_file_is_accepted() {
    let path = std::env::temp_dir().join(format!("casimir-material-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"name": "au", "model": "drude", "omega_p_eV": 9.0, "tau_fs": 27.0}"#).unwrap();
    let from_file = stdout(&["pressure", "--m1", path.to_str().unwrap(), "--m2", "gold", "--gap", "1um", "--temp", "300K"]);
    let builtin = stdout(&["pressure", "--m1", "gold", "--m2", "gold", "--gap", "1um", "--temp", "300K"]);
    std::fs::remove_file(&path).unwrap();
    let a = column(&from_file, "P_total_Pa")[0];
    let b = column(&builtin, "P_total_Pa")[0];
    assert!((a / b - 1.0).abs() < 1e-12);
}

#[test]
fn sweep_correction_columns() {
    let out = stdout(&["sweep", "--m1", "ideal", "--m2", "ideal", "--gaps", "10um", "--temps", "300K", "--with-correction"]);
    let p = column(&out, "P_total_Pa")[0];
    let p0 = column(&out, "P_T0_Pa")[0];
    let dp = column(&out, "dP_thermal_Pa")[0];
    assert_eq!(dp, p - p0);
}
