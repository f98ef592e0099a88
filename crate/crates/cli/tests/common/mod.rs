//! Golden-file fixtures shared by the golden and acceptance targets.

use std::path::PathBuf;
use std::process::Command;

/// (fixture name, arguments, expected exit code)
pub const FIXTURES: &[(&str, &[&str], i32)] = &[
    ("walls_extremal_c2_4", &["walls", "2,0,-2,4@X2", "--rank-max", "4", "--beta-window=-2:-1/2"], 0),
    ("walls_structure_sheaf", &["walls", "1,0,0,0@X2"], 0),
    ("walls_spinor", &["walls", "2,-1,0,1/6@X2"], 0),
    ("walls_plot", &["walls", "2,-1,-1/2,5/3@X2", "--beta-window=-2:-1", "--samples", "8", "--format", "plot"], 0),
    ("c3max_x2_c1_0", &["c3max", "X2", "0", "--c2-range", "0:8"], 0),
    ("c3max_x2_c1_minus1_csv", &["c3max", "X2", "-1", "--c2-range", "0:8", "--format", "csv"], 0),
    ("c3max_x5_general_type", &["c3max", "X5", "0", "--c2-range", "1:6", "--general-type"], 0),
    ("dim_series_d", &["dim", "D@X2", "m=-1"], 0),
    ("dim_series_a_quadric", &["dim", "A@X2", "k=1", "m=-2"], 0),
    ("dim_series_f_p3_csv", &["dim", "F@P3", "k=1", "m=-2", "--format", "csv"], 0),
    ("classify_grassmannian", &["classify", "-1", "2", "@X2"], 0),
    ("classify_c2_4", &["classify", "0", "4", "@X2"], 0),
    ("classify_c2_7_csv", &["classify", "0", "7", "--format", "csv"], 0),
    ("verify_all_csv", &["verify", "--lemma", "all", "--format", "csv"], 0),
    ("verify_c2_4", &["verify", "--lemma", "0,-2"], 0),
    ("verify_c2_2_odd", &["verify", "--lemma", "-1,-1/2"], 0),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.out"))
}

pub fn run(args: &[&str]) -> (i32, Vec<u8>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tiltcalc")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, String::from_utf8_lossy(&out.stderr).into_owned())
}

/// Compares one fixture; with TILTCALC_BLESS set, rewrites it instead.
pub fn check(name: &str, args: &[&str], code: i32) -> Result<(), String> {
    let (got_code, stdout, stderr) = run(args);
    if got_code != code {
        return Err(format!("{name}: exit {got_code}, expected {code}; stderr: {stderr}"));
    }
    let path = golden_path(name);
    if std::env::var_os("TILTCALC_BLESS").is_some() {
        std::fs::write(&path, &stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read(&path).map_err(|e| format!("{name}: {e}"))?;
    if want != stdout {
        return Err(format!("{name}: output differs from {}", path.display()));
    }
    Ok(())
}
