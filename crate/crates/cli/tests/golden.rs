//! Byte-for-byte comparison of emitted data against stored files.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dkforms"))
        .args(args)
        .env_remove("DKFORMS_CONSTANTS")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn golden(name: &str, args: &[&str]) {
    let (code, text) = run(args);
    assert_eq!(code, 0, "{args:?} exited with {code}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(text == want, "{name} differs from the stored output");
}

#[test]
fn clifford_at_xi_zero() {
    golden("clifford_xi_0.json", &["clifford", "--xi", "0"]);
    golden(
        "clifford_xi_0.csv",
        &["clifford", "--xi", "0", "--format", "csv"],
    );
}

#[test]
fn clifford_at_xi_half() {
    golden("clifford_xi_1_2.json", &["clifford", "--xi", "1/2"]);
}

#[test]
fn representations() {
    golden("rep_j_1_2.csv", &["rep", "--j", "1/2", "--format", "csv"]);
    golden("rep_j_1.json", &["rep", "--j", "1"]);
}

#[test]
fn harmonics() {
    golden(
        "harmonics_j_1_2_n_1_2.json",
        &["harmonics", "--j", "1/2", "--n", "1/2"],
    );
    golden(
        "harmonics_j_1_n_0.json",
        &["harmonics", "--j", "1", "--n", "0"],
    );
    golden(
        "harmonics_j_3_2_n_1_2.json",
        &["harmonics", "--j", "3/2", "--n", "1/2"],
    );
}

#[test]
fn spectrum_on_a_coarse_grid() {
    golden(
        "spectrum_l_1_n_1_2.csv",
        &[
            "spectrum",
            "--l",
            "1",
            "--n",
            "1/2",
            "--grid",
            "0.5:2:0.05",
            "--tol",
            "1e-3",
        ],
    );
}
