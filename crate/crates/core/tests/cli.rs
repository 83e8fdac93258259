//! End-to-end runs of the command-line binary: exit statuses, record
//! format, and configuration diagnostics.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qdeform"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
}

#[test]
fn check_cocycle_passes_on_fixture() {
    let out = bin()
        .args(["check-cocycle", "--config"])
        .arg(config("example51_n3_l2.conf"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("PASS cocycle-condition"), "{stdout}");
    assert!(stdout.contains("not symmetric"), "{stdout}");
}

#[test]
fn records_format_is_line_oriented() {
    let out = bin()
        .args(["check-udf", "--ell", "2", "--format", "records"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    for line in stdout.lines() {
        let mut parts = line.split_whitespace();
        let name = parts.next().unwrap();
        let status = parts.next().unwrap();
        assert!(!name.is_empty());
        assert!(status == "PASS" || status == "FAIL", "{line}");
    }
    assert!(stdout.contains("udf-identity-ell-2 PASS"), "{stdout}");
}

#[test]
fn check_udf_generic_truncated() {
    let out = bin()
        .args(["check-udf", "--ell", "generic", "--trunc", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("udf-identity-generic-t4"), "{stdout}");
}

#[test]
fn module_algebra_and_assoc_on_small_sweeps() {
    for (cmd, needle) in [
        ("check-module-algebra", "module-algebra-factor-3"),
        ("check-assoc", "star-associativity"),
    ] {
        let out = bin()
            .args([cmd, "--max-degree", "2", "--config"])
            .arg(config("example51_n3_l2.conf"))
            .output()
            .unwrap();
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(out.status.success(), "{cmd}: {stdout}");
        assert!(stdout.contains(&format!("PASS {needle}")), "{stdout}");
    }
}

#[test]
fn mixed_factor_config_verifies() {
    let out = bin()
        .args(["check-assoc", "--max-degree", "2", "--config"])
        .arg(config("mixed_l3.conf"))
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("PASS factor-compatibility"), "{stdout}");
}

#[test]
fn weyl_star_command_output() {
    let out = bin()
        .args(["star", "--a", "x1", "--b", "x2", "--config"])
        .arg(config("weyl.conf"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), "x1 x2 + t^1 * (1)");
}

#[test]
fn hh2_reports_dimensions_and_certificates() {
    let out = bin()
        .args(["hh2", "--max-degree", "2", "--config"])
        .arg(config("example51_n3_l2.conf"))
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}");
    // identity component: each wedge pair carries two invariant
    // coefficients up to degree 2 (one linear, one the pair product)
    assert!(stdout.contains("g(0,0): dimension 6"), "{stdout}");
    assert!(stdout.contains("g(1,0): dimension 2"), "{stdout}");
    assert!(
        stdout.contains("PASS class-equals-operator-cocycle-factor-3"),
        "{stdout}"
    );
}

#[test]
fn chainmap_subcommand() {
    let out = bin()
        .args(["chainmap-test", "--max-degree", "2", "--config"])
        .arg(config("example51_n3_l2.conf"))
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.contains("PASS chain-map-squares"), "{stdout}");
}

#[test]
fn config_errors_exit_2_with_line_numbers() {
    let dir = std::env::temp_dir().join("qdeform-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_orders.conf");
    let text = std::fs::read_to_string(config("example51_n3_l2.conf"))
        .unwrap()
        .replace("factor = g(1,0); pair=1,2; q=z; s=1", "factor = g(1,0); pair=1,2; q=z; s=x3");
    std::fs::write(&path, text).unwrap();
    let out = bin()
        .args(["check-assoc", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line"), "{stderr}");
    assert!(stderr.contains("semi-invariant"), "{stderr}");
}

#[test]
fn incompatible_factors_exit_1() {
    // two valid factors for g and g^2 on Z/4: neither commuting nor a
    // g/g^-1 pair, so the compatibility gate fails
    let dir = std::env::temp_dir().join("qdeform-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("incompatible.conf");
    std::fs::write(
        &path,
        "\
[scalars]
root_order = 4
[space]
n = 2
[group]
orders = 4
[action]
matrix = 1,-1
[deformation]
factor = g(1); pair=1,2; q=z; s=1
factor = g(2); pair=1,2; q=z^2; s=1
[sweep]
max_degree = 2
",
    )
    .unwrap();
    let out = bin()
        .args(["check-assoc", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL factor-compatibility"), "{stdout}");
}

#[test]
fn taft_demo_reports_dimensions() {
    let out = bin().args(["taft-demo", "--t0", "1/2"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("radical dimension = 0"), "{stdout}");
    assert!(stdout.contains("undeformed radical dimension = 2"), "{stdout}");
    assert!(stdout.contains("gamma0 * gamma1 = t * (s1)"), "{stdout}");
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
