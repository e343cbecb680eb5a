//! End-to-end tests of the command-line interface: caching, formats,
//! determinism, verification exit codes.

use std::path::Path;
use std::process::Command;

fn trxy() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trxy"))
}

fn write_airy(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("airy.json");
    let curve = trxy_core::curve::airy();
    std::fs::write(&path, curve.to_json()).unwrap();
    path
}

fn write_two_branch(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("two_branch.json");
    let curve = trxy_core::curve::sample_two_branch();
    std::fs::write(&path, curve.to_json()).unwrap();
    path
}

#[test]
fn tr_writes_cache_and_reuses_it() {
    let tmp = tempfile::tempdir().unwrap();
    let curve = write_airy(tmp.path());
    let cache = tmp.path().join("cache");
    let out = trxy()
        .args(["tr", "--curve"])
        .arg(&curve)
        .args(["--chi", "2", "--format", "json", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    // chi <= 2 produces (0,3), (1,1), (0,4), (1,2).
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("\"cached\":false"));
    assert!(!text.contains("\"cached\":true"));
    let files: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(files.len(), 4);

    // Second run: full cache hit.
    let out2 = trxy()
        .args(["tr", "--curve"])
        .arg(&curve)
        .args(["--chi", "2", "--format", "json", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    let text2 = String::from_utf8_lossy(&out2.stdout);
    assert!(out2.status.success());
    assert_eq!(text2.matches("\"cached\":true").count(), 4);

    // Corrupt one cache file: detected through the digest, recomputed.
    let victim = std::fs::read_dir(&cache).unwrap().next().unwrap().unwrap();
    let mangled = std::fs::read_to_string(victim.path())
        .unwrap()
        .replace("\"body_digest\": \"", "\"body_digest\": \"00");
    std::fs::write(victim.path(), mangled).unwrap();
    let out3 = trxy()
        .args(["tr", "--curve"])
        .arg(&curve)
        .args(["--chi", "2", "--format", "json", "--cache"])
        .arg(&cache)
        .output()
        .unwrap();
    let text3 = String::from_utf8_lossy(&out3.stdout);
    assert!(out3.status.success());
    assert_eq!(text3.matches("\"cached\":false").count(), 1);
    assert_eq!(text3.matches("\"cached\":true").count(), 3);
}

#[test]
fn deterministic_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let curve = write_airy(tmp.path());
    let run = |cache: &Path| {
        let out = trxy()
            .args(["tr", "--curve"])
            .arg(&curve)
            .args(["--chi", "1", "--format", "json", "--cache"])
            .arg(cache)
            .output()
            .unwrap();
        assert!(out.status.success());
        let mut bodies = Vec::new();
        for f in std::fs::read_dir(cache).unwrap() {
            let p = f.unwrap().path();
            bodies.push((p.file_name().unwrap().to_owned(), std::fs::read(p).unwrap()));
        }
        bodies.sort();
        bodies
    };
    let a = run(&tmp.path().join("c1"));
    let b = run(&tmp.path().join("c2"));
    assert_eq!(a, b, "outputs are not byte-identical across runs");
}

#[test]
fn psi_reports_known_value() {
    let out = trxy().args(["psi", "--g", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1/1152"), "expected <tau_4>_2 = 1/1152 in: {text}");
    let out_json = trxy()
        .args(["psi", "--g", "1", "--format", "json"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out_json.stdout);
    assert!(text.contains("\"value\": \"1/24\""));
}

#[test]
fn swap_of_airy_is_trivial() {
    let tmp = tempfile::tempdir().unwrap();
    let curve = write_airy(tmp.path());
    let out = trxy()
        .args(["swap", "--curve"])
        .arg(&curve)
        .args(["--g", "1", "--n", "1", "--cache"])
        .arg(tmp.path().join("cache"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("= 0"), "dual Airy one-point should vanish: {text}");
}

#[test]
fn mixed_both_attests_equality() {
    let tmp = tempfile::tempdir().unwrap();
    let curve = write_two_branch(tmp.path());
    let out = trxy()
        .args(["mixed", "--curve"])
        .arg(&curve)
        .args(["--g", "1", "--m", "1", "--n", "1", "--method", "both", "--cache"])
        .arg(tmp.path().join("cache"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("attestation: simple and standard recursions agree exactly"));
}

#[test]
fn closed_yz_requires_y_equals_z() {
    let tmp = tempfile::tempdir().unwrap();
    let airy = write_airy(tmp.path());
    let out = trxy()
        .args(["closed-yz", "--curve"])
        .arg(&airy)
        .args(["--g", "1", "--m", "1", "--cache"])
        .arg(tmp.path().join("cache"))
        .output()
        .unwrap();
    assert!(out.status.success());

    let two = write_two_branch(tmp.path());
    let out2 = trxy()
        .args(["closed-yz", "--curve"])
        .arg(&two)
        .args(["--g", "1", "--m", "1", "--cache"])
        .arg(tmp.path().join("cache2"))
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(1), "y != z must be a validation error");
}

#[test]
fn verify_passes_and_flags_corruption() {
    let tmp = tempfile::tempdir().unwrap();
    let curve = write_two_branch(tmp.path());
    let out = trxy()
        .args(["verify", "--curve"])
        .arg(&curve)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "verify failed: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out2 = trxy()
        .args(["verify", "--curve"])
        .arg(&curve)
        .args(["--corrupt", "--format", "pretty"])
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(2), "corruption must exit 2");
    let text = String::from_utf8_lossy(&out2.stdout);
    assert!(text.contains("FAIL"), "a named check must fail: {text}");
}

#[test]
fn invalid_curves_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    // x = z^3 has a non-simple critical point.
    let path = tmp.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name":"bad","x":{"num":["0","0","0","1"],"den":["1"]},"y":{"num":["0","1"],"den":["1"]}}"#,
    )
    .unwrap();
    let out = trxy()
        .args(["tr", "--curve"])
        .arg(&path)
        .args(["--chi", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Nonexistent file.
    let out2 = trxy()
        .args(["tr", "--curve", "/nonexistent.json", "--chi", "1"])
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(1));
}
