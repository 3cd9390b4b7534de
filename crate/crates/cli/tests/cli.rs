use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use grassvar::export::check_script;
use grassvar::Dialect;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("grassvar-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&p);
    let _ = fs::remove_file(&p);
    p
}

fn run(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_grassvar")).args(args).output().unwrap();
    let text = format!("{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
    (out.status.success(), text)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn grass_eqs_on_example() {
    let out = scratch("grass.txt");
    let (ok, msg) = run(&[
        "--presentation",
        path(&fixture("carlson.pres")),
        "--mode",
        "grass-eqs",
        "--skeleton",
        path(&fixture("example41.skel")),
        "--out",
        path(&out),
    ]);
    assert!(ok, "{msg}");
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("# grass: polynomials (9)"), "{text}");
    fs::remove_file(out).unwrap();
}

#[test]
fn projective_eqs_json() {
    let out = scratch("proj.json");
    let (ok, msg) = run(&[
        "--presentation",
        path(&fixture("a0.pres")),
        "--mode",
        "projective-eqs",
        "--skeleton",
        path(&fixture("a0_sigma.skel")),
        "--setting",
        "big",
        "--format",
        "json",
        "--out",
        path(&out),
    ]);
    assert!(ok, "{msg}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["systems"].as_array().is_some_and(|s| !s.is_empty()));
    fs::remove_file(out).unwrap();
}

#[test]
fn skeleta_into_directory() {
    let out = scratch("skeleta");
    let (ok, msg) = run(&[
        "--presentation",
        path(&fixture("carlson.pres")),
        "--mode",
        "skeleta",
        "--sseq",
        "1;1",
        "--out",
        path(&out),
    ]);
    assert!(ok, "{msg}");
    let mut names: Vec<String> =
        fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["skeleton_001.skel", "skeleton_002.skel"]);
    fs::remove_dir_all(out).unwrap();
}

#[test]
fn export_m2_script_is_well_formed() {
    let out = scratch("ideal.m2");
    let (ok, msg) = run(&[
        "--presentation",
        path(&fixture("a0.pres")),
        "--mode",
        "export",
        "--skeleton",
        path(&fixture("a0_sigma.skel")),
        "--setting",
        "big",
        "--format",
        "m2",
        "--out",
        path(&out),
    ]);
    assert!(ok, "{msg}");
    let summary = check_script(&fs::read_to_string(&out).unwrap(), Dialect::Macaulay2).unwrap();
    assert!(summary.generators > 0);
    assert!(summary.primality);
    fs::remove_file(out).unwrap();
}

#[test]
fn oracle_mode_succeeds() {
    let out = scratch("oracle.txt");
    let (ok, msg) = run(&[
        "--presentation",
        path(&fixture("carlson.pres")),
        "--mode",
        "oracle",
        "--dimvec",
        "3",
        "--points",
        "5",
        "--sequential",
        "--out",
        path(&out),
    ]);
    assert!(ok, "{msg}");
    let _ = fs::remove_file(out);
}

#[test]
fn missing_presentation_fails() {
    let (ok, _) = run(&["--presentation", "/nonexistent.pres", "--mode", "skeleta", "--sseq", "1", "--out", "/tmp/x"]);
    assert!(!ok);
}
