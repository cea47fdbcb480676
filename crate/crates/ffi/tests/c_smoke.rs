//! Compiles the C example against the generated header and the static
//! library, then runs it. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libthermosep_ffi.a");
    if !lib.exists() {
        // `cargo test` only builds the rlib; ask for the static library.
        let release = profile_dir.file_name().is_some_and(|n| n == "release");
        let mut build = Command::new(env!("CARGO"));
        build.args(["build", "-q", "-p", "thermosep-ffi", "--lib"]).current_dir(&manifest);
        if release {
            build.arg("--release");
        }
        let ok = build.status().map(|s| s.success()).unwrap_or(false);
        if !ok || !lib.exists() {
            eprintln!("static library not available at {}, skipping", lib.display());
            return;
        }
    }
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler available, skipping");
        return;
    };
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke program exited with {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<f64> = text.split_whitespace().map(|v| v.parse().unwrap()).collect();
    assert!((fields[0] - 59.68).abs() < 0.01, "{text}");
    assert!((fields[1] - 3435.0).abs() < 1.0, "{text}");
    assert!((fields[2] * 100.0 / (fields[0] * fields[0]) - 1.0).abs() < 0.05, "{text}");
}
