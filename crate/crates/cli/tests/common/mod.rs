#![allow(dead_code)]

use std::path::PathBuf;

use troplag_cli::app::{run, Outcome};

pub fn figures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../figures")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn figure(name: &str) -> String {
    figures().join(name).to_string_lossy().into_owned()
}

pub fn listing(dir: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(figures().join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "trop"))
        .collect();
    out.sort();
    out
}

pub const BUNDLED: [&str; 5] = [
    "fig1_left.trop",
    "fig1_right.trop",
    "fig2_klein.trop",
    "fig3_family2.trop",
    "fig4_cylinder.trop",
];

pub fn troplag(args: &[&str]) -> Outcome {
    troplag_with_stdin(args, "")
}

pub fn troplag_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let mut full = vec!["troplag"];
    full.extend_from_slice(args);
    run(full, &mut stdin.as_bytes())
}
