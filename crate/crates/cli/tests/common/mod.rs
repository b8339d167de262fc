//! Helpers shared by the CLI integration tests.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use steepwater_cli::pnm::{read_pgm, write_pgm, Pgm};

pub const BIN: &str = env!("CARGO_BIN_EXE_steepwater");

/// Runs the binary with `args`, optionally capping its threads.
pub fn steepwater(args: &[&str], threads: Option<usize>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("STEEPWATER_THREADS", n.to_string()),
        None => cmd.env_remove("STEEPWATER_THREADS"),
    };
    cmd.output().expect("binary runs")
}

pub fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

pub fn write_gray(path: &Path, width: usize, values: &[u8]) {
    let pgm = Pgm::new(
        width,
        values.len() / width,
        255,
        values.iter().map(|&v| v as u16).collect(),
    );
    std::fs::write(path, write_pgm(&pgm)).unwrap();
}

pub fn read_labels(path: &Path) -> Vec<u32> {
    let pgm = read_pgm(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(pgm.maxval, u16::MAX);
    pgm.samples.iter().map(|&s| s as u32).collect()
}

pub fn path_str(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Names of the files in `dir`, sorted.
pub fn listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}
