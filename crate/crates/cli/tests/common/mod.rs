#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const GEX: &str = "a b 0\nb c 0\na c 0\nc d 0\na b 1\nb c 1\na c 1\na b 2\n";

pub fn spancore<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_spancore"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("spawning the binary")
}

pub fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

/// Every regular file under `dir` by name, with wall-clock fields removed
/// from JSON artifacts.
pub fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if !entry.file_type().unwrap().is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy().into_owned();
        let mut bytes = fs::read(entry.path()).unwrap();
        if name == "metrics.json" || name == "bench.json" {
            let mut v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
            let obj = v.as_object_mut().unwrap();
            obj.remove("elapsed_ms");
            obj.remove("peak_memory_kib");
            bytes = serde_json::to_vec(&v).unwrap();
        }
        out.insert(name, bytes);
    }
    out
}

pub fn data_lines(path: &Path) -> usize {
    fs::read_to_string(path).unwrap().lines().count().saturating_sub(1)
}
