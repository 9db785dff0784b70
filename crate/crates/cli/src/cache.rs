//! Append-only JSON-lines result cache keyed by a SHA-256 of the command
//! and its canonical inputs. Every I/O failure degrades to a warning.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::json;

pub const FILE_NAME: &str = "cache.jsonl";

pub struct Cache {
    path: PathBuf,
}

pub fn key(command: &str, inputs: &Value) -> String {
    let canonical = json::render(&json::object([("command", command.into()), ("inputs", inputs.clone())]), false);
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn warn(msg: impl std::fmt::Display) {
    eprintln!("warning: {msg}");
}

impl Cache {
    /// Opens (creating if needed) the cache under `dir`; `None` with a
    /// warning when the directory is unusable.
    pub fn open(dir: &Path) -> Option<Cache> {
        match fs::create_dir_all(dir) {
            Ok(()) => Some(Cache {
                path: dir.join(FILE_NAME),
            }),
            Err(e) => {
                warn(format!("cache disabled, cannot create {}: {e}", dir.display()));
                None
            }
        }
    }

    /// The most recent report stored under `key`.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn(format!("cannot read cache {}: {e}", self.path.display()));
                return None;
            }
        };
        let mut found = None;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry: Value = match serde_json::from_str(line) {
                Ok(v) => v,
                Err(_) => {
                    warn(format!("skipping corrupt cache line {}", i + 1));
                    continue;
                }
            };
            match (entry.get("key").and_then(Value::as_str), entry.get("report")) {
                (Some(k), Some(report)) if report.is_object() => {
                    if k == key {
                        found = Some(report.clone());
                    }
                }
                _ => warn(format!("skipping corrupt cache line {}", i + 1)),
            }
        }
        found
    }

    pub fn put(&self, key: &str, report: &Value) {
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = json::object([
            ("created_at", json::integer(created_at)),
            ("key", key.into()),
            ("report", report.clone()),
        ]);
        let line = json::render(&entry, false);
        let result = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .and_then(|mut f| writeln!(f, "{line}"));
        if let Err(e) = result {
            warn(format!("cannot write cache {}: {e}", self.path.display()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let k = key("analyze", &json::object([("poly", "-1,-1,1".into())]));
        assert_eq!(cache.get(&k), None);
        let report = json::object([("result", json::integer(7))]);
        cache.put(&k, &report);
        fs::OpenOptions::new()
            .append(true)
            .open(dir.path().join(FILE_NAME))
            .and_then(|mut f| writeln!(f, "{{not json"))
            .unwrap();
        assert_eq!(cache.get(&k), Some(report));
    }

    #[test]
    fn keys_depend_on_inputs() {
        let a = key("analyze", &json::object([("poly", "-1,-1,1".into())]));
        let b = key("analyze", &json::object([("poly", "-1,-2,1".into())]));
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }
}
