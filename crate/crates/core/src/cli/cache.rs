//! On-disk result cache: one JSON file per request digest, written atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Bump when rendered outputs change; old entries then miss.
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    verify: bool,
}

/// What happened on a lookup, for logging and tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheEvent {
    Hit,
    Miss,
    /// Entry unreadable, stale or for another request; recomputed.
    Replaced,
    /// `--verify-cache` recomputed and the entry matched.
    Verified,
    /// `--verify-cache` recomputed and the entry did not match; overwritten.
    Repaired,
}

pub fn digest(request: &Value) -> String {
    let canonical = json!({"format_version": CACHE_FORMAT_VERSION, "request": request}).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, verify: bool) -> Self {
        Self { dir: dir.into(), verify }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, request: &Value) -> PathBuf {
        self.dir.join(format!("{}.json", digest(request)))
    }

    fn load(&self, path: &Path, request: &Value) -> Option<std::result::Result<String, String>> {
        let raw = match fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => return Some(Err(e.to_string())),
        };
        let v: Value = match serde_json::from_str(&raw) {
            Ok(v) => v,
            Err(e) => return Some(Err(format!("corrupt entry: {e}"))),
        };
        if v["format_version"] != json!(CACHE_FORMAT_VERSION) {
            return Some(Err(format!("format version {} is stale", v["format_version"])));
        }
        if &v["request"] != request {
            return Some(Err("entry belongs to a different request".into()));
        }
        match v["output"].as_str() {
            Some(s) => Some(Ok(s.to_string())),
            None => Some(Err("entry has no output".into())),
        }
    }

    fn store(&self, path: &Path, request: &Value, output: &str) -> Result<()> {
        let io = |e: std::io::Error| Error::Internal(format!("cache write {}: {e}", path.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let entry = json!({"format_version": CACHE_FORMAT_VERSION, "request": request, "output": output});
        let tmp = path.with_extension(format!("json.tmp.{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp).map_err(io)?;
            f.write_all(entry.to_string().as_bytes()).map_err(io)?;
            f.sync_all().map_err(io)?;
        }
        fs::rename(&tmp, path).map_err(io)
    }

    /// Returns the cached output for `request`, computing and storing it when needed.
    pub fn get_or_compute(
        &self,
        request: &Value,
        compute: impl FnOnce() -> Result<String>,
    ) -> Result<(String, CacheEvent)> {
        let path = self.path_for(request);
        match self.load(&path, request) {
            Some(Ok(cached)) if !self.verify => Ok((cached, CacheEvent::Hit)),
            Some(Ok(cached)) => {
                let fresh = compute()?;
                if fresh == cached {
                    Ok((fresh, CacheEvent::Verified))
                } else {
                    log::warn!("cache entry {} disagrees with a recomputation; overwriting", path.display());
                    self.store(&path, request, &fresh)?;
                    Ok((fresh, CacheEvent::Repaired))
                }
            }
            Some(Err(why)) => {
                log::warn!("cache entry {}: {why}; recomputing", path.display());
                let fresh = compute()?;
                self.store(&path, request, &fresh)?;
                Ok((fresh, CacheEvent::Replaced))
            }
            None => {
                let fresh = compute()?;
                self.store(&path, request, &fresh)?;
                Ok((fresh, CacheEvent::Miss))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    #[test]
    fn hit_after_miss_without_recomputing() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), false);
        let req = json!({"command": "count", "n": 3});
        let calls = Cell::new(0);
        let f = || {
            calls.set(calls.get() + 1);
            Ok("5\n".to_string())
        };
        assert_eq!(c.get_or_compute(&req, f).unwrap(), ("5\n".into(), CacheEvent::Miss));
        assert_eq!(c.get_or_compute(&req, f).unwrap(), ("5\n".into(), CacheEvent::Hit));
        assert_eq!(calls.get(), 1);
    }

    #[test]
    fn corrupt_entries_are_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), false);
        let req = json!({"command": "count", "n": 4});
        fs::write(c.path_for(&req), "{not json").unwrap();
        let (out, ev) = c.get_or_compute(&req, || Ok("15\n".into())).unwrap();
        assert_eq!((out.as_str(), ev), ("15\n", CacheEvent::Replaced));
        assert_eq!(c.get_or_compute(&req, || Ok("x".into())).unwrap().1, CacheEvent::Hit);
    }

    #[test]
    fn stale_version_is_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), false);
        let req = json!({"command": "count", "n": 2});
        let old = json!({"format_version": 0, "request": req, "output": "wrong"});
        fs::write(c.path_for(&req), old.to_string()).unwrap();
        let (out, ev) = c.get_or_compute(&req, || Ok("2\n".into())).unwrap();
        assert_eq!((out.as_str(), ev), ("2\n", CacheEvent::Replaced));
    }

    #[test]
    fn verification_repairs_tampered_output() {
        let dir = tempfile::tempdir().unwrap();
        let req = json!({"command": "count", "n": 5});
        Cache::new(dir.path(), false).get_or_compute(&req, || Ok("52\n".into())).unwrap();
        let path = Cache::new(dir.path(), false).path_for(&req);
        let tampered = json!({"format_version": CACHE_FORMAT_VERSION, "request": req, "output": "51\n"});
        fs::write(&path, tampered.to_string()).unwrap();
        let v = Cache::new(dir.path(), true);
        assert_eq!(v.get_or_compute(&req, || Ok("52\n".into())).unwrap().1, CacheEvent::Repaired);
        assert_eq!(v.get_or_compute(&req, || Ok("52\n".into())).unwrap().1, CacheEvent::Verified);
    }

    #[test]
    fn digests_depend_on_the_request() {
        assert_ne!(digest(&json!({"n": 1})), digest(&json!({"n": 2})));
        assert_eq!(digest(&json!({"n": 1})).len(), 64);
    }

    #[test]
    fn no_temp_files_left_behind() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path(), false);
        c.get_or_compute(&json!({"a": 1}), || Ok("x".into())).unwrap();
        let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 1);
        assert!(names[0].to_string_lossy().ends_with(".json"));
    }
}
