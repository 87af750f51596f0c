//! Content-addressed on-disk cache of JSON payloads.
//!
//! One file per entry, named by the SHA-256 of the canonical serialization of
//! `(operation, parameters)`. Writes go to a temp file and are renamed into
//! place. A file whose key or payload digest doesn't check out is a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "GRIFCALC_CACHE";
pub const DEFAULT_DIR: &str = ".grifcalc-cache";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub operation: String,
    pub params: Value,
    pub payload: Value,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    /// SHA-256 of the canonical payload.
    pub digest: String,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

/// Sorted-key compact JSON; `serde_json::Value` maps are ordered already.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

pub fn cache_key(operation: &str, params: &Value) -> String {
    sha256_hex(&canonical(&serde_json::json!({ "op": operation, "params": params })))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `--cache` flag, then `GRIFCALC_CACHE`, then `.grifcalc-cache/`.
    pub fn resolve(flag: Option<&Path>) -> Self {
        let dir = flag
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Cache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, operation: &str, params: &Value) -> Option<CacheEntry> {
        let key = cache_key(operation, params);
        let path = self.path(&key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("cache read {}: {e}", path.display());
                return None;
            }
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => {
                log::warn!("corrupt cache entry {}: {e}", path.display());
                return None;
            }
        };
        if entry.key != key
            || entry.operation != operation
            || entry.params != *params
            || entry.digest != sha256_hex(&canonical(&entry.payload))
        {
            log::warn!("cache entry {} failed its integrity check; ignoring", path.display());
            return None;
        }
        Some(entry)
    }

    pub fn put(&self, operation: &str, params: &Value, payload: Value) -> Result<CacheEntry> {
        let key = cache_key(operation, params);
        let entry = CacheEntry {
            digest: sha256_hex(&canonical(&payload)),
            key: key.clone(),
            operation: operation.to_string(),
            params: params.clone(),
            payload,
            created_at: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        };
        let io = |e: std::io::Error| Error::Io(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp).map_err(io)?;
            f.write_all(serde_json::to_string(&entry).expect("serializable").as_bytes())
                .map_err(io)?;
            f.sync_all().map_err(io)?;
        }
        fs::rename(&tmp, self.path(&key)).map_err(io)?;
        Ok(entry)
    }

    /// Cached payload for `(operation, params)`, computing and storing it on a
    /// miss. Storage failures are logged, never fatal.
    pub fn get_or_compute<F>(&self, operation: &str, params: &Value, compute: F) -> Result<Value>
    where
        F: FnOnce() -> Result<Value>,
    {
        if let Some(e) = self.get(operation, params) {
            log::debug!("cache hit {operation} {}", e.key);
            return Ok(e.payload);
        }
        let payload = compute()?;
        if let Err(e) = self.put(operation, params, payload.clone()) {
            log::warn!("cache write failed: {e}");
        }
        Ok(payload)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::HypersurfaceRing;
    use serde_json::json;

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let params = json!({"d": 3, "nvars": 9, "k": 3});
        assert!(cache.get("jring.basis", &params).is_none());

        let ring = HypersurfaceRing::fermat(3, 9);
        let basis: Vec<String> = ring.quotient_basis(3).monomials().iter().map(|m| m.to_string()).collect();
        let payload = json!({ "monomials": basis });
        let put = cache.put("jring.basis", &params, payload.clone()).unwrap();
        let got = cache.get("jring.basis", &params).unwrap();
        assert_eq!(got, put);
        assert_eq!(got.payload, payload);
        assert!(cache.get("jring.basis", &json!({"d": 3, "nvars": 9, "k": 4})).is_none());

        let path = dir.path().join(format!("{}.json", put.key));
        let text = std::fs::read_to_string(&path).unwrap().replace("x0*x1*x2", "x0*x1*x3");
        std::fs::write(&path, text).unwrap();
        assert!(cache.get("jring.basis", &params).is_none());
        std::fs::write(&path, "{not json").unwrap();
        assert!(cache.get("jring.basis", &params).is_none());
    }

    #[test]
    fn keys_are_order_independent() {
        let a: Value = serde_json::from_str(r#"{"x":1,"y":[1,2]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"y":[1,2],"x":1}"#).unwrap();
        assert_eq!(cache_key("op", &a), cache_key("op", &b));
        assert_ne!(cache_key("op", &a), cache_key("other", &a));
    }
}
