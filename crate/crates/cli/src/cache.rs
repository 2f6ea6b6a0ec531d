//! Content-addressed result store. Keys hash the schema version together with
//! the configuration, so a schema bump or a config change misses cleanly.
//! Payloads live in framed binary blobs with a JSON sidecar per entry; a
//! corrupt or truncated blob reads as a miss and is overwritten on the next
//! store.

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::PathBuf;

use crate::record::SCHEMA_VERSION;

const MAGIC: &[u8; 4] = b"GFND";
const BLOB_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "GELFAND_CACHE_DIR";

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Flag beats the environment variable; with neither, caching is off.
    pub fn new(flag: Option<PathBuf>) -> Cache {
        let dir = flag.or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from));
        if let Some(d) = &dir {
            if let Err(e) = fs::create_dir_all(d) {
                eprintln!("warning: cannot create cache dir {}: {e}", d.display());
                return Cache { dir: None };
            }
        }
        Cache { dir }
    }

    /// Hash of the schema version and the config parts, separated by an
    /// unprintable byte so adjacent parts cannot collide by concatenation.
    pub fn key(parts: &[&str]) -> String {
        let mut hasher = Sha256::new();
        hasher.update(SCHEMA_VERSION.to_le_bytes());
        for p in parts {
            hasher.update([0x1f]);
            hasher.update(p.as_bytes());
        }
        hex::encode(hasher.finalize())
    }

    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let dir = self.dir.as_ref()?;
        let bytes = fs::read(dir.join(format!("{key}.bin"))).ok()?;
        let payload = unframe(&bytes)?;
        serde_json::from_slice(payload).ok()
    }

    pub fn store<T: Serialize>(&self, key: &str, config_echo: &[&str], value: &T) {
        let Some(dir) = self.dir.as_ref() else {
            return;
        };
        let payload = match serde_json::to_vec(value) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("warning: cache serialization failed: {e}");
                return;
            }
        };
        let mut blob = Vec::with_capacity(16 + payload.len());
        blob.extend_from_slice(MAGIC);
        blob.extend_from_slice(&BLOB_VERSION.to_le_bytes());
        blob.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        blob.extend_from_slice(&payload);
        let blob_name = format!("{key}.bin");
        let sidecar = serde_json::json!({
            "schema": SCHEMA_VERSION,
            "key": key,
            "config": config_echo,
            "blob": blob_name,
            "bytes": payload.len(),
        });
        if let Err(e) = fs::write(dir.join(&blob_name), &blob) {
            eprintln!("warning: cache write failed: {e}");
            return;
        }
        if let Err(e) = fs::write(
            dir.join(format!("{key}.json")),
            format!("{sidecar:#}\n"),
        ) {
            eprintln!("warning: cache sidecar write failed: {e}");
        }
    }
}

fn unframe(bytes: &[u8]) -> Option<&[u8]> {
    if bytes.len() < 16 || &bytes[..4] != MAGIC {
        return None;
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().ok()?);
    if version != BLOB_VERSION {
        return None;
    }
    let len = u64::from_le_bytes(bytes[8..16].try_into().ok()?) as usize;
    let payload = bytes.get(16..)?;
    if payload.len() != len {
        return None;
    }
    Some(payload)
}
