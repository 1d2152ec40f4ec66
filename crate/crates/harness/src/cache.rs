//! Content-addressed result cache.
//!
//! An entry is stored under `<dir>/<op>-<key>.json` where `key` hashes the op
//! id together with the canonical input text. The file carries a header line
//! with the SHA-256 of its payload; a mismatch on read counts as a miss.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Environment variable naming the cache directory.
pub const ENV_DIR: &str = "CIRCDIAM_CACHE_DIR";

const MAGIC: &str = "circdiam-cache 1";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Frames a payload with its hash.
pub fn encode(payload: &[u8]) -> Vec<u8> {
    let mut out = format!("{MAGIC}\n{}\n", sha256_hex(payload)).into_bytes();
    out.extend_from_slice(payload);
    out
}

/// Returns the payload when the frame is intact.
pub fn decode(bytes: &[u8]) -> Option<&[u8]> {
    let rest = bytes.strip_prefix(MAGIC.as_bytes())?.strip_prefix(b"\n")?;
    let nl = rest.iter().position(|&b| b == b'\n')?;
    let (hash, payload) = (&rest[..nl], &rest[nl + 1..]);
    (hash == sha256_hex(payload).as_bytes()).then_some(payload)
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `--cache-dir`, then the environment; `None` disables caching.
    pub fn from_config(flag: Option<&Path>) -> Option<Self> {
        flag.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(ENV_DIR).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(op: &str, input: &str) -> String {
        let mut h = Sha256::new();
        h.update(op.as_bytes());
        h.update([0]);
        h.update(input.as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path(&self, op: &str, input: &str) -> PathBuf {
        self.dir.join(format!("{op}-{}.json", Cache::key(op, input)))
    }

    pub fn get_bytes(&self, op: &str, input: &str) -> Option<Vec<u8>> {
        let raw = fs::read(self.path(op, input)).ok()?;
        decode(&raw).map(<[u8]>::to_vec)
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// into place, so readers only ever see complete entries.
    pub fn put_bytes(&self, op: &str, input: &str, payload: &[u8]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path(op, input);
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".tmp-{}-{n}", std::process::id()));
        let result = (|| {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&encode(payload))?;
            f.sync_all()?;
            fs::rename(&tmp, &target)
        })();
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        result
    }

    pub fn get<T: DeserializeOwned>(&self, op: &str, input: &str) -> Option<T> {
        serde_json::from_slice(&self.get_bytes(op, input)?).ok()
    }

    /// Best effort: a failed write leaves the cache unchanged.
    pub fn put<T: Serialize>(&self, op: &str, input: &str, value: &T) {
        if let Ok(bytes) = serde_json::to_vec(value) {
            let _ = self.put_bytes(op, input, &bytes);
        }
    }
}
