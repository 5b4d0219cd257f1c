//! Content-addressed store for extension results.
//!
//! An entry lives at `<dir>/<k[..2]>/<k>.json` where `k` hashes the spec
//! fingerprint, the per-ball limits and the ball. Entries are written to a
//! temporary file and renamed into place.

use std::fs;
use std::path::PathBuf;

use ballgraph::ball_tree::ExtensionCache;
use ballgraph::class_spec::Extensions;
use ballgraph::{CanonicalBall, EnumLimits};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "BALLGRAPH_CACHE_DIR";

pub struct DiskCache {
    dir: PathBuf,
    fingerprint: String,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    radius: usize,
    truncated: bool,
    codes: Vec<String>,
}

impl DiskCache {
    pub fn from_env(fingerprint: &str) -> Option<Self> {
        let dir = std::env::var_os(CACHE_ENV)?;
        Some(DiskCache {
            dir: dir.into(),
            fingerprint: fingerprint.to_string(),
        })
    }

    fn path(&self, ball: &CanonicalBall, limits: &EnumLimits) -> PathBuf {
        let mut h = Sha256::new();
        h.update(self.fingerprint.as_bytes());
        h.update(serde_json::to_vec(limits).expect("limits serialize"));
        h.update(ball.radius().to_le_bytes());
        h.update(ball.code());
        let key = hex::encode(h.finalize());
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }
}

impl ExtensionCache for DiskCache {
    fn load(&self, ball: &CanonicalBall, limits: &EnumLimits) -> Option<Extensions> {
        let text = fs::read_to_string(self.path(ball, limits)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.radius != ball.radius() + 1 {
            return None;
        }
        let balls = entry
            .codes
            .iter()
            .map(|c| CanonicalBall::from_code(entry.radius, &hex::decode(c).ok()?).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(Extensions {
            balls,
            truncated: entry.truncated,
        })
    }

    fn store(&self, ball: &CanonicalBall, limits: &EnumLimits, extensions: &Extensions) {
        let path = self.path(ball, limits);
        let entry = Entry {
            radius: ball.radius() + 1,
            truncated: extensions.truncated,
            codes: extensions
                .balls
                .iter()
                .map(|b| hex::encode(b.code()))
                .collect(),
        };
        let text = serde_json::to_string(&entry).expect("entry serializes");
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        // A failed write only costs a recomputation later.
        let _ = path
            .parent()
            .map(fs::create_dir_all)
            .transpose()
            .and_then(|_| fs::write(&tmp, text))
            .and_then(|_| fs::rename(&tmp, &path));
    }
}
