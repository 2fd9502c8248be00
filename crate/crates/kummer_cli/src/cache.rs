//! On-disk cache of pipeline reports, keyed by the SHA-256 of the seed file
//! bytes and the trial count. Enabled by setting the cache-directory variable.

use std::fs;
use std::path::PathBuf;

use kummer_rr::pipeline::PipelineReport;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "KUMMER_RR_CACHE_DIR";

pub struct ReportCache {
    dir: Option<PathBuf>,
}

impl ReportCache {
    pub fn from_env() -> ReportCache {
        ReportCache {
            dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        }
    }

    pub fn key(seed_bytes: &[u8], trials: usize) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update(trials.to_le_bytes());
        h.update(seed_bytes);
        format!("{:x}", h.finalize())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{key}.report.json")))
    }

    pub fn get(&self, key: &str) -> Option<PipelineReport> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Best-effort write; a failed write only loses the cache entry.
    pub fn put(&self, key: &str, report: &PipelineReport) {
        let (Some(dir), Some(path)) = (&self.dir, self.path(key)) else {
            return;
        };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        if let Ok(text) = serde_json::to_string_pretty(report) {
            let tmp = path.with_extension("tmp");
            if fs::write(&tmp, text).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
    }
}
