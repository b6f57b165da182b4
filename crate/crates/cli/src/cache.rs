use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// JSON files under a directory, one per key.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    pub fn dist_key(n: usize, statistic: &str, q: bool) -> String {
        let suffix = if q { "-q" } else { "" };
        format!("dist-n{n}-{statistic}{suffix}-v{VERSION}.json")
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(key)
    }

    /// `None` when the entry is missing or unreadable.
    pub fn load(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, value: &Value) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.tmp"));
        fs::write(&tmp, serde_json::to_string(value)? + "\n")?;
        fs::rename(tmp, self.path(key))
    }
}
