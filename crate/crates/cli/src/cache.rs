//! Optional on-disk memo of search results, one JSON object per command.
//! The directory is `$NULLIFY_CACHE_DIR`, else `$XDG_CACHE_HOME/nullify`,
//! else `~/.cache/nullify`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde_json::Value;

pub fn dir() -> Option<PathBuf> {
    let env = |k| {
        std::env::var_os(k)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    };
    env("NULLIFY_CACHE_DIR")
        .or_else(|| env("XDG_CACHE_HOME").map(|p| p.join("nullify")))
        .or_else(|| env("HOME").map(|p| p.join(".cache").join("nullify")))
}

pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, Value>,
    dirty: bool,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache {
            path: None,
            entries: BTreeMap::new(),
            dirty: false,
        }
    }

    /// A missing or unreadable file starts an empty cache.
    pub fn open(command: &str) -> Self {
        let Some(path) = dir().map(|d| d.join(format!("{command}.json"))) else {
            return Cache::disabled();
        };
        let entries = std::fs::read_to_string(&path)
            .ok()
            .and_then(|t| serde_json::from_str(&t).ok())
            .unwrap_or_default();
        Cache {
            path: Some(path),
            entries,
            dirty: false,
        }
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.path.as_ref()?;
        self.entries.get(key)
    }

    pub fn put(&mut self, key: String, v: Value) {
        if self.path.is_some() {
            self.entries.insert(key, v);
            self.dirty = true;
        }
    }

    /// Write back; failures only cost the memo, so they are logged.
    pub fn save(&self) {
        let (Some(path), true) = (&self.path, self.dirty) else {
            return;
        };
        let res = path
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|_| {
                std::fs::write(
                    path,
                    serde_json::to_string(&self.entries).expect("values serialize"),
                )
            });
        if let Err(e) = res {
            log::warn!("cache {} not written: {e}", path.display());
        }
    }
}
