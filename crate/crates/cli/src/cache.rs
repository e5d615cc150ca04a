//! A single JSON file of reports keyed by array, tool version and
//! precision settings.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::precision::format_width;
use crate::report::{Settings, TOOL_VERSION};

pub const CACHE_FILE: &str = "qpoly-cache.json";
pub const CACHE_ENV: &str = "QPOLY_CACHE_DIR";

pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, Value>,
    dirty: bool,
}

pub fn cache_key(array_text: &str, settings: &Settings) -> String {
    format!(
        "{array_text}|v{TOOL_VERSION}|w={}|z={}",
        format_width(&settings.width),
        format_width(&settings.spectral.zero_width)
    )
}

impl Cache {
    /// Open `dir/qpoly-cache.json`; a missing or unreadable file starts empty.
    pub fn open(dir: &Path) -> Self {
        let path = dir.join(CACHE_FILE);
        let entries = fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str::<BTreeMap<String, Value>>(&s).ok())
            .unwrap_or_default();
        Cache {
            path,
            entries,
            dirty: false,
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, key: String, report: Value) {
        self.entries.insert(key, report);
        self.dirty = true;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn save(&mut self) -> io::Result<()> {
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let text = serde_json::to_string(&self.entries).map_err(io::Error::other)?;
        let tmp = self.path.with_extension("json.tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &self.path)?;
        self.dirty = false;
        Ok(())
    }
}
