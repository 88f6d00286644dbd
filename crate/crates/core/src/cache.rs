//! Persistent γ cache: an append-only text log of `key value` lines keyed
//! by [`graph_key`](crate::canon::graph_key).

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Mutex;

use crate::canon::graph_key;
use crate::domination::gamma_number;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Default)]
pub struct GammaCache {
    entries: Mutex<HashMap<String, usize>>,
    log: Option<Mutex<BufWriter<File>>>,
}

impl GammaCache {
    /// A cache that lives only as long as the process.
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if present and appends new entries to it.
    pub fn open(path: &Path) -> Result<Self> {
        let mut entries = HashMap::new();
        if path.exists() {
            let file = File::open(path).map_err(|e| Error::line(0, format!("{}: {e}", path.display())))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| Error::line(i + 1, e.to_string()))?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line
                    .rsplit_once(' ')
                    .ok_or_else(|| Error::line(i + 1, "expected `key value`"))?;
                let value = value
                    .parse()
                    .map_err(|_| Error::line(i + 1, format!("bad cached value {value:?}")))?;
                entries.insert(key.to_string(), value);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::line(0, format!("{}: {e}", path.display())))?;
        Ok(GammaCache {
            entries: Mutex::new(entries),
            log: Some(Mutex::new(BufWriter::new(file))),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<usize> {
        self.entries.lock().unwrap().get(key).copied()
    }

    /// γ(g), computed on a miss and recorded.
    pub fn gamma(&self, g: &Graph) -> usize {
        let key = graph_key(g);
        if let Some(v) = self.get(&key) {
            return v;
        }
        let value = gamma_number(g);
        self.insert(key, value);
        value
    }

    pub fn insert(&self, key: String, value: usize) {
        let fresh = self.entries.lock().unwrap().insert(key.clone(), value).is_none();
        if let (true, Some(log)) = (fresh, &self.log) {
            let mut w = log.lock().unwrap();
            // a failed cache write only costs a recomputation later
            let _ = writeln!(w, "{key} {value}").and_then(|_| w.flush());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survives_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gamma.cache");
        {
            let cache = GammaCache::open(&path).unwrap();
            assert_eq!(cache.gamma(&Graph::cycle(6)), 2);
            assert_eq!(cache.gamma(&Graph::cycle(6).permuted(&[1, 0, 2, 3, 4, 5])), 2);
            assert_eq!(cache.len(), 1);
        }
        let cache = GammaCache::open(&path).unwrap();
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.get(&graph_key(&Graph::cycle(6))), Some(2));
        std::fs::write(&path, "garbage\n").unwrap();
        assert!(GammaCache::open(&path).is_err());
    }
}
