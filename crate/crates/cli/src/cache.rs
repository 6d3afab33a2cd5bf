//! Text artifacts in a cache directory, each tracked by a content digest in
//! `index.txt`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::CliError;

const INDEX: &str = "index.txt";

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CacheKind {
    Octagon,
    Quads,
    Hexagon,
    Suboctagons,
    Valuations,
    Graph,
}

impl CacheKind {
    pub const ALL: [CacheKind; 6] = [
        CacheKind::Octagon,
        CacheKind::Quads,
        CacheKind::Hexagon,
        CacheKind::Suboctagons,
        CacheKind::Valuations,
        CacheKind::Graph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CacheKind::Octagon => "octagon",
            CacheKind::Quads => "quads",
            CacheKind::Hexagon => "hexagon",
            CacheKind::Suboctagons => "suboctagons",
            CacheKind::Valuations => "valuations",
            CacheKind::Graph => "graph",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for CacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A cached file, relative to the cache directory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub kind: CacheKind,
    pub path: String,
    pub digest: String,
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    index: BTreeMap<String, CacheEntry>,
}

pub(crate) fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl Cache {
    /// Opens (creating if needed) a cache directory and reads its index.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        let index_path = dir.join(INDEX);
        let mut index = BTreeMap::new();
        if index_path.exists() {
            let text = fs::read_to_string(&index_path).map_err(io_err(&index_path))?;
            for row in text.lines().filter(|r| !r.trim().is_empty()) {
                let parts: Vec<&str> = row.split_whitespace().collect();
                let entry = match parts[..] {
                    [kind, path, digest] => CacheKind::parse(kind).map(|kind| CacheEntry {
                        kind,
                        path: path.to_string(),
                        digest: digest.to_string(),
                    }),
                    _ => None,
                };
                let entry = entry.ok_or_else(|| CliError::CorruptCache(index_path.clone()))?;
                index.insert(entry.path.clone(), entry);
            }
        }
        Ok(Cache { dir, index })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entries(&self) -> impl Iterator<Item = &CacheEntry> {
        self.index.values()
    }

    pub fn entry(&self, file: &str) -> Option<&CacheEntry> {
        self.index.get(file)
    }

    /// Contents of an indexed file whose digest still matches; `None` when
    /// the file is not indexed or missing.
    pub fn read(&self, file: &str) -> Result<Option<String>, CliError> {
        let Some(entry) = self.index.get(file) else {
            return Ok(None);
        };
        let path = self.dir.join(file);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        if digest(text.as_bytes()) != entry.digest {
            return Err(CliError::CorruptCache(path));
        }
        Ok(Some(text))
    }

    pub fn write(&mut self, kind: CacheKind, file: &str, text: &str) -> Result<CacheEntry, CliError> {
        let path = self.dir.join(file);
        fs::write(&path, text).map_err(io_err(&path))?;
        let entry = CacheEntry {
            kind,
            path: file.to_string(),
            digest: digest(text.as_bytes()),
        };
        self.index.insert(file.to_string(), entry.clone());
        self.save_index()?;
        Ok(entry)
    }

    fn save_index(&self) -> Result<(), CliError> {
        let text: String = self
            .index
            .values()
            .map(|e| format!("{} {} {}\n", e.kind, e.path, e.digest))
            .collect();
        let path = self.dir.join(INDEX);
        fs::write(&path, text).map_err(io_err(&path))
    }
}
