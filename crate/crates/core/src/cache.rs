//! On-disk cache of bracket structure constants.
//!
//! One JSON file per key `(convention version, d, degree_a, degree_b)`. The
//! cache is advisory: unreadable, mismatched, or inconsistent files are
//! skipped, and every loaded entry is re-checked against the associative
//! embedding before it reaches the memo.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_int::Int;
use crate::freelie::{FreeLieAlgebra, StructureEntry, CONVENTION_VERSION};

pub const CACHE_FORMAT: &str = "primlink-structure";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("malformed cache record: {0}")]
    Json(String),
    #[error("cache record has format {0:?}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// `(left basis index, right basis index, [(product basis index, coefficient)])`
pub type EntryTriple = (usize, usize, Vec<(usize, Int)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureRecord {
    pub format: String,
    pub convention_version: u32,
    pub generators: usize,
    pub degree_a: usize,
    pub degree_b: usize,
    pub entries: Vec<EntryTriple>,
}

impl StructureRecord {
    pub fn from_entries(generators: usize, degree_a: usize, degree_b: usize, entries: &[StructureEntry]) -> Self {
        StructureRecord {
            format: CACHE_FORMAT.to_owned(),
            convention_version: CONVENTION_VERSION,
            generators,
            degree_a,
            degree_b,
            entries: entries
                .iter()
                .map(|e| (e.left, e.right, e.product.iter().map(|(i, c)| (*i, Int(c.clone()))).collect()))
                .collect(),
        }
    }

    pub fn to_entries(&self) -> Vec<StructureEntry> {
        self.entries
            .iter()
            .map(|(left, right, product)| StructureEntry {
                left: *left,
                right: *right,
                product: product.iter().map(|(i, c)| (*i, c.0.clone())).collect(),
            })
            .collect()
    }

    pub fn from_json_slice(data: &[u8]) -> Result<Self, CacheError> {
        let rec: StructureRecord = serde_json::from_slice(data).map_err(|e| CacheError::Json(e.to_string()))?;
        if rec.format != CACHE_FORMAT {
            return Err(CacheError::Format(rec.format));
        }
        Ok(rec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialization is infallible")
    }

    pub fn file_name(convention: u32, generators: usize, degree_a: usize, degree_b: usize) -> String {
        format!("structure-v{convention}-d{generators}-{degree_a}x{degree_b}.json")
    }
}

/// A cache directory.
#[derive(Clone, Debug)]
pub struct StructureCache {
    dir: PathBuf,
}

impl StructureCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        StructureCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, generators: usize, da: usize, db: usize) -> PathBuf {
        self.dir.join(StructureRecord::file_name(CONVENTION_VERSION, generators, da, db))
    }

    fn degree_pairs(max_total: usize) -> impl Iterator<Item = (usize, usize)> {
        (1..max_total).flat_map(move |da| (1..=max_total - da).map(move |db| (da, db)))
    }

    /// Loads every usable record with `degree_a + degree_b ≤ max_total`.
    /// Returns the number of entries loaded.
    pub fn load_into(&self, alg: &FreeLieAlgebra, max_total: usize) -> usize {
        let d = alg.generators();
        let mut loaded = 0;
        for (da, db) in Self::degree_pairs(max_total) {
            let Ok(bytes) = fs::read(self.path(d, da, db)) else { continue };
            let Ok(rec) = StructureRecord::from_json_slice(&bytes) else { continue };
            if rec.convention_version != CONVENTION_VERSION
                || rec.generators != d
                || rec.degree_a != da
                || rec.degree_b != db
            {
                continue;
            }
            if let Ok(n) = alg.absorb_structure(da, db, &rec.to_entries()) {
                loaded += n;
            }
        }
        loaded
    }

    /// Writes the memoized brackets with `degree_a + degree_b ≤ max_total`.
    /// Returns the number of entries written.
    pub fn store_from(&self, alg: &FreeLieAlgebra, max_total: usize) -> Result<usize, CacheError> {
        fs::create_dir_all(&self.dir)?;
        let d = alg.generators();
        let mut written = 0;
        for (da, db) in Self::degree_pairs(max_total) {
            let entries = alg.structure_entries(da, db);
            if entries.is_empty() {
                continue;
            }
            let rec = StructureRecord::from_entries(d, da, db, &entries);
            let path = self.path(d, da, db);
            let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
            fs::write(&tmp, rec.to_json())?;
            fs::rename(&tmp, &path)?;
            written += entries.len();
        }
        Ok(written)
    }
}
