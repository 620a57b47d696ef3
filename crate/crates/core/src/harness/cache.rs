//! Append-only JSONL journal of oracle results, keyed by canonical group
//! literal, `m`, `h` and family.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{io_error, Error, Result};
use crate::group::GroupSpec;
use crate::oracle::{Family, OracleResult};
use crate::set::ElementSet;
use crate::sumset::classify_symmetry;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    group: String,
    m: u64,
    h: u64,
    family: Family,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct JournalLine {
    group: String,
    m: u64,
    h: u64,
    family: Family,
    value: u64,
    witness: Vec<usize>,
    enumerated: u64,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<Key, (usize, JournalLine)>,
    lines: usize,
    journal: File,
}

impl Cache {
    /// Loads the journal at `path` (creating it if absent) and keeps it
    /// open for appending.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        let mut lines = 0;
        if path.exists() {
            let file = File::open(&path).map_err(|e| io_error(&path, e))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| io_error(&path, e))?;
                let lineno = i + 1;
                lines = lineno;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = |reason: String| Error::CacheCorrupt {
                    line: lineno,
                    reason,
                };
                let entry: JournalLine =
                    serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
                let g: GroupSpec = entry
                    .group
                    .parse()
                    .map_err(|e: Error| corrupt(e.to_string()))?;
                if g.to_string() != entry.group {
                    return Err(corrupt(format!(
                        "group {:?} is not in canonical form",
                        entry.group
                    )));
                }
                let key = Key {
                    group: entry.group.clone(),
                    m: entry.m,
                    h: entry.h,
                    family: entry.family,
                };
                if let Some((_, prev)) = entries.get(&key) {
                    let prev: &JournalLine = prev;
                    if prev.value != entry.value {
                        return Err(corrupt(format!(
                            "conflicts with an earlier entry ({} vs {})",
                            prev.value, entry.value
                        )));
                    }
                    continue;
                }
                entries.insert(key, (lineno, entry));
            }
        }
        let journal = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| io_error(&path, e))?;
        Ok(Cache {
            path,
            entries,
            lines,
            journal,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn key(g: &GroupSpec, m: u64, h: u64, family: Family) -> Key {
        Key {
            group: g.to_string(),
            m,
            h,
            family,
        }
    }

    pub fn lookup(
        &self,
        g: &GroupSpec,
        m: u64,
        h: u64,
        family: Family,
    ) -> Result<Option<OracleResult>> {
        let Some((lineno, entry)) = self.entries.get(&Self::key(g, m, h, family)) else {
            return Ok(None);
        };
        let corrupt = |reason: String| Error::CacheCorrupt {
            line: *lineno,
            reason,
        };
        let witness = ElementSet::from_indices(g, entry.witness.iter().copied())
            .map_err(|e| corrupt(e.to_string()))?;
        if witness.len() as u64 != m {
            return Err(corrupt(format!(
                "witness has {} elements, expected {m}",
                witness.len()
            )));
        }
        let witness_class = classify_symmetry(g, &witness)?;
        Ok(Some(OracleResult {
            value: entry.value as usize,
            witness,
            family,
            witness_class,
            enumerated: entry.enumerated,
        }))
    }

    /// Appends a result. Storing an existing key again is a no-op when the
    /// value matches and an integrity error otherwise.
    pub fn store(&mut self, g: &GroupSpec, m: u64, h: u64, result: &OracleResult) -> Result<()> {
        let key = Self::key(g, m, h, result.family);
        let value = result.value as u64;
        if let Some((_, prev)) = self.entries.get(&key) {
            if prev.value == value {
                return Ok(());
            }
            return Err(Error::CacheConflict {
                key: format!("({}, m={m}, h={h}, {})", key.group, key.family),
                stored: prev.value,
                new: value,
            });
        }
        let entry = JournalLine {
            group: key.group.clone(),
            m,
            h,
            family: result.family,
            value,
            witness: result.witness.indices(),
            enumerated: result.enumerated,
        };
        let mut line = serde_json::to_string(&entry).expect("journal lines serialize");
        line.push('\n');
        self.journal
            .write_all(line.as_bytes())
            .and_then(|_| self.journal.flush())
            .map_err(|e| io_error(&self.path, e))?;
        self.lines += 1;
        self.entries.insert(key, (self.lines, entry));
        Ok(())
    }
}
