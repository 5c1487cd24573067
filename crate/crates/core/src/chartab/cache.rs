//! On-disk table cache and ingestion of externally produced tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::CharacterTable;
use crate::error::{Error, Result};
use crate::perm::Group;
use crate::Cyclotomic;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableFile {
    pub group_hash: String,
    pub conductor: u64,
    /// Class representatives as 1-based image arrays.
    pub class_order: Vec<Vec<usize>>,
    pub values: Vec<Vec<Cyclotomic>>,
    pub power_maps: BTreeMap<String, Vec<usize>>,
}

impl TableFile {
    pub fn from_table(t: &CharacterTable) -> Self {
        let g = t.group();
        TableFile {
            group_hash: g.hash().to_string(),
            conductor: t.conductor(),
            class_order: g
                .classes()
                .iter()
                .map(|c| g.element(c.representative).to_one_based())
                .collect(),
            values: t.values().to_vec(),
            power_maps: t
                .power_maps()
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    /// Rebuilds a table, trusting nothing: hash, class order, power maps,
    /// orthogonality and central-character consistency are all rechecked.
    pub fn into_table(self, group: Arc<Group>) -> Result<CharacterTable> {
        if self.group_hash != group.hash() {
            return Err(Error::TableVerification("group hash mismatch".into()));
        }
        let classes: Vec<Vec<usize>> = group
            .classes()
            .iter()
            .map(|c| group.element(c.representative).to_one_based())
            .collect();
        if classes != self.class_order {
            return Err(Error::TableVerification("class order mismatch".into()));
        }
        let table = CharacterTable::assemble(group, self.values)?;
        let maps: BTreeMap<String, Vec<usize>> = table
            .power_maps()
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        if !self.power_maps.is_empty() && maps != self.power_maps {
            return Err(Error::TableVerification("power maps mismatch".into()));
        }
        table.verify_orthogonality()?;
        table.verify_central_characters()?;
        let n = self.conductor;
        if n != table.conductor() {
            return table.with_conductor(n);
        }
        Ok(table)
    }
}

pub fn to_json(t: &CharacterTable) -> Result<String> {
    Ok(serde_json::to_string(&TableFile::from_table(t))?)
}

/// Parses and verifies a table for `group`.
pub fn from_json(group: Arc<Group>, text: &str) -> Result<CharacterTable> {
    let file: TableFile = serde_json::from_str(text)?;
    file.into_table(group)
}

/// Directory-backed cache keyed by group hash. Tables are stored at their
/// native conductor (the group exponent).
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        TableCache { dir }
    }

    pub fn disabled() -> Self {
        TableCache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, group: &Group) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", group.hash())))
    }

    /// Loads a verified table if present; a corrupt entry is ignored and
    /// recomputed.
    pub fn load(&self, group: &Arc<Group>) -> Option<CharacterTable> {
        let text = fs::read_to_string(self.path(group)?).ok()?;
        from_json(group.clone(), &text).ok()
    }

    pub fn store(&self, table: &CharacterTable) -> Result<()> {
        let Some(path) = self.path(table.group()) else {
            return Ok(());
        };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let n = COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = path.with_extension(format!("tmp{}-{n}", std::process::id()));
        fs::write(&tmp, to_json(table)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Cached or freshly computed table at the group's own exponent.
    pub fn table(&self, group: &Arc<Group>) -> Result<CharacterTable> {
        if let Some(t) = self.load(group) {
            return Ok(t);
        }
        let t = CharacterTable::compute(group.clone())?;
        self.store(&t)?;
        Ok(t)
    }
}
