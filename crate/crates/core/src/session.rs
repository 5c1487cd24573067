//! Per-(group, prime) state shared by the block, isotypy and descent code:
//! the table at conductor exp(G), the local field, the block system and
//! memoized centralizer data.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::blocks::{algebra, BlockSystem};
use crate::chartab::cache::TableCache;
use crate::chartab::CharacterTable;
use crate::error::Result;
use crate::field::Field;
use crate::gf::GfElem;
use crate::localfield::LocalContext;
use crate::perm::{EmbeddedGroup, Group, Limits, Subgroup};

#[derive(Clone, Debug, Default)]
pub struct SessionOptions {
    pub limits: Limits,
    pub cache_dir: Option<PathBuf>,
    pub precision: Option<usize>,
    pub modulus_seed: u64,
}

/// C_G(Q) as a group with its blocks over the session's residue field.
#[derive(Debug)]
pub struct CentralizerData {
    pub centralizer: Subgroup,
    pub embedded: EmbeddedGroup,
    pub system: Arc<BlockSystem>,
    /// Block residues as dense vectors on the elements of G.
    pub dense: Vec<Vec<GfElem>>,
}

impl CentralizerData {
    /// Exact coefficient of block `b` at the G-element `g`, or `None` off
    /// the centralizer.
    pub fn coeff_at(&self, b: usize, g: usize) -> Option<&crate::Cyclotomic> {
        let h = self.embedded.from_parent_index(g)?;
        Some(self.system.coeff_at(b, h))
    }
}

pub struct Session {
    pub group: Arc<Group>,
    pub p: u64,
    pub table: Arc<CharacterTable>,
    pub local: Arc<LocalContext>,
    pub system: Arc<BlockSystem>,
    pub options: SessionOptions,
    cache: TableCache,
    centralizers: Mutex<HashMap<Vec<usize>, Arc<CentralizerData>>>,
    subgroup_tables: Mutex<Vec<Arc<CharacterTable>>>,
}

impl std::fmt::Debug for Session {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Session")
            .field("group", &self.group.name())
            .field("p", &self.p)
            .finish()
    }
}

impl Session {
    pub fn new(group: Arc<Group>, p: u64, options: SessionOptions) -> Result<Self> {
        let cache = TableCache::new(options.cache_dir.clone());
        let table = Arc::new(cache.table(&group)?);
        let local = Arc::new(LocalContext::new(
            p,
            table.conductor(),
            group.order() as u64,
            options.modulus_seed,
            options.precision,
        )?);
        let system = Arc::new(BlockSystem::compute(table.clone(), &local)?);
        Ok(Session {
            group,
            p,
            table,
            local,
            system,
            options,
            cache,
            centralizers: Mutex::new(HashMap::new()),
            subgroup_tables: Mutex::new(Vec::new()),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.table.conductor()
    }

    pub fn limits(&self) -> &Limits {
        &self.options.limits
    }

    /// Table of a subgroup at the session conductor.
    pub fn subgroup_table(&self, h: &Arc<Group>) -> Result<Arc<CharacterTable>> {
        let t = Arc::new(self.cache.table(h)?.with_conductor(self.conductor())?);
        self.subgroup_tables.lock().expect("table list poisoned").push(t.clone());
        Ok(t)
    }

    /// Every subgroup table built so far (for whole-run checks).
    pub fn subgroup_tables(&self) -> Vec<Arc<CharacterTable>> {
        self.subgroup_tables.lock().expect("table list poisoned").clone()
    }

    /// Memoized C_G(Q) data.
    pub fn centralizer(&self, q: &Subgroup) -> Result<Arc<CentralizerData>> {
        let c = self.group.centralizer_of(q);
        if let Some(d) = self.centralizers.lock().expect("memo poisoned").get(&c.elements) {
            return Ok(d.clone());
        }
        let embedded = self.group.embed(&c);
        let system = if c.order() == self.group.order() {
            self.system.clone()
        } else {
            let t = self.subgroup_table(&embedded.group)?;
            Arc::new(BlockSystem::compute(t, &self.local)?)
        };
        let f = self.local.field();
        let dense = (0..system.len())
            .map(|b| {
                let mut v = vec![f.zero(); self.group.order()];
                for (h, &g) in embedded.into_parent.iter().enumerate() {
                    v[g] = system.blocks[b].residue[embedded.group.class_of(h)].clone();
                }
                v
            })
            .collect();
        let data = Arc::new(CentralizerData {
            centralizer: c.clone(),
            embedded,
            system,
            dense,
        });
        self.centralizers
            .lock()
            .expect("memo poisoned")
            .insert(c.elements, data.clone());
        Ok(data)
    }

    /// Residue of a G-block as a dense vector.
    pub fn block_dense(&self, b: usize) -> Vec<GfElem> {
        self.system.residue_dense(b)
    }

    pub fn defect_groups(&self, b: usize) -> Result<Vec<Subgroup>> {
        algebra::defect_groups(&self.system, b, self.options.limits.sylow_cap)
    }
}
