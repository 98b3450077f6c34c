//! Memoization layer: one `Engine` per top-level group caches subgroup
//! handles, character tables, lattices, linear characters, and induction
//! counts so the classification and harness passes never recompute them.

use crate::cache::TableCache;
use crate::charfn::{embed, induction_counts, lift, ClassFunction, Embedding};
use crate::error::Result;
use crate::group::{commutator_subgroup, quotient_group, GroupHandle, Subgroup};
use crate::lattice::{enumerate_subgroups, SubgroupLattice};
use crate::table::{character_table, CharacterTable};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub struct Engine {
    pub group: Arc<GroupHandle>,
    disk: Option<Arc<TableCache>>,
    /// One canonical handle per element set, so cached tables and freshly
    /// built embeddings agree on pointer identity.
    handles: Mutex<HashMap<[u8; 32], Arc<GroupHandle>>>,
    tables: Mutex<HashMap<[u8; 32], Arc<CharacterTable>>>,
    lattices: Mutex<HashMap<[u8; 32], Arc<SubgroupLattice>>>,
    embeddings: Mutex<HashMap<[u8; 32], Arc<Embedding>>>,
    counts: Mutex<HashMap<[u8; 32], Arc<Vec<Vec<u64>>>>>,
    linears: Mutex<HashMap<[u8; 32], Arc<Vec<ClassFunction>>>>,
}

/// Memo key for a subgroup: parent identity plus the member-id set.
fn subgroup_key(s: &Subgroup) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(s.parent.element_key);
    for &m in &s.members {
        h.update(m.to_le_bytes());
    }
    h.finalize().into()
}

impl Engine {
    pub fn new(group: Arc<GroupHandle>) -> Engine {
        let mut handles = HashMap::new();
        handles.insert(group.element_key, Arc::clone(&group));
        Engine {
            group,
            disk: None,
            handles: Mutex::new(handles),
            tables: Mutex::new(HashMap::new()),
            lattices: Mutex::new(HashMap::new()),
            embeddings: Mutex::new(HashMap::new()),
            counts: Mutex::new(HashMap::new()),
            linears: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cache(group: Arc<GroupHandle>, cache: Arc<TableCache>) -> Engine {
        let mut e = Engine::new(group);
        e.disk = Some(cache);
        e
    }

    /// The first handle seen for this element set. Handles with equal
    /// element keys have identical element lists, ids, and class numbering,
    /// so substitution is transparent.
    pub fn canonical_handle(&self, h: Arc<GroupHandle>) -> Arc<GroupHandle> {
        self.handles
            .lock()
            .unwrap()
            .entry(h.element_key)
            .or_insert(h)
            .clone()
    }

    pub fn embedding_of(&self, s: &Subgroup) -> Arc<Embedding> {
        let key = subgroup_key(s);
        if let Some(e) = self.embeddings.lock().unwrap().get(&key) {
            return Arc::clone(e);
        }
        let mut e = embed(s);
        e.sub = self.canonical_handle(e.sub);
        let e = Arc::new(e);
        self.embeddings
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(e)
            .clone()
    }

    pub fn table_of(&self, g: &Arc<GroupHandle>) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(&g.element_key) {
            return Ok(Arc::clone(t));
        }
        if let Some(disk) = &self.disk {
            // a corrupt or stale record is not fatal; recompute instead
            if let Ok(Some(t)) = disk.load(g) {
                let t = Arc::new(t);
                self.tables
                    .lock()
                    .unwrap()
                    .insert(g.element_key, Arc::clone(&t));
                return Ok(t);
            }
        }
        let t = Arc::new(character_table(g)?);
        if let Some(disk) = &self.disk {
            disk.store(&t)?;
        }
        self.tables
            .lock()
            .unwrap()
            .insert(g.element_key, Arc::clone(&t));
        Ok(t)
    }

    pub fn lattice_of(&self, g: &Arc<GroupHandle>) -> Arc<SubgroupLattice> {
        if let Some(l) = self.lattices.lock().unwrap().get(&g.element_key) {
            return Arc::clone(l);
        }
        let l = Arc::new(enumerate_subgroups(g));
        self.lattices
            .lock()
            .unwrap()
            .entry(g.element_key)
            .or_insert(l)
            .clone()
    }

    pub fn induction_counts_of(&self, emb: &Arc<Embedding>) -> Arc<Vec<Vec<u64>>> {
        let key = subgroup_key(&emb.as_subgroup());
        if let Some(c) = self.counts.lock().unwrap().get(&key) {
            return Arc::clone(c);
        }
        let c = Arc::new(induction_counts(emb));
        self.counts.lock().unwrap().entry(key).or_insert(c).clone()
    }

    /// The linear characters of a handle, computed as lifts of the full
    /// table of the abelianization `H/H′` (cheaper than a full table of `H`
    /// when `H` is far from abelian).
    pub fn linear_characters(&self, h: &Arc<GroupHandle>) -> Result<Arc<Vec<ClassFunction>>> {
        if let Some(l) = self.linears.lock().unwrap().get(&h.element_key) {
            return Ok(Arc::clone(l));
        }
        let full = h.full_subgroup();
        let derived = commutator_subgroup(&full, &full).expect("same parent");
        let mut q = quotient_group(h, &derived)?;
        q.group = self.canonical_handle(q.group);
        let qt = self.table_of(&q.group)?;
        let mut out = Vec::with_capacity(qt.irreducibles.len());
        for c in &qt.irreducibles {
            debug_assert_eq!(c.degree, 1);
            let psi = ClassFunction {
                group: Arc::clone(&q.group),
                values: c.values.clone(),
            };
            out.push(lift(h, &q, &psi)?);
        }
        let out = Arc::new(out);
        self.linears
            .lock()
            .unwrap()
            .insert(h.element_key, Arc::clone(&out));
        Ok(out)
    }
}
