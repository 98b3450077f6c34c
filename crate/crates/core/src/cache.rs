//! Persistent character-table cache. One text file per group, keyed by the
//! canonical Cayley hash; writes go through a temp file and rename so
//! concurrent readers never observe a partial record.

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::table::{Character, CharacterTable};
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

pub const CACHE_ENV: &str = "MONOCHAR_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".monochar-cache";
const HEADER: &str = "MONOCHAR-TABLE v1";

pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> TableCache {
        TableCache { dir: dir.into() }
    }

    /// Directory from `MONOCHAR_CACHE`, falling back to `./.monochar-cache`.
    pub fn from_env() -> TableCache {
        let dir = std::env::var(CACHE_ENV).unwrap_or_else(|_| DEFAULT_CACHE_DIR.into());
        TableCache::new(dir)
    }

    // The prime is part of the key: the same abstract group can appear under
    // different modular contexts (standalone vs. inside a larger parent).
    fn path_for(&self, g: &GroupHandle) -> PathBuf {
        self.dir
            .join(format!("{}-{}.table", hex(&g.cayley_hash), g.ctx.p))
    }

    pub fn store(&self, table: &CharacterTable) -> Result<()> {
        let g = &table.group;
        std::fs::create_dir_all(&self.dir)?;
        let mut out = String::new();
        out.push_str(HEADER);
        out.push('\n');
        out.push_str(&format!("group {}\n", hex(&g.cayley_hash)));
        out.push_str(&format!("prime {}\n", g.ctx.p));
        out.push_str(&format!("omega {}\n", g.ctx.omega));
        out.push_str(&format!("exponent {}\n", g.ctx.exponent));
        out.push_str(&format!("classes {}\n", g.num_classes()));
        for i in 0..g.num_classes() {
            out.push_str(&format!(
                "class {} {} {}\n",
                i,
                g.class_size(i),
                g.element_orders[g.class_rep(i) as usize]
            ));
        }
        out.push_str(&format!("chars {}\n", table.irreducibles.len()));
        for c in &table.irreducibles {
            out.push_str(&format!("char {}\n", c.degree));
            out.push_str("values");
            for v in &c.values {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
            for (i, entries) in c.lifted.iter().enumerate() {
                out.push_str(&format!("lifted {i}"));
                for (k, m) in entries {
                    out.push_str(&format!(" {k}:{m}"));
                }
                out.push('\n');
            }
        }
        out.push_str("end\n");
        let tmp = self.dir.join(format!(
            ".{}.tmp.{}",
            hex(&g.cayley_hash),
            std::process::id()
        ));
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(out.as_bytes())?;
        }
        std::fs::rename(&tmp, self.path_for(g))?;
        Ok(())
    }

    /// Loads the table for this exact group, if present and consistent.
    pub fn load(&self, g: &Arc<GroupHandle>) -> Result<Option<CharacterTable>> {
        let path = self.path_for(g);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        parse_table(g, &text).map(Some)
    }
}

fn parse_table(g: &Arc<GroupHandle>, text: &str) -> Result<CharacterTable> {
    let bad = |msg: &str| Error::Cache(msg.to_string());
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(bad("missing header"));
    }
    let mut field = |name: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad("truncated file"))?;
        line.strip_prefix(name)
            .and_then(|s| s.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(&format!("expected `{name}` line")))
    };
    if field("group")? != hex(&g.cayley_hash) {
        return Err(bad("group hash mismatch"));
    }
    let prime: u64 = field("prime")?.parse().map_err(|_| bad("bad prime"))?;
    let omega: u64 = field("omega")?.parse().map_err(|_| bad("bad omega"))?;
    let exponent: u64 = field("exponent")?.parse().map_err(|_| bad("bad exponent"))?;
    if prime != g.ctx.p || omega != g.ctx.omega || exponent != g.ctx.exponent {
        return Err(bad("modular context mismatch"));
    }
    let r: usize = field("classes")?.parse().map_err(|_| bad("bad classes"))?;
    if r != g.num_classes() {
        return Err(bad("class count mismatch"));
    }
    for i in 0..r {
        let parts = field("class")?;
        let mut it = parts.split_whitespace();
        let idx: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad class line"))?;
        let size: usize = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad class line"))?;
        let ord: u64 = it.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad class line"))?;
        if idx != i
            || size != g.class_size(i)
            || ord != g.element_orders[g.class_rep(i) as usize]
        {
            return Err(bad("class data mismatch"));
        }
    }
    let nchars: usize = field("chars")?.parse().map_err(|_| bad("bad chars"))?;
    if nchars != r {
        return Err(bad("char count mismatch"));
    }
    let mut irreducibles = Vec::with_capacity(nchars);
    for _ in 0..nchars {
        let degree: u64 = field("char")?.parse().map_err(|_| bad("bad degree"))?;
        let values: Vec<u64> = field("values")?
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| bad("bad value")))
            .collect::<Result<_>>()?;
        if values.len() != r {
            return Err(bad("value count mismatch"));
        }
        let mut lifted = Vec::with_capacity(r);
        for i in 0..r {
            let parts = field("lifted")?;
            let mut it = parts.split_whitespace();
            let idx: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad lifted line"))?;
            if idx != i {
                return Err(bad("lifted class index mismatch"));
            }
            let mut entries = Vec::new();
            for pair in it {
                let (k, m) = pair.split_once(':').ok_or_else(|| bad("bad lifted pair"))?;
                entries.push((
                    k.parse().map_err(|_| bad("bad lifted pair"))?,
                    m.parse().map_err(|_| bad("bad lifted pair"))?,
                ));
            }
            lifted.push(entries);
        }
        irreducibles.push(Character {
            values,
            degree,
            lifted,
        });
    }
    if lines.next() != Some("end") {
        return Err(bad("missing end marker"));
    }
    let table = CharacterTable {
        group: Arc::clone(g),
        irreducibles,
    };
    table.check_orthogonality()?;
    Ok(table)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_recipe, Recipe};
    use crate::table::character_table;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let g = build_recipe(&Recipe::Sl23).unwrap();
        assert!(cache.load(&g).unwrap().is_none());
        let table = character_table(&g).unwrap();
        cache.store(&table).unwrap();
        let loaded = cache.load(&g).unwrap().unwrap();
        assert_eq!(loaded.irreducibles, table.irreducibles);
    }

    #[test]
    fn rejects_tampered_record() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let g = build_recipe(&Recipe::Symmetric(3)).unwrap();
        let table = character_table(&g).unwrap();
        cache.store(&table).unwrap();
        let path = dir
            .path()
            .join(format!("{}-{}.table", hex(&g.cayley_hash), g.ctx.p));
        let mangled = std::fs::read_to_string(&path)
            .unwrap()
            .replace("prime", "primo");
        std::fs::write(&path, mangled).unwrap();
        assert!(cache.load(&g).is_err());
    }

    #[test]
    fn distinct_groups_do_not_collide() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let g1 = build_recipe(&Recipe::Symmetric(3)).unwrap();
        let g2 = build_recipe(&Recipe::Cyclic(6)).unwrap();
        cache.store(&character_table(&g1).unwrap()).unwrap();
        assert!(cache.load(&g2).unwrap().is_none());
    }
}
