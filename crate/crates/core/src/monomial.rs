//! Monomiality predicates: monomial/primitive/super-monomial characters,
//! H_G(χ), cd/mcd, M-groups, weak quasi-primitivity, and the related
//! subgroup searches.

use crate::charfn::{
    induce_with_counts, inner_product, multiply, restrict, ClassFunction,
};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, derived_series_of, GroupHandle, Subgroup};
use crate::modular::prime_divisors;
use std::collections::HashMap;
use std::sync::Arc;

/// `λ^G = χ` with `λ` linear; `linear` lives on the embedded handle of
/// `subgroup` (see `Engine::embedding_of`).
#[derive(Clone)]
pub struct MonomialWitness {
    pub subgroup: Subgroup,
    pub linear: ClassFunction,
}

#[derive(Clone)]
pub enum SuperMonomial {
    Yes,
    /// A character of `subgroup` inducing χ that is itself non-monomial.
    No {
        subgroup: Subgroup,
        psi: ClassFunction,
    },
}

impl SuperMonomial {
    pub fn is_yes(&self) -> bool {
        matches!(self, SuperMonomial::Yes)
    }
}

pub struct CharReport {
    pub degree: u64,
    pub monomial: Option<MonomialWitness>,
    pub primitive: bool,
    pub super_monomial: SuperMonomial,
}

pub struct MonomialityReport {
    pub group: Arc<GroupHandle>,
    pub per_char: Vec<CharReport>,
    pub cd: Vec<u64>,
    pub mcd: Vec<u64>,
    pub m_group: bool,
    pub super_m_group: bool,
}

fn ensure_irreducible(chi: &ClassFunction) -> Result<u64> {
    if inner_product(chi, chi)? != 1 {
        return Err(Error::NotIrreducible);
    }
    chi.degree()
}

fn ensure_on(chi: &ClassFunction, g: &Arc<GroupHandle>) -> Result<()> {
    if Arc::ptr_eq(&chi.group, g) {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// Searches lattice representatives `H` with `[G:H] = χ(1)` for a linear
/// character inducing χ. Conjugate subgroups induce the same characters, so
/// representatives suffice.
pub fn is_monomial(
    eng: &Engine,
    g: &Arc<GroupHandle>,
    chi: &ClassFunction,
) -> Result<Option<MonomialWitness>> {
    ensure_on(chi, g)?;
    let degree = ensure_irreducible(chi)?;
    let lat = eng.lattice_of(g);
    for class in lat.classes.iter() {
        if class.rep.index_in_parent() as u64 != degree {
            continue;
        }
        let emb = eng.embedding_of(&class.rep);
        let counts = eng.induction_counts_of(&emb);
        for lam in eng.linear_characters(&emb.sub)?.iter() {
            let ind = induce_with_counts(&emb, &counts, lam)?;
            if ind.values == chi.values {
                return Ok(Some(MonomialWitness {
                    subgroup: class.rep.clone(),
                    linear: lam.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// The set `H_G(χ)`: all lattice representatives admitting a linear
/// character inducing χ. Empty iff χ is non-monomial.
pub fn monomial_sources(
    eng: &Engine,
    g: &Arc<GroupHandle>,
    chi: &ClassFunction,
) -> Result<Vec<Subgroup>> {
    ensure_on(chi, g)?;
    let degree = ensure_irreducible(chi)?;
    let lat = eng.lattice_of(g);
    let mut out = Vec::new();
    for class in lat.classes.iter() {
        if class.rep.index_in_parent() as u64 != degree {
            continue;
        }
        let emb = eng.embedding_of(&class.rep);
        let counts = eng.induction_counts_of(&emb);
        for lam in eng.linear_characters(&emb.sub)?.iter() {
            if induce_with_counts(&emb, &counts, lam)?.values == chi.values {
                out.push(class.rep.clone());
                break;
            }
        }
    }
    Ok(out)
}

/// θ is primitive iff it is not induced from any proper subgroup.
pub fn is_primitive(eng: &Engine, h: &Arc<GroupHandle>, theta: &ClassFunction) -> Result<bool> {
    ensure_on(theta, h)?;
    let degree = ensure_irreducible(theta)?;
    let lat = eng.lattice_of(h);
    for class in lat.classes.iter() {
        let idx = class.rep.index_in_parent() as u64;
        if idx == 1 || degree % idx != 0 {
            continue;
        }
        let emb = eng.embedding_of(&class.rep);
        let counts = eng.induction_counts_of(&emb);
        let sub_table = eng.table_of(&emb.sub)?;
        for (i, psi) in sub_table.irreducibles.iter().enumerate() {
            if psi.degree * idx != degree {
                continue;
            }
            let cf = ClassFunction::from_character(&sub_table, i);
            if induce_with_counts(&emb, &counts, &cf)?.values == theta.values {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

type MonoMemo = HashMap<([u8; 32], Vec<u64>), bool>;

fn is_monomial_memo(
    eng: &Engine,
    h: &Arc<GroupHandle>,
    psi: &ClassFunction,
    memo: &mut MonoMemo,
) -> Result<bool> {
    let key = (h.element_key, psi.values.clone());
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let v = is_monomial(eng, h, psi)?.is_some();
    memo.insert(key, v);
    Ok(v)
}

/// "Every character inducing χ is monomial." Enumerates all lattice
/// representatives `H` and all ψ ∈ Irr(H) with `ψ^G = χ`; the `H = G, ψ = χ`
/// case is included, so super-monomial ⇒ monomial.
pub fn is_super_monomial(
    eng: &Engine,
    g: &Arc<GroupHandle>,
    chi: &ClassFunction,
) -> Result<SuperMonomial> {
    let mut memo = MonoMemo::new();
    is_super_monomial_inner(eng, g, chi, &mut memo)
}

fn is_super_monomial_inner(
    eng: &Engine,
    g: &Arc<GroupHandle>,
    chi: &ClassFunction,
    memo: &mut MonoMemo,
) -> Result<SuperMonomial> {
    ensure_on(chi, g)?;
    let degree = ensure_irreducible(chi)?;
    let lat = eng.lattice_of(g);
    for class in lat.classes.iter() {
        let idx = class.rep.index_in_parent() as u64;
        if degree % idx != 0 {
            continue;
        }
        let emb = eng.embedding_of(&class.rep);
        let counts = eng.induction_counts_of(&emb);
        let sub_table = eng.table_of(&emb.sub)?;
        for (i, psi) in sub_table.irreducibles.iter().enumerate() {
            if psi.degree * idx != degree {
                continue;
            }
            let cf = ClassFunction::from_character(&sub_table, i);
            if induce_with_counts(&emb, &counts, &cf)?.values != chi.values {
                continue;
            }
            if !is_monomial_memo(eng, &emb.sub, &cf, memo)? {
                return Ok(SuperMonomial::No {
                    subgroup: class.rep.clone(),
                    psi: cf,
                });
            }
        }
    }
    Ok(SuperMonomial::Yes)
}

/// The equivalent formulation: "every primitive character inducing χ is
/// linear". Kept separate so the two can be cross-checked.
pub fn is_super_monomial_primitive_form(
    eng: &Engine,
    g: &Arc<GroupHandle>,
    chi: &ClassFunction,
) -> Result<SuperMonomial> {
    ensure_on(chi, g)?;
    let degree = ensure_irreducible(chi)?;
    let lat = eng.lattice_of(g);
    for class in lat.classes.iter() {
        let idx = class.rep.index_in_parent() as u64;
        if degree % idx != 0 {
            continue;
        }
        let emb = eng.embedding_of(&class.rep);
        let counts = eng.induction_counts_of(&emb);
        let sub_table = eng.table_of(&emb.sub)?;
        for (i, psi) in sub_table.irreducibles.iter().enumerate() {
            if psi.degree * idx != degree || psi.degree == 1 {
                continue;
            }
            let cf = ClassFunction::from_character(&sub_table, i);
            if induce_with_counts(&emb, &counts, &cf)?.values != chi.values {
                continue;
            }
            if is_primitive(eng, &emb.sub, &cf)? {
                return Ok(SuperMonomial::No {
                    subgroup: class.rep.clone(),
                    psi: cf,
                });
            }
        }
    }
    Ok(SuperMonomial::Yes)
}

pub fn classify(eng: &Engine) -> Result<MonomialityReport> {
    let g = Arc::clone(&eng.group);
    let table = eng.table_of(&g)?;
    let mut memo = MonoMemo::new();
    let mut per_char = Vec::with_capacity(table.irreducibles.len());
    for i in 0..table.irreducibles.len() {
        let chi = ClassFunction::from_character(&table, i);
        per_char.push(CharReport {
            degree: table.irreducibles[i].degree,
            monomial: is_monomial(eng, &g, &chi)?,
            primitive: is_primitive(eng, &g, &chi)?,
            super_monomial: is_super_monomial_inner(eng, &g, &chi, &mut memo)?,
        });
    }
    let cd = table.cd();
    let mut mcd: Vec<u64> = per_char
        .iter()
        .filter(|c| c.monomial.is_some())
        .map(|c| c.degree)
        .collect();
    mcd.sort_unstable();
    mcd.dedup();
    let m_group = per_char.iter().all(|c| c.monomial.is_some());
    let super_m_group = per_char.iter().all(|c| c.super_monomial.is_yes());
    Ok(MonomialityReport {
        group: g,
        per_char,
        cd,
        mcd,
        m_group,
        super_m_group,
    })
}

/// Theorem 1.2 search: a constituent χ of θ^G and `H ∈ H_G(χ)` with
/// `N″ ∩ H ⊆ H′` (containment is taken non-strict; nothing more is needed).
pub fn theorem12_condition(
    eng: &Engine,
    n: &Subgroup,
    theta: &ClassFunction,
) -> Result<Option<(ClassFunction, Subgroup)>> {
    let g = &eng.group;
    if !Arc::ptr_eq(&n.parent, g) {
        return Err(Error::NotASubgroup);
    }
    if !n.normal {
        return Err(Error::NotNormal);
    }
    let emb = eng.embedding_of(n);
    ensure_on(theta, &emb.sub)?;
    ensure_irreducible(theta)?;
    let counts = eng.induction_counts_of(&emb);
    let ind = induce_with_counts(&emb, &counts, theta)?;
    let series = derived_series_of(n);
    let n2 = series
        .get(2)
        .cloned()
        .unwrap_or_else(|| g.trivial_subgroup());
    let table = eng.table_of(g)?;
    for i in 0..table.irreducibles.len() {
        let chi = ClassFunction::from_character(&table, i);
        if inner_product(&ind, &chi)? <= 0 {
            continue;
        }
        for h in monomial_sources(eng, g, &chi)? {
            let hp = commutator_subgroup(&h, &h)?;
            let contained = n2
                .members
                .iter()
                .filter(|&&x| h.contains(x))
                .all(|&x| hp.contains(x));
            if contained {
                return Ok(Some((chi, h)));
            }
        }
    }
    Ok(None)
}

/// Definition 3.5: a normal series `1 = G_0 ⊆ … ⊆ G_k = G` whose factors are
/// π′-groups or abelian π-groups (π = π(χ(1))) and on whose members χ
/// restricts homogeneously. Returns a witnessing series.
pub fn is_weakly_quasi_primitive(
    eng: &Engine,
    g: &Arc<GroupHandle>,
    chi: &ClassFunction,
) -> Result<Option<Vec<Subgroup>>> {
    ensure_on(chi, g)?;
    let degree = ensure_irreducible(chi)?;
    let pi = prime_divisors(degree);
    let lat = eng.lattice_of(g);
    let mut normals: Vec<Subgroup> = lat.normal_subgroups().cloned().collect();
    normals.sort_by_key(|s| s.order());
    let n = normals.len();

    let mut homog: Vec<Option<bool>> = vec![None; n];
    let mut is_homog = |eng: &Engine, i: usize, normals: &[Subgroup]| -> Result<bool> {
        if let Some(v) = homog[i] {
            return Ok(v);
        }
        let emb = eng.embedding_of(&normals[i]);
        let res = restrict(&emb, chi)?;
        let t = eng.table_of(&emb.sub)?;
        let mut constituents = 0;
        for j in 0..t.irreducibles.len() {
            let cf = ClassFunction::from_character(&t, j);
            if inner_product(&res, &cf)? > 0 {
                constituents += 1;
            }
        }
        let v = constituents == 1;
        homog[i] = Some(v);
        Ok(v)
    };

    // factor G_j/G_i legality for G_i ⊆ G_j
    let factor_ok = |i: usize, j: usize| -> Result<bool> {
        let ratio = (normals[j].order() / normals[i].order()) as u64;
        if pi.iter().all(|&p| ratio % p != 0) {
            return Ok(true); // π′-group
        }
        if !prime_divisors(ratio).iter().all(|p| pi.contains(p)) {
            return Ok(false);
        }
        // abelian factor ⟺ [G_j, G_j] ⊆ G_i
        let c = commutator_subgroup(&normals[j], &normals[j])?;
        Ok(c.members.iter().all(|&x| normals[i].contains(x)))
    };

    // DFS from the trivial subgroup upward, memoizing dead nodes
    let top = normals.iter().position(|s| s.is_whole_group()).unwrap();
    let start = normals.iter().position(|s| s.is_trivial()).unwrap();
    let mut dead = vec![false; n];
    let mut stack_chain: Vec<usize> = vec![start];
    fn dfs(
        eng: &Engine,
        normals: &[Subgroup],
        top: usize,
        i: usize,
        dead: &mut [bool],
        factor_ok: &dyn Fn(usize, usize) -> Result<bool>,
        is_homog: &mut dyn FnMut(&Engine, usize, &[Subgroup]) -> Result<bool>,
    ) -> Result<Option<Vec<usize>>> {
        if i == top {
            return Ok(Some(vec![i]));
        }
        for j in 0..normals.len() {
            if dead[j]
                || normals[j].order() <= normals[i].order()
                || !normals[i].members.iter().all(|&x| normals[j].contains(x))
            {
                continue;
            }
            if !factor_ok(i, j)? || !is_homog(eng, j, normals)? {
                continue;
            }
            if let Some(mut chain) = dfs(eng, normals, top, j, dead, factor_ok, is_homog)? {
                chain.insert(0, i);
                return Ok(Some(chain));
            }
        }
        dead[i] = true;
        Ok(None)
    }
    let _ = &mut stack_chain;
    let found = dfs(
        eng,
        &normals,
        top,
        start,
        &mut dead,
        &factor_ok,
        &mut is_homog,
    )?;
    Ok(found.map(|chain| chain.into_iter().map(|i| normals[i].clone()).collect()))
}

/// Theorem 3.6 search: `U ≤ G` of index χ(1)² with `(1_U)^G = χχ̄`.
pub fn theorem36_find_u(
    eng: &Engine,
    g: &Arc<GroupHandle>,
    chi: &ClassFunction,
) -> Result<Option<Subgroup>> {
    ensure_on(chi, g)?;
    let degree = ensure_irreducible(chi)?;
    let target = multiply(chi, &chi.conjugate())?;
    let lat = eng.lattice_of(g);
    for class in lat.classes.iter() {
        if class.rep.index_in_parent() as u64 != degree * degree {
            continue;
        }
        let emb = eng.embedding_of(&class.rep);
        let counts = eng.induction_counts_of(&emb);
        let ind = induce_with_counts(&emb, &counts, &ClassFunction::trivial(&emb.sub))?;
        if ind.values == target.values {
            return Ok(Some(class.rep.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_recipe, Recipe};
    use crate::charfn::induce;
    use crate::group::center;

    fn engine(recipe: &Recipe) -> Engine {
        Engine::new(build_recipe(recipe).unwrap())
    }

    #[test]
    fn s3_is_a_super_m_group() {
        let eng = engine(&Recipe::Symmetric(3));
        let report = classify(&eng).unwrap();
        assert!(report.m_group);
        assert!(report.super_m_group);
        assert_eq!(report.cd, vec![1, 2]);
        assert_eq!(report.mcd, vec![1, 2]);
        // the degree-2 character is imprimitive and induced exactly from C₃
        let chi2 = &report.per_char[2];
        assert!(!chi2.primitive);
        let g = &eng.group;
        let table = eng.table_of(g).unwrap();
        let sources =
            monomial_sources(&eng, g, &ClassFunction::from_character(&table, 2)).unwrap();
        assert_eq!(sources.len(), 1);
        assert_eq!(sources[0].order(), 3);
    }

    #[test]
    fn witness_induces_the_character() {
        let eng = engine(&Recipe::Symmetric(4));
        let report = classify(&eng).unwrap();
        let table = eng.table_of(&eng.group).unwrap();
        for (i, cr) in report.per_char.iter().enumerate() {
            let w = cr.monomial.as_ref().expect("S4 is an M-group");
            assert_eq!(w.subgroup.index_in_parent() as u64, cr.degree);
            let emb = eng.embedding_of(&w.subgroup);
            let ind = induce(&emb, &w.linear).unwrap();
            assert_eq!(ind.values, table.irreducibles[i].values);
        }
    }

    #[test]
    fn sl2_3_classification() {
        let eng = engine(&Recipe::Sl23);
        let report = classify(&eng).unwrap();
        assert_eq!(report.cd, vec![1, 2, 3]);
        assert_eq!(report.mcd, vec![1, 3]);
        assert!(!report.m_group);
        assert!(!report.super_m_group);
        for cr in &report.per_char {
            match cr.degree {
                2 => {
                    assert!(cr.monomial.is_none());
                    assert!(cr.primitive);
                    assert!(!cr.super_monomial.is_yes());
                }
                _ => assert!(cr.monomial.is_some()),
            }
        }
        // H_G(χ₃) members all have index 3 (the Q₈ class)
        let table = eng.table_of(&eng.group).unwrap();
        let i3 = table
            .irreducibles
            .iter()
            .position(|c| c.degree == 3)
            .unwrap();
        let sources =
            monomial_sources(&eng, &eng.group, &ClassFunction::from_character(&table, i3))
                .unwrap();
        assert!(!sources.is_empty());
        assert!(sources.iter().all(|s| s.order() == 8));
    }

    #[test]
    fn abelian_groups_are_super_m() {
        let eng = engine(&Recipe::Abelian(vec![2, 3]));
        let report = classify(&eng).unwrap();
        assert_eq!(report.cd, vec![1]);
        assert!(report.m_group && report.super_m_group);
    }

    #[test]
    fn formulations_agree_on_small_groups() {
        for recipe in [Recipe::Sl23, Recipe::Symmetric(4), Recipe::Dihedral(16)] {
            let eng = engine(&recipe);
            let table = eng.table_of(&eng.group).unwrap();
            for i in 0..table.irreducibles.len() {
                let chi = ClassFunction::from_character(&table, i);
                let a = is_super_monomial(&eng, &eng.group, &chi).unwrap();
                let b = is_super_monomial_primitive_form(&eng, &eng.group, &chi).unwrap();
                assert_eq!(a.is_yes(), b.is_yes());
            }
        }
    }

    #[test]
    fn rejects_non_irreducible_input() {
        let eng = engine(&Recipe::Symmetric(3));
        let reg = ClassFunction::regular(&eng.group);
        assert!(matches!(
            is_monomial(&eng, &eng.group, &reg),
            Err(Error::NotIrreducible)
        ));
        assert!(matches!(
            is_super_monomial(&eng, &eng.group, &reg),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn order_375_classification() {
        let eng = engine(&Recipe::ExtraspecialSemidirect { p: 5, k: 3 });
        let report = classify(&eng).unwrap();
        assert_eq!(report.cd, vec![1, 3, 5]);
        assert_eq!(report.mcd, vec![1, 3]);
        assert!(!report.m_group);
    }

    #[test]
    fn theorem12_on_abelian_normal_subgroup() {
        let eng = engine(&Recipe::Symmetric(3));
        let g = &eng.group;
        let members: Vec<u16> = (0..g.order as u16)
            .filter(|&x| g.element_orders[x as usize] != 2)
            .collect();
        let n = g.subgroup(members);
        let emb = eng.embedding_of(&n);
        let t = eng.table_of(&emb.sub).unwrap();
        for i in 0..t.irreducibles.len() {
            let theta = ClassFunction::from_character(&t, i);
            // N abelian ⇒ N″ = 1 ⊆ H′; some monomial constituent always exists here
            assert!(theorem12_condition(&eng, &n, &theta).unwrap().is_some());
        }
    }

    #[test]
    fn weak_quasi_primitivity_on_extraspecial_27() {
        let eng = engine(&Recipe::Extraspecial(3));
        let table = eng.table_of(&eng.group).unwrap();
        for i in 0..table.irreducibles.len() {
            let chi = ClassFunction::from_character(&table, i);
            let witness = is_weakly_quasi_primitive(&eng, &eng.group, &chi).unwrap();
            let series = witness.expect("every irreducible here is weakly quasi-primitive");
            assert!(series.first().unwrap().is_trivial());
            assert!(series.last().unwrap().is_whole_group());
        }
    }

    #[test]
    fn theorem36_u_for_extraspecial_27() {
        let eng = engine(&Recipe::Extraspecial(3));
        let g = &eng.group;
        let table = eng.table_of(g).unwrap();
        for i in 0..table.irreducibles.len() {
            let chi = ClassFunction::from_character(&table, i);
            let u = theorem36_find_u(&eng, g, &chi).unwrap().unwrap();
            if table.irreducibles[i].degree == 1 {
                assert!(u.is_whole_group());
            } else {
                // faithful degree-3 characters: U is the center, index 9
                assert_eq!(u.members, center(g).members);
            }
        }
    }
}
