//! Theorem-verification driver: builds the per-group pipeline (table,
//! lattice, monomiality classification, structural profile) over a catalog
//! and evaluates each statement, reporting pass / fail / not-applicable.

use crate::cache::TableCache;
use crate::catalog::CatalogEntry;
use crate::charfn::{kernel, ClassFunction};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, GroupHandle, Subgroup};
use crate::modular::prime_divisors;
use crate::monomial::{
    classify, is_super_monomial, is_weakly_quasi_primitive, theorem12_condition, theorem36_find_u,
    MonomialityReport,
};
use crate::structure::{
    all_degrees_square_free, degree_pattern, lemma32_check, lemma33_check, is_pi_solvable,
    profile, prop34_check, prop37_check, StructureProfile,
};
use crate::util::gcd;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TheoremId {
    T1_1,
    T1_2,
    T1_3i,
    T1_3ii,
    T1_4,
    P2_1,
    T2_2,
    T2_3,
    L2_4,
    L2_5,
    L3_2,
    L3_3,
    P3_1,
    P3_4,
    T3_6,
    P3_7,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::T1_1,
        TheoremId::T1_2,
        TheoremId::T1_3i,
        TheoremId::T1_3ii,
        TheoremId::T1_4,
        TheoremId::P2_1,
        TheoremId::T2_2,
        TheoremId::T2_3,
        TheoremId::L2_4,
        TheoremId::L2_5,
        TheoremId::L3_2,
        TheoremId::L3_3,
        TheoremId::P3_1,
        TheoremId::P3_4,
        TheoremId::T3_6,
        TheoremId::P3_7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::T1_1 => "T1.1",
            TheoremId::T1_2 => "T1.2",
            TheoremId::T1_3i => "T1.3i",
            TheoremId::T1_3ii => "T1.3ii",
            TheoremId::T1_4 => "T1.4",
            TheoremId::P2_1 => "P2.1",
            TheoremId::T2_2 => "T2.2",
            TheoremId::T2_3 => "T2.3",
            TheoremId::L2_4 => "L2.4",
            TheoremId::L2_5 => "L2.5",
            TheoremId::L3_2 => "L3.2",
            TheoremId::L3_3 => "L3.3",
            TheoremId::P3_1 => "P3.1",
            TheoremId::P3_4 => "P3.4",
            TheoremId::T3_6 => "T3.6",
            TheoremId::P3_7 => "P3.7",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T1_1 => {
                "odd |G|: the smallest nonlinear-degree irreducibles are super-monomial"
            }
            TheoremId::T1_2 => {
                "M-group, N normal, constituent chi of theta^G with H in H_G(chi) and \
                 N'' ∩ H ⊆ H': theta is super-monomial"
            }
            TheoremId::T1_3i => {
                "odd |G|, |mcd| = 2, square-free degrees: Fitting height at most 2"
            }
            TheoremId::T1_3ii => {
                "odd |G|, |mcd| = 2, square-free degrees: derived length at most 3"
            }
            TheoremId::T1_4 => "mcd = {1,m}, cd = {1,m,p} with p prime: gcd(|G|, p^2-1) > 1",
            TheoremId::P2_1 => "derived length at most 2: G is a super M-group",
            TheoremId::T2_2 => {
                "odd |G|, M normal with M ≤ Ker(psi) for all psi of smaller degree: \
                 M' ≤ Ker(chi)"
            }
            TheoremId::T2_3 => {
                "solvable G: p | every nonlinear monomial degree gives a normal \
                 p-complement; p coprime to all of them gives a normal Sylow p-subgroup"
            }
            TheoremId::L2_4 => "gcd(chi(1), |G'|) = 1: chi is monomial",
            TheoremId::L2_5 => "solvable with |mcd| = 1: G is abelian",
            TheoremId::L3_2 => {
                "unique minimal normal, G' nilpotent, |mcd| = 2: G' is a p-group and \
                 p'-degree irreducibles are monomial of degree [G:P]"
            }
            TheoremId::L3_3 => {
                "odd, mcd = {1,m}, cd = {1,m,p}, G'' unique minimal normal: G' is a p-group, Z(G) \
                 cyclic containing every abelian normal subgroup, m = [G:P]"
            }
            TheoremId::P3_1 => "even |G|, mcd = {1,m}, cd = {1,m,p} with p prime: gcd(|G|, p^2-1) > 1",
            TheoremId::P3_4 => {
                "odd, mcd = {1,m}, cd = {1,m,p}, G'' unique minimal normal: counting identities and \
                 |G| divides |P|(|G'|-|P'|)"
            }
            TheoremId::T3_6 => {
                "weakly quasi-primitive chi of odd degree in a pi-solvable group: some U \
                 satisfies chi·conj(chi) = (1_U)^G"
            }
            TheoremId::P3_7 => {
                "odd, mcd = {1,m}, cd = {1,m,p}, G'' unique minimal normal: |P'| = p and |G'| = p^3"
            }
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        let norm = s.trim().replace('_', ".");
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(&norm))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail(String),
    NotApplicable(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupOutcome {
    pub group: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub statement: &'static str,
    pub outcomes: Vec<GroupOutcome>,
}

impl VerificationReport {
    pub fn passes(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.outcome == Outcome::Pass)
            .count()
    }

    pub fn failures(&self) -> Vec<&GroupOutcome> {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.outcome, Outcome::Fail(_)))
            .collect()
    }

    pub fn applicable(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| !matches!(o.outcome, Outcome::NotApplicable(_)))
            .count()
    }
}

/// Everything the theorem checks need about one catalog group, computed once.
pub struct PreparedGroup {
    pub name: String,
    pub engine: Engine,
    pub report: MonomialityReport,
    pub profile: StructureProfile,
}

pub fn prepare(entry: &CatalogEntry, cache: Option<Arc<TableCache>>) -> Result<PreparedGroup> {
    let g = entry.build()?;
    let engine = match cache {
        Some(c) => Engine::with_cache(Arc::clone(&g), c),
        None => Engine::new(Arc::clone(&g)),
    };
    let report = classify(&engine)?;
    let selftest = |label: &str, got: &[u64], want: &Option<BTreeSet<u64>>| -> Result<()> {
        if let Some(want) = want {
            let got: BTreeSet<u64> = got.iter().copied().collect();
            if &got != want {
                return Err(Error::TableCheck(format!(
                    "catalog self-test: {} has {label} {got:?}, expected {want:?}",
                    entry.name
                )));
            }
        }
        Ok(())
    };
    selftest("cd", &report.cd, &entry.expected.cd)?;
    selftest("mcd", &report.mcd, &entry.expected.mcd)?;
    let profile = profile(&engine, &g);
    Ok(PreparedGroup {
        name: entry.name.clone(),
        engine,
        report,
        profile,
    })
}

/// Prepares all entries in parallel, preserving catalog order.
pub fn prepare_catalog(
    entries: &[CatalogEntry],
    cache: Option<Arc<TableCache>>,
) -> Result<Vec<PreparedGroup>> {
    entries
        .par_iter()
        .map(|e| prepare(e, cache.clone()))
        .collect()
}

pub fn verify(id: TheoremId, groups: &[PreparedGroup]) -> VerificationReport {
    let outcomes: Vec<GroupOutcome> = groups
        .par_iter()
        .map(|pg| {
            let start = Instant::now();
            let outcome = evaluate(id, pg)
                .unwrap_or_else(|e| Outcome::Fail(format!("internal error: {e}")));
            GroupOutcome {
                group: pg.name.clone(),
                outcome,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect();
    VerificationReport {
        theorem: id,
        statement: id.statement(),
        outcomes,
    }
}

pub fn verify_all(ids: &[TheoremId], groups: &[PreparedGroup]) -> Vec<VerificationReport> {
    ids.iter().map(|&id| verify(id, groups)).collect()
}

fn evaluate(id: TheoremId, pg: &PreparedGroup) -> Result<Outcome> {
    match id {
        TheoremId::T1_1 => t1_1(pg),
        TheoremId::T1_2 => t1_2(pg),
        TheoremId::T1_3i => t1_3(pg, true),
        TheoremId::T1_3ii => t1_3(pg, false),
        TheoremId::T1_4 => pattern_gcd(pg, None),
        TheoremId::P2_1 => p2_1(pg),
        TheoremId::T2_2 => t2_2(pg),
        TheoremId::T2_3 => t2_3(pg),
        TheoremId::L2_4 => l2_4(pg),
        TheoremId::L2_5 => l2_5(pg),
        TheoremId::L3_2 => l3_2(pg),
        TheoremId::L3_3 => l3_3(pg),
        TheoremId::P3_1 => pattern_gcd(pg, Some(0)),
        TheoremId::P3_4 => p3_4(pg),
        TheoremId::T3_6 => t3_6(pg),
        TheoremId::P3_7 => p3_7(pg),
    }
}

fn na(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::NotApplicable(reason.into()))
}

fn fail(witness: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Fail(witness.into()))
}

fn odd(g: &GroupHandle) -> bool {
    g.order % 2 == 1
}

fn t1_1(pg: &PreparedGroup) -> Result<Outcome> {
    if !odd(&pg.report.group) {
        return na("even order");
    }
    let Some(&min_nl) = pg.report.cd.iter().find(|&&d| d > 1) else {
        return na("no nonlinear irreducible");
    };
    for (i, cr) in pg.report.per_char.iter().enumerate() {
        if cr.degree == min_nl && !cr.super_monomial.is_yes() {
            return fail(format!("chi#{i} of degree {min_nl} is not super-monomial"));
        }
    }
    Ok(Outcome::Pass)
}

fn t1_2(pg: &PreparedGroup) -> Result<Outcome> {
    if !pg.report.m_group {
        return na("not an M-group");
    }
    let eng = &pg.engine;
    let g = &pg.report.group;
    let lat = eng.lattice_of(g);
    let normals: Vec<Subgroup> = lat.normal_subgroups().cloned().collect();
    let mut tested = 0usize;
    for n in &normals {
        if n.is_trivial() {
            continue;
        }
        let emb = eng.embedding_of(n);
        let table = eng.table_of(&emb.sub)?;
        for i in 0..table.irreducibles.len() {
            let theta = ClassFunction::from_character(&table, i);
            if theorem12_condition(eng, n, &theta)?.is_none() {
                continue;
            }
            tested += 1;
            if !is_super_monomial(eng, &emb.sub, &theta)?.is_yes() {
                return fail(format!(
                    "theta#{i} on normal subgroup of order {} satisfies the condition \
                     but is not super-monomial",
                    n.order()
                ));
            }
        }
    }
    if tested == 0 {
        return na("condition never triggered");
    }
    Ok(Outcome::Pass)
}

fn t1_3(pg: &PreparedGroup, fitting: bool) -> Result<Outcome> {
    if !odd(&pg.report.group) {
        return na("even order");
    }
    if pg.report.mcd.len() != 2 {
        return na("|mcd| is not 2");
    }
    if !all_degrees_square_free(&pg.report.cd) {
        return na("a character degree is not square-free");
    }
    if fitting {
        match pg.profile.fitting_height {
            Some(h) if h <= 2 => Ok(Outcome::Pass),
            h => fail(format!("Fitting height {h:?} exceeds 2")),
        }
    } else {
        match pg.profile.derived_length {
            Some(d) if d <= 3 => Ok(Outcome::Pass),
            d => fail(format!("derived length {d:?} exceeds 3")),
        }
    }
}

/// Shared body of T1.4 (any parity) and P3.1 (even order only):
/// the {1,m,p} degree pattern forces `gcd(|G|, p²−1) > 1`.
fn pattern_gcd(pg: &PreparedGroup, parity: Option<usize>) -> Result<Outcome> {
    let Some((_, p)) = degree_pattern(&pg.report) else {
        return na("the {1,m,p} degree pattern does not hold");
    };
    if let Some(par) = parity {
        if pg.report.group.order % 2 != par {
            return na("wrong parity for this proposition");
        }
    }
    let g = gcd(pg.report.group.order as u64, p * p - 1);
    if g > 1 {
        Ok(Outcome::Pass)
    } else {
        fail(format!("gcd(|G|, {}^2 - 1) = 1", p))
    }
}

fn p2_1(pg: &PreparedGroup) -> Result<Outcome> {
    if !pg.profile.is_metabelian {
        return na("derived length exceeds 2");
    }
    if pg.report.super_m_group {
        Ok(Outcome::Pass)
    } else {
        let bad = pg
            .report
            .per_char
            .iter()
            .position(|c| !c.super_monomial.is_yes())
            .unwrap();
        fail(format!("chi#{bad} is not super-monomial"))
    }
}

fn t2_2(pg: &PreparedGroup) -> Result<Outcome> {
    let g = &pg.report.group;
    if !odd(g) {
        return na("even order");
    }
    let eng = &pg.engine;
    let table = eng.table_of(g)?;
    let kernels: Vec<Subgroup> = (0..table.irreducibles.len())
        .map(|i| kernel(&ClassFunction::from_character(&table, i)))
        .collect::<Result<_>>()?;
    let lat = eng.lattice_of(g);
    let mut checked = 0usize;
    for m in lat.normal_subgroups() {
        let mp = commutator_subgroup(m, m)?;
        for (i, chi) in table.irreducibles.iter().enumerate() {
            let hypothesis = table
                .irreducibles
                .iter()
                .enumerate()
                .filter(|(_, psi)| psi.degree < chi.degree)
                .all(|(j, _)| m.members.iter().all(|&x| kernels[j].contains(x)));
            if !hypothesis {
                continue;
            }
            checked += 1;
            if !mp.members.iter().all(|&x| kernels[i].contains(x)) {
                return fail(format!(
                    "M of order {} satisfies the hypothesis for chi#{i} but M' is not in \
                     its kernel",
                    m.order()
                ));
            }
        }
    }
    if checked == 0 {
        return na("hypothesis never satisfied");
    }
    Ok(Outcome::Pass)
}

fn t2_3(pg: &PreparedGroup) -> Result<Outcome> {
    let g = &pg.report.group;
    if pg.profile.derived_length.is_none() {
        return na("not solvable");
    }
    if g.order == 1 {
        return na("trivial group");
    }
    let nonlinear_mcd: Vec<u64> = pg.report.mcd.iter().copied().filter(|&d| d > 1).collect();
    for &p in &pg.profile.primes {
        if nonlinear_mcd.iter().all(|&d| d % p == 0) {
            let has = pg
                .profile
                .normal_p_complement
                .iter()
                .any(|&(q, ok)| q == p && ok);
            if !has {
                return fail(format!("no normal {p}-complement"));
            }
        }
        if nonlinear_mcd.iter().all(|&d| gcd(d, p) == 1) {
            let has = pg.profile.normal_sylow.iter().any(|&(q, ok)| q == p && ok);
            if !has {
                return fail(format!("no normal Sylow {p}-subgroup"));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn l2_4(pg: &PreparedGroup) -> Result<Outcome> {
    let g = &pg.report.group;
    let gp = commutator_subgroup(&g.full_subgroup(), &g.full_subgroup())?.order() as u64;
    let mut nonlinear_instance = false;
    for (i, cr) in pg.report.per_char.iter().enumerate() {
        if gcd(cr.degree, gp) != 1 {
            continue;
        }
        if cr.degree > 1 {
            nonlinear_instance = true;
        }
        if cr.monomial.is_none() {
            return fail(format!(
                "chi#{i} of degree {} coprime to |G'| = {gp} is not monomial",
                cr.degree
            ));
        }
    }
    if !nonlinear_instance {
        return na("no nonlinear irreducible of degree coprime to |G'|");
    }
    Ok(Outcome::Pass)
}

fn l2_5(pg: &PreparedGroup) -> Result<Outcome> {
    if pg.profile.derived_length.is_none() {
        return na("not solvable");
    }
    if pg.report.mcd.len() != 1 {
        return na("|mcd| is not 1");
    }
    if pg.profile.derived_length == Some(0) || pg.profile.derived_length == Some(1) {
        Ok(Outcome::Pass)
    } else {
        fail(format!(
            "G is not abelian (derived length {:?})",
            pg.profile.derived_length
        ))
    }
}

fn l3_2(pg: &PreparedGroup) -> Result<Outcome> {
    match lemma32_check(&pg.engine, &pg.report)? {
        None => na("preconditions not met"),
        Some(r) if r.pass() => Ok(Outcome::Pass),
        Some(r) => fail(r.failures.join("; ")),
    }
}

fn l3_3(pg: &PreparedGroup) -> Result<Outcome> {
    match lemma33_check(&pg.engine, &pg.report)? {
        None => na("preconditions not met"),
        Some(r) if r.pass() => Ok(Outcome::Pass),
        Some(r) => fail(r.failures.join("; ")),
    }
}

fn p3_4(pg: &PreparedGroup) -> Result<Outcome> {
    match prop34_check(&pg.engine, &pg.report)? {
        None => na("preconditions not met"),
        Some(r) if r.pass() => Ok(Outcome::Pass),
        Some(r) => fail(r.failures.join("; ")),
    }
}

fn p3_7(pg: &PreparedGroup) -> Result<Outcome> {
    match prop37_check(&pg.engine, &pg.report)? {
        None => na("preconditions not met"),
        Some(r) if r.pass() => Ok(Outcome::Pass),
        Some(r) => fail(format!(
            "|P'| = {} (expected {}), |G'| = {} (expected {})",
            r.p_derived_order,
            r.p,
            r.g_derived_order,
            r.p.pow(3)
        )),
    }
}

fn t3_6(pg: &PreparedGroup) -> Result<Outcome> {
    let eng = &pg.engine;
    let g = &pg.report.group;
    let table = eng.table_of(g)?;
    let mut tested = 0usize;
    for (i, c) in table.irreducibles.iter().enumerate() {
        if c.degree % 2 == 0 {
            continue;
        }
        let chi = ClassFunction::from_character(&table, i);
        let pi = prime_divisors(c.degree);
        if !is_pi_solvable(eng, g, &pi) {
            continue;
        }
        if is_weakly_quasi_primitive(eng, g, &chi)?.is_none() {
            continue;
        }
        tested += 1;
        if theorem36_find_u(eng, g, &chi)?.is_none() {
            return fail(format!(
                "no U of index {} with (1_U)^G = chi#{i}·conj(chi#{i})",
                c.degree * c.degree
            ));
        }
    }
    if tested == 0 {
        return na("no weakly quasi-primitive odd-degree irreducible");
    }
    Ok(Outcome::Pass)
}
