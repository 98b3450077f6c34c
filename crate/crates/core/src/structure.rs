//! Structural invariants (Fitting series, normal Sylow data, supersolvability)
//! and the degree-counting identities used by the verification harness.

use crate::charfn::{kernel, ClassFunction};
use crate::engine::Engine;
use crate::error::Result;
use crate::group::{
    center, commutator_subgroup, derived_length, derived_series, quotient_group, GroupHandle,
    Subgroup,
};
use crate::lattice::minimal_normal_subgroups;
use crate::modular::{is_prime, is_square_free, prime_divisors};
use crate::monomial::MonomialityReport;
use std::sync::Arc;

pub struct StructureProfile {
    pub group: Arc<GroupHandle>,
    /// `None` when the group is not solvable.
    pub derived_length: Option<u32>,
    pub fitting_height: Option<u32>,
    pub is_nilpotent: bool,
    pub is_supersolvable: bool,
    pub is_metabelian: bool,
    /// Prime divisors of `|G|`, ascending.
    pub primes: Vec<u64>,
    pub normal_sylow: Vec<(u64, bool)>,
    pub normal_p_complement: Vec<(u64, bool)>,
}

pub fn profile(eng: &Engine, g: &Arc<GroupHandle>) -> StructureProfile {
    let dl = derived_length(g);
    let fh = fitting_height(eng, g);
    let primes = prime_divisors(g.order as u64);
    let normal_sylow: Vec<(u64, bool)> = primes
        .iter()
        .map(|&p| (p, sylow_rep(eng, g, p).normal))
        .collect();
    let normal_p_complement: Vec<(u64, bool)> = primes
        .iter()
        .map(|&p| (p, has_normal_p_complement(eng, g, p).is_some()))
        .collect();
    let is_nilpotent = normal_sylow.iter().all(|&(_, n)| n);
    debug_assert_eq!(is_nilpotent, fh.map(|h| h <= 1).unwrap_or(false));
    StructureProfile {
        group: Arc::clone(g),
        derived_length: dl,
        fitting_height: fh,
        is_nilpotent,
        is_supersolvable: is_supersolvable(eng, g),
        is_metabelian: dl.map(|d| d <= 2).unwrap_or(false),
        primes,
        normal_sylow,
        normal_p_complement,
    }
}

/// The `p`-part of `n`.
fn p_part(mut n: usize, p: u64) -> usize {
    let mut part = 1;
    while n % p as usize == 0 {
        part *= p as usize;
        n /= p as usize;
    }
    part
}

fn sylow_rep(eng: &Engine, g: &Arc<GroupHandle>, p: u64) -> Subgroup {
    let part = p_part(g.order, p);
    let lat = eng.lattice_of(g);
    lat.classes
        .iter()
        .find(|c| c.rep.order() == part)
        .expect("Sylow subgroups exist")
        .rep
        .clone()
}

/// `O_p(G)`: the intersection of all Sylow `p`-subgroups.
pub fn core_p(eng: &Engine, g: &Arc<GroupHandle>, p: u64) -> Subgroup {
    let part = p_part(g.order, p);
    let lat = eng.lattice_of(g);
    let class = lat
        .classes
        .iter()
        .find(|c| c.rep.order() == part)
        .expect("Sylow subgroups exist");
    let mut members: Vec<u16> = class.conjugates[0].clone();
    for conj in &class.conjugates[1..] {
        members.retain(|x| conj.binary_search(x).is_ok());
    }
    g.subgroup(members)
}

/// `Fit(G)`: the product of the cores `O_p(G)` over `p | |G|`.
pub fn fitting_subgroup(eng: &Engine, g: &Arc<GroupHandle>) -> Subgroup {
    let mut gens: Vec<u16> = Vec::new();
    for p in prime_divisors(g.order as u64) {
        gens.extend(core_p(eng, g, p).members);
    }
    if gens.is_empty() {
        return g.trivial_subgroup();
    }
    g.subgroup(g.closure_ids(&gens))
}

/// Steps in the ascending Fitting series `1 ⊂ F₁ ⊂ …` until `G` is reached;
/// `None` when the series stalls (non-solvable input).
pub fn fitting_height(eng: &Engine, g: &Arc<GroupHandle>) -> Option<u32> {
    let mut cur = Arc::clone(g);
    let mut height = 0u32;
    while cur.order > 1 {
        let fit = fitting_subgroup(eng, &cur);
        if fit.is_trivial() {
            return None;
        }
        let q = quotient_group(&cur, &fit).expect("Fitting subgroup is normal");
        cur = eng.canonical_handle(q.group);
        height += 1;
    }
    Some(height)
}

/// The normal subgroup of order `|G| / p-part`, if one exists.
pub fn has_normal_p_complement(eng: &Engine, g: &Arc<GroupHandle>, p: u64) -> Option<Subgroup> {
    let target = g.order / p_part(g.order, p);
    let lat = eng.lattice_of(g);
    let found = lat.normal_subgroups().find(|s| s.order() == target).cloned();
    found
}

pub fn has_normal_sylow(eng: &Engine, g: &Arc<GroupHandle>, p: u64) -> bool {
    sylow_rep(eng, g, p).normal
}

pub fn is_nilpotent(eng: &Engine, g: &Arc<GroupHandle>) -> bool {
    prime_divisors(g.order as u64)
        .iter()
        .all(|&p| has_normal_sylow(eng, g, p))
}

/// A subgroup is cyclic iff it contains an element of its own order.
pub fn is_cyclic(s: &Subgroup) -> bool {
    s.members
        .iter()
        .any(|&x| s.parent.element_orders[x as usize] == s.order() as u64)
}

/// Searches for a series of normal subgroups of `G` with prime indices at
/// every step. Such a series exists iff every chief factor is cyclic of
/// prime order, i.e. iff `G` is supersolvable.
pub fn is_supersolvable(eng: &Engine, g: &Arc<GroupHandle>) -> bool {
    let lat = eng.lattice_of(g);
    let mut normals: Vec<&Subgroup> = lat.normal_subgroups().collect();
    normals.sort_by_key(|s| s.order());
    let n = normals.len();
    let top = normals.iter().position(|s| s.is_whole_group()).unwrap();
    let start = normals.iter().position(|s| s.is_trivial()).unwrap();
    let mut dead = vec![false; n];
    fn dfs(normals: &[&Subgroup], top: usize, i: usize, dead: &mut [bool]) -> bool {
        if i == top {
            return true;
        }
        for j in 0..normals.len() {
            if dead[j] || normals[j].order() % normals[i].order() != 0 {
                continue;
            }
            let ratio = normals[j].order() / normals[i].order();
            if !is_prime(ratio as u64)
                || !normals[i].members.iter().all(|&x| normals[j].contains(x))
            {
                continue;
            }
            if dfs(normals, top, j, dead) {
                return true;
            }
        }
        dead[i] = true;
        false
    }
    dfs(&normals, top, start, &mut dead)
}

/// `G` is π-solvable when some chief series has only π′-factors and solvable
/// π-factors. Checked recursively through a minimal normal subgroup; π = ∅
/// is treated as vacuously solvable.
pub fn is_pi_solvable(eng: &Engine, g: &Arc<GroupHandle>, pi: &[u64]) -> bool {
    if g.order == 1 || crate::group::is_solvable(g) {
        return true;
    }
    let lat = eng.lattice_of(g);
    for n in minimal_normal_subgroups(&lat) {
        let order = n.order() as u64;
        let legal = if pi.iter().all(|&p| order % p != 0) {
            true
        } else {
            prime_divisors(order).iter().all(|p| pi.contains(p)) && {
                let emb = eng.embedding_of(&n);
                crate::group::is_solvable(&emb.sub)
            }
        };
        if !legal {
            continue;
        }
        let q = quotient_group(g, &n).expect("minimal normal subgroup");
        let qg = eng.canonical_handle(q.group);
        if is_pi_solvable(eng, &qg, pi) {
            return true;
        }
    }
    false
}

pub fn all_degrees_square_free(cd: &[u64]) -> bool {
    cd.iter().all(|&d| is_square_free(d))
}

/// The two-degree pattern: `mcd(G) = {1, m}` and `cd(G) = {1, m, p}` with `p`
/// prime (so `p` is the unique non-monomial degree). Returns `(m, p)`.
pub fn degree_pattern(report: &MonomialityReport) -> Option<(u64, u64)> {
    if report.mcd.len() != 2 || report.cd.len() != 3 || report.mcd[0] != 1 {
        return None;
    }
    let m = report.mcd[1];
    if report.cd[0] != 1 || !report.cd.contains(&m) {
        return None;
    }
    let p = *report.cd.iter().find(|&&d| d != 1 && d != m)?;
    if !is_prime(p) {
        return None;
    }
    Some((m, p))
}

/// Shared preconditions of the counting checks below: odd order, the degree
/// pattern above, and `G″` being the unique minimal normal subgroup.
/// Returns `(m, p, P)` with `P` the Sylow `p`-subgroup.
fn pattern_with_unique_minimal(
    eng: &Engine,
    report: &MonomialityReport,
) -> Option<(u64, u64, Subgroup)> {
    let g = &report.group;
    if g.order % 2 == 0 {
        return None;
    }
    let (m, p) = degree_pattern(report)?;
    let series = derived_series(g);
    let g2 = series.get(2)?;
    if g2.is_trivial() {
        return None;
    }
    let lat = eng.lattice_of(g);
    let mins = minimal_normal_subgroups(&lat);
    if mins.len() != 1 || mins[0].members != g2.members {
        return None;
    }
    Some((m, p, sylow_rep(eng, g, p)))
}

pub struct CountingReport {
    pub p: u64,
    pub m: u64,
    /// Degree-`p` irreducibles of the Sylow `p`-subgroup.
    pub n_p: u64,
    /// Degree-`p` irreducibles of `G`.
    pub n_g: u64,
    /// Degree-`m` irreducibles of `G`.
    pub m_g: u64,
    pub failures: Vec<String>,
}

impl CountingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Counting identities under the two-degree pattern: `n_P = |P|(|P′|−1)/(p²|P′|)`,
/// `n_G = n_P·[G:P]`, `m_G = |P|²(|G′|−|P′|)/(|G||G′||P′|)`, the degree-sum
/// identity `|G| = |G/G′| + n_G·p² + m_G·m²`, and the divisibility
/// `|G| | |P|(|G′|−|P′|)`. `None` when the preconditions fail.
pub fn prop34_check(eng: &Engine, report: &MonomialityReport) -> Result<Option<CountingReport>> {
    let Some((m, p, psub)) = pattern_with_unique_minimal(eng, report) else {
        return Ok(None);
    };
    let g = &report.group;
    let emb = eng.embedding_of(&psub);
    let ptable = eng.table_of(&emb.sub)?;
    let n_p = ptable.irreducibles.iter().filter(|c| c.degree == p).count() as u64;
    let table = eng.table_of(g)?;
    let n_g = table.irreducibles.iter().filter(|c| c.degree == p).count() as u64;
    let m_g = table.irreducibles.iter().filter(|c| c.degree == m).count() as u64;

    let po = psub.order() as u64;
    let go = g.order as u64;
    let pp = commutator_subgroup(&psub, &psub)?.order() as u64;
    let gp = commutator_subgroup(&g.full_subgroup(), &g.full_subgroup())?.order() as u64;
    let index = go / po;

    let mut failures = Vec::new();
    let mut check = |name: &str, lhs: u64, rhs: u64| {
        if lhs != rhs {
            failures.push(format!("{name}: {lhs} != {rhs}"));
        }
    };
    let n_p_closed = po * (pp - 1) / (p * p * pp);
    check("n_P closed form", n_p, n_p_closed);
    check("n_G = n_P·[G:P]", n_g, n_p * index);
    let m_g_num = po * po * (gp - pp);
    check("m_G closed form (exact division)", m_g_num % (go * gp * pp), 0);
    check("m_G closed form", m_g, m_g_num / (go * gp * pp));
    check("degree-sum identity", go, go / gp + n_g * p * p + m_g * m * m);
    check("divisibility |G| | |P|(|G′|−|P′|)", po * (gp - pp) % go, 0);
    Ok(Some(CountingReport {
        p,
        m,
        n_p,
        n_g,
        m_g,
        failures,
    }))
}

pub struct Lemma33Report {
    pub p: u64,
    pub m: u64,
    pub failures: Vec<String>,
}

impl Lemma33Report {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Lemma 3.3 under the same preconditions as `prop34_check`: `G′` is a
/// `p`-group (so the Sylow `p`-subgroup is normal), `Z(G)` is cyclic with
/// every abelian normal subgroup inside it, and `m = [G:P]`.
pub fn lemma33_check(eng: &Engine, report: &MonomialityReport) -> Result<Option<Lemma33Report>> {
    let Some((m, p, psub)) = pattern_with_unique_minimal(eng, report) else {
        return Ok(None);
    };
    let g = &report.group;
    let mut failures = Vec::new();
    let gp = commutator_subgroup(&g.full_subgroup(), &g.full_subgroup())?;
    if prime_divisors(gp.order() as u64) != vec![p] {
        failures.push(format!("G′ of order {} is not a {p}-group", gp.order()));
    }
    if !psub.normal {
        failures.push("Sylow p-subgroup is not normal".into());
    }
    let z = center(g);
    if !is_cyclic(&z) {
        failures.push(format!("Z(G) of order {} is not cyclic", z.order()));
    }
    let lat = eng.lattice_of(g);
    for a in lat.normal_subgroups() {
        if a.is_abelian() && !a.members.iter().all(|&x| z.contains(x)) {
            failures.push(format!(
                "abelian normal subgroup of order {} is not central",
                a.order()
            ));
        }
    }
    if m != (g.order / psub.order()) as u64 {
        failures.push(format!("m = {m} but [G:P] = {}", g.order / psub.order()));
    }
    Ok(Some(Lemma33Report { p, m, failures }))
}

pub struct Prop37Report {
    pub p: u64,
    pub p_derived_order: u64,
    pub g_derived_order: u64,
}

impl Prop37Report {
    pub fn pass(&self) -> bool {
        self.p_derived_order == self.p && self.g_derived_order == self.p.pow(3)
    }
}

/// Proposition 3.7 under the same preconditions: `|P′| = p` and `|G′| = p³`.
pub fn prop37_check(eng: &Engine, report: &MonomialityReport) -> Result<Option<Prop37Report>> {
    let Some((_, p, psub)) = pattern_with_unique_minimal(eng, report) else {
        return Ok(None);
    };
    let g = &report.group;
    let pp = commutator_subgroup(&psub, &psub)?.order() as u64;
    let gp = commutator_subgroup(&g.full_subgroup(), &g.full_subgroup())?.order() as u64;
    Ok(Some(Prop37Report {
        p,
        p_derived_order: pp,
        g_derived_order: gp,
    }))
}

pub struct Lemma32Report {
    pub p: u64,
    pub sylow_index: u64,
    pub failures: Vec<String>,
}

impl Lemma32Report {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Lemma 3.2: unique minimal normal subgroup, `G′` nilpotent, `|mcd| = 2`
/// imply `G′` is a `p`-group and every irreducible of `p′`-degree is
/// monomial with degree `[G:P]` (the linear ones trivially so).
pub fn lemma32_check(eng: &Engine, report: &MonomialityReport) -> Result<Option<Lemma32Report>> {
    let g = &report.group;
    if report.mcd.len() != 2 {
        return Ok(None);
    }
    let lat = eng.lattice_of(g);
    if minimal_normal_subgroups(&lat).len() != 1 {
        return Ok(None);
    }
    let gp = commutator_subgroup(&g.full_subgroup(), &g.full_subgroup())?;
    if gp.is_trivial() {
        return Ok(None);
    }
    let gp_emb = eng.embedding_of(&gp);
    if !is_nilpotent(eng, &gp_emb.sub) {
        return Ok(None);
    }
    let mut failures = Vec::new();
    let gp_primes = prime_divisors(gp.order() as u64);
    if gp_primes.len() != 1 {
        failures.push(format!("G′ of order {} is not a p-group", gp.order()));
        return Ok(Some(Lemma32Report {
            p: 0,
            sylow_index: 0,
            failures,
        }));
    }
    let p = gp_primes[0];
    let sylow_index = (g.order / p_part(g.order, p)) as u64;
    for cr in &report.per_char {
        if cr.degree % p == 0 {
            continue;
        }
        if cr.monomial.is_none() {
            failures.push(format!("p′-degree {} irreducible is not monomial", cr.degree));
        }
        if cr.degree > 1 && cr.degree != sylow_index {
            failures.push(format!(
                "nonlinear p′-degree {} differs from [G:P] = {sylow_index}",
                cr.degree
            ));
        }
    }
    Ok(Some(Lemma32Report {
        p,
        sylow_index,
        failures,
    }))
}

/// Theorem 2.2 instance check: if `M ≤ Ker(ψ)` for every irreducible ψ with
/// `ψ(1) < χ(1)`, then `M′ ≤ Ker(χ)` must hold; vacuously true otherwise.
pub fn berger_check(
    eng: &Engine,
    chi: &ClassFunction,
    m: &Subgroup,
) -> Result<bool> {
    let g = &chi.group;
    let degree = chi.degree()?;
    let table = eng.table_of(g)?;
    for (i, c) in table.irreducibles.iter().enumerate() {
        if c.degree >= degree {
            continue;
        }
        let ker = kernel(&ClassFunction::from_character(&table, i))?;
        if !m.members.iter().all(|&x| ker.contains(x)) {
            return Ok(true); // hypothesis fails; nothing to check
        }
    }
    let mp = commutator_subgroup(m, m)?;
    let ker = kernel(chi)?;
    Ok(mp.members.iter().all(|&x| ker.contains(x)))
}
