//! Shared helpers for the integration suites: a pool of prepared catalog
//! groups, randomized law checks, and independent brute-force oracles.

#![allow(dead_code)]

use monochar::catalog::{default_catalog, recipe_order_hint};
use monochar::charfn::{
    embed, induce, inner_product, kernel, lift, mackey_restriction, restrict, ClassFunction,
};
use monochar::engine::Engine;
use monochar::group::{quotient_group, GroupHandle, Subgroup};
use monochar::monomial::{is_monomial, is_super_monomial, is_super_monomial_primitive_form};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

pub struct PoolGroup {
    pub name: String,
    pub group: Arc<GroupHandle>,
    pub engine: Engine,
}

/// Builds every catalog recipe whose order is at most `max_order`.
pub fn pool(max_order: usize) -> Vec<PoolGroup> {
    default_catalog(max_order, false)
        .into_iter()
        .filter(|e| {
            recipe_order_hint(&e.recipe)
                .map(|o| o <= max_order as u64)
                .unwrap_or(false)
        })
        .map(|e| {
            let group = e.build().expect("catalog entry builds");
            let engine = Engine::new(Arc::clone(&group));
            PoolGroup {
                name: e.name,
                group,
                engine,
            }
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random subgroup (weighted by conjugacy class count, not by
/// conjugate multiplicity; every class can be drawn).
pub fn random_subgroup(pg: &PoolGroup, rng: &mut ChaCha8Rng) -> Subgroup {
    let lat = pg.engine.lattice_of(&pg.group);
    let i = rng.gen_range(0..lat.classes.len());
    lat.classes[i].rep.clone()
}

/// ⟨θ^G, χ⟩ = ⟨θ, χ|_H⟩ for random (G, H, θ, χ).
pub fn frobenius_reciprocity_instance(pg: &PoolGroup, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let h = random_subgroup(pg, rng);
    let emb = pg.engine.embedding_of(&h);
    let sub_table = pg.engine.table_of(&emb.sub).map_err(|e| e.to_string())?;
    let table = pg.engine.table_of(&pg.group).map_err(|e| e.to_string())?;
    let theta = ClassFunction::from_character(&sub_table, rng.gen_range(0..sub_table.irreducibles.len()));
    let chi = ClassFunction::from_character(&table, rng.gen_range(0..table.irreducibles.len()));
    let lhs = inner_product(&induce(&emb, &theta).map_err(|e| e.to_string())?, &chi)
        .map_err(|e| e.to_string())?;
    let rhs = inner_product(&theta, &restrict(&emb, &chi).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!(
            "{}: Frobenius reciprocity broken: {lhs} != {rhs}",
            pg.name
        ));
    }
    Ok(())
}

/// `(θ^G)|_K = Σ_t ((θ^t)|_{K ∩ tHt⁻¹})^K` over double cosets, for random
/// (G, H, K, θ).
pub fn mackey_instance(pg: &PoolGroup, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = &pg.group.ctx;
    let h = random_subgroup(pg, rng);
    let k = random_subgroup(pg, rng);
    let hemb = pg.engine.embedding_of(&h);
    let kemb = pg.engine.embedding_of(&k);
    let sub_table = pg.engine.table_of(&hemb.sub).map_err(|e| e.to_string())?;
    let theta = ClassFunction::from_character(&sub_table, rng.gen_range(0..sub_table.irreducibles.len()));
    let lhs = restrict(&kemb, &induce(&hemb, &theta).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let mut sum = vec![0u64; kemb.sub.num_classes()];
    for (_, part) in mackey_restriction(&hemb, &theta, &kemb).map_err(|e| e.to_string())? {
        for (s, v) in sum.iter_mut().zip(&part.values) {
            *s = ctx.add(*s, *v);
        }
    }
    if lhs.values != sum {
        return Err(format!(
            "{}: Mackey decomposition broken for |H|={}, |K|={}",
            pg.name,
            h.order(),
            k.order()
        ));
    }
    Ok(())
}

/// `Ker(θ^G) = ∩_{x∈G} x·Ker(θ)·x⁻¹` for random (G, H, θ).
pub fn kernel_intersection_instance(pg: &PoolGroup, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = &pg.group;
    let h = random_subgroup(pg, rng);
    let emb = pg.engine.embedding_of(&h);
    let sub_table = pg.engine.table_of(&emb.sub).map_err(|e| e.to_string())?;
    let theta = ClassFunction::from_character(&sub_table, rng.gen_range(0..sub_table.irreducibles.len()));
    let induced = induce(&emb, &theta).map_err(|e| e.to_string())?;
    let lhs = kernel(&induced).map_err(|e| e.to_string())?.members;
    // the kernel of θ, translated into parent ids
    let ker_theta: Vec<u16> = kernel(&theta)
        .map_err(|e| e.to_string())?
        .members
        .iter()
        .map(|&s| emb.to_parent(s))
        .collect();
    let mut rhs: BTreeSet<u16> = ker_theta.iter().copied().collect();
    for x in 0..g.order as u16 {
        let conj: BTreeSet<u16> = g.conjugate_set(&ker_theta, x).into_iter().collect();
        rhs = rhs.intersection(&conj).copied().collect();
    }
    let rhs: Vec<u16> = rhs.into_iter().collect();
    if lhs != rhs {
        return Err(format!(
            "{}: kernel of induced != intersection of conjugate kernels",
            pg.name
        ));
    }
    Ok(())
}

/// For `N ⊴ G` and `N ≤ H ≤ G`: inducing `ψ ∈ Irr(H/N)` to `G/N` and lifting
/// to `G` equals lifting `ψ` to `H` and inducing to `G`. Returns `Ok(false)`
/// when the group has no usable normal subgroup.
pub fn lift_induce_instance(pg: &PoolGroup, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let g = &pg.group;
    let lat = pg.engine.lattice_of(g);
    let normals: Vec<&Subgroup> = lat
        .normal_subgroups()
        .filter(|n| !n.is_trivial() && !n.is_whole_group())
        .collect();
    if normals.is_empty() {
        return Ok(false);
    }
    let n = normals[rng.gen_range(0..normals.len())];
    let q = quotient_group(g, n).map_err(|e| e.to_string())?;
    // subgroups of G containing N (conjugation fixes the property since N ⊴ G)
    let overgroups: Vec<&Subgroup> = lat
        .classes
        .iter()
        .map(|c| &c.rep)
        .filter(|h| n.members.iter().all(|&x| h.contains(x)))
        .collect();
    let h = overgroups[rng.gen_range(0..overgroups.len())];
    let hemb = pg.engine.embedding_of(h);
    // image of H in G/N
    let hbar: Vec<u16> = {
        let mut v: Vec<u16> = h.members.iter().map(|&x| q.proj[x as usize]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let hbar_emb = embed(&q.group.subgroup(hbar));
    let bar_table = monochar::table::character_table(&hbar_emb.sub).map_err(|e| e.to_string())?;
    let psi = ClassFunction::from_character(&bar_table, rng.gen_range(0..bar_table.irreducibles.len()));
    // route A: induce in the quotient, then lift to G
    let a = lift(g, &q, &induce(&hbar_emb, &psi).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    // route B: pull ψ back to H, then induce to G
    let pulled = ClassFunction {
        group: Arc::clone(&hemb.sub),
        values: (0..hemb.sub.num_classes())
            .map(|c| {
                let pid = hemb.to_parent(hemb.sub.class_rep(c));
                let qid = q.proj[pid as usize];
                psi.at_element(hbar_emb.to_sub(qid).expect("image of H"))
            })
            .collect(),
    };
    let b = induce(&hemb, &pulled).map_err(|e| e.to_string())?;
    if a.values != b.values {
        return Err(format!(
            "{}: lift∘induce != induce∘lift for |N|={}, |H|={}",
            pg.name,
            n.order(),
            h.order()
        ));
    }
    Ok(true)
}

/// Brute-force subgroup enumeration: all cyclic subgroups, closed under
/// pairwise joins to a fixpoint. Every subgroup is a join of its cyclic
/// subgroups, so the fixpoint is the full set of subgroups.
pub fn oracle_subgroup_sets(g: &Arc<GroupHandle>) -> BTreeSet<Vec<u16>> {
    let mut sets: BTreeSet<Vec<u16>> = BTreeSet::new();
    sets.insert(vec![g.identity]);
    let mut frontier: Vec<Vec<u16>> = Vec::new();
    for x in 0..g.order as u16 {
        let c = g.closure_ids(&[x]);
        if sets.insert(c.clone()) {
            frontier.push(c);
        }
    }
    while !frontier.is_empty() {
        let known: Vec<Vec<u16>> = sets.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &known {
                let mut gens = a.clone();
                gens.extend(b);
                let join = g.closure_ids(&gens);
                if !sets.contains(&join) {
                    sets.insert(join.clone());
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    sets
}

/// All linear characters of the subgroup with the given member set, found by
/// enumerating root-of-unity images of a generating set and extending each
/// assignment to a homomorphism (or rejecting it). Values are indexed by
/// parent element id.
pub fn oracle_linear_characters(g: &Arc<GroupHandle>, members: &[u16]) -> Vec<HashMap<u16, u64>> {
    let ctx = &g.ctx;
    // greedy generating set
    let mut gens: Vec<u16> = Vec::new();
    let mut closed = vec![g.identity];
    for &x in members {
        if !closed.contains(&x) {
            gens.push(x);
            closed = g.closure_ids(&gens);
        }
    }
    let orders: Vec<u64> = gens.iter().map(|&x| g.element_orders[x as usize]).collect();
    let roots: Vec<u64> = orders.iter().map(|&o| ctx.root_of_order(o)).collect();
    let mut out = Vec::new();
    let mut odometer = vec![0u64; gens.len()];
    loop {
        let images: Vec<u64> = roots
            .iter()
            .zip(&odometer)
            .map(|(&w, &k)| ctx.pow(w, k))
            .collect();
        if let Some(val) = extend_to_hom(g, members, &gens, &images) {
            out.push(val);
        }
        // advance the mixed-radix odometer
        let mut i = 0;
        loop {
            if i == gens.len() {
                return out;
            }
            odometer[i] += 1;
            if odometer[i] < orders[i] {
                break;
            }
            odometer[i] = 0;
            i += 1;
        }
    }
}

/// Propagates `val(x·gᵢ) = val(x)·imageᵢ` from the identity; a conflict means
/// the images do not define a homomorphism. Enforcing the relation at every
/// element of H makes full multiplicativity automatic.
fn extend_to_hom(
    g: &Arc<GroupHandle>,
    members: &[u16],
    gens: &[u16],
    images: &[u64],
) -> Option<HashMap<u16, u64>> {
    let ctx = &g.ctx;
    let mut val: HashMap<u16, u64> = HashMap::with_capacity(members.len());
    val.insert(g.identity, 1);
    let mut stack = vec![g.identity];
    while let Some(x) = stack.pop() {
        let v = val[&x];
        for (&gi, &wi) in gens.iter().zip(images) {
            let y = g.mul(x, gi);
            let nv = ctx.mul(v, wi);
            match val.get(&y) {
                Some(&old) if old != nv => return None,
                Some(_) => {}
                None => {
                    val.insert(y, nv);
                    stack.push(y);
                }
            }
        }
    }
    debug_assert_eq!(val.len(), members.len());
    Some(val)
}

/// `λ^G(g) = (1/|H|)·Σ_{x∈G} λ°(x·g·x⁻¹)` evaluated per class, straight from
/// the definition.
pub fn oracle_induce_linear(
    g: &Arc<GroupHandle>,
    members: &[u16],
    lambda: &HashMap<u16, u64>,
) -> Vec<u64> {
    let ctx = &g.ctx;
    let inv_h = ctx.inv(members.len() as u64 % ctx.p);
    (0..g.num_classes())
        .map(|i| {
            let rep = g.class_rep(i);
            let mut s = 0u64;
            for x in 0..g.order as u16 {
                if let Some(&v) = lambda.get(&g.conj(x, rep)) {
                    s = ctx.add(s, v);
                }
            }
            ctx.mul(s, inv_h)
        })
        .collect()
}

/// Compares the fast classifier against brute force: for every irreducible,
/// try every subgroup (all conjugates, not just class representatives) and
/// every linear character of it.
pub fn monomiality_oracle_check(pg: &PoolGroup) -> Result<(), String> {
    let g = &pg.group;
    let table = pg.engine.table_of(g).map_err(|e| e.to_string())?;
    let all_subgroups: Vec<Vec<u16>> = oracle_subgroup_sets(g).into_iter().collect();
    for (i, chr) in table.irreducibles.iter().enumerate() {
        let chi = ClassFunction::from_character(&table, i);
        let fast = is_monomial(&pg.engine, g, &chi)
            .map_err(|e| e.to_string())?
            .is_some();
        let mut brute = false;
        'outer: for members in &all_subgroups {
            if (g.order / members.len()) as u64 != chr.degree {
                continue;
            }
            for lam in oracle_linear_characters(g, members) {
                if oracle_induce_linear(g, members, &lam) == chr.values {
                    brute = true;
                    break 'outer;
                }
            }
        }
        if fast != brute {
            return Err(format!(
                "{}: X.{} (degree {}): classifier says monomial={fast}, brute force says {brute}",
                pg.name,
                i + 1,
                chr.degree
            ));
        }
    }
    Ok(())
}

/// The two formulations of super-monomiality (every inducer is monomial vs.
/// every primitive inducer is linear) must agree on every irreducible.
pub fn super_monomial_forms_check(pg: &PoolGroup) -> Result<(), String> {
    let table = pg.engine.table_of(&pg.group).map_err(|e| e.to_string())?;
    for i in 0..table.irreducibles.len() {
        let chi = ClassFunction::from_character(&table, i);
        let a = is_super_monomial(&pg.engine, &pg.group, &chi)
            .map_err(|e| e.to_string())?
            .is_yes();
        let b = is_super_monomial_primitive_form(&pg.engine, &pg.group, &chi)
            .map_err(|e| e.to_string())?
            .is_yes();
        if a != b {
            return Err(format!(
                "{}: X.{}: inducer formulation says {a}, primitive formulation says {b}",
                pg.name,
                i + 1
            ));
        }
    }
    Ok(())
}
