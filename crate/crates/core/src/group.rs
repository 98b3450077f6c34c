//! Fully enumerated finite permutation groups with Cayley-index
//! multiplication, conjugacy classes, quotients, and series.

use crate::error::{Error, Result};
use crate::modular::ModCtx;
use crate::perm::Perm;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// A fully enumerated group. Immutable after construction; share via `Arc`.
pub struct GroupHandle {
    pub degree: usize,
    pub generators: Vec<Perm>,
    /// Canonical element order: lexicographic on image arrays.
    pub elements: Vec<Perm>,
    index: HashMap<Perm, u16>,
    pub order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    pub identity: u16,
    pub class_of: Vec<u16>,
    /// Sorted member ids per class; classes ordered by (size, smallest id).
    pub classes: Vec<Vec<u16>>,
    pub inverse_class: Vec<u16>,
    pub element_orders: Vec<u64>,
    pub exponent: u64,
    pub ctx: Arc<ModCtx>,
    /// SHA-256 over degree, canonical element images, and the Cayley table.
    pub cayley_hash: [u8; 32],
    /// SHA-256 over degree and canonical element images only; memo key.
    pub element_key: [u8; 32],
}

impl std::fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHandle")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl GroupHandle {
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn conj(&self, g: u16, x: u16) -> u16 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn id_of(&self, p: &Perm) -> Option<u16> {
        self.index.get(p).copied()
    }

    pub fn class_rep(&self, class: usize) -> u16 {
        self.classes[class][0]
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn identity_class(&self) -> usize {
        self.class_of[self.identity as usize] as usize
    }

    pub fn pow_elem(&self, x: u16, k: u64) -> u16 {
        let mut acc = self.identity;
        let o = self.element_orders[x as usize];
        for _ in 0..(k % o) {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Class of `rep^k` for the representative of `class`.
    pub fn class_of_power(&self, class: usize, k: u64) -> usize {
        self.class_of[self.pow_elem(self.class_rep(class), k) as usize] as usize
    }

    /// Closure of a generating id set inside this group.
    pub fn closure_ids(&self, gens: &[u16]) -> Vec<u16> {
        let mut member = vec![false; self.order];
        member[self.identity as usize] = true;
        let mut out = vec![self.identity];
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    out.push(y);
                    queue.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn conjugate_set(&self, members: &[u16], g: u16) -> Vec<u16> {
        let mut out: Vec<u16> = members.iter().map(|&x| self.conj(g, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_normal_set(&self, members: &[u16]) -> bool {
        let gen_ids: Vec<u16> = self
            .generators
            .iter()
            .map(|p| self.id_of(p).expect("generator is in group"))
            .collect();
        gen_ids
            .iter()
            .all(|&g| self.conjugate_set(members, g) == members)
    }

    pub fn subgroup(self: &Arc<Self>, mut members: Vec<u16>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let normal = self.is_normal_set(&members);
        Subgroup {
            parent: Arc::clone(self),
            members,
            normal,
        }
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: vec![self.identity],
            normal: true,
        }
    }

    pub fn full_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(self),
            members: (0..self.order as u16).collect(),
            normal: true,
        }
    }
}

/// A subgroup as a sorted member-id set of its parent.
#[derive(Clone)]
pub struct Subgroup {
    pub parent: Arc<GroupHandle>,
    pub members: Vec<u16>,
    pub normal: bool,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, normal {})", self.order(), self.normal)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order / self.order()
    }

    pub fn contains(&self, id: u16) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole_group(&self) -> bool {
        self.members.len() == self.parent.order
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn element_perms(&self) -> Vec<Perm> {
        self.members
            .iter()
            .map(|&id| self.parent.elements[id as usize].clone())
            .collect()
    }

    /// A small generating sequence found greedily.
    pub fn generating_ids(&self) -> Vec<u16> {
        let g = &self.parent;
        let mut gens: Vec<u16> = Vec::new();
        let mut have = vec![g.identity];
        for &x in &self.members {
            if have.binary_search(&x).is_err() {
                gens.push(x);
                have = g.closure_ids(&gens);
                if have.len() == self.members.len() {
                    break;
                }
            }
        }
        gens
    }
}

/// Subgroup generated by all commutators `[a,b] = a b a⁻¹ b⁻¹`, `a∈A, b∈B`.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if !Arc::ptr_eq(&a.parent, &b.parent) {
        return Err(Error::GroupMismatch);
    }
    let g = &a.parent;
    let mut gens: Vec<u16> = Vec::new();
    let mut seen = vec![false; g.order];
    for &x in &a.members {
        for &y in &b.members {
            let c = g.mul(g.mul(g.mul(x, y), g.inv(x)), g.inv(y));
            if !seen[c as usize] {
                seen[c as usize] = true;
                gens.push(c);
            }
        }
    }
    let members = g.closure_ids(&gens);
    Ok(g.subgroup(members))
}

/// `S ⊇ S′ ⊇ S″ ⊇ …`, strictly descending until stable.
pub fn derived_series_of(sub: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![sub.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(last, last).expect("same parent");
        if next.members == last.members {
            break;
        }
        series.push(next);
    }
    series
}

pub fn derived_series(g: &Arc<GroupHandle>) -> Vec<Subgroup> {
    derived_series_of(&g.full_subgroup())
}

/// Number of strict steps to triviality; `None` when the series stalls
/// above the trivial subgroup (non-solvable).
pub fn derived_length(g: &Arc<GroupHandle>) -> Option<u32> {
    let series = derived_series(g);
    if series.last().unwrap().is_trivial() {
        Some(series.len() as u32 - 1)
    } else {
        None
    }
}

pub fn is_solvable(g: &Arc<GroupHandle>) -> bool {
    derived_length(g).is_some()
}

pub fn center(g: &Arc<GroupHandle>) -> Subgroup {
    let gen_ids: Vec<u16> = g
        .generators
        .iter()
        .map(|p| g.id_of(p).expect("generator is in group"))
        .collect();
    let members: Vec<u16> = (0..g.order as u16)
        .filter(|&x| gen_ids.iter().all(|&h| g.mul(x, h) == g.mul(h, x)))
        .collect();
    g.subgroup(members)
}

/// `G/N` realized as the coset-action permutation group of degree `[G:N]`,
/// together with the projection from element ids to quotient element ids.
pub struct Quotient {
    pub group: Arc<GroupHandle>,
    pub proj: Vec<u16>,
}

pub fn quotient_group(g: &Arc<GroupHandle>, n: &Subgroup) -> Result<Quotient> {
    if !Arc::ptr_eq(&n.parent, g) {
        return Err(Error::NotASubgroup);
    }
    if !n.normal {
        return Err(Error::NotNormal);
    }
    let order = g.order;
    let index = order / n.order();
    // coset id per element
    let mut coset_of = vec![u16::MAX; order];
    let mut num_cosets = 0u16;
    for x in 0..order as u16 {
        if coset_of[x as usize] != u16::MAX {
            continue;
        }
        for &h in &n.members {
            coset_of[g.mul(x, h) as usize] = num_cosets;
        }
        num_cosets += 1;
    }
    debug_assert_eq!(num_cosets as usize, index);
    let mut coset_rep = vec![0u16; index];
    for x in (0..order as u16).rev() {
        coset_rep[coset_of[x as usize] as usize] = x;
    }
    let act = |x: u16| -> Perm {
        let images: Vec<u16> = (0..index)
            .map(|c| coset_of[g.mul(x, coset_rep[c]) as usize])
            .collect();
        Perm::new(images).expect("coset action is a permutation")
    };
    let gen_perms: Vec<Perm> = g.generators.iter().map(|p| act(g.id_of(p).unwrap())).collect();
    let quo = build_group_inner(&gen_perms, usize::MAX, Some(Arc::clone(&g.ctx)))?;
    let proj: Vec<u16> = (0..order as u16)
        .map(|x| quo.id_of(&act(x)).expect("projection lands in quotient"))
        .collect();
    Ok(Quotient { group: quo, proj })
}

impl Quotient {
    /// Member ids of the preimage of a quotient member-id set.
    pub fn preimage(&self, quo_members: &[u16]) -> Vec<u16> {
        let set: std::collections::HashSet<u16> = quo_members.iter().copied().collect();
        (0..self.proj.len() as u16)
            .filter(|&x| set.contains(&self.proj[x as usize]))
            .collect()
    }
}

pub fn build_group(generators: &[Perm]) -> Result<Arc<GroupHandle>> {
    build_group_inner(generators, DEFAULT_ORDER_CAP, None)
}

pub fn build_group_capped(generators: &[Perm], cap: usize) -> Result<Arc<GroupHandle>> {
    build_group_inner(generators, cap, None)
}

/// Build a handle for a known-closed element set (e.g. a subgroup), reusing
/// the ambient modular context so class functions stay in one field.
pub fn build_from_elements(elements: Vec<Perm>, ctx: Arc<ModCtx>) -> Arc<GroupHandle> {
    // A generating set is recovered greedily; closure is assumed.
    finish_group(elements, Vec::new(), Some(ctx))
}

fn build_group_inner(
    generators: &[Perm],
    cap: usize,
    ctx: Option<Arc<ModCtx>>,
) -> Result<Arc<GroupHandle>> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let degree = generators[0].degree();
    for p in generators {
        if p.degree() != degree {
            return Err(Error::DegreeMismatch(degree, p.degree()));
        }
    }
    // BFS closure under left multiplication by generators.
    let mut elements = vec![Perm::identity(degree)];
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    seen.insert(elements[0].clone(), ());
    let mut cursor = 0;
    while cursor < elements.len() {
        let x = elements[cursor].clone();
        cursor += 1;
        for g in generators {
            let y = g.compose(&x);
            if !seen.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::OrderCap { cap });
                }
                seen.insert(y.clone(), ());
                elements.push(y);
            }
        }
    }
    Ok(finish_group(elements, generators.to_vec(), ctx))
}

fn finish_group(
    mut elements: Vec<Perm>,
    mut generators: Vec<Perm>,
    ctx: Option<Arc<ModCtx>>,
) -> Arc<GroupHandle> {
    elements.sort_unstable();
    let order = elements.len();
    let degree = elements[0].degree();
    let index: HashMap<Perm, u16> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u16))
        .collect();
    let identity = index[&Perm::identity(degree)];

    let mut mul = vec![0u16; order * order];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            mul[i * order + j] = index[&a.compose(b)];
        }
    }
    let inv: Vec<u16> = elements.iter().map(|p| index[&p.inverse()]).collect();

    if generators.is_empty() {
        // recover a small generating sequence for handles built from elements
        let mut gen_ids: Vec<u16> = Vec::new();
        let closure = |gens: &[u16]| -> Vec<u16> {
            let mut member = vec![false; order];
            member[identity as usize] = true;
            let mut out = vec![identity];
            let mut queue = vec![identity];
            while let Some(x) = queue.pop() {
                for &g in gens {
                    let y = mul[x as usize * order + g as usize];
                    if !member[y as usize] {
                        member[y as usize] = true;
                        out.push(y);
                        queue.push(y);
                    }
                }
            }
            out
        };
        let mut have = vec![identity];
        for x in 0..order as u16 {
            have.sort_unstable();
            if have.binary_search(&x).is_err() {
                gen_ids.push(x);
                have = closure(&gen_ids);
                if have.len() == order {
                    break;
                }
            }
        }
        if order == 1 {
            gen_ids.push(identity);
        }
        generators = gen_ids
            .iter()
            .map(|&i| elements[i as usize].clone())
            .collect();
    }

    // conjugacy classes: orbits under conjugation by generators
    let gen_ids: Vec<u16> = generators.iter().map(|p| index[p]).collect();
    let mut class_of = vec![u16::MAX; order];
    let mut raw_classes: Vec<Vec<u16>> = Vec::new();
    for x in 0..order as u16 {
        if class_of[x as usize] != u16::MAX {
            continue;
        }
        let cid = raw_classes.len() as u16;
        let mut orbit = vec![x];
        class_of[x as usize] = cid;
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for &g in &gen_ids {
                let z = mul[(mul[g as usize * order + y as usize]) as usize * order
                    + inv[g as usize] as usize];
                if class_of[z as usize] == u16::MAX {
                    class_of[z as usize] = cid;
                    orbit.push(z);
                    queue.push(z);
                }
            }
        }
        orbit.sort_unstable();
        raw_classes.push(orbit);
    }
    // canonical class order: (size, smallest member id); identity class first
    let mut perm_idx: Vec<usize> = (0..raw_classes.len()).collect();
    perm_idx.sort_by_key(|&c| (raw_classes[c].len(), raw_classes[c][0]));
    let classes: Vec<Vec<u16>> = perm_idx.iter().map(|&c| raw_classes[c].clone()).collect();
    for (new_id, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x as usize] = new_id as u16;
        }
    }
    let inverse_class: Vec<u16> = classes
        .iter()
        .map(|c| class_of[inv[c[0] as usize] as usize])
        .collect();

    let element_orders: Vec<u64> = elements.iter().map(|p| p.order()).collect();
    let exponent = element_orders
        .iter()
        .fold(1u64, |acc, &o| num_integer::lcm(acc, o));

    let ctx = ctx.unwrap_or_else(|| Arc::new(ModCtx::new(order as u64, exponent)));

    let mut hasher = Sha256::new();
    hasher.update((degree as u64).to_le_bytes());
    for p in &elements {
        for &i in p.images() {
            hasher.update(i.to_le_bytes());
        }
    }
    let element_key: [u8; 32] = hasher.clone().finalize().into();
    for &m in &mul {
        hasher.update(m.to_le_bytes());
    }
    let cayley_hash: [u8; 32] = hasher.finalize().into();

    Arc::new(GroupHandle {
        degree,
        generators,
        elements,
        index,
        order,
        mul,
        inv,
        identity,
        class_of,
        classes,
        inverse_class,
        element_orders,
        exponent,
        ctx,
        cayley_hash,
        element_key,
    })
}
