//! Subgroup lattice enumeration up to conjugacy, plus targeted searches
//! (Sylow, Hall, minimal normal).

use crate::error::{Error, Result};
use crate::group::{GroupHandle, Subgroup};
use crate::modular::factor;
use std::collections::HashMap;
use std::sync::Arc;

pub struct LatticeClass {
    pub rep: Subgroup,
    /// Sorted member-id sets of all conjugates, representative included.
    pub conjugates: Vec<Vec<u16>>,
}

pub struct SubgroupLattice {
    pub parent: Arc<GroupHandle>,
    /// Classes sorted by (order, representative member set).
    pub classes: Vec<LatticeClass>,
    pub normal_ids: Vec<usize>,
}

impl SubgroupLattice {
    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.conjugates.len()).sum()
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.normal_ids.iter().map(|&i| &self.classes[i].rep)
    }

    /// Class index of the (unique) class containing this member set.
    pub fn class_of_set(&self, members: &[u16]) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.conjugates.iter().any(|s| s == members))
    }
}

/// Layered generation: cyclic subgroups first, then closures of
/// (subgroup, extra generator) pairs to a fixpoint. Every subgroup is found
/// because each one is reachable by adding generators one at a time.
pub fn enumerate_subgroups(g: &Arc<GroupHandle>) -> SubgroupLattice {
    let order = g.order;
    // member set -> small generating set (kept to make closures cheap)
    let mut found: HashMap<Vec<u16>, Vec<u16>> = HashMap::new();
    let trivial = vec![g.identity];
    found.insert(trivial.clone(), vec![]);
    let mut frontier: Vec<(Vec<u16>, Vec<u16>)> = vec![(trivial, vec![])];
    for x in 0..order as u16 {
        let members = g.closure_ids(&[x]);
        let gens = vec![x];
        if !found.contains_key(&members) {
            found.insert(members.clone(), gens.clone());
            frontier.push((members, gens));
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (members, gens) in &frontier {
            if members.len() == order {
                continue;
            }
            for x in 0..order as u16 {
                if members.binary_search(&x).is_ok() {
                    continue;
                }
                let mut new_gens = gens.clone();
                new_gens.push(x);
                let closed = g.closure_ids(&new_gens);
                if !found.contains_key(&closed) {
                    found.insert(closed.clone(), new_gens.clone());
                    next.push((closed, new_gens));
                }
            }
        }
        frontier = next;
    }

    // group into conjugacy classes, conjugating by all of G
    let mut sets: Vec<Vec<u16>> = found.into_keys().collect();
    sets.sort_unstable_by_key(|s| (s.len(), s.clone()));
    let mut assigned: HashMap<Vec<u16>, bool> = HashMap::new();
    let mut classes: Vec<LatticeClass> = Vec::new();
    for set in &sets {
        if assigned.contains_key(set) {
            continue;
        }
        let mut conjugates = vec![set.clone()];
        assigned.insert(set.clone(), true);
        for t in 0..order as u16 {
            let c = g.conjugate_set(set, t);
            if !assigned.contains_key(&c) {
                assigned.insert(c.clone(), true);
                conjugates.push(c);
            }
        }
        conjugates.sort_unstable();
        let normal = conjugates.len() == 1;
        classes.push(LatticeClass {
            rep: Subgroup {
                parent: Arc::clone(g),
                members: set.clone(),
                normal,
            },
            conjugates,
        });
    }
    let normal_ids = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.rep.normal)
        .map(|(i, _)| i)
        .collect();
    SubgroupLattice {
        parent: Arc::clone(g),
        classes,
        normal_ids,
    }
}

/// A subgroup of order exactly the `p`-part of `|G|` (trivial if `p ∤ |G|`).
pub fn sylow_subgroup(lat: &SubgroupLattice, p: u64) -> Result<Subgroup> {
    if !crate::modular::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut part = 1usize;
    let mut n = lat.parent.order;
    while n % p as usize == 0 {
        part *= p as usize;
        n /= p as usize;
    }
    Ok(lat
        .classes
        .iter()
        .find(|c| c.rep.order() == part)
        .expect("Sylow subgroups exist")
        .rep
        .clone())
}

/// A subgroup whose order is exactly the `primes`-part of `|G|`, if any.
pub fn hall_subgroup(lat: &SubgroupLattice, primes: &[u64]) -> Option<Subgroup> {
    let mut part = 1usize;
    let mut n = lat.parent.order as u64;
    for (p, _) in factor(lat.parent.order as u64) {
        if primes.contains(&p) {
            while n % p == 0 {
                part *= p as usize;
                n /= p;
            }
        }
    }
    lat.classes
        .iter()
        .find(|c| c.rep.order() == part)
        .map(|c| c.rep.clone())
}

/// All normal subgroups minimal among the nontrivial ones.
pub fn minimal_normal_subgroups(lat: &SubgroupLattice) -> Vec<Subgroup> {
    let normals: Vec<&Subgroup> = lat
        .normal_subgroups()
        .filter(|s| !s.is_trivial())
        .collect();
    normals
        .iter()
        .filter(|n| {
            !normals.iter().any(|m| {
                m.order() < n.order() && m.members.iter().all(|x| n.contains(*x))
            })
        })
        .map(|n| (*n).clone())
        .collect()
}

/// `N_G(H)` as a member-id set.
pub fn normalizer(g: &GroupHandle, members: &[u16]) -> Vec<u16> {
    (0..g.order as u16)
        .filter(|&t| g.conjugate_set(members, t) == members)
        .collect()
}
