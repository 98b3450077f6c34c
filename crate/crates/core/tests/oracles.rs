//! Cross-checks of the optimized algorithms against independent brute-force
//! oracles that share no code with them.

mod common;

use common::{monomiality_oracle_check, oracle_subgroup_sets, pool};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// The layered lattice enumeration must find exactly the subgroups produced
/// by closing the cyclic subgroups under pairwise joins.
#[test]
fn subgroup_enumeration_matches_join_closure_oracle() {
    pool(48).par_iter().for_each(|pg| {
        let lat = pg.engine.lattice_of(&pg.group);
        let from_lattice: BTreeSet<Vec<u16>> = lat
            .classes
            .iter()
            .flat_map(|c| c.conjugates.iter().cloned())
            .collect();
        let brute = oracle_subgroup_sets(&pg.group);
        assert_eq!(
            from_lattice, brute,
            "{}: lattice has {} subgroups, oracle found {}",
            pg.name,
            from_lattice.len(),
            brute.len()
        );
    });
}

/// The lattice-based monomiality classifier must agree with trying every
/// subgroup (all conjugates) and every linear character, with linear
/// characters and induction both recomputed from first principles.
#[test]
fn monomiality_matches_brute_force_oracle() {
    pool(48)
        .par_iter()
        .for_each(|pg| monomiality_oracle_check(pg).unwrap());
}
