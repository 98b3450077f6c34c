//! Randomized and exhaustive checks of the character-theoretic laws the
//! library relies on. All arithmetic is exact, so every check is an equality,
//! never an approximation.

mod common;

use common::{
    frobenius_reciprocity_instance, kernel_intersection_instance, lift_induce_instance,
    mackey_instance, pool, rng,
};
use rand::Rng;

/// Row/column orthogonality and Σχ(1)² = |G| on every catalog group.
#[test]
fn orthogonality_and_degree_sum_on_catalog() {
    for pg in pool(100) {
        let table = pg.engine.table_of(&pg.group).unwrap();
        table
            .check_orthogonality()
            .unwrap_or_else(|e| panic!("{}: {e}", pg.name));
        let sum: u64 = table.irreducibles.iter().map(|c| c.degree * c.degree).sum();
        assert_eq!(sum, pg.group.order as u64, "{}", pg.name);
    }
}

#[test]
fn frobenius_reciprocity_random_instances() {
    let pool = pool(60);
    let mut rng = rng(0xf20b);
    for _ in 0..24 {
        let pg = &pool[rng.gen_range(0..pool.len())];
        frobenius_reciprocity_instance(pg, &mut rng).unwrap();
    }
}

#[test]
fn mackey_decomposition_random_instances() {
    let pool = pool(60);
    let mut rng = rng(0x3ac4e1);
    for _ in 0..24 {
        let pg = &pool[rng.gen_range(0..pool.len())];
        mackey_instance(pg, &mut rng).unwrap();
    }
}

#[test]
fn kernel_of_induced_random_instances() {
    let pool = pool(60);
    let mut rng = rng(0x4e24);
    for _ in 0..24 {
        let pg = &pool[rng.gen_range(0..pool.len())];
        kernel_intersection_instance(pg, &mut rng).unwrap();
    }
}

#[test]
fn lift_induce_commute_random_instances() {
    let pool = pool(60);
    let mut rng = rng(0x11f7);
    let mut done = 0;
    while done < 24 {
        let pg = &pool[rng.gen_range(0..pool.len())];
        if lift_induce_instance(pg, &mut rng).unwrap() {
            done += 1;
        }
    }
}
