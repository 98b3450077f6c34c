//! Irreducible character tables by Dixon's method: the central characters
//! are the common eigenvectors of the class-sum matrices over `F_P`, found by
//! iterative splitting with seeded-random linear combinations.

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::modular::{poly_mul, poly_roots, ModCtx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::sync::Arc;

/// An exact character. `lifted[i]` lists the pairs `(k, m_k)` with `m_k > 0`
/// such that `χ(g_i) = Σ m_k ζ_e^k` (e = exponent of the group); entries are
/// sorted by `k` and the multiplicities sum to the degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<u64>,
    pub degree: u64,
    pub lifted: Vec<Vec<(u32, u64)>>,
}

pub struct CharacterTable {
    pub group: Arc<GroupHandle>,
    /// Sorted by (degree, lexicographic lifted values).
    pub irreducibles: Vec<Character>,
}

impl CharacterTable {
    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles.iter().map(|c| c.degree).collect()
    }

    /// Distinct character degrees, ascending.
    pub fn cd(&self) -> Vec<u64> {
        let mut out = self.degrees();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Full first and second orthogonality relations, checked in `F_P`
    /// (decisive: all the quantities are integers bounded below `P`).
    pub fn check_orthogonality(&self) -> Result<()> {
        let g = &self.group;
        let ctx = &*g.ctx;
        let r = g.num_classes();
        let order_mod = g.order as u64 % ctx.p;
        let inv_order = ctx.inv(order_mod);
        let sizes: Vec<u64> = (0..r).map(|i| g.class_size(i) as u64 % ctx.p).collect();
        for (a, ca) in self.irreducibles.iter().enumerate() {
            for (b, cb) in self.irreducibles.iter().enumerate() {
                let mut s = 0u64;
                for i in 0..r {
                    let conj = cb.values[g.inverse_class[i] as usize];
                    s = ctx.add(s, ctx.mul(sizes[i], ctx.mul(ca.values[i], conj)));
                }
                let ip = ctx.mul(s, inv_order);
                if ip != u64::from(a == b) {
                    return Err(Error::TableCheck(format!(
                        "row orthogonality failed at ({a},{b})"
                    )));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let mut s = 0u64;
                for c in &self.irreducibles {
                    let conj = c.values[g.inverse_class[j] as usize];
                    s = ctx.add(s, ctx.mul(c.values[i], conj));
                }
                let expect = if i == j {
                    ctx.mul(order_mod, ctx.inv(sizes[i]))
                } else {
                    0
                };
                if s != expect {
                    return Err(Error::TableCheck(format!(
                        "column orthogonality failed at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Comparison of lifted coefficient rows as dense vectors, lexicographic.
pub fn cmp_lifted(a: &[Vec<(u32, u64)>], b: &[Vec<(u32, u64)>]) -> Ordering {
    for (ca, cb) in a.iter().zip(b) {
        let mut ia = 0;
        let mut ib = 0;
        loop {
            match (ca.get(ia), cb.get(ib)) {
                (None, None) => break,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(pa, va)), Some(&(pb, vb))) => {
                    if pa != pb {
                        // the earlier nonzero coordinate decides
                        return if pa < pb {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    ia += 1;
                    ib += 1;
                }
            }
        }
    }
    Ordering::Equal
}

pub fn character_table(g: &Arc<GroupHandle>) -> Result<CharacterTable> {
    let ctx = &*g.ctx;
    let r = g.num_classes();
    let n = g.order;
    let idc = g.identity_class();
    let mut rng = ChaCha8Rng::from_seed(g.cayley_hash);

    // invariant subspaces of the class algebra, refined until 1-dimensional
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut active: Vec<Space> = Vec::new();
    let full = Space {
        basis: (0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
            .collect(),
        pivots: (0..r).collect(),
    };
    if r == 1 {
        done.push(full.basis.into_iter().next().unwrap());
    } else {
        active.push(full);
    }

    let mut rounds = 0;
    while !active.is_empty() {
        rounds += 1;
        if rounds > 500 {
            return Err(Error::TableCheck(
                "eigenvector splitting did not converge".into(),
            ));
        }
        let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..ctx.p)).collect();
        let mc = class_combo_matrix(g, &coeffs);
        let mut next: Vec<Space> = Vec::new();
        for sp in active {
            split_space(ctx, r, &mc, sp, &mut rng, &mut done, &mut next)?;
        }
        active = next;
    }
    if done.len() != r {
        return Err(Error::TableCheck(format!(
            "found {} eigenvectors, expected {r}",
            done.len()
        )));
    }

    let order_mod = n as u64 % ctx.p;
    let inv_sizes: Vec<u64> = (0..r)
        .map(|i| ctx.inv(g.class_size(i) as u64 % ctx.p))
        .collect();
    let mut irreducibles = Vec::with_capacity(r);
    for mut w in done {
        if w[idc] == 0 {
            return Err(Error::TableCheck("eigenvector vanishes at identity".into()));
        }
        let scale = ctx.inv(w[idc]);
        for v in w.iter_mut() {
            *v = ctx.mul(*v, scale);
        }
        // Σ_i w_i w_{i⁻¹} / |C_i| = |G| / d²
        let mut s = 0u64;
        for i in 0..r {
            let t = ctx.mul(w[i], w[g.inverse_class[i] as usize]);
            s = ctx.add(s, ctx.mul(t, inv_sizes[i]));
        }
        if s == 0 {
            return Err(Error::TableCheck("degenerate norm sum".into()));
        }
        let d2 = ctx.lift_bounded(ctx.mul(order_mod, ctx.inv(s)), n as u64)?;
        let degree = isqrt(d2);
        if degree * degree != d2 {
            return Err(Error::TableCheck(format!("degree² = {d2} is not a square")));
        }
        let values: Vec<u64> = (0..r)
            .map(|i| ctx.mul(degree % ctx.p, ctx.mul(w[i], inv_sizes[i])))
            .collect();
        let lifted = lift_values(g, &values, degree)?;
        irreducibles.push(Character {
            values,
            degree,
            lifted,
        });
    }
    irreducibles.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then_with(|| cmp_lifted(&a.lifted, &b.lifted))
    });

    let sum_sq: u64 = irreducibles.iter().map(|c| c.degree * c.degree).sum();
    if sum_sq != n as u64 {
        return Err(Error::TableCheck(format!(
            "Σ degree² = {sum_sq}, expected {n}"
        )));
    }
    let table = CharacterTable {
        group: Arc::clone(g),
        irreducibles,
    };
    table.check_orthogonality()?;
    Ok(table)
}

/// Recovers the cyclotomic multiplicities of a character from its residues.
/// For class rep `g` of order `o`, `m_k = (1/o)·Σ_l χ(g^l)·ω_o^{−kl}` is the
/// multiplicity of the eigenvalue `ζ_o^k`, an integer in `[0, degree]`.
pub(crate) fn lift_values(
    g: &GroupHandle,
    values: &[u64],
    degree: u64,
) -> Result<Vec<Vec<(u32, u64)>>> {
    let ctx = &*g.ctx;
    let e = g.exponent;
    let mut out = Vec::with_capacity(g.num_classes());
    for i in 0..g.num_classes() {
        let x = g.class_rep(i);
        let o = g.element_orders[x as usize];
        let step = (e / o) as u32;
        let w = ctx.root_of_order(o);
        let mut entries: Vec<(u32, u64)> = Vec::new();
        if degree == 1 {
            // a single root of unity: discrete log by direct scan
            let mut acc = 1u64;
            let mut found = false;
            for k in 0..o {
                if acc == values[i] {
                    entries.push((k as u32 * step, 1));
                    found = true;
                    break;
                }
                acc = ctx.mul(acc, w);
            }
            if !found {
                return Err(Error::TableCheck(
                    "linear character value is not a root of unity".into(),
                ));
            }
        } else {
            let ou = o as usize;
            let mut pw = vec![1u64; ou];
            for t in 1..ou {
                pw[t] = ctx.mul(pw[t - 1], w);
            }
            let mut vals_l = vec![0u64; ou];
            let mut xe = g.identity;
            for v in vals_l.iter_mut() {
                *v = values[g.class_of[xe as usize] as usize];
                xe = g.mul(xe, x);
            }
            let inv_o = ctx.inv(o % ctx.p);
            let mut total = 0u64;
            for k in 0..o {
                let mut acc = 0u64;
                for (l, &vl) in vals_l.iter().enumerate() {
                    let idx = ((o - (k * l as u64) % o) % o) as usize;
                    acc = ctx.add(acc, ctx.mul(vl, pw[idx]));
                }
                let m = ctx.lift_bounded(ctx.mul(acc, inv_o), degree)?;
                if m > 0 {
                    entries.push((k as u32 * step, m));
                    total += m;
                }
            }
            if total != degree {
                return Err(Error::TableCheck(
                    "cyclotomic multiplicities do not sum to the degree".into(),
                ));
            }
        }
        out.push(entries);
    }
    Ok(out)
}

struct Space {
    /// Reduced row-echelon basis; each row has 1 at its pivot column and 0
    /// at the other pivots, so in-span coordinates read off pivot columns.
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// `Mc[j][k] = Σ_i c_i·a_{ijk}` where `a_{ijk}` are the class multiplication
/// coefficients; built in O(|G|²) without materializing the `a` tensor.
fn class_combo_matrix(g: &GroupHandle, coeffs: &[u64]) -> Vec<u64> {
    let ctx = &*g.ctx;
    let r = g.num_classes();
    let n = g.order as u16;
    let mut mc = vec![0u64; r * r];
    for x in 0..n {
        let c = coeffs[g.class_of[x as usize] as usize];
        if c == 0 {
            continue;
        }
        for y in 0..n {
            let j = g.class_of[y as usize] as usize;
            let k = g.class_of[g.mul(x, y) as usize] as usize;
            mc[j * r + k] = ctx.add(mc[j * r + k], c);
        }
    }
    for k in 0..r {
        let inv = ctx.inv(g.class_size(k) as u64 % ctx.p);
        for j in 0..r {
            mc[j * r + k] = ctx.mul(mc[j * r + k], inv);
        }
    }
    mc
}

fn split_space(
    ctx: &ModCtx,
    r: usize,
    mc: &[u64],
    sp: Space,
    rng: &mut ChaCha8Rng,
    done: &mut Vec<Vec<u64>>,
    next: &mut Vec<Space>,
) -> Result<()> {
    let d = sp.basis.len();
    let imgs: Vec<Vec<u64>> = sp
        .basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|j| {
                    let mut s = 0u64;
                    for (k, &bk) in b.iter().enumerate() {
                        if bk != 0 {
                            s = ctx.add(s, ctx.mul(mc[j * r + k], bk));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    // restricted operator: Mc·b_s = Σ_t A[s][t]·b_t, coords off pivot columns
    let a: Vec<Vec<u64>> = imgs
        .iter()
        .map(|v| sp.pivots.iter().map(|&pc| v[pc]).collect())
        .collect();
    for (s, img) in imgs.iter().enumerate() {
        for j in 0..r {
            let mut acc = 0u64;
            for t in 0..d {
                acc = ctx.add(acc, ctx.mul(a[s][t], sp.basis[t][j]));
            }
            if acc != img[j] {
                return Err(Error::TableCheck(
                    "class matrix does not preserve subspace".into(),
                ));
            }
        }
    }
    // right eigenvectors of Aᵀ are the coordinate vectors of eigenvectors
    let bt: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| a[j][i]).collect())
        .collect();
    let cp = charpoly(ctx, bt.clone());
    let roots = poly_roots(ctx, &cp, rng);
    if roots.len() <= 1 {
        next.push(sp);
        return Ok(());
    }
    for lam in roots {
        let mut m = bt.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ctx.sub(row[i], lam);
        }
        let null = nullspace(ctx, m);
        let mut ambient: Vec<Vec<u64>> = null
            .iter()
            .map(|u| {
                (0..r)
                    .map(|j| {
                        let mut s = 0u64;
                        for (t, &ut) in u.iter().enumerate() {
                            if ut != 0 {
                                s = ctx.add(s, ctx.mul(ut, sp.basis[t][j]));
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let pivots = rref(ctx, &mut ambient);
        if ambient.len() == 1 {
            done.push(ambient.pop().unwrap());
        } else {
            next.push(Space {
                basis: ambient,
                pivots,
            });
        }
    }
    Ok(())
}

/// Reduced row echelon form in place; returns pivot columns, drops zero rows.
fn rref(ctx: &ModCtx, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..ncols {
        if r0 >= rows.len() {
            break;
        }
        let Some(pr) = (r0..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r0, pr);
        let inv = ctx.inv(rows[r0][col]);
        for c in col..ncols {
            rows[r0][c] = ctx.mul(rows[r0][c], inv);
        }
        for i in 0..rows.len() {
            if i != r0 && rows[i][col] != 0 {
                let f = rows[i][col];
                for c in col..ncols {
                    let sub = ctx.mul(f, rows[r0][c]);
                    rows[i][c] = ctx.sub(rows[i][c], sub);
                }
            }
        }
        pivots.push(col);
        r0 += 1;
    }
    rows.truncate(r0);
    pivots
}

/// Basis of the kernel of a square matrix.
fn nullspace(ctx: &ModCtx, mut a: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = a.len();
    let pivots = rref(ctx, &mut a);
    let mut out = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = ctx.neg(a[row][free]);
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial (monic, coefficients low-to-high) via
/// Hessenberg reduction and the standard determinant recurrence.
fn charpoly(ctx: &ModCtx, mut a: Vec<Vec<u64>>) -> Vec<u64> {
    let n = a.len();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&row| a[row][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            a.swap(piv, col + 1);
            for row in a.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = ctx.inv(a[col + 1][col]);
        for row in col + 2..n {
            let f = ctx.mul(a[row][col], inv);
            if f == 0 {
                continue;
            }
            for c in 0..n {
                let sub = ctx.mul(f, a[col + 1][c]);
                a[row][c] = ctx.sub(a[row][c], sub);
            }
            // inverse similarity transform: column col+1 += f·column row
            for r2 in 0..n {
                let add = ctx.mul(f, a[r2][row]);
                a[r2][col + 1] = ctx.add(a[r2][col + 1], add);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut p = poly_mul(ctx, &polys[m - 1], &[ctx.neg(a[m - 1][m - 1]), 1]);
        let mut prod = 1u64;
        for i in (1..m).rev() {
            prod = ctx.mul(prod, a[i][i - 1]);
            let coef = ctx.mul(a[i - 1][m - 1], prod);
            if coef == 0 {
                continue;
            }
            for (t, &c) in polys[i - 1].iter().enumerate() {
                p[t] = ctx.sub(p[t], ctx.mul(coef, c));
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_recipe, Recipe};

    #[test]
    fn c2_degrees() {
        let g = build_recipe(&Recipe::Cyclic(2)).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1]);
        // one row is the sign character: value −1 on the nonidentity class
        let p = g.ctx.p;
        assert!(t
            .irreducibles
            .iter()
            .any(|c| c.values.contains(&(p - 1))));
    }

    #[test]
    fn c3_values_are_cube_roots() {
        let g = build_recipe(&Recipe::Cyclic(3)).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        // lifted values across rows realize 1, ζ₃, ζ₃² on each nontrivial class
        for class in 1..3 {
            let mut ks: Vec<u32> = t
                .irreducibles
                .iter()
                .map(|c| c.lifted[class][0].0)
                .collect();
            ks.sort_unstable();
            assert_eq!(ks, vec![0, 1, 2]);
        }
    }

    #[test]
    fn s3_table() {
        let g = build_recipe(&Recipe::Symmetric(3)).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        let chi2 = &t.irreducibles[2];
        let p = g.ctx.p;
        // classes sorted by size: identity (1), 3-cycles (2), transpositions (3)
        assert_eq!(chi2.values[1], p - 1);
        assert_eq!(chi2.values[2], 0);
    }

    #[test]
    fn sl2_3_degrees() {
        let g = build_recipe(&Recipe::Sl23).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(t.cd(), vec![1, 2, 3]);
    }

    #[test]
    fn extraspecial_27_degrees() {
        let g = build_recipe(&Recipe::Extraspecial(3)).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.cd(), vec![1, 3]);
        assert_eq!(t.degrees().iter().filter(|&&d| d == 1).count(), 9);
        assert_eq!(t.degrees().iter().filter(|&&d| d == 3).count(), 2);
    }

    #[test]
    fn order_375_cd() {
        let g = build_recipe(&Recipe::ExtraspecialSemidirect { p: 5, k: 3 }).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.cd(), vec![1, 3, 5]);
    }

    #[test]
    fn frobenius_21_degrees() {
        let g = build_recipe(&Recipe::Frobenius { q: 7, r: 3 }).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 3, 3]);
    }

    #[test]
    fn lifted_matches_residues() {
        for recipe in [Recipe::Symmetric(4), Recipe::Quaternion, Recipe::Cyclic(12)] {
            let g = build_recipe(&recipe).unwrap();
            let t = character_table(&g).unwrap();
            let ctx = &g.ctx;
            let omega = ctx.omega;
            for c in &t.irreducibles {
                for (i, entries) in c.lifted.iter().enumerate() {
                    let mut s = 0u64;
                    let mut total = 0u64;
                    for &(k, m) in entries {
                        s = ctx.add(s, ctx.mul(m % ctx.p, ctx.pow(omega, k as u64)));
                        total += m;
                    }
                    assert_eq!(s, c.values[i]);
                    if i == g.identity_class() {
                        assert_eq!(total, c.degree);
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let g = build_recipe(&Recipe::Symmetric(4)).unwrap();
        let t1 = character_table(&g).unwrap();
        let t2 = character_table(&g).unwrap();
        assert_eq!(t1.irreducibles, t2.irreducibles);
    }
}
