//! Class functions and the induction/restriction/lift machinery. Values are
//! residues mod the group's prime; pointwise equality of characters is
//! decisive because ‖χ−ψ‖² is a nonnegative integer below `P`.

use crate::error::{Error, Result};
use crate::group::{build_from_elements, GroupHandle, Quotient, Subgroup};
use std::sync::Arc;

/// A subgroup together with its own `GroupHandle` (sharing the parent's
/// modular context) and the id translation in both directions.
pub struct Embedding {
    pub parent: Arc<GroupHandle>,
    pub sub: Arc<GroupHandle>,
    /// Parent element id per sub element id; strictly increasing.
    pub members: Vec<u16>,
}

pub fn embed(s: &Subgroup) -> Embedding {
    let sub = build_from_elements(s.element_perms(), Arc::clone(&s.parent.ctx));
    let members: Vec<u16> = sub
        .elements
        .iter()
        .map(|p| s.parent.id_of(p).expect("subgroup element is in parent"))
        .collect();
    // both element lists are lex-sorted, so the translation is monotone
    assert!(members.windows(2).all(|w| w[0] < w[1]));
    Embedding {
        parent: Arc::clone(&s.parent),
        sub,
        members,
    }
}

impl Embedding {
    #[inline]
    pub fn to_parent(&self, h: u16) -> u16 {
        self.members[h as usize]
    }

    pub fn to_sub(&self, g: u16) -> Option<u16> {
        self.members.binary_search(&g).ok().map(|i| i as u16)
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.sub.order
    }

    pub fn as_subgroup(&self) -> Subgroup {
        self.parent.subgroup(self.members.clone())
    }
}

#[derive(Clone)]
pub struct ClassFunction {
    pub group: Arc<GroupHandle>,
    pub values: Vec<u64>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction({:?})", self.values)
    }
}

impl ClassFunction {
    pub fn from_character(table: &crate::table::CharacterTable, i: usize) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(&table.group),
            values: table.irreducibles[i].values.clone(),
        }
    }

    pub fn trivial(g: &Arc<GroupHandle>) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(g),
            values: vec![1; g.num_classes()],
        }
    }

    pub fn regular(g: &Arc<GroupHandle>) -> ClassFunction {
        let mut values = vec![0; g.num_classes()];
        values[g.identity_class()] = g.order as u64 % g.ctx.p;
        ClassFunction {
            group: Arc::clone(g),
            values,
        }
    }

    #[inline]
    pub fn at_element(&self, id: u16) -> u64 {
        self.values[self.group.class_of[id as usize] as usize]
    }

    /// Value at the identity, recovered as an integer (valid for characters).
    pub fn degree(&self) -> Result<u64> {
        let idc = self.group.identity_class();
        self.group
            .ctx
            .lift_bounded(self.values[idc], self.group.order as u64)
    }

    /// Pointwise complex conjugate, via the inverse-class permutation.
    pub fn conjugate(&self) -> ClassFunction {
        let values = (0..self.values.len())
            .map(|i| self.values[self.group.inverse_class[i] as usize])
            .collect();
        ClassFunction {
            group: Arc::clone(&self.group),
            values,
        }
    }
}

/// `(1/|G|)·Σ |C_i|·α(g_i)·β(g_i⁻¹)`, recovered as a signed integer. Exact
/// whenever the true value is an integer of magnitude below `P/2`, which
/// holds for all pairs of genuine characters.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
    if !Arc::ptr_eq(&a.group, &b.group) {
        return Err(Error::GroupMismatch);
    }
    let g = &a.group;
    let ctx = &*g.ctx;
    let mut s = 0u64;
    for i in 0..g.num_classes() {
        let conj = b.values[g.inverse_class[i] as usize];
        let term = ctx.mul(a.values[i], conj);
        s = ctx.add(s, ctx.mul(g.class_size(i) as u64 % ctx.p, term));
    }
    let ip = ctx.mul(s, ctx.inv(g.order as u64 % ctx.p));
    Ok(ctx.lift_signed(ip))
}

pub fn multiply(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    if !Arc::ptr_eq(&a.group, &b.group) {
        return Err(Error::GroupMismatch);
    }
    let ctx = &a.group.ctx;
    let values = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(&x, &y)| ctx.mul(x, y))
        .collect();
    Ok(ClassFunction {
        group: Arc::clone(&a.group),
        values,
    })
}

/// For each parent class `i` and sub class `h`: the number of `x ∈ G` with
/// `x·g_i·x⁻¹ ∈ H` landing in sub class `h`. Shared across inductions from
/// the same subgroup.
pub fn induction_counts(emb: &Embedding) -> Vec<Vec<u64>> {
    let g = &emb.parent;
    let rh = emb.sub.num_classes();
    let mut out = vec![vec![0u64; rh]; g.num_classes()];
    for (i, row) in out.iter_mut().enumerate() {
        let rep = g.class_rep(i);
        for x in 0..g.order as u16 {
            let y = g.conj(x, rep);
            if let Some(h) = emb.to_sub(y) {
                row[emb.sub.class_of[h as usize] as usize] += 1;
            }
        }
    }
    out
}

pub fn induce_with_counts(
    emb: &Embedding,
    counts: &[Vec<u64>],
    theta: &ClassFunction,
) -> Result<ClassFunction> {
    if !Arc::ptr_eq(&theta.group, &emb.sub) {
        return Err(Error::GroupMismatch);
    }
    let ctx = &*emb.parent.ctx;
    let inv_h = ctx.inv(emb.sub.order as u64 % ctx.p);
    let values = counts
        .iter()
        .map(|row| {
            let mut s = 0u64;
            for (h, &c) in row.iter().enumerate() {
                if c != 0 {
                    s = ctx.add(s, ctx.mul(c % ctx.p, theta.values[h]));
                }
            }
            ctx.mul(s, inv_h)
        })
        .collect();
    Ok(ClassFunction {
        group: Arc::clone(&emb.parent),
        values,
    })
}

/// `θ^G(g) = (1/|H|)·Σ_{x∈G} θ°(x g x⁻¹)`.
pub fn induce(emb: &Embedding, theta: &ClassFunction) -> Result<ClassFunction> {
    induce_with_counts(emb, &induction_counts(emb), theta)
}

pub fn restrict(emb: &Embedding, chi: &ClassFunction) -> Result<ClassFunction> {
    if !Arc::ptr_eq(&chi.group, &emb.parent) {
        return Err(Error::GroupMismatch);
    }
    let values = (0..emb.sub.num_classes())
        .map(|h| chi.at_element(emb.to_parent(emb.sub.class_rep(h))))
        .collect();
    Ok(ClassFunction {
        group: Arc::clone(&emb.sub),
        values,
    })
}

/// Pullback along the quotient projection; `N` lands in the kernel.
pub fn lift(parent: &Arc<GroupHandle>, q: &Quotient, psi: &ClassFunction) -> Result<ClassFunction> {
    if !Arc::ptr_eq(&psi.group, &q.group) || q.proj.len() != parent.order {
        return Err(Error::ProjectionMismatch);
    }
    let values = (0..parent.num_classes())
        .map(|i| psi.at_element(q.proj[parent.class_rep(i) as usize]))
        .collect();
    Ok(ClassFunction {
        group: Arc::clone(parent),
        values,
    })
}

/// `Ker χ = {g : χ(g) = χ(1)}`. Membership is decided by the multiplicity of
/// the trivial eigenvalue `m₀ = (1/o)·Σ_l χ(g^l)`, an integer in `[0, χ(1)]`;
/// `m₀ = χ(1)` iff the restriction to ⟨g⟩ is trivial iff `χ(g) = χ(1)`.
pub fn kernel(chi: &ClassFunction) -> Result<Subgroup> {
    let g = &chi.group;
    let ctx = &*g.ctx;
    let deg = chi.degree()?;
    let mut members: Vec<u16> = Vec::new();
    for i in 0..g.num_classes() {
        let x = g.class_rep(i);
        let o = g.element_orders[x as usize];
        let mut s = 0u64;
        let mut xe = g.identity;
        for _ in 0..o {
            s = ctx.add(s, chi.at_element(xe));
            xe = g.mul(xe, x);
        }
        let m0 = ctx.lift_bounded(ctx.mul(s, ctx.inv(o % ctx.p)), deg)?;
        if m0 == deg {
            members.extend_from_slice(&g.classes[i]);
        }
    }
    members.sort_unstable();
    Ok(g.subgroup(members))
}

/// `I_G(θ) = {g ∈ G : θ^g = θ}` for `θ` on a normal subgroup `N`.
pub fn inertia_group(emb: &Embedding, theta: &ClassFunction) -> Result<Subgroup> {
    if !Arc::ptr_eq(&theta.group, &emb.sub) {
        return Err(Error::GroupMismatch);
    }
    let g = &emb.parent;
    if !g.is_normal_set(&emb.members) {
        return Err(Error::NotNormal);
    }
    let reps: Vec<u16> = (0..emb.sub.num_classes())
        .map(|h| emb.sub.class_rep(h))
        .collect();
    let members: Vec<u16> = (0..g.order as u16)
        .filter(|&x| {
            reps.iter().all(|&h| {
                let n = emb.to_parent(h);
                let m = emb.to_sub(g.conj(x, n)).expect("N is normal");
                theta.values[emb.sub.class_of[m as usize] as usize]
                    == theta.values[emb.sub.class_of[h as usize] as usize]
            })
        })
        .collect();
    Ok(g.subgroup(members))
}

/// Mackey decomposition: `(λ^G)|_K = Σ_t ((λ^t)|_{K ∩ tHt⁻¹})^K` over
/// `(K,H)`-double coset representatives `t`, with `λ^t(x) = λ(t⁻¹ x t)`.
pub fn mackey_restriction(
    hemb: &Embedding,
    lambda: &ClassFunction,
    kemb: &Embedding,
) -> Result<Vec<(u16, ClassFunction)>> {
    if !Arc::ptr_eq(&hemb.parent, &kemb.parent) {
        return Err(Error::GroupMismatch);
    }
    if !Arc::ptr_eq(&lambda.group, &hemb.sub) {
        return Err(Error::GroupMismatch);
    }
    let g = &hemb.parent;
    let mut seen = vec![false; g.order];
    let mut out = Vec::new();
    for t in 0..g.order as u16 {
        if seen[t as usize] {
            continue;
        }
        for &k in &kemb.members {
            let kt = g.mul(k, t);
            for &h in &hemb.members {
                seen[g.mul(kt, h) as usize] = true;
            }
        }
        // M = K ∩ tHt⁻¹, as a subgroup of the K handle
        let conj_h = g.conjugate_set(&hemb.members, t);
        let m_in_k: Vec<u16> = conj_h.iter().filter_map(|&x| kemb.to_sub(x)).collect();
        let memb = embed(&kemb.sub.subgroup(m_in_k));
        let t_inv = g.inv(t);
        let values: Vec<u64> = (0..memb.sub.num_classes())
            .map(|c| {
                let x = kemb.to_parent(memb.to_parent(memb.sub.class_rep(c)));
                let y = g.mul(g.mul(t_inv, x), t);
                lambda.at_element(hemb.to_sub(y).expect("conjugate lands in H"))
            })
            .collect();
        let lt = ClassFunction {
            group: Arc::clone(&memb.sub),
            values,
        };
        out.push((t, induce(&memb, &lt)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_recipe, Recipe};
    use crate::group::{center, quotient_group};
    use crate::table::character_table;

    fn s3() -> Arc<GroupHandle> {
        build_recipe(&Recipe::Symmetric(3)).unwrap()
    }

    fn c3_in_s3(g: &Arc<GroupHandle>) -> Embedding {
        let members: Vec<u16> = (0..g.order as u16)
            .filter(|&x| g.element_orders[x as usize] != 2)
            .collect();
        embed(&g.subgroup(members))
    }

    #[test]
    fn induced_trivial_from_trivial_subgroup_is_regular() {
        let g = s3();
        let emb = embed(&g.trivial_subgroup());
        let ind = induce(&emb, &ClassFunction::trivial(&emb.sub)).unwrap();
        assert_eq!(ind, ClassFunction::regular(&g));
    }

    #[test]
    fn induced_linear_of_c3_is_the_degree_2_irreducible() {
        let g = s3();
        let emb = c3_in_s3(&g);
        let sub_table = character_table(&emb.sub).unwrap();
        let table = character_table(&g).unwrap();
        let chi2 = ClassFunction {
            group: Arc::clone(&g),
            values: table.irreducibles[2].values.clone(),
        };
        let nontrivial: Vec<_> = sub_table
            .irreducibles
            .iter()
            .filter(|c| c.values.iter().any(|&v| v != 1))
            .collect();
        assert_eq!(nontrivial.len(), 2);
        for lam in nontrivial {
            let ind = induce(
                &emb,
                &ClassFunction {
                    group: Arc::clone(&emb.sub),
                    values: lam.values.clone(),
                },
            )
            .unwrap();
            assert_eq!(ind, chi2);
        }
    }

    #[test]
    fn q8_linears_never_induce_degree_2_of_sl2_3() {
        let g = build_recipe(&Recipe::Sl23).unwrap();
        let members: Vec<u16> = (0..g.order as u16)
            .filter(|&x| g.element_orders[x as usize] % 3 != 0)
            .collect();
        let emb = embed(&g.subgroup(members));
        assert_eq!(emb.sub.order, 8);
        let table = character_table(&g).unwrap();
        let sub_table = character_table(&emb.sub).unwrap();
        let counts = induction_counts(&emb);
        for lam in sub_table.irreducibles.iter().filter(|c| c.degree == 1) {
            let ind = induce_with_counts(
                &emb,
                &counts,
                &ClassFunction {
                    group: Arc::clone(&emb.sub),
                    values: lam.values.clone(),
                },
            )
            .unwrap();
            for chi in table.irreducibles.iter().filter(|c| c.degree == 2) {
                assert_ne!(ind.values, chi.values);
            }
        }
    }

    #[test]
    fn restriction_of_degree_3_to_q8() {
        let g = build_recipe(&Recipe::Sl23).unwrap();
        let members: Vec<u16> = (0..g.order as u16)
            .filter(|&x| g.element_orders[x as usize] % 3 != 0)
            .collect();
        let emb = embed(&g.subgroup(members));
        let table = character_table(&g).unwrap();
        let chi3 = table.irreducibles.iter().find(|c| c.degree == 3).unwrap();
        let res = restrict(
            &emb,
            &ClassFunction {
                group: Arc::clone(&g),
                values: chi3.values.clone(),
            },
        )
        .unwrap();
        let sub_table = character_table(&emb.sub).unwrap();
        for lam in &sub_table.irreducibles {
            if lam.degree != 1 {
                continue;
            }
            let lcf = ClassFunction {
                group: Arc::clone(&emb.sub),
                values: lam.values.clone(),
            };
            let expected = if lam.values.iter().all(|&v| v == 1) { 0 } else { 1 };
            assert_eq!(inner_product(&res, &lcf).unwrap(), expected);
        }
    }

    #[test]
    fn inner_products() {
        let g = s3();
        let table = character_table(&g).unwrap();
        let reg = ClassFunction::regular(&g);
        for chi in &table.irreducibles {
            let cf = ClassFunction {
                group: Arc::clone(&g),
                values: chi.values.clone(),
            };
            assert_eq!(inner_product(&cf, &cf).unwrap(), 1);
            assert_eq!(inner_product(&reg, &cf).unwrap(), chi.degree as i64);
        }
    }

    #[test]
    fn frobenius_reciprocity_instance() {
        let g = s3();
        let emb = c3_in_s3(&g);
        let sub_table = character_table(&emb.sub).unwrap();
        let table = character_table(&g).unwrap();
        for theta in &sub_table.irreducibles {
            let tcf = ClassFunction {
                group: Arc::clone(&emb.sub),
                values: theta.values.clone(),
            };
            let ind = induce(&emb, &tcf).unwrap();
            for chi in &table.irreducibles {
                let ccf = ClassFunction {
                    group: Arc::clone(&g),
                    values: chi.values.clone(),
                };
                let lhs = inner_product(&ind, &ccf).unwrap();
                let rhs = inner_product(&tcf, &restrict(&emb, &ccf).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn kernels() {
        let g = build_recipe(&Recipe::Sl23).unwrap();
        let table = character_table(&g).unwrap();
        assert!(kernel(&ClassFunction::trivial(&g)).unwrap().is_whole_group());
        // a degree-2 character of SL₂(3) is faithful
        let chi2 = table.irreducibles.iter().find(|c| c.degree == 2).unwrap();
        let k = kernel(&ClassFunction {
            group: Arc::clone(&g),
            values: chi2.values.clone(),
        })
        .unwrap();
        assert!(k.is_trivial());
        // the degree-3 character has kernel Z(G)
        let chi3 = table.irreducibles.iter().find(|c| c.degree == 3).unwrap();
        let k = kernel(&ClassFunction {
            group: Arc::clone(&g),
            values: chi3.values.clone(),
        })
        .unwrap();
        assert_eq!(k.members, center(&g).members);
    }

    #[test]
    fn lift_recovers_linears_of_s3() {
        let g = s3();
        let c3 = c3_in_s3(&g).as_subgroup();
        let q = quotient_group(&g, &c3).unwrap();
        let qt = character_table(&q.group).unwrap();
        let table = character_table(&g).unwrap();
        let mut lifted: Vec<Vec<u64>> = qt
            .irreducibles
            .iter()
            .map(|psi| {
                lift(
                    &g,
                    &q,
                    &ClassFunction {
                        group: Arc::clone(&q.group),
                        values: psi.values.clone(),
                    },
                )
                .unwrap()
                .values
            })
            .collect();
        lifted.sort_unstable();
        let mut linears: Vec<Vec<u64>> = table
            .irreducibles
            .iter()
            .filter(|c| c.degree == 1)
            .map(|c| c.values.clone())
            .collect();
        linears.sort_unstable();
        assert_eq!(lifted, linears);
        assert_eq!(lift(&g, &q, &ClassFunction::trivial(&q.group)).unwrap(),
                   ClassFunction::trivial(&g));
    }

    #[test]
    fn inertia_groups() {
        let g = s3();
        let emb = c3_in_s3(&g);
        assert!(inertia_group(&emb, &ClassFunction::trivial(&emb.sub))
            .unwrap()
            .is_whole_group());
        let sub_table = character_table(&emb.sub).unwrap();
        let lam = sub_table
            .irreducibles
            .iter()
            .find(|c| c.values.iter().any(|&v| v != 1))
            .unwrap();
        let i = inertia_group(
            &emb,
            &ClassFunction {
                group: Arc::clone(&emb.sub),
                values: lam.values.clone(),
            },
        )
        .unwrap();
        assert_eq!(i.members, emb.members);
    }

    #[test]
    fn mackey_pieces_sum_to_restricted_induction() {
        let g = build_recipe(&Recipe::Symmetric(4)).unwrap();
        // H: a point stabilizer copy of S3; K: a Sylow 2 subgroup
        let h_members: Vec<u16> = (0..g.order as u16)
            .filter(|&x| g.elements[x as usize].apply(3) == 3)
            .collect();
        let hemb = embed(&g.subgroup(h_members));
        assert_eq!(hemb.sub.order, 6);
        let lat = crate::lattice::enumerate_subgroups(&g);
        let k = crate::lattice::sylow_subgroup(&lat, 2).unwrap();
        let kemb = embed(&k);
        let sub_table = character_table(&hemb.sub).unwrap();
        let ctx = &g.ctx;
        for lam in &sub_table.irreducibles {
            let lcf = ClassFunction {
                group: Arc::clone(&hemb.sub),
                values: lam.values.clone(),
            };
            let pieces = mackey_restriction(&hemb, &lcf, &kemb).unwrap();
            let direct = restrict(&kemb, &induce(&hemb, &lcf).unwrap()).unwrap();
            let mut sum = vec![0u64; kemb.sub.num_classes()];
            for (_, piece) in &pieces {
                for (s, &v) in sum.iter_mut().zip(&piece.values) {
                    *s = ctx.add(*s, v);
                }
            }
            assert_eq!(sum, direct.values);
        }
    }

    #[test]
    fn mackey_whole_group_cases() {
        let g = s3();
        let emb = c3_in_s3(&g);
        let gemb = embed(&g.full_subgroup());
        let sub_table = character_table(&emb.sub).unwrap();
        let lam = ClassFunction {
            group: Arc::clone(&emb.sub),
            values: sub_table.irreducibles[0].values.clone(),
        };
        // K = G: a single double coset whose piece is λ^G itself
        let pieces = mackey_restriction(&emb, &lam, &gemb).unwrap();
        assert_eq!(pieces.len(), 1);
        let ind = induce(&emb, &lam).unwrap();
        // translate λ^G to the isomorphic whole-group handle
        let translated: Vec<u64> = (0..gemb.sub.num_classes())
            .map(|c| ind.at_element(gemb.to_parent(gemb.sub.class_rep(c))))
            .collect();
        assert_eq!(pieces[0].1.values, translated);
    }

    #[test]
    fn products() {
        let g = build_recipe(&Recipe::Sl23).unwrap();
        let table = character_table(&g).unwrap();
        for chi in &table.irreducibles {
            let cf = ClassFunction {
                group: Arc::clone(&g),
                values: chi.values.clone(),
            };
            let prod = multiply(&cf, &cf.conjugate()).unwrap();
            assert_eq!(prod.degree().unwrap(), chi.degree * chi.degree);
            assert_eq!(
                inner_product(&prod, &ClassFunction::trivial(&g)).unwrap(),
                1
            );
            assert_eq!(multiply(&cf, &ClassFunction::trivial(&g)).unwrap(), cf);
        }
    }
}
