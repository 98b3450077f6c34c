//! Permutations on `{0..degree-1}`, the element representation for all groups.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation stored as its image array: `p.apply(i) = images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0..len-1}`.
    pub fn new(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::NotAPermutation(images));
            }
            seen[i as usize] = true;
        }
        Ok(Perm {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u16 == j)
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut order: u64 = 1;
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() as u16 {
            if seen[start as usize] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = self.apply(p);
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Parses disjoint-cycle notation like `(0 1 2)(3 4)` at the given degree.
    /// An empty string (or `()`) is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let bad = |msg: &str| Error::GroupFile(format!("{msg}: `{text}`"));
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let close = rest.find(')').ok_or_else(|| bad("missing `)`"))?;
            let body = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let points: Vec<u16> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u16>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?;
            for &p in &points {
                if p as usize >= degree {
                    return Err(bad("point out of range"));
                }
            }
            for w in 0..points.len() {
                let from = points[w];
                let to = points[(w + 1) % points.len()];
                if images[from as usize] != from {
                    return Err(bad("cycles are not disjoint"));
                }
                images[from as usize] = to;
            }
        }
        // The disjointness check above only guards moved points; re-validate.
        Perm::new(images)
    }
}

impl fmt::Display for Perm {
    /// Disjoint cycle notation; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() as u16 {
            if seen[start as usize] || self.apply(start) == start {
                seen[start as usize] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p as usize] {
                seen[p as usize] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.apply(p);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let a = Perm::new(vec![1, 2, 0]).unwrap();
        let b = Perm::new(vec![1, 0, 2]).unwrap();
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
        assert_eq!(a.compose(&b).apply(0), a.apply(b.apply(0)));
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Perm::parse_cycles("(0 1 2)(3 4)", 6).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3, 5]);
        assert_eq!(Perm::parse_cycles(&p.to_string(), 6).unwrap(), p);
        assert!(Perm::parse_cycles("(0 1)(1 2)", 3).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just(()).prop_perturb(move |_, mut rng| {
            let mut v: Vec<u16> = (0..n as u16).collect();
            for i in (1..n).rev() {
                v.swap(i, rng.random_range(0..=i));
            }
            Perm::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn composition_is_associative((a, b, c) in (arb_perm(7), arb_perm(7), arb_perm(7))) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn inverse_law(a in arb_perm(9)) {
            prop_assert_eq!(a.inverse().compose(&a), Perm::identity(9));
        }
    }
}
