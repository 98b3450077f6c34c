//! Exact arithmetic substrate: all character values live in `F_P` for a prime
//! `P ≡ 1 (mod e)` with `P > 2·|G|²`, where `e` is the group exponent. Integer
//! quantities with an a-priori bound below `P/2` are recovered exactly from
//! their residues.

use crate::error::{Error, Result};

/// Per-group modular context. A primitive `e`-th root of unity `omega` is
/// fixed at construction so all cyclotomic values have a canonical residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModCtx {
    pub p: u64,
    pub exponent: u64,
    pub omega: u64,
}

impl ModCtx {
    /// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2·order²`.
    pub fn new(order: u64, exponent: u64) -> ModCtx {
        let floor = 2 * order * order;
        let mut k = floor / exponent + 1;
        let p = loop {
            let cand = k * exponent + 1;
            if cand > floor && is_prime(cand) {
                break cand;
            }
            k += 1;
        };
        let g = smallest_generator(p);
        let omega = pow_mod(g, (p - 1) / exponent, p);
        ModCtx { p, exponent, omega }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// Primitive `d`-th root of unity; `d` must divide the exponent.
    pub fn root_of_order(&self, d: u64) -> u64 {
        debug_assert_eq!(self.exponent % d, 0);
        self.pow(self.omega, self.exponent / d)
    }

    /// Recovers a signed integer of absolute value below `p/2`.
    pub fn lift_signed(&self, v: u64) -> i64 {
        if v <= self.p / 2 {
            v as i64
        } else {
            v as i64 - self.p as i64
        }
    }

    /// Recovers a nonnegative integer known to be at most `bound`.
    pub fn lift_bounded(&self, v: u64, bound: u64) -> Result<u64> {
        if v <= bound {
            Ok(v)
        } else {
            Err(Error::LiftRange(v))
        }
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_square_free(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

fn smallest_generator(p: u64) -> u64 {
    let qs = prime_divisors(p - 1);
    'cand: for g in 2..p {
        for &q in &qs {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("F_p^* is cyclic")
}

// ---------------------------------------------------------------------------
// Polynomials over F_p (dense, coefficients low-to-high), used by the
// eigenvalue splitting in the table builder.
// ---------------------------------------------------------------------------

pub(crate) fn poly_trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

pub(crate) fn poly_deg(p: &[u64]) -> usize {
    p.len() - 1
}

pub(crate) fn poly_mul(ctx: &ModCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder; divisor must be nonzero.
pub(crate) fn poly_div_rem(ctx: &ModCtx, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = poly_deg(b);
    if poly_deg(&rem) < db || (rem.len() == 1 && rem[0] == 0) {
        return (vec![0], rem);
    }
    let lead_inv = ctx.inv(b[db]);
    let mut quo = vec![0u64; poly_deg(&rem) - db + 1];
    for k in (0..quo.len()).rev() {
        let coeff = ctx.mul(rem[k + db], lead_inv);
        quo[k] = coeff;
        if coeff == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] = ctx.sub(rem[k + j], ctx.mul(coeff, bj));
        }
    }
    poly_trim(&mut rem);
    (quo, rem)
}

pub(crate) fn poly_gcd(ctx: &ModCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let (_, r) = poly_div_rem(ctx, &x, &y);
        x = y;
        y = r;
    }
    // monic normalization
    let d = poly_deg(&x);
    if x[d] != 0 && x[d] != 1 {
        let inv = ctx.inv(x[d]);
        for c in x.iter_mut() {
            *c = ctx.mul(*c, inv);
        }
    }
    x
}

pub(crate) fn poly_derivative(ctx: &ModCtx, a: &[u64]) -> Vec<u64> {
    if a.len() == 1 {
        return vec![0];
    }
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| ctx.mul(c, i as u64 % ctx.p))
        .collect();
    poly_trim(&mut out);
    out
}

/// `base^exp mod modulus` in `F_p[x]`.
pub(crate) fn poly_pow_mod(ctx: &ModCtx, base: &[u64], mut exp: u64, modulus: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let (_, mut b) = poly_div_rem(ctx, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            let prod = poly_mul(ctx, &acc, &b);
            acc = poly_div_rem(ctx, &prod, modulus).1;
        }
        let sq = poly_mul(ctx, &b, &b);
        b = poly_div_rem(ctx, &sq, modulus).1;
        exp >>= 1;
    }
    acc
}

/// All roots in `F_p` of a polynomial known to split into linear factors
/// (eigenvalues of class matrices always lie in `F_p` by the choice of `p`).
/// Repeated factors are removed first; each root is returned once.
pub(crate) fn poly_roots(ctx: &ModCtx, f: &[u64], rng: &mut impl rand::Rng) -> Vec<u64> {
    let mut f = f.to_vec();
    poly_trim(&mut f);
    let deriv = poly_derivative(ctx, &f);
    if !(deriv.len() == 1 && deriv[0] == 0) {
        let g = poly_gcd(ctx, &f, &deriv);
        if poly_deg(&g) > 0 {
            f = poly_div_rem(ctx, &f, &g).0;
        }
    }
    let mut roots = Vec::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        match poly_deg(&g) {
            0 => {}
            1 => {
                // g = c1 x + c0  =>  root = -c0/c1
                roots.push(ctx.mul(ctx.neg(g[0]), ctx.inv(g[1])));
            }
            _ => loop {
                let a = rng.gen_range(0..ctx.p);
                let shifted = vec![a, 1]; // x + a
                let mut h = poly_pow_mod(ctx, &shifted, (ctx.p - 1) / 2, &g);
                if h.is_empty() {
                    h = vec![0];
                }
                h[0] = ctx.sub(h[0], 1);
                poly_trim(&mut h);
                let d = poly_gcd(ctx, &h, &g);
                let dd = poly_deg(&d);
                if dd > 0 && dd < poly_deg(&g) {
                    let (q, _) = poly_div_rem(ctx, &g, &d);
                    stack.push(d);
                    stack.push(q);
                    break;
                }
            },
        }
    }
    roots.sort_unstable();
    roots
}
