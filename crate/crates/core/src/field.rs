//! Finite field `F_q` by lookup tables.
//!
//! Prime fields use residues mod `p`. Extension fields use the Conway
//! polynomial where one is tabulated and otherwise the first monic
//! irreducible polynomial in lexicographic order; an element is stored as the
//! base-`p` integer encoding of its coefficient vector.

use crate::coeff::GroundParams;
use crate::error::{Error, Result};

pub type Fe = u8;

#[derive(Debug, Clone)]
pub struct Field {
    q: usize,
    p: usize,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
}

/// Conway polynomials, lowest coefficient first, monic.
const CONWAY: &[(u32, &[usize])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
    (64, &[1, 1, 0, 1, 1, 0, 1]),
    (128, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (9, &[2, 2, 1]),
    (27, &[1, 2, 0, 1]),
    (81, &[2, 0, 0, 2, 1]),
    (25, &[2, 4, 1]),
    (125, &[3, 3, 0, 1]),
    (49, &[3, 6, 1]),
    (121, &[2, 7, 1]),
    (169, &[2, 12, 1]),
];

impl Field {
    pub fn new(ground: GroundParams) -> Result<Self> {
        let q = ground.q() as usize;
        if q > 256 {
            return Err(Error::InvalidGround(ground.q()));
        }
        let (p, k) = ground.prime_power();
        let (p, k) = (p as usize, k as usize);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            CONWAY
                .iter()
                .find(|(n, _)| *n as usize == q)
                .map(|(_, m)| m.to_vec())
                .unwrap_or_else(|| first_irreducible(p, k))
        };
        let digits = |x: usize| -> Vec<usize> {
            let mut v = vec![0; k];
            let mut x = x;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &d| acc * p + d);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let s: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * q + y] = encode(&s) as Fe;
                mul[x * q + y] = encode(&poly_mulmod(&dx, &dy, &modulus, p)) as Fe;
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for x in 0..q {
            for y in 0..q {
                if add[x * q + y] == 0 {
                    neg[x] = y as Fe;
                }
                if mul[x * q + y] == 1 {
                    inv[x] = y as Fe;
                }
            }
        }
        Ok(Field {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        self.add[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg[y as usize])
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        self.mul[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: Fe) -> Fe {
        self.neg[x as usize]
    }

    /// Multiplicative inverse; `x` must be nonzero.
    #[inline]
    pub fn inv(&self, x: Fe) -> Fe {
        debug_assert!(x != 0);
        self.inv[x as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(|x| x as Fe)
    }
}

fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0usize; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic of degree k
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, m) in modulus.iter().enumerate() {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn first_irreducible(p: usize, k: usize) -> Vec<usize> {
    let total = p.pow(k as u32);
    (0..total)
        .map(|code| {
            let mut v = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                v.push(c % p);
                c /= p;
            }
            v.push(1);
            v
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, gi) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * gi % p) % p;
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_small_q() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32] {
            let f = Field::new(GroundParams::new(q).unwrap()).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.mul(x, 1), x);
                assert_eq!(f.add(x, f.neg(x)), 0);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x)), 1, "q={q} x={x}");
                }
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    if x != 0 && y != 0 {
                        assert_ne!(f.mul(x, y), 0, "zero divisor in F_{q}");
                    }
                    for z in f.elements().take(5) {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn tabulated_moduli_are_irreducible() {
        for (q, m) in CONWAY {
            let (p, _) = crate::coeff::prime_power(*q).unwrap();
            assert!(is_irreducible(m, p as usize), "q = {q}");
        }
    }
}
