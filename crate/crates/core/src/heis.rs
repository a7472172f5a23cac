//! The Heisenberg double `Heis(A)` with closed-form cross relations.

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::hopf::{self, BElem, BKey, TensorElem};
use crate::lincomb::LinComb;
use crate::quiver::K0;
use crate::table::{ClassId, Table};

/// `(K_β[B]) ⊗ (K_α[A])`: the minus copy to the left of the plus copy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisKey {
    pub minus: BKey,
    pub plus: BKey,
}

impl HeisKey {
    pub fn new(minus: BKey, plus: BKey) -> Self {
        HeisKey { minus, plus }
    }

    pub fn render(&self, t: &Table) -> String {
        let m = side(t, &self.minus, "K-", "Zm");
        let p = side(t, &self.plus, "K", "Zp");
        match (m.is_empty(), p.is_empty()) {
            (true, true) => "1".into(),
            (false, true) => m,
            (true, false) => p,
            (false, false) => format!("{m}·{p}"),
        }
    }
}

fn side(t: &Table, k: &BKey, kname: &str, zname: &str) -> String {
    let mut parts = Vec::new();
    if !k.alpha.is_zero() {
        parts.push(format!("{kname}{}", k.alpha));
    }
    if k.obj != 0 {
        parts.push(format!("{zname}[{}]", t.name(k.obj)));
    }
    parts.join("·")
}

pub type HeisElem = LinComb<HeisKey>;

pub fn heis_basis(t: &Table, key: HeisKey) -> HeisElem {
    HeisElem::basis(t.ground(), key)
}

pub fn heis_unit(t: &Table) -> HeisElem {
    heis_basis(t, HeisKey::new(BKey::unit(t), BKey::unit(t)))
}

/// `Z⁺_A`.
pub fn zp(t: &Table, a: ClassId) -> HeisElem {
    heis_basis(t, HeisKey::new(BKey::unit(t), BKey::obj(t, a)))
}

/// `Z⁻_A`.
pub fn zm(t: &Table, a: ClassId) -> HeisElem {
    heis_basis(t, HeisKey::new(BKey::obj(t, a), BKey::unit(t)))
}

/// `K_α` in the plus copy.
pub fn kp(t: &Table, alpha: K0) -> HeisElem {
    heis_basis(t, HeisKey::new(BKey::unit(t), BKey::k(alpha)))
}

/// `K⁻_α` in the minus copy.
pub fn km(t: &Table, alpha: K0) -> HeisElem {
    heis_basis(t, HeisKey::new(BKey::k(alpha), BKey::unit(t)))
}

pub fn render_heis(t: &Table, x: &HeisElem) -> String {
    x.render(|k| k.render(t))
}

pub fn from_tensor(x: &TensorElem) -> HeisElem {
    x.map_keys(|(m, p)| HeisKey::new(m.clone(), p.clone()))
}

pub fn to_tensor(x: &HeisElem) -> TensorElem {
    x.map_keys(|k| (k.minus.clone(), k.plus.clone()))
}

/// `K_α[A]` (plus) times `K_β[B]` (minus), rewritten minus-first:
/// `Σ γ_{AB}^{MN} (α|β)(α|M)⟨I,M⟩⟨N,I⟩ K_β[M] ⊗ K_{α+I}[N]` with `I = B − M`.
pub fn cross(t: &Table, plus: &BKey, minus: &BKey) -> Result<HeisElem> {
    let mut out = HeisElem::zero(t.ground());
    let (alpha, beta) = (&plus.alpha, &minus.alpha);
    let b = t.k0(minus.obj);
    let base = t.sym(alpha, beta);
    for ((m, n), g) in t.gamma_terms(plus.obj, minus.obj)? {
        let km = t.k0(m);
        let i = &b - &km;
        let kn = t.k0(n);
        let e = t.sym_exp(alpha, &km) + t.euler_exp(&i, &km) + t.euler_exp(&kn, &i);
        let c = &(&base * &g) * &t.vpow(e);
        out.add_term(HeisKey::new(BKey::new(beta.clone(), m), BKey::new(alpha + &i, n)), c);
    }
    Ok(out)
}

pub fn mul_heis_keys(t: &Table, x: &HeisKey, y: &HeisKey) -> Result<HeisElem> {
    let mut out = HeisElem::zero(t.ground());
    for (k, c) in cross(t, &x.plus, &y.minus)?.iter() {
        let left = hopf::mul_keys(t, &x.minus, &k.minus, true)?;
        let right = hopf::mul_keys(t, &k.plus, &y.plus, true)?;
        for (l, lv) in left.iter() {
            for (r, rv) in right.iter() {
                out.add_term(HeisKey::new(l.clone(), r.clone()), &(c * lv) * rv);
            }
        }
    }
    Ok(out)
}

pub fn heis_mul(t: &Table, x: &HeisElem, y: &HeisElem) -> Result<HeisElem> {
    x.bilinear(y, |a, b| mul_heis_keys(t, a, b))
}

/// Embeds `B(A)` as the plus copy.
pub fn plus_embed(x: &BElem, t: &Table) -> HeisElem {
    x.map_keys(|k| HeisKey::new(BKey::unit(t), k.clone()))
}

/// Embeds `B(A)` as the minus copy.
pub fn minus_embed(x: &BElem, t: &Table) -> HeisElem {
    x.map_keys(|k| HeisKey::new(k.clone(), BKey::unit(t)))
}

/// `[A, B] = |Hom(A,B)|^{1/2} |Ext¹(A,B)|^{1/2}`.
pub fn bracket_norm(t: &Table, a: ClassId, b: ClassId) -> Coeff {
    t.vpow((t.hom_dim(a, b) + t.ext1_dim(a, b)) as i64)
}

/// `Z(A•) = Z⁻_{A⁻¹} K_{A⁻¹}^{-1} Z⁺_{A⁰} / (⟨A⁻¹,A⁻¹⟩ [A⁰, A⁻¹])`.
pub fn z_complex2(t: &Table, a_minus1: ClassId, a0: ClassId) -> HeisElem {
    let k = t.k0(a_minus1);
    let norm = &t.euler(&k, &k) * &bracket_norm(t, a0, a_minus1);
    let c = norm.inv().expect("v-powers are invertible");
    HeisElem::term(HeisKey::new(BKey::obj(t, a_minus1), BKey::new(-&k, a0)), c)
}

/// Outcome of comparing two computations of one product.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

/// Generators of `Heis(A)` used by the consistency suites: `Z^±_A` for every
/// nonzero class and `K^±_{e_i}` for every vertex.
pub fn generators(t: &Table) -> Vec<(String, HeisElem)> {
    let mut out = Vec::new();
    for c in t.nonzero_classes() {
        out.push((format!("Zp[{}]", t.name(c)), zp(t, c)));
        out.push((format!("Zm[{}]", t.name(c)), zm(t, c)));
    }
    for i in 0..t.n_vertices() {
        let e = K0::unit(t.n_vertices(), i);
        out.push((format!("K[{e}]"), kp(t, e.clone())));
        out.push((format!("K-[{e}]"), km(t, e)));
    }
    out
}

fn fits(t: &Table, xs: &[&HeisElem]) -> bool {
    let mut plus = vec![0usize; t.n_vertices()];
    let mut minus = vec![0usize; t.n_vertices()];
    for x in xs {
        for k in x.keys() {
            for (i, d) in t.dim(k.plus.obj).iter().enumerate() {
                plus[i] += d;
            }
            for (i, d) in t.dim(k.minus.obj).iter().enumerate() {
                minus[i] += d;
            }
        }
    }
    let both: Vec<usize> = plus.iter().zip(&minus).map(|(a, b)| a + b).collect();
    t.in_bound(&plus) && t.in_bound(&minus) && t.in_bound(&both)
}

/// Closed-form product against the coproduct-and-pairing product on every
/// ordered pair of generators whose total dimension fits the table.
pub fn verify_heis_consistency(t: &Table) -> Result<Vec<Comparison>> {
    let gens = generators(t);
    let mut out = Vec::new();
    for (nx, x) in &gens {
        for (ny, y) in &gens {
            if !fits(t, &[x, y]) {
                continue;
            }
            let lhs = heis_mul(t, x, y)?;
            let rhs = from_tensor(&hopf::hd_mul_generic(t, &to_tensor(x), &to_tensor(y))?);
            out.push(Comparison {
                instance: format!("{nx}·{ny}"),
                pass: lhs == rhs,
                lhs: render_heis(t, &lhs),
                rhs: render_heis(t, &rhs),
            });
        }
    }
    Ok(out)
}

/// `(xy)z = x(yz)` on generator triples that fit the table.
pub fn verify_heis_associativity(t: &Table) -> Result<Vec<Comparison>> {
    let gens = generators(t);
    let mut out = Vec::new();
    for (nx, x) in &gens {
        for (ny, y) in &gens {
            if !fits(t, &[x, y]) {
                continue;
            }
            let xy = heis_mul(t, x, y)?;
            for (nz, z) in &gens {
                if !fits(t, &[x, y, z]) {
                    continue;
                }
                let lhs = heis_mul(t, &xy, z)?;
                let rhs = heis_mul(t, x, &heis_mul(t, y, z)?)?;
                out.push(Comparison {
                    instance: format!("{nx}·{ny}·{nz}"),
                    pass: lhs == rhs,
                    lhs: render_heis(t, &lhs),
                    rhs: render_heis(t, &rhs),
                });
            }
        }
    }
    Ok(out)
}

/// The two displayed forms of `Z⁺_A Z⁻_B`: with `K_{B−M}` between `Z⁻_M` and
/// `Z⁺_N`, and with `K_{B−M}` at the right.
pub fn cross_forms(t: &Table, a: ClassId, b: ClassId) -> Result<(HeisElem, HeisElem)> {
    let mut middle = HeisElem::zero(t.ground());
    let mut right = HeisElem::zero(t.ground());
    let kb = t.k0(b);
    for ((m, n), g) in t.gamma_terms(a, b)? {
        let (km_, kn) = (t.k0(m), t.k0(n));
        let i = &kb - &km_;
        let c1 = &g * &t.vpow(t.euler_exp(&i, &km_) + t.euler_exp(&kn, &i));
        let x = heis_mul(t, &heis_mul(t, &zm(t, m), &kp(t, i.clone()))?, &zp(t, n))?;
        middle.add_scaled(&x, &c1);
        let c2 = &g * &t.euler(&i, &(&km_ - &kn));
        let y = heis_mul(t, &heis_mul(t, &zm(t, m), &zp(t, n))?, &kp(t, i))?;
        right.add_scaled(&y, &c2);
    }
    Ok((middle, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GroundParams;
    use crate::quiver::Quiver;

    fn a2(q: u32) -> Table {
        Table::build(Quiver::linear_a(2), GroundParams::new(q).unwrap(), vec![2, 2]).unwrap()
    }

    #[test]
    fn plus_simple_times_minus_simple() {
        for q in [2, 3] {
            let t = a2(q);
            let s1 = t.lookup("S1").unwrap();
            let lhs = heis_mul(&t, &zp(&t, s1), &zm(&t, s1)).unwrap();
            let mut rhs = heis_basis(&t, HeisKey::new(BKey::obj(&t, s1), BKey::obj(&t, s1)));
            rhs.add_term(
                HeisKey::new(BKey::unit(&t), BKey::k(t.k0(s1))),
                t.ratio(1, q as u128 - 1),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn k_relations() {
        let t = a2(3);
        let p = t.lookup("V(1,1)").unwrap();
        let a = K0(vec![1, -1]);
        let b = K0(vec![2, 1]);
        assert_eq!(
            heis_mul(&t, &zp(&t, p), &km(&t, a.clone())).unwrap(),
            heis_mul(&t, &km(&t, a.clone()), &zp(&t, p)).unwrap()
        );
        assert_eq!(
            heis_mul(&t, &kp(&t, a.clone()), &km(&t, b.clone())).unwrap(),
            heis_mul(&t, &km(&t, b.clone()), &kp(&t, a.clone()))
                .unwrap()
                .scale(&t.sym(&a, &b))
        );
        let inv = t.sym(&t.k0(p), &a).inv().unwrap();
        assert_eq!(
            heis_mul(&t, &zm(&t, p), &kp(&t, a.clone())).unwrap(),
            heis_mul(&t, &kp(&t, a.clone()), &zm(&t, p)).unwrap().scale(&inv)
        );
    }

    #[test]
    fn bracket_and_complex_normalization() {
        let t = a2(2);
        let (s1, s2) = (t.lookup("S1").unwrap(), t.lookup("S2").unwrap());
        assert_eq!(bracket_norm(&t, 0, s2), t.one());
        assert_eq!(bracket_norm(&t, s1, s2), t.vpow(1));
        assert_eq!(z_complex2(&t, 0, s1), zp(&t, s1));
    }

    #[test]
    fn closed_form_matches_generic_double() {
        let t = a2(2);
        let bad: Vec<_> = verify_heis_consistency(&t)
            .unwrap()
            .into_iter()
            .filter(|c| !c.pass)
            .collect();
        assert!(bad.is_empty(), "{:?}", bad.first());
    }

    #[test]
    fn both_cross_forms_agree() {
        let t = a2(3);
        for a in t.nonzero_classes() {
            for b in t.nonzero_classes() {
                let d: Vec<usize> = t.dim(a).iter().zip(t.dim(b)).map(|(x, y)| x + y).collect();
                if !t.in_bound(&d) {
                    continue;
                }
                let (m, r) = cross_forms(&t, a, b).unwrap();
                assert_eq!(m, r);
                assert_eq!(m, heis_mul(&t, &zp(&t, a), &zm(&t, b)).unwrap());
            }
        }
    }
}
