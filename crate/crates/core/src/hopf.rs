//! The extended Ringel algebra `B(A)`: product, coproduct, counit, antipode
//! and Hopf pairing, the Heisenberg-double product built from the pairing,
//! and the naive lattice algebra.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::quiver::K0;
use crate::table::{ClassId, Table};

/// The basis element `K_α [A]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BKey {
    pub alpha: K0,
    pub obj: ClassId,
}

impl BKey {
    pub fn new(alpha: K0, obj: ClassId) -> Self {
        BKey { alpha, obj }
    }

    pub fn unit(t: &Table) -> Self {
        BKey::new(K0::zero(t.n_vertices()), 0)
    }

    pub fn obj(t: &Table, c: ClassId) -> Self {
        BKey::new(K0::zero(t.n_vertices()), c)
    }

    pub fn k(alpha: K0) -> Self {
        BKey::new(alpha, 0)
    }

    pub fn is_unit(&self) -> bool {
        self.obj == 0 && self.alpha.is_zero()
    }

    pub fn render(&self, t: &Table) -> String {
        match (self.alpha.is_zero(), self.obj) {
            (true, 0) => "1".into(),
            (true, c) => format!("[{}]", t.name(c)),
            (false, 0) => format!("K{}", self.alpha),
            (false, c) => format!("K{}[{}]", self.alpha, t.name(c)),
        }
    }
}

pub type BElem = LinComb<BKey>;
pub type TensorKey = (BKey, BKey);
pub type TensorElem = LinComb<TensorKey>;

pub fn b_basis(t: &Table, key: BKey) -> BElem {
    BElem::basis(t.ground(), key)
}

pub fn b_unit(t: &Table) -> BElem {
    b_basis(t, BKey::unit(t))
}

pub fn b_obj(t: &Table, c: ClassId) -> BElem {
    b_basis(t, BKey::obj(t, c))
}

pub fn b_k(t: &Table, alpha: K0) -> BElem {
    b_basis(t, BKey::k(alpha))
}

pub fn render_b(t: &Table, x: &BElem) -> String {
    x.render(|k| k.render(t))
}

pub fn render_tensor(t: &Table, x: &TensorElem) -> String {
    x.render(|(a, b)| format!("{} ⊗ {}", a.render(t), b.render(t)))
}

/// `[A]∘[B]` (untwisted) or `[A]*[B]` (twisted) on classes, as `(C, coefficient)` pairs.
pub fn hall_product(t: &Table, a: ClassId, b: ClassId, twisted: bool) -> Result<Vec<(ClassId, Coeff)>> {
    if a == 0 {
        return Ok(vec![(b, t.one())]);
    }
    if b == 0 {
        return Ok(vec![(a, t.one())]);
    }
    let twist = if twisted { t.euler(&t.k0(b), &t.k0(a)) } else { t.one() };
    Ok(t.hall_terms(a, b)?
        .into_iter()
        .map(|(c, g)| (c, &twist * &t.int(g)))
        .collect())
}

/// Product of two basis elements, `(K_α[A])(K_β[B]) = (A|β) K_{α+β} [A][B]`.
pub fn mul_keys(t: &Table, x: &BKey, y: &BKey, twisted: bool) -> Result<BElem> {
    let alpha = &x.alpha + &y.alpha;
    let scal = t.sym(&t.k0(x.obj), &y.alpha);
    let mut out = BElem::zero(t.ground());
    for (c, v) in hall_product(t, x.obj, y.obj, twisted)? {
        out.add_term(BKey::new(alpha.clone(), c), &scal * &v);
    }
    Ok(out)
}

pub fn hall_mul(t: &Table, x: &BElem, y: &BElem, twisted: bool) -> Result<BElem> {
    x.bilinear(y, |a, b| mul_keys(t, a, b, twisted))
}

/// Product in `B(A)` with the twisted multiplication.
pub fn b_mul(t: &Table, x: &BElem, y: &BElem) -> Result<BElem> {
    hall_mul(t, x, y, true)
}

/// `Δ(K_α[A]) = Σ ⟨A/A′, A′⟩ |Aut A′||Aut A/A′|/|Aut A| · K_α[A′] ⊗ K_{α+A′}[A/A′]`.
pub fn coproduct_key(t: &Table, x: &BKey) -> TensorElem {
    let mut out = TensorElem::zero(t.ground());
    let aut = t.aut_count(x.obj);
    for s in t.subobjects(x.obj).iter() {
        let c = &(&t.euler(&t.k0(s.quot), &t.k0(s.sub)) * &t.int(s.count))
            * &t.ratio(t.aut_count(s.sub) * t.aut_count(s.quot), aut);
        let left = BKey::new(x.alpha.clone(), s.sub);
        let right = BKey::new(&x.alpha + &t.k0(s.sub), s.quot);
        out.add_term((left, right), c);
    }
    out
}

pub fn coproduct(t: &Table, x: &BElem) -> TensorElem {
    x.apply(|k| Ok(coproduct_key(t, k))).expect("coproduct is total")
}

/// Componentwise product in `B(A) ⊗ B(A)`.
pub fn tensor_mul(t: &Table, x: &TensorElem, y: &TensorElem) -> Result<TensorElem> {
    x.bilinear(y, |(a1, a2), (b1, b2)| {
        let l = mul_keys(t, a1, b1, true)?;
        let r = mul_keys(t, a2, b2, true)?;
        l.bilinear(&r, |p, q| Ok(TensorElem::basis(t.ground(), (p.clone(), q.clone()))))
    })
}

pub fn counit(t: &Table, x: &BElem) -> Coeff {
    x.functional(|k| if k.obj == 0 { t.one() } else { t.zero_coeff() })
}

/// Which chains enter the antipode sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStart {
    /// Chains `0 = A₀ ⊂ A₁ ⊂ … ⊂ A_n = A`.
    Zero,
    /// Chains starting at an arbitrary subobject `A₀`.
    Any,
}

/// Sum over strict chains ending at each class, in the Ringel algebra without `K`s.
fn chain_sums(
    t: &Table,
    a: ClassId,
    start: ChainStart,
    memo: &mut HashMap<ClassId, LinComb<ClassId>>,
) -> Result<LinComb<ClassId>> {
    if let Some(v) = memo.get(&a) {
        return Ok(v.clone());
    }
    let mut u = match start {
        ChainStart::Zero if a == 0 => LinComb::basis(t.ground(), 0),
        ChainStart::Zero => LinComb::zero(t.ground()),
        ChainStart::Any => LinComb::term(a, t.int(t.aut_count(a))),
    };
    let subs = t.subobjects(a);
    for s in subs.iter().filter(|s| s.quot != 0) {
        let inner = chain_sums(t, s.sub, start, memo)?;
        let c = &(&t.euler(&t.k0(s.quot), &t.k0(s.sub)) * &t.int(s.count)) * &t.int(t.aut_count(s.quot));
        for (x, v) in inner.iter() {
            for (y, w) in hall_product(t, *x, s.quot, true)? {
                u.add_term(y, -(&(v * &w) * &c));
            }
        }
    }
    memo.insert(a, u.clone());
    Ok(u)
}

pub fn antipode_key(t: &Table, x: &BKey, start: ChainStart) -> Result<BElem> {
    let kexp = -&(&x.alpha + &t.k0(x.obj));
    if x.obj == 0 {
        return Ok(b_k(t, kexp));
    }
    let mut memo = HashMap::new();
    let mut numer = chain_sums(t, x.obj, start, &mut memo)?;
    if start == ChainStart::Any {
        numer.add_term(x.obj, -t.int(t.aut_count(x.obj)));
    }
    let inv_aut = t.ratio(1, t.aut_count(x.obj));
    let mut out = BElem::zero(t.ground());
    for (c, v) in numer.iter() {
        // [C] K_β = (C|β) K_β [C]
        let s = t.sym(&t.k0(*c), &kexp);
        out.add_term(BKey::new(kexp.clone(), *c), &(v * &inv_aut) * &s);
    }
    Ok(out)
}

pub fn antipode_with(t: &Table, x: &BElem, start: ChainStart) -> Result<BElem> {
    x.apply(|k| antipode_key(t, k, start))
}

pub fn antipode(t: &Table, x: &BElem) -> Result<BElem> {
    antipode_with(t, x, ChainStart::Zero)
}

/// `φ(K_α[A], K_β[B]) = (α|β) δ_{AB} / |Aut A|`.
pub fn pair_keys(t: &Table, x: &BKey, y: &BKey) -> Coeff {
    if x.obj != y.obj {
        return t.zero_coeff();
    }
    &t.sym(&x.alpha, &y.alpha) * &t.ratio(1, t.aut_count(x.obj))
}

pub fn hopf_pair(t: &Table, x: &BElem, y: &BElem) -> Coeff {
    let mut acc = t.zero_coeff();
    for (a, v) in x.iter() {
        for (b, w) in y.iter() {
            acc += &(&(v * w) * &pair_keys(t, a, b));
        }
    }
    acc
}

/// `φ⊗φ` on `(x ⊗ y, Σ u ⊗ w)`.
pub fn pair_tensor(t: &Table, x: &TensorElem, y: &TensorElem) -> Coeff {
    let mut acc = t.zero_coeff();
    for ((a1, a2), v) in x.iter() {
        for ((b1, b2), w) in y.iter() {
            let p = &pair_keys(t, a1, b1) * &pair_keys(t, a2, b2);
            acc += &(&(v * w) * &p);
        }
    }
    acc
}

/// `ξ ω = Σ φ(ξ₍₁₎, ω₍₂₎) ω₍₁₎ ⊗ ξ₍₂₎`.
pub fn hd_cross(t: &Table, xi: &BKey, omega: &BKey) -> TensorElem {
    let dx = coproduct_key(t, xi);
    let dw = coproduct_key(t, omega);
    let mut out = TensorElem::zero(t.ground());
    for ((x1, x2), v) in dx.iter() {
        for ((w1, w2), u) in dw.iter() {
            let p = pair_keys(t, x1, w2);
            if p.is_zero() {
                continue;
            }
            out.add_term((w1.clone(), x2.clone()), &(v * u) * &p);
        }
    }
    out
}

/// Product in the Heisenberg double `Ω ⊗ Ξ` (both factors `B(A)`) using only
/// the coproduct and the pairing.
pub fn hd_mul_generic(t: &Table, x: &TensorElem, y: &TensorElem) -> Result<TensorElem> {
    x.bilinear(y, |(w, xi), (w2, xi2)| {
        let mut out = TensorElem::zero(t.ground());
        for ((a, b), c) in hd_cross(t, xi, w2).iter() {
            let left = mul_keys(t, w, a, true)?;
            let right = mul_keys(t, b, xi2, true)?;
            for (l, lv) in left.iter() {
                for (r, rv) in right.iter() {
                    out.add_term((l.clone(), r.clone()), &(c * lv) * rv);
                }
            }
        }
        Ok(out)
    })
}

/// Basis key of the naive lattice algebra: one `B(A)` basis element per site,
/// trivial sites omitted, read in increasing site order.
pub type NaiveKey = BTreeMap<i64, BKey>;
pub type NaiveElem = LinComb<NaiveKey>;

pub fn naive_gen(t: &Table, site: i64, key: BKey) -> NaiveElem {
    let mut k = NaiveKey::new();
    if !key.is_unit() {
        k.insert(site, key);
    }
    NaiveElem::basis(t.ground(), k)
}

type NaiveWord = Vec<(i64, BKey)>;

fn naive_step(t: &Table, w: &NaiveWord) -> Result<Option<Vec<(NaiveWord, Coeff)>>> {
    let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i].0 >= w[i + 1].0) else {
        return Ok(None);
    };
    let (m, x) = &w[i];
    let (n, y) = &w[i + 1];
    let splice = |mid: Vec<(i64, BKey)>| {
        let mut v = w[..i].to_vec();
        v.extend(mid.into_iter().filter(|(_, k)| !k.is_unit()));
        v.extend_from_slice(&w[i + 2..]);
        v
    };
    let mut out = Vec::new();
    if m == n {
        for (k, c) in mul_keys(t, x, y, true)?.iter() {
            out.push((splice(vec![(*m, k.clone())]), c.clone()));
        }
    } else if *m == n + 1 {
        for ((lo, hi), c) in hd_cross(t, x, y).iter() {
            out.push((splice(vec![(*n, lo.clone()), (*m, hi.clone())]), c.clone()));
        }
    } else {
        out.push((splice(vec![(*n, y.clone()), (*m, x.clone())]), t.one()));
    }
    Ok(Some(out))
}

fn naive_normalize(t: &Table, word: NaiveWord, c: Coeff) -> Result<NaiveElem> {
    let mut frontier: BTreeMap<NaiveWord, Coeff> = BTreeMap::new();
    frontier.insert(word, c);
    let mut out = NaiveElem::zero(t.ground());
    while !frontier.is_empty() {
        let mut next: BTreeMap<NaiveWord, Coeff> = BTreeMap::new();
        for (w, c) in frontier {
            match naive_step(t, &w)? {
                None => out.add_term(w.into_iter().collect(), c),
                Some(terms) => {
                    for (w2, c2) in terms {
                        let v = &c * &c2;
                        let e = next.entry(w2).or_insert_with(|| t.zero_coeff());
                        *e += &v;
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        frontier = next;
    }
    Ok(out)
}

pub fn naive_mul(t: &Table, x: &NaiveElem, y: &NaiveElem) -> Result<NaiveElem> {
    x.bilinear(y, |a, b| {
        let word: NaiveWord = a.iter().chain(b.iter()).map(|(s, k)| (*s, k.clone())).collect();
        naive_normalize(t, word, t.one())
    })
}

pub fn render_naive(t: &Table, x: &NaiveElem) -> String {
    x.render(|k| {
        if k.is_empty() {
            return "1".into();
        }
        k.iter()
            .map(|(s, b)| format!("{{{s}}}{}", b.render(t)))
            .collect::<Vec<_>>()
            .join("·")
    })
}

/// Fails unless `x` is a scalar multiple of the unit.
pub fn expect_scalar(t: &Table, x: &BElem) -> Result<Coeff> {
    match x.single() {
        None if x.is_zero() => Ok(t.zero_coeff()),
        Some((k, c)) if k.is_unit() => Ok(c.clone()),
        _ => Err(Error::Invariant(format!("{} is not a scalar", render_b(t, x)))),
    }
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
    fn twisted_products_of_simples() {
        let t = a2(2);
        let (s1, s2) = (t.lookup("S1").unwrap(), t.lookup("S2").unwrap());
        let x = b_mul(&t, &b_obj(&t, s1), &b_obj(&t, s2)).unwrap();
        assert_eq!(x, b_obj(&t, t.lookup("S1+S2").unwrap()));
        let y = b_mul(&t, &b_obj(&t, s2), &b_obj(&t, s1)).unwrap();
        let expect = b_obj(&t, t.lookup("S1+S2").unwrap())
            .plus(&b_obj(&t, t.lookup("V(1,1)").unwrap()))
            .scale(&t.vpow(-1));
        assert_eq!(y, expect);
        let z = b_mul(&t, &b_obj(&t, s1), &b_obj(&t, s1)).unwrap();
        assert_eq!(z, b_obj(&t, t.lookup("S1^2").unwrap()).scale(&t.vpow(1).scale_int(3)));
    }

    #[test]
    fn coproduct_of_simple() {
        let t = a2(2);
        let s1 = t.lookup("S1").unwrap();
        let d = coproduct(&t, &b_obj(&t, s1));
        let mut expect = TensorElem::basis(t.ground(), (BKey::unit(&t), BKey::obj(&t, s1)));
        expect.add_term((BKey::obj(&t, s1), BKey::k(t.k0(s1))), t.one());
        assert_eq!(d, expect);
    }

    #[test]
    fn antipode_of_simple() {
        let t = a2(2);
        let s1 = t.lookup("S1").unwrap();
        let s = antipode(&t, &b_obj(&t, s1)).unwrap();
        // −[S1] K_{−S1} written with K on the left
        let k = -&t.k0(s1);
        let expect = BElem::term(BKey::new(k.clone(), s1), -t.sym(&t.k0(s1), &k));
        assert_eq!(s, expect);
        let one = b_unit(&t);
        assert_eq!(antipode(&t, &one).unwrap(), one);
    }

    #[test]
    fn pairing_values() {
        let t = a2(3);
        let s1 = t.lookup("S1").unwrap();
        let s2 = t.lookup("S2").unwrap();
        assert_eq!(hopf_pair(&t, &b_obj(&t, s1), &b_obj(&t, s1)), t.ratio(1, 2));
        assert!(hopf_pair(&t, &b_obj(&t, s1), &b_obj(&t, s2)).is_zero());
    }

    #[test]
    fn generic_double_cross_relation() {
        let t = a2(2);
        let s1 = t.lookup("S1").unwrap();
        let plus = TensorElem::basis(t.ground(), (BKey::unit(&t), BKey::obj(&t, s1)));
        let minus = TensorElem::basis(t.ground(), (BKey::obj(&t, s1), BKey::unit(&t)));
        let prod = hd_mul_generic(&t, &plus, &minus).unwrap();
        let mut expect = TensorElem::basis(t.ground(), (BKey::obj(&t, s1), BKey::obj(&t, s1)));
        expect.add_term((BKey::unit(&t), BKey::k(t.k0(s1))), t.one());
        assert_eq!(prod, expect);
    }

    #[test]
    fn naive_lattice_distant_sites_commute() {
        let t = a2(2);
        let s1 = t.lookup("S1").unwrap();
        let x = naive_gen(&t, 0, BKey::obj(&t, s1));
        let y = naive_gen(&t, 5, BKey::k(t.k0(s1)));
        assert_eq!(naive_mul(&t, &x, &y).unwrap(), naive_mul(&t, &y, &x).unwrap());
        let k1 = naive_gen(&t, 1, BKey::k(t.k0(s1)));
        let k0 = naive_gen(&t, 0, BKey::k(t.k0(s1)));
        let a = naive_mul(&t, &k1, &k0).unwrap();
        let b = naive_mul(&t, &k0, &k1).unwrap();
        assert_eq!(a, b.scale(&t.sym(&t.k0(s1), &t.k0(s1))));
        assert_ne!(a, b);
    }
}
