//! Evaluation of parsed expressions in one of the four algebras.

use serde::Serialize;
use serde_json::{json, Value};

use hallforge::coeff::{Coeff, CoeffRecord};
use hallforge::error::{Error, Result};
use hallforge::heis::{self, HeisKey};
use hallforge::hopf::{self, BKey};
use hallforge::lattice::{self, FKey, LatticeKey};
use hallforge::lincomb::LinComb;
use hallforge::quiver::K0;
use hallforge::table::Table;

use crate::expr::{Expr, Gen, Target};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluated {
    pub algebra: String,
    pub render: String,
    pub terms: Vec<Value>,
}

trait Algebra {
    type Key: Ord + Clone;
    fn unit_key(t: &Table) -> Self::Key;
    fn gen(t: &Table, g: &Gen) -> Result<LinComb<Self::Key>>;
    fn mul(t: &Table, x: &LinComb<Self::Key>, y: &LinComb<Self::Key>) -> Result<LinComb<Self::Key>>;
    /// A candidate inverse of a basis key, confirmed by multiplying back.
    fn inverse_key(t: &Table, k: &Self::Key) -> Option<Self::Key>;
    fn render_key(t: &Table, k: &Self::Key) -> String;
    fn key_json(t: &Table, k: &Self::Key) -> Value;
}

fn k0(t: &Table, v: &[i64]) -> Result<K0> {
    if v.len() != t.n_vertices() {
        return Err(Error::Config(format!(
            "K vector {v:?} has {} entries, the quiver has {} vertices",
            v.len(),
            t.n_vertices()
        )));
    }
    Ok(K0(v.to_vec()))
}

fn b_json(t: &Table, k: &BKey) -> Value {
    json!({"k": k.alpha, "obj": t.name(k.obj)})
}

fn sites_json(t: &Table, sites: &std::collections::BTreeMap<i64, usize>) -> Value {
    Value::Array(sites.iter().map(|(m, c)| json!([m, t.name(*c)])).collect())
}

struct B;
struct Heis;
struct Lattice;
struct F;

impl Algebra for B {
    type Key = BKey;

    fn unit_key(t: &Table) -> BKey {
        BKey::unit(t)
    }

    fn gen(t: &Table, g: &Gen) -> Result<LinComb<BKey>> {
        match g {
            Gen::Zp(n) => Ok(hopf::b_obj(t, t.lookup(n)?)),
            Gen::K(v) => Ok(hopf::b_k(t, k0(t, v)?)),
            _ => Err(wrong(g, Target::B)),
        }
    }

    fn mul(t: &Table, x: &LinComb<BKey>, y: &LinComb<BKey>) -> Result<LinComb<BKey>> {
        hopf::b_mul(t, x, y)
    }

    fn inverse_key(_: &Table, k: &BKey) -> Option<BKey> {
        (k.obj == 0).then(|| BKey::k(k.alpha.scale(-1)))
    }

    fn render_key(t: &Table, k: &BKey) -> String {
        k.render(t)
    }

    fn key_json(t: &Table, k: &BKey) -> Value {
        b_json(t, k)
    }
}

impl Algebra for Heis {
    type Key = HeisKey;

    fn unit_key(t: &Table) -> HeisKey {
        HeisKey::new(BKey::unit(t), BKey::unit(t))
    }

    fn gen(t: &Table, g: &Gen) -> Result<LinComb<HeisKey>> {
        match g {
            Gen::Zp(n) => Ok(heis::zp(t, t.lookup(n)?)),
            Gen::Zm(n) => Ok(heis::zm(t, t.lookup(n)?)),
            Gen::K(v) => Ok(heis::kp(t, k0(t, v)?)),
            Gen::Km(v) => Ok(heis::km(t, k0(t, v)?)),
            _ => Err(wrong(g, Target::Heis)),
        }
    }

    fn mul(t: &Table, x: &LinComb<HeisKey>, y: &LinComb<HeisKey>) -> Result<LinComb<HeisKey>> {
        heis::heis_mul(t, x, y)
    }

    fn inverse_key(_: &Table, k: &HeisKey) -> Option<HeisKey> {
        (k.minus.obj == 0 && k.plus.obj == 0)
            .then(|| HeisKey::new(BKey::k(k.minus.alpha.scale(-1)), BKey::k(k.plus.alpha.scale(-1))))
    }

    fn render_key(t: &Table, k: &HeisKey) -> String {
        k.render(t)
    }

    fn key_json(t: &Table, k: &HeisKey) -> Value {
        json!({"minus": b_json(t, &k.minus), "plus": b_json(t, &k.plus)})
    }
}

impl Algebra for Lattice {
    type Key = LatticeKey;

    fn unit_key(t: &Table) -> LatticeKey {
        LatticeKey::unit(t)
    }

    fn gen(t: &Table, g: &Gen) -> Result<LinComb<LatticeKey>> {
        match g {
            Gen::Z(m, n) => Ok(lattice::zgen(t, *m, t.lookup(n)?)),
            Gen::K(v) => Ok(lattice::kgen(t, k0(t, v)?)),
            _ => Err(wrong(g, Target::Lattice)),
        }
    }

    fn mul(t: &Table, x: &LinComb<LatticeKey>, y: &LinComb<LatticeKey>) -> Result<LinComb<LatticeKey>> {
        lattice::lat_mul(t, x, y)
    }

    fn inverse_key(_: &Table, k: &LatticeKey) -> Option<LatticeKey> {
        k.sites.is_empty().then(|| LatticeKey {
            sites: Default::default(),
            alpha: k.alpha.scale(-1),
        })
    }

    fn render_key(t: &Table, k: &LatticeKey) -> String {
        k.render(t)
    }

    fn key_json(t: &Table, k: &LatticeKey) -> Value {
        json!({"sites": sites_json(t, &k.sites), "k": k.alpha})
    }
}

impl Algebra for F {
    type Key = FKey;

    fn unit_key(_: &Table) -> FKey {
        FKey::new()
    }

    fn gen(t: &Table, g: &Gen) -> Result<LinComb<FKey>> {
        match g {
            Gen::X(m, n) => Ok(lattice::xgen(t, *m, t.lookup(n)?)),
            _ => Err(wrong(g, Target::F)),
        }
    }

    fn mul(t: &Table, x: &LinComb<FKey>, y: &LinComb<FKey>) -> Result<LinComb<FKey>> {
        lattice::f_mul(t, x, y)
    }

    fn inverse_key(_: &Table, k: &FKey) -> Option<FKey> {
        k.is_empty().then(FKey::new)
    }

    fn render_key(t: &Table, k: &FKey) -> String {
        if k.is_empty() {
            return "1".into();
        }
        k.iter()
            .map(|(m, c)| format!("X{{{m}}}[{}]", t.name(*c)))
            .collect::<Vec<_>>()
            .join("·")
    }

    fn key_json(t: &Table, k: &FKey) -> Value {
        json!({"sites": sites_json(t, k)})
    }
}

fn wrong(g: &Gen, target: Target) -> Error {
    Error::WrongAlgebra {
        gen: g.to_string(),
        algebra: target.to_string(),
    }
}

fn scalar<A: Algebra>(t: &Table, c: Coeff) -> LinComb<A::Key> {
    LinComb::term(A::unit_key(t), c)
}

fn inverse<A: Algebra>(t: &Table, x: &LinComb<A::Key>, shown: &Expr) -> Result<LinComb<A::Key>> {
    let not_invertible = || Error::NotInvertible(shown.to_string());
    let (k, c) = x.single().ok_or_else(not_invertible)?;
    let cand = LinComb::term(A::inverse_key(t, k).ok_or_else(not_invertible)?, t.one());
    let basis = LinComb::term(k.clone(), t.one());
    let left = A::mul(t, &basis, &cand)?;
    let (uk, s) = left.single().ok_or_else(not_invertible)?;
    if *uk != A::unit_key(t) || A::mul(t, &cand, &basis)? != left {
        return Err(not_invertible());
    }
    let s = (s * c).inv()?;
    Ok(cand.scale(&s))
}

fn subproduct(e: Error, a: &Expr, b: &Expr) -> Error {
    match e {
        Error::OutOfTable(m) => Error::OutOfTable(format!("{m}, in the product ({a}) * ({b})")),
        e => e,
    }
}

fn eval_in<A: Algebra>(t: &Table, e: &Expr) -> Result<LinComb<A::Key>> {
    Ok(match e {
        Expr::Scalar(s) => scalar::<A>(t, Coeff::parse(t.ground(), &s.to_string())?),
        Expr::Gen(g) => A::gen(t, g)?,
        Expr::Paren(x) => eval_in::<A>(t, x)?,
        Expr::Neg(x) => eval_in::<A>(t, x)?.neg(),
        Expr::Add(a, b) => eval_in::<A>(t, a)?.plus(&eval_in::<A>(t, b)?),
        Expr::Sub(a, b) => eval_in::<A>(t, a)?.minus(&eval_in::<A>(t, b)?),
        Expr::Mul(a, b) => {
            let (x, y) = (eval_in::<A>(t, a)?, eval_in::<A>(t, b)?);
            A::mul(t, &x, &y).map_err(|err| subproduct(err, a, b))?
        }
        Expr::Pow(x, n) => {
            let base = eval_in::<A>(t, x)?;
            let base = if *n < 0 { inverse::<A>(t, &base, x)? } else { base };
            let mut acc = scalar::<A>(t, t.one());
            for _ in 0..n.unsigned_abs() {
                acc = A::mul(t, &acc, &base).map_err(|err| subproduct(err, e, x))?;
            }
            acc
        }
    })
}

fn package<A: Algebra>(t: &Table, target: Target, x: &LinComb<A::Key>) -> Evaluated {
    let terms = x
        .iter()
        .map(|(k, c)| {
            let mut v = A::key_json(t, k);
            v["coeff"] = serde_json::to_value(CoeffRecord::from(c)).expect("coefficient record");
            v
        })
        .collect();
    Evaluated {
        algebra: target.to_string(),
        render: x.render(|k| A::render_key(t, k)),
        terms,
    }
}

/// Evaluates `e` to its normal form in `target`; terms are in key order.
pub fn eval_expr(t: &Table, target: Target, e: &Expr) -> Result<Evaluated> {
    for g in e.generators() {
        if let Some(n) = g.name() {
            t.lookup(n)?;
        }
    }
    Ok(match target {
        Target::B => package::<B>(t, target, &eval_in::<B>(t, e)?),
        Target::Heis => package::<Heis>(t, target, &eval_in::<Heis>(t, e)?),
        Target::Lattice => package::<Lattice>(t, target, &eval_in::<Lattice>(t, e)?),
        Target::F => package::<F>(t, target, &eval_in::<F>(t, e)?),
    })
}
