//! Graded objects (complexes with zero differential), graded Hom and Aut
//! counts, triangle and long-exact-sequence counts, and tilting tables.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::heis::{self, Comparison, HeisElem};
use crate::hopf;
use crate::linalg::Matrix;
use crate::quiver::K0;
use crate::rep::{self, Morphism, Rep};
use crate::table::{ClassId, Table};

/// Degree ↦ nonzero class. The empty map is the zero object.
pub type GradedObj = BTreeMap<i64, ClassId>;

/// Builds a graded object, dropping zero components.
pub fn graded(parts: &[(i64, ClassId)]) -> GradedObj {
    parts.iter().filter(|(_, c)| *c != 0).copied().collect()
}

pub fn concentrated(c: ClassId, degree: i64) -> GradedObj {
    graded(&[(degree, c)])
}

/// `X[n]`, with `(X[n])^i = X^{n+i}`.
pub fn shift(x: &GradedObj, n: i64) -> GradedObj {
    x.iter().map(|(d, c)| (d - n, *c)).collect()
}

fn comp(x: &GradedObj, d: i64) -> ClassId {
    x.get(&d).copied().unwrap_or(0)
}

pub fn graded_total_dim(t: &Table, x: &GradedObj) -> usize {
    x.values().map(|&c| t.dim(c).iter().sum::<usize>()).sum()
}

/// Euler characteristic `Σ (−1)^d X^d` in `K₀`.
pub fn graded_k0(t: &Table, x: &GradedObj) -> K0 {
    let mut out = K0::zero(t.n_vertices());
    for (d, &c) in x {
        out += &t.k0(c).scale(if d % 2 == 0 { 1 } else { -1 });
    }
    out
}

pub fn render_graded(t: &Table, x: &GradedObj) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter()
        .map(|(d, c)| format!("{d}:{}", t.name(*c)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `dim Hom(X, Y[i]) = Σ_j hom(X^j, Y^{j+i}) + Σ_j ext¹(X^j, Y^{j+i−1})`.
pub fn graded_hom_dim(t: &Table, x: &GradedObj, y: &GradedObj, i: i64) -> usize {
    x.iter()
        .map(|(&j, &a)| t.hom_dim(a, comp(y, j + i)) + t.ext1_dim(a, comp(y, j + i - 1)))
        .sum()
}

/// `|Aut X| = ∏_j |Aut X^j| · ∏_j q^{ext¹(X^j, X^{j−1})}`.
pub fn graded_aut_count(t: &Table, x: &GradedObj) -> u128 {
    let q = t.field().q() as u128;
    x.iter()
        .map(|(&j, &a)| t.aut_count(a) * q.pow(t.ext1_dim(a, comp(x, j - 1)) as u32))
        .product()
}

/// The number of exact triangles `A → M[1]⊕N → B[1] → A[1]` modulo
/// `Aut A × Aut B`: `γ_{AB}^{MN} · |Ext¹(N, M)|`.
pub fn triangle_g2(t: &Table, a: ClassId, b: ClassId, m: ClassId, n: ClassId) -> Coeff {
    &t.gamma4(a, b, m, n) * &t.int((t.field().q() as u128).pow(t.ext1_dim(n, m) as u32))
}

/// The same count assembled from morphism data: the number of `φ: B → A`
/// with kernel `M` and cokernel `N`, times the order of the block group
/// `Aut(M[1] ⊕ N)`, over `|Aut A||Aut B|` (stabilizers are trivial).
pub fn triangle_count_from_phi(t: &Table, a: ClassId, b: ClassId, m: ClassId, n: ClassId) -> Coeff {
    let count = t.phi_counts(a, b).get(&(m, n)).copied().unwrap_or(0);
    let block = graded_aut_count(t, &graded(&[(-1, m), (0, n)]));
    t.ratio(count * block, t.aut_count(a) * t.aut_count(b))
}

pub const DEFAULT_GAMMA_BUDGET: u128 = 1 << 24;

fn rank_per_vertex(f: &Field, m: &Morphism) -> Vec<usize> {
    m.iter().map(|x| x.rank(f)).collect()
}

fn composes_to_zero(f: &Field, first: &Morphism, second: &Morphism) -> bool {
    first.iter().zip(second).all(|(a, b)| {
        let p = b.mul(f, a);
        (0..p.rows()).all(|r| (0..p.cols()).all(|c| p.get(r, c) == 0))
    })
}

/// Orbifold number of long exact sequences
/// `… → A^i → C^i → B^i → A^{i+1} → …` modulo `∏ Aut A^i × Aut B^i`,
/// by enumerating every tuple of maps.
pub fn gamma_graded(t: &Table, a: &GradedObj, b: &GradedObj, c: &GradedObj, budget: u128) -> Result<Coeff> {
    let degrees: BTreeSet<i64> = a.keys().chain(b.keys()).chain(c.keys()).copied().collect();
    let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
        return Ok(t.one());
    };
    let reps = |x: ClassId| t.class(x).rep.clone();
    let mut objs: Vec<Rep> = Vec::new();
    for d in lo..=hi {
        objs.push(reps(comp(a, d)));
        objs.push(reps(comp(c, d)));
        objs.push(reps(comp(b, d)));
    }
    objs.push(reps(comp(a, hi + 1)));
    let (qv, f) = (t.quiver(), t.field());
    let mut spaces: Vec<Vec<Morphism>> = Vec::new();
    let mut exp = 0u32;
    for w in objs.windows(2) {
        let basis = rep::hom_basis(qv, f, &w[0], &w[1]);
        exp += basis.len() as u32;
        let needed = (f.q() as u128).checked_pow(exp).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, cap: budget });
        }
        spaces.push(rep::homs(f, &w[0], &w[1], &basis).collect());
    }
    let dims: Vec<&Vec<usize>> = objs.iter().map(|r| &r.dims).collect();
    let mut count = 0u128;
    let mut chosen: Vec<&Morphism> = Vec::with_capacity(spaces.len());
    dfs(f, &spaces, &dims, &mut chosen, &mut count);
    let mut den = 1u128;
    for d in lo..=hi + 1 {
        den *= t.aut_count(comp(a, d)) * t.aut_count(comp(b, d));
    }
    Ok(t.ratio(count, den))
}

fn dfs<'a>(
    f: &Field,
    spaces: &'a [Vec<Morphism>],
    dims: &[&Vec<usize>],
    chosen: &mut Vec<&'a Morphism>,
    count: &mut u128,
) {
    let k = chosen.len();
    if k == spaces.len() {
        // exact at the final object: the outgoing map is zero
        let last = rank_per_vertex(f, chosen[k - 1]);
        if last == *dims[k] {
            *count += 1;
        }
        return;
    }
    for m in &spaces[k] {
        // exactness at object k, between chosen[k-1] (or 0) and m
        let r_out = rank_per_vertex(f, m);
        let ok = match k {
            0 => r_out == *dims[0],
            _ => {
                let r_in = rank_per_vertex(f, chosen[k - 1]);
                composes_to_zero(f, chosen[k - 1], m)
                    && r_in
                        .iter()
                        .zip(&r_out)
                        .zip(dims[k].iter())
                        .all(|((x, y), d)| x + y == *d)
            }
        };
        if ok {
            chosen.push(m);
            dfs(f, spaces, dims, chosen, count);
            chosen.pop();
        }
    }
}

/// Graded object `H_d` of the differential `d` on `A•`, as class ids.
pub fn cohomology(t: &Table, a: &GradedObj, d: &BTreeMap<i64, Morphism>) -> Result<GradedObj> {
    let (qv, f) = (t.quiver(), t.field());
    let mut out = GradedObj::new();
    for (&deg, &c) in a {
        let r = &t.class(c).rep;
        let n = qv.n_vertices();
        let ker: Vec<Vec<Vec<u8>>> = match d.get(&deg) {
            Some(m) => m.iter().map(|x| x.kernel(f)).collect(),
            None => (0..n)
                .map(|i| Matrix::identity(r.dims[i]).column_space_basis(f))
                .collect(),
        };
        let img: Vec<Vec<Vec<u8>>> = match d.get(&(deg - 1)) {
            Some(m) => m.iter().map(|x| x.column_space_basis(f)).collect(),
            None => vec![Vec::new(); n],
        };
        let (k, _) = rep::sub_and_quotient(qv, f, r, &ker);
        let img_in_ker: Vec<Vec<Vec<u8>>> = (0..n)
            .map(|i| {
                let basis = Matrix::from_columns(r.dims[i], &ker[i]);
                img[i]
                    .iter()
                    .map(|v| {
                        basis
                            .solve(f, &Matrix::from_columns(r.dims[i], std::slice::from_ref(v)))
                            .expect("image lies in kernel")
                            .column(0)
                    })
                    .collect()
            })
            .collect();
        let (_, h) = rep::sub_and_quotient(qv, f, &k, &img_in_ker);
        let hc = t.classify(&h)?;
        if hc != 0 {
            out.insert(deg, hc);
        }
    }
    Ok(out)
}

/// All differentials `d: A• → A•[1]` with `d² = 0`, with their cohomology.
pub fn differentials(t: &Table, a: &GradedObj, budget: u128) -> Result<Vec<GradedObj>> {
    let (qv, f) = (t.quiver(), t.field());
    let degs: Vec<i64> = a.keys().copied().filter(|d| a.contains_key(&(d + 1))).collect();
    let mut spaces = Vec::new();
    let mut exp = 0u32;
    for &d in &degs {
        let (x, y) = (&t.class(a[&d]).rep, &t.class(a[&(d + 1)]).rep);
        let basis = rep::hom_basis(qv, f, x, y);
        exp += basis.len() as u32;
        let needed = (f.q() as u128).checked_pow(exp).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, cap: budget });
        }
        spaces.push(rep::homs(f, x, y, &basis).collect::<Vec<_>>());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; degs.len()];
    loop {
        let d: BTreeMap<i64, Morphism> = degs
            .iter()
            .enumerate()
            .map(|(k, &deg)| (deg, spaces[k][idx[k]].clone()))
            .collect();
        let square_zero = d
            .iter()
            .all(|(deg, m)| d.get(&(deg + 1)).is_none_or(|n| composes_to_zero(f, m, n)));
        if square_zero {
            out.push(cohomology(t, a, &d)?);
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < spaces[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// One entry of a tilting table: `F(from) = to[shift]`, so `to` sits in degree `−shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltEntry {
    pub from: String,
    pub to: String,
    pub shift: i64,
}

/// File form of a tilting table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltFile {
    pub source: String,
    pub target: String,
    pub map: Vec<TiltEntry>,
}

impl TiltFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Source indecomposable ↦ (target indecomposable, shift).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TiltTable {
    pub map: BTreeMap<ClassId, (ClassId, i64)>,
}

impl TiltTable {
    pub fn identity(t: &Table) -> Self {
        TiltTable {
            map: t.indecomposables().iter().map(|&c| (c, (c, 0))).collect(),
        }
    }

    pub fn from_file(src: &Table, tgt: &Table, file: &TiltFile) -> Result<Self> {
        let t = TiltTable::resolve(src, tgt, file)?;
        t.validate(src, tgt)?;
        Ok(t)
    }

    /// Resolves names without checking that graded Homs are preserved.
    pub fn resolve(src: &Table, tgt: &Table, file: &TiltFile) -> Result<Self> {
        let mut map = BTreeMap::new();
        for e in &file.map {
            let from = src.lookup(&e.from)?;
            let to = tgt.lookup(&e.to)?;
            if src.decompose(from).len() != 1 || tgt.decompose(to).len() != 1 {
                return Err(Error::Config(format!(
                    "{} ↦ {} is not between indecomposables",
                    e.from, e.to
                )));
            }
            map.insert(from, (to, e.shift));
        }
        Ok(TiltTable { map })
    }

    pub fn to_file(&self, src: &Table, tgt: &Table, source: &str, target: &str) -> TiltFile {
        TiltFile {
            source: source.into(),
            target: target.into(),
            map: self
                .map
                .iter()
                .map(|(&a, &(b, s))| TiltEntry {
                    from: src.name(a).into(),
                    to: tgt.name(b).into(),
                    shift: s,
                })
                .collect(),
        }
    }

    pub fn validate(&self, src: &Table, tgt: &Table) -> Result<()> {
        for &x in src.indecomposables() {
            if !self.map.contains_key(&x) {
                return Err(Error::Config(format!("tilting table misses {}", src.name(x))));
            }
        }
        let images: BTreeSet<_> = self.map.values().collect();
        if images.len() != self.map.len() {
            return Err(Error::Config("tilting table is not injective".into()));
        }
        if let Some((x, y, i)) = hom_mismatch(src, tgt, &self.map) {
            return Err(Error::Config(format!(
                "Hom({}, {}[{i}]) is not preserved",
                src.name(x),
                src.name(y)
            )));
        }
        Ok(())
    }

    /// Swaps the targets of two source indecomposables.
    pub fn corrupted(&self) -> Self {
        let mut out = self.clone();
        let keys: Vec<ClassId> = self.map.keys().copied().collect();
        if keys.len() >= 2 {
            let (a, b) = (self.map[&keys[0]], self.map[&keys[1]]);
            out.map.insert(keys[0], (b.0, a.1));
            out.map.insert(keys[1], (a.0, b.1));
        }
        out
    }

    pub fn shift_of(&self, x: ClassId) -> i64 {
        self.map[&x].1
    }
}

/// One record per pair of source indecomposables and degree `i`:
/// `dim Hom(X, Y[i]) = dim Hom(F X, F Y[i])`, plus totality and injectivity.
pub fn tilt_validation(src: &Table, tgt: &Table, f: &TiltTable) -> Vec<Comparison> {
    let mut out = Vec::new();
    let missing: Vec<&str> = src
        .indecomposables()
        .iter()
        .filter(|x| !f.map.contains_key(x))
        .map(|&x| src.name(x))
        .collect();
    out.push(Comparison {
        instance: "table covers every indecomposable".into(),
        pass: missing.is_empty(),
        lhs: missing.join(", "),
        rhs: String::new(),
    });
    let images: BTreeSet<ClassId> = f.map.values().map(|v| v.0).collect();
    out.push(Comparison {
        instance: "table is injective".into(),
        pass: images.len() == f.map.len(),
        lhs: format!("{} images", images.len()),
        rhs: format!("{} entries", f.map.len()),
    });
    for (&x, &(fx, sx)) in &f.map {
        for (&y, &(fy, sy)) in &f.map {
            let (gx, gy) = (concentrated(fx, -sx), concentrated(fy, -sy));
            for i in HOM_DEGREES {
                let (l, r) = (source_hom(src, x, y, i), graded_hom_dim(tgt, &gx, &gy, i));
                out.push(Comparison {
                    instance: format!("Hom({}, {}[{i}])", src.name(x), src.name(y)),
                    pass: l == r,
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                });
            }
        }
    }
    out
}

const HOM_DEGREES: std::ops::RangeInclusive<i64> = -3..=3;

fn source_hom(src: &Table, x: ClassId, y: ClassId, i: i64) -> usize {
    match i {
        0 => src.hom_dim(x, y),
        1 => src.ext1_dim(x, y),
        _ => 0,
    }
}

fn hom_mismatch(src: &Table, tgt: &Table, map: &BTreeMap<ClassId, (ClassId, i64)>) -> Option<(ClassId, ClassId, i64)> {
    for (&x, &(fx, sx)) in map {
        for (&y, &(fy, sy)) in map {
            let (gx, gy) = (concentrated(fx, -sx), concentrated(fy, -sy));
            for i in HOM_DEGREES {
                if source_hom(src, x, y, i) != graded_hom_dim(tgt, &gx, &gy, i) {
                    return Some((x, y, i));
                }
            }
        }
    }
    None
}

/// `F(A)` as a graded object of the target.
pub fn apply_tilt(src: &Table, tgt: &Table, f: &TiltTable, a: ClassId) -> Result<GradedObj> {
    let mut parts: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &j in src.decompose(a) {
        let x = src.indecomposables()[j];
        let &(y, s) = f
            .map
            .get(&x)
            .ok_or_else(|| Error::Config(format!("tilting table misses {}", src.name(x))))?;
        parts.entry(-s).or_default().extend(tgt.decompose(y));
    }
    let mut out = GradedObj::new();
    for (d, ms) in parts {
        let c = tgt
            .class_of_multiset(&ms)
            .ok_or_else(|| Error::out_of_table(format!("image of {} in degree {d}", src.name(a))))?;
        out.insert(d, c);
    }
    Ok(out)
}

/// `F_K` on `K₀`, determined by the images of the simples.
pub fn tilt_k0(src: &Table, tgt: &Table, f: &TiltTable, alpha: &K0) -> Result<K0> {
    let mut out = K0::zero(tgt.n_vertices());
    for (i, &a) in alpha.0.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let s = src
            .simple(i)
            .ok_or_else(|| Error::out_of_table(format!("simple at vertex {i}")))?;
        out += &graded_k0(tgt, &apply_tilt(src, tgt, f, s)?).scale(a);
    }
    Ok(out)
}

/// All tables `indec ↦ (indec′, shift)` with shifts drawn from `shifts` that
/// preserve every graded Hom dimension between indecomposables.
pub fn discover_tilt(src: &Table, tgt: &Table, shifts: &[i64]) -> Vec<TiltTable> {
    let xs: Vec<ClassId> = src.indecomposables().to_vec();
    let ys: Vec<ClassId> = tgt.indecomposables().to_vec();
    if xs.len() != ys.len() || shifts.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = BTreeMap::new();
    search(src, tgt, &xs, &ys, shifts, &mut cur, &mut out);
    out
}

fn search(
    src: &Table,
    tgt: &Table,
    xs: &[ClassId],
    ys: &[ClassId],
    shifts: &[i64],
    cur: &mut BTreeMap<ClassId, (ClassId, i64)>,
    out: &mut Vec<TiltTable>,
) {
    let k = cur.len();
    if k == xs.len() {
        out.push(TiltTable { map: cur.clone() });
        return;
    }
    for &y in ys {
        if cur.values().any(|&(z, _)| z == y) {
            continue;
        }
        for &s in shifts {
            cur.insert(xs[k], (y, s));
            if hom_mismatch(src, tgt, cur).is_none() {
                search(src, tgt, xs, ys, shifts, cur, out);
            }
            cur.remove(&xs[k]);
        }
    }
}

/// `Hom(A₁, A₀) = 0` and `Ext¹(A₀, A₁) = 0` for indecomposables sent to
/// shifts 1 and 0.
pub fn vanishing_pattern_holds(src: &Table, f: &TiltTable) -> bool {
    let of = |s: i64| -> Vec<ClassId> { f.map.iter().filter(|(_, v)| v.1 == s).map(|(&k, _)| k).collect() };
    let (ones, zeros) = (of(1), of(0));
    ones.iter().all(|&a1| {
        zeros
            .iter()
            .all(|&a0| src.hom_dim(a1, a0) == 0 && src.ext1_dim(a0, a1) == 0)
    })
}

/// The decomposition `A = A₀ ⊕ A₁` by shift.
pub fn split_by_shift(src: &Table, f: &TiltTable, a: ClassId) -> Result<BTreeMap<i64, ClassId>> {
    let mut parts: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &j in src.decompose(a) {
        let x = src.indecomposables()[j];
        parts.entry(f.shift_of(x)).or_default().push(j);
    }
    let mut out = BTreeMap::new();
    for (s, ms) in parts {
        let c = src
            .class_of_multiset(&ms)
            .ok_or_else(|| Error::out_of_table(format!("shift-{s} part of {}", src.name(a))))?;
        out.insert(s, c);
    }
    Ok(out)
}

/// `F_*[A] = Z(F(A))`; requires `F(A)` in degrees −1 and 0.
pub fn tilt_image_heis(src: &Table, tgt: &Table, f: &TiltTable, a: ClassId) -> Result<HeisElem> {
    let g = apply_tilt(src, tgt, f, a)?;
    if g.keys().any(|d| *d != 0 && *d != -1) {
        return Err(Error::Config(format!(
            "image of {} leaves degrees −1..0: {}",
            src.name(a),
            render_graded(tgt, &g)
        )));
    }
    Ok(heis::z_complex2(tgt, comp(&g, -1), comp(&g, 0)))
}

fn sum_fits(t: &Table, parts: &[&[usize]]) -> bool {
    let mut d = vec![0; t.n_vertices()];
    for p in parts {
        for (i, x) in p.iter().enumerate() {
            d[i] += x;
        }
    }
    t.in_bound(&d)
}

/// Checks `F_*([A′]*[A″]) = F_*[A′]·F_*[A″]` in `Heis` of the target for all
/// nonzero source pairs whose sum is in bound, and the split identity
/// `[A] = |Hom(A₀, A₁)|^{−1/2} [A₁]*[A₀]` for every source class.
pub fn verify_tilt_heis(src: &Table, tgt: &Table, f: &TiltTable) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    let classes = src.nonzero_classes();
    for &a in &classes {
        for &b in &classes {
            if !sum_fits(src, &[src.dim(a), src.dim(b)]) {
                continue;
            }
            let mut lhs = HeisElem::zero(tgt.ground());
            for (c, v) in hopf::hall_product(src, a, b, true)? {
                lhs.add_scaled(&tilt_image_heis(src, tgt, f, c)?, &v);
            }
            let rhs = heis::heis_mul(
                tgt,
                &tilt_image_heis(src, tgt, f, a)?,
                &tilt_image_heis(src, tgt, f, b)?,
            )?;
            out.push(Comparison {
                instance: format!("F([{}]*[{}])", src.name(a), src.name(b)),
                pass: lhs == rhs,
                lhs: heis::render_heis(tgt, &lhs),
                rhs: heis::render_heis(tgt, &rhs),
            });
        }
    }
    for &a in &classes {
        let parts = split_by_shift(src, f, a)?;
        let (a0, a1) = (comp(&parts, 0), comp(&parts, 1));
        if parts.keys().any(|s| *s != 0 && *s != 1) {
            continue;
        }
        let prod = hopf::hall_product(src, a1, a0, true)?;
        let expect = vec![(a, src.vpow(src.hom_dim(a0, a1) as i64))];
        out.push(Comparison {
            instance: format!("split [{}]", src.name(a)),
            pass: prod == expect,
            lhs: format!(
                "{:?}",
                prod.iter()
                    .map(|(c, v)| (src.name(*c).to_string(), v.to_string()))
                    .collect::<Vec<_>>()
            ),
            rhs: format!("{}·[{}]", expect[0].1, src.name(a)),
        });
    }
    Ok(out)
}
