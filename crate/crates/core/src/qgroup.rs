//! Dynkin quivers as quantum groups: Cartan data, symmetric Gaussian
//! binomials and the relations among the simple generators `Z^{(m)}_i`
//! of the lattice algebra.

use crate::coeff::{Coeff, GroundParams};
use crate::error::{Error, Result};
use crate::heis::Comparison;
use crate::lattice::{self, kgen, lat_mul, zgen, LatticeElem};
use crate::quiver::{Quiver, K0};
use crate::table::{ClassId, Table};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub a: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn of(quiver: &Quiver) -> Result<Self> {
        let n = quiver.n_vertices();
        let mut a = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = if i == j {
                    2
                } else {
                    -(quiver.edges_between(i, j) as i64)
                };
            }
            if quiver.edges_between(i, i) > 0 {
                return Err(Error::Config("loops are not simply laced".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && a[i][j] < -1 {
                    return Err(Error::Config("multiple edges are not simply laced".into()));
                }
            }
        }
        Ok(CartanData { a })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i != j && self.a[i][j] != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `[m]_v = (v^m − v^{−m}) / (v − v^{−1})`.
pub fn v_integer(g: GroundParams, m: u32) -> Coeff {
    let mut out = Coeff::zero(g);
    let mut k = -(m as i64) + 1;
    while k < m as i64 {
        out += &Coeff::vpow(g, k);
        k += 2;
    }
    out
}

pub fn v_factorial(g: GroundParams, m: u32) -> Coeff {
    (1..=m).fold(Coeff::one(g), |acc, k| &acc * &v_integer(g, k))
}

/// Symmetric Gaussian binomial `[n choose k]_v`.
pub fn gaussian_binomial(g: GroundParams, n: u32, k: u32) -> Coeff {
    if k > n {
        return Coeff::zero(g);
    }
    let den = &v_factorial(g, k) * &v_factorial(g, n - k);
    &v_factorial(g, n) * &den.inv().expect("v-factorials are nonzero")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SerreSign {
    /// `Σ_ν (−1)^ν [n choose ν] Z_i^ν Z_j Z_i^{n−ν}`.
    Alternating,
    /// `Σ_ν [n choose ν] Z_i^ν Z_j Z_i^{n−ν}`.
    Plain,
}

impl SerreSign {
    pub fn name(self) -> &'static str {
        match self {
            SerreSign::Alternating => "alternating",
            SerreSign::Plain => "plain",
        }
    }
}

fn simple(t: &Table, i: usize) -> Result<ClassId> {
    t.simple(i)
        .ok_or_else(|| Error::out_of_table(format!("simple at vertex {}", t.quiver().vertices()[i])))
}

fn power(t: &Table, x: &LatticeElem, k: u32) -> Result<LatticeElem> {
    let mut out = lattice::lat_unit(t);
    for _ in 0..k {
        out = lat_mul(t, &out, x)?;
    }
    Ok(out)
}

/// The Serre sum for the ordered pair `(i, j)` at site `m`.
pub fn serre_sum(t: &Table, cartan: &CartanData, sign: SerreSign, i: usize, j: usize, m: i64) -> Result<LatticeElem> {
    let n = (1 - cartan.entry(i, j)) as u32;
    let zi = zgen(t, m, simple(t, i)?);
    let zj = zgen(t, m, simple(t, j)?);
    let mut out = LatticeElem::zero(t.ground());
    for nu in 0..=n {
        let mut c = gaussian_binomial(t.ground(), n, nu);
        if sign == SerreSign::Alternating && nu % 2 == 1 {
            c = -&c;
        }
        let w = lat_mul(t, &lat_mul(t, &power(t, &zi, nu)?, &zj)?, &power(t, &zi, n - nu)?)?;
        out.add_scaled(&w, &c);
    }
    Ok(out)
}

/// Evaluates both sign placements on the first adjacent pair at site 0 and
/// returns the one that vanishes; errors unless exactly one does.
pub fn determine_serre_sign(t: &Table) -> Result<SerreSign> {
    let cartan = CartanData::of(t.quiver())?;
    let &(i, j) = cartan
        .adjacent_pairs()
        .first()
        .ok_or_else(|| Error::Config("no adjacent vertices".into()))?;
    let vanish: Vec<SerreSign> = [SerreSign::Alternating, SerreSign::Plain]
        .into_iter()
        .filter(|&s| serre_sum(t, &cartan, s, i, j, 0).map(|x| x.is_zero()).unwrap_or(false))
        .collect();
    match vanish.as_slice() {
        [s] => Ok(*s),
        _ => Err(Error::Invariant(format!(
            "{} Serre sign placements vanish, expected exactly one",
            vanish.len()
        ))),
    }
}

fn label(t: &Table, i: usize) -> &str {
    &t.quiver().vertices()[i]
}

/// The Serre sum vanishes for every ordered pair `i ≠ j` and every site.
pub fn serre_check(t: &Table, sign: SerreSign, sites: (i64, i64)) -> Result<Vec<Comparison>> {
    let cartan = CartanData::of(t.quiver())?;
    let mut out = Vec::new();
    for m in sites.0..=sites.1 {
        for i in 0..cartan.n() {
            for j in 0..cartan.n() {
                if i == j {
                    continue;
                }
                let s = serre_sum(t, &cartan, sign, i, j, m)?;
                out.push(Comparison {
                    instance: format!("serre({},{}) at site {m}", label(t, i), label(t, j)),
                    pass: s.is_zero(),
                    lhs: lattice::render_lattice(t, &s),
                    rhs: "0".into(),
                });
            }
        }
    }
    Ok(out)
}

/// `[Z^{(m)}_i, Z^{(m−1)}_j] = δ_ij K_i^{(−1)^m} / (q − 1)`.
pub fn adjacent_commutator_check(t: &Table, sites: (i64, i64)) -> Result<Vec<Comparison>> {
    let n = t.n_vertices();
    let mut out = Vec::new();
    for m in sites.0..=sites.1 {
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (zgen(t, m, simple(t, i)?), zgen(t, m - 1, simple(t, j)?));
                let lhs = lat_mul(t, &a, &b)?.minus(&lat_mul(t, &b, &a)?);
                let rhs = if i == j {
                    let e = if m.rem_euclid(2) == 0 { 1 } else { -1 };
                    kgen(t, K0::unit(n, i).scale(e)).scale(&t.ratio(1, t.ground().q() as u128 - 1))
                } else {
                    LatticeElem::zero(t.ground())
                };
                out.push(Comparison {
                    instance: format!("[Z{{{m}}}_{}, Z{{{}}}_{}]", label(t, i), m - 1, label(t, j)),
                    pass: lhs == rhs,
                    lhs: lattice::render_lattice(t, &lhs),
                    rhs: lattice::render_lattice(t, &rhs),
                });
            }
        }
    }
    Ok(out)
}

/// Exponent of `v` in the printed distant relation
/// `Z^{(m)}_i Z^{(n)}_j = v^{(−1)^{m−n}(n−m+1) a_ij} Z^{(n)}_j Z^{(m)}_i`.
pub fn distant_exponent(cartan: &CartanData, i: usize, j: usize, m: i64, n: i64) -> i64 {
    let s = if (m - n).rem_euclid(2) == 0 { 1 } else { -1 };
    s * (n - m + 1) * cartan.entry(i, j)
}

/// `Z_i^{(m)} K_j = v^{(−1)^m a_ij} K_j Z_i^{(m)}` for all `i, j, m`, and the
/// distant relation for all `m > n + 1` in the window. With `literal_reverse`
/// the printed distant relation is also evaluated for `m < n − 1`.
pub fn distant_and_k_checks(t: &Table, sites: (i64, i64), literal_reverse: bool) -> Result<Vec<Comparison>> {
    let cartan = CartanData::of(t.quiver())?;
    let n_v = t.n_vertices();
    let mut out = Vec::new();
    let mut push = |instance: String, lhs: LatticeElem, rhs: LatticeElem| {
        out.push(Comparison {
            instance,
            pass: lhs == rhs,
            lhs: lattice::render_lattice(t, &lhs),
            rhs: lattice::render_lattice(t, &rhs),
        });
    };
    for m in sites.0..=sites.1 {
        for i in 0..n_v {
            let zi = zgen(t, m, simple(t, i)?);
            for j in 0..n_v {
                let kj = kgen(t, K0::unit(n_v, j));
                let e = if m.rem_euclid(2) == 0 { 1 } else { -1 } * cartan.entry(i, j);
                push(
                    format!("Z{{{m}}}_{} K_{}", label(t, i), label(t, j)),
                    lat_mul(t, &zi, &kj)?,
                    lat_mul(t, &kj, &zi)?.scale(&t.vpow(e)),
                );
                for n in sites.0..=sites.1 {
                    if (m - n).abs() < 2 || (m < n && !literal_reverse) {
                        continue;
                    }
                    let zj = zgen(t, n, simple(t, j)?);
                    push(
                        format!("Z{{{m}}}_{} Z{{{n}}}_{}", label(t, i), label(t, j)),
                        lat_mul(t, &zi, &zj)?,
                        lat_mul(t, &zj, &zi)?.scale(&t.vpow(distant_exponent(&cartan, i, j, m, n))),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// The symmetrized Euler exponent of `(e_i, e_j)` equals `a_ij`.
pub fn bridging_check(t: &Table) -> Result<Vec<Comparison>> {
    let cartan = CartanData::of(t.quiver())?;
    let n = t.n_vertices();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let s = t.sym_exp(&K0::unit(n, i), &K0::unit(n, j));
            out.push(Comparison {
                instance: format!("(e_{}|e_{})", label(t, i), label(t, j)),
                pass: s == cartan.entry(i, j),
                lhs: format!("v^{s}"),
                rhs: format!("v^{}", cartan.entry(i, j)),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2(q: u32) -> Table {
        Table::build(Quiver::linear_a(2), GroundParams::new(q).unwrap(), vec![2, 2]).unwrap()
    }

    #[test]
    fn binomials() {
        let g = GroundParams::new(2).unwrap();
        assert_eq!(gaussian_binomial(g, 2, 1), &Coeff::vpow(g, 1) + &Coeff::vpow(g, -1));
        for n in 0..6 {
            assert!(gaussian_binomial(g, n, 0).is_one());
            assert!(gaussian_binomial(g, n, n).is_one());
            for k in 1..n {
                let lhs = gaussian_binomial(g, n, k);
                let a = &Coeff::vpow(g, -(k as i64)) * &gaussian_binomial(g, n - 1, k);
                let b = &Coeff::vpow(g, (n - k) as i64) * &gaussian_binomial(g, n - 1, k - 1);
                assert_eq!(lhs, &a + &b);
            }
        }
    }

    #[test]
    fn cartan_of_a3() {
        let c = CartanData::of(&Quiver::linear_a(3)).unwrap();
        assert_eq!(c.a, vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
    }

    #[test]
    fn alternating_sign_vanishes() {
        let t = a2(2);
        assert_eq!(determine_serre_sign(&t).unwrap(), SerreSign::Alternating);
    }

    #[test]
    fn commutator_examples() {
        let t = a2(2);
        assert!(adjacent_commutator_check(&t, (0, 0)).unwrap().iter().all(|r| r.pass));
        let t = a2(3);
        let rs = adjacent_commutator_check(&t, (1, 1)).unwrap();
        assert!(rs.iter().all(|r| r.pass));
    }

    #[test]
    fn bridging_identity() {
        assert!(bridging_check(&a2(2)).unwrap().iter().all(|r| r.pass));
    }

    #[test]
    fn literal_reverse_distant_relation_fails() {
        let t = a2(2);
        assert!(distant_and_k_checks(&t, (-1, 1), false).unwrap().iter().all(|r| r.pass));
        let rs = distant_and_k_checks(&t, (-1, 1), true).unwrap();
        let bad: Vec<_> = rs.iter().filter(|r| !r.pass).collect();
        assert!(!bad.is_empty());
        assert!(bad.iter().all(|r| r.instance.starts_with("Z{-1}")));
    }
}
