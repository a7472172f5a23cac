//! Representations of a quiver as tuples of matrices, and the linear algebra
//! of morphisms between them.

use crate::field::{Fe, Field};
use crate::linalg::{complete_basis, span_elements, subspaces, Matrix};
use crate::quiver::Quiver;

/// One matrix per arrow, of shape `dim(target) × dim(source)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix>,
}

/// A morphism: one matrix per vertex.
pub type Morphism = Vec<Matrix>;

impl Rep {
    pub fn zero(quiver: &Quiver, dims: Vec<usize>) -> Self {
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(dims[t], dims[s]))
            .collect();
        Rep { dims, mats }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn direct_sum(&self, quiver: &Quiver, other: &Rep) -> Rep {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (x, y) = (&self.mats[a], &other.mats[a]);
                for i in 0..x.rows() {
                    for j in 0..x.cols() {
                        m.set(i, j, x.get(i, j));
                    }
                }
                for i in 0..y.rows() {
                    for j in 0..y.cols() {
                        m.set(self.dims[t] + i, self.dims[s] + j, y.get(i, j));
                    }
                }
                m
            })
            .collect();
        Rep { dims, mats }
    }

    /// All representations with the given dimension vector, in a fixed order.
    pub fn enumerate(quiver: &Quiver, f: &Field, dims: &[usize]) -> impl Iterator<Item = Rep> {
        let shapes: Vec<(usize, usize)> = quiver.arrows().iter().map(|&(s, t)| (dims[t], dims[s])).collect();
        let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let q = f.q();
        let total = (q as u128).pow(entries as u32);
        let dims = dims.to_vec();
        (0..total).map(move |mut code| {
            let mats = shapes
                .iter()
                .map(|&(r, c)| {
                    let mut data = Vec::with_capacity(r * c);
                    for _ in 0..r * c {
                        data.push((code % q as u128) as Fe);
                        code /= q as u128;
                    }
                    Matrix::from_rows(r, c, data)
                })
                .collect();
            Rep {
                dims: dims.clone(),
                mats,
            }
        })
    }

    /// Number of representations with the given dimension vector.
    pub fn count(quiver: &Quiver, q: usize, dims: &[usize]) -> u128 {
        let entries: u32 = quiver.arrows().iter().map(|&(s, t)| (dims[t] * dims[s]) as u32).sum();
        (q as u128).saturating_pow(entries)
    }
}

/// The linear map `δ(f) = (B_a f_s − f_t A_a)_a` from `⊕ Hom(A_i, B_i)` to
/// `⊕_a Hom(A_s, B_t)`. Its kernel is `Hom(A, B)`, its cokernel `Ext¹(A, B)`.
pub fn hom_system(quiver: &Quiver, f: &Field, a: &Rep, b: &Rep) -> Matrix {
    let n = quiver.n_vertices();
    let mut var_off = vec![0; n + 1];
    for i in 0..n {
        var_off[i + 1] = var_off[i] + b.dims[i] * a.dims[i];
    }
    let mut row_off = vec![0; quiver.arrows().len() + 1];
    for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
        row_off[k + 1] = row_off[k] + b.dims[t] * a.dims[s];
    }
    let mut m = Matrix::zeros(row_off[quiver.arrows().len()], var_off[n]);
    // f_i is dB_i × dA_i, variable (r, c) at var_off[i] + r·dA_i + c
    let var = |i: usize, r: usize, c: usize| var_off[i] + r * a.dims[i] + c;
    for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
        let (am, bm) = (&a.mats[k], &b.mats[k]);
        for r in 0..b.dims[t] {
            for c in 0..a.dims[s] {
                let row = row_off[k] + r * a.dims[s] + c;
                // (B_a f_s)[r][c] = Σ_j B_a[r][j] f_s[j][c]
                for j in 0..b.dims[s] {
                    let x = bm.get(r, j);
                    if x != 0 {
                        let col = var(s, j, c);
                        m.set(row, col, f.add(m.get(row, col), x));
                    }
                }
                // −(f_t A_a)[r][c] = −Σ_j f_t[r][j] A_a[j][c]
                for j in 0..a.dims[t] {
                    let x = am.get(j, c);
                    if x != 0 {
                        let col = var(t, r, j);
                        m.set(row, col, f.sub(m.get(row, col), x));
                    }
                }
            }
        }
    }
    m
}

/// `(dim Hom(A, B), dim Ext¹(A, B))`.
pub fn hom_ext_dims(quiver: &Quiver, f: &Field, a: &Rep, b: &Rep) -> (usize, usize) {
    let m = hom_system(quiver, f, a, b);
    let rank = m.rank(f);
    (m.cols() - rank, m.rows() - rank)
}

fn vector_to_morphism(a: &Rep, b: &Rep, v: &[Fe]) -> Morphism {
    let mut off = 0;
    a.dims
        .iter()
        .zip(&b.dims)
        .map(|(&da, &db)| {
            let m = Matrix::from_rows(db, da, v[off..off + da * db].to_vec());
            off += da * db;
            m
        })
        .collect()
}

/// A basis of `Hom(A, B)`, each element flattened as in [`hom_system`].
pub fn hom_basis(quiver: &Quiver, f: &Field, a: &Rep, b: &Rep) -> Vec<Vec<Fe>> {
    hom_system(quiver, f, a, b).kernel(f)
}

/// Iterates over every morphism `A → B`.
pub fn homs<'a>(f: &'a Field, a: &'a Rep, b: &'a Rep, basis: &'a [Vec<Fe>]) -> impl Iterator<Item = Morphism> + 'a {
    let len: usize = a.dims.iter().zip(&b.dims).map(|(x, y)| x * y).sum();
    span_elements(f, basis, len).map(move |v| vector_to_morphism(a, b, &v))
}

pub fn is_iso(f: &Field, m: &Morphism) -> bool {
    m.iter().all(|x| x.is_invertible(f))
}

/// Searches `Hom(A, B)` for an isomorphism.
pub fn find_iso(quiver: &Quiver, f: &Field, a: &Rep, b: &Rep) -> Option<Morphism> {
    if a.dims != b.dims {
        return None;
    }
    let basis = hom_basis(quiver, f, a, b);
    let found = homs(f, a, b, &basis).find(|m| is_iso(f, m));
    found
}

/// Checks the intertwining condition directly.
pub fn is_morphism(quiver: &Quiver, f: &Field, a: &Rep, b: &Rep, m: &Morphism) -> bool {
    quiver
        .arrows()
        .iter()
        .enumerate()
        .all(|(k, &(s, t))| b.mats[k].mul(f, &m[s]) == m[t].mul(f, &a.mats[k]))
}

/// Whether the subspaces `sub[i] ⊆ F^{dims[i]}` (given by basis vectors) are
/// stable under every arrow.
pub fn is_stable(quiver: &Quiver, f: &Field, rep: &Rep, sub: &[Vec<Vec<Fe>>]) -> bool {
    quiver.arrows().iter().enumerate().all(|(k, &(s, t))| {
        if sub[s].is_empty() {
            return true;
        }
        let image = rep.mats[k].mul(f, &Matrix::from_columns(rep.dims[s], &sub[s]));
        let mut cols = sub[t].clone();
        cols.extend((0..image.cols()).map(|j| image.column(j)));
        Matrix::from_columns(rep.dims[t], &cols).rank(f) == sub[t].len()
    })
}

/// Restriction to a stable subspace tuple and the induced quotient.
pub fn sub_and_quotient(quiver: &Quiver, f: &Field, rep: &Rep, sub: &[Vec<Vec<Fe>>]) -> (Rep, Rep) {
    let n = quiver.n_vertices();
    let comp: Vec<Vec<Vec<Fe>>> = (0..n).map(|i| complete_basis(f, rep.dims[i], &sub[i])).collect();
    let full_inv: Vec<Matrix> = (0..n)
        .map(|i| {
            let mut cols = sub[i].clone();
            cols.extend(comp[i].iter().cloned());
            Matrix::from_columns(rep.dims[i], &cols)
                .inverse(f)
                .expect("completed basis is invertible")
        })
        .collect();
    let sub_dims: Vec<usize> = sub.iter().map(|s| s.len()).collect();
    let quot_dims: Vec<usize> = comp.iter().map(|c| c.len()).collect();
    let mut sub_mats = Vec::new();
    let mut quot_mats = Vec::new();
    for (k, &(s, t)) in quiver.arrows().iter().enumerate() {
        let a = &rep.mats[k];
        // coordinates of A·u (u ∈ sub_s) in the basis sub_t ∪ comp_t
        let us = Matrix::from_columns(rep.dims[s], &sub[s]);
        let cs = Matrix::from_columns(rep.dims[s], &comp[s]);
        let img_u = full_inv[t].mul(f, &a.mul(f, &us));
        let img_c = full_inv[t].mul(f, &a.mul(f, &cs));
        let mut sm = Matrix::zeros(sub_dims[t], sub_dims[s]);
        for r in 0..sub_dims[t] {
            for c in 0..sub_dims[s] {
                sm.set(r, c, img_u.get(r, c));
            }
        }
        let mut qm = Matrix::zeros(quot_dims[t], quot_dims[s]);
        for r in 0..quot_dims[t] {
            for c in 0..quot_dims[s] {
                qm.set(r, c, img_c.get(sub_dims[t] + r, c));
            }
        }
        sub_mats.push(sm);
        quot_mats.push(qm);
    }
    (
        Rep {
            dims: sub_dims,
            mats: sub_mats,
        },
        Rep {
            dims: quot_dims,
            mats: quot_mats,
        },
    )
}

/// Every stable subspace tuple of `rep`.
pub fn subreps(quiver: &Quiver, f: &Field, rep: &Rep) -> Vec<Vec<Vec<Vec<Fe>>>> {
    let per_vertex: Vec<Vec<Vec<Vec<Fe>>>> = rep.dims.iter().map(|&d| subspaces(f, d)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        let choice: Vec<Vec<Vec<Fe>>> = idx.iter().enumerate().map(|(i, &k)| per_vertex[i][k].clone()).collect();
        if is_stable(quiver, f, rep, &choice) {
            out.push(choice);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == idx.len() {
                return out;
            }
            idx[i] += 1;
            if idx[i] < per_vertex[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Kernel of `φ: B → A` as a subrepresentation of `B`, and cokernel as a
/// quotient of `A`.
pub fn kernel_cokernel(quiver: &Quiver, f: &Field, b: &Rep, a: &Rep, phi: &Morphism) -> (Rep, Rep) {
    let ker: Vec<Vec<Vec<Fe>>> = phi.iter().map(|m| m.kernel(f)).collect();
    let img: Vec<Vec<Vec<Fe>>> = phi.iter().map(|m| m.column_space_basis(f)).collect();
    let (k, _) = sub_and_quotient(quiver, f, b, &ker);
    let (_, c) = sub_and_quotient(quiver, f, a, &img);
    (k, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GroundParams;

    fn setup(q: u32) -> (Quiver, Field) {
        (Quiver::linear_a(2), Field::new(GroundParams::new(q).unwrap()).unwrap())
    }

    fn p(quiver: &Quiver) -> Rep {
        let mut r = Rep::zero(quiver, vec![1, 1]);
        r.mats[0] = Matrix::identity(1);
        r
    }

    #[test]
    fn hom_and_ext_on_a2() {
        let (qv, f) = setup(2);
        let s1 = Rep::zero(&qv, vec![1, 0]);
        let s2 = Rep::zero(&qv, vec![0, 1]);
        let pp = p(&qv);
        assert_eq!(hom_ext_dims(&qv, &f, &pp, &s1), (1, 0));
        assert_eq!(hom_ext_dims(&qv, &f, &s1, &pp), (0, 0));
        assert_eq!(hom_ext_dims(&qv, &f, &s1, &s2), (0, 1));
        assert_eq!(hom_ext_dims(&qv, &f, &s2, &s1), (0, 0));
    }

    #[test]
    fn subreps_of_projective() {
        let (qv, f) = setup(2);
        let pp = p(&qv);
        let subs = subreps(&qv, &f, &pp);
        let dims: Vec<Vec<usize>> = subs.iter().map(|s| s.iter().map(|v| v.len()).collect()).collect();
        assert_eq!(subs.len(), 3);
        assert!(dims.contains(&vec![0, 1]));
        assert!(!dims.contains(&vec![1, 0]));
    }

    #[test]
    fn iso_detection() {
        let (qv, f) = setup(3);
        let mut a = Rep::zero(&qv, vec![1, 1]);
        a.mats[0] = Matrix::from_rows(1, 1, vec![2]);
        assert!(find_iso(&qv, &f, &a, &p(&qv)).is_some());
        assert!(find_iso(&qv, &f, &Rep::zero(&qv, vec![1, 1]), &p(&qv)).is_none());
        let m = find_iso(&qv, &f, &a, &p(&qv)).unwrap();
        assert!(is_morphism(&qv, &f, &a, &p(&qv), &m));
    }

    #[test]
    fn kernel_and_cokernel_of_inclusion() {
        let (qv, f) = setup(2);
        let s2 = Rep::zero(&qv, vec![0, 1]);
        let pp = p(&qv);
        // S2 → P, the inclusion
        let phi = vec![Matrix::zeros(1, 0), Matrix::identity(1)];
        assert!(is_morphism(&qv, &f, &s2, &pp, &phi));
        let (k, c) = kernel_cokernel(&qv, &f, &s2, &pp, &phi);
        assert_eq!(k.dims, vec![0, 0]);
        assert_eq!(c.dims, vec![1, 0]);
    }
}
