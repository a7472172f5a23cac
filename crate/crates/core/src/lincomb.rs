//! Finitely supported linear combinations over an ordered basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coeff, GroundParams};
use crate::error::Result;

/// A map from basis keys to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    ground: GroundParams,
    terms: BTreeMap<K, Coeff>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero(ground: GroundParams) -> Self {
        LinComb {
            ground,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(ground: GroundParams, key: K) -> Self {
        LinComb::term(key, Coeff::one(ground))
    }

    pub fn term(key: K, c: Coeff) -> Self {
        let mut x = LinComb::zero(c.ground());
        x.add_term(key, c);
        x
    }

    pub fn ground(&self) -> GroundParams {
        self.ground
    }

    pub fn add_term(&mut self, key: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = LinComb::zero(self.ground);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coeff::from_int(self.ground, -1))
    }

    pub fn plus(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Coeff::one(self.ground));
        out
    }

    pub fn minus(&self, other: &LinComb<K>) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Coeff::from_int(self.ground, -1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn get(&self, key: &K) -> Coeff {
        self.terms.get(key).cloned().unwrap_or_else(|| Coeff::zero(self.ground))
    }

    /// The single term, if there is exactly one.
    pub fn single(&self) -> Option<(&K, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::zero(self.ground);
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Applies a linear map given on basis keys.
    pub fn apply<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Result<LinComb<K2>>) -> Result<LinComb<K2>> {
        let mut out = LinComb::zero(self.ground);
        for (k, v) in &self.terms {
            out.add_scaled(&f(k)?, v);
        }
        Ok(out)
    }

    /// Extends a map on pairs of basis keys bilinearly.
    pub fn bilinear<K2: Ord + Clone, K3: Ord + Clone>(
        &self,
        other: &LinComb<K2>,
        mut f: impl FnMut(&K, &K2) -> Result<LinComb<K3>>,
    ) -> Result<LinComb<K3>> {
        let mut out = LinComb::zero(self.ground);
        for (k1, v1) in &self.terms {
            for (k2, v2) in other.iter() {
                out.add_scaled(&f(k1, k2)?, &(v1 * v2));
            }
        }
        Ok(out)
    }

    /// Extends a scalar-valued map on basis keys linearly.
    pub fn functional(&self, mut f: impl FnMut(&K) -> Coeff) -> Coeff {
        let mut acc = Coeff::zero(self.ground);
        for (k, v) in &self.terms {
            acc += &(v * &f(k));
        }
        acc
    }

    pub fn render(&self, mut key: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, v)| {
                let ks = key(k);
                if v.is_one() {
                    ks
                } else {
                    format!("({v})*{ks}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_never_stored() {
        let g = GroundParams::new(2).unwrap();
        let mut x = LinComb::basis(g, 1u8);
        x.add_term(1, Coeff::from_int(g, -1));
        assert!(x.is_zero());
        let y = LinComb::term(2u8, Coeff::vpow(g, 1));
        assert_eq!(y.minus(&y), LinComb::zero(g));
        assert_eq!(y.plus(&y).get(&2), Coeff::vpow(g, 1).scale_int(2));
    }

    #[test]
    fn bilinear_extension() {
        let g = GroundParams::new(3).unwrap();
        let x = LinComb::basis(g, 1i32).plus(&LinComb::basis(g, 2));
        let prod = x.bilinear(&x, |a, b| Ok(LinComb::basis(g, a + b))).unwrap();
        assert_eq!(prod.get(&3), Coeff::from_int(g, 2));
        assert_eq!(prod.len(), 3);
    }
}
