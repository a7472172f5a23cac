//! Quivers, dimension vectors and the JSON configuration format.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and arrows given by label; rejects
    /// unknown labels and directed cycles.
    pub fn new(vertices: Vec<String>, arrows: &[(String, String)]) -> Result<Self> {
        let index = |l: &String| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{l}`")))
        };
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let arrows = arrows
            .iter()
            .map(|(s, t)| Ok((index(s)?, index(t)?)))
            .collect::<Result<Vec<_>>>()?;
        let q = Quiver { vertices, arrows };
        if !q.is_acyclic() {
            return Err(Error::InvalidQuiver("quiver has a directed cycle".into()));
        }
        Ok(q)
    }

    /// Linearly oriented `A_n`: `1 → 2 → … → n`.
    pub fn linear_a(n: usize) -> Self {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String)> = (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        Quiver::new(vertices, &arrows).expect("linear quiver is acyclic")
    }

    fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == n
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Exponent of the Euler form: `Σ αᵢβᵢ − Σ_{i→j} αᵢβⱼ`.
    pub fn euler_exp(&self, a: &K0, b: &K0) -> i64 {
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| a.0[s] * b.0[t]).sum();
        diag - off
    }

    /// Exponent of the symmetrized Euler form.
    pub fn sym_exp(&self, a: &K0, b: &K0) -> i64 {
        self.euler_exp(a, b) + self.euler_exp(b, a)
    }

    /// Number of edges between distinct vertices `i` and `j`, ignoring orientation.
    pub fn edges_between(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, t)| (s == i && t == j) || (s == j && t == i))
            .count()
    }
}

/// An element of the Grothendieck group, written in the basis of simples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct K0(pub Vec<i64>);

impl K0 {
    pub fn zero(n: usize) -> Self {
        K0(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        K0(v)
    }

    pub fn from_dims(d: &[usize]) -> Self {
        K0(d.iter().map(|&x| x as i64).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> K0 {
        K0(self.0.iter().map(|x| x * k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Add<&K0> for &K0 {
    type Output = K0;
    fn add(self, o: &K0) -> K0 {
        K0(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&K0> for &K0 {
    type Output = K0;
    fn sub(self, o: &K0) -> K0 {
        K0(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &K0 {
    type Output = K0;
    fn neg(self) -> K0 {
        K0(self.0.iter().map(|a| -a).collect())
    }
}

impl AddAssign<&K0> for K0 {
    fn add_assign(&mut self, o: &K0) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }
}

impl fmt::Display for K0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Where a user-chosen name points: an indecomposable given by its dimension
/// vector and its index among indecomposables of that dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NameTarget {
    Dim(Vec<usize>),
    Indexed(Vec<usize>, usize),
}

impl NameTarget {
    pub fn dim(&self) -> &[usize] {
        match self {
            NameTarget::Dim(d) | NameTarget::Indexed(d, _) => d,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            NameTarget::Dim(_) => 0,
            NameTarget::Indexed(_, i) => *i,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    pub q: u32,
    pub bound: Vec<usize>,
    #[serde(default)]
    pub names: BTreeMap<String, NameTarget>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Config::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.quiver()?;
        if self.bound.len() != self.vertices.len() {
            return Err(Error::Config(format!(
                "bound has {} entries for {} vertices",
                self.bound.len(),
                self.vertices.len()
            )));
        }
        for (name, target) in &self.names {
            if target.dim().len() != self.vertices.len() {
                return Err(Error::Config(format!(
                    "name `{name}` has a dimension vector of the wrong length"
                )));
            }
            if name.is_empty() || name.contains(['[', ']', '+', '^', ' ']) || name == "0" {
                return Err(Error::Config(format!("`{name}` is not a usable object name")));
            }
        }
        Ok(())
    }

    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::new(self.vertices.clone(), &self.arrows)
    }

    /// A linearly oriented `A_n` configuration with default names.
    pub fn linear_a(n: usize, q: u32, bound: Vec<usize>) -> Self {
        let quiver = Quiver::linear_a(n);
        Config {
            vertices: quiver.vertices.clone(),
            arrows: quiver
                .arrows
                .iter()
                .map(|&(s, t)| (quiver.vertices[s].clone(), quiver.vertices[t].clone()))
                .collect(),
            q,
            bound,
            names: BTreeMap::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_are_rejected() {
        let v = vec!["a".to_string(), "b".to_string()];
        let arrows = vec![("a".into(), "b".into()), ("b".into(), "a".into())];
        assert!(matches!(Quiver::new(v.clone(), &arrows), Err(Error::InvalidQuiver(_))));
        let loop_ = vec![("a".into(), "a".into())];
        assert!(Quiver::new(v, &loop_).is_err());
    }

    #[test]
    fn euler_form_on_a2() {
        let q = Quiver::linear_a(2);
        let s1 = K0::unit(2, 0);
        let s2 = K0::unit(2, 1);
        assert_eq!(q.euler_exp(&s1, &s2), -1);
        assert_eq!(q.euler_exp(&s2, &s1), 0);
        assert_eq!(q.euler_exp(&s1, &s1), 1);
        assert_eq!(q.sym_exp(&s1, &s2), -1);
    }

    #[test]
    fn config_roundtrip_and_names() {
        let text = r#"{"vertices":["1","2"],"arrows":[["1","2"]],"q":2,"bound":[2,2],
            "names":{"P":[1,1],"T":[[1,1],0]}}"#;
        let cfg = Config::from_json(text).unwrap();
        assert_eq!(cfg.names["P"], NameTarget::Dim(vec![1, 1]));
        assert_eq!(cfg.names["T"].index(), 0);
        let again = Config::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(cfg, again);
        let bad = r#"{"vertices":["1","2"],"arrows":[["1","3"]],"q":2,"bound":[1,1]}"#;
        assert!(Config::from_json(bad).is_err());
    }
}
