//! Quiver algebras with monomial relations.
//!
//! Conventions: a path is a list of arrows in traversal order. The matrix of
//! an arrow `a: s -> t` in a representation maps the space at `s` to the
//! space at `t`, and a path acts by the right-to-left product of its arrows'
//! matrices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Mat};
use crate::rep::Rep;

/// Default bound on the number of nonzero paths before an algebra is declared
/// infinite-dimensional.
pub const DEFAULT_PATH_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// `arrows` are `(name, source, target)` triples naming declared vertices.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::MalformedQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let lookup = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::MalformedQuiver(format!("unknown vertex {name:?}")))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::MalformedQuiver(format!("duplicate arrow {name:?}")));
            }
            out.push(Arrow { name, source: lookup(s.as_ref())?, target: lookup(t.as_ref())? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Vertices ordered so that arrow sources come before targets, when the
    /// quiver is acyclic; otherwise the declared order.
    pub fn source_first_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            if a.source != a.target {
                indeg[a.target] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while order.len() < n {
            let Some(v) = (0..n).find(|&v| !done[v] && indeg[v] == 0) else {
                return (0..n).collect();
            };
            done[v] = true;
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v && a.target != v) {
                indeg[a.target] -= 1;
            }
        }
        order
    }
}

/// A nonzero path of the algebra; length-0 paths are the idempotents `e_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Projective,
    Injective,
    Simple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraFamily {
    /// `1 -> 2 -> ... -> n`, no relations.
    LinearA(usize),
    /// Cyclic quiver on `n` vertices with every path of length `l` zero.
    CyclicNakayama { n: usize, l: usize },
    /// Two vertices, two parallel arrows `1 => 2`.
    Kronecker,
}

impl fmt::Display for AlgebraFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraFamily::LinearA(n) => write!(f, "a{n}"),
            AlgebraFamily::CyclicNakayama { n, l } => write!(f, "nakayama{n}-{l}"),
            AlgebraFamily::Kronecker => write!(f, "kronecker"),
        }
    }
}

impl FromStr for AlgebraFamily {
    type Err = Error;

    /// Accepts `a<n>`, `point`, `kronecker`, `nakayama<n>-<l>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedFamily(s.to_string());
        let s_l = s.to_ascii_lowercase();
        let fam = if s_l == "kronecker" {
            AlgebraFamily::Kronecker
        } else if s_l == "point" {
            AlgebraFamily::LinearA(1)
        } else if let Some(rest) = s_l.strip_prefix("nakayama") {
            let (n, l) = rest.split_once('-').ok_or_else(bad)?;
            AlgebraFamily::CyclicNakayama {
                n: n.parse().map_err(|_| bad())?,
                l: l.parse().map_err(|_| bad())?,
            }
        } else if let Some(rest) = s_l.strip_prefix('a') {
            AlgebraFamily::LinearA(rest.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        match fam {
            AlgebraFamily::LinearA(0) => Err(bad()),
            AlgebraFamily::CyclicNakayama { n, l } if n == 0 || l < 2 => Err(bad()),
            f => Ok(f),
        }
    }
}

/// A finite-dimensional quotient of a path algebra by monomial relations.
#[derive(Clone, Debug)]
pub struct QuiverAlgebra {
    quiver: Quiver,
    relations: Vec<Vec<usize>>,
    field: Field,
    paths: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl PartialEq for QuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations && self.field == other.field
    }
}

impl QuiverAlgebra {
    pub fn new<S: AsRef<str>>(quiver: Quiver, relations: &[Vec<S>], field: Field) -> Result<Self> {
        Self::with_path_cap(quiver, relations, field, DEFAULT_PATH_CAP)
    }

    pub fn with_path_cap<S: AsRef<str>>(
        quiver: Quiver,
        relations: &[Vec<S>],
        field: Field,
        cap: usize,
    ) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for rel in relations {
            let names: Vec<&str> = rel.iter().map(|s| s.as_ref()).collect();
            if names.len() < 2 {
                return Err(Error::MalformedRelation(format!(
                    "relation {names:?} has length < 2"
                )));
            }
            let mut idx = Vec::with_capacity(names.len());
            for name in &names {
                idx.push(quiver.arrow_index(name).ok_or_else(|| {
                    Error::MalformedRelation(format!("unknown arrow {name:?}"))
                })?);
            }
            for w in idx.windows(2) {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(Error::MalformedRelation(format!(
                        "relation {names:?} is not composable"
                    )));
                }
            }
            rels.push(idx);
        }

        // Breadth-first path generation. Prefixes of a kept path are kept, so
        // only relations ending at the new arrow need checking.
        let mut paths: Vec<Path> = (0..quiver.vertices.len())
            .map(|v| Path { start: v, end: v, arrows: Vec::new() })
            .collect();
        let mut frontier: Vec<usize> = (0..paths.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &pi in &frontier {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source != paths[pi].end {
                        continue;
                    }
                    let mut arrows = paths[pi].arrows.clone();
                    arrows.push(ai);
                    if rels.iter().any(|r| arrows.ends_with(r)) {
                        continue;
                    }
                    if paths.len() >= cap {
                        return Err(Error::NotFiniteDimensional(cap));
                    }
                    paths.push(Path { start: paths[pi].start, end: a.target, arrows });
                    next.push(paths.len() - 1);
                }
            }
            frontier = next;
        }
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.start, p.arrows.clone()), i))
            .collect();
        Ok(QuiverAlgebra { quiver, relations: rels, field, paths, index })
    }

    pub fn builtin(family: AlgebraFamily, field: Field) -> Self {
        let (vertices, arrows, relations): (Vec<String>, Vec<(String, String, String)>, Vec<Vec<String>>) =
            match family {
                AlgebraFamily::LinearA(n) => {
                    let v: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                    let a = (1..n)
                        .map(|i| (arrow_name(i - 1), i.to_string(), (i + 1).to_string()))
                        .collect();
                    (v, a, Vec::new())
                }
                AlgebraFamily::CyclicNakayama { n, l } => {
                    let v: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                    let a: Vec<(String, String, String)> = (0..n)
                        .map(|i| (arrow_name(i), (i + 1).to_string(), ((i + 1) % n + 1).to_string()))
                        .collect();
                    let rels = (0..n)
                        .map(|i| (0..l).map(|k| a[(i + k) % n].0.clone()).collect())
                        .collect();
                    (v, a, rels)
                }
                AlgebraFamily::Kronecker => (
                    vec!["1".into(), "2".into()],
                    vec![
                        ("a".into(), "1".into(), "2".into()),
                        ("b".into(), "1".into(), "2".into()),
                    ],
                    Vec::new(),
                ),
            };
        let quiver = Quiver::new(&vertices, &arrows).expect("builtin quiver is well formed");
        QuiverAlgebra::new(quiver, &relations, field).expect("builtin algebra is finite-dimensional")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    /// The path basis, including the idempotents.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn path_index(&self, start: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(start, arrows.to_vec())).copied()
    }

    /// Indices of nonzero paths from `from` to `to`, in basis order.
    pub fn paths_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.paths.len())
            .filter(|&i| self.paths[i].start == from && self.paths[i].end == to)
            .collect()
    }

    pub fn path_label(&self, path: &Path) -> String {
        if path.arrows.is_empty() {
            format!("e{}", self.quiver.vertices[path.start])
        } else {
            path.arrows
                .iter()
                .map(|&a| self.quiver.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub fn standard_module(&self, kind: ModuleKind, v: usize) -> Rep {
        let n = self.num_vertices();
        match kind {
            ModuleKind::Simple => {
                let mut dims = vec![0; n];
                dims[v] = 1;
                Rep::zero_with_dims(self, dims)
            }
            ModuleKind::Projective => {
                let basis: Vec<Vec<usize>> = (0..n).map(|w| self.paths_between(v, w)).collect();
                let dims = basis.iter().map(Vec::len).collect();
                let mats = self
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(ai, a)| {
                        let mut m = Mat::zeros(basis[a.target].len(), basis[a.source].len());
                        for (c, &pi) in basis[a.source].iter().enumerate() {
                            let mut ext = self.paths[pi].arrows.clone();
                            ext.push(ai);
                            if let Some(q) = self.path_index(v, &ext) {
                                let r = basis[a.target].iter().position(|&x| x == q).unwrap();
                                m.set(r, c, 1);
                            }
                        }
                        m
                    })
                    .collect();
                Rep::new(dims, mats)
            }
            ModuleKind::Injective => {
                // Dual basis of the paths ending at v; an arrow strips itself
                // off the front of a path.
                let basis: Vec<Vec<usize>> = (0..n).map(|w| self.paths_between(w, v)).collect();
                let dims = basis.iter().map(Vec::len).collect();
                let mats = self
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(ai, a)| {
                        let mut m = Mat::zeros(basis[a.target].len(), basis[a.source].len());
                        for (c, &pi) in basis[a.source].iter().enumerate() {
                            let p = &self.paths[pi];
                            if p.arrows.first() == Some(&ai) {
                                let rest = self.path_index(a.target, &p.arrows[1..]).unwrap();
                                let r = basis[a.target].iter().position(|&x| x == rest).unwrap();
                                m.set(r, c, 1);
                            }
                        }
                        m
                    })
                    .collect();
                Rep::new(dims, mats)
            }
        }
    }

    pub fn projective(&self, v: usize) -> Rep {
        self.standard_module(ModuleKind::Projective, v)
    }

    pub fn injective(&self, v: usize) -> Rep {
        self.standard_module(ModuleKind::Injective, v)
    }

    pub fn simple(&self, v: usize) -> Rep {
        self.standard_module(ModuleKind::Simple, v)
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            p: self.field.p(),
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    name: a.name.clone(),
                    from: self.quiver.vertices[a.source].clone(),
                    to: self.quiver.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.iter().map(|&a| self.quiver.arrows[a].name.clone()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        let field = Field::new(json.p)?;
        let arrows: Vec<(&str, &str, &str)> = json
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str()))
            .collect();
        let quiver = Quiver::new(&json.vertices.iter().map(String::as_str).collect::<Vec<_>>(), &arrows)?;
        QuiverAlgebra::new(quiver, &json.relations, field)
    }
}

fn arrow_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// On-disk algebra definition; relations are arrow names in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub p: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn a2_path_basis() {
        let a = QuiverAlgebra::builtin(AlgebraFamily::LinearA(2), f2());
        assert_eq!(a.dim(), 3);
        let labels: Vec<String> = a.paths().iter().map(|p| a.path_label(p)).collect();
        assert_eq!(labels, ["e1", "e2", "a"]);
    }

    #[test]
    fn point_and_loop() {
        let q = Quiver::new(&["1"], &[]).unwrap();
        let a = QuiverAlgebra::new::<&str>(q, &[], f2()).unwrap();
        assert_eq!(a.dim(), 1);

        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        assert!(matches!(
            QuiverAlgebra::new::<&str>(q, &[], f2()),
            Err(Error::NotFiniteDimensional(_))
        ));
    }

    #[test]
    fn malformed_relations() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        assert!(matches!(
            QuiverAlgebra::new(q.clone(), &[vec!["a"]], f2()),
            Err(Error::MalformedRelation(_))
        ));
        assert!(matches!(
            QuiverAlgebra::new(q, &[vec!["a", "b"]], f2()),
            Err(Error::MalformedRelation(_))
        ));
    }

    #[test]
    fn builtin_dimensions() {
        assert_eq!(QuiverAlgebra::builtin(AlgebraFamily::LinearA(3), f2()).dim(), 6);
        assert_eq!(QuiverAlgebra::builtin(AlgebraFamily::Kronecker, f2()).dim(), 4);
        assert_eq!(
            QuiverAlgebra::builtin(AlgebraFamily::CyclicNakayama { n: 3, l: 2 }, f2()).dim(),
            6
        );
    }

    #[test]
    fn standard_modules() {
        let a2 = QuiverAlgebra::builtin(AlgebraFamily::LinearA(2), f2());
        let p1 = a2.projective(0);
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.mat(0), &Mat::identity(1));
        assert_eq!(a2.simple(1).dims(), &[0, 1]);
        assert_eq!(a2.injective(1), p1);

        let nak = QuiverAlgebra::builtin(AlgebraFamily::CyclicNakayama { n: 3, l: 2 }, f2());
        assert_eq!(nak.projective(0).dims(), &[1, 1, 0]);
        for v in 0..3 {
            for kind in [ModuleKind::Projective, ModuleKind::Injective, ModuleKind::Simple] {
                assert!(nak.validate_rep(&nak.standard_module(kind, v)).is_ok());
            }
        }
    }

    #[test]
    fn projective_dims_sum_to_algebra_dim() {
        for fam in [
            AlgebraFamily::LinearA(4),
            AlgebraFamily::Kronecker,
            AlgebraFamily::CyclicNakayama { n: 3, l: 2 },
            AlgebraFamily::CyclicNakayama { n: 2, l: 3 },
        ] {
            let a = QuiverAlgebra::builtin(fam, f2());
            let total: usize = (0..a.num_vertices()).map(|v| a.projective(v).total_dim()).sum();
            assert_eq!(total, a.dim(), "{fam}");
            let total: usize = (0..a.num_vertices()).map(|v| a.injective(v).total_dim()).sum();
            assert_eq!(total, a.dim(), "{fam}");
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!("a2".parse::<AlgebraFamily>().unwrap(), AlgebraFamily::LinearA(2));
        assert_eq!(
            "nakayama3-2".parse::<AlgebraFamily>().unwrap(),
            AlgebraFamily::CyclicNakayama { n: 3, l: 2 }
        );
        assert!("nakayama3-1".parse::<AlgebraFamily>().is_err());
        assert!("b2".parse::<AlgebraFamily>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = QuiverAlgebra::builtin(AlgebraFamily::CyclicNakayama { n: 3, l: 2 }, f2());
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(QuiverAlgebra::from_json(&back).unwrap(), a);
    }
}
