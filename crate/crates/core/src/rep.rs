//! Representations, morphisms, and the module-theoretic operations built on
//! vertexwise linear algebra: kernels, cokernels, images, isomorphism,
//! Krull-Schmidt decomposition, submodule enumeration and radicals.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::QuiverAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, canonical_span, Field, Mat};

/// Default budget for exhaustive searches over a Hom space (`p^dim`).
pub const DEFAULT_HOM_CAP: u64 = 1 << 16;

/// A finite-dimensional representation: one space per vertex, one matrix per
/// arrow (`rows = dim target`, `cols = dim source`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rep {
    dims: Vec<usize>,
    mats: Vec<Mat>,
}

/// A morphism of representations, one matrix per vertex. Source and target
/// travel alongside it at call sites.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub comps: Vec<Mat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepViolation {
    WrongArrowCount { expected: usize, found: usize },
    WrongVertexCount { expected: usize, found: usize },
    Shape { arrow: String, expected: (usize, usize), found: (usize, usize) },
    Relation { index: usize, path: String },
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepViolation::WrongArrowCount { expected, found } => {
                write!(f, "expected {expected} arrow matrices, found {found}")
            }
            RepViolation::WrongVertexCount { expected, found } => {
                write!(f, "expected {expected} vertex dimensions, found {found}")
            }
            RepViolation::Shape { arrow, expected, found } => write!(
                f,
                "arrow {arrow}: expected a {}x{} matrix, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            RepViolation::Relation { index, path } => {
                write!(f, "relation {index} ({path}) acts nonzero")
            }
        }
    }
}

impl Rep {
    /// Unchecked constructor; see [`QuiverAlgebra::validate_rep`].
    pub fn new(dims: Vec<usize>, mats: Vec<Mat>) -> Self {
        Rep { dims, mats }
    }

    pub fn zero(alg: &QuiverAlgebra) -> Self {
        Rep::zero_with_dims(alg, vec![0; alg.num_vertices()])
    }

    /// Semisimple representation with the given dimension vector.
    pub fn zero_with_dims(alg: &QuiverAlgebra, dims: Vec<usize>) -> Self {
        let mats = alg.arrows().iter().map(|a| Mat::zeros(dims[a.target], dims[a.source])).collect();
        Rep { dims, mats }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Mat {
        &self.mats[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Canonical ordering key: total dimension, dimension vector, entries.
    pub fn canonical_key(&self) -> (usize, &[usize], &[Mat]) {
        (self.total_dim(), &self.dims, &self.mats)
    }
}

impl Mor {
    pub fn zero(src: &Rep, tgt: &Rep) -> Self {
        Mor { comps: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Mat::zeros(t, s)).collect() }
    }

    pub fn identity(x: &Rep) -> Self {
        Mor { comps: x.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    /// `self ∘ inner`
    pub fn after(&self, field: Field, inner: &Mor) -> Mor {
        Mor { comps: self.comps.iter().zip(&inner.comps).map(|(a, b)| a.mul(field, b)).collect() }
    }

    pub fn add(&self, field: Field, rhs: &Mor) -> Mor {
        Mor { comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.add(field, b)).collect() }
    }

    pub fn scale(&self, field: Field, c: u32) -> Mor {
        Mor { comps: self.comps.iter().map(|a| a.scale(field, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    /// All entries, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn unflatten(src: &Rep, tgt: &Rep, v: &[u32]) -> Mor {
        let mut off = 0;
        let comps = src
            .dims
            .iter()
            .zip(&tgt.dims)
            .map(|(&s, &t)| {
                let m = Mat::from_vec(t, s, v[off..off + t * s].to_vec());
                off += t * s;
                m
            })
            .collect();
        Mor { comps }
    }

    pub fn is_vertexwise_invertible(&self, field: Field) -> bool {
        self.comps.iter().all(|m| m.is_invertible(field))
    }

    pub fn is_mono(&self, field: Field) -> bool {
        self.comps.iter().all(|m| m.rank(field) == m.cols())
    }

    pub fn is_epi(&self, field: Field) -> bool {
        self.comps.iter().all(|m| m.rank(field) == m.rows())
    }

    pub fn block_diag(&self, rhs: &Mor) -> Mor {
        Mor { comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.block_diag(b)).collect() }
    }

    /// Linear combination `Σ coeffs[i] * mors[i]`.
    pub fn combination(field: Field, src: &Rep, tgt: &Rep, mors: &[Mor], coeffs: &[u32]) -> Mor {
        let mut acc = Mor::zero(src, tgt);
        for (m, &c) in mors.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(field, &m.scale(field, c));
            }
        }
        acc
    }
}

/// Which summand of `X ⊕ Y` to include or project.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Module JSON: vertex name -> dimension, arrow name -> row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dims: BTreeMap<String, usize>,
    pub mats: BTreeMap<String, Vec<Vec<i64>>>,
}

impl QuiverAlgebra {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn validate_rep(&self, x: &Rep) -> std::result::Result<(), RepViolation> {
        if x.dims.len() != self.num_vertices() {
            return Err(RepViolation::WrongVertexCount {
                expected: self.num_vertices(),
                found: x.dims.len(),
            });
        }
        if x.mats.len() != self.arrows().len() {
            return Err(RepViolation::WrongArrowCount {
                expected: self.arrows().len(),
                found: x.mats.len(),
            });
        }
        for (a, m) in self.arrows().iter().zip(&x.mats) {
            let expected = (x.dims[a.target], x.dims[a.source]);
            if (m.rows(), m.cols()) != expected {
                return Err(RepViolation::Shape {
                    arrow: a.name.clone(),
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
        }
        for (index, rel) in self.relations().iter().enumerate() {
            if !self.path_action(x, rel).is_zero() {
                let path = rel.iter().map(|&a| self.arrows()[a].name.as_str()).collect::<Vec<_>>();
                return Err(RepViolation::Relation { index, path: path.join(".") });
            }
        }
        Ok(())
    }

    /// Checked constructor.
    pub fn rep(&self, dims: Vec<usize>, mats: Vec<Mat>) -> Result<Rep> {
        let x = Rep::new(dims, mats);
        self.validate_rep(&x).map_err(|v| Error::InvalidRep(v.to_string()))?;
        Ok(x)
    }

    /// Matrix by which a path (arrows in traversal order) acts.
    pub fn path_action(&self, x: &Rep, arrows: &[usize]) -> Mat {
        let Some(&first) = arrows.first() else {
            panic!("path_action needs a nonempty path; use the identity for e_v");
        };
        let mut acc = x.mats[first].clone();
        for &a in &arrows[1..] {
            acc = x.mats[a].mul(self.field(), &acc);
        }
        acc
    }

    pub fn is_valid_mor(&self, src: &Rep, tgt: &Rep, f: &Mor) -> bool {
        let k = self.field();
        f.comps.len() == self.num_vertices()
            && f.comps.iter().enumerate().all(|(v, m)| m.rows() == tgt.dims[v] && m.cols() == src.dims[v])
            && self.arrows().iter().enumerate().all(|(ai, a)| {
                f.comps[a.target].mul(k, &src.mats[ai]) == tgt.mats[ai].mul(k, &f.comps[a.source])
            })
    }

    pub fn direct_sum(&self, x: &Rep, y: &Rep) -> Rep {
        Rep {
            dims: x.dims.iter().zip(&y.dims).map(|(a, b)| a + b).collect(),
            mats: x.mats.iter().zip(&y.mats).map(|(a, b)| a.block_diag(b)).collect(),
        }
    }

    pub fn direct_sum_all<'a>(&self, parts: impl IntoIterator<Item = &'a Rep>) -> Rep {
        parts.into_iter().fold(Rep::zero(self), |acc, x| self.direct_sum(&acc, x))
    }

    /// Canonical inclusion of one summand into `X ⊕ Y`.
    pub fn sum_inclusion(&self, x: &Rep, y: &Rep, side: Side) -> Mor {
        let comps = x
            .dims
            .iter()
            .zip(&y.dims)
            .map(|(&dx, &dy)| {
                let mut m = Mat::zeros(dx + dy, if side == Side::Left { dx } else { dy });
                match side {
                    Side::Left => m.paste(0, 0, &Mat::identity(dx)),
                    Side::Right => m.paste(dx, 0, &Mat::identity(dy)),
                }
                m
            })
            .collect();
        Mor { comps }
    }

    /// Canonical projection of `X ⊕ Y` onto one summand.
    pub fn sum_projection(&self, x: &Rep, y: &Rep, side: Side) -> Mor {
        let inc = self.sum_inclusion(x, y, side);
        Mor { comps: inc.comps.iter().map(Mat::transpose).collect() }
    }

    /// Subrepresentation spanned by invariant vertexwise column bases (each of
    /// full column rank), with its inclusion.
    pub fn sub_from_basis(&self, x: &Rep, bases: &[Mat]) -> (Rep, Mor) {
        let k = self.field();
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let mats = self
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let image = x.mats[ai].mul(k, &bases[a.source]);
                bases[a.target]
                    .solve_matrix(k, &image)
                    .expect("subspace bases must be arrow-invariant")
            })
            .collect();
        (Rep { dims, mats }, Mor { comps: bases.to_vec() })
    }

    /// Quotient by invariant vertexwise column bases, with its projection.
    pub fn quotient_by(&self, x: &Rep, bases: &[Mat]) -> (Rep, Mor) {
        let k = self.field();
        let projections: Vec<Mat> = bases.iter().map(|b| b.transpose().kernel_basis(k).transpose()).collect();
        // A section exists since each projection has full row rank.
        let sections: Vec<Mat> = projections
            .iter()
            .map(|pi| pi.solve_matrix(k, &Mat::identity(pi.rows())).expect("projection is onto"))
            .collect();
        let dims = projections.iter().map(Mat::rows).collect();
        let mats = self
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| projections[a.target].mul(k, &x.mats[ai]).mul(k, &sections[a.source]))
            .collect();
        (Rep { dims, mats }, Mor { comps: projections })
    }

    pub fn kernel_of(&self, src: &Rep, _tgt: &Rep, f: &Mor) -> (Rep, Mor) {
        let k = self.field();
        let bases: Vec<Mat> = f.comps.iter().map(|m| m.kernel_basis(k)).collect();
        self.sub_from_basis(src, &bases)
    }

    /// Returns `(I, mono: I -> tgt, epi: src -> I)`.
    pub fn image_of(&self, _src: &Rep, tgt: &Rep, f: &Mor) -> (Rep, Mor, Mor) {
        let k = self.field();
        let bases: Vec<Mat> = f.comps.iter().map(|m| m.column_space(k)).collect();
        let (img, mono) = self.sub_from_basis(tgt, &bases);
        let epi = Mor {
            comps: bases
                .iter()
                .zip(&f.comps)
                .map(|(b, m)| b.solve_matrix(k, m).expect("image contains every column"))
                .collect(),
        };
        (img, mono, epi)
    }

    pub fn cokernel_of(&self, _src: &Rep, tgt: &Rep, f: &Mor) -> (Rep, Mor) {
        let k = self.field();
        let bases: Vec<Mat> = f.comps.iter().map(|m| m.column_space(k)).collect();
        self.quotient_by(tgt, &bases)
    }

    /// Isomorphism test. Searches the Hom space for a vertexwise invertible
    /// element (basis elements first, then every combination while
    /// `p^dim Hom <= cap`); beyond the cap, compares Krull-Schmidt
    /// decompositions instead.
    pub fn is_isomorphic(&self, x: &Rep, y: &Rep) -> Result<bool> {
        self.is_isomorphic_with_cap(x, y, DEFAULT_HOM_CAP)
    }

    pub fn is_isomorphic_with_cap(&self, x: &Rep, y: &Rep, cap: u64) -> Result<bool> {
        if x.dims != y.dims {
            return Ok(false);
        }
        if x == y || x.is_zero() {
            return Ok(true);
        }
        let k = self.field();
        let hom = self.hom_basis(x, y);
        if hom.is_empty() {
            return Ok(false);
        }
        if hom.iter().any(|f| f.is_vertexwise_invertible(k)) {
            return Ok(true);
        }
        if let Some(total) = k.pow_count(hom.len()).filter(|&n| n <= cap) {
            let mut digits = vec![0u32; hom.len()];
            for _ in 0..total {
                let f = Mor::combination(k, x, y, &hom, &digits);
                if f.is_vertexwise_invertible(k) {
                    return Ok(true);
                }
                linalg::increment(&mut digits, k.p());
            }
            return Ok(false);
        }
        let dx = self.decompose_with_cap(x, cap)?;
        let mut dy = self.decompose_with_cap(y, cap)?;
        for a in &dx {
            let Some(pos) = dy.iter().position(|b| self.is_isomorphic_indecomposable(a, b)) else {
                return Ok(false);
            };
            dy.swap_remove(pos);
        }
        Ok(dy.is_empty())
    }

    /// Isomorphism of two indecomposables. Their endomorphism rings are
    /// local, so `X ≅ Y` iff some product `g ∘ f` of basis elements
    /// `f: X -> Y`, `g: Y -> X` is invertible.
    pub fn is_isomorphic_indecomposable(&self, x: &Rep, y: &Rep) -> bool {
        if x.dims != y.dims {
            return false;
        }
        if x == y {
            return true;
        }
        let k = self.field();
        let fwd = self.hom_basis(x, y);
        if fwd.is_empty() {
            return false;
        }
        let back = self.hom_basis(y, x);
        fwd.iter().any(|f| back.iter().any(|g| g.after(k, f).is_vertexwise_invertible(k)))
    }

    /// Top of `X` is one-dimensional, so `X` is local and hence indecomposable.
    fn has_simple_top(&self, x: &Rep) -> bool {
        let (rad, _) = self.radical(x);
        x.total_dim() - rad.total_dim() == 1
    }

    /// Finds an endomorphism that is neither nilpotent nor invertible, if any.
    ///
    /// Candidates: basis elements, their shifts by scalars, pairwise sums and
    /// products, then (when `p^dim End <= cap`) the whole ring. A decomposable
    /// module always has such an element (a projection onto a summand); if the
    /// candidate lists are exhausted and the ring is too large to enumerate
    /// the answer is undecided.
    pub fn find_splitting_endomorphism(&self, x: &Rep, cap: u64) -> Result<Option<Mor>> {
        let k = self.field();
        if x.total_dim() <= 1 || self.has_simple_top(x) {
            return Ok(None);
        }
        let end = self.hom_basis(x, x);
        if end.len() <= 1 {
            return Ok(None);
        }
        let splits = |e: &Mor| fitting_power(k, x, e).is_some_and(|pw| {
            !pw.is_zero() && !pw.is_vertexwise_invertible(k)
        });
        let id = Mor::identity(x);
        for b in &end {
            if splits(b) {
                return Ok(Some(b.clone()));
            }
            for lambda in 1..k.p() {
                let shifted = b.add(k, &id.scale(k, lambda));
                if splits(&shifted) {
                    return Ok(Some(shifted));
                }
            }
        }
        for (i, a) in end.iter().enumerate() {
            for b in &end[i + 1..] {
                let s = a.add(k, b);
                if splits(&s) {
                    return Ok(Some(s));
                }
            }
            for b in &end {
                let pr = a.after(k, b);
                if splits(&pr) {
                    return Ok(Some(pr));
                }
            }
        }
        let Some(total) = k.pow_count(end.len()).filter(|&n| n <= cap) else {
            return Err(Error::Undecided);
        };
        let mut digits = vec![0u32; end.len()];
        for _ in 0..total {
            let e = Mor::combination(k, x, x, &end, &digits);
            if splits(&e) {
                return Ok(Some(e));
            }
            linalg::increment(&mut digits, k.p());
        }
        Ok(None)
    }

    pub fn is_indecomposable(&self, x: &Rep) -> Result<bool> {
        Ok(!x.is_zero() && self.find_splitting_endomorphism(x, DEFAULT_HOM_CAP)?.is_none())
    }

    /// Krull-Schmidt decomposition by Fitting splitting: an endomorphism `e`
    /// with `e^N` neither zero nor invertible gives `X = ker e^N ⊕ im e^N`.
    pub fn decompose(&self, x: &Rep) -> Result<Vec<Rep>> {
        self.decompose_with_cap(x, DEFAULT_HOM_CAP)
    }

    pub fn decompose_with_cap(&self, x: &Rep, cap: u64) -> Result<Vec<Rep>> {
        let mut out = Vec::new();
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            if y.is_zero() {
                continue;
            }
            match self.find_splitting_endomorphism(&y, cap)? {
                None => out.push(y),
                Some(e) => {
                    let k = self.field();
                    let pw = fitting_power(k, &y, &e).expect("splitting element is square");
                    let kernel: Vec<Mat> = pw.comps.iter().map(|m| m.kernel_basis(k)).collect();
                    let image: Vec<Mat> = pw.comps.iter().map(|m| m.column_space(k)).collect();
                    stack.push(self.sub_from_basis(&y, &image).0);
                    stack.push(self.sub_from_basis(&y, &kernel).0);
                }
            }
        }
        out.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        Ok(out)
    }

    /// Vertexwise canonical bases of every subrepresentation, sorted by
    /// dimension vector and then entries.
    pub fn submodule_bases(&self, x: &Rep, cap: u64) -> Result<Vec<Vec<Mat>>> {
        let k = self.field();
        let order = self.quiver().source_first_order();
        let n = self.num_vertices();
        let mut found = Vec::new();
        let mut budget = cap;
        let mut chosen: Vec<Option<Mat>> = vec![None; n];
        self.submodule_search(x, &order, 0, &mut chosen, &mut found, &mut budget)?;
        let mut out: Vec<Vec<Mat>> = found;
        out.sort_by(|a, b| {
            let da: Vec<usize> = a.iter().map(Mat::cols).collect();
            let db: Vec<usize> = b.iter().map(Mat::cols).collect();
            (da.iter().sum::<usize>(), da, a).cmp(&(db.iter().sum::<usize>(), db, b))
        });
        let _ = k;
        Ok(out)
    }

    fn submodule_search(
        &self,
        x: &Rep,
        order: &[usize],
        depth: usize,
        chosen: &mut Vec<Option<Mat>>,
        found: &mut Vec<Vec<Mat>>,
        budget: &mut u64,
    ) -> Result<()> {
        let k = self.field();
        if depth == order.len() {
            found.push(chosen.iter().map(|m| m.clone().unwrap()).collect());
            return Ok(());
        }
        let v = order[depth];
        let dv = x.dims[v];
        // Forced part: images of already-chosen subspaces along arrows into v.
        let mut forced = Mat::zeros(dv, 0);
        for (ai, a) in self.arrows().iter().enumerate() {
            if a.target == v && a.source != v {
                if let Some(u) = &chosen[a.source] {
                    forced = forced.hstack(&x.mats[ai].mul(k, u));
                }
            }
        }
        let lo = forced.rank(k);
        for d in lo..=dv {
            let cands = linalg::enumerate_superspaces(k, dv, &forced, d, *budget)?;
            *budget = budget.checked_sub(cands.len() as u64).ok_or(Error::CapExceeded {
                what: "submodule enumeration",
                cap: *budget,
            })?;
            for u in cands {
                let ok = self.arrows().iter().enumerate().all(|(ai, a)| {
                    if a.source != v {
                        return true;
                    }
                    let tgt = if a.target == v { Some(&u) } else { chosen[a.target].as_ref() };
                    match tgt {
                        None => true,
                        Some(t) => {
                            let img = x.mats[ai].mul(k, &u);
                            t.hstack(&img).rank(k) == t.cols()
                        }
                    }
                });
                if ok {
                    chosen[v] = Some(u);
                    self.submodule_search(x, order, depth + 1, chosen, found, budget)?;
                    chosen[v] = None;
                }
            }
        }
        Ok(())
    }

    /// All subrepresentations with their inclusions, in canonical order.
    pub fn enumerate_submodules(&self, x: &Rep) -> Result<Vec<(Rep, Mor)>> {
        Ok(self
            .submodule_bases(x, linalg::DEFAULT_SUBSPACE_CAP)?
            .iter()
            .map(|b| self.sub_from_basis(x, b))
            .collect())
    }

    /// Radical `Σ_a im(M_a)` with its inclusion.
    pub fn radical(&self, x: &Rep) -> (Rep, Mor) {
        let k = self.field();
        let bases: Vec<Mat> = (0..self.num_vertices())
            .map(|v| {
                let mut span = Mat::zeros(x.dims[v], 0);
                for (ai, a) in self.arrows().iter().enumerate() {
                    if a.target == v {
                        span = span.hstack(&x.mats[ai]);
                    }
                }
                canonical_span(k, &span)
            })
            .collect();
        self.sub_from_basis(x, &bases)
    }

    /// `((rad X, inclusion), (top X, projection))`.
    pub fn radical_top(&self, x: &Rep) -> ((Rep, Mor), (Rep, Mor)) {
        let (rad, inc) = self.radical(x);
        let top = self.quotient_by(x, &inc.comps);
        ((rad, inc), top)
    }

    pub fn rep_to_json(&self, x: &Rep) -> ModuleJson {
        let names = self.quiver().vertices();
        ModuleJson {
            dims: names.iter().cloned().zip(x.dims.iter().copied()).collect(),
            mats: self
                .arrows()
                .iter()
                .zip(&x.mats)
                .map(|(a, m)| {
                    (a.name.clone(), m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect())
                })
                .collect(),
        }
    }

    pub fn rep_from_json(&self, json: &ModuleJson) -> Result<Rep> {
        let k = self.field();
        let mut dims = vec![0; self.num_vertices()];
        for (name, &d) in &json.dims {
            let v = self
                .quiver()
                .vertex_index(name)
                .ok_or_else(|| Error::InvalidRep(format!("unknown vertex {name:?}")))?;
            dims[v] = d;
        }
        let mut mats = Vec::with_capacity(self.arrows().len());
        for a in self.arrows() {
            let (r, c) = (dims[a.target], dims[a.source]);
            let m = match json.mats.get(&a.name) {
                None => Mat::zeros(r, c),
                Some(rows) => {
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(Error::InvalidRep(format!(
                            "arrow {}: expected a {r}x{c} matrix",
                            a.name
                        )));
                    }
                    if r == 0 {
                        Mat::zeros(0, c)
                    } else {
                        Mat::from_rows(k, rows)
                    }
                }
            };
            mats.push(m);
        }
        if let Some(name) = json.mats.keys().find(|n| self.quiver().arrow_index(n).is_none()) {
            return Err(Error::InvalidRep(format!("unknown arrow {name:?}")));
        }
        self.rep(dims, mats)
    }
}

/// `e^N` with `N` the largest vertex dimension: the power at which the Fitting
/// decomposition of every vertex space has stabilised.
fn fitting_power(field: Field, x: &Rep, e: &Mor) -> Option<Mor> {
    let n = x.dims.iter().copied().max().unwrap_or(0).max(1);
    Some(Mor { comps: e.comps.iter().map(|m| m.pow(field, n)).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraFamily;

    fn a2() -> QuiverAlgebra {
        QuiverAlgebra::builtin(AlgebraFamily::LinearA(2), Field::new(2).unwrap())
    }

    #[test]
    fn validate_examples() {
        let a = a2();
        assert!(a.validate_rep(&a.projective(0)).is_ok());
        assert!(a.validate_rep(&Rep::zero(&a)).is_ok());

        let f2 = Field::new(2).unwrap();
        let nak = QuiverAlgebra::builtin(AlgebraFamily::CyclicNakayama { n: 3, l: 2 }, f2);
        let bad = Rep::new(vec![1, 1, 1], vec![Mat::identity(1); 3]);
        assert!(matches!(nak.validate_rep(&bad), Err(RepViolation::Relation { .. })));
    }

    #[test]
    fn direct_sum_examples() {
        let a = a2();
        let p1 = a.projective(0);
        assert_eq!(a.direct_sum(&p1, &Rep::zero(&a)), p1);
        let s = a.direct_sum(&a.simple(0), &a.simple(1));
        assert_eq!(s.dims(), &[1, 1]);
        assert!(s.mat(0).is_zero());
        let pp = a.direct_sum(&p1, &p1);
        assert_eq!(pp.dims(), &[2, 2]);
        assert_eq!(pp.mat(0), &Mat::identity(2));
    }

    #[test]
    fn kernel_cokernel_image_examples() {
        let a = a2();
        let k = a.field();
        let p1 = a.projective(0);
        let id = Mor::identity(&p1);
        assert!(a.kernel_of(&p1, &p1, &id).0.is_zero());
        assert!(a.cokernel_of(&p1, &p1, &id).0.is_zero());
        assert_eq!(a.image_of(&p1, &p1, &id).0.dims(), p1.dims());

        let (s1, s2) = (a.simple(0), a.simple(1));
        let z = Mor::zero(&s1, &s2);
        assert_eq!(a.kernel_of(&s1, &s2, &z).0, s1);
        assert_eq!(a.cokernel_of(&s1, &s2, &z).0, s2);

        let epi = Mor { comps: vec![Mat::identity(1), Mat::zeros(0, 1)] };
        assert!(a.is_valid_mor(&p1, &s1, &epi));
        let (ker, inc) = a.kernel_of(&p1, &s1, &epi);
        assert!(a.is_isomorphic(&ker, &s2).unwrap());
        assert!(a.is_valid_mor(&ker, &p1, &inc));
        assert!(epi.after(k, &inc).is_zero());
        assert!(a.cokernel_of(&p1, &s1, &epi).0.is_zero());
    }

    #[test]
    fn isomorphism_examples() {
        let a = a2();
        let p1 = a.projective(0);
        assert!(a.is_isomorphic(&p1, &p1).unwrap());
        assert!(!a.is_isomorphic(&a.simple(0), &a.simple(1)).unwrap());
        let ss = a.direct_sum(&a.simple(0), &a.simple(1));
        assert!(!a.is_isomorphic(&p1, &ss).unwrap());
        // a conjugated copy of P1 ⊕ P1
        let k = a.field();
        let pp = a.direct_sum(&p1, &p1);
        let g = Mat::from_rows(k, &[vec![1, 1], vec![0, 1]]);
        let conj = Rep::new(vec![2, 2], vec![g.mul(k, pp.mat(0))]);
        assert!(a.is_isomorphic(&pp, &conj).unwrap());
        assert!(a.is_isomorphic_with_cap(&pp, &conj, 1).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let a = a2();
        let k = a.field();
        let p1 = a.projective(0);
        assert_eq!(a.decompose(&p1).unwrap().len(), 1);
        let s1 = a.simple(0);
        assert_eq!(a.decompose(&a.direct_sum(&s1, &s1)).unwrap().len(), 2);

        let x = Rep::new(vec![1, 2], vec![Mat::from_rows(k, &[vec![1], vec![0]])]);
        let parts = a.decompose(&x).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().any(|r| a.is_isomorphic(r, &p1).unwrap()));
        assert!(parts.iter().any(|r| a.is_isomorphic(r, &a.simple(1)).unwrap()));
    }

    #[test]
    fn submodule_examples() {
        let a = a2();
        assert_eq!(a.enumerate_submodules(&a.projective(0)).unwrap().len(), 3);
        assert_eq!(a.enumerate_submodules(&a.simple(0)).unwrap().len(), 2);
        let s1 = a.simple(0);
        assert_eq!(a.enumerate_submodules(&a.direct_sum(&s1, &s1)).unwrap().len(), 5);
    }

    #[test]
    fn radical_top_examples() {
        let a = a2();
        let ((rad, _), (top, _)) = a.radical_top(&a.projective(0));
        assert!(a.is_isomorphic(&rad, &a.simple(1)).unwrap());
        assert!(a.is_isomorphic(&top, &a.simple(0)).unwrap());
        let ss = a.direct_sum(&a.simple(0), &a.simple(1));
        let ((rad, _), (top, _)) = a.radical_top(&ss);
        assert!(rad.is_zero());
        assert_eq!(top, ss);
        let ((rad, _), (top, _)) = a.radical_top(&Rep::zero(&a));
        assert!(rad.is_zero() && top.is_zero());
    }

    #[test]
    fn module_json_round_trip() {
        let a = a2();
        let p1 = a.projective(0);
        let json = a.rep_to_json(&p1);
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(text, r#"{"dims":{"1":1,"2":1},"mats":{"a":[[1]]}}"#);
        let back: ModuleJson = serde_json::from_str(&text).unwrap();
        assert_eq!(a.rep_from_json(&back).unwrap(), p1);
    }
}
