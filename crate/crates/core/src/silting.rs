//! Two-term complexes of projectives in the homotopy category, two-term
//! silting objects, their correspondence with torsion classes, and
//! irreducible mutation checked against the approximation triangle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::QuiverAlgebra;
use crate::error::{Error, Result};
use crate::homext::Presentation;
use crate::lattice::TorsLattice;
use crate::linalg::{self, canonical_span, Mat};
use crate::rep::{Mor, Rep, DEFAULT_HOM_CAP};
use crate::torsion::{Ambient, IndSet};

/// `P⁻¹ --d--> P⁰`, each term a direct sum of indecomposable projectives
/// listed by vertex in the order they appear in the sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    pm1: Vec<usize>,
    p0: Vec<usize>,
    d: Mor,
    src: Rep,
    tgt: Rep,
}

/// A morphism of complexes, or into a shift when the target is `Y[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    /// Degree −1 component.
    pub f1: Mor,
    /// Degree 0 component.
    pub f0: Mor,
}

/// Homotopy invariants of a two-term complex: `X ≅ pres(H⁰ X) ⊕ (Q -> 0)` in
/// the homotopy category, with `q` the multiplicity of `P(v)` in `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub h0: Rep,
    pub q: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// `Hom(X, Y)` in the homotopy category: chain maps modulo null-homotopic
/// ones, with a basis of representatives.
#[derive(Clone, Debug)]
pub struct KHom {
    pub basis: Vec<ChainMap>,
    shapes: [Rep; 4],
    null: Mat,
}

/// `Hom(X, Y[shift])` for `shift` 0 or 1.
#[derive(Clone, Debug)]
pub struct TwoTermHom {
    pub shift: u8,
    pub basis: Vec<ChainMap>,
}

impl TwoTermHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Summands of a two-term silting object, sorted by g-vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiltingObject {
    summands: Vec<TwoTermComplex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    pub ok: bool,
    /// `σ = σ'`: nothing exchanged.
    pub trivial: bool,
    /// `Left` when `σ'` is a left mutation of `σ`.
    pub direction: Option<Direction>,
    pub reason: String,
}

/// A minimal left approximation `φ: X -> E` with `E ∈ add(shared)`.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub target: TwoTermComplex,
    pub phi: ChainMap,
    /// Multiplicity of each shared summand in the target.
    pub mults: Vec<usize>,
}

fn counts(n: usize, vertices: &[usize]) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for &v in vertices {
        c[v] += 1;
    }
    c
}

fn flat_columns(vectors: &[Vec<u32>], len: usize) -> Mat {
    Mat::from_columns(len, vectors)
}

/// Greedily extends the span of `null` by members of `candidates`; returns
/// the indices of the chosen candidates.
fn complete_basis(field: linalg::Field, null: &Mat, candidates: &[Vec<u32>]) -> Vec<usize> {
    let mut span = null.clone();
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let wider = span.hstack(&Mat::column_vector(c));
        if wider.rank(field) > span.cols() {
            span = wider;
            chosen.push(i);
        }
    }
    chosen
}

impl TwoTermComplex {
    pub fn new(alg: &QuiverAlgebra, pm1: Vec<usize>, p0: Vec<usize>, d: Mor) -> Result<Self> {
        let src = alg.projective_sum(&pm1);
        let tgt = alg.projective_sum(&p0);
        if !alg.is_valid_mor(&src, &tgt, &d) {
            return Err(Error::InvalidRep("differential is not a module map".into()));
        }
        Ok(TwoTermComplex { pm1, p0, d, src, tgt })
    }

    /// `0 -> P(v)`.
    pub fn stalk(alg: &QuiverAlgebra, v: usize) -> Self {
        let tgt = alg.projective(v);
        let src = Rep::zero(alg);
        let d = Mor::zero(&src, &tgt);
        TwoTermComplex { pm1: Vec::new(), p0: vec![v], d, src, tgt }
    }

    /// `P(v) -> 0`.
    pub fn shifted_stalk(alg: &QuiverAlgebra, v: usize) -> Self {
        let src = alg.projective(v);
        let tgt = Rep::zero(alg);
        let d = Mor::zero(&src, &tgt);
        TwoTermComplex { pm1: vec![v], p0: Vec::new(), d, src, tgt }
    }

    pub fn from_presentation(pres: &Presentation) -> Self {
        TwoTermComplex {
            pm1: pres.p1_tops.clone(),
            p0: pres.p0_tops.clone(),
            d: pres.d.clone(),
            src: pres.p1.clone(),
            tgt: pres.p0.clone(),
        }
    }

    pub fn pm1(&self) -> &[usize] {
        &self.pm1
    }

    pub fn p0(&self) -> &[usize] {
        &self.p0
    }

    pub fn d(&self) -> &Mor {
        &self.d
    }

    pub fn pm1_rep(&self) -> &Rep {
        &self.src
    }

    pub fn p0_rep(&self) -> &Rep {
        &self.tgt
    }

    /// `[P⁰] − [P⁻¹]`.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let (a, b) = (counts(n, &self.p0), counts(n, &self.pm1));
        a.iter().zip(&b).map(|(x, y)| x - y).collect()
    }

    pub fn h0(&self, alg: &QuiverAlgebra) -> Rep {
        alg.cokernel_of(&self.src, &self.tgt, &self.d).0
    }
}

impl ChainMap {
    pub fn flatten(&self) -> Vec<u32> {
        let mut v = self.f1.flatten();
        v.extend(self.f0.flatten());
        v
    }

    /// `self ∘ inner` for maps of complexes (shift 0).
    pub fn after(&self, field: linalg::Field, inner: &ChainMap) -> ChainMap {
        ChainMap { f1: self.f1.after(field, &inner.f1), f0: self.f0.after(field, &inner.f0) }
    }

    pub fn add(&self, field: linalg::Field, rhs: &ChainMap) -> ChainMap {
        ChainMap { f1: self.f1.add(field, &rhs.f1), f0: self.f0.add(field, &rhs.f0) }
    }

    pub fn scale(&self, field: linalg::Field, c: u32) -> ChainMap {
        ChainMap { f1: self.f1.scale(field, c), f0: self.f0.scale(field, c) }
    }

    pub fn identity(x: &TwoTermComplex) -> ChainMap {
        ChainMap { f1: Mor::identity(&x.src), f0: Mor::identity(&x.tgt) }
    }
}

impl KHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a chain map in the basis, modulo homotopy.
    pub fn coordinates(&self, field: linalg::Field, f: &ChainMap) -> Vec<u32> {
        let basis: Vec<Vec<u32>> = self.basis.iter().map(ChainMap::flatten).collect();
        let sys = self.null.hstack(&flat_columns(&basis, self.null.rows()));
        let sol = sys.solve(field, &f.flatten()).expect("chain maps lie in the span of null maps and the basis");
        sol[self.null.cols()..].to_vec()
    }

    pub fn is_null(&self, field: linalg::Field, f: &ChainMap) -> bool {
        self.coordinates(field, f).iter().all(|&c| c == 0)
    }

    pub fn combination(&self, field: linalg::Field, coords: &[u32]) -> ChainMap {
        let [x1, y1, x0, y0] = &self.shapes;
        let mut acc = ChainMap { f1: Mor::zero(x1, y1), f0: Mor::zero(x0, y0) };
        for (b, &c) in self.basis.iter().zip(coords) {
            if c != 0 {
                acc = acc.add(field, &b.scale(field, c));
            }
        }
        acc
    }
}

impl SiltingObject {
    /// Sorts the summands by g-vector.
    pub fn new(alg: &QuiverAlgebra, mut summands: Vec<TwoTermComplex>) -> Self {
        let n = alg.num_vertices();
        summands.sort_by_key(|s| s.g_vector(n));
        SiltingObject { summands }
    }

    pub fn summands(&self) -> &[TwoTermComplex] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn g_vectors(&self, n: usize) -> Vec<Vec<i64>> {
        self.summands.iter().map(|s| s.g_vector(n)).collect()
    }

    /// The direct sum of all summands as one complex.
    pub fn total(&self, alg: &QuiverAlgebra) -> TwoTermComplex {
        alg.complex_sum(&self.summands.iter().collect::<Vec<_>>())
    }
}

impl QuiverAlgebra {
    pub fn complex_sum(&self, parts: &[&TwoTermComplex]) -> TwoTermComplex {
        let n = self.num_vertices();
        let mut d = Mor { comps: vec![Mat::zeros(0, 0); n] };
        let (mut pm1, mut p0) = (Vec::new(), Vec::new());
        let (mut src, mut tgt) = (Rep::zero(self), Rep::zero(self));
        for p in parts {
            pm1.extend(&p.pm1);
            p0.extend(&p.p0);
            d = d.block_diag(&p.d);
            src = self.direct_sum(&src, &p.src);
            tgt = self.direct_sum(&tgt, &p.tgt);
        }
        TwoTermComplex { pm1, p0, d, src, tgt }
    }

    pub fn normal_form(&self, x: &TwoTermComplex) -> NormalForm {
        self.normal_form_from(x.h0(self), &counts(self.num_vertices(), &x.pm1), &counts(self.num_vertices(), &x.p0))
    }

    /// Normal form of any complex with the given `H⁰` and term classes.
    fn normal_form_from(&self, h0: Rep, deg_m1: &[i64], deg_0: &[i64]) -> NormalForm {
        let n = self.num_vertices();
        let pres = self.minimal_projective_presentation(&h0);
        let (m1, m0) = (counts(n, &pres.p1_tops), counts(n, &pres.p0_tops));
        let q = (0..n).map(|v| deg_m1[v] - m1[v] - (deg_0[v] - m0[v])).collect();
        NormalForm { h0, q }
    }

    /// Isomorphism in the homotopy category.
    pub fn complexes_isomorphic(&self, x: &TwoTermComplex, y: &TwoTermComplex) -> Result<bool> {
        if x.g_vector(self.num_vertices()) != y.g_vector(self.num_vertices()) {
            return Ok(false);
        }
        let (a, b) = (self.normal_form(x), self.normal_form(y));
        Ok(a.q == b.q && self.is_isomorphic(&a.h0, &b.h0)?)
    }

    /// Indecomposable summands in the homotopy category: presentations of
    /// the summands of `H⁰` and one `P(v) -> 0` per unit of `q`.
    pub fn decompose_complex(&self, x: &TwoTermComplex) -> Result<Vec<TwoTermComplex>> {
        let nf = self.normal_form(x);
        let mut out: Vec<TwoTermComplex> = self
            .decompose(&nf.h0)?
            .iter()
            .map(|h| TwoTermComplex::from_presentation(&self.minimal_projective_presentation(h)))
            .collect();
        for (v, &m) in nf.q.iter().enumerate() {
            for _ in 0..m.max(0) {
                out.push(TwoTermComplex::shifted_stalk(self, v));
            }
        }
        Ok(out)
    }

    pub fn is_indecomposable_complex(&self, x: &TwoTermComplex) -> Result<bool> {
        Ok(self.decompose_complex(x)?.len() == 1)
    }

    /// Shift-0 Hom in the homotopy category: pairs `(f₋₁, f₀)` with
    /// `f₀ d_X = d_Y f₋₁`, modulo `(h d_X, d_Y h)` for `h: X⁰ -> Y⁻¹`.
    pub fn hom_k(&self, x: &TwoTermComplex, y: &TwoTermComplex) -> KHom {
        let k = self.field();
        let a = self.hom_basis(&x.src, &y.src);
        let b = self.hom_basis(&x.tgt, &y.tgt);
        let eq_len = Mor::zero(&x.src, &y.tgt).flatten().len();
        let mut cols: Vec<Vec<u32>> = a.iter().map(|f| y.d.after(k, f).scale(k, k.p() - 1).flatten()).collect();
        cols.extend(b.iter().map(|g| g.after(k, &x.d).flatten()));
        let ker = flat_columns(&cols, eq_len).kernel_basis(k);
        let chains: Vec<ChainMap> = ker
            .columns()
            .iter()
            .map(|c| ChainMap {
                f1: Mor::combination(k, &x.src, &y.src, &a, &c[..a.len()]),
                f0: Mor::combination(k, &x.tgt, &y.tgt, &b, &c[a.len()..]),
            })
            .collect();
        let len = Mor::zero(&x.src, &y.src).flatten().len() + Mor::zero(&x.tgt, &y.tgt).flatten().len();
        let null_maps: Vec<Vec<u32>> = self
            .hom_basis(&x.tgt, &y.src)
            .iter()
            .map(|h| ChainMap { f1: h.after(k, &x.d), f0: y.d.after(k, h) }.flatten())
            .collect();
        let null = canonical_span(k, &flat_columns(&null_maps, len));
        let flat: Vec<Vec<u32>> = chains.iter().map(ChainMap::flatten).collect();
        let basis = complete_basis(k, &null, &flat).into_iter().map(|i| chains[i].clone()).collect();
        KHom { basis, shapes: [x.src.clone(), y.src.clone(), x.tgt.clone(), y.tgt.clone()], null }
    }

    /// `Hom(X, Y[shift])` in the homotopy category. For `shift = 1` the only
    /// component is `X⁻¹ -> Y⁰`, taken modulo `Hom(X⁰, Y⁰) d_X + d_Y Hom(X⁻¹, Y⁻¹)`.
    pub fn two_term_hom(&self, x: &TwoTermComplex, y: &TwoTermComplex, shift: u8) -> TwoTermHom {
        if shift == 0 {
            return TwoTermHom { shift, basis: self.hom_k(x, y).basis };
        }
        assert_eq!(shift, 1, "two-term complexes only have Hom to shifts 0 and 1");
        let k = self.field();
        let zero = Rep::zero(self);
        let c = self.hom_basis(&x.src, &y.tgt);
        let len = Mor::zero(&x.src, &y.tgt).flatten().len();
        let mut null: Vec<Vec<u32>> =
            self.hom_basis(&x.tgt, &y.tgt).iter().map(|g| g.after(k, &x.d).flatten()).collect();
        null.extend(self.hom_basis(&x.src, &y.src).iter().map(|h| y.d.after(k, h).flatten()));
        let null = canonical_span(k, &flat_columns(&null, len));
        let flat: Vec<Vec<u32>> = c.iter().map(Mor::flatten).collect();
        let basis = complete_basis(k, &null, &flat)
            .into_iter()
            .map(|i| ChainMap { f1: c[i].clone(), f0: Mor::zero(&x.tgt, &zero) })
            .collect();
        TwoTermHom { shift, basis }
    }

    /// `Hom(σ, σ'[1]) = 0`, i.e. `σ >= σ'` in the silting order.
    pub fn silting_geq(&self, a: &SiltingObject, b: &SiltingObject) -> bool {
        a.summands.iter().all(|x| b.summands.iter().all(|y| self.two_term_hom(x, y, 1).dim() == 0))
    }

    pub fn is_presilting(&self, sigma: &SiltingObject) -> bool {
        self.silting_geq(sigma, sigma)
    }

    /// Presilting with as many pairwise non-isomorphic indecomposable
    /// summands as the quiver has vertices.
    pub fn is_two_term_silting(&self, sigma: &SiltingObject) -> Result<bool> {
        if !self.is_presilting(sigma) {
            return Ok(false);
        }
        let mut distinct: Vec<TwoTermComplex> = Vec::new();
        for s in &sigma.summands {
            for part in self.decompose_complex(s)? {
                let mut seen = false;
                for d in &distinct {
                    if self.complexes_isomorphic(d, &part)? {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    distinct.push(part);
                }
            }
        }
        Ok(distinct.len() == self.num_vertices())
    }

    /// `h` is a unit of the finite-dimensional algebra `End(E)`: left
    /// multiplication by it is bijective.
    fn is_unit(&self, end: &KHom, h: &ChainMap) -> bool {
        let k = self.field();
        let images: Vec<Vec<u32>> = end.basis.iter().map(|b| end.coordinates(k, &h.after(k, b))).collect();
        flat_columns(&images, end.dim()).rank(k) == end.dim()
    }

    /// Coordinates spanning the radical of the local ring `End(S)`: its
    /// non-units.
    fn radical_of_local(&self, end: &KHom) -> Result<Mat> {
        let k = self.field();
        let total = k
            .pow_count(end.dim())
            .filter(|&n| n <= DEFAULT_HOM_CAP)
            .ok_or(Error::CapExceeded { what: "endomorphism enumeration", cap: DEFAULT_HOM_CAP })?;
        let mut digits = vec![0u32; end.dim()];
        let mut span = Mat::zeros(end.dim(), 0);
        for _ in 0..total {
            if !self.is_unit(end, &end.combination(k, &digits)) {
                span = span.hstack(&Mat::column_vector(&digits));
            }
            linalg::increment(&mut digits, k.p());
        }
        Ok(canonical_span(k, &span))
    }

    /// Minimal left `add(shared)`-approximation of `x`. Shared summands must
    /// be indecomposable and pairwise non-isomorphic.
    ///
    /// The multiplicity of `S_j` is the dimension of `Hom(X, S_j)` modulo the
    /// maps factoring through radical maps `S_l -> S_j`.
    pub fn left_approximation(&self, x: &TwoTermComplex, shared: &[TwoTermComplex]) -> Result<Approximation> {
        let k = self.field();
        let homs: Vec<KHom> = shared.iter().map(|s| self.hom_k(x, s)).collect();
        let mut chosen: Vec<Vec<ChainMap>> = Vec::new();
        for (j, sj) in shared.iter().enumerate() {
            let mut rad = Mat::zeros(homs[j].dim(), 0);
            for (l, sl) in shared.iter().enumerate() {
                let between = self.hom_k(sl, sj);
                let gens: Vec<ChainMap> = if l == j {
                    let r = self.radical_of_local(&between)?;
                    r.columns().iter().map(|c| between.combination(k, c)).collect()
                } else {
                    between.basis.clone()
                };
                for g in &gens {
                    for f in &homs[l].basis {
                        let c = homs[j].coordinates(k, &g.after(k, f));
                        rad = rad.hstack(&Mat::column_vector(&c));
                    }
                }
            }
            let rad = canonical_span(k, &rad);
            let unit: Vec<Vec<u32>> = (0..homs[j].dim())
                .map(|i| {
                    let mut e = vec![0u32; homs[j].dim()];
                    e[i] = 1;
                    e
                })
                .collect();
            chosen.push(complete_basis(k, &rad, &unit).into_iter().map(|i| homs[j].basis[i].clone()).collect());
        }
        let mults: Vec<usize> = chosen.iter().map(Vec::len).collect();
        let parts: Vec<&TwoTermComplex> =
            shared.iter().zip(&mults).flat_map(|(s, &m)| std::iter::repeat_n(s, m)).collect();
        let target = self.complex_sum(&parts);
        let maps: Vec<&ChainMap> = chosen.iter().flatten().collect();
        let f1 = Mor {
            comps: (0..self.num_vertices())
                .map(|v| maps.iter().fold(Mat::zeros(0, x.src.dims()[v]), |acc, m| acc.vstack(&m.f1.comps[v])))
                .collect(),
        };
        let f0 = Mor {
            comps: (0..self.num_vertices())
                .map(|v| maps.iter().fold(Mat::zeros(0, x.tgt.dims()[v]), |acc, m| acc.vstack(&m.f0.comps[v])))
                .collect(),
        };
        Ok(Approximation { target, phi: ChainMap { f1, f0 }, mults })
    }

    /// Every map `x -> S` with `S` shared factors through `φ`.
    pub fn is_left_approximation(&self, x: &TwoTermComplex, ap: &Approximation, shared: &[TwoTermComplex]) -> bool {
        let k = self.field();
        shared.iter().all(|s| {
            let to_s = self.hom_k(x, s);
            let pulled: Vec<Vec<u32>> = self
                .hom_k(&ap.target, s)
                .basis
                .iter()
                .map(|g| to_s.coordinates(k, &g.after(k, &ap.phi)))
                .collect();
            flat_columns(&pulled, to_s.dim()).rank(k) == to_s.dim()
        })
    }

    /// Every endomorphism `h` of the target with `h ∘ φ = φ` is invertible.
    pub fn is_left_minimal(&self, x: &TwoTermComplex, ap: &Approximation) -> Result<bool> {
        let k = self.field();
        let end = self.hom_k(&ap.target, &ap.target);
        let to_e = self.hom_k(x, &ap.target);
        let images: Vec<Vec<u32>> = end.basis.iter().map(|h| to_e.coordinates(k, &h.after(k, &ap.phi))).collect();
        let ann = flat_columns(&images, to_e.dim()).kernel_basis(k);
        let total = k
            .pow_count(ann.cols())
            .filter(|&n| n <= DEFAULT_HOM_CAP)
            .ok_or(Error::CapExceeded { what: "annihilator enumeration", cap: DEFAULT_HOM_CAP })?;
        let id = ChainMap::identity(&ap.target);
        let mut digits = vec![0u32; ann.cols()];
        for _ in 0..total {
            let coords = ann.mul_vec(k, &digits);
            let h = id.add(k, &end.combination(k, &coords));
            if !self.is_unit(&end, &h) {
                return Ok(false);
            }
            linalg::increment(&mut digits, k.p());
        }
        Ok(true)
    }

    /// Normal form of the cone of `φ: X -> E` when the three-term cone
    /// `X⁻¹ -> X⁰ ⊕ E⁻¹ -> E⁰` is homotopic to a two-term complex, which
    /// happens exactly when its first differential is a split monomorphism.
    pub fn cone_normal_form(&self, x: &TwoTermComplex, ap: &Approximation) -> Option<NormalForm> {
        let k = self.field();
        let n = self.num_vertices();
        let e = &ap.target;
        let mid = self.direct_sum(&x.tgt, &e.src);
        let d2 = Mor {
            comps: (0..n).map(|v| x.d.comps[v].neg(k).vstack(&ap.phi.f1.comps[v])).collect(),
        };
        let d1 = Mor {
            comps: (0..n).map(|v| ap.phi.f0.comps[v].hstack(&e.d.comps[v])).collect(),
        };
        if !x.src.is_zero() {
            let retractions = self.hom_basis(&mid, &x.src);
            let len = Mor::identity(&x.src).flatten().len();
            let images: Vec<Vec<u32>> = retractions.iter().map(|r| r.after(k, &d2).flatten()).collect();
            flat_columns(&images, len).solve(k, &Mor::identity(&x.src).flatten()).ok()?;
        }
        let h0 = self.cokernel_of(&mid, &e.tgt, &d1).0;
        let (xm1, x0, em1, e0) = (counts(n, &x.pm1), counts(n, &x.p0), counts(n, &e.pm1), counts(n, &e.p0));
        let deg_m1: Vec<i64> = (0..n).map(|v| x0[v] + em1[v] - xm1[v]).collect();
        Some(self.normal_form_from(h0, &deg_m1, &e0))
    }

    fn normal_forms_isomorphic(&self, a: &NormalForm, b: &NormalForm) -> Result<bool> {
        Ok(a.q == b.q && self.is_isomorphic(&a.h0, &b.h0)?)
    }

    /// Splits `σ` and `σ'` into shared summands and the summands only in one
    /// of them.
    pub fn exchange(
        &self,
        a: &SiltingObject,
        b: &SiltingObject,
    ) -> Result<(Vec<TwoTermComplex>, Vec<TwoTermComplex>, Vec<TwoTermComplex>)> {
        let mut shared = Vec::new();
        let mut only_a = Vec::new();
        for x in &a.summands {
            let mut found = false;
            for y in &b.summands {
                if self.complexes_isomorphic(x, y)? {
                    found = true;
                    break;
                }
            }
            if found {
                shared.push(x.clone());
            } else {
                only_a.push(x.clone());
            }
        }
        let mut only_b = Vec::new();
        for y in &b.summands {
            let mut found = false;
            for x in &shared {
                if self.complexes_isomorphic(x, y)? {
                    found = true;
                    break;
                }
            }
            if !found {
                only_b.push(y.clone());
            }
        }
        Ok((shared, only_a, only_b))
    }

    /// Checks that `σ'` arises from `σ` by exchanging one summand through an
    /// approximation triangle `X -> E -> Y -> X[1]` with `E ∈ add(shared)`.
    ///
    /// A right mutation of `σ` is a left mutation read backwards, so the
    /// triangle is always checked from the larger object in the silting order.
    pub fn verify_mutation_triangle(&self, a: &SiltingObject, b: &SiltingObject) -> Result<TriangleReport> {
        let report = |ok: bool, direction: Option<Direction>, reason: &str| TriangleReport {
            ok,
            trivial: false,
            direction,
            reason: reason.to_string(),
        };
        let (shared, only_a, only_b) = self.exchange(a, b)?;
        if only_a.is_empty() && only_b.is_empty() {
            return Ok(TriangleReport { ok: true, trivial: true, direction: None, reason: "trivial".into() });
        }
        if only_a.len() != 1 || only_b.len() != 1 {
            return Ok(report(false, None, "more than one summand exchanged"));
        }
        let (direction, x, y) = if self.silting_geq(a, b) {
            (Direction::Left, &only_a[0], &only_b[0])
        } else if self.silting_geq(b, a) {
            (Direction::Right, &only_b[0], &only_a[0])
        } else {
            return Ok(report(false, None, "objects are not comparable in the silting order"));
        };
        let ap = self.left_approximation(x, &shared)?;
        if !self.is_left_approximation(x, &ap, &shared) {
            return Ok(report(false, Some(direction), "map is not an approximation"));
        }
        if !self.is_left_minimal(x, &ap)? {
            return Ok(report(false, Some(direction), "approximation is not minimal"));
        }
        let Some(cone) = self.cone_normal_form(x, &ap) else {
            return Ok(report(false, Some(direction), "cone is not two-term"));
        };
        if !self.normal_forms_isomorphic(&cone, &self.normal_form(y))? {
            return Ok(report(false, Some(direction), "cone differs from the new summand"));
        }
        Ok(report(true, Some(direction), "ok"))
    }

    /// JSON form of a summand: vertex names of both terms and the blocks of
    /// `d`, each a map `P(v) -> P(w)` given by the image of `e_v` as a
    /// combination of paths from `w` to `v`.
    pub fn complex_to_json(&self, x: &TwoTermComplex) -> ComplexJson {
        let names = self.quiver().vertices();
        let n = self.num_vertices();
        let offset = |tops: &[usize], idx: usize, v: usize| -> usize {
            tops[..idx].iter().map(|&u| self.paths_between(u, v).len()).sum()
        };
        let d = x
            .p0
            .iter()
            .enumerate()
            .map(|(j, &w)| {
                x.pm1
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let col = offset(&x.pm1, i, v);
                        let row0 = offset(&x.p0, j, v);
                        self.paths_between(w, v)
                            .iter()
                            .enumerate()
                            .filter_map(|(r, &pi)| {
                                let c = x.d.comps[v].get(row0 + r, col);
                                (c != 0).then(|| (self.path_label(&self.paths()[pi]), c))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ComplexJson {
            pm1: x.pm1.iter().map(|&v| names[v].clone()).collect(),
            p0: x.p0.iter().map(|&v| names[v].clone()).collect(),
            d,
            g: x.g_vector(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub pm1: Vec<String>,
    pub p0: Vec<String>,
    /// `d[j][i]`: block from the i-th summand of `P⁻¹` to the j-th of `P⁰`.
    pub d: Vec<Vec<BTreeMap<String, u32>>>,
    pub g: Vec<i64>,
}

/// Ext-projectives of `t` (items `X` with `Ext¹(X, t) = 0`) presented
/// minimally, plus `P(v) -> 0` for each vertex outside their support.
pub fn silting_from_torsion_class(amb: &Ambient, t: &IndSet) -> Result<SiltingObject> {
    if !amb.ind().complete() {
        return Err(Error::AmbientIncomplete);
    }
    if &amb.gen_closure(t)? != t {
        return Err(Error::NotATorsionClass);
    }
    let alg = amb.alg();
    let ext_projective: Vec<usize> = t
        .iter()
        .filter(|&x| t.iter().all(|y| alg.ext_dim(amb.item(x), amb.item(y)) == 0))
        .collect();
    let mut support = vec![false; alg.num_vertices()];
    let mut summands = Vec::new();
    for &x in &ext_projective {
        let m = amb.item(x);
        for (v, &d) in m.dims().iter().enumerate() {
            support[v] |= d > 0;
        }
        summands.push(TwoTermComplex::from_presentation(&alg.minimal_projective_presentation(m)));
    }
    for (v, &s) in support.iter().enumerate() {
        if !s {
            summands.push(TwoTermComplex::shifted_stalk(alg, v));
        }
    }
    let sigma = SiltingObject::new(alg, summands);
    if !alg.is_two_term_silting(&sigma)? {
        return Err(Error::NotSilting("Ext-projectives do not give a silting object".into()));
    }
    Ok(sigma)
}

/// `gen` of the summands of `H⁰(σ)`.
pub fn torsion_class_from_silting(amb: &Ambient, sigma: &SiltingObject) -> Result<IndSet> {
    let alg = amb.alg();
    let mut ids = Vec::new();
    for s in sigma.summands() {
        ids.extend(amb.ind().summand_ids(alg, &s.h0(alg))?);
    }
    amb.gen_closure(&ids.into_iter().collect())
}

/// Irreducible mutation at summand `i`. The result is read off the lattice:
/// a left mutation moves to a lower cover, a right mutation to an upper
/// cover, whose silting object shares every summand except the `i`-th.
/// The approximation triangle is then checked.
pub fn mutate_silting(
    amb: &Ambient,
    lattice: &TorsLattice,
    sigma: &SiltingObject,
    i: usize,
    dir: Direction,
) -> Result<SiltingObject> {
    let alg = amb.alg();
    if i >= sigma.len() {
        return Err(Error::OutOfRange(i));
    }
    if !alg.is_two_term_silting(sigma)? {
        return Err(Error::NotSilting("input is not two-term silting".into()));
    }
    let t = torsion_class_from_silting(amb, sigma)?;
    let here = lattice.position(&t).ok_or(Error::NotATorsionClass)?;
    let neighbours: Vec<usize> = lattice
        .covers()
        .iter()
        .filter_map(|c| match dir {
            Direction::Left if c.upper == here => Some(c.lower),
            Direction::Right if c.lower == here => Some(c.upper),
            _ => None,
        })
        .collect();
    let removed = &sigma.summands()[i];
    for nb in neighbours {
        let candidate = silting_from_torsion_class(amb, &lattice.classes()[nb])?;
        let (_, only_old, _) = alg.exchange(sigma, &candidate)?;
        if only_old.len() == 1 && alg.complexes_isomorphic(&only_old[0], removed)? {
            let report = alg.verify_mutation_triangle(sigma, &candidate)?;
            if !report.ok || report.direction != Some(dir) {
                return Err(Error::TriangleCheckFailed(report.reason));
            }
            return Ok(candidate);
        }
    }
    Err(Error::LeavesTwoTermRange)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraFamily;
    use crate::indec::enumerate_indecomposables;
    use crate::lattice::enumerate_torsion_classes;
    use crate::linalg::Field;

    fn a2() -> QuiverAlgebra {
        QuiverAlgebra::builtin(AlgebraFamily::LinearA(2), Field::new(2).unwrap())
    }

    /// `P(2) -> P(1)`, the presentation of S1.
    fn p2_to_p1(a: &QuiverAlgebra) -> TwoTermComplex {
        TwoTermComplex::from_presentation(&a.minimal_projective_presentation(&a.simple(0)))
    }

    #[test]
    fn hom_examples() {
        let a = a2();
        let x = p2_to_p1(&a);
        let p1 = TwoTermComplex::stalk(&a, 0);
        assert_eq!(a.two_term_hom(&x, &p1, 0).dim(), 0);
        assert!(a.two_term_hom(&x, &x, 0).dim() >= 1);
        assert_eq!(a.two_term_hom(&p1, &x, 1).dim(), 0);
        // Hom(P(1)->0, P(1)[1]) is the identity of P(1), not null-homotopic
        let sh = TwoTermComplex::shifted_stalk(&a, 0);
        assert_eq!(a.two_term_hom(&sh, &p1, 1).dim(), 1);
    }

    #[test]
    fn silting_examples() {
        let a = a2();
        let alg_deg0 = SiltingObject::new(&a, vec![TwoTermComplex::stalk(&a, 0), TwoTermComplex::stalk(&a, 1)]);
        assert!(a.is_two_term_silting(&alg_deg0).unwrap());
        let shifted =
            SiltingObject::new(&a, vec![TwoTermComplex::shifted_stalk(&a, 0), TwoTermComplex::shifted_stalk(&a, 1)]);
        assert!(a.is_two_term_silting(&shifted).unwrap());
        let mixed = SiltingObject::new(&a, vec![TwoTermComplex::stalk(&a, 0), p2_to_p1(&a)]);
        assert!(a.is_two_term_silting(&mixed).unwrap());
        let too_small = SiltingObject::new(&a, vec![TwoTermComplex::stalk(&a, 0)]);
        assert!(!a.is_two_term_silting(&too_small).unwrap());
        let not_rigid =
            SiltingObject::new(&a, vec![TwoTermComplex::stalk(&a, 0), TwoTermComplex::shifted_stalk(&a, 0)]);
        assert!(!a.is_two_term_silting(&not_rigid).unwrap());
    }

    #[test]
    fn torsion_correspondence_examples() {
        let a = a2();
        let ind = enumerate_indecomposables(&a, 4).unwrap();
        let amb = Ambient::new(&a, &ind);
        let all = amb.all();
        let s = silting_from_torsion_class(&amb, &all).unwrap();
        assert_eq!(s.g_vectors(2), vec![vec![0, 1], vec![1, 0]]);
        let s = silting_from_torsion_class(&amb, &IndSet::empty()).unwrap();
        assert_eq!(s.g_vectors(2), vec![vec![-1, 0], vec![0, -1]]);
        assert!(torsion_class_from_silting(&amb, &s).unwrap().is_empty());
        // {S1, P1}: ids 1 and 2
        let t: IndSet = [1, 2].into();
        let s = silting_from_torsion_class(&amb, &t).unwrap();
        assert_eq!(s.g_vectors(2), vec![vec![1, -1], vec![1, 0]]);
        assert_eq!(torsion_class_from_silting(&amb, &s).unwrap(), t);
        assert_eq!(silting_from_torsion_class(&amb, &[2].into()), Err(Error::NotATorsionClass));
    }

    #[test]
    fn mutation_examples() {
        let a = a2();
        let ind = enumerate_indecomposables(&a, 4).unwrap();
        let amb = Ambient::new(&a, &ind);
        let lat = enumerate_torsion_classes(&amb).unwrap();
        let top = silting_from_torsion_class(&amb, &amb.all()).unwrap();
        // summand 0 has g-vector (0,1): the stalk P(2)
        let left = mutate_silting(&amb, &lat, &top, 0, Direction::Left).unwrap();
        assert_eq!(left.g_vectors(2), vec![vec![1, -1], vec![1, 0]]);
        let back_idx = left.g_vectors(2).iter().position(|g| g == &vec![1, -1]).unwrap();
        let back = mutate_silting(&amb, &lat, &left, back_idx, Direction::Right).unwrap();
        assert_eq!(back.g_vectors(2), top.g_vectors(2));
        assert_eq!(mutate_silting(&amb, &lat, &top, 0, Direction::Right), Err(Error::LeavesTwoTermRange));

        let bottom = silting_from_torsion_class(&amb, &IndSet::empty()).unwrap();
        let up = mutate_silting(&amb, &lat, &bottom, 0, Direction::Right).unwrap();
        assert!(a.is_two_term_silting(&up).unwrap());
        assert!(a.verify_mutation_triangle(&bottom, &up).unwrap().ok);
    }

    #[test]
    fn triangle_examples() {
        let a = a2();
        let top = SiltingObject::new(&a, vec![TwoTermComplex::stalk(&a, 0), TwoTermComplex::stalk(&a, 1)]);
        let next = SiltingObject::new(&a, vec![TwoTermComplex::stalk(&a, 0), p2_to_p1(&a)]);
        let r = a.verify_mutation_triangle(&top, &next).unwrap();
        assert!(r.ok && !r.trivial);
        assert_eq!(r.direction, Some(Direction::Left));
        let r = a.verify_mutation_triangle(&next, &top).unwrap();
        assert_eq!((r.ok, r.direction), (true, Some(Direction::Right)));
        let r = a.verify_mutation_triangle(&top, &top).unwrap();
        assert!(r.ok && r.trivial);
        let bottom =
            SiltingObject::new(&a, vec![TwoTermComplex::shifted_stalk(&a, 0), TwoTermComplex::shifted_stalk(&a, 1)]);
        assert!(!a.verify_mutation_triangle(&top, &bottom).unwrap().ok);
    }

    #[test]
    fn json_blocks() {
        let a = a2();
        let j = a.complex_to_json(&p2_to_p1(&a));
        assert_eq!(j.pm1, vec!["2"]);
        assert_eq!(j.p0, vec!["1"]);
        assert_eq!(j.d[0][0].get("a"), Some(&1));
        assert_eq!(j.g, vec![1, -1]);
    }
}
