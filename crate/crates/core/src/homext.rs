//! Hom spaces, minimal projective presentations and Ext¹ with explicit
//! cocycles, middle terms and class recovery.

use crate::algebra::QuiverAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, canonical_span, Mat};
use crate::rep::{Mor, Rep, Side};

/// Largest Ext space whose classes may be listed one by one (`p^dim`).
pub const DEFAULT_EXT_CLASS_CAP: u64 = 1 << 12;

/// A minimal projective presentation `P1 --d--> P0 --aug--> X -> 0`.
///
/// `p0_tops[i]` is the vertex of the i-th indecomposable summand of `P0`
/// (summands appear in that order in the direct sum); likewise `p1_tops`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: Rep,
    pub p0: Rep,
    pub d: Mor,
    pub aug: Mor,
    pub p1_tops: Vec<usize>,
    pub p0_tops: Vec<usize>,
}

/// Ext¹(Z, M) computed from the minimal presentation of `Z`: cocycles are
/// maps `P1 -> M` vanishing on `ker d`, coboundaries are the maps `h ∘ d`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub z: Rep,
    pub m: Rep,
    pub pres: Presentation,
    /// Cocycles representing the chosen basis of Ext¹.
    pub basis: Vec<Mor>,
    /// Columns: an echelon basis of the coboundaries, flattened.
    boundaries: Mat,
}

/// A short exact sequence `0 -> M --incl--> E --proj--> Z -> 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub e: Rep,
    pub incl: Mor,
    pub proj: Mor,
}

fn flat_columns(mors: &[Mor], len: usize) -> Mat {
    let cols: Vec<Vec<u32>> = mors.iter().map(Mor::flatten).collect();
    Mat::from_columns(len, &cols)
}

fn flat_len(src: &Rep, tgt: &Rep) -> usize {
    src.dims().iter().zip(tgt.dims()).map(|(a, b)| a * b).sum()
}

impl QuiverAlgebra {
    /// Basis of Hom(X, Y): the solutions of `f_t X_a = Y_a f_s` for every arrow.
    pub fn hom_basis(&self, x: &Rep, y: &Rep) -> Vec<Mor> {
        let k = self.field();
        let n = self.num_vertices();
        let mut offset = vec![0usize; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + y.dims()[v] * x.dims()[v];
        }
        let unknowns = offset[n];
        if unknowns == 0 {
            return Vec::new();
        }
        let eqs: usize = self.arrows().iter().map(|a| y.dims()[a.target] * x.dims()[a.source]).sum();
        let mut sys = Mat::zeros(eqs, unknowns);
        let mut row = 0;
        for (ai, a) in self.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let (xa, ya) = (x.mat(ai), y.mat(ai));
            let (xs, xt, ys) = (x.dims()[s], x.dims()[t], y.dims()[s]);
            let yt = y.dims()[t];
            for i in 0..yt {
                for j in 0..xs {
                    // (f_t X_a)[i,j] = Σ_l f_t[i,l] X_a[l,j]
                    for l in 0..xt {
                        let c = xa.get(l, j);
                        if c != 0 {
                            let col = offset[t] + i * xt + l;
                            sys.set(row, col, k.add(sys.get(row, col), c));
                        }
                    }
                    // (Y_a f_s)[i,j] = Σ_l Y_a[i,l] f_s[l,j]
                    for l in 0..ys {
                        let c = ya.get(i, l);
                        if c != 0 {
                            let col = offset[s] + l * xs + j;
                            sys.set(row, col, k.sub(sys.get(row, col), c));
                        }
                    }
                    row += 1;
                }
            }
        }
        let ker = sys.kernel_basis(k);
        ker.columns().iter().map(|v| Mor::unflatten(x, y, v)).collect()
    }

    pub fn hom_dim(&self, x: &Rep, y: &Rep) -> usize {
        self.hom_basis(x, y).len()
    }

    /// The map `P(v) -> X` sending `e_v` to `m ∈ X_v`.
    pub fn hom_from_projective(&self, v: usize, x: &Rep, m: &[u32]) -> Mor {
        let k = self.field();
        let comps = (0..self.num_vertices())
            .map(|w| {
                let cols: Vec<Vec<u32>> = self
                    .paths_between(v, w)
                    .into_iter()
                    .map(|pi| {
                        let path = &self.paths()[pi];
                        if path.is_empty() {
                            m.to_vec()
                        } else {
                            self.path_action(x, &path.arrows).mul_vec(k, m)
                        }
                    })
                    .collect();
                Mat::from_columns(x.dims()[w], &cols)
            })
            .collect();
        Mor { comps }
    }

    /// The direct sum of projectives at the given vertices.
    pub fn projective_sum(&self, tops: &[usize]) -> Rep {
        let parts: Vec<Rep> = tops.iter().map(|&v| self.projective(v)).collect();
        self.direct_sum_all(&parts)
    }

    /// Projective cover `P -> X` with the vertices of its summands.
    pub fn projective_cover(&self, x: &Rep) -> (Rep, Mor, Vec<usize>) {
        let k = self.field();
        let (_, inc) = self.radical(x);
        let mut tops = Vec::new();
        let mut gens: Vec<Mor> = Vec::new();
        for v in 0..self.num_vertices() {
            let mut span = canonical_span(k, &inc.comps[v]);
            for i in 0..x.dims()[v] {
                let mut e = vec![0u32; x.dims()[v]];
                e[i] = 1;
                let wider = span.hstack(&Mat::column_vector(&e));
                if wider.rank(k) > span.cols() {
                    span = wider;
                    tops.push(v);
                    gens.push(self.hom_from_projective(v, x, &e));
                }
            }
        }
        let p = self.projective_sum(&tops);
        let comps = (0..self.num_vertices())
            .map(|w| {
                gens.iter().fold(Mat::zeros(x.dims()[w], 0), |acc, g| acc.hstack(&g.comps[w]))
            })
            .collect();
        (p, Mor { comps }, tops)
    }

    pub fn minimal_projective_presentation(&self, x: &Rep) -> Presentation {
        let k = self.field();
        let (p0, aug, p0_tops) = self.projective_cover(x);
        let (ker, ker_inc) = self.kernel_of(&p0, x, &aug);
        let (p1, cover, p1_tops) = self.projective_cover(&ker);
        let d = ker_inc.after(k, &cover);
        Presentation { p1, p0, d, aug, p1_tops, p0_tops }
    }

    pub fn ext_space(&self, z: &Rep, m: &Rep) -> ExtSpace {
        let k = self.field();
        let pres = self.minimal_projective_presentation(z);
        let len = flat_len(&pres.p1, m);
        let hom = self.hom_basis(&pres.p1, m);

        // Cocycles: combinations of `hom` killing ker d.
        let (ker, ker_d) = self.kernel_of(&pres.p1, &pres.p0, &pres.d);
        let restricted: Vec<Mor> = hom.iter().map(|h| h.after(k, &ker_d)).collect();
        let rlen = flat_len(&ker, m);
        let coeffs = flat_columns(&restricted, rlen).kernel_basis(k);
        let cocycles: Vec<Vec<u32>> = coeffs
            .columns()
            .iter()
            .map(|c| Mor::combination(k, &pres.p1, m, &hom, c).flatten())
            .collect();

        let coboundaries: Vec<Mor> =
            self.hom_basis(&pres.p0, m).iter().map(|g| g.after(k, &pres.d)).collect();
        let boundaries = canonical_span(k, &flat_columns(&coboundaries, len));

        let mut span = boundaries.clone();
        let mut basis = Vec::new();
        for c in cocycles {
            let wider = span.hstack(&Mat::column_vector(&c));
            if wider.rank(k) > span.cols() {
                span = wider;
                basis.push(Mor::unflatten(&pres.p1, m, &c));
            }
        }
        ExtSpace { z: z.clone(), m: m.clone(), pres, basis, boundaries }
    }

    pub fn ext_dim(&self, z: &Rep, m: &Rep) -> usize {
        self.ext_space(z, m).dim()
    }

    /// Presentation of a direct sum, summand by summand.
    pub fn presentation_sum(&self, parts: &[&Presentation]) -> Presentation {
        let n = self.num_vertices();
        let empty = Mor { comps: vec![Mat::zeros(0, 0); n] };
        let mut out = Presentation {
            p1: Rep::zero(self),
            p0: Rep::zero(self),
            d: empty.clone(),
            aug: empty,
            p1_tops: Vec::new(),
            p0_tops: Vec::new(),
        };
        for p in parts {
            out.p1 = self.direct_sum(&out.p1, &p.p1);
            out.p0 = self.direct_sum(&out.p0, &p.p0);
            out.d = out.d.block_diag(&p.d);
            out.aug = out.aug.block_diag(&p.aug);
            out.p1_tops.extend(&p.p1_tops);
            out.p0_tops.extend(&p.p0_tops);
        }
        out
    }

    /// Pushout of the presentation sequence of `Z` along a cocycle
    /// `c: P1 -> M`: `E = coker((c, -d): P1 -> M ⊕ P0)`.
    pub fn pushout_extension(&self, pres: &Presentation, m: &Rep, c: &Mor) -> Extension {
        let k = self.field();
        let sum = self.direct_sum(m, &pres.p0);
        let phi = Mor {
            comps: c.comps.iter().zip(&pres.d.comps).map(|(cv, dv)| cv.vstack(&dv.neg(k))).collect(),
        };
        let (e, pi) = self.cokernel_of(&pres.p1, &sum, &phi);
        let incl = pi.after(k, &self.sum_inclusion(m, &pres.p0, Side::Left));
        let to_z = pres.aug.after(k, &self.sum_projection(m, &pres.p0, Side::Right));
        // (0, aug) kills im phi, so it factors through pi via any section.
        let proj = Mor {
            comps: pi
                .comps
                .iter()
                .zip(&to_z.comps)
                .map(|(p, t)| {
                    let section = p.solve_matrix(k, &Mat::identity(p.rows())).expect("projection is onto");
                    t.mul(k, &section)
                })
                .collect(),
        };
        Extension { e, incl, proj }
    }

    /// Splits iff `proj` has a section.
    pub fn is_split(&self, z: &Rep, ext: &Extension) -> bool {
        let k = self.field();
        let hom = self.hom_basis(z, &ext.e);
        let len = flat_len(z, z);
        let images: Vec<Mor> = hom.iter().map(|s| ext.proj.after(k, s)).collect();
        flat_columns(&images, len).solve(k, &Mor::identity(z).flatten()).is_ok()
    }
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cocycle(&self, alg: &QuiverAlgebra, coords: &[u32]) -> Mor {
        Mor::combination(alg.field(), &self.pres.p1, &self.m, &self.basis, coords)
    }

    /// Every coordinate vector, little-endian counter order.
    pub fn all_classes(&self, alg: &QuiverAlgebra, cap: u64) -> Result<Vec<Vec<u32>>> {
        let k = alg.field();
        let total = k
            .pow_count(self.dim())
            .filter(|&n| n <= cap)
            .ok_or(Error::CapExceeded { what: "Ext class enumeration", cap })?;
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u32; self.dim()];
        for _ in 0..total {
            out.push(digits.clone());
            linalg::increment(&mut digits, k.p());
        }
        Ok(out)
    }

    /// Coordinates of a cocycle modulo coboundaries.
    pub fn coordinates(&self, alg: &QuiverAlgebra, cocycle: &Mor) -> Result<Vec<u32>> {
        let k = alg.field();
        let len = self.boundaries.rows();
        let basis = flat_columns(&self.basis, len);
        let sys = self.boundaries.hstack(&basis);
        let sol = sys.solve(k, &cocycle.flatten())?;
        Ok(sol[self.boundaries.cols()..].to_vec())
    }

    pub fn middle_term(&self, alg: &QuiverAlgebra, coords: &[u32]) -> Extension {
        alg.pushout_extension(&self.pres, &self.m, &self.cocycle(alg, coords))
    }

    /// Recovers the class of an arbitrary short exact sequence
    /// `0 -> M -> E -> Z -> 0`: lift `aug` through `proj` to `g`, then
    /// `g ∘ d` factors through `incl` as a cocycle.
    pub fn class_of(&self, alg: &QuiverAlgebra, ext: &Extension) -> Result<Vec<u32>> {
        let k = alg.field();
        let pres = &self.pres;
        let hom = alg.hom_basis(&pres.p0, &ext.e);
        let len = flat_len(&pres.p0, &self.z);
        let images: Vec<Mor> = hom.iter().map(|g| ext.proj.after(k, g)).collect();
        let lam = flat_columns(&images, len).solve(k, &pres.aug.flatten())?;
        let g = Mor::combination(k, &pres.p0, &ext.e, &hom, &lam);
        let gd = g.after(k, &pres.d);
        let comps = ext
            .incl
            .comps
            .iter()
            .zip(&gd.comps)
            .map(|(i, x)| i.solve_matrix(k, x))
            .collect::<Result<Vec<_>>>()?;
        self.coordinates(alg, &Mor { comps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraFamily;
    use crate::linalg::Field;

    fn alg(f: AlgebraFamily) -> QuiverAlgebra {
        QuiverAlgebra::builtin(f, Field::new(2).unwrap())
    }

    #[test]
    fn hom_examples() {
        let a = alg(AlgebraFamily::LinearA(2));
        let (p1, s1) = (a.projective(0), a.simple(0));
        assert_eq!(a.hom_dim(&p1, &s1), 1);
        assert_eq!(a.hom_dim(&s1, &p1), 0);
        assert_eq!(a.hom_dim(&p1, &Rep::zero(&a)), 0);
        for f in a.hom_basis(&p1, &p1) {
            assert!(a.is_valid_mor(&p1, &p1, &f));
        }
    }

    #[test]
    fn presentation_examples() {
        let a = alg(AlgebraFamily::LinearA(2));
        let p1 = a.projective(0);
        let pr = a.minimal_projective_presentation(&p1);
        assert!(pr.p1.is_zero());
        assert_eq!(pr.p0, p1);
        assert!(pr.d.is_zero());

        let pr = a.minimal_projective_presentation(&a.simple(0));
        assert_eq!((pr.p0_tops.as_slice(), pr.p1_tops.as_slice()), (&[0][..], &[1][..]));
        assert!(pr.d.is_mono(a.field()));
        assert!(a.is_valid_mor(&pr.p1, &pr.p0, &pr.d));

        let pr = a.minimal_projective_presentation(&Rep::zero(&a));
        assert!(pr.p0.is_zero() && pr.p1.is_zero());
    }

    #[test]
    fn ext_examples() {
        let a = alg(AlgebraFamily::LinearA(2));
        let (s1, s2, p1) = (a.simple(0), a.simple(1), a.projective(0));
        assert_eq!(a.ext_dim(&s1, &s2), 1);
        assert_eq!(a.ext_dim(&s2, &s1), 0);
        assert_eq!(a.ext_dim(&p1, &s2), 0);
        assert_eq!(a.ext_dim(&p1, &s1), 0);
    }

    #[test]
    fn middle_term_examples() {
        let a = alg(AlgebraFamily::LinearA(2));
        let (s1, s2, p1) = (a.simple(0), a.simple(1), a.projective(0));
        let ext = a.ext_space(&s1, &s2);
        let split = ext.middle_term(&a, &[0]);
        assert!(a.is_isomorphic(&split.e, &a.direct_sum(&s1, &s2)).unwrap());
        assert!(a.is_split(&s1, &split));
        let nonsplit = ext.middle_term(&a, &[1]);
        assert!(a.is_isomorphic(&nonsplit.e, &p1).unwrap());
        assert!(!a.is_split(&s1, &nonsplit));
        assert_eq!(ext.class_of(&a, &nonsplit).unwrap(), vec![1]);

        let zero = Rep::zero(&a);
        let ext = a.ext_space(&s1, &zero);
        assert_eq!(ext.dim(), 0);
        assert!(a.is_isomorphic(&ext.middle_term(&a, &[]).e, &s1).unwrap());
    }

    #[test]
    fn nakayama_ext() {
        let a = alg(AlgebraFamily::CyclicNakayama { n: 3, l: 2 });
        let s: Vec<Rep> = (0..3).map(|v| a.simple(v)).collect();
        for i in 0..3 {
            for j in 0..3 {
                let expected = usize::from(j == (i + 1) % 3);
                assert_eq!(a.ext_dim(&s[i], &s[j]), expected, "Ext(S{i}, S{j})");
            }
        }
        // Projectives are injective here. The naive cokernel of
        // Hom(P0, P(2)) -> Hom(P1, P(2)) for Z = S1 is one-dimensional; only
        // cocycles vanishing on ker d give the right answer.
        for z in &s {
            for v in 0..3 {
                assert_eq!(a.ext_dim(z, &a.projective(v)), 0);
            }
        }
    }
}
