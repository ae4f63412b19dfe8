//! Enumeration of indecomposable modules up to isomorphism by knitting along
//! simple submodules, plus a closed-form list for uniserial algebras.

use rayon::prelude::*;

use crate::algebra::{AlgebraFamily, QuiverAlgebra};
use crate::error::{Error, Result};
use crate::homext::{ExtSpace, Presentation};
use crate::linalg::{self, Mat};
use crate::rep::{Mor, Rep};

/// Indecomposables in canonical order (total dimension, dimension vector,
/// matrix entries). The position of a module is its stable id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndList {
    items: Vec<Rep>,
    complete: bool,
    bound: usize,
}

impl IndList {
    /// Sorts the items canonically; callers guarantee pairwise non-isomorphic
    /// indecomposables.
    pub fn new(mut items: Vec<Rep>, complete: bool, bound: usize) -> Self {
        items.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        IndList { items, complete, bound }
    }

    pub fn items(&self) -> &[Rep] {
        &self.items
    }

    pub fn get(&self, id: usize) -> &Rep {
        &self.items[id]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// True when the list is certified to contain every indecomposable.
    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Id of the item isomorphic to the indecomposable `x`.
    pub fn find(&self, alg: &QuiverAlgebra, x: &Rep) -> Option<usize> {
        self.items
            .iter()
            .position(|y| y.dims() == x.dims() && alg.is_isomorphic_indecomposable(x, y))
    }

    /// Ids of the indecomposable summands of `x` (with multiplicity, sorted).
    pub fn summand_ids(&self, alg: &QuiverAlgebra, x: &Rep) -> Result<Vec<usize>> {
        let mut ids = alg
            .decompose(x)?
            .iter()
            .map(|y| self.find(alg, y).ok_or(Error::NotInAmbient))
            .collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        Ok(ids)
    }
}

/// Indecomposable `E` with `dim E = n`, a simple submodule `S` and
/// `E/S = ⊕ Q_i^{m_i}` is the middle term of a class whose component in each
/// isotypic block has rank `m_i`; otherwise a copy of some `Q_i` splits off.
/// So `m_i <= dim Ext¹(Q_i, S)`, each `Q_i` has `Ext¹(Q_i, S) != 0`, and up
/// to automorphisms of `Q_i^{m_i}` the block is an echelon basis of an
/// `m_i`-dimensional subspace of `Ext¹(Q_i, S)`.
struct Block {
    item: usize,
    mult: usize,
}

/// Enumerates indecomposables of total dimension at most `bound`.
///
/// The list is flagged complete when no indecomposable can exist beyond the
/// bound: a smallest counterexample `E` would have all summands of `E/S` in
/// the list, so `dim E <= 1 + Σ_Q dim Q · dim Ext¹(Q, S)` for some simple `S`.
pub fn enumerate_indecomposables(alg: &QuiverAlgebra, bound: usize) -> Result<IndList> {
    let n = alg.num_vertices();
    let simples: Vec<Rep> = (0..n).map(|v| alg.simple(v)).collect();
    let mut found: Vec<Rep> = simples.clone();
    // ext[i][v] = Ext¹(found[i], S_v)
    let mut ext: Vec<Vec<ExtSpace>> = Vec::new();
    let mut pres: Vec<Presentation> = Vec::new();
    let extend_caches = |found: &[Rep], ext: &mut Vec<Vec<ExtSpace>>, pres: &mut Vec<Presentation>| {
        let fresh: Vec<(Vec<ExtSpace>, Presentation)> = found[ext.len()..]
            .par_iter()
            .map(|q| {
                let spaces = simples.iter().map(|s| alg.ext_space(q, s)).collect::<Vec<_>>();
                let p = spaces[0].pres.clone();
                (spaces, p)
            })
            .collect();
        for (e, p) in fresh {
            ext.push(e);
            pres.push(p);
        }
    };
    extend_caches(&found, &mut ext, &mut pres);

    for dim in 2..=bound {
        let mut jobs: Vec<(usize, Vec<Block>)> = Vec::new();
        for v in 0..n {
            let usable: Vec<usize> = (0..found.len()).filter(|&i| ext[i][v].dim() > 0).collect();
            for blocks in multisets(&found, &ext, v, &usable, dim - 1) {
                jobs.push((v, blocks));
            }
        }
        let candidates: Vec<Rep> = jobs
            .par_iter()
            .map(|(v, blocks)| knit(alg, &ext, &pres, &simples[*v], *v, blocks))
            .collect::<Result<Vec<Vec<Rep>>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut classes: Vec<Rep> = Vec::new();
        for c in candidates {
            match classes.iter().position(|r| r.dims() == c.dims() && alg.is_isomorphic_indecomposable(r, &c)) {
                Some(i) => {
                    if c.canonical_key() < classes[i].canonical_key() {
                        classes[i] = c;
                    }
                }
                None => classes.push(c),
            }
        }
        classes.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        found.extend(classes);
        extend_caches(&found, &mut ext, &mut pres);
    }

    let needed = (0..n)
        .map(|v| 1 + (0..found.len()).map(|i| found[i].total_dim() * ext[i][v].dim()).sum::<usize>())
        .max()
        .unwrap_or(0);
    Ok(IndList::new(found, needed <= bound, bound))
}

/// Like [`enumerate_indecomposables`] but fails unless the result is complete.
pub fn enumerate_complete(alg: &QuiverAlgebra, bound: usize) -> Result<IndList> {
    let list = enumerate_indecomposables(alg, bound)?;
    if list.complete() {
        Ok(list)
    } else {
        Err(Error::BoundExceeded(bound))
    }
}

/// Multisets of usable items, of total dimension `target`, with multiplicity
/// at most the Ext dimension against `S_v`.
fn multisets(found: &[Rep], ext: &[Vec<ExtSpace>], v: usize, usable: &[usize], target: usize) -> Vec<Vec<Block>> {
    fn go(
        found: &[Rep],
        ext: &[Vec<ExtSpace>],
        v: usize,
        usable: &[usize],
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<Block>>,
    ) {
        if left == 0 {
            out.push(cur.iter().map(|&(item, mult)| Block { item, mult }).collect());
            return;
        }
        for j in start..usable.len() {
            let i = usable[j];
            let d = found[i].total_dim();
            let max = ext[i][v].dim().min(left / d);
            for m in 1..=max {
                cur.push((i, m));
                go(found, ext, v, usable, j + 1, left - m * d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(found, ext, v, usable, 0, target, &mut Vec::new(), &mut out);
    out
}

/// Middle terms of the admissible classes in `Ext¹(⊕ Q_i^{m_i}, S_v)` that
/// are indecomposable.
fn knit(
    alg: &QuiverAlgebra,
    ext: &[Vec<ExtSpace>],
    pres: &[Presentation],
    s: &Rep,
    v: usize,
    blocks: &[Block],
) -> Result<Vec<Rep>> {
    let k = alg.field();
    let mut summands: Vec<usize> = Vec::new();
    let mut choices: Vec<Vec<Mat>> = Vec::new();
    for b in blocks {
        summands.extend(std::iter::repeat_n(b.item, b.mult));
        choices.push(linalg::enumerate_subspaces(k, ext[b.item][v].dim(), b.mult, linalg::DEFAULT_SUBSPACE_CAP)?);
    }
    let parts: Vec<&Presentation> = summands.iter().map(|&i| &pres[i]).collect();
    let sum_pres = alg.presentation_sum(&parts);

    let mut out = Vec::new();
    let mut pick = vec![0usize; blocks.len()];
    loop {
        // cocycle on ⊕ P1(Q_j), one column block per copy
        let mut pieces: Vec<Mor> = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            let sub = &choices[bi][pick[bi]];
            for copy in 0..b.mult {
                pieces.push(ext[b.item][v].cocycle(alg, &sub.column(copy)));
            }
        }
        let cocycle = Mor {
            comps: (0..alg.num_vertices())
                .map(|w| pieces.iter().fold(Mat::zeros(s.dims()[w], 0), |acc, c| acc.hstack(&c.comps[w])))
                .collect(),
        };
        let e = alg.pushout_extension(&sum_pres, s, &cocycle).e;
        if alg.is_indecomposable(&e)? {
            out.push(e);
        }
        // advance the mixed-radix counter over block choices
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(out);
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Truncated projectives `P(v)/rad^k P(v)` for an algebra in which every
/// vertex has at most one outgoing arrow; there these are all the
/// indecomposables.
pub fn closed_form_indecomposables(family: AlgebraFamily, alg: &QuiverAlgebra) -> Result<IndList> {
    if family == AlgebraFamily::Kronecker {
        return Err(Error::UnsupportedFamily(family.to_string()));
    }
    let mut items = Vec::new();
    for v in 0..alg.num_vertices() {
        let p = alg.projective(v);
        let max_len = alg.paths().iter().filter(|q| q.start == v).map(|q| q.len()).max().unwrap_or(0);
        for len in 1..=max_len + 1 {
            // rad^len is spanned by the basis paths of length >= len
            let bases: Vec<Mat> = (0..alg.num_vertices())
                .map(|w| {
                    let basis = alg.paths_between(v, w);
                    let cols: Vec<Vec<u32>> = basis
                        .iter()
                        .enumerate()
                        .filter(|&(_, &pi)| alg.paths()[pi].len() >= len)
                        .map(|(r, _)| {
                            let mut e = vec![0u32; basis.len()];
                            e[r] = 1;
                            e
                        })
                        .collect();
                    Mat::from_columns(basis.len(), &cols)
                })
                .collect();
            items.push(alg.quotient_by(&p, &bases).0);
        }
    }
    let bound = items.iter().map(Rep::total_dim).max().unwrap_or(0);
    Ok(IndList::new(items, true, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn alg(f: AlgebraFamily) -> QuiverAlgebra {
        QuiverAlgebra::builtin(f, Field::new(2).unwrap())
    }

    fn same_classes(a: &QuiverAlgebra, x: &IndList, y: &IndList) -> bool {
        x.len() == y.len() && x.items().iter().all(|m| y.find(a, m).is_some())
    }

    #[test]
    fn a2_knitting() {
        let a = alg(AlgebraFamily::LinearA(2));
        let ind = enumerate_indecomposables(&a, 4).unwrap();
        assert_eq!(ind.len(), 3);
        assert!(ind.complete());
        assert_eq!(ind.get(0).dims(), &[0, 1]);
        assert_eq!(ind.get(1).dims(), &[1, 0]);
        assert_eq!(ind.get(2).dims(), &[1, 1]);
    }

    #[test]
    fn a3_knitting_matches_closed_form() {
        let f = AlgebraFamily::LinearA(3);
        let a = alg(f);
        let ind = enumerate_indecomposables(&a, 6).unwrap();
        assert_eq!(ind.len(), 6);
        assert!(ind.complete());
        assert!(same_classes(&a, &ind, &closed_form_indecomposables(f, &a).unwrap()));
    }

    #[test]
    fn nakayama_knitting_matches_closed_form() {
        let f = AlgebraFamily::CyclicNakayama { n: 3, l: 2 };
        let a = alg(f);
        let ind = enumerate_indecomposables(&a, 4).unwrap();
        assert!(ind.complete());
        assert!(same_classes(&a, &ind, &closed_form_indecomposables(f, &a).unwrap()));
    }

    #[test]
    fn kronecker_slice() {
        let a = alg(AlgebraFamily::Kronecker);
        let ind = enumerate_indecomposables(&a, 7).unwrap();
        assert!(!ind.complete());
        for k in 0..=3usize {
            let n = ind.items().iter().filter(|m| m.dims() == [k, k + 1]).count();
            assert_eq!(n, 1, "preprojective of dim ({k},{})", k + 1);
            let n = ind.items().iter().filter(|m| m.dims() == [k + 1, k]).count();
            assert_eq!(n, 1, "preinjective of dim ({},{k})", k + 1);
        }
        // regular simples of dim (1,1): one per point of P^1(F_2)
        assert_eq!(ind.items().iter().filter(|m| m.dims() == [1, 1]).count(), 3);
        // (2,2): three rank-2 tube modules and one degree-2 point; (3,3): three
        // rank-3 tube modules and two degree-3 points
        assert_eq!(ind.items().iter().filter(|m| m.dims() == [2, 2]).count(), 4);
        assert_eq!(ind.items().iter().filter(|m| m.dims() == [3, 3]).count(), 5);
        assert_eq!(ind.len(), 20);
    }

    #[test]
    fn closed_form_counts() {
        let f = AlgebraFamily::LinearA(2);
        assert_eq!(closed_form_indecomposables(f, &alg(f)).unwrap().len(), 3);
        let f = AlgebraFamily::CyclicNakayama { n: 3, l: 2 };
        assert_eq!(closed_form_indecomposables(f, &alg(f)).unwrap().len(), 6);
        let f = AlgebraFamily::Kronecker;
        assert!(closed_form_indecomposables(f, &alg(f)).is_err());
    }

    #[test]
    fn low_bound_is_incomplete() {
        let a = alg(AlgebraFamily::LinearA(3));
        let ind = enumerate_indecomposables(&a, 2).unwrap();
        assert!(!ind.complete());
        assert_eq!(ind.len(), 5);
        assert!(matches!(enumerate_complete(&a, 2), Err(Error::BoundExceeded(2))));
    }
}
