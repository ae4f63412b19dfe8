//! Brute-force oracles shared by the integration tests. They enumerate
//! vectors and matrices directly and avoid the closure and filtration code
//! under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use torsmut::indec::IndList;
use torsmut::torsion::IndSet;
use torsmut::{Field, Mat, QuiverAlgebra, Rep};

pub fn f2() -> Field {
    Field::new(2).unwrap()
}

/// Every vector of `F_p^d`.
pub fn vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (0..p).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

/// Every subspace of `F_p^d`, each given as the set of its vectors.
pub fn subspaces(field: Field, d: usize) -> Vec<BTreeSet<Vec<u32>>> {
    let all = vectors(field.p(), d);
    let zero: BTreeSet<Vec<u32>> = [vec![0; d]].into();
    let mut found: BTreeSet<BTreeSet<Vec<u32>>> = [zero.clone()].into();
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for v in &all {
            if s.contains(v) {
                continue;
            }
            let mut grown = s.clone();
            for w in &s {
                for c in 1..field.p() {
                    grown.insert(w.iter().zip(v).map(|(&a, &b)| field.add(a, field.mul(c, b))).collect());
                }
            }
            if found.insert(grown.clone()) {
                frontier.push(grown);
            }
        }
    }
    found.into_iter().collect()
}

/// A basis, as matrix columns, of a subspace given by its vectors.
pub fn basis_of(field: Field, d: usize, s: &BTreeSet<Vec<u32>>) -> Mat {
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for v in s {
        let trial = [cols.clone(), vec![v.clone()]].concat();
        if Mat::from_columns(d, &trial).rank(field) == trial.len() {
            cols = trial;
        }
    }
    Mat::from_columns(d, &cols)
}

/// Every submodule of `x`, as per-vertex bases, by testing all tuples of
/// subspaces for invariance under the arrows.
pub fn brute_submodules(alg: &QuiverAlgebra, x: &Rep) -> Vec<Vec<Mat>> {
    let k = alg.field();
    let per_vertex: Vec<Vec<BTreeSet<Vec<u32>>>> = x.dims().iter().map(|&d| subspaces(k, d)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_vertex.len()];
    loop {
        let invariant = alg.arrows().iter().enumerate().all(|(ai, a)| {
            per_vertex[a.source][choice[a.source]]
                .iter()
                .all(|v| per_vertex[a.target][choice[a.target]].contains(&x.mats()[ai].mul_vec(k, v)))
        });
        if invariant {
            out.push(
                choice
                    .iter()
                    .enumerate()
                    .map(|(v, &c)| basis_of(k, x.dims()[v], &per_vertex[v][c]))
                    .collect(),
            );
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_vertex[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every valid representation with the given dimension vector.
pub fn reps_with_dims(alg: &QuiverAlgebra, dims: &[usize]) -> Vec<Rep> {
    let k = alg.field();
    let shapes: Vec<(usize, usize)> = alg.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    vectors(k.p(), total)
        .into_iter()
        .filter_map(|entries| {
            let mut at = 0;
            let mats = shapes
                .iter()
                .map(|&(r, c)| {
                    let m = Mat::from_vec(r, c, entries[at..at + r * c].to_vec());
                    at += r * c;
                    m
                })
                .collect();
            alg.rep(dims.to_vec(), mats).ok()
        })
        .collect()
}

/// Every valid representation of total dimension `1..=max_total`.
pub fn all_reps(alg: &QuiverAlgebra, max_total: usize) -> Vec<Rep> {
    let n = alg.num_vertices();
    let mut dims_list = vec![vec![]];
    for _ in 0..n {
        dims_list = dims_list
            .into_iter()
            .flat_map(|d: Vec<usize>| (0..=max_total).map(move |x| [d.clone(), vec![x]].concat()))
            .collect();
    }
    dims_list
        .into_iter()
        .filter(|d| (1..=max_total).contains(&d.iter().sum::<usize>()))
        .flat_map(|d| reps_with_dims(alg, &d))
        .collect()
}

/// Ambient ids of the indecomposable summands of `x`.
pub fn summand_ids(alg: &QuiverAlgebra, ind: &IndList, x: &Rep) -> Vec<usize> {
    alg.decompose(x)
        .unwrap()
        .iter()
        .map(|s| ind.find(alg, s).expect("summand lies in the ambient"))
        .collect()
}

/// Closed under quotients (by brute-force submodules) and under extensions
/// between sums of at most two members.
pub fn is_torsion_class_oracle(alg: &QuiverAlgebra, ind: &IndList, t: &BTreeSet<usize>) -> bool {
    for &m in t {
        let x = ind.get(m);
        for bases in brute_submodules(alg, x) {
            let q = alg.quotient_by(x, &bases).0;
            if !q.is_zero() && !summand_ids(alg, ind, &q).iter().all(|i| t.contains(i)) {
                return false;
            }
        }
    }
    let members: Vec<usize> = t.iter().copied().collect();
    let mut sums: Vec<Rep> = members.iter().map(|&i| ind.get(i).clone()).collect();
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a..] {
            sums.push(alg.direct_sum(ind.get(i), ind.get(j)));
        }
    }
    for z in &sums {
        for m in &sums {
            let space = alg.ext_space(z, m);
            for c in space.all_classes(alg, 1 << 12).unwrap() {
                let e = space.middle_term(alg, &c).e;
                if !summand_ids(alg, ind, &e).iter().all(|i| t.contains(i)) {
                    return false;
                }
            }
        }
    }
    true
}

/// All torsion classes among the `2^n` subsets of the ambient.
pub fn torsion_classes_oracle(alg: &QuiverAlgebra, ind: &IndList) -> Vec<BTreeSet<usize>> {
    (0u64..1 << ind.len())
        .map(|mask| (0..ind.len()).filter(|b| mask >> b & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|t| is_torsion_class_oracle(alg, ind, t))
        .collect()
}

/// Smallest oracle torsion class containing `x`.
pub fn closure_oracle(classes: &[BTreeSet<usize>], x: &BTreeSet<usize>) -> BTreeSet<usize> {
    classes.iter().filter(|c| x.is_subset(c)).min_by_key(|c| c.len()).cloned().unwrap()
}

pub fn to_indset(s: &BTreeSet<usize>) -> IndSet {
    s.iter().copied().collect()
}

/// `x ∈ filt(b)`: some nonzero submodule is isomorphic to a member of `b`
/// with quotient again in `filt(b)`.
pub fn filt_oracle(alg: &QuiverAlgebra, x: &Rep, b: &[Rep]) -> bool {
    if x.is_zero() {
        return true;
    }
    brute_submodules(alg, x).into_iter().any(|bases| {
        let (sub, _) = alg.sub_from_basis(x, &bases);
        !sub.is_zero()
            && b.iter().any(|m| alg.is_isomorphic(&sub, m).unwrap())
            && filt_oracle(alg, &alg.quotient_by(x, &bases).0, b)
    })
}

/// Number of `k`-dimensional subspaces of `F_q^n`, from the product formula.
pub fn gaussian_binomial(q: u64, n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}
