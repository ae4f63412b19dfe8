//! The lattice of torsion classes of a complete ambient: Hasse covers,
//! brick labels, mutation between nested pairs and the comparison of
//! covers with irreducible silting mutation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::ModuleJson;
use crate::silting::{silting_from_torsion_class, SiltingObject};
use crate::torsion::{Ambient, IndSet, TorsionPair};

/// Largest ambient accepted by [`enumerate_torsion_classes`].
pub const LATTICE_ITEM_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    /// Ambient id of the brick labelling the cover.
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsLattice {
    classes: Vec<IndSet>,
    covers: Vec<Cover>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationVerdict {
    pub is_mutation: bool,
    pub s_set: IndSet,
    pub semibrick: IndSet,
    pub is_irreducible: bool,
    /// Agreement of the semibrick with the almost torsion and almost
    /// torsion-free objects; `None` when the ambient is a bounded slice.
    pub consistent: Option<bool>,
}

/// Extremal ends of the mutation intervals at a fixed class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalEnds {
    pub ends: Vec<usize>,
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightMutations {
    /// Subsets of the almost torsion objects and the class each produces.
    pub entries: Vec<(IndSet, usize)>,
    pub all_mutations: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub lower: usize,
    pub upper: usize,
    pub nested: bool,
    pub cover: bool,
    pub irreducible: bool,
    pub one_exchange: bool,
    pub singleton_brick: bool,
}

impl PairReport {
    pub fn agrees(&self) -> bool {
        self.cover == self.irreducible && self.cover == self.one_exchange && self.cover == self.singleton_brick
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCReport {
    pub pairs: usize,
    pub nested: usize,
    pub covers: usize,
    pub violations: Vec<PairReport>,
}

impl std::fmt::Display for TheoremCReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} class pairs ({} nested), {} covers, {} violations",
            self.pairs,
            self.nested,
            self.covers,
            self.violations.len()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriplesReport {
    pub nested: usize,
    pub round_trip_failures: Vec<(usize, usize)>,
    pub invariant_failures: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub ambient: Vec<ModuleJson>,
    pub classes: Vec<IndSet>,
    /// `order[i]` lists the classes containing class `i`.
    pub order: Vec<Vec<usize>>,
    pub covers: Vec<Cover>,
}

/// Breadth-first from `∅`, adding `gen(T ∪ {i})` for every class `T` and
/// item `i ∉ T`. Every class `T` is reached: adding its members one at a
/// time gives a chain of classes ending in `gen(T) = T`.
pub fn enumerate_torsion_classes(amb: &Ambient) -> Result<TorsLattice> {
    if !amb.ind().complete() {
        return Err(Error::AmbientIncomplete);
    }
    if amb.len() > LATTICE_ITEM_CAP {
        return Err(Error::CapExceeded { what: "lattice ambient size", cap: LATTICE_ITEM_CAP as u64 });
    }
    let bottom = amb.gen_closure(&IndSet::empty())?;
    let mut seen: BTreeSet<IndSet> = BTreeSet::from([bottom.clone()]);
    let mut queue = VecDeque::from([bottom]);
    while let Some(t) = queue.pop_front() {
        let grown = (0..amb.len())
            .into_par_iter()
            .filter(|&i| !t.contains(i))
            .map(|i| amb.gen_closure(&t.with(i)))
            .collect::<Result<Vec<_>>>()?;
        for g in grown {
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    let mut classes: Vec<IndSet> = seen.into_iter().collect();
    classes.sort_by(|a, b| (a.len(), a.ids()).cmp(&(b.len(), b.ids())));
    let n = classes.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && classes[i].is_subset(&classes[j]))
        .filter(|&(i, j)| {
            !(0..n).any(|k| {
                k != i && k != j && classes[i].is_subset(&classes[k]) && classes[k].is_subset(&classes[j])
            })
        })
        .collect();
    let covers = pairs
        .par_iter()
        .map(|&(lower, upper)| {
            let label = label_of(amb, &classes[lower], &classes[upper])?;
            Ok(Cover { lower, upper, label })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TorsLattice { classes, covers })
}

fn label_of(amb: &Ambient, lower: &IndSet, upper: &IndSet) -> Result<usize> {
    let s = upper.intersection(&amb.perp_torsionfree(lower));
    let check = amb.semibrick_wide_check(&s)?;
    if !check.wide || check.simples.len() != 1 {
        return Err(Error::NoBrickLabel);
    }
    Ok(check.simples.ids()[0])
}

impl TorsLattice {
    pub fn classes(&self) -> &[IndSet] {
        &self.classes
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn position(&self, t: &IndSet) -> Option<usize> {
        self.classes.iter().position(|c| c == t)
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.covers.iter().any(|c| c.lower == lower && c.upper == upper)
    }

    /// Brick labelling the cover `lower ⊂ upper`: the single simple object of
    /// the wide subcategory `upper ∩ lower^⊥`.
    pub fn brick_label(&self, lower: &IndSet, upper: &IndSet) -> Result<usize> {
        let (i, j) = (self.position(lower), self.position(upper));
        match (i, j) {
            (Some(i), Some(j)) => self
                .covers
                .iter()
                .find(|c| c.lower == i && c.upper == j)
                .map(|c| c.label)
                .ok_or(Error::NotACover),
            _ => Err(Error::NotACover),
        }
    }

    /// Largest class inside `classes[i] ∩ classes[j]`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let common = self.classes[i].intersection(&self.classes[j]);
        (0..self.len())
            .filter(|&k| self.classes[k].is_subset(&common))
            .max_by_key(|&k| self.classes[k].len())
            .expect("the bottom class lies in every class")
    }

    /// `gen(classes[i] ∪ classes[j])`.
    pub fn join(&self, amb: &Ambient, i: usize, j: usize) -> Result<usize> {
        let g = amb.gen_closure(&self.classes[i].union(&self.classes[j]))?;
        self.position(&g).ok_or(Error::NotATorsionClass)
    }

    /// Meets are intersections, joins are least upper bounds, for all pairs.
    pub fn check_lattice_laws(&self, amb: &Ambient) -> Result<bool> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let m = self.meet(i, j);
                if self.classes[m] != self.classes[i].intersection(&self.classes[j]) {
                    return Ok(false);
                }
                let u = self.join(amb, i, j)?;
                let ub = |k: usize| self.classes[i].is_subset(&self.classes[k]) && self.classes[j].is_subset(&self.classes[k]);
                if !ub(u) || !(0..n).filter(|&k| ub(k)).all(|k| self.classes[u].is_subset(&self.classes[k])) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_dot(&self, amb: &Ambient) -> String {
        let mut out = String::from("digraph tors {\n  rankdir=BT;\n");
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{c}\"];");
        }
        for c in &self.covers {
            let dims: Vec<String> = amb.item(c.label).dims().iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  n{} -> n{} [label=\"({})\"];", c.lower, c.upper, dims.join(","));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, amb: &Ambient) -> LatticeJson {
        let alg = amb.alg();
        LatticeJson {
            ambient: amb.ind().items().iter().map(|x| alg.rep_to_json(x)).collect(),
            classes: self.classes.clone(),
            order: (0..self.len())
                .map(|i| (0..self.len()).filter(|&j| self.classes[i].is_subset(&self.classes[j])).collect())
                .collect(),
            covers: self.covers.clone(),
        }
    }
}

/// Decides whether `t` is a mutation of `u`: the class `T ∩ V` of modules
/// between them must be wide. The mutation is irreducible when that class has
/// a single simple object.
pub fn check_mutation(amb: &Ambient, u: &TorsionPair, t: &TorsionPair) -> Result<MutationVerdict> {
    if !u.t.is_subset(&t.t) {
        return Err(Error::NotNested);
    }
    let s_set = t.t.intersection(&u.f);
    let (is_mutation, semibrick) = match amb.semibrick_wide_check(&s_set) {
        Ok(w) => (w.wide, if w.wide { w.simples } else { IndSet::empty() }),
        Err(Error::NotExtensionClosed) => (false, IndSet::empty()),
        Err(e) => return Err(e),
    };
    let consistent = if amb.ind().complete() && is_mutation {
        let a = amb.almost_torsion_objects(u)?.intersection(&t.t);
        let b = amb.almost_torsionfree_objects(t)?.intersection(&u.f);
        Some(a == semibrick && b == semibrick)
    } else {
        None
    };
    Ok(MutationVerdict { is_mutation, is_irreducible: is_mutation && semibrick.len() == 1, s_set, semibrick, consistent })
}

fn extremal(lat: &TorsLattice, cands: Vec<usize>, top: bool) -> IntervalEnds {
    let c = lat.classes();
    let beyond = |a: usize, b: usize| if top { c[a].is_subset(&c[b]) } else { c[b].is_subset(&c[a]) };
    let ends: Vec<usize> =
        cands.iter().copied().filter(|&a| !cands.iter().any(|&b| b != a && beyond(a, b))).collect();
    IntervalEnds { unique: ends.len() == 1, ends }
}

/// Maximal classes `T ⊇ classes[u]` that are mutations of it.
pub fn mutation_interval_top(amb: &Ambient, lat: &TorsLattice, u: usize) -> Result<IntervalEnds> {
    if !amb.ind().complete() {
        return Err(Error::AmbientIncomplete);
    }
    let up = amb.torsion_pair(&lat.classes()[u]);
    let mut cands = Vec::new();
    for (j, c) in lat.classes().iter().enumerate() {
        if up.t.is_subset(c) && check_mutation(amb, &up, &amb.torsion_pair(c))?.is_mutation {
            cands.push(j);
        }
    }
    Ok(extremal(lat, cands, true))
}

/// Minimal classes `U ⊆ classes[t]` of which it is a mutation.
pub fn mutation_interval_bottom(amb: &Ambient, lat: &TorsLattice, t: usize) -> Result<IntervalEnds> {
    if !amb.ind().complete() {
        return Err(Error::AmbientIncomplete);
    }
    let tp = amb.torsion_pair(&lat.classes()[t]);
    let mut cands = Vec::new();
    for (j, c) in lat.classes().iter().enumerate() {
        if c.is_subset(&tp.t) && check_mutation(amb, &amb.torsion_pair(c), &tp)?.is_mutation {
            cands.push(j);
        }
    }
    Ok(extremal(lat, cands, false))
}

/// For each subset `M'` of the almost torsion objects of `classes[u]`, the
/// class `gen(U ∪ filt(M'))`.
pub fn right_mutations_of(amb: &Ambient, lat: &TorsLattice, u: usize) -> Result<RightMutations> {
    let up = amb.torsion_pair(&lat.classes()[u]);
    let m = amb.almost_torsion_objects(&up)?;
    let mut entries = Vec::new();
    let mut all_mutations = true;
    for mask in 0u64..(1u64 << m.len()) {
        let sub: IndSet = m.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, x)| x).collect();
        let g = amb.gen_closure(&up.t.union(&amb.filt_ids(&sub)?))?;
        let idx = lat.position(&g).ok_or(Error::NotATorsionClass)?;
        all_mutations &= check_mutation(amb, &up, &amb.torsion_pair(&g))?.is_mutation;
        entries.push((sub, idx));
    }
    let distinct: BTreeSet<usize> = entries.iter().map(|e| e.1).collect();
    Ok(RightMutations { injective: distinct.len() == entries.len(), entries, all_mutations })
}

/// Compares, for every unordered pair of distinct classes, the cover
/// relation with irreducible mutation, one-summand silting exchange and the
/// class between them being `filt` of a single brick.
pub fn verify_theorem_c(amb: &Ambient, lat: &TorsLattice) -> Result<TheoremCReport> {
    let alg = amb.alg();
    let silting: Vec<SiltingObject> = lat
        .classes()
        .par_iter()
        .map(|c| silting_from_torsion_class(amb, c))
        .collect::<Result<_>>()?;
    let n = lat.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let reports = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<PairReport> {
            let c = lat.classes();
            let (lower, upper) = if c[i].is_subset(&c[j]) { (i, j) } else { (j, i) };
            let nested = c[lower].is_subset(&c[upper]);
            let (_, a, b) = alg.exchange(&silting[lower], &silting[upper])?;
            let one_exchange = a.len() == 1 && b.len() == 1;
            let (mut irreducible, mut singleton_brick) = (false, false);
            if nested {
                let (u, t) = (amb.torsion_pair(&c[lower]), amb.torsion_pair(&c[upper]));
                let v = check_mutation(amb, &u, &t)?;
                irreducible = v.is_irreducible;
                for m in v.s_set.iter() {
                    if amb.is_brick(m)? && amb.filt_ids(&[m].into())? == v.s_set {
                        singleton_brick = true;
                        break;
                    }
                }
            }
            Ok(PairReport {
                lower,
                upper,
                nested,
                cover: nested && lat.is_cover(lower, upper),
                irreducible,
                one_exchange,
                singleton_brick,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremCReport {
        pairs: reports.len(),
        nested: reports.iter().filter(|r| r.nested).count(),
        covers: lat.covers().len(),
        violations: reports.into_iter().filter(|r| !r.agrees()).collect(),
    })
}

/// Round trip between nested pairs and filtration triples, and the triple
/// invariants, over all nested pairs of the lattice.
pub fn verify_triples(amb: &Ambient, lat: &TorsLattice) -> Result<TriplesReport> {
    let c = lat.classes();
    let nested: Vec<(usize, usize)> = (0..lat.len())
        .flat_map(|i| (0..lat.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| c[i].is_subset(&c[j]))
        .collect();
    let results = nested
        .par_iter()
        .map(|&(i, j)| -> Result<(bool, bool)> {
            let (u, t) = (amb.torsion_pair(&c[i]), amb.torsion_pair(&c[j]));
            let tr = amb.triple_from_pairs(&u, &t)?;
            let back = amb.pairs_from_triple(&tr)?;
            Ok((back == (u, t), amb.verify_triple(&tr)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let pick = |k: usize| -> Vec<(usize, usize)> {
        nested
            .iter()
            .zip(&results)
            .filter(|(_, r)| !if k == 0 { r.0 } else { r.1 })
            .map(|(p, _)| *p)
            .collect()
    };
    Ok(TriplesReport { nested: nested.len(), round_trip_failures: pick(0), invariant_failures: pick(1) })
}

/// `(⊥p, Cogen p)` evaluated on the ambient. On a bounded slice these are
/// membership predicates, not classes of the whole module category.
pub fn cogenerated_pair(amb: &Ambient, p: usize) -> TorsionPair {
    let alg = amb.alg();
    let target = amb.item(p);
    TorsionPair {
        t: (0..amb.len()).filter(|&i| alg.hom_dim(amb.item(i), target) == 0).collect(),
        f: (0..amb.len()).filter(|&i| amb.cogen_membership(amb.item(i), target)).collect(),
    }
}

/// Ambient id of the Kronecker preprojective with dimension vector
/// `(k, k + 1)`, so that `k = 0, 1` give `P(2)` and `P(1)`.
pub fn kronecker_preprojective(amb: &Ambient, k: usize) -> Result<usize> {
    (0..amb.len()).find(|&i| amb.item(i).dims() == [k, k + 1]).ok_or(Error::OutOfRange(k))
}

/// Brick labels of the covers at each class, for checking that covers
/// sharing an endpoint carry non-isomorphic labels.
pub fn labels_at_endpoints(lat: &TorsLattice) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in lat.covers() {
        out.entry(c.lower).or_default().push(c.label);
        out.entry(c.upper).or_default().push(c.label);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraFamily, Quiver, QuiverAlgebra};
    use crate::indec::{enumerate_indecomposables, IndList};
    use crate::linalg::Field;

    const S2: usize = 0;
    const S1: usize = 1;
    const P1: usize = 2;

    fn a2() -> (QuiverAlgebra, IndList) {
        let a = QuiverAlgebra::builtin(AlgebraFamily::LinearA(2), Field::new(2).unwrap());
        let ind = enumerate_indecomposables(&a, 4).unwrap();
        (a, ind)
    }

    #[test]
    fn a2_pentagon() {
        let (a, ind) = a2();
        let amb = Ambient::new(&a, &ind);
        let lat = enumerate_torsion_classes(&amb).unwrap();
        let expected: Vec<IndSet> = vec![
            IndSet::empty(),
            [S2].into(),
            [S1].into(),
            [S1, P1].into(),
            [S2, S1, P1].into(),
        ];
        assert_eq!(lat.classes(), &expected[..]);
        assert_eq!(lat.covers().len(), 5);
        assert_eq!(lat.brick_label(&IndSet::empty(), &[S1].into()).unwrap(), S1);
        assert_eq!(lat.brick_label(&[S1].into(), &[S1, P1].into()).unwrap(), P1);
        assert_eq!(lat.brick_label(&[S2].into(), &amb.all()).unwrap(), S1);
        assert_eq!(lat.brick_label(&IndSet::empty(), &amb.all()), Err(Error::NotACover));
        assert!(lat.check_lattice_laws(&amb).unwrap());
    }

    #[test]
    fn a3_and_trivial_counts() {
        let a = QuiverAlgebra::builtin(AlgebraFamily::LinearA(3), Field::new(2).unwrap());
        let ind = enumerate_indecomposables(&a, 6).unwrap();
        let amb = Ambient::new(&a, &ind);
        assert_eq!(enumerate_torsion_classes(&amb).unwrap().len(), 14);

        let q = Quiver::new::<&str>(&["1"], &[]).unwrap();
        let k = QuiverAlgebra::new::<&str>(q, &[], Field::new(2).unwrap()).unwrap();
        let ind = enumerate_indecomposables(&k, 2).unwrap();
        let amb = Ambient::new(&k, &ind);
        let lat = enumerate_torsion_classes(&amb).unwrap();
        assert_eq!(lat.len(), 2);
        assert_eq!(lat.covers(), &[Cover { lower: 0, upper: 1, label: 0 }]);
        assert_eq!(verify_theorem_c(&amb, &lat).unwrap().covers, 1);
    }

    #[test]
    fn incomplete_ambient_rejected() {
        let a = QuiverAlgebra::builtin(AlgebraFamily::LinearA(3), Field::new(2).unwrap());
        let ind = enumerate_indecomposables(&a, 2).unwrap();
        let amb = Ambient::new(&a, &ind);
        assert_eq!(enumerate_torsion_classes(&amb), Err(Error::AmbientIncomplete));
    }

    #[test]
    fn mutation_examples() {
        let (a, ind) = a2();
        let amb = Ambient::new(&a, &ind);
        let pair = |t: &[usize]| amb.torsion_pair(&t.iter().copied().collect());
        let v = check_mutation(&amb, &pair(&[S2]), &pair(&[S2, S1, P1])).unwrap();
        assert!(v.is_mutation && v.is_irreducible);
        assert_eq!(v.semibrick, [S1].into());
        assert_eq!(v.consistent, Some(true));
        let v = check_mutation(&amb, &pair(&[]), &pair(&[S1, P1])).unwrap();
        assert!(!v.is_mutation);
        let v = check_mutation(&amb, &pair(&[]), &pair(&[S2, S1, P1])).unwrap();
        assert!(v.is_mutation && !v.is_irreducible);
        assert_eq!(v.semibrick, [S2, S1].into());
        assert_eq!(check_mutation(&amb, &pair(&[S1]), &pair(&[S2])), Err(Error::NotNested));
    }

    #[test]
    fn interval_ends() {
        let (a, ind) = a2();
        let amb = Ambient::new(&a, &ind);
        let lat = enumerate_torsion_classes(&amb).unwrap();
        let top = lat.len() - 1;
        let at = |t: &[usize]| lat.position(&t.iter().copied().collect()).unwrap();
        assert_eq!(mutation_interval_top(&amb, &lat, at(&[S2])).unwrap(), IntervalEnds { ends: vec![top], unique: true });
        assert_eq!(mutation_interval_top(&amb, &lat, 0).unwrap(), IntervalEnds { ends: vec![top], unique: true });
        assert_eq!(mutation_interval_top(&amb, &lat, top).unwrap(), IntervalEnds { ends: vec![top], unique: true });
        assert_eq!(mutation_interval_bottom(&amb, &lat, top).unwrap(), IntervalEnds { ends: vec![0], unique: true });
    }

    #[test]
    fn right_mutation_examples() {
        let (a, ind) = a2();
        let amb = Ambient::new(&a, &ind);
        let lat = enumerate_torsion_classes(&amb).unwrap();
        let at = |t: &[usize]| lat.position(&t.iter().copied().collect()).unwrap();
        let r = right_mutations_of(&amb, &lat, 0).unwrap();
        let tops: Vec<usize> = r.entries.iter().map(|e| e.1).collect();
        assert_eq!(tops.len(), 4);
        assert!(r.all_mutations && r.injective);
        let mut sorted = tops.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, at(&[S2]), at(&[S1]), at(&[S2, S1, P1])]);

        let r = right_mutations_of(&amb, &lat, at(&[S2, S1, P1])).unwrap();
        assert_eq!(r.entries.len(), 1);

        let r = right_mutations_of(&amb, &lat, at(&[S1])).unwrap();
        assert_eq!(r.entries, vec![(IndSet::empty(), at(&[S1])), ([P1].into(), at(&[S1, P1]))]);
    }

    #[test]
    fn theorem_c_a2() {
        let (a, ind) = a2();
        let amb = Ambient::new(&a, &ind);
        let lat = enumerate_torsion_classes(&amb).unwrap();
        let r = verify_theorem_c(&amb, &lat).unwrap();
        assert_eq!(r.to_string(), "10 class pairs (8 nested), 5 covers, 0 violations");
        let t = verify_triples(&amb, &lat).unwrap();
        assert_eq!(t.nested, 5 + 8);
        assert!(t.round_trip_failures.is_empty() && t.invariant_failures.is_empty(), "{t:?}");
    }

    #[test]
    fn dot_shape() {
        let (a, ind) = a2();
        let amb = Ambient::new(&a, &ind);
        let lat = enumerate_torsion_classes(&amb).unwrap();
        let dot = lat.to_dot(&amb);
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("[label=\"{").count(), 5);
        assert_eq!(dot.matches(" -> ").count(), 5);
        assert!(dot.contains("n0 -> n2 [label=\"(1,0)\"]"));
    }
}
