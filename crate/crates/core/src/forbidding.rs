//! Forbidding systems: good/bad classifications of multisets where every good
//! `k`-multiset has exactly `c_k` bad one-element extensions.
//!
//! A system is an oracle over sorted multisets. The verifier classifies every
//! multiset of each size once, level by level, and checks the axioms against
//! that table.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numkit::{invert_product, product_falling, CVector};
use crate::qlinalg::{self, Coeff};
use crate::report::BoundReport;

pub type Element = u32;

/// Largest universe verified exhaustively by default.
pub const MAX_EXHAUSTIVE_UNIVERSE: usize = 64;
/// Largest `d` verified exhaustively by default.
pub const MAX_EXHAUSTIVE_D: usize = 5;

/// A classification of multisets over a finite universe into good and bad.
pub trait ForbiddingSystem: Sync {
    fn universe(&self) -> &[Element];
    fn d(&self) -> usize;
    /// The declared `(c_1, ..., c_{d-1})`.
    fn c_vector(&self) -> &CVector;
    /// Whether a sorted multiset of size at most `d` is bad.
    fn is_bad(&self, multiset: &[Element]) -> bool;
}

fn check_declaration(d: usize, c: &CVector) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("a forbidding system needs d >= 1"));
    }
    if c.len() != d - 1 {
        return Err(Error::invalid(format!(
            "c-vector has {} entries, d = {d} needs {}",
            c.len(),
            d - 1
        )));
    }
    Ok(())
}

/// Bad multisets are those with a repeated element.
#[derive(Clone, Debug)]
pub struct Repeats {
    universe: Vec<Element>,
    d: usize,
    c: CVector,
}

impl Repeats {
    /// The system on `0..n` with its true c-vector `(1, ..., d-1)`.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        Self::with_declared(n, d, CVector::repeats(d))
    }

    /// The same classification with an arbitrary declared c-vector.
    pub fn with_declared(n: usize, d: usize, c: CVector) -> Result<Self> {
        check_declaration(d, &c)?;
        Ok(Repeats {
            universe: (0..n as Element).collect(),
            d,
            c,
        })
    }
}

impl ForbiddingSystem for Repeats {
    fn universe(&self) -> &[Element] {
        &self.universe
    }

    fn d(&self) -> usize {
        self.d
    }

    fn c_vector(&self) -> &CVector {
        &self.c
    }

    fn is_bad(&self, multiset: &[Element]) -> bool {
        multiset.windows(2).any(|w| w[0] == w[1])
    }
}

/// Nonzero vectors of `F_q^n`, identified by [`qlinalg::vector_id`]; a
/// multiset is bad when it is linearly dependent.
#[derive(Clone, Debug)]
pub struct LinearDependence {
    q: Coeff,
    n: usize,
    d: usize,
    universe: Vec<Element>,
    c: CVector,
}

impl LinearDependence {
    pub fn new(q: Coeff, n: usize, d: usize) -> Result<Self> {
        qlinalg::check_field(q)?;
        if d > n + 1 {
            return Err(Error::invalid(format!("d = {d} exceeds n + 1 = {}", n + 1)));
        }
        let size = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > qlinalg::MAX_AMBIENT {
            return Err(Error::capacity("ambient space q^n", size as u128, qlinalg::MAX_AMBIENT as u128));
        }
        let c = CVector::qlinear(q as u64, d);
        check_declaration(d, &c)?;
        Ok(LinearDependence {
            q,
            n,
            d,
            universe: (1..size as Element).collect(),
            c,
        })
    }

    pub fn q(&self) -> Coeff {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vector(&self, e: Element) -> Vec<Coeff> {
        qlinalg::vector_from_id(e, self.q, self.n)
    }

    /// Nonzero elements of the span of the given elements.
    pub fn span_elements(&self, elements: &[Element]) -> Result<Vec<Element>> {
        let vectors = elements.iter().map(|&e| self.vector(e)).collect();
        let s = qlinalg::Subspace::span(self.q, self.n, vectors)?;
        Ok(s.element_ids().into_iter().filter(|&e| e != 0).collect())
    }
}

impl ForbiddingSystem for LinearDependence {
    fn universe(&self) -> &[Element] {
        &self.universe
    }

    fn d(&self) -> usize {
        self.d
    }

    fn c_vector(&self) -> &CVector {
        &self.c
    }

    fn is_bad(&self, multiset: &[Element]) -> bool {
        let vectors: Vec<Vec<Coeff>> = multiset.iter().map(|&e| self.vector(e)).collect();
        qlinalg::rank(self.q, &vectors) < multiset.len()
    }
}

/// A system given by an arbitrary classifier, used for experiments and for
/// checking that the verifier catches broken declarations.
pub struct CustomSystem<F> {
    universe: Vec<Element>,
    d: usize,
    c: CVector,
    classify: F,
}

impl<F: Fn(&[Element]) -> bool + Sync> CustomSystem<F> {
    pub fn new(universe: Vec<Element>, d: usize, c: CVector, classify: F) -> Result<Self> {
        check_declaration(d, &c)?;
        let mut universe = universe;
        universe.sort_unstable();
        universe.dedup();
        Ok(CustomSystem {
            universe,
            d,
            c,
            classify,
        })
    }
}

impl<F: Fn(&[Element]) -> bool + Sync> ForbiddingSystem for CustomSystem<F> {
    fn universe(&self) -> &[Element] {
        &self.universe
    }

    fn d(&self) -> usize {
        self.d
    }

    fn c_vector(&self) -> &CVector {
        &self.c
    }

    fn is_bad(&self, multiset: &[Element]) -> bool {
        (self.classify)(multiset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolationKind {
    /// A singleton was classified bad.
    BadSingleton,
    /// A bad multiset has a good extension.
    GoodExtensionOfBad { extension: Element },
    /// A good `k`-multiset has the wrong number of bad extensions.
    WrongExtensionCount { k: usize, declared: u64, found: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub multiset: Vec<Element>,
    pub kind: AxiomViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// False for spot checks: success then only means no counterexample was sampled.
    pub exhaustive: bool,
    /// Number of multisets whose axiom was checked.
    pub checked: u64,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomCap {
    pub universe: usize,
    pub d: usize,
}

impl Default for AxiomCap {
    fn default() -> Self {
        AxiomCap {
            universe: MAX_EXHAUSTIVE_UNIVERSE,
            d: MAX_EXHAUSTIVE_D,
        }
    }
}

/// Sorted multisets of size `k` over `items`, in lexicographic order.
fn multisets(items: &[Element], k: usize) -> Vec<Vec<Element>> {
    fn rec(items: &[Element], k: usize, start: usize, cur: &mut Vec<Element>, out: &mut Vec<Vec<Element>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

fn insert_sorted(multiset: &[Element], x: Element) -> Vec<Element> {
    let mut m = Vec::with_capacity(multiset.len() + 1);
    let pos = multiset.partition_point(|&y| y <= x);
    m.extend_from_slice(&multiset[..pos]);
    m.push(x);
    m.extend_from_slice(&multiset[pos..]);
    m
}

pub fn verify_axioms<S: ForbiddingSystem + ?Sized>(sys: &S) -> Result<AxiomReport> {
    verify_axioms_capped(sys, AxiomCap::default())
}

/// Exhaustive check of the forbidding axioms over every multiset of size
/// below `d`. Reports the first counterexample in lexicographic order.
pub fn verify_axioms_capped<S: ForbiddingSystem + ?Sized>(sys: &S, cap: AxiomCap) -> Result<AxiomReport> {
    let universe = sys.universe();
    let d = sys.d();
    if universe.len() > cap.universe {
        return Err(Error::capacity("universe for exhaustive verification", universe.len() as u128, cap.universe as u128));
    }
    if d > cap.d {
        return Err(Error::capacity("d for exhaustive verification", d as u128, cap.d as u128));
    }
    let c = sys.c_vector();
    let mut checked = 0u64;
    let mut level = multisets(universe, 1);
    if let Some(m) = level.iter().find(|m| sys.is_bad(m)) {
        return Ok(AxiomReport {
            exhaustive: true,
            checked: 1,
            violation: Some(AxiomViolation {
                multiset: m.clone(),
                kind: AxiomViolationKind::BadSingleton,
            }),
        });
    }
    let mut bad_here: HashSet<Vec<Element>> = HashSet::new();
    for k in 1..d {
        let next = multisets(universe, k + 1);
        let bad_next: HashSet<Vec<Element>> = next.par_iter().filter(|m| sys.is_bad(m)).cloned().collect();
        let declared = c.get(k);
        let violation = level.par_iter().find_map_first(|a| {
            if bad_here.contains(a) {
                universe
                    .iter()
                    .find(|&&x| !bad_next.contains(&insert_sorted(a, x)))
                    .map(|&x| AxiomViolationKind::GoodExtensionOfBad { extension: x })
            } else {
                let found = universe.iter().filter(|&&x| bad_next.contains(&insert_sorted(a, x))).count() as u64;
                (found != declared).then_some(AxiomViolationKind::WrongExtensionCount { k, declared, found })
            }
            .map(|kind| AxiomViolation {
                multiset: a.clone(),
                kind,
            })
        });
        if let Some(v) = violation {
            let pos = level.iter().position(|a| *a == v.multiset).unwrap_or(0);
            return Ok(AxiomReport {
                exhaustive: true,
                checked: checked + pos as u64 + 1,
                violation: Some(v),
            });
        }
        checked += level.len() as u64;
        level = next;
        bad_here = bad_next;
    }
    Ok(AxiomReport {
        exhaustive: true,
        checked,
        violation: None,
    })
}

/// Checks the axioms on `samples` random multisets of random size below `d`.
/// The report is never marked exhaustive.
pub fn spot_check_axioms<S: ForbiddingSystem + ?Sized>(sys: &S, samples: u64, seed: u64) -> AxiomReport {
    let universe = sys.universe();
    let d = sys.d();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport {
        exhaustive: false,
        checked: 0,
        violation: None,
    };
    if universe.is_empty() {
        return report;
    }
    for _ in 0..samples {
        let x = *universe.choose(&mut rng).unwrap_or(&0);
        if sys.is_bad(&[x]) {
            report.checked += 1;
            report.violation = Some(AxiomViolation {
                multiset: vec![x],
                kind: AxiomViolationKind::BadSingleton,
            });
            return report;
        }
        if d < 2 {
            report.checked += 1;
            continue;
        }
        let k = rng.gen_range(1..d);
        let mut a: Vec<Element> = (0..k).map(|_| *universe.choose(&mut rng).unwrap_or(&0)).collect();
        a.sort_unstable();
        report.checked += 1;
        let kind = if sys.is_bad(&a) {
            universe
                .iter()
                .find(|&&x| !sys.is_bad(&insert_sorted(&a, x)))
                .map(|&x| AxiomViolationKind::GoodExtensionOfBad { extension: x })
        } else {
            let found = universe.iter().filter(|&&x| sys.is_bad(&insert_sorted(&a, x))).count() as u64;
            let declared = sys.c_vector().get(k);
            (found != declared).then_some(AxiomViolationKind::WrongExtensionCount { k, declared, found })
        };
        if let Some(kind) = kind {
            report.violation = Some(AxiomViolation { multiset: a, kind });
            return report;
        }
    }
    report
}

/// Outcome of a compatibility check, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    /// A good multiset over the set and a bad extension outside it.
    pub witness: Option<(Vec<Element>, Element)>,
}

impl Compatibility {
    pub fn into_result(self) -> Result<()> {
        match self.witness {
            Some((multiset, element)) => Err(Error::Incompatible { multiset, element }),
            None => Ok(()),
        }
    }
}

fn normalize_set<S: ForbiddingSystem + ?Sized>(sys: &S, s: &[Element]) -> Result<Vec<Element>> {
    let mut s = s.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("compatible-set candidates must not repeat elements"));
    }
    let universe = sys.universe();
    if let Some(x) = s.iter().find(|x| universe.binary_search(x).is_err()) {
        return Err(Error::invalid(format!("element {x} is not in the universe")));
    }
    Ok(s)
}

/// Whether every bad extension of every good multiset over `s` stays in `s`.
pub fn is_compatible<S: ForbiddingSystem + ?Sized>(sys: &S, s: &[Element]) -> Result<Compatibility> {
    let s = normalize_set(sys, s)?;
    let outside: Vec<Element> = sys.universe().iter().copied().filter(|x| s.binary_search(x).is_err()).collect();
    for k in 1..sys.d() {
        for a in multisets(&s, k) {
            if sys.is_bad(&a) {
                continue;
            }
            if let Some(&x) = outside.iter().find(|&&x| sys.is_bad(&insert_sorted(&a, x))) {
                return Ok(Compatibility {
                    compatible: false,
                    witness: Some((a, x)),
                });
            }
        }
    }
    Ok(Compatibility {
        compatible: true,
        witness: None,
    })
}

/// A duplicate-free family of ordered tuples of one length, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleFamily {
    d: usize,
    tuples: Vec<Vec<Element>>,
}

impl TupleFamily {
    pub fn new(d: usize, mut tuples: Vec<Vec<Element>>) -> Result<Self> {
        if let Some(t) = tuples.iter().find(|t| t.len() != d) {
            return Err(Error::invalid(format!("tuple {t:?} does not have length {d}")));
        }
        tuples.sort_unstable();
        if let Some(w) = tuples.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("tuple {:?} appears twice", w[0])));
        }
        Ok(TupleFamily { d, tuples })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn tuples(&self) -> &[Vec<Element>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &[Element]) -> bool {
        self.tuples.binary_search_by(|x| x.as_slice().cmp(t)).is_ok()
    }
}

/// All ordered `d`-tuples over a compatible `s` whose multiset is good.
pub fn enumerate_sd<S: ForbiddingSystem + ?Sized>(sys: &S, s: &[Element]) -> Result<TupleFamily> {
    is_compatible(sys, s)?.into_result()?;
    let s = normalize_set(sys, s)?;
    let d = sys.d();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(d);
    let mut sorted = Vec::with_capacity(d);
    extend_good(sys, &s, d, &mut prefix, &mut sorted, &mut out);
    TupleFamily::new(d, out)
}

fn extend_good<S: ForbiddingSystem + ?Sized>(
    sys: &S,
    s: &[Element],
    d: usize,
    prefix: &mut Vec<Element>,
    sorted: &mut Vec<Element>,
    out: &mut Vec<Vec<Element>>,
) {
    if prefix.len() == d {
        out.push(prefix.clone());
        return;
    }
    for &x in s {
        let next = insert_sorted(sorted, x);
        // extensions of a bad multiset are bad, so bad prefixes are pruned
        if sys.is_bad(&next) {
            continue;
        }
        let saved = std::mem::replace(sorted, next);
        prefix.push(x);
        extend_good(sys, s, d, prefix, sorted, out);
        prefix.pop();
        *sorted = saved;
    }
}

/// Distinct `(d-1)`-prefixes of the tuples.
pub fn tuple_shadow(fam: &TupleFamily) -> Result<TupleFamily> {
    if fam.d == 0 {
        return Err(Error::precondition("the shadow of 0-tuples is undefined"));
    }
    let mut prefixes: Vec<Vec<Element>> = fam.tuples.iter().map(|t| t[..fam.d - 1].to_vec()).collect();
    prefixes.sort_unstable();
    prefixes.dedup();
    TupleFamily::new(fam.d - 1, prefixes)
}

#[derive(Clone, Debug)]
pub struct GeneralizedKkReport {
    pub family_size: usize,
    pub shadow_size: usize,
    pub t: f64,
    pub report: BoundReport,
}

/// Forms the union of the `S_i^(d)`, verifying they are pairwise disjoint,
/// and checks `|shadow| >= t(t-c_1)...(t-c_{d-2})` where
/// `|F| = t(t-c_1)...(t-c_{d-1})`.
pub fn check_generalized_kk<S: ForbiddingSystem + ?Sized>(sys: &S, sets: &[Vec<Element>]) -> Result<GeneralizedKkReport> {
    let d = sys.d();
    if d < 2 {
        return Err(Error::precondition("the generalized bound needs d >= 2"));
    }
    let mut owner: HashMap<Vec<Element>, usize> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        for t in enumerate_sd(sys, s)?.tuples {
            if let Some(&first) = owner.get(&t) {
                return Err(Error::NotDisjoint {
                    first,
                    second: i,
                    tuple: t,
                });
            }
            owner.insert(t, i);
        }
    }
    if owner.is_empty() {
        return Err(Error::precondition("the union of the S_i^(d) is empty"));
    }
    let family = TupleFamily::new(d, owner.into_keys().collect())?;
    let shadow = tuple_shadow(&family)?;
    let c = sys.c_vector();
    let t = invert_product(family.len() as f64, c, 0.0)?.t;
    let bound = product_falling(t, &c.without_last());
    let report = BoundReport::lower(
        "|shadow|",
        num_bigint::BigInt::from(shadow.len()),
        bound,
        "generalized Kruskal-Katona: t(t-c_1)...(t-c_{d-2})",
    )
    .with_parameter(t);
    Ok(GeneralizedKkReport {
        family_size: family.len(),
        shadow_size: shadow.len(),
        t,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling(s: u64, c: &CVector, from: usize) -> u64 {
        (from..c.len() + 1).map(|k| s - c.get(k)).product()
    }

    #[test]
    fn repeats_axioms() {
        let r = verify_axioms(&Repeats::new(5, 3).unwrap()).unwrap();
        assert!(r.is_valid() && r.exhaustive);
        let wrong = Repeats::with_declared(5, 3, CVector::new(vec![1, 1]).unwrap()).unwrap();
        let r = verify_axioms(&wrong).unwrap();
        let v = r.violation.unwrap();
        assert_eq!(
            v.kind,
            AxiomViolationKind::WrongExtensionCount { k: 2, declared: 1, found: 2 }
        );
        assert_eq!(v.multiset, vec![0, 1]);
    }

    #[test]
    fn linear_axioms() {
        let sys = LinearDependence::new(2, 3, 2).unwrap();
        assert_eq!(sys.universe().len(), 7);
        assert_eq!(sys.c_vector().entries(), &[1]);
        assert!(verify_axioms(&sys).unwrap().is_valid());
        let sys = LinearDependence::new(2, 3, 3).unwrap();
        assert!(verify_axioms(&sys).unwrap().is_valid());
        let sys = LinearDependence::new(3, 2, 2).unwrap();
        assert!(verify_axioms(&sys).unwrap().is_valid());
        assert!(matches!(LinearDependence::new(6, 2, 2), Err(Error::NotPrime(6))));
    }

    #[test]
    fn caps_refuse_large_systems() {
        let big = Repeats::new(65, 2).unwrap();
        assert!(matches!(verify_axioms(&big), Err(Error::Capacity { .. })));
        let deep = Repeats::new(6, 6).unwrap();
        assert!(matches!(verify_axioms(&deep), Err(Error::Capacity { .. })));
        let r = spot_check_axioms(&big, 200, 7);
        assert!(r.is_valid() && !r.exhaustive);
        assert_eq!(r.checked, 200);
    }

    #[test]
    fn spot_check_finds_gross_errors() {
        let wrong = Repeats::with_declared(4, 3, CVector::new(vec![2, 2]).unwrap()).unwrap();
        assert!(!spot_check_axioms(&wrong, 50, 1).is_valid());
    }

    #[test]
    fn mutation_is_detected() {
        let base = Repeats::new(4, 3).unwrap();
        let all: Vec<Vec<Element>> = (1..=3).flat_map(|k| multisets(base.universe(), k)).collect();
        for target in &all {
            let flipped = CustomSystem::new(base.universe().to_vec(), 3, CVector::repeats(3), |m: &[Element]| {
                base.is_bad(m) != (m == target.as_slice())
            })
            .unwrap();
            assert!(!verify_axioms(&flipped).unwrap().is_valid(), "flip of {target:?} went unnoticed");
        }
    }

    #[test]
    fn compatibility() {
        let rep = Repeats::new(6, 3).unwrap();
        assert!(is_compatible(&rep, &[0, 2, 5]).unwrap().compatible);
        assert!(is_compatible(&rep, &[]).unwrap().compatible);

        let lin = LinearDependence::new(2, 3, 3).unwrap();
        // a plane: 1 = 001, 2 = 010, 3 = 011
        let plane = lin.span_elements(&[1, 2]).unwrap();
        assert_eq!(plane, vec![1, 2, 3]);
        assert!(is_compatible(&lin, &plane).unwrap().compatible);
        let c = is_compatible(&lin, &[1, 2]).unwrap();
        assert!(!c.compatible);
        assert_eq!(c.witness, Some((vec![1, 2], 3)));
        assert!(is_compatible(&lin, &[9]).is_err());
    }

    #[test]
    fn sd_counts() {
        let rep = Repeats::new(8, 3).unwrap();
        assert_eq!(enumerate_sd(&rep, &[0, 1, 2, 3, 4]).unwrap().len(), 60);
        assert_eq!(enumerate_sd(&rep, &[0, 1, 2]).unwrap().len(), 6);
        assert_eq!(enumerate_sd(&rep, &[0, 1]).unwrap().len(), 0);

        let lin = LinearDependence::new(2, 4, 2).unwrap();
        let plane = lin.span_elements(&[1, 2]).unwrap();
        let sd = enumerate_sd(&lin, &plane).unwrap();
        assert_eq!(sd.len(), 6);
        let lin3 = LinearDependence::new(2, 3, 3).unwrap();
        assert!(matches!(enumerate_sd(&lin3, &[1, 2]), Err(Error::Incompatible { .. })));
    }

    #[test]
    fn sd_is_symmetric_and_obeys_prefix_counts() {
        let lin = LinearDependence::new(2, 4, 3).unwrap();
        let space = lin.span_elements(&[1, 2, 4]).unwrap();
        let sd = enumerate_sd(&lin, &space).unwrap();
        let c = lin.c_vector().clone();
        let size = space.len() as u64;
        assert_eq!(sd.len() as u64, falling(size, &c, 0));
        for t in sd.tuples() {
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                let mut u = t.clone();
                u.swap(i, j);
                assert!(sd.contains(&u));
            }
            for k in 1..=3 {
                let completions = sd.tuples().iter().filter(|u| u[..k] == t[..k]).count() as u64;
                assert_eq!(completions, falling(size, &c, k));
            }
        }
    }

    #[test]
    fn shadow_of_tuples() {
        let fam = TupleFamily::new(3, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(tuple_shadow(&fam).unwrap().tuples(), &[vec![0, 1]]);
        let rep = Repeats::new(3, 3).unwrap();
        let sd = enumerate_sd(&rep, &[0, 1, 2]).unwrap();
        assert_eq!(tuple_shadow(&sd).unwrap().len(), 6);
        assert!(tuple_shadow(&TupleFamily::new(2, vec![]).unwrap()).unwrap().is_empty());
        assert!(TupleFamily::new(1, vec![vec![0], vec![0]]).is_err());
    }

    #[test]
    fn generalized_kk_examples() {
        let rep = Repeats::new(6, 3).unwrap();
        let r = check_generalized_kk(&rep, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(r.family_size, 6);
        assert_eq!(r.t, 3.0);
        assert!(r.report.is_tight());

        let lin = LinearDependence::new(2, 4, 2).unwrap();
        let planes: Vec<Vec<Element>> = qlinalg::enumerate_subspaces(2, 4, 2)
            .unwrap()
            .iter()
            .map(|s| s.element_ids().into_iter().filter(|&e| e != 0).collect())
            .collect();
        let r = check_generalized_kk(&lin, &planes).unwrap();
        assert_eq!(r.family_size, 210);
        assert_eq!(r.t, 15.0);
        assert_eq!(r.shadow_size, 15);
        assert!(r.report.is_tight());

        assert!(matches!(
            check_generalized_kk(&rep, &[vec![0, 1, 2], vec![2, 1, 0]]),
            Err(Error::NotDisjoint { first: 0, second: 1, .. })
        ));
        assert!(check_generalized_kk(&rep, &[vec![0, 1]]).is_err());
    }
}
