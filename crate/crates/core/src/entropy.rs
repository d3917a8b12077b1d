//! Exact finite joint distributions and the entropy inequalities checked
//! on them.
//!
//! Probabilities are stored as integer weights over one common denominator,
//! so every marginal is an exact rational. Logarithms appear only when an
//! entropy is evaluated, and all inequality checks use an absolute tolerance
//! of [`ENTROPY_TOLERANCE`].

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::SetFamily;
use crate::numkit::invert_binom;
use crate::report::BoundReport;

pub type Value = u32;

pub const ENTROPY_TOLERANCE: f64 = 1e-9;

/// Cap on the number of ordered tuples materialized from a set family.
pub const DEFAULT_TUPLE_CAP: u128 = 10_000_000;

/// A finite distribution over value tuples with exact rational probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDistribution {
    arity: usize,
    tuples: Vec<Vec<Value>>,
    weights: Vec<u128>,
    total: u128,
}

impl ExactDistribution {
    /// Builds a distribution from exact probabilities. They must be positive,
    /// sum to one, and sit on distinct tuples of length `arity`.
    pub fn new(arity: usize, support: Vec<(Vec<Value>, BigRational)>) -> Result<Self> {
        let mut denom = BigInt::one();
        for (_, p) in &support {
            if !p.is_positive() {
                return Err(Error::invalid(format!("probability {p} is not positive")));
            }
            denom = denom.lcm(p.denom());
        }
        let mut sum = BigRational::zero();
        let mut weighted = Vec::with_capacity(support.len());
        for (x, p) in support {
            sum += &p;
            let w = (p * BigRational::from_integer(denom.clone())).to_integer();
            weighted.push((x, w));
        }
        if !sum.is_one() {
            return Err(Error::invalid(format!("probabilities sum to {sum}, not 1")));
        }
        let too_big = || Error::capacity("common denominator", u128::MAX, u128::MAX);
        let total = denom.to_u128().ok_or_else(too_big)?;
        let weighted = weighted
            .into_iter()
            .map(|(x, w)| Ok((x, w.to_u128().ok_or_else(too_big)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(arity, weighted, total)
    }

    /// Builds a distribution proportional to positive integer weights.
    pub fn from_weights(arity: usize, support: Vec<(Vec<Value>, u128)>) -> Result<Self> {
        if support.iter().any(|(_, w)| *w == 0) {
            return Err(Error::invalid("weights must be positive"));
        }
        let total = support
            .iter()
            .try_fold(0u128, |acc, (_, w)| acc.checked_add(*w))
            .ok_or_else(|| Error::capacity("total weight", u128::MAX, u128::MAX))?;
        Self::assemble(arity, support, total)
    }

    pub fn uniform(arity: usize, tuples: Vec<Vec<Value>>) -> Result<Self> {
        Self::from_weights(arity, tuples.into_iter().map(|x| (x, 1)).collect())
    }

    fn assemble(arity: usize, support: Vec<(Vec<Value>, u128)>, total: u128) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::invalid("distribution has empty support"));
        }
        let mut seen = HashSet::with_capacity(support.len());
        for (x, _) in &support {
            if x.len() != arity {
                return Err(Error::invalid(format!(
                    "tuple {x:?} does not have arity {arity}"
                )));
            }
            if !seen.insert(x) {
                return Err(Error::invalid(format!("tuple {x:?} appears twice")));
            }
        }
        let (tuples, weights) = support.into_iter().unzip();
        Ok(ExactDistribution {
            arity,
            tuples,
            weights,
            total,
        })
    }

    /// Uniform member of the family, then a uniform ordering of its elements.
    pub fn from_set_family_orderings(fam: &SetFamily, cap: u128) -> Result<Self> {
        let d = fam.d();
        let per: u128 = (1..=d as u128).product();
        let needed = per * fam.len() as u128;
        if needed > cap {
            return Err(Error::capacity("ordered tuples", needed, cap));
        }
        let mut tuples = Vec::with_capacity(needed as usize);
        for m in fam.members() {
            permutations(m, &mut tuples);
        }
        Self::uniform(d, tuples)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<Value>] {
        &self.tuples
    }

    pub fn probability(&self, i: usize) -> BigRational {
        BigRational::new(self.weights[i].into(), self.total.into())
    }

    /// Support with exact probabilities.
    pub fn support(&self) -> impl Iterator<Item = (&[Value], BigRational)> + '_ {
        (0..self.len()).map(move |i| (self.tuples[i].as_slice(), self.probability(i)))
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        for &c in coords {
            if c >= self.arity {
                return Err(Error::invalid(format!(
                    "coordinate {c} out of range for arity {}",
                    self.arity
                )));
            }
        }
        Ok(())
    }

    /// Exact marginal on `coords`, as weights over the common denominator.
    pub fn marginal_weights(&self, coords: &[usize]) -> HashMap<Vec<Value>, u128> {
        let mut out: HashMap<Vec<Value>, u128> = HashMap::new();
        for (x, &w) in self.tuples.iter().zip(&self.weights) {
            let key: Vec<Value> = coords.iter().map(|&c| x[c]).collect();
            *out.entry(key).or_insert(0) += w;
        }
        out
    }

    /// Exact marginal on `coords`, sorted by value tuple.
    pub fn marginal(&self, coords: &[usize]) -> BTreeMap<Vec<Value>, BigRational> {
        self.marginal_weights(coords)
            .into_iter()
            .map(|(k, w)| (k, BigRational::new(w.into(), self.total.into())))
            .collect()
    }

    fn entropy_unchecked(&self, coords: &[usize]) -> f64 {
        if coords.is_empty() {
            return 0.0;
        }
        let total = self.total as f64;
        -self
            .marginal_weights(coords)
            .values()
            .map(|&w| {
                let p = w as f64 / total;
                p * p.log2()
            })
            .sum::<f64>()
    }
}

fn permutations(items: &[Value], out: &mut Vec<Vec<Value>>) {
    fn rec(prefix: &mut Vec<Value>, rest: &mut Vec<Value>, out: &mut Vec<Vec<Value>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    rec(&mut Vec::new(), &mut items.to_vec(), out);
}

/// Entropy in bits of the marginal on `coords`.
pub fn entropy(dist: &ExactDistribution, coords: &[usize]) -> Result<f64> {
    if coords.is_empty() {
        return Err(Error::invalid("entropy needs a nonempty coordinate set"));
    }
    dist.check_coords(coords)?;
    Ok(dist.entropy_unchecked(coords))
}

/// `H(target | given) = H(target, given) - H(given)`.
pub fn conditional_entropy(dist: &ExactDistribution, target: &[usize], given: &[usize]) -> Result<f64> {
    if target.is_empty() {
        return Err(Error::invalid("conditional entropy needs a nonempty target"));
    }
    dist.check_coords(target)?;
    dist.check_coords(given)?;
    if let Some(c) = target.iter().find(|c| given.contains(c)) {
        return Err(Error::invalid(format!(
            "coordinate {c} is both target and condition"
        )));
    }
    let joint: Vec<usize> = given.iter().chain(target).copied().collect();
    Ok(dist.entropy_unchecked(&joint) - dist.entropy_unchecked(given))
}

/// Index subsets covering every coordinate at least `k` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    n: usize,
    subsets: Vec<Vec<usize>>,
    k: usize,
}

impl CoverSpec {
    pub fn new(n: usize, subsets: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("cover multiplicity must be positive"));
        }
        let mut hits = vec![0usize; n];
        for s in &subsets {
            for &i in s {
                if i >= n {
                    return Err(Error::invalid(format!("index {i} out of range for n = {n}")));
                }
                hits[i] += 1;
            }
        }
        if let Some(i) = hits.iter().position(|&h| h < k) {
            return Err(Error::invalid(format!(
                "index {i} is covered {} times, fewer than k = {k}",
                hits[i]
            )));
        }
        Ok(CoverSpec { n, subsets, k })
    }

    /// All `n` subsets omitting one coordinate, with `k = n - 1`.
    pub fn leave_one_out(n: usize) -> Result<Self> {
        let subsets = (0..n)
            .map(|skip| (0..n).filter(|&i| i != skip).collect())
            .collect();
        Self::new(n, subsets, n.saturating_sub(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }
}

/// Shearer's inequality: `k H(all) <= sum_j H(I_j)`.
pub fn check_shearer(dist: &ExactDistribution, cover: &CoverSpec) -> Result<BoundReport> {
    if cover.n != dist.arity {
        return Err(Error::invalid(format!(
            "cover is for n = {}, distribution has arity {}",
            cover.n, dist.arity
        )));
    }
    let all: Vec<usize> = (0..dist.arity).collect();
    let lhs = cover.k as f64 * dist.entropy_unchecked(&all);
    let rhs: f64 = cover.subsets.iter().map(|s| dist.entropy_unchecked(s)).sum();
    Ok(BoundReport::upper_with_tolerance(
        "k H(X)",
        lhs,
        rhs,
        ENTROPY_TOLERANCE,
        "Shearer: sum_j H(X_{I_j})",
    ))
}

/// Per-step quantities of the telescoping inequality for a set family.
#[derive(Clone, Debug)]
pub struct KeyInequalityReport {
    /// `s_k = 2^{H(X_k | X_1..X_{k-1})}` for `k = 1..d`.
    pub s: Vec<f64>,
    /// `s_k - s_{k+1} >= 1` for `k = 1..d-1`.
    pub steps: Vec<BoundReport>,
    /// `s_k >= s_d + (d - k)` for every `k`.
    pub telescoped: bool,
    /// `t` with `binom(t, d) = |family|`.
    pub t: f64,
    /// `r = s_d <= t - d + 1`.
    pub r_bound: BoundReport,
}

impl KeyInequalityReport {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(|s| s.satisfied) && self.telescoped && self.r_bound.satisfied
    }

    pub fn gaps(&self) -> Vec<f64> {
        self.s.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

pub fn check_key_inequality(fam: &SetFamily) -> Result<KeyInequalityReport> {
    check_key_inequality_capped(fam, DEFAULT_TUPLE_CAP)
}

pub fn check_key_inequality_capped(fam: &SetFamily, cap: u128) -> Result<KeyInequalityReport> {
    if fam.is_empty() {
        return Err(Error::precondition("key inequality needs a nonempty family"));
    }
    let d = fam.d();
    if d < 2 {
        return Err(Error::precondition("key inequality needs d >= 2"));
    }
    let dist = ExactDistribution::from_set_family_orderings(fam, cap)?;
    let prefix: Vec<f64> = (0..=d)
        .map(|k| dist.entropy_unchecked(&(0..k).collect::<Vec<_>>()))
        .collect();
    let s: Vec<f64> = (1..=d).map(|k| (prefix[k] - prefix[k - 1]).exp2()).collect();
    let steps = (0..d - 1)
        .map(|i| {
            BoundReport::lower(
                format!("s_{} - s_{}", i + 1, i + 2),
                s[i] - s[i + 1],
                1.0,
                "one fewer outcome after revealing a coordinate",
            )
        })
        .collect();
    let sd = s[d - 1];
    let telescoped = (0..d).all(|i| s[i] >= sd + (d - 1 - i) as f64 - ENTROPY_TOLERANCE);
    let t = invert_binom(fam.len() as f64, d, 0.0)?.t;
    let r_bound = BoundReport::upper("r = s_d", sd, t - d as f64 + 1.0, "telescoped: r <= t - d + 1");
    Ok(KeyInequalityReport {
        s,
        steps,
        telescoped,
        t,
        r_bound,
    })
}

/// Checks `2^{H(X1)} >= 2^{H(X1|Y)} + 2^{H(X2|Y)}` for a joint law of
/// `(X1, X2, Y)` with `(X1, Y)` inside `d1` and `(X2, Y)` outside it.
pub fn check_disjoint_support(
    dist: &ExactDistribution,
    d1: &HashSet<(Value, Value)>,
) -> Result<BoundReport> {
    if dist.arity != 3 {
        return Err(Error::invalid("disjoint-support check needs a joint law of (X1, X2, Y)"));
    }
    for x in &dist.tuples {
        if !d1.contains(&(x[0], x[2])) {
            return Err(Error::Partition(format!(
                "(X1, Y) = ({}, {}) lies outside D1",
                x[0], x[2]
            )));
        }
        if d1.contains(&(x[1], x[2])) {
            return Err(Error::Partition(format!(
                "(X2, Y) = ({}, {}) lies outside D2",
                x[1], x[2]
            )));
        }
    }
    if dist.marginal_weights(&[0]) != dist.marginal_weights(&[1]) {
        return Err(Error::UnequalLaws("X1 and X2".into()));
    }
    let lhs = dist.entropy_unchecked(&[0]).exp2();
    let h_y = dist.entropy_unchecked(&[2]);
    let s1 = (dist.entropy_unchecked(&[2, 0]) - h_y).exp2();
    let s2 = (dist.entropy_unchecked(&[2, 1]) - h_y).exp2();
    Ok(BoundReport::upper_with_tolerance(
        "2^H(X1|Y) + 2^H(X2|Y)",
        s1 + s2,
        lhs,
        ENTROPY_TOLERANCE,
        "disjoint-support bound: 2^H(X1)",
    ))
}

/// A rectangle `rows x cols` chosen with the given relative weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub rows: Vec<Value>,
    pub cols: Vec<Value>,
    pub weight: u64,
}

/// A c-regular good/bad split of `U x V` with a random balanced rectangle.
#[derive(Clone, Debug)]
pub struct CRegularInstance {
    u_size: usize,
    v_size: usize,
    bad: HashSet<(Value, Value)>,
    rectangles: Vec<Rectangle>,
    c: usize,
}

impl CRegularInstance {
    /// Verifies regularity (same bad count `c` in every column) and that each
    /// rectangle is balanced.
    pub fn new(
        u_size: usize,
        v_size: usize,
        bad: &[(Value, Value)],
        rectangles: Vec<Rectangle>,
    ) -> Result<Self> {
        if u_size == 0 || v_size == 0 {
            return Err(Error::invalid("U and V must be nonempty"));
        }
        let bad: HashSet<(Value, Value)> = bad.iter().copied().collect();
        for &(x, y) in &bad {
            if x as usize >= u_size || y as usize >= v_size {
                return Err(Error::invalid(format!("bad pair ({x}, {y}) outside U x V")));
            }
        }
        let per_col: Vec<usize> = (0..v_size as Value)
            .map(|y| bad.iter().filter(|&&(_, b)| b == y).count())
            .collect();
        let c = per_col[0];
        if let Some(y) = per_col.iter().position(|&n| n != c) {
            return Err(Error::Regularity(format!(
                "column {y} has {} bad pairs, column 0 has {c}",
                per_col[y]
            )));
        }
        if rectangles.is_empty() || rectangles.iter().all(|r| r.weight == 0) {
            return Err(Error::invalid("need at least one rectangle with positive weight"));
        }
        for (i, r) in rectangles.iter().enumerate() {
            if r.rows.iter().any(|&x| x as usize >= u_size) || r.cols.iter().any(|&y| y as usize >= v_size) {
                return Err(Error::invalid(format!("rectangle {i} leaves U x V")));
            }
            for &(x, y) in &bad {
                if r.cols.contains(&y) && !r.rows.contains(&x) {
                    return Err(Error::Regularity(format!(
                        "rectangle {i} misses bad pair ({x}, {y}) of one of its columns"
                    )));
                }
            }
            let row_bad: Vec<usize> = r
                .rows
                .iter()
                .map(|&x| r.cols.iter().filter(|&&y| bad.contains(&(x, y))).count())
                .collect();
            if row_bad.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::Regularity(format!(
                    "rectangle {i} rows have unequal bad counts {row_bad:?}"
                )));
            }
            if r.weight > 0 && r.rows.len() * r.cols.len() == row_bad.iter().sum::<usize>() {
                return Err(Error::invalid(format!("rectangle {i} has no good pairs")));
            }
        }
        Ok(CRegularInstance {
            u_size,
            v_size,
            bad,
            rectangles,
            c,
        })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn u_size(&self) -> usize {
        self.u_size
    }

    pub fn v_size(&self) -> usize {
        self.v_size
    }

    pub fn is_bad(&self, x: Value, y: Value) -> bool {
        self.bad.contains(&(x, y))
    }

    /// Law of `(X, Y)`: a rectangle by weight, then a uniform good pair in it.
    pub fn good_pair_distribution(&self) -> Result<ExactDistribution> {
        let total: u64 = self.rectangles.iter().map(|r| r.weight).sum();
        let mut probs: BTreeMap<Vec<Value>, BigRational> = BTreeMap::new();
        for r in self.rectangles.iter().filter(|r| r.weight > 0) {
            let good: Vec<(Value, Value)> = r
                .rows
                .iter()
                .flat_map(|&x| r.cols.iter().map(move |&y| (x, y)))
                .filter(|&(x, y)| !self.is_bad(x, y))
                .collect();
            let each = BigRational::new(r.weight.into(), (total * good.len() as u64).into());
            for (x, y) in good {
                *probs.entry(vec![x, y]).or_insert_with(BigRational::zero) += &each;
            }
        }
        ExactDistribution::new(2, probs.into_iter().collect())
    }

    /// Law of `(X, X', Y)` where `X'` is a uniform bad partner of `Y`,
    /// conditionally independent of `X`. Needs `c >= 1`.
    pub fn disjoint_support_distribution(&self) -> Result<(ExactDistribution, HashSet<(Value, Value)>)> {
        if self.c == 0 {
            return Err(Error::precondition("disjoint-support instance needs c >= 1"));
        }
        let xy = self.good_pair_distribution()?;
        let mut support = Vec::new();
        for (t, p) in xy.support() {
            let (x, y) = (t[0], t[1]);
            for xb in (0..self.u_size as Value).filter(|&xb| self.is_bad(xb, y)) {
                support.push((vec![x, xb, y], &p / BigRational::from_integer(self.c.into())));
            }
        }
        let good: HashSet<(Value, Value)> = (0..self.u_size as Value)
            .flat_map(|x| (0..self.v_size as Value).map(move |y| (x, y)))
            .filter(|&(x, y)| !self.is_bad(x, y))
            .collect();
        Ok((ExactDistribution::new(3, support)?, good))
    }
}

/// `2^{H(X)} - 2^{H(X|Y)} >= c` for the good-pair law of a c-regular instance.
pub fn check_cregular_gap(inst: &CRegularInstance) -> Result<BoundReport> {
    let dist = inst.good_pair_distribution()?;
    let hx = dist.entropy_unchecked(&[0]);
    let hx_y = dist.entropy_unchecked(&[0, 1]) - dist.entropy_unchecked(&[1]);
    Ok(BoundReport::lower(
        "2^H(X) - 2^H(X|Y)",
        hx.exp2() - hx_y.exp2(),
        inst.c as f64,
        "c-regular gap: c",
    ))
}
