//! Test-side generators and brute-force oracles. Nothing here calls the
//! counting code under test.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use shadowlab::entropy::ExactDistribution;
use shadowlab::{ColoredHypergraph, Edge, SetFamily, Vertex};

pub const RGB: [&str; 3] = ["red", "green", "blue"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: Vertex, k: usize, start: Vertex, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(n as Vertex, k, 0, &mut cur, &mut out);
    out
}

pub fn facets(set: &[Vertex]) -> Vec<Vec<Vertex>> {
    (0..set.len())
        .map(|i| set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect())
        .collect()
}

/// Each `k`-subset present with probability `density`, colored uniformly.
pub fn random_colored(rng: &mut ChaCha8Rng, n: usize, k: usize, colors: &[&str], density: f64) -> ColoredHypergraph {
    let mut edges = Vec::new();
    for s in subsets(n, k) {
        if rng.gen_bool(density) {
            edges.push(Edge::new(s, *colors.choose(rng).unwrap()));
        }
    }
    ColoredHypergraph::new(n, edges).unwrap()
}

/// A nonempty random family of `d`-subsets of `0..n`.
pub fn random_family(rng: &mut ChaCha8Rng, n: usize, d: usize) -> SetFamily {
    let all = subsets(n, d);
    let density = rng.gen_range(0.05..=1.0);
    let mut members: Vec<Vec<Vertex>> = all.iter().filter(|_| rng.gen_bool(density)).cloned().collect();
    if members.is_empty() {
        members.push(all.choose(rng).unwrap().clone());
    }
    SetFamily::new(n, d, members).unwrap()
}

/// Random support of distinct tuples with positive integer weights.
pub fn random_distribution(rng: &mut ChaCha8Rng, arity: usize, max_support: usize) -> ExactDistribution {
    let alphabet = rng.gen_range(2..=4u32);
    let size = rng.gen_range(1..=max_support);
    let mut seen = HashSet::new();
    let mut support = Vec::new();
    for _ in 0..size {
        let t: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..alphabet)).collect();
        if seen.insert(t.clone()) {
            support.push((t, rng.gen_range(1..=20u128)));
        }
    }
    ExactDistribution::from_weights(arity, support).unwrap()
}

/// Rainbow `d`-cliques found by testing every `d`-subset.
pub fn oracle_rainbow(h: &ColoredHypergraph, d: usize, colors: &[&str]) -> BigUint {
    let color: HashMap<&[Vertex], &str> = h.edges().iter().map(|e| (e.vertices.as_slice(), e.color.as_str())).collect();
    let want: HashSet<&str> = colors.iter().copied().collect();
    let mut count = 0u64;
    for set in subsets(h.vertex_count(), d) {
        let got: Option<HashSet<&str>> = facets(&set).iter().map(|f| color.get(f.as_slice()).copied()).collect();
        if let Some(got) = got {
            if got.len() == d && got == want {
                count += 1;
            }
        }
    }
    BigUint::from(count)
}

pub fn oracle_shadow(members: &[Vec<Vertex>]) -> usize {
    members.iter().flat_map(|m| facets(m)).collect::<HashSet<_>>().len()
}

/// `t(t-1)...(t-k+1)/k!` for real `t`.
pub fn oracle_binom(t: f64, k: usize) -> f64 {
    (0..k).map(|i| (t - i as f64) / (i + 1) as f64).product()
}

/// Solves `f(t) = target` for increasing `f` on `[lo, hi]` by bisection.
pub fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    while f(hi) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `t >= d - 1` with `binom(t, d) = m`.
pub fn oracle_t(m: f64, d: usize) -> f64 {
    bisect(|t| oracle_binom(t, d), m, d as f64 - 1.0, d as f64 + m)
}

/// Good 4-sets of a mixed 2/3-uniform hypergraph: some labeling has
/// `{a,b,c}`, `{a,b,d}` as 3-edges and `{c,d}` as a 2-edge.
pub fn oracle_mixed(h: &ColoredHypergraph) -> BigUint {
    let edges: HashSet<Vec<Vertex>> = h.edges().iter().map(|e| e.vertices.clone()).collect();
    let has = |mut v: Vec<Vertex>| {
        v.sort_unstable();
        edges.contains(&v)
    };
    let mut count = 0u64;
    for s in subsets(h.vertex_count(), 4) {
        let good = subsets(4, 2).iter().any(|cd| {
            let (c, d) = (s[cd[0] as usize], s[cd[1] as usize]);
            let ab: Vec<Vertex> = s.iter().copied().filter(|&x| x != c && x != d).collect();
            has(vec![c, d]) && has(vec![ab[0], ab[1], c]) && has(vec![ab[0], ab[1], d])
        });
        if good {
            count += 1;
        }
    }
    BigUint::from(count)
}

/// `r`-sets containing at least `r - k` edges.
pub fn oracle_partial_targets(h: &ColoredHypergraph, r: usize, k: usize) -> u64 {
    let edges: HashSet<Vec<Vertex>> = h.edges().iter().map(|e| e.vertices.clone()).collect();
    subsets(h.vertex_count(), r)
        .iter()
        .filter(|s| facets(s).iter().filter(|f| edges.contains(*f)).count() >= r - k)
        .count() as u64
}

/// Entropy in bits from summed probabilities, grouping by marginal values.
pub fn oracle_entropy(dist: &ExactDistribution, coords: &[usize]) -> f64 {
    let mut marg: HashMap<Vec<u32>, f64> = HashMap::new();
    for (i, t) in dist.tuples().iter().enumerate() {
        let key: Vec<u32> = coords.iter().map(|&c| t[c]).collect();
        let p = num_traits::ToPrimitive::to_f64(&dist.probability(i)).unwrap();
        *marg.entry(key).or_default() += p;
    }
    marg.values().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether two colored hypergraphs agree up to a vertex bijection and a
/// color bijection.
pub fn isomorphic(a: &ColoredHypergraph, b: &ColoredHypergraph) -> bool {
    let (ca, cb) = (a.colors(), b.colors());
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() || ca.len() != cb.len() {
        return false;
    }
    let target: HashSet<(Vec<Vertex>, &str)> = b.edges().iter().map(|e| (e.vertices.clone(), e.color.as_str())).collect();
    let color_perms = permutations(ca.len());
    permutations(a.vertex_count()).iter().any(|p| {
        color_perms.iter().any(|cp| {
            a.edges().iter().all(|e| {
                let mut v: Vec<Vertex> = e.vertices.iter().map(|&x| p[x as usize] as Vertex).collect();
                v.sort_unstable();
                let ci = ca.iter().position(|c| *c == e.color).unwrap();
                target.contains(&(v, cb[cp[ci]].as_str()))
            })
        })
    })
}
