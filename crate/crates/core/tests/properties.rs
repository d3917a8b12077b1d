//! Property tests for the invariants each module promises.

mod common;

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::sample::subsequence;
use shadowlab::constructions::{k4_blowup, kappa_lift, matching_construction, rainbow_tripartite, tripartite_mixed};
use shadowlab::entropy::{
    check_key_inequality, check_shearer, conditional_entropy, entropy, CoverSpec, ExactDistribution,
};
use shadowlab::forbidding::{check_generalized_kk, enumerate_sd, ForbiddingSystem, LinearDependence, Repeats};
use shadowlab::hypergraph::{
    check_kruskal_katona, count_color_covering_subsets, count_rainbow_cliques, kappa_ratio, shadow,
    spectral_trace_check, weighted_joint_sum,
};
use shadowlab::numkit::{
    binom_real, binomial, gaussian_binom, gaussian_binom_exact, invert_binom, invert_product, product_falling, CVector,
};
use shadowlab::qlinalg::{enumerate_subspaces, rref, subspace_shadow, SubspaceFamily};
use shadowlab::search::{random_probe, recount, Problem};
use shadowlab::{ColoredHypergraph, Edge, SetFamily, Vertex};

use common::*;

const TOL: f64 = 1e-9;

/// A simple graph on `n` vertices with each pair absent or colored red, green or blue.
fn colored_graph(max_n: usize) -> impl Strategy<Value = ColoredHypergraph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(0..4usize, pairs).prop_map(move |cells| {
            let edges = subsets(n, 2)
                .into_iter()
                .zip(cells)
                .filter(|&(_, c)| c > 0)
                .map(|(s, c)| Edge::new(s, RGB[c - 1]))
                .collect();
            ColoredHypergraph::new(n, edges).unwrap()
        })
    })
}

fn set_family(max_n: usize, max_d: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_d)
        .prop_flat_map(move |d| (Just(d), d.max(2)..=max_n))
        .prop_flat_map(|(d, n)| {
            let all = subsets(n, d);
            let len = all.len();
            (Just((n, d)), subsequence(all, 1..=len))
        })
        .prop_map(|((n, d), members)| SetFamily::new(n, d, members).unwrap())
}

fn distribution(max_arity: usize, max_support: usize) -> impl Strategy<Value = ExactDistribution> {
    (2..=max_arity).prop_flat_map(move |arity| {
        prop::collection::btree_map(prop::collection::vec(0..3u32, arity), 1..=20u128, 1..=max_support)
            .prop_map(move |m| ExactDistribution::from_weights(arity, m.into_iter().collect()).unwrap())
    })
}

fn permuted(h: &ColoredHypergraph, perm: &[usize]) -> ColoredHypergraph {
    let edges = h
        .edges()
        .iter()
        .map(|e| Edge::new(e.vertices.iter().map(|&v| perm[v as usize] as Vertex), e.color.clone()))
        .collect();
    ColoredHypergraph::new(h.vertex_count(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_inversion_round_trips(c in prop::collection::vec(0u64..6, 1..4), extra in 0.0f64..20.0) {
        let mut c = c;
        c.sort_unstable();
        let c = CVector::new(c).unwrap();
        let t = c.last() as f64 + extra;
        let back = invert_product(product_falling(t, &c), &c, 0.0).unwrap().t;
        prop_assert!((back - t).abs() <= 1e-9 * t.max(1.0), "{back} vs {t}");
    }

    #[test]
    fn product_is_increasing(c in prop::collection::vec(0u64..6, 1..4), a in 0.0f64..20.0, b in 0.0f64..20.0) {
        let mut c = c;
        c.sort_unstable();
        let c = CVector::new(c).unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assume!(hi - lo > 1e-6);
        let base = c.last() as f64;
        prop_assert!(product_falling(base + lo, &c) < product_falling(base + hi, &c));
    }

    #[test]
    fn binom_real_matches_integers(n in 0u64..60, d in 1usize..8) {
        prop_assume!(n + 1 >= d as u64);
        let real = binom_real(n as f64, d).unwrap();
        let exact = binomial(n, d as u64);
        prop_assert_eq!(real.round() as u64, exact.to_u64().unwrap());
        prop_assert!((real - exact.to_f64().unwrap()).abs() <= 1e-9 * real.max(1.0));
        if n >= d as u64 {
            prop_assert!((invert_binom(real, d, 0.0).unwrap().t - n as f64).abs() <= 1e-9 * n as f64);
        }
    }

    #[test]
    fn rainbow_count_is_invariant_under_relabeling(h in colored_graph(7), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = rng(seed);
        let mut perm: Vec<usize> = (0..h.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let mut colors = RGB.to_vec();
        colors.shuffle(&mut rng);
        let base = count_rainbow_cliques(&h, 3, &RGB).unwrap();
        prop_assert_eq!(&base, &oracle_rainbow(&h, 3, &RGB));
        prop_assert_eq!(&count_rainbow_cliques(&permuted(&h, &perm), 3, &RGB).unwrap(), &base);
        prop_assert_eq!(&count_rainbow_cliques(&h, 3, &colors).unwrap(), &base);
    }

    #[test]
    fn triangle_bound_and_covering_agree(h in colored_graph(8)) {
        let t = count_rainbow_cliques(&h, 3, &RGB).unwrap();
        let rgb: BigUint = RGB.iter().map(|c| BigUint::from(h.color_count(c))).product();
        prop_assert!(&t * &t <= BigUint::from(2u32) * rgb);
        prop_assert_eq!(count_color_covering_subsets(&h, 0).unwrap().good, t);
    }

    #[test]
    fn kruskal_katona_and_iterated_shadow(fam in set_family(9, 4)) {
        let b = check_kruskal_katona(&fam).unwrap();
        prop_assert!(b.satisfied, "{:?}", b);
        let d = fam.d();
        if d >= 3 {
            let t = b.parameter.unwrap();
            let twice = shadow(&shadow(&fam).unwrap()).unwrap();
            prop_assert!(twice.len() as f64 >= binom_real(t, d - 2).unwrap() - TOL);
        }
    }

    #[test]
    fn entropy_identities(dist in distribution(4, 40)) {
        let arity = dist.arity();
        let all: Vec<usize> = (0..arity).collect();
        let h = entropy(&dist, &all).unwrap();
        prop_assert!((h - oracle_entropy(&dist, &all)).abs() <= TOL);
        let chain: f64 = (0..arity).map(|k| conditional_entropy(&dist, &[k], &all[..k]).unwrap()).sum();
        prop_assert!((chain - h).abs() <= TOL);
        let rest: Vec<usize> = (1..arity).collect();
        prop_assert!(
            conditional_entropy(&dist, &[0], &rest).unwrap()
                <= conditional_entropy(&dist, &[0], &[arity - 1]).unwrap() + TOL
        );
        prop_assert!(h <= (dist.len() as f64).log2() + TOL);
        prop_assert!(check_shearer(&dist, &CoverSpec::leave_one_out(arity).unwrap()).unwrap().satisfied);
    }

    #[test]
    fn function_of_condition_adds_nothing(
        law in prop::collection::btree_map((0..3u32, 0..3u32), 1..=20u128, 1..=9),
        table in prop::collection::vec(0..3u32, 9),
    ) {
        let support = law.into_iter().map(|((x, y), w)| (vec![x, y, table[(x * 3 + y) as usize]], w)).collect();
        let ext = ExactDistribution::from_weights(3, support).unwrap();
        let lhs = conditional_entropy(&ext, &[0, 2], &[1]).unwrap();
        let rhs = conditional_entropy(&ext, &[0], &[1]).unwrap();
        prop_assert!((lhs - rhs).abs() <= TOL);
    }

    #[test]
    fn uniform_attains_the_support_bound(n in 2usize..16, bump in 0usize..16) {
        let tuples: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();
        let u = ExactDistribution::uniform(1, tuples.clone()).unwrap();
        prop_assert!((entropy(&u, &[0]).unwrap() - (n as f64).log2()).abs() <= TOL);
        let weights = tuples.into_iter().enumerate().map(|(i, t)| (t, if i == bump % n { 2 } else { 1 })).collect();
        let skewed = ExactDistribution::from_weights(1, weights).unwrap();
        prop_assert!(entropy(&skewed, &[0]).unwrap() < (n as f64).log2() - 1e-6);
    }

    #[test]
    fn key_inequality_telescopes(fam in set_family(7, 3)) {
        prop_assume!(fam.d() >= 2);
        let k = check_key_inequality(&fam).unwrap();
        let d = fam.d();
        for (i, s) in k.s.iter().enumerate() {
            prop_assert!(*s >= k.s[d - 1] + (d - 1 - i) as f64 - TOL);
        }
        prop_assert!(k.holds());
    }

    #[test]
    fn weighted_sum_matches_trace(n in 3usize..7, weights in prop::collection::vec(0i64..=9, 15)) {
        let edges: Vec<Edge> = subsets(n, 2)
            .into_iter()
            .zip(weights)
            .filter(|&(_, w)| w > 0)
            .map(|(s, w)| Edge::weighted(s, "w", w))
            .collect();
        let h = ColoredHypergraph::new(n, edges).unwrap();
        let w = weighted_joint_sum(&h, 3).unwrap();
        prop_assert!(w.report.satisfied);
        let s = spectral_trace_check(&h).unwrap();
        prop_assert!((s.trace_m3 - 6.0 * w.sum).abs() <= 1e-6);
        prop_assert!(s.holds());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tuple_families_are_symmetric_with_prefix_counts(s in 1usize..6, d in 2usize..4) {
        let sys = Repeats::new(8, d).unwrap();
        let set: Vec<u32> = (0..s as u32).collect();
        let fam = enumerate_sd(&sys, &set).unwrap();
        let tuples: HashSet<&Vec<u32>> = fam.tuples().iter().collect();
        for t in fam.tuples() {
            let mut r = t.clone();
            r.reverse();
            prop_assert!(tuples.contains(&r));
            let mut sw = t.clone();
            sw.swap(0, 1);
            prop_assert!(tuples.contains(&sw));
        }
        let c = sys.c_vector().entries();
        for k in 1..d {
            let mut prefixes: std::collections::HashMap<&[u32], usize> = std::collections::HashMap::new();
            for t in fam.tuples() {
                *prefixes.entry(&t[..k]).or_default() += 1;
            }
            let expected: usize = (k..d).map(|j| s.saturating_sub(c[j - 1] as usize)).product();
            prop_assert!(prefixes.values().all(|&v| v == expected));
        }
    }

    #[test]
    fn generalized_bound_matches_kruskal_katona(fam in set_family(7, 4)) {
        prop_assume!(fam.d() >= 2);
        let d = fam.d();
        let kk = check_kruskal_katona(&fam).unwrap();
        let g = check_generalized_kk(&Repeats::new(fam.ground_size(), d).unwrap(), fam.members()).unwrap();
        let scale: f64 = (1..d).map(|i| i as f64).product();
        prop_assert!((g.t - kk.parameter.unwrap()).abs() <= TOL * g.t.max(1.0));
        prop_assert!((g.report.bound / scale - kk.bound).abs() <= TOL * kk.bound.max(1.0));
        prop_assert_eq!(g.report.satisfied, kk.satisfied);
    }

    #[test]
    fn rref_is_idempotent(q in prop::sample::select(vec![2u32, 3, 5]), rows in prop::collection::vec(prop::collection::vec(0u32..5, 4), 1..5)) {
        let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % q).collect()).collect();
        let once = rref(q, rows);
        prop_assert_eq!(rref(q, once.clone()), once);
    }

    #[test]
    fn q_bound_holds_on_plane_families(mask in 1u64..(1 << 35)) {
        let planes = enumerate_subspaces(2, 4, 2).unwrap();
        let members: Vec<_> = (0..35).filter(|i| mask >> i & 1 == 1).map(|i| planes[i].clone()).collect();
        let fam = SubspaceFamily::new(2, 4, 2, members).unwrap();
        let b = shadowlab::qlinalg::check_q_kruskal_katona(&fam).unwrap();
        prop_assert!(b.satisfied, "{:?}", b);
    }

    #[test]
    fn kappa_lift_preserves_the_ratio(h in colored_graph(6)) {
        let Ok(base) = kappa_ratio(&h, 3, &RGB) else { return Ok(()); };
        prop_assume!(base.rainbow_cliques > BigUint::from(0u32));
        let lifted = kappa_lift(&h, &RGB, "lift").unwrap().hypergraph;
        prop_assert!(lifted.validate().is_valid());
        let up = kappa_ratio(&lifted, 4, &["red", "green", "blue", "lift"]).unwrap();
        prop_assert_eq!(up.ratio, base.ratio);
    }

    #[test]
    fn probes_are_deterministic_and_recount(seed in any::<u64>(), n in 4usize..7) {
        let problem = Problem::Mixed4 { vertices: n };
        let a = random_probe(&problem, 0.5, 20, seed).unwrap();
        let b = random_probe(&problem, 0.5, 20, seed).unwrap();
        prop_assert_eq!(&a, &b);
        if let Some(w) = &a.witness {
            prop_assert_eq!(recount(&problem, w).unwrap(), a.best.clone());
            prop_assert!(a.best.unwrap() <= num_rational::BigRational::new(9.into(), 2.into()));
        }
    }
}

#[test]
fn gaussian_counts_match_enumeration() {
    for q in [2u32, 3] {
        for n in 0..=4usize {
            for d in 0..=n {
                let count = enumerate_subspaces(q, n, d).unwrap().len();
                assert_eq!(BigUint::from(count), gaussian_binom_exact(n as u64, d as u64, q as u64));
                let real = gaussian_binom(n as f64, d, q as u64).unwrap();
                assert_eq!(real, count as f64);
            }
        }
    }
}

#[test]
fn complete_subspace_shadow_is_complete() {
    for (q, n, d) in [(2u32, 4usize, 2usize), (2, 4, 3), (3, 3, 2)] {
        let all = SubspaceFamily::new(q, n, d, enumerate_subspaces(q, n, d).unwrap()).unwrap();
        let sh = subspace_shadow(&all).unwrap();
        assert_eq!(sh.members(), enumerate_subspaces(q, n, d - 1).unwrap().as_slice());
    }
}

#[test]
fn linear_system_prefix_counts() {
    let sys = LinearDependence::new(2, 4, 3).unwrap();
    let all: Vec<u32> = sys.universe().to_vec();
    let fam = enumerate_sd(&sys, &all).unwrap();
    assert_eq!(fam.len(), 15 * 14 * 12);
}

#[test]
fn generators_validate_and_self_check() {
    let mut built = vec![
        k4_blowup(1).unwrap(),
        k4_blowup(3).unwrap(),
        rainbow_tripartite(2, 3, 4).unwrap(),
        tripartite_mixed(3).unwrap(),
    ];
    built.extend([3, 5, 7].map(|d| matching_construction(d).unwrap()));
    for c in &built {
        assert!(c.hypergraph.validate().is_valid(), "{}", c.name);
        c.self_check().unwrap();
    }
}
