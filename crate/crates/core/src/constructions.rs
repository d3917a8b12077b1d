//! Generators for the explicit extremal configurations, each carrying the
//! counts it is expected to have.
//!
//! Every generator recounts its own output with the hypergraph counters in
//! debug builds; [`Construction::self_check`] runs the same check on demand.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::hypergraph::{
    count_good_4subsets_mixed, count_good_6subsets, rainbow_cliques, ColoredHypergraph, Edge, SetFamily, Vertex,
};

/// What a construction is expected to contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// `cliques` rainbow `d`-cliques over `colors`, whose classes have `color_counts` edges.
    Rainbow {
        d: usize,
        colors: Vec<String>,
        color_counts: Vec<u64>,
        cliques: BigUint,
    },
    /// A 4-uniform hypergraph with `edges` edges and `good` good 6-subsets.
    Good6 { edges: u64, good: BigUint },
    /// A mixed 2/3-uniform hypergraph with `good` good 4-subsets.
    Mixed {
        two_edges: u64,
        three_edges: u64,
        good: BigUint,
    },
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub name: String,
    pub hypergraph: ColoredHypergraph,
    pub expectation: Expectation,
}

impl Construction {
    fn new(name: impl Into<String>, hypergraph: ColoredHypergraph, expectation: Expectation) -> Self {
        let c = Construction {
            name: name.into(),
            hypergraph,
            expectation,
        };
        debug_assert_eq!(c.self_check(), Ok(()), "construction {} failed its self-check", c.name);
        c
    }

    /// Recounts the hypergraph and compares with the expectation exactly.
    pub fn self_check(&self) -> Result<()> {
        let h = &self.hypergraph;
        let mismatch = |what: &str, expected: String, found: String| {
            Err(Error::invalid(format!(
                "{}: expected {what} = {expected}, found {found}",
                self.name
            )))
        };
        if !h.validate().is_valid() {
            return Err(Error::invalid(format!("{}: emitted hypergraph is invalid", self.name)));
        }
        match &self.expectation {
            Expectation::Rainbow {
                d,
                colors,
                color_counts,
                cliques,
            } => {
                let found: Vec<u64> = colors.iter().map(|c| h.color_count(c)).collect();
                if &found != color_counts {
                    return mismatch("color counts", format!("{color_counts:?}"), format!("{found:?}"));
                }
                let names: Vec<&str> = colors.iter().map(String::as_str).collect();
                let t = BigUint::from(rainbow_cliques(h, *d, &names)?.len());
                if &t != cliques {
                    return mismatch("rainbow cliques", cliques.to_string(), t.to_string());
                }
            }
            Expectation::Good6 { edges, good } => {
                if h.edge_count() as u64 != *edges {
                    return mismatch("edges", edges.to_string(), h.edge_count().to_string());
                }
                let j = count_good_6subsets(h)?;
                if &j != good {
                    return mismatch("good 6-subsets", good.to_string(), j.to_string());
                }
            }
            Expectation::Mixed {
                two_edges,
                three_edges,
                good,
            } => {
                let r = count_good_4subsets_mixed(h)?;
                let found = (r.two_edges, r.three_edges, &r.good);
                if found != (*two_edges, *three_edges, good) {
                    return mismatch(
                        "(N2, N3, J)",
                        format!("({two_edges}, {three_edges}, {good})"),
                        format!("({}, {}, {})", r.two_edges, r.three_edges, r.good),
                    );
                }
            }
        }
        Ok(())
    }

    /// Color names in the expectation, for rainbow constructions.
    pub fn colors(&self) -> Vec<&str> {
        match &self.expectation {
            Expectation::Rainbow { colors, .. } => colors.iter().map(String::as_str).collect(),
            _ => Vec::new(),
        }
    }
}

fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn pairs_between(a: &[Vertex], b: &[Vertex], color: &str, out: &mut Vec<Edge>) {
    for &x in a {
        for &y in b {
            out.push(Edge::new([x, y], color));
        }
    }
}

fn part(start: usize, len: usize) -> Vec<Vertex> {
    (start as Vertex..(start + len) as Vertex).collect()
}

/// Blow-up of K4 with each part of size `n`; opposite edges of K4 share a
/// color, giving `2n^2` edges per color and `4n^3` rainbow triangles.
pub fn k4_blowup(n: usize) -> Result<Construction> {
    if n == 0 {
        return Err(Error::invalid("k4_blowup needs n >= 1"));
    }
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| part(i * n, n));
    let mut edges = Vec::new();
    pairs_between(&a, &b, "red", &mut edges);
    pairs_between(&c, &d, "red", &mut edges);
    pairs_between(&a, &d, "blue", &mut edges);
    pairs_between(&b, &c, "blue", &mut edges);
    pairs_between(&a, &c, "green", &mut edges);
    pairs_between(&b, &d, "green", &mut edges);
    let per = 2 * (n * n) as u64;
    Ok(Construction::new(
        format!("k4-blowup({n})"),
        ColoredHypergraph::new(4 * n, edges)?,
        Expectation::Rainbow {
            d: 3,
            colors: strings(&["red", "green", "blue"]),
            color_counts: vec![per; 3],
            cliques: BigUint::from(4 * (n * n * n) as u64),
        },
    ))
}

/// Complete tripartite graph with parts of sizes `a`, `b`, `c`: red between
/// the first two parts, green between the last two, blue between the outer ones.
pub fn rainbow_tripartite(a: usize, b: usize, c: usize) -> Result<Construction> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::invalid("rainbow_tripartite needs nonempty parts"));
    }
    let (p1, p2, p3) = (part(0, a), part(a, b), part(a + b, c));
    let mut edges = Vec::new();
    pairs_between(&p1, &p2, "red", &mut edges);
    pairs_between(&p2, &p3, "green", &mut edges);
    pairs_between(&p1, &p3, "blue", &mut edges);
    let (a, b, c) = (a as u64, b as u64, c as u64);
    Ok(Construction::new(
        format!("rainbow-tripartite({a},{b},{c})"),
        ColoredHypergraph::new((a + b + c) as usize, edges)?,
        Expectation::Rainbow {
            d: 3,
            colors: strings(&["red", "green", "blue"]),
            color_counts: vec![a * b, b * c, a * c],
            cliques: BigUint::from(a * b * c),
        },
    ))
}

/// Names `c1, ..., cd`.
pub fn matching_colors(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("c{i}")).collect()
}

/// For odd `d`: the `(d-1)`-uniform hypergraph on `d+1` vertices whose edge
/// with complement `{x, y}` gets color `i` when `xy` lies in the `i`-th
/// perfect matching of the round-robin factorization of `K_{d+1}`.
pub fn matching_construction(d: usize) -> Result<Construction> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::invalid(format!(
            "matching construction needs odd d >= 3, got {d}"
        )));
    }
    let colors = matching_colors(d);
    let fixed = d as Vertex;
    let md = d as Vertex;
    let mut edges = Vec::new();
    for r in 0..md {
        let mut matching = vec![(r, fixed)];
        for i in 1..=(md - 1) / 2 {
            matching.push(((r + i) % md, (r + md - i) % md));
        }
        for (x, y) in matching {
            let complement = (0..=md).filter(|&v| v != x && v != y);
            edges.push(Edge::new(complement, colors[r as usize].clone()));
        }
    }
    let per = (d as u64 + 1) / 2;
    Ok(Construction::new(
        format!("matching({d})"),
        ColoredHypergraph::new(d + 1, edges)?,
        Expectation::Rainbow {
            d,
            colors: colors.clone(),
            color_counts: vec![per; d],
            cliques: BigUint::from(d as u64 + 1),
        },
    ))
}

/// Lifts a `(d-1)`-uniform `d`-colored hypergraph to a `d`-uniform
/// `(d+1)`-colored one: a new vertex joins every edge, and every rainbow
/// `d`-clique becomes an edge of `new_color`. Rainbow clique count and the
/// clique ratio are unchanged.
pub fn kappa_lift(h: &ColoredHypergraph, colors: &[&str], new_color: &str) -> Result<Construction> {
    let d = colors.len();
    if colors.contains(&new_color) {
        return Err(Error::Color(format!("new color `{new_color}` is already in use")));
    }
    for (i, e) in h.edges().iter().enumerate() {
        if !colors.contains(&e.color.as_str()) {
            return Err(Error::Color(format!("edge {i} has unlisted color `{}`", e.color)));
        }
    }
    let cliques = rainbow_cliques(h, d, colors)?;
    let v = h.vertex_count() as Vertex;
    let mut edges: Vec<Edge> = h
        .edges()
        .iter()
        .map(|e| Edge::new(e.vertices.iter().copied().chain([v]), e.color.clone()))
        .collect();
    edges.extend(cliques.iter().map(|k| Edge::new(k.iter().copied(), new_color)));
    let mut all_colors = strings(colors);
    all_colors.push(new_color.to_string());
    let mut counts: Vec<u64> = colors.iter().map(|c| h.color_count(c)).collect();
    counts.push(cliques.len() as u64);
    Ok(Construction::new(
        format!("kappa-lift(d={})", d + 1),
        ColoredHypergraph::new(h.vertex_count() + 1, edges)?,
        Expectation::Rainbow {
            d: d + 1,
            colors: all_colors,
            color_counts: counts,
            cliques: BigUint::from(cliques.len()),
        },
    ))
}

/// The 8-vertex 3-uniform 4-colored configuration with 48 rainbow
/// tetrahedra. Vertices `u_1..u_4` are `0..4` and `v_1..v_4` are `4..8`;
/// indices wrap around mod 4.
pub fn tetrahedra8() -> Result<Construction> {
    let u = |i: usize| ((i - 1) % 4) as Vertex;
    let v = |j: usize| (4 + (j - 1) % 4) as Vertex;
    let mut edges = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            let same = i % 2 == j % 2;
            let (uu, uv) = if same { ("red", "blue") } else { ("green", "yellow") };
            edges.push(Edge::new([u(i), u(i + 1), v(j)], uu));
            edges.push(Edge::new([u(i), v(j), v(j + 1)], uv));
        }
    }
    for i in 1..=4 {
        for j in 1..=2 {
            edges.push(Edge::new([u(i), v(j), v(j + 2)], "red"));
        }
    }
    for i in 1..=2 {
        for j in 1..=4 {
            edges.push(Edge::new([u(i), u(i + 2), v(j)], "blue"));
        }
    }
    for skip in 1..=4 {
        let others = (1..=4).filter(|&k| k != skip);
        edges.push(Edge::new(others.clone().map(v), "green"));
        edges.push(Edge::new(others.map(u), "yellow"));
    }
    Ok(Construction::new(
        "tetrahedra8",
        ColoredHypergraph::new(8, edges)?,
        Expectation::Rainbow {
            d: 4,
            colors: strings(&["red", "blue", "green", "yellow"]),
            color_counts: vec![16, 16, 12, 12],
            cliques: BigUint::from(48u32),
        },
    ))
}

/// The 4-uniform hypergraph on `x_1..x_4` (`0..4`) and `y_1..y_4` (`4..8`)
/// with the two parts as edges plus `{x_i, x_j, y_k, y_l}` whenever
/// `{i, j}` and `{k, l}` are equal or disjoint.
pub fn flats_example() -> Result<Construction> {
    let mut edges = vec![Edge::new(0..4, "flat"), Edge::new(4..8, "flat")];
    let pairs: Vec<[Vertex; 2]> = (0..4).flat_map(|i| (i + 1..4).map(move |j| [i, j])).collect();
    for p in &pairs {
        for q in &pairs {
            let equal = p == q;
            let disjoint = !p.iter().any(|x| q.contains(x));
            if equal || disjoint {
                edges.push(Edge::new([p[0], p[1], q[0] + 4, q[1] + 4], "flat"));
            }
        }
    }
    Ok(Construction::new(
        "flats",
        ColoredHypergraph::new(8, edges)?,
        Expectation::Good6 {
            edges: 14,
            good: BigUint::from(28u32),
        },
    ))
}

/// Three parts of size `n`: 2-edges inside each part and 3-edges across all
/// three parts.
pub fn tripartite_mixed(n: usize) -> Result<Construction> {
    if n == 0 {
        return Err(Error::invalid("tripartite_mixed needs n >= 1"));
    }
    let parts = [part(0, n), part(n, n), part(2 * n, n)];
    let mut edges = Vec::new();
    for p in &parts {
        for (i, &x) in p.iter().enumerate() {
            for &y in &p[i + 1..] {
                edges.push(Edge::new([x, y], "pair"));
            }
        }
    }
    for &x in &parts[0] {
        for &y in &parts[1] {
            for &z in &parts[2] {
                edges.push(Edge::new([x, y, z], "triple"));
            }
        }
    }
    let n = n as u64;
    let pairs_per_part = n * (n - 1) / 2;
    Ok(Construction::new(
        format!("tripartite-mixed({n})"),
        ColoredHypergraph::new(3 * n as usize, edges)?,
        Expectation::Mixed {
            two_edges: 3 * pairs_per_part,
            three_edges: n * n * n,
            good: BigUint::from(3 * pairs_per_part * n * n),
        },
    ))
}

/// All `d`-subsets of `0..m`.
pub fn complete_family(m: usize, d: usize) -> Result<SetFamily> {
    if d > m {
        return Err(Error::invalid(format!("complete_family needs m >= d, got m = {m}, d = {d}")));
    }
    fn rec(m: Vertex, d: usize, start: Vertex, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            rec(m, d, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut members = Vec::new();
    rec(m as Vertex, d, 0, &mut Vec::new(), &mut members);
    SetFamily::new(m, d, members)
}
