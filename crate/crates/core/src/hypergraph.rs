//! Colored hypergraphs of possibly mixed uniformity, and every counting
//! operation and bound check built on them.
//!
//! Counts are exact big integers. Ratios are exact rationals up to the
//! point where they are reported as floats.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numkit::{binom_real, factorial, invert_binom};
use crate::report::{rational_to_f64, BoundReport};

pub type Vertex = u32;

/// Tolerance used by the trace identities in [`spectral_trace_check`].
pub const TRACE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Sorted vertex indices.
    pub vertices: Vec<Vertex>,
    pub color: String,
    /// Absent weight means unit weight.
    pub weight: Option<i64>,
}

impl Edge {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>, color: impl Into<String>) -> Self {
        let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
        vertices.sort_unstable();
        Edge {
            vertices,
            color: color.into(),
            weight: None,
        }
    }

    pub fn weighted(
        vertices: impl IntoIterator<Item = Vertex>,
        color: impl Into<String>,
        weight: i64,
    ) -> Self {
        Edge {
            weight: Some(weight),
            ..Edge::new(vertices, color)
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn effective_weight(&self) -> i64 {
        self.weight.unwrap_or(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    EmptyEdge,
    VertexOutOfRange { vertex: Vertex },
    RepeatedVertex { vertex: Vertex },
    Unsorted,
    /// Same vertex set as an earlier edge, regardless of color.
    DuplicateVertexSet { first: usize },
    NegativeWeight { weight: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub edge: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::EmptyEdge => write!(f, "edge {}: no vertices", self.edge),
            ViolationKind::VertexOutOfRange { vertex } => {
                write!(f, "edge {}: vertex {vertex} out of range", self.edge)
            }
            ViolationKind::RepeatedVertex { vertex } => {
                write!(f, "edge {}: vertex {vertex} repeated", self.edge)
            }
            ViolationKind::Unsorted => write!(f, "edge {}: vertices not sorted", self.edge),
            ViolationKind::DuplicateVertexSet { first } => write!(
                f,
                "edge {}: same vertex set as edge {first} (simplicity)",
                self.edge
            ),
            ViolationKind::NegativeWeight { weight } => {
                write!(f, "edge {}: negative weight {weight}", self.edge)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

/// Checks every hypergraph invariant and lists all violations.
pub fn validate(vertex_count: usize, edges: &[Edge]) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen: HashMap<Vec<Vertex>, usize> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        let mut push = |kind| violations.push(Violation { edge: i, kind });
        if e.vertices.is_empty() {
            push(ViolationKind::EmptyEdge);
        }
        for &v in &e.vertices {
            if v as usize >= vertex_count {
                push(ViolationKind::VertexOutOfRange { vertex: v });
            }
        }
        for w in e.vertices.windows(2) {
            if w[0] == w[1] {
                push(ViolationKind::RepeatedVertex { vertex: w[0] });
            } else if w[0] > w[1] {
                push(ViolationKind::Unsorted);
            }
        }
        if let Some(weight) = e.weight {
            if weight < 0 {
                push(ViolationKind::NegativeWeight { weight });
            }
        }
        let mut key = e.vertices.clone();
        key.sort_unstable();
        match seen.get(&key) {
            Some(&first) => push(ViolationKind::DuplicateVertexSet { first }),
            None => {
                seen.insert(key, i);
            }
        }
    }
    ValidationReport { violations }
}

/// An immutable simple hypergraph whose edges carry color labels.
#[derive(Clone, Debug)]
pub struct ColoredHypergraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    index: HashMap<Vec<Vertex>, usize>,
}

impl PartialEq for ColoredHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl ColoredHypergraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let report = validate(vertex_count, &edges);
        if !report.is_valid() {
            return Err(Error::invalid(report));
        }
        let index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.vertices.clone(), i))
            .collect();
        Ok(ColoredHypergraph {
            vertex_count,
            edges,
            index,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        ColoredHypergraph {
            vertex_count,
            edges: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self.vertex_count, &self.edges)
    }

    /// The edge on exactly this sorted vertex set.
    pub fn edge(&self, sorted: &[Vertex]) -> Option<&Edge> {
        self.index.get(sorted).map(|&i| &self.edges[i])
    }

    pub fn contains(&self, sorted: &[Vertex]) -> bool {
        self.index.contains_key(sorted)
    }

    pub fn color_of(&self, sorted: &[Vertex]) -> Option<&str> {
        self.edge(sorted).map(|e| e.color.as_str())
    }

    /// Distinct colors in order of first appearance.
    pub fn colors(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.edges {
            if !out.contains(&e.color) {
                out.push(e.color.clone());
            }
        }
        out
    }

    pub fn color_count(&self, color: &str) -> u64 {
        self.edges.iter().filter(|e| e.color == color).count() as u64
    }

    /// Weight of the edge on `sorted`; absent edges weigh zero.
    pub fn weight(&self, sorted: &[Vertex]) -> i64 {
        self.edge(sorted).map_or(0, Edge::effective_weight)
    }

    pub fn total_weight(&self) -> i64 {
        self.edges.iter().map(Edge::effective_weight).sum()
    }

    /// Every edge must have one of the sizes in `allowed`.
    fn require_sizes(&self, allowed: &[usize]) -> Result<()> {
        for (i, e) in self.edges.iter().enumerate() {
            if !allowed.contains(&e.len()) {
                return Err(Error::Uniformity {
                    edge: i,
                    expected: sizes_label(allowed),
                    found: e.len(),
                });
            }
        }
        Ok(())
    }
}

fn sizes_label(sizes: &[usize]) -> String {
    sizes
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" or ")
}

/// The facets `delta \ {delta[i]}` of a sorted vertex set.
fn facets(delta: &[Vertex]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    (0..delta.len()).map(move |i| {
        let mut f = delta.to_vec();
        f.remove(i);
        f
    })
}

/// `edge` plus vertex `v`, sorted; `None` if `v` is already in `edge`.
fn extend(edge: &[Vertex], v: Vertex) -> Option<Vec<Vertex>> {
    match edge.binary_search(&v) {
        Ok(_) => None,
        Err(pos) => {
            let mut out = Vec::with_capacity(edge.len() + 1);
            out.extend_from_slice(&edge[..pos]);
            out.push(v);
            out.extend_from_slice(&edge[pos..]);
            Some(out)
        }
    }
}

fn check_colors(colors: &[&str], d: usize) -> Result<()> {
    if colors.len() != d {
        return Err(Error::Color(format!(
            "need exactly {d} colors, got {}",
            colors.len()
        )));
    }
    for (i, c) in colors.iter().enumerate() {
        if colors[..i].contains(c) {
            return Err(Error::Color(format!("color `{c}` listed twice")));
        }
    }
    Ok(())
}

/// True when the facets of `delta` are edges carrying each listed color once.
fn is_rainbow(h: &ColoredHypergraph, delta: &[Vertex], colors: &[&str]) -> bool {
    let mut hit = vec![false; colors.len()];
    for f in facets(delta) {
        let Some(c) = h.color_of(&f) else {
            return false;
        };
        match colors.iter().position(|&x| x == c) {
            Some(j) if !hit[j] => hit[j] = true,
            _ => return false,
        }
    }
    hit.iter().all(|&b| b)
}

/// Number of rainbow `d`-cliques: `d`-sets whose `d` facets are edges
/// carrying the `d` listed colors, one each.
pub fn count_rainbow_cliques(h: &ColoredHypergraph, d: usize, colors: &[&str]) -> Result<BigUint> {
    Ok(BigUint::from(rainbow_cliques(h, d, colors)?.len()))
}

/// The rainbow `d`-cliques as sorted vertex sets, in lexicographic order.
///
/// Candidates are extended from edges of the rarest listed color. A rainbow
/// clique has exactly one facet of that color, so each is found once.
pub fn rainbow_cliques(h: &ColoredHypergraph, d: usize, colors: &[&str]) -> Result<Vec<Vec<Vertex>>> {
    if d < 2 {
        return Err(Error::precondition("rainbow cliques need d >= 2"));
    }
    check_colors(colors, d)?;
    for (i, e) in h.edges.iter().enumerate() {
        if colors.contains(&e.color.as_str()) && e.len() != d - 1 {
            return Err(Error::Uniformity {
                edge: i,
                expected: (d - 1).to_string(),
                found: e.len(),
            });
        }
    }
    let rarest = *colors
        .iter()
        .min_by_key(|c| h.color_count(c))
        .expect("d >= 2 colors");
    let mut found = Vec::new();
    for e in h.edges.iter().filter(|e| e.color == rarest) {
        for v in 0..h.vertex_count as Vertex {
            if let Some(delta) = extend(&e.vertices, v) {
                if is_rainbow(h, &delta, colors) {
                    found.push(delta);
                }
            }
        }
    }
    found.sort_unstable();
    Ok(found)
}

/// The ratio `T^{d-1} / (C_1 ... C_d)` with the known upper bounds on it.
#[derive(Clone, Debug)]
pub struct KappaReport {
    pub d: usize,
    pub rainbow_cliques: BigUint,
    pub color_counts: Vec<(String, u64)>,
    pub ratio: BigRational,
    pub bounds: Vec<BoundReport>,
}

impl KappaReport {
    pub fn ratio_f64(&self) -> f64 {
        rational_to_f64(&self.ratio)
    }
}

/// `((d-1)!)^d`, from Shearer's inequality.
pub fn kappa_shearer_bound(d: usize) -> BigUint {
    factorial(d as u64 - 1).pow(d as u32)
}

/// `(1/2) prod_{i=1}^{d-1} i^i`, valid for `d >= 3`.
pub fn kappa_inductive_bound(d: usize) -> BigRational {
    let prod = (1..d as u64).fold(BigUint::one(), |acc, i| acc * BigUint::from(i).pow(i as u32));
    BigRational::new(BigInt::from(prod), BigInt::from(2))
}

pub fn kappa_ratio(h: &ColoredHypergraph, d: usize, colors: &[&str]) -> Result<KappaReport> {
    let t = count_rainbow_cliques(h, d, colors)?;
    let mut color_counts = Vec::with_capacity(d);
    let mut denom = BigUint::one();
    for &c in colors {
        let n = h.color_count(c);
        if n == 0 {
            return Err(Error::EmptyColorClass(c.to_string()));
        }
        denom *= n;
        color_counts.push((c.to_string(), n));
    }
    let numer = t.pow(d as u32 - 1);
    let ratio = BigRational::new(numer.clone().into(), denom.clone().into());
    let int = |n: BigUint| BigRational::from_integer(n.into());

    let mut bounds = vec![BoundReport::upper_exact(
        "T^(d-1)/prod C_i",
        ratio.clone(),
        int(kappa_shearer_bound(d)),
        "Shearer: ((d-1)!)^d",
    )];
    if d >= 3 {
        bounds.push(BoundReport::upper_exact(
            "T^(d-1)/prod C_i",
            ratio.clone(),
            kappa_inductive_bound(d),
            "inductive entropy bound: (1/2) prod i^i",
        ));
    }
    bounds.push(BoundReport::upper_exact(
        "T^(d-1)/prod C_i",
        ratio.clone(),
        int(factorial(d as u64)),
        "joints bound: d!",
    ));
    if d == 3 {
        bounds.push(BoundReport::upper_exact(
            "T^2",
            int(numer),
            int(denom * 2u32),
            "rainbow triangle bound: T^2 <= 2RGB",
        ));
    }
    Ok(KappaReport {
        d,
        rainbow_cliques: t,
        color_counts,
        ratio,
        bounds,
    })
}

/// A family of `d`-subsets of `[ground_size]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground_size: usize,
    d: usize,
    members: Vec<Vec<Vertex>>,
}

impl SetFamily {
    /// Members are sorted internally; duplicates and wrong sizes are rejected.
    pub fn new(ground_size: usize, d: usize, members: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(members.len());
        for mut m in members {
            m.sort_unstable();
            if m.len() != d || m.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("{m:?} is not a {d}-set")));
            }
            if m.iter().any(|&v| v as usize >= ground_size) {
                return Err(Error::invalid(format!(
                    "{m:?} has an element outside [{ground_size}]"
                )));
            }
            if !seen.insert(m.clone()) {
                return Err(Error::invalid(format!("{m:?} appears twice")));
            }
            out.push(m);
        }
        Ok(SetFamily {
            ground_size,
            d,
            members: out,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[Vec<Vertex>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The family as an uncolored `d`-uniform hypergraph.
    pub fn to_hypergraph(&self, color: &str) -> ColoredHypergraph {
        let edges = self
            .members
            .iter()
            .map(|m| Edge::new(m.iter().copied(), color))
            .collect();
        ColoredHypergraph::new(self.ground_size, edges).expect("set family is simple")
    }
}

/// The lower shadow: all `(d-1)`-subsets of members, sorted and deduplicated.
pub fn shadow(fam: &SetFamily) -> Result<SetFamily> {
    if fam.d == 0 {
        return Err(Error::precondition("shadow needs d >= 1"));
    }
    let mut out: Vec<Vec<Vertex>> = fam
        .members
        .iter()
        .flat_map(|m| facets(m).collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(SetFamily {
        ground_size: fam.ground_size,
        d: fam.d - 1,
        members: out,
    })
}

/// Lovász's form of Kruskal–Katona: `|shadow| >= binom(t, d-1)` where
/// `binom(t, d) = |family|`.
pub fn check_kruskal_katona(fam: &SetFamily) -> Result<BoundReport> {
    if fam.is_empty() {
        return Err(Error::precondition("Kruskal-Katona check needs a nonempty family"));
    }
    let t = invert_binom(fam.len() as f64, fam.d, 0.0)?.t;
    let bound = binom_real(t, fam.d - 1)?;
    let sh = shadow(fam)?;
    Ok(BoundReport::lower(
        "|shadow|",
        BigInt::from(sh.len()),
        bound,
        "Lovasz-Kruskal-Katona: binom(t, d-1)",
    )
    .with_parameter(t))
}

/// Six-sets covered by three edges whose complements partition the six-set.
#[derive(Clone, Debug)]
pub struct Good6Report {
    pub edges: u64,
    pub good: BigUint,
    pub ratio: Option<BigRational>,
    pub bounds: Vec<BoundReport>,
}

/// Number of 6-sets `D` with edges `l1, l2, l3` inside `D` such that
/// `D \ l1`, `D \ l2`, `D \ l3` partition `D`. Requires a 4-uniform hypergraph.
///
/// Two of the edges meet in exactly two vertices and span `D`; the third is
/// their symmetric difference. Enumerating intersecting pairs therefore
/// reaches every counted set.
pub fn count_good_6subsets(h: &ColoredHypergraph) -> Result<BigUint> {
    h.require_sizes(&[4])?;
    let mut found: HashSet<Vec<Vertex>> = HashSet::new();
    let edges = &h.edges;
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            let common: Vec<Vertex> = a
                .vertices
                .iter()
                .copied()
                .filter(|v| b.vertices.contains(v))
                .collect();
            if common.len() != 2 {
                continue;
            }
            let mut sym: Vec<Vertex> = a
                .vertices
                .iter()
                .chain(&b.vertices)
                .copied()
                .filter(|v| !common.contains(v))
                .collect();
            sym.sort_unstable();
            if h.contains(&sym) {
                let mut delta: Vec<Vertex> = sym;
                delta.extend_from_slice(&common);
                delta.sort_unstable();
                found.insert(delta);
            }
        }
    }
    Ok(BigUint::from(found.len()))
}

pub fn good6_report(h: &ColoredHypergraph) -> Result<Good6Report> {
    let good = count_good_6subsets(h)?;
    let n = h.edge_count() as u64;
    let mut bounds = Vec::new();
    let ratio = (n > 0).then(|| {
        BigRational::new(
            BigInt::from(good.pow(2)),
            BigInt::from(BigUint::from(n).pow(3)),
        )
    });
    if let Some(r) = &ratio {
        bounds.push(BoundReport::upper_exact(
            "J^2/N^3",
            r.clone(),
            BigRational::new(10.into(), 3.into()),
            "joints of 2-flats bound: 10/3",
        ));
        bounds.push(
            BoundReport::upper_exact(
                "J^2/N^3",
                r.clone(),
                BigRational::new(2.into(), 7.into()),
                "conjectured optimum: 2/7",
            )
            .as_conjecture(),
        );
    }
    Ok(Good6Report {
        edges: n,
        good,
        ratio,
        bounds,
    })
}

/// Counts for the mixed 2-edge/3-edge problem.
#[derive(Clone, Debug)]
pub struct MixedReport {
    pub two_edges: u64,
    pub three_edges: u64,
    pub good: BigUint,
    /// `J^2 / (N_2 N_3^2)`, absent when either edge class is empty.
    pub ratio: Option<BigRational>,
    pub bounds: Vec<BoundReport>,
}

/// Number of 4-sets labelable so that `{v1,v2,v3}`, `{v1,v2,v4}` are 3-edges
/// and `{v3,v4}` is a 2-edge.
pub fn count_good_4subsets_mixed(h: &ColoredHypergraph) -> Result<MixedReport> {
    h.require_sizes(&[2, 3])?;
    let triples: Vec<&Edge> = h.edges.iter().filter(|e| e.len() == 3).collect();
    let n2 = h.edges.len() as u64 - triples.len() as u64;
    let n3 = triples.len() as u64;
    let mut found: HashSet<Vec<Vertex>> = HashSet::new();
    for (i, a) in triples.iter().enumerate() {
        for b in &triples[i + 1..] {
            let common = a.vertices.iter().filter(|v| b.vertices.contains(v)).count();
            if common != 2 {
                continue;
            }
            let x = *a.vertices.iter().find(|v| !b.vertices.contains(v)).unwrap();
            let y = *b.vertices.iter().find(|v| !a.vertices.contains(v)).unwrap();
            let pair = if x < y { [x, y] } else { [y, x] };
            if h.contains(&pair) {
                let mut delta = a.vertices.clone();
                delta.push(y);
                delta.sort_unstable();
                found.insert(delta);
            }
        }
    }
    let good = BigUint::from(found.len());
    let mut bounds = Vec::new();
    let ratio = (n2 > 0 && n3 > 0).then(|| {
        BigRational::new(
            BigInt::from(good.pow(2)),
            BigInt::from(n2) * BigInt::from(n3).pow(2),
        )
    });
    if let Some(r) = &ratio {
        bounds.push(BoundReport::upper_exact(
            "J^2/(N2 N3^2)",
            r.clone(),
            BigRational::new(9.into(), 2.into()),
            "Shearer: 9/2",
        ));
        bounds.push(BoundReport::upper_exact(
            "J^2/(N2 N3^2)",
            r.clone(),
            BigRational::from_integer(3.into()),
            "joints of a 2-flat and two lines: 3",
        ));
        bounds.push(
            BoundReport::upper_exact(
                "J^2/(N2 N3^2)",
                r.clone(),
                BigRational::new(3.into(), 2.into()),
                "conjectured optimum: 3/2",
            )
            .as_conjecture(),
        );
    }
    Ok(MixedReport {
        two_edges: n2,
        three_edges: n3,
        good,
        ratio,
        bounds,
    })
}

pub const COVERING_COLORS: [&str; 3] = ["red", "green", "blue"];

#[derive(Clone, Debug)]
pub struct CoveringReport {
    pub delta: usize,
    pub red: u64,
    pub green: u64,
    pub blue: u64,
    pub good: BigUint,
    pub ratio: Option<BigRational>,
    pub bounds: Vec<BoundReport>,
}

/// Number of `(delta+3)`-sets containing an edge of each of red, green and
/// blue in a `(delta+2)`-uniform hypergraph.
pub fn count_color_covering_subsets(h: &ColoredHypergraph, delta: usize) -> Result<CoveringReport> {
    h.require_sizes(&[delta + 2])?;
    for e in &h.edges {
        if !COVERING_COLORS.contains(&e.color.as_str()) {
            return Err(Error::Color(format!(
                "color `{}` is not one of red, green, blue",
                e.color
            )));
        }
    }
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut good: u64 = 0;
    for e in &h.edges {
        for v in 0..h.vertex_count as Vertex {
            let Some(set) = extend(&e.vertices, v) else {
                continue;
            };
            if !seen.insert(set.clone()) {
                continue;
            }
            let mut hit = [false; 3];
            for f in facets(&set) {
                if let Some(c) = h.color_of(&f) {
                    let j = COVERING_COLORS.iter().position(|&x| x == c).unwrap();
                    hit[j] = true;
                }
            }
            if hit.iter().all(|&b| b) {
                good += 1;
            }
        }
    }
    let [r, g, b] = COVERING_COLORS.map(|c| h.color_count(c));
    let good = BigUint::from(good);
    let mut bounds = Vec::new();
    let ratio = (r > 0 && g > 0 && b > 0).then(|| {
        BigRational::new(
            BigInt::from(good.pow(2)),
            BigInt::from(r) * BigInt::from(g) * BigInt::from(b),
        )
    });
    if let Some(q) = &ratio {
        bounds.push(BoundReport::upper_exact(
            "J^2/RGB",
            q.clone(),
            BigRational::from_integer(6.into()),
            "joints bound: 6",
        ));
        let two = BoundReport::upper_exact(
            "J^2/RGB",
            q.clone(),
            BigRational::from_integer(2.into()),
            if delta == 0 {
                "rainbow triangle bound: 2"
            } else {
                "conjectured: 2"
            },
        );
        bounds.push(if delta == 0 { two } else { two.as_conjecture() });
    }
    Ok(CoveringReport {
        delta,
        red: r,
        green: g,
        blue: b,
        good,
        ratio,
        bounds,
    })
}

/// Number of `r`-sets containing at least `r - k` edges of an
/// `(r-1)`-uniform hypergraph. Colors are ignored.
pub fn count_partial_shadow_targets(h: &ColoredHypergraph, r: usize, k: usize) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::precondition("partial shadow needs r >= 2"));
    }
    if k > r {
        return Err(Error::precondition(format!("need k <= r, got k = {k}, r = {r}")));
    }
    h.require_sizes(&[r - 1])?;
    if k == r {
        return Ok(crate::numkit::binomial(h.vertex_count as u64, r as u64));
    }
    let need = r - k;
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut m: u64 = 0;
    for e in &h.edges {
        for v in 0..h.vertex_count as Vertex {
            let Some(set) = extend(&e.vertices, v) else {
                continue;
            };
            if !seen.insert(set.clone()) {
                continue;
            }
            if facets(&set).filter(|f| h.contains(f)).count() >= need {
                m += 1;
            }
        }
    }
    Ok(BigUint::from(m))
}

/// `e(h) >= binom(x, r-k-1)` where `binom(x, r-k) = m`.
pub fn check_partial_shadow_bound(h: &ColoredHypergraph, r: usize, k: usize) -> Result<BoundReport> {
    if k >= r {
        return Err(Error::precondition("partial shadow bound needs k < r"));
    }
    let m = count_partial_shadow_targets(h, r, k)?;
    if m.is_zero() {
        return Err(Error::precondition("partial shadow bound needs m >= 1"));
    }
    let m = m.to_f64().unwrap_or(f64::INFINITY);
    let x = invert_binom(m, r - k, 0.0)?.t;
    let bound = binom_real(x, r - k - 1)?;
    Ok(BoundReport::lower(
        "e(H)",
        BigInt::from(h.edge_count()),
        bound,
        "partial shadow: binom(x, r-k-1)",
    )
    .with_parameter(x))
}

/// `sum over d-sets of w^{d/(d-1)}`, stored as radicands under a common root.
#[derive(Clone, Debug)]
pub struct WeightedJointSum {
    pub d: usize,
    pub total_weight: u64,
    /// For each d-set with all facets positive, the product of facet weights.
    /// Its term in the sum is `radicand^(1/(d-1))`.
    pub radicands: Vec<BigUint>,
    pub sum: f64,
    pub report: BoundReport,
}

/// `((d-1)!)^{1/(d-1)} / d * N^{d/(d-1)}`.
pub fn weighted_bound(d: usize, total_weight: f64) -> f64 {
    let e = 1.0 / (d as f64 - 1.0);
    let fact: f64 = (1..d).map(|i| i as f64).product();
    fact.powf(e) / d as f64 * total_weight.powf(d as f64 * e)
}

/// Weighted joint sum of a complete weighted `(d-1)`-uniform hypergraph.
/// Edges missing from `h` have weight zero.
pub fn weighted_joint_sum(h: &ColoredHypergraph, d: usize) -> Result<WeightedJointSum> {
    if d < 2 {
        return Err(Error::precondition("weighted joint sum needs d >= 2"));
    }
    h.require_sizes(&[d - 1])?;
    for (i, e) in h.edges.iter().enumerate() {
        if e.effective_weight() < 0 {
            return Err(Error::NegativeWeight {
                edge: i,
                weight: e.effective_weight(),
            });
        }
    }
    let mut radicands = Vec::new();
    for e in h.edges.iter().filter(|e| e.effective_weight() > 0) {
        let top = *e.vertices.last().unwrap();
        // Extending only past the largest vertex visits each d-set once.
        for v in top + 1..h.vertex_count as Vertex {
            let mut set = e.vertices.clone();
            set.push(v);
            let mut prod = BigUint::one();
            for f in facets(&set) {
                let w = h.weight(&f);
                if w == 0 {
                    prod = BigUint::zero();
                    break;
                }
                prod *= w as u64;
            }
            if !prod.is_zero() {
                radicands.push(prod);
            }
        }
    }
    let root = 1.0 / (d as f64 - 1.0);
    let sum: f64 = radicands
        .iter()
        .map(|p| p.to_f64().unwrap_or(f64::INFINITY).powf(root))
        .sum();
    let total = h.total_weight() as u64;
    let bound = weighted_bound(d, total as f64);
    let report = BoundReport::upper_with_tolerance(
        "sum w^(d/(d-1))",
        sum,
        bound,
        crate::report::BOUND_TOLERANCE * bound.max(1.0),
        "weighted joints: ((d-1)!)^(1/(d-1))/d * N^(d/(d-1))",
    );
    Ok(WeightedJointSum {
        d,
        total_weight: total,
        radicands,
        sum,
        report,
    })
}

/// Trace quantities of the entrywise square root of a weighted graph's
/// adjacency matrix.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub trace_m2: f64,
    pub trace_m3: f64,
    pub total_weight: u64,
    pub joint_sum: f64,
    /// `tr(M^2) = 2N` within [`TRACE_TOLERANCE`].
    pub m2_identity: bool,
    /// `tr(M^3) = 6 * joint_sum` within [`TRACE_TOLERANCE`].
    pub m3_identity: bool,
    /// `tr(M^3)^2 <= tr(M^2)^3`.
    pub report: BoundReport,
}

impl SpectralReport {
    pub fn holds(&self) -> bool {
        self.m2_identity && self.m3_identity && self.report.satisfied
    }
}

pub fn spectral_trace_check(h: &ColoredHypergraph) -> Result<SpectralReport> {
    let sum = weighted_joint_sum(h, 3)?;
    let n = h.vertex_count;
    let mut m = vec![0.0f64; n * n];
    for e in &h.edges {
        let (i, j) = (e.vertices[0] as usize, e.vertices[1] as usize);
        let s = (e.effective_weight() as f64).sqrt();
        m[i * n + j] = s;
        m[j * n + i] = s;
    }
    let m2 = matmul(&m, &m, n);
    let trace_m2: f64 = (0..n).map(|i| m2[i * n + i]).sum();
    // tr(M^3) = sum_ij (M^2)_ij M_ji
    let trace_m3: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| m2[i * n + j] * m[j * n + i])
        .sum();
    let two_n = 2.0 * sum.total_weight as f64;
    let lhs = trace_m3 * trace_m3;
    let rhs = trace_m2.powi(3);
    let report = BoundReport::upper_with_tolerance(
        "tr(M^3)^2",
        lhs,
        rhs,
        crate::report::BOUND_TOLERANCE * rhs.max(1.0),
        "power-sum inequality: tr(M^3)^2 <= tr(M^2)^3",
    );
    Ok(SpectralReport {
        trace_m2,
        trace_m3,
        total_weight: sum.total_weight,
        joint_sum: sum.sum,
        m2_identity: (trace_m2 - two_n).abs() <= TRACE_TOLERANCE,
        m3_identity: (trace_m3 - 6.0 * sum.sum).abs() <= TRACE_TOLERANCE,
        report,
    })
}

fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> ColoredHypergraph {
        ColoredHypergraph::new(
            4,
            vec![
                Edge::new([0, 1], "red"),
                Edge::new([2, 3], "red"),
                Edge::new([0, 3], "blue"),
                Edge::new([1, 2], "blue"),
                Edge::new([0, 2], "green"),
                Edge::new([1, 3], "green"),
            ],
        )
        .unwrap()
    }

    const RGB: [&str; 3] = ["red", "green", "blue"];

    #[test]
    fn fig1_k4_has_four_rainbow_triangles() {
        assert_eq!(count_rainbow_cliques(&k4(), 3, &RGB).unwrap(), 4u32.into());
        assert!(k4().validate().is_valid());
    }

    #[test]
    fn empty_graph_has_no_rainbow_triangles() {
        let h = ColoredHypergraph::empty(5);
        assert_eq!(count_rainbow_cliques(&h, 3, &RGB).unwrap(), 0u32.into());
        assert!(matches!(kappa_ratio(&h, 3, &RGB), Err(Error::EmptyColorClass(_))));
    }

    #[test]
    fn uniformity_is_enforced_for_listed_colors() {
        let h = ColoredHypergraph::new(
            4,
            vec![Edge::new([0, 1, 2], "red"), Edge::new([0, 3], "yellow")],
        )
        .unwrap();
        assert!(matches!(
            count_rainbow_cliques(&h, 3, &RGB),
            Err(Error::Uniformity { edge: 0, .. })
        ));
        // unlisted colors are not constrained
        let h = ColoredHypergraph::new(4, vec![Edge::new([0, 1, 2], "yellow")]).unwrap();
        assert_eq!(count_rainbow_cliques(&h, 3, &RGB).unwrap(), 0u32.into());
    }

    #[test]
    fn repeated_colors_rejected() {
        assert!(matches!(
            count_rainbow_cliques(&k4(), 3, &["red", "red", "blue"]),
            Err(Error::Color(_))
        ));
    }

    #[test]
    fn single_triangle_kappa() {
        let h = ColoredHypergraph::new(
            3,
            vec![
                Edge::new([0, 1], "red"),
                Edge::new([1, 2], "green"),
                Edge::new([0, 2], "blue"),
            ],
        )
        .unwrap();
        let rep = kappa_ratio(&h, 3, &RGB).unwrap();
        assert_eq!(rep.ratio, BigRational::one());
        assert!(rep.bounds.iter().all(|b| b.satisfied));
        assert_eq!(rep.bounds.len(), 4);
    }

    #[test]
    fn kappa_bound_constants() {
        assert_eq!(kappa_shearer_bound(3), 8u32.into());
        assert_eq!(kappa_shearer_bound(4), 1296u32.into());
        assert_eq!(kappa_inductive_bound(3), BigRational::from_integer(2.into()));
        assert_eq!(kappa_inductive_bound(4), BigRational::from_integer(54.into()));
    }

    #[test]
    fn validation_reports_each_violation() {
        let edges = vec![Edge::new([0, 1], "red"), Edge::new([1, 0], "blue")];
        let rep = validate(2, &edges);
        assert_eq!(
            rep.violations,
            vec![Violation {
                edge: 1,
                kind: ViolationKind::DuplicateVertexSet { first: 0 }
            }]
        );
        let rep = validate(2, &[Edge::new([0, 2], "red")]);
        assert_eq!(rep.violations[0].kind, ViolationKind::VertexOutOfRange { vertex: 2 });
        let rep = validate(3, &[Edge::new([1, 1], "red"), Edge::new(Vec::new(), "red")]);
        assert_eq!(rep.violations.len(), 2);
        let rep = validate(3, &[Edge::weighted([0, 1], "w", -2)]);
        assert_eq!(rep.violations[0].kind, ViolationKind::NegativeWeight { weight: -2 });
        assert!(ColoredHypergraph::new(2, edges).is_err());
    }

    #[test]
    fn shadow_examples() {
        let fam = SetFamily::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(
            shadow(&fam).unwrap().members(),
            &[vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        let fam = SetFamily::new(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(shadow(&fam).unwrap().len(), 5);
    }

    #[test]
    fn set_family_rejects_bad_members() {
        assert!(SetFamily::new(3, 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(SetFamily::new(3, 2, vec![vec![0, 3]]).is_err());
        assert!(SetFamily::new(3, 2, vec![vec![0, 1, 2]]).is_err());
        assert!(SetFamily::new(3, 2, vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn kruskal_katona_examples() {
        let fam = SetFamily::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let r = check_kruskal_katona(&fam).unwrap();
        assert_eq!(r.parameter, Some(3.0));
        assert_eq!(r.bound, 3.0);
        assert!(r.satisfied && r.is_tight());

        let fam = SetFamily::new(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let r = check_kruskal_katona(&fam).unwrap();
        assert!((r.parameter.unwrap() - 3.434841368216901).abs() < 1e-9);
        assert!((r.bound - 4.181646928298626).abs() < 1e-9);
        assert!(r.satisfied && !r.is_tight());

        let empty = SetFamily::new(3, 2, vec![]).unwrap();
        assert!(check_kruskal_katona(&empty).is_err());
    }

    #[test]
    fn good6_small_examples() {
        let one = ColoredHypergraph::new(4, vec![Edge::new([0, 1, 2, 3], "e")]).unwrap();
        assert_eq!(count_good_6subsets(&one).unwrap(), 0u32.into());
        let three = ColoredHypergraph::new(
            6,
            vec![
                Edge::new([0, 1, 2, 3], "e"),
                Edge::new([0, 1, 4, 5], "e"),
                Edge::new([2, 3, 4, 5], "e"),
            ],
        )
        .unwrap();
        assert_eq!(count_good_6subsets(&three).unwrap(), 1u32.into());
        let bad = ColoredHypergraph::new(3, vec![Edge::new([0, 1, 2], "e")]).unwrap();
        assert!(matches!(count_good_6subsets(&bad), Err(Error::Uniformity { .. })));
    }

    #[test]
    fn mixed_small_examples() {
        let h = ColoredHypergraph::new(2, vec![Edge::new([0, 1], "e")]).unwrap();
        let r = count_good_4subsets_mixed(&h).unwrap();
        assert_eq!(r.good, 0u32.into());
        assert!(r.ratio.is_none());

        let h = ColoredHypergraph::new(
            4,
            vec![
                Edge::new([0, 1, 2], "e"),
                Edge::new([0, 1, 3], "e"),
                Edge::new([2, 3], "e"),
            ],
        )
        .unwrap();
        let r = count_good_4subsets_mixed(&h).unwrap();
        assert_eq!(r.good, 1u32.into());
        assert_eq!(r.ratio, Some(BigRational::new(1.into(), 4.into())));

        let h = ColoredHypergraph::new(4, vec![Edge::new([0, 1, 2, 3], "e")]).unwrap();
        assert!(count_good_4subsets_mixed(&h).is_err());
    }

    #[test]
    fn covering_examples() {
        let r = count_color_covering_subsets(&k4(), 0).unwrap();
        assert_eq!(r.good, 4u32.into());
        assert!(!r.bounds[1].conjecture);

        let h = ColoredHypergraph::new(
            4,
            vec![
                Edge::new([0, 1, 2], "red"),
                Edge::new([0, 1, 3], "green"),
                Edge::new([0, 2, 3], "blue"),
            ],
        )
        .unwrap();
        let r = count_color_covering_subsets(&h, 1).unwrap();
        assert_eq!(r.good, 1u32.into());
        assert!(r.bounds[1].conjecture);

        let h = ColoredHypergraph::new(3, vec![Edge::new([0, 1], "red"), Edge::new([1, 2], "red")])
            .unwrap();
        let r = count_color_covering_subsets(&h, 0).unwrap();
        assert_eq!(r.good, 0u32.into());
        assert!(r.bounds.is_empty());

        let h = ColoredHypergraph::new(2, vec![Edge::new([0, 1], "purple")]).unwrap();
        assert!(matches!(count_color_covering_subsets(&h, 0), Err(Error::Color(_))));
    }

    fn star() -> ColoredHypergraph {
        ColoredHypergraph::new(
            4,
            vec![Edge::new([0, 1], "e"), Edge::new([0, 2], "e"), Edge::new([0, 3], "e")],
        )
        .unwrap()
    }

    #[test]
    fn partial_shadow_examples() {
        assert_eq!(count_partial_shadow_targets(&star(), 3, 1).unwrap(), 3u32.into());
        let r = check_partial_shadow_bound(&star(), 3, 1).unwrap();
        assert_eq!(r.parameter, Some(3.0));
        assert_eq!(r.bound, 3.0);
        assert!(r.is_tight());

        let tri = ColoredHypergraph::new(
            3,
            vec![Edge::new([0, 1], "e"), Edge::new([0, 2], "e"), Edge::new([1, 2], "e")],
        )
        .unwrap();
        assert_eq!(count_partial_shadow_targets(&tri, 3, 0).unwrap(), 1u32.into());
        let r = check_partial_shadow_bound(&tri, 3, 0).unwrap();
        assert_eq!((r.parameter, r.bound), (Some(3.0), 3.0));
        assert!(r.is_tight());

        let empty = ColoredHypergraph::empty(5);
        assert_eq!(count_partial_shadow_targets(&empty, 3, 1).unwrap(), 0u32.into());
        assert!(check_partial_shadow_bound(&empty, 3, 1).is_err());
        assert_eq!(count_partial_shadow_targets(&empty, 3, 3).unwrap(), 10u32.into());
    }

    fn complete_weighted(n: u32, w: i64) -> ColoredHypergraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push(Edge::weighted([i, j], "w", w));
            }
        }
        ColoredHypergraph::new(n as usize, edges).unwrap()
    }

    #[test]
    fn weighted_sum_examples() {
        let s = weighted_joint_sum(&complete_weighted(4, 1), 3).unwrap();
        assert!((s.sum - 4.0).abs() < 1e-12);
        assert!((s.report.bound - 2f64.sqrt() / 3.0 * 6f64.powf(1.5)).abs() < 1e-12);
        assert!((s.report.bound - 6.9282).abs() < 1e-4);
        assert!(s.report.satisfied);

        let one = ColoredHypergraph::new(3, vec![Edge::weighted([0, 1], "w", 5)]).unwrap();
        let s = weighted_joint_sum(&one, 3).unwrap();
        assert_eq!(s.sum, 0.0);
        assert!(s.report.satisfied);

        for m in [1i64, 4, 9] {
            let s = weighted_joint_sum(&complete_weighted(3, m), 3).unwrap();
            let expect = (m as f64).powf(1.5);
            assert!((s.sum - expect).abs() < 1e-9);
            let bound = 2f64.sqrt() / 3.0 * (3.0 * m as f64).powf(1.5);
            assert!((s.report.bound - bound).abs() < 1e-9 && s.report.satisfied);
        }
    }

    #[test]
    fn negative_weight_rejected() {
        let edges = vec![Edge::weighted([0, 1], "w", -1)];
        assert!(ColoredHypergraph::new(2, edges).is_err());
    }

    #[test]
    fn spectral_examples() {
        let s = spectral_trace_check(&complete_weighted(4, 1)).unwrap();
        assert!((s.trace_m2 - 12.0).abs() < 1e-9);
        assert!((s.trace_m3 - 24.0).abs() < 1e-9);
        assert!(s.holds());
        let z = spectral_trace_check(&ColoredHypergraph::empty(4)).unwrap();
        assert_eq!((z.trace_m2, z.trace_m3), (0.0, 0.0));
        assert!(z.holds());
    }
}
