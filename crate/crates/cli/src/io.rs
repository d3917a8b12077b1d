//! File formats: hypergraphs (JSON or line text), set families, subspace
//! families and exact distributions.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use shadowlab::entropy::ExactDistribution;
use shadowlab::qlinalg::SubspaceFamily;
use shadowlab::{ColoredHypergraph, Edge, Error, Result, SetFamily, Vertex};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    v: Vec<Vertex>,
    color: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphJson {
    vertices: usize,
    edges: Vec<EdgeJson>,
}

/// Raw edges as written in the input, before any validation or sorting.
#[derive(Clone, Debug)]
pub struct RawHypergraph {
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

impl RawHypergraph {
    pub fn build(self) -> Result<ColoredHypergraph> {
        ColoredHypergraph::new(self.vertices, self.edges)
    }
}

fn parse_error(msg: impl std::fmt::Display) -> Error {
    Error::Invalid(msg.to_string())
}

/// Reads JSON when the content starts with `{`, the line format otherwise.
pub fn parse_hypergraph(content: &str) -> Result<RawHypergraph> {
    if content.trim_start().starts_with('{') {
        parse_hypergraph_json(content)
    } else {
        parse_hypergraph_text(content)
    }
}

fn parse_hypergraph_json(content: &str) -> Result<RawHypergraph> {
    let h: HypergraphJson = serde_json::from_str(content).map_err(parse_error)?;
    let edges = h
        .edges
        .into_iter()
        .map(|e| Edge {
            vertices: e.v,
            color: e.color,
            weight: e.weight,
        })
        .collect();
    Ok(RawHypergraph {
        vertices: h.vertices,
        edges,
    })
}

/// One edge per line as `color v1 v2 ...`; `#` starts a comment and an
/// optional `vertices N` line fixes the vertex count.
fn parse_hypergraph_text(content: &str) -> Result<RawHypergraph> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (no, line) in content.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or_default();
        let nums = words
            .map(|w| w.parse::<Vertex>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_error(format!("line {}: {e}", no + 1)))?;
        if head == "vertices" {
            match nums.as_slice() {
                [n] => declared = Some(*n as usize),
                _ => return Err(parse_error(format!("line {}: expected `vertices N`", no + 1))),
            }
            continue;
        }
        edges.push(Edge {
            vertices: nums,
            color: head.to_string(),
            weight: None,
        });
    }
    let implied = edges
        .iter()
        .flat_map(|e| e.vertices.iter())
        .map(|&v| v as usize + 1)
        .max()
        .unwrap_or(0);
    Ok(RawHypergraph {
        vertices: declared.unwrap_or(implied),
        edges,
    })
}

pub fn hypergraph_to_json(h: &ColoredHypergraph) -> String {
    let doc = HypergraphJson {
        vertices: h.vertex_count(),
        edges: h
            .edges()
            .iter()
            .map(|e| EdgeJson {
                v: e.vertices.clone(),
                color: e.color.clone(),
                weight: e.weight,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("hypergraph serializes");
    s.push('\n');
    s
}

pub fn hypergraph_to_text(h: &ColoredHypergraph) -> String {
    let mut s = format!("vertices {}\n", h.vertex_count());
    for e in h.edges() {
        let _ = write!(s, "{}", e.color);
        for v in &e.vertices {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFamilyJson {
    n: usize,
    d: usize,
    sets: Vec<Vec<Vertex>>,
}

pub fn parse_set_family(content: &str) -> Result<SetFamily> {
    let f: SetFamilyJson = serde_json::from_str(content).map_err(parse_error)?;
    SetFamily::new(f.n, f.d, f.sets)
}

pub fn set_family_to_json(f: &SetFamily) -> String {
    let doc = SetFamilyJson {
        n: f.ground_size(),
        d: f.d(),
        sets: f.members().to_vec(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("family serializes");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceFamilyJson {
    q: u32,
    n: usize,
    d: usize,
    /// Each member given by a spanning list of vectors.
    members: Vec<Vec<Vec<u32>>>,
}

pub fn parse_subspace_family(content: &str) -> Result<SubspaceFamily> {
    let f: SubspaceFamilyJson = serde_json::from_str(content).map_err(parse_error)?;
    SubspaceFamily::from_bases(f.q, f.n, f.d, f.members)
}

pub fn subspace_family_to_json(f: &SubspaceFamily) -> String {
    let doc = SubspaceFamilyJson {
        q: f.q(),
        n: f.n(),
        d: f.d(),
        members: f.members().iter().map(|m| m.basis().to_vec()).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("family serializes");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomJson {
    tuple: Vec<u32>,
    /// Exact probability as `"a/b"` or an integer.
    p: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionJson {
    arity: usize,
    support: Vec<AtomJson>,
}

pub fn parse_distribution(content: &str) -> Result<ExactDistribution> {
    let d: DistributionJson = serde_json::from_str(content).map_err(parse_error)?;
    let support = d
        .support
        .into_iter()
        .map(|a| {
            let p = BigRational::from_str(a.p.trim())
                .map_err(|_| parse_error(format!("probability `{}` is not a rational", a.p)))?;
            Ok((a.tuple, p))
        })
        .collect::<Result<Vec<_>>>()?;
    ExactDistribution::new(d.arity, support)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let text = "# a triangle\nred 0 1\ngreen 1 2\nblue 0 2\n";
        let a = parse_hypergraph(text).unwrap().build().unwrap();
        let b = parse_hypergraph(&hypergraph_to_json(&a)).unwrap().build().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertex_count(), 3);
        let c = parse_hypergraph(&hypergraph_to_text(&a)).unwrap().build().unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn header_fixes_vertex_count() {
        let h = parse_hypergraph("vertices 7\nred 0 1\n").unwrap();
        assert_eq!(h.vertices, 7);
        assert!(parse_hypergraph("vertices\n").is_err());
        assert!(parse_hypergraph("red 0 x\n").is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = r#"{"vertices": 2, "edges": [{"v": [0, 1], "color": "red", "extra": 1}]}"#;
        assert!(parse_hypergraph(bad).is_err());
        let bad = r#"{"vertices": 2, "edges": [], "name": "x"}"#;
        assert!(parse_hypergraph(bad).is_err());
    }

    #[test]
    fn unsorted_edges_survive_parsing_for_validation() {
        let raw = parse_hypergraph(r#"{"vertices": 3, "edges": [{"v": [2, 0], "color": "red"}]}"#).unwrap();
        assert_eq!(raw.edges[0].vertices, vec![2, 0]);
        assert!(raw.build().is_err());
    }

    #[test]
    fn distributions() {
        let d = parse_distribution(r#"{"arity": 1, "support": [{"tuple": [0], "p": "1/4"}, {"tuple": [1], "p": "3/4"}]}"#)
            .unwrap();
        assert_eq!(d.len(), 2);
        assert!(parse_distribution(r#"{"arity": 1, "support": [{"tuple": [0], "p": "1/3"}]}"#).is_err());
        assert!(parse_distribution(r#"{"arity": 1, "support": [{"tuple": [0], "p": "x"}]}"#).is_err());
    }

    #[test]
    fn families() {
        let f = parse_set_family(r#"{"n": 4, "d": 3, "sets": [[0, 1, 2], [0, 1, 3]]}"#).unwrap();
        assert_eq!(parse_set_family(&set_family_to_json(&f)).unwrap(), f);
        let s = parse_subspace_family(r#"{"q": 2, "n": 3, "d": 2, "members": [[[1, 0, 0], [0, 1, 0]]]}"#).unwrap();
        assert_eq!(parse_subspace_family(&subspace_family_to_json(&s)).unwrap(), s);
        assert!(parse_subspace_family(r#"{"q": 4, "n": 3, "d": 1, "members": []}"#).is_err());
    }
}
