//! Edge-list input and serializable output documents.
//!
//! Edge lists start with a header `n m` followed by `m` lines `u v`
//! (0-based). Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::inverse::{is_balanced, SignedWeightedGraph};
use crate::structure::ReductionTrace;
use crate::{BigInt, Error, Graph, Result};

pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn numbers(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| parse_err(line, format!("{what} `{tok}` is not a nonnegative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(parse_err(line, format!("unexpected token `{extra}`")));
    }
    Ok((a, b))
}

/// Parses an edge-list document, rejecting out-of-range ids, loops,
/// duplicate edges and a wrong edge count.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let (n, m) = numbers(hline, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, text) in lines {
        let (u, v) = numbers(line, text)?;
        for x in [u, v] {
            if x >= n {
                return Err(parse_err(line, format!("vertex {x} out of range for n = {n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if edges.contains(&key) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        edges.push(key);
        last = line;
    }
    if edges.len() != m {
        return Err(parse_err(last, format!("header declares {m} edges but {} were given", edges.len())));
    }
    Graph::from_edge_list(n, edges)
}

/// Canonical edge-list text: header then edges in sorted order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalValue {
    pub num: String,
    pub den: String,
}

impl RationalValue {
    pub fn new(x: &crate::Rational) -> Self {
        RationalValue { num: x.numer().to_string(), den: x.denom().to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseEntry {
    pub u: usize,
    pub v: usize,
    pub num: String,
    pub den: String,
}

/// Edge counts of the inverse graph by sign, loops separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InverseShape {
    pub positive_edges: usize,
    pub negative_edges: usize,
    pub loops: usize,
}

/// Nonzero entries of `A⁻¹` with `u ≤ v`; `balanced` is only present for
/// signed inverses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseDocument {
    pub n: usize,
    pub det: RationalValue,
    pub entries: Vec<InverseEntry>,
    pub signed: bool,
    pub balanced: Option<bool>,
    pub structure: InverseShape,
}

impl InverseDocument {
    pub fn new(det: &BigInt, inv: &SignedWeightedGraph) -> Self {
        let signed = inv.is_signed();
        let off = |neg: bool| inv.entries().filter(|(u, v, w)| u != v && w.is_negative() == neg).count();
        InverseDocument {
            n: inv.vertex_count(),
            det: RationalValue { num: det.to_string(), den: "1".into() },
            entries: inv
                .entries()
                .map(|(u, v, w)| InverseEntry { u, v, num: w.numer().to_string(), den: w.denom().to_string() })
                .collect(),
            signed,
            balanced: if signed { is_balanced(inv).ok() } else { None },
            structure: InverseShape { positive_edges: off(false), negative_edges: off(true), loops: inv.loop_count() },
        }
    }

    /// Edge-list rendering: `u v num/den` per line.
    pub fn to_edge_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            if e.den == "1" {
                let _ = writeln!(out, "{} {} {}", e.u, e.v, e.num);
            } else {
                let _ = writeln!(out, "{} {} {}/{}", e.u, e.v, e.num, e.den);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReduceDocument {
    pub steps: Vec<[usize; 2]>,
    pub reducible: bool,
    pub residual_vertices: Vec<usize>,
    pub residual_edges: Vec<[usize; 2]>,
    #[serde(serialize_with = "serialize_bigint")]
    pub residual_det: BigInt,
}

impl ReduceDocument {
    pub fn new(trace: &ReductionTrace) -> Self {
        ReduceDocument {
            steps: trace.steps.iter().map(|&(u, v)| [u, v]).collect(),
            reducible: trace.is_reducible(),
            residual_vertices: trace.residual.vertices.clone(),
            residual_edges: trace.residual.host_edges().into_iter().map(|(u, v)| [u, v]).collect(),
            residual_det: crate::det::det_harary(&trace.residual.graph),
        }
    }
}
