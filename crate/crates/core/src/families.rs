//! Parameterized graph families with canonical labelings.
//!
//! * cycle `C_n`: vertices `0..n` in cyclic order.
//! * path `P_n`: vertices `0..n` in order.
//! * theta `Θ(a,b,c)`: central vertices `0` and `1`, then the interiors of
//!   the three central paths in nondecreasing length order, each listed from
//!   the `0` side.
//! * barbell `B(a,b;t)`: first cycle `0..a` with junction `a-1`, then the
//!   interior of the central path, then the second cycle starting at its
//!   junction.
//! * pendants: each new leaf gets the next free id, in attachment order.

use serde::Serialize;

use crate::{Error, Graph, Result};

/// `Θ(θ1,θ2,θ3)`: three internally disjoint paths with `θi` vertices each
/// (central vertices included) joining two central vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ThetaSpec {
    /// Vertex counts of the central paths, sorted ascending.
    pub paths: [usize; 3],
}

impl ThetaSpec {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut paths = [a, b, c];
        paths.sort_unstable();
        if paths[0] < 2 {
            return Err(Error::input(format!("theta path needs at least 2 vertices, got {}", paths[0])));
        }
        if paths[1] == 2 {
            return Err(Error::input("at most one theta path may have 2 vertices (no parallel edges)"));
        }
        Ok(ThetaSpec { paths })
    }

    pub fn vertex_count(&self) -> usize {
        self.paths.iter().sum::<usize>() - 4
    }
}

/// `B(θ1,θ2;θ)`: cycles of lengths `θ1`, `θ2` joined by a path with `θ`
/// vertices; `θ = 1` is the bowtie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BarbellSpec {
    pub first_cycle: usize,
    pub second_cycle: usize,
    pub path: usize,
}

impl BarbellSpec {
    pub fn new(first_cycle: usize, second_cycle: usize, path: usize) -> Result<Self> {
        if first_cycle < 3 || second_cycle < 3 {
            return Err(Error::input("barbell cycles need at least 3 vertices"));
        }
        if path < 1 {
            return Err(Error::input("barbell central path needs at least 1 vertex"));
        }
        Ok(BarbellSpec { first_cycle, second_cycle, path })
    }

    pub fn vertex_count(&self) -> usize {
        self.first_cycle + self.second_cycle + self.path - 2
    }
}

pub fn path(n: usize) -> Graph {
    Graph::from_edge_list(n, (1..n).map(|i| (i - 1, i))).expect("path")
}

/// # Panics
///
/// Panics if `n < 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
}

pub fn theta(spec: &ThetaSpec) -> Graph {
    let mut edges = Vec::new();
    let mut next = 2;
    for &len in &spec.paths {
        let mut prev = 0;
        for _ in 0..len - 2 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::from_edge_list(spec.vertex_count(), edges).expect("theta")
}

pub fn barbell(spec: &BarbellSpec) -> Graph {
    let a = spec.first_cycle;
    let mut edges: Vec<(usize, usize)> = (0..a).map(|i| (i, (i + 1) % a)).collect();
    let mut prev = a - 1;
    let mut next = a;
    for _ in 1..spec.path {
        edges.push((prev, next));
        prev = next;
        next += 1;
    }
    let junction = prev;
    for _ in 1..spec.second_cycle {
        edges.push((prev, next));
        prev = next;
        next += 1;
    }
    edges.push((prev, junction));
    Graph::from_edge_list(spec.vertex_count(), edges).expect("barbell")
}

/// Adds one pendant leaf at each listed vertex.
pub fn with_pendants(g: &Graph, at: &[usize]) -> Result<Graph> {
    let n = g.vertex_count();
    for &v in at {
        g.check_vertex(v)?;
    }
    let pairs = g.edges().iter().copied().chain(at.iter().enumerate().map(|(i, &v)| (v, n + i)));
    Graph::from_edge_list(n + at.len(), pairs)
}

/// Triangle with one pendant edge at each vertex.
pub fn net() -> Graph {
    with_pendants(&cycle(3), &[0, 1, 2]).expect("net")
}

/// `C_n` with a pendant leaf at each listed cycle vertex.
pub fn pegged_cycle(n: usize, attachments: &[usize]) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input("cycle needs at least 3 vertices"));
    }
    with_pendants(&cycle(n), attachments)
}
