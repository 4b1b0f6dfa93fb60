//! K₂-reduction and the structure of graphs with a unique perfect matching:
//! reduction traces, 2-cores, pegs, tree-branches and semi-2-cores.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::det::det_harary;
use crate::enumerate::{simple_cycles, visit_perfect_matchings, Matching};
use crate::graph::Subgraph;
use crate::inverse::is_sign_invertible;
use crate::{Error, Graph, Result};

/// The sequence of K₂-reductions applied to a graph and what is left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    /// `(leaf, support)` pairs in removal order, host ids.
    pub steps: Vec<(usize, usize)>,
    /// The K₂-irreducible subgraph, possibly empty.
    #[serde(skip)]
    pub residual: Subgraph,
}

impl ReductionTrace {
    pub fn is_reducible(&self) -> bool {
        self.residual.is_empty()
    }

    /// The removed pairs as a matching.
    pub fn matching(&self) -> Matching {
        Matching::new(self.steps.clone())
    }
}

/// Repeatedly deletes the smallest-id degree-1 vertex together with its
/// neighbor.
pub fn k2_reduce(g: &Graph) -> ReductionTrace {
    k2_reduce_by(g, |leaves| leaves[0])
}

/// K₂-reduction where `pick` chooses the next leaf among the current
/// degree-1 vertices (given in increasing order).
pub fn k2_reduce_by(g: &Graph, mut pick: impl FnMut(&[usize]) -> usize) -> ReductionTrace {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut steps = Vec::new();
    loop {
        let leaves: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] == 1).collect();
        if leaves.is_empty() {
            break;
        }
        let leaf = pick(&leaves);
        let support = *g.neighbors(leaf).iter().find(|&&w| alive[w]).expect("degree-1 vertex has a live neighbor");
        for x in [leaf, support] {
            alive[x] = false;
            for &w in g.neighbors(x) {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
        steps.push((leaf, support));
    }
    let rest = (0..n).filter(|&v| alive[v]).collect();
    ReductionTrace { steps, residual: Subgraph::of_host(g, rest) }
}

pub fn is_k2_reducible(g: &Graph) -> bool {
    k2_reduce(g).is_reducible()
}

/// The perfect matching of `g` when there is exactly one.
pub fn unique_perfect_matching(g: &Graph) -> Option<Matching> {
    let mut found: Vec<Matching> = Vec::new();
    let _ = visit_perfect_matchings(g, |m| {
        found.push(m.clone());
        if found.len() > 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if found.len() == 1 {
        found.pop()
    } else {
        None
    }
}

/// Maximal subgraph of minimum degree at least 2 (leaves and isolated
/// vertices are peeled repeatedly).
pub fn two_core(g: &Graph) -> Subgraph {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    Subgraph::of_host(g, (0..n).filter(|&v| alive[v]).collect())
}

/// A matching edge with exactly one endpoint on a given cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Peg {
    /// Endpoint on the cycle (the peg's attachment point).
    pub on_cycle: usize,
    pub off_cycle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePegs {
    /// Host vertices of the cycle, canonical order.
    pub cycle: Vec<usize>,
    pub pegs: Vec<Peg>,
}

impl CyclePegs {
    pub fn attachments(&self) -> Vec<usize> {
        self.pegs.iter().map(|p| p.on_cycle).collect()
    }
}

/// A component of `G - V(Q)` for the 2-core `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeBranch {
    pub vertices: Vec<usize>,
    /// The branch vertex adjacent to the core; `None` when the core is
    /// empty.
    pub attachment: Option<usize>,
    pub core_neighbor: Option<usize>,
}

/// Pegs of every 2-core cycle and the tree-branches of a K₂-reducible
/// graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PegMap {
    pub matching: Matching,
    pub cycles: Vec<CyclePegs>,
    pub branches: Vec<TreeBranch>,
}

impl PegMap {
    /// Pegs of the cycle with exactly this vertex set.
    pub fn pegs_of(&self, cycle: &[usize]) -> Option<&CyclePegs> {
        let mut key = cycle.to_vec();
        key.sort_unstable();
        self.cycles.iter().find(|c| {
            let mut k = c.cycle.clone();
            k.sort_unstable();
            k == key
        })
    }
}

fn pegs_on(cycle: &[usize], m: &Matching, n: usize) -> Vec<Peg> {
    let mut on = vec![false; n];
    for &v in cycle {
        on[v] = true;
    }
    let mut pegs: Vec<Peg> = m
        .edges
        .iter()
        .filter_map(|&(u, v)| match (on[u], on[v]) {
            (true, false) => Some(Peg { on_cycle: u, off_cycle: v }),
            (false, true) => Some(Peg { on_cycle: v, off_cycle: u }),
            _ => None,
        })
        .collect();
    pegs.sort_by_key(|p| p.on_cycle);
    pegs
}

pub fn pegs_and_branches(g: &Graph) -> Result<PegMap> {
    let trace = k2_reduce(g);
    if !trace.is_reducible() {
        return Err(Error::input("pegs are defined for K2-reducible graphs only"));
    }
    let matching = trace.matching();
    let n = g.vertex_count();
    let core = two_core(g);
    let cycles = simple_cycles(&core.graph)
        .into_iter()
        .map(|c| {
            let cycle: Vec<usize> = c.into_iter().map(|v| core.vertices[v]).collect();
            let pegs = pegs_on(&cycle, &matching, n);
            CyclePegs { cycle, pegs }
        })
        .collect();

    let mut in_core = vec![false; n];
    for &v in &core.vertices {
        in_core[v] = true;
    }
    let outside: Vec<usize> = (0..n).filter(|&v| !in_core[v]).collect();
    let (forest, map) = g.delete_vertices(&crate::VertexSet::from_vertices(n, core.vertices.iter().copied()));
    let branches = forest
        .connected_components()
        .into_iter()
        .map(|comp| {
            let vertices: Vec<usize> = comp.iter().map(|v| map[v]).collect();
            let hook = vertices.iter().find_map(|&v| g.neighbors(v).iter().find(|&&w| in_core[w]).map(|&w| (v, w)));
            TreeBranch { vertices, attachment: hook.map(|h| h.0), core_neighbor: hook.map(|h| h.1) }
        })
        .collect();
    debug_assert_eq!(map, outside);
    Ok(PegMap { matching, cycles, branches })
}

/// 2-core together with all pegs of its cycles.
pub fn semi_two_core(g: &Graph) -> Result<Subgraph> {
    let pegs = pegs_and_branches(g)?;
    let core = two_core(g);
    let mut vertices = core.vertices;
    for c in &pegs.cycles {
        vertices.extend(c.pegs.iter().map(|p| p.off_cycle));
    }
    Ok(Subgraph::of_host(g, vertices))
}

/// Invertible iff K₂-reducible or the K₂-irreducible subgraph is.
pub fn is_invertible_via_reduction(g: &Graph) -> bool {
    let trace = k2_reduce(g);
    trace.is_reducible() || det_harary(&trace.residual.graph) != 0.into()
}

/// Unique perfect 2-matching iff K₂-reducible or the K₂-irreducible
/// subgraph is a disjoint union of odd cycles.
pub fn has_unique_perfect_two_matching(g: &Graph) -> bool {
    let trace = k2_reduce(g);
    let r = &trace.residual.graph;
    trace.is_reducible()
        || r.connected_components()
            .iter()
            .all(|comp| comp.len() % 2 == 1 && comp.len() >= 3 && comp.iter().all(|v| r.degree(v) == 2))
}

/// Sign-invertibility of the semi-2-core of a K₂-reducible graph.
pub fn sign_invertibility_preserved_by_semi_core(g: &Graph) -> Result<bool> {
    let semi = semi_two_core(g)?;
    Ok(is_sign_invertible(&semi.graph).sign_invertible)
}
