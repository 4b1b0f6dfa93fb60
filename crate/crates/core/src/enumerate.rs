//! Exhaustive enumeration of perfect matchings, perfect 2-matchings and
//! simple paths.
//!
//! All enumerators branch on the smallest uncovered vertex and try
//! neighbors in increasing order, so output order is deterministic. They are
//! exponential and meant for graphs of at most a few dozen vertices.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::graph::{bit, mask_vertices, Mask};
use crate::{Graph, Result};

/// A set of pairwise disjoint edges, each stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Partner of `v`, if covered.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn is_matching_in(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.vertex_count()];
        self.edges.iter().all(|&(u, v)| {
            let ok = g.has_edge(u, v) && !seen[u] && !seen[v];
            if ok {
                seen[u] = true;
                seen[v] = true;
            }
            ok
        })
    }
}

/// A perfect 2-matching `H = C_H ∪ M_H`: vertex-disjoint cycles and edges
/// covering every vertex of the host.
///
/// Cycles are canonical: they start at their smallest vertex and continue
/// toward the smaller of its two cycle neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoMatching {
    pub cycles: Vec<Vec<usize>>,
    pub matching: Matching,
}

impl TwoMatching {
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// `|E(H)|`: cycle edges plus matching edges.
    pub fn edge_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum::<usize>() + self.matching.len()
    }

    /// Contribution `2^|C_H| (-1)^(|C_H| + |E(H)|)` to the determinant.
    pub fn determinant_term(&self) -> i128 {
        let c = self.cycle_count();
        let sign = if (c + self.edge_count()).is_multiple_of(2) { 1 } else { -1 };
        sign * (1i128 << c)
    }

    /// Re-checks disjointness, spanning, edge membership and cycle
    /// canonicity against `host`.
    pub fn validate(&self, host: &Graph) -> bool {
        let n = host.vertex_count();
        let mut covered = vec![false; n];
        let mut cover = |v: usize| -> bool {
            if v >= n || covered[v] {
                return false;
            }
            covered[v] = true;
            true
        };
        for cyc in &self.cycles {
            if cyc.len() < 3 || canonical_cycle(cyc) != *cyc {
                return false;
            }
            for (i, &v) in cyc.iter().enumerate() {
                if !cover(v) || !host.has_edge(v, cyc[(i + 1) % cyc.len()]) {
                    return false;
                }
            }
        }
        for &(u, v) in &self.matching.edges {
            if !cover(u) || !cover(v) || !host.has_edge(u, v) {
                return false;
            }
        }
        covered.iter().all(|&c| c)
    }
}

/// Rotates and orients a cycle to start at its minimum and continue toward
/// the smaller neighbor.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let len = cycle.len();
    if len == 0 {
        return Vec::new();
    }
    let start = (0..len).min_by_key(|&i| cycle[i]).unwrap();
    let next = cycle[(start + 1) % len];
    let prev = cycle[(start + len - 1) % len];
    if next <= prev {
        (0..len).map(|k| cycle[(start + k) % len]).collect()
    } else {
        (0..len).map(|k| cycle[(start + len - k) % len]).collect()
    }
}

/// A simple path, stored as its vertex sequence. A single vertex is a path
/// with no edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub vertices: Vec<usize>,
}

impl Path {
    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { vertices }
    }

    pub(crate) fn mask(&self) -> Mask {
        self.vertices.iter().fold(0, |m, &v| m | bit(v))
    }
}

// ---------------------------------------------------------------------------
// Mask-level primitives shared with the determinant and inverse engines.

/// Calls `f` with each cycle through `v` inside `rem`, where `v` is the
/// smallest vertex of `rem`. Each undirected cycle is produced once, in
/// canonical orientation.
pub(crate) fn for_each_cycle_through<F>(adj: &[Mask], v: usize, rem: Mask, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize], Mask) -> ControlFlow<()>,
{
    fn extend<F>(adj: &[Mask], rem: Mask, path: &mut Vec<usize>, used: Mask, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], Mask) -> ControlFlow<()>,
    {
        let start = path[0];
        let end = *path.last().unwrap();
        if path.len() >= 3 && adj[end] & bit(start) != 0 && path[1] < end {
            f(path, used)?;
        }
        for w in mask_vertices(adj[end] & rem & !used) {
            path.push(w);
            extend(adj, rem, path, used | bit(w), f)?;
            path.pop();
        }
        ControlFlow::Continue(())
    }
    let mut path = vec![v];
    extend(adj, rem, &mut path, bit(v), f)
}

/// Calls `f(end, edge_count, used)` for every simple path starting at `x`
/// inside `within` (including the single-vertex path).
pub(crate) fn for_each_path_from<F>(adj: &[Mask], x: usize, within: Mask, f: &mut F)
where
    F: FnMut(usize, usize, Mask),
{
    fn walk<F>(adj: &[Mask], within: Mask, end: usize, edges: usize, used: Mask, f: &mut F)
    where
        F: FnMut(usize, usize, Mask),
    {
        f(end, edges, used);
        for w in mask_vertices(adj[end] & within & !used) {
            walk(adj, within, w, edges + 1, used | bit(w), f);
        }
    }
    walk(adj, within, x, 0, bit(x), f);
}

/// Decides whether the subgraph induced by a vertex mask has a perfect
/// 2-matching, caching by mask.
///
/// A perfect 2-matching corresponds to a fixed-point-free permutation `σ`
/// with `v ~ σ(v)` for every `v` (2-cycles are edges, longer cycles are
/// graph cycles), i.e. to a perfect matching of the bipartite double cover.
/// That matching is found with augmenting paths.
pub(crate) struct TwoMatchability<'a> {
    adj: &'a [Mask],
    memo: HashMap<Mask, bool>,
}

impl<'a> TwoMatchability<'a> {
    pub(crate) fn new(adj: &'a [Mask]) -> Self {
        TwoMatchability { adj, memo: HashMap::new() }
    }

    pub(crate) fn has(&mut self, rem: Mask) -> bool {
        if rem == 0 {
            return true;
        }
        if let Some(&b) = self.memo.get(&rem) {
            return b;
        }
        let b = double_cover_perfect(self.adj, rem);
        self.memo.insert(rem, b);
        b
    }
}

fn double_cover_perfect(adj: &[Mask], rem: Mask) -> bool {
    fn augment(adj: &[Mask], rem: Mask, left: usize, seen: &mut Mask, owner: &mut [usize]) -> bool {
        for r in mask_vertices(adj[left] & rem & !*seen) {
            *seen |= bit(r);
            if owner[r] == usize::MAX || augment(adj, rem, owner[r], seen, owner) {
                owner[r] = left;
                return true;
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; adj.len()];
    for left in mask_vertices(rem) {
        if adj[left] & rem == 0 {
            return false;
        }
        let mut seen = 0;
        if !augment(adj, rem, left, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Public enumerators.

/// Visits every perfect matching once.
pub fn visit_perfect_matchings<F>(g: &Graph, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&Matching) -> ControlFlow<()>,
{
    fn go<F>(adj: &[Mask], rem: Mask, stack: &mut Vec<(usize, usize)>, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Matching) -> ControlFlow<()>,
    {
        if rem == 0 {
            return f(&Matching { edges: stack.clone() }.sorted());
        }
        let v = rem.trailing_zeros() as usize;
        for u in mask_vertices(adj[v] & rem) {
            stack.push((v, u));
            go(adj, rem & !bit(v) & !bit(u), stack, f)?;
            stack.pop();
        }
        ControlFlow::Continue(())
    }
    let adj = g.adjacency_masks();
    go(&adj, g.full_mask(), &mut Vec::new(), &mut f)
}

impl Matching {
    fn sorted(mut self) -> Self {
        self.edges.sort_unstable();
        self
    }
}

pub fn perfect_matchings(g: &Graph) -> Vec<Matching> {
    let mut out = Vec::new();
    let _ = visit_perfect_matchings(g, |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Visits every perfect 2-matching once. Perfect matchings appear with an
/// empty cycle list.
pub fn visit_perfect_two_matchings<F>(g: &Graph, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&TwoMatching) -> ControlFlow<()>,
{
    struct State {
        cycles: Vec<Vec<usize>>,
        edges: Vec<(usize, usize)>,
    }
    fn go<F>(adj: &[Mask], rem: Mask, st: &mut State, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&TwoMatching) -> ControlFlow<()>,
    {
        if rem == 0 {
            let mut cycles = st.cycles.clone();
            cycles.sort();
            return f(&TwoMatching { cycles, matching: Matching::new(st.edges.clone()) });
        }
        let v = rem.trailing_zeros() as usize;
        for u in mask_vertices(adj[v] & rem) {
            st.edges.push((v, u));
            go(adj, rem & !bit(v) & !bit(u), st, f)?;
            st.edges.pop();
        }
        for_each_cycle_through(adj, v, rem, &mut |cycle, used| {
            st.cycles.push(cycle.to_vec());
            let r = go(adj, rem & !used, st, f);
            st.cycles.pop();
            r
        })
    }
    let adj = g.adjacency_masks();
    let mut st = State { cycles: Vec::new(), edges: Vec::new() };
    go(&adj, g.full_mask(), &mut st, &mut f)
}

pub fn perfect_two_matchings(g: &Graph) -> Vec<TwoMatching> {
    let mut out = Vec::new();
    let _ = visit_perfect_two_matchings(g, |h| {
        out.push(h.clone());
        ControlFlow::Continue(())
    });
    out
}

/// The empty graph has the empty perfect 2-matching.
pub fn has_perfect_two_matching(g: &Graph) -> bool {
    let adj = g.adjacency_masks();
    TwoMatchability::new(&adj).has(g.full_mask())
}

/// Visits all simple `(x, y)`-paths; for `x == y` only the single vertex.
pub fn visit_simple_paths<F>(g: &Graph, x: usize, y: usize, mut f: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&Path) -> ControlFlow<()>,
{
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Ok(f(&Path { vertices: vec![x] }));
    }
    fn walk<F>(adj: &[Mask], y: usize, path: &mut Vec<usize>, used: Mask, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Path) -> ControlFlow<()>,
    {
        let end = *path.last().unwrap();
        if end == y {
            return f(&Path { vertices: path.clone() });
        }
        for w in mask_vertices(adj[end] & !used) {
            path.push(w);
            walk(adj, y, path, used | bit(w), f)?;
            path.pop();
        }
        ControlFlow::Continue(())
    }
    let adj = g.adjacency_masks();
    Ok(walk(&adj, y, &mut vec![x], bit(x), &mut f))
}

pub fn simple_paths(g: &Graph, x: usize, y: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    let _ = visit_simple_paths(g, x, y, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Feasible `(x, y)`-paths: simple paths `P` such that `G - V(P)` has a
/// perfect 2-matching.
pub fn feasible_paths(g: &Graph, x: usize, y: usize) -> Result<Vec<Path>> {
    let adj = g.adjacency_masks();
    let full = g.full_mask();
    let mut oracle = TwoMatchability::new(&adj);
    let mut out = Vec::new();
    let _ = visit_simple_paths(g, x, y, |p| {
        if oracle.has(full & !p.mask()) {
            out.push(p.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_feasible_paths(g: &Graph, x: usize, y: usize) -> Result<usize> {
    let adj = g.adjacency_masks();
    let full = g.full_mask();
    let mut oracle = TwoMatchability::new(&adj);
    let mut count = 0;
    let _ = visit_simple_paths(g, x, y, |p| {
        if oracle.has(full & !p.mask()) {
            count += 1;
        }
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// Every simple cycle of `g` once, canonical, ordered by smallest vertex.
pub fn simple_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let adj = g.adjacency_masks();
    let full = g.full_mask();
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let rem = full & !((bit(v)) - 1);
        let _ = for_each_cycle_through(&adj, v, rem, &mut |cycle, _| {
            out.push(cycle.to_vec());
            ControlFlow::Continue(())
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, path};
    use crate::ThetaSpec;

    #[test]
    fn perfect_matching_counts() {
        assert_eq!(perfect_matchings(&families::cycle(6)).len(), 2);
        assert!(perfect_matchings(&families::cycle(5)).is_empty());
        assert_eq!(perfect_matchings(&path(4)), vec![Matching::new(vec![(0, 1), (2, 3)])]);
        assert_eq!(perfect_matchings(&Graph::empty(0)).len(), 1);
    }

    #[test]
    fn two_matching_counts() {
        let c5 = perfect_two_matchings(&families::cycle(5));
        assert_eq!(c5.len(), 1);
        assert_eq!(c5[0].cycles, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(perfect_two_matchings(&families::cycle(6)).len(), 3);
        for spec in [(2, 4, 4), (4, 4, 6), (2, 6, 8)] {
            let g = families::theta(&ThetaSpec::new(spec.0, spec.1, spec.2).unwrap());
            let hs = perfect_two_matchings(&g);
            assert_eq!(hs.len(), 6, "{spec:?}");
            assert_eq!(hs.iter().filter(|h| h.cycles.is_empty()).count(), 3);
        }
    }

    #[test]
    fn two_matchability() {
        assert!(has_perfect_two_matching(&Graph::empty(0)));
        assert!(!has_perfect_two_matching(&Graph::empty(1)));
        let t333 = families::theta(&ThetaSpec::new(3, 3, 3).unwrap());
        assert!(!has_perfect_two_matching(&t333));
        let t334 = families::theta(&ThetaSpec::new(3, 3, 4).unwrap());
        assert!(has_perfect_two_matching(&t334));
    }

    #[test]
    fn cycle_listing() {
        assert_eq!(simple_cycles(&families::cycle(4)), vec![vec![0, 1, 2, 3]]);
        let theta = families::theta(&ThetaSpec::new(2, 4, 4).unwrap());
        assert_eq!(simple_cycles(&theta).len(), 3);
        assert!(simple_cycles(&path(5)).is_empty());
    }

    #[test]
    fn canonical_cycles() {
        assert_eq!(canonical_cycle(&[3, 1, 4, 2]), vec![1, 3, 2, 4]);
        assert_eq!(canonical_cycle(&[0, 4, 3, 2, 1]), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn simple_path_enumeration() {
        assert_eq!(simple_paths(&families::cycle(5), 0, 1).unwrap().len(), 2);
        let theta = families::theta(&ThetaSpec::new(2, 4, 4).unwrap());
        assert_eq!(simple_paths(&theta, 0, 1).unwrap().len(), 3);
        assert_eq!(simple_paths(&theta, 3, 3).unwrap(), vec![Path { vertices: vec![3] }]);
        assert!(simple_paths(&theta, 0, 6).is_err());
    }

    #[test]
    fn feasible_path_examples() {
        let p4 = path(4);
        assert_eq!(feasible_paths(&p4, 0, 3).unwrap(), vec![Path { vertices: vec![0, 1, 2, 3] }]);
        assert!(feasible_paths(&p4, 0, 2).unwrap().is_empty());
        assert_eq!(count_feasible_paths(&p4, 0, 3).unwrap(), 1);
    }
}
