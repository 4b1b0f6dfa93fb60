//! Inverse graphs from feasible paths.
//!
//! `(A⁻¹)_xy = det(G)⁻¹ Σ_P (−1)^|E(P)| det(G − V(P))` over simple
//! `(x, y)`-paths `P`; paths whose complement has no perfect 2-matching
//! contribute zero, so only feasible paths matter.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::det::HararyDet;
use crate::enumerate::{for_each_path_from, Matching};
use crate::graph::{bit, mask_vertices, Mask};
use crate::structure::k2_reduce;
use crate::{matrix, BigInt, Error, Graph, Rational, Result};

/// Weighted graph with nonzero rational weights on unordered pairs; a pair
/// `(v, v)` is a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedWeightedGraph {
    n: usize,
    weights: BTreeMap<(usize, usize), Rational>,
}

impl SignedWeightedGraph {
    pub fn new(n: usize) -> Self {
        SignedWeightedGraph { n, weights: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Sets the weight of `{u, v}`; zero removes the pair.
    pub fn set(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        let key = (u.min(v), u.max(v));
        if w.is_zero() {
            self.weights.remove(&key);
        } else {
            self.weights.insert(key, w);
        }
        Ok(())
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational {
        self.weights.get(&(u.min(v), u.max(v))).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries `(u, v, w)` with `u ≤ v`, sorted.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.weights.iter().map(|(&(u, v), w)| (u, v, w))
    }

    /// Every weight is ±1.
    pub fn is_signed(&self) -> bool {
        self.weights.values().all(|w| w.is_integer() && w.abs().is_one())
    }

    pub fn loop_count(&self) -> usize {
        self.weights.keys().filter(|(u, v)| u == v).count()
    }

    pub fn to_dense(&self) -> matrix::RationalMatrix {
        let mut m = vec![vec![Rational::zero(); self.n]; self.n];
        for (&(u, v), w) in &self.weights {
            m[u][v] = w.clone();
            m[v][u] = w.clone();
        }
        m
    }
}

/// Unnormalized entries `Σ_P (−1)^|E(P)| det(G − V(P))` for all `y` from
/// a fixed source `x`.
fn path_sums_from(adj: &[Mask], full: Mask, dets: &mut HararyDet<'_>, x: usize, out: &mut [i128]) {
    for_each_path_from(adj, x, full, &mut |end, edges, used| {
        let d = dets.det(full & !used);
        if d != 0 {
            out[end] += if edges % 2 == 0 { d } else { -d };
        }
    });
}

fn to_rational(num: i128, det: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(det))
}

/// A single entry of `A(G)⁻¹`.
pub fn inverse_entry(g: &Graph, x: usize, y: usize) -> Result<Rational> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let adj = g.adjacency_masks();
    let full = g.full_mask();
    let mut dets = HararyDet::new(&adj);
    let det = dets.det(full);
    if det == 0 {
        return Err(Error::Singular);
    }
    let mut sums = vec![0i128; g.vertex_count()];
    path_sums_from(&adj, full, &mut dets, x, &mut sums);
    Ok(to_rational(sums[y], det))
}

/// The full inverse as a weighted graph (diagonal entries become loops).
pub fn inverse_graph(g: &Graph) -> Result<SignedWeightedGraph> {
    let n = g.vertex_count();
    let adj = g.adjacency_masks();
    let full = g.full_mask();
    let mut dets = HararyDet::new(&adj);
    let det = dets.det(full);
    if det == 0 {
        return Err(Error::Singular);
    }
    let mut out = SignedWeightedGraph::new(n);
    let mut sums = vec![0i128; n];
    for x in 0..n {
        sums.iter_mut().for_each(|s| *s = 0);
        path_sums_from(&adj, full, &mut dets, x, &mut sums);
        for (y, &s) in sums.iter().enumerate().skip(x) {
            out.set(x, y, to_rational(s, det))?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotUnimodular { det: String },
    Entry { x: usize, y: usize, sum: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignInvertibility {
    pub sign_invertible: bool,
    #[serde(serialize_with = "crate::format::serialize_bigint")]
    pub det: BigInt,
    pub violation: Option<Violation>,
}

/// Sign-invertible iff `|det| = 1` and every path sum lies in `{−1, 0, 1}`.
/// On failure the first violating pair `x ≤ y` in lexicographic order is
/// reported.
pub fn is_sign_invertible(g: &Graph) -> SignInvertibility {
    let n = g.vertex_count();
    let adj = g.adjacency_masks();
    let full = g.full_mask();
    let mut dets = HararyDet::new(&adj);
    let det = dets.det(full);
    let result = |violation: Option<Violation>| SignInvertibility {
        sign_invertible: violation.is_none(),
        det: BigInt::from(det),
        violation,
    };
    if det.abs() != 1 {
        return result(Some(Violation::NotUnimodular { det: det.to_string() }));
    }
    let mut sums = vec![0i128; n];
    for x in 0..n {
        sums.iter_mut().for_each(|s| *s = 0);
        path_sums_from(&adj, full, &mut dets, x, &mut sums);
        if let Some(y) = (x..n).find(|&y| sums[y].abs() > 1) {
            return result(Some(Violation::Entry { x, y, sum: sums[y].to_string() }));
        }
    }
    result(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialIndexRecord {
    pub x: usize,
    pub y: usize,
    pub tau_odd: usize,
    pub tau_even: usize,
    pub index: usize,
}

impl EssentialIndexRecord {
    fn new(x: usize, y: usize, tau_odd: usize, tau_even: usize) -> Self {
        EssentialIndexRecord { x, y, tau_odd, tau_even, index: tau_odd.abs_diff(tau_even) }
    }
}

fn check_essential_preconditions(g: &Graph) -> Result<Matching> {
    if !g.is_bipartite().is_bipartite() {
        return Err(Error::input("essential index needs a bipartite graph"));
    }
    let trace = k2_reduce(g);
    if !trace.is_reducible() {
        return Err(Error::input("essential index needs a K2-reducible graph"));
    }
    Ok(trace.matching())
}

/// Counts `MM`-alternating paths from `x` by endpoint and by the parity of
/// their non-matching edges: `(odd, even)` per endpoint.
fn alternating_counts(adj: &[Mask], partner: &[usize], x: usize) -> Vec<(usize, usize)> {
    fn walk(adj: &[Mask], partner: &[usize], end: usize, non_m: usize, used: Mask, out: &mut [(usize, usize)]) {
        // `end` was reached by a non-matching edge; take its matching edge.
        let p = partner[end];
        if used & bit(p) != 0 {
            return;
        }
        let used = used | bit(p);
        if non_m % 2 == 1 {
            out[p].0 += 1;
        } else {
            out[p].1 += 1;
        }
        for w in mask_vertices(adj[p] & !used) {
            if partner[p] != w {
                walk(adj, partner, w, non_m + 1, used | bit(w), out);
            }
        }
    }
    let mut out = vec![(0, 0); adj.len()];
    walk(adj, partner, x, 0, bit(x), &mut out);
    out
}

fn partners(g: &Graph, m: &Matching) -> Vec<usize> {
    (0..g.vertex_count()).map(|v| m.partner(v).expect("perfect matching")).collect()
}

/// `τ_o`, `τ_e` and the essential index of `(x, y)` with respect to the
/// unique perfect matching `m`.
pub fn essential_index(g: &Graph, m: &Matching, x: usize, y: usize) -> Result<EssentialIndexRecord> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let unique = check_essential_preconditions(g)?;
    if &unique != m {
        return Err(Error::input("matching is not the unique perfect matching"));
    }
    if x == y {
        return Ok(EssentialIndexRecord::new(x, y, 0, 0));
    }
    let adj = g.adjacency_masks();
    let (odd, even) = alternating_counts(&adj, &partners(g, m), x)[y];
    Ok(EssentialIndexRecord::new(x, y, odd, even))
}

/// Every essential index is at most 1.
pub fn sign_invertible_via_essential_index(g: &Graph) -> Result<bool> {
    Ok(max_essential_index(g)? <= 1)
}

pub fn max_essential_index(g: &Graph) -> Result<usize> {
    let m = check_essential_preconditions(g)?;
    let adj = g.adjacency_masks();
    let partner = partners(g, &m);
    Ok((0..g.vertex_count())
        .flat_map(|x| alternating_counts(&adj, &partner, x))
        .map(|(o, e)| o.abs_diff(e))
        .max()
        .unwrap_or(0))
}

/// Balanced iff the vertices split so that negative edges are exactly the
/// crossing edges. Loops are ignored.
pub fn is_balanced(sg: &SignedWeightedGraph) -> Result<bool> {
    if !sg.is_signed() {
        return Err(Error::input("balance is defined for signed graphs only"));
    }
    let n = sg.vertex_count();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (u, v, w) in sg.entries() {
        if u != v {
            let negative = w.is_negative();
            adj[u].push((v, negative));
            adj[v].push((u, negative));
        }
    }
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &(v, negative) in &adj[u] {
                let want = su ^ negative;
                match side[v] {
                    None => {
                        side[v] = Some(want);
                        stack.push(v);
                    }
                    Some(sv) if sv != want => return Ok(false),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, cycle, path, pegged_cycle};
    use crate::ThetaSpec;

    fn int(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    #[test]
    fn entries_of_p4() {
        let p4 = path(4);
        assert_eq!(inverse_entry(&p4, 0, 3).unwrap(), int(-1));
        assert_eq!(inverse_entry(&p4, 0, 0).unwrap(), int(0));
        assert_eq!(inverse_entry(&path(2), 0, 1).unwrap(), int(1));
        assert_eq!(inverse_entry(&cycle(4), 0, 1), Err(Error::Singular));
        let inv = inverse_graph(&p4).unwrap();
        assert_eq!(Some(inv.to_dense()), matrix::inverse_oracle(&p4));
    }

    #[test]
    fn k2_is_self_inverse() {
        let inv = inverse_graph(&path(2)).unwrap();
        assert_eq!(inv.entries().count(), 1);
        assert_eq!(inv.weight(0, 1), int(1));
        assert_eq!(inv.loop_count(), 0);
    }

    #[test]
    fn rational_inverse_of_odd_cycle() {
        let c3 = cycle(3);
        let inv = inverse_graph(&c3).unwrap();
        assert_eq!(inv.weight(0, 0), Rational::new((-1).into(), 2.into()));
        assert_eq!(inv.weight(0, 1), Rational::new(1.into(), 2.into()));
        assert!(!inv.is_signed());
        assert!(is_balanced(&inv).is_err());
        assert_eq!(Some(inv.to_dense()), matrix::inverse_oracle(&c3));
    }

    #[test]
    fn theta_244_inverse_pattern() {
        let g = families::theta(&ThetaSpec::new(2, 4, 4).unwrap());
        let inv = inverse_graph(&g).unwrap();
        assert!(inv.is_signed());
        assert_eq!(inv.loop_count(), 0);
        let positive: Vec<_> = inv.entries().filter(|e| e.2.is_positive()).map(|e| (e.0, e.1)).collect();
        let negative: Vec<_> = inv.entries().filter(|e| e.2.is_negative()).map(|e| (e.0, e.1)).collect();
        assert_eq!(positive, vec![(0, 2), (0, 4), (1, 3), (1, 5)]);
        assert_eq!(negative, vec![(0, 1), (2, 5), (3, 4)]);
        assert_eq!(Some(inv.to_dense()), matrix::inverse_oracle(&g));
        assert!(is_balanced(&inv).unwrap());
    }

    #[test]
    fn sign_invertibility() {
        let c5 = is_sign_invertible(&cycle(5));
        assert!(!c5.sign_invertible);
        assert_eq!(c5.violation, Some(Violation::NotUnimodular { det: "2".into() }));
        assert!(is_sign_invertible(&families::theta(&ThetaSpec::new(2, 4, 4).unwrap())).sign_invertible);
        assert!(is_sign_invertible(&path(4)).sign_invertible);
        let anti = is_sign_invertible(&pegged_cycle(6, &[0, 3]).unwrap());
        assert!(!anti.sign_invertible);
        assert!(matches!(anti.violation, Some(Violation::Entry { .. })));
    }

    #[test]
    fn essential_indices() {
        let p4 = path(4);
        let m = Matching::new(vec![(0, 1), (2, 3)]);
        let r = essential_index(&p4, &m, 0, 3).unwrap();
        assert_eq!((r.tau_odd, r.tau_even, r.index), (1, 0, 1));
        let r = essential_index(&p4, &m, 0, 2).unwrap();
        assert_eq!((r.tau_odd, r.tau_even, r.index), (0, 0, 0));
        assert_eq!(essential_index(&p4, &m, 1, 1).unwrap().index, 0);
        assert!(essential_index(&p4, &Matching::new(vec![(1, 2)]), 0, 3).is_err());
        assert!(essential_index(&cycle(5), &m, 0, 1).is_err());

        assert!(sign_invertible_via_essential_index(&p4).unwrap());
        assert!(sign_invertible_via_essential_index(&pegged_cycle(4, &[0, 1]).unwrap()).unwrap());
        let anti = pegged_cycle(6, &[0, 3]).unwrap();
        assert!(!sign_invertible_via_essential_index(&anti).unwrap());
        assert_eq!(max_essential_index(&anti).unwrap(), 2);
    }

    #[test]
    fn balance() {
        let mut sg = SignedWeightedGraph::new(3);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            sg.set(u, v, int(1)).unwrap();
        }
        assert!(is_balanced(&sg).unwrap());
        sg.set(0, 2, int(-1)).unwrap();
        assert!(!is_balanced(&sg).unwrap());
        sg.set(1, 1, int(-1)).unwrap();
        sg.set(0, 2, int(1)).unwrap();
        assert!(is_balanced(&sg).unwrap());
        assert!(sg.set(0, 3, int(1)).is_err());
    }
}
