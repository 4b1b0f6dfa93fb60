//! Exact adjacency determinants.
//!
//! [`det_harary`] sums `2^|C_H| (-1)^(|C_H|+|E(H)|)` over perfect 2-matchings
//! `H`, [`det_oracle`] eliminates the adjacency matrix, and the family
//! functions evaluate the per-case closed forms for cycles, theta graphs and
//! barbells.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::enumerate::{for_each_cycle_through, simple_paths, visit_perfect_two_matchings, TwoMatchability};
use crate::graph::{bit, mask_vertices, Mask};
use crate::{matrix, BarbellSpec, Error, Graph, Result, ThetaSpec};

/// Harary determinant of induced subgraphs, memoized by vertex mask.
///
/// The smallest vertex `v` of a mask is either matched to a neighbor `u`
/// (factor `-1`) or lies on a cycle `C` of the 2-matching (factor
/// `2 (-1)^(1+|C|)`), so the 2-matching sum factors through the remaining
/// mask.
pub(crate) struct HararyDet<'a> {
    adj: &'a [Mask],
    memo: HashMap<Mask, i128>,
}

impl<'a> HararyDet<'a> {
    pub(crate) fn new(adj: &'a [Mask]) -> Self {
        HararyDet { adj, memo: HashMap::new() }
    }

    pub(crate) fn det(&mut self, rem: Mask) -> i128 {
        if rem == 0 {
            return 1;
        }
        if let Some(&d) = self.memo.get(&rem) {
            return d;
        }
        let v = rem.trailing_zeros() as usize;
        let mut total = 0i128;
        for u in mask_vertices(self.adj[v] & rem) {
            total -= self.det(rem & !bit(v) & !bit(u));
        }
        let mut cycles: Vec<(usize, Mask)> = Vec::new();
        let _ = for_each_cycle_through(self.adj, v, rem, &mut |cycle: &[usize], used| {
            cycles.push((cycle.len(), used));
            ControlFlow::Continue(())
        });
        for (len, used) in cycles {
            let sign = if len % 2 == 1 { 2 } else { -2 };
            total += sign * self.det(rem & !used);
        }
        self.memo.insert(rem, total);
        total
    }
}

/// Determinant of `A(G)` from perfect 2-matchings. The empty graph has
/// determinant 1.
pub fn det_harary(g: &Graph) -> BigInt {
    let adj = g.adjacency_masks();
    BigInt::from(HararyDet::new(&adj).det(g.full_mask()))
}

/// The same sum taken term by term over an explicit enumeration of the
/// perfect 2-matchings.
pub fn det_by_two_matchings(g: &Graph) -> BigInt {
    let mut total = 0i128;
    let _ = visit_perfect_two_matchings(g, |h| {
        total += h.determinant_term();
        ControlFlow::Continue(())
    });
    BigInt::from(total)
}

/// Determinant of `A(G)` by fraction-free elimination.
pub fn det_oracle(g: &Graph) -> BigInt {
    matrix::bareiss_determinant(matrix::int_adjacency(g))
}

pub fn is_unimodular(g: &Graph) -> bool {
    det_harary(g).abs() == BigInt::from(1)
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `det(C_n)`: 0 for `n ≡ 0`, −4 for `n ≡ 2 (mod 4)`, 2 for odd `n`.
pub fn det_cycle(n: usize) -> Result<i64> {
    if n < 3 {
        return Err(Error::input(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Ok(match n % 4 {
        0 => 0,
        2 => -4,
        _ => 2,
    })
}

/// `det(Θ(θ1,θ2,θ3))` by parity case.
pub fn det_theta(spec: &ThetaSpec) -> i64 {
    let t = spec.paths;
    let evens: Vec<usize> = t.iter().copied().filter(|x| x % 2 == 0).collect();
    let odds: Vec<usize> = t.iter().copied().filter(|x| x % 2 == 1).collect();
    let total: usize = t.iter().sum();
    match evens.len() {
        // no perfect 2-matching at all
        0 => 0,
        // H = C_jk ∪ M_i or one of the two perfect matchings of C_jk plus M_i
        1 => {
            let jk = odds[0] + odds[1];
            2 * sign(total / 2) * (sign(jk / 2) + 1)
        }
        // H = C_ij ∪ M_k or C_ik ∪ M_j, both cycles odd
        2 => 2 * sign((evens[1] - 2) / 2) + 2 * sign((evens[0] - 2) / 2),
        // three one-cycle 2-matchings and three perfect matchings
        _ => 2 * t.iter().map(|&x| sign(x / 2)).sum::<i64>() + 3 * sign(total / 2),
    }
}

/// `det(B(θ1,θ2;θ))` by parity case.
///
/// For even `θ` with cycles of mixed parity the two 2-matchings that use
/// only the odd cycle each carry a factor 2, so that case is
/// `4 (-1)^(θ1+θ2+(θ-2)/2) + 4 (-1)^(1+θodd+(θeven+θ-2)/2)`.
pub fn det_barbell(spec: &BarbellSpec) -> i64 {
    let (a, b, t) = (spec.first_cycle, spec.second_cycle, spec.path);
    let (even, odd) = if a % 2 == 0 { (a, b) } else { (b, a) };
    if t % 2 == 1 {
        match (a % 2, b % 2) {
            (0, 0) => 0,
            (1, 1) => -2 * (sign((b + t) / 2) + sign((a + t) / 2)),
            _ => 2 * sign((even + odd + t - 2) / 2) * (sign(1 + even / 2) + 1),
        }
    } else {
        match (a % 2, b % 2) {
            (1, 1) => sign((a + b + t - 2) / 2) + 4 * sign(a + b + (t - 2) / 2),
            (0, 0) => 4 * sign((a + b + t - 2) / 2) * (sign((a + b) / 2) + sign((a + 2) / 2) + sign((b + 2) / 2) + 1),
            _ => 4 * sign(even + odd + (t - 2) / 2) + 4 * sign(1 + odd + (even + t - 2) / 2),
        }
    }
}

/// Theta singularity condition as a predicate on the path lengths: all odd;
/// or exactly one even with the two odd ones summing to `≢ 0 (mod 4)`; or
/// exactly one odd with the two even ones `≢ (mod 4)`.
pub fn theta_singular_condition(spec: &ThetaSpec) -> bool {
    let t = spec.paths;
    let evens: Vec<usize> = t.iter().copied().filter(|x| x % 2 == 0).collect();
    let odds: Vec<usize> = t.iter().copied().filter(|x| x % 2 == 1).collect();
    match evens.len() {
        0 => true,
        1 => !(odds[0] + odds[1]).is_multiple_of(4),
        2 => evens[0] % 4 != evens[1] % 4,
        _ => false,
    }
}

/// Theta unimodularity condition: all path lengths even, not all congruent
/// modulo 4.
pub fn theta_unimodular_condition(spec: &ThetaSpec) -> bool {
    let t = spec.paths;
    t.iter().all(|x| x % 2 == 0) && !(t[0] % 4 == t[1] % 4 && t[1] % 4 == t[2] % 4)
}

/// The four-case barbell singularity condition:
/// odd `θ` with both cycles even; odd `θ` with both cycles odd and
/// `θ1 ≢ θ2 (mod 4)`; odd `θ` with mixed parity and the even cycle
/// `≡ 0 (mod 4)`; even `θ` with both cycles even and not both `≡ 2 (mod 4)`.
///
/// The four cases omit even `θ` with mixed parity and the even cycle
/// `≡ 0 (mod 4)`, where the determinant also vanishes; see [`det_barbell`].
pub fn barbell_singular_condition(spec: &BarbellSpec) -> bool {
    let (a, b, t) = (spec.first_cycle, spec.second_cycle, spec.path);
    let even = if a % 2 == 0 { a } else { b };
    if t % 2 == 1 {
        (a % 2 == 0 && b % 2 == 0) || (a % 2 == 1 && b % 2 == 1 && a % 4 != b % 4) || (a % 2 != b % 2 && even % 4 == 0)
    } else {
        a % 2 == 0 && b % 2 == 0 && !(a % 4 == 2 && b % 4 == 2)
    }
}

/// Determinant of a forest: `(-1)^|M|` if it has a perfect matching `M`,
/// otherwise 0.
pub fn det_forest(g: &Graph) -> Result<i64> {
    if !g.is_forest() {
        return Err(Error::input("det_forest requires an acyclic graph"));
    }
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut matched = 0usize;
    while let Some(leaf) = (0..n).find(|&v| alive[v] && degree[v] <= 1) {
        if degree[leaf] == 0 {
            return Ok(0);
        }
        let support = *g.neighbors(leaf).iter().find(|&&w| alive[w]).unwrap();
        for x in [leaf, support] {
            alive[x] = false;
            for &w in g.neighbors(x) {
                if alive[w] {
                    degree[w] -= 1;
                }
            }
        }
        matched += 1;
    }
    Ok(sign(matched))
}

/// `E_0`: edges lying in no perfect 2-matching.
///
/// An edge `uv` is used either as a matching edge (`G - {u,v}` has a
/// perfect 2-matching) or on a cycle, i.e. with some `(u,v)`-path `Q` of at
/// least three vertices such that `G - V(Q)` has a perfect 2-matching.
pub fn zero_edges(g: &Graph) -> Vec<(usize, usize)> {
    let adj = g.adjacency_masks();
    let full = g.full_mask();
    let mut oracle = TwoMatchability::new(&adj);
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        if oracle.has(full & !bit(u) & !bit(v)) {
            continue;
        }
        let on_cycle = simple_paths(g, u, v)
            .expect("edge endpoints are vertices")
            .into_iter()
            .filter(|p| p.vertex_count() >= 3)
            .any(|p| oracle.has(full & !p.vertices.iter().fold(0, |m, &w| m | bit(w))));
        if !on_cycle {
            out.push((u, v));
        }
    }
    out
}
