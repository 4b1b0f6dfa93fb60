//! Closed-form invertibility and sign-invertibility for graphs of cycle
//! rank at most two, with the general path engine as fallback.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::det::{det_barbell, det_cycle, det_forest, det_oracle, det_theta};
use crate::enumerate::feasible_paths;
use crate::inverse::{is_sign_invertible, Violation};
use crate::structure::{k2_reduce, pegs_and_branches, semi_two_core, two_core, PegMap};
use crate::{BarbellSpec, BigInt, Error, Graph, Result, ThetaSpec};

/// The 2-core of a connected graph of cycle rank ≤ 2, embedded in the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum TwoCoreShape {
    Empty,
    /// Host vertices in cyclic order.
    Cycle {
        cycle: Vec<usize>,
    },
    /// `paths[i]` runs from `centers[0]` to `centers[1]` and has
    /// `spec.paths[i]` vertices.
    Theta {
        spec: ThetaSpec,
        centers: [usize; 2],
        paths: [Vec<usize>; 3],
    },
    /// `cycles[i]` starts at its junction; `path` runs from the junction of
    /// `cycles[0]` to that of `cycles[1]`.
    Barbell {
        spec: BarbellSpec,
        cycles: [Vec<usize>; 2],
        path: Vec<usize>,
    },
}

/// Walks from `start` through `first` along degree-2 vertices of `core`
/// until a vertex of degree ≥ 3 or back at `start` (inclusive).
fn walk(core: &Graph, start: usize, first: usize) -> Vec<usize> {
    let mut out = vec![start, first];
    let (mut prev, mut cur) = (start, first);
    while core.degree(cur) == 2 && cur != start {
        let next = *core.neighbors(cur).iter().find(|&&w| w != prev).expect("degree 2");
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

/// Loops at a branch vertex `v`: each returned list starts at `v` and
/// follows the loop once around (without repeating `v`).
fn loops_at(core: &Graph, v: usize) -> Vec<Vec<usize>> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for &w in core.neighbors(v) {
        if seen.contains(&w) {
            continue;
        }
        let trail = walk(core, v, w);
        if *trail.last().unwrap() == v {
            seen.push(trail[trail.len() - 2]);
            seen.push(w);
            out.push(trail[..trail.len() - 1].to_vec());
        }
    }
    out
}

pub fn two_core_shape(g: &Graph) -> Result<TwoCoreShape> {
    if !g.is_connected() {
        return Err(Error::input("two-core shape needs a connected graph"));
    }
    let rank = g.cycle_rank();
    if rank > 2 {
        return Err(Error::input(format!("cycle rank {rank} exceeds 2")));
    }
    let core = two_core(g);
    let host = |vs: Vec<usize>| -> Vec<usize> { vs.into_iter().map(|v| core.vertices[v]).collect() };
    let q = &core.graph;
    match rank {
        0 => Ok(TwoCoreShape::Empty),
        1 => {
            let mut trail = walk(q, 0, q.neighbors(0)[0]);
            trail.pop();
            Ok(TwoCoreShape::Cycle { cycle: host(trail) })
        }
        _ => {
            let branch: Vec<usize> = (0..q.vertex_count()).filter(|&v| q.degree(v) >= 3).collect();
            if let [v] = branch[..] {
                let loops = loops_at(q, v);
                let [c0, c1]: [Vec<usize>; 2] = loops.try_into().expect("bowtie has two loops");
                let (c0, c1) = if c0.len() <= c1.len() { (c0, c1) } else { (c1, c0) };
                let spec = BarbellSpec::new(c0.len(), c1.len(), 1)?;
                return Ok(TwoCoreShape::Barbell { spec, cycles: [host(c0), host(c1)], path: host(vec![v]) });
            }
            let [a, b] = branch[..] else {
                return Err(Error::input("unexpected 2-core"));
            };
            let trails: Vec<Vec<usize>> = q.neighbors(a).iter().map(|&w| walk(q, a, w)).collect();
            let into_loop = trails.iter().any(|t| *t.last().unwrap() == a);
            if into_loop {
                let mut la = loops_at(q, a);
                let mut lb = loops_at(q, b);
                let link = trails.into_iter().find(|t| *t.last().unwrap() == b).expect("central path");
                let (ca, cb) = (la.pop().unwrap(), lb.pop().unwrap());
                let (c0, c1, path) =
                    if ca.len() <= cb.len() { (ca, cb, link) } else { (cb, ca, link.into_iter().rev().collect()) };
                let spec = BarbellSpec::new(c0.len(), c1.len(), path.len())?;
                return Ok(TwoCoreShape::Barbell { spec, cycles: [host(c0), host(c1)], path: host(path) });
            }
            let mut trails = trails;
            trails.sort_by_key(Vec::len);
            let [p0, p1, p2]: [Vec<usize>; 3] = trails.try_into().expect("three central paths");
            let spec = ThetaSpec::new(p0.len(), p1.len(), p2.len())?;
            let centers = [core.vertices[a], core.vertices[b]];
            Ok(TwoCoreShape::Theta { spec, centers, paths: [host(p0), host(p1), host(p2)] })
        }
    }
}

/// Vertex counts of the two arcs between consecutive attachments of a
/// cycle with exactly two pegs (attachments counted on both arcs).
pub fn peg_split(cycle: &[usize], attachments: &[usize]) -> Option<[usize; 2]> {
    let [a, b] = attachments else {
        return None;
    };
    let i = cycle.iter().position(|v| v == a)?;
    let j = cycle.iter().position(|v| v == b)?;
    let d = i.abs_diff(j);
    let mut counts = [d + 1, cycle.len() - d + 1];
    counts.sort_unstable();
    Some(counts)
}

/// At least three pegs, or exactly two whose attachments cut the cycle into
/// two paths with even vertex counts that differ modulo 4.
pub fn peg_condition(cycle: &[usize], attachments: &[usize]) -> Result<bool> {
    match attachments.len() {
        0 => Err(Error::input("cycle has no pegs")),
        1 => Ok(false),
        2 => {
            let [p, q] = peg_split(cycle, attachments).ok_or_else(|| Error::input("attachment is not on the cycle"))?;
            Ok(p % 2 == 0 && q % 2 == 0 && p % 4 != q % 4)
        }
        _ => Ok(true),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub cycle: Vec<usize>,
    pub attachments: Vec<usize>,
    /// Arc vertex counts when there are exactly two pegs.
    pub split: Option<[usize; 2]>,
    pub peg_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Determinant { det: String },
    Pegs { cycles: Vec<CycleWitness> },
    ThetaPaths { paths: [usize; 3] },
    Pendant { leaf: usize, neighbor: usize },
    Crab { leaves: [usize; 2], path_vertex_counts: [usize; 3] },
    Violation { violation: Violation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub invertible: bool,
    pub unimodular: bool,
    pub sign_invertible: bool,
    pub k2_reducible: bool,
    pub decided_by: &'static str,
    pub witness: Option<Witness>,
}

fn det_report(det: &BigInt) -> (bool, bool) {
    (!det.is_zero(), det.abs().is_one())
}

fn cycle_witnesses(pegs: &PegMap) -> Result<Vec<CycleWitness>> {
    pegs.cycles
        .iter()
        .map(|c| {
            let attachments = c.attachments();
            Ok(CycleWitness {
                split: peg_split(&c.cycle, &attachments),
                peg_condition: peg_condition(&c.cycle, &attachments)?,
                cycle: c.cycle.clone(),
                attachments,
            })
        })
        .collect()
}

/// Connected unicyclic graphs: invertible iff K₂-reducible or the residual
/// is a single cycle of length `≢ 0 (mod 4)`; sign-invertible iff
/// K₂-reducible and the cycle satisfies the peg condition.
pub fn classify_unicyclic(g: &Graph) -> Result<ClassificationReport> {
    if !g.is_connected() || g.cycle_rank() != 1 {
        return Err(Error::input("expected a connected unicyclic graph"));
    }
    let trace = k2_reduce(g);
    if !trace.is_reducible() {
        let r = &trace.residual.graph;
        let is_cycle = r.is_connected() && (0..r.vertex_count()).all(|v| r.degree(v) == 2);
        let invertible = is_cycle && !r.vertex_count().is_multiple_of(4);
        let det = if is_cycle { det_cycle(r.vertex_count())? } else { 0 };
        return Ok(ClassificationReport {
            invertible,
            unimodular: false,
            sign_invertible: false,
            k2_reducible: false,
            decided_by: "thm:uni-inverse",
            witness: Some(Witness::Determinant { det: det.to_string() }),
        });
    }
    let pegs = pegs_and_branches(g)?;
    let cycles = cycle_witnesses(&pegs)?;
    Ok(ClassificationReport {
        invertible: true,
        unimodular: true,
        sign_invertible: cycles.iter().all(|c| c.peg_condition),
        k2_reducible: true,
        decided_by: "thm:unicycle",
        witness: Some(Witness::Pegs { cycles }),
    })
}

pub fn classify_pure_cycle(n: usize) -> Result<ClassificationReport> {
    let det = det_cycle(n)?;
    Ok(ClassificationReport {
        invertible: det != 0,
        unimodular: false,
        sign_invertible: false,
        k2_reducible: false,
        decided_by: "prop:c-s-inverse",
        witness: Some(Witness::Determinant { det: det.to_string() }),
    })
}

/// Sign-invertible iff `θ1 = 2` and `θ2 ≡ θ3 ≡ 0 (mod 4)`.
pub fn classify_pure_theta(spec: &ThetaSpec) -> ClassificationReport {
    let det = det_theta(spec);
    let [a, b, c] = spec.paths;
    ClassificationReport {
        invertible: det != 0,
        unimodular: det.abs() == 1,
        sign_invertible: a == 2 && b % 4 == 0 && c % 4 == 0,
        k2_reducible: false,
        decided_by: "prop:theta-s-inverse",
        witness: Some(Witness::ThetaPaths { paths: spec.paths }),
    }
}

/// Barbells are never unimodular.
pub fn classify_pure_barbell(spec: &BarbellSpec) -> ClassificationReport {
    let det = det_barbell(spec);
    ClassificationReport {
        invertible: det != 0,
        unimodular: det.abs() == 1,
        sign_invertible: false,
        k2_reducible: false,
        decided_by: "prop:barbell",
        witness: Some(Witness::Determinant { det: det.to_string() }),
    }
}

/// `Some(true)` when the graph is K₂-reducible and every 2-core cycle has
/// at least three pegs; no verdict otherwise.
pub fn three_peg_shortcut(g: &Graph) -> Option<bool> {
    let pegs = pegs_and_branches(g).ok()?;
    pegs.cycles.iter().all(|c| c.pegs.len() >= 3).then_some(true)
}

fn bicyclic_report(
    g: &Graph,
    sign_invertible: bool,
    k2_reducible: bool,
    decided_by: &'static str,
    witness: Option<Witness>,
) -> ClassificationReport {
    let (invertible, unimodular) = det_report(&det_oracle(g));
    ClassificationReport { invertible, unimodular, sign_invertible, k2_reducible, decided_by, witness }
}

/// Barbell-cored bicyclic graphs: sign-invertible iff K₂-reducible and
/// either the semi-2-core is a bowtie with odd cycles `θ1 ≢ θ2 (mod 4)`
/// plus one pendant edge at the central vertex, or every cycle satisfies
/// the peg condition.
pub fn classify_bicyclic_barbell(g: &Graph) -> Result<ClassificationReport> {
    let TwoCoreShape::Barbell { spec, path, .. } = two_core_shape(g)? else {
        return Err(Error::input("2-core is not a barbell"));
    };
    let trace = k2_reduce(g);
    if !trace.is_reducible() {
        return Ok(bicyclic_report(g, false, false, "thm:s-inv-barbell", None));
    }
    let semi = semi_two_core(g)?;
    let core_len = spec.vertex_count();
    let (a, b) = (spec.first_cycle, spec.second_cycle);
    if spec.path == 1 && semi.vertices.len() == core_len + 1 {
        let centre = path[0];
        let leaf = *semi.vertices.iter().find(|&&v| two_core(g).local(v).is_none()).expect("one peg vertex");
        if g.has_edge(leaf, centre) && a % 2 == 1 && b % 2 == 1 && a % 4 != b % 4 {
            return Ok(bicyclic_report(
                g,
                true,
                true,
                "thm:s-inv-barbell(i)",
                Some(Witness::Pendant { leaf, neighbor: centre }),
            ));
        }
    }
    let cycles = cycle_witnesses(&pegs_and_branches(g)?)?;
    let ok = cycles.iter().all(|c| c.peg_condition);
    Ok(bicyclic_report(g, ok, true, "thm:s-inv-barbell(ii)", Some(Witness::Pegs { cycles })))
}

/// Crab test: exactly two degree-1 vertices joined by exactly three
/// feasible paths, all with an even number of vertices, not all congruent
/// modulo 4. Returns the leaves and sorted path vertex counts.
pub fn is_crab_graph(g: &Graph) -> Result<Option<([usize; 2], [usize; 3])>> {
    if !matches!(two_core_shape(g)?, TwoCoreShape::Theta { .. }) {
        return Err(Error::input("2-core is not a theta graph"));
    }
    let leaves: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).collect();
    let [x, y] = leaves[..] else {
        return Ok(None);
    };
    if !k2_reduce(g).is_reducible() {
        return Err(Error::input("crab graphs are K2-reducible"));
    }
    let paths = feasible_paths(g, x, y)?;
    let counts: Vec<usize> = paths.iter().map(|p| p.vertex_count()).collect();
    let Ok(mut counts) = <[usize; 3]>::try_from(counts) else {
        return Ok(None);
    };
    counts.sort_unstable();
    let even = counts.iter().all(|c| c % 2 == 0);
    let all_congruent = counts.iter().all(|c| c % 4 == counts[0] % 4);
    Ok((even && !all_congruent).then_some(([x, y], counts)))
}

/// Theta-cored bicyclic graphs: sign-invertible iff the K₂-irreducible
/// subgraph is `Θ(2,θ2,θ3)` with `θ2 ≡ θ3 ≡ 0 (mod 4)`, or the graph is
/// K₂-reducible and its semi-2-core either has exactly one leaf whose
/// neighbor is on the odd central path (with the even paths `≢ (mod 4)`),
/// or all cycles satisfy the peg condition, or the semi-2-core is a crab.
pub fn classify_bicyclic_theta(g: &Graph) -> Result<ClassificationReport> {
    let TwoCoreShape::Theta { spec, paths, .. } = two_core_shape(g)? else {
        return Err(Error::input("2-core is not a theta graph"));
    };
    let trace = k2_reduce(g);
    if !trace.is_reducible() {
        let core = two_core(g);
        let [a, b, c] = spec.paths;
        let ok = trace.residual.vertices == core.vertices && a == 2 && b % 4 == 0 && c % 4 == 0;
        return Ok(bicyclic_report(g, ok, false, "thm:s-inv-theta", Some(Witness::ThetaPaths { paths: spec.paths })));
    }
    let semi = semi_two_core(g)?;
    let s = &semi.graph;
    let leaves: Vec<usize> = (0..s.vertex_count()).filter(|&v| s.degree(v) == 1).collect();
    if let [leaf] = leaves[..] {
        let neighbor = semi.vertices[s.neighbors(leaf)[0]];
        let odd: Vec<usize> = (0..3).filter(|&i| spec.paths[i] % 2 == 1).collect();
        if let [i] = odd[..] {
            let evens: Vec<usize> = (0..3).filter(|&j| j != i).map(|j| spec.paths[j]).collect();
            if paths[i].contains(&neighbor) && evens[0] % 4 != evens[1] % 4 {
                return Ok(bicyclic_report(
                    g,
                    true,
                    true,
                    "thm:s-inv-theta(i)",
                    Some(Witness::Pendant { leaf: semi.vertices[leaf], neighbor }),
                ));
            }
        }
    }
    let cycles = cycle_witnesses(&pegs_and_branches(g)?)?;
    if cycles.iter().all(|c| c.peg_condition) {
        return Ok(bicyclic_report(g, true, true, "thm:s-inv-theta(ii)", Some(Witness::Pegs { cycles })));
    }
    if let Ok(Some((leaves, counts))) = is_crab_graph(s) {
        return Ok(bicyclic_report(
            g,
            true,
            true,
            "thm:s-inv-theta(ii)-crab",
            Some(Witness::Crab { leaves: leaves.map(|v| semi.vertices[v]), path_vertex_counts: counts }),
        ));
    }
    Ok(bicyclic_report(g, false, true, "thm:s-inv-theta(ii)", Some(Witness::Pegs { cycles })))
}

/// Definition-level verdict from determinants and path sums.
pub fn classify_general(g: &Graph) -> ClassificationReport {
    let si = is_sign_invertible(g);
    let (invertible, unimodular) = det_report(&si.det);
    ClassificationReport {
        invertible,
        unimodular,
        sign_invertible: si.sign_invertible,
        k2_reducible: k2_reduce(g).is_reducible(),
        decided_by: "general-engine",
        witness: si.violation.map(|violation| Witness::Violation { violation }),
    }
}

/// Dispatches to the forest rule, the pure family formulas or the
/// rank-one/rank-two classifiers, and otherwise to the general engine.
pub fn classify(g: &Graph) -> ClassificationReport {
    if g.is_forest() {
        let det = det_forest(g).expect("forest");
        return ClassificationReport {
            invertible: det != 0,
            unimodular: det != 0,
            sign_invertible: det != 0,
            k2_reducible: k2_reduce(g).is_reducible(),
            decided_by: "forest-rule",
            witness: Some(Witness::Determinant { det: det.to_string() }),
        };
    }
    if !g.is_connected() || g.cycle_rank() > 2 {
        return classify_general(g);
    }
    let is_core = two_core(g).vertices.len() == g.vertex_count();
    let shape = two_core_shape(g).expect("connected with rank at most 2");
    let report = match (&shape, is_core) {
        (TwoCoreShape::Cycle { cycle }, true) => classify_pure_cycle(cycle.len()),
        (TwoCoreShape::Theta { spec, .. }, true) => Ok(classify_pure_theta(spec)),
        (TwoCoreShape::Barbell { spec, .. }, true) => Ok(classify_pure_barbell(spec)),
        (TwoCoreShape::Cycle { .. }, false) => classify_unicyclic(g),
        (TwoCoreShape::Theta { .. }, false) => classify_bicyclic_theta(g),
        (TwoCoreShape::Barbell { .. }, false) => classify_bicyclic_barbell(g),
        (TwoCoreShape::Empty, _) => unreachable!("not a forest"),
    };
    report.expect("shape preconditions hold")
}
