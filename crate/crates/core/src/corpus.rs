//! Graph corpora for sweeps: exhaustive labeled graphs, random graphs and
//! random unicyclic/bicyclic graphs grown from a family core.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::families::{barbell, cycle, theta};
use crate::{BarbellSpec, Graph, ThetaSpec};

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices, by edge bitmask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 64, "too many vertices for exhaustive enumeration");
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edge_list(n, edges).expect("valid pairs")
    })
}

/// `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edge_list(n, edges).expect("valid pairs")
}

/// Grows trees on `g` until it has `target` vertices: each step hangs a
/// leaf or a two-vertex pendant path on a random vertex.
pub fn grow_forest<R: Rng>(rng: &mut R, g: &Graph, target: usize) -> Graph {
    let mut n = g.vertex_count();
    let mut edges = g.edges().to_vec();
    while n < target {
        let at = rng.gen_range(0..n);
        edges.push((at, n));
        n += 1;
        if n < target && rng.gen_bool(0.5) {
            edges.push((n - 1, n));
            n += 1;
        }
    }
    Graph::from_edge_list(n, edges).expect("forest growth keeps the graph simple")
}

/// Hangs a pendant edge on each vertex of a random subset of `core`.
pub fn random_pegs<R: Rng>(rng: &mut R, g: &Graph, core: &[usize], max: usize) -> Graph {
    let mut at = core.to_vec();
    at.shuffle(rng);
    at.truncate(rng.gen_range(0..=max.min(at.len())));
    at.sort_unstable();
    crate::families::with_pendants(g, &at).expect("core vertices are in range")
}

/// Random connected unicyclic graph with cycle length `len` and at most
/// `max_n` vertices.
pub fn random_unicyclic<R: Rng>(rng: &mut R, len: usize, max_n: usize) -> Graph {
    decorate(rng, cycle(len), max_n)
}

/// Panics if `max_core < 4`, below the smallest theta graph.
pub fn random_theta_spec<R: Rng>(rng: &mut R, max_core: usize) -> ThetaSpec {
    assert!(max_core >= 4, "no theta graph has fewer than 4 vertices");
    loop {
        let spec = ThetaSpec::new(rng.gen_range(2..=8), rng.gen_range(2..=8), rng.gen_range(2..=8));
        if let Ok(spec) = spec {
            if spec.vertex_count() <= max_core {
                return spec;
            }
        }
    }
}

/// Panics if `max_core < 5`, below the smallest barbell.
pub fn random_barbell_spec<R: Rng>(rng: &mut R, max_core: usize) -> BarbellSpec {
    assert!(max_core >= 5, "no barbell has fewer than 5 vertices");
    loop {
        let spec = BarbellSpec::new(rng.gen_range(3..=8), rng.gen_range(3..=8), rng.gen_range(1..=5)).expect("valid");
        if spec.vertex_count() <= max_core {
            return spec;
        }
    }
}

pub fn random_theta_cored<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let spec = random_theta_spec(rng, max_n - 1);
    decorate(rng, theta(&spec), max_n)
}

pub fn random_barbell_cored<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let spec = random_barbell_spec(rng, max_n - 1);
    decorate(rng, barbell(&spec), max_n)
}

/// Pegs on core vertices, then pendant forests, up to `max_n` vertices.
fn decorate<R: Rng>(rng: &mut R, core: Graph, max_n: usize) -> Graph {
    let k = core.vertex_count();
    let room = max_n - k;
    let verts: Vec<usize> = (0..k).collect();
    let pegged = random_pegs(rng, &core, &verts, room);
    let n = pegged.vertex_count();
    let target = rng.gen_range(n..=max_n);
    grow_forest(rng, &pegged, target)
}
