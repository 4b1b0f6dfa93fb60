//! Seeded cross-checks behind `signinv verify`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use signinv_core::classify::{classify, classify_general};
use signinv_core::det::{det_barbell, det_cycle, det_harary, det_oracle, det_theta};
use signinv_core::format::format_edge_list;
use signinv_core::inverse::inverse_graph;
use signinv_core::{corpus, families, matrix, BarbellSpec, BigInt, Graph, ThetaSpec};

const EXHAUSTIVE_LIMIT: usize = 6;

pub struct Check {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    /// Smallest failing graph by (vertices, edges, edge list).
    pub counterexample: Option<Graph>,
    pub note: String,
}

pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.failures == 0 { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {}: {} instances, {} failures{}",
                c.name,
                c.instances,
                c.failures,
                if c.note.is_empty() { String::new() } else { format!(" ({})", c.note) }
            );
            if let Some(g) = &c.counterexample {
                let _ = write!(out, "counterexample:\n{}", format_edge_list(g));
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "all checks passed" } else { "verification failed" });
        out
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn key(g: &Graph) -> (usize, usize, Vec<(usize, usize)>) {
    (g.vertex_count(), g.edge_count(), g.edges().to_vec())
}

fn check(name: &'static str, graphs: Vec<Graph>, ok: impl Fn(&Graph) -> bool + Sync, note: String) -> Check {
    let failing: Vec<Graph> = graphs.par_iter().filter(|g| !ok(g)).cloned().collect();
    Check {
        name,
        instances: graphs.len(),
        failures: failing.len(),
        counterexample: failing.into_iter().min_by_key(key),
        note,
    }
}

fn general_corpus(max_n: usize, samples: usize, seed: u64) -> Vec<Graph> {
    let mut graphs: Vec<Graph> = (0..=max_n.min(EXHAUSTIVE_LIMIT)).flat_map(corpus::all_graphs).collect();
    if max_n > EXHAUSTIVE_LIMIT {
        graphs.extend((0..samples).map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let n = rng.gen_range(EXHAUSTIVE_LIMIT + 1..=max_n);
            let p = rng.gen_range(0.2..0.6);
            corpus::random_graph(&mut rng, n, p)
        }));
    }
    graphs
}

fn inverse_matches(g: &Graph) -> bool {
    match (inverse_graph(g), matrix::inverse_oracle(g)) {
        (Ok(inv), Some(oracle)) => inv.to_dense() == oracle,
        (Err(_), None) => true,
        _ => false,
    }
}

fn family_dets(max_n: usize) -> (usize, Vec<Graph>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 3..=max_n.max(3) {
        count += 1;
        let g = families::cycle(n);
        if det_oracle(&g) != BigInt::from(det_cycle(n).expect("n >= 3")) {
            bad.push(g);
        }
    }
    for a in 2..=max_n {
        for b in a..=max_n {
            for c in b..=max_n {
                let Ok(spec) = ThetaSpec::new(a, b, c) else { continue };
                if spec.vertex_count() > max_n {
                    continue;
                }
                count += 1;
                let g = families::theta(&spec);
                if det_oracle(&g) != BigInt::from(det_theta(&spec)) {
                    bad.push(g);
                }
            }
        }
    }
    for a in 3..=max_n {
        for b in 3..=max_n {
            for t in 1..=max_n {
                let spec = BarbellSpec::new(a, b, t).expect("valid");
                if spec.vertex_count() > max_n {
                    continue;
                }
                count += 1;
                let g = families::barbell(&spec);
                if det_oracle(&g) != BigInt::from(det_barbell(&spec)) {
                    bad.push(g);
                }
            }
        }
    }
    (count, bad)
}

fn structured_corpus(max_n: usize, samples: usize, seed: u64) -> Vec<Graph> {
    let mut graphs = Vec::new();
    let max_cycle = max_n.min(9);
    if max_cycle >= 3 {
        graphs.extend((0..samples).map(|i| {
            let mut rng = rng_for(seed ^ 0x756e69, i as u64);
            let len = rng.gen_range(3..=max_cycle);
            corpus::random_unicyclic(&mut rng, len, max_n)
        }));
    }
    if max_n >= 5 {
        graphs.extend((0..samples).map(|i| {
            let mut rng = rng_for(seed ^ 0x746865, i as u64);
            corpus::random_theta_cored(&mut rng, max_n)
        }));
    }
    if max_n >= 6 {
        graphs.extend((0..samples).map(|i| {
            let mut rng = rng_for(seed ^ 0x626172, i as u64);
            corpus::random_barbell_cored(&mut rng, max_n)
        }));
    }
    graphs
}

fn verdicts_agree(g: &Graph) -> bool {
    let (a, b) = (classify(g), classify_general(g));
    (a.invertible, a.unimodular, a.sign_invertible) == (b.invertible, b.unimodular, b.sign_invertible)
}

pub fn run(max_n: usize, samples: usize, seed: u64) -> Report {
    let graphs = general_corpus(max_n, samples, seed);
    let singular = graphs.par_iter().filter(|g| det_oracle(g) == BigInt::from(0)).count();
    let (family_count, family_bad) = family_dets(max_n);
    let structured = structured_corpus(max_n, samples, seed);
    Report {
        checks: vec![
            check("harary-vs-oracle", graphs.clone(), |g| det_harary(g) == det_oracle(g), String::new()),
            Check {
                name: "closed-forms-vs-oracle",
                instances: family_count,
                failures: family_bad.len(),
                counterexample: family_bad.into_iter().min_by_key(key),
                note: String::new(),
            },
            check("inverse-vs-oracle", graphs, inverse_matches, format!("{singular} singular inputs skipped")),
            check("classifier-vs-engine", structured, verdicts_agree, String::new()),
        ],
    }
}
