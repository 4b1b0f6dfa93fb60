//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use signinv_core::classify::ClassificationReport;
use signinv_core::classify::{
    classify_bicyclic_barbell, classify_bicyclic_theta, classify_general, classify_unicyclic,
};
use signinv_core::det::{
    barbell_singular_condition, det_barbell, det_cycle, det_harary, det_oracle, det_theta, theta_singular_condition,
    theta_unimodular_condition,
};
use signinv_core::enumerate::perfect_matchings;
use signinv_core::format::{format_edge_list, InverseDocument};
use signinv_core::inverse::sign_invertible_via_essential_index;
use signinv_core::inverse::{inverse_entry, inverse_graph, is_sign_invertible, max_essential_index};
use signinv_core::matrix::{inverse_oracle, is_identity, multiply, rational_adjacency};
use signinv_core::structure::{is_k2_reducible, k2_reduce, pegs_and_branches, unique_perfect_matching};
use signinv_core::{corpus, families, BarbellSpec, BigInt, Error, Graph, ThetaSpec};

const SEED: u64 = 0x5167_6e69;
const RANDOM_GENERAL: usize = 1000;
const UNICYCLIC: usize = 2000;
const BICYCLIC: usize = 1000;

struct Outcome {
    pass: bool,
    summary: String,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, summary: String) -> Self {
        Outcome { pass, summary, detail: String::new() }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }
}

fn rng_for(salt: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt);
    rng.set_stream(i as u64);
    rng
}

fn key(g: &Graph) -> (usize, usize, Vec<(usize, usize)>) {
    (g.vertex_count(), g.edge_count(), g.edges().to_vec())
}

fn minimal<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Option<&'a Graph> {
    graphs.into_iter().min_by_key(|g| key(g))
}

fn counterexample(label: &str, g: &Graph) -> String {
    format!("  {label}:\n{}", indent(&format_edge_list(g)))
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}\n")).collect()
}

/// Exhaustive graphs on ≤ 6 vertices plus seeded `G(n, p)` on 7..=10.
fn general_corpus() -> Vec<Graph> {
    let mut graphs: Vec<Graph> = (0..=6).flat_map(corpus::all_graphs).collect();
    graphs.extend((0..RANDOM_GENERAL).map(|i| {
        let mut rng = rng_for(0x67656e, i);
        let n = rng.gen_range(7..=10);
        let p = rng.gen_range(0.2..0.6);
        corpus::random_graph(&mut rng, n, p)
    }));
    graphs
}

fn unicyclic_corpus() -> Vec<Graph> {
    (0..UNICYCLIC)
        .map(|i| {
            let mut rng = rng_for(0x756e69, i);
            let len = rng.gen_range(3..=9);
            corpus::random_unicyclic(&mut rng, len, 12)
        })
        .collect()
}

fn theta_corpus() -> Vec<Graph> {
    (0..BICYCLIC).map(|i| corpus::random_theta_cored(&mut rng_for(0x746865, i), 14)).collect()
}

fn barbell_corpus() -> Vec<Graph> {
    (0..BICYCLIC).map(|i| corpus::random_barbell_cored(&mut rng_for(0x626172, i), 14)).collect()
}

fn verdict(r: &ClassificationReport) -> (bool, bool, bool) {
    (r.invertible, r.unimodular, r.sign_invertible)
}

fn criterion_1() -> Outcome {
    let bad: Vec<usize> =
        (3..=40).filter(|&n| det_oracle(&families::cycle(n)) != BigInt::from(det_cycle(n).unwrap())).collect();
    let pattern_ok = (3..=40).all(|n| {
        let expect = match n % 4 {
            0 => 0,
            2 => -4,
            _ => 2,
        };
        det_cycle(n).unwrap() == expect
    });
    Outcome::new(
        bad.is_empty() && pattern_ok,
        format!("det_cycle(n) = det_oracle(C_n) for 3 <= n <= 40 ({} mismatches {bad:?})", bad.len()),
    )
}

fn criterion_2() -> Outcome {
    let mut specs = Vec::new();
    for a in 2..=9 {
        for b in a..=9 {
            for c in b..=9 {
                if let Ok(spec) = ThetaSpec::new(a, b, c) {
                    specs.push(spec);
                }
            }
        }
    }
    let failures: Vec<String> = specs
        .par_iter()
        .filter_map(|spec| {
            let g = families::theta(spec);
            let closed = BigInt::from(det_theta(spec));
            let (harary, oracle) = (det_harary(&g), det_oracle(&g));
            let zero_ok = oracle.is_zero() == theta_singular_condition(spec);
            let unimodular_ok = oracle.abs().is_one() == theta_unimodular_condition(spec);
            (closed != oracle || harary != oracle || !zero_ok || !unimodular_ok)
                .then(|| format!("  {:?}: closed {closed}, harary {harary}, oracle {oracle}\n", spec.paths))
        })
        .collect();
    Outcome::new(
        failures.is_empty(),
        format!(
            "theta closed form = Harary = oracle and zero/unimodular conditions on {} specs ({} failures)",
            specs.len(),
            failures.len()
        ),
    )
    .with_detail(failures.concat())
}

fn criterion_3() -> Outcome {
    let mut specs = Vec::new();
    for a in 3..=8 {
        for b in 3..=8 {
            for t in 1..=5 {
                specs.push(BarbellSpec::new(a, b, t).unwrap());
            }
        }
    }
    let rows: Vec<(BarbellSpec, BigInt, i64)> =
        specs.par_iter().map(|spec| (*spec, det_oracle(&families::barbell(spec)), det_barbell(spec))).collect();
    let closed_bad = rows.iter().filter(|(_, o, c)| *o != BigInt::from(*c)).count();
    let unimodular = rows.iter().filter(|(_, o, _)| o.abs().is_one()).count();
    let zero_bad: Vec<&(BarbellSpec, BigInt, i64)> =
        rows.iter().filter(|(s, o, _)| o.is_zero() != barbell_singular_condition(s)).collect();
    let mut detail = String::new();
    for (s, o, _) in zero_bad.iter().take(8) {
        let _ = writeln!(
            detail,
            "  B({},{};{}): det {o}, listed zero conditions say {}",
            s.first_cycle,
            s.second_cycle,
            s.path,
            if barbell_singular_condition(s) { "zero" } else { "nonzero" }
        );
    }
    if zero_bad.len() > 8 {
        let _ = writeln!(detail, "  ... {} more", zero_bad.len() - 8);
    }
    Outcome::new(
        closed_bad == 0 && unimodular == 0 && zero_bad.is_empty(),
        format!(
            "barbell sweep on {} specs: {closed_bad} closed-form mismatches, {unimodular} unimodular, {} zero-condition mismatches",
            rows.len(),
            zero_bad.len()
        ),
    )
    .with_detail(detail)
}

fn criterion_4(corpus: &[Graph]) -> Outcome {
    let results: Vec<(bool, bool)> = corpus
        .par_iter()
        .map(|g| {
            let oracle = inverse_oracle(g);
            match (inverse_graph(g), oracle) {
                (Ok(inv), Some(oracle)) => {
                    let dense = inv.to_dense();
                    let product_ok = is_identity(&multiply(&rational_adjacency(g), &dense));
                    let n = g.vertex_count();
                    let entries_ok =
                        (0..n).all(|x| (0..n).all(|y| inverse_entry(g, x, y).is_ok_and(|e| e == oracle[x][y])));
                    (true, product_ok && entries_ok)
                }
                (Err(Error::Singular), None) => (false, true),
                _ => (false, false),
            }
        })
        .collect();
    let invertible = results.iter().filter(|r| r.0).count();
    let failing: Vec<&Graph> = corpus.iter().zip(&results).filter(|(_, r)| !r.1).map(|(g, _)| g).collect();
    let detail = minimal(failing.iter().copied()).map_or(String::new(), |g| counterexample("minimal failure", g));
    Outcome::new(
        failing.is_empty(),
        format!(
            "A * inverse_graph = I and inverse_entry = oracle on {} graphs ({invertible} invertible, {} failures)",
            corpus.len(),
            failing.len()
        ),
    )
    .with_detail(detail)
}

fn criterion_5(corpus: &[Graph]) -> Outcome {
    let failing: Vec<&Graph> = corpus
        .par_iter()
        .filter(|g| {
            let report = is_sign_invertible(g);
            let by_entries = inverse_oracle(g)
                .is_some_and(|inv| inv.iter().flatten().all(|e| e.is_zero() || (e.is_integer() && e.abs().is_one())));
            let implied = !report.sign_invertible || (det_oracle(g).abs().is_one() && !perfect_matchings(g).is_empty());
            report.sign_invertible != by_entries || !implied
        })
        .collect();
    let count = corpus.par_iter().filter(|g| is_sign_invertible(g).sign_invertible).count();
    let detail = minimal(failing.iter().copied()).map_or(String::new(), |g| counterexample("minimal failure", g));
    Outcome::new(
        failing.is_empty(),
        format!(
            "sign-invertible <=> inverse entries in {{-1,0,1}}, and => unimodular with a perfect matching, on {} graphs ({count} sign-invertible, {} failures)",
            corpus.len(),
            failing.len()
        ),
    )
    .with_detail(detail)
}

fn criterion_6(corpus: &[Graph]) -> Outcome {
    let reducible = corpus.par_iter().filter(|g| is_k2_reducible(g)).count();
    let failing: Vec<&Graph> = corpus
        .par_iter()
        .filter(|g| {
            let trace = k2_reduce(g);
            let det_ok = det_oracle(g).abs() == det_oracle(&trace.residual.graph).abs();
            let pm_ok = !trace.is_reducible() || unique_perfect_matching(g) == Some(trace.matching());
            !(det_ok && pm_ok)
        })
        .collect();
    let detail = minimal(failing.iter().copied()).map_or(String::new(), |g| counterexample("minimal failure", g));
    Outcome::new(
        failing.is_empty(),
        format!(
            "|det G| = |det residual| and reducible => unique perfect matching = trace on {} graphs ({reducible} reducible, {} failures)",
            corpus.len(),
            failing.len()
        ),
    )
    .with_detail(detail)
}

fn criterion_7(unicyclic: &[Graph]) -> Outcome {
    let disagree: Vec<&Graph> = unicyclic
        .par_iter()
        .filter(|g| classify_unicyclic(g).map(|r| verdict(&r)).ok() != Some(verdict(&classify_general(g))))
        .collect();
    let odd_unique: Vec<&Graph> =
        unicyclic.iter().filter(|g| !g.is_bipartite().is_bipartite() && unique_perfect_matching(g).is_some()).collect();
    let peg_bad: Vec<&Graph> = odd_unique
        .par_iter()
        .copied()
        .filter(|g| {
            let pegs = pegs_and_branches(g).map(|p| p.cycles[0].pegs.len()).unwrap_or(0);
            is_sign_invertible(g).sign_invertible != (pegs >= 3)
        })
        .collect();
    let mut detail = String::new();
    if let Some(g) = minimal(disagree.iter().copied()) {
        detail += &counterexample("minimal classifier disagreement", g);
    }
    if let Some(g) = minimal(peg_bad.iter().copied()) {
        detail += &counterexample("minimal three-peg failure", g);
    }
    Outcome::new(
        disagree.is_empty() && peg_bad.is_empty() && !odd_unique.is_empty(),
        format!(
            "classify_unicyclic = general engine on {} unicyclic graphs ({} disagreements); three-peg rule on {} non-bipartite unique-PM graphs ({} failures)",
            unicyclic.len(),
            disagree.len(),
            odd_unique.len(),
            peg_bad.len()
        ),
    )
    .with_detail(detail)
}

fn criterion_8(thetas: &[Graph], barbells: &[Graph]) -> Outcome {
    let sweep = |graphs: &[Graph], classify: fn(&Graph) -> signinv_core::Result<ClassificationReport>| -> Vec<Graph> {
        graphs
            .par_iter()
            .filter(|g| classify(g).map(|r| verdict(&r)).ok() != Some(verdict(&classify_general(g))))
            .cloned()
            .collect()
    };
    let bad_barbell = sweep(barbells, classify_bicyclic_barbell);
    let bad_theta = sweep(thetas, classify_bicyclic_theta);
    let mut detail = String::new();
    for (label, bad) in [("barbell", &bad_barbell), ("theta", &bad_theta)] {
        if let Some(g) = minimal(bad) {
            let classifier = if label == "theta" { classify_bicyclic_theta(g) } else { classify_bicyclic_barbell(g) };
            let engine = is_sign_invertible(g);
            let _ = writeln!(
                detail,
                "  minimal {label} counterexample: classifier says sign-invertible = {} via {}, engine says {} ({:?})",
                classifier.as_ref().map(|r| r.sign_invertible).unwrap_or(false),
                classifier.as_ref().map(|r| r.decided_by).unwrap_or("error"),
                engine.sign_invertible,
                engine.violation
            );
            detail += &indent(&format_edge_list(g));
        }
    }
    Outcome::new(
        bad_barbell.is_empty() && bad_theta.is_empty(),
        format!(
            "classify_bicyclic_* = general engine: barbell-cored {} disagreements / {}, theta-cored {} disagreements / {}",
            bad_barbell.len(),
            barbells.len(),
            bad_theta.len(),
            thetas.len()
        ),
    )
    .with_detail(detail)
}

fn criterion_9() -> Outcome {
    let g = families::theta(&ThetaSpec::new(2, 4, 4).unwrap());
    let inv = inverse_graph(&g).expect("Θ(2,4,4) is invertible");
    let doc = InverseDocument::new(&det_harary(&g), &inv);
    let oracle_ok = inverse_oracle(&g).is_some_and(|o| o == inv.to_dense());
    let text = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    let golden = include_str!("../../cli/tests/golden/theta_2_4_4_inverse.json");
    let edges = |neg: bool| -> Vec<(usize, usize)> {
        inv.entries().filter(|(u, v, w)| u != v && w.is_negative() == neg).map(|(u, v, _)| (u, v)).collect()
    };
    let pattern_ok = edges(false) == [(0, 2), (0, 4), (1, 3), (1, 5)] && edges(true) == [(0, 1), (2, 5), (3, 4)];
    Outcome::new(
        doc.signed
            && oracle_ok
            && pattern_ok
            && doc.structure.positive_edges == 4
            && doc.structure.negative_edges == 3
            && doc.structure.loops == 0
            && text == golden,
        format!(
            "inverse of Theta(2,4,4): signed {}, {} positive and {} negative edges, {} loops, golden file {}",
            doc.signed,
            doc.structure.positive_edges,
            doc.structure.negative_edges,
            doc.structure.loops,
            if text == golden { "matches" } else { "differs" }
        ),
    )
}

fn criterion_10(corpora: &[&[Graph]]) -> Outcome {
    let instances: Vec<&Graph> = corpora
        .iter()
        .flat_map(|c| c.iter())
        .filter(|g| g.is_bipartite().is_bipartite() && is_k2_reducible(g))
        .collect();
    let failing: Vec<&Graph> = instances
        .par_iter()
        .copied()
        .filter(|g| {
            let truth = is_sign_invertible(g).sign_invertible;
            let via = sign_invertible_via_essential_index(g).ok();
            let max_ok = max_essential_index(g).ok().map(|m| m <= 1);
            via != Some(truth) || max_ok != Some(truth)
        })
        .collect();
    let detail = minimal(failing.iter().copied()).map_or(String::new(), |g| counterexample("minimal failure", g));
    Outcome::new(
        failing.is_empty() && !instances.is_empty(),
        format!(
            "essential-index test = definition and max index <= 1 <=> sign-invertible on {} bipartite K2-reducible graphs ({} failures)",
            instances.len(),
            failing.len()
        ),
    )
    .with_detail(detail)
}

fn run(number: usize, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let pass = outcome.pass && in_time;
    println!(
        "{} criterion {number}: {} [{:.2}s of {}s{}]",
        if pass { "PASS" } else { "FAIL" },
        outcome.summary,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { ", over budget" }
    );
    print!("{}", outcome.detail);
    pass
}

fn main() {
    let secs = Duration::from_secs;
    let general = general_corpus();
    let unicyclic = unicyclic_corpus();
    let (thetas, barbells) = (theta_corpus(), barbell_corpus());
    let results = [
        run(1, secs(1), criterion_1),
        run(2, secs(30), criterion_2),
        run(3, secs(60), criterion_3),
        run(4, secs(600), || criterion_4(&general)),
        run(5, secs(600), || criterion_5(&general)),
        run(6, secs(600), || criterion_6(&general)),
        run(7, secs(300), || criterion_7(&unicyclic)),
        run(8, secs(600), || criterion_8(&thetas, &barbells)),
        run(9, secs(10), criterion_9),
        run(10, secs(600), || criterion_10(&[&general, &unicyclic, &thetas, &barbells])),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
