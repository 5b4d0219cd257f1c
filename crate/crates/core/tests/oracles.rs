mod oracle;

use std::collections::BTreeMap;

use ballgraph::ball_tree::{branching_profile, build_tree, BuildLimits};
use ballgraph::embed::{count_embeddings, find_embedding, is_embedding};
use ballgraph::lowerbound::{contradiction_table, least_contradiction};
use ballgraph::rooted_graph::canonicalize;
use ballgraph::{ClassSpec, RootedGraph};
use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn canonical_codes_agree_with_brute_force_up_to_six_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, candidates) in oracle::rooted_candidates(6).into_iter().enumerate().skip(1) {
        let mut by_code: BTreeMap<Vec<u8>, (usize, u64)> = BTreeMap::new();
        let mut by_form: BTreeMap<(usize, u64), Vec<u8>> = BTreeMap::new();
        for g in candidates
            .iter()
            .flat_map(|g| [g.clone(), oracle::shuffle(g, &mut rng)])
        {
            let code = canonicalize(&g).unwrap().code;
            let form = oracle::brute_rooted_form(&g);
            assert_eq!(
                *by_code.entry(code.clone()).or_insert(form),
                form,
                "n = {n}"
            );
            assert_eq!(
                *by_form.entry(form).or_insert(code.clone()),
                code,
                "n = {n}"
            );
        }
    }
}

#[test]
fn class_counts_match_connected_graph_counts() {
    // Connected unlabelled graphs on 1..=6 vertices.
    let expected = [1, 1, 2, 6, 21, 112];
    for (n, candidates) in oracle::rooted_candidates(6).into_iter().enumerate().skip(1) {
        let mut unrooted: Vec<_> = candidates
            .iter()
            .map(|g| oracle::brute_unrooted_form(g.graph()))
            .collect();
        unrooted.sort_unstable();
        unrooted.dedup();
        assert_eq!(unrooted.len(), expected[n - 1], "n = {n}");
    }
}

fn profile(spec: &ClassSpec, depth: usize) -> Vec<usize> {
    let t = build_tree(spec, depth, &BuildLimits::default(), None);
    assert!(!t.is_truncated());
    branching_profile(&t).iter().map(|s| s.nodes).collect()
}

#[test]
fn small_ball_census() {
    let d3 = ClassSpec::degree_bounded(3).unwrap();
    assert_eq!(profile(&d3, 3), oracle::ball_census(3, 3, 8));
    let d4 = ClassSpec::degree_bounded(4).unwrap();
    assert_eq!(profile(&d4, 1), oracle::ball_census(4, 1, 4));
    let d5 = ClassSpec::degree_bounded(5).unwrap();
    assert_eq!(profile(&d5, 1), oracle::ball_census(5, 1, 5));
}

#[test]
fn embedding_counts_agree_with_exhaustive_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..150 {
        let gn = 1 + trial % 4;
        let hn = gn + trial % 3;
        let guest = oracle::random_connected(gn, 0.4, &mut rng);
        let host = oracle::random_connected(hn, 0.5, &mut rng);
        let guest = RootedGraph::new(guest, trial % gn).unwrap();
        for strong in [false, true] {
            for pin in [None, Some(trial % hn)] {
                let want = oracle::brute_count(&guest, &host, pin, strong);
                let got = count_embeddings(&guest, &host, pin, strong).unwrap();
                assert_eq!(
                    got,
                    want.into(),
                    "trial {trial}, strong {strong}, pin {pin:?}"
                );
                let found = find_embedding(&guest, &host, pin, strong).unwrap();
                assert_eq!(found.is_some(), want > 0);
                if let Some(w) = found {
                    assert!(is_embedding(guest.graph(), &host, &w.map, strong));
                }
            }
        }
    }
}

#[test]
fn table_verdicts_agree_with_log_gamma() {
    let rows = contradiction_table(3, &BigRational::one(), 40).unwrap();
    for row in &rows {
        let n = 2f64.powi(row.i as i32);
        let lhs =
            (0.5f64).log10() + statrs::function::gamma::ln_gamma(n + 1.0) / std::f64::consts::LN_10;
        let rhs = 5.0 * n * 3f64.log10();
        assert!(
            (lhs - row.lhs_log10).abs() < 1e-6 * lhs.abs().max(1.0),
            "i = {}",
            row.i
        );
        assert!((rhs - row.rhs_log10).abs() < 1e-9 * rhs.max(1.0));
        assert_eq!(lhs > rhs, row.verdict, "i = {}", row.i);
    }
    assert_eq!(least_contradiction(&rows), Some(10));
}
