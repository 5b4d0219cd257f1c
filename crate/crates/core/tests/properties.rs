use ballgraph::ball_tree::{build_tree, BallTree, BuildLimits};
use ballgraph::class_spec::random_degree_bounded_member;
use ballgraph::embed::count_embeddings;
use ballgraph::rooted_graph::{canonicalize, rooted_distance};
use ballgraph::{CanonicalBall, ClassSpec, EnumLimits, Graph, RootedGraph};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A connected rooted graph: a random tree on `n` vertices plus chords.
fn rooted_graph(max_n: usize) -> impl Strategy<Value = RootedGraph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            let chords = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
            (Just(n), parents, chords, 0..n)
        })
        .prop_map(|(n, parents, chords, root)| {
            let mut g = Graph::new(n);
            for (i, p) in parents.into_iter().enumerate() {
                g.add_edge(p, i + 1).unwrap();
            }
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if chords[k] && !g.has_edge(u, v) && (u + v) % 3 == 0 {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            RootedGraph::new(g, root).unwrap()
        })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (RootedGraph, Vec<usize>)> {
    rooted_graph(max_n).prop_flat_map(|g| {
        let perm: Vec<usize> = (0..g.vertex_count()).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

fn code(g: &RootedGraph) -> Vec<u8> {
    canonicalize(g).unwrap().code
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn codes_ignore_labels((g, perm) in with_permutation(9)) {
        prop_assert_eq!(code(&g), code(&g.relabel(&perm)));
    }

    #[test]
    fn canonical_relabelling_is_consistent((g, perm) in with_permutation(8)) {
        let a = canonicalize(&g).unwrap();
        let b = canonicalize(&g.relabel(&perm)).unwrap();
        let direct = g.relabel(&a.relabel);
        let shuffled = g.relabel(&perm).relabel(&b.relabel);
        prop_assert_eq!(direct.graph(), shuffled.graph());
    }

    #[test]
    fn distance_is_symmetric_and_ultrametric(
        a in rooted_graph(8), b in rooted_graph(8), c in rooted_graph(8)
    ) {
        let d = |x: &RootedGraph, y: &RootedGraph| rooted_distance(x, y, 4).unwrap().agreement_radius.radius();
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) >= d(&a, &b).min(d(&b, &c)));
        prop_assert_eq!(d(&a, &a), 4);
    }

    #[test]
    fn balls_are_nested(g in rooted_graph(10), r in 0usize..4, extra in 0usize..3) {
        let s = r + extra;
        prop_assert_eq!(code(&g.ball(s).ball(r)), code(&g.ball(r)));
        let outer = CanonicalBall::of_ball(&g, s + 1).unwrap();
        let inner = outer.interior_ball().unwrap();
        prop_assert_eq!(inner, CanonicalBall::of_ball(&g, s).unwrap());
    }

    #[test]
    fn strong_counts_are_at_most_plain_counts(guest in rooted_graph(4), host in rooted_graph(7)) {
        let plain = count_embeddings(&guest, host.graph(), None, false).unwrap();
        let strong = count_embeddings(&guest, host.graph(), None, true).unwrap();
        prop_assert!(strong <= plain);
    }

    #[test]
    fn pinned_counts_sum_to_the_total(guest in rooted_graph(4), host in rooted_graph(7), strong in any::<bool>()) {
        let total = count_embeddings(&guest, host.graph(), None, strong).unwrap();
        let sum: BigUint = (0..host.vertex_count())
            .map(|h| count_embeddings(&guest, host.graph(), Some(h), strong).unwrap())
            .sum();
        prop_assert_eq!(total, sum);
    }

    #[test]
    fn random_members_pass_the_degree_check(d in 2usize..6, n in 1usize..20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_degree_bounded_member(d, n, &mut rng);
        prop_assert!(g.graph().max_degree() < d);
        let spec = ClassSpec::degree_bounded(d).unwrap();
        prop_assert!(spec.member_check(&g).unwrap().accepted);
    }

    #[test]
    fn extensions_grow_their_ball(
        g in rooted_graph(7).prop_filter("subcubic", |g| g.graph().max_degree() <= 3),
        r in 0usize..2,
    ) {
        let spec = ClassSpec::degree_bounded(4).unwrap();
        let ball = CanonicalBall::of_ball(&g, r).unwrap();
        let ext = spec.extensions(&ball, &EnumLimits::default());
        prop_assert!(!ext.truncated);
        let own = CanonicalBall::of_ball(&g, r + 1).unwrap();
        prop_assert!(ext.balls.contains(&own));
        for child in &ext.balls {
            prop_assert_eq!(child.interior_ball(), Some(ball.clone()));
            prop_assert!(spec.accepts_ball(child));
        }
    }
}

fn check_well_formed(t: &BallTree) -> Result<(), TestCaseError> {
    prop_assert_eq!(&t.node(0).ball, &CanonicalBall::origin());
    for (id, node) in t.nodes().iter().enumerate() {
        prop_assert_eq!(t.find(&node.ball), Some(id));
        match node.parent {
            None => prop_assert_eq!(id, 0),
            Some(p) => {
                prop_assert!(t.node(p).children.contains(&id));
                prop_assert_eq!(node.ball.interior_ball(), Some(t.node(p).ball.clone()));
            }
        }
    }
    let back = BallTree::from_json(&t.to_json()).unwrap();
    prop_assert_eq!(back.to_json(), t.to_json());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn trees_are_well_formed(d in 2usize..5, depth in 0usize..3) {
        let depth = if d == 4 { depth.min(2) } else { depth + 1 };
        let spec = ClassSpec::degree_bounded(d).unwrap();
        let t = build_tree(&spec, depth, &BuildLimits::default(), None);
        prop_assert!(!t.is_truncated());
        check_well_formed(&t)?;
    }

    #[test]
    fn node_budget_is_respected(budget in 1usize..40) {
        let spec = ClassSpec::degree_bounded(4).unwrap();
        let limits = BuildLimits { max_nodes: Some(budget), ..BuildLimits::default() };
        let t = build_tree(&spec, 2, &limits, None);
        prop_assert!(t.len() <= budget);
        prop_assert!(t.is_truncated());
        check_well_formed(&t)?;
    }
}
