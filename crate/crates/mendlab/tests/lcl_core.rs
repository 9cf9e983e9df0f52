use mendlab::instances;
use mendlab::io;
use mendlab::lcl::{self, Verdict};
use mendlab::problems;
use mendlab::{Error, Graph, Mend, PartialLabeling, Port};
use proptest::prelude::*;

fn path4() -> Graph {
    instances::path(4).unwrap()
}

fn coloring(labels: &[Option<&str>]) -> PartialLabeling {
    problems::make("coloring:3").unwrap().encode_strs(labels).unwrap()
}

#[test]
fn all_bottom_is_happy_everywhere() {
    let p = problems::make("coloring:3").unwrap();
    let g = path4();
    let lab = PartialLabeling::all_bottom(4);
    for v in 0..4 {
        assert_eq!(lcl::relaxed_verify(&p, &g, &lab, v).unwrap(), Verdict::Happy);
    }
}

#[test]
fn conflict_next_to_holes_is_happy() {
    let p = problems::make("coloring:3").unwrap();
    let lab = coloring(&[None, Some("1"), Some("1"), None]);
    for v in 0..4 {
        assert_eq!(lcl::relaxed_verify(&p, &path4(), &lab, v).unwrap(), Verdict::Happy);
    }
}

#[test]
fn improper_complete_coloring_is_unhappy() {
    let p = problems::make("coloring:3").unwrap();
    let lab = coloring(&[Some("2"), Some("1"), Some("1"), Some("3")]);
    assert_eq!(lcl::relaxed_verify(&p, &path4(), &lab, 2).unwrap(), Verdict::Unhappy);
    let acc = lcl::accepts(&p, &path4(), &lab).unwrap();
    assert_eq!(acc.unhappy_nodes, vec![1, 2]);
}

#[test]
fn proper_coloring_is_accepted() {
    let p = problems::make("coloring:3").unwrap();
    let lab = coloring(&[Some("1"), Some("2"), Some("1"), Some("3")]);
    assert!(lcl::is_accepted(&p, &path4(), &lab).unwrap());
}

#[test]
fn all_bottom_accepted_for_every_catalog_problem() {
    let g = instances::torus(4, 4).unwrap();
    for id in problems::CATALOG {
        let p = problems::make(id).unwrap();
        assert!(lcl::is_accepted(&p, &g, &PartialLabeling::all_bottom(g.n())).unwrap(), "{id}");
    }
}

#[test]
fn ab123_mixed_path_rejected_at_the_junction() {
    let p = problems::make("ab123").unwrap();
    let g = instances::path(5).unwrap();
    let lab = p.encode_strs(&[Some("A"), Some("B"), Some("A"), Some("1"), Some("2")]).unwrap();
    let acc = lcl::accepts(&p, &g, &lab).unwrap();
    assert!(!acc.accepted);
    assert!(acc.unhappy_nodes.contains(&3));
}

#[test]
fn mend_conditions() {
    let p = problems::make("coloring:3").unwrap();
    let g = path4();
    let lam0 = coloring(&[None, Some("1"), Some("1"), None]);
    let lam1 = coloring(&[Some("2"), Some("3"), Some("1"), None]);
    let lam2 = coloring(&[Some("2"), Some("3"), Some("1"), Some("2")]);
    assert!(lcl::is_mend(&p, &g, &lam0, &lam1, 0, 1).unwrap());
    assert!(!lcl::is_mend(&p, &g, &lam0, &lam1, 0, 0).unwrap());
    assert!(lcl::is_mend(&p, &g, &lam1, &lam2, 3, 0).unwrap());
    assert!(!lcl::is_mend(&p, &g, &lam0, &lam2, 3, 0).unwrap());
    // leaving the hole empty is not a mend
    assert!(!lcl::is_mend(&p, &g, &lam0, &lam0, 0, 3).unwrap());
    // introducing a new hole is not a mend
    let extra = coloring(&[Some("2"), None, Some("1"), None]);
    assert!(!lcl::is_mend(&p, &g, &lam0, &extra, 0, 3).unwrap());
}

#[test]
fn is_mend_rejects_unaccepted_base() {
    let p = problems::make("coloring:3").unwrap();
    let bad = coloring(&[Some("2"), Some("1"), Some("1"), Some("3")]);
    assert!(matches!(lcl::is_mend(&p, &path4(), &bad, &bad, 0, 1), Err(Error::Precondition(_))));
}

#[test]
fn mend_from_diff_records_radius() {
    let g = path4();
    let lam = coloring(&[None, Some("1"), Some("1"), None]);
    let mu = coloring(&[Some("2"), Some("3"), Some("1"), None]);
    let m = Mend::from_diff(&g, &lam, &mu, 0);
    assert_eq!(m.radius, 1);
    assert_eq!(m.changes.len(), 2);
    assert_eq!(m.apply(&lam), mu);
}

#[test]
fn labeling_validation() {
    let p = problems::make("coloring:3").unwrap();
    let short = PartialLabeling::all_bottom(3);
    assert!(matches!(lcl::accepts(&p, &path4(), &short), Err(Error::InvalidLabeling(_))));
    assert!(p.encode_strs(&[Some("7"), None, None, None]).is_err());
}

#[test]
fn graph_rejects_loops_and_parallel_edges() {
    let mut g = Graph::new(3);
    assert!(g.add_edge(0, 0).is_err());
    g.add_edge(0, 1).unwrap();
    assert!(g.add_edge(1, 0).is_err());
    assert!(g.add_edge(0, 5).is_err());
    assert!(g.add_edge_ports(1, 2, Some(Port::Up), None).is_ok());
    assert!(g.add_edge_ports(1, 0, Some(Port::Up), None).is_err());
}

#[test]
fn json_roundtrip_examples() {
    let p = problems::make("coloring:3").unwrap();
    let g = instances::path(3).unwrap();
    let lab = coloring(&[Some("1"), None, Some("2")]);
    let (g2, lab2) = io::read_labeled(&p, &io::write_labeled(&p, &g, &lab)).unwrap();
    assert_eq!((g2, lab2), (g.canonical(), lab));

    let t = instances::torus(4, 4).unwrap();
    let back = io::from_json(&io::to_json(&t, None)).unwrap();
    for v in 0..t.n() {
        for port in Port::GRID {
            assert_eq!(back.graph.follow(v, port), t.follow(v, port));
        }
    }
    assert!(back.labels.iter().all(Option::is_none));
}

#[test]
fn json_errors() {
    assert!(matches!(io::from_json("{"), Err(Error::Parse { .. })));
    let loop_edge = r#"{"schema":1,"nodes":[{"id":0,"ports":{}}],"edges":[[0,0]]}"#;
    assert!(matches!(io::from_json(loop_edge), Err(Error::InvalidGraph(_))));
    let future = r#"{"schema":2,"nodes":[],"edges":[]}"#;
    assert!(io::from_json(future).is_err());
}

/// Independent check for proper colorings: a node is unhappy iff its
/// closed neighborhood is fully labeled and some neighbor repeats its color.
fn coloring_unhappy(g: &Graph, lab: &[Option<u16>]) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| {
            let Some(c) = lab[v] else { return false };
            let nbrs: Vec<_> = g.neighbors(v).map(|u| lab[u]).collect();
            nbrs.iter().all(Option::is_some) && nbrs.contains(&Some(c))
        })
        .collect()
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..10).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |pairs| {
            let mut g = Graph::new(n);
            for (a, b) in pairs {
                let _ = g.add_edge(a, b);
            }
            g
        })
    })
}

fn labeled_graph() -> impl Strategy<Value = (Graph, Vec<Option<u16>>)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(prop::option::weighted(0.8, 0u16..3), n))
    })
}

proptest! {
    #[test]
    fn relaxed_verifier_matches_coloring_oracle((g, labels) in labeled_graph()) {
        let p = problems::make("coloring:3").unwrap();
        let acc = lcl::accepts(&p, &g, &PartialLabeling::from_vec(labels.clone())).unwrap();
        prop_assert_eq!(acc.unhappy_nodes, coloring_unhappy(&g, &labels));
    }

    #[test]
    fn verdict_invariant_under_renumbering((g, labels) in labeled_graph(), seed in any::<u64>()) {
        let p = problems::make("coloring:3").unwrap();
        let perm = instances::random_permutation(g.n(), seed);
        let h = g.permuted(&perm).unwrap();
        let mut moved = vec![None; g.n()];
        for (v, &l) in labels.iter().enumerate() {
            moved[perm[v]] = l;
        }
        let lab = PartialLabeling::from_vec(labels);
        let moved = PartialLabeling::from_vec(moved);
        for v in 0..g.n() {
            prop_assert_eq!(
                lcl::relaxed_verify(&p, &g, &lab, v).unwrap(),
                lcl::relaxed_verify(&p, &h, &moved, perm[v]).unwrap()
            );
        }
    }

    #[test]
    fn blanking_never_breaks_acceptance((g, labels) in labeled_graph(), pick in any::<prop::sample::Index>()) {
        let p = problems::make("coloring:3").unwrap();
        let lab = mendlab::mender::blank_until_accepted(&p, &g, PartialLabeling::from_vec(labels));
        prop_assert!(lcl::is_accepted(&p, &g, &lab).unwrap());
        let mut more = lab.clone();
        more.set(pick.index(g.n()), None);
        prop_assert!(lcl::is_accepted(&p, &g, &more).unwrap());
    }

    #[test]
    fn adjacency_is_symmetric(g in graph_strategy()) {
        for v in 0..g.n() {
            for u in g.neighbors(v) {
                prop_assert!(g.has_edge(u, v));
                prop_assert_ne!(u, v);
            }
        }
    }

    #[test]
    fn json_roundtrip((g, labels) in labeled_graph()) {
        let p = problems::make("coloring:3").unwrap();
        let lab = PartialLabeling::from_vec(labels);
        let (g2, lab2) = io::read_labeled(&p, &io::write_labeled(&p, &g, &lab)).unwrap();
        prop_assert_eq!(g2, g.canonical());
        prop_assert_eq!(lab2, lab);
    }
}
