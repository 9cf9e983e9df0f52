use mendlab::instances;
use mendlab::lcl;
use mendlab::local_sim::{self, NetworkDecomposition};
use mendlab::mender;
use mendlab::problems;
use mendlab::{Error, Graph, PartialLabeling};
use proptest::prelude::*;

/// Checks that nodes within distance k never share a color.
fn is_distance_coloring(g: &Graph, k: usize, colors: &[usize]) -> bool {
    (0..g.n()).all(|v| g.ball(v, k).into_iter().all(|u| u == v || colors[u] != colors[v]))
}

#[test]
fn path_coloring_uses_three_colors() {
    let g = instances::path(5).unwrap();
    let (colors, _) = local_sim::distance_coloring(&g, 1).unwrap();
    assert!(is_distance_coloring(&g, 1, &colors));
    assert!(colors.iter().all(|&c| (1..=3).contains(&c)));
}

#[test]
fn single_node_needs_no_rounds() {
    let g = Graph::new(1);
    let (colors, log) = local_sim::distance_coloring(&g, 3).unwrap();
    assert_eq!((colors, log.rounds), (vec![1], 0));
    let nd = local_sim::network_decomposition(&g, 1).unwrap();
    assert_eq!((nd.c, nd.d), (1, 0));
}

#[test]
fn torus_distance_two_coloring() {
    let g = instances::torus(6, 6).unwrap();
    let (colors, _) = local_sim::distance_coloring(&g, 2).unwrap();
    assert!(is_distance_coloring(&g, 2, &colors));
    assert!(colors.iter().all(|&c| c <= 17));
    assert!(local_sim::distance_coloring(&g, 0).is_err());
}

#[test]
fn long_path_decomposition() {
    let g = instances::path(64).unwrap();
    let nd = local_sim::network_decomposition(&g, 1).unwrap();
    assert!(local_sim::validate_decomposition(&g, &nd));
    assert!(nd.c <= 2, "c = {}", nd.c);
    assert!(nd.d <= 2 * 6, "d = {}", nd.d);
}

#[test]
fn corrupted_decomposition_is_rejected() {
    let g = instances::path(6).unwrap();
    let nd = NetworkDecomposition { power: 1, color_of: vec![1; 6], c: 1, d: 0 };
    assert!(!local_sim::validate_decomposition(&g, &nd));
}

#[test]
fn solve_path_through_decomposition() {
    let p = problems::make("coloring:3").unwrap();
    let g = instances::path(9).unwrap();
    let nd = local_sim::network_decomposition(&g, 3).unwrap();
    let (lab, log) = local_sim::solve_by_decomposition(&p, &g, &nd, 1, None).unwrap();
    assert!(lab.is_complete() && lcl::is_accepted(&p, &g, &lab).unwrap());
    assert!(log.phases <= nd.c);
}

#[test]
fn greedy_five_coloring_by_color_classes() {
    let p = problems::make("grid5").unwrap();
    let g = instances::grid(5, 5).unwrap();
    let nd = local_sim::network_decomposition(&g, 1).unwrap();
    let (lab, _) = local_sim::solve_by_decomposition(&p, &g, &nd, 0, None).unwrap();
    assert!(lab.is_complete() && lcl::is_accepted(&p, &g, &lab).unwrap());
}

#[test]
fn complete_input_comes_back_unchanged() {
    let p = problems::make("coloring:3").unwrap();
    let g = instances::cycle(9).unwrap();
    let sol = mender::global_solution(&p, &g).unwrap().unwrap();
    let nd = local_sim::network_decomposition(&g, 3).unwrap();
    let (lab, log) = local_sim::solve_by_decomposition(&p, &g, &nd, 1, Some(&sol)).unwrap();
    assert_eq!(lab, sol);
    assert!(log.events.iter().all(|e| e.nodes_touched.is_empty()));
}

#[test]
fn constant_mendable_solver_examples() {
    for (id, g, k) in [
        ("orientation134", instances::grid(8, 8).unwrap(), 2),
        ("grid4", instances::grid(6, 6).unwrap(), 3),
        ("coloring:3", instances::path(3).unwrap(), 1),
    ] {
        let p = problems::make(id).unwrap();
        let (lab, _) = local_sim::solve_constant_mendable(&p, &g, k).unwrap();
        assert!(lab.is_complete() && lcl::is_accepted(&p, &g, &lab).unwrap(), "{id}");
    }
}

#[test]
fn too_small_k_is_reported() {
    // 2-coloring an odd cycle has no solution at all
    let p = problems::make("coloring:2").unwrap();
    let g = instances::cycle(5).unwrap();
    assert!(matches!(
        local_sim::solve_constant_mendable(&p, &g, 1),
        Err(Error::MendabilityViolated { .. } | Error::Unsolvable)
    ));
    let short = PartialLabeling::all_bottom(2);
    let path = instances::path(3).unwrap();
    let nd = local_sim::network_decomposition(&path, 1).unwrap();
    assert!(local_sim::solve_by_decomposition(&p, &path, &nd, 0, Some(&short)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decompositions_validate(n in 1usize..80, seed in any::<u64>(), power in 1usize..4) {
        let g = instances::random_tree(n, seed).unwrap();
        let nd = local_sim::network_decomposition(&g, power).unwrap();
        prop_assert!(local_sim::validate_decomposition(&g, &nd));
        prop_assert!(nd.color_of.iter().all(|&c| (1..=nd.c).contains(&c)));
    }

    #[test]
    fn distance_colorings_are_proper(n in 1usize..60, seed in any::<u64>(), k in 1usize..4) {
        let g = instances::random_tree(n, seed).unwrap();
        let (colors, _) = local_sim::distance_coloring(&g, k).unwrap();
        prop_assert!(is_distance_coloring(&g, k, &colors));
        let delta = g.max_degree().max(1);
        prop_assert!(colors.iter().all(|&c| c <= delta.pow(k as u32) + 1));
    }

    #[test]
    fn solver_output_is_accepted(n in 3usize..40, seed in any::<u64>(), closed in any::<bool>()) {
        let p = problems::make("coloring:3").unwrap();
        let base = if closed { instances::cycle(n) } else { instances::path(n) }.unwrap();
        let g = base.permuted(&instances::random_permutation(n, seed)).unwrap();
        let (lab, log) = local_sim::solve_constant_mendable(&p, &g, 1).unwrap();
        prop_assert!(lab.is_complete() && lcl::is_accepted(&p, &g, &lab).unwrap());
        prop_assert!(log.phases <= g.max_degree().pow(3) + 1);
    }
}
