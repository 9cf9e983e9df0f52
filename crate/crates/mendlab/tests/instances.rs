use mendlab::instances::{self, InstanceKind, InstanceSpec};
use mendlab::lcl;
use mendlab::pointer;
use mendlab::problems;
use mendlab::Port;
use proptest::prelude::*;

#[test]
fn torus_is_a_valid_grid_instance() {
    let g = instances::generate(&InstanceSpec::torus(4, 4)).unwrap();
    assert_eq!(g.n(), 16);
    for v in 0..16 {
        assert_eq!(g.degree(v), 4);
        assert!(pointer::check_grid_constraints(&g, v).is_empty());
    }
}

#[test]
fn single_node_path() {
    let g = instances::generate(&InstanceSpec::path(1)).unwrap();
    assert_eq!((g.n(), g.edge_count()), (1, 0));
}

#[test]
fn complete_binary_tree_shape() {
    let g = instances::generate(&InstanceSpec::binary_tree(3)).unwrap();
    assert_eq!(g.n(), 15);
    let root = g.root().unwrap();
    assert_eq!(g.degree(root), 2);
    assert_eq!((0..15).filter(|&v| g.degree(v) == 1).count(), 8);
    assert!(g.is_tree());
    for v in 0..15 {
        for c in g.children(v) {
            assert_eq!(g.parent(c), Some(v));
        }
    }
}

#[test]
fn kind_names_parse() {
    assert_eq!("complete-binary-tree".parse::<InstanceKind>().unwrap(), "complete_binary_tree".parse().unwrap());
    assert!("hexagon".parse::<InstanceKind>().is_err());
}

#[test]
fn grid_ports_are_aligned() {
    let g = instances::grid(3, 2).unwrap();
    let corner = instances::grid_id(3, 0, 0);
    assert_eq!(g.follow(corner, Port::Right), Some(instances::grid_id(3, 1, 0)));
    assert_eq!(g.degree(corner), 2);
    for v in 0..g.n() {
        for a in g.adj(v) {
            let back = g.port_towards(a.to, v).unwrap();
            assert_eq!(Some(back), a.port.unwrap().opposite());
        }
    }
}

#[test]
fn ab123_hard_instance() {
    let p = problems::make("ab123").unwrap();
    let (g, lab) = instances::lower_bound_instance("ab123", 9).unwrap();
    assert_eq!(g.n(), 9);
    let names: Vec<String> = p.decode(&lab).into_iter().map(|l| l.unwrap_or_else(|| "_".into())).collect();
    assert_eq!(names.join(""), "ABAB_ABAB");
    assert!(lcl::is_accepted(&p, &g, &lab).unwrap());
}

#[test]
fn pointer_hard_instance() {
    let (g, lab) = instances::lower_bound_instance("pointer_lcl", 36).unwrap();
    assert_eq!(g.n(), 36);
    let p = pointer::problem();
    assert_eq!(lab.holes(), vec![pointer::torus_node(6, 3, 3)]);
    for x in 4..=6 {
        assert_eq!(lab.get(pointer::torus_node(6, x, 3)), Some(pointer::LEFT));
    }
    let zeros = (0..36).filter(|&v| lab.get(v) == Some(pointer::ZERO)).count();
    assert_eq!(zeros, 32);
    assert!(lcl::is_accepted(&p, &g, &lab).unwrap());
}

#[test]
fn tree_hard_instances_are_accepted() {
    for (id, n) in [("binary3col_rigid_v1", 4), ("binary3col_rigid_v2", 4), ("overlap_cycles", 1)] {
        let p = problems::make(id).unwrap();
        let (g, lab) = instances::lower_bound_instance(id, n).unwrap();
        assert!(g.is_tree(), "{id}");
        assert_eq!(lab.holes().len(), 1, "{id}");
        assert!(lcl::is_accepted(&p, &g, &lab).unwrap(), "{id}");
    }
    assert!(instances::lower_bound_instance("coloring:3", 5).is_err());
}

proptest! {
    #[test]
    fn random_trees_are_trees(n in 1usize..300, seed in any::<u64>()) {
        let t = instances::random_tree(n, seed).unwrap();
        prop_assert_eq!(t.n(), n);
        prop_assert!(t.is_tree());
        prop_assert_eq!(instances::random_tree(n, seed).unwrap(), t);
    }

    #[test]
    fn torus_is_four_regular(w in 3usize..9, h in 3usize..9) {
        let g = instances::torus(w, h).unwrap();
        prop_assert_eq!(g.edge_count(), 2 * w * h);
        for v in 0..g.n() {
            prop_assert!(pointer::satisfies_grid(&g, v));
        }
    }

    #[test]
    fn permutation_is_a_bijection(n in 0usize..200, seed in any::<u64>()) {
        let mut p = instances::random_permutation(n, seed);
        p.sort_unstable();
        prop_assert_eq!(p, (0..n).collect::<Vec<_>>());
    }
}
