use mendlab::graph::Adj;
use mendlab::instances;
use mendlab::lcl;
use mendlab::mender;
use mendlab::pointer::{self, PointerCase, FLAG, LEFT, RIGHT, UP, ZERO};
use mendlab::{Graph, Label, NodeId, PartialLabeling, Port};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn constraints_at(g: &Graph, v: NodeId) -> Vec<String> {
    pointer::check_grid_constraints(g, v).into_iter().map(|x| x.constraint).collect()
}

/// Copy of `g` with `edit` applied to the raw adjacency lists.
fn edited(g: &Graph, edit: impl FnOnce(&mut Vec<Vec<Adj>>)) -> Graph {
    let mut adj: Vec<Vec<Adj>> = (0..g.n()).map(|v| g.adj(v).to_vec()).collect();
    edit(&mut adj);
    Graph::from_raw_adjacency(adj)
}

/// 4×4 torus where node 5 calls its Up edge Down and vice versa.
fn swapped_torus() -> (Graph, NodeId) {
    let v = instances::grid_id(4, 1, 1);
    let g = edited(&instances::torus(4, 4).unwrap(), |adj| {
        for a in &mut adj[v] {
            a.port = match a.port {
                Some(Port::Up) => Some(Port::Down),
                Some(Port::Down) => Some(Port::Up),
                p => p,
            };
        }
    });
    (g, v)
}

#[test]
fn structural_violations_are_named() {
    let t = instances::torus(4, 4).unwrap();
    assert!((0..16).all(|v| constraints_at(&t, v).is_empty()));

    let g = edited(&t, |adj| {
        adj[0].retain(|a| a.port != Some(Port::Right));
        adj[1].retain(|a| a.port != Some(Port::Left));
    });
    assert!(constraints_at(&g, 0).contains(&"1a".to_string()));
    assert!(constraints_at(&g, 1).contains(&"1a".to_string()));

    let (g, v) = swapped_torus();
    assert!(constraints_at(&g, v).contains(&"2a".to_string()));
    let below = instances::grid_id(4, 1, 0);
    assert!(constraints_at(&g, below).contains(&"2a".to_string()));
    assert!(!pointer::satisfies_grid(&g, v));
}

#[test]
fn zero_fill_on_clean_torus() {
    let g = instances::torus(5, 5).unwrap();
    let mut lam = PartialLabeling::complete(&[ZERO; 25]);
    lam.set(12, None);
    let (m, case) = pointer::mend_pointer_case(&g, &lam, 12, pointer::DEFAULT_C).unwrap();
    assert_eq!(case, PointerCase::Zero);
    assert_eq!(m.radius, 0);
    assert_eq!(m.apply(&lam).get(12), Some(ZERO));
}

#[test]
fn violation_at_hole_is_flagged() {
    let (g, v) = swapped_torus();
    let mut lam = PartialLabeling::complete(&[ZERO; 16]);
    for u in 0..16 {
        if !pointer::satisfies_grid(&g, u) {
            lam.set(u, Some(FLAG));
        }
    }
    lam.set(v, None);
    let p = pointer::problem();
    assert!(lcl::is_accepted(&p, &g, &lam).unwrap());
    let (m, case) = pointer::mend_pointer_case(&g, &lam, v, pointer::DEFAULT_C).unwrap();
    assert_eq!(case, PointerCase::Flag);
    assert_eq!(m.apply(&lam).get(v), Some(FLAG));
}

#[test]
fn hard_instance_closes_a_cycle() {
    let p = pointer::problem();
    let (g, lam) = pointer::lower_bound_instance(36).unwrap();
    let v = pointer::torus_node(6, 3, 3);
    let (m, case) = pointer::mend_pointer_case(&g, &lam, v, pointer::DEFAULT_C).unwrap();
    assert_eq!(case, PointerCase::Cycle);
    assert!(m.radius <= 6);
    let mu = m.apply(&lam);
    assert!(mu.is_complete());
    assert!(lcl::is_mend(&p, &g, &lam, &mu, v, 6).unwrap());
    assert!(pointer::lower_bound_instance(35).is_err());
}

#[test]
fn row_wrap_cycles_on_aligned_torus() {
    for k in [3usize, 4, 6] {
        let g = instances::torus(k, k).unwrap();
        let u = instances::grid_id(k, 1, 2);
        let cycle = pointer::find_up_right_cycle(&g, u, k).unwrap().unwrap();
        assert_eq!(cycle.len(), k);
        assert_closed_walk(&g, u, &cycle);
        assert_eq!(pointer::find_up_right_cycle(&g, u, k - 1).unwrap(), None);
    }
}

fn assert_closed_walk(g: &Graph, u: NodeId, cycle: &[(NodeId, Port)]) {
    assert_eq!(cycle[0].0, u);
    for (i, &(x, p)) in cycle.iter().enumerate() {
        assert_ne!(p, Port::Down);
        let next = if i + 1 < cycle.len() { cycle[i + 1].0 } else { u };
        assert_eq!(g.follow(x, p), Some(next));
    }
}

/// `width × height` torus whose vertical wrap shifts right by `shift`.
fn sheared_torus(width: usize, height: usize, shift: usize) -> Graph {
    let mut g = Graph::new(width * height);
    let id = |x: usize, y: usize| instances::grid_id(width, x % width, y);
    for y in 0..height {
        for x in 0..width {
            g.add_edge_ports(id(x, y), id(x + 1, y), Some(Port::Right), Some(Port::Left)).unwrap();
            let up = if y + 1 < height { id(x, y + 1) } else { id(x + shift, 0) };
            g.add_edge_ports(id(x, y), up, Some(Port::Up), Some(Port::Down)).unwrap();
        }
    }
    g
}

#[test]
fn sheared_torus_cycle_goes_up_then_left() {
    let g = sheared_torus(7, 3, 2);
    assert!((0..g.n()).all(|v| pointer::satisfies_grid(&g, v)));
    let u = 0;
    // three Ups shift by 2 columns, two Lefts come back; rows alone need 7
    let cycle = pointer::find_up_right_cycle(&g, u, 5).unwrap().unwrap();
    assert_eq!(cycle.len(), 5);
    assert_closed_walk(&g, u, &cycle);
    let moves: Vec<Port> = cycle.iter().map(|&(_, p)| p).collect();
    assert_eq!(moves.iter().filter(|&&p| p == Port::Up).count(), 3);
    assert_eq!(moves.iter().filter(|&&p| p == Port::Left).count(), 2);
    assert_eq!(pointer::find_up_right_cycle(&g, u, 4).unwrap(), None);
}

#[test]
fn cycle_search_reports_broken_grid() {
    let (g, v) = swapped_torus();
    assert!(pointer::find_up_right_cycle(&g, v, 4).is_err());
}

#[test]
fn budget_radius_rounds_up() {
    assert_eq!(pointer::budget_radius(36, 2.0), 12);
    assert_eq!(pointer::budget_radius(10, 1.0), 4);
}

/// Direct reading of the pointer rules for a complete labeling: Flag only
/// at grid violations, nothing points into a Zero node, no two nodes point
/// at each other, Left and Right never point at each other's opposite, and
/// every pointer has a target.
fn oracle_valid(g: &Graph, labels: &[Label]) -> bool {
    let target = |u: NodeId| -> Option<Option<NodeId>> {
        let port = match labels[u] {
            LEFT => Port::Left,
            UP => Port::Up,
            RIGHT => Port::Right,
            _ => return None,
        };
        Some(g.follow(u, port))
    };
    (0..g.n()).all(|u| match labels[u] {
        FLAG => !pointer::satisfies_grid(g, u),
        ZERO => true,
        lu => match target(u).unwrap() {
            None => false,
            Some(w) => {
                let lw = labels[w];
                let opposite = matches!((lu, lw), (LEFT, RIGHT) | (RIGHT, LEFT));
                lw != ZERO && !opposite && target(w) != Some(Some(u))
            }
        },
    })
}

fn torus_labels() -> impl Strategy<Value = Vec<Label>> {
    // Zero-heavy so that valid labelings show up often
    prop::collection::vec(prop_oneof![4 => Just(ZERO), 1 => Just(FLAG), 2 => Just(LEFT), 2 => Just(UP), 2 => Just(RIGHT)], 9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn verifier_matches_rules(labels in torus_labels()) {
        let p = pointer::problem();
        let g = instances::torus(3, 3).unwrap();
        let lam = PartialLabeling::complete(&labels);
        prop_assert_eq!(lcl::is_accepted(&p, &g, &lam).unwrap(), oracle_valid(&g, &labels));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mends_are_sound(seed in any::<u64>(), k in 3usize..7, sheared in any::<bool>()) {
        let p = pointer::problem();
        let g = if sheared { sheared_torus(k + 2, k, 2) } else { instances::torus(k, k).unwrap() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = mender::sample_accepted(&p, &g, 0.25, &mut rng);
        let budget = pointer::budget_radius(g.n(), pointer::DEFAULT_C);
        for v in lam.holes() {
            let m = pointer::mend_pointer(&g, &lam, v, pointer::DEFAULT_C).unwrap();
            prop_assert!(m.radius <= budget);
            prop_assert!(lcl::is_mend(&p, &g, &lam, &m.apply(&lam), v, budget).unwrap());
        }
    }
}
