mod common;

use dispersion_core::gadgets::*;
use dispersion_core::rat::{int, rat};
use dispersion_core::solver::max_independent_set;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alpha(g: &dispersion_core::Graph) -> usize {
    max_independent_set(g.n(), g.edges()).len()
}

#[test]
fn independent_set_and_chordal_gadgets_preserve_alpha() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
        let g = common::random_connected(&mut rng, n, m);
        let a = alpha(&g);
        let is = gen_is_gadget(&g, &rat(5, 2)).unwrap();
        assert_eq!((is.n, is.edges.len()), (2 * n, n + 4 * g.m()));
        assert_eq!(common::solve_components(is.n, &is.edges, &is.delta), a, "IS gadget of {:?}", g.edges());
        let ch = gen_chordal_gadget(&g, &int(4)).unwrap();
        assert!(is_chordal(&ch.graph().unwrap()) || ch.components().iter().all(|(c, _)| is_chordal(c)));
        assert_eq!(common::solve_components(ch.n, &ch.edges, &ch.delta), a, "chordal gadget of {:?}", g.edges());
    }
}

#[test]
fn mcis_yes_instance() {
    let inst = McisInstance { n: 4, edges: vec![(0, 2), (0, 3), (1, 2)], classes: vec![vec![0, 1], vec![2, 3]] };
    assert_eq!(inst.solve(), Some(vec![1, 3]));
    let gd = gen_mcis_gadget(&inst).unwrap();
    assert_eq!((gd.delta.clone(), gd.k), (int(12), 4));
    assert!(is_forest_without(gd.n, &gd.edges, &mcis_feedback_set(&gd)));
    assert!(common::solve_components(gd.n, &gd.edges, &gd.delta) >= gd.k);
}

#[test]
fn mcis_no_instance() {
    let inst = McisInstance {
        n: 4,
        edges: vec![(0, 2), (0, 3), (1, 2), (1, 3)],
        classes: vec![vec![0, 1], vec![2, 3]],
    };
    assert_eq!(inst.solve(), None);
    let gd = gen_mcis_gadget(&inst).unwrap();
    assert!(common::solve_components(gd.n, &gd.edges, &gd.delta) < gd.k);
}

#[test]
fn four_variable_sat_pipeline() {
    let cnf = Cnf { vars: 4, clauses: vec![vec![1, 2, 2], vec![-1, -2, -2], vec![3, 3, 3], vec![4, 4, 4]] };
    assert!(cnf.brute_force().is_some());
    let (inst, assignments) = gen_sat_to_mcis(&cnf);
    assert_eq!(inst.classes.len(), 2);
    assert_eq!(assignments.len(), 3);
    assert!(inst.solve().is_some());
    let gd = gen_mcis_gadget(&inst).unwrap();
    assert_eq!(gd.k, 4);
    assert!(common::solve_components(gd.n, &gd.edges, &gd.delta) >= 4);
}

#[test]
fn unsatisfiable_formula_has_no_multicolored_set() {
    let cnf = Cnf { vars: 1, clauses: vec![vec![1], vec![-1]] };
    assert!(cnf.brute_force().is_none());
    let (inst, _) = gen_sat_to_mcis(&cnf);
    assert!(inst.solve().is_none());
}

#[test]
fn chordal_recognition() {
    assert!(!is_chordal(&common::cycle(4)));
    assert!(is_chordal(&common::cycle(3)));
    assert!(is_chordal(&common::path(5)));
}
