mod common;

use dispersion_core::rat::{int, rat};
use dispersion_core::solver::{brute_force_dispersion, brute_force_dispersion_with_limit};
use dispersion_core::translate::*;
use dispersion_core::{Graph, Point, PointSet, Rat, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn up_delta(d: &Rat) -> Rat {
    d / (d + int(1))
}

#[test]
fn single_edge_up_and_back() {
    let g = common::path(1);
    let s = PointSet::new(vec![Point::midpoint(0, 1)], int(3));
    let (up, cert) = translate_up(&g, &s).unwrap();
    assert_eq!(up.delta, rat(3, 4));
    assert_eq!(up.points, vec![Point::on_edge(0, 1, rat(1, 8)), Point::on_edge(0, 1, rat(7, 8))]);
    assert_eq!(cert.output_size, 2);
    let (down, _) = translate_down(&g, &up).unwrap();
    assert_eq!(down.delta, int(3));
    assert_eq!(down.len(), 1);
}

#[test]
fn path_and_triangle_examples() {
    let p = common::path(2);
    let s = PointSet::new(vec![Point::Vertex(0), Point::Vertex(2)], int(2));
    let (up, _) = translate_up(&p, &s).unwrap();
    assert_eq!((up.len(), up.delta.clone()), (4, rat(2, 3)));
    assert!(Space::new(&p).validate_auto_dispersed(&up.points, &up.delta).is_ok());

    let k3 = common::cycle(3);
    let s = PointSet::new(vec![Point::midpoint(0, 1)], int(3));
    let (up, _) = translate_up(&k3, &s).unwrap();
    assert_eq!(up.len(), 4);
}

#[test]
fn down_needs_every_edge_covered() {
    let g = common::path(2);
    let s = PointSet::new(vec![Point::on_edge(0, 1, rat(1, 2))], rat(3, 5));
    assert!(matches!(translate_down(&g, &s), Err(TranslateError::UncoveredEdge { .. })));
    let k2 = common::path(1);
    let (down, _) = translate_down(&k2, &PointSet::new(vec![Point::Vertex(0)], rat(3, 4))).unwrap();
    assert!(down.is_empty());
    let (up, _) = translate_up(&k2, &PointSet::new(vec![Point::Vertex(0)], int(3))).unwrap();
    assert_eq!(up.points, vec![Point::Vertex(0), Point::on_edge(0, 1, rat(3, 4))]);
}

#[test]
fn descend_counts() {
    assert_eq!(delta_descend_count(&rat(4, 5), 6), Descent { delta: rat(4, 5), steps: 0, extra: 0 });
    assert_eq!(delta_descend_count(&rat(3, 4), 3), Descent { delta: int(3), steps: 1, extra: 3 });
    assert_eq!(delta_descend_count(&rat(1, 3), 2), Descent { delta: int(1), steps: 2, extra: 4 });
}

#[test]
fn identity_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
        let g = common::random_connected(&mut rng, n, m);
        let d = common::random_delta(&mut rng, 4, 5, Some(3));
        let lo = brute_force_dispersion_with_limit(&g, &d, 1000).unwrap().0;
        let hi = brute_force_dispersion_with_limit(&g, &up_delta(&d), 1000).unwrap().0;
        assert_eq!(lo, hi - g.m(), "graph {:?} at {d}", g.edges());
    }
}

#[test]
fn triangle_above_three_breaks_identity() {
    let k3 = common::cycle(3);
    let d = rat(31, 10);
    let lo = brute_force_dispersion_with_limit(&k3, &d, 1000).unwrap().0;
    let hi = brute_force_dispersion_with_limit(&k3, &up_delta(&d), 1000).unwrap().0;
    assert_eq!((lo, hi), (1, 3));
    assert_ne!(lo + 3, hi);
}

#[test]
fn round_trips_preserve_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 20 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
        let g = common::random_connected(&mut rng, n, m);
        let d = common::random_delta(&mut rng, 3, 3, Some(3));
        let Ok((k, s)) = brute_force_dispersion(&g, &d) else { continue };
        let sp = Space::new(&g);
        let (up, cert) = translate_up(&g, &s).unwrap();
        assert_eq!(up.len(), k + g.m());
        assert!(sp.validate_auto_dispersed(&up.points, &up.delta).is_ok());
        assert!(cert.edges.iter().all(|e| e.after == e.before + 1 || e.before == 0));
        let (down, _) = translate_down(&g, &up).unwrap();
        assert_eq!(down.len(), k);
        assert_eq!(down.delta, d);
        assert!(sp.is_dispersed(&down.points, &d));
        done += 1;
    }
}

#[test]
fn up_rejects_a_non_dispersed_input() {
    let g: Graph = common::path(1);
    let s = PointSet::new(vec![Point::Vertex(0), Point::Vertex(1)], int(2));
    assert!(matches!(translate_up(&g, &s), Err(TranslateError::InputNotAutoDispersed(_))));
}
