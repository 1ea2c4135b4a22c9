mod common;

use dispersion_core::rat::{rat, zero};
use dispersion_core::{Point, Space};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_a_metric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
        let g = common::random_connected(&mut rng, n, m);
        let sp = Space::new(&g);
        let grid = sp.grid_points(rng.gen_range(1..=4));
        for _ in 0..60 {
            let p = grid.choose(&mut rng).unwrap();
            let q = grid.choose(&mut rng).unwrap();
            let r = grid.choose(&mut rng).unwrap();
            let pq = sp.distance(p, q);
            prop_assert_eq!(&pq, &sp.distance(q, p));
            prop_assert_eq!(pq == zero(), p == q);
            prop_assert!(pq <= sp.distance(p, r) + sp.distance(r, q));
        }
    }

    #[test]
    fn edge_points_have_one_form(u in 0usize..6, v in 0usize..6, num in 1i64..50) {
        prop_assume!(u != v);
        let l = rat(num, 50);
        prop_assert_eq!(Point::on_edge(u, v, l.clone()), Point::on_edge(v, u, rat(1, 1) - l));
    }
}

#[test]
fn vertex_positions_collapse() {
    assert_eq!(Point::on_edge(2, 5, rat(0, 1)), Point::Vertex(2));
    assert_eq!(Point::on_edge(2, 5, rat(1, 1)), Point::Vertex(5));
}
