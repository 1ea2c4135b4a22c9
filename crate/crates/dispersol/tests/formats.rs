use dispersion_core::rat::rat;
use dispersion_core::{Point, Space};
use dispersol::formats::{emit_graph, emit_points, emit_td, parse_graph, parse_points, parse_td};
use dispersol::random;
use dispersion_core::td::TreeDecomposition;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn files_round_trip(seed in any::<u64>(), b in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::small_graph(&mut rng, 1, 8, 14);
        let text = emit_graph(g.n(), g.edges());
        prop_assert_eq!(&parse_graph(&text).unwrap(), &g);

        let mut pts = Space::new(&g).grid_points(b);
        pts.shuffle(&mut rng);
        pts.truncate(6);
        pts.sort();
        let d = rat(b as i64 + 1, b as i64);
        let ptext = emit_points(&pts, Some(&d));
        let back = parse_points(&ptext, &g).unwrap();
        prop_assert_eq!(&back.points, &pts);
        prop_assert_eq!(back.delta, Some(d.clone()));
        prop_assert_eq!(emit_points(&back.points, Some(&d)), ptext);

        let td = TreeDecomposition::min_fill(&g);
        prop_assert_eq!(parse_td(&emit_td(&td, g.n())).unwrap(), td);
    }
}

#[test]
fn interior_points_keep_lowest_terms() {
    let g = parse_graph("2 1\n0 1\n").unwrap();
    let p = parse_points("E 0 1 2 4\n", &g).unwrap();
    assert_eq!(p.points, vec![Point::on_edge(0, 1, rat(1, 2))]);
}
