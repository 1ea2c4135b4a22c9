mod common;

use dispersion_core::rat::{int, rat};
use dispersion_core::solver::{solve_max_dispersion, Method, SolveOptions};
use dispersion_core::Rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn subdividing_scales_the_optimum_delta() {
    let opts = SolveOptions { method: Method::Dp, ..SolveOptions::default() };
    let ds = [rat(1, 2), rat(2, 3), int(1), rat(4, 3), rat(3, 2), int(2), rat(5, 2), int(3), rat(7, 2)];
    let mut graphs = 0;
    for n in 1..=5 {
        for g in common::connected_up_to_iso(n) {
            graphs += 1;
            for d in &ds {
                let base = solve_max_dispersion(&g, d, &opts).unwrap_or_else(|e| panic!("{:?} {d}: {e}", g.edges())).optimum;
                for c in [2usize, 3] {
                    let sub = g.subdivide(c);
                    let cd: Rat = d * int(c as i64);
                    let got = solve_max_dispersion(&sub.graph, &cd, &opts).unwrap().optimum;
                    assert_eq!(got, base, "graph {:?}, c={c}, delta={d}", g.edges());
                }
            }
        }
    }
    assert_eq!(graphs, 1 + 1 + 2 + 6 + 21);
}

#[test]
fn subdivision_scales_distances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let n: usize = rng.gen_range(1..=8);
        let m = rng.gen_range(n.saturating_sub(1)..=n * (n.max(1) - 1) / 2);
        let g = common::random_connected(&mut rng, n, m);
        let c = rng.gen_range(1..=3);
        let sub = g.subdivide(c);
        assert_eq!(sub.graph.n(), n + (c - 1) * g.m());
        let (a, b) = (g.all_pairs_distances(), sub.graph.all_pairs_distances());
        for x in 0..n {
            for y in 0..n {
                assert_eq!(b.get(x, y), c * a.get(x, y));
            }
        }
    }
}
