mod common;

use dispersion_core::rat::{int, rat};
use dispersion_core::solver::*;
use dispersion_core::td::{NiceTreeDecomposition, TreeDecomposition};
use dispersion_core::{Graph, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opt(g: &Graph, d: &dispersion_core::Rat) -> usize {
    solve_max_dispersion(g, d, &SolveOptions::default()).unwrap().optimum
}

fn dp_only() -> SolveOptions {
    SolveOptions { method: Method::Dp, ..SolveOptions::default() }
}

#[test]
fn six_edge_path() {
    let p6 = common::path(6);
    for d in [rat(15, 11), rat(3, 2)] {
        let r = solve_max_dispersion(&p6, &d, &dp_only()).unwrap();
        assert_eq!(r.optimum, 5);
        assert!(Space::new(&p6).is_dispersed(&r.witness.points, &d));
    }
}

#[test]
fn star_with_five_leaves() {
    let s = common::star(5);
    for d in [rat(11, 10), rat(3, 2), int(2)] {
        assert_eq!(opt(&s, &d), 5, "at {d}");
    }
    assert_eq!(opt(&s, &rat(21, 10)), 1);
}

#[test]
fn pipeline_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let n = rng.gen_range(2..=7);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(9));
        let g = common::random_connected(&mut rng, n, m);
        let d = common::random_delta(&mut rng, 5, 4, None);
        let want = brute_force_dispersion_with_limit(&g, &d, 2000).unwrap().0;
        let r = solve_max_dispersion(&g, &d, &dp_only()).unwrap();
        assert_eq!(r.optimum, want, "graph {:?} at {d}", g.edges());
        assert_eq!(r.witness.len(), r.optimum);
        assert!(Space::new(&g).validate_dispersed(&r.witness.points, &d).is_ok());
    }
}

#[test]
fn optimum_is_monotone_and_bounded_by_matching() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let ds = [rat(1, 3), rat(1, 2), rat(2, 3), int(1), rat(4, 3), rat(3, 2), int(2), rat(5, 2), int(3)];
    for _ in 0..25 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(8));
        let g = common::random_connected(&mut rng, n, m);
        let opts: Vec<usize> = ds.iter().map(|d| opt(&g, d)).collect();
        assert!(opts.windows(2).all(|w| w[0] >= w[1]), "{opts:?}");
        let matching = g.greedy_maximal_matching().len();
        assert!(opts[6] >= matching);
    }
}

#[test]
fn decisions() {
    let star3 = common::star(3);
    let yes = decide_dispersion(&star3, &int(2), 1, &SolveOptions::default()).unwrap();
    assert!(yes.yes);
    assert_eq!(yes.method, MethodUsed::Shortcut);
    let no = decide_dispersion(&star3, &int(2), 4, &SolveOptions::default()).unwrap();
    assert!(!no.yes);
    let d = decide_dispersion(&common::path(6), &rat(15, 11), 5, &SolveOptions::default()).unwrap();
    assert!(d.yes);
    assert_eq!(d.certificate.unwrap().len(), 5);
}

#[test]
fn user_decomposition_is_lifted() {
    let c5 = common::cycle(5);
    let td = TreeDecomposition::min_fill(&c5);
    let opts = SolveOptions { method: Method::Dp, td: Some(td), ..SolveOptions::default() };
    assert_eq!(solve_max_dispersion(&c5, &rat(5, 3), &opts).unwrap().optimum, 3);
}

#[test]
fn state_budget_guard() {
    let g = common::random_connected(&mut ChaCha8Rng::seed_from_u64(1), 7, 15);
    let opts = SolveOptions { method: Method::Dp, state_budget: 10.0, ..SolveOptions::default() };
    assert!(matches!(solve_max_dispersion(&g, &rat(7, 5), &opts), Err(SolveError::StateBudget { .. })));
}

#[test]
fn decomposition_dp_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..200 {
        let n: usize = rng.gen_range(1..=12);
        let max_m = n * (n.max(1) - 1) / 2;
        let m = rng.gen_range(n.saturating_sub(1)..=max_m.min(n + 6));
        let g = common::random_connected(&mut rng, n, m);
        let d = rng.gen_range(1..=6);
        let td = TreeDecomposition::min_fill(&g);
        td.validate(&g).unwrap();
        let (k, sel) = dis_dp(&g, d, &NiceTreeDecomposition::from_td(&td));
        let (want, _) = brute_force_dis(&g, d).unwrap();
        assert_eq!(k, want, "graph {:?} at d={d}", g.edges());
        let dist = g.all_pairs_distances();
        assert_eq!(sel.len(), k);
        for (i, &a) in sel.iter().enumerate() {
            for &b in &sel[i + 1..] {
                assert!(dist.get(a, b) >= d);
            }
        }
    }
}
