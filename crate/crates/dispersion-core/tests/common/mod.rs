#![allow(dead_code)]

use dispersion_core::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// A connected graph on `n` vertices with `m` edges: a random spanning tree plus extra edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i].min(order[j]), order[i].max(order[j])));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|e| !edges.contains(e))
        .collect();
    rest.shuffle(rng);
    let extra = m.saturating_sub(n - 1).min(rest.len());
    edges.extend_from_slice(&rest[..extra]);
    Graph::new(n, &edges).unwrap()
}

pub fn path(k: usize) -> Graph {
    let e: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
    Graph::new(k + 1, &e).unwrap()
}

pub fn star(k: usize) -> Graph {
    let e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Graph::new(k + 1, &e).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &e).unwrap()
}

/// One representative per isomorphism class of connected graphs on `n <= 5` vertices.
pub fn connected_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let Ok(g) = Graph::new(n, &edges) else { continue };
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<_> = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Optimum of a possibly disconnected instance: the sum over its components, falling back to
/// brute force when the decomposition DP is over budget.
pub fn solve_components(n: usize, edges: &[(usize, usize)], delta: &dispersion_core::Rat) -> usize {
    use dispersion_core::solver::{brute_force_dispersion_with_limit, solve_max_dispersion, SolveError, SolveOptions};
    dispersion_core::gadgets::split_components(n, edges)
        .iter()
        .map(|(g, _)| match solve_max_dispersion(g, delta, &SolveOptions::default()) {
            Ok(r) => r.optimum,
            Err(SolveError::StateBudget { .. }) => brute_force_dispersion_with_limit(g, delta, 100_000).unwrap().0,
            Err(e) => panic!("{e}"),
        })
        .sum()
}

/// `δ = a/b` with `a <= amax`, `b <= bmax`, in lowest terms and at most `cap`.
pub fn random_delta(rng: &mut impl Rng, amax: i64, bmax: i64, cap: Option<i64>) -> dispersion_core::Rat {
    loop {
        let d = dispersion_core::rat::rat(rng.gen_range(1..=amax), rng.gen_range(1..=bmax));
        if cap.map_or(true, |c| d <= dispersion_core::rat::int(c)) {
            return d;
        }
    }
}
