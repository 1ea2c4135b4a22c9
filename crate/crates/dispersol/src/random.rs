//! Seeded random instances for the oracle suites.

use std::collections::BTreeSet;

use dispersion_core::rat::{int, rat, Rat};
use dispersion_core::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// A connected graph: a random spanning tree plus `m - (n - 1)` distinct extra edges.
pub fn connected_graph(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    assert!(n >= 1 && m + 1 >= n, "too few edges for a connected graph");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..n)
        .map(|i| {
            let j = order[rng.gen_range(0..i)];
            (order[i].min(j), order[i].max(j))
        })
        .collect();
    let mut rest: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|e| !edges.contains(e)).collect();
    rest.shuffle(rng);
    edges.extend(rest.into_iter().take(m - (n - 1)));
    Graph::new(n, &edges).expect("spanning tree keeps the graph connected")
}

/// `n` uniform in `nmin..=nmax`, `m` uniform between a tree and `min(mmax, C(n,2))`.
pub fn small_graph(rng: &mut impl Rng, nmin: usize, nmax: usize, mmax: usize) -> Graph {
    let n = rng.gen_range(nmin..=nmax);
    let hi = (n * (n - 1) / 2).min(mmax).max(n - 1);
    let m = rng.gen_range(n - 1..=hi);
    connected_graph(rng, n, m)
}

/// `a/b` with `a <= amax`, `b <= bmax`, rejecting values above `cap`.
pub fn delta(rng: &mut impl Rng, amax: i64, bmax: i64, cap: Option<i64>) -> Rat {
    loop {
        let d = rat(rng.gen_range(1..=amax), rng.gen_range(1..=bmax));
        if cap.map_or(true, |c| d <= int(c)) {
            return d;
        }
    }
}

/// One graph per isomorphism class of connected graphs on `n` vertices; intended for `n <= 6`.
pub fn connected_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
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
            .unwrap_or_default();
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
