//! Brute-force dispersion over the grid of edge positions that are multiples of `1/(2b)`.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::mis::max_independent_set;
use super::SizeGuard;
use crate::graph::Graph;
use crate::metric::{Point, PointSet};
use crate::rat::{rat, Rat};

pub const BRUTE_GRID_LIMIT: usize = 60;

/// Grid point: a vertex, or tick `j` in `1..2b` along edge `e` from its lower endpoint.
#[derive(Clone, Copy)]
enum Tick {
    Vertex(usize),
    Edge(usize, usize),
}

pub fn grid_size(g: &Graph, b: usize) -> usize {
    g.n() + g.m() * (2 * b - 1)
}

/// Numerator and denominator of a positive rational as machine integers.
pub(crate) fn small_parts(delta: &Rat) -> Option<(usize, usize)> {
    Some((delta.numer().to_usize()?, delta.denom().to_usize()?))
}

/// Optimum and witness for `delta = a/b`; refuses grids above [`BRUTE_GRID_LIMIT`] points.
pub fn brute_force_dispersion(g: &Graph, delta: &Rat) -> Result<(usize, PointSet), SizeGuard> {
    brute_force_dispersion_with_limit(g, delta, BRUTE_GRID_LIMIT)
}

pub fn brute_force_dispersion_with_limit(
    g: &Graph,
    delta: &Rat,
    limit: usize,
) -> Result<(usize, PointSet), SizeGuard> {
    assert!(*delta > rat(0, 1), "delta must be positive");
    let Some((a, b)) = small_parts(delta) else {
        return Err(SizeGuard { size: usize::MAX, limit });
    };
    let size = grid_size(g, b);
    if size > limit {
        return Err(SizeGuard { size, limit });
    }
    let two_b = 2 * b;
    let mut ticks = Vec::with_capacity(size);
    ticks.extend((0..g.n()).map(Tick::Vertex));
    for e in 0..g.m() {
        ticks.extend((1..two_b).map(|j| Tick::Edge(e, j)));
    }
    let dist = g.all_pairs_distances();
    let exits = |t: Tick| -> [(usize, usize); 2] {
        match t {
            Tick::Vertex(x) => [(x, 0), (x, 0)],
            Tick::Edge(e, j) => {
                let (u, v) = g.edges()[e];
                [(u, j), (v, two_b - j)]
            }
        }
    };
    // distances in units of 1/(2b); conflict below 2a units
    let mut conflicts = Vec::new();
    for i in 0..ticks.len() {
        for k in i + 1..ticks.len() {
            let t = match (ticks[i], ticks[k]) {
                (Tick::Edge(e, j), Tick::Edge(f, l)) if e == f => j.abs_diff(l),
                (p, q) => {
                    let mut best = usize::MAX;
                    for (x, s) in exits(p) {
                        for (y, r) in exits(q) {
                            best = best.min(s + r + two_b * dist.get(x, y));
                        }
                    }
                    best
                }
            };
            if t < 2 * a {
                conflicts.push((i, k));
            }
        }
    }
    let sel = max_independent_set(ticks.len(), &conflicts);
    let points = sel
        .iter()
        .map(|&i| match ticks[i] {
            Tick::Vertex(x) => Point::Vertex(x),
            Tick::Edge(e, j) => {
                let (u, v) = g.edges()[e];
                Point::on_edge(u, v, rat(j as i64, two_b as i64))
            }
        })
        .collect();
    Ok((sel.len(), PointSet::new(points, delta.clone())))
}
