//! Moving dispersed sets between `δ` and `δ/(δ+1)`: one point more per edge going up,
//! one point less going down.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, Vertex};
use crate::metric::{AutoViolation, DrTable, Point, PointSet, Space};
use crate::rat::{half, int, one, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Directed-edge classes of the up-translation, comparing `dr` before and after.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    Positive,
    Neutral,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub u: Vertex,
    pub v: Vertex,
    /// Points on the closed edge before and after.
    pub before: usize,
    pub after: usize,
    /// Classes of `(u, v)` and `(v, u)`; up-direction only.
    pub classes: Option<(EdgeClass, EdgeClass)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationCertificate {
    pub direction: Direction,
    pub rho: Rat,
    pub input_size: usize,
    pub output_size: usize,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslateError {
    InputNotAutoDispersed(AutoViolation),
    /// Down-translation needs a point on every closed edge.
    UncoveredEdge { u: Vertex, v: Vertex },
    DeltaOutOfRange,
    OutputInvalid(AutoViolation),
    OutputSize { expected: usize, actual: usize },
}

impl fmt::Display for TranslateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslateError::InputNotAutoDispersed(v) => write!(f, "input is not auto-dispersed: {v}"),
            TranslateError::UncoveredEdge { u, v } => {
                write!(f, "edge {{{u},{v}}} carries no point; down-translation needs every edge covered")
            }
            TranslateError::DeltaOutOfRange => write!(f, "delta must lie in (0, 1) for down-translation"),
            TranslateError::OutputInvalid(v) => write!(f, "internal: output not auto-dispersed: {v}"),
            TranslateError::OutputSize { expected, actual } => {
                write!(f, "output has {actual} points, expected {expected}")
            }
        }
    }
}

/// `count` positions evenly spaced strictly between `a` and `b`.
fn fill(a: &Rat, b: &Rat, count: usize) -> Vec<Rat> {
    let step = (b - a) / int(count as i64 + 1);
    (1..=count).map(|i| a + &step * int(i as i64)).collect()
}

fn lt_dr(a: Option<&Rat>, b: Option<&Rat>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Neighbor of `x` with least `dr(x, w)`, lowest id on ties, and that value.
fn closest_exit(g: &Graph, dr: &DrTable, x: Vertex) -> Option<Rat> {
    let mut best: Option<&Rat> = None;
    let mut seen = false;
    for &w in g.neighbors(x) {
        let d = dr.get(x, w);
        if !seen || lt_dr(d, best) {
            best = d;
            seen = true;
        }
    }
    best.cloned()
}

/// Sorted and deduplicated, with isolated vertex points of `s` carried over unchanged.
fn assemble(g: &Graph, s: &[Point], out: Vec<Point>) -> Vec<Point> {
    let mut out = out;
    out.extend(s.iter().filter(|p| matches!(p, Point::Vertex(x) if g.degree(*x) == 0)).cloned());
    out.sort();
    out.dedup();
    out
}

/// From a `δ`-auto-dispersed set to a `δ/(δ+1)`-auto-dispersed set with `m` more points.
pub fn translate_up(g: &Graph, s: &PointSet) -> Result<(PointSet, TranslationCertificate), TranslateError> {
    let space = Space::new(g);
    let delta = &s.delta;
    space.validate_auto_dispersed(&s.points, delta).map_err(TranslateError::InputNotAutoDispersed)?;
    let rho = one() / (delta + one());
    let nd = delta * &rho;
    let dr = space.dr_table(&s.points);
    let mut out = Vec::new();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        let pos = space.positions_on_edge(&s.points, u, v);
        let mut here = Vec::new();
        if let (Some(lo), Some(hi)) = (pos.first(), pos.last()) {
            let mu = one() - hi;
            let p = lo * &rho;
            let q = one() - mu * &rho;
            here.extend(fill(&p, &q, pos.len() - 1));
            here.push(p);
            here.push(q);
        } else {
            let du = closest_exit(g, &dr, u);
            let dv = closest_exit(g, &dr, v);
            let lambda = |d: Option<Rat>| match d {
                Some(d) => (&nd * half()).max(&nd - d * &rho),
                None => &nd * half(),
            };
            if lt_dr(dv.as_ref(), du.as_ref()) {
                here.push(one() - lambda(dv));
            } else {
                here.push(lambda(du));
            }
        }
        edges.push(EdgeRecord { u, v, before: pos.len(), after: here.len(), classes: None });
        out.extend(here.into_iter().map(|l| Point::on_edge(u, v, l)));
    }
    let out = assemble(g, &s.points, out);
    let after = space.dr_table(&out);
    for rec in edges.iter_mut() {
        let (u, v) = (rec.u, rec.v);
        let class = |x: Vertex, y: Vertex| {
            let positive = match (after.get(x, y), dr.get(x, y)) {
                (Some(a), Some(b)) => *a >= b * &rho,
                (None, _) => true,
                (Some(_), None) => false,
            };
            if positive {
                EdgeClass::Positive
            } else if rec.before == 0
                && out.iter().any(|p| p.position_from(y, x) == Some(&nd * half()))
            {
                EdgeClass::Neutral
            } else {
                EdgeClass::Negative
            }
        };
        rec.classes = Some((class(u, v), class(v, u)));
    }
    let expected = s.len() + g.m();
    if out.len() != expected {
        return Err(TranslateError::OutputSize { expected, actual: out.len() });
    }
    space.validate_auto_dispersed(&out, &nd).map_err(TranslateError::OutputInvalid)?;
    let cert = TranslationCertificate {
        direction: Direction::Up,
        rho,
        input_size: s.len(),
        output_size: out.len(),
        edges,
    };
    Ok((PointSet { points: out, delta: nd }, cert))
}

/// From a `δ'`-auto-dispersed set with a point on every closed edge to a
/// `δ'/(1-δ')`-auto-dispersed set with `m` fewer points.
pub fn translate_down(g: &Graph, s: &PointSet) -> Result<(PointSet, TranslationCertificate), TranslateError> {
    let space = Space::new(g);
    let nd = &s.delta;
    if *nd >= one() || *nd <= Rat::from_integer(0.into()) {
        return Err(TranslateError::DeltaOutOfRange);
    }
    space.validate_auto_dispersed(&s.points, nd).map_err(TranslateError::InputNotAutoDispersed)?;
    let delta = nd / (one() - nd);
    let rho_inv = &delta + one();
    let mut out = Vec::new();
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        let pos = space.positions_on_edge(&s.points, u, v);
        let mut here = Vec::new();
        match pos.len() {
            0 => return Err(TranslateError::UncoveredEdge { u, v }),
            1 => {}
            2 => {
                let vertex = pos.iter().find(|l| **l == int(0) || **l == one());
                here.push(vertex.cloned().unwrap_or_else(|| &pos[0] * &rho_inv));
            }
            c => {
                let mu = one() - &pos[c - 1];
                let p = &pos[0] * &rho_inv;
                let q = one() - mu * &rho_inv;
                here.extend(fill(&p, &q, c - 3));
                here.push(p);
                here.push(q);
            }
        }
        edges.push(EdgeRecord { u, v, before: pos.len(), after: here.len(), classes: None });
        out.extend(here.into_iter().map(|l| Point::on_edge(u, v, l)));
    }
    let out = assemble(g, &s.points, out);
    let expected = s.len().checked_sub(g.m());
    if expected != Some(out.len()) {
        return Err(TranslateError::OutputSize { expected: expected.unwrap_or(0), actual: out.len() });
    }
    space.validate_auto_dispersed(&out, &delta).map_err(TranslateError::OutputInvalid)?;
    let cert = TranslationCertificate {
        direction: Direction::Down,
        rho: one() / rho_inv,
        input_size: s.len(),
        output_size: out.len(),
        edges,
    };
    Ok((PointSet { points: out, delta }, cert))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub delta: Rat,
    pub steps: usize,
    pub extra: usize,
}

/// Applies `a/b -> a/(b-a)` while `a/b <= 3/4`; the optimum at the input equals the optimum
/// at the result plus `extra`.
pub fn delta_descend_count(delta: &Rat, m: usize) -> Descent {
    let three_quarters = Rat::new(3.into(), 4.into());
    let mut d = delta.clone();
    let mut steps = 0;
    while d <= three_quarters {
        d = &d / (one() - &d);
        steps += 1;
    }
    Descent { delta: d, steps, extra: steps * m }
}

/// Points on each closed edge, in edge order.
pub fn edge_loads(g: &Graph, s: &[Point]) -> Vec<usize> {
    let mut loads = vec![0; g.m()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        loads[i] = s.iter().filter(|p| p.position_from(u, v).is_some()).count();
    }
    loads
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn k2() -> Graph {
        Graph::new(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn isolated_vertex_is_carried() {
        let g = Graph::new(1, &[]).unwrap();
        let s = PointSet::new(vec![Point::Vertex(0)], rat(1, 2));
        let (up, _) = translate_up(&g, &s).unwrap();
        assert_eq!(up.points, vec![Point::Vertex(0)]);
        assert_eq!(translate_down(&g, &up).unwrap().0.points, vec![Point::Vertex(0)]);
    }

    #[test]
    fn up_on_a_single_edge() {
        let s = PointSet::new(vec![Point::midpoint(0, 1)], int(3));
        let (out, cert) = translate_up(&k2(), &s).unwrap();
        assert_eq!(cert.rho, rat(1, 4));
        assert_eq!(out.delta, rat(3, 4));
        assert_eq!(out.points, vec![Point::on_edge(0, 1, rat(1, 8)), Point::on_edge(0, 1, rat(7, 8))]);
        let (back, _) = translate_down(&k2(), &out).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn up_on_a_two_edge_path() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = PointSet::new(vec![Point::Vertex(0), Point::Vertex(2)], int(2));
        let (out, _) = translate_up(&g, &s).unwrap();
        assert_eq!(out.len(), 4);
        assert!(Space::new(&g).is_dispersed(&out.points, &rat(2, 3)));
    }

    #[test]
    fn up_on_a_triangle() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = PointSet::new(vec![Point::midpoint(0, 1)], int(3));
        let (out, cert) = translate_up(&g, &s).unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(cert.edges.iter().map(|e| e.after).sum::<usize>(), 4);
    }

    #[test]
    fn down_with_a_lone_vertex_point() {
        let s = PointSet::new(vec![Point::Vertex(0)], rat(3, 4));
        let (out, _) = translate_down(&k2(), &s).unwrap();
        assert!(out.is_empty());
        assert_eq!(out.delta, int(3));
    }

    #[test]
    fn down_needs_covered_edges() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = PointSet::new(vec![Point::Vertex(0)], rat(1, 2));
        assert_eq!(translate_down(&g, &s).unwrap_err(), TranslateError::UncoveredEdge { u: 1, v: 2 });
    }

    #[test]
    fn descend() {
        assert_eq!(delta_descend_count(&rat(3, 4), 3), Descent { delta: int(3), steps: 1, extra: 3 });
        assert_eq!(delta_descend_count(&rat(2, 7), 1), Descent { delta: int(2), steps: 3, extra: 3 });
        assert_eq!(delta_descend_count(&rat(4, 5), 5), Descent { delta: rat(4, 5), steps: 0, extra: 0 });
    }
}
