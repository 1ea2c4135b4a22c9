//! The point space of a graph: points on vertices and edge interiors, exact distances,
//! directions, and (auto-)dispersion validators.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::graph::{DistanceMatrix, Graph, Vertex};
use crate::rat::{fmt_rat, half, int, one, rat, zero, Rat};

/// A location in the point space. Interior positions are measured from the lower endpoint
/// `u < v` and lie strictly in `(0, 1)`; vertex locations are never stored as `λ ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Vertex(Vertex),
    Interior { u: Vertex, v: Vertex, lambda: Rat },
}

impl Point {
    /// The point at distance `lambda` from `a` on edge `{a, b}`, canonicalized.
    /// Panics unless `0 <= lambda <= 1`.
    pub fn on_edge(a: Vertex, b: Vertex, lambda: Rat) -> Point {
        assert!(lambda >= zero() && lambda <= one(), "edge position {lambda} outside [0,1]");
        let (u, v, lambda) = if a < b { (a, b, lambda) } else { (b, a, one() - lambda) };
        if lambda == zero() {
            Point::Vertex(u)
        } else if lambda == one() {
            Point::Vertex(v)
        } else {
            Point::Interior { u, v, lambda }
        }
    }

    pub fn midpoint(u: Vertex, v: Vertex) -> Point {
        Point::on_edge(u, v, half())
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self, Point::Vertex(_))
    }

    pub fn is_half_integral(&self) -> bool {
        match self {
            Point::Vertex(_) => true,
            Point::Interior { lambda, .. } => *lambda == half(),
        }
    }

    /// The edge of an interior point.
    pub fn edge(&self) -> Option<(Vertex, Vertex)> {
        match self {
            Point::Vertex(_) => None,
            Point::Interior { u, v, .. } => Some((*u, *v)),
        }
    }

    /// Position measured from `x` when the point lies on the closed edge `{x, y}`.
    pub fn position_from(&self, x: Vertex, y: Vertex) -> Option<Rat> {
        match self {
            Point::Vertex(w) if *w == x => Some(zero()),
            Point::Vertex(w) if *w == y => Some(one()),
            Point::Vertex(_) => None,
            Point::Interior { u, v, lambda } => {
                if (*u, *v) == (x, y) {
                    Some(lambda.clone())
                } else if (*u, *v) == (y, x) {
                    Some(one() - lambda)
                } else {
                    None
                }
            }
        }
    }

    /// `(endpoint, offset)` pairs: the ways a path can leave this point.
    pub fn exits(&self) -> Vec<(Vertex, Rat)> {
        match self {
            Point::Vertex(x) => vec![(*x, zero())],
            Point::Interior { u, v, lambda } => vec![(*u, lambda.clone()), (*v, one() - lambda)],
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vertex(x) => write!(f, "V {x}"),
            Point::Interior { u, v, lambda } => write!(f, "E {u} {v} {}", fmt_rat(lambda)),
        }
    }
}

/// A candidate solution: distinct points, sorted, with the distance they are meant to keep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub delta: Rat,
}

impl PointSet {
    pub fn new(mut points: Vec<Point>, delta: Rat) -> Self {
        points.sort();
        points.dedup();
        PointSet { points, delta }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectionError {
    SamePoint,
    /// Both endpoints of the edge lie on shortest paths; only half-integral points tie.
    Undefined,
}

impl fmt::Display for DirectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionError::SamePoint => write!(f, "direction of a point towards itself"),
            DirectionError::Undefined => write!(f, "direction undefined at a half-integral point"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub p: Point,
    pub q: Point,
    pub distance: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AutoViolation {
    /// Two points on the closed edge `{u, v}` closer than δ along the edge.
    EdgeInternal { u: Vertex, v: Vertex, p: Point, q: Point },
    /// `dr(u, v) + dr(u, w) < δ` at a vertex `u` outside the set.
    Junction { u: Vertex, v: Vertex, w: Vertex, sum: Rat },
}

impl fmt::Display for AutoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutoViolation::EdgeInternal { u, v, p, q } => {
                write!(f, "A1 fails on edge {{{u},{v}}}: {p} and {q}")
            }
            AutoViolation::Junction { u, v, w, sum } => {
                write!(f, "A2 fails at {u}: dr({u},{v}) + dr({u},{w}) = {}", fmt_rat(sum))
            }
        }
    }
}

/// A graph together with its vertex distances.
#[derive(Debug, Clone)]
pub struct Space<'g> {
    pub g: &'g Graph,
    pub d: DistanceMatrix,
}

impl<'g> Space<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Space { g, d: g.all_pairs_distances() }
    }

    pub fn vdist(&self, x: Vertex, y: Vertex) -> Rat {
        int(self.d.get(x, y) as i64)
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Rat {
        if p == q {
            return zero();
        }
        if let (Some(e), Some(f)) = (p.edge(), q.edge()) {
            if e == f {
                let (Point::Interior { lambda: a, .. }, Point::Interior { lambda: b, .. }) = (p, q)
                else {
                    unreachable!()
                };
                return if a > b { a - b } else { b - a };
            }
        }
        let mut best: Option<Rat> = None;
        for (x, a) in p.exits() {
            for (y, b) in q.exits() {
                let c = &a + &b + self.vdist(x, y);
                if best.as_ref().map_or(true, |m| c < *m) {
                    best = Some(c);
                }
            }
        }
        best.expect("every point has an exit")
    }

    /// Distance from vertex `x` to `q`.
    pub fn vertex_distance(&self, x: Vertex, q: &Point) -> Rat {
        self.distance(&Point::Vertex(x), q)
    }

    /// `(dir, dir-bar)`: the endpoint of `p`'s edge on every shortest path to `q`, and the other.
    /// With `extended`, half-integral ties resolve to the lower endpoint, and a vertex `p`
    /// gets itself as direction and its lowest neighbor as complement.
    pub fn direction(
        &self,
        p: &Point,
        q: &Point,
        extended: bool,
    ) -> Result<(Vertex, Vertex), DirectionError> {
        if p == q {
            return Err(DirectionError::SamePoint);
        }
        let (u, v, lp) = match p {
            Point::Vertex(x) => {
                if !extended {
                    return Err(DirectionError::Undefined);
                }
                return Ok((*x, self.g.neighbors(*x)[0]));
            }
            Point::Interior { u, v, lambda } => (*u, *v, lambda),
        };
        if let Some(lq) = q.position_from(u, v) {
            return Ok(if lq < *lp { (u, v) } else { (v, u) });
        }
        let du = lp + self.vertex_distance(u, q);
        let dv = (one() - lp) + self.vertex_distance(v, q);
        if du < dv {
            Ok((u, v))
        } else if dv < du {
            Ok((v, u))
        } else if extended {
            Ok((u, v))
        } else {
            Err(DirectionError::Undefined)
        }
    }

    /// The lexicographically first pair closer than `delta`, if any.
    pub fn validate_dispersed(&self, points: &[Point], delta: &Rat) -> Result<(), Violation> {
        let mut sorted = points.to_vec();
        sorted.sort();
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                let d = self.distance(&sorted[i], &sorted[j]);
                if d < *delta {
                    return Err(Violation { p: sorted[i].clone(), q: sorted[j].clone(), distance: d });
                }
            }
        }
        Ok(())
    }

    pub fn is_dispersed(&self, points: &[Point], delta: &Rat) -> bool {
        self.validate_dispersed(points, delta).is_ok()
    }

    /// Points of `s` on the closed edge `{x, y}`, as positions from `x`, ascending.
    pub fn positions_on_edge(&self, s: &[Point], x: Vertex, y: Vertex) -> Vec<Rat> {
        let mut out: Vec<Rat> = s.iter().filter_map(|p| p.position_from(x, y)).collect();
        out.sort();
        out
    }

    pub fn dr_table(&self, s: &[Point]) -> DrTable {
        DrTable::compute(self.g, s)
    }

    pub fn validate_auto_dispersed(&self, s: &[Point], delta: &Rat) -> Result<(), AutoViolation> {
        let mut sorted = s.to_vec();
        sorted.sort();
        sorted.dedup();
        for &(u, v) in self.g.edges() {
            let on: Vec<&Point> = sorted.iter().filter(|p| p.position_from(u, v).is_some()).collect();
            for i in 0..on.len() {
                for j in i + 1..on.len() {
                    let a = on[i].position_from(u, v).unwrap();
                    let b = on[j].position_from(u, v).unwrap();
                    let gap = if a > b { a - b } else { b - a };
                    if gap < *delta {
                        return Err(AutoViolation::EdgeInternal {
                            u,
                            v,
                            p: on[i].clone(),
                            q: on[j].clone(),
                        });
                    }
                }
            }
        }
        let dr = self.dr_table(&sorted);
        for u in 0..self.g.n() {
            if sorted.binary_search(&Point::Vertex(u)).is_ok() {
                continue;
            }
            let ns = self.g.neighbors(u);
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    let (Some(a), Some(b)) = (dr.get(u, ns[i]), dr.get(u, ns[j])) else {
                        continue;
                    };
                    let sum = a + b;
                    if sum < *delta {
                        return Err(AutoViolation::Junction { u, v: ns[i], w: ns[j], sum });
                    }
                }
            }
        }
        Ok(())
    }

    /// The `n + m` vertices and edge midpoints.
    pub fn half_integral_points(&self) -> Vec<Point> {
        let mut out: Vec<Point> = (0..self.g.n()).map(Point::Vertex).collect();
        out.extend(self.g.edges().iter().map(|&(u, v)| Point::midpoint(u, v)));
        out
    }

    /// Every point whose edge position is a multiple of `1/(2b)`: `n + m(2b-1)` points.
    pub fn grid_points(&self, b: usize) -> Vec<Point> {
        assert!(b >= 1);
        let mut out: Vec<Point> = (0..self.g.n()).map(Point::Vertex).collect();
        for &(u, v) in self.g.edges() {
            for j in 1..2 * b {
                out.push(Point::on_edge(u, v, rat(j as i64, 2 * b as i64)));
            }
        }
        out
    }
}

/// `dr(u, v)` for every directed edge: the shortest walk from `u` that leaves towards `v`
/// and ends on a point of the set. `None` stands for an empty minimum.
#[derive(Debug, Clone)]
pub struct DrTable {
    edges: Vec<(Vertex, Vertex)>,
    values: Vec<Option<Rat>>,
}

impl DrTable {
    fn id(&self, u: Vertex, v: Vertex) -> usize {
        let i = self.edges.binary_search(&(u.min(v), u.max(v))).expect("dr queried on a non-edge");
        2 * i + usize::from(u > v)
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<&Rat> {
        self.values[self.id(u, v)].as_ref()
    }

    pub fn compute(g: &Graph, s: &[Point]) -> DrTable {
        let edges = g.edges().to_vec();
        let mut t = DrTable { edges, values: vec![None; 2 * g.m()] };
        let mut based = vec![false; 2 * g.m()];
        let mut heap = BinaryHeap::new();
        for &(a, b) in g.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let best = s.iter().filter_map(|p| p.position_from(x, y)).min();
                if let Some(l) = best {
                    let id = t.id(x, y);
                    based[id] = true;
                    heap.push(Reverse((l, x, y)));
                }
            }
        }
        let mut done = vec![false; 2 * g.m()];
        while let Some(Reverse((val, x, y))) = heap.pop() {
            let id = t.id(x, y);
            if done[id] {
                continue;
            }
            done[id] = true;
            t.values[id] = Some(val.clone());
            // (w, x) continues through x into (x, y)
            for &w in g.neighbors(x) {
                if w == y {
                    continue;
                }
                let pid = t.id(w, x);
                if !based[pid] && !done[pid] {
                    heap.push(Reverse((&val + one(), w, x)));
                }
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(k: usize) -> Graph {
        let e: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
        Graph::new(k + 1, &e).unwrap()
    }

    fn k3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn canonical_flip() {
        assert_eq!(Point::on_edge(3, 1, rat(1, 4)), Point::on_edge(1, 3, rat(3, 4)));
        assert_eq!(Point::on_edge(3, 1, zero()), Point::Vertex(3));
        assert_eq!(Point::on_edge(3, 1, one()), Point::Vertex(1));
    }

    #[test]
    fn distances() {
        let k2 = path(1);
        let sp = Space::new(&k2);
        let a = Point::on_edge(0, 1, rat(1, 4));
        let b = Point::on_edge(0, 1, rat(3, 4));
        assert_eq!(sp.distance(&a, &b), rat(1, 2));
        let g = k3();
        let sp = Space::new(&g);
        let a = Point::on_edge(0, 1, rat(1, 10));
        let b = Point::on_edge(0, 1, rat(9, 10));
        assert_eq!(sp.distance(&a, &b), rat(4, 5));
        let g = path(2);
        let sp = Space::new(&g);
        let a = Point::on_edge(0, 1, rat(1, 4));
        let b = Point::on_edge(1, 2, rat(1, 4));
        assert_eq!(sp.distance(&a, &b), one());
    }

    #[test]
    fn directions() {
        let k2 = path(1);
        let sp = Space::new(&k2);
        let p = Point::on_edge(0, 1, rat(1, 4));
        let q = Point::on_edge(0, 1, rat(3, 4));
        assert_eq!(sp.direction(&p, &q, false), Ok((1, 0)));
        let g = path(2);
        let sp = Space::new(&g);
        let p = Point::on_edge(0, 1, rat(1, 4));
        let q = Point::midpoint(1, 2);
        assert_eq!(sp.direction(&p, &q, false).unwrap().0, 1);
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let sp = Space::new(&c4);
        let p = Point::midpoint(0, 1);
        let q = Point::Vertex(3);
        assert_eq!(sp.direction(&p, &q, false).unwrap().0, 0);
        let p = Point::midpoint(0, 1);
        let q = Point::midpoint(2, 3);
        assert_eq!(sp.direction(&p, &q, false), Err(DirectionError::Undefined));
        assert_eq!(sp.direction(&p, &q, true), Ok((0, 1)));
        assert_eq!(sp.direction(&Point::Vertex(2), &q, true), Ok((2, 1)));
    }

    #[test]
    fn opposite_vertex_of_square_is_undefined_from_a_midpoint() {
        // vertices 0-1-2-3-0; midpoint of {0,1} against the vertex across, reached both ways
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let sp = Space::new(&c4);
        let p = Point::midpoint(0, 1);
        let far = Point::midpoint(2, 3);
        assert!(sp.direction(&p, &far, false).is_err());
    }

    #[test]
    fn dispersion_validation() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let sp = Space::new(&star);
        let leaves: Vec<_> = (1..4).map(Point::Vertex).collect();
        assert!(sp.validate_dispersed(&leaves, &int(2)).is_ok());
        let v = sp.validate_dispersed(&leaves, &rat(201, 100)).unwrap_err();
        assert_eq!((v.p, v.q, v.distance), (Point::Vertex(1), Point::Vertex(2), int(2)));
        assert!(sp.validate_dispersed(&[], &int(5)).is_ok());
        assert!(sp.validate_dispersed(&leaves[..1], &int(5)).is_ok());
    }

    #[test]
    fn dr_values() {
        let g = path(2);
        let sp = Space::new(&g);
        let s = [Point::on_edge(1, 2, rat(1, 5))];
        let t = sp.dr_table(&s);
        assert_eq!(t.get(0, 1), Some(&rat(6, 5)));
        assert_eq!(t.get(1, 0), None);
        assert_eq!(t.get(1, 2), Some(&rat(1, 5)));
        assert_eq!(t.get(2, 1), Some(&rat(4, 5)));
        let k2 = path(1);
        let s = [Point::on_edge(0, 1, rat(3, 10))];
        assert_eq!(Space::new(&k2).dr_table(&s).get(0, 1), Some(&rat(3, 10)));
    }

    #[test]
    fn auto_dispersion() {
        let g = k3();
        let sp = Space::new(&g);
        let s = [Point::midpoint(0, 1)];
        let err = sp.validate_auto_dispersed(&s, &rat(31, 10)).unwrap_err();
        match err {
            AutoViolation::Junction { u, sum, .. } => {
                assert_eq!(u, 0);
                assert_eq!(sum, int(3));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(sp.validate_auto_dispersed(&s, &int(3)).is_ok());
        let k2 = path(1);
        let sp = Space::new(&k2);
        assert!(sp.validate_auto_dispersed(&[Point::Vertex(0), Point::Vertex(1)], &one()).is_ok());
        let close = [Point::on_edge(0, 1, rat(1, 4)), Point::on_edge(0, 1, rat(1, 2))];
        assert!(matches!(
            sp.validate_auto_dispersed(&close, &rat(1, 2)),
            Err(AutoViolation::EdgeInternal { .. })
        ));
    }

    #[test]
    fn grids() {
        let k2 = path(1);
        let sp = Space::new(&k2);
        assert_eq!(sp.grid_points(1).len(), 3);
        assert_eq!(sp.grid_points(2).len(), 5);
        let g = k3();
        assert_eq!(Space::new(&g).grid_points(1).len(), 6);
        assert_eq!(Space::new(&g).half_integral_points().len(), 6);
    }
}
