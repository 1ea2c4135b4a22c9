//! Simple connected graphs with unit-length edges.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    Empty,
    /// Index into the input edge list.
    VertexOutOfRange { index: usize, vertex: usize },
    Loop { index: usize, vertex: usize },
    MultiEdge { index: usize, u: usize, v: usize },
    Disconnected { unreachable: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Empty => write!(f, "graph has no vertices"),
            GraphError::VertexOutOfRange { vertex, .. } => {
                write!(f, "vertex {vertex} out of range")
            }
            GraphError::Loop { vertex, .. } => write!(f, "loop at vertex {vertex}"),
            GraphError::MultiEdge { u, v, .. } => write!(f, "multi-edge {{{u},{v}}}"),
            GraphError::Disconnected { unreachable } => {
                write!(f, "graph is disconnected (vertex {unreachable} unreachable from 0)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Validates and normalizes. Edges are stored as `(u, v)` with `u < v`, sorted.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (index, &(a, b)) in edge_list.iter().enumerate() {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { index, vertex: x });
                }
            }
            if a == b {
                return Err(GraphError::Loop { index, vertex: a });
            }
            edges.push(((a.min(b), a.max(b)), index));
        }
        edges.sort();
        for w in edges.windows(2) {
            if w[0].0 == w[1].0 {
                let (u, v) = w[1].0;
                let index = w[0].1.max(w[1].1);
                return Err(GraphError::MultiEdge { index, u, v });
            }
        }
        let edges: Vec<_> = edges.into_iter().map(|(e, _)| e).collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        let g = Graph { n, edges, adj };
        let d = g.bfs(0);
        if let Some(v) = d.iter().position(|&x| x == usize::MAX) {
            return Err(GraphError::Disconnected { unreachable: v });
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Hop distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn bfs(&self, s: Vertex) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.n];
        let mut q = VecDeque::new();
        d[s] = 0;
        q.push_back(s);
        while let Some(u) = q.pop_front() {
            for &w in &self.adj[u] {
                if d[w] == usize::MAX {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let mut dist = Vec::with_capacity(self.n * self.n);
        for s in 0..self.n {
            dist.extend(self.bfs(s));
        }
        DistanceMatrix { n: self.n, dist }
    }

    /// Replaces every edge by a path of `c` edges. Original vertices keep their ids;
    /// the internal vertices of edge `i` are `n + i(c-1) ..` ordered from its lower endpoint.
    pub fn subdivide(&self, c: usize) -> Subdivision {
        assert!(c >= 1, "subdivision factor must be positive");
        let n2 = self.n + self.m() * (c - 1);
        let mut new_edges = Vec::with_capacity(self.m() * c);
        let mut paths = Vec::with_capacity(self.m());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let mut path = Vec::with_capacity(c + 1);
            path.push(u);
            for j in 0..c - 1 {
                path.push(self.n + i * (c - 1) + j);
            }
            path.push(v);
            for w in path.windows(2) {
                new_edges.push((w[0], w[1]));
            }
            paths.push(path);
        }
        let graph = Graph::new(n2, &new_edges).expect("subdivision of a valid graph is valid");
        Subdivision { graph, factor: c, paths }
    }

    /// Length of a longest simple path, by exhaustive search. Exponential; meant for small n.
    pub fn longest_path_exact(&self) -> usize {
        fn dfs(g: &Graph, v: Vertex, seen: &mut Vec<bool>, len: usize, best: &mut usize) {
            if len > *best {
                *best = len;
            }
            if *best == g.n - 1 {
                return;
            }
            for &w in &g.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    dfs(g, w, seen, len + 1, best);
                    seen[w] = false;
                }
            }
        }
        let mut best = 0;
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            seen[s] = true;
            dfs(self, s, &mut seen, 0, &mut best);
            seen[s] = false;
        }
        best
    }

    /// Upper bound `L` on simple path lengths: the hint if given, exact for `n <= 12`, else `n-1`.
    pub fn longest_path_bound(&self, hint: Option<usize>) -> usize {
        match hint {
            Some(l) => l,
            None if self.n <= 12 => self.longest_path_exact(),
            None => self.n - 1,
        }
    }

    /// Greedy maximal matching in edge-list order.
    pub fn greedy_maximal_matching(&self) -> Vec<(Vertex, Vertex)> {
        let mut used = vec![false; self.n];
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                out.push((u, v));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<usize>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> usize {
        self.dist[u * self.n + v]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: Graph,
    pub factor: usize,
    /// Per original edge, the vertices of its replacement path from `u` to `v`.
    pub paths: Vec<Vec<Vertex>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(k: usize) -> Graph {
        let e: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
        Graph::new(k + 1, &e).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(Graph::new(2, &[(0, 0)]), Err(GraphError::Loop { index: 0, vertex: 0 })));
        assert!(matches!(
            Graph::new(4, &[(0, 1), (2, 3)]),
            Err(GraphError::Disconnected { .. })
        ));
        assert!(matches!(
            Graph::new(2, &[(0, 1), (1, 0)]),
            Err(GraphError::MultiEdge { index: 1, .. })
        ));
        assert!(matches!(Graph::new(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
        assert_eq!(Graph::new(0, &[]), Err(GraphError::Empty));
    }

    #[test]
    fn triangle_parses() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        let d = g.all_pairs_distances();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(d.get(u, v), usize::from(u != v));
            }
        }
    }

    #[test]
    fn path_and_cycle_distances() {
        assert_eq!(path(2).all_pairs_distances().get(0, 2), 2);
        let c6 = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(c6.all_pairs_distances().get(0, 3), 3);
    }

    #[test]
    fn subdivision_shapes() {
        let k2 = path(1);
        let s = k2.subdivide(2);
        assert_eq!((s.graph.n(), s.graph.m()), (3, 2));
        assert_eq!(s.paths[0], vec![0, 2, 1]);
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let c6 = k3.subdivide(2).graph;
        assert_eq!((c6.n(), c6.m()), (6, 6));
        assert!((0..6).all(|v| c6.degree(v) == 2));
        let c9 = k3.subdivide(3).graph;
        assert_eq!((c9.n(), c9.m()), (9, 9));
    }

    #[test]
    fn longest_paths() {
        assert_eq!(path(6).longest_path_bound(None), 6);
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.longest_path_bound(None), 2);
        assert_eq!(k3.longest_path_bound(Some(7)), 7);
    }

    #[test]
    fn matchings() {
        assert_eq!(path(1).greedy_maximal_matching().len(), 1);
        assert_eq!(path(3).greedy_maximal_matching(), vec![(0, 1), (2, 3)]);
        let star = Graph::new(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert_eq!(star.greedy_maximal_matching().len(), 1);
    }
}
