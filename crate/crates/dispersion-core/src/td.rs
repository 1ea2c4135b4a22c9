//! Tree decompositions: min-fill construction, validation, nice form.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub tree_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdError {
    NoBags,
    NotATree,
    BagVertexOutOfRange { bag: usize, vertex: Vertex },
    VertexUncovered(Vertex),
    EdgeUncovered(Vertex, Vertex),
    VertexBagsDisconnected(Vertex),
}

impl fmt::Display for TdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdError::NoBags => write!(f, "decomposition has no bags"),
            TdError::NotATree => write!(f, "bag graph is not a tree"),
            TdError::BagVertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} names vertex {vertex} outside the graph")
            }
            TdError::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            TdError::EdgeUncovered(u, v) => write!(f, "edge {{{u},{v}}} is in no bag"),
            TdError::VertexBagsDisconnected(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
        }
    }
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), TdError> {
        let k = self.bags.len();
        if k == 0 {
            return Err(TdError::NoBags);
        }
        if self.tree_edges.len() != k - 1 {
            return Err(TdError::NotATree);
        }
        let mut tadj = vec![Vec::new(); k];
        for &(a, b) in &self.tree_edges {
            if a >= k || b >= k || a == b {
                return Err(TdError::NotATree);
            }
            tadj[a].push(b);
            tadj[b].push(a);
        }
        if reach(&tadj, 0, |_| true).iter().any(|&r| !r) {
            return Err(TdError::NotATree);
        }
        let mut contains = vec![vec![false; k]; g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return Err(TdError::BagVertexOutOfRange { bag: i, vertex: v });
                }
                contains[v][i] = true;
            }
        }
        for (v, c) in contains.iter().enumerate() {
            let Some(first) = c.iter().position(|&x| x) else {
                return Err(TdError::VertexUncovered(v));
            };
            let r = reach(&tadj, first, |i| c[i]);
            if (0..k).any(|i| c[i] && !r[i]) {
                return Err(TdError::VertexBagsDisconnected(v));
            }
        }
        for &(u, v) in g.edges() {
            if !(0..k).any(|i| contains[u][i] && contains[v][i]) {
                return Err(TdError::EdgeUncovered(u, v));
            }
        }
        Ok(())
    }

    /// Min-fill elimination ordering, lowest vertex id on ties.
    pub fn min_fill(g: &Graph) -> Self {
        let n = g.n();
        let mut nb: Vec<BTreeSet<Vertex>> =
            (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(n);
        let mut bags = Vec::with_capacity(n);
        for _ in 0..n {
            let mut best: Option<(usize, Vertex)> = None;
            for v in (0..n).filter(|&v| alive[v]) {
                let ns: Vec<_> = nb[v].iter().copied().collect();
                let mut fill = 0;
                for i in 0..ns.len() {
                    for j in i + 1..ns.len() {
                        if !nb[ns[i]].contains(&ns[j]) {
                            fill += 1;
                        }
                    }
                }
                if best.map_or(true, |(f, _)| fill < f) {
                    best = Some((fill, v));
                }
            }
            let (_, v) = best.expect("an alive vertex remains");
            let ns: Vec<_> = nb[v].iter().copied().collect();
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    nb[ns[i]].insert(ns[j]);
                    nb[ns[j]].insert(ns[i]);
                }
            }
            for &w in &ns {
                nb[w].remove(&v);
            }
            let mut bag = ns.clone();
            bag.push(v);
            bag.sort_unstable();
            bags.push(bag);
            order.push(v);
            alive[v] = false;
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut tree_edges = Vec::new();
        for i in 0..n {
            let v = order[i];
            let parent = bags[i].iter().filter(|&&w| w != v).map(|&w| pos[w]).min();
            match parent {
                Some(p) => tree_edges.push((i, p)),
                None if i + 1 < n => tree_edges.push((i, i + 1)),
                None => {}
            }
        }
        TreeDecomposition { bags, tree_edges }
    }
}

fn reach(adj: &[Vec<usize>], s: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut q = VecDeque::new();
    seen[s] = true;
    q.push_back(s);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                q.push_back(y);
            }
        }
    }
    seen
}

/// Extends a decomposition of `g` to its subdivision: each replacement path hangs off a bag
/// holding both endpoints as a chain of bags `{u, v, x_i, x_i+1}`. Width becomes at most
/// `max(width, 3)`.
pub fn lift_to_subdivision(td: &TreeDecomposition, g: &Graph, sub: &crate::graph::Subdivision) -> TreeDecomposition {
    let mut bags = td.bags.clone();
    let mut tree_edges = td.tree_edges.clone();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let path = &sub.paths[i];
        if path.len() <= 2 {
            continue;
        }
        let host = td
            .bags
            .iter()
            .position(|b| b.contains(&u) && b.contains(&v))
            .expect("valid decomposition covers every edge");
        let mut prev = host;
        for w in path.windows(2) {
            let mut bag = vec![u, v, w[0], w[1]];
            bag.sort_unstable();
            bag.dedup();
            bags.push(bag);
            tree_edges.push((prev, bags.len() - 1));
            prev = bags.len() - 1;
        }
    }
    TreeDecomposition { bags, tree_edges }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce { v: Vertex, child: usize },
    Forget { v: Vertex, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<Vertex>,
    pub kind: NiceKind,
}

/// Nice decomposition; nodes are stored children-first, the last node is the root
/// and has an empty bag. Leaves have empty bags too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub width: usize,
}

impl NiceTreeDecomposition {
    pub fn from_td(td: &TreeDecomposition) -> Self {
        let k = td.bags.len();
        let mut tadj = vec![Vec::new(); k];
        for &(a, b) in &td.tree_edges {
            tadj[a].push(b);
            tadj[b].push(a);
        }
        let bags: Vec<Vec<Vertex>> = td
            .bags
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        // iterative post-order from bag 0
        let mut parent = vec![usize::MAX; k];
        let mut order = Vec::with_capacity(k);
        let mut stack = vec![0usize];
        let mut seen = vec![false; k];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &tadj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut b = Builder { nodes: Vec::new() };
        let mut top = vec![usize::MAX; k];
        for &x in order.iter().rev() {
            let children: Vec<usize> = tadj[x].iter().copied().filter(|&y| parent[y] == x).collect();
            let mut subs = Vec::new();
            for c in children {
                subs.push(b.transition(top[c], &bags[x]));
            }
            if subs.is_empty() {
                let leaf = b.push(Vec::new(), NiceKind::Leaf);
                subs.push(b.transition(leaf, &bags[x]));
            }
            let mut cur = subs[0];
            for &s in &subs[1..] {
                cur = b.push(bags[x].clone(), NiceKind::Join { left: cur, right: s });
            }
            top[x] = cur;
        }
        b.transition(top[0], &[]);
        let width = b.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).saturating_sub(1);
        NiceTreeDecomposition { nodes: b.nodes, width }
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, bag: Vec<Vertex>, kind: NiceKind) -> usize {
        self.nodes.push(NiceNode { bag, kind });
        self.nodes.len() - 1
    }

    /// Forget then introduce until the bag of `from` equals `target`.
    fn transition(&mut self, from: usize, target: &[Vertex]) -> usize {
        let mut cur = from;
        let mut bag = self.nodes[from].bag.clone();
        let drop: Vec<_> = bag.iter().copied().filter(|v| !target.contains(v)).collect();
        for v in drop {
            bag.retain(|&w| w != v);
            cur = self.push(bag.clone(), NiceKind::Forget { v, child: cur });
        }
        let add: Vec<_> = target.iter().copied().filter(|v| !bag.contains(v)).collect();
        for v in add {
            bag.push(v);
            bag.sort_unstable();
            cur = self.push(bag.clone(), NiceKind::Introduce { v, child: cur });
        }
        cur
    }
}
