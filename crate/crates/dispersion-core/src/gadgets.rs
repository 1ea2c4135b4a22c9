//! Reduction gadgets: independent set, chordal independent set, multicolored independent
//! set and 3-SAT instances turned into dispersion instances.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError, Vertex};
use crate::rat::{ceil, int, rat, to_i64, Rat};

/// A generated instance. The graph may be disconnected, so it is kept as an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub delta: Rat,
    pub k: usize,
    /// Source label of every vertex.
    pub labels: Vec<String>,
}

impl GadgetInstance {
    pub fn graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.n, &self.edges)
    }

    /// Connected components, each with its vertices' ids in the full instance.
    pub fn components(&self) -> Vec<(Graph, Vec<Vertex>)> {
        split_components(self.n, &self.edges)
    }

    fn vertex(&mut self, label: String) -> Vertex {
        self.labels.push(label);
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, a: Vertex, b: Vertex) {
        self.edges.push((a.min(b), a.max(b)));
    }

    /// A path of `len >= 1` edges from `a` to `b` through fresh vertices.
    fn path(&mut self, a: Vertex, b: Vertex, len: usize, label: &str) {
        assert!(len >= 1, "path length must be positive");
        let mut prev = a;
        for i in 1..len {
            let x = self.vertex(format!("{label}#{i}"));
            self.edge(prev, x);
            prev = x;
        }
        self.edge(prev, b);
    }

    fn new(delta: Rat, k: usize) -> Self {
        GadgetInstance { n: 0, edges: Vec::new(), delta, k, labels: Vec::new() }
    }

    fn finish(mut self) -> Self {
        self.edges.sort_unstable();
        self.edges.dedup();
        self
    }
}

pub fn split_components(n: usize, edges: &[(Vertex, Vertex)]) -> Vec<(Graph, Vec<Vertex>)> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            for &y in &adj[members[i]] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let local: BTreeMap<Vertex, Vertex> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let es: Vec<_> = edges
            .iter()
            .filter(|(a, _)| comp[*a] == id)
            .map(|(a, b)| (local[a], local[b]))
            .collect();
        out.push((Graph::new(members.len(), &es).expect("component is connected"), members));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetError {
    DeltaOutOfRange,
    /// Classes must partition the vertices into independent sets of one positive size.
    MalformedClasses(String),
}

impl fmt::Display for GadgetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetError::DeltaOutOfRange => write!(f, "delta outside the range this gadget supports"),
            GadgetError::MalformedClasses(why) => write!(f, "malformed color classes: {why}"),
        }
    }
}

/// Vertex `u` becomes an edge `u1 u2`; source edge `{u, v}` becomes all four `u_i v_j`.
/// For `2 < δ <= 3` the optimum equals the source's independence number.
pub fn gen_is_gadget(g: &Graph, delta: &Rat) -> Result<GadgetInstance, GadgetError> {
    if *delta <= int(2) || *delta > int(3) {
        return Err(GadgetError::DeltaOutOfRange);
    }
    let mut out = GadgetInstance::new(delta.clone(), 0);
    for u in 0..g.n() {
        out.vertex(format!("{u}_1"));
        out.vertex(format!("{u}_2"));
        out.edge(2 * u, 2 * u + 1);
    }
    for &(u, v) in g.edges() {
        for i in 0..2 {
            for j in 0..2 {
                out.edge(2 * u + i, 2 * v + j);
            }
        }
    }
    Ok(out.finish())
}

/// Edge vertices form a clique; `u'` sees the edge vertices at `u`, then a path of
/// `⌈δ/2⌉ - 2` edges to `u1`, plus a true twin `u2` of `u1` when `⌈δ⌉` is even.
pub fn gen_chordal_gadget(g: &Graph, delta: &Rat) -> Result<GadgetInstance, GadgetError> {
    if *delta <= int(3) {
        return Err(GadgetError::DeltaOutOfRange);
    }
    let half_up = to_i64(&ceil(&(delta * rat(1, 2)))).ok_or(GadgetError::DeltaOutOfRange)? as usize;
    let up = to_i64(&ceil(delta)).ok_or(GadgetError::DeltaOutOfRange)?;
    let mut out = GadgetInstance::new(delta.clone(), 0);
    let w: Vec<Vertex> = g.edges().iter().map(|(u, v)| out.vertex(format!("w{{{u},{v}}}"))).collect();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            out.edge(w[i], w[j]);
        }
    }
    for u in 0..g.n() {
        let top = out.vertex(format!("{u}'"));
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if a == u || b == u {
                out.edge(top, w[i]);
            }
        }
        let mut end = top;
        for i in 0..half_up - 2 {
            let x = out.vertex(format!("{u}'#{}", i + 1));
            out.edge(end, x);
            end = x;
        }
        out.labels[end] = format!("{u}_1");
        if up % 2 == 0 {
            let twin = out.vertex(format!("{u}_2"));
            let ns: Vec<Vertex> = out
                .edges
                .iter()
                .filter_map(|&(a, b)| if a == end { Some(b) } else if b == end { Some(a) } else { None })
                .collect();
            out.edge(twin, end);
            for x in ns {
                out.edge(twin, x);
            }
        }
    }
    Ok(out.finish())
}

/// Color classes over a graph that need not be connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McisInstance {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub classes: Vec<Vec<Vertex>>,
}

impl McisInstance {
    pub fn validate(&self) -> Result<usize, GadgetError> {
        let bad = |s: &str| Err(GadgetError::MalformedClasses(s.into()));
        let size = self.classes.first().map_or(0, |c| c.len());
        if size == 0 {
            return bad("classes must be nonempty");
        }
        if self.classes.iter().any(|c| c.len() != size) {
            return bad("classes differ in size");
        }
        let mut class_of = vec![usize::MAX; self.n];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                if v >= self.n || class_of[v] != usize::MAX {
                    return bad("classes do not partition the vertices");
                }
                class_of[v] = i;
            }
        }
        if class_of.contains(&usize::MAX) {
            return bad("classes do not cover every vertex");
        }
        if self.edges.iter().any(|&(a, b)| a >= self.n || b >= self.n || class_of[a] == class_of[b]) {
            return bad("a class is not independent");
        }
        Ok(size)
    }

    /// A multicolored independent set by exhaustive search.
    pub fn solve(&self) -> Option<Vec<Vertex>> {
        let edges: BTreeSet<(Vertex, Vertex)> = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        fn go(inst: &McisInstance, edges: &BTreeSet<(Vertex, Vertex)>, cur: &mut Vec<Vertex>) -> bool {
            let i = cur.len();
            if i == inst.classes.len() {
                return true;
            }
            for &v in &inst.classes[i] {
                if cur.iter().all(|&u| !edges.contains(&(u.min(v), u.max(v)))) {
                    cur.push(v);
                    if go(inst, edges, cur) {
                        return true;
                    }
                    cur.pop();
                }
            }
            false
        }
        let mut cur = Vec::new();
        go(self, &edges, &mut cur).then_some(cur)
    }
}

/// Distance `6n`, target `k²`. Classes `i < i'` share one `g` path and the `u_e` of their
/// cross non-edges.
pub fn gen_mcis_gadget(inst: &McisInstance) -> Result<GadgetInstance, GadgetError> {
    let n = inst.validate()?;
    let k = inst.classes.len();
    let mut out = GadgetInstance::new(int(6 * n as i64), k * k);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..k {
        a.push(out.vertex(format!("a_{}", i + 1)));
        b.push(out.vertex(format!("b_{}", i + 1)));
        for l in 1..=n {
            let p = out.vertex(format!("p^{}_{l}", i + 1));
            out.path(a[i], p, n + l, &format!("a_{}-p^{}_{l}", i + 1, i + 1));
            out.path(b[i], p, n + l, &format!("b_{}-p^{}_{l}", i + 1, i + 1));
        }
    }
    let edges: BTreeSet<(Vertex, Vertex)> = inst.edges.iter().map(|&(x, y)| (x.min(y), x.max(y))).collect();
    for i1 in 0..k {
        for i2 in i1 + 1..k {
            let g = out.vertex(format!("g_{},{}", i1 + 1, i2 + 1));
            let g2 = out.vertex(format!("g'_{},{}", i1 + 1, i2 + 1));
            out.path(g, g2, 6 * n - 1, &format!("g_{},{}", i1 + 1, i2 + 1));
            for (j1, &x) in inst.classes[i1].iter().enumerate() {
                for (j2, &y) in inst.classes[i2].iter().enumerate() {
                    if edges.contains(&(x.min(y), x.max(y))) {
                        continue;
                    }
                    let (j1, j2) = (j1 + 1, j2 + 1);
                    let name = format!("u_{{{x},{y}}}");
                    let ue = out.vertex(name.clone());
                    out.edge(g, ue);
                    out.path(ue, a[i1], 5 * n - j1, &format!("{name}-a_{}", i1 + 1));
                    out.path(ue, b[i1], 4 * n + j1, &format!("{name}-b_{}", i1 + 1));
                    out.path(ue, a[i2], 5 * n - j2, &format!("{name}-a_{}", i2 + 1));
                    out.path(ue, b[i2], 4 * n + j2, &format!("{name}-b_{}", i2 + 1));
                }
            }
        }
    }
    Ok(out.finish())
}

/// The `a_i` and `b_i` vertices of a generated MCIS gadget.
pub fn mcis_feedback_set(gadget: &GadgetInstance) -> Vec<Vertex> {
    (0..gadget.n)
        .filter(|&v| {
            let l = &gadget.labels[v];
            (l.starts_with("a_") || l.starts_with("b_")) && !l.contains('-')
        })
        .collect()
}

/// A CNF formula with DIMACS literals: `v` or `-v` for variables `1..=vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl Cnf {
    fn satisfied(clause: &[i64], value: impl Fn(usize) -> bool) -> bool {
        clause.iter().any(|&l| value(l.unsigned_abs() as usize) == (l > 0))
    }

    /// A satisfying assignment (index `v - 1` for variable `v`) by enumeration.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 32, "brute force is limited to 31 variables");
        (0u32..1 << self.vars)
            .find(|m| self.clauses.iter().all(|c| Self::satisfied(c, |v| m >> (v - 1) & 1 == 1)))
            .map(|m| (0..self.vars).map(|i| m >> i & 1 == 1).collect())
    }
}

/// Clauses in `⌈√N⌉` contiguous groups; one class per group holding the assignments of the
/// group's variables that satisfy it; conflicting assignments are adjacent. Classes are padded
/// to equal size with vertices adjacent to every other class. With an unsatisfiable group the
/// instance keeps its empty class and has no multicolored independent set.
pub fn gen_sat_to_mcis(cnf: &Cnf) -> (McisInstance, Vec<(Vec<usize>, Vec<bool>)>) {
    let mut groups = 1;
    while groups * groups < cnf.vars {
        groups += 1;
    }
    let groups = groups.min(cnf.clauses.len().max(1));
    let c = cnf.clauses.len();
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut assignments: Vec<(Vec<usize>, Vec<bool>)> = Vec::new();
    for gi in 0..groups {
        let chunk = &cnf.clauses[gi * c / groups..(gi + 1) * c / groups];
        let vars: Vec<usize> = chunk
            .iter()
            .flatten()
            .map(|l| l.unsigned_abs() as usize)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert!(vars.len() < 32, "a clause group has too many variables");
        let mut class = Vec::new();
        for m in 0u32..1 << vars.len() {
            let value = |v: usize| m >> vars.iter().position(|&x| x == v).unwrap() & 1 == 1;
            if chunk.iter().all(|cl| Cnf::satisfied(cl, value)) {
                class.push(assignments.len());
                assignments.push((vars.clone(), (0..vars.len()).map(|i| m >> i & 1 == 1).collect()));
            }
        }
        classes.push(class);
    }
    let class_of: Vec<usize> =
        (0..assignments.len()).map(|v| classes.iter().position(|c| c.contains(&v)).unwrap()).collect();
    let mut edges = Vec::new();
    for x in 0..assignments.len() {
        for y in x + 1..assignments.len() {
            if class_of[x] == class_of[y] {
                continue;
            }
            let (vx, ax) = &assignments[x];
            let (vy, ay) = &assignments[y];
            let clash = vx.iter().enumerate().any(|(i, v)| vy.iter().position(|w| w == v).is_some_and(|j| ax[i] != ay[j]));
            if clash {
                edges.push((x, y));
            }
        }
    }
    let mut n = assignments.len();
    let size = classes.iter().map(|c| c.len()).max().unwrap_or(0);
    if classes.iter().all(|c| !c.is_empty()) {
        for ci in 0..classes.len() {
            while classes[ci].len() < size {
                let pad = n;
                n += 1;
                for (cj, other) in classes.iter().enumerate() {
                    if cj != ci {
                        edges.extend(other.iter().map(|&x| (x.min(pad), x.max(pad))));
                    }
                }
                classes[ci].push(pad);
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    (McisInstance { n, edges, classes }, assignments)
}

/// Perfect elimination ordering check after maximum cardinality search.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !numbered[v]).max_by_key(|&v| (weight[v], core::cmp::Reverse(v))).unwrap();
        numbered[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    // reverse of the search order is a perfect elimination ordering iff chordal
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &order {
        let earlier: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        if let Some(&p) = earlier.iter().max_by_key(|&&w| pos[w]) {
            if earlier.iter().any(|&w| w != p && !g.has_edge(w, p)) {
                return false;
            }
        }
    }
    true
}

/// True if no cycle remains after deleting `removed`.
pub fn is_forest_without(n: usize, edges: &[(Vertex, Vertex)], removed: &[Vertex]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let nx = p[x];
            p[x] = r;
            x = nx;
        }
        r
    }
    for &(a, b) in edges {
        if removed.contains(&a) || removed.contains(&b) {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_gadget_sizes() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let gi = gen_is_gadget(&p3, &rat(5, 2)).unwrap();
        assert_eq!((gi.n, gi.edges.len()), (6, 3 + 8));
        assert!(gen_is_gadget(&p3, &int(2)).is_err());
    }

    #[test]
    fn chordal_gadget_shape() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let gi = gen_chordal_gadget(&p3, &int(4)).unwrap();
        assert!(gi.labels.iter().any(|l| l == "0_2"));
        let g = gi.graph().unwrap();
        assert!(is_chordal(&g));
        assert!(g.all_pairs_distances().diameter() <= 4);
        let gi = gen_chordal_gadget(&p3, &int(7)).unwrap();
        assert!(!gi.labels.iter().any(|l| l.ends_with("_2")));
        let g = gi.graph().unwrap();
        assert!(is_chordal(&g) && g.all_pairs_distances().diameter() <= 7);
    }

    #[test]
    fn chordality() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(!is_chordal(&c4));
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_chordal(&k4));
    }

    #[test]
    fn sat_grouping() {
        let one = Cnf { vars: 1, clauses: vec![vec![1, 1, 1]] };
        let (m, _) = gen_sat_to_mcis(&one);
        assert_eq!(m.classes.len(), 1);
        assert!(m.solve().is_some());
        let contra = Cnf { vars: 1, clauses: vec![vec![1, 1, 1], vec![-1, -1, -1]] };
        let (m, _) = gen_sat_to_mcis(&contra);
        assert!(m.classes.iter().any(|c| c.is_empty()));
        assert!(m.solve().is_none());
    }

    #[test]
    fn mcis_gadget_structure() {
        let inst = McisInstance { n: 4, edges: vec![(0, 2), (0, 3), (1, 2)], classes: vec![vec![0, 1], vec![2, 3]] };
        let g = gen_mcis_gadget(&inst).unwrap();
        assert_eq!((g.delta.clone(), g.k), (int(12), 4));
        assert_eq!(g.labels.iter().filter(|l| l.starts_with("u_") && !l.contains('-')).count(), 1);
        let fvs = mcis_feedback_set(&g);
        assert_eq!(fvs.len(), 4);
        assert!(is_forest_without(g.n, &g.edges, &fvs));
        assert!(!is_forest_without(g.n, &g.edges, &[]));
        let bad = McisInstance { n: 2, edges: vec![(0, 1)], classes: vec![vec![0, 1]] };
        assert!(gen_mcis_gadget(&bad).is_err());
    }
}
