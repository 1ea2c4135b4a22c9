//! Exact maximum independent set by branch and bound over bitsets.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count_and(&self, other: &Bits) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

struct Search {
    adj: Vec<Bits>,
    closed: Vec<Bits>,
    best: Vec<usize>,
    cur: Vec<usize>,
}

impl Search {
    /// Greedy clique cover of `cand` in the conflict graph; its size bounds any independent set.
    fn cover_bound(&self, cand: &Bits) -> usize {
        let mut cliques: Vec<Bits> = Vec::new();
        'outer: for v in cand.iter() {
            for c in cliques.iter_mut() {
                if c.has(v) {
                    *c = c.and(&self.adj[v]);
                    continue 'outer;
                }
            }
            cliques.push(cand.and(&self.adj[v]));
        }
        cliques.len()
    }

    fn run(&mut self, mut cand: Bits) {
        let mut forced = Vec::new();
        loop {
            let mut pick = None;
            for v in cand.iter() {
                if cand.count_and(&self.adj[v]) <= 1 {
                    pick = Some(v);
                    break;
                }
            }
            match pick {
                Some(v) => {
                    forced.push(v);
                    cand = cand.and_not(&self.closed[v]);
                }
                None => break,
            }
        }
        self.cur.extend_from_slice(&forced);
        if cand.is_empty() {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
        } else if self.cur.len() + self.cover_bound(&cand) > self.best.len() {
            let v = cand
                .iter()
                .max_by_key(|&v| (cand.count_and(&self.adj[v]), core::cmp::Reverse(v)))
                .expect("candidates are nonempty");
            self.cur.push(v);
            self.run(cand.and_not(&self.closed[v]));
            self.cur.pop();
            let mut rest = cand;
            rest.clear(v);
            self.run(rest);
        }
        let k = self.cur.len() - forced.len();
        self.cur.truncate(k);
    }
}

/// A maximum independent set of the graph on `0..n` given by its edges; sorted.
pub fn max_independent_set(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Bits::empty(n); n];
    for &(a, b) in edges {
        if a != b {
            adj[a].set(b);
            adj[b].set(a);
        }
    }
    let closed = (0..n)
        .map(|v| {
            let mut c = adj[v].clone();
            c.set(v);
            c
        })
        .collect();
    let mut s = Search { adj, closed, best: Vec::new(), cur: Vec::new() };
    s.run(Bits::full(n));
    let mut best = s.best;
    best.sort_unstable();
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive(n: usize, edges: &[(usize, usize)]) -> usize {
        (0u32..1 << n)
            .filter(|&m| edges.iter().all(|&(a, b)| m >> a & 1 == 0 || m >> b & 1 == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn small_graphs() {
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        assert_eq!(max_independent_set(5, &c5).len(), 2);
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(max_independent_set(4, &k4).len(), 1);
        assert_eq!(max_independent_set(3, &[]), vec![0, 1, 2]);
    }

    #[test]
    fn matches_exhaustive_on_pseudorandom_graphs() {
        let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..200 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let n = 1 + (x % 12) as usize;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    x ^= x << 13;
                    x ^= x >> 7;
                    x ^= x << 17;
                    if x % 3 == 0 {
                        edges.push((a, b));
                    }
                }
            }
            let s = max_independent_set(n, &edges);
            assert!(edges.iter().all(|&(a, b)| !(s.contains(&a) && s.contains(&b))));
            assert_eq!(s.len(), exhaustive(n, &edges));
        }
    }
}
