//! Distance-d independent sets: vertex sets with pairwise hop distance at least `d`.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::mis::max_independent_set;
use super::SizeGuard;
use crate::graph::{Graph, Vertex};
use crate::td::{NiceKind, NiceTreeDecomposition};

pub const BRUTE_DIS_LIMIT: usize = 20;

/// Exact `α_d` through a maximum independent set of the conflict graph; `n <= 20`.
pub fn brute_force_dis(g: &Graph, d: usize) -> Result<(usize, Vec<Vertex>), SizeGuard> {
    if g.n() > BRUTE_DIS_LIMIT {
        return Err(SizeGuard { size: g.n(), limit: BRUTE_DIS_LIMIT });
    }
    let dist = g.all_pairs_distances();
    let mut conflicts = Vec::new();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if dist.get(a, b) < d {
                conflicts.push((a, b));
            }
        }
    }
    let s = max_independent_set(g.n(), &conflicts);
    Ok((s.len(), s))
}

const SEL: u8 = u8::MAX;

enum Witness {
    Nil,
    Cons(Vertex, Rc<Witness>),
    Join(Rc<Witness>, Rc<Witness>),
}

#[derive(Clone)]
struct Entry {
    count: usize,
    witness: Rc<Witness>,
}

type Table = BTreeMap<Vec<u8>, Entry>;

fn offer(t: &mut Table, key: Vec<u8>, e: Entry) {
    match t.get(&key) {
        Some(old) if old.count >= e.count => {}
        _ => {
            t.insert(key, e);
        }
    }
}

/// Exact `α_d(g)` with a witness, by dynamic programming over a nice decomposition.
///
/// A state labels each bag vertex either as selected or with its hop distance, capped at
/// `d`, to the nearest selected vertex already forgotten. Because a bag separates the
/// forgotten part from the rest, those distances update exactly through bag vertices.
pub fn dis_dp(g: &Graph, d: usize, td: &NiceTreeDecomposition) -> (usize, Vec<Vertex>) {
    assert!(d >= 1 && d < SEL as usize, "distance parameter out of range");
    let dist = g.all_pairs_distances();
    let cap = |x: usize| x.min(d) as u8;
    let mut tables: Vec<Option<Table>> = vec![None; td.nodes.len()];
    let mut pending: Vec<usize> = vec![0; td.nodes.len()];
    for node in &td.nodes {
        match node.kind {
            NiceKind::Leaf => {}
            NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => pending[child] += 1,
            NiceKind::Join { left, right } => {
                pending[left] += 1;
                pending[right] += 1;
            }
        }
    }
    let mut take = |tables: &mut Vec<Option<Table>>, i: usize| -> Table {
        pending[i] -= 1;
        if pending[i] == 0 {
            tables[i].take().expect("child table computed")
        } else {
            tables[i].clone().expect("child table computed")
        }
    };
    for (i, node) in td.nodes.iter().enumerate() {
        let mut out = Table::new();
        match node.kind {
            NiceKind::Leaf => {
                out.insert(Vec::new(), Entry { count: 0, witness: Rc::new(Witness::Nil) });
            }
            NiceKind::Introduce { v, child } => {
                let cbag = &td.nodes[child].bag;
                let pos = node.bag.iter().position(|&x| x == v).expect("introduced vertex in bag");
                for (key, e) in take(&mut tables, child) {
                    let mut via = d;
                    let mut clash = false;
                    for (j, &b) in cbag.iter().enumerate() {
                        let dv = dist.get(v, b);
                        if key[j] == SEL {
                            clash |= dv < d;
                        } else {
                            via = via.min(dv + key[j] as usize);
                        }
                    }
                    let mut k = key.clone();
                    k.insert(pos, cap(via));
                    offer(&mut out, k, e.clone());
                    if !clash && via >= d {
                        let mut k = key;
                        k.insert(pos, SEL);
                        let w = Rc::new(Witness::Cons(v, e.witness));
                        offer(&mut out, k, Entry { count: e.count + 1, witness: w });
                    }
                }
            }
            NiceKind::Forget { v, child } => {
                let cbag = &td.nodes[child].bag;
                let pos = cbag.iter().position(|&x| x == v).expect("forgotten vertex in child bag");
                for (key, e) in take(&mut tables, child) {
                    let mut k = key.clone();
                    if key[pos] == SEL {
                        for (j, &b) in cbag.iter().enumerate() {
                            if k[j] != SEL && j != pos {
                                k[j] = k[j].min(cap(dist.get(b, v)));
                            }
                        }
                    }
                    k.remove(pos);
                    offer(&mut out, k, e);
                }
            }
            NiceKind::Join { left, right } => {
                let lt = take(&mut tables, left);
                let rt = take(&mut tables, right);
                let lt = pareto(lt);
                let rt = pareto(rt);
                let mut groups: BTreeMap<Vec<bool>, Vec<(&Vec<u8>, &Entry)>> = BTreeMap::new();
                for (k, e) in &rt {
                    groups.entry(k.iter().map(|&x| x == SEL).collect()).or_default().push((k, e));
                }
                for (lk, le) in &lt {
                    let pattern: Vec<bool> = lk.iter().map(|&x| x == SEL).collect();
                    let selected = pattern.iter().filter(|&&s| s).count();
                    let Some(rs) = groups.get(&pattern) else { continue };
                    for (rk, re) in rs {
                        let ok = lk
                            .iter()
                            .zip(rk.iter())
                            .all(|(&a, &b)| a == SEL || a as usize + b as usize >= d);
                        if !ok {
                            continue;
                        }
                        let k: Vec<u8> = lk.iter().zip(rk.iter()).map(|(&a, &b)| a.min(b)).collect();
                        let w = Rc::new(Witness::Join(le.witness.clone(), re.witness.clone()));
                        offer(&mut out, k, Entry { count: le.count + re.count - selected, witness: w });
                    }
                }
            }
        }
        tables[i] = Some(out);
    }
    let root = tables[td.root()].take().expect("root table computed");
    let best = root.get(&Vec::new()).expect("empty root bag has exactly one state");
    let mut vs = Vec::new();
    collect(&best.witness, &mut vs);
    vs.sort_unstable();
    vs.dedup();
    debug_assert_eq!(vs.len(), best.count);
    (best.count, vs)
}

/// Drops states dominated by one with the same selection, no smaller labels and no smaller count.
fn pareto(t: Table) -> Table {
    let entries: Vec<(Vec<u8>, Entry)> = t.into_iter().collect();
    let mut keep = Table::new();
    for (i, (k, e)) in entries.iter().enumerate() {
        let dominated = entries.iter().enumerate().any(|(j, (k2, e2))| {
            j != i
                && e2.count >= e.count
                && k.iter().zip(k2.iter()).all(|(&a, &b)| {
                    if a == SEL || b == SEL {
                        a == b
                    } else {
                        b >= a
                    }
                })
        });
        if !dominated {
            keep.insert(k.clone(), e.clone());
        }
    }
    keep
}

fn collect(w: &Witness, out: &mut Vec<Vertex>) {
    let mut stack = vec![w];
    while let Some(w) = stack.pop() {
        match w {
            Witness::Nil => {}
            Witness::Cons(v, rest) => {
                out.push(*v);
                stack.push(rest);
            }
            Witness::Join(a, b) => {
                stack.push(a);
                stack.push(b);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::td::TreeDecomposition;

    fn dp(g: &Graph, d: usize) -> (usize, Vec<Vertex>) {
        let nice = NiceTreeDecomposition::from_td(&TreeDecomposition::min_fill(g));
        dis_dp(g, d, &nice)
    }

    fn path(k: usize) -> Graph {
        let e: Vec<_> = (0..k).map(|i| (i, i + 1)).collect();
        Graph::new(k + 1, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn examples() {
        let p5 = path(4);
        assert_eq!(dp(&p5, 3).0, 2);
        assert_eq!(brute_force_dis(&p5, 3).unwrap().0, 2);
        assert_eq!(dp(&cycle(6), 2).0, 3);
        assert_eq!(brute_force_dis(&cycle(6), 2).unwrap().0, 3);
        assert_eq!(brute_force_dis(&cycle(6), 4).unwrap().0, 1);
        let single = Graph::new(1, &[]).unwrap();
        for d in 1..5 {
            assert_eq!(dp(&single, d).0, 1);
        }
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(brute_force_dis(&k4, 2).unwrap().0, 1);
    }

    #[test]
    fn witness_is_scattered() {
        let g = cycle(11);
        let dist = g.all_pairs_distances();
        for d in 1..7 {
            let (k, w) = dp(&g, d);
            assert_eq!(k, w.len());
            assert_eq!(k, brute_force_dis(&g, d).unwrap().0);
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    assert!(dist.get(w[i], w[j]) >= d);
                }
            }
        }
    }

    #[test]
    fn guard() {
        assert!(brute_force_dis(&path(25), 2).is_err());
    }
}
