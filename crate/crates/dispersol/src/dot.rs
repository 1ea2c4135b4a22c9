//! Graphviz export. Edges carrying points are drawn as chains through the points so that
//! segment lengths follow the exact positions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use dispersion_core::rat::{fmt_rat, one, to_f64, zero, Rat};
use dispersion_core::{Graph, Point};

pub fn export_dot(g: &Graph, points: Option<&[Point]>) -> String {
    let points = points.unwrap_or(&[]);
    let mut s = String::from("graph dispersion {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  v{v} [label=\"{v}\"];");
    }
    let mut on_edge: BTreeMap<(usize, usize), Vec<(Rat, usize)>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        match p {
            Point::Vertex(v) => {
                let _ = writeln!(s, "  p{i} [shape=point, color=red, xlabel=\"V {v}\"];");
                let _ = writeln!(s, "  p{i} -- v{v} [style=dotted, len=0.1];");
            }
            Point::Interior { u, v, lambda } => {
                let _ = writeln!(s, "  p{i} [shape=point, color=red, xlabel=\"{}\"];", fmt_rat(lambda));
                on_edge.entry((*u, *v)).or_default().push((lambda.clone(), i));
            }
        }
    }
    for &(u, v) in g.edges() {
        let mut stops = on_edge.remove(&(u, v)).unwrap_or_default();
        stops.sort();
        let mut prev = (format!("v{u}"), zero());
        for (lambda, i) in stops {
            segment(&mut s, &prev.0, &format!("p{i}"), &(&lambda - &prev.1));
            prev = (format!("p{i}"), lambda);
        }
        segment(&mut s, &prev.0, &format!("v{v}"), &(one() - &prev.1));
    }
    s.push_str("}\n");
    s
}

fn segment(s: &mut String, a: &str, b: &str, len: &Rat) {
    let _ = writeln!(s, "  {a} -- {b} [len={:.6}];", to_f64(len));
}

#[cfg(test)]
mod tests {
    use super::*;
    use dispersion_core::rat::rat;

    fn k2() -> Graph {
        Graph::new(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn midpoint_label() {
        let dot = export_dot(&k2(), Some(&[Point::midpoint(0, 1)]));
        assert_eq!(dot.matches("xlabel=\"1/2\"").count(), 1);
        assert!(dot.contains("v0 -- p0 [len=0.500000]"));
        assert_eq!(dot, export_dot(&k2(), Some(&[Point::on_edge(1, 0, rat(1, 2))])));
    }

    #[test]
    fn plain_graph() {
        let dot = export_dot(&k2(), None);
        assert!(!dot.contains("xlabel"));
        assert!(dot.contains("v0 -- v1 [len=1.000000]"));
    }
}
