//! Text formats: graphs, point sets, PACE tree decompositions, DIMACS CNF.
//!
//! Graph files hold `n m` on the first content line and then `m` lines `u v` with 0-based
//! vertices. Point files hold `V v` or `E u v num den` lines and an optional `delta a/b` line.
//! Lines starting with `#` are comments in both.

use std::fmt::Write as _;

use dispersion_core::gadgets::{Cnf, McisInstance};
use dispersion_core::rat::{fmt_rat, parse_rat, Rat};
use dispersion_core::td::TreeDecomposition;
use dispersion_core::{Graph, GraphError, Point};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, msg: msg.into() })
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines<'a>(text: &'a str, comment: &'a [&'a str]) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !comment.iter().any(|c| l.starts_with(c)))
}

fn field<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, FormatError> {
    match tok {
        None => err(line, format!("missing {what}")),
        Some(t) => t.parse().or_else(|_| err(line, format!("{what} `{t}` is not a valid number"))),
    }
}

/// A vertex count with an edge list, before any connectivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Source line of each edge.
    pub lines: Vec<usize>,
    /// Content lines after the edges.
    pub rest: Vec<(usize, String)>,
}

impl EdgeList {
    pub fn graph(&self) -> Result<Graph, FormatError> {
        Graph::new(self.n, &self.edges).map_err(|e| {
            let line = match e {
                GraphError::VertexOutOfRange { index, .. }
                | GraphError::Loop { index, .. }
                | GraphError::MultiEdge { index, .. } => self.lines[index],
                GraphError::Empty | GraphError::Disconnected { .. } => self.lines.first().map_or(1, |l| l - 1),
            };
            FormatError { line, msg: e.to_string() }
        })
    }
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList, FormatError> {
    let mut lines = content_lines(text, &["#"]);
    let Some((hl, header)) = lines.next() else {
        return err(1, "empty graph file");
    };
    let mut it = header.split_whitespace();
    let n: usize = field(hl, it.next(), "vertex count")?;
    let m: usize = field(hl, it.next(), "edge count")?;
    if it.next().is_some() {
        return err(hl, "header must be `n m`");
    }
    let mut out = EdgeList { n, edges: Vec::with_capacity(m), lines: Vec::with_capacity(m), rest: Vec::new() };
    for _ in 0..m {
        let Some((l, s)) = lines.next() else {
            return err(text.lines().count().max(1), format!("expected {m} edges, found {}", out.edges.len()));
        };
        let mut it = s.split_whitespace();
        let u: usize = field(l, it.next(), "endpoint")?;
        let v: usize = field(l, it.next(), "endpoint")?;
        if it.next().is_some() {
            return err(l, "edge lines hold exactly two vertices");
        }
        if u >= n || v >= n {
            return err(l, format!("vertex {} out of range 0..{n}", u.max(v)));
        }
        out.edges.push((u, v));
        out.lines.push(l);
    }
    out.rest = lines.map(|(l, s)| (l, s.to_string())).collect();
    Ok(out)
}

/// A connected graph; trailing content is an error.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let el = parse_edge_list(text)?;
    if let Some((l, _)) = el.rest.first() {
        return err(*l, "unexpected content after the edge list");
    }
    el.graph()
}

pub fn emit_graph(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Graph file followed by one `c v1 v2 ...` line per color class.
pub fn parse_mcis(text: &str) -> Result<McisInstance, FormatError> {
    let el = parse_edge_list(text)?;
    let mut classes = Vec::new();
    for (l, s) in &el.rest {
        let mut it = s.split_whitespace();
        if it.next() != Some("c") {
            return err(*l, "expected a class line `c v1 v2 ...`");
        }
        let class = it.map(|t| field::<usize>(*l, Some(t), "vertex")).collect::<Result<Vec<_>, _>>()?;
        classes.push(class);
    }
    let inst = McisInstance { n: el.n, edges: el.edges, classes };
    inst.validate().map_err(|e| FormatError { line: el.rest.first().map_or(1, |r| r.0), msg: e.to_string() })?;
    Ok(inst)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFile {
    pub points: Vec<Point>,
    pub delta: Option<Rat>,
}

/// Points checked against `g`: vertices in range, `u < v` on an edge, `0 < num/den < 1`.
pub fn parse_points(text: &str, g: &Graph) -> Result<PointFile, FormatError> {
    let mut out = PointFile { points: Vec::new(), delta: None };
    for (l, s) in content_lines(text, &["#"]) {
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["delta", d] => {
                let d = parse_rat(d).or_else(|_| err(l, format!("bad delta `{d}`")))?;
                if d <= Rat::from_integer(0.into()) {
                    return err(l, "delta must be positive");
                }
                out.delta = Some(d);
            }
            ["V", v] => {
                let v: usize = field(l, Some(v), "vertex")?;
                if v >= g.n() {
                    return err(l, format!("vertex {v} out of range 0..{}", g.n()));
                }
                out.points.push(Point::Vertex(v));
            }
            ["E", u, v, num, den] => {
                let u: usize = field(l, Some(u), "endpoint")?;
                let v: usize = field(l, Some(v), "endpoint")?;
                if u >= v {
                    return err(l, "edge points need u < v");
                }
                if !g.has_edge(u, v) {
                    return err(l, format!("{{{u},{v}}} is not an edge"));
                }
                let lambda = parse_rat(&format!("{num}/{den}")).or_else(|_| err(l, "bad position"))?;
                if lambda <= Rat::from_integer(0.into()) || lambda >= Rat::from_integer(1.into()) {
                    return err(l, "position must lie strictly between 0 and 1");
                }
                out.points.push(Point::on_edge(u, v, lambda));
            }
            _ => return err(l, "expected `V v`, `E u v num den` or `delta a/b`"),
        }
    }
    Ok(out)
}

pub fn emit_points(points: &[Point], delta: Option<&Rat>) -> String {
    let mut s = String::new();
    if let Some(d) = delta {
        let _ = writeln!(s, "delta {}", fmt_rat(d));
    }
    for p in points {
        match p {
            Point::Vertex(v) => {
                let _ = writeln!(s, "V {v}");
            }
            Point::Interior { u, v, lambda } => {
                let _ = writeln!(s, "E {u} {v} {} {}", lambda.numer(), lambda.denom());
            }
        }
    }
    s
}

/// PACE 2017 `.td`: `s td bags width+1 n`, then `b i v...` (1-based), then tree edges.
pub fn parse_td(text: &str) -> Result<TreeDecomposition, FormatError> {
    let mut lines = content_lines(text, &["c"]);
    let Some((hl, header)) = lines.next() else {
        return err(1, "empty decomposition file");
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "s" || toks[1] != "td" {
        return err(hl, "header must be `s td <bags> <width+1> <n>`");
    }
    let k: usize = field(hl, Some(toks[2]), "bag count")?;
    let size: usize = field(hl, Some(toks[3]), "bag size")?;
    let n: usize = field(hl, Some(toks[4]), "vertex count")?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; k];
    let mut tree_edges = Vec::new();
    for (l, s) in lines {
        let mut it = s.split_whitespace();
        let first = it.next().unwrap_or_default();
        if first == "b" {
            let i: usize = field(l, it.next(), "bag id")?;
            if i == 0 || i > k {
                return err(l, format!("bag id {i} out of range 1..={k}"));
            }
            if bags[i - 1].is_some() {
                return err(l, format!("bag {i} listed twice"));
            }
            let mut bag = Vec::new();
            for t in it {
                let v: usize = field(l, Some(t), "vertex")?;
                if v == 0 || v > n {
                    return err(l, format!("vertex {v} out of range 1..={n}"));
                }
                bag.push(v - 1);
            }
            if bag.len() > size {
                return err(l, format!("bag {i} has {} vertices, header allows {size}", bag.len()));
            }
            bags[i - 1] = Some(bag);
        } else {
            let a: usize = field(l, Some(first), "bag id")?;
            let b: usize = field(l, it.next(), "bag id")?;
            if a == 0 || b == 0 || a > k || b > k {
                return err(l, "tree edge names a missing bag");
            }
            tree_edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or(FormatError { line: hl, msg: format!("bag {} is never listed", i + 1) }))
        .collect::<Result<_, _>>()?;
    Ok(TreeDecomposition { bags, tree_edges })
}

pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let mut s = format!("s td {} {} {n}\n", td.bags.len(), td.width() + 1);
    for (i, b) in td.bags.iter().enumerate() {
        let _ = write!(s, "b {}", i + 1);
        for v in b {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    for (a, b) in &td.tree_edges {
        let _ = writeln!(s, "{} {}", a + 1, b + 1);
    }
    s
}

/// DIMACS CNF; clauses end with `0` and may span lines.
pub fn parse_cnf(text: &str) -> Result<Cnf, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    let mut last = 1;
    for (l, s) in content_lines(text, &["c"]) {
        last = l;
        if s.starts_with('%') {
            break;
        }
        if s.starts_with('p') {
            let toks: Vec<&str> = s.split_whitespace().collect();
            if toks.len() != 4 || toks[1] != "cnf" || header.is_some() {
                return err(l, "expected a single `p cnf <vars> <clauses>` line");
            }
            header = Some((field(l, Some(toks[2]), "variable count")?, field(l, Some(toks[3]), "clause count")?));
            continue;
        }
        let Some((vars, _)) = header else {
            return err(l, "clause before the `p cnf` line");
        };
        for t in s.split_whitespace() {
            let lit: i64 = field(l, Some(t), "literal")?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else if lit.unsigned_abs() as usize > vars {
                return err(l, format!("literal {lit} names a variable above {vars}"));
            } else {
                cur.push(lit);
            }
        }
    }
    let Some((vars, count)) = header else {
        return err(last, "missing `p cnf` line");
    };
    if !cur.is_empty() {
        clauses.push(cur);
    }
    if clauses.len() != count {
        return err(last, format!("header declares {count} clauses, found {}", clauses.len()));
    }
    Ok(Cnf { vars, clauses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dispersion_core::rat::rat;

    #[test]
    fn graph_errors_carry_lines() {
        assert_eq!(parse_graph("# path\n3 2\n0 1\n1 2\n").unwrap().m(), 2);
        assert_eq!(parse_graph("3 2\n0 1\n\n1 1\n").unwrap_err().line, 4);
        assert_eq!(parse_graph("3 2\n0 1\n1 5\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("3 2\n0 1\n").unwrap_err().msg, "expected 2 edges, found 1");
        assert!(parse_graph("4 2\n0 1\n2 3\n").unwrap_err().msg.contains("disconnected"));
        assert_eq!(parse_graph("2 x\n").unwrap_err().line, 1);
    }

    #[test]
    fn points_round_trip() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let pts = vec![Point::Vertex(0), Point::on_edge(1, 2, rat(2, 3))];
        let text = emit_points(&pts, Some(&rat(2, 3)));
        assert_eq!(text, "delta 2/3\nV 0\nE 1 2 2 3\n");
        let back = parse_points(&text, &g).unwrap();
        assert_eq!(back, PointFile { points: pts, delta: Some(rat(2, 3)) });
        assert_eq!(parse_points("E 0 2 1 2\n", &g).unwrap_err().msg, "{0,2} is not an edge");
        assert_eq!(parse_points("V 0\nE 1 0 1 2\n", &g).unwrap_err().line, 2);
        assert!(parse_points("E 0 1 2 2\n", &g).is_err());
    }

    #[test]
    fn pace_round_trip() {
        let text = "c example\ns td 2 3 4\nb 1 1 2 3\nb 2 2 3 4\n1 2\n";
        let td = parse_td(text).unwrap();
        assert_eq!(td.bags, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(td.tree_edges, vec![(0, 1)]);
        assert_eq!(emit_td(&td, 4), "s td 2 3 4\nb 1 1 2 3\nb 2 2 3 4\n1 2\n");
        assert_eq!(parse_td("s td 1 2 2\nb 1 1 3\n").unwrap_err().line, 2);
    }

    #[test]
    fn dimacs() {
        let cnf = parse_cnf("c hi\np cnf 3 2\n1 -2 0\n3\n 2 0\n").unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![3, 2]]);
        assert_eq!(parse_cnf("p cnf 1 1\n2 0\n").unwrap_err().line, 2);
        assert!(parse_cnf("1 0\n").is_err());
    }

    #[test]
    fn mcis_classes() {
        let inst = parse_mcis("4 3\n0 2\n0 3\n1 2\nc 0 1\nc 2 3\n").unwrap();
        assert_eq!(inst.classes, vec![vec![0, 1], vec![2, 3]]);
        assert!(parse_mcis("4 1\n0 1\nc 0 1\nc 2 3\n").is_err());
    }
}
