//! JSON reports. Every report carries `"schema": 1`; rationals are `"a/b"` strings.

use dispersion_core::gadgets::GadgetInstance;
use dispersion_core::rat::{fmt_rat, Rat};
use dispersion_core::rounding::{Potential, RoundStep, RoundTrace};
use dispersion_core::solver::{Decision, SolveReport};
use dispersion_core::translate::{Direction, EdgeClass, TranslationCertificate};
use dispersion_core::Point;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn point(p: &Point) -> Value {
    match p {
        Point::Vertex(v) => json!({ "vertex": v }),
        Point::Interior { u, v, lambda } => json!({ "edge": [u, v], "lambda": rat(lambda) }),
    }
}

pub fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

pub fn solve(r: &SolveReport) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "solve",
        "delta": rat(&r.delta),
        "delta_star": rat(&r.delta_star),
        "descend_steps": r.descend_steps,
        "extra": r.extra,
        "subdivision_factor": r.factor,
        "d": r.d,
        "width": r.width,
        "optimum": r.optimum,
        "method": r.method.name(),
        "witness": points(&r.witness.points),
    })
}

pub fn decision(delta: &Rat, k: usize, d: &Decision) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "decide",
        "delta": rat(delta),
        "k": k,
        "answer": if d.yes { "yes" } else { "no" },
        "method": d.method.name(),
        "optimum": d.report.as_ref().map(|r| r.optimum),
        "certificate": d.certificate.as_ref().map(|c| points(&c.points)),
    })
}

fn potential(p: &Potential) -> Value {
    json!({
        "uncritical_pairs": p.uncritical_pairs,
        "non_half_integral": p.non_half_integral,
        "non_pivot_half_integral": p.non_pivot_half_integral,
        "total": p.total(),
    })
}

fn step(st: &RoundStep) -> Value {
    let moves: Vec<Value> = st
        .plan
        .moves
        .iter()
        .enumerate()
        .filter_map(|(i, m)| {
            m.as_ref().map(|m| {
                json!({
                    "node": i,
                    "parent": m.parent,
                    "vel": rat(&m.vel),
                    "sgn": m.sgn,
                    "dir": m.dir,
                })
            })
        })
        .collect();
    json!({
        "delta": rat(&st.delta),
        "epsilon": rat(&st.epsilon),
        "events": st.events,
        "cap_reached": st.cap_reached,
        "potential_before": potential(&st.before),
        "potential_after": potential(&st.after),
        "max_abs_vel": rat(&st.max_abs_vel),
        "set": points(&st.set),
        "pivots": points(&st.aux.nodes[st.aux.set_len..]),
        "aux_edges": st.aux.edges,
        "roots": st.plan.roots,
        "moves": moves,
    })
}

pub fn round(trace: &RoundTrace, l: usize, out: &[Point]) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "round",
        "delta": rat(&trace.delta),
        "delta_star": rat(&trace.delta_star),
        "numerator_bound": 2 * l + 2,
        "steps": trace.steps.len(),
        "size": out.len(),
        "points": points(out),
    })
}

pub fn trace(trace: &RoundTrace) -> Value {
    json!({
        "schema": SCHEMA,
        "delta": rat(&trace.delta),
        "delta_star": rat(&trace.delta_star),
        "steps": trace.steps.iter().map(step).collect::<Vec<_>>(),
    })
}

fn class(c: EdgeClass) -> &'static str {
    match c {
        EdgeClass::Positive => "positive",
        EdgeClass::Neutral => "neutral",
        EdgeClass::Negative => "negative",
    }
}

pub fn certificate(c: &TranslationCertificate, delta_in: &Rat, delta_out: &Rat) -> Value {
    let edges: Vec<Value> = c
        .edges
        .iter()
        .map(|e| {
            json!({
                "edge": [e.u, e.v],
                "before": e.before,
                "after": e.after,
                "classes": e.classes.map(|(a, b)| [class(a), class(b)]),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "command": "translate",
        "direction": match c.direction { Direction::Up => "up", Direction::Down => "down" },
        "delta_in": rat(delta_in),
        "delta_out": rat(delta_out),
        "rho": rat(&c.rho),
        "input_size": c.input_size,
        "output_size": c.output_size,
        "edges": edges,
    })
}

pub fn gadget(kind: &str, g: &GadgetInstance, extra: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": "gen",
        "kind": kind,
        "n": g.n,
        "m": g.edges.len(),
        "delta": rat(&g.delta),
        "k": g.k,
        "labels": g.labels,
        "source": extra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dispersion_core::rat::rat as r;

    #[test]
    fn rationals_are_strings() {
        assert_eq!(point(&Point::on_edge(1, 0, r(1, 3))), json!({"edge": [0, 1], "lambda": "2/3"}));
        assert_eq!(rat(&r(4, 2)), json!("2/1"));
    }
}
