//! Rounding a δ-dispersed set up to δ*, the least rational ≥ δ with numerator at most
//! `2L + 2`, by repeatedly pushing points apart along spines of critical pairs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::Vertex;
use crate::metric::{DirectionError, Point, Space};
use crate::rat::{fracp, half, int, one, zero, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedDelta {
    pub delta_star: Rat,
    pub numerator_bound: usize,
}

/// The least `a/b >= delta` with `a <= 2L + 2`, by Stern–Brocot descent towards `1/delta`.
/// `None` when `delta > 2L + 2`, where no such fraction exists.
pub fn round_up_delta(delta: &Rat, l: usize) -> Option<RoundedDelta> {
    assert!(delta.is_positive(), "delta must be positive");
    let bound = 2 * l + 2;
    let nb = BigInt::from(bound);
    let done = |r: Rat| Some(RoundedDelta { delta_star: r, numerator_bound: bound });
    if *delta.numer() <= nb {
        return done(delta.clone());
    }
    if *delta > Rat::from_integer(nb.clone()) {
        return None;
    }
    // largest p/q <= x = 1/delta with q <= bound
    let (x, y) = (delta.denom().clone(), delta.numer().clone());
    let (mut lp, mut lq) = (BigInt::zero(), BigInt::one());
    let (mut hp, mut hq) = (BigInt::one(), BigInt::zero());
    loop {
        let mut moved = false;
        // lo += k*hi while lo stays <= x
        let gap = &y * &hp - &x * &hq;
        let slack = &x * &lq - &y * &lp;
        let mut k = slack.div_floor(&gap);
        if !hq.is_zero() {
            k = k.min((&nb - &lq).div_floor(&hq));
        }
        if k.is_positive() {
            lp += &k * &hp;
            lq += &k * &hq;
            moved = true;
        }
        // hi += k*lo while hi stays > x
        let slack = &x * &lq - &y * &lp;
        if slack.is_zero() {
            break;
        }
        let gap = &y * &hp - &x * &hq;
        let mut k = (gap - BigInt::one()).div_floor(&slack);
        k = k.min((&nb - &hq).div_floor(&lq));
        if k.is_positive() {
            hp += &k * &lp;
            hq += &k * &lq;
            moved = true;
        }
        if !moved {
            break;
        }
    }
    done(Rat::new(lq, lp))
}

/// `fracp(1/2 + λ + xδ) − 1/2`.
pub fn lf(lambda: &Rat, x: &Rat, delta: &Rat) -> Rat {
    fracp(&(half() + lambda + x * delta)) - half()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotRecord {
    pub pivot: Point,
    /// Index pairs into the point set.
    pub witnesses: Vec<(usize, usize)>,
}

pub fn critical_pairs(space: &Space, s: &[Point], delta: &Rat) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if space.distance(&s[i], &s[j]) == *delta {
                out.push((i, j));
            }
        }
    }
    out
}

/// Half-integral points at distance exactly δ/2 from both members of a critical pair.
pub fn find_pivots(space: &Space, s: &[Point], delta: &Rat) -> Vec<PivotRecord> {
    let crit = critical_pairs(space, s, delta);
    let h = delta * half();
    let mut out = Vec::new();
    if crit.is_empty() {
        return out;
    }
    for r in space.half_integral_points() {
        let d: Vec<Rat> = s.iter().map(|p| space.distance(p, &r)).collect();
        let witnesses: Vec<_> = crit.iter().copied().filter(|&(i, j)| d[i] == h && d[j] == h).collect();
        if !witnesses.is_empty() {
            out.push(PivotRecord { pivot: r, witnesses });
        }
    }
    out
}

/// Nodes `0..set_len` are the set's points, the rest are pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    pub nodes: Vec<Point>,
    pub set_len: usize,
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
}

impl AuxiliaryGraph {
    pub fn is_pivot(&self, i: usize) -> bool {
        i >= self.set_len
    }
}

pub fn build_auxiliary_graph(
    space: &Space,
    s: &[Point],
    delta: &Rat,
    pivots: &[PivotRecord],
) -> AuxiliaryGraph {
    let mut nodes = s.to_vec();
    let mut edges = Vec::new();
    let mut witnessing = Vec::new();
    for (k, rec) in pivots.iter().enumerate() {
        let r = s.len() + k;
        nodes.push(rec.pivot.clone());
        for &(i, j) in &rec.witnesses {
            edges.push((i, r));
            edges.push((j, r));
            witnessing.push((i, j));
        }
    }
    for (i, j) in critical_pairs(space, s, delta) {
        if !witnessing.contains(&(i, j)) {
            edges.push((i, j));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    AuxiliaryGraph { nodes, set_len: s.len(), edges, adj }
}

/// Movement of a non-root node reached from `parent`: it slides along its edge, away from
/// `dir` (the endpoint towards the parent) at signed speed `sgn * vel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub parent: usize,
    pub vel: Rat,
    pub sgn: i8,
    pub dir: Vertex,
    pub anchor: Vertex,
}

impl Move {
    /// Speed away from `dir`, as `(dir, sgn * vel)` normalized to the lower endpoint.
    /// Two moves with equal displacement agree even when their `(vel, sgn)` differ.
    pub fn displacement(&self) -> (Vertex, Rat) {
        let speed = &self.vel * int(self.sgn as i64);
        if self.dir < self.anchor {
            (self.dir, speed)
        } else {
            (self.anchor, -speed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovementPlan {
    pub roots: Vec<usize>,
    /// `None` for roots.
    pub moves: Vec<Option<Move>>,
}

impl MovementPlan {
    pub fn vel(&self, i: usize) -> Rat {
        self.moves[i].as_ref().map_or_else(zero, |m| m.vel.clone())
    }

    /// Aux-graph path from a root to `i`.
    pub fn spine(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut cur = i;
        while let Some(m) = &self.moves[cur] {
            cur = m.parent;
            out.push(cur);
        }
        out.reverse();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundingError {
    NotDispersed,
    DeltaTooLarge,
    /// Two spines prescribe different movements for a node.
    PlanConflict { node: usize },
    Direction { node: usize, err: DirectionError },
    NoProgress,
    StepBudget { budget: usize },
    Invariant(&'static str),
}

impl fmt::Display for RoundingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundingError::NotDispersed => write!(f, "input set is not dispersed at the given delta"),
            RoundingError::DeltaTooLarge => write!(f, "delta exceeds 2L+2; no rounding target exists"),
            RoundingError::PlanConflict { node } => {
                write!(f, "internal: spines disagree on the movement of node {node}")
            }
            RoundingError::Direction { node, err } => write!(f, "internal: node {node}: {err}"),
            RoundingError::NoProgress => write!(f, "internal: push step made no progress"),
            RoundingError::StepBudget { budget } => {
                write!(f, "internal: step budget {budget} exceeded")
            }
            RoundingError::Invariant(what) => write!(f, "internal: invariant violated: {what}"),
        }
    }
}

fn predict(
    space: &Space,
    aux: &AuxiliaryGraph,
    moves: &[Option<Move>],
    x: usize,
    p: usize,
) -> Result<Move, RoundingError> {
    let (dir, anchor) = space
        .direction(&aux.nodes[p], &aux.nodes[x], false)
        .map_err(|err| RoundingError::Direction { node: p, err })?;
    match &moves[x] {
        None => {
            let vel = if aux.is_pivot(x) { half() } else { one() };
            Ok(Move { parent: x, vel, sgn: 1, dir, anchor })
        }
        Some(mx) => {
            let back = space
                .direction(&aux.nodes[x], &aux.nodes[mx.parent], false)
                .map_err(|err| RoundingError::Direction { node: x, err })?
                .0;
            let fwd = space
                .direction(&aux.nodes[x], &aux.nodes[p], false)
                .map_err(|err| RoundingError::Direction { node: x, err })?
                .0;
            let flip: i8 = if back != fwd { 1 } else { -1 };
            let sgn = flip * mx.sgn;
            let vel = &mx.vel + int(sgn as i64);
            Ok(Move { parent: x, vel, sgn, dir, anchor })
        }
    }
}

/// Roots are the half-integral nodes plus the least point of each component without one;
/// the rest is reached breadth-first. Every other aux edge is re-derived as a spine step and
/// must prescribe the same displacement.
pub fn build_movement_plan(space: &Space, aux: &AuxiliaryGraph) -> Result<MovementPlan, RoundingError> {
    let k = aux.nodes.len();
    let mut comp = vec![usize::MAX; k];
    let mut comps = 0;
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut q = VecDeque::from([s]);
        comp[s] = comps;
        while let Some(x) = q.pop_front() {
            for &y in &aux.adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = comps;
                    q.push_back(y);
                }
            }
        }
        comps += 1;
    }
    let mut is_root: Vec<bool> = aux.nodes.iter().map(|p| p.is_half_integral()).collect();
    for c in 0..comps {
        let members: Vec<usize> = (0..k).filter(|&i| comp[i] == c).collect();
        if !members.iter().any(|&i| is_root[i]) {
            let rep = *members.iter().min_by(|&&a, &&b| aux.nodes[a].cmp(&aux.nodes[b])).unwrap();
            is_root[rep] = true;
        }
    }
    let roots: Vec<usize> = (0..k).filter(|&i| is_root[i]).collect();
    let mut moves: Vec<Option<Move>> = vec![None; k];
    let mut seen = is_root.clone();
    let mut q: VecDeque<usize> = roots.iter().copied().collect();
    while let Some(x) = q.pop_front() {
        for &p in &aux.adj[x] {
            if seen[p] {
                continue;
            }
            seen[p] = true;
            moves[p] = Some(predict(space, aux, &moves, x, p)?);
            q.push_back(p);
        }
    }
    let plan = MovementPlan { roots, moves };
    for p in 0..k {
        let Some(mp) = &plan.moves[p] else { continue };
        for &x in &aux.adj[p] {
            if x == mp.parent || plan.spine(x).contains(&p) {
                continue;
            }
            let alt = predict(space, aux, &plan.moves, x, p)?;
            if alt.displacement() != mp.displacement() {
                return Err(RoundingError::PlanConflict { node: p });
            }
        }
    }
    Ok(plan)
}

/// Linear function `c0 + c1 * ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Lin {
    c0: Rat,
    c1: Rat,
}

/// A point whose canonical edge position moves at `slope` per unit ε.
#[derive(Debug, Clone)]
struct Moving {
    at: Point,
    slope: Rat,
}

impl Moving {
    fn exits(&self) -> Vec<(Vertex, Lin)> {
        match &self.at {
            Point::Vertex(x) => vec![(*x, Lin { c0: zero(), c1: zero() })],
            Point::Interior { u, v, lambda } => vec![
                (*u, Lin { c0: lambda.clone(), c1: self.slope.clone() }),
                (*v, Lin { c0: one() - lambda, c1: -self.slope.clone() }),
            ],
        }
    }

    fn at(&self, eps: &Rat) -> Point {
        match &self.at {
            Point::Vertex(_) => self.at.clone(),
            Point::Interior { u, v, lambda } => Point::on_edge(*u, *v, lambda + &self.slope * eps),
        }
    }
}

/// Candidate shortest routes between two moving points, valid while neither changes edge.
fn routes(space: &Space, a: &Moving, b: &Moving) -> Vec<Lin> {
    if let (Point::Interior { u, v, lambda: la }, Point::Interior { u: u2, v: v2, lambda: lb }) =
        (&a.at, &b.at)
    {
        if (u, v) == (u2, v2) {
            return vec![if la > lb {
                Lin { c0: la - lb, c1: &a.slope - &b.slope }
            } else {
                Lin { c0: lb - la, c1: &b.slope - &a.slope }
            }];
        }
    }
    let mut out = Vec::new();
    for (x, fa) in a.exits() {
        for (y, fb) in b.exits() {
            out.push(Lin { c0: &fa.c0 + &fb.c0 + space.vdist(x, y), c1: &fa.c1 + &fb.c1 });
        }
    }
    out
}

fn motions(aux: &AuxiliaryGraph, plan: &MovementPlan) -> Vec<Moving> {
    (0..aux.set_len)
        .map(|i| {
            let at = aux.nodes[i].clone();
            let slope = match (&plan.moves[i], &at) {
                (Some(m), Point::Interior { u, .. }) => {
                    let speed = &m.vel * int(m.sgn as i64);
                    if m.dir == *u {
                        speed
                    } else {
                        -speed
                    }
                }
                _ => zero(),
            };
            Moving { at, slope }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonChoice {
    pub epsilon: Rat,
    /// Subset of `{1, 2, 3}`, ascending.
    pub events: Vec<u8>,
    pub cap_reached: bool,
}

fn positive_root(f: &Lin, target: &Lin) -> Option<Rat> {
    // f(ε) = target(ε)
    let slope = &f.c1 - &target.c1;
    if slope.is_zero() {
        return None;
    }
    let e = (&target.c0 - &f.c0) / slope;
    e.is_positive().then_some(e)
}

/// ε*: the first ε at which an uncritical pair becomes critical, a point becomes
/// half-integral, a new pivot appears, or δ + ε reaches δ*.
pub fn compute_epsilon_star(
    space: &Space,
    aux: &AuxiliaryGraph,
    plan: &MovementPlan,
    delta: &Rat,
    delta_star: &Rat,
) -> Result<EpsilonChoice, RoundingError> {
    let cap = delta_star - delta;
    if !cap.is_positive() {
        return Ok(EpsilonChoice { epsilon: zero(), events: Vec::new(), cap_reached: true });
    }
    let mv = motions(aux, plan);
    let s = &aux.nodes[..aux.set_len];
    let mut best = cap.clone();
    let grow = Lin { c0: delta.clone(), c1: one() };
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if space.distance(&s[i], &s[j]) == *delta {
                continue;
            }
            for f in routes(space, &mv[i], &mv[j]) {
                if let Some(e) = positive_root(&f, &grow) {
                    best = best.min(e);
                }
            }
        }
    }
    for m in &mv {
        if let Point::Interior { lambda, .. } = &m.at {
            if m.slope.is_zero() {
                continue;
            }
            for t in [zero(), half(), one()] {
                let e = (t - lambda) / &m.slope;
                if e.is_positive() {
                    best = best.min(e);
                }
            }
        }
    }
    let half_grow = Lin { c0: delta * half(), c1: half() };
    let pivots_now: Vec<Point> = aux.nodes[aux.set_len..].to_vec();
    let mut cands: Vec<(Rat, Point)> = Vec::new();
    for r in space.half_integral_points() {
        if pivots_now.contains(&r) {
            continue;
        }
        let fixed = Moving { at: r.clone(), slope: zero() };
        for m in &mv {
            for f in routes(space, m, &fixed) {
                if let Some(e) = positive_root(&f, &half_grow) {
                    if e < best {
                        cands.push((e, r.clone()));
                    }
                }
            }
        }
    }
    cands.sort();
    cands.dedup();
    for (e, r) in cands {
        if e >= best {
            break;
        }
        let target = (delta + &e) * half();
        let hits = mv.iter().filter(|m| space.distance(&m.at(&e), &r) == target).count();
        if hits >= 2 {
            best = e;
            break;
        }
    }
    let eps = best;
    let moved: Vec<Point> = mv.iter().map(|m| m.at(&eps)).collect();
    let nd = delta + &eps;
    let mut events = Vec::new();
    let became_critical = (0..s.len()).any(|i| {
        (i + 1..s.len()).any(|j| {
            space.distance(&s[i], &s[j]) != *delta && space.distance(&moved[i], &moved[j]) == nd
        })
    });
    if became_critical {
        events.push(1);
    }
    if (0..s.len()).any(|i| !s[i].is_half_integral() && moved[i].is_half_integral()) {
        events.push(2);
    }
    let new_pivot = find_pivots(space, &moved, &nd).iter().any(|rec| !pivots_now.contains(&rec.pivot));
    if new_pivot {
        events.push(3);
    }
    let cap_reached = eps == cap;
    if events.is_empty() && !cap_reached {
        return Err(RoundingError::NoProgress);
    }
    Ok(EpsilonChoice { epsilon: eps, events, cap_reached })
}

/// Moves every non-root point of the set by `sgn * vel * epsilon` away from its `dir`.
pub fn push_step(aux: &AuxiliaryGraph, plan: &MovementPlan, epsilon: &Rat) -> Vec<Point> {
    motions(aux, plan).iter().map(|m| m.at(epsilon)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    pub uncritical_pairs: usize,
    pub non_half_integral: usize,
    pub non_pivot_half_integral: usize,
}

impl Potential {
    pub fn total(&self) -> usize {
        self.uncritical_pairs + self.non_half_integral + self.non_pivot_half_integral
    }
}

pub fn potential(space: &Space, s: &[Point], delta: &Rat) -> Potential {
    let pairs = s.len() * s.len().saturating_sub(1) / 2;
    Potential {
        uncritical_pairs: pairs - critical_pairs(space, s, delta).len(),
        non_half_integral: s.iter().filter(|p| !p.is_half_integral()).count(),
        non_pivot_half_integral: space.g.n() + space.g.m() - find_pivots(space, s, delta).len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundStep {
    pub delta: Rat,
    pub set: Vec<Point>,
    pub epsilon: Rat,
    pub events: Vec<u8>,
    pub cap_reached: bool,
    pub before: Potential,
    pub after: Potential,
    pub max_abs_vel: Rat,
    pub aux: AuxiliaryGraph,
    pub plan: MovementPlan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrace {
    pub delta: Rat,
    pub delta_star: Rat,
    pub steps: Vec<RoundStep>,
}

/// Pushes a δ-dispersed set to a δ*-dispersed set of the same size.
pub fn round_set(
    space: &Space,
    s: &[Point],
    delta: &Rat,
    l: usize,
) -> Result<(Vec<Point>, RoundTrace), RoundingError> {
    let target = round_up_delta(delta, l).ok_or(RoundingError::DeltaTooLarge)?.delta_star;
    round_set_to(space, s, delta, &target)
}

/// Same as [`round_set`] with an explicit target `delta_star`.
pub fn round_set_to(
    space: &Space,
    s: &[Point],
    delta: &Rat,
    delta_star: &Rat,
) -> Result<(Vec<Point>, RoundTrace), RoundingError> {
    if !space.is_dispersed(s, delta) {
        return Err(RoundingError::NotDispersed);
    }
    let mut cur: Vec<Point> = s.to_vec();
    cur.sort();
    cur.dedup();
    let n = space.g.n();
    let budget = 2 * cur.len() * cur.len() + n * n;
    let mut d = delta.clone();
    let mut steps = Vec::new();
    while d < *delta_star {
        if steps.len() >= budget.max(1) {
            return Err(RoundingError::StepBudget { budget });
        }
        let pivots = find_pivots(space, &cur, &d);
        let aux = build_auxiliary_graph(space, &cur, &d, &pivots);
        let plan = build_movement_plan(space, &aux)?;
        let choice = compute_epsilon_star(space, &aux, &plan, &d, delta_star)?;
        let next = push_step(&aux, &plan, &choice.epsilon);
        let nd = &d + &choice.epsilon;
        if !space.is_dispersed(&next, &nd) {
            return Err(RoundingError::Invariant("pushed set is not dispersed"));
        }
        for (i, j) in critical_pairs(space, &cur, &d) {
            if space.distance(&next[i], &next[j]) != nd {
                return Err(RoundingError::Invariant("critical pair lost"));
            }
        }
        let after_pivots: Vec<Point> = find_pivots(space, &next, &nd).into_iter().map(|r| r.pivot).collect();
        if pivots.iter().any(|r| !after_pivots.contains(&r.pivot)) {
            return Err(RoundingError::Invariant("pivot lost"));
        }
        let before = potential(space, &cur, &d);
        let after = potential(space, &next, &nd);
        if nd < *delta_star && after.total() >= before.total() {
            return Err(RoundingError::Invariant("potential did not decrease"));
        }
        let max_abs_vel = (0..aux.nodes.len()).map(|i| plan.vel(i).abs()).max().unwrap_or_else(zero);
        steps.push(RoundStep {
            delta: d.clone(),
            set: cur,
            epsilon: choice.epsilon,
            events: choice.events,
            cap_reached: choice.cap_reached,
            before,
            after,
            max_abs_vel,
            aux,
            plan,
        });
        cur = next;
        cur.sort();
        d = nd;
    }
    Ok((cur, RoundTrace { delta: delta.clone(), delta_star: delta_star.clone(), steps }))
}

/// Checks the closed-form spine positions against a plan: every non-root node `p_i` sits at
/// distance `1/2 + sgn·lf(λ₀, vel)` from its `dir`, where `1/2 + λ₀` is the root's distance
/// from the far endpoint relative to the spine's first step.
pub fn spine_positions_agree(space: &Space, aux: &AuxiliaryGraph, plan: &MovementPlan, delta: &Rat) -> bool {
    for p in 0..aux.nodes.len() {
        let Some(m) = &plan.moves[p] else { continue };
        let spine = plan.spine(p);
        let (r, p1) = (spine[0], spine[1]);
        let Ok((_, far)) = space.direction(&aux.nodes[r], &aux.nodes[p1], true) else {
            return false;
        };
        let from_far = match &aux.nodes[r] {
            Point::Vertex(_) => one(),
            other => {
                let (u, v) = other.edge().unwrap();
                let near = if u == far { v } else { u };
                other.position_from(far, near).unwrap()
            }
        };
        let lambda0 = fracp(&from_far) - half();
        let expect = half() + int(m.sgn as i64) * lf(&lambda0, &m.vel, delta);
        let Some(actual) = aux.nodes[p].position_from(m.dir, m.anchor) else {
            return false;
        };
        if actual != expect {
            return false;
        }
    }
    true
}

/// Denominator of a rational as `usize`, for velocity-bound checks.
pub fn denominator(r: &Rat) -> Option<usize> {
    r.denom().to_usize()
}
