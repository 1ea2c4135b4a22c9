//! Maximum dispersion: round, descend, subdivide, then a distance-d independent set.

pub mod brute;
pub mod dis;
pub mod mis;

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, Vertex};
use crate::metric::{Point, PointSet, Space};
use crate::rat::{int, Rat};
use crate::rounding::round_up_delta;
use crate::td::{lift_to_subdivision, NiceTreeDecomposition, TdError, TreeDecomposition};
use crate::translate::{delta_descend_count, translate_up, TranslateError};

pub use brute::{brute_force_dispersion, brute_force_dispersion_with_limit, grid_size, BRUTE_GRID_LIMIT};
pub use dis::{brute_force_dis, dis_dp, BRUTE_DIS_LIMIT};
pub use mis::max_independent_set;

pub const DEFAULT_STATE_BUDGET: f64 = 1e8;

/// An instance too large for the requested method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub size: usize,
    pub limit: usize,
}

impl fmt::Display for SizeGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "instance size {} exceeds the limit {}", self.size, self.limit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Dp,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodUsed {
    Pipeline,
    BruteForce,
    Shortcut,
}

impl MethodUsed {
    pub fn name(self) -> &'static str {
        match self {
            MethodUsed::Pipeline => "pipeline",
            MethodUsed::BruteForce => "bruteforce",
            MethodUsed::Shortcut => "shortcut",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub method: Method,
    /// Refuse the decomposition DP when `(2d)^width` exceeds this.
    pub state_budget: f64,
    pub longest_path_hint: Option<usize>,
    /// A decomposition of the input graph, lifted to the subdivision.
    pub td: Option<TreeDecomposition>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { method: Method::Auto, state_budget: DEFAULT_STATE_BUDGET, longest_path_hint: None, td: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub delta: Rat,
    pub delta_star: Rat,
    pub descend_steps: usize,
    pub extra: usize,
    /// `2b` and `2a` for the descended `a/b`; zero when the pipeline did not run.
    pub factor: usize,
    pub d: usize,
    pub width: Option<usize>,
    pub optimum: usize,
    pub witness: PointSet,
    pub method: MethodUsed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    Guard(SizeGuard),
    /// Estimated DP states over budget.
    StateBudget { estimate: f64, budget: f64, width: usize },
    Decomposition(TdError),
    Translate(TranslateError),
    /// Parameters too large for machine integers.
    Overflow,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Guard(g) => write!(f, "{g}; use --method dp or a smaller instance"),
            SolveError::StateBudget { estimate, budget, width } => write!(
                f,
                "estimated {estimate:.3e} DP states (width {width}) exceed the budget {budget:.3e}; \
                 supply a narrower --td, raise DISPERSOL_BUDGET, or try --method brute"
            ),
            SolveError::Decomposition(e) => write!(f, "invalid tree decomposition: {e}"),
            SolveError::Translate(e) => write!(f, "internal: {e}"),
            SolveError::Overflow => write!(f, "delta too large for machine arithmetic"),
        }
    }
}

fn shortcut_report(delta: &Rat, delta_star: Rat, points: Vec<Point>) -> SolveReport {
    let witness = PointSet::new(points, delta.clone());
    SolveReport {
        delta: delta.clone(),
        delta_star,
        descend_steps: 0,
        extra: 0,
        factor: 0,
        d: 0,
        width: None,
        optimum: witness.len(),
        witness,
        method: MethodUsed::Shortcut,
    }
}

/// `disp_δ(g)` with a witness.
pub fn solve_max_dispersion(g: &Graph, delta: &Rat, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    assert!(*delta > int(0), "delta must be positive");
    if let Some(td) = &opts.td {
        td.validate(g).map_err(SolveError::Decomposition)?;
    }
    let l = g.longest_path_bound(opts.longest_path_hint);
    let Some(rounded) = round_up_delta(delta, l) else {
        // no two points are farther apart than 2L + 2
        return Ok(shortcut_report(delta, delta.clone(), alloc::vec![Point::Vertex(0)]));
    };
    let delta_star = rounded.delta_star;
    let small = brute::small_parts(delta).map(|(_, b)| grid_size(g, b) <= BRUTE_GRID_LIMIT);
    if opts.method == Method::Brute || (opts.method == Method::Auto && small == Some(true)) {
        let (optimum, mut witness) = brute_force_dispersion(g, delta).map_err(SolveError::Guard)?;
        witness.delta = delta.clone();
        return Ok(SolveReport {
            delta: delta.clone(),
            delta_star,
            descend_steps: 0,
            extra: 0,
            factor: 0,
            d: 0,
            width: None,
            optimum,
            witness,
            method: MethodUsed::BruteForce,
        });
    }
    let descent = delta_descend_count(&delta_star, g.m());
    let (a, b) = brute::small_parts(&descent.delta).ok_or(SolveError::Overflow)?;
    let sub = g.subdivide(2 * b);
    let td = match &opts.td {
        Some(td) => lift_to_subdivision(td, g, &sub),
        None => TreeDecomposition::min_fill(&sub.graph),
    };
    let nice = NiceTreeDecomposition::from_td(&td);
    let d = 2 * a;
    let estimate = (0..nice.width).fold(1.0f64, |acc, _| acc * (2 * d) as f64);
    if estimate > opts.state_budget {
        return Err(SolveError::StateBudget { estimate, budget: opts.state_budget, width: nice.width });
    }
    let (_, selected) = dis_dp(&sub.graph, d, &nice);
    let mut set = PointSet::new(map_back(g, &sub.paths, &selected), descent.delta.clone());
    for _ in 0..descent.steps {
        set = translate_up(g, &set).map_err(SolveError::Translate)?.0;
    }
    debug_assert_eq!(set.delta, delta_star);
    set.delta = delta.clone();
    Ok(SolveReport {
        delta: delta.clone(),
        delta_star,
        descend_steps: descent.steps,
        extra: descent.extra,
        factor: 2 * b,
        d,
        width: Some(nice.width),
        optimum: set.len(),
        witness: set,
        method: MethodUsed::Pipeline,
    })
}

/// Subdivision vertex `j` steps along the path of edge `{u, v}` is the point `j/c` from `u`.
fn map_back(g: &Graph, paths: &[Vec<Vertex>], selected: &[Vertex]) -> Vec<Point> {
    let c = paths.first().map_or(1, |p| p.len() - 1);
    let internal = c.saturating_sub(1);
    selected
        .iter()
        .map(|&x| {
            if x < g.n() {
                Point::Vertex(x)
            } else {
                let i = (x - g.n()) / internal;
                let j = (x - g.n()) % internal + 1;
                let (u, v) = g.edges()[i];
                Point::on_edge(u, v, Rat::new((j as i64).into(), (c as i64).into()))
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub yes: bool,
    /// `k` points when the answer is yes.
    pub certificate: Option<PointSet>,
    pub method: MethodUsed,
    pub report: Option<SolveReport>,
}

/// Is there a `δ`-dispersed set of `k` points?
pub fn decide_dispersion(g: &Graph, delta: &Rat, k: usize, opts: &SolveOptions) -> Result<Decision, SolveError> {
    let shortcut = |pts: Vec<Point>| Decision {
        yes: true,
        certificate: Some(PointSet::new(pts, delta.clone())),
        method: MethodUsed::Shortcut,
        report: None,
    };
    if k == 0 {
        return Ok(shortcut(Vec::new()));
    }
    if k == 1 {
        return Ok(shortcut(alloc::vec![Point::Vertex(0)]));
    }
    if *delta <= int(2) {
        let matching = g.greedy_maximal_matching();
        if k <= matching.len() {
            return Ok(shortcut(matching[..k].iter().map(|&(u, v)| Point::midpoint(u, v)).collect()));
        }
    }
    let report = solve_max_dispersion(g, delta, opts)?;
    let yes = report.optimum >= k;
    let certificate = yes.then(|| PointSet::new(report.witness.points[..k].to_vec(), delta.clone()));
    debug_assert!(certificate.as_ref().map_or(true, |c| Space::new(g).is_dispersed(&c.points, delta)));
    Ok(Decision { yes, certificate, method: report.method, report: Some(report) })
}
