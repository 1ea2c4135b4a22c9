//! Seeded cross-check suites: every library route against an independent brute force.
//! Instance `i` of a suite depends only on `(seed, i)`, so results do not depend on threads.

use dispersion_core::gadgets::{gen_chordal_gadget, gen_is_gadget, split_components};
use dispersion_core::rat::{int, rat, Rat};
use dispersion_core::rounding::{critical_pairs, find_pivots, push_step, round_set, round_up_delta, spine_positions_agree};
use dispersion_core::solver::{
    brute_force_dis, brute_force_dispersion_with_limit, dis_dp, max_independent_set, solve_max_dispersion, Method,
    SolveError, SolveOptions,
};
use dispersion_core::td::{NiceTreeDecomposition, TreeDecomposition};
use dispersion_core::{Graph, Point, Space};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::random;

/// Grid limit for brute-force oracles; far above the solver's default guard.
pub const ORACLE_GRID_LIMIT: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Pipeline,
    Translation,
    Dp,
    Rounding,
    Gadgets,
    Subdivision,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Pipeline => "pipeline",
            Suite::Translation => "translation",
            Suite::Dp => "dp",
            Suite::Rounding => "rounding",
            Suite::Gadgets => "gadgets",
            Suite::Subdivision => "subdivision",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteResult {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rng_for(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64))
}

fn collect(outcomes: Vec<Result<(), String>>) -> SuiteResult {
    SuiteResult {
        checked: outcomes.len(),
        failures: outcomes.into_iter().filter_map(Result::err).collect(),
    }
}

fn brute(g: &Graph, d: &Rat) -> Result<usize, String> {
    brute_force_dispersion_with_limit(g, d, ORACLE_GRID_LIMIT).map(|r| r.0).map_err(|e| e.to_string())
}

pub fn run_suite(suite: Suite, seed: u64, count: usize) -> SuiteResult {
    match suite {
        Suite::Pipeline => pipeline(seed, count),
        Suite::Translation => translation(seed, count),
        Suite::Dp => dp(seed, count),
        Suite::Rounding => rounding(seed, count),
        Suite::Gadgets => gadgets(seed, count),
        Suite::Subdivision => subdivision(),
    }
}

/// Pipeline against brute force, `n <= 7`, `m <= 9`, `δ = a/b` with `a <= 5`, `b <= 4`.
pub fn pipeline(seed: u64, count: usize) -> SuiteResult {
    collect((0..count).into_par_iter().map(|i| pipeline_case(&mut rng_for(seed, i))).collect())
}

fn pipeline_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = random::small_graph(rng, 1, 7, 9);
    let d = random::delta(rng, 5, 4, None);
    let opts = SolveOptions { method: Method::Dp, ..SolveOptions::default() };
    let r = solve_max_dispersion(&g, &d, &opts).map_err(|e| e.to_string())?;
    let want = brute(&g, &d)?;
    let tag = || format!("edges {:?} at {d}", g.edges());
    if r.optimum != want {
        return Err(format!("{}: pipeline {} vs brute force {want}", tag(), r.optimum));
    }
    if r.witness.len() != r.optimum {
        return Err(format!("{}: witness has {} points", tag(), r.witness.len()));
    }
    Space::new(&g)
        .validate_dispersed(&r.witness.points, &d)
        .map_err(|v| format!("{}: witness pair at distance {}", tag(), v.distance))
}

/// `disp_δ = disp_{δ/(δ+1)} - m` by brute force, `n <= 6`, `δ = a/b <= 3` with `a <= 4`, `b <= 5`.
pub fn translation(seed: u64, count: usize) -> SuiteResult {
    collect((0..count).into_par_iter().map(|i| translation_case(&mut rng_for(seed, i))).collect())
}

fn translation_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = random::small_graph(rng, 1, 6, 15);
    let d = random::delta(rng, 4, 5, Some(3));
    let lo = brute(&g, &d)?;
    let up = &d / (&d + int(1));
    let hi = brute(&g, &up)?;
    if lo + g.m() != hi {
        return Err(format!("edges {:?}: disp at {d} is {lo}, at {up} is {hi}", g.edges()));
    }
    Ok(())
}

/// Decomposition DP against exhaustive search, `n <= 12`, `d <= 6`, min-fill decompositions.
pub fn dp(seed: u64, count: usize) -> SuiteResult {
    collect((0..count).into_par_iter().map(|i| dp_case(&mut rng_for(seed, i))).collect())
}

fn dp_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(1..=12);
    let extra = rng.gen_range(0..=n);
    let g = random::connected_graph(rng, n, (n - 1 + extra).min(n * (n - 1) / 2));
    let d = rng.gen_range(1..=6);
    let td = TreeDecomposition::min_fill(&g);
    td.validate(&g).map_err(|e| e.to_string())?;
    let (k, sel) = dis_dp(&g, d, &NiceTreeDecomposition::from_td(&td));
    let (want, _) = brute_force_dis(&g, d).map_err(|e| e.to_string())?;
    if k != want || sel.len() != k {
        return Err(format!("edges {:?} at d={d}: dp {k} vs brute force {want}", g.edges()));
    }
    let dist = g.all_pairs_distances();
    if sel.iter().enumerate().any(|(i, &a)| sel[i + 1..].iter().any(|&b| dist.get(a, b) < d)) {
        return Err(format!("edges {:?} at d={d}: selection not scattered", g.edges()));
    }
    Ok(())
}

/// Source graphs with `n <= 6`: both gadget optima equal the independence number.
pub fn gadgets(seed: u64, count: usize) -> SuiteResult {
    collect((0..count).into_par_iter().map(|i| gadget_case(&mut rng_for(seed, i))).collect())
}

/// Sum of component optima; brute force when the DP is over budget.
pub fn solve_disconnected(n: usize, edges: &[(usize, usize)], delta: &Rat) -> Result<usize, String> {
    let mut total = 0;
    for (g, _) in split_components(n, edges) {
        total += match solve_max_dispersion(&g, delta, &SolveOptions::default()) {
            Ok(r) => r.optimum,
            Err(SolveError::StateBudget { .. }) => {
                brute_force_dispersion_with_limit(&g, delta, 100_000).map_err(|e| e.to_string())?.0
            }
            Err(e) => return Err(e.to_string()),
        };
    }
    Ok(total)
}

fn gadget_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = random::small_graph(rng, 1, 6, 15);
    let alpha = max_independent_set(g.n(), g.edges()).len();
    for (name, gd) in [
        ("independent set", gen_is_gadget(&g, &rat(5, 2))),
        ("chordal", gen_chordal_gadget(&g, &int(4))),
    ] {
        let gd = gd.map_err(|e| e.to_string())?;
        let got = solve_disconnected(gd.n, &gd.edges, &gd.delta)?;
        if got != alpha {
            return Err(format!("{name} gadget of {:?}: {got} vs alpha {alpha}", g.edges()));
        }
    }
    Ok(())
}

/// `disp_δ(g) = disp_{cδ}(g_c)` for `c` in {2, 3} on every connected graph with `n <= 5`.
pub fn subdivision() -> SuiteResult {
    let ds = [rat(1, 3), rat(1, 2), rat(2, 3), int(1), rat(4, 3), rat(3, 2), int(2), rat(5, 2), int(3), rat(7, 2)];
    let graphs: Vec<Graph> = (1..=5).flat_map(random::connected_up_to_iso).collect();
    let cases: Vec<(usize, usize)> = (0..graphs.len()).flat_map(|i| (0..ds.len()).map(move |j| (i, j))).collect();
    let opts = SolveOptions { method: Method::Dp, ..SolveOptions::default() };
    collect(
        cases
            .par_iter()
            .map(|&(i, j)| {
                let (g, d) = (&graphs[i], &ds[j]);
                let base = solve_max_dispersion(g, d, &opts).map_err(|e| e.to_string())?.optimum;
                if base != brute(g, d)? {
                    return Err(format!("edges {:?} at {d}: pipeline disagrees with brute force", g.edges()));
                }
                for c in [2usize, 3] {
                    let sub = g.subdivide(c);
                    let cd = d * int(c as i64);
                    let got = solve_max_dispersion(&sub.graph, &cd, &opts).map_err(|e| e.to_string())?.optimum;
                    if got != base {
                        return Err(format!("edges {:?}, c={c}, delta {d}: {got} vs {base}", g.edges()));
                    }
                }
                Ok(())
            })
            .collect(),
    )
}

/// Runs the rounding engine on dispersed sets of random instances and checks every step.
/// From 100 runs on, each of the three events must fire somewhere in the suite.
pub fn rounding(seed: u64, count: usize) -> SuiteResult {
    let runs: Vec<Result<Vec<u8>, String>> =
        (0..count).into_par_iter().map(|i| rounding_case(&mut rng_for(seed, i), i)).collect();
    let mut fired = [false; 4];
    for e in runs.iter().flatten().flatten() {
        fired[*e as usize] = true;
    }
    let mut r = collect(runs.into_iter().map(|r| r.map(drop)).collect());
    if count >= 100 {
        r.failures.extend((1..=3).filter(|&e| !fired[e]).map(|e| format!("event {e} never fired")));
    }
    r
}

fn rounding_case(rng: &mut ChaCha8Rng, i: usize) -> Result<Vec<u8>, String> {
    loop {
        let g = random::small_graph(rng, 2, 6, 8);
        let l = g.longest_path_bound(None);
        let den = rng.gen_range(2..=17i64);
        let d = rat(rng.gen_range(1..=3 * den), den);
        if round_up_delta(&d, l).is_none() {
            continue;
        }
        let s = if i % 4 == 0 {
            match brute_force_dispersion_with_limit(&g, &d, 400) {
                Ok((_, w)) => w.points,
                Err(_) => continue,
            }
        } else {
            let fine = den as usize * rng.gen_range(1..=4);
            packed_set(rng, &g, &d, fine, i % 3 != 0)
        };
        return check_rounding(&g, &s, &d, l).map_err(|e| format!("edges {:?}, delta {d}, set {s:?}: {e}", g.edges()));
    }
}

/// Greedy maximal `δ`-dispersed subset of a fine grid, optionally swept outward from a grid point.
pub fn packed_set(rng: &mut impl Rng, g: &Graph, delta: &Rat, fine: usize, sweep: bool) -> Vec<Point> {
    let sp = Space::new(g);
    let mut cands = sp.grid_points(fine);
    cands.shuffle(rng);
    if sweep {
        let src = cands[0].clone();
        cands.sort_by_key(|c| sp.distance(&src, c));
    }
    let mut s: Vec<Point> = Vec::new();
    for c in cands {
        if s.iter().all(|p| sp.distance(p, &c) >= *delta) {
            s.push(c);
        }
    }
    s
}

/// Checks the engine's output and every recorded step: size, dispersion at the rounded
/// distance, preserved critical pairs and pivots, decreasing potential, step bound,
/// velocities below `b/2` and spine positions. Returns the events that fired.
pub fn check_rounding(g: &Graph, s: &[Point], delta: &Rat, l: usize) -> Result<Vec<u8>, String> {
    let sp = Space::new(g);
    let target = round_up_delta(delta, l).ok_or("no rounded distance")?.delta_star;
    let (out, trace) = round_set(&sp, s, delta, l).map_err(|e| e.to_string())?;
    let mut uniq = s.to_vec();
    uniq.sort();
    uniq.dedup();
    if out.len() != uniq.len() {
        return Err(format!("size {} became {}", uniq.len(), out.len()));
    }
    if !sp.is_dispersed(&out, &target) {
        return Err("output not dispersed at the rounded distance".into());
    }
    let budget = 2 * uniq.len() * uniq.len() + g.n() * g.n();
    if trace.steps.len() > budget {
        return Err(format!("{} steps exceed {budget}", trace.steps.len()));
    }
    let mut events = Vec::new();
    for (i, st) in trace.steps.iter().enumerate() {
        let next = push_step(&st.aux, &st.plan, &st.epsilon);
        let nd = &st.delta + &st.epsilon;
        for (p, q) in critical_pairs(&sp, &st.set, &st.delta) {
            if sp.distance(&next[p], &next[q]) != nd {
                return Err(format!("step {i}: critical pair {p},{q} lost"));
            }
        }
        let after: Vec<Point> = find_pivots(&sp, &next, &nd).into_iter().map(|r| r.pivot).collect();
        if let Some(r) = find_pivots(&sp, &st.set, &st.delta).into_iter().find(|r| !after.contains(&r.pivot)) {
            return Err(format!("step {i}: pivot {} lost", r.pivot));
        }
        if i + 1 < trace.steps.len() && st.after.total() >= st.before.total() {
            return Err(format!("step {i}: potential {} -> {}", st.before.total(), st.after.total()));
        }
        if st.max_abs_vel.clone() * int(2) >= Rat::from_integer(st.delta.denom().clone()) {
            return Err(format!("step {i}: velocity {} not below b/2", st.max_abs_vel));
        }
        if !spine_positions_agree(&sp, &st.aux, &st.plan, &st.delta) {
            return Err(format!("step {i}: spine positions disagree with the plan"));
        }
        events.extend(st.events.iter().copied());
    }
    events.sort_unstable();
    events.dedup();
    Ok(events)
}
