//! Simulated annealing on gap vectors, with exact certification of every
//! reported improvement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{angles_to_scene, AngleConfig};
use super::fast::{evaluate, points_from_angles};
use crate::union::{union_boundary, AnnotatedPolygon, Scene};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Fast evaluations summed over all restarts.
    pub budget: u64,
    pub restarts: usize,
    pub seed: u64,
    /// Gap pattern (repeated cyclically to length `3n`) used to seed half the starts.
    pub template: Option<Vec<f64>>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// A restart stops as soon as it certifies this many sides.
    pub stop_at: Option<usize>,
    /// Smallest allowed gap as a fraction of the full turn.
    pub min_gap: f64,
    /// Iterations without improvement before a fresh start.
    pub stale_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 200_000,
            restarts: 4,
            seed: 0,
            template: None,
            threads: None,
            stop_at: None,
            min_gap: 2e-3,
            stale_limit: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestartTrace {
    pub restart: usize,
    pub evaluations: u64,
    pub accepted: u64,
    pub reheats: u64,
    /// Certified side count, `None` if nothing simple was found.
    pub best: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub config: AngleConfig,
    pub scene: Scene,
    pub sides: usize,
    pub certificate: AnnotatedPolygon,
    pub trace: Vec<RestartTrace>,
}

impl SearchOutcome {
    /// Certifies a configuration on its own, with an empty trace.
    pub fn certify(config: AngleConfig) -> Option<SearchOutcome> {
        let scene = angles_to_scene(&config).ok()?;
        let certificate = union_boundary(&scene).into_polygon()?;
        Some(SearchOutcome { sides: certificate.side_count(), config, scene, certificate, trace: Vec::new() })
    }
}

const NEAR_SCALE: f64 = 0.05;
const NEAR_WEIGHT: f64 = 0.05;
const T_START: f64 = 2.0;
const T_END: f64 = 0.02;

/// Float objective: side count plus a small pull towards near misses, or
/// `None` for configurations that are not simple or too close to degenerate.
fn objective(n: usize, c: &AngleConfig, min_gap: f64) -> Option<(f64, i64)> {
    if c.min_gap() < min_gap {
        return None;
    }
    let e = evaluate(n, &points_from_angles(&c.angles()), NEAR_SCALE);
    if e.sides < 0 || e.min_piece < 1e-6 || e.min_cover_margin < 1e-9 {
        return None;
    }
    Some((e.sides as f64 + NEAR_WEIGHT * e.near_miss, e.sides))
}

fn certify(c: &AngleConfig) -> Option<(Scene, AnnotatedPolygon)> {
    let scene = angles_to_scene(c).ok()?;
    let poly = union_boundary(&scene).into_polygon()?;
    Some((scene, poly))
}

struct Best {
    config: AngleConfig,
    scene: Scene,
    poly: AnnotatedPolygon,
}

impl Best {
    fn beats(&self, other: &Best) -> bool {
        let (a, b) = (self.poly.side_count(), other.poly.side_count());
        a > b || (a == b && self.config.min_gap() > other.config.min_gap())
    }
}

fn start(n: usize, opts: &SearchOptions, rng: &mut ChaCha8Rng, attempt: u64) -> AngleConfig {
    let gaps = match &opts.template {
        Some(t) if attempt % 2 == 0 && !t.is_empty() => {
            (0..3 * n).map(|k| t[k % t.len()] * rng.gen_range(0.9..1.1)).collect()
        }
        _ => (0..3 * n).map(|_| rng.gen_range(0.5..1.5)).collect(),
    };
    AngleConfig { n, gaps }
}

fn run_restart(n: usize, restart: usize, evals: u64, opts: &SearchOptions) -> (RestartTrace, Option<Best>) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ restart as u64);
    let mut trace = RestartTrace { restart, evaluations: 0, accepted: 0, reheats: 0, best: None };
    let mut best: Option<Best> = None;
    let mut attempt = restart as u64;

    let consider = |c: &AngleConfig, best: &mut Option<Best>| {
        if let Some((scene, poly)) = certify(c) {
            let cand = Best { config: c.clone(), scene, poly };
            if best.as_ref().is_none_or(|b| cand.beats(b)) {
                *best = Some(cand);
            }
        }
    };

    'outer: while trace.evaluations < evals {
        // find a valid start
        let (mut cur, (mut f, mut m)) = loop {
            if trace.evaluations >= evals {
                break 'outer;
            }
            let c = start(n, opts, &mut rng, attempt);
            attempt += 1;
            trace.evaluations += 1;
            if let Some(v) = objective(n, &c, opts.min_gap) {
                break (c, v);
            }
        };
        let mut local_best = m;
        consider(&cur, &mut best);
        let first = trace.evaluations;
        let span = (evals - first).max(1) as f64;
        let mut stale = 0;
        while trace.evaluations < evals {
            let frac = (trace.evaluations - first) as f64 / span;
            let temp = T_START * (T_END / T_START).powf(frac);
            let mut next = cur.clone();
            for _ in 0..rng.gen_range(1..=2) {
                let i = rng.gen_range(0..3 * n);
                next.gaps[i] *= ((rng.gen::<f64>() - 0.5) * 0.6).exp();
            }
            trace.evaluations += 1;
            stale += 1;
            let Some((f2, m2)) = objective(n, &next, opts.min_gap) else { continue };
            if f2 >= f || rng.gen::<f64>() < ((f2 - f) / temp).exp() {
                trace.accepted += 1;
                cur = next;
                f = f2;
                m = m2;
                if m > local_best {
                    local_best = m;
                    stale = 0;
                    let before = best.as_ref().map(|b| b.poly.side_count());
                    consider(&cur, &mut best);
                    let after = best.as_ref().map(|b| b.poly.side_count());
                    if after != before && opts.stop_at.is_some_and(|s| after == Some(s)) {
                        break 'outer;
                    }
                }
            }
            if stale >= opts.stale_limit {
                trace.reheats += 1;
                continue 'outer;
            }
        }
    }
    trace.best = best.as_ref().map(|b| b.poly.side_count());
    (trace, best)
}

/// Best certified configuration over `opts.restarts` independent annealing runs.
/// Returns `None` only if no restart found any simple configuration.
pub fn search_max_sides(n: usize, opts: &SearchOptions) -> Option<SearchOutcome> {
    assert!(n >= 1);
    let restarts = opts.restarts.max(1);
    let per = (opts.budget / restarts as u64).max(1);
    let job = |r: usize| run_restart(n, r, per, opts);
    let results: Vec<(RestartTrace, Option<Best>)> = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(|| (0..restarts).into_par_iter().map(job).collect()),
        None => (0..restarts).into_par_iter().map(job).collect(),
    };
    let mut trace = Vec::new();
    let mut best: Option<Best> = None;
    for (t, b) in results {
        trace.push(t);
        if let Some(b) = b {
            if best.as_ref().is_none_or(|cur| b.beats(cur)) {
                best = Some(b);
            }
        }
    }
    best.map(|b| SearchOutcome {
        sides: b.poly.side_count(),
        config: b.config,
        scene: b.scene,
        certificate: b.poly,
        trace,
    })
}
