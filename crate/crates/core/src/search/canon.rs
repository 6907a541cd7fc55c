//! Area over the sum of squared side lengths, and a pattern search that
//! maximizes it without changing the side count.

use super::anneal::SearchOutcome;
use super::config::{angles_to_scene, AngleConfig};
use crate::geom::{to_f64, Rat};
use crate::union::{union_boundary, AnnotatedPolygon};

/// `area / sum(len^2)`, exact. Invariant under similarities.
pub fn canonical_score_exact(p: &AnnotatedPolygon) -> Rat {
    p.area() / p.sum_len_sq()
}

pub fn canonical_score(p: &AnnotatedPolygon) -> f64 {
    to_f64(&canonical_score_exact(p))
}

#[derive(Clone, Debug)]
pub struct CanonOptions {
    /// Exact evaluations allowed.
    pub budget: usize,
    /// Initial multiplicative step on a single gap (log scale).
    pub step: f64,
    pub min_step: f64,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions { budget: 2000, step: 0.1, min_step: 1e-7 }
    }
}

#[derive(Clone, Debug)]
pub struct CanonOutcome {
    pub outcome: SearchOutcome,
    pub score: f64,
    /// Score after every accepted move, starting with the initial score.
    pub trace: Vec<f64>,
    pub evaluations: usize,
}

fn evaluate(c: &AngleConfig, sides: usize) -> Option<(f64, crate::union::Scene, AnnotatedPolygon)> {
    let scene = angles_to_scene(c).ok()?;
    let p = union_boundary(&scene).into_polygon()?;
    (p.side_count() == sides).then(|| (canonical_score(&p), scene, p))
}

/// Coordinate pattern search on the gaps. Moves that change the side count
/// (or break simplicity) are rejected, so the side count is preserved and the
/// score never decreases.
pub fn optimize_canonical(start: &SearchOutcome, opts: &CanonOptions) -> CanonOutcome {
    let sides = start.sides;
    let mut best = start.clone();
    let mut score = canonical_score(&start.certificate);
    let mut trace = vec![score];
    let mut evaluations = 0;
    let mut step = opts.step;
    let m = best.config.gaps.len();
    while step >= opts.min_step && evaluations < opts.budget {
        let mut improved = false;
        for i in 0..m {
            for dir in [1.0, -1.0] {
                if evaluations >= opts.budget {
                    break;
                }
                let mut c = best.config.clone();
                c.gaps[i] *= (dir * step).exp();
                let total: f64 = c.gaps.iter().sum();
                c.gaps.iter_mut().for_each(|g| *g /= total);
                evaluations += 1;
                if let Some((s, scene, poly)) = evaluate(&c, sides) {
                    if s > score {
                        score = s;
                        trace.push(s);
                        best = SearchOutcome { config: c, scene, sides, certificate: poly, trace: best.trace.clone() };
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    CanonOutcome { outcome: best, score, trace, evaluations }
}

/// Side lengths of triangle `i` of the outcome's scene, ascending.
pub fn triangle_sides(o: &SearchOutcome, i: usize) -> [f64; 3] {
    let t = &o.scene.triangles()[i];
    let mut l = [0, 1, 2].map(|k| to_f64(&t.edge(k).len_sq()).sqrt());
    l.sort_by(f64::total_cmp);
    l
}

/// Ratio of the two closest side lengths of each triangle (at least 1).
pub fn near_isosceles_ratios(o: &SearchOutcome) -> Vec<f64> {
    (0..o.scene.len())
        .map(|i| {
            let [a, b, c] = triangle_sides(o, i);
            (b / a).min(c / b)
        })
        .collect()
}
