//! Inscribed configurations: `3n` increasing angles, triangle `i` on positions
//! `i, n + i, 2n + i`.

use std::f64::consts::TAU;

use crate::geom::{orientation, rat_from_f64, Orientation, Point, Triangle};
use crate::union::{union_boundary, Scene};

/// Starting and maximal denominator exponents for rationalized circle points.
pub const START_BITS: u32 = 40;
pub const MAX_BITS: u32 = 120;

#[derive(Clone, Debug, PartialEq)]
pub struct AngleConfig {
    pub n: usize,
    /// `3n` positive gaps; angles are their prefix sums starting from 0,
    /// scaled so the gaps add up to a full turn.
    pub gaps: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("expected {expected} gaps, got {got}")]
    GapCount { expected: usize, got: usize },
    #[error("gaps must be positive and finite")]
    BadGap,
    #[error("cyclic order lost even at {0}-bit precision")]
    PrecisionLoss(u32),
}

impl AngleConfig {
    pub fn new(n: usize, gaps: Vec<f64>) -> Result<Self, ConfigError> {
        if gaps.len() != 3 * n {
            return Err(ConfigError::GapCount { expected: 3 * n, got: gaps.len() });
        }
        if gaps.iter().any(|g| !g.is_finite() || *g <= 0.0) {
            return Err(ConfigError::BadGap);
        }
        Ok(AngleConfig { n, gaps })
    }

    /// Equally spaced points.
    pub fn regular(n: usize) -> Self {
        AngleConfig { n, gaps: vec![1.0; 3 * n] }
    }

    pub fn from_angles(n: usize, angles: &[f64]) -> Result<Self, ConfigError> {
        let m = angles.len();
        let gaps = (0..m)
            .map(|k| if k + 1 < m { angles[k + 1] - angles[k] } else { angles[0] + TAU - angles[k] })
            .collect();
        AngleConfig::new(n, gaps)
    }

    /// Angles in radians, the first one 0.
    pub fn angles(&self) -> Vec<f64> {
        let total: f64 = self.gaps.iter().sum();
        let mut acc = 0.0;
        self.gaps
            .iter()
            .map(|g| {
                let a = acc;
                acc += g / total * TAU;
                a
            })
            .collect()
    }

    /// Gaps as fractions of the full turn.
    pub fn normalized_gaps(&self) -> Vec<f64> {
        let total: f64 = self.gaps.iter().sum();
        self.gaps.iter().map(|g| g / total).collect()
    }

    pub fn min_gap(&self) -> f64 {
        self.normalized_gaps().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Circle points rounded to multiples of `2^-bits`, if they stay in strictly
    /// convex counterclockwise position.
    pub fn rational_points(&self, bits: u32) -> Option<Vec<Point>> {
        let pts: Vec<Point> = self
            .angles()
            .into_iter()
            .map(|a| Point::new(rat_from_f64(a.cos(), bits), rat_from_f64(a.sin(), bits)))
            .collect();
        let m = pts.len();
        let origin = Point::from_ints(0, 0);
        let gaps = self.normalized_gaps();
        let convex = (0..m).all(|k| {
            orientation(&pts[k], &pts[(k + 1) % m], &pts[(k + 2) % m]) == Orientation::CounterClockwise
        });
        let around = (0..m).all(|k| {
            gaps[k] >= 0.5 || orientation(&origin, &pts[k], &pts[(k + 1) % m]) == Orientation::CounterClockwise
        });
        (convex && around).then_some(pts)
    }
}

/// Rational scene of an inscribed configuration, with the precision used.
pub fn angles_to_scene_bits(c: &AngleConfig) -> Result<(Scene, u32), ConfigError> {
    let n = c.n;
    let mut bits = START_BITS;
    loop {
        if let Some(pts) = c.rational_points(bits) {
            let tris = (0..n)
                .map(|i| Triangle::new(pts[i].clone(), pts[n + i].clone(), pts[2 * n + i].clone()))
                .collect::<Result<Vec<_>, _>>();
            if let Ok(tris) = tris {
                return Ok((Scene::new(tris).expect("n >= 1"), bits));
            }
        }
        if bits >= MAX_BITS {
            return Err(ConfigError::PrecisionLoss(bits));
        }
        bits = (bits * 2).min(MAX_BITS);
    }
}

pub fn angles_to_scene(c: &AngleConfig) -> Result<Scene, ConfigError> {
    angles_to_scene_bits(c).map(|(s, _)| s)
}

/// Exact side count of the union, `-1` when it is not a simple polygon.
pub fn score(c: &AngleConfig) -> i64 {
    match angles_to_scene(c) {
        Ok(s) => union_boundary(&s).sides().map_or(-1, |m| m as i64),
        Err(_) => -1,
    }
}
