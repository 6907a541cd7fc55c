//! Verification report for one scene, in a human-readable and a `key=value` form.

use std::fmt::Write as _;

use crate::ds::{check_inequality, ChampionReport, RegimeViolation};
use crate::search::canonical_score;
use crate::union::{union_boundary, Rejection, Scene, UnionResult};

#[derive(Clone, Debug)]
pub enum Verdict {
    Simple { sides: usize },
    Rejected(Rejection),
}

#[derive(Clone, Debug)]
pub struct Report {
    pub n: usize,
    pub verdict: Verdict,
    /// Sides per triangle, empty when rejected.
    pub contributions: Vec<usize>,
    pub inequality: Option<Result<ChampionReport, RegimeViolation>>,
    pub canonical_score: Option<f64>,
}

impl Report {
    pub fn is_simple(&self) -> bool {
        matches!(self.verdict, Verdict::Simple { .. })
    }

    pub fn key_values(&self) -> Vec<(String, String)> {
        let mut kv: Vec<(String, String)> = vec![("triangles".into(), self.n.to_string())];
        match &self.verdict {
            Verdict::Simple { sides } => {
                kv.push(("verdict".into(), "simple".into()));
                kv.push(("sides".into(), sides.to_string()));
            }
            Verdict::Rejected(r) => {
                kv.push(("verdict".into(), "rejected".into()));
                kv.push(("reason".into(), r.reason.name().into()));
                kv.push(("witness".into(), format!("{},{}", r.witness.x, r.witness.y)));
            }
        }
        if !self.contributions.is_empty() {
            let l: Vec<String> = self.contributions.iter().map(ToString::to_string).collect();
            kv.push(("contributions".into(), l.join(",")));
        }
        match &self.inequality {
            Some(Ok(c)) => {
                kv.push(("regime".into(), "ok".into()));
                kv.push(("champion".into(), c.champion.to_string()));
                kv.push(("inequality_lhs".into(), c.lhs.to_string()));
                kv.push(("inequality_rhs".into(), c.rhs.to_string()));
                kv.push(("inequality_holds".into(), c.holds.to_string()));
                kv.push(("ds_ok".into(), c.words_ok(self.n).to_string()));
                for a in &c.arcs {
                    kv.push((format!("arc{}_right", a.arc), a.right.to_string()));
                    kv.push((format!("arc{}_left", a.arc), a.left.to_string()));
                }
            }
            Some(Err(e)) => kv.push(("regime".into(), format!("violated: {e}"))),
            None => {}
        }
        if let Some(s) = self.canonical_score {
            kv.push(("canonical_score".into(), format!("{s:.10}")));
        }
        kv
    }

    pub fn to_key_values(&self) -> String {
        self.key_values().into_iter().fold(String::new(), |mut out, (k, v)| {
            writeln!(out, "{k}={v}").unwrap();
            out
        })
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        match &self.verdict {
            Verdict::Simple { sides } => {
                writeln!(out, "Union of {} triangles is a simple polygon with {} sides.", self.n, sides).unwrap()
            }
            Verdict::Rejected(r) => writeln!(
                out,
                "Union of {} triangles is not a simple polygon: {} at ({}, {}).",
                self.n, r.reason, r.witness.x, r.witness.y
            )
            .unwrap(),
        }
        if !self.contributions.is_empty() {
            let l: Vec<String> = self.contributions.iter().map(ToString::to_string).collect();
            writeln!(out, "Sides per triangle: {}", l.join(" ")).unwrap();
        }
        match &self.inequality {
            Some(Ok(c)) => {
                writeln!(
                    out,
                    "Weighted count with champion {}: {} {} {}",
                    c.champion,
                    c.lhs,
                    if c.holds { "<=" } else { ">" },
                    c.rhs
                )
                .unwrap();
                for a in &c.arcs {
                    writeln!(out, "  arc {}: right {}  left {}", a.arc, a.right, a.left).unwrap();
                }
                let ok = if c.words_ok(self.n) { "all abab-free and short enough" } else { "NOT all valid" };
                writeln!(out, "  boundary words: {ok}").unwrap();
            }
            Some(Err(e)) => writeln!(out, "Boundary words not extracted: {e}").unwrap(),
            None => {}
        }
        if let Some(s) = self.canonical_score {
            writeln!(out, "Area / sum of squared side lengths: {s:.10}").unwrap();
        }
        out
    }
}

pub fn verify(s: &Scene) -> Report {
    match union_boundary(s) {
        UnionResult::SimplePolygon(p) => Report {
            n: s.len(),
            verdict: Verdict::Simple { sides: p.side_count() },
            contributions: p.contributions(),
            inequality: Some(check_inequality(s, &p)),
            canonical_score: Some(canonical_score(&p)),
        },
        UnionResult::Rejected(r) => Report {
            n: s.len(),
            verdict: Verdict::Rejected(r),
            contributions: Vec::new(),
            inequality: None,
            canonical_score: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Point, Triangle};

    #[test]
    fn single_triangle_report() {
        let t = Triangle::new(Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(0, 1)).unwrap();
        let r = verify(&Scene::new(vec![t]).unwrap());
        let kv = r.to_key_values();
        assert!(kv.contains("verdict=simple\n"));
        assert!(kv.contains("sides=3\n"));
        assert!(kv.contains("inequality_lhs=6\n"));
        assert!(kv.contains("inequality_holds=true\n"));
        assert!(r.to_human().contains("3 sides"));
    }
}
