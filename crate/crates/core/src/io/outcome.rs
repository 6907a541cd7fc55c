//! Text format for search results: the gap vector plus summary keys.
//!
//! ```text
//! politrigon-outcome 1
//! n=3
//! sides=22
//! canonical_score=0.6920747478
//! gaps=0.1,0.2,...
//! ```
//! Gaps are written with shortest round-trip float formatting, so reading a
//! file back rebuilds the same exact scene.

use std::fmt::Write as _;

use crate::search::{canonical_score, AngleConfig, SearchOutcome};

pub const OUTCOME_HEADER: &str = "politrigon-outcome 1";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OutcomeError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("stored configuration is not simple")]
    NotSimple,
    #[error("stored side count {stored} but certified {certified}")]
    SideMismatch { stored: usize, certified: usize },
}

pub fn write_outcome(o: &SearchOutcome) -> String {
    let mut out = format!("{OUTCOME_HEADER}\nn={}\nsides={}\n", o.config.n, o.sides);
    writeln!(out, "canonical_score={:.10}", canonical_score(&o.certificate)).unwrap();
    let gaps: Vec<String> = o.config.gaps.iter().map(|g| format!("{g:?}")).collect();
    writeln!(out, "gaps={}", gaps.join(",")).unwrap();
    out
}

/// Reads an outcome file and re-certifies it.
pub fn parse_outcome(text: &str) -> Result<SearchOutcome, OutcomeError> {
    let perr = |line: usize, message: &str| OutcomeError::Parse { line, message: message.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, h)) if h == OUTCOME_HEADER => {}
        _ => return Err(perr(1, "missing outcome header")),
    }
    let (mut n, mut sides, mut gaps) = (None, None, None);
    for (ln, line) in lines {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| perr(ln, "expected key=value"))?;
        match k {
            "n" => n = Some(v.parse::<usize>().map_err(|_| perr(ln, "bad n"))?),
            "sides" => sides = Some(v.parse::<usize>().map_err(|_| perr(ln, "bad sides"))?),
            "gaps" => {
                let g: Result<Vec<f64>, _> = v.split(',').map(str::parse).collect();
                gaps = Some(g.map_err(|_| perr(ln, "bad gap"))?);
            }
            _ => {}
        }
    }
    let n = n.ok_or_else(|| perr(0, "missing n"))?;
    let gaps = gaps.ok_or_else(|| perr(0, "missing gaps"))?;
    let config = AngleConfig::new(n, gaps).map_err(|e| perr(0, &e.to_string()))?;
    let o = SearchOutcome::certify(config).ok_or(OutcomeError::NotSimple)?;
    if let Some(s) = sides {
        if s != o.sides {
            return Err(OutcomeError::SideMismatch { stored: s, certified: o.sides });
        }
    }
    Ok(o)
}
