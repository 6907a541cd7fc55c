//! Text format for scenes.
//!
//! ```text
//! politrigon-scene 1
//! 2
//! 0 0 1 0 0 1
//! 1/2 1/2 -1 3/4 0.25 2
//! # comments may follow the data
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::geom::{Point, Rat, Triangle};
use crate::union::Scene;

pub const HEADER: &str = "politrigon-scene 1";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SceneFileError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    /// 1-based index of the first collinear triangle.
    #[error("triangle {0} is degenerate")]
    DegenerateTriangle(usize),
}

/// A scene together with the comment lines that trail it in its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceneFile {
    pub scene: Scene,
    pub comments: Vec<String>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> SceneFileError {
    SceneFileError::Parse { line, column, message: message.into() }
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.125`, exactly.
pub fn parse_rational(tok: &str) -> Option<Rat> {
    if let Some((p, q)) = tok.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() || q < BigInt::zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    let (neg, body) = match tok.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rat::new(num, den);
    Some(if neg { -r } else { r })
}

pub fn parse_scene_file(text: &str) -> Result<SceneFile, SceneFileError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, head) = lines.next().ok_or_else(|| err(1, 1, "empty file"))?;
    if head.trim_end() != HEADER {
        return Err(err(ln, 1, format!("expected header `{HEADER}`")));
    }
    let (ln, count) = lines.next().ok_or_else(|| err(2, 1, "missing triangle count"))?;
    let n: usize = count
        .trim()
        .parse()
        .map_err(|_| err(ln, 1 + count.len() - count.trim_start().len(), "triangle count is not a number"))?;

    let mut pts: Vec<[Point; 3]> = Vec::with_capacity(n);
    let mut comments = Vec::new();
    for (ln, line) in lines {
        if line.starts_with('#') {
            comments.push(line.to_string());
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if !comments.is_empty() {
            return Err(err(ln, 1, "data after trailing comments"));
        }
        if pts.len() == n {
            return Err(err(ln, 1, format!("more than {n} triangle lines")));
        }
        let mut vals = Vec::with_capacity(6);
        let mut col = 0;
        for tok in line.split_whitespace() {
            let at = line[col..].find(tok).unwrap() + col;
            col = at + tok.len();
            let v = parse_rational(tok).ok_or_else(|| err(ln, at + 1, format!("`{tok}` is not a rational")))?;
            vals.push(v);
        }
        if vals.len() != 6 {
            return Err(err(ln, 1, format!("expected 6 numbers, found {}", vals.len())));
        }
        let mut it = vals.into_iter();
        let mut p = || Point::new(it.next().unwrap(), it.next().unwrap());
        pts.push([p(), p(), p()]);
    }
    if pts.len() != n {
        return Err(err(text.lines().count() + 1, 1, format!("expected {n} triangle lines, found {}", pts.len())));
    }
    let mut tris = Vec::with_capacity(n);
    for (i, [a, b, c]) in pts.into_iter().enumerate() {
        tris.push(Triangle::new(a, b, c).map_err(|_| SceneFileError::DegenerateTriangle(i + 1))?);
    }
    let scene = Scene::new(tris).map_err(|_| err(2, 1, "a scene needs at least one triangle"))?;
    Ok(SceneFile { scene, comments })
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneFileError> {
    parse_scene_file(text).map(|f| f.scene)
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn write_scene(s: &Scene) -> String {
    write_scene_file(&SceneFile { scene: s.clone(), comments: Vec::new() })
}

pub fn write_scene_file(f: &SceneFile) -> String {
    let mut out = format!("{HEADER}\n{}\n", f.scene.len());
    for t in f.scene.triangles() {
        let nums: Vec<String> = t.vertices().iter().flat_map(|p| [fmt_rat(&p.x), fmt_rat(&p.y)]).collect();
        writeln!(out, "{}", nums.join(" ")).unwrap();
    }
    for c in &f.comments {
        writeln!(out, "{c}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational(".5"), Some(rat(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1e3"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn one_triangle() {
        let s = parse_scene("politrigon-scene 1\n1\n0 0 1 0 0 1\n").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(write_scene(&s), "politrigon-scene 1\n1\n0 0 1 0 0 1\n");
    }

    #[test]
    fn collinear_triangle_is_reported_by_index() {
        let e = parse_scene("politrigon-scene 1\n2\n0 0 1 0 0 1\n0 0 1 1 2 2\n").unwrap_err();
        assert_eq!(e, SceneFileError::DegenerateTriangle(2));
        let e = parse_scene("politrigon-scene 1\n1\n0 0 1 1 2 2\n").unwrap_err();
        assert_eq!(e, SceneFileError::DegenerateTriangle(1));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_scene("politrigon-scene 1\n1\n0 0 x 0 0 1\n").unwrap_err();
        assert_eq!(e, err(3, 5, "`x` is not a rational"));
        let e = parse_scene("politrigon-scene 2\n1\n").unwrap_err();
        assert!(matches!(e, SceneFileError::Parse { line: 1, .. }));
        let e = parse_scene("politrigon-scene 1\n2\n0 0 1 0 0 1\n").unwrap_err();
        assert!(matches!(e, SceneFileError::Parse { line: 4, .. }));
    }

    #[test]
    fn comments_round_trip() {
        let text = "politrigon-scene 1\n1\n0 0 1/3 0 0 1\n# sides=3\n";
        let f = parse_scene_file(text).unwrap();
        assert_eq!(f.comments, vec!["# sides=3"]);
        assert_eq!(write_scene_file(&f), text);
    }

    #[test]
    fn hexagram_asset_round_trips_byte_for_byte() {
        let text = include_str!("../../assets/hexagram.scene");
        let s = parse_scene(text).unwrap();
        assert_eq!(write_scene(&s), text);
        assert_eq!(s, crate::construct::hexagram());
    }
}
