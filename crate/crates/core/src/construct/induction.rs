//! Growing a union by `+11` per triangle from a side whose endpoints are both
//! crossing points.
//!
//! Every new triangle has one vertex poking out across the chosen side, and
//! its two edges leaving that vertex graze one reflex vertex each before they
//! poke out across far sides. Later triangles use the remaining pieces of the
//! chosen side and graze the crossing points left by earlier ones.

use crate::geom::{cross, Segment};
use crate::union::{union_boundary, AnnotatedPolygon, Scene};

use super::protrude::{add_protruded, find_protrusion};
use super::ConstructError;

/// Whether side `i` has no endpoint at a triangle vertex of `s`.
pub fn is_eligible(s: &Scene, p: &AnnotatedPolygon, i: usize) -> bool {
    let (u, v) = p.side_endpoints(i);
    !s.triangles().iter().any(|t| t.vertices().iter().any(|w| w == u || w == v))
}

pub fn eligible_sides(s: &Scene, p: &AnnotatedPolygon) -> Vec<usize> {
    (0..p.side_count()).filter(|&i| is_eligible(s, p, i)).collect()
}

/// Sides of `p` lying within segment `seg`.
fn pieces_on(p: &AnnotatedPolygon, seg: &Segment) -> Vec<usize> {
    (0..p.side_count())
        .filter(|&i| {
            let (u, v) = p.side_endpoints(i);
            seg.contains(u) && seg.contains(v) && cross(&seg.a, &seg.b, u) == cross(&seg.a, &seg.b, v)
        })
        .collect()
}

/// Adds `m` triangles anchored on side `edge` of the union of `s`, each
/// raising the side count by exactly 11.
pub fn inflate_induction(s: &Scene, edge: usize, m: usize) -> Result<Scene, ConstructError> {
    let p = union_boundary(s).into_polygon().ok_or(ConstructError::NotSimple)?;
    if edge >= p.side_count() || !is_eligible(s, &p, edge) {
        return Err(ConstructError::NoEligibleEdge);
    }
    let (u, v) = p.side_endpoints(edge);
    let seg: Segment = Segment::new(u.clone(), v.clone());
    let mut cur = s.clone();
    let mut poly = p;
    for step in 0..m {
        let firsts = pieces_on(&poly, &seg);
        let spec = find_protrusion(&poly, 2, Some(&firsts)).ok_or(ConstructError::InductionStuck { step })?;
        cur = add_protruded(&cur, &spec)?;
        poly = union_boundary(&cur).into_polygon().ok_or(ConstructError::NotSimple)?;
    }
    Ok(cur)
}

/// Tries eligible sides in order and returns the first that carries `m` steps.
pub fn inflate_any(s: &Scene, m: usize) -> Result<Scene, ConstructError> {
    let p = union_boundary(s).into_polygon().ok_or(ConstructError::NotSimple)?;
    let sides = eligible_sides(s, &p);
    if sides.is_empty() {
        return Err(ConstructError::NoEligibleEdge);
    }
    let mut last = ConstructError::NoEligibleEdge;
    for i in sides {
        match inflate_induction(s, i, m) {
            Ok(out) => return Ok(out),
            Err(e) => last = e,
        }
    }
    Err(last)
}

