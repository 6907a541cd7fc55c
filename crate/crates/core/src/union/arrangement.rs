//! Union boundary by all-pairs edge splitting.
//!
//! Every triangle edge is cut at all points where it meets another edge. A
//! resulting piece is on the union boundary iff its midpoint is not inside
//! another triangle and no other triangle covers the opposite side of a
//! shared collinear stretch. Collinear same-side duplicates are kept once, by
//! the lowest triangle index.

use std::collections::BTreeMap;

use num_traits::Signed;

use super::components::connectivity_rejection;
use super::polygon::{chains, hole_witness, AnnotatedPolygon, Piece};
use super::{RejectReason, Rejection, Scene, UnionResult};
use crate::geom::{
    approx_orientation, boxes_apart, intersect_segments_filtered, orientation, point_vs_triangle, Approx, Intersection, Location,
    Orientation, Point, Segment, Triangle,
};

pub fn union_boundary(scene: &Scene) -> UnionResult {
    let tris = scene.triangles();
    if let Some(r) = connectivity_rejection(tris) {
        return UnionResult::Rejected(r);
    }
    let pieces = boundary_pieces(tris);

    let mut out_degree: BTreeMap<&Point, usize> = BTreeMap::new();
    for p in &pieces {
        *out_degree.entry(&p.a).or_default() += 1;
    }
    if let Some((w, _)) = out_degree.iter().find(|(_, &d)| d > 1) {
        return UnionResult::Rejected(Rejection {
            reason: RejectReason::PinchPoint,
            witness: (*w).clone(),
        });
    }

    let n = tris.len();
    let cs = chains(pieces);
    if cs.len() > 1 {
        let witness = hole_witness(&cs).expect("several boundary chains include a hole");
        return UnionResult::Rejected(Rejection {
            reason: RejectReason::Hole,
            witness,
        });
    }
    UnionResult::SimplePolygon(AnnotatedPolygon::from_cycle(&cs[0], n))
}

/// Directed boundary pieces (interior on the left) of the union.
pub(crate) fn boundary_pieces(tris: &[Triangle]) -> Vec<Piece> {
    let edges: Vec<(usize, usize, Segment)> = tris
        .iter()
        .enumerate()
        .flat_map(|(i, t)| (0..3).map(move |k| (i, k, t.edge(k))))
        .collect();

    let shadows: Vec<[Approx; 2]> = edges.iter().map(|(_, _, e)| [Approx::of(&e.a), Approx::of(&e.b)]).collect();
    let tri_shadows: Vec<[Approx; 3]> = tris.iter().map(|t| t.vertices().clone().map(|v| Approx::of(&v))).collect();
    let mut pieces = Vec::new();
    for (ei, (i, k, e)) in edges.iter().enumerate() {
        let mut cuts: Vec<Point> = vec![e.a.clone(), e.b.clone()];
        for (fi, (j, _, f)) in edges.iter().enumerate() {
            if j == i || boxes_apart(&shadows[ei], &shadows[fi]) {
                continue;
            }
            match intersect_segments_filtered(e, f, &shadows[ei], &shadows[fi]) {
                Intersection::None => {}
                Intersection::Proper(p) | Intersection::Touch(p) => cuts.push(p),
                Intersection::Overlap(s) => {
                    cuts.push(s.a);
                    cuts.push(s.b);
                }
            }
        }
        let mut cuts: Vec<(Point, Approx)> = cuts.into_iter().map(|p| {
            let a = Approx::of(&p);
            (p, a)
        }).collect();
        let [ea, eb] = shadows[ei];
        let (dx, dy) = (eb.x - ea.x, eb.y - ea.y);
        let key = |p: &Approx| (p.x - ea.x) * dx + (p.y - ea.y) * dy;
        let scale = [ea.x, ea.y, eb.x, eb.y].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol = 1e-12 * scale * scale;
        cuts.sort_by(|(p, pa), (q, qa)| {
            let (kp, kq) = (key(pa), key(qa));
            if tol.is_finite() && (kp - kq).abs() > tol {
                kp.partial_cmp(&kq).unwrap()
            } else {
                e.param(p).cmp(&e.param(q))
            }
        });
        cuts.dedup_by(|x, y| x.0 == y.0);
        for w in cuts.windows(2) {
            let ((a, sa), (b, sb)) = (&w[0], &w[1]);
            if is_boundary_filtered(tris, &tri_shadows, *i, (a, *sa), (b, *sb)) {
                pieces.push(Piece {
                    a: a.clone(),
                    b: b.clone(),
                    owner: *i,
                    edge: *k,
                });
            }
        }
    }
    pieces
}

/// The open piece `a b` of an edge of `owner` lies on the union boundary.
/// Float shadows settle most containment tests; the exact midpoint is only
/// built when one of them is in doubt.
fn is_boundary_filtered(
    tris: &[Triangle],
    shadows: &[[Approx; 3]],
    owner: usize,
    (a, sa): (&Point, Approx),
    (b, sb): (&Point, Approx),
) -> bool {
    let ma = Approx { x: (sa.x + sb.x) / 2.0, y: (sa.y + sb.y) / 2.0 };
    let mut doubtful = Vec::new();
    for (j, t) in shadows.iter().enumerate() {
        if j == owner {
            continue;
        }
        let o: Vec<Option<Orientation>> = (0..3).map(|k| approx_orientation(t[k], t[(k + 1) % 3], ma)).collect();
        if o.contains(&Some(Orientation::Clockwise)) {
            continue;
        }
        if o.iter().all(|x| *x == Some(Orientation::CounterClockwise)) {
            return false;
        }
        doubtful.push(j);
    }
    if doubtful.is_empty() {
        return true;
    }
    let m = a.midpoint(b);
    for j in doubtful {
        let t = &tris[j];
        match point_vs_triangle(&m, t) {
            Location::Outside => {}
            Location::Inside => return false,
            Location::OnBoundary => {
                // the piece runs along an edge of t; compare which side t covers
                let w = t
                    .vertices()
                    .iter()
                    .find(|v| orientation(a, b, v) != Orientation::Collinear)
                    .expect("non-degenerate triangle");
                let same_side = crate::geom::cross(a, b, w).is_positive();
                if !same_side || j < owner {
                    return false;
                }
            }
        }
    }
    true
}
