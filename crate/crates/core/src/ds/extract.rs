//! Reading DS words and the counting inequality off a certified polygon.

use crate::union::{AnnotatedPolygon, Scene};

use super::cycle::{CycleError, Entry, LabeledCycle, Mark};
use super::sequence::{ds2_max_len, is_ds2, SymbolSeq};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegimeViolation {
    #[error("champion vertex {0} is not a polygon vertex")]
    HiddenChampionVertex(usize),
    #[error("champion vertices are not met in counterclockwise order")]
    ChampionOrder,
    #[error("triangle {triangle} has {count} vertices on the arc after champion vertex {arc}")]
    VertexCount { triangle: usize, arc: usize, count: usize },
    #[error("side {side} lies on an edge of triangle {triangle} that does not meet its arc vertex")]
    ForeignEdge { side: usize, triangle: usize },
    #[error("triangle index {0} out of range")]
    NoSuchTriangle(usize),
}

/// The two words read along the boundary arc from one champion vertex to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcWords {
    /// Champion vertex (0, 1 or 2) the arc starts from.
    pub arc: usize,
    /// Labels of outgoing edges, in boundary order.
    pub right: SymbolSeq,
    /// Labels of incoming edges, in reverse boundary order.
    pub left: SymbolSeq,
}

/// Splits the boundary at the champion's vertices and, on each arc, records
/// which edge (outgoing or incoming at the triangle's unique arc vertex) each
/// side lies on. Triangles are numbered from 1.
pub fn extract_lr_sequences(
    scene: &Scene,
    p: &AnnotatedPolygon,
    champion: usize,
) -> Result<Vec<ArcWords>, RegimeViolation> {
    let tris = scene.triangles();
    if champion == 0 || champion > tris.len() {
        return Err(RegimeViolation::NoSuchTriangle(champion));
    }
    let c = champion - 1;
    let m = p.vertices.len();
    let at = |pt| p.vertices.iter().position(|v| v == pt);
    let idx: Vec<usize> = (0..3)
        .map(|t| at(tris[c].vertex(t)).ok_or(RegimeViolation::HiddenChampionVertex(t)))
        .collect::<Result<_, _>>()?;
    // ccw order: the three gaps must add up to one full turn
    let gap = |a: usize, b: usize| (b + m - a) % m;
    if gap(idx[0], idx[1]) + gap(idx[1], idx[2]) + gap(idx[2], idx[0]) != m {
        return Err(RegimeViolation::ChampionOrder);
    }

    let mut out = Vec::new();
    for t in 0..3 {
        let (start, len) = (idx[t], gap(idx[t], idx[(t + 1) % 3]));
        let inside = |q: usize| gap(start, q) > 0 && gap(start, q) < len;
        // the unique vertex of every other triangle on this arc
        let mut apex = vec![usize::MAX; tris.len()];
        for (i, tri) in tris.iter().enumerate() {
            if i == c {
                continue;
            }
            let on_arc: Vec<usize> = (0..3).filter(|&k| at(tri.vertex(k)).is_some_and(inside)).collect();
            if on_arc.len() != 1 {
                return Err(RegimeViolation::VertexCount { triangle: i + 1, arc: t, count: on_arc.len() });
            }
            apex[i] = on_arc[0];
        }
        let mut right = Vec::new();
        let mut left = Vec::new();
        for s in 0..len {
            let side = (start + s) % m;
            let o = p.sides[side].owner;
            let e = p.sides[side].edge_index;
            if o == c {
                if e != t {
                    return Err(RegimeViolation::ForeignEdge { side, triangle: o + 1 });
                }
                right.push(o + 1);
                left.push(o + 1);
            } else if e == apex[o] {
                right.push(o + 1);
            } else if (e + 1) % 3 == apex[o] {
                left.push(o + 1);
            } else {
                return Err(RegimeViolation::ForeignEdge { side, triangle: o + 1 });
            }
        }
        left.reverse();
        out.push(ArcWords { arc: t, right: SymbolSeq(right), left: SymbolSeq(left) });
    }
    Ok(out)
}

/// Outcome of the weighted count `2 l_c + sum_{i != c} l_i <= 12n - 6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChampionReport {
    /// 1-based index of the first triangle with the most sides.
    pub champion: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
    pub arcs: Vec<ArcWords>,
}

impl ChampionReport {
    /// All extracted words are DS words of admissible length.
    pub fn words_ok(&self, n: usize) -> bool {
        self.arcs.iter().all(|a| {
            [&a.right, &a.left].iter().all(|w| is_ds2(&w.0) && w.len() <= ds2_max_len(n))
        })
    }
}

pub fn check_inequality(scene: &Scene, p: &AnnotatedPolygon) -> Result<ChampionReport, RegimeViolation> {
    let l = p.contributions();
    let best = *l.iter().max().expect("non-empty scene");
    let c = l.iter().position(|&x| x == best).unwrap();
    let arcs = extract_lr_sequences(scene, p, c + 1)?;
    let lhs = best + l.iter().sum::<usize>();
    let rhs = 12 * l.len() - 6;
    Ok(ChampionReport { champion: c + 1, lhs, rhs, holds: lhs <= rhs, arcs })
}

/// Boundary word of a polygon: a side is bold when it ends at a vertex of its
/// own triangle. The word starts at a bold pair.
pub fn labeled_cycle(scene: &Scene, p: &AnnotatedPolygon) -> Result<LabeledCycle, CycleError> {
    let m = p.sides.len();
    let entries: Vec<Entry> = (0..m)
        .map(|i| {
            let s = &p.sides[i];
            let (a, b) = p.side_endpoints(i);
            let t = &scene.triangles()[s.owner];
            let bold = t.vertices().iter().any(|v| v == a || v == b);
            Entry { triangle: s.owner + 1, mark: if bold { Mark::Bold } else { Mark::Italic } }
        })
        .collect();
    let cycle = LabeledCycle::new(p.n, entries)?;
    let start = cycle.pair_starts().first().copied().unwrap_or(0);
    let mut entries = cycle.entries.clone();
    entries.rotate_left(start);
    Ok(LabeledCycle { n: p.n, entries })
}
