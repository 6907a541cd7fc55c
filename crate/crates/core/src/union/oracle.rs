//! Slab-decomposition union, an independent check on [`super::union_boundary`].
//!
//! After a shear that makes no edge vertical, the plane is cut by vertical
//! lines through every vertex and edge crossing. Inside an open slab no two
//! edges cross, so each triangle is a trapezoid between two edge lines and the
//! union is a disjoint list of merged intervals. Connectivity, holes and
//! pinches are all read off the resulting trapezoids.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::components::UnionFind;
use super::polygon::{chains, hole_witness, AnnotatedPolygon, Piece};
use super::{RejectReason, Rejection, Scene, UnionResult};
use crate::geom::{intersect_segments, rat, Intersection, Point, Rat, Segment, Triangle};

/// Line through an edge, as `y = y0 + slope * x` (no vertical edges after shear).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Line {
    slope: Rat,
    y0: Rat,
}

impl Line {
    fn through(s: &Segment) -> Line {
        let slope = (&s.b.y - &s.a.y) / (&s.b.x - &s.a.x);
        let y0 = &s.a.y - &slope * &s.a.x;
        Line { slope, y0 }
    }

    fn at(&self, x: &Rat) -> Rat {
        &self.y0 + &self.slope * x
    }
}

struct Trapezoid {
    x0: Rat,
    x1: Rat,
    bottom: Line,
    top: Line,
}

impl Trapezoid {
    fn left(&self) -> (Rat, Rat) {
        (self.bottom.at(&self.x0), self.top.at(&self.x0))
    }

    fn right(&self) -> (Rat, Rat) {
        (self.bottom.at(&self.x1), self.top.at(&self.x1))
    }

    fn corners(&self) -> [Point; 4] {
        let (lb, lt) = self.left();
        let (rb, rt) = self.right();
        [
            Point::new(self.x0.clone(), lb),
            Point::new(self.x1.clone(), rb),
            Point::new(self.x1.clone(), rt),
            Point::new(self.x0.clone(), lt),
        ]
    }
}

fn choose_shear(tris: &[Triangle]) -> Rat {
    let vertical = |lam: &Rat| {
        tris.iter().any(|t| {
            t.edges()
                .iter()
                .any(|e| (&e.b.x - &e.a.x + lam * (&e.b.y - &e.a.y)).is_zero())
        })
    };
    let mut candidates = vec![Rat::zero()];
    for d in 2..200i64 {
        for num in 1..d {
            if num_integer::gcd(num, d) == 1 {
                candidates.push(rat(num, d));
            }
        }
    }
    candidates
        .into_iter()
        .find(|l| !vertical(l))
        .expect("finitely many bad shears")
}

pub fn oracle_union(scene: &Scene) -> UnionResult {
    let lam = choose_shear(scene.triangles());
    let fwd = |p: &Point| Point::new(&p.x + &lam * &p.y, p.y.clone());
    let back = |p: &Point| Point::new(&p.x - &lam * &p.y, p.y.clone());
    let sheared = scene.map(fwd).expect("shear preserves non-degeneracy");
    let tris = sheared.triangles();
    let n = tris.len();

    let traps = trapezoids(tris);

    // connectivity through shared vertical cross-sections
    let mut closed = UnionFind::new(traps.len());
    let mut fat = UnionFind::new(traps.len());
    let mut contacts: Vec<(usize, usize, Point)> = Vec::new();
    for i in 0..traps.len() {
        for j in i + 1..traps.len() {
            let (a, b) = (&traps[i], &traps[j]);
            let mut sections = Vec::new();
            if a.x1 == b.x0 {
                sections.push((a.x1.clone(), a.right(), b.left()));
            }
            if b.x1 == a.x0 {
                sections.push((a.x0.clone(), a.left(), b.right()));
            }
            if a.x0 == b.x0 {
                sections.push((a.x0.clone(), a.left(), b.left()));
            }
            if a.x1 == b.x1 {
                sections.push((a.x1.clone(), a.right(), b.right()));
            }
            for (x, (alo, ahi), (blo, bhi)) in sections {
                let lo = if alo > blo { alo } else { blo };
                let hi = if ahi < bhi { ahi } else { bhi };
                if lo < hi {
                    closed.union(i, j);
                    fat.union(i, j);
                } else if lo == hi {
                    closed.union(i, j);
                    contacts.push((i, j, Point::new(x, lo)));
                }
            }
        }
    }

    if closed.count() > 1 {
        let mut comp_min: BTreeMap<usize, Point> = BTreeMap::new();
        for (i, t) in traps.iter().enumerate() {
            let root = closed.find(i);
            let m = t.corners().iter().map(back).min().unwrap();
            let e = comp_min.entry(root).or_insert_with(|| m.clone());
            if m < *e {
                *e = m;
            }
        }
        let mut mins: Vec<Point> = comp_min.into_values().collect();
        mins.sort();
        return UnionResult::Rejected(Rejection {
            reason: RejectReason::DisconnectedInterior,
            witness: mins[1].clone(),
        });
    }
    if fat.count() > 1 {
        let witness = contacts
            .into_iter()
            .filter(|(i, j, _)| fat.find(*i) != fat.find(*j))
            .map(|(_, _, p)| back(&p))
            .min()
            .expect("split interior has a contact point");
        return UnionResult::Rejected(Rejection {
            reason: RejectReason::DegenerateContact,
            witness,
        });
    }

    let mut pieces = Vec::new();
    for t in &traps {
        let [lb, rb, rt, lt] = t.corners();
        if lb != rb {
            pieces.push((lb, rb));
        }
        if rt != lt {
            pieces.push((rt, lt));
        }
    }
    let pieces: Vec<Piece> = pieces
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (back(&a), back(&b));
            let (owner, edge) = owner_of(scene.triangles(), &a, &b);
            Piece { a, b, owner, edge }
        })
        .collect();

    let mut degree: BTreeMap<&Point, usize> = BTreeMap::new();
    for p in &pieces {
        *degree.entry(&p.a).or_default() += 1;
    }
    if let Some(w) = degree.iter().filter(|(_, &d)| d > 1).map(|(p, _)| *p).min() {
        return UnionResult::Rejected(Rejection {
            reason: RejectReason::PinchPoint,
            witness: w.clone(),
        });
    }

    let cs = chains(pieces);
    if cs.len() > 1 {
        return UnionResult::Rejected(Rejection {
            reason: RejectReason::Hole,
            witness: hole_witness(&cs).expect("extra chains are holes"),
        });
    }
    UnionResult::SimplePolygon(AnnotatedPolygon::from_cycle(&cs[0], n))
}

/// Merged union intervals in every slab.
fn trapezoids(tris: &[Triangle]) -> Vec<Trapezoid> {
    let edges: Vec<Segment> = tris.iter().flat_map(|t| t.edges()).collect();
    let mut xs: Vec<Rat> = tris
        .iter()
        .flat_map(|t| t.vertices().iter().map(|v| v.x.clone()))
        .collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            match intersect_segments(&edges[i], &edges[j]) {
                Intersection::None => {}
                Intersection::Proper(p) | Intersection::Touch(p) => xs.push(p.x),
                Intersection::Overlap(s) => {
                    xs.push(s.a.x);
                    xs.push(s.b.x);
                }
            }
        }
    }
    xs.sort();
    xs.dedup();

    let two = Rat::one() + Rat::one();
    let mut out = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let xm = (x0 + x1) / &two;
        // (bottom, top) lines of every triangle spanning the slab
        let mut spans: Vec<(Rat, Line, Rat, Line)> = Vec::new();
        for t in tris {
            let lines: Vec<Line> = t
                .edges()
                .iter()
                .filter(|e| {
                    let (lo, hi) = if e.a.x < e.b.x { (&e.a.x, &e.b.x) } else { (&e.b.x, &e.a.x) };
                    lo <= x0 && hi >= x1
                })
                .map(Line::through)
                .collect();
            if lines.len() != 2 {
                continue;
            }
            let (ya, yb) = (lines[0].at(&xm), lines[1].at(&xm));
            let (l0, l1) = (lines[0].clone(), lines[1].clone());
            if ya < yb {
                spans.push((ya, l0, yb, l1));
            } else {
                spans.push((yb, l1, ya, l0));
            }
        }
        spans.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rat, Line, Rat, Line)> = Vec::new();
        for s in spans {
            match merged.last_mut() {
                Some(last) if s.0 <= last.2 => {
                    if s.2 > last.2 {
                        last.2 = s.2;
                        last.3 = s.3;
                    }
                }
                _ => merged.push(s),
            }
        }
        for (_, bottom, _, top) in merged {
            out.push(Trapezoid {
                x0: x0.clone(),
                x1: x1.clone(),
                bottom,
                top,
            });
        }
    }
    out
}

/// Lowest-index triangle with an edge running along `a -> b` in the same direction.
fn owner_of(tris: &[Triangle], a: &Point, b: &Point) -> (usize, usize) {
    for (i, t) in tris.iter().enumerate() {
        for k in 0..3 {
            let e = t.edge(k);
            if e.contains(a) && e.contains(b) && e.param(b) > e.param(a) {
                return (i, k);
            }
        }
    }
    unreachable!("boundary piece {a:?} -> {b:?} lies on no edge")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::union::union_boundary;

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Triangle {
        Triangle::new(
            Point::from_ints(a.0, a.1),
            Point::from_ints(b.0, b.1),
            Point::from_ints(c.0, c.1),
        )
        .unwrap()
    }

    #[test]
    fn agrees_on_small_cases() {
        let cases = vec![
            vec![tri((0, 0), (1, 0), (0, 1))],
            vec![tri((0, 0), (2, 0), (2, 2)), tri((0, 0), (2, 2), (0, 2))],
            vec![tri((0, 0), (1, 0), (0, 1)), tri((5, 5), (6, 5), (5, 6))],
            vec![tri((0, 0), (2, 0), (0, 2)), tri((2, 0), (4, 0), (4, 2))],
            vec![
                tri((0, 0), (4, 0), (2, 4)),
                tri((4, 0), (8, 0), (6, 4)),
                tri((1, 1), (7, 1), (4, 2)),
            ],
            // vertical edges force a non-trivial shear
            vec![tri((0, 0), (3, 0), (0, 3)), tri((1, -1), (2, -1), (1, 2))],
        ];
        for ts in cases {
            let s = Scene::new(ts).unwrap();
            assert_eq!(oracle_union(&s), union_boundary(&s), "{s:?}");
        }
    }
}
