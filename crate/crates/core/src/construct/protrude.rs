//! Adding one triangle across the boundary of a certified union.
//!
//! The new triangle starts as three chords of the current polygon with
//! endpoints on three different sides; a chord may graze reflex vertices. All
//! three edge lines are then pushed outwards by a small `delta`, so each
//! vertex pokes out across its side (three new sides each) and each grazed
//! reflex vertex is swallowed (one more side each).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geom::{
    boxes_apart, cross, intersect_segments_filtered, orientation, point_vs_triangle, rat, to_f64, Approx,
    Intersection, Location, Orientation, Point, Rat, Segment, Triangle,
};
use crate::union::{union_boundary, AnnotatedPolygon, Scene};

use super::ConstructError;

/// Where a vertex of the new triangle starts: on side `side` at parameter `t` in (0, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub side: usize,
    pub t: Rat,
}

/// A triangle to add: three anchors on different sides, plus the reflex
/// vertices (polygon vertex indices) its edges graze.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtrusionSpec {
    pub anchors: [Anchor; 3],
    pub engulfed: Vec<usize>,
}

impl ProtrusionSpec {
    pub fn points(&self, p: &AnnotatedPolygon) -> [Point; 3] {
        self.anchors.clone().map(|a| {
            let (u, v) = p.side_endpoints(a.side);
            u.lerp(v, &a.t)
        })
    }
}

/// A polygon with float shadows of its vertices.
pub(crate) struct Outline<'a> {
    pub p: &'a AnnotatedPolygon,
    sh: Vec<Approx>,
}

impl<'a> Outline<'a> {
    pub fn new(p: &'a AnnotatedPolygon) -> Self {
        Outline { p, sh: p.vertices.iter().map(Approx::of).collect() }
    }

    fn side_shadow(&self, i: usize) -> [Approx; 2] {
        [self.sh[i], self.sh[(i + 1) % self.sh.len()]]
    }

    /// Intersections of segment `s` (shadow `ss`) with every side.
    fn hits(&self, s: &Segment, ss: &[Approx; 2]) -> impl Iterator<Item = (usize, Intersection)> + '_ {
        let (s, ss) = (s.clone(), *ss);
        (0..self.sh.len()).filter_map(move |i| {
            let ts = self.side_shadow(i);
            if boxes_apart(&ss, &ts) {
                return None;
            }
            let (u, v) = self.p.side_endpoints(i);
            match intersect_segments_filtered(&s, &Segment::new(u.clone(), v.clone()), &ss, &ts) {
                Intersection::None => None,
                x => Some((i, x)),
            }
        })
    }
}

/// Exact location of `q` relative to a simple polygon.
pub fn locate(p: &AnnotatedPolygon, q: &Point) -> Location {
    let m = p.vertices.len();
    let mut inside = false;
    for i in 0..m {
        let (a, b) = (&p.vertices[i], &p.vertices[(i + 1) % m]);
        if Segment::new(a.clone(), b.clone()).contains(q) {
            return Location::OnBoundary;
        }
        if (a.y > q.y) != (b.y > q.y) {
            // x coordinate of the edge at height q.y, compared without division
            let lhs = (&q.x - &a.x) * (&b.y - &a.y);
            let rhs = (&b.x - &a.x) * (&q.y - &a.y);
            if (lhs < rhs) == (b.y > a.y) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// The open segment `a b` lies in the interior except at the listed touch points.
pub fn chord_inside(p: &AnnotatedPolygon, a: &Point, b: &Point, touch: &[&Point]) -> bool {
    chord_inside_in(&Outline::new(p), a, b, touch)
}

fn chord_inside_in(o: &Outline, a: &Point, b: &Point, touch: &[&Point]) -> bool {
    let p = o.p;
    let s = Segment::new(a.clone(), b.clone());
    let mut stops = vec![a.clone(), b.clone()];
    for (_, hit) in o.hits(&s, &[Approx::of(a), Approx::of(b)]) {
        match hit {
            Intersection::None => {}
            Intersection::Touch(q) => {
                if q != *a && q != *b && !touch.contains(&&q) {
                    return false;
                }
                stops.push(q);
            }
            Intersection::Proper(_) | Intersection::Overlap(_) => return false,
        }
    }
    stops.sort_by_cached_key(|q| s.param(q));
    stops.dedup();
    stops.windows(2).all(|w| locate(p, &w[0].midpoint(&w[1])) == Location::Inside)
}

/// Whether polygon vertex `i` is reflex and the line `a q` (q = vertex i)
/// keeps both neighbouring sides on one side, so that it only grazes the
/// exterior wedge at `q`.
fn grazes(p: &AnnotatedPolygon, a: &Point, i: usize) -> bool {
    let m = p.vertices.len();
    if !p.is_reflex(i) {
        return false;
    }
    let q = &p.vertices[i];
    let prev = &p.vertices[(i + m - 1) % m];
    let next = &p.vertices[(i + 1) % m];
    let (o1, o2) = (orientation(a, q, prev), orientation(a, q, next));
    o1 != Orientation::Collinear && o1 == o2
}

/// Ray from `a` through reflex vertex `i`: the exit point beyond it, when the
/// chord from `a` to that exit grazes only vertex `i`.
pub fn grazing_chord(p: &AnnotatedPolygon, a: &Point, i: usize) -> Option<(Point, usize)> {
    grazing_chord_in(&Outline::new(p), a, i)
}

fn grazing_chord_in(o: &Outline, a: &Point, i: usize) -> Option<(Point, usize)> {
    let p = o.p;
    if !grazes(p, a, i) {
        return None;
    }
    let q = &p.vertices[i];
    if q == a {
        return None;
    }
    // far point beyond the polygon along the ray
    let (dx, dy) = q.sub(a);
    let span = bbox_span(p) * rat(4, 1);
    let len = (&dx).abs() + (&dy).abs();
    let k = &span / &len + Rat::one();
    let far = Point::new(&a.x + &dx * &k, &a.y + &dy * &k);
    let ray = Segment::new(a.clone(), far);
    let tq = ray.param(q);
    let mut best: Option<(Rat, Point, usize)> = None;
    let ray_shadow = [Approx::of(&ray.a), Approx::of(&ray.b)];
    for (s, hit) in o.hits(&ray, &ray_shadow) {
        let hit = match hit {
            Intersection::Proper(h) => h,
            Intersection::Touch(h) if h != *q && h != *a => {
                if ray.param(&h) > tq {
                    return None; // would run through another vertex
                }
                continue;
            }
            _ => continue,
        };
        let t = ray.param(&hit);
        if t > tq && best.as_ref().is_none_or(|(bt, _, _)| t < *bt) {
            best = Some((t, hit, s));
        }
    }
    let (_, exit, side) = best?;
    chord_inside_in(o, a, &exit, &[q]).then_some((exit, side))
}

pub(crate) fn bbox_span(p: &AnnotatedPolygon) -> Rat {
    let xs = p.vertices.iter().map(|v| &v.x);
    let ys = p.vertices.iter().map(|v| &v.y);
    let w = xs.clone().max().unwrap() - xs.min().unwrap();
    let h = ys.clone().max().unwrap() - ys.min().unwrap();
    if w > h {
        w
    } else {
        h
    }
}

/// Power of two not below `r` (for `r > 0`).
fn pow2_ceil(r: &Rat) -> Rat {
    let mut x = Rat::one();
    while &x < r {
        x *= rat(2, 1);
    }
    while &(&x / rat(2, 1)) >= r {
        x /= rat(2, 1);
    }
    x
}

/// Rounds to the nearest multiple of `2^-bits`.
pub(crate) fn round_dyadic(r: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits as usize;
    let scaled = r * Rat::from_integer(scale.clone());
    let num = (scaled + rat(1, 2)).floor().to_integer();
    Rat::new(num, scale)
}

/// Line `a x + b y = c` with the triangle interior on the side `< c`.
struct Line {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl Line {
    fn through(p: &Point, q: &Point, inside: &Point) -> Line {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        let l = Line { a, b, c };
        if l.eval(inside) > l.c {
            Line { a: -l.a, b: -l.b, c: -l.c }
        } else {
            l
        }
    }

    fn eval(&self, p: &Point) -> Rat {
        &self.a * &p.x + &self.b * &p.y
    }

    fn shifted(&self, delta: &Rat) -> Line {
        let norm = self.a.abs() + self.b.abs();
        Line { a: self.a.clone(), b: self.b.clone(), c: &self.c + delta * norm }
    }

    fn meet(&self, o: &Line) -> Point {
        let det = &self.a * &o.b - &self.b * &o.a;
        let x = (&self.c * &o.b - &self.b * &o.c) / &det;
        let y = (&self.a * &o.c - &self.c * &o.a) / &det;
        Point::new(x, y)
    }
}

/// Triangle with vertices `x, y, z` grown by pushing every edge line out by
/// `delta` (in L1-normalized units), rounded to a dyadic grid finer than `delta`.
pub(crate) fn grown(x: &Point, y: &Point, z: &Point, delta: &Rat, bits: u32) -> Option<Triangle> {
    let c = Point::new((&x.x + &y.x + &z.x) / rat(3, 1), (&x.y + &y.y + &z.y) / rat(3, 1));
    let lxy = Line::through(x, y, &c).shifted(delta);
    let lyz = Line::through(y, z, &c).shifted(delta);
    let lzx = Line::through(z, x, &c).shifted(delta);
    let r = |p: Point| Point::new(round_dyadic(&p.x, bits), round_dyadic(&p.y, bits));
    Triangle::new(r(lzx.meet(&lxy)), r(lxy.meet(&lyz)), r(lyz.meet(&lzx))).ok()
}

/// Checks that the chords of `spec` form a triangle inside the polygon that
/// touches the boundary exactly at its anchors and the engulfed vertices.
pub fn validate_spec(p: &AnnotatedPolygon, spec: &ProtrusionSpec) -> Result<[Point; 3], ConstructError> {
    validate_in(&Outline::new(p), spec)
}

fn validate_in(o: &Outline, spec: &ProtrusionSpec) -> Result<[Point; 3], ConstructError> {
    let p = o.p;
    let bad = |why: &str| Err(ConstructError::BadSpec(why.to_string()));
    let m = p.side_count();
    let sides: Vec<usize> = spec.anchors.iter().map(|a| a.side).collect();
    if sides.iter().any(|&s| s >= m) || sides[0] == sides[1] || sides[1] == sides[2] || sides[0] == sides[2] {
        return bad("anchors need three distinct sides");
    }
    if spec.anchors.iter().any(|a| !a.t.is_positive() || a.t >= Rat::one()) {
        return bad("anchor parameter outside (0, 1)");
    }
    if spec.engulfed.len() > 2 {
        return bad("at most two engulfed vertices");
    }
    if spec.engulfed.len() == 2 {
        let (i, j) = (spec.engulfed[0], spec.engulfed[1]);
        if (i + 1) % m == j || (j + 1) % m == i {
            return bad("engulfed vertices must not be consecutive");
        }
    }
    if spec.engulfed.iter().any(|&i| i >= m || !p.is_reflex(i)) {
        return bad("engulfed vertex is not reflex");
    }
    let pts = spec.points(p);
    if orientation(&pts[0], &pts[1], &pts[2]) == Orientation::Collinear {
        return bad("anchors are collinear");
    }
    let touch: Vec<&Point> = spec.engulfed.iter().map(|&i| &p.vertices[i]).collect();
    for k in 0..3 {
        if !chord_inside_in(o, &pts[k], &pts[(k + 1) % 3], &touch) {
            return bad("an edge leaves the polygon");
        }
    }
    // every engulfed vertex sits on some edge and is grazed there
    for &i in &spec.engulfed {
        let q = &p.vertices[i];
        let on_edge = (0..3).any(|k| {
            let (a, b) = (&pts[k], &pts[(k + 1) % 3]);
            cross(a, b, q).is_zero() && Segment::new(a.clone(), b.clone()).contains(q) && grazes(p, a, i)
        });
        if !on_edge {
            return bad("engulfed vertex is not grazed by an edge");
        }
    }
    // no further vertices on the closed triangle
    let t = Triangle::new(pts[0].clone(), pts[1].clone(), pts[2].clone()).expect("checked non-collinear");
    for (i, v) in p.vertices.iter().enumerate() {
        if !spec.engulfed.contains(&i) && point_vs_triangle(v, &t) != Location::Outside {
            return bad("a polygon vertex touches the new triangle");
        }
    }
    Ok(pts)
}

/// Smallest `delta` exponent tried, and the largest.
pub const DELTA_START: u32 = 10;
pub const DELTA_END: u32 = 60;

/// Appends the triangle described by `spec`, halving the push-out until the
/// union certifies with exactly `9 + engulfed` more sides.
pub fn add_protruded(s: &Scene, spec: &ProtrusionSpec) -> Result<Scene, ConstructError> {
    let p = union_boundary(s).into_polygon().ok_or(ConstructError::NotSimple)?;
    let pts = validate_spec(&p, spec)?;
    let want = p.side_count() + 9 + spec.engulfed.len();
    let scale = pow2_ceil(&bbox_span(&p));
    for k in DELTA_START..=DELTA_END {
        let delta = &scale / Rat::from_integer(BigInt::one() << k as usize);
        let bits = k + 24 + scale_bits(&scale);
        let Some(t) = grown(&pts[0], &pts[1], &pts[2], &delta, bits) else { continue };
        let mut next = s.clone();
        next.push(t);
        if union_boundary(&next).sides() == Some(want) {
            return Ok(next);
        }
    }
    Err(ConstructError::CertificationFailed { wanted: want })
}

/// Bits needed below 1 for a grid relative to `scale` (0 for scale >= 1).
fn scale_bits(scale: &Rat) -> u32 {
    let f = to_f64(scale);
    if f >= 1.0 {
        0
    } else {
        (-f.log2()).ceil() as u32
    }
}

/// Anchor parameters tried by the finder.
fn params() -> [Rat; 3] {
    [rat(1, 2), rat(1, 3), rat(2, 3)]
}

/// Searches for a valid protrusion engulfing exactly `engulf` vertices, with
/// the first anchor restricted to `first_sides` when given. Deterministic.
pub fn find_protrusion(p: &AnnotatedPolygon, engulf: usize, first_sides: Option<&[usize]>) -> Option<ProtrusionSpec> {
    let o = Outline::new(p);
    let m = p.side_count();
    let all: Vec<usize> = (0..m).collect();
    let firsts = first_sides.unwrap_or(&all);
    let reflex: Vec<usize> = (0..m).filter(|&i| p.is_reflex(i)).collect();
    let anchor_at = |side: usize, pt: &Point| {
        let (u, v) = p.side_endpoints(side);
        Anchor { side, t: Segment::new(u.clone(), v.clone()).fraction(pt) }
    };
    for &s0 in firsts {
        for t0 in params() {
            let a0 = Anchor { side: s0, t: t0 };
            let (u, v) = p.side_endpoints(s0);
            let x = u.lerp(v, &a0.t);
            let chords: Vec<(usize, Point, usize)> = if engulf == 0 {
                Vec::new()
            } else {
                reflex.iter().filter_map(|&q| grazing_chord_in(&o, &x, q).map(|(e, s)| (q, e, s))).collect()
            };
            let try_spec = |spec: ProtrusionSpec| validate_in(&o, &spec).ok().map(|_| spec);
            match engulf {
                2 => {
                    for (i, (q1, e1, s1)) in chords.iter().enumerate() {
                        for (q2, e2, s2) in chords.iter().skip(i + 1) {
                            let spec = ProtrusionSpec {
                                anchors: [a0.clone(), anchor_at(*s1, e1), anchor_at(*s2, e2)],
                                engulfed: vec![*q1, *q2],
                            };
                            if let Some(s) = try_spec(spec) {
                                return Some(s);
                            }
                        }
                    }
                }
                1 => {
                    for (q1, e1, s1) in &chords {
                        for s2 in 0..m {
                            for t2 in params() {
                                let spec = ProtrusionSpec {
                                    anchors: [a0.clone(), anchor_at(*s1, e1), Anchor { side: s2, t: t2 }],
                                    engulfed: vec![*q1],
                                };
                                if let Some(s) = try_spec(spec) {
                                    return Some(s);
                                }
                            }
                        }
                    }
                }
                0 => {
                    for s1 in 0..m {
                        for s2 in s1 + 1..m {
                            for (t1, t2) in params().into_iter().zip(params()) {
                                let spec = ProtrusionSpec {
                                    anchors: [a0.clone(), Anchor { side: s1, t: t1 }, Anchor { side: s2, t: t2 }],
                                    engulfed: Vec::new(),
                                };
                                if let Some(s) = try_spec(spec) {
                                    return Some(s);
                                }
                            }
                        }
                    }
                }
                _ => return None,
            }
        }
    }
    None
}
