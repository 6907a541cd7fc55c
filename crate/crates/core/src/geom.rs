//! Exact rational plane primitives.
//!
//! Every predicate here is decided over arbitrary-precision rationals. The
//! `*_filtered` variants first look at float shadows and answer directly only
//! when a conservative error bound leaves no doubt about the sign.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Nearest rational with denominator `2^bits` (round half away from zero).
pub fn rat_from_f64(v: f64, bits: u32) -> Rat {
    assert!(v.is_finite(), "cannot rationalize {v}");
    let scale = 2f64.powi(bits as i32);
    let num = (v * scale).round();
    let num = BigInt::from(num as i128);
    Rat::new(num, BigInt::one() << bits as usize)
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let shift = r.denom().bits().saturating_sub(900);
        let n = (r.numer() >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift as usize).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn sub(&self, o: &Point) -> (Rat, Rat) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        let two = int(2);
        Point::new((&self.x + &o.x) / &two, (&self.y + &o.y) / &two)
    }

    /// `self + t (o - self)`.
    pub fn lerp(&self, o: &Point, t: &Rat) -> Point {
        Point::new(
            &self.x + (&o.x - &self.x) * t,
            &self.y + (&o.y - &self.y) * t,
        )
    }

    pub fn dist_sq(&self, o: &Point) -> Rat {
        let (xn, xd) = diff_unreduced(&self.x, &o.x);
        let (yn, yd) = diff_unreduced(&self.y, &o.y);
        let (xd2, yd2) = (&xd * &xd, &yd * &yd);
        Rat::new(&xn * &xn * &yd2 + &yn * &yn * &xd2, xd2 * yd2)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

pub fn cross(p: &Point, q: &Point, r: &Point) -> Rat {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    ax * by - ay * bx
}

/// `a - b` as an unreduced fraction with positive denominator.
fn diff_unreduced(a: &Rat, b: &Rat) -> (BigInt, BigInt) {
    if a.denom() == b.denom() {
        return (a.numer() - b.numer(), a.denom().clone());
    }
    (a.numer() * b.denom() - b.numer() * a.denom(), a.denom() * b.denom())
}

/// Sign of `(q - p) x (r - p)`, computed on integers without gcd reductions.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let (axn, axd) = diff_unreduced(&q.x, &p.x);
    let (ayn, ayd) = diff_unreduced(&q.y, &p.y);
    let (bxn, bxd) = diff_unreduced(&r.x, &p.x);
    let (byn, byd) = diff_unreduced(&r.y, &p.y);
    // ax*by - ay*bx = axn*byn/(axd*byd) - ayn*bxn/(ayd*bxd)
    let lhs = axn * byn * (&ayd * &bxd);
    let rhs = ayn * bxn * (&axd * &byd);
    match lhs.cmp(&rhs) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Panics if the endpoints coincide.
    pub fn new(a: Point, b: Point) -> Self {
        assert!(a != b, "degenerate segment at {a:?}");
        Segment { a, b }
    }

    /// Signed position of `p` along the supporting line, scaled by |b - a|^2.
    /// Monotone along the segment direction.
    pub fn param(&self, p: &Point) -> Rat {
        let (dxn, dxd) = diff_unreduced(&self.b.x, &self.a.x);
        let (dyn_, dyd) = diff_unreduced(&self.b.y, &self.a.y);
        let (pxn, pxd) = diff_unreduced(&p.x, &self.a.x);
        let (pyn, pyd) = diff_unreduced(&p.y, &self.a.y);
        let (d1, d2) = (dxd * pxd, dyd * pyd);
        Rat::new(dxn * pxn * &d2 + dyn_ * pyn * &d1, d1 * d2)
    }

    /// Position of `p` along the segment: 0 at `a`, 1 at `b`.
    pub fn fraction(&self, p: &Point) -> Rat {
        self.param(p) / self.len_sq()
    }

    /// Whether a point known to be collinear with the segment lies on it.
    fn contains_collinear(&self, p: &Point) -> bool {
        let t = self.param(p);
        !t.is_negative() && t <= self.param(&self.b)
    }

    pub fn contains(&self, p: &Point) -> bool {
        orientation(&self.a, &self.b, p) == Orientation::Collinear && self.contains_collinear(p)
    }

    pub fn len_sq(&self) -> Rat {
        self.a.dist_sq(&self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    None,
    /// The interiors cross at a single point.
    Proper(Point),
    /// An endpoint of one segment lies on the other.
    Touch(Point),
    /// Collinear with a shared sub-segment of positive length.
    Overlap(Segment),
}

pub fn intersect_segments(s: &Segment, t: &Segment) -> Intersection {
    let o1 = orientation(&s.a, &s.b, &t.a).sign();
    let o2 = orientation(&s.a, &s.b, &t.b).sign();
    let o3 = orientation(&t.a, &t.b, &s.a).sign();
    let o4 = orientation(&t.a, &t.b, &s.b).sign();

    if o1 == 0 && o2 == 0 {
        return collinear_overlap(s, t);
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Intersection::Proper(line_intersection(s, t));
    }
    // remaining candidates are endpoint contacts; pick the smallest for symmetry
    let mut touches = Vec::new();
    if o1 == 0 && s.contains_collinear(&t.a) {
        touches.push(t.a.clone());
    }
    if o2 == 0 && s.contains_collinear(&t.b) {
        touches.push(t.b.clone());
    }
    if o3 == 0 && t.contains_collinear(&s.a) {
        touches.push(s.a.clone());
    }
    if o4 == 0 && t.contains_collinear(&s.b) {
        touches.push(s.b.clone());
    }
    match touches.into_iter().min() {
        Some(p) => Intersection::Touch(p),
        None => Intersection::None,
    }
}

fn collinear_overlap(s: &Segment, t: &Segment) -> Intersection {
    // order all four endpoints along s's direction
    let key = |p: &Point| s.param(p);
    let (s0, s1) = (s.a.clone(), s.b.clone());
    let (mut t0, mut t1) = (t.a.clone(), t.b.clone());
    if key(&t0) > key(&t1) {
        std::mem::swap(&mut t0, &mut t1);
    }
    let lo = if key(&s0) >= key(&t0) { s0 } else { t0 };
    let hi = if key(&s1) <= key(&t1) { s1 } else { t1 };
    match key(&lo).cmp(&key(&hi)) {
        Ordering::Less => {
            // canonical direction so that the result does not depend on argument order
            if lo < hi {
                Intersection::Overlap(Segment::new(lo, hi))
            } else {
                Intersection::Overlap(Segment::new(hi, lo))
            }
        }
        Ordering::Equal => Intersection::Touch(lo),
        Ordering::Greater => Intersection::None,
    }
}

/// Intersection of the supporting lines; callers guarantee they are not parallel.
/// All eight coordinates are brought to one integer denominator so the point
/// costs a single reduction per coordinate.
pub fn line_intersection(s: &Segment, t: &Segment) -> Point {
    let coords = [&s.a.x, &s.a.y, &s.b.x, &s.b.y, &t.a.x, &t.a.y, &t.b.x, &t.b.y];
    let mut l = BigInt::one();
    for c in coords {
        if !c.denom().is_one() && &l % c.denom() != BigInt::zero() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
    }
    let z: Vec<BigInt> = coords.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let (x1, y1, x2, y2, x3, y3, x4, y4) = (&z[0], &z[1], &z[2], &z[3], &z[4], &z[5], &z[6], &z[7]);
    let d = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4);
    let c1 = x1 * y2 - y1 * x2;
    let c2 = x3 * y4 - y3 * x4;
    let px = &c1 * (x3 - x4) - (x1 - x2) * &c2;
    let py = &c1 * (y3 - y4) - (y1 - y2) * &c2;
    let den = d * l;
    Point::new(Rat::new(px, den.clone()), Rat::new(py, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("degenerate triangle (collinear vertices {0:?}, {1:?}, {2:?})")]
pub struct DegenerateTriangle(pub Point, pub Point, pub Point);

/// A non-degenerate triangle with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    v: [Point; 3],
}

impl Triangle {
    /// Builds a triangle, swapping the last two vertices if they were given clockwise.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self, DegenerateTriangle> {
        match orientation(&a, &b, &c) {
            Orientation::CounterClockwise => Ok(Triangle { v: [a, b, c] }),
            Orientation::Clockwise => Ok(Triangle { v: [a, c, b] }),
            Orientation::Collinear => Err(DegenerateTriangle(a, b, c)),
        }
    }

    pub fn vertices(&self) -> &[Point; 3] {
        &self.v
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.v[i % 3]
    }

    /// Edge `k` runs from vertex `k` to vertex `k + 1`; the interior is on its left.
    pub fn edge(&self, k: usize) -> Segment {
        Segment::new(self.v[k % 3].clone(), self.v[(k + 1) % 3].clone())
    }

    pub fn edges(&self) -> [Segment; 3] {
        [self.edge(0), self.edge(1), self.edge(2)]
    }

    pub fn area2(&self) -> Rat {
        cross(&self.v[0], &self.v[1], &self.v[2])
    }

    pub fn centroid(&self) -> Point {
        let three = int(3);
        Point::new(
            (&self.v[0].x + &self.v[1].x + &self.v[2].x) / &three,
            (&self.v[0].y + &self.v[1].y + &self.v[2].y) / &three,
        )
    }

    pub fn map(&self, f: impl Fn(&Point) -> Point) -> Result<Triangle, DegenerateTriangle> {
        Triangle::new(f(&self.v[0]), f(&self.v[1]), f(&self.v[2]))
    }
}

/// Float shadow of a point, used to settle clear-cut predicates quickly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub x: f64,
    pub y: f64,
}

impl Approx {
    pub fn of(p: &Point) -> Approx {
        let (x, y) = p.to_f64();
        Approx { x, y }
    }
}

/// Orientation from float shadows, or `None` when rounding could flip it.
/// Each shadow coordinate is within a relative 2^-52 of the exact value, so
/// the float cross product is within `1e-12 * scale^2` of the exact one.
pub fn approx_orientation(p: Approx, q: Approx, r: Approx) -> Option<Orientation> {
    let scale = [p.x, p.y, q.x, q.y, r.x, r.y].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !scale.is_finite() || scale > 1e100 || (scale < 1e-100 && scale != 0.0) {
        return None;
    }
    let c = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    let tol = 1e-12 * scale * scale;
    if c > tol {
        Some(Orientation::CounterClockwise)
    } else if c < -tol {
        Some(Orientation::Clockwise)
    } else {
        None
    }
}

/// [`point_vs_triangle`] with a float pre-check; `pa` and `ta` are the shadows.
pub fn point_vs_triangle_filtered(p: &Point, pa: Approx, t: &Triangle, ta: &[Approx; 3]) -> Location {
    let mut clear_inside = true;
    for k in 0..3 {
        match approx_orientation(ta[k], ta[(k + 1) % 3], pa) {
            Some(Orientation::Clockwise) => return Location::Outside,
            Some(_) => {}
            None => clear_inside = false,
        }
    }
    if clear_inside {
        Location::Inside
    } else {
        point_vs_triangle(p, t)
    }
}

/// [`intersect_segments`] that skips the exact work when the float shadows
/// already separate the segments.
pub fn intersect_segments_filtered(s: &Segment, t: &Segment, sa: &[Approx; 2], ta: &[Approx; 2]) -> Intersection {
    let apart = |a: &[Approx; 2], b: &[Approx; 2]| {
        matches!(
            (approx_orientation(a[0], a[1], b[0]), approx_orientation(a[0], a[1], b[1])),
            (Some(x), Some(y)) if x == y
        )
    };
    if apart(sa, ta) || apart(ta, sa) {
        return Intersection::None;
    }
    intersect_segments(s, t)
}

/// Interiors of two triangles certainly overlap: some edge pair crosses
/// properly, or a vertex is strictly inside the other triangle.
pub fn clearly_overlap(a: &[Approx; 3], b: &[Approx; 3]) -> bool {
    let ccw = Some(Orientation::CounterClockwise);
    let inside = |t: &[Approx; 3], p: Approx| (0..3).all(|k| approx_orientation(t[k], t[(k + 1) % 3], p) == ccw);
    if a.iter().any(|&p| inside(b, p)) || b.iter().any(|&p| inside(a, p)) {
        return true;
    }
    for i in 0..3 {
        for j in 0..3 {
            let (p, q) = (a[i], a[(i + 1) % 3]);
            let (r, s) = (b[j], b[(j + 1) % 3]);
            let o = [
                approx_orientation(p, q, r),
                approx_orientation(p, q, s),
                approx_orientation(r, s, p),
                approx_orientation(r, s, q),
            ];
            if o.iter().all(Option::is_some) && o[0] != o[1] && o[2] != o[3] {
                return true;
            }
        }
    }
    false
}

/// Float bounding boxes that are clearly apart (with slack for rounding).
pub fn boxes_apart(a: &[Approx], b: &[Approx]) -> bool {
    let bx = |v: &[Approx]| {
        v.iter().fold((f64::MAX, f64::MAX, f64::MIN, f64::MIN), |(x0, y0, x1, y1), p| {
            (x0.min(p.x), y0.min(p.y), x1.max(p.x), y1.max(p.y))
        })
    };
    let (ax0, ay0, ax1, ay1) = bx(a);
    let (bx0, by0, bx1, by1) = bx(b);
    let scale = [ax0, ay0, ax1, ay1, bx0, by0, bx1, by1].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !scale.is_finite() {
        return false;
    }
    let slack = 1e-12 * scale.max(1e-300);
    ax1 + slack < bx0 || bx1 + slack < ax0 || ay1 + slack < by0 || by1 + slack < ay0
}

pub fn point_vs_triangle(p: &Point, t: &Triangle) -> Location {
    let mut on_edge = false;
    for k in 0..3 {
        match orientation(t.vertex(k), t.vertex(k + 1), p) {
            Orientation::Clockwise => return Location::Outside,
            Orientation::Collinear => on_edge = true,
            Orientation::CounterClockwise => {}
        }
    }
    if on_edge {
        Location::OnBoundary
    } else {
        Location::Inside
    }
}

/// Intersection of two closed triangles as a (possibly degenerate) convex
/// polygon, with duplicate points removed.
pub fn triangle_intersection(a: &Triangle, b: &Triangle) -> Vec<Point> {
    let mut poly: Vec<Point> = a.vertices().to_vec();
    for k in 0..3 {
        if poly.is_empty() {
            break;
        }
        let (p, q) = (b.vertex(k), b.vertex(k + 1));
        let mut out = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let cur = &poly[i];
            let nxt = &poly[(i + 1) % poly.len()];
            let c_in = !cross(p, q, cur).is_negative();
            let n_in = !cross(p, q, nxt).is_negative();
            if c_in {
                out.push(cur.clone());
            }
            if c_in != n_in {
                let ci = cross(p, q, cur);
                let ni = cross(p, q, nxt);
                let t = &ci / (&ci - &ni);
                out.push(cur.lerp(nxt, &t));
            }
        }
        poly = out;
    }
    let mut uniq: Vec<Point> = Vec::new();
    for p in poly {
        if !uniq.contains(&p) {
            uniq.push(p);
        }
    }
    uniq
}

/// Twice the signed area of a closed polyline.
pub fn signed_area2(pts: &[Point]) -> Rat {
    let mut s = Rat::zero();
    for i in 0..pts.len() {
        let a = &pts[i];
        let b = &pts[(i + 1) % pts.len()];
        s += &a.x * &b.y - &a.y * &b.x;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1))
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)).sign(), 1);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)).sign(), 0);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)).sign(), -1);
    }

    #[test]
    fn segment_examples() {
        assert_eq!(
            intersect_segments(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))),
            Intersection::Proper(p(1, 1))
        );
        assert_eq!(
            intersect_segments(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))),
            Intersection::None
        );
        assert_eq!(
            intersect_segments(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
            Intersection::Overlap(seg((1, 0), (2, 0)))
        );
    }

    #[test]
    fn touches() {
        assert_eq!(
            intersect_segments(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 5))),
            Intersection::Touch(p(1, 0))
        );
        assert_eq!(
            intersect_segments(&seg((0, 0), (2, 0)), &seg((2, 0), (3, 0))),
            Intersection::Touch(p(2, 0))
        );
        assert_eq!(
            intersect_segments(&seg((0, 0), (2, 0)), &seg((2, 0), (3, 7))),
            Intersection::Touch(p(2, 0))
        );
        assert_eq!(
            intersect_segments(&seg((0, 0), (2, 0)), &seg((3, 0), (3, 7))),
            Intersection::None
        );
    }

    #[test]
    fn triangle_location() {
        let t = Triangle::new(p(0, 0), p(3, 0), p(0, 3)).unwrap();
        assert_eq!(point_vs_triangle(&t.centroid(), &t), Location::Inside);
        assert_eq!(point_vs_triangle(&p(3, 0), &t), Location::OnBoundary);
        assert_eq!(point_vs_triangle(&p(-1, 1), &t), Location::Outside);
    }

    #[test]
    fn clockwise_input_is_normalized() {
        let t = Triangle::new(p(0, 0), p(0, 3), p(3, 0)).unwrap();
        assert!(t.area2().is_positive());
        assert!(Triangle::new(p(0, 0), p(1, 1), p(2, 2)).is_err());
    }

    #[test]
    fn triangle_intersection_kinds() {
        let a = Triangle::new(p(0, 0), p(2, 0), p(0, 2)).unwrap();
        let far = Triangle::new(p(5, 5), p(6, 5), p(5, 6)).unwrap();
        let corner = Triangle::new(p(2, 0), p(4, 0), p(3, 1)).unwrap();
        let shared_edge = Triangle::new(p(2, 0), p(0, 2), p(2, 2)).unwrap();
        assert!(triangle_intersection(&a, &far).is_empty());
        assert_eq!(triangle_intersection(&a, &corner), vec![p(2, 0)]);
        assert_eq!(triangle_intersection(&a, &shared_edge).len(), 2);
        assert_eq!(triangle_intersection(&a, &a).len(), 3);
    }

    #[test]
    fn rationalize() {
        assert_eq!(rat_from_f64(0.25, 10), rat(1, 4));
        assert_eq!(rat_from_f64(-0.5, 3), rat(-1, 2));
    }
}
