//! Explicit scenes with many sides: the star, the protrusion families and
//! the `+11` induction from stored seeds.

mod induction;
mod protrude;

pub use induction::{eligible_sides, inflate_any, inflate_induction, is_eligible};
pub use protrude::{
    add_protruded, chord_inside, find_protrusion, grazing_chord, locate, validate_spec, Anchor, ProtrusionSpec,
    DELTA_END, DELTA_START,
};

use crate::geom::{rat, Point, Rat, Segment, Triangle};
use crate::io::parse_scene;
use crate::union::{union_boundary, AnnotatedPolygon, Scene};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("the current union is not a simple polygon")]
    NotSimple,
    #[error("invalid protrusion: {0}")]
    BadSpec(String),
    #[error("no push-out distance certified the expected {wanted} sides")]
    CertificationFailed { wanted: usize },
    #[error("no side has both endpoints at edge crossings")]
    NoEligibleEdge,
    #[error("no valid +11 triangle found at induction step {step}")]
    InductionStuck { step: usize },
    #[error("n = {n} is below the smallest size {min} of this family")]
    TooSmall { n: usize, min: usize },
}

/// Stored 3-triangle inscribed scene with 22 sides.
pub const SEED_22: &str = include_str!("../../assets/inscribed-3-22.scene");
/// Stored 8-triangle inscribed scene with 79 sides.
pub const SEED_79: &str = include_str!("../../assets/inscribed-8-79.scene");

/// Two triangles swapped by a point reflection through their common
/// centroid: an affine image of the regular six-pointed star (12 sides).
pub fn hexagram() -> Scene {
    let p = |x, y| Point::from_ints(x, y);
    let t1 = Triangle::new(p(0, -4), p(4, 2), p(-4, 2)).unwrap();
    let t2 = Triangle::new(p(0, 4), p(-4, -2), p(4, -2)).unwrap();
    Scene::new(vec![t1, t2]).unwrap()
}

fn side_through(p: &AnnotatedPolygon, q: &Point) -> Option<Anchor> {
    (0..p.side_count()).find_map(|i| {
        let (u, v) = p.side_endpoints(i);
        let s = Segment::new(u.clone(), v.clone());
        (s.contains(q) && q != u && q != v).then(|| Anchor { side: i, t: s.fraction(q) })
    })
}

/// One large triangle plus `n - 1` triangles inscribed in it with vertices
/// at fraction `k / n` along its edges, each pushed out for `+9`.
pub fn family_9n6(n: usize) -> Result<Scene, ConstructError> {
    if n == 0 {
        return Err(ConstructError::TooSmall { n, min: 1 });
    }
    let (a, b, c) = (Point::from_ints(0, 0), Point::from_ints(64, 0), Point::from_ints(0, 64));
    let mut s = Scene::new(vec![Triangle::new(a.clone(), b.clone(), c.clone()).unwrap()]).unwrap();
    for k in 1..n {
        let t: Rat = rat(k as i64, n as i64);
        let pts = [a.lerp(&b, &t), b.lerp(&c, &t), c.lerp(&a, &t)];
        let p = union_boundary(&s).into_polygon().ok_or(ConstructError::NotSimple)?;
        let anchors = pts
            .iter()
            .map(|q| side_through(&p, q).ok_or_else(|| ConstructError::BadSpec("anchor off the boundary".into())))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = ProtrusionSpec { anchors: anchors.try_into().unwrap(), engulfed: Vec::new() };
        s = add_protruded(&s, &spec)?;
    }
    Ok(s)
}

/// Stored 22-sided base plus `n - 3` induction steps: `11n - 11` sides.
pub fn family_11n11(n: usize) -> Result<Scene, ConstructError> {
    if n < 4 {
        return Err(ConstructError::TooSmall { n, min: 4 });
    }
    inflate_any(&seed(SEED_22), n - 3)
}

/// Stored 79-sided seed plus `n - 8` induction steps: `11n - 9` sides.
pub fn family_11n9(n: usize) -> Result<Scene, ConstructError> {
    if n < 9 {
        return Err(ConstructError::TooSmall { n, min: 9 });
    }
    inflate_any(&seed(SEED_79), n - 8)
}

/// Largest side count this crate can build for `n` triangles, and how.
pub fn best_lower_bound(n: usize) -> Option<(usize, &'static str)> {
    Some(match n {
        0 => return None,
        1 => (3, "single triangle"),
        2 => (12, "hexagram"),
        3 => (22, "inscribed asset"),
        4 => (33, "family 11n-11"),
        5 => (45, "inscribed asset"),
        6 => (56, "inscribed asset"),
        7 => (67, "inscribed asset"),
        8 => (80, "inscribed asset"),
        _ => (11 * n - 9, "family 11n-9"),
    })
}

fn seed(text: &str) -> Scene {
    parse_scene(text).expect("stored seed parses")
}
