//! Strategies and checks shared by the property tests and the acceptance run.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use politrigon::construct::{family_11n11, family_11n9, family_9n6, hexagram};
use politrigon::ds::{refute_target, self_assemble, RefuteOptions};
use politrigon::geom::{Point, Rat, Triangle};
use politrigon::io::{parse_scene, write_scene};
use politrigon::search::{canonical_score_exact, search_max_sides, AngleConfig, SearchOptions};
use politrigon::union::{union_boundary, Scene};
use proptest::prelude::*;

pub fn r(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Scenes with 1 to `max_n` triangles whose coordinates are small fractions.
pub fn scene_strategy(max_n: usize) -> impl Strategy<Value = Scene> {
    let coord = (-12i64..=12, prop::sample::select(vec![1i64, 2, 3]));
    let point = (coord.clone(), coord).prop_map(|((x, dx), (y, dy))| Point::new(r(x, dx), r(y, dy)));
    let tri = prop::array::uniform3(point).prop_filter_map("degenerate", |[a, b, c]| Triangle::new(a, b, c).ok());
    prop::collection::vec(tri, 1..=max_n).prop_map(|t| Scene::new(t).unwrap())
}

/// Inscribed configurations with gaps bounded away from zero.
pub fn config_strategy(max_n: usize) -> impl Strategy<Value = AngleConfig> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0.3f64..3.0, 3 * n).prop_map(move |g| AngleConfig::new(n, g).unwrap())
    })
}

/// A similarity with rational entries: rotation from a Pythagorean triple,
/// scale, optional reflection, translation.
#[derive(Clone, Debug)]
pub struct Similarity {
    pub p: i64,
    pub q: i64,
    pub scale: (i64, i64),
    pub reflect: bool,
    pub shift: (i64, i64),
}

pub fn similarity_strategy() -> impl Strategy<Value = Similarity> {
    (1i64..8, 0i64..8, (1i64..9, 1i64..9), any::<bool>(), (-20i64..20, -20i64..20))
        .prop_filter("rotation needs p != q", |(p, q, ..)| p != q)
        .prop_map(|(p, q, scale, reflect, shift)| Similarity { p, q, scale, reflect, shift })
}

impl Similarity {
    pub fn apply(&self, s: &Scene) -> Scene {
        let h = self.p * self.p + self.q * self.q;
        let k = r(self.scale.0, self.scale.1);
        let c = r(self.p * self.p - self.q * self.q, h) * &k;
        let sn = r(2 * self.p * self.q, h) * &k;
        let sign = if self.reflect { r(-1, 1) } else { r(1, 1) };
        let m = [[c.clone(), -sn.clone()], [sn * &sign, c * &sign]];
        s.affine(m, [r(self.shift.0, 7), r(self.shift.1, 5)]).expect("similarities keep triangles")
    }
}

/// Side count and exact canonical score are unchanged by the similarity.
pub fn check_similarity(s: &Scene, g: &Similarity) -> Result<(), TestCaseError> {
    let a = union_boundary(s);
    let b = union_boundary(&g.apply(s));
    prop_assert_eq!(a.sides(), b.sides());
    if let (Some(pa), Some(pb)) = (a.polygon(), b.polygon()) {
        prop_assert_eq!(canonical_score_exact(pa), canonical_score_exact(pb));
    }
    Ok(())
}

/// Writing then parsing gives the same scene, and writing again the same text.
pub fn check_round_trip(s: &Scene) -> Result<(), TestCaseError> {
    let text = write_scene(s);
    let back = parse_scene(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, s);
    prop_assert_eq!(write_scene(&back), text);
    Ok(())
}

/// Seeded search returns the same configuration and trace twice.
pub fn check_search_determinism(n: usize, seed: u64) -> Result<(), TestCaseError> {
    let opts = SearchOptions { budget: 600, restarts: 2, seed, threads: Some(2), ..Default::default() };
    let a = search_max_sides(n, &opts);
    let b = search_max_sides(n, &opts);
    prop_assert_eq!(a.as_ref().map(|o| &o.config), b.as_ref().map(|o| &o.config));
    prop_assert_eq!(a.as_ref().map(|o| &o.trace), b.as_ref().map(|o| &o.trace));
    Ok(())
}

/// Every generator gives identical output on repeated calls.
pub fn generators_deterministic() -> bool {
    hexagram() == hexagram()
        && family_9n6(5).unwrap() == family_9n6(5).unwrap()
        && family_11n11(5).unwrap() == family_11n11(5).unwrap()
        && family_11n9(9).unwrap() == family_11n9(9).unwrap()
        && self_assemble(&[4, 3, 2], 5) == self_assemble(&[4, 3, 2], 5)
        && {
            let o = RefuteOptions::for_target(4, 34);
            refute_target(4, 34, &o).ok().map(|r| r.audit_log()) == refute_target(4, 34, &o).ok().map(|r| r.audit_log())
        }
}
