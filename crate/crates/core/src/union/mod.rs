//! Union of a scene of triangles: certification as a simple polygon and the
//! per-triangle side bookkeeping used by everything downstream.
//!
//! Two independent evaluators live here. [`union_boundary`] splits all `3n`
//! edges against each other and walks the surviving boundary pieces;
//! [`oracle_union`] sweeps vertical slabs and rebuilds the boundary from
//! trapezoids. Both return identical results on every scene, which the test
//! suite checks on random input.

mod arrangement;
mod components;
mod oracle;
mod polygon;

pub use arrangement::union_boundary;
pub use oracle::oracle_union;
pub use polygon::{AnnotatedPolygon, Side};

use std::fmt;

use crate::geom::{DegenerateTriangle, Point, Rat, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SceneError {
    #[error("a scene needs at least one triangle")]
    Empty,
    #[error("triangle {index} is degenerate")]
    Degenerate { index: usize },
}

/// An ordered list of non-degenerate triangles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scene {
    triangles: Vec<Triangle>,
}

impl Scene {
    pub fn new(triangles: Vec<Triangle>) -> Result<Self, SceneError> {
        if triangles.is_empty() {
            return Err(SceneError::Empty);
        }
        Ok(Scene { triangles })
    }

    /// Builds a scene from raw vertex triples (any orientation).
    pub fn from_points(tris: Vec<[Point; 3]>) -> Result<Self, SceneError> {
        let triangles = tris
            .into_iter()
            .enumerate()
            .map(|(i, [a, b, c])| {
                Triangle::new(a, b, c).map_err(|_| SceneError::Degenerate { index: i + 1 })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Scene::new(triangles)
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn push(&mut self, t: Triangle) {
        self.triangles.push(t);
    }

    /// Applies a point map to every vertex. The map must not collapse any triangle.
    pub fn map(&self, f: impl Fn(&Point) -> Point) -> Result<Scene, DegenerateTriangle> {
        let triangles = self
            .triangles
            .iter()
            .map(|t| t.map(&f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Scene { triangles })
    }

    /// Image under `p -> (a x + b y + e, c x + d y + f)`.
    pub fn affine(&self, m: [[Rat; 2]; 2], t: [Rat; 2]) -> Result<Scene, DegenerateTriangle> {
        self.map(|p| {
            Point::new(
                &m[0][0] * &p.x + &m[0][1] * &p.y + &t[0],
                &m[1][0] * &p.x + &m[1][1] * &p.y + &t[1],
            )
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RejectReason {
    /// The union is connected with connected interior but encloses a bounded
    /// uncovered region.
    Hole,
    /// The union falls apart into several pieces.
    DisconnectedInterior,
    /// The boundary passes twice through the same point.
    PinchPoint,
    /// The union is connected, but only through isolated contact points.
    DegenerateContact,
}

impl RejectReason {
    pub fn name(self) -> &'static str {
        match self {
            RejectReason::Hole => "hole",
            RejectReason::DisconnectedInterior => "disconnected-interior",
            RejectReason::PinchPoint => "pinch-point",
            RejectReason::DegenerateContact => "degenerate-contact",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub reason: RejectReason,
    /// Lexicographically smallest point demonstrating the reason.
    pub witness: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnionResult {
    SimplePolygon(AnnotatedPolygon),
    Rejected(Rejection),
}

impl UnionResult {
    pub fn polygon(&self) -> Option<&AnnotatedPolygon> {
        match self {
            UnionResult::SimplePolygon(p) => Some(p),
            UnionResult::Rejected(_) => None,
        }
    }

    pub fn into_polygon(self) -> Option<AnnotatedPolygon> {
        match self {
            UnionResult::SimplePolygon(p) => Some(p),
            UnionResult::Rejected(_) => None,
        }
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            UnionResult::SimplePolygon(_) => None,
            UnionResult::Rejected(r) => Some(r),
        }
    }

    /// Side count, or `None` when rejected.
    pub fn sides(&self) -> Option<usize> {
        self.polygon().map(|p| p.side_count())
    }
}

/// Number of sides of the certified union, `None` if it is not a simple polygon.
pub fn side_count_of(scene: &Scene) -> Option<usize> {
    union_boundary(scene).sides()
}
