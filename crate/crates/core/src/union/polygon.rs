use num_traits::{Signed, Zero};

use crate::geom::{int, orientation, signed_area2, Orientation, Point, Rat};

/// One side of the union polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    /// Zero-based index of the triangle whose edge carries this side. When
    /// several collinear edges feed one side, the lowest index wins.
    pub owner: usize,
    /// Edge of the owner (edge `k` joins its vertices `k` and `k + 1`).
    pub edge_index: usize,
    pub length_sq: Rat,
}

/// A simple polygon traversed counterclockwise, starting at its
/// lexicographically smallest vertex. Side `i` joins vertex `i` to `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnnotatedPolygon {
    pub vertices: Vec<Point>,
    pub sides: Vec<Side>,
    /// Number of triangles in the scene that produced it.
    pub n: usize,
}

/// A directed boundary piece with interior on its left.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub a: Point,
    pub b: Point,
    pub owner: usize,
    pub edge: usize,
}

impl AnnotatedPolygon {
    pub fn side_count(&self) -> usize {
        self.sides.len()
    }

    /// Number of sides owned by each triangle.
    pub fn contributions(&self) -> Vec<usize> {
        let mut l = vec![0; self.n];
        for s in &self.sides {
            l[s.owner] += 1;
        }
        l
    }

    pub fn area(&self) -> Rat {
        signed_area2(&self.vertices) / int(2)
    }

    pub fn sum_len_sq(&self) -> Rat {
        self.sides.iter().map(|s| &s.length_sq).sum()
    }

    pub fn side_endpoints(&self, i: usize) -> (&Point, &Point) {
        let m = self.vertices.len();
        (&self.vertices[i % m], &self.vertices[(i + 1) % m])
    }

    /// Vertex `i` is reflex (interior angle above 180 degrees).
    pub fn is_reflex(&self, i: usize) -> bool {
        let m = self.vertices.len();
        let prev = &self.vertices[(i + m - 1) % m];
        let cur = &self.vertices[i % m];
        let next = &self.vertices[(i + 1) % m];
        orientation(prev, cur, next) == Orientation::Clockwise
    }

    /// Assembles a polygon from one closed chain of pieces (in boundary
    /// order), merging collinear runs.
    pub(crate) fn from_cycle(pieces: &[Piece], n: usize) -> AnnotatedPolygon {
        let m = pieces.len();
        let is_corner = |i: usize| {
            let prev = &pieces[(i + m - 1) % m];
            orientation(&prev.a, &pieces[i].a, &pieces[i].b) != Orientation::Collinear
        };
        let corners: Vec<usize> = (0..m).filter(|&i| is_corner(i)).collect();
        let start = corners
            .iter()
            .copied()
            .min_by(|&i, &j| pieces[i].a.cmp(&pieces[j].a))
            .expect("a closed chain has corners");
        let mut vertices = Vec::new();
        let mut sides: Vec<Side> = Vec::new();
        for step in 0..m {
            let i = (start + step) % m;
            let p = &pieces[i];
            if is_corner(i) {
                vertices.push(p.a.clone());
                sides.push(Side {
                    owner: p.owner,
                    edge_index: p.edge,
                    length_sq: Rat::zero(),
                });
            } else {
                let last = sides.last_mut().unwrap();
                if p.owner < last.owner {
                    last.owner = p.owner;
                    last.edge_index = p.edge;
                }
            }
        }
        let k = vertices.len();
        for (i, s) in sides.iter_mut().enumerate() {
            s.length_sq = vertices[i].dist_sq(&vertices[(i + 1) % k]);
        }
        AnnotatedPolygon { vertices, sides, n }
    }
}

/// Corners of a closed chain (points where the direction changes).
pub(crate) fn chain_corners(pieces: &[Piece]) -> Vec<Point> {
    let m = pieces.len();
    (0..m)
        .filter(|&i| {
            let prev = &pieces[(i + m - 1) % m];
            orientation(&prev.a, &pieces[i].a, &pieces[i].b) != Orientation::Collinear
        })
        .map(|i| pieces[i].a.clone())
        .collect()
}

pub(crate) fn chain_area2(pieces: &[Piece]) -> Rat {
    let pts: Vec<Point> = pieces.iter().map(|p| p.a.clone()).collect();
    signed_area2(&pts)
}

/// Splits a set of directed pieces (each vertex with in = out = 1) into closed chains.
pub(crate) fn chains(pieces: Vec<Piece>) -> Vec<Vec<Piece>> {
    use std::collections::BTreeMap;
    let mut next: BTreeMap<Point, usize> = BTreeMap::new();
    for (i, p) in pieces.iter().enumerate() {
        next.insert(p.a.clone(), i);
    }
    let mut used = vec![false; pieces.len()];
    let mut out = Vec::new();
    for s in 0..pieces.len() {
        if used[s] {
            continue;
        }
        let mut chain = Vec::new();
        let mut i = s;
        while !used[i] {
            used[i] = true;
            chain.push(pieces[i].clone());
            i = next[&pieces[i].b];
        }
        out.push(chain);
    }
    out
}

/// Hole witness: smallest corner over all clockwise chains.
pub(crate) fn hole_witness(chains: &[Vec<Piece>]) -> Option<Point> {
    chains
        .iter()
        .filter(|c| chain_area2(c).is_negative())
        .flat_map(|c| chain_corners(c))
        .min()
}
