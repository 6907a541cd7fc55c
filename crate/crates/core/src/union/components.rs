//! Connectivity of the union from pairwise triangle contacts.

use super::{RejectReason, Rejection};
use crate::geom::{boxes_apart, clearly_overlap, triangle_intersection, Approx, Point, Triangle};

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Rejects scenes whose union is disconnected, or connected only through
/// isolated points. Two triangles share interior exactly when their
/// intersection contains more than one point.
pub(crate) fn connectivity_rejection(tris: &[Triangle]) -> Option<Rejection> {
    let n = tris.len();
    let mut closed = UnionFind::new(n);
    let mut fat = UnionFind::new(n);
    let mut point_contacts: Vec<(usize, usize, Point)> = Vec::new();
    let shadows: Vec<[Approx; 3]> = tris.iter().map(|t| t.vertices().clone().map(|v| Approx::of(&v))).collect();
    for i in 0..n {
        for j in i + 1..n {
            if boxes_apart(&shadows[i], &shadows[j]) {
                continue;
            }
            if clearly_overlap(&shadows[i], &shadows[j]) {
                closed.union(i, j);
                fat.union(i, j);
                continue;
            }
            let inter = triangle_intersection(&tris[i], &tris[j]);
            match inter.len() {
                0 => {}
                1 => {
                    closed.union(i, j);
                    point_contacts.push((i, j, inter[0].clone()));
                }
                _ => {
                    closed.union(i, j);
                    fat.union(i, j);
                }
            }
        }
    }

    if closed.count() > 1 {
        let comp_min = |uf: &mut UnionFind, root: usize| -> Point {
            (0..n)
                .filter(|&i| uf.find(i) == root)
                .flat_map(|i| tris[i].vertices().iter().cloned())
                .min()
                .unwrap()
        };
        let mut roots: Vec<usize> = (0..n).filter(|&i| closed.find(i) == i).collect();
        roots.sort();
        let mut mins: Vec<Point> = roots.iter().map(|&r| comp_min(&mut closed, r)).collect();
        mins.sort();
        return Some(Rejection {
            reason: RejectReason::DisconnectedInterior,
            witness: mins[1].clone(),
        });
    }

    if fat.count() > 1 {
        let witness = point_contacts
            .into_iter()
            .filter(|(i, j, _)| fat.find(*i) != fat.find(*j))
            .map(|(_, _, p)| p)
            .min()
            .expect("connected union with split interior has a contact point");
        return Some(Rejection {
            reason: RejectReason::DegenerateContact,
            witness,
        });
    }
    None
}
