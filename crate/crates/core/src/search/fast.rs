//! Floating-point side counter for inscribed configurations.
//!
//! With all `3n` vertices on a circle in the order `i, n+i, 2n+i`, the edges
//! are exactly the chords `(j, j+n)`. The exterior near the arc between
//! consecutive points `k, k+1` is a convex pocket cut out by the `n` chords
//! spanning that arc, so its side count is the number of chords on the pocket
//! envelope. Pockets are pairwise disjoint, so the union is simple iff there is
//! no hole, and a hole shows up as an uncovered chord crossing that is not a
//! pocket vertex.
//!
//! Used only to steer the search; every result is re-certified exactly.

/// Per-configuration diagnostics from [`evaluate`].
#[derive(Clone, Debug, Default)]
pub struct FastEval {
    /// Side count when simple, `-1` otherwise.
    pub sides: i64,
    /// Sum over pockets of envelope sizes (equals `sides` when simple).
    pub pocket_sides: usize,
    /// Chord crossings not strictly covered by a third triangle.
    pub uncovered_crossings: usize,
    /// Smooth proximity term: hidden chords that almost reach a pocket envelope.
    pub near_miss: f64,
    /// Smallest pocket-envelope piece, in chord parameter units.
    pub min_piece: f64,
    /// Smallest absolute orientation value met while deciding coverage of a
    /// crossing; tiny values mean the float answer is not trustworthy.
    pub min_cover_margin: f64,
}

pub fn points_from_angles(angles: &[f64]) -> Vec<[f64; 2]> {
    angles.iter().map(|a| [a.cos(), a.sin()]).collect()
}

#[inline]
fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Side count of the union for `n` inscribed triangles at the given angles
/// (strictly increasing, length `3n`). Returns `-1` if not simple.
pub fn score_angles(n: usize, angles: &[f64]) -> i64 {
    evaluate(n, &points_from_angles(angles), 0.0).sides
}

/// Full evaluation. `near_scale > 0` enables the smooth near-miss term.
pub fn evaluate(n: usize, pts: &[[f64; 2]], near_scale: f64) -> FastEval {
    let big_n = 3 * n;
    debug_assert_eq!(pts.len(), big_n);
    if n == 1 {
        return FastEval {
            sides: 3,
            pocket_sides: 3,
            min_piece: 1.0,
            min_cover_margin: 1.0,
            ..Default::default()
        };
    }
    let chord = |j: usize| (pts[j % big_n], pts[(j + n) % big_n]);

    let mut pocket_sides = 0usize;
    let mut near_miss = 0.0;
    let mut min_piece = f64::INFINITY;
    // half-planes of the chords spanning pocket k: normal points to the arc side
    let mut hp: Vec<([f64; 2], [f64; 2], [f64; 2])> = Vec::with_capacity(n);
    for k in 0..big_n {
        hp.clear();
        let a = pts[k];
        let b = pts[(k + 1) % big_n];
        let arc_mid = [a[0] + b[0], a[1] + b[1]];
        for t in 0..n {
            let (p, q) = chord(k + big_n - t);
            let d = [q[0] - p[0], q[1] - p[1]];
            let mut nv = [-d[1], d[0]];
            if nv[0] * (arc_mid[0] - 2.0 * p[0]) + nv[1] * (arc_mid[1] - 2.0 * p[1]) < 0.0 {
                nv = [-nv[0], -nv[1]];
            }
            hp.push((p, d, nv));
        }
        for i in 0..n {
            let (p, d, _) = hp[i];
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for (j, &(p2, _, n2)) in hp.iter().enumerate() {
                if j == i {
                    continue;
                }
                let c0 = n2[0] * (p[0] - p2[0]) + n2[1] * (p[1] - p2[1]);
                let c1 = n2[0] * d[0] + n2[1] * d[1];
                if c1 > 0.0 {
                    lo = lo.max(-c0 / c1);
                } else if c1 < 0.0 {
                    hi = hi.min(-c0 / c1);
                } else if c0 < 0.0 {
                    hi = lo - 1.0;
                }
            }
            let piece = hi - lo;
            if piece > 0.0 {
                pocket_sides += 1;
                min_piece = min_piece.min(piece);
            } else if near_scale > 0.0 {
                near_miss += (piece / near_scale).exp();
            }
        }
    }

    let mut uncovered = 0usize;
    let mut min_cover_margin = f64::INFINITY;
    for a in 0..big_n {
        for off in 1..n {
            let b = a + off;
            let (p1, q1) = chord(a);
            let (p2, q2) = chord(b);
            let d1 = [q1[0] - p1[0], q1[1] - p1[1]];
            let d2 = [q2[0] - p2[0], q2[1] - p2[1]];
            let den = d1[0] * d2[1] - d1[1] * d2[0];
            let w = [p2[0] - p1[0], p2[1] - p1[1]];
            let t = (w[0] * d2[1] - w[1] * d2[0]) / den;
            let x = [p1[0] + t * d1[0], p1[1] + t * d1[1]];
            let (ta, tb) = (a % n, b % n);
            let mut covered = false;
            for t in (0..n).filter(|&t| t != ta && t != tb) {
                let v0 = pts[t];
                let v1 = pts[t + n];
                let v2 = pts[t + 2 * n];
                let m = cross(v0, v1, x).min(cross(v1, v2, x)).min(cross(v2, v0, x));
                min_cover_margin = min_cover_margin.min(m.abs());
                if m > 0.0 {
                    covered = true;
                }
            }
            if !covered {
                uncovered += 1;
            }
        }
    }

    let simple = uncovered + big_n == pocket_sides;
    FastEval {
        sides: if simple { pocket_sides as i64 } else { -1 },
        pocket_sides,
        uncovered_crossings: uncovered,
        near_miss,
        min_piece,
        min_cover_margin,
    }
}
