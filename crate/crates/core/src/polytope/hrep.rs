use alloc::vec::Vec;

use super::{hull, Halfspace, Polytope, PolytopeError};
use crate::numeric::Vec3;

/// Intersection of closed halfspaces.
///
/// Vertices are enumerated as the feasible solutions of every non-singular
/// triple of bounding planes and then re-hulled, which drops redundant
/// inequalities and yields the canonical form. An infeasible system gives
/// the empty polytope; a system whose recession cone is non-trivial is
/// rejected as unbounded.
pub fn intersect_halfspaces(hs: &[Halfspace]) -> Result<Polytope, PolytopeError> {
    let mut hs = hs.to_vec();
    hs.sort();
    // Sorted by normal then offset: keep the tightest of each parallel class.
    hs.dedup_by(|later, earlier| later.normal() == earlier.normal());

    check_bounded(&hs)?;

    let n = hs.len();
    let mut crosses: Vec<Vec<Vec3>> = Vec::with_capacity(n);
    for i in 0..n {
        crosses.push(
            (0..n)
                .map(|j| {
                    if j > i {
                        hs[i].normal().cross(hs[j].normal())
                    } else {
                        Vec3::zero()
                    }
                })
                .collect(),
        );
    }

    let mut points: Vec<Vec3> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if crosses[i][j].is_zero() {
                continue;
            }
            for k in (j + 1)..n {
                let det = hs[i].normal().dot(&crosses[j][k]);
                if det.is_zero() {
                    continue;
                }
                // Cramer: p = (c_i (n_j×n_k) + c_j (n_k×n_i) + c_k (n_i×n_j)) / det.
                let num = &(&crosses[j][k].scale(hs[i].offset())
                    - &crosses[i][k].scale(hs[j].offset()))
                    + &crosses[i][j].scale(hs[k].offset());
                let p = num.scale(&det.recip().expect("non-zero determinant"));
                if hs.iter().all(|h| h.contains(&p)) {
                    points.push(p);
                }
            }
        }
    }
    if points.is_empty() {
        return Ok(Polytope::empty());
    }
    hull(&points)
}

/// The recession cone `{d : n·d ≤ 0}` is trivial iff the normals span
/// space and no extreme-ray candidate `±(n_i × n_j)` lies in it.
fn check_bounded(hs: &[Halfspace]) -> Result<(), PolytopeError> {
    let n = hs.len();
    let mut spans = false;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let c = hs[i].normal().cross(hs[j].normal());
            if c.is_zero() {
                continue;
            }
            if hs.iter().any(|h| !h.normal().dot(&c).is_zero()) {
                spans = true;
                break 'outer;
            }
        }
    }
    if !spans {
        return Err(PolytopeError::Unbounded);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let c = hs[i].normal().cross(hs[j].normal());
            if c.is_zero() {
                continue;
            }
            for d in [c.clone(), -c] {
                if hs.iter().all(|h| !h.normal().dot(&d).is_positive()) {
                    return Err(PolytopeError::Unbounded);
                }
            }
        }
    }
    Ok(())
}
