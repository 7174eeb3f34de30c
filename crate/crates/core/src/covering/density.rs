use alloc::vec::Vec;

use super::{signed_evals, translate_facets, CoveringConfig, SpatialIndex};
use crate::numeric::{rat, Rat, Vec3};
use crate::polytope::{intersect_halfspaces, volume, Halfspace};

/// Half side of the cube P.
const P_HALF: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    /// `Σ vol(P ∩ (T+x)) / vol(P)`.
    pub theta: Rat,
    pub clipped_volumes: Vec<Rat>,
    /// `Σ_{i<j} vol(P ∩ (T+x_i) ∩ (T+x_j))`.
    pub overlap_total: Rat,
}

fn vol_t() -> Rat {
    rat(8, 3)
}

/// Volume of `P ∩ (μT + y)`.
///
/// Whole or empty when the bounding box `y ± μ` is inside P or misses its
/// interior; otherwise only the planes of P crossing the box are added to
/// the four facets.
fn clipped_homothet(mu: &Rat, y: &Vec3) -> Rat {
    let half = Rat::from_integer(P_HALF);
    let mut planes = Vec::new();
    for (k, c) in y.coords().into_iter().enumerate() {
        let (lo, hi) = (c - mu, c + mu);
        if lo >= half || hi <= -&half {
            return Rat::ZERO;
        }
        let mut axis = [0i64; 3];
        axis[k] = 1;
        if hi > half {
            planes.push(Halfspace::from_ints(axis[0], axis[1], axis[2], half.clone()));
        }
        if lo < -&half {
            planes.push(Halfspace::from_ints(-axis[0], -axis[1], -axis[2], half.clone()));
        }
    }
    let full = &vol_t() * &mu.pow(3);
    if planes.is_empty() {
        return full;
    }
    for h in translate_facets(&Vec3::zero()) {
        planes.push(
            Halfspace::new(h.normal().clone(), &(h.normal().dot(y)) + mu)
                .expect("non-zero normal"),
        );
    }
    volume(&intersect_halfspaces(&planes).expect("bounded"))
}

/// `vol(P ∩ (T + x))`.
pub fn clipped_volume(x: &Vec3) -> Rat {
    clipped_homothet(&Rat::ONE, x)
}

/// `vol(P ∩ (T+x_i) ∩ (T+x_j))`.
///
/// The pair meets in `{a_k·p ≤ c_k}` with `c_k = min(1, 1 + a_k·d)` relative
/// to `x_i`, `d = x_j − x_i`; since `Σ a_k = 0` this is `μT + y` with
/// `μ = Σc_k / 4` and `a_k·y = c_k − μ`.
pub fn pair_overlap(xi: &Vec3, xj: &Vec3) -> Rat {
    let c = signed_evals(&(xj - xi)).map(|v| (Rat::ONE + v).min(Rat::ONE));
    let sum: Rat = c.iter().sum();
    if !sum.is_positive() {
        return Rat::ZERO;
    }
    let mu = &sum / &Rat::from_integer(4);
    let r = c.map(|ck| &ck - &mu);
    let half = rat(1, 2);
    // Rows (1,1,1), (−1,−1,1), (1,−1,−1): pairwise sums isolate each axis.
    let y = Vec3::new(
        &(&r[0] + &r[2]) * &half,
        -(&(&r[1] + &r[2]) * &half),
        &(&r[0] + &r[1]) * &half,
    );
    clipped_homothet(&mu, &(&y + xi))
}

pub fn theta_density(cfg: &CoveringConfig) -> DensityReport {
    let xs = cfg.translates();
    let clipped_volumes: Vec<Rat> = xs.iter().map(clipped_volume).collect();
    let total: Rat = clipped_volumes.iter().sum();

    let index = SpatialIndex::new(xs);
    let one = Rat::ONE;
    let mut overlap_total = Rat::ZERO;
    for (i, xi) in xs.iter().enumerate() {
        let ones = Vec3::new(one.clone(), one.clone(), one.clone());
        for j in index.query(xs, &(xi - &ones), &(xi + &ones)) {
            if j > i {
                overlap_total += pair_overlap(xi, &xs[j]);
            }
        }
    }
    DensityReport {
        theta: &total / &Rat::from_integer(512),
        clipped_volumes,
        overlap_total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{make_body, BodyName};
    use crate::polytope::{affine_image, intersect};
    use alloc::vec;

    fn general_clip(x: &Vec3) -> Rat {
        let t = make_body(BodyName::T);
        volume(&intersect(&make_body(BodyName::P), &affine_image(&t, &Rat::ONE, x)))
    }

    fn general_pair(a: &Vec3, b: &Vec3) -> Rat {
        let t = make_body(BodyName::T);
        let q = intersect(
            &affine_image(&t, &Rat::ONE, a),
            &affine_image(&t, &Rat::ONE, b),
        );
        volume(&intersect(&make_body(BodyName::P), &q))
    }

    #[test]
    fn single_and_far_translates() {
        let one = CoveringConfig::new(vec![Vec3::zero()], None).unwrap();
        assert_eq!(theta_density(&one).theta, rat(1, 192));
        let far = CoveringConfig::new(vec![Vec3::zero(), Vec3::from_ints(100, 0, 0)], None).unwrap();
        let r = theta_density(&far);
        assert_eq!(r.theta, rat(1, 192));
        assert_eq!(r.overlap_total, Rat::ZERO);
    }

    #[test]
    fn fast_paths_agree_with_general_intersection() {
        let xs = [
            Vec3::new(rat(7, 2), rat(-19, 5), rat(3, 1)),
            Vec3::new(rat(4, 1), rat(4, 1), rat(4, 1)),
            Vec3::new(rat(-9, 2), Rat::ZERO, rat(1, 3)),
            Vec3::new(rat(5, 1), Rat::ZERO, Rat::ZERO),
            Vec3::new(rat(1, 7), rat(2, 9), rat(-1, 5)),
        ];
        for x in &xs {
            assert_eq!(clipped_volume(x), general_clip(x), "{x:?}");
        }
        let pairs = [
            (Vec3::zero(), Vec3::from_ints(1, 1, 0)),
            (Vec3::zero(), Vec3::new(rat(1, 3), rat(-1, 4), rat(1, 5))),
            (Vec3::new(rat(7, 2), rat(7, 2), Rat::ZERO), Vec3::new(rat(4, 1), rat(3, 1), rat(1, 2))),
            (Vec3::zero(), Vec3::from_ints(2, 2, 0)),
            (Vec3::zero(), Vec3::from_ints(3, 0, 0)),
        ];
        for (a, b) in &pairs {
            assert_eq!(pair_overlap(a, b), general_pair(a, b), "{a:?} {b:?}");
            assert_eq!(pair_overlap(a, b), pair_overlap(b, a));
        }
    }

    #[test]
    fn overlap_of_shifted_pair() {
        // T ∩ (T + (1,1,0)) = ½T + ..., volume (8/3)/8.
        assert_eq!(pair_overlap(&Vec3::zero(), &Vec3::from_ints(1, 1, 0)), rat(1, 3));
    }
}
