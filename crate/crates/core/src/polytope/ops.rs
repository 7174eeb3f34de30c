use alloc::vec::Vec;

use super::{hull, intersect_halfspaces, Halfspace, Polytope, PolytopeError};
use crate::numeric::{det3, Rat, Vec3};

/// Exact volume: fan from vertex 0 over fan-triangulated facets.
/// Zero for anything lower-dimensional.
pub fn volume(poly: &Polytope) -> Rat {
    if !poly.is_solid() {
        return Rat::ZERO;
    }
    let v = poly.vertices();
    let apex = &v[0];
    let mut six = Rat::ZERO;
    for cycle in poly.facet_vertices() {
        if cycle.contains(&0) {
            continue;
        }
        let base = &v[cycle[0]] - apex;
        for w in cycle[1..].windows(2) {
            six += det3(&base, &(&v[w[0]] - apex), &(&v[w[1]] - apex));
        }
    }
    six / Rat::from_integer(6)
}

/// `{a + b : a ∈ A, b ∈ B}` as the hull of pairwise vertex sums.
pub fn minkowski_sum(a: &Polytope, b: &Polytope) -> Result<Polytope, PolytopeError> {
    if a.is_empty() || b.is_empty() {
        return Err(PolytopeError::EmptyInput);
    }
    let mut sums = Vec::with_capacity(a.vertices().len() * b.vertices().len());
    for p in a.vertices() {
        for q in b.vertices() {
            sums.push(p + q);
        }
    }
    hull(&sums)
}

/// `{scale·p + translate : p ∈ poly}`; a negative scale reflects through
/// the origin first.
pub fn affine_image(poly: &Polytope, scale: &Rat, translate: &Vec3) -> Polytope {
    if poly.is_empty() {
        return Polytope::empty();
    }
    if scale.is_zero() {
        return Polytope::point(translate.clone());
    }
    let verts: Vec<Vec3> = poly
        .vertices()
        .iter()
        .map(|p| &p.scale(scale) + translate)
        .collect();
    if !poly.is_solid() {
        return hull(&verts).expect("non-empty vertex list");
    }
    // n·p ≤ c  ⇔  n·q ≤ s·c + n·t   (s > 0),  (−n)·q ≤ −(s·c + n·t)   (s < 0).
    let facets = poly
        .facets()
        .iter()
        .map(|f| {
            let off = scale * f.offset() + f.normal().dot(translate);
            let h = Halfspace::new(f.normal().clone(), off).expect("non-zero normal");
            if scale.is_negative() {
                h.flipped()
            } else {
                h
            }
        })
        .collect();
    Polytope::solid(verts, facets)
}

/// Exact intersection; empty or lower-dimensional results are flagged by
/// their dimension.
pub fn intersect(a: &Polytope, b: &Polytope) -> Polytope {
    if a.is_empty() || b.is_empty() {
        return Polytope::empty();
    }
    let mut hs = a.halfspaces();
    hs.extend(b.halfspaces());
    intersect_halfspaces(&hs).expect("intersection of bounded bodies is bounded")
}

/// Position of a point relative to a polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Interior,
    /// Indices of the facets the point lies on. Lower-dimensional bodies have
    /// no interior, so every member point is reported here with no facets.
    Boundary(Vec<usize>),
    Outside,
}

pub fn locate_point(poly: &Polytope, p: &Vec3) -> Location {
    if poly.is_empty() {
        return Location::Outside;
    }
    if !poly.is_solid() {
        return if poly.halfspaces().iter().all(|h| h.contains(p)) {
            Location::Boundary(Vec::new())
        } else {
            Location::Outside
        };
    }
    let mut tight = Vec::new();
    for (i, f) in poly.facets().iter().enumerate() {
        let s = f.eval(p);
        if s.is_positive() {
            return Location::Outside;
        }
        if s.is_zero() {
            tight.push(i);
        }
    }
    if tight.is_empty() {
        Location::Interior
    } else {
        Location::Boundary(tight)
    }
}

/// `inner ⊆ outer`, decided on the vertices of `inner` (sufficient by
/// convexity).
pub fn contains_poly(outer: &Polytope, inner: &Polytope) -> bool {
    if inner.is_empty() {
        return true;
    }
    let hs = outer.halfspaces();
    if outer.is_empty() {
        return false;
    }
    inner
        .vertices()
        .iter()
        .all(|v| hs.iter().all(|h| h.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn tetra() -> Polytope {
        hull(&[
            Vec3::from_ints(1, 1, -1),
            Vec3::from_ints(1, -1, 1),
            Vec3::from_ints(-1, 1, 1),
            Vec3::from_ints(-1, -1, -1),
        ])
        .unwrap()
    }

    fn cube(s: i64) -> Polytope {
        let mut pts = Vec::new();
        for x in [-s, s] {
            for y in [-s, s] {
                for z in [-s, s] {
                    pts.push(Vec3::from_ints(x, y, z));
                }
            }
        }
        hull(&pts).unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(volume(&tetra()), rat(8, 3));
        assert_eq!(volume(&cube(4)), Rat::from_integer(512));
        assert_eq!(volume(&Polytope::point(Vec3::zero())), Rat::ZERO);
        assert_eq!(volume(&Polytope::empty()), Rat::ZERO);
    }

    #[test]
    fn point_summand_translates() {
        let t = tetra();
        let shift = Vec3::from_ints(5, 0, 0);
        let s = minkowski_sum(&t, &Polytope::point(shift.clone())).unwrap();
        assert_eq!(s, affine_image(&t, &Rat::ONE, &shift));
        assert_eq!(
            minkowski_sum(&t, &Polytope::empty()),
            Err(PolytopeError::EmptyInput)
        );
    }

    #[test]
    fn negative_scale_matches_hull_of_images() {
        let t = tetra();
        let img = affine_image(&t, &Rat::from_integer(-7), &Vec3::zero());
        let pts: Vec<Vec3> = t
            .vertices()
            .iter()
            .map(|v| v.scale(&Rat::from_integer(-7)))
            .collect();
        assert_eq!(img, hull(&pts).unwrap());
        for f in img.facets() {
            assert_eq!(*f.offset(), Rat::from_integer(7));
        }
        assert_eq!(volume(&affine_image(&t, &Rat::from_integer(5), &Vec3::zero())), rat(1000, 3));
        assert_eq!(affine_image(&t, &Rat::ONE, &Vec3::zero()), t);
    }

    #[test]
    fn locate_examples() {
        let t = tetra();
        assert_eq!(locate_point(&t, &Vec3::zero()), Location::Interior);
        match locate_point(&t, &Vec3::from_ints(1, 1, -1)) {
            Location::Boundary(f) => assert_eq!(f.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(locate_point(&cube(4), &Vec3::from_ints(5, 0, 0)), Location::Outside);
    }

    #[test]
    fn containment() {
        assert!(!contains_poly(&tetra(), &cube(4)));
        assert!(contains_poly(&cube(4), &tetra()));
        assert!(contains_poly(&tetra(), &Polytope::empty()));
        assert!(!contains_poly(&Polytope::empty(), &tetra()));
    }

    #[test]
    fn tetra_self_intersection_and_translate() {
        let t = tetra();
        assert_eq!(intersect(&t, &t), t);
        let shifted = affine_image(&t, &Rat::ONE, &Vec3::from_ints(1, 1, 0));
        let q = intersect(&t, &shifted);
        let expected = affine_image(&t, &rat(1, 2), &Vec3::new(rat(1, 2), rat(1, 2), rat(-1, 2)));
        assert_eq!(q, expected);
        let touching = affine_image(&t, &Rat::ONE, &Vec3::from_ints(2, 2, 0));
        assert_eq!(intersect(&t, &touching).dim(), 0);
        let far = affine_image(&t, &Rat::ONE, &Vec3::from_ints(10, 0, 0));
        assert!(intersect(&t, &far).is_empty());
    }

    #[test]
    fn degenerate_operands_intersect() {
        let seg = hull(&[Vec3::from_ints(-5, 0, 0), Vec3::from_ints(5, 0, 0)]).unwrap();
        let clipped = intersect(&cube(4), &seg);
        assert_eq!(clipped.dim(), 1);
        assert_eq!(clipped.vertices(), &[Vec3::from_ints(-4, 0, 0), Vec3::from_ints(4, 0, 0)]);
        let square = intersect(&cube(4), &hull(&[
            Vec3::from_ints(0, -9, -9),
            Vec3::from_ints(0, 9, -9),
            Vec3::from_ints(0, -9, 9),
            Vec3::from_ints(0, 9, 9),
        ]).unwrap());
        assert_eq!(square.dim(), 2);
        assert_eq!(square.vertices().len(), 4);
        assert!(contains_poly(&square, &Polytope::point(Vec3::from_ints(0, 4, 4))));
        assert!(!contains_poly(&square, &Polytope::point(Vec3::from_ints(0, 5, 4))));
    }
}
