use alloc::vec;
use alloc::vec::Vec;

use super::{Halfspace, Polytope, PolytopeError};
use crate::numeric::{Rat, Vec3};

/// Convex hull of a finite point set.
///
/// Incremental beneath-beyond insertion over exact predicates. The working
/// hull is kept as (extreme points, facet planes); inserting a point drops
/// the facets it sees strictly and cones it over the horizon edges. Points
/// that land on a facet plane extend that facet instead of creating a new
/// one, so coplanar and collinear inputs need no perturbation.
pub fn hull(points: &[Vec3]) -> Result<Polytope, PolytopeError> {
    if points.is_empty() {
        return Err(PolytopeError::EmptyInput);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();

    let p0 = pts[0].clone();
    let Some(i1) = pts.iter().position(|p| *p != p0) else {
        return Ok(Polytope::point(p0));
    };
    let d1 = &pts[i1] - &p0;
    let Some(i2) = pts.iter().position(|p| !d1.cross(&(p - &p0)).is_zero()) else {
        // Collinear: lexicographic order is monotone along the line.
        let last = pts.pop().expect("non-empty");
        return Ok(Polytope::degenerate(1, vec![p0, last]));
    };
    let normal = d1.cross(&(&pts[i2] - &p0));
    let Some(i3) = pts.iter().position(|p| !normal.dot(&(p - &p0)).is_zero()) else {
        return Ok(Polytope::degenerate(2, planar_hull(&pts, &normal)));
    };

    let seed = [0, i1, i2, i3];
    let mut verts: Vec<Vec3> = seed.iter().map(|&i| pts[i].clone()).collect();
    let interior = super::centroid(&verts.iter().collect::<Vec<_>>());
    let mut facets: Vec<Halfspace> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .iter()
        .map(|t| plane_through(&verts[t[0]], &verts[t[1]], &verts[t[2]], &interior))
        .collect();

    for (idx, p) in pts.iter().enumerate() {
        if seed.contains(&idx) {
            continue;
        }
        let sees: Vec<bool> = facets.iter().map(|f| f.eval(p).is_positive()).collect();
        if !sees.iter().any(|&s| s) {
            continue;
        }
        let incidence = incidence(&verts, &facets);
        let mut next: Vec<Halfspace> = facets
            .iter()
            .zip(&sees)
            .filter(|(_, &s)| !s)
            .map(|(f, _)| f.clone())
            .collect();
        for (i, _) in sees.iter().enumerate().filter(|(_, &s)| s) {
            for (j, _) in sees.iter().enumerate().filter(|(_, &s)| !s) {
                let ridge: Vec<usize> = incidence[i]
                    .iter()
                    .copied()
                    .filter(|v| incidence[j].contains(v))
                    .collect();
                if ridge.len() < 2 || facets[j].eval(p).is_zero() {
                    continue;
                }
                let plane = plane_through(&verts[ridge[0]], &verts[ridge[1]], p, &interior);
                if !next.contains(&plane) {
                    next.push(plane);
                }
            }
        }
        facets = next;
        verts.push(p.clone());
        let incidence = incidence_counts(&verts, &facets);
        verts = verts
            .into_iter()
            .zip(incidence)
            .filter(|(_, n)| *n >= 3)
            .map(|(v, _)| v)
            .collect();
    }
    Ok(Polytope::solid(verts, facets))
}

/// Plane through `a`, `b`, `c`, oriented so that `inside` is strictly below.
fn plane_through(a: &Vec3, b: &Vec3, c: &Vec3, inside: &Vec3) -> Halfspace {
    let n = (b - a).cross(&(c - a));
    let off = n.dot(a);
    let h = Halfspace::new(n, off).expect("non-degenerate triangle");
    if h.contains(inside) {
        h
    } else {
        h.flipped()
    }
}

fn incidence(verts: &[Vec3], facets: &[Halfspace]) -> Vec<Vec<usize>> {
    facets
        .iter()
        .map(|f| {
            (0..verts.len())
                .filter(|&i| f.eval(&verts[i]).is_zero())
                .collect()
        })
        .collect()
}

fn incidence_counts(verts: &[Vec3], facets: &[Halfspace]) -> Vec<usize> {
    verts
        .iter()
        .map(|v| facets.iter().filter(|f| f.eval(v).is_zero()).count())
        .collect()
}

/// Extreme points of coplanar points (monotone chain in a coordinate
/// projection that is injective on the plane).
fn planar_hull(pts: &[Vec3], normal: &Vec3) -> Vec<Vec3> {
    let [nx, ny, nz] = normal.coords().map(Rat::abs);
    let project = |p: &Vec3| -> (Rat, Rat) {
        if nz >= nx && nz >= ny {
            (p.x.clone(), p.y.clone())
        } else if ny >= nx {
            (p.x.clone(), p.z.clone())
        } else {
            (p.y.clone(), p.z.clone())
        }
    };
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let proj: Vec<(Rat, Rat)> = pts.iter().map(project).collect();
    idx.sort_by(|&a, &b| proj[a].cmp(&proj[b]));
    let cross = |o: usize, a: usize, b: usize| -> Rat {
        (&proj[a].0 - &proj[o].0) * (&proj[b].1 - &proj[o].1)
            - (&proj[a].1 - &proj[o].1) * (&proj[b].0 - &proj[o].0)
    };
    let mut chain: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = chain.len();
        let order: Vec<usize> = if pass == 0 {
            idx.clone()
        } else {
            idx.iter().rev().copied().collect()
        };
        for i in order {
            while chain.len() >= start + 2
                && !cross(chain[chain.len() - 2], chain[chain.len() - 1], i).is_positive()
            {
                chain.pop();
            }
            chain.push(i);
        }
        chain.pop();
    }
    chain.into_iter().map(|i| pts[i].clone()).collect()
}
