//! Exact bounded convex polytopes in three dimensions.
//!
//! A [`Polytope`] always carries both representations: its extreme points in
//! lexicographic order and, when it is full-dimensional, its irredundant
//! facet inequalities sorted by normal. Lower-dimensional results (points,
//! segments, polygons) and the empty set are ordinary values flagged by
//! [`Polytope::dim`]; they keep only their vertices and synthesize an
//! H-representation on demand.

mod homothety;
mod hrep;
mod hull;
mod ops;
mod section;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numeric::{Rat, Vec3};

pub use homothety::{detect_homothet, Homothet, Homothety};
pub use hrep::intersect_halfspaces;
pub use hull::hull;
pub use ops::{affine_image, contains_poly, intersect, locate_point, minkowski_sum, volume, Location};
pub use section::{facet_section, FacetSection};
pub(crate) use section::section_of;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("empty input")]
    EmptyInput,
    #[error("halfspace intersection is unbounded")]
    Unbounded,
    #[error("halfspace normal is zero")]
    ZeroNormal,
    #[error("halfspace is not a facet of the polytope")]
    NotAFacet,
    #[error("reference body is not a full-dimensional simplex")]
    ReferenceNotSimplex,
}

/// The closed halfspace `{p : normal·p ≤ offset}`.
///
/// Normals are scaled by a positive factor to coprime integers, so two
/// halfspaces describing the same set compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    normal: Vec3,
    offset: Rat,
}

impl Halfspace {
    pub fn new(normal: Vec3, offset: Rat) -> Result<Halfspace, PolytopeError> {
        if normal.is_zero() {
            return Err(PolytopeError::ZeroNormal);
        }
        if let Some(h) = Halfspace::new_small(&normal, &offset) {
            return Ok(h);
        }
        let coords = normal.coords();
        let lcm = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
        let ints: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(&v.abs()));
        let factor = Rat::from_bigints(lcm, gcd).expect("gcd of a non-zero normal");
        Ok(Halfspace {
            normal: normal.scale(&factor),
            offset: offset * factor,
        })
    }

    fn new_small(normal: &Vec3, offset: &Rat) -> Option<Halfspace> {
        let parts = [
            normal.x.small_parts()?,
            normal.y.small_parts()?,
            normal.z.small_parts()?,
        ];
        let mut lcm: i128 = 1;
        for &(_, d) in &parts {
            lcm = lcm.checked_mul(d as i128 / lcm.gcd(&(d as i128)))?;
        }
        let mut gcd: i128 = 0;
        for &(n, d) in &parts {
            gcd = gcd.gcd(&(n as i128).checked_mul(lcm / d as i128)?);
        }
        let factor = Rat::new(i64::try_from(lcm).ok()?, i64::try_from(gcd).ok()?).ok()?;
        Some(Halfspace {
            normal: normal.scale(&factor),
            offset: offset * factor,
        })
    }

    /// Shorthand for integer normals.
    pub fn from_ints(a: i64, b: i64, c: i64, offset: Rat) -> Halfspace {
        Halfspace::new(Vec3::from_ints(a, b, c), offset).expect("non-zero normal")
    }

    pub fn normal(&self) -> &Vec3 {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    /// `normal·p − offset`: negative inside, zero on the plane.
    pub fn eval(&self, p: &Vec3) -> Rat {
        self.normal.dot(p) - &self.offset
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        self.normal.dot(p) <= self.offset
    }

    /// The complementary closed halfspace `{normal·p ≥ offset}`.
    pub fn flipped(&self) -> Halfspace {
        Halfspace {
            normal: -&self.normal,
            offset: -&self.offset,
        }
    }

    pub fn translated(&self, t: &Vec3) -> Halfspace {
        Halfspace {
            offset: &self.offset + self.normal.dot(t),
            normal: self.normal.clone(),
        }
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·p ≤ {}", self.normal, self.offset)
    }
}

/// Bounded convex polytope with canonical dual representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    /// -1 for the empty set.
    dim: i8,
    vertices: Vec<Vec3>,
    facets: Vec<Halfspace>,
    /// Per facet, incident vertex indices counter-clockwise seen from outside,
    /// starting at the smallest index.
    facet_vertices: Vec<Vec<usize>>,
}

impl Polytope {
    pub fn empty() -> Polytope {
        Polytope {
            dim: -1,
            vertices: Vec::new(),
            facets: Vec::new(),
            facet_vertices: Vec::new(),
        }
    }

    pub fn point(p: Vec3) -> Polytope {
        Polytope {
            dim: 0,
            vertices: vec![p],
            facets: Vec::new(),
            facet_vertices: Vec::new(),
        }
    }

    /// Lower-dimensional polytope from its extreme points.
    pub(crate) fn degenerate(dim: i8, mut vertices: Vec<Vec3>) -> Polytope {
        debug_assert!((0..3).contains(&dim));
        vertices.sort();
        Polytope {
            dim,
            vertices,
            facets: Vec::new(),
            facet_vertices: Vec::new(),
        }
    }

    /// Full-dimensional polytope from its extreme points and irredundant
    /// facets, in any order.
    pub(crate) fn solid(mut vertices: Vec<Vec3>, mut facets: Vec<Halfspace>) -> Polytope {
        vertices.sort();
        facets.sort();
        let facet_vertices = facets
            .iter()
            .map(|f| {
                let on: Vec<usize> = (0..vertices.len())
                    .filter(|&i| f.eval(&vertices[i]).is_zero())
                    .collect();
                let pts: Vec<&Vec3> = on.iter().map(|&i| &vertices[i]).collect();
                cyclic_order(&pts, f.normal())
                    .into_iter()
                    .map(|k| on[k])
                    .collect()
            })
            .collect();
        Polytope {
            dim: 3,
            vertices,
            facets,
            facet_vertices,
        }
    }

    pub fn from_halfspaces(hs: &[Halfspace]) -> Result<Polytope, PolytopeError> {
        intersect_halfspaces(hs)
    }

    pub fn from_points(points: &[Vec3]) -> Result<Polytope, PolytopeError> {
        hull(points)
    }

    /// Affine dimension, -1 when empty.
    pub fn dim(&self) -> i32 {
        self.dim as i32
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_solid(&self) -> bool {
        self.dim == 3
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    /// Facet inequalities; empty unless the polytope is full-dimensional.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn facet_vertices(&self) -> &[Vec<usize>] {
        &self.facet_vertices
    }

    /// Number of edges, from Euler's formula for solids.
    pub fn edge_count(&self) -> usize {
        match self.dim {
            3 => self.vertices.len() + self.facets.len() - 2,
            2 => self.vertices.len(),
            1 => 1,
            _ => 0,
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> Option<(Vec3, Vec3)> {
        let first = self.vertices.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for v in &self.vertices[1..] {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.z < lo.z {
                lo.z = v.z.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
            if v.z > hi.z {
                hi.z = v.z.clone();
            }
        }
        Some((lo, hi))
    }

    /// An H-representation valid for every dimension. Solids return their
    /// facets; lower-dimensional bodies add equality pairs for their affine
    /// hull; the empty set returns an infeasible bounded system.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        let axes = [
            Vec3::from_ints(1, 0, 0),
            Vec3::from_ints(0, 1, 0),
            Vec3::from_ints(0, 0, 1),
        ];
        let mut out = Vec::new();
        let equal = |n: &Vec3, at: &Vec3, out: &mut Vec<Halfspace>| {
            let c = n.dot(at);
            out.push(Halfspace::new(n.clone(), c.clone()).expect("non-zero"));
            out.push(Halfspace::new(-n, -c).expect("non-zero"));
        };
        match self.dim {
            3 => return self.facets.clone(),
            -1 => {
                let one = Rat::ONE;
                out.push(Halfspace::new(axes[0].clone(), -&one).expect("non-zero"));
                out.push(Halfspace::new(-&axes[0], -&one).expect("non-zero"));
                for a in &axes[1..] {
                    out.push(Halfspace::new(a.clone(), one.clone()).expect("non-zero"));
                    out.push(Halfspace::new(-a, one.clone()).expect("non-zero"));
                }
            }
            0 => {
                for a in &axes {
                    equal(a, &self.vertices[0], &mut out);
                }
            }
            1 => {
                let (u, w) = (&self.vertices[0], &self.vertices[1]);
                let d = w - u;
                let side = axes
                    .iter()
                    .map(|a| d.cross(a))
                    .find(|c| !c.is_zero())
                    .expect("segment direction is non-zero");
                let other = d.cross(&side);
                equal(&side, u, &mut out);
                equal(&other, u, &mut out);
                out.push(Halfspace::new(d.clone(), d.dot(w)).expect("non-zero"));
                out.push(Halfspace::new(-&d, -d.dot(u)).expect("non-zero"));
            }
            _ => {
                let cycle = self.polygon_cycle();
                let pts: Vec<&Vec3> = cycle.iter().map(|&i| &self.vertices[i]).collect();
                let normal = plane_normal(&pts).expect("polygon spans a plane");
                equal(&normal, pts[0], &mut out);
                let centroid = centroid(&pts);
                for k in 0..pts.len() {
                    let (u, w) = (pts[k], pts[(k + 1) % pts.len()]);
                    let mut e = (w - u).cross(&normal);
                    if e.dot(&centroid) > e.dot(u) {
                        e = -e;
                    }
                    let c = e.dot(u);
                    out.push(Halfspace::new(e, c).expect("non-zero"));
                }
            }
        }
        out
    }

    /// Vertex indices of a polygon in cyclic order (empty for other dims).
    pub fn polygon_cycle(&self) -> Vec<usize> {
        if self.dim != 2 {
            return Vec::new();
        }
        let pts: Vec<&Vec3> = self.vertices.iter().collect();
        let normal = plane_normal(&pts).expect("polygon spans a plane");
        cyclic_order(&pts, &normal)
    }
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .field("facets", &self.facets)
            .finish()
    }
}

pub(crate) fn centroid(pts: &[&Vec3]) -> Vec3 {
    let mut acc = Vec3::zero();
    for p in pts {
        acc = &acc + *p;
    }
    acc.scale(&Rat::from_integer(pts.len() as i64).recip().expect("non-empty"))
}

/// Normal of the plane spanned by the first non-collinear triple.
pub(crate) fn plane_normal(pts: &[&Vec3]) -> Option<Vec3> {
    let p0 = pts.first()?;
    let p1 = pts.iter().find(|p| **p != *p0)?;
    let d1 = *p1 - *p0;
    pts.iter()
        .map(|p| d1.cross(&(*p - *p0)))
        .find(|n| !n.is_zero())
}

/// Orders coplanar points counter-clockwise around `normal`, starting at
/// index 0. Points must be in convex position.
pub(crate) fn cyclic_order(pts: &[&Vec3], normal: &Vec3) -> Vec<usize> {
    if pts.len() < 3 {
        return (0..pts.len()).collect();
    }
    let g = centroid(pts);
    let dirs: Vec<Vec3> = pts.iter().map(|p| *p - &g).collect();
    let r = &dirs[0];
    let half = |d: &Vec3| -> u8 {
        let s = r.cross(d).dot(normal);
        if s.is_positive() || (s.is_zero() && r.dot(d).is_positive()) {
            0
        } else {
            1
        }
    };
    let mut idx: Vec<usize> = (1..pts.len()).collect();
    idx.sort_by(|&i, &j| {
        half(&dirs[i]).cmp(&half(&dirs[j])).then_with(|| {
            let s = dirs[i].cross(&dirs[j]).dot(normal);
            if s.is_positive() {
                Ordering::Less
            } else if s.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    let mut out = vec![0];
    out.extend(idx);
    out
}
