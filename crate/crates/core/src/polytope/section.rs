use alloc::vec::Vec;

use super::{cyclic_order, hull, intersect, Halfspace, Polytope, PolytopeError};
use crate::numeric::{Rat, Vec3};

/// A facet of one body clipped by another: a planar convex polygon (or a
/// lower-dimensional remnant) with exact squared edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetSection {
    /// Counter-clockwise seen from the facet's outer side.
    pub vertices: Vec<Vec3>,
    /// `sq_edges[i]` is the squared length of `vertices[i] → vertices[i+1]`.
    pub sq_edges: Vec<Rat>,
    /// -1 when empty, 2 for a proper polygon.
    pub dim: i32,
}

impl FacetSection {
    pub fn is_polygon(&self) -> bool {
        self.dim == 2
    }

    /// The common squared edge length if this is an equilateral triangle.
    pub fn regular_triangle_sq_edge(&self) -> Option<&Rat> {
        if self.dim != 2 || self.vertices.len() != 3 {
            return None;
        }
        let first = &self.sq_edges[0];
        self.sq_edges.iter().all(|e| e == first).then_some(first)
    }
}

/// `(facet of poly) ∩ clip`.
pub fn facet_section(
    poly: &Polytope,
    plane_facet: &Halfspace,
    clip: &Polytope,
) -> Result<FacetSection, PolytopeError> {
    if !poly.facets().contains(plane_facet) {
        return Err(PolytopeError::NotAFacet);
    }
    Ok(section_of(&intersect(poly, clip), plane_facet))
}

/// The face of `body` cut out by a supporting plane. Because the plane
/// supports `body`, the face is the hull of the vertices lying on it.
pub(crate) fn section_of(body: &Polytope, plane: &Halfspace) -> FacetSection {
    let on: Vec<Vec3> = body
        .vertices()
        .iter()
        .filter(|v| plane.eval(v).is_zero())
        .cloned()
        .collect();
    if on.is_empty() {
        return FacetSection {
            vertices: Vec::new(),
            sq_edges: Vec::new(),
            dim: -1,
        };
    }
    let face = hull(&on).expect("non-empty");
    let pts: Vec<&Vec3> = face.vertices().iter().collect();
    let vertices: Vec<Vec3> = match face.dim() {
        2 => cyclic_order(&pts, plane.normal())
            .into_iter()
            .map(|i| pts[i].clone())
            .collect(),
        _ => face.vertices().to_vec(),
    };
    let sq_edges = match face.dim() {
        0 => Vec::new(),
        1 => alloc::vec![(&vertices[1] - &vertices[0]).norm_sq()],
        _ => (0..vertices.len())
            .map(|i| (&vertices[(i + 1) % vertices.len()] - &vertices[i]).norm_sq())
            .collect(),
    };
    FacetSection {
        vertices,
        sq_edges,
        dim: face.dim(),
    }
}
