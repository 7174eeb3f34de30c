use alloc::vec;
use alloc::vec::Vec;

use super::{in_translate, CoveringConfig, CoveringError, SpatialIndex};
use crate::bodies::{
    tetrahedron_facets, tetrahedron_vertices, BodiesError, Classifier, IncidenceKind,
};
use crate::numeric::{rat, Rat, Vec3};

/// Subdivision depth for the boundary cover check: facets are cut into
/// `4^depth` triangles at most.
const BOUNDARY_DEPTH: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexCover {
    /// Vertex of the central translate.
    pub vertex: usize,
    /// Index of the covering translate in the configuration.
    pub translate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryCover {
    /// Every facet triangle of the centre was split into pieces that each
    /// lie in a single neighbor.
    Full,
    /// A boundary point of the centre outside every neighbor.
    Gap(Vec3),
    Inconclusive,
}

/// Incidence counts of the neighbors of one translate `T + x_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceReport {
    pub center: usize,
    /// Neighbors meeting the centre in positive volume, ascending.
    pub neighbors: Vec<usize>,
    pub m: usize,
    pub vertex_coverers: Vec<VertexCover>,
    /// Some vertex of the centre lies in more than one neighbor.
    pub vertex_multi_cover: bool,
    /// `E_j`: neighbors meeting edge `j` but no vertex.
    pub edge_counts: [usize; 6],
    /// `F_j`: neighbors meeting only face `j`.
    pub face_counts: [usize; 4],
    /// Number of triangle patches cut on the centre's boundary.
    pub t: usize,
    /// `s` with total patch area `s·√3`.
    pub s_coeff: Rat,
    /// Squared edge lengths of the neighbors' intersections, in neighbor order.
    pub lambdas_sq: Vec<Rat>,
    /// `Σ μ_i³`; the cube sum of edge lengths is `16√2·Σ μ_i³`.
    pub sum_mu_cubed: Rat,
    /// Each neighbor meets at most one edge of the centre unless it covers a
    /// vertex, so the edge buckets are disjoint.
    pub buckets_disjoint: bool,
    /// Exactly four neighbors cover the four vertices, each once.
    pub simple_vertex_cover: bool,
    /// `m = 4 + ΣE + ΣF`.
    pub identity_m: bool,
    /// `t = 12 + 2ΣE + ΣF`.
    pub identity_t: bool,
    /// `t ≤ 2m + 4`.
    pub t_le_2m_plus_4: bool,
    pub boundary: BoundaryCover,
}

pub fn neighbor_incidence(cfg: &CoveringConfig, center: usize) -> Result<IncidenceReport, CoveringError> {
    let xs = cfg.translates();
    let xc = xs.get(center).ok_or(CoveringError::BadCenter(center))?;
    let classifier = Classifier::new();
    let two = Rat::from_integer(2);
    let reach = Vec3::new(two.clone(), two.clone(), two);
    let index = SpatialIndex::new(xs);

    let mut neighbors = Vec::new();
    let mut vertex_coverers = Vec::new();
    let mut vertex_hits = [0usize; 4];
    let mut edge_counts = [0usize; 6];
    let mut face_counts = [0usize; 4];
    let mut t = 0usize;
    let mut patch_sq_sum = Rat::ZERO;
    let mut lambdas_sq = Vec::new();
    let mut sum_mu_cubed = Rat::ZERO;
    let mut buckets_disjoint = true;

    for j in index.query(xs, &(xc - &reach), &(xc + &reach)) {
        if j == center {
            continue;
        }
        let inc = match classifier.classify(&(&xs[j] - xc)) {
            Ok(inc) => inc,
            Err(BodiesError::DisjointTranslate) => continue,
            Err(e) => return Err(e.into()),
        };
        match inc.kind {
            IncidenceKind::Degenerate | IncidenceKind::IdenticalTranslate => continue,
            IncidenceKind::Vertex(v) => {
                vertex_coverers.push(VertexCover {
                    vertex: v,
                    translate: j,
                });
                for &w in &inc.vertices_met {
                    vertex_hits[w] += 1;
                }
            }
            IncidenceKind::Edge(e) => {
                edge_counts[e] += 1;
                buckets_disjoint &= inc.edges_met.len() == 1;
            }
            IncidenceKind::Face(f) => face_counts[f] += 1,
        }
        let h = inc.homothet.as_ref().expect("solid contact is a homothet");
        neighbors.push(j);
        t += inc.patch_count();
        for p in &inc.patches {
            patch_sq_sum += p.sq_edge().expect("patches of a homothet are regular");
        }
        lambdas_sq.push(h.edge_length_sq.clone());
        sum_mu_cubed += h.ratio.pow(3);
    }
    if neighbors.is_empty() {
        return Err(CoveringError::NoNeighbors(center));
    }

    let m = neighbors.len();
    let sum_e: usize = edge_counts.iter().sum();
    let sum_f: usize = face_counts.iter().sum();
    let vertex_multi_cover = vertex_hits.iter().any(|&n| n > 1);
    let simple_vertex_cover = vertex_coverers.len() == 4 && vertex_hits.iter().all(|&n| n == 1);
    let boundary = boundary_cover(xs, center, &neighbors);

    Ok(IncidenceReport {
        center,
        m,
        vertex_coverers,
        vertex_multi_cover,
        edge_counts,
        face_counts,
        t,
        s_coeff: patch_sq_sum * rat(1, 4),
        lambdas_sq,
        sum_mu_cubed,
        buckets_disjoint,
        simple_vertex_cover,
        identity_m: m == 4 + sum_e + sum_f,
        identity_t: t == 12 + 2 * sum_e + sum_f,
        t_le_2m_plus_4: t <= 2 * m + 4,
        boundary,
        neighbors,
    })
}

/// Whether the neighbors cover the boundary of `T + x_c`, by 4-way midpoint
/// subdivision of each facet triangle.
fn boundary_cover(xs: &[Vec3], center: usize, neighbors: &[usize]) -> BoundaryCover {
    let xc = &xs[center];
    let verts = tetrahedron_vertices().map(|v| &v + xc);
    let near: Vec<&Vec3> = neighbors.iter().map(|&j| &xs[j]).collect();
    let mut undecided = false;
    for h in tetrahedron_facets() {
        let on: Vec<Vec3> = tetrahedron_vertices()
            .iter()
            .zip(&verts)
            .filter(|(v, _)| h.eval(v).is_zero())
            .map(|(_, w)| w.clone())
            .collect();
        let mut stack = vec![([on[0].clone(), on[1].clone(), on[2].clone()], 0u32)];
        while let Some((tri, depth)) = stack.pop() {
            if near.iter().any(|x| tri.iter().all(|p| in_translate(p, x))) {
                continue;
            }
            let centroid = (&(&tri[0] + &tri[1]) + &tri[2]).scale(&rat(1, 3));
            if !near.iter().any(|x| in_translate(&centroid, x)) {
                return BoundaryCover::Gap(centroid);
            }
            if depth >= BOUNDARY_DEPTH {
                undecided = true;
                continue;
            }
            let half = rat(1, 2);
            let mid = |a: &Vec3, b: &Vec3| (a + b).scale(&half);
            let [a, b, c] = tri;
            let (ab, bc, ca) = (mid(&a, &b), mid(&b, &c), mid(&c, &a));
            stack.push(([ab.clone(), bc.clone(), ca.clone()], depth + 1));
            stack.push(([ca.clone(), bc.clone(), c], depth + 1));
            stack.push(([ab.clone(), b, bc], depth + 1));
            stack.push(([a, ab, ca], depth + 1));
        }
    }
    if undecided {
        BoundaryCover::Inconclusive
    } else {
        BoundaryCover::Full
    }
}
