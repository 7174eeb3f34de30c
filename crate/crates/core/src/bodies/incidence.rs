use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::{make_body, tetrahedron_facets, tetrahedron_vertices, BodiesError, BodyName};
use super::lemmas::{sample_in_body, LemmaReport};
use crate::numeric::{Rat, RngStream, Vec3};
use crate::polytope::{
    affine_image, detect_homothet, intersect, section_of, Halfspace, Homothet, Homothety,
    Location, Polytope,
};

/// Edges of T as vertex index pairs.
pub const TETRA_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Lowest-dimensional feature of T met by a translate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IncidenceKind {
    Vertex(usize),
    Edge(usize),
    Face(usize),
    /// `T ∩ (T+x)` has zero volume.
    Degenerate,
    IdenticalTranslate,
}

/// A facet of T clipped by a translate. Regular when the translate meets
/// T in a positive homothet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrianglePatch {
    pub face: usize,
    pub vertices: Vec<Vec3>,
    pub sq_edges: Vec<Rat>,
}

impl TrianglePatch {
    /// The common squared edge length λ², if the patch is a regular triangle.
    pub fn sq_edge(&self) -> Option<&Rat> {
        if self.vertices.len() != 3 {
            return None;
        }
        let first = &self.sq_edges[0];
        self.sq_edges.iter().all(|e| e == first).then_some(first)
    }

    /// `s` with area `s·√3`; `λ²/4` for a regular triangle.
    pub fn area_coeff(&self) -> Option<Rat> {
        self.sq_edge().map(|e| e / &Rat::from_integer(4))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub kind: IncidenceKind,
    /// Vertices of T lying in `T+x`.
    pub vertices_met: Vec<usize>,
    /// Indices into [`TETRA_EDGES`] of edges of T meeting `T+x`.
    pub edges_met: Vec<usize>,
    /// Facets of T carrying a patch of positive area.
    pub faces_met: Vec<usize>,
    pub patches: Vec<TrianglePatch>,
    /// `T ∩ (T+x)` as `μT + y`, when it is a positive homothet.
    pub homothet: Option<Homothet>,
}

impl Incidence {
    pub fn patch_count(&self) -> usize {
        self.patches.len()
    }
}

/// Classifies translates of T against T.
#[derive(Debug, Clone)]
pub struct Classifier {
    t: Polytope,
    verts: [Vec3; 4],
    facets: [Halfspace; 4],
    dt: Polytope,
}

impl Classifier {
    pub fn new() -> Classifier {
        Classifier {
            t: make_body(BodyName::T),
            verts: tetrahedron_vertices(),
            facets: tetrahedron_facets(),
            dt: make_body(BodyName::DT),
        }
    }

    pub fn tetrahedron(&self) -> &Polytope {
        &self.t
    }

    fn in_translate(&self, p: &Vec3, x: &Vec3) -> bool {
        let q = p - x;
        self.facets.iter().all(|h| h.contains(&q))
    }

    /// Whether segment `u → w` meets `T + x`: the parameter interval cut out
    /// by the four facet constraints is non-empty.
    fn segment_meets(&self, u: &Vec3, w: &Vec3, x: &Vec3) -> bool {
        let d = w - u;
        let (mut lo, mut hi) = (Rat::ZERO, Rat::ONE);
        for h in &self.facets {
            // a·(u − x) + s·a·d ≤ c
            let base = h.eval(&(u - x));
            let slope = h.normal().dot(&d);
            if slope.is_zero() {
                if base.is_positive() {
                    return false;
                }
                continue;
            }
            let s = -&base / &slope;
            if slope.is_positive() {
                hi = hi.min(s);
            } else {
                lo = lo.max(s);
            }
        }
        lo <= hi
    }

    pub fn classify(&self, x: &Vec3) -> Result<Incidence, BodiesError> {
        if x.is_zero() {
            return Ok(Incidence {
                kind: IncidenceKind::IdenticalTranslate,
                vertices_met: (0..4).collect(),
                edges_met: (0..6).collect(),
                faces_met: (0..4).collect(),
                patches: Vec::new(),
                homothet: Some(Homothet {
                    ratio: Rat::ONE,
                    translation: Vec3::zero(),
                    edge_length_sq: Rat::from_integer(8),
                }),
            });
        }
        let moved = affine_image(&self.t, &Rat::ONE, x);
        let q = intersect(&self.t, &moved);
        if q.is_empty() {
            return Err(BodiesError::DisjointTranslate);
        }

        let vertices_met: Vec<usize> =
            (0..4).filter(|&i| self.in_translate(&self.verts[i], x)).collect();
        let edges_met: Vec<usize> = (0..6)
            .filter(|&e| {
                let (i, j) = TETRA_EDGES[e];
                self.segment_meets(&self.verts[i], &self.verts[j], x)
            })
            .collect();

        let mut patches = Vec::new();
        if q.is_solid() {
            for (face, h) in self.facets.iter().enumerate() {
                let s = section_of(&q, h);
                if s.is_polygon() {
                    patches.push(TrianglePatch {
                        face,
                        vertices: s.vertices,
                        sq_edges: s.sq_edges,
                    });
                }
            }
        }
        let faces_met: Vec<usize> = patches.iter().map(|p| p.face).collect();

        let homothet = match detect_homothet(&q, &self.t)? {
            Homothety::Homothet(h) => Some(h),
            _ => None,
        };

        let kind = if !q.is_solid() {
            IncidenceKind::Degenerate
        } else if let Some(&v) = vertices_met.first() {
            IncidenceKind::Vertex(v)
        } else if let Some(&e) = edges_met.first() {
            IncidenceKind::Edge(e)
        } else {
            // A solid Q ⊊ T cannot avoid ∂T, and it touches no edge here,
            // so it carries a patch on some facet.
            IncidenceKind::Face(*faces_met.first().expect("proper translate meets ∂T"))
        };

        Ok(Incidence {
            kind,
            vertices_met,
            edges_met,
            faces_met,
            patches,
            homothet,
        })
    }

    /// Checks the incidence claims for one translate. On failure returns `x`.
    pub fn corollary_holds(&self, x: &Vec3) -> bool {
        let Ok(inc) = self.classify(x) else {
            return false;
        };
        let expected_patches = match inc.kind {
            IncidenceKind::Vertex(_) => 3,
            IncidenceKind::Edge(_) => 2,
            IncidenceKind::Face(_) => 1,
            IncidenceKind::Degenerate | IncidenceKind::IdenticalTranslate => return false,
        };
        let Some(h) = &inc.homothet else {
            return false;
        };
        let regular_equal = inc
            .patches
            .iter()
            .all(|p| p.sq_edge() == Some(&h.edge_length_sq));
        inc.vertices_met.len() <= 1
            && inc.patch_count() == expected_patches
            && regular_equal
            && (inc.edges_met.len() <= 1 || !inc.vertices_met.is_empty())
    }

    /// A point of `int D(T) \ {0}` on the dyadic grid.
    pub fn sample_translate(&self, rng: &mut RngStream) -> Vec3 {
        sample_in_body(&self.dt, rng, |loc, p| {
            matches!(loc, Location::Interior) && !p.is_zero()
        })
    }

    pub fn run_corollary(&self, rng: &RngStream, range: Range<u64>) -> LemmaReport {
        let mut report = LemmaReport::new(COROLLARY_ID);
        for i in range {
            let x = self.sample_translate(&mut rng.substream(i));
            let outcome = if self.corollary_holds(&x) {
                Ok(())
            } else {
                Err(vec![x])
            };
            report.record(i, outcome);
        }
        report
    }
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::new()
    }
}

pub const COROLLARY_ID: &str = "corollary";

pub fn incidence_classify(x: &Vec3) -> Result<Incidence, BodiesError> {
    Classifier::new().classify(x)
}

pub fn verify_corollary(trials: u64, rng: &RngStream) -> LemmaReport {
    Classifier::new().run_corollary(rng, 0..trials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn vertex_contact_example() {
        let inc = incidence_classify(&Vec3::from_ints(1, 1, 0)).unwrap();
        assert_eq!(inc.kind, IncidenceKind::Vertex(0));
        assert_eq!(inc.faces_met, vec![0, 2, 3]);
        assert_eq!(inc.patch_count(), 3);
        for p in &inc.patches {
            assert_eq!(p.sq_edge(), Some(&Rat::from_integer(2)));
            assert_eq!(p.area_coeff(), Some(rat(1, 2)));
        }
        let h = inc.homothet.unwrap();
        assert_eq!(h.ratio, rat(1, 2));
        assert_eq!(h.translation, Vec3::new(rat(1, 2), rat(1, 2), rat(-1, 2)));
    }

    #[test]
    fn special_translates() {
        assert_eq!(
            incidence_classify(&Vec3::zero()).unwrap().kind,
            IncidenceKind::IdenticalTranslate
        );
        let touch = incidence_classify(&Vec3::from_ints(2, 2, 0)).unwrap();
        assert_eq!(touch.kind, IncidenceKind::Degenerate);
        assert_eq!(touch.patch_count(), 0);
        assert_eq!(
            incidence_classify(&Vec3::from_ints(5, 0, 0)),
            Err(BodiesError::DisjointTranslate)
        );
    }

    #[test]
    fn face_and_edge_contacts() {
        let c = Classifier::new();
        // Push along the outer normal of facet 0: only that facet is cut.
        let face = c.classify(&Vec3::new(rat(1, 4), rat(1, 4), rat(1, 4))).unwrap();
        assert_eq!(face.kind, IncidenceKind::Face(0));
        assert_eq!(face.patch_count(), 1);
        // a0 + a2 = (2,0,0): facets 0 and 2 are cut, so their common edge
        // (v0, v1) is met.
        let edge = c.classify(&Vec3::new(rat(1, 4), Rat::ZERO, Rat::ZERO)).unwrap();
        assert_eq!(edge.kind, IncidenceKind::Edge(0));
        assert_eq!(edge.patch_count(), 2);
        assert!(c.corollary_holds(&Vec3::new(rat(1, 4), Rat::ZERO, Rat::ZERO)));
    }

    #[test]
    fn corollary_small_run() {
        let r = verify_corollary(30, &RngStream::new(11, 0));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.trials, 30);
    }
}
