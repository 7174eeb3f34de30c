//! The named bodies of the covering argument, exact checks of their
//! constants, and randomized verifiers for the containment lemmas and the
//! incidence structure of overlapping tetrahedron translates.

mod incidence;
mod lemmas;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::numeric::{rat, Rat, Vec3};
use crate::polytope::{
    affine_image, contains_poly, hull, intersect, intersect_halfspaces, minkowski_sum, volume,
    Halfspace, Polytope, PolytopeError,
};

pub use incidence::{
    incidence_classify, verify_corollary, Classifier, Incidence, IncidenceKind, TrianglePatch,
    COROLLARY_ID, TETRA_EDGES,
};
pub use lemmas::{
    sample_in_body, sample_in_simplex, verify_containment_lemma, verify_union_equals_d, Lemma,
    LemmaReport, LemmaVerifier, UNION_LEMMA_ID,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BodiesError {
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("unknown body `{0}`")]
    UnknownBody(String),
    #[error("translate does not meet the tetrahedron")]
    DisjointTranslate,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// The bodies named in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BodyName {
    /// Regular tetrahedron with vertices (1,1,−1), (1,−1,1), (−1,1,1), (−1,−1,−1).
    T,
    TwoT,
    FiveT,
    NegSevenT,
    /// Cube `max|coord| ≤ 3`.
    C,
    /// Cube `max|coord| ≤ 4`.
    P,
    /// Difference body `T ⊕ (−T)`.
    DT,
    /// Difference body of `2T`: `max|coord| ≤ 4`, `|x|+|y|+|z| ≤ 8`.
    D2T,
    /// `5T ∩ −7T ∩ C`.
    D,
}

impl BodyName {
    pub const ALL: [BodyName; 9] = [
        BodyName::T,
        BodyName::TwoT,
        BodyName::FiveT,
        BodyName::NegSevenT,
        BodyName::C,
        BodyName::P,
        BodyName::DT,
        BodyName::D2T,
        BodyName::D,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BodyName::T => "T",
            BodyName::TwoT => "TwoT",
            BodyName::FiveT => "FiveT",
            BodyName::NegSevenT => "NegSevenT",
            BodyName::C => "C",
            BodyName::P => "P",
            BodyName::DT => "DT",
            BodyName::D2T => "D2T",
            BodyName::D => "D",
        }
    }
}

impl fmt::Display for BodyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BodyName {
    type Err = BodiesError;

    fn from_str(s: &str) -> Result<BodyName, BodiesError> {
        BodyName::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| BodiesError::UnknownBody(String::from(s)))
    }
}

pub fn tetrahedron_vertices() -> [Vec3; 4] {
    [
        Vec3::from_ints(1, 1, -1),
        Vec3::from_ints(1, -1, 1),
        Vec3::from_ints(-1, 1, 1),
        Vec3::from_ints(-1, -1, -1),
    ]
}

/// Facets of T, `a_k·p ≤ 1`, in the order used for face indices.
pub fn tetrahedron_facets() -> [Halfspace; 4] {
    [
        Halfspace::from_ints(1, 1, 1, Rat::ONE),
        Halfspace::from_ints(-1, -1, 1, Rat::ONE),
        Halfspace::from_ints(1, -1, -1, Rat::ONE),
        Halfspace::from_ints(-1, 1, -1, Rat::ONE),
    ]
}

pub fn tetrahedron() -> Polytope {
    hull(&tetrahedron_vertices()).expect("four points")
}

/// Axis-aligned cube `max|coord| ≤ half_side` centred at the origin.
pub fn centered_cube(half_side: &Rat) -> Polytope {
    let mut hs = Vec::with_capacity(6);
    for (a, b, c) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
        hs.push(Halfspace::from_ints(a, b, c, half_side.clone()));
        hs.push(Halfspace::from_ints(-a, -b, -c, half_side.clone()));
    }
    intersect_halfspaces(&hs).expect("cube is bounded")
}

fn cuboctahedron_d2t() -> Polytope {
    let mut hs = centered_cube(&Rat::from_integer(4)).facets().to_vec();
    for sx in [-1, 1] {
        for sy in [-1, 1] {
            for sz in [-1, 1] {
                hs.push(Halfspace::from_ints(sx, sy, sz, Rat::from_integer(8)));
            }
        }
    }
    intersect_halfspaces(&hs).expect("bounded")
}

/// Canonical polytope for a body name.
pub fn make_body(name: BodyName) -> Polytope {
    let t = tetrahedron();
    let scaled = |s: i64| affine_image(&t, &Rat::from_integer(s), &Vec3::zero());
    match name {
        BodyName::T => t,
        BodyName::TwoT => scaled(2),
        BodyName::FiveT => scaled(5),
        BodyName::NegSevenT => scaled(-7),
        BodyName::C => centered_cube(&Rat::from_integer(3)),
        BodyName::P => centered_cube(&Rat::from_integer(4)),
        BodyName::DT => minkowski_sum(&t, &scaled(-1)).expect("non-empty"),
        BodyName::D2T => cuboctahedron_d2t(),
        BodyName::D => intersect(
            &intersect(&scaled(5), &scaled(-7)),
            &centered_cube(&Rat::from_integer(3)),
        ),
    }
}

/// All named bodies, built once.
#[derive(Debug, Clone)]
pub struct BodyCatalog {
    bodies: Vec<Polytope>,
}

impl BodyCatalog {
    pub fn new() -> BodyCatalog {
        BodyCatalog {
            bodies: BodyName::ALL.iter().map(|&b| make_body(b)).collect(),
        }
    }

    pub fn get(&self, name: BodyName) -> &Polytope {
        &self.bodies[BodyName::ALL.iter().position(|&b| b == name).expect("listed")]
    }
}

impl Default for BodyCatalog {
    fn default() -> Self {
        BodyCatalog::new()
    }
}

/// Value compared by one constant check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckValue {
    Exact(Rat),
    Holds(bool),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantCheck {
    pub name: &'static str,
    pub expected: CheckValue,
    pub computed: CheckValue,
    pub pass: bool,
}

impl ConstantCheck {
    fn exact(name: &'static str, expected: Rat, computed: Rat) -> ConstantCheck {
        ConstantCheck {
            name,
            pass: expected == computed,
            expected: CheckValue::Exact(expected),
            computed: CheckValue::Exact(computed),
        }
    }

    fn holds(name: &'static str, computed: bool) -> ConstantCheck {
        ConstantCheck {
            name,
            pass: computed,
            expected: CheckValue::Holds(true),
            computed: CheckValue::Holds(computed),
        }
    }
}

/// Volumes and set identities of the named bodies.
pub fn verify_constants() -> Vec<ConstantCheck> {
    let cat = BodyCatalog::new();
    let vol = |b| volume(cat.get(b));
    let t = cat.get(BodyName::T);
    let neg_t = affine_image(t, &Rat::from_integer(-1), &Vec3::zero());
    let two_t_minus_t = minkowski_sum(cat.get(BodyName::TwoT), &neg_t).expect("non-empty");
    let doubled_dt = affine_image(cat.get(BodyName::DT), &Rat::from_integer(2), &Vec3::zero());
    vec![
        ConstantCheck::exact("vol(T)", rat(8, 3), vol(BodyName::T)),
        ConstantCheck::exact("vol(P)", Rat::from_integer(512), vol(BodyName::P)),
        ConstantCheck::exact("vol(C)", Rat::from_integer(216), vol(BodyName::C)),
        ConstantCheck::exact("vol(D2T)", rat(1280, 3), vol(BodyName::D2T)),
        ConstantCheck::exact("vol(D)", Rat::from_integer(168), vol(BodyName::D)),
        ConstantCheck::exact("vol(DT)", rat(160, 3), vol(BodyName::DT)),
        ConstantCheck::holds("2T+(-T) = 5T&-7T&C", two_t_minus_t == *cat.get(BodyName::D)),
        ConstantCheck::holds("D2T = 2(T+(-T))", doubled_dt == *cat.get(BodyName::D2T)),
        ConstantCheck::holds(
            "D in D2T in P",
            contains_poly(cat.get(BodyName::D2T), cat.get(BodyName::D))
                && contains_poly(cat.get(BodyName::P), cat.get(BodyName::D2T)),
        ),
    ]
}
