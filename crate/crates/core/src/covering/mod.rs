//! Coverings of the cube P by translates of T: density, certification by
//! box subdivision, neighbor incidence counts, and the lower-bound chain.

mod bound;
mod check;
mod density;
mod neighbors;
mod search;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::bodies::{tetrahedron_facets, BodiesError};
use crate::numeric::{Rat, Vec3};
use crate::polytope::{Halfspace, PolytopeError};

pub use bound::{
    case1_bound, case2_bound, sum_cubes_lower_bound, sum_cubes_meets_bound, theorem_bound,
    BoundReport, BoundValue, CASE1_THRESHOLD_M, CASE2_T_MAX, T_MIN,
};
pub use check::{
    covering_check, grid_covering, CoverageStatus, CoverageVerdict, BoxRegion, MAX_CELL_SIDE,
};
pub use density::{clipped_volume, pair_overlap, theta_density, DensityReport};
pub use neighbors::{neighbor_incidence, BoundaryCover, IncidenceReport, VertexCover};
pub use search::{search_thin_covering, SEARCH_MAX_DEPTH};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoveringError {
    #[error("duplicate translate at index {0}")]
    DuplicateTranslate(usize),
    #[error("configuration does not cover the region")]
    NotACovering,
    #[error("case 1 needs m >= 63, got {0}")]
    WrongCase(u64),
    #[error("t = {0} is outside [12, 128]")]
    TOutOfRange(u64),
    #[error("cell side exceeds 2/3")]
    CellTooLarge,
    #[error("cell side must be positive and divide the region side")]
    BadCellSide,
    #[error("region is not an axis-aligned box")]
    RegionNotBox,
    #[error("center index {0} is out of range")]
    BadCenter(usize),
    #[error("translate {0} meets no other translate")]
    NoNeighbors(usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Bodies(#[from] BodiesError),
}

/// A finite set of translation vectors `x_i`, each standing for `T + x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringConfig {
    translates: Vec<Vec3>,
    pub label: Option<String>,
}

impl CoveringConfig {
    pub fn new(translates: Vec<Vec3>, label: Option<String>) -> Result<CoveringConfig, CoveringError> {
        let mut seen = BTreeSet::new();
        for (i, x) in translates.iter().enumerate() {
            if !seen.insert(x) {
                return Err(CoveringError::DuplicateTranslate(i));
            }
        }
        Ok(CoveringConfig { translates, label })
    }

    pub fn translates(&self) -> &[Vec3] {
        &self.translates
    }

    pub fn len(&self) -> usize {
        self.translates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translates.is_empty()
    }

    /// The configuration without translate `index`.
    pub fn without(&self, index: usize) -> CoveringConfig {
        let mut translates = self.translates.clone();
        translates.remove(index);
        CoveringConfig {
            translates,
            label: self.label.clone(),
        }
    }
}

/// The four facets of T shifted by `x`.
pub(crate) fn translate_facets(x: &Vec3) -> [Halfspace; 4] {
    tetrahedron_facets().map(|h| h.translated(x))
}

/// `a_k·(p − x) ≤ 1` for all facet normals of T.
pub(crate) fn in_translate(p: &Vec3, x: &Vec3) -> bool {
    let d = p - x;
    signed_evals(&d).iter().all(|v| *v <= Rat::ONE)
}

/// `a_k·d` for the four facet normals of T.
pub(crate) fn signed_evals(d: &Vec3) -> [Rat; 4] {
    [
        &(&d.x + &d.y) + &d.z,
        &(-&d.x - &d.y) + &d.z,
        &(&d.x - &d.y) - &d.z,
        &(&d.y - &d.x) - &d.z,
    ]
}

/// Whether the box with centre `c` and half-widths summing to `h` lies in
/// `T + x`. The normals have ±1 entries, so the box maximum of `a_k·p` is
/// `a_k·c + h`.
pub(crate) fn box_in_translate(c: &Vec3, h: &Rat, x: &Vec3) -> bool {
    let limit = Rat::ONE - h;
    signed_evals(&(c - x)).iter().all(|v| *v <= limit)
}

/// Translates bucketed by the unit cell containing `x`.
#[derive(Debug, Clone)]
pub(crate) struct SpatialIndex {
    cells: BTreeMap<[i64; 3], Vec<usize>>,
}

/// Floor, saturated to the i64 range.
fn floor_sat(r: &Rat) -> i64 {
    r.floor_i64()
        .unwrap_or(if r.is_negative() { i64::MIN } else { i64::MAX })
}

fn cell_of(p: &Vec3) -> [i64; 3] {
    [floor_sat(&p.x), floor_sat(&p.y), floor_sat(&p.z)]
}

impl SpatialIndex {
    pub(crate) fn new(translates: &[Vec3]) -> SpatialIndex {
        let mut cells: BTreeMap<[i64; 3], Vec<usize>> = BTreeMap::new();
        for (i, x) in translates.iter().enumerate() {
            cells.entry(cell_of(x)).or_default().push(i);
        }
        SpatialIndex { cells }
    }

    /// Indices (ascending) of translates whose bounding box `[x−1, x+1]³`
    /// meets the closed box `[lo, hi]`.
    pub(crate) fn query(&self, translates: &[Vec3], lo: &Vec3, hi: &Vec3) -> Vec<usize> {
        let ones = Vec3::new(Rat::ONE, Rat::ONE, Rat::ONE);
        let (a, b) = (cell_of(&(lo - &ones)), cell_of(&(hi + &ones)));
        let mut out = Vec::new();
        for (key, ids) in self.cells.range(a..=b) {
            if (1..3).any(|k| key[k] < a[k] || key[k] > b[k]) {
                continue;
            }
            out.extend(ids.iter().copied().filter(|&i| bbox_meets(&translates[i], lo, hi)));
        }
        out.sort_unstable();
        out
    }
}

/// `[x−1, x+1]³ ∩ [lo, hi] ≠ ∅`.
pub(crate) fn bbox_meets(x: &Vec3, lo: &Vec3, hi: &Vec3) -> bool {
    x.coords()
        .iter()
        .zip(lo.coords().iter().zip(hi.coords()))
        .all(|(xi, (l, h))| &(*xi - &Rat::ONE) <= h && &(*xi + &Rat::ONE) >= *l)
}
