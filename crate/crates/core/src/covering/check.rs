use alloc::vec;
use alloc::vec::Vec;

use super::{box_in_translate, in_translate, CoveringConfig, CoveringError, SpatialIndex};
use crate::numeric::{rat, Rat, Vec3};
use crate::polytope::{volume, Polytope};

/// Largest grid cell that fits in a single translate: the cube of side
/// 2/3 centred at o has corner sum 1.
pub const MAX_CELL_SIDE: (i64, i64) = (2, 3);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverageStatus {
    Covered,
    /// A point of the region outside every translate.
    Uncovered(Vec3),
    /// Some box was still undecided at the maximum depth.
    Inconclusive(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageVerdict {
    pub status: CoverageStatus,
    pub boxes_tested: u64,
}

/// Closed axis-aligned box `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxRegion {
    pub lo: Vec3,
    pub hi: Vec3,
}

impl BoxRegion {
    pub fn new(lo: Vec3, hi: Vec3) -> BoxRegion {
        BoxRegion { lo, hi }
    }

    /// `[−half, half]³`.
    pub fn centered(half: Rat) -> BoxRegion {
        BoxRegion {
            lo: Vec3::new(-&half, -&half, -&half),
            hi: Vec3::new(half.clone(), half.clone(), half),
        }
    }

    pub fn cube_p() -> BoxRegion {
        BoxRegion::centered(Rat::from_integer(4))
    }

    pub fn from_polytope(region: &Polytope) -> Result<BoxRegion, CoveringError> {
        let (lo, hi) = region.bounding_box().ok_or(CoveringError::RegionNotBox)?;
        let b = BoxRegion { lo, hi };
        if !region.is_solid() || volume(region) != b.volume() {
            return Err(CoveringError::RegionNotBox);
        }
        Ok(b)
    }

    pub fn volume(&self) -> Rat {
        let d = &self.hi - &self.lo;
        &(&d.x * &d.y) * &d.z
    }

    pub fn is_solid(&self) -> bool {
        let d = &self.hi - &self.lo;
        d.coords().iter().all(|c| c.is_positive())
    }

    pub fn center(&self) -> Vec3 {
        (&self.lo + &self.hi).scale(&rat(1, 2))
    }

    /// Sum of the three half-widths.
    fn half_sum(&self) -> Rat {
        (&self.hi - &self.lo).l1() * rat(1, 2)
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        let (lo, hi) = (self.lo.coords(), self.hi.coords());
        p.coords()
            .into_iter()
            .enumerate()
            .all(|(k, c)| lo[k] <= c && c <= hi[k])
    }

    /// Intersection with another box, if it has positive volume.
    pub fn meet(&self, other: &BoxRegion) -> Option<BoxRegion> {
        let lo = Vec3::new(
            self.lo.x.clone().max(other.lo.x.clone()),
            self.lo.y.clone().max(other.lo.y.clone()),
            self.lo.z.clone().max(other.lo.z.clone()),
        );
        let hi = Vec3::new(
            self.hi.x.clone().min(other.hi.x.clone()),
            self.hi.y.clone().min(other.hi.y.clone()),
            self.hi.z.clone().min(other.hi.z.clone()),
        );
        let b = BoxRegion { lo, hi };
        b.is_solid().then_some(b)
    }

    /// Children in octant order: bit 0 selects the upper x half, bit 1 y,
    /// bit 2 z.
    fn split(&self) -> [BoxRegion; 8] {
        let m = self.center();
        core::array::from_fn(|o| {
            let pick = |bit: usize, lo: &Rat, mid: &Rat, hi: &Rat| {
                if o >> bit & 1 == 0 {
                    (lo.clone(), mid.clone())
                } else {
                    (mid.clone(), hi.clone())
                }
            };
            let (x0, x1) = pick(0, &self.lo.x, &m.x, &self.hi.x);
            let (y0, y1) = pick(1, &self.lo.y, &m.y, &self.hi.y);
            let (z0, z1) = pick(2, &self.lo.z, &m.z, &self.hi.z);
            BoxRegion {
                lo: Vec3::new(x0, y0, z0),
                hi: Vec3::new(x1, y1, z1),
            }
        })
    }
}

/// Certifies that the translates cover `region`, a box.
///
/// Depth 0 is the region itself. A box is accepted when one translate
/// contains it and refuted when its centre lies in no translate; otherwise
/// it is split in eight. Boxes are visited depth first, children in octant
/// order, and the first refutation is returned.
pub fn covering_check(
    cfg: &CoveringConfig,
    region: &Polytope,
    max_depth: u32,
) -> Result<CoverageVerdict, CoveringError> {
    Ok(check_box(cfg.translates(), &BoxRegion::from_polytope(region)?, max_depth))
}

pub(crate) fn check_box(xs: &[Vec3], region: &BoxRegion, max_depth: u32) -> CoverageVerdict {
    let index = SpatialIndex::new(xs);
    let root_candidates = index.query(xs, &region.lo, &region.hi);
    let mut stack = vec![(region.clone(), 0u32, root_candidates)];
    let mut boxes_tested = 0u64;
    let mut undecided = false;
    while let Some((b, depth, parent)) = stack.pop() {
        boxes_tested += 1;
        let candidates: Vec<usize> = parent
            .into_iter()
            .filter(|&i| super::bbox_meets(&xs[i], &b.lo, &b.hi))
            .collect();
        let (c, h) = (b.center(), b.half_sum());
        if candidates.iter().any(|&i| box_in_translate(&c, &h, &xs[i])) {
            continue;
        }
        if !candidates.iter().any(|&i| in_translate(&c, &xs[i])) {
            return CoverageVerdict {
                status: CoverageStatus::Uncovered(c),
                boxes_tested,
            };
        }
        if depth >= max_depth {
            undecided = true;
            continue;
        }
        for child in b.split().into_iter().rev() {
            stack.push((child, depth + 1, candidates.clone()));
        }
    }
    CoverageVerdict {
        status: if undecided {
            CoverageStatus::Inconclusive(max_depth)
        } else {
            CoverageStatus::Covered
        },
        boxes_tested,
    }
}

/// One translate per cell of side `cell_side`, with the translate's origin
/// at the cell centre, listed with z varying fastest.
pub fn grid_covering(region: &BoxRegion, cell_side: &Rat) -> Result<CoveringConfig, CoveringError> {
    if !cell_side.is_positive() {
        return Err(CoveringError::BadCellSide);
    }
    if *cell_side > rat(MAX_CELL_SIDE.0, MAX_CELL_SIDE.1) {
        return Err(CoveringError::CellTooLarge);
    }
    let d = &region.hi - &region.lo;
    let mut counts = [0i64; 3];
    for (k, side) in d.coords().into_iter().enumerate() {
        let n = side / cell_side;
        if !n.is_integer() || !n.is_positive() {
            return Err(CoveringError::BadCellSide);
        }
        counts[k] = n.floor_i64().ok_or(CoveringError::BadCellSide)?;
    }
    let half = cell_side * &rat(1, 2);
    let at = |lo: &Rat, i: i64| &(lo + &half) + &(cell_side * &Rat::from_integer(i));
    let mut xs = Vec::with_capacity((counts[0] * counts[1] * counts[2]) as usize);
    for i in 0..counts[0] {
        for j in 0..counts[1] {
            for k in 0..counts[2] {
                xs.push(Vec3::new(at(&region.lo.x, i), at(&region.lo.y, j), at(&region.lo.z, k)));
            }
        }
    }
    CoveringConfig::new(xs, None)
}
