use alloc::vec::Vec;

use super::check::{check_box, BoxRegion, CoverageStatus};
use super::density::clipped_volume;
use super::{CoveringConfig, CoveringError};
use crate::numeric::{Rat, RngStream, Vec3};

/// Subdivision depth for every coverage check made by the search.
pub const SEARCH_MAX_DEPTH: u32 = 6;

fn footprint(x: &Vec3) -> BoxRegion {
    let one = Vec3::new(Rat::ONE, Rat::ONE, Rat::ONE);
    BoxRegion::new(x - &one, x + &one)
}

/// Greedy local search for a thinner covering of P.
///
/// Iteration `i` draws from `rng.substream(i)`: a translate, then either its
/// deletion or a move by `step·d` with `d ∈ {−1,0,1}³ \ {0}`. A proposal is
/// kept only if θ strictly drops and the part of P the old translate
/// occupied is still certified covered, which is the only place coverage
/// can be lost.
pub fn search_thin_covering(
    cfg: &CoveringConfig,
    iterations: u64,
    rng: &RngStream,
    step: &Rat,
) -> Result<CoveringConfig, CoveringError> {
    let p = BoxRegion::cube_p();
    if check_box(cfg.translates(), &p, SEARCH_MAX_DEPTH).status != CoverageStatus::Covered {
        return Err(CoveringError::NotACovering);
    }
    let mut xs: Vec<Vec3> = cfg.translates().to_vec();
    let mut clipped: Vec<Rat> = xs.iter().map(clipped_volume).collect();

    for i in 0..iterations {
        if xs.is_empty() {
            break;
        }
        let mut r = rng.substream(i);
        let idx = r.below(xs.len() as u64) as usize;
        let delete = r.below(2) == 0;
        let Some(region) = footprint(&xs[idx]).meet(&p) else {
            // Meets P in measure zero at most; it contributes nothing.
            continue;
        };

        let (candidate, new_clip) = if delete {
            if clipped[idx].is_zero() {
                continue;
            }
            let mut c = xs.clone();
            c.remove(idx);
            (c, None)
        } else {
            let d = loop {
                let d: [i64; 3] = core::array::from_fn(|_| r.below(3) as i64 - 1);
                if d != [0, 0, 0] {
                    break d;
                }
            };
            let moved = &xs[idx] + &Vec3::from_ints(d[0], d[1], d[2]).scale(step);
            if xs.contains(&moved) {
                continue;
            }
            let vol = clipped_volume(&moved);
            if vol >= clipped[idx] {
                continue;
            }
            let mut c = xs.clone();
            c[idx] = moved;
            (c, Some(vol))
        };
        if check_box(&candidate, &region, SEARCH_MAX_DEPTH).status != CoverageStatus::Covered {
            continue;
        }
        xs = candidate;
        match new_clip {
            Some(vol) => clipped[idx] = vol,
            None => {
                clipped.remove(idx);
            }
        }
    }
    CoveringConfig::new(xs, cfg.label.clone())
}
