use super::{affine_image, Polytope, PolytopeError};
use crate::numeric::{det3, Rat, Vec3};

/// A positive homothet `ratio·K + translation` of a reference simplex `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homothet {
    pub ratio: Rat,
    pub translation: Vec3,
    /// Squared edge length of the image when the reference is regular
    /// (`8·ratio²` for the tetrahedron with edge `2√2`).
    pub edge_length_sq: Rat,
}

impl Homothet {
    pub fn reconstruct(&self, reference: &Polytope) -> Polytope {
        affine_image(reference, &self.ratio, &self.translation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Homothety {
    Homothet(Homothet),
    NotHomothetic,
    /// The analysed body has dimension below three (or is empty).
    Degenerate,
}

/// Recognizes `poly = μ·reference + y` with `μ > 0`.
///
/// Both bodies must share the reference's four facet normals. With positive
/// weights `w` balancing the normals (`Σ w_k n_k = 0`) the translation
/// drops out of the weighted offset sum, so `μ = Σ w_k c_k / Σ w_k r_k`;
/// `y` then solves `n_k·y = c_k − μ r_k` on three facets, and the result is
/// confirmed by rebuilding the homothet.
pub fn detect_homothet(poly: &Polytope, reference: &Polytope) -> Result<Homothety, PolytopeError> {
    if !reference.is_solid() || reference.facets().len() != 4 || reference.vertices().len() != 4 {
        return Err(PolytopeError::ReferenceNotSimplex);
    }
    if !poly.is_solid() {
        return Ok(Homothety::Degenerate);
    }
    if poly.facets().len() != 4 {
        return Ok(Homothety::NotHomothetic);
    }
    let rf = reference.facets();
    let pf = poly.facets();
    if rf.iter().zip(pf).any(|(r, p)| r.normal() != p.normal()) {
        return Ok(Homothety::NotHomothetic);
    }
    let n: [&Vec3; 4] = [rf[0].normal(), rf[1].normal(), rf[2].normal(), rf[3].normal()];
    let det = det3(n[0], n[1], n[2]);
    let neg3 = -n[3];
    let w = [
        det3(&neg3, n[1], n[2]) / &det,
        det3(n[0], &neg3, n[2]) / &det,
        det3(n[0], n[1], &neg3) / &det,
        Rat::ONE,
    ];
    let weighted = |offsets: [&Rat; 4]| -> Rat { w.iter().zip(offsets).map(|(a, b)| a * b).sum() };
    let ref_sum = weighted([rf[0].offset(), rf[1].offset(), rf[2].offset(), rf[3].offset()]);
    let poly_sum = weighted([pf[0].offset(), pf[1].offset(), pf[2].offset(), pf[3].offset()]);
    let ratio = poly_sum / ref_sum;
    if !ratio.is_positive() {
        return Ok(Homothety::NotHomothetic);
    }
    let b: [Rat; 3] = core::array::from_fn(|k| pf[k].offset() - &ratio * rf[k].offset());
    let translation = (&(&n[1].cross(n[2]).scale(&b[0]) + &n[2].cross(n[0]).scale(&b[1]))
        + &n[0].cross(n[1]).scale(&b[2]))
        .scale(&det.recip().expect("simplex normals are independent"));

    let rv = reference.vertices();
    let edge_sq = (&rv[1] - &rv[0]).norm_sq();
    let h = Homothet {
        edge_length_sq: &ratio * &ratio * edge_sq,
        ratio,
        translation,
    };
    if h.reconstruct(reference) != *poly {
        return Ok(Homothety::NotHomothetic);
    }
    Ok(Homothety::Homothet(h))
}
