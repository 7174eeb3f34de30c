use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use super::{make_body, tetrahedron_vertices, BodiesError, BodyName};
use crate::numeric::{det3, rat, sample_point, Rat, RngStream, Vec3};
use crate::polytope::{
    affine_image, intersect, locate_point, minkowski_sum, Location, Polytope,
};

/// Lemma id used by the union identity report.
pub const UNION_LEMMA_ID: &str = "union-d";

/// Randomized containment statements about translates of T that meet T.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `u ∈ T ⇒ −u/3 ∈ T`.
    NegThird,
    /// `T ∩ (T+x) ≠ ∅ ⇒ T+x ⊂ 5T ∩ −7T`.
    FiveT,
    /// `T ∩ (T+x) ≠ ∅ ⇒ T+x ⊂ C`.
    CubeC,
    /// `T ∩ (T+x) ≠ ∅ ⇒ T+x ⊂ D`.
    RegionD,
    /// `o ∈ T+x`, `(T+x) ∩ (T+y) ≠ ∅ ⇒ T+y ⊂ D(2T)`.
    D2T,
}

impl Lemma {
    pub const ALL: [Lemma; 5] = [
        Lemma::NegThird,
        Lemma::FiveT,
        Lemma::CubeC,
        Lemma::RegionD,
        Lemma::D2T,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Lemma::NegThird => "neg-third",
            Lemma::FiveT => "five-t",
            Lemma::CubeC => "cube-c",
            Lemma::RegionD => "region-d",
            Lemma::D2T => "d2t",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Lemma {
    type Err = BodiesError;

    fn from_str(s: &str) -> Result<Lemma, BodiesError> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.id() == s)
            .ok_or_else(|| BodiesError::UnknownLemma(s.to_string()))
    }
}

/// Outcome of a batch of randomized checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: String,
    pub trials: u64,
    pub failures: u64,
    /// Smallest failing trial index and the points that witness it.
    pub first_counterexample: Option<(u64, Vec<Vec3>)>,
}

impl LemmaReport {
    pub fn new(lemma: &str) -> LemmaReport {
        LemmaReport {
            lemma: lemma.to_string(),
            trials: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn record(&mut self, index: u64, outcome: Result<(), Vec<Vec3>>) {
        self.trials += 1;
        if let Err(witness) = outcome {
            self.failures += 1;
            match &self.first_counterexample {
                Some((i, _)) if *i <= index => {}
                _ => self.first_counterexample = Some((index, witness)),
            }
        }
    }

    /// Combines shard reports. The result does not depend on shard order.
    pub fn merge(mut self, other: LemmaReport) -> LemmaReport {
        self.trials += other.trials;
        self.failures += other.failures;
        if let Some((i, w)) = other.first_counterexample {
            match &self.first_counterexample {
                Some((j, _)) if *j <= i => {}
                _ => self.first_counterexample = Some((i, w)),
            }
        }
        self
    }
}

/// Uniform-ish point of the simplex spanned by `v`: sorted dyadic uniforms
/// give Dirichlet(1,1,1,1) weights on a 2^-30 grid.
pub fn sample_in_simplex(v: &[Vec3; 4], rng: &mut RngStream) -> Vec3 {
    let mut s = [rng.dyadic_unit(), rng.dyadic_unit(), rng.dyadic_unit()];
    s.sort();
    let w = [
        s[0].clone(),
        &s[1] - &s[0],
        &s[2] - &s[1],
        Rat::ONE - &s[2],
    ];
    let mut p = Vec3::zero();
    for (wi, vi) in w.iter().zip(v) {
        p = &p + &vi.scale(wi);
    }
    p
}

/// Rejection sample from the bounding box of `body`, keeping points that
/// satisfy `accept`.
pub fn sample_in_body(
    body: &Polytope,
    rng: &mut RngStream,
    accept: impl Fn(&Location, &Vec3) -> bool,
) -> Vec3 {
    let (lo, hi) = body.bounding_box().expect("non-empty body");
    loop {
        let p = sample_point(&lo, &hi, rng).expect("ordered box");
        if accept(&locate_point(body, &p), &p) {
            return p;
        }
    }
}

fn translate_inside(body: &Polytope, tetra: &[Vec3; 4], x: &Vec3) -> bool {
    tetra
        .iter()
        .all(|v| !matches!(locate_point(body, &(v + x)), Location::Outside))
}

/// Bodies needed by the lemma checks, built once.
#[derive(Debug, Clone)]
pub struct LemmaVerifier {
    t: Polytope,
    verts: [Vec3; 4],
    five_neg_seven: Polytope,
    cube_c: Polytope,
    region_d: Polytope,
    d2t: Polytope,
}

impl LemmaVerifier {
    pub fn new() -> LemmaVerifier {
        LemmaVerifier {
            t: make_body(BodyName::T),
            verts: tetrahedron_vertices(),
            five_neg_seven: intersect(
                &make_body(BodyName::FiveT),
                &make_body(BodyName::NegSevenT),
            ),
            cube_c: make_body(BodyName::C),
            region_d: make_body(BodyName::D),
            d2t: make_body(BodyName::D2T),
        }
    }

    pub fn neg_third_holds(&self, u: &Vec3) -> bool {
        let image = u.scale(&rat(-1, 3));
        !matches!(locate_point(&self.t, &image), Location::Outside)
    }

    /// Whether `T + x` lies in the target body of `lemma`. For
    /// [`Lemma::NegThird`] this checks `−x/3 ∈ T` instead.
    pub fn translate_holds(&self, lemma: Lemma, x: &Vec3) -> bool {
        let body = match lemma {
            Lemma::NegThird => return self.neg_third_holds(x),
            Lemma::FiveT => &self.five_neg_seven,
            Lemma::CubeC => &self.cube_c,
            Lemma::RegionD => &self.region_d,
            Lemma::D2T => &self.d2t,
        };
        translate_inside(body, &self.verts, x)
    }

    /// One randomized trial. On failure returns the sampled witness.
    pub fn trial(&self, lemma: Lemma, rng: &mut RngStream) -> Result<(), Vec<Vec3>> {
        match lemma {
            Lemma::NegThird => {
                let u = sample_in_simplex(&self.verts, rng);
                if self.neg_third_holds(&u) {
                    Ok(())
                } else {
                    Err(vec![u])
                }
            }
            Lemma::FiveT | Lemma::CubeC | Lemma::RegionD => {
                // The common point u2 ∈ T equals u1 + x ∈ T + x.
                let u1 = sample_in_simplex(&self.verts, rng);
                let u2 = sample_in_simplex(&self.verts, rng);
                let x = &u2 - &u1;
                if self.translate_holds(lemma, &x) {
                    Ok(())
                } else {
                    Err(vec![u1, u2, x])
                }
            }
            Lemma::D2T => {
                let u0 = sample_in_simplex(&self.verts, rng);
                let u1 = sample_in_simplex(&self.verts, rng);
                let u2 = sample_in_simplex(&self.verts, rng);
                // o = u0 + x ∈ T + x, and u2 + x = u1 + y is common to both.
                let x = -&u0;
                let y = &(&x + &u2) - &u1;
                if self.translate_holds(lemma, &y) {
                    Ok(())
                } else {
                    Err(vec![x, y])
                }
            }
        }
    }

    /// Trials `range` of the run rooted at `rng`. Trial `i` always draws
    /// from `rng.substream(i)`, so ranges can be run anywhere and merged.
    pub fn run(&self, lemma: Lemma, rng: &RngStream, range: Range<u64>) -> LemmaReport {
        let mut report = LemmaReport::new(lemma.id());
        for i in range {
            report.record(i, self.trial(lemma, &mut rng.substream(i)));
        }
        report
    }
}

impl Default for LemmaVerifier {
    fn default() -> Self {
        LemmaVerifier::new()
    }
}

/// Runs `trials` randomized checks of `lemma` (by id).
pub fn verify_containment_lemma(
    lemma: &str,
    trials: u64,
    rng: &RngStream,
) -> Result<LemmaReport, BodiesError> {
    let lemma: Lemma = lemma.parse()?;
    Ok(LemmaVerifier::new().run(lemma, rng, 0..trials))
}

/// Writes points of D as `2u − w` with `u, w ∈ T`, using a triangulation
/// of D whose vertices are all of the form `2v_i − v_j`.
struct Decomposer {
    t: Polytope,
    tets: Vec<[usize; 4]>,
    verts: Vec<Vec3>,
    /// For each vertex of D, the pair (v_i, v_j) with vertex = 2v_i − v_j.
    preimage: Vec<Option<(Vec3, Vec3)>>,
}

impl Decomposer {
    fn new(d: &Polytope, t: &Polytope) -> Decomposer {
        let verts = d.vertices().to_vec();
        let tv = tetrahedron_vertices();
        let two = Rat::from_integer(2);
        let preimage = verts
            .iter()
            .map(|q| {
                tv.iter()
                    .flat_map(|a| tv.iter().map(move |b| (a, b)))
                    .find(|(a, b)| &(a.scale(&two)) - *b == *q)
                    .map(|(a, b)| (a.clone(), b.clone()))
            })
            .collect();
        let mut tets = Vec::new();
        for cyc in d.facet_vertices() {
            if cyc.contains(&0) {
                continue;
            }
            for k in 1..cyc.len() - 1 {
                tets.push([0, cyc[0], cyc[k], cyc[k + 1]]);
            }
        }
        Decomposer {
            t: t.clone(),
            tets,
            verts,
            preimage,
        }
    }

    fn barycentric(&self, tet: &[usize; 4], p: &Vec3) -> Option<[Rat; 4]> {
        let a = &self.verts[tet[0]];
        let e1 = &self.verts[tet[1]] - a;
        let e2 = &self.verts[tet[2]] - a;
        let e3 = &self.verts[tet[3]] - a;
        let r = p - a;
        let det = det3(&e1, &e2, &e3);
        if det.is_zero() {
            return None;
        }
        let b1 = &det3(&r, &e2, &e3) / &det;
        let b2 = &det3(&e1, &r, &e3) / &det;
        let b3 = &det3(&e1, &e2, &r) / &det;
        let b0 = Rat::ONE - &b1 - &b2 - &b3;
        let w = [b0, b1, b2, b3];
        w.iter().all(|x| !x.is_negative()).then_some(w)
    }

    /// `(u, w, x)` with `p = 2u − w`, `u, w ∈ T`, `x = p − u`, all checked.
    fn decompose(&self, p: &Vec3) -> Option<(Vec3, Vec3, Vec3)> {
        let (tet, w) = self
            .tets
            .iter()
            .find_map(|tet| self.barycentric(tet, p).map(|w| (tet, w)))?;
        let mut u = Vec3::zero();
        let mut v = Vec3::zero();
        for (k, lam) in tet.iter().zip(&w) {
            let (a, b) = self.preimage[*k].as_ref()?;
            u = &u + &a.scale(lam);
            v = &v + &b.scale(lam);
        }
        let x = p - &u;
        let inside = |q: &Vec3| !matches!(locate_point(&self.t, q), Location::Outside);
        let ok = &u.scale(&Rat::from_integer(2)) - &v == *p
            && inside(&u)
            && inside(&v)
            && inside(&(&u - &x))
            && inside(&(p - &x));
        ok.then_some((u, v, x))
    }
}

/// Checks `⋃ {T+x : T ∩ (T+x) ≠ ∅} = D`.
///
/// One exact check that `2T ⊕ (−T)` equals `5T ∩ −7T ∩ C`, then `trials`
/// sampled translates tested for `T+x ⊂ D`, then `trials` sampled points of
/// D plus every point of a `2^depth` grid over D decomposed as `p ∈ T+x`
/// with `u ∈ T ∩ (T+x)`.
pub fn verify_union_equals_d(trials: u64, subdivision_depth: u32, rng: &RngStream) -> LemmaReport {
    let t = make_body(BodyName::T);
    let d = make_body(BodyName::D);
    let neg_t = affine_image(&t, &Rat::from_integer(-1), &Vec3::zero());
    let two_t = affine_image(&t, &Rat::from_integer(2), &Vec3::zero());

    let mut report = LemmaReport::new(UNION_LEMMA_ID);
    let mut index = 0u64;
    let mut next = || {
        index += 1;
        index - 1
    };

    let sum_matches = minkowski_sum(&two_t, &neg_t).map(|s| s == d).unwrap_or(false);
    report.record(next(), if sum_matches { Ok(()) } else { Err(Vec::new()) });

    let verifier = LemmaVerifier::new();
    let forward = rng.substream(0);
    for i in 0..trials {
        let r = verifier.trial(Lemma::RegionD, &mut forward.substream(i));
        report.record(next(), r);
    }

    let decomposer = Decomposer::new(&d, &t);
    let check = |p: &Vec3| match decomposer.decompose(p) {
        Some(_) => Ok(()),
        None => Err(vec![p.clone()]),
    };
    let backward = rng.substream(1);
    for i in 0..trials {
        let p = sample_in_body(&d, &mut backward.substream(i), |loc, _| {
            !matches!(loc, Location::Outside)
        });
        report.record(next(), check(&p));
    }

    let n = 1i64 << subdivision_depth.min(20);
    let step = rat(6, n);
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                let coord = |m: i64| &step * &Rat::from_integer(m) - Rat::from_integer(3);
                let p = Vec3::new(coord(i), coord(j), coord(k));
                if matches!(locate_point(&d, &p), Location::Outside) {
                    continue;
                }
                report.record(next(), check(&p));
            }
        }
    }
    report
}
