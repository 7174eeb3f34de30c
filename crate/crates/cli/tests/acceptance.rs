//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use serde_json::Value;
use simplex_cover::{parse_config, run_command, serialize_config};
use simplex_cover_core::bodies::{
    make_body, tetrahedron_vertices, verify_constants, verify_corollary, BodyName, Classifier,
};
use simplex_cover_core::covering::{
    case1_bound, case2_bound, covering_check, grid_covering, neighbor_incidence,
    sum_cubes_lower_bound, sum_cubes_meets_bound, theorem_bound, theta_density, BoundValue,
    BoundaryCover, BoxRegion, CoverageStatus, CoveringConfig, CASE1_THRESHOLD_M, CASE2_T_MAX,
};
use simplex_cover_core::polytope::{
    affine_image, detect_homothet, intersect, minkowski_sum, volume, Homothety,
};
use simplex_cover_core::{rat, QuadVal, Rat, RngStream, Vec3};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n)
}

/// Facet normals of T, written out here rather than taken from the library.
const NORMALS: [[i64; 3]; 4] = [[1, 1, 1], [-1, -1, 1], [1, -1, -1], [-1, 1, -1]];

fn dot(a: [i64; 3], p: &Vec3) -> Rat {
    &(&(&int(a[0]) * &p.x) + &(&int(a[1]) * &p.y)) + &(&int(a[2]) * &p.z)
}

fn in_translate(p: &Vec3, x: &Vec3) -> bool {
    let d = p - x;
    NORMALS.iter().all(|a| dot(*a, &d) <= Rat::ONE)
}

fn criterion_1() -> Outcome {
    let t = make_body(BodyName::T);
    let neg_t = affine_image(&t, &int(-1), &Vec3::zero());
    let expected = [
        (BodyName::T, rat(8, 3)),
        (BodyName::P, int(512)),
        (BodyName::C, int(216)),
        (BodyName::D2T, rat(1280, 3)),
        (BodyName::D, int(168)),
        (BodyName::DT, rat(160, 3)),
    ];
    for (name, vol) in &expected {
        let got = volume(&make_body(*name));
        ensure!(got == *vol, "vol({name}) = {got}, expected {vol}");
    }
    // vol(T) again from the determinant of its edge vectors.
    let v = tetrahedron_vertices();
    let det = simplex_cover_core::numeric::det3(&(&v[1] - &v[0]), &(&v[2] - &v[0]), &(&v[3] - &v[0]));
    ensure!(det.abs() / int(6) == rat(8, 3), "determinant volume of T is {}", det.abs() / int(6));

    let two_t = affine_image(&t, &int(2), &Vec3::zero());
    let sum = minkowski_sum(&two_t, &neg_t).map_err(|e| e.to_string())?;
    let cap = intersect(
        &intersect(&make_body(BodyName::FiveT), &make_body(BodyName::NegSevenT)),
        &make_body(BodyName::C),
    );
    ensure!(sum == cap, "2T+(-T) differs from 5T & -7T & C");
    let dt = minkowski_sum(&t, &neg_t).map_err(|e| e.to_string())?;
    let half_d2t = affine_image(&make_body(BodyName::D2T), &rat(1, 2), &Vec3::zero());
    ensure!(dt == half_d2t, "T+(-T) differs from D(2T)/2");
    let checks = verify_constants();
    ensure!(checks.len() == 9 && checks.iter().all(|c| c.pass), "verify_constants failed");
    Ok("6 volumes, 2 set identities, 9 library checks".into())
}

/// `1 + √2/1152` rounded to 15 significant digits, from `⌊√2·10¹⁰⁰⌋`.
fn hundred_digit_final() -> String {
    let ten = BigInt::from(10);
    let n = (BigInt::from(2) * ten.pow(200)).sqrt();
    // final·10¹⁰⁰ lies in [10¹⁰⁰ + n/1152, 10¹⁰⁰ + (n+1)/1152).
    let scale = BigInt::from(1152) * ten.pow(100);
    let round14 = |num: BigInt| -> BigInt {
        // round(num / scale · 10¹⁴), half up.
        let shifted = num * ten.pow(14) * 2 + &scale;
        shifted / (&scale * 2)
    };
    let lo = round14(&scale + &n);
    let hi = round14(&scale + &n + 1);
    assert_eq!(lo, hi, "100 digits do not pin down the 15th digit");
    let digits = lo.to_string();
    format!("{}.{}", &digits[..1], &digits[1..])
}

fn criterion_2() -> Outcome {
    let sqrt2_over_1152 = QuadVal::surd(rat(1, 1152));
    let expected = QuadVal::new(Rat::ONE, rat(1, 1152));
    let c1 = case1_bound(63).map_err(|e| e.to_string())?;
    ensure!(c1 == rat(193, 192), "case1_bound(63) = {c1}");
    let lb = sum_cubes_lower_bound(128).map_err(|e| e.to_string())?;
    ensure!(lb == BoundValue::Exact(QuadVal::rational(rat(16, 3))), "sum_cubes_lower_bound(128) = {lb:?}");
    let c2 = case2_bound(128).map_err(|e| e.to_string())?;
    ensure!(c2 == BoundValue::Exact(expected.clone()), "case2_bound(128) = {c2:?}");
    let b = theorem_bound();
    ensure!(b.final_value == expected, "final = {:?}", b.final_value);
    ensure!(b.final_value == &QuadVal::rational(Rat::ONE) + &sqrt2_over_1152, "final is not 1 + sqrt2/1152");
    ensure!(b.final_value < QuadVal::rational(rat(193, 192)), "final is not below 193/192");
    ensure!(
        b.final_value > QuadVal::rational(Rat::ONE + rat(1227, 1_000_000)),
        "final does not exceed 1 + 1227/10^6"
    );
    let oracle = hundred_digit_final();
    ensure!(b.final_decimal == oracle, "final_decimal {} vs 100-digit {}", b.final_decimal, oracle);
    Ok(format!("final = 1 + sqrt2/1152 = {oracle}"))
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let out = run_command(args.iter().copied());
    let v = serde_json::from_str(&out.stdout).map_err(|e| format!("{args:?}: {e}: {}", out.stderr))?;
    Ok((out.code, v))
}

fn criterion_3() -> Outcome {
    let runs = [
        ("neg-third", "7"),
        ("five-t", "7"),
        ("cube-c", "11"),
        ("region-d", "13"),
        ("d2t", "17"),
    ];
    let mut lines = Vec::new();
    for (name, seed) in runs {
        let (code, v) = cli_json(&["verify-lemma", "--name", name, "--trials", "10000", "--seed", seed])?;
        let p = &v["payload"];
        ensure!(
            code == 0 && p["trials"] == 10_000 && p["failures"] == 0,
            "{name}: exit {code}, payload {p}"
        );
        lines.push(format!("{name} 0/10000"));
    }
    Ok(lines.join(", "))
}

fn criterion_4() -> Outcome {
    let r = verify_corollary(10_000, &RngStream::new(7, 0));
    ensure!(r.trials == 10_000 && r.failures == 0, "{} failures, first {:?}", r.failures, r.first_counterexample);
    Ok("0/10000".into())
}

fn criterion_5() -> Outcome {
    let classifier = Classifier::new();
    let t = make_body(BodyName::T);
    let rng = RngStream::new(5, 0);
    for i in 0..1000u64 {
        let x = classifier.sample_translate(&mut rng.substream(i));
        let q = intersect(&t, &affine_image(&t, &Rat::ONE, &x));
        let h = match detect_homothet(&q, &t).map_err(|e| e.to_string())? {
            Homothety::Homothet(h) => h,
            other => return Err(format!("x = {x:?}: {other:?}")),
        };
        // T ∩ (T+x) has offsets min(1, 1 + a_k·x), and the normals sum to 0.
        let mu: Rat = NORMALS
            .iter()
            .map(|a| Rat::ONE.min(Rat::ONE + dot(*a, &x)))
            .sum::<Rat>()
            / int(4);
        ensure!(h.ratio == mu, "x = {x:?}: ratio {} vs {mu}", h.ratio);
        ensure!(h.ratio.is_positive() && h.ratio <= Rat::ONE, "ratio {} out of (0,1]", h.ratio);
        ensure!(h.reconstruct(&t) == q, "x = {x:?}: reconstruction differs");
    }
    let x = Vec3::from_ints(1, 1, 0);
    let q = intersect(&t, &affine_image(&t, &Rat::ONE, &x));
    match detect_homothet(&q, &t).map_err(|e| e.to_string())? {
        Homothety::Homothet(h) => {
            ensure!(h.ratio == rat(1, 2), "mu = {}", h.ratio);
            ensure!(h.translation == Vec3::new(rat(1, 2), rat(1, 2), rat(-1, 2)), "y = {:?}", h.translation);
        }
        other => return Err(format!("(1,1,0): {other:?}")),
    }
    Ok("1000 samples exact; x=(1,1,0) gives mu=1/2, y=(1/2,1/2,-1/2)".into())
}

fn criterion_6() -> Outcome {
    let p_box = BoxRegion::cube_p();
    let p = make_body(BodyName::P);
    let grid = grid_covering(&p_box, &rat(2, 3)).map_err(|e| e.to_string())?;
    ensure!(grid.len() == 1728, "{} translates", grid.len());
    let v = covering_check(&grid, &p, 5).map_err(|e| e.to_string())?;
    ensure!(v.status == CoverageStatus::Covered, "grid: {:?}", v.status);

    // Density by general polytope intersection, against the library's fast path.
    let t = make_body(BodyName::T);
    let clipped: Rat = grid
        .translates()
        .iter()
        .map(|x| volume(&intersect(&affine_image(&t, &Rat::ONE, x), &p)))
        .sum();
    let theta = clipped / int(512);
    let d = theta_density(&grid);
    ensure!(d.theta == theta, "theta {} vs intersection route {theta}", d.theta);
    ensure!(theta <= int(9) && theta >= Rat::ONE, "theta {theta} outside [1, 9]");

    let removed = 11;
    let gone = grid.translates()[removed].clone();
    let thinned = grid.without(removed);
    let v = covering_check(&thinned, &p, 5).map_err(|e| e.to_string())?;
    let w = match v.status {
        CoverageStatus::Uncovered(w) => w,
        s => return Err(format!("without translate {removed}: {s:?}")),
    };
    let four = int(4);
    ensure!(w.coords().iter().all(|c| c.abs() <= four), "witness {w:?} outside P");
    ensure!(
        thinned.translates().iter().all(|x| !in_translate(&w, x)),
        "witness {w:?} lies in a remaining translate"
    );
    let third = rat(1, 3);
    ensure!(
        w.coords().iter().zip(gone.coords()).all(|(a, b)| (*a - b).abs() <= third),
        "witness {w:?} outside the removed cell"
    );
    Ok(format!(
        "grid covered at depth 5, theta = {theta}; without translate {removed}: gap at ({}, {}, {})",
        w.x, w.y, w.z
    ))
}

/// Centre at o plus one translate per vertex meeting T in `μT + (1−μ)v_j`.
fn vertex_config(mu: Rat) -> Vec<Vec3> {
    let s = &(Rat::ONE - &mu) * &rat(4, 3);
    let mut xs = vec![Vec3::zero()];
    xs.extend(tetrahedron_vertices().iter().map(|v| v.scale(&s)));
    xs
}

fn criterion_7() -> Outcome {
    let mut base = vertex_config(rat(1, 2));
    let face = Vec3::new(rat(1, 4), rat(1, 4), rat(1, 4));
    let edge = Vec3::new(rat(1, 2), Rat::ZERO, Rat::ZERO);
    // (config, m, t, ΣE, ΣF) derived by hand: a vertex neighbor cuts 3
    // patches, an edge neighbor 2, a face neighbor 1.
    let mut cases = vec![(base.clone(), 4, 12, 0, 0)];
    base.push(face.clone());
    cases.push((base.clone(), 5, 13, 0, 1));
    base.push(edge);
    cases.push((base.clone(), 6, 15, 1, 1));
    base.push(Vec3::new(rat(-1, 2), Rat::ZERO, Rat::ZERO));
    cases.push((base, 7, 17, 2, 1));
    for (xs, m, t, e, f) in cases {
        let cfg = CoveringConfig::new(xs, None).map_err(|e| e.to_string())?;
        let r = neighbor_incidence(&cfg, 0).map_err(|e| e.to_string())?;
        let se: usize = r.edge_counts.iter().sum();
        let sf: usize = r.face_counts.iter().sum();
        ensure!((r.m, r.t, se, sf) == (m, t, e, f), "got (m,t,E,F) = {:?}", (r.m, r.t, se, sf));
        ensure!(r.m == 4 + se + sf && r.t == 12 + 2 * se + sf, "identities fail at m = {m}");
        ensure!(r.identity_m && r.identity_t && r.t <= 2 * r.m + 4 && r.t_le_2m_plus_4, "report flags at m = {m}");
    }
    ensure!(2 * (CASE1_THRESHOLD_M - 1) + 4 == CASE2_T_MAX, "2m+4 at m = 62 is not 128");

    let cfg = CoveringConfig::new(vertex_config(rat(3, 4)), None).map_err(|e| e.to_string())?;
    let r = neighbor_incidence(&cfg, 0).map_err(|e| e.to_string())?;
    ensure!(r.boundary == BoundaryCover::Full, "boundary {:?}", r.boundary);
    // 12 patches of squared edge 8·(3/4)² each, area coefficient λ²/4.
    ensure!(r.s_coeff == rat(27, 2) && r.s_coeff >= int(8), "S_coeff = {}", r.s_coeff);
    ensure!(
        sum_cubes_meets_bound(&r.sum_mu_cubed, r.t as u64).map_err(|e| e.to_string())?,
        "power mean bound fails"
    );
    Ok(format!("4 constructed configs; full cover S_coeff = {} >= 8", r.s_coeff))
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn run_bin(args: &[&str], threads: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_simplex-cover"))
        .args(args)
        .env("SIMPLEX_COVER_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn criterion_8() -> Outcome {
    let golden = data_dir().join("golden");
    let runs: [(&[&str], &str); 3] = [
        (&["verify-lemma", "--name", "five-t", "--trials", "10000", "--seed", "7"], "verify-lemma-five-t.json"),
        (&["verify-corollary", "--trials", "2000", "--seed", "7"], "verify-corollary.json"),
        (&["report-bound"], "report-bound.json"),
    ];
    for (args, file) in runs {
        let a = run_bin(args, "1")?;
        let b = run_bin(args, "4")?;
        ensure!(a == b, "{args:?}: 1 and 4 workers differ");
        let expected = std::fs::read_to_string(golden.join(file)).map_err(|e| format!("{file}: {e}"))?;
        ensure!(a == expected, "{args:?}: differs from golden {file}");
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let grid = dir.path().join("grid.json");
    let grid_s = grid.to_str().unwrap();
    run_bin(&["grid-cover", "--cell-side", "2/3", "--out", grid_s], "1")?;
    let text = std::fs::read_to_string(&grid).map_err(|e| e.to_string())?;
    let cfg = parse_config(&text).map_err(|e| e.to_string())?;
    ensure!(serialize_config(&cfg) == text, "grid config does not round-trip");

    let outs: Vec<PathBuf> = (0..2).map(|k| dir.path().join(format!("s{k}.json"))).collect();
    let mut reports = Vec::new();
    for (k, out) in outs.iter().enumerate() {
        let threads = if k == 0 { "1" } else { "3" };
        let args = ["search", "--config", grid_s, "--iters", "25", "--seed", "3", "--out", out.to_str().unwrap()];
        reports.push(run_bin(&args, threads)?);
    }
    let files: Vec<String> = outs.iter().map(|p| std::fs::read_to_string(p).unwrap_or_default()).collect();
    ensure!(reports[0] == reports[1] && files[0] == files[1] && !files[0].is_empty(), "search runs differ");
    Ok("seeded reports identical across runs and worker counts; goldens clean".into())
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("exact constants", criterion_1),
        ("bound chain", criterion_2),
        ("lemma suites", criterion_3),
        ("corollary suite", criterion_4),
        ("homothety", criterion_5),
        ("covering demo", criterion_6),
        ("incidence accounting", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let secs = || start.elapsed().as_secs_f64();
        match run() {
            Ok(detail) => println!("PASS criterion {} ({title}): {detail} [{:.1}s]", k + 1, secs()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({title}): {why} [{:.1}s]", k + 1, secs());
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
