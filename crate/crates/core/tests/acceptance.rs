//! Acceptance suite: one test per acceptance criterion, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see them all).

mod common;

use std::time::{Duration, Instant};

use common::{chord_points, surface, SURFACES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcdual_core::boundary::{boundary_curve, build_system, solve_linear_system, BoundaryOutcome};
use pcdual_core::dual::{
    contact_surface, dual_map_polys, dual_point, hyperplane_image, tangent_plane,
};
use pcdual_core::parse::{format_polynomial, parse_surface};
use pcdual_core::poly::{rat, Polynomial};
use pcdual_core::ratfunc::RationalFunction;
use pcdual_core::sample::{
    dual_cloud, sample_surface, validate_boundary, SampleConfig, SampleMode,
};
use pcdual_core::{AxisSpacing, QuadricSurface};

fn d3() -> AxisSpacing {
    AxisSpacing::default_for(3)
}

/// Print the per-criterion verdict line, then enforce it.
fn verdict(name: &str, ok: bool, detail: &str) {
    println!("{name}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn within(elapsed: Duration, bound_s: f64) -> bool {
    elapsed.as_secs_f64() < bound_s
}

fn boundary_text(equation: &str) -> Result<String, pcdual_core::Error> {
    let s = parse_surface(equation)?;
    match boundary_curve(&s, &d3())? {
        BoundaryOutcome::Curve(c) => Ok(c.boundary_text()),
        BoundaryOutcome::PlanePoint { .. } => Ok("degenerate plane".into()),
    }
}

fn golden(criterion: &str, equation: &str, expected: &str, bound_s: f64) {
    let start = Instant::now();
    let got = boundary_text(equation);
    let elapsed = start.elapsed();
    let ok = matches!(&got, Ok(text) if text == expected) && within(elapsed, bound_s);
    verdict(
        criterion,
        ok,
        &format!("expected `{expected}`, got {got:?} in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_1_saddle_golden() {
    golden(
        "criterion 1 (saddle golden)",
        "z = -(x/2)^2 + (y/2)^2",
        "4*x^2 - 4*x*y + y^2 - 16*x - 4*y + 16",
        1.0,
    );
}

#[test]
fn criterion_2_sphere_golden() {
    golden(
        "criterion 2 (sphere golden)",
        "x^2 + y^2 + z^2 = 2",
        "x^2 - 4*x*y + y^2 + 1",
        1.0,
    );
}

#[test]
fn criterion_3_hyperboloid_one_sheet_golden() {
    golden(
        "criterion 3a (one-sheet hyperboloid golden)",
        "x^2 + y^2 - z^2 = 1",
        "x^2 - 4*x*y + y^2 - 1",
        1.0,
    );
}

#[test]
fn criterion_3_hyperboloid_two_sheets_golden() {
    golden(
        "criterion 3b (two-sheet hyperboloid golden)",
        "x^2 - 4y^2 + 2z^2 = -2",
        "x^2 - 2*x*y + 4*y^2 - 1",
        1.0,
    );
}

#[test]
fn criterion_4_saddle_intermediates() {
    let s = parse_surface("z = -(x/2)^2 + (y/2)^2").unwrap();
    let polys = dual_map_polys(&s, &d3());
    let names: [&str; 3] = ["x1", "x2", "x3"];
    let step1_ok = format_polynomial(&polys.eta, &names) == "-2*x2 + 8"
        && format_polynomial(&polys.xi, &names) == "-4*x3"
        && format_polynomial(&polys.psi, &names) == "2*x1 - 2*x2 + 4";

    let sigma = contact_surface(&s, &d3()).unwrap();
    let reference = Polynomial::from_int_terms(
        3,
        &[
            (-1, &[0, 2, 0]),
            (4, &[0, 1, 0]),
            (1, &[2, 0, 0]),
            (2, &[0, 0, 1]),
            (-2, &[1, 0, 0]),
        ],
    );
    let sigma_ok = sigma.is_proportional_to(&reference);

    let solved = solve_linear_system(&build_system(&s, &d3()).unwrap()).unwrap();
    let dual3 = |terms: &[(i64, [u32; 3])]| {
        let converted: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        Polynomial::from_int_terms(3, &converted)
    };
    let den = dual3(&[(1, [0, 0, 2]), (-2, [1, 0, 1])]);
    let expected = [
        RationalFunction::new(
            dual3(&[
                (2, [2, 0, 0]),
                (-1, [1, 1, 0]),
                (1, [0, 1, 1]),
                (-4, [1, 0, 1]),
            ]),
            den.clone(),
        )
        .unwrap(),
        RationalFunction::new(
            dual3(&[
                (2, [2, 0, 0]),
                (-1, [1, 1, 0]),
                (-6, [1, 0, 1]),
                (4, [0, 0, 2]),
            ]),
            den.clone(),
        )
        .unwrap(),
        RationalFunction::new(
            dual3(&[(-1, [0, 2, 0]), (2, [1, 1, 0]), (2, [0, 1, 1])]),
            den.scale(&rat(2)),
        )
        .unwrap(),
    ];
    let solutions_ok = solved
        .vars
        .iter()
        .zip(&expected)
        .all(|(got, want)| got.eq_as_function(want));

    verdict(
        "criterion 4 (saddle intermediates)",
        step1_ok && sigma_ok && solutions_ok,
        &format!("step1 {step1_ok}, contact {sigma_ok}, solutions {solutions_ok}"),
    );
}

#[test]
fn criterion_5_degree_closure_on_random_quadrics() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let exps: [[u32; 3]; 10] = [
        [2, 0, 0],
        [0, 2, 0],
        [0, 0, 2],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [0, 0, 0],
    ];
    let mut produced = 0usize;
    let mut declared = 0usize;
    let mut tested = 0usize;
    while tested < 200 {
        let mut p = Polynomial::zero(3);
        for e in &exps {
            let c: i64 = rng.gen_range(-9..=9);
            p = p.add(&Polynomial::term(3, rat(c), e));
        }
        if p.total_degree() != 2 {
            continue;
        }
        tested += 1;
        let s = QuadricSurface::new(p).unwrap();
        match boundary_curve(&s, &d3()) {
            Ok(BoundaryOutcome::Curve(c)) => {
                assert!(
                    c.conic().total_degree() <= 2,
                    "degree bound violated for {}",
                    s.canonical_text()
                );
                produced += 1;
            }
            Ok(BoundaryOutcome::PlanePoint { .. }) => {
                panic!("degree-2 input returned a plane point")
            }
            Err(_) => declared += 1,
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "criterion 5 (degree-2 closure, 200 random quadrics)",
        within(elapsed, 60.0),
        &format!("{produced} conics, {declared} declared degenerate, in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_6_numeric_symbolic_agreement() {
    let mut all_ok = true;
    let mut details = Vec::new();
    for ts in &SURFACES {
        let start = Instant::now();
        let s = surface(ts);
        let mut cfg = SampleConfig::new(1200);
        cfg.seed = 2024;
        if ts.name == "saddle" {
            cfg.mode = SampleMode::ExplicitGrid;
        } else {
            cfg.mode = SampleMode::BuiltinParam;
        }
        let points = sample_surface(&s, &cfg).unwrap();
        let enough = points.len() >= 1000;
        let report = dual_cloud(&s, &points, &d3(), &cfg).unwrap();
        let BoundaryOutcome::Curve(curve) = boundary_curve(&s, &d3()).unwrap() else {
            panic!("degree-2 input");
        };
        let summary = validate_boundary(&report, &curve, &cfg).unwrap();
        let elapsed = start.elapsed();
        let ok =
            enough && summary.pass && summary.max_hit_residual <= 1e-6 && within(elapsed, 10.0);
        all_ok &= ok;
        details.push(format!(
            "{}: {} samples, {} hits, max residual {:.2e}, interior exceed {:.4}, {elapsed:.2?}",
            ts.name,
            points.len(),
            summary.hits_checked,
            summary.max_hit_residual,
            summary.interior_exceed_fraction,
        ));
    }
    verdict(
        "criterion 6 (numeric-symbolic agreement)",
        all_ok,
        &details.join("; "),
    );
}

#[test]
fn criterion_7_route_equivalence_exact() {
    let start = Instant::now();
    let mut checked = 0usize;
    for ts in &SURFACES {
        let s = surface(ts);
        for point in chord_points(ts, 1000, 7 + checked as u64) {
            let plane = tangent_plane(&s, &point).expect("tangent plane");
            let via_plane = hyperplane_image(&plane, &d3()).expect("indexed point");
            let direct = dual_point(&s, &point, &d3()).expect("dual point");
            assert_eq!(via_plane, direct, "{}", ts.name);
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "criterion 7 (exact route equivalence)",
        checked == 4000 && within(elapsed, 10.0),
        &format!("{checked} points in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_8_invariances() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(88);

    // Scale invariance of the boundary.
    let base = parse_surface("z = -(x/2)^2 + (y/2)^2").unwrap();
    let reference = match boundary_curve(&base, &d3()).unwrap() {
        BoundaryOutcome::Curve(c) => c.conic().clone(),
        _ => unreachable!(),
    };
    let mut scale_ok = true;
    for _ in 0..20 {
        let num: i64 = rng.gen_range(1..=9) * if rng.gen_range(0..2) == 0 { 1 } else { -1 };
        let den: i64 = rng.gen_range(1..=9);
        let k = pcdual_core::poly::ratio(num, den);
        let scaled = QuadricSurface::new(base.polynomial().scale(&k)).unwrap();
        match boundary_curve(&scaled, &d3()).unwrap() {
            BoundaryOutcome::Curve(c) => scale_ok &= c.conic() == &reference,
            _ => scale_ok = false,
        }
    }

    // Random degree <= 2 polynomials: normalize idempotent, parse o format
    // identity on the canonical text.
    let exps: [[u32; 3]; 10] = [
        [2, 0, 0],
        [0, 2, 0],
        [0, 0, 2],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [0, 0, 0],
    ];
    let mut roundtrip_ok = true;
    let mut normalize_ok = true;
    let mut sampled = 0usize;
    while sampled < 500 {
        let mut p = Polynomial::zero(3);
        for e in &exps {
            if rng.gen_range(0..3) == 0 {
                continue; // keep some sparsity
            }
            let c: i64 = rng.gen_range(-9..=9);
            p = p.add(&Polynomial::term(3, rat(c), e));
        }
        if p.is_zero() || p.total_degree() == 0 {
            continue;
        }
        sampled += 1;
        let n = p.normalize();
        normalize_ok &= n.normalize() == n;
        let text = n.to_string();
        match parse_surface(&text) {
            Ok(back) => roundtrip_ok &= back.polynomial() == &n,
            Err(_) => roundtrip_ok = false,
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "criterion 8 (invariances)",
        scale_ok && roundtrip_ok && normalize_ok && within(elapsed, 10.0),
        &format!(
            "scale {scale_ok}, roundtrip {roundtrip_ok}, normalize {normalize_ok}, {elapsed:.2?}"
        ),
    );
}
