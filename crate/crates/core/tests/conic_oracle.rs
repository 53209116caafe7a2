//! Independent oracle for the boundary conic.
//!
//! The tangent planes of a quadric `X^T M X = 0` (homogeneous surface matrix
//! M) form a quadric in plane coordinates given by the adjugate of M. The
//! indexed-point map is a linear projection of that plane space onto the dual
//! projective plane, so the region boundary is the apparent contour of the
//! dual quadric under projection from the kernel of the map:
//!
//! `Gamma(u) = B(e, R u)^2 - B(e, e) * B(R u, R u)`
//!
//! with `B` the dual-quadric bilinear form, `e` the projection center, and
//! `R` any right inverse of the projection. This route shares no code with
//! the elimination pipeline and is used to cross-check it.

use num_traits::Zero;

use pcdual_core::boundary::{boundary_curve, BoundaryOutcome};
use pcdual_core::parse::parse_surface;
use pcdual_core::poly::{rat, Polynomial, Rat};
use pcdual_core::{AxisSpacing, QuadricSurface};

fn det3(m: &[[Rat; 3]; 3]) -> Rat {
    let minor = |a: &Rat, b: &Rat, c: &Rat, d: &Rat| a * d - b * c;
    &m[0][0] * minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2])
        - &m[0][1] * minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2])
        + &m[0][2] * minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1])
}

fn adjugate4(m: &[[Rat; 4]; 4]) -> [[Rat; 4]; 4] {
    let mut adj = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
    for r in 0..4 {
        for c in 0..4 {
            let mut minor = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
            let mut mi = 0;
            for i in 0..4 {
                if i == r {
                    continue;
                }
                let mut mj = 0;
                for j in 0..4 {
                    if j == c {
                        continue;
                    }
                    minor[mi][mj] = m[i][j].clone();
                    mj += 1;
                }
                mi += 1;
            }
            let sign = if (r + c) % 2 == 0 { rat(1) } else { rat(-1) };
            // Adjugate is the transposed cofactor matrix.
            adj[c][r] = sign * det3(&minor);
        }
    }
    adj
}

/// Homogeneous 4x4 matrix of the surface: rows and columns over
/// `(x1, x2, x3, 1)`.
fn surface_matrix(surface: &QuadricSurface) -> [[Rat; 4]; 4] {
    let f = surface.polynomial();
    let mut m = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
    let half = Rat::new(1.into(), 2.into());
    for (exps, c) in f.terms() {
        let deg: u32 = exps.iter().sum();
        match deg {
            0 => m[3][3] = c.clone(),
            1 => {
                let i = exps.iter().position(|&e| e == 1).unwrap();
                m[i][3] = c * &half;
                m[3][i] = c * &half;
            }
            2 => {
                if let Some(i) = exps.iter().position(|&e| e == 2) {
                    m[i][i] = c.clone();
                } else {
                    let i = exps.iter().position(|&e| e == 1).unwrap();
                    let j = exps.iter().rposition(|&e| e == 1).unwrap();
                    m[i][j] = c * &half;
                    m[j][i] = c * &half;
                }
            }
            _ => panic!("not a quadric"),
        }
    }
    m
}

/// Bilinear form with polynomial vector arguments (plane coordinates
/// `(c1, c2, c3, -c0)`).
fn bilinear(m: &[[Rat; 4]; 4], p: &[Polynomial; 4], q: &[Polynomial; 4]) -> Polynomial {
    let mut acc = Polynomial::zero(3);
    for i in 0..4 {
        for j in 0..4 {
            if m[i][j].is_zero() {
                continue;
            }
            acc = acc.add(&p[i].mul(&q[j]).scale(&m[i][j]));
        }
    }
    acc
}

/// Apparent-contour conic of the dual quadric, dehomogenized to `(x, y)`.
/// `None` when the construction degenerates.
fn contour_conic(surface: &QuadricSurface, spacing: &AxisSpacing) -> Option<Polynomial> {
    let d = spacing.values();
    if d.len() != 3 || d[0] == d[1] {
        return None; // the chosen right inverse needs d1 != d2
    }
    let adj = adjugate4(&surface_matrix(surface));
    if adj.iter().all(|row| row.iter().all(Zero::is_zero)) {
        return None;
    }
    // Projection center: plane coefficients killed by the indexed-point map.
    let e_c = [(&d[1] - &d[2]), (&d[2] - &d[0]), (&d[0] - &d[1])];
    let center: [Polynomial; 4] = [
        Polynomial::constant(3, e_c[0].clone()),
        Polynomial::constant(3, e_c[1].clone()),
        Polynomial::constant(3, e_c[2].clone()),
        Polynomial::zero(3),
    ];
    // Right inverse with c3 = 0: c1 = (eta - d2 psi)/(d1 - d2),
    // c2 = (d1 psi - eta)/(d1 - d2), offset c0 = xi (stored negated).
    let eta = Polynomial::variable(3, 0);
    let xi = Polynomial::variable(3, 1);
    let psi = Polynomial::variable(3, 2);
    let inv_gap = (&d[0] - &d[1]).recip();
    let c1 = eta.sub(&psi.scale(&d[1])).scale(&inv_gap);
    let c2 = psi.scale(&d[0]).sub(&eta).scale(&inv_gap);
    let section: [Polynomial; 4] = [c1, c2, Polynomial::zero(3), xi.negate()];

    let mixed = bilinear(&adj, &center, &section);
    let ee = bilinear(&adj, &center, &center);
    if ee.is_zero() {
        return None;
    }
    let gamma = mixed
        .mul(&mixed)
        .sub(&section_form(&adj, &section).mul(&ee));
    if gamma.is_zero() {
        return None;
    }
    let affine = gamma.set_var_to_one(2).project(&[0, 1]).ok()?.normalize();
    if affine.is_constant() {
        return None;
    }
    Some(affine)
}

fn section_form(m: &[[Rat; 4]; 4], p: &[Polynomial; 4]) -> Polynomial {
    bilinear(m, p, p)
}

fn curve_of(surface: &QuadricSurface, spacing: &AxisSpacing) -> Option<Polynomial> {
    match boundary_curve(surface, spacing) {
        Ok(BoundaryOutcome::Curve(c)) => Some(c.conic().clone()),
        _ => None,
    }
}

#[test]
fn elimination_and_contour_agree_on_the_classic_surfaces() {
    let spacing = AxisSpacing::default_for(3);
    for (eq, expected) in [
        (
            "z = -(x/2)^2 + (y/2)^2",
            "4*x^2 - 4*x*y + y^2 - 16*x - 4*y + 16",
        ),
        ("x^2 + y^2 + z^2 = 2", "3*x^2 - 3*y^2 - 6*x + 5"),
        ("x^2 + y^2 - z^2 = 1", "x^2 + 4*y^2 + 2*x - 3"),
        ("x^2 - 4y^2 + 2z^2 = -2", "x^2 + 2*y^2 - 4"),
    ] {
        let s = parse_surface(eq).unwrap();
        let from_pipeline = curve_of(&s, &spacing).unwrap();
        let from_contour = contour_conic(&s, &spacing).unwrap();
        assert_eq!(
            from_pipeline.format_with(&["x", "y"]),
            expected,
            "pipeline conic for {eq}"
        );
        assert_eq!(
            from_contour.format_with(&["x", "y"]),
            expected,
            "contour conic for {eq}"
        );
    }
}

#[test]
fn elimination_matches_contour_on_random_quadrics() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20240517);
    let spacing = AxisSpacing::default_for(3);
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
    let mut compared = 0;
    for _ in 0..120 {
        let mut p = Polynomial::zero(3);
        for e in &exps {
            let c: i64 = rng.gen_range(-9..=9);
            p = p.add(&Polynomial::term(3, rat(c), e));
        }
        if p.total_degree() != 2 {
            continue;
        }
        let Ok(s) = QuadricSurface::new(p) else {
            continue;
        };
        let (Some(a), Some(b)) = (curve_of(&s, &spacing), contour_conic(&s, &spacing)) else {
            continue;
        };
        assert_eq!(
            a.format_with(&["x", "y"]),
            b.format_with(&["x", "y"]),
            "routes disagree for {}",
            s.canonical_text()
        );
        compared += 1;
    }
    assert!(compared >= 60, "only {compared} surfaces compared");
}

#[test]
fn alternative_spacing_changes_the_conic_consistently() {
    let s = parse_surface("x^2 + y^2 + z^2 = 2").unwrap();
    for d in [[0i64, 1, 3], [-1, 0, 1], [0, 2, 3], [1, 5, 2]] {
        let spacing = AxisSpacing::new(d.iter().map(|&v| rat(v)).collect()).unwrap();
        let (Some(a), Some(b)) = (curve_of(&s, &spacing), contour_conic(&s, &spacing)) else {
            panic!("degenerate case for spacing {d:?}");
        };
        assert_eq!(a, b, "spacing {d:?}");
    }
}
