//! The parallel-coordinates duality layer.
//!
//! A hyperplane `sum c_i x_i = c0` maps to the indexed point
//! `(sum d_i c_i, c0, sum c_i)` in homogeneous coordinates `(eta, xi, psi)`,
//! where `d` is the axis spacing. Taking the tangent planes of a surface
//! `F = 0` pointwise gives the dual region; the three polynomials behind that
//! map and the contact polynomial that cuts out its fold curve live here.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::parse::{AxisSpacing, QuadricSurface};
use crate::poly::{rat, Polynomial, Rat};

/// Homogeneous coordinates of a point in the dual projective plane; the
/// affine view is `x = eta/psi`, `y = xi/psi`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint<T> {
    pub eta: T,
    pub xi: T,
    pub psi: T,
}

impl ProjectivePoint<Rat> {
    pub fn new(eta: Rat, xi: Rat, psi: Rat) -> Result<Self> {
        if eta.is_zero() && xi.is_zero() && psi.is_zero() {
            return Err(Error::NotAPlane);
        }
        Ok(ProjectivePoint { eta, xi, psi })
    }

    /// Point at infinity (`psi = 0`).
    pub fn is_ideal(&self) -> bool {
        self.psi.is_zero()
    }

    /// Affine coordinates, unless ideal.
    pub fn affine(&self) -> Option<(Rat, Rat)> {
        if self.is_ideal() {
            return None;
        }
        Some((&self.eta / &self.psi, &self.xi / &self.psi))
    }

    /// Equality up to a nonzero scalar.
    pub fn projective_eq(&self, other: &Self) -> bool {
        let cross = |a: &Rat, b: &Rat, c: &Rat, d: &Rat| a * d == b * c;
        cross(&self.eta, &self.xi, &other.eta, &other.xi)
            && cross(&self.eta, &self.psi, &other.eta, &other.psi)
            && cross(&self.xi, &self.psi, &other.xi, &other.psi)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        ProjectivePoint {
            eta: &self.eta * k,
            xi: &self.xi * k,
            psi: &self.psi * k,
        }
    }

    pub fn to_f64(&self) -> ProjectivePoint<f64> {
        ProjectivePoint {
            eta: self.eta.to_f64().unwrap_or(f64::NAN),
            xi: self.xi.to_f64().unwrap_or(f64::NAN),
            psi: self.psi.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl ProjectivePoint<f64> {
    /// Relative test for a direction at infinity.
    pub fn is_ideal(&self, tol: f64) -> bool {
        self.psi.abs() <= tol * (1.0 + self.eta.abs() + self.xi.abs())
    }

    pub fn affine(&self) -> Option<(f64, f64)> {
        if self.psi == 0.0 {
            return None;
        }
        Some((self.eta / self.psi, self.xi / self.psi))
    }
}

/// A hyperplane `sum coeffs_i x_i = offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane<T> {
    pub coeffs: Vec<T>,
    pub offset: T,
}

/// Indexed-point image of a hyperplane: `(sum d_i c_i, c0, sum c_i)`.
/// `psi = 0` is a legal ideal point; an all-zero coefficient vector is not a
/// hyperplane.
pub fn hyperplane_image(
    plane: &Hyperplane<Rat>,
    spacing: &AxisSpacing,
) -> Result<ProjectivePoint<Rat>> {
    assert_eq!(plane.coeffs.len(), spacing.len(), "spacing length mismatch");
    if plane.coeffs.iter().all(Zero::is_zero) {
        return Err(Error::NotAPlane);
    }
    let mut eta = Rat::zero();
    let mut psi = Rat::zero();
    for (c, d) in plane.coeffs.iter().zip(spacing.values()) {
        eta += c * d;
        psi += c;
    }
    Ok(ProjectivePoint {
        eta,
        xi: plane.offset.clone(),
        psi,
    })
}

/// Float variant of [`hyperplane_image`].
pub fn hyperplane_image_f64(
    plane: &Hyperplane<f64>,
    spacing: &AxisSpacing,
) -> Result<ProjectivePoint<f64>> {
    let d = spacing.as_f64();
    assert_eq!(plane.coeffs.len(), d.len(), "spacing length mismatch");
    if plane.coeffs.iter().all(|c| *c == 0.0) {
        return Err(Error::NotAPlane);
    }
    let eta = plane.coeffs.iter().zip(&d).map(|(c, d)| c * d).sum();
    let psi = plane.coeffs.iter().sum();
    Ok(ProjectivePoint {
        eta,
        xi: plane.offset,
        psi,
    })
}

/// Tangent hyperplane of `F = 0` at an exact on-surface point:
/// `c_i = dF/dx_i(p)`, `c0 = sum p_i c_i`.
pub fn tangent_plane(surface: &QuadricSurface, point: &[Rat]) -> Result<Hyperplane<Rat>> {
    assert_eq!(point.len(), surface.nvars(), "point length mismatch");
    if !surface.polynomial().evaluate(point).is_zero() {
        return Err(Error::NotOnSurface);
    }
    let coeffs: Vec<Rat> = surface
        .polynomial()
        .gradient()
        .iter()
        .map(|g| g.evaluate(point))
        .collect();
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint);
    }
    let offset = point.iter().zip(&coeffs).map(|(p, c)| p * c).sum();
    Ok(Hyperplane { coeffs, offset })
}

/// Float variant of [`tangent_plane`]; the on-surface check uses `tol`.
pub fn tangent_plane_f64(
    surface: &QuadricSurface,
    point: &[f64],
    tol: f64,
) -> Result<Hyperplane<f64>> {
    assert_eq!(point.len(), surface.nvars(), "point length mismatch");
    if surface.polynomial().evaluate_f64(point).abs() > tol {
        return Err(Error::NotOnSurface);
    }
    let coeffs: Vec<f64> = surface
        .polynomial()
        .gradient()
        .iter()
        .map(|g| g.evaluate_f64(point))
        .collect();
    let norm: f64 = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm <= 1e-12 {
        return Err(Error::SingularPoint);
    }
    let offset = point.iter().zip(&coeffs).map(|(p, c)| p * c).sum();
    Ok(Hyperplane { coeffs, offset })
}

/// The three polynomials whose ratios give the dual coordinates of the
/// tangent plane at a surface point: `x = eta/psi`, `y = xi/psi` with
///
/// * `eta = sum d_i dF/dx_i`
/// * `xi  = sum x_i dF/dx_i - deg(F) * F`
/// * `psi = sum dF/dx_i`
///
/// Subtracting `deg(F) * F` removes the top-degree part (Euler's relation),
/// so all three have total degree <= 1 for a quadric.
#[derive(Debug, Clone, PartialEq)]
pub struct DualMapPolys {
    pub eta: Polynomial,
    pub xi: Polynomial,
    pub psi: Polynomial,
}

pub fn dual_map_polys(surface: &QuadricSurface, spacing: &AxisSpacing) -> DualMapPolys {
    let f = surface.polynomial();
    let n = surface.nvars();
    assert_eq!(spacing.len(), n, "spacing length mismatch");
    let grad = f.gradient();
    let mut eta = Polynomial::zero(n);
    let mut xi = Polynomial::zero(n);
    let mut psi = Polynomial::zero(n);
    for (i, g) in grad.iter().enumerate() {
        eta = eta.add(&g.scale(&spacing.values()[i]));
        xi = xi.add(&g.mul(&Polynomial::variable(n, i)));
        psi = psi.add(g);
    }
    xi = xi.sub(&f.scale(&rat(f.total_degree() as i64)));
    DualMapPolys { eta, xi, psi }
}

/// Exact dual point of the tangent plane at an on-surface point.
///
/// `psi = 0` yields a legal ideal point; a zero gradient is an error. Agrees
/// with `hyperplane_image(tangent_plane(..))` exactly.
pub fn dual_point(
    surface: &QuadricSurface,
    point: &[Rat],
    spacing: &AxisSpacing,
) -> Result<ProjectivePoint<Rat>> {
    assert_eq!(point.len(), surface.nvars(), "point length mismatch");
    if !surface.polynomial().evaluate(point).is_zero() {
        return Err(Error::NotOnSurface);
    }
    let grad: Vec<Rat> = surface
        .polynomial()
        .gradient()
        .iter()
        .map(|g| g.evaluate(point))
        .collect();
    if grad.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint);
    }
    let polys = dual_map_polys(surface, spacing);
    ProjectivePoint::new(
        polys.eta.evaluate(point),
        polys.xi.evaluate(point),
        polys.psi.evaluate(point),
    )
}

/// The three 3x3 gradient determinants shared by the contact polynomial and
/// the elimination system: `det(grad F, grad A, grad B)` for the pairs
/// `(eta, xi)`, `(eta, psi)`, `(psi, xi)` of dual-map polynomials.
pub(crate) struct ContactDets {
    pub d_eta_xi: Polynomial,
    pub d_eta_psi: Polynomial,
    pub d_psi_xi: Polynomial,
}

pub(crate) fn contact_dets(surface: &QuadricSurface, polys: &DualMapPolys) -> ContactDets {
    let gf = surface.polynomial().gradient();
    let ge = polys.eta.gradient();
    let gx = polys.xi.gradient();
    let gp = polys.psi.gradient();
    ContactDets {
        d_eta_xi: det3(&gf, &ge, &gx),
        d_eta_psi: det3(&gf, &ge, &gp),
        d_psi_xi: det3(&gf, &gp, &gx),
    }
}

fn det3(r0: &[Polynomial], r1: &[Polynomial], r2: &[Polynomial]) -> Polynomial {
    let minor =
        |a: &Polynomial, b: &Polynomial, c: &Polynomial, d: &Polynomial| a.mul(d).sub(&b.mul(c));
    let m0 = minor(&r1[1], &r1[2], &r2[1], &r2[2]);
    let m1 = minor(&r1[0], &r1[2], &r2[0], &r2[2]);
    let m2 = minor(&r1[0], &r1[1], &r2[0], &r2[1]);
    r0[0].mul(&m0).sub(&r0[1].mul(&m1)).add(&r0[2].mul(&m2))
}

/// The contact polynomial in the surface variables: the 3x3 Jacobian
/// determinant of `(F, eta/psi, xi/psi)` cleared of denominators
/// (multiplied through by `psi^3`), normalized.
///
/// Its zero set intersected with the surface is the contact curve whose dual
/// image bounds the region. For a quadric it is linear in each variable.
pub fn contact_surface(surface: &QuadricSurface, spacing: &AxisSpacing) -> Result<Polynomial> {
    if surface.nvars() != 3 {
        return Err(Error::InvalidConfig(
            "the contact polynomial is only defined for three variables".into(),
        ));
    }
    if surface.degree() != 2 {
        return Err(Error::UnsupportedDegree(surface.degree()));
    }
    let polys = dual_map_polys(surface, spacing);
    let dets = contact_dets(surface, &polys);
    // Row multilinearity collapses the cleared determinant to
    // psi*det(gF,gEta,gXi) - xi*det(gF,gEta,gPsi) - eta*det(gF,gPsi,gXi).
    let raw = polys
        .psi
        .mul(&dets.d_eta_xi)
        .sub(&polys.xi.mul(&dets.d_eta_psi))
        .sub(&polys.eta.mul(&dets.d_psi_xi));
    if raw.is_zero() {
        return Err(Error::DegenerateContact);
    }
    Ok(raw.normalize())
}

/// One numerically sampled surface point with everything derived from it.
#[derive(Debug, Clone)]
pub struct DualSample {
    /// On-surface sample.
    pub point: Vec<f64>,
    /// Surface gradient at the point.
    pub gradient: Vec<f64>,
    /// Tangent hyperplane.
    pub plane: Hyperplane<f64>,
    /// Indexed-point image of the tangent plane.
    pub dual: ProjectivePoint<f64>,
    /// Value of the contact polynomial at the point (NaN when unavailable).
    pub jac: f64,
    /// Contact value within tolerance: the dual lies on the region boundary.
    pub is_boundary: bool,
    /// Dual point at infinity (`psi ~ 0`).
    pub is_ideal: bool,
}
