//! Exact boundary of the dual region of a quadric surface.
//!
//! The pipeline follows the six-step elimination scheme: build three
//! equations linear in the surface variables whose coefficients are linear
//! forms in the dual coordinates, solve them over the rational-function
//! field, substitute the solutions back into the surface polynomial, keep the
//! numerator, and dehomogenize. For a quadric the result is a conic.

use num_traits::Zero;
use serde::Serialize;

use crate::dual::{contact_dets, contact_surface, dual_map_polys, ProjectivePoint};
use crate::error::{Error, Result};
use crate::parse::{AxisSpacing, QuadricSurface};
use crate::poly::{Polynomial, Rat};
use crate::ratfunc::RationalFunction;

// Mixed six-variable space: the surface variables first, then the dual
// coordinates.
const MIX_X: [usize; 3] = [0, 1, 2];
const MIX_ETA: usize = 3;
const MIX_XI: usize = 4;
const MIX_PSI: usize = 5;

/// Names for the mixed space, used in diagnostics and tests.
pub const MIXED_NAMES: [&str; 6] = ["x1", "x2", "x3", "eta", "xi", "psi"];

/// Names for the dual projective coordinates.
pub const DUAL_NAMES: [&str; 3] = ["eta", "xi", "psi"];

/// The three elimination equations in the mixed variable space, each linear
/// in `x1, x2, x3` with coefficients of degree <= 1 in `(eta, xi, psi)`.
#[derive(Debug, Clone)]
pub struct EliminationSystem {
    eq_a: Polynomial,
    eq_b: Polynomial,
    eq_c: Polynomial,
}

impl EliminationSystem {
    /// `eta * psi_poly(x) - psi * eta_poly(x)`.
    pub fn eq_a(&self) -> &Polynomial {
        &self.eq_a
    }

    /// `xi * psi_poly(x) - psi * xi_poly(x)`.
    pub fn eq_b(&self) -> &Polynomial {
        &self.eq_b
    }

    /// The contact determinant in mixed form, reduced to integer content 1.
    pub fn eq_c(&self) -> &Polynomial {
        &self.eq_c
    }
}

/// Build the elimination system for a degree-2 surface in three variables.
pub fn build_system(surface: &QuadricSurface, spacing: &AxisSpacing) -> Result<EliminationSystem> {
    if surface.nvars() != 3 {
        return Err(Error::InvalidConfig(
            "symbolic elimination requires exactly three variables".into(),
        ));
    }
    if surface.degree() != 2 {
        return Err(Error::UnsupportedDegree(surface.degree()));
    }
    if spacing.len() != 3 {
        return Err(Error::DegenerateSpacing(
            "spacing length must equal 3".into(),
        ));
    }
    let polys = dual_map_polys(surface, spacing);
    // A collapsed first coordinate (eta proportional to psi) pins the whole
    // image to a vertical line; no boundary curve exists for this spacing.
    if polys.eta.is_zero() || polys.eta.is_proportional_to(&polys.psi) {
        return Err(Error::DegenerateSpacing(
            "the first dual coordinate is proportional to the denominator; \
             choose a different axis spacing"
                .into(),
        ));
    }
    let dets = contact_dets(surface, &polys);
    let embed = |p: &Polynomial| p.map_vars(6, &MIX_X);
    let eta = Polynomial::variable(6, MIX_ETA);
    let xi = Polynomial::variable(6, MIX_XI);
    let psi = Polynomial::variable(6, MIX_PSI);

    let eq_a = eta
        .mul(&embed(&polys.psi))
        .sub(&psi.mul(&embed(&polys.eta)));
    let eq_b = xi.mul(&embed(&polys.psi)).sub(&psi.mul(&embed(&polys.xi)));
    let eq_c_raw = psi
        .mul(&embed(&dets.d_eta_xi))
        .sub(&xi.mul(&embed(&dets.d_eta_psi)))
        .sub(&eta.mul(&embed(&dets.d_psi_xi)));
    if eq_c_raw.is_zero() {
        return Err(Error::DegenerateContact);
    }
    // Reduce to integer content 1 but keep the sign.
    let content = eq_c_raw.content();
    let eq_c = eq_c_raw.scale(&content.recip());
    Ok(EliminationSystem { eq_a, eq_b, eq_c })
}

/// Solved elimination system: each surface variable as an exact rational
/// function of the dual coordinates, plus the pivot polynomials and the
/// factor basis accumulated on the way (used for numerator cleanup).
#[derive(Debug, Clone)]
pub struct LinearSolution {
    /// `x1, x2, x3` in terms of `(eta, xi, psi)`.
    pub vars: [RationalFunction; 3],
    /// Pivot polynomials in elimination order.
    pub pivots: Vec<Polynomial>,
    /// Primitive factors known by construction: the dual variables and the
    /// atoms of every pivot.
    pub factor_basis: Vec<Polynomial>,
}

/// One equation as a row over the dual-coordinate polynomial ring:
/// `sum coeffs[i] * x_i + rhs = 0`.
#[derive(Debug, Clone)]
struct Row {
    coeffs: [Polynomial; 3],
    rhs: Polynomial,
}

impl Row {
    fn from_mixed(eq: &Polynomial) -> Row {
        let mut coeffs = [
            Polynomial::zero(3),
            Polynomial::zero(3),
            Polynomial::zero(3),
        ];
        let mut rhs = Polynomial::zero(3);
        for (exps, c) in eq.terms() {
            let xdeg: u32 = exps[..3].iter().sum();
            let dual_exps = [exps[MIX_ETA], exps[MIX_XI], exps[MIX_PSI]];
            let t = Polynomial::term(3, c.clone(), &dual_exps);
            match xdeg {
                0 => rhs = rhs.add(&t),
                1 => {
                    let var = exps[..3].iter().position(|&e| e == 1).expect("linear term");
                    coeffs[var] = coeffs[var].add(&t);
                }
                _ => unreachable!("system must be linear in the surface variables"),
            }
        }
        Row { coeffs, rhs }
    }

    fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.coeffs.iter().chain(std::iter::once(&self.rhs))
    }

    fn combine(&self, scale_self: &Polynomial, other: &Row, scale_other: &Polynomial) -> Row {
        let comb = |a: &Polynomial, b: &Polynomial| scale_self.mul(a).sub(&scale_other.mul(b));
        Row {
            coeffs: [
                comb(&self.coeffs[0], &other.coeffs[0]),
                comb(&self.coeffs[1], &other.coeffs[1]),
                comb(&self.coeffs[2], &other.coeffs[2]),
            ],
            rhs: comb(&self.rhs, &other.rhs),
        }
    }

    /// Divide out integer content and every basis factor common to all
    /// entries; flip the sign so the first nonzero entry leads positive.
    fn cleanup(&mut self, basis: &[Polynomial]) {
        let mut content: Option<Rat> = None;
        for e in self.entries() {
            if e.is_zero() {
                continue;
            }
            let c = e.content();
            content = Some(match content {
                None => c,
                Some(acc) => rational_gcd(&acc, &c),
            });
        }
        let Some(content) = content else { return };
        let scale = content.recip();
        for e in self.coeffs.iter_mut() {
            *e = e.scale(&scale);
        }
        self.rhs = self.rhs.scale(&scale);
        for f in basis {
            loop {
                let divided: Option<Vec<Polynomial>> = self
                    .entries()
                    .map(|e| {
                        if e.is_zero() {
                            Some(Polynomial::zero(3))
                        } else {
                            e.exact_div(f).ok()
                        }
                    })
                    .collect();
                match divided {
                    Some(mut parts) => {
                        self.rhs = parts.pop().expect("rhs part");
                        for (slot, p) in self.coeffs.iter_mut().zip(parts) {
                            *slot = p;
                        }
                    }
                    None => break,
                }
            }
        }
        let lead_negative = self
            .entries()
            .find(|e| !e.is_zero())
            .map(|e| {
                use num_traits::Signed;
                e.leading_term()
                    .map(|(_, c)| c.is_negative())
                    .unwrap_or(false)
            })
            .unwrap_or(false);
        if lead_negative {
            for e in self.coeffs.iter_mut() {
                *e = e.negate();
            }
            self.rhs = self.rhs.negate();
        }
    }
}

fn rational_gcd(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    use num_traits::Signed;
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rat::new(num.abs(), a.denom() * b.denom())
}

/// Insert a polynomial's primitive atoms into the factor basis: strip known
/// factors, split reducible quadratic forms, drop constants and duplicates.
fn basis_insert(basis: &mut Vec<Polynomial>, p: &Polynomial) {
    let mut rem = p.normalize();
    if rem.is_constant() {
        return;
    }
    for f in basis.iter() {
        while let Ok(q) = rem.exact_div(f) {
            rem = q;
            if rem.is_constant() {
                return;
            }
        }
    }
    rem = rem.normalize();
    if rem.is_constant() {
        return;
    }
    if rem.total_degree() == 2 && rem.is_homogeneous() {
        if let Some((a, b)) = split_quadratic_form(&rem) {
            basis_insert(basis, &a);
            basis_insert(basis, &b);
            return;
        }
    }
    if !basis.contains(&rem) {
        basis.push(rem);
    }
}

/// Factor a homogeneous quadratic form in three variables into two rational
/// linear forms, when possible.
fn split_quadratic_form(q: &Polynomial) -> Option<(Polynomial, Polynomial)> {
    debug_assert!(q.is_homogeneous() && q.total_degree() == 2 && q.nvars() == 3);
    let square_var = (0..3).find(|&v| {
        let mut exps = [0u32; 3];
        exps[v] = 2;
        !q.coefficient(&exps).is_zero()
    });
    match square_var {
        Some(v) => split_with_square(q, v),
        None => {
            // Cross terms only. Shear one participating variable to create a
            // square, split, then shear the factors back.
            let (v, w) = cross_pair(q)?;
            let mut shear: Vec<Polynomial> = (0..3).map(|i| Polynomial::variable(3, i)).collect();
            shear[v] = shear[v].add(&Polynomial::variable(3, w));
            let mut unshear: Vec<Polynomial> = (0..3).map(|i| Polynomial::variable(3, i)).collect();
            unshear[v] = unshear[v].sub(&Polynomial::variable(3, w));
            let sheared = q.compose(&shear);
            let (a, b) = split_quadratic_form(&sheared.normalize())?;
            Some((
                a.compose(&unshear).normalize(),
                b.compose(&unshear).normalize(),
            ))
        }
    }
}

fn cross_pair(q: &Polynomial) -> Option<(usize, usize)> {
    for v in 0..3 {
        for w in 0..3 {
            if v == w {
                continue;
            }
            let mut exps = [0u32; 3];
            exps[v] = 1;
            exps[w] = 1;
            if !q.coefficient(&exps).is_zero() {
                return Some((v, w));
            }
        }
    }
    None
}

fn split_with_square(q: &Polynomial, v: usize) -> Option<(Polynomial, Polynomial)> {
    let mut sq = [0u32; 3];
    sq[v] = 2;
    let a = q.coefficient(&sq);
    // q = a v^2 + b v + c with b, c forms in the other variables.
    let mut b = Polynomial::zero(3);
    let mut c = Polynomial::zero(3);
    for (exps, coeff) in q.terms() {
        match exps[v] {
            2 => {}
            1 => {
                let mut e = [exps[0], exps[1], exps[2]];
                e[v] = 0;
                b = b.add(&Polynomial::term(3, coeff.clone(), &e));
            }
            0 => {
                c = c.add(&Polynomial::term(
                    3,
                    coeff.clone(),
                    &[exps[0], exps[1], exps[2]],
                ))
            }
            _ => unreachable!("quadratic form"),
        }
    }
    // Discriminant b^2 - 4ac must be the square of a linear form.
    let disc = b.mul(&b).sub(&c.scale(&(Rat::from_integer(4.into()) * &a)));
    let w = linear_form_sqrt(&disc)?;
    // q = (1/(4a)) (2 a v + b - w)(2 a v + b + w)
    let two_a_v = Polynomial::variable(3, v).scale(&(Rat::from_integer(2.into()) * &a));
    let f1 = two_a_v.add(&b).sub(&w);
    let f2 = two_a_v.add(&b).add(&w);
    debug_assert!(f1.mul(&f2).is_proportional_to(q));
    Some((f1.normalize(), f2.normalize()))
}

/// Square root of a quadratic form that is a perfect square of a linear form.
fn linear_form_sqrt(d: &Polynomial) -> Option<Polynomial> {
    use num_traits::Zero;
    if d.is_zero() {
        return Some(Polynomial::zero(3));
    }
    if !d.is_homogeneous() || d.total_degree() != 2 {
        return None;
    }
    // Find the leading variable present.
    let lead = (0..3).find(|&v| d.degree_in(v) > 0)?;
    let mut sq = [0u32; 3];
    sq[lead] = 2;
    let alpha = d.coefficient(&sq);
    if alpha.is_zero() {
        // d has a term linear in `lead` but no square: not a perfect square.
        return None;
    }
    let s = rational_sqrt(&alpha)?;
    // w = s * lead + (coeff of lead^1 terms) / (2 s)
    let mut rest = Polynomial::zero(3);
    for (exps, coeff) in d.terms() {
        if exps[lead] == 1 {
            let mut e = [exps[0], exps[1], exps[2]];
            e[lead] = 0;
            rest = rest.add(&Polynomial::term(3, coeff.clone(), &e));
        }
    }
    let half_inv = (Rat::from_integer(2.into()) * &s).recip();
    let w = Polynomial::variable(3, lead)
        .scale(&s)
        .add(&rest.scale(&half_inv));
    if w.mul(&w) == *d {
        Some(w)
    } else {
        None
    }
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Solve the elimination system for the surface variables by Gauss-Jordan
/// elimination over the rational-function field in `(eta, xi, psi)`.
///
/// Pivot choice: the nonzero coefficient polynomial of minimal total degree,
/// ties broken by lowest row then column index. Rows are kept fraction-free;
/// shared factors are divided out against the accumulated factor basis.
pub fn solve_linear_system(sys: &EliminationSystem) -> Result<LinearSolution> {
    let mut rows = [
        Row::from_mixed(&sys.eq_a),
        Row::from_mixed(&sys.eq_b),
        Row::from_mixed(&sys.eq_c),
    ];
    let mut basis: Vec<Polynomial> = (0..3).map(|v| Polynomial::variable(3, v)).collect();
    for row in rows.iter_mut() {
        row.cleanup(&basis);
    }
    let mut pivots: Vec<Polynomial> = Vec::new();
    // (row, col) of each pivot in elimination order.
    let mut placed: Vec<(usize, usize)> = Vec::new();
    let mut row_used = [false; 3];
    let mut col_used = [false; 3];

    for _step in 0..3 {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row_used[r] {
                continue;
            }
            for c in 0..3 {
                if col_used[c] || row.coeffs[c].is_zero() {
                    continue;
                }
                let deg = row.coeffs[c].total_degree();
                let key = (deg, r, c);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, pr, pc)) = best else {
            return Err(Error::SingularSystem {
                col: (0..3).find(|&c| !col_used[c]).unwrap_or(0),
                rows: (0..3).filter(|&r| !row_used[r]).collect(),
            });
        };
        row_used[pr] = true;
        col_used[pc] = true;
        let pivot = rows[pr].coeffs[pc].clone();
        basis_insert(&mut basis, &pivot);
        pivots.push(pivot.clone());
        placed.push((pr, pc));
        for r in 0..3 {
            if r == pr || rows[r].coeffs[pc].is_zero() {
                continue;
            }
            let scale_other = rows[r].coeffs[pc].clone();
            let mut new_row = rows[r].combine(&pivot, &rows[pr], &scale_other);
            debug_assert!(new_row.coeffs[pc].is_zero());
            new_row.cleanup(&basis);
            rows[r] = new_row;
        }
    }

    let mut vars: [Option<RationalFunction>; 3] = [None, None, None];
    for &(pr, pc) in &placed {
        let mut rf = RationalFunction::new(rows[pr].rhs.negate(), rows[pr].coeffs[pc].clone())?;
        rf.reduce_with(&basis);
        vars[pc] = Some(rf);
    }
    let [a, b, c] = vars;
    Ok(LinearSolution {
        vars: [
            a.expect("pivot for x1"),
            b.expect("pivot for x2"),
            c.expect("pivot for x3"),
        ],
        pivots,
        factor_basis: basis,
    })
}

/// A factor divided out of the eliminated numerator during cleanup.
#[derive(Debug, Clone)]
pub struct StrippedFactor {
    /// Factor in the dual coordinates `(eta, xi, psi)`.
    pub factor: Polynomial,
    pub multiplicity: u32,
    /// True for powers of `psi`: a boundary component at infinity.
    pub at_infinity: bool,
}

/// The boundary conic of the dual region together with its provenance.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    conic: Polynomial,
    ideal_factors: Vec<StrippedFactor>,
    surface: QuadricSurface,
    contact: Polynomial,
    spacing: AxisSpacing,
}

impl BoundaryCurve {
    /// Normalized boundary polynomial in the affine dual coordinates `x, y`.
    pub fn conic(&self) -> &Polynomial {
        &self.conic
    }

    pub fn ideal_factors(&self) -> &[StrippedFactor] {
        &self.ideal_factors
    }

    pub fn surface(&self) -> &QuadricSurface {
        &self.surface
    }

    /// The contact polynomial in the surface variables; together with the
    /// surface it describes the preimage curve of the boundary.
    pub fn contact(&self) -> &Polynomial {
        &self.contact
    }

    pub fn spacing(&self) -> &AxisSpacing {
        &self.spacing
    }

    /// Conic discriminant `B^2 - 4AC` of the degree-2 part.
    pub fn discriminant(&self) -> Rat {
        let a = self.conic.coefficient(&[2, 0]);
        let b = self.conic.coefficient(&[1, 1]);
        let c = self.conic.coefficient(&[0, 2]);
        &b * &b - Rat::from_integer(4.into()) * &a * &c
    }

    pub fn boundary_text(&self) -> String {
        self.conic.format_with(&["x", "y"])
    }

    pub fn record(&self) -> BoundaryRecord {
        BoundaryRecord {
            surface: self.surface.canonical_text(),
            spacing: self.spacing.texts(),
            boundary: self.boundary_text(),
            sigma_prime: self.contact.to_string(),
            ideal_factors: self
                .ideal_factors
                .iter()
                .map(|s| IdealFactorRecord {
                    factor: s.factor.format_with(&DUAL_NAMES),
                    multiplicity: s.multiplicity,
                    at_infinity: s.at_infinity,
                })
                .collect(),
            gamma: GammaRecord {
                f: self.surface.canonical_text(),
                sigma_prime: self.contact.to_string(),
            },
        }
    }
}

/// JSON-facing record of a boundary computation.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryRecord {
    pub surface: String,
    pub spacing: Vec<String>,
    pub boundary: String,
    pub sigma_prime: String,
    pub ideal_factors: Vec<IdealFactorRecord>,
    pub gamma: GammaRecord,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealFactorRecord {
    pub factor: String,
    pub multiplicity: u32,
    pub at_infinity: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaRecord {
    #[serde(rename = "F")]
    pub f: String,
    pub sigma_prime: String,
}

/// Result of [`boundary_curve`]: a conic, or the single dual point of a
/// degree-1 input.
#[derive(Debug, Clone)]
pub enum BoundaryOutcome {
    Curve(BoundaryCurve),
    /// A plane has no region; its representation is one indexed point.
    PlanePoint {
        point: ProjectivePoint<Rat>,
        surface: QuadricSurface,
        spacing: AxisSpacing,
    },
}

impl BoundaryOutcome {
    pub fn as_curve(&self) -> Option<&BoundaryCurve> {
        match self {
            BoundaryOutcome::Curve(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BoundaryOutcome::Curve(c) => serde_json::to_value(c.record()).expect("serializable"),
            BoundaryOutcome::PlanePoint {
                point,
                surface,
                spacing,
            } => {
                let coord = |r: &Rat| {
                    use num_traits::One;
                    if r.denom().is_one() {
                        r.numer().to_string()
                    } else {
                        format!("{}/{}", r.numer(), r.denom())
                    }
                };
                serde_json::json!({
                    "surface": surface.canonical_text(),
                    "spacing": spacing.texts(),
                    "degenerate": "plane",
                    "dual_point": [coord(&point.eta), coord(&point.xi), coord(&point.psi)],
                })
            }
        }
    }
}

/// Run the full elimination pipeline.
///
/// Degree-1 input short-circuits to its single indexed point. For degree 2,
/// the solved variables are substituted into the surface polynomial, the
/// numerator is retained, factors known from the accumulated denominator are
/// stripped (powers of `psi` always, as at-infinity components; other basis
/// factors only while the degree bound is violated), and the result is
/// dehomogenized via `eta -> x, xi -> y, psi -> 1` and normalized.
pub fn boundary_curve(surface: &QuadricSurface, spacing: &AxisSpacing) -> Result<BoundaryOutcome> {
    if surface.nvars() != 3 {
        return Err(Error::InvalidConfig(
            "symbolic elimination requires exactly three variables".into(),
        ));
    }
    if spacing.len() != 3 {
        return Err(Error::DegenerateSpacing(
            "spacing length must equal 3".into(),
        ));
    }
    if surface.is_plane() {
        let polys = dual_map_polys(surface, spacing);
        let point = ProjectivePoint::new(
            polys.eta.constant_term(),
            polys.xi.constant_term(),
            polys.psi.constant_term(),
        )
        .map_err(|_| {
            Error::DegenerateSpacing(
                "the plane's indexed point is undefined for this spacing".into(),
            )
        })?;
        return Ok(BoundaryOutcome::PlanePoint {
            point,
            surface: surface.clone(),
            spacing: spacing.clone(),
        });
    }
    let contact = contact_surface(surface, spacing)?;
    let sys = build_system(surface, spacing)?;
    let solved = solve_linear_system(&sys)?;
    let mut rf = surface.polynomial().substitute(&solved.vars)?;
    rf.reduce_with(&solved.factor_basis);
    let mut numerator = rf.numerator().normalize();
    if numerator.is_zero() {
        return Err(Error::EmptyBoundary);
    }

    let psi = Polynomial::variable(3, 2);
    let mut stripped: Vec<StrippedFactor> = Vec::new();
    let strip = |num: &mut Polynomial, f: &Polynomial, list: &mut Vec<StrippedFactor>| {
        let mut mult = 0u32;
        while let Ok(q) = num.exact_div(f) {
            *num = q;
            mult += 1;
        }
        if mult > 0 {
            list.push(StrippedFactor {
                factor: f.clone(),
                multiplicity: mult,
                at_infinity: *f == psi,
            });
        }
    };
    // Powers of psi never shape the affine curve; always strip and report.
    strip(&mut numerator, &psi, &mut stripped);
    // Other construction factors are extraneous only when they push the
    // degree past the theorem's bound.
    if numerator.total_degree() > 2 {
        for f in &solved.factor_basis {
            if *f == psi {
                continue;
            }
            strip(&mut numerator, f, &mut stripped);
            if numerator.total_degree() <= 2 {
                break;
            }
        }
    }
    if numerator.is_constant() {
        return Err(Error::EmptyBoundary);
    }
    if numerator.total_degree() > 2 {
        return Err(Error::CleanupFailure {
            degree: numerator.total_degree(),
            stripped: stripped
                .iter()
                .map(|s| format!("{}^{}", s.factor.format_with(&DUAL_NAMES), s.multiplicity))
                .collect::<Vec<_>>()
                .join(" * "),
        });
    }
    let conic = numerator.set_var_to_one(2).project(&[0, 1])?.normalize();
    if conic.is_constant() {
        return Err(Error::EmptyBoundary);
    }
    Ok(BoundaryOutcome::Curve(BoundaryCurve {
        conic,
        ideal_factors: stripped,
        surface: surface.clone(),
        contact,
        spacing: spacing.clone(),
    }))
}
