//! Numeric engine: on-surface sampling, dual point clouds, boundary hits,
//! and validation against the symbolic boundary conic.
//!
//! Everything here is 64-bit floating point and fully deterministic for a
//! fixed seed and configuration: sampling is sequential, the RNG is a seeded
//! ChaCha8, and reports preserve input order.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::BoundaryCurve;
use crate::dual::{contact_surface, dual_map_polys, DualSample, Hyperplane, ProjectivePoint};
use crate::error::{Error, Result};
use crate::parse::{AxisSpacing, QuadricSurface};
use crate::poly::Polynomial;

/// Relative tolerance used to flag duals at infinity.
const IDEAL_TOL: f64 = 1e-9;

/// How surface points are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Pick a strategy from the surface's shape.
    Auto,
    /// Solve the last variable on a grid (graph-form surfaces).
    ExplicitGrid,
    /// Stock parameterizations: angles for ellipsoids, hyperbolic trig for
    /// hyperboloids, graph form for paraboloids and saddles.
    BuiltinParam,
    /// Shoot axis-parallel lines through the domain and isolate roots by
    /// sign change and bisection.
    ImplicitScan,
}

/// Sampling configuration; see the field defaults in [`SampleConfig::new`].
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub mode: SampleMode,
    /// Per-variable closed intervals; one entry is broadcast to all
    /// variables, an empty vector means `[-4, 4]` everywhere.
    pub domain: Vec<(f64, f64)>,
    /// Target number of surface samples.
    pub count: usize,
    pub tol_surface: f64,
    pub tol_contact: f64,
    pub tol_curve: f64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(count: usize) -> Self {
        SampleConfig {
            mode: SampleMode::Auto,
            domain: Vec::new(),
            count,
            tol_surface: 1e-10,
            tol_contact: 1e-9,
            tol_curve: 1e-6,
            seed: 0,
        }
    }

    fn validate(&self, nvars: usize) -> Result<Vec<(f64, f64)>> {
        if self.count == 0 {
            return Err(Error::InvalidConfig("sample count must be positive".into()));
        }
        for (name, t) in [
            ("tol_surface", self.tol_surface),
            ("tol_contact", self.tol_contact),
            ("tol_curve", self.tol_curve),
        ] {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        let domain: Vec<(f64, f64)> = match self.domain.len() {
            0 => vec![(-4.0, 4.0); nvars],
            1 => vec![self.domain[0]; nvars],
            n if n == nvars => self.domain.clone(),
            n => {
                return Err(Error::InvalidConfig(format!(
                    "domain has {n} intervals for {nvars} variables"
                )))
            }
        };
        for &(lo, hi) in &domain {
            if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
                return Err(Error::InvalidConfig(format!(
                    "empty domain interval [{lo}, {hi}]"
                )));
            }
        }
        Ok(domain)
    }
}

/// Polynomial compiled to f64 term data for hot loops.
#[derive(Debug, Clone)]
struct CompiledPoly {
    terms: Vec<(f64, Vec<u32>)>,
}

impl CompiledPoly {
    fn new(p: &Polynomial) -> Self {
        CompiledPoly {
            terms: p
                .terms()
                .map(|(e, c)| (c.to_f64().unwrap_or(f64::NAN), e.to_vec()))
                .collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (v, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => t *= x[v],
                    2 => t *= x[v] * x[v],
                    _ => t *= x[v].powi(e as i32),
                }
            }
            acc += t;
        }
        acc
    }
}

struct CompiledGradient {
    parts: Vec<CompiledPoly>,
}

impl CompiledGradient {
    fn new(p: &Polynomial) -> Self {
        CompiledGradient {
            parts: p.gradient().iter().map(CompiledPoly::new).collect(),
        }
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.parts.iter().map(|g| g.eval(x)).collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Sample points on the surface. An empty result means the surface does not
/// meet the domain (the caller decides whether that deserves a warning).
pub fn sample_surface(surface: &QuadricSurface, cfg: &SampleConfig) -> Result<Vec<Vec<f64>>> {
    let n = surface.nvars();
    let domain = cfg.validate(n)?;
    let mode = match cfg.mode {
        SampleMode::Auto => {
            if graph_form_var(surface).is_some() {
                SampleMode::ExplicitGrid
            } else if classify_central(surface).is_some() {
                SampleMode::BuiltinParam
            } else {
                SampleMode::ImplicitScan
            }
        }
        m => m,
    };
    match mode {
        SampleMode::ExplicitGrid => sample_grid(surface, &domain, cfg),
        SampleMode::BuiltinParam => sample_builtin(surface, &domain, cfg),
        SampleMode::ImplicitScan => sample_scan(surface, &domain, cfg),
        SampleMode::Auto => unreachable!(),
    }
}

/// Variable in which the surface is linear with a constant, nonzero
/// coefficient (searched from the last variable down).
fn graph_form_var(surface: &QuadricSurface) -> Option<usize> {
    let f = surface.polynomial();
    (0..surface.nvars())
        .rev()
        .find(|&v| f.degree_in(v) == 1 && f.partial_derivative(v).is_constant())
}

fn sample_grid(
    surface: &QuadricSurface,
    domain: &[(f64, f64)],
    cfg: &SampleConfig,
) -> Result<Vec<Vec<f64>>> {
    let n = surface.nvars();
    let f = surface.polynomial();
    let solve_var = graph_form_var(surface).ok_or_else(|| {
        Error::InvalidConfig("explicit-grid sampling needs a surface linear in one variable".into())
    })?;
    let free: Vec<usize> = (0..n).filter(|&v| v != solve_var).collect();
    let side = (cfg.count as f64)
        .powf(1.0 / free.len() as f64)
        .round()
        .max(2.0) as usize;
    let coeff = CompiledPoly::new(&f.partial_derivative(solve_var));
    let féval = CompiledPoly::new(f);
    let mut out = Vec::new();
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut point = vec![0.0; n];
        for (slot, &v) in free.iter().enumerate() {
            let (lo, hi) = domain[v];
            let t = if side == 1 {
                0.5
            } else {
                idx[slot] as f64 / (side - 1) as f64
            };
            point[v] = lo + t * (hi - lo);
        }
        // F = c * x_v + r  =>  x_v = -r / c  (c constant for graph forms).
        point[solve_var] = 0.0;
        let r = féval.eval(&point);
        let c = coeff.eval(&point);
        if c.abs() > 1e-12 {
            point[solve_var] = -r / c;
            let (lo, hi) = domain[solve_var];
            if point[solve_var] >= lo
                && point[solve_var] <= hi
                && féval.eval(&point).abs() <= cfg.tol_surface
            {
                out.push(point);
            }
        }
        // Advance the mixed-radix counter.
        let mut slot = 0;
        loop {
            if slot == idx.len() {
                return Ok(out);
            }
            idx[slot] += 1;
            if idx[slot] < side {
                break;
            }
            idx[slot] = 0;
            slot += 1;
        }
    }
}

/// Central diagonal quadric `sum a_i x_i^2 = rhs` with every `a_i` nonzero
/// and `rhs != 0`, as `(semi_axis_weights, signs)` of `sum s_i (x_i/A_i)^2 = 1`.
struct CentralForm {
    semi: Vec<f64>,
    signs: Vec<i8>,
}

fn classify_central(surface: &QuadricSurface) -> Option<CentralForm> {
    let f = surface.polynomial();
    let n = surface.nvars();
    if n != 3 || surface.degree() != 2 {
        return None;
    }
    let mut squares = vec![0.0f64; n];
    let mut rhs = 0.0f64;
    for (exps, c) in f.terms() {
        let deg: u32 = exps.iter().sum();
        let cf = c.to_f64()?;
        match deg {
            0 => rhs = -cf,
            2 => {
                let v = exps.iter().position(|&e| e == 2)?;
                squares[v] = cf;
            }
            _ => return None,
        }
    }
    if rhs == 0.0 || squares.contains(&0.0) {
        return None;
    }
    let mut semi = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for &a in &squares {
        let s = a / rhs;
        signs.push(if s > 0.0 { 1 } else { -1 });
        semi.push((1.0 / s.abs()).sqrt());
    }
    Some(CentralForm { semi, signs })
}

fn sample_builtin(
    surface: &QuadricSurface,
    domain: &[(f64, f64)],
    cfg: &SampleConfig,
) -> Result<Vec<Vec<f64>>> {
    let n = surface.nvars();
    let féval = CompiledPoly::new(surface.polynomial());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let in_domain = |p: &[f64]| {
        p.iter()
            .zip(domain)
            .all(|(x, &(lo, hi))| *x >= lo && *x <= hi)
    };
    let mut out = Vec::with_capacity(cfg.count);

    if let Some(v) = graph_form_var(surface) {
        // Paraboloid or saddle: graph form over random points.
        let coeff = CompiledPoly::new(&surface.polynomial().partial_derivative(v));
        let free: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        let mut attempts = 0usize;
        while out.len() < cfg.count && attempts < cfg.count * 100 {
            attempts += 1;
            let mut point = vec![0.0; n];
            for &w in &free {
                let (lo, hi) = domain[w];
                point[w] = rng.gen_range(lo..=hi);
            }
            point[v] = 0.0;
            let c = coeff.eval(&point);
            if c.abs() <= 1e-12 {
                continue;
            }
            point[v] = -féval.eval(&point) / c;
            if in_domain(&point) && féval.eval(&point).abs() <= cfg.tol_surface {
                out.push(point);
            }
        }
        return Ok(out);
    }

    let Some(form) = classify_central(surface) else {
        return Err(Error::InvalidConfig(
            "builtin-param does not recognize this surface; use implicit-scan".into(),
        ));
    };
    let negatives = form.signs.iter().filter(|&&s| s < 0).count();
    let extent = domain
        .iter()
        .map(|&(lo, hi)| lo.abs().max(hi.abs()))
        .fold(0.0f64, f64::max);
    let u_max = (2.0 * extent / form.semi.iter().cloned().fold(f64::INFINITY, f64::min))
        .max(1.0)
        .ln()
        + 1.0;
    let mut attempts = 0usize;
    while out.len() < cfg.count && attempts < cfg.count * 200 {
        attempts += 1;
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let point = match negatives {
            0 => {
                // Ellipsoid: cos(phi) uniform keeps the sampling area-ish.
                let cphi = rng.gen_range(-1.0..=1.0f64);
                let sphi = (1.0 - cphi * cphi).sqrt();
                pack(&form, &[sphi * theta.cos(), sphi * theta.sin(), cphi])
            }
            1 => {
                let u = rng.gen_range(-u_max..=u_max);
                let ring = [theta.cos() * u.cosh(), theta.sin() * u.cosh(), u.sinh()];
                pack_axed(&form, &ring, -1)
            }
            2 => {
                let u = rng.gen_range(-u_max..=u_max);
                let sheet = if rng.gen_range(0..2) == 0 { 1.0 } else { -1.0 };
                let ring = [
                    theta.cos() * u.sinh(),
                    theta.sin() * u.sinh(),
                    sheet * u.cosh(),
                ];
                pack_axed(&form, &ring, 1)
            }
            _ => return Ok(Vec::new()), // empty real surface
        };
        if in_domain(&point) && féval.eval(&point).abs() <= cfg.tol_surface {
            out.push(point);
        }
    }
    Ok(out)
}

/// Scale unit-form coordinates by the semi-axes in variable order.
fn pack(form: &CentralForm, unit: &[f64; 3]) -> Vec<f64> {
    unit.iter().zip(&form.semi).map(|(u, a)| u * a).collect()
}

/// As [`pack`], but sending the ring coordinates to the axes whose sign is
/// not `axis_sign` and the axial coordinate to the remaining one.
fn pack_axed(form: &CentralForm, ring: &[f64; 3], axis_sign: i8) -> Vec<f64> {
    let axis = form
        .signs
        .iter()
        .position(|&s| s == axis_sign)
        .expect("classified signature");
    let mut point = vec![0.0; 3];
    let mut ring_slot = 0;
    for (v, p) in point.iter_mut().enumerate() {
        if v == axis {
            *p = ring[2] * form.semi[v];
        } else {
            *p = ring[ring_slot] * form.semi[v];
            ring_slot += 1;
        }
    }
    point
}

fn sample_scan(
    surface: &QuadricSurface,
    domain: &[(f64, f64)],
    cfg: &SampleConfig,
) -> Result<Vec<Vec<f64>>> {
    let n = surface.nvars();
    let féval = CompiledPoly::new(surface.polynomial());
    let scan_var = n - 1;
    let free: Vec<usize> = (0..scan_var).collect();
    let per_line = 33usize;
    let side = ((cfg.count as f64 / 2.0)
        .powf(1.0 / free.len() as f64)
        .ceil() as usize)
        .max(2);
    let (lo, hi) = domain[scan_var];
    let mut out = Vec::new();
    let mut idx = vec![0usize; free.len()];
    loop {
        let mut point = vec![0.0; n];
        for (slot, &v) in free.iter().enumerate() {
            let (flo, fhi) = domain[v];
            let t = idx[slot] as f64 / (side - 1) as f64;
            point[v] = flo + t * (fhi - flo);
        }
        let value_at = |t: f64, point: &mut Vec<f64>| {
            point[scan_var] = t;
            féval.eval(point)
        };
        let mut prev_t = lo;
        let mut prev_v = value_at(prev_t, &mut point);
        for k in 1..per_line {
            let t = lo + (hi - lo) * k as f64 / (per_line - 1) as f64;
            let v = value_at(t, &mut point);
            if prev_v == 0.0 {
                point[scan_var] = prev_t;
                out.push(point.clone());
            } else if prev_v.signum() != v.signum() && v != 0.0 {
                // Bisect the bracket to tolerance.
                let (mut a, mut b) = (prev_t, t);
                let (mut fa, _) = (prev_v, v);
                for _ in 0..80 {
                    let m = 0.5 * (a + b);
                    let fm = value_at(m, &mut point);
                    if fm.abs() <= cfg.tol_surface * 1e-2 {
                        a = m;
                        b = m;
                        break;
                    }
                    if fa.signum() != fm.signum() {
                        b = m;
                    } else {
                        a = m;
                        fa = fm;
                    }
                }
                let root = 0.5 * (a + b);
                if value_at(root, &mut point).abs() <= cfg.tol_surface {
                    point[scan_var] = root;
                    out.push(point.clone());
                }
            }
            prev_t = t;
            prev_v = v;
        }
        let mut slot = 0;
        loop {
            if slot == idx.len() {
                return Ok(out);
            }
            idx[slot] += 1;
            if idx[slot] < side {
                break;
            }
            idx[slot] = 0;
            slot += 1;
        }
    }
}

/// A dual point cloud with its bookkeeping.
#[derive(Debug, Clone)]
pub struct CloudReport {
    /// Canonical text of the surface the cloud was built from.
    pub surface: String,
    /// Exact spacing texts, for identity checks against a boundary curve.
    pub spacing: Vec<String>,
    pub samples: Vec<DualSample>,
    /// Indices into `samples` of the boundary hits (refined points included).
    pub boundary_hits: Vec<usize>,
    pub n_ideal: usize,
    pub n_singular: usize,
    /// Filled by [`CloudReport::attach_validation`].
    pub max_curve_residual: Option<f64>,
}

impl CloudReport {
    /// Record the curve-validation result on the report.
    pub fn attach_validation(&mut self, summary: &ValidationSummary) {
        self.max_curve_residual = Some(summary.max_hit_residual);
    }
}

struct Kernel {
    f: CompiledPoly,
    grad: CompiledGradient,
    eta: CompiledPoly,
    xi: CompiledPoly,
    psi: CompiledPoly,
    sigma: Option<(CompiledPoly, CompiledGradient)>,
}

impl Kernel {
    fn new(surface: &QuadricSurface, spacing: &AxisSpacing) -> Kernel {
        let polys = dual_map_polys(surface, spacing);
        let sigma = if surface.nvars() == 3 && surface.degree() == 2 {
            contact_surface(surface, spacing)
                .ok()
                .map(|s| (CompiledPoly::new(&s), CompiledGradient::new(&s)))
        } else {
            None
        };
        Kernel {
            f: CompiledPoly::new(surface.polynomial()),
            grad: CompiledGradient::new(surface.polynomial()),
            eta: CompiledPoly::new(&polys.eta),
            xi: CompiledPoly::new(&polys.xi),
            psi: CompiledPoly::new(&polys.psi),
            sigma,
        }
    }

    fn sample(&self, point: &[f64], tol_contact: f64) -> Option<DualSample> {
        let gradient = self.grad.eval(point);
        let gnorm = norm(&gradient);
        if gnorm <= 1e-12 * (1.0 + norm(point)) {
            return None;
        }
        let offset: f64 = point.iter().zip(&gradient).map(|(p, g)| p * g).sum();
        let plane = Hyperplane {
            coeffs: gradient.clone(),
            offset,
        };
        // Dual via the map polynomials; the plane route stays available as an
        // independent cross-check.
        let dual = ProjectivePoint {
            eta: self.eta.eval(point),
            xi: self.xi.eval(point),
            psi: self.psi.eval(point),
        };
        let is_ideal = dual.is_ideal(IDEAL_TOL);
        let (jac, is_boundary) = match &self.sigma {
            Some((s, sg)) => {
                let value = s.eval(point);
                let scale = 1.0 + norm(&sg.eval(point));
                (value, value.abs() <= tol_contact * scale)
            }
            None => (f64::NAN, false),
        };
        Some(DualSample {
            point: point.to_vec(),
            gradient,
            plane,
            dual,
            jac,
            is_boundary,
            is_ideal,
        })
    }

    /// Newton projection back onto the surface along the gradient.
    fn project(&self, start: &[f64], tol: f64) -> Option<Vec<f64>> {
        let mut x = start.to_vec();
        for _ in 0..12 {
            let fx = self.f.eval(&x);
            if fx.abs() <= tol {
                return Some(x);
            }
            let g = self.grad.eval(&x);
            let g2: f64 = g.iter().map(|a| a * a).sum();
            if g2 <= 1e-24 {
                return None;
            }
            for (xi, gi) in x.iter_mut().zip(&g) {
                *xi -= fx * gi / g2;
            }
        }
        if self.f.eval(&x).abs() <= tol {
            Some(x)
        } else {
            None
        }
    }

    /// Walk along the surface-tangent component of the contact gradient,
    /// bracket a sign change of the contact value, and bisect to a point of
    /// the contact curve.
    fn polish(&self, start: &[f64], tol_surface: f64, tol_contact: f64) -> Option<Vec<f64>> {
        // Refined points are re-projected much tighter than the input filter
        // so that offset and dual-map routes agree to machine precision.
        let tol_surface = (tol_surface * 1e-3).max(1e-14);
        let (sigma, sigma_grad) = self.sigma.as_ref()?;
        let f0 = sigma.eval(start);
        let g = self.grad.eval(start);
        let gn = norm(&g);
        if gn <= 1e-12 {
            return None;
        }
        let sg = sigma_grad.eval(start);
        let along: f64 = sg.iter().zip(&g).map(|(a, b)| a * b).sum::<f64>() / (gn * gn);
        let tangent: Vec<f64> = sg.iter().zip(&g).map(|(a, b)| a - along * b).collect();
        let tn = norm(&tangent);
        if tn <= 1e-12 {
            return None;
        }
        // Descend toward sigma = 0.
        let dir: Vec<f64> = tangent.iter().map(|t| -f0.signum() * t / tn).collect();
        let h = 0.05 * (1.0 + norm(start));
        let mut prev = start.to_vec();
        let mut prev_v = f0;
        let mut step = h;
        let mut bracket: Option<(Vec<f64>, Vec<f64>, f64)> = None;
        for _ in 0..10 {
            let trial: Vec<f64> = start.iter().zip(&dir).map(|(x, d)| x + step * d).collect();
            let on_surface = self.project(&trial, tol_surface)?;
            let v = sigma.eval(&on_surface);
            if v == 0.0 || v.signum() != prev_v.signum() {
                bracket = Some((prev, on_surface, prev_v));
                break;
            }
            prev = on_surface;
            prev_v = v;
            step *= 2.0;
        }
        let (mut a, mut b, mut fa) = bracket?;
        for _ in 0..80 {
            let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
            let mid = self.project(&mid, tol_surface)?;
            let fm = sigma.eval(&mid);
            let scale = 1.0 + norm(&sigma_grad.eval(&mid));
            if fm.abs() <= tol_contact * scale * 1e-3 {
                return Some(mid);
            }
            if fa.signum() != fm.signum() {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        let final_point = self.project(&a, tol_surface)?;
        let scale = 1.0 + norm(&sigma_grad.eval(&final_point));
        if sigma.eval(&final_point).abs() <= tol_contact * scale {
            Some(final_point)
        } else {
            None
        }
    }
}

/// Build the dual cloud for a list of on-surface points.
///
/// Points with a vanishing gradient are counted and skipped; ideal duals are
/// counted and kept. For three-variable quadrics every sample is also used as
/// a seed for a boundary search: the contact value is driven to zero along a
/// surface-tangent direction and successful refinements are appended as
/// additional samples flagged `is_boundary`.
pub fn dual_cloud(
    surface: &QuadricSurface,
    points: &[Vec<f64>],
    spacing: &AxisSpacing,
    cfg: &SampleConfig,
) -> Result<CloudReport> {
    if spacing.len() != surface.nvars() {
        return Err(Error::InvalidConfig(
            "spacing length must match the variable count".into(),
        ));
    }
    let kernel = Kernel::new(surface, spacing);
    let mut samples: Vec<DualSample> = Vec::with_capacity(points.len());
    let mut n_singular = 0usize;
    for p in points {
        if kernel.f.eval(p).abs() > cfg.tol_surface {
            return Err(Error::NotOnSurface);
        }
        match kernel.sample(p, cfg.tol_contact) {
            Some(s) => samples.push(s),
            None => n_singular += 1,
        }
    }
    let mut boundary_hits: Vec<usize> = Vec::new();
    let seed_count = samples.len();
    for i in 0..seed_count {
        if samples[i].is_boundary {
            boundary_hits.push(i);
            continue;
        }
        if kernel.sigma.is_none() {
            continue;
        }
        let seed = samples[i].point.clone();
        if let Some(refined) = kernel.polish(&seed, cfg.tol_surface, cfg.tol_contact) {
            if let Some(s) = kernel.sample(&refined, cfg.tol_contact) {
                if s.is_boundary {
                    boundary_hits.push(samples.len());
                    samples.push(s);
                }
            }
        }
    }
    let n_ideal = samples.iter().filter(|s| s.is_ideal).count();
    Ok(CloudReport {
        surface: surface.canonical_text(),
        spacing: spacing.texts(),
        samples,
        boundary_hits,
        n_ideal,
        n_singular,
        max_curve_residual: None,
    })
}

/// Outcome of checking a cloud against a boundary conic.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationSummary {
    /// Boundary hits with a finite dual that were checked.
    pub hits_checked: usize,
    /// Boundary hits skipped because their dual is at infinity.
    pub hits_ideal: usize,
    pub max_hit_residual: f64,
    /// Fraction of finite non-hit samples whose residual exceeds `tol_curve`.
    pub interior_exceed_fraction: f64,
    pub tol_curve: f64,
    pub hits_pass: bool,
    pub interior_pass: bool,
    pub pass: bool,
}

/// Normalized residual of the conic at an affine dual point:
/// `|gamma(x, y)| / (1 + |grad gamma(x, y)|)`.
fn conic_residual(conic: &CompiledPoly, grad: &CompiledGradient, xy: (f64, f64)) -> f64 {
    let p = [xy.0, xy.1];
    conic.eval(&p).abs() / (1.0 + norm(&grad.eval(&p)))
}

/// Validate boundary hits (and the interior guard) against a symbolic curve.
///
/// Every finite boundary hit must satisfy the residual bound `tol_curve`, and
/// at least 99% of the finite non-hit samples must exceed it, guarding
/// against a trivially satisfied curve.
pub fn validate_boundary(
    report: &CloudReport,
    curve: &BoundaryCurve,
    cfg: &SampleConfig,
) -> Result<ValidationSummary> {
    if report.surface != curve.surface().canonical_text()
        || report.spacing != curve.spacing().texts()
    {
        return Err(Error::SurfaceMismatch);
    }
    let conic = CompiledPoly::new(curve.conic());
    let grad = CompiledGradient::new(curve.conic());
    let is_hit: std::collections::BTreeSet<usize> = report.boundary_hits.iter().copied().collect();
    let mut hits_checked = 0usize;
    let mut hits_ideal = 0usize;
    let mut max_hit_residual = 0.0f64;
    let mut hits_pass = true;
    for &i in &report.boundary_hits {
        let s = &report.samples[i];
        let Some(xy) = s.dual.affine() else {
            hits_ideal += 1;
            continue;
        };
        if s.is_ideal {
            hits_ideal += 1;
            continue;
        }
        let r = conic_residual(&conic, &grad, xy);
        max_hit_residual = max_hit_residual.max(r);
        hits_checked += 1;
        if r > cfg.tol_curve {
            hits_pass = false;
        }
    }
    let mut interior_total = 0usize;
    let mut interior_exceed = 0usize;
    for (i, s) in report.samples.iter().enumerate() {
        if is_hit.contains(&i) || s.is_ideal {
            continue;
        }
        let Some(xy) = s.dual.affine() else { continue };
        interior_total += 1;
        if conic_residual(&conic, &grad, xy) > cfg.tol_curve {
            interior_exceed += 1;
        }
    }
    let interior_exceed_fraction = if interior_total == 0 {
        1.0
    } else {
        interior_exceed as f64 / interior_total as f64
    };
    let interior_pass = interior_exceed_fraction >= 0.99;
    Ok(ValidationSummary {
        hits_checked,
        hits_ideal,
        max_hit_residual,
        interior_exceed_fraction,
        tol_curve: cfg.tol_curve,
        hits_pass,
        interior_pass,
        pass: hits_pass && interior_pass && hits_checked > 0,
    })
}

/// CSV export: `x1,..,xn,eta,xi,psi,jac,is_boundary,is_ideal`, floats with 17
/// significant digits, fixed column order.
pub fn cloud_csv(report: &CloudReport) -> String {
    let nvars = report.spacing.len();
    let mut out = String::new();
    for i in 1..=nvars {
        out.push_str(&format!("x{i},"));
    }
    out.push_str("eta,xi,psi,jac,is_boundary,is_ideal\n");
    for s in &report.samples {
        for x in &s.point {
            out.push_str(&format!("{x:.16e},"));
        }
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{},{}\n",
            s.dual.eta, s.dual.xi, s.dual.psi, s.jac, s.is_boundary, s.is_ideal
        ));
    }
    out
}
