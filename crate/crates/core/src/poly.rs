//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a canonical graded-lexicographic order (total degree
//! first, then lexicographic on variable index), zero coefficients are never
//! stored, and every exponent vector has exactly `nvars` entries. All
//! arithmetic is exact; floating point never enters here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ratfunc::RationalFunction;

/// Exact rational scalar used throughout the symbolic pipeline.
pub type Rat = BigRational;

/// `n` as an exact rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector with graded-lexicographic ordering.
///
/// Larger total degree compares greater; ties compare lexicographically with
/// the earlier variable dominating, so `x1^2 > x1*x2 > x2^2` within degree 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse exact-rational multivariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The polynomial `x_var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        assert!(
            var < nvars,
            "variable index {var} out of range for {nvars} variables"
        );
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, Rat::one());
        p
    }

    /// A single term `c * x^exps`.
    pub fn term(nvars: usize, c: Rat, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
        let mut p = Self::zero(nvars);
        p.add_term(exps.to_vec(), c);
        p
    }

    /// Build from integer term data: `(coefficient, exponent vector)`.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        let mut p = Self::zero(nvars);
        for (c, exps) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
            p.add_term(exps.to_vec(), rat(*c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant term (zero if absent).
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial(vec![0; self.nvars]))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Highest power of `var` appearing in any term.
    pub fn degree_in(&self, var: usize) -> u32 {
        assert!(var < self.nvars);
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// True if every term has the same total degree (or the polynomial is zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Terms in ascending canonical order as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Leading term (greatest in graded-lex order), if any.
    pub fn leading_term(&self) -> Option<(&[u32], &Rat)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        assert_eq!(exps.len(), self.nvars);
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn assert_same_arity(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "variable-count mismatch: {} vs {}",
            self.nvars, other.nvars
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        out
    }

    pub fn negate(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = Self::constant(self.nvars, Rat::one());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact formal partial derivative with respect to `var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(exps, c * rat(e as i64));
        }
        out
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i))
            .collect()
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        // Powers of each coordinate are shared across terms.
        let max_exp: Vec<u32> = (0..self.nvars).map(|v| self.degree_in(v)).collect();
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(self.nvars);
        for (v, &me) in max_exp.iter().enumerate() {
            let mut col = Vec::with_capacity(me as usize + 1);
            col.push(Rat::one());
            for k in 1..=me {
                let prev = col[(k - 1) as usize].clone();
                col.push(prev * &point[v]);
            }
            powers.push(col);
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &powers[v][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Approximate evaluation in `f64`. For hot loops prefer a compiled form.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "point length mismatch");
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[v].powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a polynomial for every variable.
    pub fn compose(&self, bindings: &[Polynomial]) -> Polynomial {
        assert_eq!(
            bindings.len(),
            self.nvars,
            "one binding per variable required"
        );
        let target = match bindings.first() {
            Some(b) => b.nvars,
            None => return Polynomial::constant(0, self.constant_term()),
        };
        assert!(
            bindings.iter().all(|b| b.nvars == target),
            "bindings must share arity"
        );
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&bindings[v].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute a rational function for every variable.
    ///
    /// The denominator is the product of the binding denominators raised to
    /// the needed powers; common factors are cancelled by repeated trial
    /// division by each distinct binding denominator.
    pub fn substitute(&self, bindings: &[RationalFunction]) -> Result<RationalFunction> {
        assert_eq!(
            bindings.len(),
            self.nvars,
            "one binding per variable required"
        );
        let target = match bindings.first() {
            Some(b) => b.numerator().nvars(),
            None => {
                let c = self.constant_term();
                return RationalFunction::new(
                    Polynomial::constant(0, c),
                    Polynomial::constant(0, Rat::one()),
                );
            }
        };
        // Common denominator: product of den_i^(deg_i); each term then picks
        // up den_i^(deg_i - e_i) to stay over the same denominator.
        let degs: Vec<u32> = (0..self.nvars).map(|v| self.degree_in(v)).collect();
        let mut den = Polynomial::constant(target, Rat::one());
        for (b, &d) in bindings.iter().zip(&degs) {
            if d > 0 {
                den = den.mul(&b.denominator().pow(d));
            }
        }
        let mut num = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&bindings[v].numerator().pow(e));
                }
                let deficit = degs[v] - e;
                if deficit > 0 {
                    t = t.mul(&bindings[v].denominator().pow(deficit));
                }
            }
            num = num.add(&t);
        }
        let mut rf = RationalFunction::new(num, den)?;
        let distinct: Vec<Polynomial> = {
            let mut seen: Vec<Polynomial> = Vec::new();
            for b in bindings {
                let d = b.denominator();
                if !d.is_constant() && !seen.iter().any(|s| s == d) {
                    seen.push(d.clone());
                }
            }
            seen
        };
        rf.reduce_with(&distinct);
        Ok(rf)
    }

    /// Exact polynomial division: returns `r` with `self = q * r`, or
    /// `Error::Indivisible` when no such polynomial exists.
    pub fn exact_div(&self, q: &Polynomial) -> Result<Polynomial> {
        self.assert_same_arity(q);
        assert!(!q.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        let (q_lead_m, q_lead_c) = {
            let (m, c) = q.leading_term().expect("nonzero divisor");
            (m.to_vec(), c.clone())
        };
        while !rem.is_zero() {
            let (r_lead_m, r_lead_c) = {
                let (m, c) = rem.leading_term().expect("nonzero remainder");
                (m.to_vec(), c.clone())
            };
            let mut exps = Vec::with_capacity(self.nvars);
            for (a, b) in r_lead_m.iter().zip(&q_lead_m) {
                if a < b {
                    return Err(Error::Indivisible);
                }
                exps.push(a - b);
            }
            let coeff = r_lead_c / &q_lead_c;
            let t = Polynomial::term(self.nvars, coeff, &exps);
            rem = rem.sub(&t.mul(q));
            quot = quot.add(&t);
        }
        Ok(quot)
    }

    /// True when `q` divides `self` exactly.
    pub fn divisible_by(&self, q: &Polynomial) -> bool {
        self.exact_div(q).is_ok()
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients; zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Canonical scaling: coefficients made coprime integers with a positive
    /// leading coefficient. The zero polynomial maps to itself.
    pub fn normalize(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut scale = self.content().recip();
        let (_, lead) = self.leading_term().expect("nonzero");
        if lead.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// True when the two polynomials differ only by a nonzero scalar.
    pub fn is_proportional_to(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalize() == other.normalize()
    }

    /// Re-index variables into a wider (or reordered) space: old variable `i`
    /// becomes `map[i]`.
    pub fn map_vars(&self, new_nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        assert!(
            map.iter().all(|&m| m < new_nvars),
            "mapped index out of range"
        );
        let mut out = Polynomial::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_nvars];
            for (v, &e) in m.0.iter().enumerate() {
                exps[map[v]] += e;
            }
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Substitute 1 for `var`, keeping the variable slot.
    pub fn set_var_to_one(&self, var: usize) -> Polynomial {
        assert!(var < self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[var] = 0;
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Drop variables not in `keep` (they must not occur) and renumber.
    pub fn project(&self, keep: &[usize]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(keep.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; keep.len()];
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match keep.iter().position(|&k| k == v) {
                    Some(slot) => exps[slot] = e,
                    None => {
                        return Err(Error::InvalidConfig(format!(
                            "variable x{} still occurs and cannot be projected away",
                            v + 1
                        )))
                    }
                }
            }
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    /// Canonical text with the given variable names, e.g.
    /// `4*x^2 - 4*x*y + y^2 - 16*x - 4*y + 16`.
    pub fn format_with(&self, names: &[&str]) -> String {
        assert!(names.len() >= self.nvars, "name table too short");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut pieces: Vec<String> = Vec::new();
            let is_const = m.total_degree() == 0;
            if !abs.is_one() || is_const {
                if abs.denom().is_one() {
                    pieces.push(abs.numer().to_string());
                } else {
                    pieces.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => pieces.push(names[v].to_string()),
                    _ => pieces.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&pieces.join("*"));
        }
        out
    }
}

/// Default display names: `x`, `x,y`, `x,y,z`, then `x1..xn`.
pub fn default_names(nvars: usize) -> Vec<String> {
    match nvars {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=nvars).map(|i| format!("x{i}")).collect(),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars.max(1));
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}
