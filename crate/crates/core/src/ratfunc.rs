//! Rational functions: quotients of two [`Polynomial`]s.
//!
//! The denominator is kept primitive (coprime integer coefficients) with a
//! positive leading coefficient. Full multivariate gcd is deliberately not
//! implemented; cancellation happens by trial exact division against factors
//! the caller knows by construction (linear-solve pivots and the
//! homogenizing variable).

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rat};

/// Exact quotient `num / den` with `den != 0`.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        assert_eq!(
            num.nvars(),
            den.nvars(),
            "numerator/denominator arity mismatch"
        );
        let mut rf = RationalFunction { num, den };
        rf.canonicalize();
        Ok(rf)
    }

    /// A polynomial viewed as a rational function.
    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::constant(p.nvars(), Rat::one());
        RationalFunction { num: p, den }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Scale both parts so the denominator is primitive with a positive
    /// leading coefficient; collapse `0/den` to `0/1`.
    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::constant(self.den.nvars(), Rat::one());
            return;
        }
        let mut scale = self.den.content().recip();
        let (_, lead) = self.den.leading_term().expect("nonzero denominator");
        if lead.is_negative() {
            scale = -scale;
        }
        self.den = self.den.scale(&scale);
        self.num = self.num.scale(&scale);
        if self.den.is_constant() && !self.den.constant_term().is_one() {
            let inv = self.den.constant_term().recip();
            self.num = self.num.scale(&inv);
            self.den = Polynomial::constant(self.den.nvars(), Rat::one());
        }
    }

    /// Cancel every factor of `factors` common to numerator and denominator,
    /// then re-canonicalize. One direct `num/den` cancellation is also tried.
    pub fn reduce_with(&mut self, factors: &[Polynomial]) {
        if self.num.is_zero() {
            self.canonicalize();
            return;
        }
        if !self.den.is_constant() {
            if let Ok(q) = self.num.exact_div(&self.den) {
                self.num = q;
                self.den = Polynomial::constant(self.den.nvars(), Rat::one());
            }
        }
        for f in factors {
            if f.is_constant() {
                continue;
            }
            while let (Ok(qn), Ok(qd)) = (self.num.exact_div(f), self.den.exact_div(f)) {
                self.num = qn;
                self.den = qd;
            }
        }
        self.canonicalize();
    }

    /// Field equality by cross-multiplication, independent of representation.
    pub fn eq_as_function(&self, other: &RationalFunction) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Exact evaluation; `None` when the denominator vanishes at the point.
    pub fn evaluate(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(point) / d)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.num.evaluate_f64(point) / self.den.evaluate_f64(point)
    }

    pub fn negate(&self) -> Self {
        RationalFunction {
            num: self.num.negate(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = &self.num.mul(&other.den) + &other.num.mul(&self.den);
        RationalFunction::new(num, self.den.mul(&other.den))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.eq_as_function(other)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn dual3(terms: &[(i64, [u32; 3])]) -> Polynomial {
        let converted: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        Polynomial::from_int_terms(3, &converted)
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFunction::new(Polynomial::variable(3, 0), Polynomial::zero(3)),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn denominator_is_sign_normalized() {
        // eta / (-psi) stores as (-eta) / psi.
        let rf = RationalFunction::new(
            Polynomial::variable(3, 0),
            Polynomial::variable(3, 2).negate(),
        )
        .unwrap();
        assert_eq!(rf.denominator(), &Polynomial::variable(3, 2));
        assert_eq!(rf.numerator(), &Polynomial::variable(3, 0).negate());
    }

    #[test]
    fn reduction_cancels_known_factors() {
        // (psi^2 (2 eta - psi)) / (psi (2 eta - psi)^2) -> psi / (2 eta - psi)
        let psi = Polynomial::variable(3, 2);
        let lin = dual3(&[(2, [1, 0, 0]), (-1, [0, 0, 1])]);
        let mut rf = RationalFunction::new(psi.pow(2).mul(&lin), psi.mul(&lin.pow(2))).unwrap();
        rf.reduce_with(&[psi.clone(), lin.clone()]);
        assert_eq!(rf.numerator(), &psi);
        assert_eq!(rf.denominator(), &lin);
    }

    #[test]
    fn polynomial_quotient_collapses() {
        let num = dual3(&[(1, [2, 0, 0]), (-1, [0, 2, 0])]);
        let den = dual3(&[(1, [1, 0, 0]), (1, [0, 1, 0])]);
        let mut rf = RationalFunction::new(num, den).unwrap();
        rf.reduce_with(&[]);
        assert!(rf.is_polynomial());
        assert_eq!(rf.numerator(), &dual3(&[(1, [1, 0, 0]), (-1, [0, 1, 0])]));
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = RationalFunction::new(dual3(&[(2, [1, 0, 0])]), dual3(&[(4, [0, 0, 1])])).unwrap();
        let b = RationalFunction::new(dual3(&[(1, [1, 0, 0])]), dual3(&[(2, [0, 0, 1])])).unwrap();
        assert!(a.eq_as_function(&b));
        let c = RationalFunction::new(dual3(&[(1, [1, 0, 0])]), dual3(&[(3, [0, 0, 1])])).unwrap();
        assert!(!a.eq_as_function(&c));
    }

    #[test]
    fn arithmetic_matches_field_rules() {
        let half = RationalFunction::new(
            Polynomial::constant(3, rat(1)),
            Polynomial::constant(3, rat(2)),
        )
        .unwrap();
        let x_over_psi =
            RationalFunction::new(Polynomial::variable(3, 0), Polynomial::variable(3, 2)).unwrap();
        let sum = half.add(&x_over_psi).unwrap();
        // 1/2 + eta/psi = (psi + 2 eta) / (2 psi)
        let expected = RationalFunction::new(
            dual3(&[(1, [0, 0, 1]), (2, [1, 0, 0])]),
            dual3(&[(2, [0, 0, 1])]),
        )
        .unwrap();
        assert!(sum.eq_as_function(&expected));
        let product = half.mul(&x_over_psi).unwrap();
        let expected =
            RationalFunction::new(Polynomial::variable(3, 0), dual3(&[(2, [0, 0, 1])])).unwrap();
        assert!(product.eq_as_function(&expected));
    }
}
