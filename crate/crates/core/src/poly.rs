//! Multivariate polynomials with exact rational coefficients.
//!
//! Used for model-supplied volume chambers (homogeneous forms of degree `n`)
//! and for the simplex-positivity certificates behind the numeric polar
//! path. Sizes stay tiny (degree <= 3, a handful of variables), so a sparse
//! map representation is plenty.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{Rational, RationalVector};

/// Sparse polynomial: exponent vector -> coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (exps, coeff) in terms {
            p.add_term(exps, coeff);
        }
        p
    }

    /// Single monomial `c * prod x_i^{e_i}`.
    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: Rational) -> Self {
        Self::from_terms(nvars, vec![(exps, coeff)])
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear_form(coeffs: &RationalVector) -> Self {
        let n = coeffs.dim();
        let mut p = Polynomial::zero(n);
        for (i, c) in coeffs.coords.iter().enumerate() {
            let mut e = vec![0u32; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent arity");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += &coeff;
        if entry.is_zero() {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients nonnegative (a sufficient certificate for
    /// nonnegativity on the positive orthant).
    pub fn coeffs_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Homogeneous of the given degree (the zero polynomial qualifies).
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    pub fn eval(&self, point: &RationalVector) -> Rational {
        assert_eq!(point.dim(), self.nvars, "evaluation arity");
        let mut acc = Rational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.coords.iter().zip(exps) {
                if e > 0 {
                    term = term * x.pow(e);
                }
            }
            acc += &term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (exps, coeff) in &self.terms {
            let mut term = coeff.to_f64();
            for (x, &e) in point.iter().zip(exps) {
                term *= x.powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Polynomial::monomial(self.nvars, vec![0; self.nvars], Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rescales by the positive constant that makes the coefficients
    /// primitive integers. Sign patterns (hence nonnegativity on cones) are
    /// unchanged, and repeated linear substitutions stop inflating the
    /// rational coefficients.
    pub fn primitive_part(&self) -> Polynomial {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Zero};
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        if gcd.is_zero() {
            return self.clone();
        }
        let scale = Rational::new(lcm, gcd).expect("nonzero gcd");
        self.scale(&scale)
    }

    /// Formal partial derivative with respect to variable `j`.
    pub fn partial_derivative(&self, j: usize) -> Polynomial {
        assert!(j < self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (exps, coeff) in &self.terms {
            if exps[j] == 0 {
                continue;
            }
            let mut e = exps.clone();
            e[j] -= 1;
            out.add_term(e, coeff * &Rational::from_int(exps[j] as i64));
        }
        out
    }

    /// Substitute `x = sum_j lambda_j g_j`: the result is a polynomial in the
    /// lambda variables, one per generator.
    pub fn substitute_generators(&self, generators: &[RationalVector]) -> Polynomial {
        let m = generators.len();
        // linear_i = sum_j g_j[i] * lambda_j
        let linears: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                let coeffs = RationalVector::new(
                    generators.iter().map(|g| g.coords[i].clone()).collect(),
                );
                Polynomial::linear_form(&coeffs)
            })
            .collect();
        let mut out = Polynomial::zero(m);
        for (exps, coeff) in &self.terms {
            let mut term = Polynomial::monomial(m, vec![0; m], coeff.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&linears[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{coeff}")?;
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    write!(f, "*x{i}")?;
                } else if e > 1 {
                    write!(f, "*x{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Serialized form: list of monomials with exponent vectors.
#[derive(Serialize, Deserialize)]
struct MonomialData {
    coeff: Rational,
    exponents: Vec<u32>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let monomials: Vec<MonomialData> = self
            .terms
            .iter()
            .map(|(e, c)| MonomialData {
                coeff: c.clone(),
                exponents: e.clone(),
            })
            .collect();
        monomials.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let monomials = Vec::<MonomialData>::deserialize(d)?;
        let nvars = monomials
            .first()
            .map(|m| m.exponents.len())
            .ok_or_else(|| serde::de::Error::custom("polynomial needs at least one monomial"))?;
        if monomials.iter().any(|m| m.exponents.len() != nvars) {
            return Err(serde::de::Error::custom("inconsistent exponent arity"));
        }
        Ok(Polynomial::from_terms(
            nvars,
            monomials.into_iter().map(|m| (m.exponents, m.coeff)).collect(),
        ))
    }
}
