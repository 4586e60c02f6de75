//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in graded lexicographic order with no stored zeros, so two
//! equal polynomials always serialize identically. For forms produced by
//! [`SparsePoly::homogenize`], variable 0 is the homogenizing variable.

mod json;
pub mod newton;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{self, Rational};

pub use json::{PolyJson, PolyJsonError, TermJson};
pub use newton::SupportReport;
pub use text::{
    parse, parse_affine, parse_auto, parse_auto_with_convention, parse_form, Convention, ParseError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("homogenization needs even total degree, got {0}")]
    OddDegree(u32),
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooSmall { target: u32, degree: u32 },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("dehomogenization needs at least one variable")]
    NoVariables,
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// True iff every entry is even, i.e. the monomial is a square.
    pub fn is_even(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.support().iter().fold(0, |m, &i| m | (1 << i))
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn componentwise_min(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn as_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&e| rational::int(e as i64)).collect()
    }

    /// Exponent with an extra leading entry.
    pub fn prepend(&self, first: u32) -> Exponent {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(first);
        v.extend_from_slice(&self.0);
        Exponent(v)
    }

    /// Drop the leading entry.
    pub fn tail(&self) -> Exponent {
        Exponent(self.0[1..].to_vec())
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl From<&[u32]> for Exponent {
    fn from(v: &[u32]) -> Self {
        Exponent(v.to_vec())
    }
}

/// Graded lexicographic: lower degree first, ties broken lexicographically
/// with larger leading exponent first (x1 > x2 > ...).
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `n` variables over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    n: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl SparsePoly {
    pub fn zero(n: usize) -> Self {
        SparsePoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, E>(n: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (E, Rational)>,
        E: Into<Exponent>,
    {
        let mut p = SparsePoly::zero(n);
        for (e, c) in terms {
            let e = e.into();
            if e.len() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience for tests and templates: integer exponents, `(num, den)` coefficients.
    pub fn from_int_terms(n: usize, terms: &[(&[u32], i64, i64)]) -> Self {
        Self::from_terms(
            n,
            terms
                .iter()
                .map(|(e, num, den)| (Exponent::from(*e), rational::frac(*num, *den))),
        )
        .expect("exponent length matches n")
    }

    pub fn monomial(exp: Exponent, coef: Rational) -> Self {
        let mut p = SparsePoly::zero(exp.len());
        p.add_term(exp, coef);
        p
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Option<&Rational> {
        self.terms.get(e)
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|e| e.degree() == d)
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.keys().any(Exponent::is_zero)
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_dim(other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.n);
        }
        SparsePoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exponent) -> Result<SparsePoly, PolyError> {
        self.check_dim(e.len())?;
        Ok(SparsePoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.add(e), v.clone()))
                .collect(),
        })
    }

    fn check_dim(&self, found: usize) -> Result<(), PolyError> {
        if found != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                found,
            });
        }
        Ok(())
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.check_dim(point.len())?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                if k > 0 {
                    t *= rational::pow(x, k as u64);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// `x0^{2d} p(x1/x0, ..., xn/x0)` where `2d` is the degree of `p`.
    pub fn homogenize(&self) -> Result<SparsePoly, PolyError> {
        let d = self.degree();
        if d % 2 == 1 {
            return Err(PolyError::OddDegree(d));
        }
        self.homogenize_to(d)
    }

    /// Homogenize to an explicit degree, which may exceed the polynomial's own
    /// (a SONC summand of lower degree inside a degree-2d sum).
    pub fn homogenize_to(&self, degree: u32) -> Result<SparsePoly, PolyError> {
        if degree % 2 == 1 {
            return Err(PolyError::OddDegree(degree));
        }
        if degree < self.degree() {
            return Err(PolyError::DegreeTooSmall {
                target: degree,
                degree: self.degree(),
            });
        }
        Ok(SparsePoly {
            n: self.n + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.prepend(degree - e.degree()), c.clone()))
                .collect(),
        })
    }

    /// Set variable 0 to one and drop it.
    pub fn dehomogenize(&self) -> Result<SparsePoly, PolyError> {
        if self.n == 0 {
            return Err(PolyError::NoVariables);
        }
        let mut out = SparsePoly::zero(self.n - 1);
        for (e, c) in &self.terms {
            out.add_term(e.tail(), c.clone());
        }
        Ok(out)
    }

    /// Componentwise minimum of all exponents.
    pub fn monomial_gcd(&self) -> Result<Exponent, PolyError> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(PolyError::ZeroPolynomial)?.clone();
        Ok(it.fold(first, |acc, e| acc.componentwise_min(e)))
    }

    /// Divide every term by `x^e`; `None` if some term is not divisible.
    pub fn divide_monomial(&self, e: &Exponent) -> Option<SparsePoly> {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| k.checked_sub(e).map(|q| (q, v.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(SparsePoly { n: self.n, terms })
    }

    /// Second derivative with respect to variable `i`.
    pub fn second_derivative(&self, i: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.n);
        for (e, c) in &self.terms {
            let k = e.entries()[i];
            if k >= 2 {
                let mut v = e.entries().to_vec();
                v[i] -= 2;
                out.add_term(Exponent(v), c * rational::int((k * (k - 1)) as i64));
            }
        }
        out
    }

    pub fn newton_support(&self) -> Result<SupportReport, PolyError> {
        newton::classify(self)
    }

    /// Text form with affine labels `x1..xn`.
    pub fn to_affine_string(&self) -> String {
        text::render(self, Convention::Affine)
    }

    /// Text form with form labels `x0..x{n-1}`.
    pub fn to_form_string(&self) -> String {
        text::render(self, Convention::Form)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson::from_poly(self)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_affine_string())
    }
}

impl std::ops::Mul for SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = SparsePoly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        out
    }
}
