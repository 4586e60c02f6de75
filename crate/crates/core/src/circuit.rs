//! Circuit polynomials: detection, barycentric coordinates and the circuit
//! number comparison.
//!
//! A circuit polynomial has outer terms `f_j x^{α(j)}` with even, affinely
//! independent `α(j)` and positive `f_j`, plus one inner term `f_β x^β` with
//! `β = Σ λ_j α(j)`, all `λ_j > 0`. The circuit number is
//! `Θ = Π (f_j / λ_j)^{λ_j}`; it is irrational in general, so every comparison
//! is done after raising both sides to `q`, the lcm of the `λ_j` denominators.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Solution};
use crate::poly::{newton, Exponent, PolyError, SparsePoly, TermJson};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotACircuitReason {
    NonEvenVertex,
    NegativeOuterCoefficient,
    BetaNotInterior,
    AffinelyDependentVertices,
    TooManyTerms,
}

impl std::fmt::Display for NotACircuitReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::NonEvenVertex => "a vertex of the Newton polytope has an odd exponent",
            Self::NegativeOuterCoefficient => "a vertex term has a negative coefficient",
            Self::BetaNotInterior => "the inner exponent is not in the relative interior",
            Self::AffinelyDependentVertices => "the Newton polytope is not a simplex",
            Self::TooManyTerms => "too many support points for a circuit",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("not a circuit polynomial: {0}")]
    NotACircuit(NotACircuitReason),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("circuit is a sum of monomial squares without an inner term")]
    Improper,
    #[error("vertices are affinely dependent")]
    AffinelyDependent,
    #[error("circuits {indices:?} are not nonnegative")]
    NotNonnegative { indices: Vec<usize> },
    #[error("weight {index} is negative")]
    NegativeWeight { index: usize },
    #[error("degree must be even and positive, got {0}")]
    InvalidDegree(u32),
    #[error("lambda given for the circuit does not match the recomputed {0:?}")]
    LambdaMismatch(Vec<String>),
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exp: Exponent,
    pub coef: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Interior,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaComparison {
    pub q: BigInt,
    /// `Θ^q` exactly.
    pub theta_q: Rational,
    /// `|f_β|^q`.
    pub inner_q: Rational,
    pub verdict: Verdict,
    /// Display only.
    pub theta_float: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    outer: Vec<Term>,
    inner: Option<Term>,
    lambda: Vec<Rational>,
}

impl Circuit {
    /// Build from already validated pieces. `lambda` must be the barycentric
    /// coordinates of the inner exponent with respect to `outer`.
    pub(crate) fn from_validated(
        n: usize,
        outer: Vec<Term>,
        inner: Option<Term>,
        lambda: Vec<Rational>,
    ) -> Self {
        Circuit {
            n,
            outer,
            inner,
            lambda,
        }
    }

    /// Agiform on the given simplex: outer coefficients `λ_j`, inner `-1`.
    pub fn agiform(vertices: Vec<Exponent>, beta: Exponent) -> Result<Circuit, CircuitError> {
        let lambda = barycentric(&vertices, &beta)?
            .ok_or(CircuitError::NotACircuit(NotACircuitReason::BetaNotInterior))?;
        if vertices.iter().any(|v| !v.is_even()) {
            return Err(CircuitError::NotACircuit(NotACircuitReason::NonEvenVertex));
        }
        let n = beta.len();
        let outer = vertices
            .into_iter()
            .zip(&lambda)
            .map(|(exp, l)| Term {
                exp,
                coef: l.clone(),
            })
            .collect();
        Ok(Circuit {
            n,
            outer,
            inner: Some(Term {
                exp: beta,
                coef: -Rational::one(),
            }),
            lambda,
        })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn outer(&self) -> &[Term] {
        &self.outer
    }

    pub fn inner(&self) -> Option<&Term> {
        self.inner.as_ref()
    }

    /// Barycentric coordinates aligned with [`Circuit::outer`]. Empty for a
    /// sum of several monomial squares without an inner term.
    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// Number of outer vertices minus one.
    pub fn r(&self) -> usize {
        self.outer.len() - 1
    }

    /// Inner exponent; for a lone monomial square this is its exponent.
    pub fn beta(&self) -> &Exponent {
        self.inner.as_ref().map_or(&self.outer[0].exp, |t| &t.exp)
    }

    /// False for sums of monomial squares.
    pub fn is_proper(&self) -> bool {
        match &self.inner {
            None => false,
            Some(t) => !(t.exp.is_even() && t.coef.is_positive()),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.r() < self.n
    }

    pub fn inner_even(&self) -> bool {
        self.beta().is_even()
    }

    pub fn has_constant_term(&self) -> bool {
        self.outer.iter().any(|t| t.exp.is_zero())
    }

    /// Maximum total degree, attained at an outer vertex.
    pub fn degree(&self) -> u32 {
        self.outer.iter().map(|t| t.exp.degree()).max().unwrap_or(0)
    }

    pub fn poly(&self) -> SparsePoly {
        let terms = self
            .outer
            .iter()
            .chain(self.inner.iter())
            .map(|t| (t.exp.clone(), t.coef.clone()));
        SparsePoly::from_terms(self.n, terms).expect("circuit exponents have length n")
    }

    /// Nonnegative on all of R^n.
    pub fn is_nonnegative(&self) -> bool {
        if !self.is_proper() {
            return true;
        }
        theta_compare(self).map_or(true, |t| t.verdict != Verdict::Outside)
    }

    pub fn to_json(&self) -> CircuitJson {
        let term = |t: &Term| TermJson {
            exp: t.exp.entries().to_vec(),
            coef: rational::to_canonical(&t.coef),
        };
        CircuitJson {
            outer: self.outer.iter().map(term).collect(),
            inner: self.inner.as_ref().map(term),
            lambda: Some(self.lambda.iter().map(rational::to_canonical).collect()),
            weight: None,
        }
    }
}

/// Circuit in JSON form. `lambda` is recomputed on input and checked when
/// present; `weight` is only meaningful inside a decomposition list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub outer: Vec<TermJson>,
    #[serde(default)]
    pub inner: Option<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

impl CircuitJson {
    pub fn to_circuit(&self) -> Result<Circuit, CircuitError> {
        let parse = |s: &str| rational::parse(s).ok_or_else(|| CircuitError::BadRational(s.into()));
        let n = self
            .outer
            .first()
            .map(|t| t.exp.len())
            .ok_or(CircuitError::ZeroPolynomial)?;
        let mut terms = Vec::new();
        for t in self.outer.iter().chain(self.inner.iter()) {
            terms.push((Exponent::new(t.exp.clone()), parse(&t.coef)?));
        }
        let p = SparsePoly::from_terms(n, terms)?;
        let c = detect_circuit(&p)?;
        if let Some(given) = &self.lambda {
            let given = given.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
            // the given list follows the input order of `outer`
            let mut expected = Vec::new();
            for t in &self.outer {
                let e = Exponent::new(t.exp.clone());
                if let Some(k) = c.outer.iter().position(|o| o.exp == e) {
                    expected.push(c.lambda.get(k).cloned().unwrap_or_else(Rational::zero));
                }
            }
            if given != expected {
                return Err(CircuitError::LambdaMismatch(
                    expected.iter().map(rational::to_canonical).collect(),
                ));
            }
        }
        Ok(c)
    }

    pub fn weight(&self) -> Result<Rational, CircuitError> {
        match &self.weight {
            None => Ok(Rational::one()),
            Some(s) => rational::parse(s).ok_or_else(|| CircuitError::BadRational(s.clone())),
        }
    }
}

fn affinely_independent(points: &[&Exponent]) -> bool {
    let pts: Vec<Vec<Rational>> = points.iter().map(|e| e.as_rationals()).collect();
    newton::affine_dimension(&pts) + 1 == points.len()
}

/// Coordinates of `beta` in the affine frame of `vertices`, `None` when
/// `beta` is outside their affine hull.
pub fn affine_coordinates(
    vertices: &[Exponent],
    beta: &Exponent,
) -> Result<Option<Vec<Rational>>, CircuitError> {
    if vertices.is_empty() || !affinely_independent(&vertices.iter().collect::<Vec<_>>()) {
        return Err(CircuitError::AffinelyDependent);
    }
    let n = beta.len();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            vertices
                .iter()
                .map(|v| rational::int(v.entries()[i] as i64))
                .collect()
        })
        .collect();
    a.push(vec![Rational::one(); vertices.len()]);
    let mut b = beta.as_rationals();
    b.push(Rational::one());
    match linalg::solve(&a, &b) {
        Solution::Unique(x) => Ok(Some(x)),
        Solution::Inconsistent => Ok(None),
        Solution::Family { .. } => Err(CircuitError::AffinelyDependent),
    }
}

/// Barycentric coordinates, `None` unless every coordinate is positive.
pub fn barycentric(
    vertices: &[Exponent],
    beta: &Exponent,
) -> Result<Option<Vec<Rational>>, CircuitError> {
    Ok(affine_coordinates(vertices, beta)?.filter(|l| l.iter().all(|x| x.is_positive())))
}

/// Recognize `p` as a circuit polynomial.
pub fn detect_circuit(p: &SparsePoly) -> Result<Circuit, CircuitError> {
    use NotACircuitReason::*;
    if p.is_zero() {
        return Err(CircuitError::ZeroPolynomial);
    }
    let n = p.nvars();
    let terms: Vec<Term> = p
        .terms()
        .map(|(e, c)| Term {
            exp: e.clone(),
            coef: c.clone(),
        })
        .collect();
    if terms.len() > n + 2 {
        return Err(CircuitError::NotACircuit(TooManyTerms));
    }
    let square = |t: &Term| t.exp.is_even() && t.coef.is_positive();
    let exps: Vec<&Exponent> = terms.iter().map(|t| &t.exp).collect();
    if terms.iter().all(square) && affinely_independent(&exps) {
        let lambda = if terms.len() == 1 {
            vec![Rational::one()]
        } else {
            Vec::new()
        };
        return Ok(Circuit::from_validated(n, terms, None, lambda));
    }
    for b in 0..terms.len() {
        let outer: Vec<Term> = terms
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != b)
            .map(|(_, t)| t.clone())
            .collect();
        if outer.is_empty() || !outer.iter().all(square) {
            continue;
        }
        let vertices: Vec<Exponent> = outer.iter().map(|t| t.exp.clone()).collect();
        if let Ok(Some(lambda)) = barycentric(&vertices, &terms[b].exp) {
            return Ok(Circuit::from_validated(n, outer, Some(terms[b].clone()), lambda));
        }
    }
    Err(CircuitError::NotACircuit(diagnose(p, &terms)))
}

fn diagnose(p: &SparsePoly, terms: &[Term]) -> NotACircuitReason {
    use NotACircuitReason::*;
    let report = match p.newton_support() {
        Ok(r) => r,
        Err(_) => return TooManyTerms,
    };
    let is_vertex = |t: &Term| report.vertices.iter().any(|v| v == t.exp.entries());
    let vertices: Vec<&Term> = terms.iter().filter(|t| is_vertex(t)).collect();
    if vertices.iter().any(|t| !t.exp.is_even()) {
        return NonEvenVertex;
    }
    if vertices.iter().any(|t| !t.coef.is_positive()) {
        return NegativeOuterCoefficient;
    }
    let vexps: Vec<&Exponent> = vertices.iter().map(|t| &t.exp).collect();
    if !affinely_independent(&vexps) {
        return AffinelyDependentVertices;
    }
    if terms.len() - vertices.len() != 1 {
        return TooManyTerms;
    }
    BetaNotInterior
}

/// Compare `|f_β|` with the circuit number.
pub fn theta_compare(c: &Circuit) -> Result<ThetaComparison, CircuitError> {
    let inner = c.inner.as_ref().ok_or(CircuitError::Improper)?;
    let q = rational::denominator_lcm(&c.lambda);
    let qq = q.to_u64().expect("lcm of desk-scale denominators fits u64");
    let mut theta_q = Rational::one();
    let mut ln_theta = 0.0;
    for (t, l) in c.outer.iter().zip(&c.lambda) {
        let ratio = &t.coef / l;
        let p = (l * Rational::from_integer(q.clone())).to_integer();
        theta_q *= rational::pow(&ratio, p.to_u64().expect("small exponent"));
        ln_theta += rational::to_f64(l) * rational::ln_abs(&ratio);
    }
    let inner_q = rational::pow(&inner.coef.abs(), qq);
    let verdict = if inner.exp.is_even() && inner.coef.is_positive() {
        Verdict::Interior
    } else {
        match inner_q.cmp(&theta_q) {
            Ordering::Less => Verdict::Interior,
            Ordering::Equal => Verdict::Boundary,
            Ordering::Greater => Verdict::Outside,
        }
    };
    Ok(ThetaComparison {
        q,
        theta_q,
        inner_q,
        verdict,
        theta_float: ln_theta.exp(),
    })
}

/// Check a claimed SONC decomposition `Σ μ_i f_i` and return the sum.
pub fn is_sonc_member_given_decomposition(
    n: usize,
    parts: &[(Rational, Circuit)],
) -> Result<SparsePoly, CircuitError> {
    let mut bad = Vec::new();
    let mut sum = SparsePoly::zero(n);
    for (i, (mu, c)) in parts.iter().enumerate() {
        if mu.is_negative() {
            return Err(CircuitError::NegativeWeight { index: i });
        }
        if c.nvars() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                found: c.nvars(),
            }
            .into());
        }
        if !c.is_nonnegative() {
            bad.push(i);
        }
        sum = sum.add(&c.poly().scale(mu))?;
    }
    if !bad.is_empty() {
        return Err(CircuitError::NotNonnegative { indices: bad });
    }
    Ok(sum)
}

/// Whether a proper circuit with the given inner parity exists in `n`
/// variables and degree `2d`.
pub fn realizability(n: usize, two_d: u32, inner_even: bool) -> Result<bool, CircuitError> {
    if two_d == 0 || two_d % 2 == 1 {
        return Err(CircuitError::InvalidDegree(two_d));
    }
    let d = (two_d / 2) as usize;
    Ok(if inner_even { d > n } else { 2 * d > n })
}

/// Homogenize and recompute the barycentric coordinates; true iff they are
/// unchanged, so the circuit number is preserved.
pub fn theta_homogenization_check(c: &Circuit) -> Result<bool, CircuitError> {
    if !c.is_proper() {
        return Err(CircuitError::Improper);
    }
    let form = c.poly().homogenize_to(c.degree())?;
    let bar = detect_circuit(&form)?;
    if bar.outer.len() != c.outer.len() {
        return Ok(false);
    }
    for (t, l) in c.outer.iter().zip(&c.lambda) {
        let Some(k) = bar.outer.iter().position(|o| o.exp.tail() == t.exp) else {
            return Ok(false);
        };
        if &bar.lambda[k] != l {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A rational point where an outside circuit is negative.
///
/// The boundary circuit with the same outer terms vanishes at the point
/// given by the zero formula; there the original circuit equals
/// `T (1 - |f_β| / Θ) < 0`, so close enough rational approximations of that
/// point are negative too.
pub fn negative_witness(c: &Circuit) -> Result<Option<Vec<Rational>>, CircuitError> {
    let cmp = theta_compare(c)?;
    if cmp.verdict != Verdict::Outside {
        return Ok(None);
    }
    let n = c.n;
    let inner = c.inner.as_ref().expect("outside implies an inner term");
    let base = &c.outer[0];
    let l0 = &c.lambda[0];
    // <s, α(j) - α(0)> = ln ρ_j, solved in floating point
    let rows: Vec<Vec<Rational>> = c.outer[1..]
        .iter()
        .map(|t| {
            t.exp
                .entries()
                .iter()
                .zip(base.exp.entries())
                .map(|(a, b)| rational::int(*a as i64 - *b as i64))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = c.outer[1..]
        .iter()
        .zip(&c.lambda[1..])
        .map(|(t, l)| {
            let rho = l * &base.coef / (l0 * &t.coef);
            rational::dyadic_approx(rational::ln_abs(&rho), 48)
        })
        .collect();
    let s: Vec<f64> = if rows.is_empty() {
        vec![0.0; n]
    } else {
        match linalg::solve(&rows, &rhs) {
            Solution::Unique(x) | Solution::Family { particular: x, .. } => {
                x.iter().map(rational::to_f64).collect()
            }
            Solution::Inconsistent => return Ok(None),
        }
    };
    let mut signs = vec![1i64; n];
    let odd: Vec<usize> = (0..n).filter(|&i| inner.exp.entries()[i] % 2 == 1).collect();
    if !odd.is_empty() && inner.coef.is_positive() {
        // make f_β x^β negative
        signs[odd[0]] = -1;
    }
    let p = c.poly();
    for bits in (8..=96).step_by(8) {
        let point: Vec<Rational> = s
            .iter()
            .zip(&signs)
            .map(|(si, &sg)| {
                let m = rational::dyadic_approx(si.exp(), bits);
                let m = if m.is_zero() {
                    Rational::new(BigInt::one(), BigInt::one() << bits)
                } else {
                    m
                };
                m * rational::int(sg)
            })
            .collect();
        if p.evaluate(&point)?.is_negative() {
            return Ok(Some(point));
        }
    }
    Ok(None)
}
