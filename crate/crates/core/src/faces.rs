//! Dimensions of the exposed faces `C_{n,2d}(Γ)`: SONC polynomials of degree
//! at most `2d` vanishing on a finite set `Γ`.
//!
//! The dimension reported is the rank of the span of all agiforms vanishing
//! on `Γ`. Agiforms are enumerated over every affinely independent set of
//! even lattice points (simplices of any dimension) with every lattice point
//! of the relative interior as inner exponent.

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{barycentric, Circuit};
use crate::linalg::RowSpace;
use crate::poly::Exponent;
use crate::rational::{self, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceError {
    #[error("{what} exceeds the enumeration budget ({value} > {limit})")]
    BudgetExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("degree must be even and positive, got {0}")]
    InvalidDegree(u32),
    #[error("point {index} has {found} coordinates, expected {expected}")]
    PointDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("no closed form for |Γ| = {gamma_size} at 2d = {two_d}")]
    OutOfRange { two_d: u32, gamma_size: usize },
    #[error("rank {rank} exceeds the bound {bound} ({name})")]
    BoundViolated {
        rank: usize,
        bound: u128,
        name: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaKind {
    /// All sign vectors, `|Γ| = 2^n`.
    FullOrbit,
    /// Sign vectors with coordinate product `+1`, `|Γ| = 2^{n-1}`.
    HalfOrbit,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceQuery {
    pub n: usize,
    pub two_d: u32,
    pub kind: GammaKind,
    pub points: Vec<Vec<Rational>>,
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<Rational>> {
    (0..1u64 << n).map(move |u| {
        (0..n)
            .map(|k| rational::int(if u >> (n - 1 - k) & 1 == 1 { -1 } else { 1 }))
            .collect()
    })
}

impl FaceQuery {
    pub fn full_orbit(n: usize, two_d: u32) -> FaceQuery {
        FaceQuery {
            n,
            two_d,
            kind: GammaKind::FullOrbit,
            points: sign_vectors(n).collect(),
        }
    }

    pub fn half_orbit(n: usize, two_d: u32) -> FaceQuery {
        FaceQuery {
            n,
            two_d,
            kind: GammaKind::HalfOrbit,
            points: sign_vectors(n)
                .filter(|s| s.iter().filter(|x| x.is_negative()).count() % 2 == 0)
                .collect(),
        }
    }

    pub fn explicit(n: usize, two_d: u32, points: Vec<Vec<Rational>>) -> Result<FaceQuery, FaceError> {
        for (index, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(FaceError::PointDimension {
                    index,
                    expected: n,
                    found: p.len(),
                });
            }
        }
        Ok(FaceQuery {
            n,
            two_d,
            kind: GammaKind::Explicit,
            points,
        })
    }

    pub fn gamma_size(&self) -> usize {
        self.points.len()
    }
}

/// Limits on enumeration size. `max_work` counts (simplex, candidate) pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vars: usize,
    pub max_degree: u32,
    pub max_work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vars: 4,
            max_degree: 12,
            max_work: 50_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_vars: usize::MAX,
            max_degree: u32::MAX,
            max_work: u64::MAX,
        }
    }
}

/// Exponents of total degree at most `deg` in graded order.
pub fn lattice_points(n: usize, deg: u32) -> Vec<Exponent> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() == n {
            out.push(Exponent::new(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn check_degree(two_d: u32) -> Result<(), FaceError> {
    if two_d == 0 || two_d % 2 == 1 {
        return Err(FaceError::InvalidDegree(two_d));
    }
    Ok(())
}

/// `s^β = 1` for every point of an orbit; exact evaluation otherwise.
fn vanishes_on(q: &FaceQuery, c: &Circuit) -> bool {
    match q.kind {
        GammaKind::FullOrbit | GammaKind::HalfOrbit => q.points.iter().all(|s| {
            let negatives = s
                .iter()
                .zip(c.beta().entries())
                .filter(|(x, b)| x.is_negative() && *b % 2 == 1)
                .count();
            negatives % 2 == 0
        }),
        GammaKind::Explicit => {
            let p = c.poly();
            q.points
                .iter()
                .all(|s| p.evaluate(s).is_ok_and(|v| v.is_zero()))
        }
    }
}

fn affine_diff(v: &Exponent, base: &Exponent) -> Vec<Rational> {
    v.entries()
        .iter()
        .zip(base.entries())
        .map(|(a, b)| rational::int(*a as i64 - *b as i64))
        .collect()
}

/// All agiforms of degree at most `2d` vanishing on `Γ`.
pub fn enumerate_agiforms(q: &FaceQuery, budget: &Budget) -> Result<Vec<Circuit>, FaceError> {
    check_degree(q.two_d)?;
    if q.n > budget.max_vars {
        return Err(FaceError::BudgetExceeded {
            what: "variable count",
            value: q.n as u64,
            limit: budget.max_vars as u64,
        });
    }
    if q.two_d > budget.max_degree {
        return Err(FaceError::BudgetExceeded {
            what: "degree",
            value: q.two_d as u64,
            limit: budget.max_degree as u64,
        });
    }
    let all = lattice_points(q.n, q.two_d);
    let even: Vec<Exponent> = all.iter().filter(|e| e.is_even()).cloned().collect();
    let mut out = Vec::new();
    let mut work = 0u64;
    let mut chosen: Vec<usize> = Vec::new();
    search(q, budget, &all, &even, &mut chosen, &mut work, &mut out)?;
    Ok(out)
}

fn search(
    q: &FaceQuery,
    budget: &Budget,
    all: &[Exponent],
    even: &[Exponent],
    chosen: &mut Vec<usize>,
    work: &mut u64,
    out: &mut Vec<Circuit>,
) -> Result<(), FaceError> {
    if chosen.len() >= 2 {
        let vertices: Vec<Exponent> = chosen.iter().map(|&i| even[i].clone()).collect();
        let lo: Vec<u32> = (0..q.n)
            .map(|k| vertices.iter().map(|v| v.entries()[k]).min().unwrap_or(0))
            .collect();
        let hi: Vec<u32> = (0..q.n)
            .map(|k| vertices.iter().map(|v| v.entries()[k]).max().unwrap_or(0))
            .collect();
        for beta in all {
            *work += 1;
            if *work > budget.max_work {
                return Err(FaceError::BudgetExceeded {
                    what: "enumeration work",
                    value: *work,
                    limit: budget.max_work,
                });
            }
            let inside_box = beta
                .entries()
                .iter()
                .enumerate()
                .all(|(k, &b)| lo[k] <= b && b <= hi[k]);
            if !inside_box || vertices.contains(beta) {
                continue;
            }
            if let Ok(Some(_)) = barycentric(&vertices, beta) {
                let c = Circuit::agiform(vertices.clone(), beta.clone())
                    .expect("positive barycentric coordinates give an agiform");
                if vanishes_on(q, &c) {
                    out.push(c);
                }
            }
        }
    }
    if chosen.len() == q.n + 1 {
        return Ok(());
    }
    let start = chosen.last().map_or(0, |&i| i + 1);
    for next in start..even.len() {
        if !chosen.is_empty() {
            let base = &even[chosen[0]];
            let mut space = RowSpace::new();
            for &i in &chosen[1..] {
                space.insert(&affine_diff(&even[i], base));
            }
            if !space.insert(&affine_diff(&even[next], base)) {
                continue;
            }
        }
        chosen.push(next);
        search(q, budget, all, even, chosen, work, out)?;
        chosen.pop();
    }
    Ok(())
}

/// Coefficient vector over the monomials of degree at most `2d`.
pub fn coefficient_row(c: &Circuit, basis: &[Exponent]) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); basis.len()];
    for (e, coef) in c.poly().terms() {
        let k = basis.binary_search(e).expect("monomial within degree bound");
        row[k] = coef.clone();
    }
    row
}

fn binomial(n: u128, k: u128) -> u128 {
    num_integer::binomial(n, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// `C(n+d, d)` for the full orbit, `C(n+2d, 2d)` otherwise.
    pub naive: u128,
    /// `d^2 + 2d + 1`, two variables and the half orbit.
    pub bivariate: Option<u128>,
    /// `Σ_{i=0}^{d} C(n+2i-1, 2i)`, even `n` and the half orbit.
    pub even_n: Option<u128>,
}

impl Bounds {
    pub fn all(&self) -> Vec<(&'static str, u128)> {
        let mut v = vec![("naive", self.naive)];
        v.extend(self.bivariate.map(|b| ("bivariate", b)));
        v.extend(self.even_n.map(|b| ("even_n", b)));
        v
    }

    pub fn tightest(&self) -> u128 {
        self.all().into_iter().map(|(_, b)| b).min().expect("naive bound present")
    }
}

pub fn dimension_bounds(q: &FaceQuery) -> Bounds {
    let n = q.n as u128;
    let d = (q.two_d / 2) as u128;
    match q.kind {
        GammaKind::FullOrbit => Bounds {
            naive: binomial(n + d, d),
            bivariate: None,
            even_n: None,
        },
        GammaKind::HalfOrbit => Bounds {
            naive: binomial(n + 2 * d, 2 * d),
            bivariate: (q.n == 2).then(|| d * d + 2 * d + 1),
            even_n: (q.n % 2 == 0 && q.n > 0)
                .then(|| (0..=d).map(|i| binomial(n + 2 * i - 1, 2 * i)).sum()),
        },
        GammaKind::Explicit => Bounds {
            naive: binomial(n + 2 * d, 2 * d),
            bivariate: None,
            even_n: None,
        },
    }
}

/// `C(n+2d, 2d) - |Γ|(n+1)` with a flag telling whether it is expected to be
/// the dimension of `P_{n,2d}(Γ)`.
pub fn dim_p_generic(n: usize, two_d: u32, gamma_size: usize) -> (i128, bool) {
    let value = binomial((n as u128) + two_d as u128, two_d as u128) as i128
        - (gamma_size as i128) * (n as i128 + 1);
    let valid = two_d != 2 && (n, two_d, gamma_size) != (1, 4, 2);
    (value, valid)
}

/// Closed form for univariate faces: `d - 1` for `Γ = {±1}`, `2d - 1` for
/// `Γ = {1}`.
pub fn univariate_face_dim(two_d: u32, gamma_size: usize) -> Result<u32, FaceError> {
    check_degree(two_d)?;
    let d = two_d / 2;
    match gamma_size {
        2 if d >= 2 => Ok(d - 1),
        1 => Ok(two_d - 1),
        _ => Err(FaceError::OutOfRange { two_d, gamma_size }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub n: usize,
    pub two_d: u32,
    pub gamma_kind: GammaKind,
    pub gamma_size: usize,
    /// Rank of the span of agiforms vanishing on `Γ`.
    #[serde(rename = "dim_C")]
    pub dim_c: usize,
    #[serde(rename = "dim_P_generic")]
    pub dim_p_generic: i128,
    #[serde(rename = "dim_P_generic_valid")]
    pub dim_p_generic_valid: bool,
    pub bound_naive: u128,
    pub bound_refined: Option<u128>,
    pub bounds: Bounds,
    pub agiform_count: usize,
    pub basis_size: usize,
    /// A maximal independent set of agiforms, on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

pub fn face_dimension(q: &FaceQuery, budget: &Budget, emit_basis: bool) -> Result<FaceReport, FaceError> {
    let agiforms = enumerate_agiforms(q, budget)?;
    let monomials = lattice_points(q.n, q.two_d);
    let mut space = RowSpace::new();
    let mut basis = Vec::new();
    for c in &agiforms {
        if space.insert(&coefficient_row(c, &monomials)) {
            basis.push(c);
        }
    }
    let rank = space.rank();
    let bounds = dimension_bounds(q);
    for (name, bound) in bounds.all() {
        if rank as u128 > bound {
            return Err(FaceError::BoundViolated { rank, bound, name });
        }
    }
    let (dim_p, valid) = dim_p_generic(q.n, q.two_d, q.gamma_size());
    let refined = [bounds.bivariate, bounds.even_n].into_iter().flatten().min();
    Ok(FaceReport {
        n: q.n,
        two_d: q.two_d,
        gamma_kind: q.kind,
        gamma_size: q.gamma_size(),
        dim_c: rank,
        dim_p_generic: dim_p,
        dim_p_generic_valid: valid,
        bound_naive: bounds.naive,
        bound_refined: refined,
        bounds,
        agiform_count: agiforms.len(),
        basis_size: basis.len(),
        basis: emit_basis.then(|| basis.iter().map(|c| c.poly().to_affine_string()).collect()),
    })
}

/// Whether every agiform vanishes exactly at every point of `Γ`.
pub fn all_vanish(q: &FaceQuery, agiforms: &[Circuit]) -> bool {
    agiforms.iter().all(|c| {
        let p = c.poly();
        q.points
            .iter()
            .all(|s| p.evaluate(s).is_ok_and(|v| v.is_zero()))
    })
}

/// Sum of coefficients, the value at the all-ones point.
pub fn coefficient_sum(c: &Circuit) -> Rational {
    c.poly().terms().fold(Rational::zero(), |acc, (_, v)| acc + v)
}
