//! Zeros at infinity, projective zero counts and the numbers `B″`.
//!
//! A point `[0:v]` is a zero of a SONC form `p̄` iff every surviving term
//! (no `x0`, full degree) vanishes at `v`. Those terms are positive monomial
//! squares, so only the set `Z` of zero coordinates of `v` matters: `[0:v]`
//! is a zero iff `Z` meets the support of every surviving term. The zeros at
//! infinity are finite iff no transversal leaves two or more coordinates
//! free, and then they are the axis points `[0:e_i]`.

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{detect_circuit, is_sonc_member_given_decomposition, Circuit, CircuitError};
use crate::hitting;
use crate::poly::{Exponent, PolyError, SparsePoly};
use crate::rational::Rational;
use crate::realzeros::{self, ZeroError, ZeroKind, ZeroSet, MAX_ENUMERATION_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("term with exponent {0:?} survives at infinity but is not a positive monomial square")]
    NonSquareAtInfinity(Vec<u32>),
    #[error("B'' is not determined for n+1 = {n_plus_1}, 2d = {two_d}")]
    UncoveredRegime { n_plus_1: usize, two_d: u32 },
    #[error("hitting-set enumeration supports at most {MAX_ENUMERATION_VARS} variables, got {0}")]
    TooManyVariables(usize),
    #[error("no parts given")]
    EmptyDecomposition,
    #[error("zero count {found:?} violates the bound: {reason}")]
    BoundViolated { found: Option<u64>, reason: String },
    #[error("witness has {found:?} zeros, expected {expected}")]
    WitnessMismatch { expected: u64, found: Option<u64> },
    #[error(transparent)]
    Zero(#[from] ZeroError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinityReport {
    pub n_plus_1: usize,
    pub degree: u32,
    /// Supports (form indices `1..=n`) of the terms free of `x0`, one per term.
    pub surviving_supports: Vec<Vec<usize>>,
    pub minimal_hitting_sets: Vec<Vec<usize>>,
    pub kind: ZeroKind,
    /// Indices `i` with `[0:e_i]` a zero, finite case only.
    pub axis_zeros: Vec<usize>,
    /// Number of zeros at infinity, `None` when infinite.
    pub additional_count: Option<u64>,
}

/// Zeros of a SONC form on the hyperplane `x0 = 0`.
pub fn zeros_at_infinity(form: &SparsePoly) -> Result<InfinityReport, ProjectiveError> {
    if !form.is_homogeneous() {
        return Err(ProjectiveError::NotHomogeneous);
    }
    if form.nvars() == 0 {
        return Err(PolyError::NoVariables.into());
    }
    let n = form.nvars() - 1;
    if n > MAX_ENUMERATION_VARS {
        return Err(ProjectiveError::TooManyVariables(n));
    }
    let degree = form.degree();
    let mut report = InfinityReport {
        n_plus_1: n + 1,
        degree,
        surviving_supports: Vec::new(),
        minimal_hitting_sets: Vec::new(),
        kind: ZeroKind::Finite,
        axis_zeros: Vec::new(),
        additional_count: Some(0),
    };
    if form.terms().all(|(e, _)| e.entries()[0] == 0) {
        // homogeneous input used as its own homogenization
        return Ok(report);
    }
    let mut family = Vec::new();
    for (e, c) in form.terms().filter(|(e, _)| e.entries()[0] == 0) {
        if !e.is_even() || !c.is_positive() {
            return Err(ProjectiveError::NonSquareAtInfinity(e.entries().to_vec()));
        }
        let support: Vec<usize> = e.tail().support().iter().map(|i| i + 1).collect();
        family.push(e.tail().support_mask());
        report.surviving_supports.push(support);
    }
    let hitting = hitting::minimal_hitting_sets(n, &family);
    report.minimal_hitting_sets = hitting
        .iter()
        .map(|&h| hitting::to_indices(h).iter().map(|i| i + 1).collect())
        .collect();
    if hitting.iter().any(|h| n - h.count_ones() as usize >= 2) {
        report.kind = ZeroKind::Infinite;
        report.additional_count = None;
        return Ok(report);
    }
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    report.axis_zeros = (0..n)
        .filter(|&i| hitting::hits(full & !(1 << i), &family))
        .map(|i| i + 1)
        .collect();
    report.additional_count = Some(report.axis_zeros.len() as u64);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveCount {
    pub affine: ZeroSet,
    pub infinity: InfinityReport,
    /// `|V(p̄)|`, `None` when infinite.
    pub total: Option<u64>,
}

/// Sum of the parts homogenized to a common degree.
pub fn homogenized_sum(parts: &[Circuit], two_d: u32) -> Result<SparsePoly, ProjectiveError> {
    let first = parts.first().ok_or(ProjectiveError::EmptyDecomposition)?;
    let mut form = SparsePoly::zero(first.nvars() + 1);
    for c in parts {
        form = form.add(&c.poly().homogenize_to(two_d)?)?;
    }
    Ok(form)
}

/// `|V(p̄)|` for `p = Σ parts`, homogenized to degree `two_d` (default: the
/// largest part degree).
pub fn projective_zero_count(
    parts: &[Circuit],
    two_d: Option<u32>,
) -> Result<ProjectiveCount, ProjectiveError> {
    let first = parts.first().ok_or(ProjectiveError::EmptyDecomposition)?;
    let n = first.nvars();
    let two_d = match two_d {
        Some(d) => d,
        None => parts.iter().map(Circuit::degree).max().unwrap_or(0),
    };
    let affine = realzeros::sonc_common_zeros(parts)?;
    let form = homogenized_sum(parts, two_d)?;
    let infinity = zeros_at_infinity(&form)?;
    let total = match (affine.count, infinity.additional_count) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    check_window(n, parts, &affine, &infinity)?;
    Ok(ProjectiveCount {
        affine,
        infinity,
        total,
    })
}

/// Bounds on the zeros gained by homogenizing when the affine set is finite.
fn check_window(
    n: usize,
    parts: &[Circuit],
    affine: &ZeroSet,
    infinity: &InfinityReport,
) -> Result<(), ProjectiveError> {
    let (Some(_), Some(extra)) = (affine.count, infinity.additional_count) else {
        return Ok(());
    };
    let violation = |reason: String| {
        Err(ProjectiveError::BoundViolated {
            found: Some(extra),
            reason,
        })
    };
    if n == 1 && extra > 1 {
        return violation("a binary form has one point at infinity".into());
    }
    if !parts.iter().all(Circuit::is_proper) {
        return Ok(());
    }
    let bound = if n == 2 { 2 } else { 3 };
    if extra > bound {
        return violation(format!("at most {bound} zeros at infinity"));
    }
    if let [c] = parts {
        if !c.has_constant_term() && extra > 2 {
            return violation("at most 2 zeros at infinity without a constant term".into());
        }
    }
    Ok(())
}

/// Which case of the `B″` formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `(n+1, 2d) = (2, 2)`.
    Quadratic,
    /// `n+1 = 2`, `2d ≥ 4`.
    Binary,
    /// `n+1 = 3`, `2d ≥ 4`.
    Ternary,
    /// `n+1 ≥ 4`, `2d < n+1`.
    LowDegree,
    /// `n+1 ≥ 4`, `n+1 ≤ 2d < 2(n+1)`.
    MiddleDegree,
    /// `n+1 ≥ 4`, `2d ≥ 2(n+1)`.
    HighDegree,
}

fn regime(n_plus_1: usize, two_d: u32) -> Result<Regime, ProjectiveError> {
    let uncovered = ProjectiveError::UncoveredRegime { n_plus_1, two_d };
    if n_plus_1 < 2 || two_d < 2 || two_d % 2 == 1 {
        return Err(uncovered);
    }
    let d2 = two_d as usize;
    Ok(match (n_plus_1, two_d) {
        (2, 2) => Regime::Quadratic,
        (_, 2) => return Err(uncovered),
        (2, _) => Regime::Binary,
        (3, _) => Regime::Ternary,
        _ if d2 < n_plus_1 => Regime::LowDegree,
        _ if d2 < 2 * n_plus_1 => Regime::MiddleDegree,
        _ => Regime::HighDegree,
    })
}

/// The closed-form value of `B″_{n+1,2d}`.
pub fn b_double_prime_value(n_plus_1: usize, two_d: u32) -> Result<u64, ProjectiveError> {
    let n = n_plus_1 - 1;
    if n_plus_1 > 64 {
        return Err(ProjectiveError::UncoveredRegime { n_plus_1, two_d });
    }
    Ok(match regime(n_plus_1, two_d)? {
        Regime::Quadratic => 1,
        Regime::Binary => match two_d {
            4 => 2,
            6 => 3,
            _ => 4,
        },
        Regime::Ternary => {
            if two_d == 4 {
                3
            } else {
                7
            }
        }
        Regime::LowDegree => (1u64 << (two_d - 2)) + 3,
        Regime::MiddleDegree => (1u64 << (n - 1)) + 3,
        Regime::HighDegree => (1u64 << n) + 3,
    })
}

fn unit(n: usize, entries: &[(usize, u32)]) -> Exponent {
    let mut v = vec![0; n];
    for &(i, e) in entries {
        v[i] += e;
    }
    Exponent::new(v)
}

/// Agiform in `n` variables with a constant term, pure powers `D e_i` for
/// the first `n - 3` variables and the cyclic triple
/// `2e_p + (D-2)e_q, 2e_q + (D-2)e_r, 2e_r + (D-2)e_p` on the last three,
/// with inner exponent `(b, ..., b)`.
fn triple_agiform(n: usize, two_d: u32, b: u32) -> Result<Circuit, ProjectiveError> {
    let mut vertices = vec![Exponent::zero(n)];
    for i in 0..n - 3 {
        vertices.push(unit(n, &[(i, two_d)]));
    }
    let (p, q, r) = (n - 3, n - 2, n - 1);
    for (a, b) in [(p, q), (q, r), (r, p)] {
        vertices.push(unit(n, &[(a, 2), (b, two_d - 2)]));
    }
    Ok(Circuit::agiform(vertices, Exponent::new(vec![b; n]))?)
}

fn parse_circuit(s: &str, n: usize) -> Result<Circuit, ProjectiveError> {
    let p = crate::poly::parse(s, crate::poly::Convention::Affine, Some(n))
        .expect("built-in witness parses");
    Ok(detect_circuit(&p)?)
}

/// The affine parts whose homogenization to degree `2d` attains `B″`.
pub fn witness_parts(n_plus_1: usize, two_d: u32) -> Result<(Regime, Vec<Circuit>), ProjectiveError> {
    let reg = regime(n_plus_1, two_d)?;
    let n = n_plus_1 - 1;
    let d = two_d / 2;
    let parts = match reg {
        Regime::Quadratic => vec![parse_circuit("1/2 + 1/2*x1^2 - x1", 1)?],
        Regime::Binary => match two_d {
            4 => vec![parse_circuit("1/2 + 1/2*x1^2 - x1", 1)?],
            6 => vec![parse_circuit("1/2 + 1/2*x1^4 - x1^2", 1)?],
            _ => vec![Circuit::agiform(
                vec![unit(1, &[(0, 2)]), unit(1, &[(0, two_d - 2)])],
                unit(1, &[(0, 4)]),
            )?],
        },
        Regime::Ternary => {
            if two_d == 4 {
                vec![parse_circuit("x1^2 + x1^2*x2^2 + x2^2", 2)?]
            } else {
                vec![Circuit::agiform(
                    vec![unit(2, &[(0, two_d - 2), (1, 2)]), unit(2, &[(1, 4)]), unit(2, &[(0, 2)])],
                    unit(2, &[(0, 2), (1, 2)]),
                )?]
            }
        }
        Regime::HighDegree => vec![triple_agiform(n, two_d, 2)?],
        Regime::MiddleDegree => vec![triple_agiform(n, two_d, 1)?],
        Regime::LowDegree => {
            let k = two_d as usize - 1;
            let mut small = triple_agiform(k, two_d, 1)?.to_json();
            for t in small.outer.iter_mut().chain(small.inner.iter_mut()) {
                t.exp.resize(n, 0);
            }
            let mut parts = vec![small.to_circuit()?];
            for i in k..n {
                let e = unit(n, &[(i, 2 * d)]);
                let mono = SparsePoly::monomial(e, Rational::from_integer(1.into()));
                parts.push(detect_circuit(&mono)?);
            }
            parts
        }
    };
    Ok((reg, parts))
}

/// A SONC form in `n+1` variables of degree `2d` with `B″_{n+1,2d}` zeros.
pub fn witness_form(n_plus_1: usize, two_d: u32) -> Result<SparsePoly, ProjectiveError> {
    let (_, parts) = witness_parts(n_plus_1, two_d)?;
    let n = n_plus_1 - 1;
    let weighted: Vec<(Rational, Circuit)> = parts
        .iter()
        .map(|c| (Rational::from_integer(1.into()), c.clone()))
        .collect();
    is_sonc_member_given_decomposition(n, &weighted)?;
    homogenized_sum(&parts, two_d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BNumberReport {
    pub n_plus_1: usize,
    pub two_d: u32,
    pub value: u64,
    pub regime: Regime,
    /// Witness form in the `x0..xn` grammar.
    pub witness: String,
    /// Zero count of the witness, verified by enumeration.
    pub witness_count: Option<u64>,
}

pub fn b_double_prime(n_plus_1: usize, two_d: u32) -> Result<BNumberReport, ProjectiveError> {
    let value = b_double_prime_value(n_plus_1, two_d)?;
    let (reg, parts) = witness_parts(n_plus_1, two_d)?;
    let form = witness_form(n_plus_1, two_d)?;
    let witness_count = if n_plus_1 - 1 <= MAX_ENUMERATION_VARS {
        let count = projective_zero_count(&parts, Some(two_d))?.total;
        if count != Some(value) {
            return Err(ProjectiveError::WitnessMismatch {
                expected: value,
                found: count,
            });
        }
        count
    } else {
        None
    };
    Ok(BNumberReport {
        n_plus_1,
        two_d,
        value,
        regime: reg,
        witness: form.to_form_string(),
        witness_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_form, Convention};

    fn form(s: &str, n_plus_1: usize) -> SparsePoly {
        crate::poly::parse(s, Convention::Form, Some(n_plus_1)).unwrap()
    }

    #[test]
    fn motzkin_form() {
        let r = zeros_at_infinity(&form("x0^6 + x1^4*x2^2 + x1^2*x2^4 - 3*x0^2*x1^2*x2^2", 3)).unwrap();
        assert_eq!(r.surviving_supports, vec![vec![1, 2], vec![1, 2]]);
        assert_eq!(r.axis_zeros, vec![1, 2]);
        assert_eq!(r.additional_count, Some(2));
    }

    #[test]
    fn first_example_has_nothing_at_infinity() {
        let r = zeros_at_infinity(&form("1/2*x0^4 + x1^4 + x2^4 - 2*x0^2*x1*x2", 3)).unwrap();
        assert_eq!(r.surviving_supports, vec![vec![1], vec![2]]);
        assert_eq!(r.additional_count, Some(0));
    }

    #[test]
    fn three_axis_zeros_and_infinite_case() {
        let r = zeros_at_infinity(&form("5*x0^8 + x1^4*x2^4 + x2^4*x3^4 + x1^4*x3^4 - 8*x0^5*x1*x2*x3", 4)).unwrap();
        assert_eq!(r.axis_zeros, vec![1, 2, 3]);
        let p = parse_form("x0^8 + x1^4*x2^2*x3^2 + x1^2*x2^4*x3^2 + x1^2*x2^2*x3^4 - 4*x0^2*x1^2*x2^2*x3^2").unwrap();
        let r = zeros_at_infinity(&p).unwrap();
        assert_eq!(r.kind, ZeroKind::Infinite);
        assert_eq!(r.additional_count, None);
    }

    #[test]
    fn rejects_bad_forms() {
        assert_eq!(
            zeros_at_infinity(&form("x0^2 + x1", 2)),
            Err(ProjectiveError::NotHomogeneous)
        );
        assert!(matches!(
            zeros_at_infinity(&form("x0^2 + x1^2 - x1*x2", 3)),
            Err(ProjectiveError::NonSquareAtInfinity(_))
        ));
        let r = zeros_at_infinity(&form("x1^2 + x2^2 - x1*x2", 3)).unwrap();
        assert_eq!(r.additional_count, Some(0));
    }

    #[test]
    fn b_values() {
        let expect = [
            ((2, 2), 1),
            ((2, 4), 2),
            ((2, 6), 3),
            ((2, 8), 4),
            ((3, 4), 3),
            ((3, 6), 7),
            ((7, 4), 7),
            ((4, 8), 11),
        ];
        for ((m, d), v) in expect {
            let r = b_double_prime(m, d).unwrap();
            assert_eq!(r.value, v, "({m}, {d})");
            assert_eq!(r.witness_count, Some(v));
        }
        assert!(matches!(
            b_double_prime(3, 2),
            Err(ProjectiveError::UncoveredRegime { .. })
        ));
    }

    #[test]
    fn binary_octic_witness() {
        let w = witness_form(2, 8).unwrap();
        assert_eq!(w, form("1/2*x0^6*x1^2 + 1/2*x0^2*x1^6 - x0^4*x1^4", 2));
    }
}
