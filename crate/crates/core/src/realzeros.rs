//! Exact real zeros of boundary circuits and SONC sums.
//!
//! The zero set is computed stratum by stratum. For every set `Z` of
//! coordinates forced to zero, each part either vanishes identically on the
//! stratum, is strictly positive there, or survives unchanged as a circuit in
//! the remaining variables. Surviving circuits pin the magnitudes through the
//! log-linear system `<s, α(j) - α(0)> = ln ρ_j` with
//! `ρ_j = λ_j f_{α(0)} / (λ_0 f_{α(j)})`, and the signs through the parity
//! conditions `σ^β = -sgn f_β`. The stratum `Z = ∅` is the torus part `V*`.
//!
//! Magnitudes are solved prime by prime: `ln 2, ln 3, ln 5, ...` are linearly
//! independent over Q, so the system splits into one rational system per
//! prime occurring in some `ρ_j`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::circuit::{theta_compare, Circuit, CircuitError, Verdict};
use crate::hitting;
use crate::linalg::{self, Solution};
use crate::magnitude::ExactMagnitude;
use crate::poly::Exponent;
use crate::rational::{self, Rational};

/// Largest variable count for which strata and sign vectors are enumerated.
pub const MAX_ENUMERATION_VARS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZeroError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("circuit is not on the boundary, it has no zeros in the torus")]
    NotBoundary,
    #[error("circuit is a sum of monomial squares")]
    Improper,
    #[error("part {index} is not nonnegative")]
    NotNonnegative { index: usize },
    #[error("part {index} has {found} variables, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("exact enumeration supports at most {MAX_ENUMERATION_VARS} variables, got {0}")]
    TooManyVariables(usize),
    #[error("expected a univariate circuit, got {0} variables")]
    NotUnivariate(usize),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

/// A zero in the torus, `σ ⊙ |v|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AffineZero {
    pub signs: Vec<i8>,
    pub magnitudes: Vec<ExactMagnitude>,
}

impl AffineZero {
    pub fn to_f64(&self) -> Vec<f64> {
        self.signs
            .iter()
            .zip(&self.magnitudes)
            .map(|(s, m)| *s as f64 * m.to_f64())
            .collect()
    }

    /// Exact coordinates when every magnitude is rational.
    pub fn to_rational(&self) -> Option<Vec<Rational>> {
        self.signs
            .iter()
            .zip(&self.magnitudes)
            .map(|(s, m)| m.to_rational().map(|q| q * rational::int(*s as i64)))
            .collect()
    }

    /// `|v|^α`.
    pub fn magnitude_power(&self, alpha: &[u32]) -> ExactMagnitude {
        self.magnitudes
            .iter()
            .zip(alpha)
            .fold(ExactMagnitude::one(), |acc, (m, &a)| {
                acc.mul(&m.pow(&rational::int(a as i64)))
            })
    }

    /// `σ^α` as ±1.
    pub fn sign_power(&self, alpha: &[u32]) -> i8 {
        let odd = self
            .signs
            .iter()
            .zip(alpha)
            .filter(|(s, a)| **s < 0 && *a % 2 == 1)
            .count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    Finite,
    Infinite,
}

fn rational_rows<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        let row: Vec<String> = r.iter().map(rational::to_canonical).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

/// Why a zero set is infinite. Variable indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InfiniteWitness {
    /// Zeros with `x_Z = 0` whose log-magnitudes move freely along
    /// `directions` (vectors over `free_variables`).
    Degenerate {
        zero_variables: Vec<usize>,
        free_variables: Vec<usize>,
        #[serde(serialize_with = "rational_rows")]
        directions: Vec<Vec<Rational>>,
    },
    /// The whole coordinate subspace `x_Z = 0` lies in the zero set.
    CoordinateSubspace {
        zero_variables: Vec<usize>,
        free_variables: Vec<usize>,
    },
}

/// Zeros on one coordinate stratum `x_Z = 0`, other coordinates nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// 1-based indices of the vanishing coordinates.
    pub zero_variables: Vec<usize>,
    /// `None` when the stratum holds infinitely many zeros.
    pub count: Option<u64>,
    /// Zeros over the remaining coordinates in increasing index order.
    pub zeros: Vec<AffineZero>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateZeros {
    /// Minimal index sets `Z` (1-based) with the subspace `x_Z = 0` inside
    /// the zero set: the transversals of the outer supports.
    pub minimal_hitting_sets: Vec<Vec<usize>>,
    pub origin: bool,
    /// Nonempty strata other than the torus.
    pub strata: Vec<Stratum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSet {
    pub n: usize,
    pub kind: ZeroKind,
    /// Torus zeros, sorted lexicographically by sign vector.
    pub zeros: Vec<AffineZero>,
    /// `|V*|`, `None` when infinite.
    pub torus_count: Option<u64>,
    /// `|V|`, `None` when infinite.
    pub count: Option<u64>,
    pub infinite_witness: Option<InfiniteWitness>,
    /// Common monomial factor of all terms, when nontrivial.
    pub monomial_factor: Option<Vec<u32>>,
    pub coordinate_zeros: CoordinateZeros,
}

impl ZeroSet {
    pub fn is_finite(&self) -> bool {
        self.kind == ZeroKind::Finite
    }
}

enum PartKind {
    Positive { supports: Vec<u64> },
    Circuit {
        outer_supports: Vec<u64>,
        beta_support: u64,
        boundary: bool,
    },
}

enum StratumResult {
    Empty,
    Finite(Vec<AffineZero>),
    Infinite(InfiniteWitness),
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

/// Primitive integer direction with positive leading entry.
fn normalize_direction(v: &[Rational]) -> Vec<Rational> {
    let ints = linalg::integer_row(v);
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -g } else { g };
    ints.iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Rows `α(j) - α(0)` restricted to `free`, with right-hand sides `ρ_j`.
fn log_system(circuits: &[&Circuit], free: &[usize]) -> (Vec<Vec<Rational>>, Vec<ExactMagnitude>) {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for c in circuits {
        let outer = c.outer();
        let lambda = c.lambda();
        let a0 = outer[0].exp.entries();
        for j in 1..outer.len() {
            let aj = outer[j].exp.entries();
            rows.push(
                free.iter()
                    .map(|&i| rational::int(aj[i] as i64 - a0[i] as i64))
                    .collect(),
            );
            let rho = &lambda[j] * &outer[0].coef / (&lambda[0] * &outer[j].coef);
            rhs.push(ExactMagnitude::from_rational(&rho));
        }
    }
    (rows, rhs)
}

struct LogSolution {
    particular: Vec<ExactMagnitude>,
    rank: usize,
    kernel: Vec<Vec<Rational>>,
}

/// Solve `rows · s = ln rhs` prime by prime. `None` when inconsistent.
fn solve_log_system(rows: &[Vec<Rational>], rhs: &[ExactMagnitude], m: usize) -> Option<LogSolution> {
    let primes: BTreeSet<&BigUint> = rhs.iter().flat_map(|r| r.factors().keys()).collect();
    let mut exps: Vec<std::collections::BTreeMap<BigUint, Rational>> = vec![Default::default(); m];
    for p in primes {
        let b: Vec<Rational> = rhs
            .iter()
            .map(|r| r.factors().get(p).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let x = match linalg::solve(rows, &b) {
            Solution::Inconsistent => return None,
            Solution::Unique(x) => x,
            Solution::Family { particular, .. } => particular,
        };
        for (k, e) in x.into_iter().enumerate() {
            exps[k].insert(p.clone(), e);
        }
    }
    let rank = linalg::rank(rows);
    let kernel = if rank < m {
        let rows_or_zero: Vec<Vec<Rational>> = if rows.is_empty() {
            vec![vec![Rational::zero(); m]]
        } else {
            rows.to_vec()
        };
        linalg::kernel(&rows_or_zero, m)
            .iter()
            .map(|v| normalize_direction(v))
            .collect()
    } else {
        Vec::new()
    };
    Some(LogSolution {
        particular: exps.into_iter().map(ExactMagnitude::from_factors).collect(),
        rank,
        kernel,
    })
}

/// Parity constraints over `m` positions: `(mask, parity)` meaning the
/// number of negative signs inside `mask` has the given parity.
fn sign_constraints(circuits: &[&Circuit], free: &[usize]) -> Vec<(u64, u8)> {
    circuits
        .iter()
        .filter_map(|c| {
            let inner = c.inner()?;
            let beta = inner.exp.entries();
            let mask = free
                .iter()
                .enumerate()
                .filter(|(_, &i)| beta[i] % 2 == 1)
                .fold(0u64, |m, (k, _)| m | 1 << k);
            if mask == 0 {
                return None;
            }
            // σ^β = -sgn f_β: an even number of flips when f_β < 0
            let parity = if inner.coef.is_negative() { 0 } else { 1 };
            Some((mask, parity))
        })
        .collect()
}

/// Rank of a GF(2) system, or `None` when inconsistent.
fn gf2_rank(constraints: &[(u64, u8)]) -> Option<usize> {
    let mut pivots: [Option<(u64, u8)>; 64] = [None; 64];
    let mut rank = 0;
    for &(mut mask, mut parity) in constraints {
        while mask != 0 {
            let top = 63 - mask.leading_zeros() as usize;
            match pivots[top] {
                Some((b, p)) => {
                    mask ^= b;
                    parity ^= p;
                }
                None => {
                    pivots[top] = Some((mask, parity));
                    rank += 1;
                    break;
                }
            }
        }
        if mask == 0 && parity == 1 {
            return None;
        }
    }
    Some(rank)
}

/// Sign vectors in lexicographic order (`-1 < +1`) satisfying every
/// constraint.
fn enumerate_signs(m: usize, constraints: &[(u64, u8)]) -> Vec<Vec<i8>> {
    (0..1u64 << m)
        .filter_map(|u| {
            let signs: Vec<i8> = (0..m)
                .map(|k| if u >> (m - 1 - k) & 1 == 1 { 1 } else { -1 })
                .collect();
            let flips = signs
                .iter()
                .enumerate()
                .filter(|(_, &s)| s < 0)
                .fold(0u64, |t, (k, _)| t | 1 << k);
            constraints
                .iter()
                .all(|&(mask, p)| ((flips & mask).count_ones() % 2) as u8 == p)
                .then_some(signs)
        })
        .collect()
}

/// Exact certificate that a torus point of the coordinates `free` is a zero
/// of `c`: the weighted outer terms `f_{α(j)} |v|^{α(j)} / λ_j` agree and the
/// inner term equals minus their common value.
fn certify_on(c: &Circuit, free: &[usize], z: &AffineZero) -> bool {
    let Some(inner) = c.inner() else {
        return false;
    };
    let restrict = |e: &Exponent| -> Vec<u32> { free.iter().map(|&i| e.entries()[i]).collect() };
    let weighted: Vec<ExactMagnitude> = c
        .outer()
        .iter()
        .zip(c.lambda())
        .map(|(t, l)| ExactMagnitude::from_rational(&(&t.coef / l)).mul(&z.magnitude_power(&restrict(&t.exp))))
        .collect();
    if weighted.windows(2).any(|w| w[0] != w[1]) {
        return false;
    }
    let beta = restrict(&inner.exp);
    let inner_mag = ExactMagnitude::from_rational(&inner.coef.abs()).mul(&z.magnitude_power(&beta));
    let inner_sign = z.sign_power(&beta) * rational::sign(&inner.coef);
    inner_mag == weighted[0] && inner_sign == -1
}

/// Exact zero certificate for a torus point of a proper circuit.
pub fn certify_zero(c: &Circuit, z: &AffineZero) -> bool {
    let free: Vec<usize> = (0..c.nvars()).collect();
    z.signs.len() == c.nvars() && certify_on(c, &free, z)
}

fn classify_parts(n: usize, parts: &[Circuit]) -> Result<Vec<PartKind>, ZeroError> {
    parts
        .iter()
        .enumerate()
        .map(|(index, c)| {
            if c.nvars() != n {
                return Err(ZeroError::DimensionMismatch {
                    index,
                    expected: n,
                    found: c.nvars(),
                });
            }
            let outer_supports: Vec<u64> = c.outer().iter().map(|t| t.exp.support_mask()).collect();
            if !c.is_proper() {
                return Ok(PartKind::Positive {
                    supports: outer_supports,
                });
            }
            let verdict = theta_compare(c)?.verdict;
            if verdict == Verdict::Outside {
                return Err(ZeroError::NotNonnegative { index });
            }
            Ok(PartKind::Circuit {
                outer_supports,
                beta_support: c.beta().support_mask(),
                boundary: verdict == Verdict::Boundary,
            })
        })
        .collect()
}

fn solve_stratum(n: usize, z: u64, parts: &[Circuit], kinds: &[PartKind]) -> StratumResult {
    let free: Vec<usize> = (0..n).filter(|&i| z >> i & 1 == 0).collect();
    let zero_vars: Vec<usize> = (0..n).filter(|&i| z >> i & 1 == 1).collect();
    let mut surviving: Vec<&Circuit> = Vec::new();
    for (c, kind) in parts.iter().zip(kinds) {
        match kind {
            PartKind::Positive { supports } => {
                if !supports.iter().all(|s| s & z != 0) {
                    return StratumResult::Empty;
                }
            }
            PartKind::Circuit {
                outer_supports,
                beta_support,
                boundary,
            } => {
                if outer_supports.iter().all(|s| s & z != 0) {
                    continue;
                }
                if beta_support & z != 0 || !boundary {
                    return StratumResult::Empty;
                }
                surviving.push(c);
            }
        }
    }
    let m = free.len();
    if surviving.is_empty() {
        return if m == 0 {
            StratumResult::Finite(vec![AffineZero {
                signs: vec![],
                magnitudes: vec![],
            }])
        } else {
            StratumResult::Infinite(InfiniteWitness::CoordinateSubspace {
                zero_variables: one_based(&zero_vars),
                free_variables: one_based(&free),
            })
        };
    }
    let (rows, rhs) = log_system(&surviving, &free);
    let Some(sol) = solve_log_system(&rows, &rhs, m) else {
        return StratumResult::Empty;
    };
    let constraints = sign_constraints(&surviving, &free);
    if gf2_rank(&constraints).is_none() {
        return StratumResult::Empty;
    }
    if sol.rank < m {
        return StratumResult::Infinite(InfiniteWitness::Degenerate {
            zero_variables: one_based(&zero_vars),
            free_variables: one_based(&free),
            directions: sol.kernel,
        });
    }
    let zeros = enumerate_signs(m, &constraints)
        .into_iter()
        .map(|signs| AffineZero {
            signs,
            magnitudes: sol.particular.clone(),
        })
        .collect();
    StratumResult::Finite(zeros)
}

/// The complete real zero set of `Σ parts` (positive weights do not matter).
pub fn affine_zero_set(n: usize, parts: &[Circuit]) -> Result<ZeroSet, ZeroError> {
    if n > MAX_ENUMERATION_VARS {
        return Err(ZeroError::TooManyVariables(n));
    }
    let kinds = classify_parts(n, parts)?;
    let mut torus: Option<Vec<AffineZero>> = None;
    let mut strata = Vec::new();
    let mut witness = None;
    let mut infinite = false;
    let mut total: u64 = 0;
    for z in 0..1u64 << n {
        let result = solve_stratum(n, z, parts, &kinds);
        let zero_vars: Vec<usize> = (0..n).filter(|&i| z >> i & 1 == 1).collect();
        let free: Vec<usize> = (0..n).filter(|&i| z >> i & 1 == 0).collect();
        match result {
            StratumResult::Empty => {
                if z == 0 {
                    torus = Some(Vec::new());
                }
            }
            StratumResult::Finite(zeros) => {
                for zero in &zeros {
                    let ok = parts.iter().zip(&kinds).all(|(c, k)| match k {
                        PartKind::Circuit { outer_supports, .. }
                            if !outer_supports.iter().all(|s| s & z != 0) =>
                        {
                            certify_on(c, &free, zero)
                        }
                        _ => true,
                    });
                    if !ok {
                        return Err(ZeroError::Inconsistent(format!(
                            "enumerated point {:?} failed certification",
                            zero.to_f64()
                        )));
                    }
                }
                total += zeros.len() as u64;
                if z == 0 {
                    torus = Some(zeros);
                } else {
                    strata.push(Stratum {
                        zero_variables: one_based(&zero_vars),
                        count: Some(zeros.len() as u64),
                        zeros,
                    });
                }
            }
            StratumResult::Infinite(w) => {
                infinite = true;
                if witness.is_none() {
                    witness = Some(w);
                }
                if z != 0 {
                    strata.push(Stratum {
                        zero_variables: one_based(&zero_vars),
                        count: None,
                        zeros: Vec::new(),
                    });
                }
            }
        }
    }
    let family: Vec<u64> = parts
        .iter()
        .flat_map(|c| c.outer().iter().map(|t| t.exp.support_mask()))
        .collect();
    let hitting_sets = if parts.is_empty() {
        vec![Vec::new()]
    } else {
        hitting::minimal_hitting_sets(n, &family)
            .into_iter()
            .map(|h| one_based(&hitting::to_indices(h)))
            .collect()
    };
    let origin = n > 0 && parts.iter().all(|c| !c.has_constant_term());
    let monomial_factor = parts
        .iter()
        .flat_map(|c| c.outer().iter().map(|t| t.exp.clone()))
        .reduce(|a, b| a.componentwise_min(&b))
        .filter(|g| !g.is_zero())
        .map(|g| g.entries().to_vec());
    let torus_zeros = torus.clone().unwrap_or_default();
    Ok(ZeroSet {
        n,
        kind: if infinite {
            ZeroKind::Infinite
        } else {
            ZeroKind::Finite
        },
        torus_count: torus.as_ref().map(|t| t.len() as u64),
        zeros: torus_zeros,
        count: (!infinite).then_some(total),
        infinite_witness: witness,
        monomial_factor,
        coordinate_zeros: CoordinateZeros {
            minimal_hitting_sets: hitting_sets,
            origin,
            strata,
        },
    })
}

/// Magnitudes of the torus zeros of a boundary circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Magnitudes {
    Exact { magnitudes: Vec<ExactMagnitude> },
    /// `r < n`: one solution plus log-directions of an infinite family.
    Degenerate {
        particular: Vec<ExactMagnitude>,
        #[serde(serialize_with = "rational_rows")]
        directions: Vec<Vec<Rational>>,
    },
}

fn require_boundary(c: &Circuit) -> Result<(), ZeroError> {
    if !c.is_proper() {
        return Err(ZeroError::Improper);
    }
    match theta_compare(c)?.verdict {
        Verdict::Boundary => Ok(()),
        _ => Err(ZeroError::NotBoundary),
    }
}

pub fn circuit_zero_magnitudes(c: &Circuit) -> Result<Magnitudes, ZeroError> {
    require_boundary(c)?;
    let n = c.nvars();
    let free: Vec<usize> = (0..n).collect();
    let (rows, rhs) = log_system(&[c], &free);
    let sol = solve_log_system(&rows, &rhs, n)
        .ok_or_else(|| ZeroError::Inconsistent("affinely independent system without solution".into()))?;
    Ok(if sol.rank < n {
        Magnitudes::Degenerate {
            particular: sol.particular,
            directions: sol.kernel,
        }
    } else {
        Magnitudes::Exact {
            magnitudes: sol.particular,
        }
    })
}

/// Closed form for circuits on `{0, D e_1, ..., D e_n}`:
/// `|v_i| = ρ_i^{1/D}`. `None` when the simplex has another shape.
pub fn standard_simplex_magnitudes(c: &Circuit) -> Option<Vec<ExactMagnitude>> {
    let n = c.nvars();
    if c.r() != n {
        return None;
    }
    let outer = c.outer();
    let k0 = outer.iter().position(|t| t.exp.is_zero())?;
    let big_d = outer.iter().map(|t| t.exp.degree()).max()?;
    let mut mags = vec![None; n];
    for (j, t) in outer.iter().enumerate() {
        if j == k0 {
            continue;
        }
        let support = t.exp.support();
        if support.len() != 1 || t.exp.degree() != big_d {
            return None;
        }
        let rho = &c.lambda()[j] * &outer[k0].coef / (&c.lambda()[k0] * &t.coef);
        mags[support[0]] = Some(ExactMagnitude::from_rational(&rho).pow(&rational::frac(1, big_d as i64)));
    }
    mags.into_iter().collect()
}

fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    use std::str::FromStr;
    serde_json::Number::from_str(&v.to_string())
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignPatterns {
    pub n: usize,
    pub log2_count: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub count: BigUint,
    /// Listed for `n ≤ MAX_ENUMERATION_VARS`.
    pub patterns: Option<Vec<Vec<i8>>>,
}

pub fn circuit_sign_patterns(c: &Circuit) -> Result<SignPatterns, ZeroError> {
    require_boundary(c)?;
    let n = c.nvars();
    let log2_count = if c.inner_even() { n } else { n - 1 };
    let patterns = (n <= MAX_ENUMERATION_VARS).then(|| {
        let free: Vec<usize> = (0..n).collect();
        enumerate_signs(n, &sign_constraints(&[c], &free))
    });
    Ok(SignPatterns {
        n,
        log2_count,
        count: BigUint::one() << log2_count,
        patterns,
    })
}

/// Zero set of one proper circuit, with the count theorem asserted.
pub fn circuit_zeros(c: &Circuit) -> Result<ZeroSet, ZeroError> {
    if !c.is_proper() {
        return Err(ZeroError::Improper);
    }
    let n = c.nvars();
    let zs = affine_zero_set(n, std::slice::from_ref(c))?;
    let boundary = theta_compare(c)?.verdict == Verdict::Boundary;
    if boundary && !c.is_degenerate() {
        let expected = 1u64 << if c.inner_even() { n } else { n - 1 };
        if zs.torus_count != Some(expected) {
            return Err(ZeroError::Inconsistent(format!(
                "torus count {:?}, expected {expected}",
                zs.torus_count
            )));
        }
    }
    if !boundary && zs.torus_count != Some(0) {
        return Err(ZeroError::Inconsistent("interior circuit with torus zeros".into()));
    }
    Ok(zs)
}

/// Common zeros of a SONC sum, with the divisibility claims asserted.
pub fn sonc_common_zeros(parts: &[Circuit]) -> Result<ZeroSet, ZeroError> {
    let Some(first) = parts.first() else {
        return Err(ZeroError::Inconsistent("empty decomposition".into()));
    };
    let n = first.nvars();
    let zs = affine_zero_set(n, parts)?;
    if let Some(t) = zs.torus_count {
        let proper: Vec<&Circuit> = parts.iter().filter(|c| c.is_proper()).collect();
        let full = 1u64 << n;
        if proper.iter().any(|c| !c.inner_even()) {
            if t != 0 && (full / 2) % t != 0 {
                return Err(ZeroError::Inconsistent(format!("{t} does not divide 2^(n-1)")));
            }
        } else if !proper.is_empty() && t != 0 && t != full {
            return Err(ZeroError::Inconsistent(format!("{t} is neither 0 nor 2^n")));
        }
    }
    Ok(zs)
}

/// Whether `f''(v) > 0` at every real zero of a univariate boundary circuit.
pub fn univariate_second_order_check(c: &Circuit) -> Result<bool, ZeroError> {
    if c.nvars() != 1 {
        return Err(ZeroError::NotUnivariate(c.nvars()));
    }
    require_boundary(c)?;
    let zs = circuit_zeros(c)?;
    let t0 = &c.outer()[0];
    for z in &zs.zeros {
        // f''(v) v^2 = Σ f_a a(a-1) v^a, divided by the positive power
        // product f_{a0}|v|^{a0}/λ_0 so every summand becomes rational
        let scale = ExactMagnitude::from_rational(&(&t0.coef / &c.lambda()[0]))
            .mul(&z.magnitude_power(t0.exp.entries()))
            .recip();
        let mut sum = Rational::zero();
        for (e, coef) in c.poly().terms() {
            let a = e.entries()[0];
            if a < 2 {
                continue;
            }
            let ratio = z
                .magnitude_power(e.entries())
                .mul(&scale)
                .to_rational()
                .ok_or_else(|| ZeroError::Inconsistent("irrational term ratio".into()))?;
            sum += coef * rational::int(a as i64 * (a as i64 - 1) * z.sign_power(e.entries()) as i64) * ratio;
        }
        if !sum.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-part data for [`count_zeros_formula`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityData {
    /// `β_i` odd, per coordinate.
    pub odd: Vec<bool>,
    pub has_constant_term: bool,
}

impl ParityData {
    pub fn of(c: &Circuit) -> ParityData {
        ParityData {
            odd: c.beta().entries().iter().map(|b| b % 2 == 1).collect(),
            has_constant_term: c.has_constant_term(),
        }
    }
}

/// Admissible zero counts of a SONC polynomial with at least one torus zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleCounts {
    pub torus: Vec<u64>,
    /// Total counts `|V|` allowed when finite.
    pub totals: Vec<u64>,
    pub infinite_possible: bool,
}

impl AdmissibleCounts {
    pub fn admits_total(&self, count: Option<u64>) -> bool {
        match count {
            None => self.infinite_possible,
            Some(c) => self.totals.contains(&c),
        }
    }
}

pub fn count_zeros_formula(n: usize, parts: &[ParityData]) -> AdmissibleCounts {
    let odd_classes: BTreeSet<&Vec<bool>> = parts
        .iter()
        .map(|p| &p.odd)
        .filter(|o| o.iter().any(|&b| b))
        .collect();
    let torus: Vec<u64> = match odd_classes.len() {
        0 => vec![1 << n],
        1 => vec![1 << (n - 1)],
        k => {
            let max_rank = k.min(n);
            (2..=max_rank).rev().map(|r| 1u64 << (n - r)).collect()
        }
    };
    let no_constant = !parts.is_empty() && parts.iter().all(|p| !p.has_constant_term);
    let mut totals = torus.clone();
    if no_constant {
        totals.extend(torus.iter().map(|t| t + 1));
    }
    totals.sort_unstable();
    totals.dedup();
    AdmissibleCounts {
        torus,
        totals,
        infinite_possible: no_constant,
    }
}
