//! Exact linear algebra over the rationals.
//!
//! Everything here is small and dense: barycentric systems with at most
//! n+2 rows, exponent-difference matrices, and agiform coefficient matrices
//! with a few hundred rows. Ranks use fraction-free elimination on rows
//! scaled to integers; solves use rational Gauss-Jordan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// A particular solution plus a basis of the kernel of `A`.
    Family {
        particular: Vec<Rational>,
        kernel: Vec<Vec<Rational>>,
    },
    Inconsistent,
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solve `a x = b` exactly. `a` may be rectangular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    let mut particular = vec![Rational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[r][cols].clone();
    }
    if pivots.len() == cols {
        return Solution::Unique(particular);
    }
    Solution::Family {
        particular,
        kernel: kernel_from_rref(&aug, &pivots, cols),
    }
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<Rational>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of the right kernel `{x : a x = 0}`.
pub fn kernel(a: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m: Matrix = a.to_vec();
    let pivots = rref(&mut m, cols);
    kernel_from_rref(&m, &pivots, cols)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "inverse needs a square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Scale a rational row by the lcm of its denominators.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(row);
    row.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

/// Rank by Bareiss fraction-free elimination over the integers.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                // exact by Sylvester's identity
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    bareiss_rank(rows.iter().map(|r| integer_row(r)).collect())
}

/// Incremental row space over the integers: rows are kept primitive (content
/// divided out) and in echelon form, so entries stay small while rows arrive
/// one at a time.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a row; returns true when it was independent of the rows so far.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        let mut v = integer_row(row);
        for (pc, basis) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let a = basis[*pc].clone();
            let b = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(basis) {
                *x = &*x * &a - &b * y;
            }
            make_primitive(&mut v);
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        make_primitive(&mut v);
        let pos = self.rows.partition_point(|(c, _)| *c < pc);
        self.rows.insert(pos, (pc, v));
        true
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Exact phase-one simplex: is there `mu >= 0` with `sum mu_i p_i = target`
/// and `sum mu_i = 1`? Bland's rule, so it always terminates.
pub fn in_convex_hull(points: &[Vec<Rational>], target: &[Rational]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = target.len();
    let k = points.len();
    let m = dim + 1;
    // rows: one per coordinate, plus the affine row
    let mut t: Matrix = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rational> = (0..k)
            .map(|j| {
                if i < dim {
                    points[j][i].clone()
                } else {
                    Rational::one()
                }
            })
            .collect();
        let mut rhs = if i < dim {
            target[i].clone()
        } else {
            Rational::one()
        };
        if rhs.is_negative() {
            row.iter_mut().for_each(|x| *x = -x.clone());
            rhs = -rhs;
        }
        row.extend((0..m).map(|a| if a == i { Rational::one() } else { Rational::zero() }));
        row.push(rhs);
        t.push(row);
    }
    let width = k + m;
    let mut basis: Vec<usize> = (k..k + m).collect();
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost: Vec<Rational> = (0..width)
        .map(|j| {
            if j < k {
                -t.iter().map(|r| r[j].clone()).sum::<Rational>()
            } else {
                Rational::zero()
            }
        })
        .collect();
    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width] / &t[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &t[l][width] / &t[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // phase one is bounded below by zero, so a leaving row exists
        let Some(l) = leave else { break };
        let inv = t[l][enter].recip();
        for v in t[l].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m {
            if i != l && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for c in 0..=width {
                    let d = &f * &t[l][c];
                    t[i][c] -= d;
                }
            }
        }
        let f = cost[enter].clone();
        for c in 0..width {
            let d = &f * &t[l][c];
            cost[c] -= d;
        }
        basis[l] = enter;
    }
    basis
        .iter()
        .zip(&t)
        .all(|(&b, row)| b < k || row[width].is_zero())
}
