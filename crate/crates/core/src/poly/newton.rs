//! Newton polytope of the support: vertices and affine dimension.

use serde::Serialize;

use super::{Exponent, PolyError, SparsePoly};
use crate::linalg;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    /// Vertices in canonical term order.
    pub vertices: Vec<Vec<u32>>,
    pub affine_dimension: usize,
    pub has_constant_term: bool,
    pub full_dimensional: bool,
}

impl SupportReport {
    pub fn is_degenerate(&self) -> bool {
        !self.full_dimensional
    }
}

/// Rank of the differences `points[i] - points[0]`.
pub fn affine_dimension(points: &[Vec<Rational>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    linalg::rank(&diffs)
}

pub(super) fn classify(p: &SparsePoly) -> Result<SupportReport, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let exps: Vec<&Exponent> = p.terms().map(|(e, _)| e).collect();
    let points: Vec<Vec<Rational>> = exps.iter().map(|e| e.as_rationals()).collect();
    let vertices = (0..points.len())
        .filter(|&i| {
            let others: Vec<Vec<Rational>> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            !linalg::in_convex_hull(&others, &points[i])
        })
        .map(|i| exps[i].entries().to_vec())
        .collect();
    let dim = affine_dimension(&points);
    Ok(SupportReport {
        vertices,
        affine_dimension: dim,
        has_constant_term: p.has_constant_term(),
        full_dimensional: dim == p.nvars(),
    })
}
