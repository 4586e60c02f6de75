#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sonc::circuit::{detect_circuit, Circuit};
use sonc::poly::{Exponent, SparsePoly};
use sonc::rational::{self, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A positive rational `p/q` with `1 ≤ p, q ≤ 6`.
pub fn small_positive(rng: &mut impl Rng) -> Rational {
    rational::frac(rng.gen_range(1..=6), rng.gen_range(1..=6))
}

pub fn random_magnitudes(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_positive(rng)).collect()
}

pub fn random_signs(rng: &mut impl Rng, n: usize) -> Vec<i8> {
    (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

fn monomial_value(exp: &[u32], point: &[Rational]) -> Rational {
    exp.iter()
        .zip(point)
        .fold(rational::int(1), |acc, (&a, x)| acc * rational::pow(x, a as u64))
}

/// The boundary circuit on the given simplex with a zero at `σ ⊙ v`:
/// `Σ λ_j (x/v)^{α(j)} - σ^β (x/v)^β`.
pub fn boundary_circuit_through(vertices: &[Vec<u32>], beta: &[u32], point: &[Rational]) -> Option<Circuit> {
    let agi = Circuit::agiform(
        vertices.iter().map(|v| Exponent::from(v.as_slice())).collect(),
        Exponent::from(beta),
    )
    .ok()?;
    let n = beta.len();
    let mut terms: Vec<(Exponent, Rational)> = agi
        .outer()
        .iter()
        .zip(agi.lambda())
        .map(|(t, l)| (t.exp.clone(), l / monomial_value(t.exp.entries(), point)))
        .collect();
    terms.push((Exponent::from(beta), -(rational::int(1) / monomial_value(beta, point))));
    let p = SparsePoly::from_terms(n, terms).ok()?;
    detect_circuit(&p).ok()
}

/// Vertices `{0, D e_1, ..., D e_n}` and a random interior `β`.
pub fn standard_simplex_support(rng: &mut impl Rng, n: usize, two_d: u32) -> (Vec<Vec<u32>>, Vec<u32>) {
    assert!(two_d as usize > n, "no interior lattice point");
    let mut vertices = vec![vec![0; n]];
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = two_d;
        vertices.push(v);
    }
    loop {
        let beta: Vec<u32> = (0..n).map(|_| rng.gen_range(1..two_d)).collect();
        if beta.iter().sum::<u32>() < two_d {
            return (vertices, beta);
        }
    }
}

/// A random full-dimensional simplex with even vertices of degree at most
/// `max_deg` and a lattice point in its interior. With `constant`, one
/// vertex is the origin.
pub fn random_support(rng: &mut impl Rng, n: usize, max_deg: u32, constant: bool) -> (Vec<Vec<u32>>, Vec<u32>) {
    let half = max_deg / 2;
    loop {
        let mut vertices: Vec<Vec<u32>> = Vec::new();
        if constant {
            vertices.push(vec![0; n]);
        }
        while vertices.len() < n + 1 {
            let v: Vec<u32> = loop {
                let v: Vec<u32> = (0..n).map(|_| 2 * rng.gen_range(0..=half)).collect();
                if v.iter().sum::<u32>() <= max_deg {
                    break v;
                }
            };
            vertices.push(v);
        }
        for _ in 0..40 {
            let beta: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_deg)).collect();
            let ok = Circuit::agiform(
                vertices.iter().map(|v| Exponent::from(v.as_slice())).collect(),
                Exponent::from(beta.as_slice()),
            )
            .map(|c| c.r() == n)
            .unwrap_or(false);
            if ok {
                return (vertices, beta);
            }
        }
    }
}
