//! Positive reals of the form `Π p^{e_p}` with rational exponents.
//!
//! Zero coordinates of boundary circuits are power products of the rationals
//! `ρ_j`, so storing the prime factorization with rational exponents gives a
//! canonical form: two magnitudes are equal iff their factor maps are.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_prime::nt_funcs::factorize;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::rational::{self, Rational};
use crate::report::Float17;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactMagnitude {
    factors: BTreeMap<BigUint, Rational>,
}

fn factor_into(n: &BigInt, sign: i64, out: &mut BTreeMap<BigUint, Rational>) {
    let m = n.magnitude();
    if m.is_one() {
        return;
    }
    for (p, k) in factorize(m.clone()) {
        *out.entry(p).or_insert_with(Rational::zero) += rational::int(sign * k as i64);
    }
}

impl ExactMagnitude {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factor a positive rational. Panics on zero or negative input.
    pub fn from_rational(q: &Rational) -> Self {
        assert!(q.is_positive(), "magnitudes are positive");
        let mut factors = BTreeMap::new();
        factor_into(q.numer(), 1, &mut factors);
        factor_into(q.denom(), -1, &mut factors);
        factors.retain(|_, e| !e.is_zero());
        ExactMagnitude { factors }
    }

    pub fn from_factors(mut factors: BTreeMap<BigUint, Rational>) -> Self {
        factors.retain(|_, e| !e.is_zero());
        ExactMagnitude { factors }
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, Rational> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &ExactMagnitude) -> ExactMagnitude {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            *factors.entry(p.clone()).or_insert_with(Rational::zero) += e;
        }
        factors.retain(|_, e| !e.is_zero());
        ExactMagnitude { factors }
    }

    pub fn pow(&self, e: &Rational) -> ExactMagnitude {
        if e.is_zero() {
            return Self::one();
        }
        ExactMagnitude {
            factors: self
                .factors
                .iter()
                .map(|(p, x)| (p.clone(), x * e))
                .collect(),
        }
    }

    pub fn recip(&self) -> ExactMagnitude {
        self.pow(&rational::int(-1))
    }

    /// The rational value when every exponent is an integer.
    pub fn to_rational(&self) -> Option<Rational> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            if !e.is_integer() {
                return None;
            }
            let k = e.to_integer().abs().to_u32()?;
            let pk = BigInt::from(p.clone()).pow(k);
            if e.is_positive() {
                num *= pk;
            } else {
                den *= pk;
            }
        }
        Some(Rational::new(num, den))
    }

    /// Natural logarithm, the `s*` coordinate of the zero formula.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|(p, e)| rational::to_f64(e) * p.to_f64().unwrap_or(f64::INFINITY).ln())
            .sum()
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }
}

/// `2^(-1/2)*3`, or `1` for the empty product.
impl std::fmt::Display for ExactMagnitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if e.is_one() {
                    p.to_string()
                } else if e.is_integer() && e.is_positive() {
                    format!("{p}^{e}")
                } else {
                    format!("{p}^({})", rational::to_canonical(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

struct FactorMap<'a>(&'a BTreeMap<BigUint, Rational>);

impl Serialize for FactorMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (p, e) in self.0 {
            m.serialize_entry(&p.to_string(), &rational::to_canonical(e))?;
        }
        m.end()
    }
}

/// `{"factors": {"2": "-1/2"}, "float": 0.70710678118654757}`.
impl Serialize for ExactMagnitude {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactMagnitude", 2)?;
        st.serialize_field("factors", &FactorMap(&self.factors))?;
        st.serialize_field("float", &Float17(self.to_f64()))?;
        st.end()
    }
}
