//! JSON form: `{"n": 2, "terms": [{"exp": [4, 2], "coef": "1/3"}]}`.

use serde::{Deserialize, Serialize};

use super::{Exponent, PolyError, SparsePoly};
use crate::rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyJsonError {
    #[error("invalid rational coefficient {0:?}")]
    BadCoefficient(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl PolyJson {
    pub fn from_poly(p: &SparsePoly) -> Self {
        PolyJson {
            n: p.nvars(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.entries().to_vec(),
                    coef: rational::to_canonical(c),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<SparsePoly, PolyJsonError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                rational::parse(&t.coef)
                    .map(|c| (Exponent(t.exp.clone()), c))
                    .ok_or_else(|| PolyJsonError::BadCoefficient(t.coef.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparsePoly::from_terms(self.n, terms)?)
    }
}
