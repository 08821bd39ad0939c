//! Wire forms for elements, tensors and tables.
//!
//! Coefficients and words travel as their exact display strings, so
//! arbitrarily large integers and rationals survive a round trip through
//! any JSON implementation without loss.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::ring::Ring;
use crate::tensor::TensorElement;
use crate::thompson::{Table, TablePair};
use crate::words::Word;
use crate::Result;

/// `{"ring": "z", "terms": [{"c": "-2", "alpha": "ab", "beta": "e"}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub ring: String,
    pub terms: Vec<ElementTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementTermJson {
    pub c: String,
    pub alpha: String,
    pub beta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub alpha: String,
    pub beta: String,
}

/// `{"ring": ..., "terms": [{"c": ..., "left": {...}, "right": {...}}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub ring: String,
    pub terms: Vec<TensorTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub c: String,
    pub left: MonomialJson,
    pub right: MonomialJson,
}

/// `{"pairs": [{"domain": "aa", "range": "b"}, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub pairs: Vec<TablePairJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablePairJson {
    pub domain: String,
    pub range: String,
}

impl ElementJson {
    pub fn from_element(x: &AlgebraElement) -> ElementJson {
        ElementJson {
            ring: x.ring().to_string(),
            terms: x
                .terms()
                .map(|(m, c)| ElementTermJson {
                    c: c.to_string(),
                    alpha: m.alpha.to_string(),
                    beta: m.beta.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<AlgebraElement> {
        let ring: Ring = self.ring.parse()?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push((
                ring.parse_scalar(&t.c)?,
                t.alpha.parse::<Word>()?,
                t.beta.parse::<Word>()?,
            ));
        }
        Ok(AlgebraElement::from_terms(ring, terms))
    }
}

impl TensorJson {
    pub fn from_tensor(x: &TensorElement) -> TensorJson {
        TensorJson {
            ring: x.ring().to_string(),
            terms: x
                .terms()
                .map(|((l, r), c)| TensorTermJson {
                    c: c.to_string(),
                    left: MonomialJson {
                        alpha: l.alpha.to_string(),
                        beta: l.beta.to_string(),
                    },
                    right: MonomialJson {
                        alpha: r.alpha.to_string(),
                        beta: r.beta.to_string(),
                    },
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<TensorElement> {
        let ring: Ring = self.ring.parse()?;
        let mut out = TensorElement::zero(ring);
        for t in &self.terms {
            let left = AlgebraElement::monomial(
                ring,
                ring.parse_scalar(&t.c)?,
                t.left.alpha.parse()?,
                t.left.beta.parse()?,
            );
            let right = AlgebraElement::monomial(
                ring,
                ring.one(),
                t.right.alpha.parse()?,
                t.right.beta.parse()?,
            );
            out = out.add(&TensorElement::tensor_of(&left, &right)?)?;
        }
        Ok(out)
    }
}

impl TableJson {
    pub fn from_table(g: &Table) -> TableJson {
        TableJson {
            pairs: g
                .pairs()
                .iter()
                .map(|p| TablePairJson {
                    domain: p.domain.to_string(),
                    range: p.range.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_table(&self) -> Result<Table> {
        Table::new(
            self.pairs
                .iter()
                .map(|p| {
                    Ok(TablePair::new(
                        p.range.parse::<Word>()?,
                        p.domain.parse::<Word>()?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }
}
