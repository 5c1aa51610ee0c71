use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pauli::bits::BitVector;
use crate::pauli::string::{PauliString, Sign};

/// Coefficients whose magnitude falls below this after merging are dropped.
pub const DROP_THRESHOLD: f64 = 1e-12;

/// One weighted term `c · P`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub pauli: PauliString,
    pub coefficient: f64,
}

impl PauliTerm {
    pub fn new(pauli: PauliString, coefficient: f64) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "coefficient {coefficient} is not finite"
            )));
        }
        Ok(Self { pauli, coefficient })
    }

    /// Signed weight `c · sign(P)` on the unsigned string.
    pub fn signed_value(&self) -> f64 {
        self.coefficient * self.pauli.sign().value()
    }

    /// Canonical encoding: non-negative coefficient, sign carried by the
    /// Pauli string. Two encodings of the same operator canonicalize equal.
    pub fn canonical(&self) -> Self {
        let v = self.signed_value();
        Self {
            pauli: self.pauli.clone().with_sign(Sign::from_bit(v < 0.0)),
            coefficient: v.abs(),
        }
    }

    /// Alternative encoding: `+` string, sign folded into the coefficient.
    pub fn sign_in_coefficient(&self) -> Self {
        Self {
            pauli: self.pauli.unsigned(),
            coefficient: self.signed_value(),
        }
    }
}

/// What happened while building an [`Observable`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub read: usize,
    pub merged: usize,
    pub dropped: usize,
}

/// A real linear combination of distinct Pauli strings.
///
/// Terms are stored canonically (non-negative coefficient, sign on the
/// string) in first-occurrence order.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
    identity: Option<usize>,
    stats: IngestStats,
}

impl Observable {
    /// Ingests terms, merging duplicates (same letters) by adding their
    /// signed weights and dropping near-zero results.
    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = PauliTerm>,
    {
        let mut order: Vec<(BitVector, BitVector)> = Vec::new();
        let mut values: HashMap<(BitVector, BitVector), f64> = HashMap::new();
        let mut stats = IngestStats::default();
        for t in terms {
            Error::check_dim(n_qubits, t.pauli.n_qubits())?;
            if !t.coefficient.is_finite() {
                return Err(Error::InvalidArgument("coefficient is not finite".into()));
            }
            stats.read += 1;
            let key = (t.pauli.x_bits().clone(), t.pauli.z_bits().clone());
            match values.get_mut(&key) {
                Some(v) => {
                    *v += t.signed_value();
                    stats.merged += 1;
                }
                None => {
                    values.insert(key.clone(), t.signed_value());
                    order.push(key);
                }
            }
        }
        let mut out = Vec::with_capacity(order.len());
        for key in order {
            let v = values[&key];
            if v.abs() < DROP_THRESHOLD {
                stats.dropped += 1;
                continue;
            }
            let pauli = PauliString::from_bits(key.0, key.1, Sign::from_bit(v < 0.0))?;
            out.push(PauliTerm {
                pauli,
                coefficient: v.abs(),
            });
        }
        let identity = out.iter().position(|t| t.pauli.is_identity());
        Ok(Self {
            n_qubits,
            terms: out,
            identity,
            stats,
        })
    }

    /// Convenience constructor from `(coefficient, "XYZ")` pairs.
    pub fn from_pairs(pairs: &[(f64, &str)]) -> Result<Self> {
        let terms = pairs
            .iter()
            .map(|&(c, s)| PauliTerm::new(PauliString::parse(s)?, c))
            .collect::<Result<Vec<_>>>()?;
        let n = terms
            .first()
            .map(|t| t.pauli.n_qubits())
            .ok_or_else(|| Error::InvalidArgument("no terms".into()))?;
        Self::from_terms(n, terms)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Index of the all-identity term, if present.
    pub fn identity_index(&self) -> Option<usize> {
        self.identity
    }

    pub fn stats(&self) -> IngestStats {
        self.stats
    }

    /// `Σ |c_j|`.
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    /// Term indices sorted by descending `|c|`, ties by original position.
    pub fn greedy_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.terms.len()).collect();
        idx.sort_by(|&a, &b| {
            self.terms[b]
                .coefficient
                .abs()
                .total_cmp(&self.terms[a].coefficient.abs())
                .then(a.cmp(&b))
        });
        idx
    }
}
