//! Array codewords, column error patterns and download bundles.
//!
//! Both constructions store each codeword coordinate as a column of prime
//! field symbols, so these types are shared. An error touches whole columns;
//! its weight is the number of corrupted columns.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{Field, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodewordError {
    #[error("column index {index} is out of range for length {n}")]
    ColumnOutOfRange { index: usize, n: usize },
    #[error("expected {expected} columns, got {got}")]
    ColumnCount { expected: usize, got: usize },
    #[error("column {index} has {got} symbols, expected {expected}")]
    ColumnLength { index: usize, expected: usize, got: usize },
    #[error("error value for column {0} is zero")]
    ZeroErrorColumn(usize),
    #[error("symbol {value} in column {index} is not below the field modulus {q}")]
    SymbolOutOfRange { index: usize, value: u64, q: u64 },
    #[error("cannot place {weight} errors in {n} columns")]
    WeightTooLarge { weight: usize, n: usize },
}

/// An `l x n` matrix over a prime field, stored column by column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrayCodeword {
    columns: Vec<Vec<u64>>,
}

impl ArrayCodeword {
    pub fn new(columns: Vec<Vec<u64>>) -> Self {
        Self { columns }
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[u64] {
        &self.columns[i]
    }

    pub fn into_columns(self) -> Vec<Vec<u64>> {
        self.columns
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Check the shape (`n` columns of `len` symbols) and that every symbol is
    /// a residue mod `q`.
    pub fn validate(&self, n: usize, len: usize, q: u64) -> Result<(), CodewordError> {
        if self.columns.len() != n {
            return Err(CodewordError::ColumnCount { expected: n, got: self.columns.len() });
        }
        for (i, col) in self.columns.iter().enumerate() {
            if col.len() != len {
                return Err(CodewordError::ColumnLength { index: i, expected: len, got: col.len() });
            }
            if let Some(&v) = col.iter().find(|&&v| v >= q) {
                return Err(CodewordError::SymbolOutOfRange { index: i, value: v, q });
            }
        }
        Ok(())
    }

    /// Number of columns in which the two words differ.
    pub fn column_distance(&self, other: &Self) -> usize {
        self.columns.iter().zip(&other.columns).filter(|(a, b)| a != b).count()
    }
}

/// Column errors: a set of column indices, each with a nonzero additive error
/// vector.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ErrorPattern {
    support: BTreeMap<usize, Vec<u64>>,
}

impl ErrorPattern {
    pub fn new(entries: impl IntoIterator<Item = (usize, Vec<u64>)>) -> Result<Self, CodewordError> {
        let support: BTreeMap<_, _> = entries.into_iter().collect();
        if let Some((&i, _)) = support.iter().find(|(_, v)| v.iter().all(|&c| c == 0)) {
            return Err(CodewordError::ZeroErrorColumn(i));
        }
        Ok(Self { support })
    }

    /// Build from entries, silently dropping all-zero columns.
    pub fn from_differences(entries: impl IntoIterator<Item = (usize, Vec<u64>)>) -> Self {
        Self { support: entries.into_iter().filter(|(_, v)| v.iter().any(|&c| c != 0)).collect() }
    }

    /// Uniformly random nonzero column vectors on the given support.
    pub fn random_on_support<R: Rng + ?Sized>(rng: &mut R, support: &[usize], len: usize, q: u64) -> Self {
        let support = support
            .iter()
            .map(|&i| {
                let v = loop {
                    let v: Vec<u64> = (0..len).map(|_| rng.gen_range(0..q)).collect();
                    if v.iter().any(|&c| c != 0) {
                        break v;
                    }
                };
                (i, v)
            })
            .collect();
        Self { support }
    }

    /// Uniformly random support of size `weight` with uniformly random
    /// nonzero values.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, weight: usize, len: usize, q: u64) -> Result<Self, CodewordError> {
        if weight > n {
            return Err(CodewordError::WeightTooLarge { weight, n });
        }
        let mut support = rand::seq::index::sample(rng, n, weight).into_vec();
        support.sort_unstable();
        Ok(Self::random_on_support(rng, &support, len, q))
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.keys().copied()
    }

    pub fn entries(&self) -> &BTreeMap<usize, Vec<u64>> {
        &self.support
    }

    /// Add the error columnwise modulo `q`.
    pub fn apply(&self, word: &ArrayCodeword, q: u64) -> Result<ArrayCodeword, CodewordError> {
        let field = PrimeField::new(q).expect("codeword symbols live in a prime field");
        let mut columns = word.columns.clone();
        let n = columns.len();
        for (&i, e) in &self.support {
            let col = columns.get_mut(i).ok_or(CodewordError::ColumnOutOfRange { index: i, n })?;
            if col.len() != e.len() {
                return Err(CodewordError::ColumnLength { index: i, expected: col.len(), got: e.len() });
            }
            for (c, v) in col.iter_mut().zip(e) {
                *c = field.add(c, &(v % q));
            }
        }
        Ok(ArrayCodeword { columns })
    }
}

/// Symbols downloaded from every column plus the access/download tally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DownloadBundle {
    pub per_column: Vec<Vec<u64>>,
    /// Stored symbols read to produce the download.
    pub accessed: usize,
    /// Symbols transmitted to the decoder.
    pub downloaded: usize,
}

impl DownloadBundle {
    pub fn n(&self) -> usize {
        self.per_column.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn apply_adds_mod_q() {
        let w = ArrayCodeword::new(vec![vec![1, 2], vec![3, 4]]);
        let e = ErrorPattern::new([(1, vec![12, 0])]).unwrap();
        let r = e.apply(&w, 13).unwrap();
        assert_eq!(r.columns(), &[vec![1, 2], vec![2, 4]]);
        assert_eq!(r.column_distance(&w), 1);
    }

    #[test]
    fn zero_error_column_rejected() {
        assert_eq!(ErrorPattern::new([(0, vec![0, 0])]), Err(CodewordError::ZeroErrorColumn(0)));
        assert_eq!(ErrorPattern::from_differences([(0, vec![0, 0]), (2, vec![1])]).weight(), 1);
    }

    #[test]
    fn apply_rejects_bad_shapes() {
        let w = ArrayCodeword::new(vec![vec![1, 2]]);
        let e = ErrorPattern::new([(3, vec![1, 1])]).unwrap();
        assert!(matches!(e.apply(&w, 13), Err(CodewordError::ColumnOutOfRange { .. })));
        let e = ErrorPattern::new([(0, vec![1])]).unwrap();
        assert!(matches!(e.apply(&w, 13), Err(CodewordError::ColumnLength { .. })));
    }

    #[test]
    fn random_patterns_have_exact_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for w in 0..=5 {
            let e = ErrorPattern::random(&mut rng, 5, w, 2, 2).unwrap();
            assert_eq!(e.weight(), w);
            assert!(e.entries().values().all(|v| v.iter().any(|&c| c != 0)));
        }
        assert!(ErrorPattern::random(&mut rng, 5, 6, 2, 2).is_err());
    }

    #[test]
    fn validate_shape() {
        let w = ArrayCodeword::new(vec![vec![1, 2], vec![3, 13]]);
        assert!(w.validate(2, 2, 17).is_ok());
        assert!(matches!(w.validate(2, 2, 13), Err(CodewordError::SymbolOutOfRange { .. })));
        assert!(w.validate(3, 2, 17).is_err());
        assert!(w.validate(2, 3, 17).is_err());
    }
}
