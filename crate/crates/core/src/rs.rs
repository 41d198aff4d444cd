//! Reed-Solomon codes `RS_F(n, k, points)`: encoding by evaluation,
//! half-distance unique decoding, erasure decoding by interpolation, and an
//! exhaustive nearest-codeword search used as a test oracle.

use std::collections::HashSet;

use thiserror::Error;

use crate::fields::Field;
use crate::poly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsError {
    #[error("evaluation points are not distinct")]
    DuplicatePoint,
    #[error("evaluation point {0} is not a field element")]
    ForeignPoint(usize),
    #[error("invalid dimension k={k} for length n={n}")]
    BadDimension { k: usize, n: usize },
    #[error("message polynomial has degree {degree}, code dimension is {k}")]
    DegreeTooHigh { degree: usize, k: usize },
    #[error("expected {expected} symbols, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("position {0} is out of range")]
    PositionOutOfRange(usize),
    #[error("points are not consistent with a single polynomial of degree < {k}")]
    Inconsistent { k: usize },
    #[error("no codeword within distance {radius} of the received word")]
    DecodingFailure { radius: usize },
    #[error("enumeration of {needed} candidates exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Result of a successful unique decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueDecoding<E> {
    pub message: Poly<E>,
    /// Positions where the received word differs from the decoded codeword,
    /// ascending.
    pub error_positions: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RsCode<F: Field> {
    field: F,
    k: usize,
    points: Vec<F::Elem>,
}

impl<F: Field> RsCode<F> {
    pub fn new(field: F, k: usize, points: Vec<F::Elem>) -> Result<Self, RsError> {
        let n = points.len();
        if k == 0 || k > n {
            return Err(RsError::BadDimension { k, n });
        }
        if let Some(i) = points.iter().position(|p| !field.contains(p)) {
            return Err(RsError::ForeignPoint(i));
        }
        let mut seen = HashSet::with_capacity(n);
        if !points.iter().all(|p| seen.insert(p)) {
            return Err(RsError::DuplicatePoint);
        }
        Ok(Self { field, k, points })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[F::Elem] {
        &self.points
    }

    /// `floor((n - k) / 2)`.
    pub fn radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    pub fn encode(&self, h: &Poly<F::Elem>) -> Result<Vec<F::Elem>, RsError> {
        if let Some(d) = h.degree().filter(|&d| d >= self.k) {
            return Err(RsError::DegreeTooHigh { degree: d, k: self.k });
        }
        Ok(self.points.iter().map(|x| h.eval(x, &self.field)).collect())
    }

    /// Unique decoding up to `floor((n - k) / 2)` errors by Gao's
    /// extended-Euclid method.
    ///
    /// The candidate is re-encoded and rejected when it is farther than the
    /// radius from `received`, so a returned message is always within radius.
    pub fn decode_unique(&self, received: &[F::Elem]) -> Result<UniqueDecoding<F::Elem>, RsError> {
        let f = &self.field;
        let (n, k) = (self.n(), self.k);
        if received.len() != n {
            return Err(RsError::LengthMismatch { expected: n, got: received.len() });
        }
        let pts: Vec<_> = self.points.iter().cloned().zip(received.iter().cloned()).collect();
        let g1 = Poly::interpolate(f, &pts)?;
        let g0 = Poly::from_roots(f, &self.points);

        // Run the Euclidean remainder sequence on (g0, g1) until the
        // remainder degree drops below (n + k) / 2, tracking the cofactor of g1.
        let below = |p: &Poly<F::Elem>| p.degree().is_none_or(|d| 2 * d < n + k);
        let (mut r_prev, mut r_cur) = (g0, g1);
        let (mut v_prev, mut v_cur) = (Poly::zero(), Poly::constant(f, f.one()));
        while !below(&r_cur) {
            let (quot, rem) = r_prev.div_rem(&r_cur, f)?;
            let v_next = v_prev.sub(&quot.mul(&v_cur, f), f);
            r_prev = std::mem::replace(&mut r_cur, rem);
            v_prev = std::mem::replace(&mut v_cur, v_next);
        }
        let (message, rem) = r_cur.div_rem(&v_cur, f)?;
        let radius = self.radius();
        if !rem.is_zero() || !message.degree_below(k) {
            return Err(RsError::DecodingFailure { radius });
        }
        let error_positions: Vec<usize> = self
            .points
            .iter()
            .zip(received)
            .enumerate()
            .filter(|(_, (x, y))| message.eval(x, f) != **y)
            .map(|(i, _)| i)
            .collect();
        if error_positions.len() > radius {
            return Err(RsError::DecodingFailure { radius });
        }
        Ok(UniqueDecoding { message, error_positions })
    }

    /// Recover the message from `(position, value)` pairs: interpolate on the
    /// first `k` pairs and verify the rest.
    pub fn erasure_decode(&self, known: &[(usize, F::Elem)]) -> Result<Poly<F::Elem>, RsError> {
        let mut pairs = Vec::with_capacity(known.len());
        for (pos, v) in known {
            let x = self.points.get(*pos).ok_or(RsError::PositionOutOfRange(*pos))?;
            pairs.push((x.clone(), v.clone()));
        }
        interpolate_verified(&self.field, self.k, &pairs)
    }

    /// Every codeword within Hamming distance `radius` of `received`, found
    /// by enumerating all `|F|^k` messages. Sorted by distance, ties in
    /// lexicographic order of the coefficient vectors `(a_0, ..., a_{k-1})`.
    pub fn nearest_codeword_bruteforce(
        &self,
        received: &[F::Elem],
        radius: usize,
        budget: u64,
    ) -> Result<Vec<(Poly<F::Elem>, usize)>, RsError> {
        let f = &self.field;
        if received.len() != self.n() {
            return Err(RsError::LengthMismatch { expected: self.n(), got: received.len() });
        }
        let mut out = Vec::new();
        for_each_message(f, self.k, budget, |coeffs| {
            let h = Poly::new(f, coeffs.to_vec());
            let dist = self.points.iter().zip(received).filter(|(x, y)| h.eval(x, f) != **y).count();
            if dist <= radius {
                out.push((h, dist));
            }
        })?;
        out.sort_by_key(|(_, d)| *d);
        Ok(out)
    }
}

/// Interpolate through the first `k` pairs and check that every remaining
/// pair lies on the result.
pub fn interpolate_verified<F: Field>(field: &F, k: usize, pairs: &[(F::Elem, F::Elem)]) -> Result<Poly<F::Elem>, RsError> {
    if pairs.len() < k {
        return Err(RsError::TooFewPoints { need: k, got: pairs.len() });
    }
    let mut seen = HashSet::with_capacity(pairs.len());
    if !pairs.iter().all(|(x, _)| seen.insert(x)) {
        return Err(RsError::DuplicatePoint);
    }
    let h = Poly::interpolate(field, &pairs[..k])?;
    if pairs[k..].iter().all(|(x, y)| h.eval(x, field) == *y) {
        Ok(h)
    } else {
        Err(RsError::Inconsistent { k })
    }
}

/// Visit every length-`k` coefficient vector over `field` in lexicographic
/// order of canonical indices, after checking `|F|^k <= budget`.
pub fn for_each_message<F: Field>(
    field: &F,
    k: usize,
    budget: u64,
    mut visit: impl FnMut(&[F::Elem]),
) -> Result<(), RsError> {
    let size = field.size() as u128;
    let needed = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(size)).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(RsError::BudgetExceeded { needed, budget });
    }
    let mut digits = vec![0u64; k];
    let mut coeffs: Vec<F::Elem> = vec![field.zero(); k];
    loop {
        visit(&coeffs);
        // odometer, last coordinate fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < field.size() {
                coeffs[i] = field.from_index(digits[i]).expect("index in range");
                break;
            }
            digits[i] = 0;
            coeffs[i] = field.zero();
        }
    }
}
