//! Folded Reed-Solomon codes with prefix download.
//!
//! `FRS(n, k, l)` over a prime field with primitive element `gamma` stores
//! `C_i = (h(gamma^{(i-1)l}), ..., h(gamma^{il-1}))` in column `i`, for
//! `deg h < kl`. Downloading the first `alpha*l` symbols of every column
//! yields the punctured code `C^alpha`, an `(n, k/alpha, alpha*l)` MDS array
//! code, which is decoded here by trial erasure of column subsets.
//!
//! The same machinery works for any `(nl, kl)` Reed-Solomon code whose
//! coordinates are bundled `l` at a time ([`BundledScheme`]); FRS is the
//! special case with consecutive powers of `gamma` as evaluation points.

use std::collections::HashSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::codeword::{ArrayCodeword, CodewordError, DownloadBundle};
use crate::combinatorics::{binomial, Combinations};
use crate::fields::{is_prime, Field, FieldError, PrimeField};
use crate::poly::Poly;
use crate::rational::{to_fraction_string, Rational};
use crate::rs::{for_each_message, interpolate_verified, RsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrsError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("parameters must be positive (n={n}, k={k}, l={l})")]
    ZeroParameter { n: usize, k: usize, l: usize },
    #[error("field size {p} must exceed n*l = {nl}")]
    FieldTooSmall { p: u64, nl: usize },
    #[error("{gamma} is not a primitive element of GF({p})")]
    NotPrimitive { gamma: u64, p: u64 },
    #[error("alpha = {alpha} must lie in (0, 1]")]
    AlphaOutOfRange { alpha: String },
    #[error("alpha*l = {alpha}*{l} is not an integer")]
    AlphaNotIntegral { alpha: String, l: usize },
    #[error("k/alpha = {k}/({alpha}) is not an integer")]
    KOverAlphaNotIntegral { k: usize, alpha: String },
    #[error("k/alpha = {value} exceeds n = {n}")]
    KOverAlphaExceedsN { value: usize, n: usize },
    #[error("evaluation points are not distinct")]
    DuplicatePoint,
    #[error("expected {expected} evaluation points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("length {len} is not divisible by l={l}")]
    LengthNotDivisible { len: usize, l: usize },
    #[error("message polynomial has degree {degree}, limit is {limit}")]
    DegreeTooHigh { degree: usize, limit: usize },
    #[error(transparent)]
    Codeword(#[from] CodewordError),
    #[error("no message within {radius} column errors of the received word")]
    DecodingFailure { radius: usize },
    #[error("{needed} candidates exceed the enumeration budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Rs(#[from] RsError),
}

/// Successful trial decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialDecoding {
    pub message: Poly<u64>,
    /// Columns of the input that disagree with the decoded word, ascending.
    pub corrected_columns: Vec<usize>,
    /// Number of erasure subsets tried, including the accepted one.
    pub trials: usize,
}

/// An array code whose column `i` holds evaluations of one polynomial of
/// degree `< dim` at the point set `column_points[i]`. All points are
/// distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyArrayCode {
    field: PrimeField,
    column_points: Vec<Vec<u64>>,
    dim: usize,
}

impl PolyArrayCode {
    pub fn new(field: PrimeField, column_points: Vec<Vec<u64>>, dim: usize) -> Result<Self, FrsError> {
        let mut seen = HashSet::new();
        for &x in column_points.iter().flatten() {
            field.elem(x)?;
            if !seen.insert(x) {
                return Err(FrsError::DuplicatePoint);
            }
        }
        Ok(Self { field, column_points, dim })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.column_points.len()
    }

    /// Polynomial degree bound: messages have `deg h < dim`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column_points(&self) -> &[Vec<u64>] {
        &self.column_points
    }

    pub fn encode(&self, h: &Poly<u64>) -> Result<ArrayCodeword, FrsError> {
        if let Some(d) = h.degree().filter(|&d| d >= self.dim) {
            return Err(FrsError::DegreeTooHigh { degree: d, limit: self.dim - 1 });
        }
        Ok(self.evaluate(h))
    }

    fn evaluate(&self, h: &Poly<u64>) -> ArrayCodeword {
        ArrayCodeword::new(
            self.column_points
                .iter()
                .map(|pts| pts.iter().map(|x| h.eval(x, &self.field)).collect())
                .collect(),
        )
    }

    fn check_word(&self, word: &ArrayCodeword) -> Result<(), FrsError> {
        if word.n() != self.n() {
            return Err(CodewordError::ColumnCount { expected: self.n(), got: word.n() }.into());
        }
        for (i, (col, pts)) in word.columns().iter().zip(&self.column_points).enumerate() {
            if col.len() != pts.len() {
                return Err(CodewordError::ColumnLength { index: i, expected: pts.len(), got: col.len() }.into());
            }
            if let Some(&v) = col.iter().find(|&&v| v >= self.field.modulus()) {
                return Err(CodewordError::SymbolOutOfRange { index: i, value: v, q: self.field.modulus() }.into());
            }
        }
        Ok(())
    }

    /// Erase every column subset of size `0, 1, ..., max_errors` in turn
    /// (lexicographic within a size), interpolate from the first `dim`
    /// surviving evaluations and accept the first polynomial consistent with
    /// all surviving evaluations.
    ///
    /// When the code has column distance greater than `2 * max_errors`, the
    /// accepted polynomial is the unique one within `max_errors` column
    /// errors. Exponential in `max_errors`; the number of subsets is checked
    /// against `budget` up front.
    pub fn decode_trial(&self, word: &ArrayCodeword, max_errors: usize, budget: u64) -> Result<TrialDecoding, FrsError> {
        self.check_word(word)?;
        let n = self.n();
        let max_errors = max_errors.min(n);
        let needed: u128 = (0..=max_errors).map(|t| binomial(n, t)).sum();
        if needed > budget as u128 {
            return Err(FrsError::BudgetExceeded { needed, budget });
        }
        let mut trials = 0;
        for t in 0..=max_errors {
            for erased in Combinations::new(n, t) {
                trials += 1;
                let mut skip = erased.iter().peekable();
                let mut pairs = Vec::new();
                for (i, (pts, col)) in self.column_points.iter().zip(word.columns()).enumerate() {
                    if skip.peek() == Some(&&i) {
                        skip.next();
                        continue;
                    }
                    pairs.extend(pts.iter().copied().zip(col.iter().copied()));
                }
                match interpolate_verified(&self.field, self.dim, &pairs) {
                    Ok(message) => {
                        let corrected_columns = self
                            .evaluate(&message)
                            .columns()
                            .iter()
                            .zip(word.columns())
                            .enumerate()
                            .filter(|(_, (a, b))| a != b)
                            .map(|(i, _)| i)
                            .collect();
                        return Ok(TrialDecoding { message, corrected_columns, trials });
                    }
                    Err(RsError::Inconsistent { .. }) | Err(RsError::TooFewPoints { .. }) => continue,
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Err(FrsError::DecodingFailure { radius: max_errors })
    }

    /// Every message whose codeword lies within `radius` column errors of
    /// `word`, by enumerating all `p^dim` messages (lexicographic order of
    /// coefficient vectors).
    pub fn list_decode_bruteforce(&self, word: &ArrayCodeword, radius: usize, budget: u64) -> Result<Vec<Poly<u64>>, FrsError> {
        self.check_word(word)?;
        let mut out = Vec::new();
        for_each_message(&self.field, self.dim, budget, |coeffs| {
            let h = Poly::new(&self.field, coeffs.to_vec());
            let mut dist = 0;
            for (pts, col) in self.column_points.iter().zip(word.columns()) {
                if pts.iter().zip(col).any(|(x, y)| h.eval(x, &self.field) != *y) {
                    dist += 1;
                    if dist > radius {
                        return;
                    }
                }
            }
            out.push(h);
        })
        .map_err(|e| match e {
            RsError::BudgetExceeded { needed, budget } => FrsError::BudgetExceeded { needed, budget },
            other => other.into(),
        })?;
        Ok(out)
    }
}

/// Split a scalar word into consecutive chunks of `l` symbols.
pub fn bundle_mds(scalar: &[u64], l: usize) -> Result<ArrayCodeword, FrsError> {
    if l == 0 || scalar.len() % l != 0 {
        return Err(FrsError::LengthNotDivisible { len: scalar.len(), l });
    }
    Ok(ArrayCodeword::new(scalar.chunks(l).map(<[u64]>::to_vec).collect()))
}

/// Inverse of [`bundle_mds`].
pub fn unbundle_mds(word: &ArrayCodeword) -> Vec<u64> {
    word.columns().iter().flatten().copied().collect()
}

/// Validated download fraction for an `(n, k, l)` array code.
fn check_alpha(n: usize, k: usize, l: usize, alpha: Rational) -> Result<(usize, usize), FrsError> {
    let shown = to_fraction_string(&alpha);
    if alpha <= Rational::zero() || alpha > Rational::one() {
        return Err(FrsError::AlphaOutOfRange { alpha: shown });
    }
    let prefix = alpha * Rational::from_integer(l as i64);
    if !prefix.is_integer() {
        return Err(FrsError::AlphaNotIntegral { alpha: shown, l });
    }
    let k_over_alpha = Rational::from_integer(k as i64) / alpha;
    if !k_over_alpha.is_integer() {
        return Err(FrsError::KOverAlphaNotIntegral { k, alpha: shown });
    }
    let k_over_alpha = k_over_alpha.to_integer() as usize;
    if k_over_alpha > n {
        return Err(FrsError::KOverAlphaExceedsN { value: k_over_alpha, n });
    }
    Ok((prefix.to_integer() as usize, k_over_alpha))
}

/// An `(nl, kl)` Reed-Solomon code bundled into `n` columns of `l` symbols,
/// read through an `alpha*l`-symbol prefix of every column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundledScheme {
    n: usize,
    k: usize,
    l: usize,
    alpha: Rational,
    prefix: usize,
    k_over_alpha: usize,
    full: PolyArrayCode,
    punctured: PolyArrayCode,
}

impl BundledScheme {
    /// `points` are the `nl` scalar evaluation points; column `i` gets
    /// `points[i*l .. (i+1)*l]`.
    pub fn new(field: PrimeField, points: Vec<u64>, n: usize, k: usize, l: usize, alpha: Rational) -> Result<Self, FrsError> {
        if n == 0 || k == 0 || l == 0 {
            return Err(FrsError::ZeroParameter { n, k, l });
        }
        if points.len() != n * l {
            return Err(FrsError::PointCount { expected: n * l, got: points.len() });
        }
        let (prefix, k_over_alpha) = check_alpha(n, k, l, alpha)?;
        let columns: Vec<Vec<u64>> = points.chunks(l).map(<[u64]>::to_vec).collect();
        let full = PolyArrayCode::new(field, columns.clone(), k * l)?;
        let punctured = PolyArrayCode::new(field, columns.into_iter().map(|c| c[..prefix].to_vec()).collect(), k * l)?;
        Ok(Self { n, k, l, alpha, prefix, k_over_alpha, full, punctured })
    }

    pub fn field(&self) -> &PrimeField {
        self.full.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    /// Symbols downloaded per column, `alpha*l`.
    pub fn prefix_len(&self) -> usize {
        self.prefix
    }

    /// Column count `k/alpha` that determines a punctured codeword.
    pub fn k_over_alpha(&self) -> usize {
        self.k_over_alpha
    }

    /// `floor((n - k/alpha) / 2)`.
    pub fn radius(&self) -> usize {
        (self.n - self.k_over_alpha) / 2
    }

    pub fn full_code(&self) -> &PolyArrayCode {
        &self.full
    }

    pub fn punctured_code(&self) -> &PolyArrayCode {
        &self.punctured
    }

    pub fn encode(&self, h: &Poly<u64>) -> Result<ArrayCodeword, FrsError> {
        self.full.encode(h)
    }

    /// Coefficients `a_0 .. a_{kl-1}` as the message.
    pub fn encode_message(&self, coeffs: &[u64]) -> Result<ArrayCodeword, FrsError> {
        let dim = self.k * self.l;
        if coeffs.len() != dim {
            return Err(RsError::LengthMismatch { expected: dim, got: coeffs.len() }.into());
        }
        for &c in coeffs {
            self.field().elem(c)?;
        }
        self.encode(&Poly::new(self.field(), coeffs.to_vec()))
    }

    /// The first `alpha*l` symbols of a stored column.
    pub fn download_prefix(&self, column: &[u64]) -> Result<Vec<u64>, FrsError> {
        if column.len() != self.l {
            return Err(CodewordError::ColumnLength { index: 0, expected: self.l, got: column.len() }.into());
        }
        Ok(column[..self.prefix].to_vec())
    }

    /// Prefix download of every column; access equals download.
    pub fn download_all(&self, word: &ArrayCodeword) -> Result<DownloadBundle, FrsError> {
        word.validate(self.n, self.l, self.field().modulus())?;
        let per_column = word.columns().iter().map(|c| c[..self.prefix].to_vec()).collect();
        let total = self.n * self.prefix;
        Ok(DownloadBundle { per_column, accessed: total, downloaded: total })
    }

    /// Trial decoding of the punctured word up to [`radius`](Self::radius)
    /// column errors.
    pub fn decode_trial(&self, word: &ArrayCodeword, budget: u64) -> Result<TrialDecoding, FrsError> {
        self.punctured.decode_trial(word, self.radius(), budget)
    }

    pub fn decode(&self, bundle: &DownloadBundle, budget: u64) -> Result<TrialDecoding, FrsError> {
        self.decode_trial(&ArrayCodeword::new(bundle.per_column.clone()), budget)
    }

    pub fn list_decode_bruteforce(&self, word: &ArrayCodeword, radius: usize, budget: u64) -> Result<Vec<Poly<u64>>, FrsError> {
        self.punctured.list_decode_bruteforce(word, radius, budget)
    }
}

/// Parameters for [`FrsConfig::new`]; `p` and `gamma` default to the
/// smallest prime above `n*l` and its smallest primitive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrsParams {
    pub p: Option<u64>,
    pub gamma: Option<u64>,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub alpha: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrsConfig {
    gamma: u64,
    scheme: BundledScheme,
}

impl FrsConfig {
    pub fn new(params: FrsParams) -> Result<Self, FrsError> {
        let FrsParams { p, gamma, n, k, l, alpha } = params;
        if n == 0 || k == 0 || l == 0 {
            return Err(FrsError::ZeroParameter { n, k, l });
        }
        let nl = n * l;
        let p = match p {
            Some(p) => p,
            None => (nl as u64 + 1..).find(|&c| is_prime(c)).expect("primes are unbounded"),
        };
        let field = PrimeField::new(p)?;
        if p <= nl as u64 {
            return Err(FrsError::FieldTooSmall { p, nl });
        }
        let gamma = match gamma {
            Some(g) if field.is_primitive(g) => g,
            Some(g) => return Err(FrsError::NotPrimitive { gamma: g, p }),
            None => field.primitive_root(),
        };
        let points = (0..nl as u64).map(|e| field.pow(&gamma, e)).collect();
        let scheme = BundledScheme::new(field, points, n, k, l, alpha)?;
        Ok(Self { gamma, scheme })
    }

    /// Same code (field, `gamma`, encoder), read with another fraction.
    pub fn with_alpha(&self, alpha: Rational) -> Result<Self, FrsError> {
        Self::new(FrsParams {
            p: Some(self.p()),
            gamma: Some(self.gamma),
            n: self.n(),
            k: self.k(),
            l: self.l(),
            alpha,
        })
    }

    pub fn scheme(&self) -> &BundledScheme {
        &self.scheme
    }

    pub fn field(&self) -> &PrimeField {
        self.scheme.field()
    }

    pub fn p(&self) -> u64 {
        self.field().modulus()
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    pub fn n(&self) -> usize {
        self.scheme.n()
    }

    pub fn k(&self) -> usize {
        self.scheme.k()
    }

    pub fn l(&self) -> usize {
        self.scheme.l()
    }

    pub fn alpha(&self) -> Rational {
        self.scheme.alpha()
    }

    pub fn radius(&self) -> usize {
        self.scheme.radius()
    }

    pub fn encode(&self, h: &Poly<u64>) -> Result<ArrayCodeword, FrsError> {
        self.scheme.encode(h)
    }

    pub fn encode_message(&self, coeffs: &[u64]) -> Result<ArrayCodeword, FrsError> {
        self.scheme.encode_message(coeffs)
    }

    pub fn download_prefix(&self, column: &[u64]) -> Result<Vec<u64>, FrsError> {
        self.scheme.download_prefix(column)
    }

    pub fn download_all(&self, word: &ArrayCodeword) -> Result<DownloadBundle, FrsError> {
        self.scheme.download_all(word)
    }

    pub fn decode_trial(&self, word: &ArrayCodeword, budget: u64) -> Result<TrialDecoding, FrsError> {
        self.scheme.decode_trial(word, budget)
    }

    pub fn decode(&self, bundle: &DownloadBundle, budget: u64) -> Result<TrialDecoding, FrsError> {
        self.scheme.decode(bundle, budget)
    }

    pub fn list_decode_bruteforce(&self, word: &ArrayCodeword, radius: usize, budget: u64) -> Result<Vec<Poly<u64>>, FrsError> {
        self.scheme.list_decode_bruteforce(word, radius, budget)
    }
}
