//! Fractional decoding of a Reed-Solomon code over `F = GF(q^l)` whose
//! evaluation points lie in the base field `B = GF(q)`.
//!
//! Each codeword symbol `c_i = h(omega_i)` is stored as the column of its `l`
//! trace projections `tr(zeta_u c_i)`. The decoder downloads `m` base-field
//! symbols per column,
//!
//! ```text
//! d_i^(j) = tr(zeta_{l-m+j} c_i) p_j(omega_i)^(l-m) + sum_{u<l-m} tr(zeta_u c_i) p_j(omega_i)^u
//! ```
//!
//! where `p_j` is the annihilator of the set `A_j`. The downloaded rows are
//! codewords of `RS_B(n, lk/m, Omega)`, so up to `floor((n - lk/m) / 2)`
//! column errors can be removed row by row; the projected message polynomials
//! `h_0, ..., h_{l-1}` are then peeled out of the decoded rows one at a time.

use thiserror::Error;

use crate::codeword::{ArrayCodeword, CodewordError, DownloadBundle, ErrorPattern};
use crate::fields::{ExtElem, ExtField, Field, FieldError, PrimeField, TraceDualBasis};
use crate::poly::Poly;
use crate::rs::{RsCode, RsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TsError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("parameters must be positive (n={n}, k={k}, l={l}, m={m})")]
    ZeroParameter { n: usize, k: usize, l: usize, m: usize },
    #[error("base field GF({q}) is smaller than the code length n={n}")]
    BaseFieldTooSmall { q: u64, n: usize },
    #[error("m={m} does not divide k={k}")]
    MDoesNotDivideK { m: usize, k: usize },
    #[error("m={m} exceeds l={l}")]
    MExceedsL { m: usize, l: usize },
    #[error("l*k/m = {needed} exceeds n={n}, so the download fraction m/l is below k/n")]
    AlphaBelowRate { needed: usize, n: usize },
    #[error("invalid evaluation points: {0}")]
    BadOmega(String),
    #[error("invalid annihilator sets: {0}")]
    BadSets(String),
    #[error("message has {got} symbols, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error(transparent)]
    Codeword(#[from] CodewordError),
    #[error("decoding of download row {row} failed: {source}")]
    InnerDecode { row: usize, source: RsError },
    #[error("peeling step {step} left a nonzero remainder or oversized quotient for set {set}")]
    InternalInconsistency { step: usize, set: usize },
    #[error(transparent)]
    Rs(#[from] RsError),
}

/// Optional replacements for the deterministic defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TsOverrides {
    /// `n` distinct residues of `B`.
    pub omega: Option<Vec<u64>>,
    /// `m` pairwise disjoint sets of `k/m` residues each.
    pub sets: Option<Vec<Vec<u64>>>,
    /// Monic irreducible of degree `l`, `l + 1` coefficients low degree first.
    pub modulus: Option<Vec<u64>>,
    /// Basis of `F` over `B` as `l` canonical integers.
    pub zeta: Option<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct TsConfig {
    field: ExtField,
    n: usize,
    k: usize,
    m: usize,
    omega: Vec<u64>,
    sets: Vec<Vec<u64>>,
    annihilators: Vec<Poly<u64>>,
    basis: TraceDualBasis,
    /// `annihilator_at[j][i] = p_j(omega_i)`.
    annihilator_at: Vec<Vec<u64>>,
    /// `RS_B(n, lk/m, Omega)`, the code each downloaded row belongs to.
    row_code: RsCode<PrimeField>,
    /// `RS_F(n, k, Omega)`.
    code: RsCode<ExtField>,
}

/// Output of [`TsConfig::decode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsDecoded {
    pub message: Vec<ExtElem>,
    pub codeword: ArrayCodeword,
    /// Columns flagged as erroneous by any row decoder, ascending.
    pub error_columns: Vec<usize>,
}

/// Output of [`TsConfig::pipeline`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsPipeline {
    pub decoded: Vec<ExtElem>,
    pub bundle: DownloadBundle,
}

impl TsConfig {
    pub fn new(q: u64, n: usize, k: usize, l: usize, m: usize, overrides: TsOverrides) -> Result<Self, TsError> {
        if n == 0 || k == 0 || l == 0 || m == 0 {
            return Err(TsError::ZeroParameter { n, k, l, m });
        }
        let base = PrimeField::new(q)?;
        if m > l {
            return Err(TsError::MExceedsL { m, l });
        }
        if k % m != 0 {
            return Err(TsError::MDoesNotDivideK { m, k });
        }
        if (q as u128) < n as u128 {
            return Err(TsError::BaseFieldTooSmall { q, n });
        }
        let row_dim = l * k / m;
        if row_dim > n {
            return Err(TsError::AlphaBelowRate { needed: row_dim, n });
        }

        let field = match overrides.modulus {
            Some(modulus) => {
                if modulus.len() != l + 1 {
                    return Err(FieldError::BadModulus { expected: l }.into());
                }
                ExtField::with_modulus(base, modulus)?
            }
            None => ExtField::new(base, l)?,
        };
        let basis = match overrides.zeta {
            Some(ints) => {
                let zeta = ints
                    .iter()
                    .map(|&v| {
                        field.from_index(v).ok_or_else(|| FieldError::ForeignElement {
                            elem: v.to_string(),
                            field: field.describe(),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                TraceDualBasis::new(&field, zeta)?
            }
            None => TraceDualBasis::polynomial(&field),
        };

        let omega = overrides.omega.unwrap_or_else(|| (0..n as u64).collect());
        if omega.len() != n {
            return Err(TsError::BadOmega(format!("expected {n} points, got {}", omega.len())));
        }
        if let Some(&w) = omega.iter().find(|&&w| w >= q) {
            return Err(TsError::BadOmega(format!("{w} is not a residue mod {q}")));
        }

        let block = k / m;
        let sets = overrides
            .sets
            .unwrap_or_else(|| (0..m).map(|j| ((j * block) as u64..((j + 1) * block) as u64).collect()).collect());
        validate_sets(&sets, m, block, q)?;

        let annihilators: Vec<Poly<u64>> = sets.iter().map(|a| Poly::from_roots(&base, a)).collect();
        let annihilator_at = annihilators
            .iter()
            .map(|p| omega.iter().map(|w| p.eval(w, &base)).collect())
            .collect();
        let row_code = RsCode::new(base, row_dim, omega.clone()).map_err(|e| TsError::BadOmega(e.to_string()))?;
        let ext_points = omega.iter().map(|&w| field.from_base(w)).collect();
        let code = RsCode::new(field.clone(), k, ext_points)?;

        Ok(Self { field, n, k, m, omega, sets, annihilators, basis, annihilator_at, row_code, code })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn base(&self) -> &PrimeField {
        self.field.base()
    }

    pub fn q(&self) -> u64 {
        self.base().modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.field.degree()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn omega(&self) -> &[u64] {
        &self.omega
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }

    pub fn annihilators(&self) -> &[Poly<u64>] {
        &self.annihilators
    }

    pub fn basis(&self) -> &TraceDualBasis {
        &self.basis
    }

    pub fn code(&self) -> &RsCode<ExtField> {
        &self.code
    }

    /// Dimension `lk/m` of the code each downloaded row belongs to.
    pub fn row_dimension(&self) -> usize {
        self.l() * self.k / self.m
    }

    /// `floor((n - lk/m) / 2)`, the number of column errors the decoder
    /// corrects.
    pub fn radius(&self) -> usize {
        (self.n - self.row_dimension()) / 2
    }

    /// Symbols downloaded per column.
    pub fn download_per_column(&self) -> usize {
        self.m
    }

    pub fn message_poly(&self, message: &[ExtElem]) -> Result<Poly<ExtElem>, TsError> {
        if message.len() != self.k {
            return Err(TsError::MessageLength { expected: self.k, got: message.len() });
        }
        if let Some(bad) = message.iter().find(|e| !self.field.contains(e)) {
            return Err(FieldError::ForeignElement { elem: bad.to_string(), field: self.field.describe() }.into());
        }
        Ok(Poly::new(&self.field, message.to_vec()))
    }

    /// Column `i` holds the projections of `h(omega_i)` on `zeta`.
    pub fn encode(&self, message: &[ExtElem]) -> Result<ArrayCodeword, TsError> {
        let h = self.message_poly(message)?;
        Ok(self.encode_poly(&h)?)
    }

    pub fn encode_poly(&self, h: &Poly<ExtElem>) -> Result<ArrayCodeword, RsError> {
        let symbols = self.code.encode(h)?;
        Ok(ArrayCodeword::new(symbols.iter().map(|c| self.basis.project(&self.field, c)).collect()))
    }

    /// `h_j(x) = sum_i tr(zeta_j a_i) x^i` for `j < l`.
    pub fn project_polys(&self, h: &Poly<ExtElem>) -> Vec<Poly<u64>> {
        let l = self.l();
        let projected: Vec<Vec<u64>> = h.coeffs().iter().map(|a| self.basis.project(&self.field, a)).collect();
        (0..l)
            .map(|j| Poly::new(self.base(), projected.iter().map(|p| p[j]).collect()))
            .collect()
    }

    /// Rebuild `h` from its projections `h_0, ..., h_{l-1}`.
    pub fn assemble(&self, projections: &[Poly<u64>]) -> Result<Poly<ExtElem>, TsError> {
        let len = projections.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let coeffs = (0..len)
            .map(|i| {
                let proj: Vec<u64> = projections.iter().map(|p| p.coeff(self.base(), i)).collect();
                self.basis.reconstruct(&self.field, &proj)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(&self.field, coeffs))
    }

    /// The `m` symbols downloaded from stored column `i`, a `B`-linear map of
    /// the stored projections.
    pub fn download(&self, column: &[u64], i: usize) -> Result<Vec<u64>, TsError> {
        let l = self.l();
        if column.len() != l {
            return Err(CodewordError::ColumnLength { index: i, expected: l, got: column.len() }.into());
        }
        if i >= self.n {
            return Err(CodewordError::ColumnOutOfRange { index: i, n: self.n }.into());
        }
        let b = self.base();
        let free = l - self.m;
        Ok((0..self.m)
            .map(|j| {
                let p = self.annihilator_at[j][i];
                let mut acc = 0;
                let mut pow = 1;
                for &sym in &column[..free] {
                    acc = b.add(&acc, &b.mul(&sym, &pow));
                    pow = b.mul(&pow, &p);
                }
                b.add(&acc, &b.mul(&column[free + j], &pow))
            })
            .collect())
    }

    pub fn download_all(&self, word: &ArrayCodeword) -> Result<DownloadBundle, TsError> {
        word.validate(self.n, self.l(), self.q())?;
        let per_column = word
            .columns()
            .iter()
            .enumerate()
            .map(|(i, c)| self.download(c, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DownloadBundle { per_column, accessed: self.n * self.l(), downloaded: self.n * self.m })
    }

    /// Decode the `m` rows, then peel the projected polynomials out of them.
    pub fn decode(&self, bundle: &DownloadBundle) -> Result<TsDecoded, TsError> {
        let b = self.base();
        ArrayCodeword::new(bundle.per_column.clone()).validate(self.n, self.m, self.q())?;

        let mut rows = Vec::with_capacity(self.m);
        let mut error_columns = Vec::new();
        for j in 0..self.m {
            let word: Vec<u64> = bundle.per_column.iter().map(|col| col[j]).collect();
            let dec = self.row_code.decode_unique(&word).map_err(|source| TsError::InnerDecode { row: j, source })?;
            error_columns.extend(dec.error_positions);
            rows.push(dec.message);
        }
        error_columns.sort_unstable();
        error_columns.dedup();

        let l = self.l();
        let free = l - self.m;
        let mut projections = Vec::with_capacity(l);
        for step in 0..free {
            // On A_j every peeled row agrees with h_step.
            let points: Vec<(u64, u64)> = self
                .sets
                .iter()
                .zip(&rows)
                .flat_map(|(set, row)| set.iter().map(move |w| (*w, row.eval(w, b))))
                .collect();
            let h_step = Poly::interpolate(b, &points).map_err(RsError::from)?;
            for (set, (row, p)) in rows.iter_mut().zip(&self.annihilators).enumerate() {
                let (quot, rem) = row.sub(&h_step, b).div_rem(p, b).map_err(RsError::from)?;
                if !rem.is_zero() {
                    return Err(TsError::InternalInconsistency { step, set });
                }
                *row = quot;
            }
            projections.push(h_step);
        }
        // What remains of row j is h_{l-m+j}.
        for (set, row) in rows.into_iter().enumerate() {
            if !row.degree_below(self.k) {
                return Err(TsError::InternalInconsistency { step: free, set });
            }
            projections.push(row);
        }

        let h = self.assemble(&projections)?;
        let message = h.padded(&self.field, self.k);
        let codeword = self.encode_poly(&h)?;
        Ok(TsDecoded { message, codeword, error_columns })
    }

    /// Encode, corrupt, download and decode.
    pub fn pipeline(&self, message: &[ExtElem], errors: &ErrorPattern) -> Result<TsPipeline, TsError> {
        let word = self.encode(message)?;
        let received = errors.apply(&word, self.q())?;
        let bundle = self.download_all(&received)?;
        let decoded = self.decode(&bundle)?.message;
        Ok(TsPipeline { decoded, bundle })
    }
}

fn validate_sets(sets: &[Vec<u64>], m: usize, block: usize, q: u64) -> Result<(), TsError> {
    if sets.len() != m {
        return Err(TsError::BadSets(format!("expected {m} sets, got {}", sets.len())));
    }
    let mut seen = std::collections::HashSet::new();
    for (j, set) in sets.iter().enumerate() {
        if set.len() != block {
            return Err(TsError::BadSets(format!("set {j} has {} elements, expected {block}", set.len())));
        }
        for &w in set {
            if w >= q {
                return Err(TsError::BadSets(format!("{w} is not a residue mod {q}")));
            }
            if !seen.insert(w) {
                return Err(TsError::BadSets(format!("{w} appears more than once")));
            }
        }
    }
    Ok(())
}
