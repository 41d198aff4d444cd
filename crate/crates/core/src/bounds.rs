//! Decoding-radius formulas on exact rationals, the information-count
//! condition behind the upper bound, a constructive collision search for
//! download budgets below it, and the normalized radius curves.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::codeword::{ArrayCodeword, ErrorPattern};
use crate::combinatorics::{binomial, complement, Combinations};
use crate::fields::{Field, PrimeField};
use crate::rational::{to_decimal, to_fraction_string, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("need 1 <= k <= n, got n={n} k={k}")]
    BadParameters { n: u64, k: u64 },
    #[error("alpha = {alpha} is outside [k/n, 1] = [{lo}, 1]")]
    AlphaOutOfRange { alpha: String, lo: String },
    #[error("rate {rate} must lie in [0, 1) and not exceed alpha = {alpha} <= 1")]
    RateOutOfRange { rate: String, alpha: String },
    #[error("download fraction {0} is outside [0, 1]")]
    FractionOutOfRange(String),
    #[error("t={t} exceeds n/2 for n={n}")]
    TooManyErrors { t: usize, n: usize },
    #[error("figure needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("{needed} candidates exceed the enumeration budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("codewords have inconsistent shapes")]
    ShapeMismatch,
}

fn check_alpha(n: u64, k: u64, alpha: Rational) -> Result<(), BoundsError> {
    if n == 0 || k == 0 || k > n {
        return Err(BoundsError::BadParameters { n, k });
    }
    let lo = Rational::new(k as i64, n as i64);
    if alpha < lo || alpha > Rational::one() {
        return Err(BoundsError::AlphaOutOfRange { alpha: to_fraction_string(&alpha), lo: to_fraction_string(&lo) });
    }
    Ok(())
}

fn floor_nonneg(r: Rational) -> u64 {
    if r <= Rational::zero() {
        0
    } else {
        r.floor().to_integer() as u64
    }
}

/// Radius of reading `alpha*n` whole coordinates: `floor((alpha n - k) / 2)`.
pub fn radius_naive(n: u64, k: u64, alpha: Rational) -> Result<u64, BoundsError> {
    check_alpha(n, k, alpha)?;
    let (n, k) = (n as i64, k as i64);
    Ok(floor_nonneg((alpha * n - k) / 2))
}

/// Optimal fractional radius `floor((n - k/alpha) / 2)`.
pub fn radius_optimal(n: u64, k: u64, alpha: Rational) -> Result<u64, BoundsError> {
    check_alpha(n, k, alpha)?;
    let (n, k) = (n as i64, k as i64);
    Ok(floor_nonneg((Rational::from_integer(n) - Rational::from_integer(k) / alpha) / 2))
}

/// Fractional list-decoding capacity `1 - R/alpha`.
pub fn list_capacity(rate: Rational, alpha: Rational) -> Result<Rational, BoundsError> {
    if rate < Rational::zero() || alpha > Rational::one() || alpha < rate || alpha <= Rational::zero() {
        return Err(BoundsError::RateOutOfRange { rate: to_fraction_string(&rate), alpha: to_fraction_string(&alpha) });
    }
    Ok(Rational::one() - rate / alpha)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusReport {
    pub n: u64,
    pub k: u64,
    pub alpha: Rational,
    pub naive: u64,
    pub optimal: u64,
    /// `(alpha n - k) / (2n)`, unfloored.
    pub normalized_naive: Rational,
    /// `(n - k/alpha) / (2n)`, unfloored.
    pub normalized_optimal: Rational,
    pub list_capacity: Rational,
}

pub fn radius_report(n: u64, k: u64, alpha: Rational) -> Result<RadiusReport, BoundsError> {
    let naive = radius_naive(n, k, alpha)?;
    let optimal = radius_optimal(n, k, alpha)?;
    let (ni, ki) = (n as i64, k as i64);
    let two_n = Rational::from_integer(2 * ni);
    let normalized_naive = (alpha * ni - ki) / two_n;
    let normalized_optimal = (Rational::from_integer(ni) - Rational::from_integer(ki) / alpha) / two_n;
    let list_capacity = list_capacity(Rational::new(ki, ni), alpha)?;
    Ok(RadiusReport { n, k, alpha, naive, optimal, normalized_naive, normalized_optimal, list_capacity })
}

impl RadiusReport {
    pub fn to_text(&self) -> String {
        format!(
            "n={} k={} alpha={}\nnaive radius: {}\noptimal radius: {}\nnormalized naive: {}\nnormalized optimal: {}\nlist capacity: {}\n",
            self.n,
            self.k,
            to_fraction_string(&self.alpha),
            self.naive,
            self.optimal,
            to_decimal(&self.normalized_naive, 6),
            to_decimal(&self.normalized_optimal, 6),
            to_decimal(&self.list_capacity, 6),
        )
    }

    pub fn to_csv(&self) -> String {
        format!(
            "n,k,alpha,naive,optimal,naive_normalized,optimal_normalized,list_capacity\n{},{},{},{},{},{},{},{}\n",
            self.n,
            self.k,
            to_fraction_string(&self.alpha),
            self.naive,
            self.optimal,
            to_decimal(&self.normalized_naive, 6),
            to_decimal(&self.normalized_optimal, 6),
            to_decimal(&self.list_capacity, 6),
        )
    }
}

/// Outcome of [`min_info_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinInfo {
    pub passed: bool,
    /// Smallest total fraction over any `n - 2t` columns.
    pub min_sum: Rational,
    /// A minimizing `(n - 2t)`-subset; it violates the condition when the
    /// check fails.
    pub subset: Vec<usize>,
}

/// Whether every `(n - 2t)`-subset of columns carries at least `k` columns'
/// worth of downloaded information, where `alphas[i]` is the fraction of
/// column `i` downloaded. Correcting `t` errors requires this.
///
/// The minimum over subsets is attained by the `n - 2t` smallest fractions.
pub fn min_info_check(alphas: &[Rational], t: usize, k: u64) -> Result<MinInfo, BoundsError> {
    let n = alphas.len();
    if 2 * t > n {
        return Err(BoundsError::TooManyErrors { t, n });
    }
    if let Some(a) = alphas.iter().find(|a| **a < Rational::zero() || **a > Rational::one()) {
        return Err(BoundsError::FractionOutOfRange(to_fraction_string(a)));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| alphas[a].cmp(&alphas[b]).then(a.cmp(&b)));
    let mut subset: Vec<usize> = order[..n - 2 * t].to_vec();
    subset.sort_unstable();
    let min_sum = subset.iter().map(|&i| alphas[i]).sum::<Rational>();
    Ok(MinInfo { passed: min_sum >= Rational::from_integer(k as i64), min_sum, subset })
}

/// Uniform fast path: `(n - 2t) alpha >= k`.
pub fn min_info_check_uniform(n: usize, alpha: Rational, t: usize, k: u64) -> Result<bool, BoundsError> {
    if 2 * t > n {
        return Err(BoundsError::TooManyErrors { t, n });
    }
    if alpha < Rational::zero() || alpha > Rational::one() {
        return Err(BoundsError::FractionOutOfRange(to_fraction_string(&alpha)));
    }
    Ok(alpha * ((n - 2 * t) as i64) >= Rational::from_integer(k as i64))
}

/// Two codewords and two error patterns of weight at most `t` whose corrupted
/// words produce identical downloads in every column, so no decoder using
/// these downloads can tell them apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub c_hat: ArrayCodeword,
    pub c_tilde: ArrayCodeword,
    pub e_hat: ErrorPattern,
    pub e_tilde: ErrorPattern,
    /// The `n - 2t` columns on which the downloads of the two codewords agree.
    pub agreeing: Vec<usize>,
    /// Support of `e_hat` is inside `j1`, of `e_tilde` inside `j2`.
    pub j1: Vec<usize>,
    pub j2: Vec<usize>,
}

impl Collision {
    /// Recompute both corrupted words and compare their downloads column by
    /// column.
    pub fn verify(&self, q: u64, t: usize, download: &dyn Fn(usize, &[u64]) -> Vec<u64>) -> bool {
        let (Ok(a), Ok(b)) = (self.e_hat.apply(&self.c_hat, q), self.e_tilde.apply(&self.c_tilde, q)) else {
            return false;
        };
        self.c_hat != self.c_tilde
            && self.e_hat.weight() <= t
            && self.e_tilde.weight() <= t
            && (0..a.n()).all(|i| download(i, a.column(i)) == download(i, b.column(i)))
    }
}

/// Search a code, given as the full list of its codewords, for two distinct
/// codewords whose downloads coincide on some `n - 2t` columns, then build the
/// confusing error pair: `e_hat = c_tilde - c_hat` on the first `t` remaining
/// columns and `e_tilde = c_hat - c_tilde` on the last `t`.
///
/// Agreement sets are tried in lexicographic order; the first collision found
/// is returned. `None` means the downloads separate every pair on every such
/// set.
pub fn find_download_collision(
    codewords: &[ArrayCodeword],
    q: u64,
    download: &dyn Fn(usize, &[u64]) -> Vec<u64>,
    t: usize,
    budget: u64,
) -> Result<Option<Collision>, BoundsError> {
    let Some(first) = codewords.first() else {
        return Ok(None);
    };
    let n = first.n();
    if codewords.iter().any(|c| c.n() != n) {
        return Err(BoundsError::ShapeMismatch);
    }
    if 2 * t > n {
        return Err(BoundsError::TooManyErrors { t, n });
    }
    let needed = binomial(n, n - 2 * t).saturating_mul(codewords.len() as u128);
    if needed > budget as u128 {
        return Err(BoundsError::BudgetExceeded { needed, budget });
    }
    let field = PrimeField::new(q).map_err(|_| BoundsError::ShapeMismatch)?;
    let downloads: Vec<Vec<Vec<u64>>> = codewords
        .iter()
        .map(|c| c.columns().iter().enumerate().map(|(i, col)| download(i, col)).collect())
        .collect();

    for agreeing in Combinations::new(n, n - 2 * t) {
        let mut seen: HashMap<Vec<&Vec<u64>>, usize> = HashMap::with_capacity(codewords.len());
        for (idx, dl) in downloads.iter().enumerate() {
            let key: Vec<&Vec<u64>> = agreeing.iter().map(|&i| &dl[i]).collect();
            match seen.get(&key) {
                Some(&prev) if codewords[prev] != codewords[idx] => {
                    let (c_hat, c_tilde) = (&codewords[prev], &codewords[idx]);
                    let rest = complement(n, &agreeing);
                    let (j1, j2) = rest.split_at(t);
                    let diff = |a: &ArrayCodeword, b: &ArrayCodeword, i: usize| -> Vec<u64> {
                        a.column(i).iter().zip(b.column(i)).map(|(x, y)| field.sub(x, y)).collect()
                    };
                    let e_hat = ErrorPattern::from_differences(j1.iter().map(|&i| (i, diff(c_tilde, c_hat, i))));
                    let e_tilde = ErrorPattern::from_differences(j2.iter().map(|&i| (i, diff(c_hat, c_tilde, i))));
                    return Ok(Some(Collision {
                        c_hat: c_hat.clone(),
                        c_tilde: c_tilde.clone(),
                        e_hat,
                        e_tilde,
                        agreeing,
                        j1: j1.to_vec(),
                        j2: j2.to_vec(),
                    }));
                }
                Some(_) => {}
                None => {
                    seen.insert(key, idx);
                }
            }
        }
    }
    Ok(None)
}

/// One row of the normalized radius curves for rate `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureRow {
    pub alpha: Rational,
    /// `(alpha - R) / 2`
    pub naive: Rational,
    /// `(1 - R/alpha) / 2`
    pub optimal: Rational,
}

/// `steps` values of alpha spaced uniformly on `[R, 1]`, both ends included.
pub fn emit_figure(rate: Rational, steps: usize) -> Result<Vec<FigureRow>, BoundsError> {
    if steps < 2 {
        return Err(BoundsError::TooFewSteps(steps));
    }
    if rate <= Rational::zero() || rate >= Rational::one() {
        return Err(BoundsError::RateOutOfRange { rate: to_fraction_string(&rate), alpha: "1".into() });
    }
    let span = Rational::one() - rate;
    let last = (steps - 1) as i64;
    Ok((0..steps as i64)
        .map(|i| {
            let alpha = rate + span * Rational::new(i, last);
            FigureRow { alpha, naive: (alpha - rate) / 2, optimal: (Rational::one() - rate / alpha) / 2 }
        })
        .collect())
}

pub const FIGURE_CSV_HEADER: &str = "alpha,naive_normalized,optimal_normalized";

pub fn figure_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from(FIGURE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{}\n", to_decimal(&r.alpha, 6), to_decimal(&r.naive, 6), to_decimal(&r.optimal, 6)));
    }
    out
}
