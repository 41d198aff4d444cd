//! Seeded Monte Carlo sweeps over error weights.
//!
//! Every trial owns its own generator derived from `(seed, weight, trial)`
//! (see [`super::rng`]), so the report does not depend on how rayon schedules
//! the trials. In exhaustive mode trial `s * trials_per_weight + d` is draw
//! `d` on the `s`-th support in lexicographic order; in sampled mode the
//! support is drawn from the trial's own stream.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::io::SchemeConfigFile;
use super::rng::trial_rng;
use super::{HarnessError, Scheme, SchemeError, FORMAT_VERSION};
use crate::bounds::{radius_naive, radius_optimal};
use crate::codeword::ErrorPattern;
use crate::combinatorics::{binomial, Combinations};
use crate::rational::to_fraction_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SupportMode {
    /// Every support of each weight, `trials_per_weight` value draws each.
    Exhaustive,
    /// `trials_per_weight` trials with random supports.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentSpec {
    pub error_weights: Vec<usize>,
    pub trials_per_weight: usize,
    pub seed: u64,
    pub support_mode: SupportMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WeightResult {
    pub t: usize,
    pub trials: usize,
    pub successes: usize,
    /// The decoder reported failure.
    pub detected_failures: usize,
    /// The decoder returned a wrong message.
    pub silent_failures: usize,
    pub success_rate: f64,
    /// Largest number of symbols downloaded by any trial.
    pub max_downloaded: usize,
    pub accessed_per_trial: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentReport {
    pub format: u32,
    pub version: String,
    pub config: SchemeConfigFile,
    pub seed: u64,
    pub support_mode: SupportMode,
    pub trials_per_weight: usize,
    pub alpha: String,
    /// `alpha * n * l`.
    pub download_budget: usize,
    pub radius_optimal: u64,
    pub radius_naive: u64,
    pub scheme_radius: usize,
    pub results: Vec<WeightResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Success,
    Detected,
    Silent,
}

struct TrialRecord {
    outcome: Outcome,
    downloaded: usize,
    accessed: usize,
}

fn run_trial(scheme: &Scheme, t: usize, trial: u64, seed: u64, support: Option<&[usize]>, budget: u64) -> Result<TrialRecord, HarnessError> {
    let mut rng = trial_rng(seed, t, trial);
    let message = scheme.random_message(&mut rng);
    let word = scheme.encode(&message)?;
    let (l, q) = (scheme.l(), scheme.q());
    let errors = match support {
        Some(s) => ErrorPattern::random_on_support(&mut rng, s, l, q),
        None => ErrorPattern::random(&mut rng, scheme.n(), t, l, q).map_err(|e| SchemeError::Invalid(e.to_string()))?,
    };
    let received = errors.apply(&word, q).map_err(|e| SchemeError::Invalid(e.to_string()))?;
    let bundle = scheme.download(&received)?;
    if bundle.downloaded > scheme.download_budget() {
        return Err(HarnessError::DownloadOverBudget { downloaded: bundle.downloaded, budget: scheme.download_budget() });
    }
    let outcome = match scheme.decode(&bundle, budget) {
        Ok(decoded) if decoded == message => Outcome::Success,
        Ok(_) => Outcome::Silent,
        Err(SchemeError::DecodeFailure(_)) => Outcome::Detected,
        Err(e) => return Err(e.into()),
    };
    Ok(TrialRecord { outcome, downloaded: bundle.downloaded, accessed: bundle.accessed })
}

/// Run the sweep. `budget` caps both the number of exhaustive trials per
/// weight and the FRS trial decoder's subset enumeration.
pub fn simulate(scheme: &Scheme, spec: &ExperimentSpec, budget: u64) -> Result<ExperimentReport, HarnessError> {
    let n = scheme.n();
    let mut results = Vec::with_capacity(spec.error_weights.len());
    for &t in &spec.error_weights {
        if t > n {
            return Err(HarnessError::Config(format!("error weight {t} exceeds n = {n}")));
        }
        let jobs: Vec<(u64, Option<Vec<usize>>)> = match spec.support_mode {
            SupportMode::Exhaustive => {
                let needed = binomial(n, t).saturating_mul(spec.trials_per_weight as u128);
                if needed > budget as u128 {
                    return Err(HarnessError::BudgetExceeded { needed, budget });
                }
                Combinations::new(n, t)
                    .enumerate()
                    .flat_map(|(s, support)| {
                        (0..spec.trials_per_weight)
                            .map(move |d| ((s * spec.trials_per_weight + d) as u64, Some(support.clone())))
                    })
                    .collect()
            }
            SupportMode::Sampled => (0..spec.trials_per_weight as u64).map(|i| (i, None)).collect(),
        };
        let records: Vec<Result<TrialRecord, HarnessError>> = jobs
            .par_iter()
            .map(|(trial, support)| run_trial(scheme, t, *trial, spec.seed, support.as_deref(), budget))
            .collect();
        let mut row = WeightResult {
            t,
            trials: records.len(),
            successes: 0,
            detected_failures: 0,
            silent_failures: 0,
            success_rate: 0.0,
            max_downloaded: 0,
            accessed_per_trial: 0,
        };
        for record in records {
            let record = record?;
            match record.outcome {
                Outcome::Success => row.successes += 1,
                Outcome::Detected => row.detected_failures += 1,
                Outcome::Silent => row.silent_failures += 1,
            }
            row.max_downloaded = row.max_downloaded.max(record.downloaded);
            row.accessed_per_trial = row.accessed_per_trial.max(record.accessed);
        }
        row.success_rate = if row.trials == 0 { 1.0 } else { row.successes as f64 / row.trials as f64 };
        results.push(row);
    }
    let alpha = scheme.alpha();
    let (nn, kk) = (n as u64, scheme.k() as u64);
    Ok(ExperimentReport {
        format: FORMAT_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: scheme.to_file(),
        seed: spec.seed,
        support_mode: spec.support_mode,
        trials_per_weight: spec.trials_per_weight,
        alpha: to_fraction_string(&alpha),
        download_budget: scheme.download_budget(),
        radius_optimal: radius_optimal(nn, kk, alpha)?,
        radius_naive: radius_naive(nn, kk, alpha)?,
        scheme_radius: scheme.radius(),
        results,
    })
}
