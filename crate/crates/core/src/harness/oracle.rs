//! Brute-force oracles exposed to the CLI: nearest codewords of a scalar RS
//! code, download-collision witnesses and folded RS list decoding.

use serde::{Deserialize, Serialize};

use super::io::FieldDescription;
use super::{HarnessError, Scheme, SchemeError};
use crate::bounds::{find_download_collision, Collision};
use crate::codeword::ArrayCodeword;
use crate::fields::{ExtElem, Field};
use crate::rs::RsCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub message: Vec<u64>,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NearestReport {
    pub radius: usize,
    pub candidates: Vec<Candidate>,
}

/// Every codeword of `RS(n, k, points)` over the described field within
/// `radius` of `received`, nearest first.
pub fn nearest(
    field: &FieldDescription,
    k: usize,
    points: &[u64],
    received: &[u64],
    radius: usize,
    budget: u64,
) -> Result<NearestReport, HarnessError> {
    let f = field.build().map_err(|e| HarnessError::Config(e.to_string()))?;
    let lift = |v: &u64| -> Result<ExtElem, HarnessError> {
        f.from_index(*v).ok_or_else(|| HarnessError::Config(format!("{v} is not an element of {}", f.describe())))
    };
    let pts: Vec<ExtElem> = points.iter().map(lift).collect::<Result<_, _>>()?;
    let rec: Vec<ExtElem> = received.iter().map(lift).collect::<Result<_, _>>()?;
    let code = RsCode::new(f.clone(), k, pts).map_err(|e| HarnessError::Config(e.to_string()))?;
    let found = code.nearest_codeword_bruteforce(&rec, radius, budget).map_err(|e| match e {
        crate::rs::RsError::BudgetExceeded { needed, budget } => HarnessError::BudgetExceeded { needed, budget },
        other => HarnessError::Config(other.to_string()),
    })?;
    let candidates = found
        .into_iter()
        .map(|(h, distance)| Candidate { message: h.padded(&f, k).iter().map(|e| f.to_index(e)).collect(), distance })
        .collect();
    Ok(NearestReport { radius, candidates })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CollisionReport {
    pub scheme: String,
    pub t: usize,
    pub codewords: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CollisionWitness>,
}

/// Serializable view of a [`Collision`] plus the shared corrupted download.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CollisionWitness {
    pub c_hat: Vec<Vec<u64>>,
    pub c_tilde: Vec<Vec<u64>>,
    pub e_hat: Vec<(usize, Vec<u64>)>,
    pub e_tilde: Vec<(usize, Vec<u64>)>,
    pub agreeing: Vec<usize>,
    pub j1: Vec<usize>,
    pub j2: Vec<usize>,
    pub download: Vec<Vec<u64>>,
    pub verified: bool,
}

/// Download of column `i` as the scheme defines it.
pub fn column_download(scheme: &Scheme) -> impl Fn(usize, &[u64]) -> Vec<u64> + '_ {
    move |i, col| scheme.download_column(i, col).expect("codeword columns have the stored length")
}

/// Search all codewords of `scheme` for two that become indistinguishable
/// after `t` column errors each, as seen through the scheme's downloads.
pub fn collision_search(scheme: &Scheme, t: usize, budget: u64) -> Result<(CollisionReport, Option<Collision>), HarnessError> {
    let codewords = scheme.enumerate_codewords(budget)?;
    let download = column_download(scheme);
    let found = find_download_collision(&codewords, scheme.q(), &download, t, budget)?;
    let witness = match &found {
        Some(c) => {
            let corrupted = c.e_hat.apply(&c.c_hat, scheme.q()).map_err(|e| SchemeError::Invalid(e.to_string()))?;
            let entries = |e: &crate::codeword::ErrorPattern| e.entries().iter().map(|(i, v)| (*i, v.clone())).collect();
            Some(CollisionWitness {
                c_hat: c.c_hat.columns().to_vec(),
                c_tilde: c.c_tilde.columns().to_vec(),
                e_hat: entries(&c.e_hat),
                e_tilde: entries(&c.e_tilde),
                agreeing: c.agreeing.clone(),
                j1: c.j1.clone(),
                j2: c.j2.clone(),
                download: corrupted.columns().iter().enumerate().map(|(i, col)| download(i, col)).collect(),
                verified: c.verify(scheme.q(), t, &download),
            })
        }
        None => None,
    };
    let report = CollisionReport { scheme: scheme.name().to_string(), t, codewords: codewords.len(), found: found.is_some(), witness };
    Ok((report, found))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ListReport {
    pub radius: usize,
    pub messages: Vec<Vec<u64>>,
}

/// All folded RS messages within `radius` column errors of `word`. The word
/// may hold full columns or the downloaded prefixes.
pub fn list_decode(scheme: &Scheme, word: &ArrayCodeword, radius: usize, budget: u64) -> Result<ListReport, HarnessError> {
    let Scheme::Frs(c) = scheme else {
        return Err(HarnessError::Config("list decoding is available for the frs scheme only".into()));
    };
    let prefix = c.scheme().prefix_len();
    let punctured = if word.columns().iter().all(|col| col.len() == c.l()) {
        ArrayCodeword::new(word.columns().iter().map(|col| col[..prefix].to_vec()).collect())
    } else {
        word.clone()
    };
    let found = c.list_decode_bruteforce(&punctured, radius, budget).map_err(SchemeError::from)?;
    Ok(ListReport { radius, messages: found.iter().map(|h| h.padded(c.field(), c.k() * c.l())).collect() })
}
