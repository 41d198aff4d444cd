//! Fractional decoding against the naive reader that fetches `alpha * n`
//! whole columns and decodes the punctured code.
//!
//! The adversary knows which columns the naive reader uses (the first
//! `alpha * n`). It picks a second message `h'` agreeing with `h` on the
//! first `k - 1` of those columns, and overwrites up to `t` of the remaining
//! chosen columns with `h'`'s values. Once `t` exceeds the naive radius the
//! punctured decoder cannot return `h`, while the fractional decoder still
//! sees only `t <= radius` errors.

use serde::{Deserialize, Serialize};

use super::rng::trial_rng;
use super::{HarnessError, Scheme, SchemeError};
use crate::bounds::radius_naive;
use crate::codeword::{ArrayCodeword, ErrorPattern};
use crate::fields::{ExtElem, Field};
use crate::frs::PolyArrayCode;
use crate::poly::Poly;
use crate::rational::to_fraction_string;
use crate::rs::RsCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Recovered,
    /// The decoder reported failure.
    Failure,
    /// The decoder returned a different message.
    Miscorrected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NaiveComparison {
    pub scheme: String,
    pub n: usize,
    pub k: usize,
    pub alpha: String,
    pub t: usize,
    /// Columns the naive reader downloads in full.
    pub naive_columns: Vec<usize>,
    pub naive_radius: u64,
    pub fractional_radius: usize,
    pub error_columns: Vec<usize>,
    pub message: Vec<u64>,
    pub naive_outcome: Outcome,
    pub fractional_outcome: Outcome,
    pub separated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn classify(result: Result<Vec<u64>, SchemeError>, message: &[u64]) -> Result<Outcome, HarnessError> {
    match result {
        Ok(m) if m == message => Ok(Outcome::Recovered),
        Ok(_) => Ok(Outcome::Miscorrected),
        Err(SchemeError::DecodeFailure(_)) => Ok(Outcome::Failure),
        Err(e) => Err(e.into()),
    }
}

/// The confusing message `h + prod (x - x_j)` over the evaluation points of
/// the first `k - 1` naive columns, in canonical message form.
fn confusing_message(scheme: &Scheme, message: &[u64]) -> Result<Vec<u64>, HarnessError> {
    match scheme {
        Scheme::Ts(c) => {
            let field = c.field();
            let h: Vec<ExtElem> = message.iter().map(|&v| field.from_index(v).expect("validated message")).collect();
            let h = Poly::new(field, h);
            let roots = &c.code().points()[..c.k() - 1];
            let h2 = h.add(&Poly::from_roots(field, roots), field);
            Ok(h2.padded(field, c.k()).iter().map(|e| field.to_index(e)).collect())
        }
        Scheme::Frs(c) => {
            let field = c.field();
            let h = Poly::new(field, message.to_vec());
            let roots: Vec<u64> = c.scheme().full_code().column_points()[..c.k() - 1].concat();
            let h2 = h.add(&Poly::from_roots(field, &roots), field);
            Ok(h2.padded(field, c.k() * c.l()))
        }
    }
}

/// Decode the first `naive_n` columns as a punctured MDS array code with its
/// unique-decoding radius.
fn naive_decode(scheme: &Scheme, word: &ArrayCodeword, naive_n: usize, budget: u64) -> Result<Vec<u64>, SchemeError> {
    let invalid = |e: String| SchemeError::Invalid(e);
    match scheme {
        Scheme::Ts(c) => {
            let field = c.field();
            let code = RsCode::new(field.clone(), c.k(), c.code().points()[..naive_n].to_vec()).map_err(|e| invalid(e.to_string()))?;
            let symbols: Vec<ExtElem> = word.columns()[..naive_n]
                .iter()
                .map(|col| c.basis().reconstruct(field, col))
                .collect::<Result<_, _>>()
                .map_err(|e| invalid(e.to_string()))?;
            match code.decode_unique(&symbols) {
                Ok(dec) => Ok(dec.message.padded(field, c.k()).iter().map(|e| field.to_index(e)).collect()),
                Err(crate::rs::RsError::DecodingFailure { radius }) => Err(SchemeError::DecodeFailure(format!(
                    "no codeword of the punctured code within {radius} errors"
                ))),
                Err(e) => Err(invalid(e.to_string())),
            }
        }
        Scheme::Frs(c) => {
            let points = c.scheme().full_code().column_points()[..naive_n].to_vec();
            let code = PolyArrayCode::new(*c.field(), points, c.k() * c.l()).map_err(|e| invalid(e.to_string()))?;
            let punctured = ArrayCodeword::new(word.columns()[..naive_n].to_vec());
            let dec = code.decode_trial(&punctured, (naive_n - c.k()) / 2, budget)?;
            Ok(dec.message.padded(c.field(), c.k() * c.l()))
        }
    }
}

/// Run both decoders on a pattern of weight `t` inside the naive reader's
/// columns. The message is drawn from the stream `(seed, t, 0)`.
pub fn compare_naive(scheme: &Scheme, t: usize, seed: u64, budget: u64) -> Result<NaiveComparison, HarnessError> {
    let (n, k) = (scheme.n(), scheme.k());
    let alpha = scheme.alpha();
    let scaled = alpha * (n as i64);
    if !scaled.is_integer() {
        return Err(HarnessError::Config(format!("alpha * n = {} is not an integer", to_fraction_string(&scaled))));
    }
    let naive_n = scaled.to_integer() as usize;
    let naive_r = radius_naive(n as u64, k as u64, alpha)?;
    let radius = scheme.radius();
    if t > radius {
        return Err(HarnessError::Config(format!("t = {t} exceeds the fractional radius {radius}")));
    }
    if t > naive_n {
        return Err(HarnessError::Config(format!("t = {t} exceeds the {naive_n} naive columns")));
    }

    let mut rng = trial_rng(seed, t, 0);
    let message = scheme.random_message(&mut rng);
    let word = scheme.encode(&message)?;
    let (l, q) = (scheme.l(), scheme.q());

    // Columns k-1 .. naive_n-1 take h' values first; any remaining errors go
    // on the leading naive columns with random values.
    let confusing = scheme.encode(&confusing_message(scheme, &message)?)?;
    let mut error_columns: Vec<usize> = (k - 1..naive_n).take(t).collect();
    let mut entries: Vec<(usize, Vec<u64>)> = error_columns
        .iter()
        .map(|&i| (i, confusing.column(i).iter().zip(word.column(i)).map(|(a, b)| (a + q - b) % q).collect()))
        .collect();
    if error_columns.len() < t {
        let extra: Vec<usize> = (0..t - error_columns.len()).collect();
        let random = ErrorPattern::random_on_support(&mut rng, &extra, l, q);
        entries.extend(random.entries().iter().map(|(i, v)| (*i, v.clone())));
        error_columns.extend(extra);
        error_columns.sort_unstable();
    }
    let errors = ErrorPattern::from_differences(entries);
    let received = errors.apply(&word, q).map_err(|e| SchemeError::Invalid(e.to_string()))?;

    let naive_outcome = classify(naive_decode(scheme, &received, naive_n, budget), &message)?;
    let bundle = scheme.download(&received)?;
    let fractional_outcome = classify(scheme.decode(&bundle, budget), &message)?;
    let separated = naive_outcome != Outcome::Recovered && fractional_outcome == Outcome::Recovered;
    let note = (t as u64 <= naive_r).then(|| "no separation at these parameters".to_string());

    Ok(NaiveComparison {
        scheme: scheme.name().to_string(),
        n,
        k,
        alpha: to_fraction_string(&alpha),
        t,
        naive_columns: (0..naive_n).collect(),
        naive_radius: naive_r,
        fractional_radius: radius,
        error_columns,
        message,
        naive_outcome,
        fractional_outcome,
        separated,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::io::parse_json;

    fn load(json: &str) -> Scheme {
        Scheme::from_file(&parse_json(json, "t").unwrap()).unwrap()
    }

    #[test]
    fn trace_scheme_separates_at_two() {
        let s = load(r#"{"scheme":"ts","q":13,"n":12,"k":4,"l":4,"m":2}"#);
        let r = compare_naive(&s, 2, 1, 1_000_000).unwrap();
        assert_eq!(r.naive_columns.len(), 6);
        assert_eq!(r.naive_radius, 1);
        assert_eq!(r.error_columns, vec![3, 4]);
        assert_eq!(r.naive_outcome, Outcome::Miscorrected);
        assert_eq!(r.fractional_outcome, Outcome::Recovered);
        assert!(r.separated && r.note.is_none());
    }

    #[test]
    fn no_separation_within_naive_radius() {
        let s = load(r#"{"scheme":"frs","p":37,"gamma":2,"n":8,"k":3,"l":4,"alpha":"3/4"}"#);
        let r = compare_naive(&s, 1, 1, 1_000_000).unwrap();
        assert_eq!(r.naive_outcome, Outcome::Recovered);
        assert_eq!(r.fractional_outcome, Outcome::Recovered);
        assert!(!r.separated);
        assert_eq!(r.note.as_deref(), Some("no separation at these parameters"));
    }

    #[test]
    fn beyond_radius_rejected() {
        let s = load(r#"{"scheme":"frs","p":37,"gamma":2,"n":8,"k":3,"l":4,"alpha":"3/4"}"#);
        assert!(matches!(compare_naive(&s, 3, 1, 1_000_000), Err(HarnessError::Config(_))));
    }
}
