//! Both constructions behind one interface, with messages as canonical
//! integers.

use rand::Rng;
use thiserror::Error;

use super::io::{FieldDescription, FrsConfigFile, SchemeConfigFile, TsConfigFile};
use super::HarnessError;
use crate::codeword::{ArrayCodeword, DownloadBundle};
use crate::fields::{ExtElem, ExtField, Field, FieldError, PrimeField};
use crate::frs::{FrsConfig, FrsError, FrsParams};
use crate::rational::{parse_rational, to_fraction_string, Rational};
use crate::rs::for_each_message;
use crate::trace_scheme::{TsConfig, TsError, TsOverrides};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    /// The decoder could not find a message within its radius.
    #[error("decoding failed: {0}")]
    DecodeFailure(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl From<TsError> for SchemeError {
    fn from(e: TsError) -> Self {
        match e {
            TsError::InnerDecode { .. } | TsError::InternalInconsistency { .. } => SchemeError::DecodeFailure(e.to_string()),
            other => SchemeError::Invalid(other.to_string()),
        }
    }
}

impl From<FrsError> for SchemeError {
    fn from(e: FrsError) -> Self {
        match e {
            FrsError::DecodingFailure { .. } => SchemeError::DecodeFailure(e.to_string()),
            other => SchemeError::Invalid(other.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Scheme {
    Ts(TsConfig),
    Frs(FrsConfig),
}

impl Scheme {
    pub fn from_file(file: &SchemeConfigFile) -> Result<Self, HarnessError> {
        match file {
            SchemeConfigFile::Ts(c) => {
                let overrides = TsOverrides {
                    omega: c.omega.clone(),
                    sets: c.sets.clone(),
                    modulus: c.modulus.clone(),
                    zeta: c.zeta.clone(),
                };
                TsConfig::new(c.q, c.n, c.k, c.l, c.m, overrides)
                    .map(Scheme::Ts)
                    .map_err(|e| HarnessError::Config(e.to_string()))
            }
            SchemeConfigFile::Frs(c) => {
                let alpha = parse_rational(&c.alpha).map_err(|e| HarnessError::Config(e.to_string()))?;
                FrsConfig::new(FrsParams { p: c.p, gamma: c.gamma, n: c.n, k: c.k, l: c.l, alpha })
                    .map(Scheme::Frs)
                    .map_err(|e| HarnessError::Config(e.to_string()))
            }
        }
    }

    /// The resolved configuration with every default written out.
    pub fn to_file(&self) -> SchemeConfigFile {
        match self {
            Scheme::Ts(c) => SchemeConfigFile::Ts(TsConfigFile {
                format: super::FORMAT_VERSION,
                q: c.q(),
                n: c.n(),
                k: c.k(),
                l: c.l(),
                m: c.m(),
                omega: Some(c.omega().to_vec()),
                sets: Some(c.sets().to_vec()),
                modulus: Some(c.field().modulus().to_vec()),
                zeta: Some(c.basis().zeta().iter().map(|z| c.field().to_index(z)).collect()),
            }),
            Scheme::Frs(c) => SchemeConfigFile::Frs(FrsConfigFile {
                format: super::FORMAT_VERSION,
                p: Some(c.p()),
                gamma: Some(c.gamma()),
                n: c.n(),
                k: c.k(),
                l: c.l(),
                alpha: to_fraction_string(&c.alpha()),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Ts(_) => "ts",
            Scheme::Frs(_) => "frs",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Scheme::Ts(c) => c.n(),
            Scheme::Frs(c) => c.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Scheme::Ts(c) => c.k(),
            Scheme::Frs(c) => c.k(),
        }
    }

    /// Stored symbols per column (sub-packetization `l`).
    pub fn l(&self) -> usize {
        match self {
            Scheme::Ts(c) => c.l(),
            Scheme::Frs(c) => c.l(),
        }
    }

    /// Modulus of the prime field the stored symbols live in.
    pub fn q(&self) -> u64 {
        match self {
            Scheme::Ts(c) => c.q(),
            Scheme::Frs(c) => c.p(),
        }
    }

    pub fn alpha(&self) -> Rational {
        match self {
            Scheme::Ts(c) => Rational::new(c.m() as i64, c.l() as i64),
            Scheme::Frs(c) => c.alpha(),
        }
    }

    pub fn download_per_column(&self) -> usize {
        match self {
            Scheme::Ts(c) => c.m(),
            Scheme::Frs(c) => c.scheme().prefix_len(),
        }
    }

    /// `alpha * n * l`.
    pub fn download_budget(&self) -> usize {
        self.n() * self.download_per_column()
    }

    /// Number of column errors the scheme's decoder corrects.
    pub fn radius(&self) -> usize {
        match self {
            Scheme::Ts(c) => c.radius(),
            Scheme::Frs(c) => c.radius(),
        }
    }

    pub fn message_len(&self) -> usize {
        match self {
            Scheme::Ts(c) => c.k(),
            Scheme::Frs(c) => c.k() * c.l(),
        }
    }

    /// Size of the alphabet of one message symbol.
    pub fn message_alphabet(&self) -> u64 {
        match self {
            Scheme::Ts(c) => c.field().size(),
            Scheme::Frs(c) => c.p(),
        }
    }

    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let size = self.message_alphabet();
        (0..self.message_len()).map(|_| rng.gen_range(0..size)).collect()
    }

    fn ts_message(c: &TsConfig, message: &[u64]) -> Result<Vec<ExtElem>, SchemeError> {
        message
            .iter()
            .map(|&v| {
                c.field()
                    .from_index(v)
                    .ok_or_else(|| SchemeError::Invalid(format!("{v} is not an element of {}", c.field().describe())))
            })
            .collect()
    }

    pub fn encode(&self, message: &[u64]) -> Result<ArrayCodeword, SchemeError> {
        match self {
            Scheme::Ts(c) => Ok(c.encode(&Self::ts_message(c, message)?)?),
            Scheme::Frs(c) => Ok(c.encode_message(message)?),
        }
    }

    /// Download from a single stored column.
    pub fn download_column(&self, i: usize, column: &[u64]) -> Result<Vec<u64>, SchemeError> {
        match self {
            Scheme::Ts(c) => Ok(c.download(column, i)?),
            Scheme::Frs(c) => Ok(c.download_prefix(column)?),
        }
    }

    pub fn download(&self, word: &ArrayCodeword) -> Result<DownloadBundle, SchemeError> {
        match self {
            Scheme::Ts(c) => Ok(c.download_all(word)?),
            Scheme::Frs(c) => Ok(c.download_all(word)?),
        }
    }

    pub fn decode(&self, bundle: &DownloadBundle, budget: u64) -> Result<Vec<u64>, SchemeError> {
        match self {
            Scheme::Ts(c) => {
                let dec = c.decode(bundle)?;
                Ok(dec.message.iter().map(|e| c.field().to_index(e)).collect())
            }
            Scheme::Frs(c) => {
                let dec = c.decode(bundle, budget)?;
                Ok(dec.message.padded(c.field(), c.k() * c.l()))
            }
        }
    }

    /// Every codeword of the scheme, in lexicographic message order.
    pub fn enumerate_codewords(&self, budget: u64) -> Result<Vec<ArrayCodeword>, HarnessError> {
        let mut out = Vec::new();
        let mut failure = None;
        let result = match self {
            Scheme::Ts(c) => for_each_message(c.field(), c.k(), budget, |m| match c.encode(m) {
                Ok(w) => out.push(w),
                Err(e) => failure = Some(e.to_string()),
            }),
            Scheme::Frs(c) => for_each_message(c.field(), c.k() * c.l(), budget, |m| match c.encode_message(m) {
                Ok(w) => out.push(w),
                Err(e) => failure = Some(e.to_string()),
            }),
        };
        if let Err(crate::rs::RsError::BudgetExceeded { needed, budget }) = result {
            return Err(HarnessError::BudgetExceeded { needed, budget });
        }
        if let Some(msg) = failure {
            return Err(HarnessError::Config(msg));
        }
        Ok(out)
    }
}

impl FieldDescription {
    /// `GF(q^l)`; with `l = 1` this is `GF(q)` with identical canonical
    /// integers.
    pub fn build(&self) -> Result<ExtField, FieldError> {
        let base = PrimeField::new(self.q)?;
        match &self.modulus {
            Some(m) => {
                if m.len() != self.l + 1 {
                    return Err(FieldError::BadModulus { expected: self.l });
                }
                ExtField::with_modulus(base, m.clone())
            }
            None => ExtField::new(base, self.l),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::io::parse_json;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn load(json: &str) -> Scheme {
        Scheme::from_file(&parse_json(json, "test").unwrap()).unwrap()
    }

    #[test]
    fn both_schemes_roundtrip() {
        for json in [
            r#"{"scheme":"ts","q":13,"n":12,"k":4,"l":4,"m":2}"#,
            r#"{"scheme":"frs","p":37,"gamma":2,"n":8,"k":3,"l":4,"alpha":"3/4"}"#,
        ] {
            let s = load(json);
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let msg = s.random_message(&mut rng);
            let word = s.encode(&msg).unwrap();
            let bundle = s.download(&word).unwrap();
            assert_eq!(bundle.downloaded, s.download_budget());
            assert_eq!(s.decode(&bundle, 1_000_000).unwrap(), msg);
            assert_eq!(s.radius(), 2);
        }
    }

    #[test]
    fn resolved_config_reloads_identically() {
        let s = load(r#"{"scheme":"ts","q":13,"n":12,"k":4,"l":4,"m":2}"#);
        let file = s.to_file();
        let again = Scheme::from_file(&file).unwrap();
        assert_eq!(again.to_file(), file);
    }

    #[test]
    fn invalid_config_reported() {
        let file = parse_json(r#"{"scheme":"ts","q":13,"n":12,"k":3,"l":4,"m":2}"#, "t").unwrap();
        assert!(matches!(Scheme::from_file(&file), Err(HarnessError::Config(_))));
        let file = parse_json(r#"{"scheme":"frs","n":8,"k":3,"l":4,"alpha":"x"}"#, "t").unwrap();
        assert!(matches!(Scheme::from_file(&file), Err(HarnessError::Config(_))));
    }

    #[test]
    fn message_validation() {
        let s = load(r#"{"scheme":"ts","q":5,"n":5,"k":2,"l":2,"m":2}"#);
        assert!(matches!(s.encode(&[25, 0]), Err(SchemeError::Invalid(_))));
        assert!(matches!(s.encode(&[1]), Err(SchemeError::Invalid(_))));
        assert_eq!(s.enumerate_codewords(1_000).unwrap().len(), 625);
        assert!(matches!(s.enumerate_codewords(100), Err(HarnessError::BudgetExceeded { .. })));
    }
}
