use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CertifyError;

/// Settings read from a `key = value` file. Lines starting with `#` are
/// comments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest object rank used by the sampled triangle checks; 0 skips them.
    pub max_rank: usize,
    pub samples: usize,
    pub seed: u64,
    /// Replaces `j2 ∘ j1` in the Toda category by `j1`, for fault injection.
    pub tamper_toda: bool,
}

pub const MAX_RANK_LIMIT: usize = 2;
pub const SAMPLE_LIMIT: usize = 10_000;

impl Default for Config {
    fn default() -> Self {
        Config {
            max_rank: 2,
            samples: 100,
            seed: 0,
            tamper_toda: false,
        }
    }
}

fn value<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T, CertifyError> {
    v.parse().map_err(|_| CertifyError::Config {
        line,
        message: format!("bad value {v:?} for {key}"),
    })
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, CertifyError> {
        let mut c = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let Some((k, v)) = s.split_once('=') else {
                return Err(CertifyError::Config {
                    line,
                    message: format!("expected key = value, found {s:?}"),
                });
            };
            let (k, v) = (k.trim(), v.trim());
            match k {
                "max_rank" => c.max_rank = value(line, k, v)?,
                "samples" => c.samples = value(line, k, v)?,
                "seed" => c.seed = value(line, k, v)?,
                "tamper_toda" => c.tamper_toda = value(line, k, v)?,
                _ => {
                    return Err(CertifyError::Config {
                        line,
                        message: format!("unknown key {k:?}"),
                    })
                }
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), CertifyError> {
        let bad = |message: String| Err(CertifyError::Config { line: 0, message });
        if self.max_rank > MAX_RANK_LIMIT {
            return bad(format!("max_rank {} exceeds {MAX_RANK_LIMIT}", self.max_rank));
        }
        if self.samples == 0 || self.samples > SAMPLE_LIMIT {
            return bad(format!("samples must lie in 1..={SAMPLE_LIMIT}"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reject() {
        let c = Config::parse("# run\nmax_rank = 1\nseed=7\n\ntamper_toda = true\n").unwrap();
        assert_eq!(c.max_rank, 1);
        assert_eq!(c.seed, 7);
        assert_eq!(c.samples, 100);
        assert!(c.tamper_toda);
        assert!(Config::parse("max_rank = x").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("max_rank").is_err());
        assert!(Config::parse("max_rank = 9").is_err());
        assert!(Config::parse("samples = 0").is_err());
        assert_eq!(Config::parse("").unwrap(), Config::default());
    }
}
