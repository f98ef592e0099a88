//! Parsers for the small textual formats on the command line and in config files.

use std::collections::BTreeMap;
use std::path::Path;
use tilt_core::error::{Error, Result};
use tilt_core::rational::{parse, to_i64};
use tilt_core::walls::BetaWindow;
use tilt_core::{ChernCharacter, Rational, VarietyId};

/// "r,c,d,e@variety", entries rational.
pub fn parse_character(s: &str) -> Result<ChernCharacter> {
    let (nums, var) = s
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("`{s}`: expected r,c,d,e@variety")))?;
    let variety: VarietyId = var.parse()?;
    let parts: Vec<&str> = nums.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("`{nums}`: expected four comma-separated entries")));
    }
    let x: Vec<Rational> = parts.iter().map(|p| parse(p)).collect::<Result<_>>()?;
    let whole = |i: usize, name: &str| {
        to_i64(&x[i]).ok_or_else(|| Error::Integrality(format!("{name} = {} must be an integer", x[i])))
    };
    ChernCharacter::new(variety, whole(0, "rank")?, whole(1, "ch1")?, x[2].clone(), x[3].clone())
}

/// "lo:hi".
pub fn parse_window(s: &str) -> Result<BetaWindow> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("`{s}`: expected lo:hi")))?;
    Ok(BetaWindow::new(parse(lo)?, parse(hi)?))
}

pub fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not an integer")))
}

/// "a:b", inclusive.
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("`{s}`: expected a:b")))?;
    Ok((parse_int(a)?, parse_int(b)?))
}

/// Accepts "@X2" as well as "X2".
pub fn parse_variety(s: &str) -> Result<VarietyId> {
    s.trim_start_matches('@').parse()
}

/// key=value lines; '#' starts a comment. Unknown keys are an error so that
/// typos do not go unnoticed.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Config {
    pub rank_max: Option<i64>,
    pub beta_window: Option<BetaWindow>,
    pub min_radius_sq: Option<Rational>,
    pub samples: Option<usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
            map.insert(k.trim().to_string(), v.trim().trim_matches('"').to_string());
        }
        let mut cfg = Config::default();
        for (k, v) in &map {
            match k.as_str() {
                "rank_max" => cfg.rank_max = Some(parse_int(v)?),
                "beta_window" => cfg.beta_window = Some(parse_window(v)?),
                "min_radius_sq" => cfg.min_radius_sq = Some(parse(v)?),
                "samples" => {
                    cfg.samples = Some(v.parse().map_err(|_| Error::Parse(format!("samples: `{v}`")))?)
                }
                other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Config::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tilt_core::rational::q;

    #[test]
    fn characters() {
        let v = parse_character("2,-1,0,1/6@X2").unwrap();
        assert_eq!((v.r, v.c, v.e.clone()), (2, -1, q(1, 6)));
        assert!(parse_character("2,0,-2@X2").unwrap_err().is_parse());
        assert!(parse_character("2,0,-2,4@X7").unwrap_err().is_parse());
        assert!(!parse_character("2,0,-1/3,4@X2").unwrap_err().is_parse());
        assert!(!parse_character("1/2,0,0,0@X2").unwrap_err().is_parse());
    }

    #[test]
    fn config() {
        let c = Config::parse("# defaults\nrank_max = 3\nbeta_window = -2:-1/2\n").unwrap();
        assert_eq!(c.rank_max, Some(3));
        assert_eq!(c.beta_window, Some(BetaWindow::new(q(-2, 1), q(-1, 2))));
        assert!(Config::parse("rank = 3").is_err());
        assert!(Config::parse("rank_max").is_err());
    }
}
