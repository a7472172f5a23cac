pub mod cache;
pub mod eval;
pub mod expr;

use std::path::Path;

use hallforge::error::{Error, Result};
use hallforge::quiver::Config;

/// JSON schema that every `verify --json` report satisfies.
pub const REPORT_SCHEMA: &str = include_str!("../schema/suite-report.schema.json");

pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// Loads a quiver configuration, or the `A₂`, `q = 2`, bound `(2,2)` default,
/// and applies command-line overrides.
pub fn load_config(path: Option<&Path>, q: Option<u32>, bound: Option<&[usize]>) -> Result<Config> {
    let mut cfg = match path {
        Some(p) => Config::load(p).map_err(|e| match e {
            Error::Io(io) => Error::Config(format!("cannot read {}: {io}", p.display())),
            e => e,
        })?,
        None => Config::linear_a(2, 2, vec![2, 2]),
    };
    if let Some(q) = q {
        cfg.q = q;
    }
    if let Some(b) = bound {
        cfg.bound = b.to_vec();
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Config(format!("window `{s}` is not of the form lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Config(format!("window `{s}` is empty")));
    }
    Ok((lo, hi))
}

pub fn parse_csv<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Config(format!("`{s}` is not a comma-separated list of {what}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_and_lists() {
        assert_eq!(parse_window("-2:2").unwrap(), (-2, 2));
        assert_eq!(parse_window(" 0 : 3 ").unwrap(), (0, 3));
        assert!(parse_window("3:1").is_err());
        assert!(parse_window("3").is_err());
        assert_eq!(parse_csv::<usize>("2, 1,0", "integers").unwrap(), vec![2, 1, 0]);
        assert!(parse_csv::<usize>("2,-1", "integers").is_err());
    }

    #[test]
    fn overrides_are_validated() {
        let c = load_config(None, Some(3), Some(&[1, 1])).unwrap();
        assert_eq!((c.q, c.bound.as_slice()), (3, &[1, 1][..]));
        assert!(load_config(None, None, Some(&[1, 1, 1])).is_err());
        assert!(load_config(Some(Path::new("/nonexistent/x.json")), None, None).is_err());
    }

    #[test]
    fn schema_is_json() {
        let v: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
        assert_eq!(v["type"], "object");
    }
}
