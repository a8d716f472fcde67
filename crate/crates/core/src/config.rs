//! Cost guards. Defaults can be overridden with `CYLSCHUR_LIMITS`, a
//! comma-separated list such as `edges=20,perm=7,boxes=24`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest strict-edge set accepted by the 2^|E| signed sum.
    pub max_strict_edges: usize,
    /// Largest n for sums over the symmetric group S_n.
    pub max_perm_n: usize,
    /// Largest diagram accepted by the tiling search.
    pub max_tiling_boxes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_strict_edges: 24,
            max_perm_n: 8,
            max_tiling_boxes: 30,
        }
    }
}

pub const LIMITS_ENV: &str = "CYLSCHUR_LIMITS";

impl Limits {
    pub fn parse(spec: &str) -> Result<Limits> {
        let mut out = Limits::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("limit `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("limit `{item}` has a non-integer value")))?;
            match key.trim() {
                "edges" => out.max_strict_edges = value,
                "perm" => out.max_perm_n = value,
                "boxes" => out.max_tiling_boxes = value,
                other => return Err(Error::Parse(format!("unknown limit `{other}`"))),
            }
        }
        Ok(out)
    }

    /// Defaults, overridden by the environment variable when it is set.
    pub fn from_env() -> Result<Limits> {
        match std::env::var(LIMITS_ENV) {
            Ok(spec) => Limits::parse(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub(crate) fn check(what: &'static str, actual: usize, limit: usize) -> Result<()> {
        if actual > limit {
            Err(Error::CostGuard {
                what,
                actual,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
