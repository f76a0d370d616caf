//! Search limits from `chain=K,nodes=N,parses=P` settings.

use thfsg_core::parser::SearchLimits;
use thiserror::Error;

/// The variable consulted for default limits.
pub const LIMITS_VAR: &str = "THFSG_LIMITS";

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("bad limit setting `{0}` (expected chain=K, nodes=N or parses=P)")]
pub struct LimitsError(pub String);

/// Applies comma-separated `key=value` settings on top of `base`.
pub fn parse_limits(text: &str, base: SearchLimits) -> Result<SearchLimits, LimitsError> {
    let mut limits = base;
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || LimitsError(part.to_string());
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let n: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "chain" => limits.max_chain = Some(n),
            "nodes" => limits.max_nodes = n,
            "parses" if n > 0 => limits.max_parses = n,
            _ => return Err(bad()),
        }
    }
    Ok(limits)
}

/// The defaults, overridden by [`LIMITS_VAR`] when it is set.
pub fn limits_from_env() -> Result<SearchLimits, LimitsError> {
    match std::env::var(LIMITS_VAR) {
        Ok(text) => parse_limits(&text, SearchLimits::default()),
        Err(_) => Ok(SearchLimits::default()),
    }
}
