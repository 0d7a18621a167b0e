//! Enumeration caps shared by every module that walks a span or codebook.

use std::sync::OnceLock;

/// Largest number of vectors any single enumeration may visit unless
/// overridden through `RACKCODE_CAP`.
pub const DEFAULT_SPAN_CAP: u64 = 1 << 24;

/// Name of the environment variable that overrides [`DEFAULT_SPAN_CAP`].
pub const CAP_ENV_VAR: &str = "RACKCODE_CAP";

static CAP: OnceLock<u64> = OnceLock::new();

/// The enumeration cap in effect for this process.
///
/// Read once from `RACKCODE_CAP`; unparsable or zero values fall back to the
/// default.
pub fn span_cap() -> u64 {
    *CAP.get_or_init(|| {
        std::env::var(CAP_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_SPAN_CAP)
    })
}

/// `q^dim` if it does not exceed `cap`.
pub fn checked_span_size(q: u16, dim: usize, cap: u64) -> Option<u64> {
    let mut size: u64 = 1;
    for _ in 0..dim {
        size = size.checked_mul(q as u64)?;
        if size > cap {
            return None;
        }
    }
    Some(size)
}
