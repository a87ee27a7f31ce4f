//! Size limits guarding against accidental blowup in sweeps.

use crate::error::{Error, Result};

/// Configurable size limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest admissible field order |F|.
    pub field_order: u64,
    /// Byte budget for one order stratum of the window table (one byte per window).
    pub window_bytes: u64,
    /// Largest |F|^n accepted by the brute-force oracle.
    pub oracle_windows: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_order: 1 << 16,
            window_bytes: 1 << 27,
            oracle_windows: 1 << 16,
        }
    }
}

impl Caps {
    pub(crate) fn check(cap: &'static str, requested: u128, limit: u64) -> Result<()> {
        if requested > limit as u128 {
            Err(Error::CapExceeded {
                cap,
                requested,
                limit: limit as u128,
            })
        } else {
            Ok(())
        }
    }
}
