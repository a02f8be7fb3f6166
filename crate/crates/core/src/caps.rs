//! Size limits for the exhaustive machinery.
//!
//! Every construction downstream of a lattice is exhaustive, so each one is
//! guarded by an explicit cap and fails with [`CapExceeded`] instead of
//! running away.

use core::fmt;

/// Configurable size limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest lattice accepted by [`crate::enumerate_boolean_subalgebras`].
    pub lattice_elements: usize,
    /// Largest lattice whose meet/join tables are materialized at all.
    pub table_elements: usize,
    /// Largest number of Boolean subalgebras.
    pub subalgebras: usize,
    /// Upper bound on `log2` of the product of `2^|fiber|`, i.e. the total
    /// number of Stone points, for subobject enumeration.
    pub subobject_bits: usize,
    /// Largest closure size when generating a projection lattice.
    pub generated_elements: usize,
    /// Largest number of valuations an exhaustive logic check may visit.
    pub valuations: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            lattice_elements: 64,
            table_elements: 1024,
            subalgebras: 4096,
            subobject_bits: 20,
            generated_elements: 64,
            valuations: 2_000_000,
        }
    }
}

/// A size cap was hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapExceeded {
    pub what: &'static str,
    pub limit: u64,
    pub actual: u64,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "size cap exceeded for {}: {} > {}",
            self.what, self.actual, self.limit
        )
    }
}

impl core::error::Error for CapExceeded {}

pub(crate) fn check_cap(
    what: &'static str,
    limit: usize,
    actual: usize,
) -> Result<(), CapExceeded> {
    if actual > limit {
        Err(CapExceeded {
            what,
            limit: limit as u64,
            actual: actual as u64,
        })
    } else {
        Ok(())
    }
}
