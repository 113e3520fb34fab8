//! Resource budgets shared by the sieve, the enumerator and the `b_F` search.

use crate::{Error, Result};

/// Environment variable overriding [`Budget::memory_bytes`].
pub const MEMORY_ENV: &str = "CUBIC_GENUS_MEMORY_BUDGET";
/// Environment variable overriding [`Budget::bf_nodes`].
pub const NODE_ENV: &str = "CUBIC_GENUS_NODE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on the bytes a single sieve or factor table may allocate.
    pub memory_bytes: u64,
    /// Upper bound on memoized states in the pair-free subset search.
    pub bf_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            memory_bytes: 1 << 30,
            bf_nodes: 20_000_000,
        }
    }
}

impl Budget {
    /// Defaults, overridden by the environment when the variables parse.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var(MEMORY_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            b.memory_bytes = v;
        }
        if let Some(v) = std::env::var(NODE_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            b.bf_nodes = v;
        }
        b
    }

    pub(crate) fn check_memory(&self, what: &str, bytes: u64) -> Result<()> {
        if bytes > self.memory_bytes {
            return Err(Error::Resource(format!(
                "{what} needs about {bytes} bytes, budget is {}",
                self.memory_bytes
            )));
        }
        Ok(())
    }
}
