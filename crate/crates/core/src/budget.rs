use crate::error::{Error, Result};

/// Enumeration budget shared by every exhaustive operation.
///
/// Exceeding the budget yields a `ResourceLimit` error rather than an
/// open-ended computation.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    /// Maximum number of words any single enumeration may produce.
    pub max_words: u64,
    /// Maximum radius accepted by edit-ball enumeration.
    pub max_edit_radius: u32,
    /// Maximum tuple count for exhaustive specification / multiplicity sweeps.
    pub max_tuples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_words: 8_000_000,
            max_edit_radius: 6,
            max_tuples: 20_000_000,
        }
    }
}

impl Budget {
    pub fn check_words(&self, count: u64, what: &str) -> Result<()> {
        if count > self.max_words {
            Err(Error::ResourceLimit(format!(
                "{what}: {count} words exceeds budget {}",
                self.max_words
            )))
        } else {
            Ok(())
        }
    }

    pub fn check_tuples(&self, count: u64, what: &str) -> Result<()> {
        if count > self.max_tuples {
            Err(Error::ResourceLimit(format!(
                "{what}: {count} tuples exceeds budget {}",
                self.max_tuples
            )))
        } else {
            Ok(())
        }
    }
}
