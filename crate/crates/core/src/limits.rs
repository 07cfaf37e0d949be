use std::time::Instant;

/// Resource guards for enumeration and search operations.
///
/// Defaults are sized for desk-scale exact computation; callers may widen
/// them explicitly when they know what they are asking for.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest q^k accepted for single-pass enumeration of a word space.
    pub max_words: u64,
    /// Largest q^k accepted for pairwise (codebook) enumeration.
    pub max_codebook: u64,
    /// Largest search space (q^r for code search, q^(k+r) for assignment
    /// search) accepted by backtracking operations.
    pub max_space: u64,
    /// Largest matrix order accepted by exact minimal-length search.
    pub max_m: usize,
    /// Optional wall-clock deadline; searches return `TimedOut` past it.
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_words: 1 << 26,
            max_codebook: 1 << 12,
            max_space: 1 << 20,
            max_m: 8,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() > d)
    }
}

/// q^k as u64, or None on overflow.
pub fn checked_pow(q: u32, k: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(q as u64)?;
    }
    Some(acc)
}
