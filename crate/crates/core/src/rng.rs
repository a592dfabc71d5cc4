//! Seeded generator for the randomized strategies.
//!
//! Reports must be byte-identical across runs and toolchain updates, so the
//! generator is pinned here instead of pulling in an external RNG whose
//! stream might change between versions. SplitMix64 is enough for sampling
//! probe elements; nothing here needs cryptographic quality.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)` by rejection; `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// A residue vector over `F_p`, length `len`.
    pub fn residues(&mut self, p: u32, len: usize) -> Vec<u32> {
        (0..len).map(|_| self.below(p as u64) as u32).collect()
    }

    /// A nonzero residue vector (resamples the all-zero draw).
    pub fn nonzero_residues(&mut self, p: u32, len: usize) -> Vec<u32> {
        loop {
            let v = self.residues(p, len);
            if v.iter().any(|&c| c != 0) {
                return v;
            }
        }
    }
}
