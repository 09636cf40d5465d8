//! Counter-based splittable random number generation.
//!
//! Every source of randomness in the crate flows from a single 64-bit seed.
//! The generator hashes a (key, counter) pair with the SplitMix64 finalizer,
//! so child streams obtained through [`Rng::split`] are independent and a
//! stream's output does not depend on how many values sibling streams have
//! consumed.

/// SplitMix64 finalizer; a bijective mixer on `u64`.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A deterministic counter-based generator.
#[derive(Debug, Clone)]
pub struct Rng {
    key: u64,
    counter: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { key: mix(seed), counter: 0 }
    }

    /// Derives an independent child stream labelled by `label`.
    pub fn split(&self, label: u64) -> Self {
        Rng { key: mix(self.key ^ mix(label.wrapping_add(0x5851_f42d_4c95_7f2d))), counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = mix(self.key.wrapping_add(self.counter.wrapping_mul(0xda94_2042_e4dd_58b5)));
        self.counter += 1;
        v
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        // Rejection-free multiply-shift; bias is negligible for n << 2^64.
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Standard normal draw via inverse-CDF.
    pub fn next_standard_normal(&mut self) -> f64 {
        let mut u = self.next_f64();
        if u <= 0.0 {
            u = f64::MIN_POSITIVE;
        }
        crate::special::inv_norm_cdf(u)
    }

    /// Fisher-Yates shuffle of `0..n`.
    pub fn permutation(&mut self, n: usize) -> alloc::vec::Vec<usize> {
        let mut idx: alloc::vec::Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.next_index(i + 1);
            idx.swap(i, j);
        }
        idx
    }
}
