//! Deterministic pseudo-random numbers.
//!
//! Every stochastic operation in this crate takes an explicit seed and draws
//! from [`SplitMix64`], a 64-bit counter-based generator: the state advances
//! by the fixed constant `0x9E3779B97F4A7C15` and each output is a finalizing
//! hash of the state.  The sequence is therefore a pure function of the seed,
//! identical on every platform, and trivial to re-implement in any language
//! (documented so that dataset fixtures can be reproduced byte-for-byte).

use crate::mathx;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derives an independent stream, e.g. one per class or per run.
    pub fn fork(&self, stream: u64) -> Self {
        let mut child = Self::new(self.state ^ stream.wrapping_mul(0xA076_1D64_78BD_642F));
        child.next_u64();
        Self::new(child.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1), 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, bound) by rejection, so the result is unbiased.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Standard normal via Box-Muller.  Consumes exactly two uniforms per
    /// deviate (the sine half of the pair is discarded) so the stream
    /// position stays a simple function of how many deviates were drawn.
    pub fn next_standard_normal(&mut self) -> f64 {
        let u1 = loop {
            let u = self.next_f64();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.next_f64();
        let r = mathx::sqrt(-2.0 * mathx::ln(u1));
        r * mathx::cos(2.0 * core::f64::consts::PI * u2)
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// `count` standard-normal deviates.
    pub fn standard_normal_vec(&mut self, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.next_standard_normal()).collect()
    }
}
