//! Deterministic rational probe values for binding spectator variables.
//!
//! Loop-equation and projection checks are per-variable statements; spectators
//! are bound to generic rational points. Genericity failures form a
//! measure-zero set, so a handful of independent probe sets rules them out.
//! The generator is a fixed-seed SplitMix64 so every run is reproducible and
//! the seed can be recorded in output artifacts.

use crate::rat::{rat, Rat};

#[derive(Clone, Debug)]
pub struct ProbeGen {
    state: u64,
    pub seed: u64,
}

impl ProbeGen {
    pub fn new(seed: u64) -> Self {
        ProbeGen { state: seed, seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Next probe: a small nonzero rational p/q with |p| <= 40, 1 <= q <= 8.
    fn next_rat(&mut self) -> Rat {
        loop {
            let p = (self.next_u64() % 81) as i64 - 40;
            let q = (self.next_u64() % 8) as i64 + 1;
            if p != 0 {
                return rat(p, q);
            }
        }
    }

    /// Draws `n` distinct probes avoiding the `forbidden` values (pole and
    /// ramification locations, previously drawn probes, ...).
    pub fn distinct(&mut self, n: usize, forbidden: &[Rat]) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        while out.len() < n {
            let cand = self.next_rat();
            if forbidden.contains(&cand) || out.contains(&cand) {
                continue;
            }
            out.push(cand);
        }
        out
    }
}
