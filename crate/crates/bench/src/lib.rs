//! Seeded inputs shared by the benchmarks.

use gt_core::random::{random_cyclic, random_taut, rng};
use gt_core::{CyclicSeries, FramingData, Signature, TAut};

pub struct Fixture {
    pub sig: Signature,
    pub framing: FramingData,
    pub necklaces: Vec<CyclicSeries>,
}

impl Fixture {
    /// `count` random necklace sums with degrees `2..=degree`, exact through `degree`.
    pub fn new(g: usize, n: usize, degree: usize, count: usize, seed: u64) -> Self {
        let sig = Signature::new(g, n).expect("valid signature");
        let mut r = rng(seed);
        let necklaces = (0..count).map(|_| random_cyclic(sig, degree, 2..=degree, 4, &mut r)).collect();
        Fixture { sig, framing: FramingData::adapted(sig), necklaces }
    }
}

/// `exp` of a dense random derivation with components in degrees `1..=3`.
pub fn automorphism(g: usize, n: usize, valid: usize, seed: u64) -> TAut {
    let sig = Signature::new(g, n).expect("valid signature");
    random_taut(sig, valid, 1..=3, 0.5, &mut rng(seed))
}
