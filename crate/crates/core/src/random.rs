//! Seeded random elements for property checks and gauge choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclic::{CyclicSeries, CyclicWord};
use crate::lie::lie_basis;
use crate::rational::Q;
use crate::series::Series;
use crate::signature::Signature;
use crate::tangential::{tder_basis, TAut, TDer};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_coeff<R: Rng>(rng: &mut R) -> Q {
    loop {
        let n: i64 = rng.random_range(-3..=3);
        if n != 0 {
            let d: i64 = rng.random_range(1..=2);
            return Q::new(n, d);
        }
    }
}

/// Random word of the given degree.
fn random_word<R: Rng>(sig: &Signature, d: usize, rng: &mut R) -> Option<Vec<u8>> {
    let mut w = Vec::new();
    let mut rem = d;
    while rem > 0 {
        let choices: Vec<u8> = sig.letters().filter(|&l| sig.weight(l) <= rem).collect();
        if choices.is_empty() {
            return None;
        }
        let l = choices[rng.random_range(0..choices.len())];
        rem -= sig.weight(l);
        w.push(l);
    }
    Some(w)
}

/// Sum of up to `terms` random necklaces with degrees in `degrees`.
pub fn random_cyclic<R: Rng>(
    sig: Signature,
    valid: usize,
    degrees: std::ops::RangeInclusive<usize>,
    terms: usize,
    rng: &mut R,
) -> CyclicSeries {
    let mut out = CyclicSeries::zero(sig, valid);
    let degrees: Vec<usize> = degrees.collect();
    for _ in 0..terms {
        let d = degrees[rng.random_range(0..degrees.len())];
        if let Some(w) = random_word(&sig, d, rng) {
            out.add_term(CyclicWord::new(&w), small_coeff(rng));
        }
    }
    out
}

pub fn random_series<R: Rng>(
    sig: Signature,
    valid: usize,
    degrees: std::ops::RangeInclusive<usize>,
    terms: usize,
    rng: &mut R,
) -> Series {
    let mut out = Series::zero(sig, valid);
    let degrees: Vec<usize> = degrees.collect();
    for _ in 0..terms {
        let d = degrees[rng.random_range(0..degrees.len())];
        if let Some(w) = random_word(&sig, d, rng) {
            out.add_term(w.into_iter().collect(), small_coeff(rng));
        }
    }
    out
}

/// Random Lie element with components in the given degrees.
pub fn random_lie<R: Rng>(
    sig: Signature,
    valid: usize,
    degrees: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> Series {
    let mut out = Series::zero(sig, valid);
    for d in degrees {
        for b in lie_basis(sig, valid, d) {
            if rng.random_bool(0.5) {
                out.add_scaled(&b, &small_coeff(rng));
            }
        }
    }
    out
}

/// Random element of `tder⁺` with homogeneous parts in the given degrees.
pub fn random_tder<R: Rng>(
    sig: Signature,
    valid: usize,
    degrees: std::ops::RangeInclusive<usize>,
    density: f64,
    rng: &mut R,
) -> TDer {
    let mut u = TDer::zero(sig, valid);
    for d in degrees {
        for b in tder_basis(sig, valid, d) {
            if rng.random_bool(density) {
                u = u.add(&b.scale(&small_coeff(rng)));
            }
        }
    }
    u
}

/// `exp` of a random element of `tder⁺`.
pub fn random_taut<R: Rng>(
    sig: Signature,
    valid: usize,
    degrees: std::ops::RangeInclusive<usize>,
    density: f64,
    rng: &mut R,
) -> TAut {
    crate::tangential::exp(&random_tder(sig, valid, degrees, density, rng)).expect("positive degree")
}
