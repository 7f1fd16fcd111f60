//! Lyndon basis of the free Lie algebra on the weighted generators.

use crate::series::Series;
use crate::signature::{Letter, Signature, Word};

pub fn is_lyndon(w: &[Letter]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|k| {
        let rot = w[k..].iter().chain(&w[..k]);
        w.iter().lt(rot)
    })
}

/// Lyndon words of the given weighted degree, in canonical order.
pub fn lyndon_words(sig: &Signature, d: usize) -> Vec<Word> {
    sig.words_of_degree(d).into_iter().filter(|w| is_lyndon(w)).collect()
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> (&[Letter], &[Letter]) {
    for k in 1..w.len() {
        if is_lyndon(&w[k..]) {
            return (&w[..k], &w[k..]);
        }
    }
    unreachable!("words of length >= 2 have a Lyndon proper suffix")
}

/// Standard bracketing of a Lyndon word as an element of `A`.
pub fn bracketing(sig: Signature, valid: usize, w: &[Letter]) -> Series {
    if w.len() == 1 {
        return Series::letter(sig, valid, w[0]);
    }
    let (u, v) = standard_factorization(w);
    bracketing(sig, valid, u).commutator(&bracketing(sig, valid, v))
}

/// Basis of the degree-`d` part of the free Lie algebra.
pub fn lie_basis(sig: Signature, valid: usize, d: usize) -> Vec<Series> {
    lyndon_words(&sig, d).iter().map(|w| bracketing(sig, valid, w)).collect()
}
