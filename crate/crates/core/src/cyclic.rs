//! The trace space `|A|` of cyclic words and its tensor powers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Q;
use crate::series::{Key, LinComb, Series};
use crate::signature::{Letter, Signature, Word};

/// A necklace, stored as its lexicographically minimal rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(letters: &[Letter]) -> Self {
        let k = least_rotation(letters);
        let mut w = Word::with_capacity(letters.len());
        w.extend_from_slice(&letters[k..]);
        w.extend_from_slice(&letters[..k]);
        CyclicWord(w)
    }

    /// The empty necklace `𝟏`.
    pub fn unit() -> Self {
        CyclicWord(Word::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn word(&self) -> Word {
        self.0.clone()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{:?}|", self.0.as_slice())
    }
}

impl Key for CyclicWord {
    fn degree(&self, sig: &Signature) -> usize {
        sig.degree(&self.0)
    }
    fn length(&self) -> usize {
        self.0.len()
    }
}

/// Start index of the least rotation (two-pointer minimum-expression scan, linear time).
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

pub type CyclicSeries = LinComb<CyclicWord>;
pub type BiCyclic = LinComb<(CyclicWord, CyclicWord)>;
pub type TriCyclic = LinComb<(CyclicWord, CyclicWord, CyclicWord)>;

/// The quotient map `|·|: A → |A|`.
pub fn trace(a: &Series) -> CyclicSeries {
    a.map_linear(a.valid_degree(), |w| [(CyclicWord::new(w), Q::one())])
}

impl CyclicSeries {
    pub fn unit(sig: Signature, valid: usize) -> Self {
        Self::monomial(sig, valid, CyclicWord::unit(), Q::one())
    }

    pub fn cyclic(sig: Signature, valid: usize, w: &[Letter]) -> Self {
        Self::monomial(sig, valid, CyclicWord::new(w), Q::one())
    }

    /// The representative series using each necklace's canonical rotation.
    pub fn lift(&self) -> Series {
        self.map_linear(self.valid_degree(), |c| [(c.word(), Q::one())])
    }

    /// Action of a derivation given by letter images; descends from `A`.
    pub fn apply_derivation(&self, images: &[Series]) -> CyclicSeries {
        trace(&self.lift().apply_derivation(images))
    }

    pub fn apply_hom(&self, images: &[Series]) -> CyclicSeries {
        trace(&self.lift().apply_hom(images))
    }

    /// `P ⊗ Q`
    pub fn tensor(&self, other: &CyclicSeries) -> BiCyclic {
        let valid = crate::series::product_valid(self.valid_degree(), self.low(), other.valid_degree(), other.low());
        let mut out = BiCyclic::zero(self.sig(), valid);
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                out.add_term((a.clone(), b.clone()), ca * cb);
            }
        }
        out
    }

    /// `P ∧ Q = P ⊗ Q − Q ⊗ P`
    pub fn wedge(&self, other: &CyclicSeries) -> BiCyclic {
        self.tensor(other) - other.tensor(self)
    }

    /// `Δ̃ = (id ⊗ S) ∘ Δ` followed by `|·| ⊗ |·|`.
    pub fn delta_tilde(&self) -> BiCyclic {
        let mut out = BiCyclic::zero(self.sig(), self.valid_degree());
        for (c, coeff) in self.iter() {
            let w = c.letters();
            let l = w.len();
            for mask in 0u32..(1u32 << l) {
                let mut a = Word::new();
                let mut b = Word::new();
                for (i, &x) in w.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        a.push(x);
                    } else {
                        b.push(x);
                    }
                }
                b.reverse();
                let sign = if b.len().is_multiple_of(2) { coeff.clone() } else { -coeff };
                out.add_term((CyclicWord::new(&a), CyclicWord::new(&b)), sign);
            }
        }
        out
    }
}

impl BiCyclic {
    /// `(id ⊗ ε)`: keeps terms whose second factor is `𝟏`.
    pub fn co_counit_first(&self) -> CyclicSeries {
        self.map_linear(self.valid_degree(), |(a, b)| if b.is_unit() { Some((a.clone(), Q::one())) } else { None })
    }

    pub fn swap(&self) -> BiCyclic {
        self.map_linear(self.valid_degree(), |(a, b)| [((b.clone(), a.clone()), Q::one())])
    }

    /// Diagonal action `u·(P⊗Q) = uP⊗Q + P⊗uQ` of a derivation.
    pub fn apply_derivation(&self, images: &[Series]) -> BiCyclic {
        let sig = self.sig();
        let v = self.valid_degree();
        let mut valid = derivation_shift_valid(self, images);
        for l in sig.letters() {
            valid = valid.min(images[l as usize].valid_degree());
        }
        let mut out = BiCyclic::zero(sig, valid);
        for ((a, b), c) in self.iter() {
            let ua = trace(&Series::word(sig, v, a.letters()).apply_derivation(images));
            for (k, ck) in ua.iter() {
                out.add_term((k.clone(), b.clone()), ck * c);
            }
            let ub = trace(&Series::word(sig, v, b.letters()).apply_derivation(images));
            for (k, ck) in ub.iter() {
                out.add_term((a.clone(), k.clone()), ck * c);
            }
        }
        out
    }

    /// Diagonal action `F·(P⊗Q) = FP ⊗ FQ` of an algebra map.
    pub fn apply_hom(&self, images: &[Series]) -> BiCyclic {
        let sig = self.sig();
        let valid = images.iter().map(|s| s.valid_degree()).fold(self.valid_degree(), usize::min);
        let mut out = BiCyclic::zero(sig, valid);
        for ((a, b), c) in self.iter() {
            let fa = CyclicSeries::cyclic(sig, valid, a.letters()).apply_hom(images);
            let fb = CyclicSeries::cyclic(sig, valid, b.letters()).apply_hom(images);
            for (ka, ca) in fa.iter() {
                for (kb, cb) in fb.iter() {
                    out.add_term((ka.clone(), kb.clone()), ca * cb * c);
                }
            }
        }
        out
    }
}

/// Validity bound coming from the unknown tail of a bicyclic element under a derivation.
fn derivation_shift_valid(w: &BiCyclic, images: &[Series]) -> usize {
    let sig = w.sig();
    let mut shift: isize = isize::MAX;
    for l in sig.letters() {
        shift = shift.min(images[l as usize].low() as isize - sig.weight(l) as isize);
    }
    if shift == isize::MAX {
        return w.valid_degree();
    }
    (w.valid_degree() as isize + shift).max(0) as usize
}
