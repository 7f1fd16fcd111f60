//! Truncated noncommutative power series in the weight-graded alphabet.
//!
//! All containers are sparse maps from a basis key to an exact rational,
//! together with the degree through which the stored data is exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::error::{GtError, Result};
use crate::rational::Q;
use crate::signature::{Letter, Signature, Word};

/// A basis element of a graded vector space.
pub trait Key: Clone + Eq + Hash + Ord + fmt::Debug {
    fn degree(&self, sig: &Signature) -> usize;
    /// Secondary sort key after degree.
    fn length(&self) -> usize;
}

impl Key for Word {
    fn degree(&self, sig: &Signature) -> usize {
        sig.degree(self)
    }
    fn length(&self) -> usize {
        self.len()
    }
}

impl<A: Key, B: Key> Key for (A, B) {
    fn degree(&self, sig: &Signature) -> usize {
        self.0.degree(sig) + self.1.degree(sig)
    }
    fn length(&self) -> usize {
        self.0.length() + self.1.length()
    }
}

impl<A: Key, B: Key, C: Key> Key for (A, B, C) {
    fn degree(&self, sig: &Signature) -> usize {
        self.0.degree(sig) + self.1.degree(sig) + self.2.degree(sig)
    }
    fn length(&self) -> usize {
        self.0.length() + self.1.length() + self.2.length()
    }
}

/// Sparse linear combination of basis keys, exact through `valid` degree.
#[derive(Clone)]
pub struct LinComb<K: Key> {
    sig: Signature,
    valid: usize,
    terms: FxHashMap<K, Q>,
}

pub type Series = LinComb<Word>;
pub type TensorSeries = LinComb<(Word, Word)>;

impl<K: Key> LinComb<K> {
    pub fn zero(sig: Signature, valid: usize) -> Self {
        LinComb { sig, valid, terms: FxHashMap::default() }
    }

    pub fn monomial(sig: Signature, valid: usize, key: K, coeff: Q) -> Self {
        let mut s = Self::zero(sig, valid);
        s.add_term(key, coeff);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Q)>>(sig: Signature, valid: usize, terms: I) -> Self {
        let mut s = Self::zero(sig, valid);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn valid_degree(&self) -> usize {
        self.valid
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &K) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn get(&self, key: &K) -> Option<&Q> {
        self.terms.get(key)
    }

    /// Adds `c * key`; keys beyond the valid degree are dropped.
    pub fn add_term(&mut self, key: K, c: Q) {
        if c.is_zero() || key.degree(&self.sig) > self.valid {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += c * other`, lowering validity to the minimum.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        self.check(other);
        self.truncate(other.valid);
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.sig, self.valid);
        }
        LinComb {
            sig: self.sig,
            valid: self.valid,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Lowers the valid degree to `v` (never raises it).
    pub fn truncate(&mut self, v: usize) {
        if v < self.valid {
            self.valid = v;
            let sig = self.sig;
            self.terms.retain(|k, _| k.degree(&sig) <= v);
        }
    }

    pub fn truncated(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.truncate(v);
        s
    }

    /// Forces the valid degree; used when the caller knows exactness independently.
    pub fn with_valid(mut self, v: usize) -> Self {
        if v < self.valid {
            self.truncate(v);
        } else {
            self.valid = v;
        }
        self
    }

    pub fn graded_component(&self, d: usize) -> Self {
        let sig = self.sig;
        LinComb {
            sig,
            valid: self.valid,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree(&sig) == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Terms of degree `>= d`.
    pub fn from_degree(&self, d: usize) -> Self {
        let sig = self.sig;
        LinComb {
            sig,
            valid: self.valid,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree(&sig) >= d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.degree(&self.sig)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.degree(&self.sig)).max()
    }

    /// Lowest degree at which `self` may be nonzero, counting the unknown tail.
    pub fn low(&self) -> usize {
        self.min_degree().unwrap_or(self.valid.saturating_add(1))
    }

    pub fn cmp_keys(&self, a: &K, b: &K) -> Ordering {
        a.degree(&self.sig).cmp(&b.degree(&self.sig)).then(a.length().cmp(&b.length())).then(a.cmp(b))
    }

    /// Terms in canonical order: degree, length, then key order.
    pub fn sorted_terms(&self) -> Vec<(&K, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.cmp_keys(a.0, b.0));
        v
    }

    /// Equality up to the smaller valid degree.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.sig != other.sig {
            return false;
        }
        let v = self.valid.min(other.valid);
        let sig = self.sig;
        let a = self.terms.iter().filter(|(k, _)| k.degree(&sig) <= v);
        let b = other.terms.iter().filter(|(k, _)| k.degree(&sig) <= v);
        a.clone().count() == b.count() && a.into_iter().all(|(k, c)| other.terms.get(k) == Some(c))
    }

    /// Linear extension of a map on basis keys.
    pub fn map_linear<K2: Key, F, I>(&self, valid: usize, mut f: F) -> LinComb<K2>
    where
        F: FnMut(&K) -> I,
        I: IntoIterator<Item = (K2, Q)>,
    {
        let mut out = LinComb::zero(self.sig, valid);
        for (k, c) in self.iter() {
            for (k2, c2) in f(k) {
                out.add_term(k2, c2 * c);
            }
        }
        out
    }

    pub(crate) fn check(&self, other: &Self) {
        assert_eq!(self.sig, other.sig, "signature mismatch");
    }

    pub fn try_check(&self, other: &Self) -> Result<()> {
        self.sig.check_same(&other.sig)
    }
}

impl<K: Key> PartialEq for LinComb<K> {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

impl<K: Key> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[valid {}] ", self.valid)?;
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{k:?}")?;
        }
        Ok(())
    }
}

impl<K: Key> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl<K: Key> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl<K: Key> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_scaled(&rhs, &Q::one());
        self
    }
}

impl<K: Key> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_scaled(&rhs, &-Q::one());
        self
    }
}

impl<K: Key> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scale(&-Q::one())
    }
}

impl<K: Key> Neg for LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scale(&-Q::one())
    }
}

/// Validity of a product given the operands' validity and lowest degrees.
pub(crate) fn product_valid(va: usize, la: usize, vb: usize, lb: usize) -> usize {
    va.saturating_add(lb).min(vb.saturating_add(la)).min(va.max(vb))
}

impl Series {
    pub fn one(sig: Signature, valid: usize) -> Self {
        Self::monomial(sig, valid, Word::new(), Q::one())
    }

    pub fn constant(sig: Signature, valid: usize, c: Q) -> Self {
        Self::monomial(sig, valid, Word::new(), c)
    }

    pub fn letter(sig: Signature, valid: usize, l: Letter) -> Self {
        Self::monomial(sig, valid, Word::from_slice(&[l]), Q::one())
    }

    pub fn word(sig: Signature, valid: usize, w: &[Letter]) -> Self {
        Self::monomial(sig, valid, Word::from_slice(w), Q::one())
    }

    /// Coefficient of the empty word.
    pub fn counit(&self) -> Q {
        self.coeff(&Word::new())
    }

    pub fn try_mul(&self, other: &Series) -> Result<Series> {
        self.try_check(other)?;
        Ok(self.mul(other))
    }

    /// Concatenation product. Panics on signature mismatch; see [`Series::try_mul`].
    pub fn mul(&self, other: &Series) -> Series {
        self.check(other);
        let sig = self.sig;
        let valid = product_valid(self.valid, self.low(), other.valid, other.low());
        let mut out = Series::zero(sig, valid);
        let rhs: Vec<(&Word, usize, &Q)> = other.iter().map(|(w, c)| (w, sig.degree(w), c)).collect();
        for (wa, ca) in self.iter() {
            let da = sig.degree(wa);
            if da > valid {
                continue;
            }
            for (wb, db, cb) in &rhs {
                if da + db > valid {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * *cb);
            }
        }
        out
    }

    /// `ab - ba`
    pub fn commutator(&self, other: &Series) -> Series {
        self.mul(other) - other.mul(self)
    }

    pub fn pow(&self, m: usize) -> Series {
        let mut acc = Series::one(self.sig, self.valid);
        for _ in 0..m {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn exp(&self) -> Result<Series> {
        let c = self.counit();
        if !c.is_zero() {
            return Err(GtError::NonAugmentedExp(c.to_string()));
        }
        Ok(self.exp_unchecked())
    }

    fn exp_unchecked(&self) -> Series {
        let mut out = Series::one(self.sig, self.valid);
        let mut power = Series::one(self.sig, self.valid);
        let low = self.low().max(1);
        let mut m = 1;
        while m * low <= self.valid {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            out.add_scaled(&power, &Q::inv_factorial(m));
            m += 1;
        }
        out.truncate(self.valid);
        out
    }

    pub fn log(&self) -> Result<Series> {
        let c = self.counit();
        if !c.is_one() {
            return Err(GtError::NonUnitalLog(c.to_string()));
        }
        let mut t = self.clone();
        t.add_term(Word::new(), -Q::one());
        let mut out = Series::zero(self.sig, self.valid);
        let mut power = Series::one(self.sig, self.valid);
        let low = t.low().max(1);
        let mut m = 1;
        while m * low <= self.valid {
            power = power.mul(&t);
            if power.is_zero() {
                break;
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&power, &Q::new(sign, m as i64));
            m += 1;
        }
        out.truncate(self.valid);
        Ok(out)
    }

    /// `log(exp(a) exp(b))` for augmented `a`, `b`.
    pub fn bch(a: &Series, b: &Series) -> Result<Series> {
        a.exp()?.mul(&b.exp()?).log()
    }

    /// Coproduct with every generator primitive.
    pub fn coproduct(&self) -> TensorSeries {
        let mut out = TensorSeries::zero(self.sig, self.valid);
        for (w, c) in self.iter() {
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
                out.add_term((a, b), c.clone());
            }
        }
        out
    }

    /// Anti-automorphism negating generators.
    pub fn antipode(&self) -> Series {
        self.map_linear(self.valid, |w| {
            let mut r: Word = w.iter().rev().copied().collect();
            r.shrink_to_fit();
            let sign = if w.len() % 2 == 0 { Q::one() } else { -Q::one() };
            [(r, sign)]
        })
    }

    pub fn is_lie_like(&self) -> bool {
        let mut expected = TensorSeries::zero(self.sig, self.valid);
        for (w, c) in self.iter() {
            expected.add_term((w.clone(), Word::new()), c.clone());
            expected.add_term((Word::new(), w.clone()), c.clone());
        }
        self.coproduct().agrees_with(&expected)
    }

    pub fn is_group_like(&self) -> bool {
        self.coproduct().agrees_with(&tensor_product(self, self))
    }

    /// `ω = Σ [x_i, y_i] + Σ z_j`.
    pub fn omega(sig: Signature, valid: usize) -> Series {
        let mut out = Series::zero(sig, valid);
        for i in 1..=sig.g {
            out.add_term(Word::from_slice(&[sig.x(i), sig.y(i)]), Q::one());
            out.add_term(Word::from_slice(&[sig.y(i), sig.x(i)]), -Q::one());
        }
        for j in 1..=sig.n {
            out.add_term(Word::from_slice(&[sig.z(j)]), Q::one());
        }
        out
    }

    /// `ξ = log(Π e^{x_i} e^{y_i} e^{-x_i} e^{-y_i} Π e^{z_j})`.
    pub fn xi(sig: Signature, valid: usize) -> Series {
        let mut prod = Series::one(sig, valid);
        let e = |l: Letter, s: i64| Series::letter(sig, valid, l).scale(&Q::from_int(s)).exp_unchecked();
        for i in 1..=sig.g {
            prod = prod.mul(&e(sig.x(i), 1));
            prod = prod.mul(&e(sig.y(i), 1));
            prod = prod.mul(&e(sig.x(i), -1));
            prod = prod.mul(&e(sig.y(i), -1));
        }
        for j in 1..=sig.n {
            prod = prod.mul(&e(sig.z(j), 1));
        }
        prod.log().expect("product of exponentials is unital")
    }

    /// Image under the derivation determined by `images[l]` for each letter `l`.
    pub fn apply_derivation(&self, images: &[Series]) -> Series {
        let sig = self.sig;
        let valid = derivation_valid(self, images);
        let mut out = Series::zero(sig, valid);
        for (w, c) in self.iter() {
            for (i, &l) in w.iter().enumerate() {
                let img = &images[l as usize];
                let pre = &w[..i];
                let post = &w[i + 1..];
                let rest = sig.degree(pre) + sig.degree(post);
                for (v, cv) in img.iter() {
                    if rest + sig.degree(v) > valid {
                        continue;
                    }
                    let mut nw = Word::from_slice(pre);
                    nw.extend_from_slice(v);
                    nw.extend_from_slice(post);
                    out.add_term(nw, c * cv);
                }
            }
        }
        out
    }

    /// Image under the algebra map sending each letter `l` to `images[l]`.
    ///
    /// Images must have zero constant term.
    pub fn apply_hom(&self, images: &[Series]) -> Series {
        let sig = self.sig;
        let valid = images.iter().map(|s| s.valid).fold(self.valid, usize::min);
        let lows: Vec<usize> = images.iter().map(|s| s.low()).collect();
        let mut cache: FxHashMap<(Word, usize), Series> = FxHashMap::default();
        let mut out = Series::zero(sig, valid);
        for (w, c) in self.iter() {
            if let Some(img) = hom_word(w, images, &lows, valid, &mut cache) {
                out.add_scaled(&img, c);
            }
        }
        out.with_valid(valid)
    }

    /// Product with every term above `cap` dropped.
    fn mul_upto(&self, other: &Series, cap: usize) -> Series {
        let sig = self.sig;
        let mut out = Series::zero(sig, cap);
        let rhs: Vec<(&Word, usize, &Q)> = other.iter().map(|(w, c)| (w, sig.degree(w), c)).collect();
        for (wa, ca) in self.iter() {
            let da = sig.degree(wa);
            for (wb, db, cb) in &rhs {
                if da + db > cap {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * *cb);
            }
        }
        out
    }
}

/// Image of a word through degree `budget`; `None` when nothing survives.
fn hom_word(
    w: &[Letter],
    images: &[Series],
    lows: &[usize],
    budget: usize,
    cache: &mut FxHashMap<(Word, usize), Series>,
) -> Option<Series> {
    let sig = images[0].sig();
    let Some((&last, head)) = w.split_last() else {
        return Some(Series::one(sig, budget));
    };
    let key = (Word::from_slice(w), budget);
    if let Some(s) = cache.get(&key) {
        return Some(s.clone());
    }
    let rest = budget.checked_sub(lows[last as usize])?;
    let h = hom_word(head, images, lows, rest, cache)?;
    let r = h.mul_upto(&images[last as usize], budget);
    cache.insert(key, r.clone());
    Some(r)
}

/// Validity of `D(a)` for a derivation `D` given by letter images.
pub(crate) fn derivation_valid(a: &Series, images: &[Series]) -> usize {
    let sig = a.sig();
    let mut shift: isize = isize::MAX;
    let mut v_img = usize::MAX;
    for l in sig.letters() {
        let img = &images[l as usize];
        shift = shift.min(img.low() as isize - sig.weight(l) as isize);
        v_img = v_img.min(img.valid_degree() + a.low().saturating_sub(sig.weight(l)));
    }
    let v = (a.valid_degree() as isize + shift).max(0) as usize;
    v.min(v_img)
}

/// `a ⊗ b`
pub fn tensor_product(a: &Series, b: &Series) -> TensorSeries {
    let valid = product_valid(a.valid_degree(), a.low(), b.valid_degree(), b.low());
    let mut out = TensorSeries::zero(a.sig(), valid);
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            out.add_term((wa.clone(), wb.clone()), ca * cb);
        }
    }
    out
}
