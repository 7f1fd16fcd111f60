use crate::cyclic::{BiCyclic, CyclicSeries};
use crate::error::{GtError, Result};
use crate::rational::Q;
use crate::series::Series;
use crate::signature::{Letter, Signature, Word};

use super::tder::TDer;

/// A tangential automorphism `(F, f_1, …, f_n)` with `F(z_j) = e^{-f_j} z_j e^{f_j}`.
///
/// `images[l]` holds `F(l)` for every letter.
#[derive(Clone, Debug, PartialEq)]
pub struct TAut {
    sig: Signature,
    pub images: Vec<Series>,
    pub tangential: Vec<Series>,
}

impl TAut {
    pub fn new(sig: Signature, images: Vec<Series>, tangential: Vec<Series>) -> Self {
        assert_eq!(images.len(), sig.rank());
        assert_eq!(tangential.len(), sig.n);
        TAut { sig, images, tangential }
    }

    /// Builds `F` from its symplectic images and tangential parts; `F(z_j)` is derived.
    pub fn from_tangential(sig: Signature, sym: Vec<Series>, tangential: Vec<Series>) -> Self {
        let mut images = sym;
        for (j, fj) in tangential.iter().enumerate() {
            images.push(conjugate_letter(sig, sig.z(j + 1), fj));
        }
        TAut { sig, images, tangential }
    }

    pub fn identity(sig: Signature, valid: usize) -> Self {
        TAut {
            sig,
            images: sig.letters().map(|l| Series::letter(sig, valid, l)).collect(),
            tangential: vec![Series::zero(sig, valid); sig.n],
        }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn valid_degree(&self) -> usize {
        self.images
            .iter()
            .map(|s| s.valid_degree())
            .chain(self.tangential.iter().map(|s| s.valid_degree().saturating_add(2)))
            .min()
            .unwrap_or(usize::MAX)
    }

    pub fn truncated(&self, v: usize) -> TAut {
        TAut {
            sig: self.sig,
            images: self.images.iter().map(|s| s.truncated(v)).collect(),
            tangential: self.tangential.iter().map(|s| s.truncated(v.saturating_sub(2))).collect(),
        }
    }

    pub fn apply(&self, a: &Series) -> Series {
        a.apply_hom(&self.images)
    }

    pub fn apply_cyclic(&self, p: &CyclicSeries) -> CyclicSeries {
        p.apply_hom(&self.images)
    }

    pub fn apply_bicyclic(&self, w: &BiCyclic) -> BiCyclic {
        w.apply_hom(&self.images)
    }

    /// `F(z_j) = e^{-f_j} z_j e^{f_j}` for all `j`.
    pub fn satisfies_constraint(&self) -> bool {
        (0..self.sig.n).all(|j| {
            let expected = conjugate_letter(self.sig, self.sig.z(j + 1), &self.tangential[j]);
            self.images[2 * self.sig.g + j].agrees_with(&expected)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.sig.letters().all(|l| {
            let img = &self.images[l as usize];
            img.agrees_with(&Series::letter(self.sig, img.valid_degree(), l))
        }) && self.tangential.iter().all(|f| f.is_zero())
    }

    pub fn try_compose(&self, other: &TAut) -> Result<TAut> {
        self.sig.check_same(&other.sig)?;
        Ok(self.compose(other))
    }

    /// `(F,f)(G,g) = (F∘G, bch(f_j, F(g_j)))`.
    pub fn compose(&self, other: &TAut) -> TAut {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        let images = other.images.iter().map(|g| self.apply(g)).collect();
        let tangential = self
            .tangential
            .iter()
            .zip(&other.tangential)
            .map(|(f, g)| Series::bch(f, &self.apply(g)).expect("tangential parts are augmented"))
            .collect();
        TAut { sig: self.sig, images, tangential }
    }

    /// `(F^{-1}, −F^{-1}(f_j))`.
    pub fn inverse(&self) -> TAut {
        let sig = self.sig;
        let valid = self.images.iter().map(|s| s.valid_degree()).min().unwrap_or(0);
        let mut inv: Vec<Series> = sig.letters().map(|l| Series::letter(sig, valid, l)).collect();
        for _ in 0..=valid {
            let fg: Vec<Series> = inv.iter().map(|g| self.apply(g)).collect();
            let mut changed = false;
            for l in sig.letters() {
                let target = Series::letter(sig, valid, l);
                let err = &fg[l as usize] - &target;
                if !err.is_zero() {
                    changed = true;
                    inv[l as usize] = &inv[l as usize] - &err;
                }
            }
            if !changed {
                break;
            }
        }
        let inv_images: Vec<Series> = inv.into_iter().map(|s| s.with_valid(valid)).collect();
        let tangential = self.tangential.iter().map(|f| -f.apply_hom(&inv_images)).collect();
        TAut { sig, images: inv_images, tangential }
    }

    /// The unique `u ∈ tder⁺` with `exp(u) = self`.
    ///
    /// The operator logarithm gives `u` on letters; `u_j` is recovered from
    /// `u(z_j) = [z_j, u_j]` up to a multiple of `z_j`, which is central in `tder` and is
    /// read off from the tangential part of `exp(−u)∘F`.
    pub fn log(&self) -> Result<TDer> {
        let sig = self.sig;
        let valid = self.valid_degree();
        let d: Vec<Series> = sig.letters().map(|l| self.log_operator(&Series::letter(sig, valid, l))).collect();
        let sym = d[..2 * sig.g].to_vec();
        let mut tangential = Vec::with_capacity(sig.n);
        for j in 0..sig.n {
            let z = sig.z(j + 1);
            let uz = &d[2 * sig.g + j];
            let a = right_divide_commutator(uz, z).ok_or(GtError::LogFailure)?;
            tangential.push(a.with_valid(valid.saturating_sub(2)));
        }
        let mut u = TDer::new(sig, sym, tangential);
        let rest = exp(&u.scale(&-Q::one()))?.compose(self);
        for j in 0..sig.n {
            let z = sig.z(j + 1);
            let g = &rest.tangential[j];
            let c = g.coeff(&Word::from_slice(&[z]));
            let mut expected = Series::zero(sig, g.valid_degree());
            expected.add_term(Word::from_slice(&[z]), c.clone());
            if !g.agrees_with(&expected) {
                return Err(GtError::LogFailure);
            }
            u.tangential[j].add_term(Word::from_slice(&[z]), c);
        }
        Ok(u)
    }

    /// `Σ_k (−1)^{k+1} (F − id)^k (a) / k`
    fn log_operator(&self, a: &Series) -> Series {
        let mut out = Series::zero(self.sig, a.valid_degree());
        let mut term = a.clone();
        let mut k = 1;
        loop {
            term = &self.apply(&term) - &term;
            if term.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
            out = &out + &term.scale(&(sign * Q::new(1, k)));
            k += 1;
        }
        out
    }
}

/// Solves `[z, a] = b` for `a` with no pure powers of `z`; `None` if `b` is not such a bracket.
fn right_divide_commutator(b: &Series, z: Letter) -> Option<Series> {
    let sig = b.sig();
    let v = b.valid_degree().saturating_sub(sig.weight(z));
    let mut a = Series::zero(sig, v);
    for (w, _) in b.iter() {
        if w.first() != Some(&z) {
            continue;
        }
        // a word `z^k u z^l` of `a` is tied to every `z^{k'} u z^{l'}` with `k' + l' = k + l`
        let inner = &w[1..];
        let lead = inner.iter().take_while(|&&l| l == z).count();
        if lead == inner.len() {
            continue;
        }
        let trail = inner.iter().rev().take_while(|&&l| l == z).count();
        let core = &inner[lead..inner.len() - trail];
        for k in 0..=lead + trail {
            let mut cand = Word::new();
            cand.extend(std::iter::repeat_n(z, k));
            cand.extend_from_slice(core);
            cand.extend(std::iter::repeat_n(z, lead + trail - k));
            if a.get(&cand).is_none() {
                let c = divide_coeff(b, &cand, z);
                a.add_term(cand, c);
            }
        }
    }
    let check = Series::letter(sig, v + sig.weight(z), z).commutator(&a);
    check.agrees_with(b).then_some(a)
}

/// Coefficient of `w` in `a` from `[z, a] = b`, with `a_{z^m} = 0`.
fn divide_coeff(b: &Series, w: &[Letter], z: Letter) -> Q {
    let mut acc = Q::zero();
    let mut cur: Word = Word::from_slice(w);
    loop {
        if cur.iter().all(|&l| l == z) {
            return acc;
        }
        let mut zw = Word::from_slice(&[z]);
        zw.extend_from_slice(&cur);
        acc += b.coeff(&zw);
        if cur.last() != Some(&z) {
            return acc;
        }
        cur.pop();
        cur.insert(0, z);
    }
}

/// `e^{-f} z e^{f}`
pub(crate) fn conjugate_letter(sig: Signature, z: Letter, f: &Series) -> Series {
    let v = f.valid_degree() + 2;
    let zs = Series::letter(sig, v, z);
    let ef = f.exp().expect("tangential parts are augmented");
    let emf = f.scale(&-Q::one()).exp().expect("tangential parts are augmented");
    emf.mul(&zs).mul(&ef).with_valid(v)
}

/// Operator exponential of `u ∈ tder⁺`; tangential parts by integrating the flow.
pub fn exp(u: &TDer) -> Result<TAut> {
    u.require_positive()?;
    let sig = u.sig();
    let imgs = u.letter_images();
    let valid = imgs.iter().map(|s| s.valid_degree()).min().unwrap_or(0);
    let images: Vec<Series> = sig.letters().map(|l| exp_operator(&Series::letter(sig, valid, l), &imgs)).collect();
    let tangential = u.tangential.iter().map(|uj| tangential_flow(uj, &imgs)).collect();
    Ok(TAut { sig, images, tangential })
}

/// `Σ u^k(a)/k!`
pub fn exp_operator(a: &Series, imgs: &[Series]) -> Series {
    let v = imgs.iter().map(|s| s.valid_degree()).fold(a.valid_degree(), usize::min);
    let mut out = a.clone().with_valid(v);
    let mut term = out.clone();
    let mut k = 1;
    loop {
        term = term.apply_derivation(imgs).scale(&Q::new(1, k)).with_valid(v);
        if term.is_zero() {
            break;
        }
        out = &out + &term;
        k += 1;
    }
    out
}

/// Polynomial in `t` with series coefficients.
type TPoly = Vec<Series>;

fn poly_bracket(a: &TPoly, b: &TPoly, v: usize) -> TPoly {
    let sig = a.first().or(b.first()).map(|s| s.sig()).expect("nonempty");
    let mut out: TPoly = vec![Series::zero(sig, v); a.len() + b.len()];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let c = ai.commutator(bj).with_valid(v);
            out[i + j] = &out[i + j] + &c;
        }
    }
    trim(out)
}

fn trim(mut p: TPoly) -> TPoly {
    while p.len() > 1 && p.last().is_some_and(|s| s.is_zero()) {
        p.pop();
    }
    p
}

/// Solves `f' = dbch_f(e^{tu}(u_j))`, `f(0) = 0`, and returns `f(1)`.
///
/// `dbch_x(y) = Σ_k (−1)^k B_k/k! ad_x^k(y) = y + ½[x,y] + 1/12 [x,[x,y]] + …`
fn tangential_flow(uj: &Series, imgs: &[Series]) -> Series {
    let sig = uj.sig();
    let v = uj.valid_degree();
    // y(t) = Σ t^k u^k(u_j)/k!
    let mut y: TPoly = vec![uj.clone()];
    loop {
        let k = y.len() as i64;
        let next = y.last().unwrap().apply_derivation(imgs).scale(&Q::new(1, k)).with_valid(v);
        if next.is_zero() || y.len() > v + 2 {
            break;
        }
        y.push(next);
    }
    let bern = Q::bernoulli(v + 1);
    let mut f: TPoly = vec![Series::zero(sig, v)];
    for _ in 0..=v + 1 {
        // rhs(t) = Σ_k c_k ad_f^k y
        let mut rhs: TPoly = y.clone();
        let mut adk = y.clone();
        for (k, bk) in bern.iter().enumerate().skip(1) {
            adk = poly_bracket(&f, &adk, v);
            if adk.iter().all(|s| s.is_zero()) {
                break;
            }
            let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
            let c = bk * &sign * Q::inv_factorial(k);
            if c.is_zero() {
                continue;
            }
            if rhs.len() < adk.len() {
                rhs.resize(adk.len(), Series::zero(sig, v));
            }
            for (i, a) in adk.iter().enumerate() {
                rhs[i] = &rhs[i] + &a.scale(&c);
            }
        }
        // integrate from 0
        let mut nf: TPoly = vec![Series::zero(sig, v)];
        for (i, r) in rhs.iter().enumerate() {
            nf.push(r.scale(&Q::new(1, i as i64 + 1)));
        }
        let nf = trim(nf);
        let same = nf.len() == f.len() && nf.iter().zip(&f).all(|(a, b)| a.agrees_with(b));
        f = nf;
        if same {
            break;
        }
    }
    let mut out = Series::zero(sig, v);
    for c in &f {
        out = &out + c;
    }
    out
}

/// `Ad_F(u) = F ∘ u ∘ F^{-1}` as a tangential derivation.
///
/// The tangential part is `e^{f_j} F(u_j e^{g_j} + u(e^{g_j}))`, where `g_j` is the
/// tangential part of `F^{-1}`.
pub fn adjoint(f: &TAut, u: &TDer) -> TDer {
    adjoint_with_inverse(f, &f.inverse(), u)
}

pub fn adjoint_with_inverse(f: &TAut, finv: &TAut, u: &TDer) -> TDer {
    let sig = f.sig();
    let imgs = u.letter_images();
    let sym = (0..2 * sig.g).map(|l| f.apply(&finv.images[l].apply_derivation(&imgs))).collect();
    let tangential = (0..sig.n)
        .map(|j| {
            let g = &finv.tangential[j];
            let eg = g.exp().expect("augmented");
            let inner = u.tangential[j].mul(&eg) + eg.apply_derivation(&imgs);
            let ef = f.tangential[j].exp().expect("augmented");
            ef.mul(&f.apply(&inner))
        })
        .collect();
    TDer::new(sig, sym, tangential)
}
