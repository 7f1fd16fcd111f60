use crate::cyclic::{trace, BiCyclic, CyclicSeries, CyclicWord};
use crate::error::{GtError, Result};
use crate::framing::FramingData;
use crate::rational::Q;
use crate::series::Series;
use crate::signature::{Letter, Signature, Word};

use super::taut::{adjoint_with_inverse, TAut};
use super::tder::TDer;

/// Right decomposition coefficient: the part of `a` ending in `l`, with `l` removed.
fn right_part(a: &Series, l: Letter) -> Series {
    let sig = a.sig();
    let v = a.valid_degree().saturating_sub(sig.weight(l));
    let mut out = Series::zero(sig, v);
    for (w, c) in a.iter() {
        if w.last() == Some(&l) {
            out.add_term(Word::from_slice(&w[..w.len() - 1]), c.clone());
        }
    }
    out
}

/// Divergence `div(u) = Σ_i |z_i (u_i)^i|`; genus zero only.
pub fn div(u: &TDer) -> Result<CyclicSeries> {
    let sig = u.sig();
    if sig.g != 0 {
        return Err(GtError::GenusNotZero(sig.g));
    }
    Ok(div_general(u))
}

/// `(id ⊗ ε) ∘ tDiv`, defined in every genus.
pub fn div_general(u: &TDer) -> CyclicSeries {
    let sig = u.sig();
    let mut parts = Vec::new();
    for l in 0..2 * sig.g {
        parts.push(trace(&right_part(&u.sym[l], l as Letter)));
    }
    for (j, uj) in u.tangential.iter().enumerate() {
        let z = sig.z(j + 1);
        let r = right_part(uj, z);
        parts.push(trace(&Series::letter(sig, r.valid_degree() + 2, z).mul(&r)));
    }
    sum_cyclic(sig, parts, u.valid_degree())
}

fn sum_cyclic(sig: Signature, parts: Vec<CyclicSeries>, valid: usize) -> CyclicSeries {
    let v = parts.iter().map(|p| p.valid_degree()).fold(valid, usize::min);
    let mut out = CyclicSeries::zero(sig, v);
    for p in parts {
        out = &out + &p;
    }
    out
}

/// Double derivation `∂/∂l` summed into `|·| ⊗ |·|`, with an optional left/right letter.
fn double_derivative(a: &Series, l: Letter, out: &mut BiCyclic, mode: Wrap, sign: &Q) {
    for (w, c) in a.iter() {
        for (i, &x) in w.iter().enumerate() {
            if x != l {
                continue;
            }
            let mut pre = Word::from_slice(&w[..i]);
            let mut post = Word::from_slice(&w[i + 1..]);
            match mode {
                Wrap::None => {}
                Wrap::Left(z) => pre.insert(0, z),
                Wrap::Right(z) => post.push(z),
            }
            out.add_term((CyclicWord::new(&pre), CyclicWord::new(&post)), c * sign);
        }
    }
}

#[derive(Clone, Copy)]
enum Wrap {
    None,
    Left(Letter),
    Right(Letter),
}

/// Double divergence `tDiv(u)`.
pub fn tdiv(u: &TDer) -> BiCyclic {
    let sig = u.sig();
    let mut valid = usize::MAX;
    for s in &u.sym {
        valid = valid.min(s.valid_degree().saturating_sub(1));
    }
    for s in &u.tangential {
        valid = valid.min(s.valid_degree());
    }
    if valid == usize::MAX {
        valid = 0;
    }
    let mut out = BiCyclic::zero(sig, valid);
    let one = Q::one();
    for l in 0..2 * sig.g {
        double_derivative(&u.sym[l], l as Letter, &mut out, Wrap::None, &one);
    }
    for (j, uj) in u.tangential.iter().enumerate() {
        let z = sig.z(j + 1);
        double_derivative(uj, z, &mut out, Wrap::Left(z), &one);
        double_derivative(uj, z, &mut out, Wrap::Right(z), &-Q::one());
    }
    out
}

/// `c_q(u) = Σ q(z_j) |u_j|`
pub fn c_q(u: &TDer, f: &FramingData) -> CyclicSeries {
    let sig = u.sig();
    let parts = u.tangential.iter().enumerate().map(|(j, uj)| trace(uj).scale(&Q::from_int(f.q(j + 1)))).collect();
    sum_cyclic(sig, parts, u.tangential.iter().map(|s| s.valid_degree()).min().unwrap_or(usize::MAX))
}

/// `r(s) = log((e^s − 1)/s)` evaluated at a single letter.
pub fn r_series(sig: Signature, l: Letter, valid: usize) -> Series {
    let mut q = Series::zero(sig, valid);
    let mut w = Word::new();
    let mut k = 0;
    while sig.degree(&w) <= valid {
        q.add_term(w.clone(), Q::inv_factorial(k + 1));
        w.push(l);
        k += 1;
    }
    q.log().expect("unital")
}

/// `𝐫 = Σ_i |r(x_i) + r(y_i)|`
pub fn bold_r(sig: Signature, valid: usize) -> CyclicSeries {
    let mut out = CyclicSeries::zero(sig, valid);
    for l in 0..2 * sig.g {
        out = &out + &trace(&r_series(sig, l as Letter, valid));
    }
    out
}

/// Framing correction `Δ̃𝐫 + |p| ∧ 𝟏` acted on by `u` in `gDiv^f`.
pub fn gdiv_correction(sig: Signature, f: &FramingData, valid: usize) -> BiCyclic {
    let r = bold_r(sig, valid).delta_tilde();
    let p = f.p_cyclic(sig, valid);
    &r + &p.wedge(&CyclicSeries::unit(sig, valid))
}

/// `gDiv^f(u) = tDiv(u) + u·(Δ̃𝐫 + |p|∧𝟏) − c_q(u)∧𝟏`
pub fn gdiv(u: &TDer, f: &FramingData) -> BiCyclic {
    let sig = u.sig();
    let t = tdiv(u);
    let valid = t.valid_degree() + 2;
    let corr = u.apply_bicyclic(&gdiv_correction(sig, f, valid));
    let cq = c_q(u, f);
    let w = cq.wedge(&CyclicSeries::unit(sig, cq.valid_degree()));
    &(&t + &corr) - &w
}

/// A target module for cocycles: something a tangential derivation acts on.
pub trait Module: Clone {
    fn act(&self, u: &TDer) -> Self;
    fn act_aut(&self, f: &TAut) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Q) -> Self;
    fn vanishes(&self) -> bool;
    fn valid(&self) -> usize;
    fn capped(&self, v: usize) -> Self;
}

impl Module for CyclicSeries {
    fn act(&self, u: &TDer) -> Self {
        u.apply_cyclic(self)
    }
    fn act_aut(&self, f: &TAut) -> Self {
        f.apply_cyclic(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn valid(&self) -> usize {
        self.valid_degree()
    }
    fn capped(&self, v: usize) -> Self {
        self.clone().with_valid(v.min(self.valid_degree()))
    }
}

impl Module for BiCyclic {
    fn act(&self, u: &TDer) -> Self {
        u.apply_bicyclic(self)
    }
    fn act_aut(&self, f: &TAut) -> Self {
        f.apply_bicyclic(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn valid(&self) -> usize {
        self.valid_degree()
    }
    fn capped(&self, v: usize) -> Self {
        self.clone().with_valid(v.min(self.valid_degree()))
    }
}

/// `C(exp u) = Σ_m u^m(c(u))/(m+1)!`
pub fn integrate<M: Module>(c: impl Fn(&TDer) -> M, u: &TDer) -> Result<M> {
    u.require_positive()?;
    let mut term = c(u);
    let v = term.valid();
    let mut acc = term.clone();
    let mut m = 1;
    loop {
        term = term.act(u).scaled(&Q::new(1, m + 1)).capped(v);
        if term.vanishes() {
            break;
        }
        acc = acc.plus(&term);
        m += 1;
    }
    Ok(acc)
}

/// `J(F)`: the integral of `tDiv`.
pub fn big_j(f: &TAut) -> Result<BiCyclic> {
    integrate(tdiv, &f.log()?)
}

/// `j(F) = (id ⊗ ε) J(F)`.
pub fn small_j(f: &TAut) -> Result<CyclicSeries> {
    Ok(big_j(f)?.co_counit_first())
}

/// `C_q(F)`: the integral of `c_q`.
pub fn big_c_q(f: &TAut, framing: &FramingData) -> Result<CyclicSeries> {
    integrate(|u| c_q(u, framing), &f.log()?)
}

/// `j_q = j − C_q`
pub fn j_q(f: &TAut, framing: &FramingData) -> Result<CyclicSeries> {
    integrate(|v| &div_general(v) - &c_q(v, framing), &f.log()?)
}

/// `(F*c)(u) = F^{-1}·c(Ad_F u)`.
pub fn pullback<M: Module>(f: &TAut, c: impl Fn(&TDer) -> M, u: &TDer) -> M {
    let finv = f.inverse();
    let ad = adjoint_with_inverse(f, &finv, u);
    c(&ad).act_aut(&finv)
}
