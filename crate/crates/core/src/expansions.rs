//! Free-group loops, the exponential expansion and loop operations in graded coordinates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclic::{trace, BiCyclic, CyclicSeries};
use crate::error::{GtError, Result};
use crate::framing::FramingData;
use crate::loops::{goldman_bracket_gr, sigma_hat_gr, turaev_cobracket_gr};
use crate::rational::Q;
use crate::series::Series;
use crate::signature::{Letter, Signature};
use crate::tangential::{adjoint_with_inverse, big_c_q, big_j, gdiv, gdiv_correction, TAut};

/// A generator of `π` or its inverse; `gen` uses the letter numbering of the graded model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupLetter {
    pub gen: Letter,
    pub inverse: bool,
}

/// A reduced word in `α_i^{±1}, β_i^{±1}, γ_j^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FreeGroupWord(Vec<GroupLetter>);

impl FreeGroupWord {
    pub fn identity() -> Self {
        FreeGroupWord(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = GroupLetter>) -> Self {
        let mut w = FreeGroupWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(gen: Letter) -> Self {
        FreeGroupWord(vec![GroupLetter { gen, inverse: false }])
    }

    fn push(&mut self, l: GroupLetter) {
        match self.0.last() {
            Some(last) if last.gen == l.gen && last.inverse != l.inverse => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    pub fn letters(&self) -> &[GroupLetter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeGroupWord) -> FreeGroupWord {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> FreeGroupWord {
        FreeGroupWord(self.0.iter().rev().map(|l| GroupLetter { gen: l.gen, inverse: !l.inverse }).collect())
    }

    pub fn pow(&self, m: i64) -> FreeGroupWord {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeGroupWord::identity();
        for _ in 0..m.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `γ_0 = ∏ [α_i, β_i] ∏ γ_j` with `[α, β] = αβα^{-1}β^{-1}`.
    pub fn gamma0(sig: Signature) -> FreeGroupWord {
        let mut out = FreeGroupWord::identity();
        for i in 1..=sig.g {
            let a = FreeGroupWord::generator(sig.x(i));
            let b = FreeGroupWord::generator(sig.y(i));
            out = out.mul(&a).mul(&b).mul(&a.inverse()).mul(&b.inverse());
        }
        for j in 1..=sig.n {
            out = out.mul(&FreeGroupWord::generator(sig.z(j)));
        }
        out
    }

    /// Parses `"a1 b1 A1 B1 c2"`: `a`, `b`, `c` for `α`, `β`, `γ`, capitals for inverses.
    pub fn parse(sig: &Signature, s: &str) -> Result<FreeGroupWord> {
        let mut out = FreeGroupWord::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let mut chars = tok.chars();
            let head = chars.next().ok_or_else(|| GtError::Parse(tok.to_string()))?;
            let idx: usize = chars.as_str().parse().map_err(|_| GtError::Parse(format!("bad loop letter `{tok}`")))?;
            let (kind, inverse) = (head.to_ascii_lowercase(), head.is_ascii_uppercase());
            let count = match kind {
                'a' | 'b' => sig.g,
                'c' => sig.n,
                _ => return Err(GtError::Parse(format!("bad loop letter `{tok}`"))),
            };
            if idx == 0 || idx > count {
                return Err(GtError::GeneratorOutOfRange(tok.to_string()));
            }
            let gen = match kind {
                'a' => sig.x(idx),
                'b' => sig.y(idx),
                _ => sig.z(idx),
            };
            out.push(GroupLetter { gen, inverse });
        }
        Ok(out)
    }

    pub fn format(&self, sig: &Signature) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                let name = sig.letter_name(l.gen);
                let (kind, idx) = name.split_at(1);
                let c = match kind {
                    "x" => 'a',
                    "y" => 'b',
                    _ => 'c',
                };
                let c = if l.inverse { c.to_ascii_uppercase() } else { c };
                format!("{c}{idx}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A finitely supported element of `Kπ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement(BTreeMap<FreeGroupWord, Q>);

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement(BTreeMap::new())
    }

    pub fn one() -> Self {
        GroupRingElement::from(FreeGroupWord::identity())
    }

    pub fn add_term(&mut self, w: FreeGroupWord, c: Q) {
        let e = self.0.entry(w.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FreeGroupWord, &Q)> {
        self.0.iter()
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, ca) in &self.0 {
            for (b, cb) in &other.0 {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Augmentation `ε(Σ c_w w) = Σ c_w`.
    pub fn augmentation(&self) -> Q {
        self.0.values().fold(Q::zero(), |acc, c| acc + c)
    }
}

impl From<FreeGroupWord> for GroupRingElement {
    fn from(w: FreeGroupWord) -> Self {
        let mut out = GroupRingElement::zero();
        out.add_term(w, Q::one());
        out
    }
}

/// `θ_exp(w)`: `α_i ↦ e^{x_i}`, `β_i ↦ e^{y_i}`, `γ_j ↦ e^{z_j}`.
pub fn theta_exp_eval(sig: Signature, w: &FreeGroupWord, valid: usize) -> Series {
    let exps: Vec<(Series, Series)> = sig
        .letters()
        .map(|l| {
            let x = Series::letter(sig, valid, l);
            let e = x.exp().expect("letters are augmented");
            let ei = x.scale(&-Q::one()).exp().expect("letters are augmented");
            (e, ei)
        })
        .collect();
    let mut out = Series::one(sig, valid);
    for l in w.letters() {
        let (e, ei) = &exps[l.gen as usize];
        out = out.mul(if l.inverse { ei } else { e });
    }
    out
}

/// `θ_exp` extended linearly to `Kπ`.
pub fn theta_exp_ring(sig: Signature, a: &GroupRingElement, valid: usize) -> Series {
    let mut out = Series::zero(sig, valid);
    for (w, c) in a.iter() {
        out.add_scaled(&theta_exp_eval(sig, w, valid), c);
    }
    out
}

/// Largest degree probed by [`weight`].
pub const WEIGHT_PROBE_CAP: usize = 64;

/// Weight-filtration valuation: the lowest degree of `θ_exp(a)`.
pub fn weight(sig: Signature, a: &GroupRingElement) -> Result<usize> {
    if a.is_zero() {
        return Err(GtError::ZeroElement);
    }
    let mut d = 4;
    loop {
        if let Some(m) = theta_exp_ring(sig, a, d).min_degree() {
            return Ok(m);
        }
        if d >= WEIGHT_PROBE_CAP {
            return Err(GtError::DegreeCap { requested: d + 1, cap: WEIGHT_PROBE_CAP });
        }
        d = (2 * d).min(WEIGHT_PROBE_CAP);
    }
}

/// The tangential expansion `θ_F = F^{-1} ∘ θ_exp`.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub twist: TAut,
    inverse: TAut,
}

impl Expansion {
    pub fn new(twist: TAut) -> Self {
        let inverse = twist.inverse();
        Expansion { twist, inverse }
    }

    pub fn exponential(sig: Signature, valid: usize) -> Self {
        Expansion::new(TAut::identity(sig, valid))
    }

    pub fn sig(&self) -> Signature {
        self.twist.sig()
    }

    pub fn valid_degree(&self) -> usize {
        self.twist.valid_degree()
    }

    pub fn inverse_twist(&self) -> &TAut {
        &self.inverse
    }

    pub fn eval(&self, w: &FreeGroupWord, valid: usize) -> Series {
        let v = valid.min(self.valid_degree());
        self.inverse.apply(&theta_exp_eval(self.sig(), w, v))
    }

    pub fn eval_ring(&self, a: &GroupRingElement, valid: usize) -> Series {
        let v = valid.min(self.valid_degree());
        self.inverse.apply(&theta_exp_ring(self.sig(), a, v))
    }

    /// `F(ω) − ξ` through degree `valid`.
    pub fn kvi_defect(&self, valid: usize) -> Series {
        kvi_defect(&self.twist, valid)
    }

    /// `log θ_F(γ_0) = ω` through degree `valid`.
    pub fn is_special(&self, valid: usize) -> bool {
        valid <= self.valid_degree() && self.kvi_defect(valid).is_zero()
    }

    fn require_special(&self, valid: usize) -> Result<()> {
        if self.is_special(valid) {
            Ok(())
        } else {
            Err(GtError::NotSpecial(valid))
        }
    }

    /// `|log θ_F(w)|`
    pub fn loop_log(&self, w: &FreeGroupWord, valid: usize) -> CyclicSeries {
        let g = self.eval(w, valid);
        trace(&g.log().expect("group-like values are unital"))
    }

    /// Graded coordinates of `[|v|, |w|]`, exact through degree `valid`.
    pub fn loop_bracket(&self, v: &FreeGroupWord, w: &FreeGroupWord, valid: usize) -> Result<CyclicSeries> {
        self.require_special(valid + 2)?;
        let a = trace(&self.eval(v, valid + 2));
        let b = trace(&self.eval(w, valid + 2));
        Ok(goldman_bracket_gr(&a, &b)?.truncated(valid))
    }

    /// `δ^f_θ(P) = F^{-1}·gDiv^f(Ad_F σ̂(P))`.
    pub fn twisted_cobracket(&self, p: &CyclicSeries, f: &FramingData) -> Result<BiCyclic> {
        f.validate(self.sig())?;
        self.require_special(p.valid_degree().min(self.valid_degree()))?;
        let u = sigma_hat_gr(p)?;
        let ad = adjoint_with_inverse(&self.twist, &self.inverse, &u);
        Ok(self.inverse.apply_bicyclic(&gdiv(&ad, f)))
    }

    /// The same operator as [`Expansion::twisted_cobracket`], evaluated as a correction of
    /// the graded cobracket: `gr δ^f + u·(J(F^{-1}) + F^{-1}(Δ̃𝐫 + |p|∧𝟏) − C_q(F^{-1})∧𝟏)`.
    pub fn twisted_cobracket_shortcut(&self, p: &CyclicSeries, f: &FramingData) -> Result<BiCyclic> {
        self.require_special(p.valid_degree().min(self.valid_degree()))?;
        let u = sigma_hat_gr(p)?;
        let w = self.correction(f)?;
        Ok(&turaev_cobracket_gr(p, f)? + &u.apply_bicyclic(&w))
    }

    /// `J(F^{-1}) + F^{-1}(Δ̃𝐫 + |p|∧𝟏) − C_q(F^{-1})∧𝟏`
    pub fn correction(&self, f: &FramingData) -> Result<BiCyclic> {
        let sig = self.sig();
        let v = self.valid_degree();
        let j = big_j(&self.inverse)?;
        let fixed = self.inverse.apply_bicyclic(&gdiv_correction(sig, f, v));
        let cq = big_c_q(&self.inverse, f)?;
        let cq = cq.wedge(&CyclicSeries::unit(sig, cq.valid_degree()));
        Ok(&(&j + &fixed) - &cq)
    }

    /// Graded coordinates of `δ^f(|w|)`, exact through degree `valid`.
    pub fn loop_cobracket(&self, w: &FreeGroupWord, f: &FramingData, valid: usize) -> Result<BiCyclic> {
        if valid + 2 > self.valid_degree() {
            return Err(GtError::NotSpecial(valid + 2));
        }
        let p = trace(&self.eval(w, valid + 2));
        Ok(self.twisted_cobracket(&p, f)?.truncated(valid))
    }
}

/// `F(ω) − ξ`, truncated at `valid`.
pub fn kvi_defect(f: &TAut, valid: usize) -> Series {
    let sig = f.sig();
    let v = valid.min(f.valid_degree());
    let omega = Series::omega(sig, v);
    (&f.apply(&omega) - &Series::xi(sig, v)).truncated(v)
}
