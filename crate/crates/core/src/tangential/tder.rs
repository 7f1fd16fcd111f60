use crate::cyclic::{BiCyclic, CyclicSeries};
use crate::error::{GtError, Result};
use crate::lie::lie_basis;
use crate::rational::Q;
use crate::series::Series;
use crate::signature::{Letter, Signature};

/// A tangential derivation `(u, u_1, …, u_n)` with `u(z_j) = [z_j, u_j]`.
///
/// `sym[2(i-1)]` and `sym[2(i-1)+1]` hold `u(x_i)` and `u(y_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TDer {
    sig: Signature,
    pub sym: Vec<Series>,
    pub tangential: Vec<Series>,
}

impl TDer {
    pub fn new(sig: Signature, sym: Vec<Series>, tangential: Vec<Series>) -> Self {
        assert_eq!(sym.len(), 2 * sig.g);
        assert_eq!(tangential.len(), sig.n);
        TDer { sig, sym, tangential }
    }

    pub fn zero(sig: Signature, valid: usize) -> Self {
        TDer { sig, sym: vec![Series::zero(sig, valid); 2 * sig.g], tangential: vec![Series::zero(sig, valid); sig.n] }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// `u(l)` for every letter `l`.
    pub fn letter_images(&self) -> Vec<Series> {
        let sig = self.sig;
        let mut out = self.sym.clone();
        for (j, uj) in self.tangential.iter().enumerate() {
            let z = Series::letter(sig, uj.valid_degree() + 2, sig.z(j + 1));
            out.push(z.commutator(uj));
        }
        out
    }

    pub fn image(&self, l: Letter) -> Series {
        if self.sig.is_symplectic(l) {
            self.sym[l as usize].clone()
        } else {
            let j = l as usize - 2 * self.sig.g;
            let uj = &self.tangential[j];
            Series::letter(self.sig, uj.valid_degree() + 2, l).commutator(uj)
        }
    }

    pub fn apply(&self, a: &Series) -> Series {
        a.apply_derivation(&self.letter_images())
    }

    pub fn apply_cyclic(&self, p: &CyclicSeries) -> CyclicSeries {
        p.apply_derivation(&self.letter_images())
    }

    pub fn apply_bicyclic(&self, w: &BiCyclic) -> BiCyclic {
        w.apply_derivation(&self.letter_images())
    }

    fn zip_with(&self, other: &TDer, f: impl Fn(&Series, &Series) -> Series) -> TDer {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        TDer {
            sig: self.sig,
            sym: self.sym.iter().zip(&other.sym).map(|(a, b)| f(a, b)).collect(),
            tangential: self.tangential.iter().zip(&other.tangential).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &TDer) -> TDer {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TDer) -> TDer {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Q) -> TDer {
        self.map(|s| s.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Series) -> Series) -> TDer {
        TDer {
            sig: self.sig,
            sym: self.sym.iter().map(&f).collect(),
            tangential: self.tangential.iter().map(&f).collect(),
        }
    }

    pub fn truncated(&self, v: usize) -> TDer {
        self.map(|s| s.truncated(v))
    }

    /// Bracket in the semidirect product: `[u,v]_j = u(v_j) − v(u_j) + [u_j, v_j]`.
    pub fn try_bracket(&self, other: &TDer) -> Result<TDer> {
        self.sig.check_same(&other.sig)?;
        Ok(self.bracket(other))
    }

    pub fn bracket(&self, other: &TDer) -> TDer {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        let ui = self.letter_images();
        let vi = other.letter_images();
        let sym = (0..2 * self.sig.g)
            .map(|l| other.sym[l].apply_derivation(&ui) - self.sym[l].apply_derivation(&vi))
            .collect();
        let tangential = self
            .tangential
            .iter()
            .zip(&other.tangential)
            .map(|(uj, vj)| vj.apply_derivation(&ui) - uj.apply_derivation(&vi) + uj.commutator(vj))
            .collect();
        TDer { sig: self.sig, sym, tangential }
    }

    pub fn is_zero(&self) -> bool {
        self.sym.iter().chain(&self.tangential).all(|s| s.is_zero())
    }

    /// Degree of the derivation: the least `d` with `u(x) ∈ A_{≥ d+1}` and `u_j ∈ A_{≥ d}`.
    pub fn min_degree(&self) -> Option<isize> {
        let a = self.sym.iter().filter_map(|s| s.min_degree()).map(|d| d as isize - 1);
        let b = self.tangential.iter().filter_map(|s| s.min_degree()).map(|d| d as isize);
        a.chain(b).min()
    }

    pub fn is_positive(&self) -> bool {
        self.min_degree().is_none_or(|d| d >= 1)
    }

    pub fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(GtError::NotPositiveDegree)
        }
    }

    /// The homogeneous part of derivation degree `d`.
    pub fn graded_component(&self, d: usize) -> TDer {
        TDer {
            sig: self.sig,
            sym: self.sym.iter().map(|s| s.graded_component(d + 1)).collect(),
            tangential: self.tangential.iter().map(|s| s.graded_component(d)).collect(),
        }
    }

    /// Least validity over all stored components.
    pub fn valid_degree(&self) -> usize {
        self.sym
            .iter()
            .map(|s| s.valid_degree().saturating_sub(1))
            .chain(self.tangential.iter().map(|s| s.valid_degree()))
            .min()
            .unwrap_or(usize::MAX)
    }

    /// All images and tangential parts are Lie-like.
    pub fn is_lie(&self) -> bool {
        self.sym.iter().chain(&self.tangential).all(|s| s.is_lie_like())
    }

    /// Checks `u(z_j) = [z_j, u_j]` against explicitly given images.
    pub fn satisfies_constraint(&self, z_images: &[Series]) -> bool {
        let imgs = self.letter_images();
        z_images.iter().enumerate().all(|(j, s)| imgs[2 * self.sig.g + j].agrees_with(s))
    }
}

/// Basis of `tder⁺` in degree `d`: Lyndon brackets in each slot.
pub fn tder_basis(sig: Signature, valid: usize, d: usize) -> Vec<TDer> {
    let mut out = Vec::new();
    let zero = TDer::zero(sig, valid);
    let sym_basis = lie_basis(sig, valid, d + 1);
    for l in 0..2 * sig.g {
        for b in &sym_basis {
            let mut u = zero.clone();
            u.sym[l] = b.clone();
            out.push(u);
        }
    }
    let tan_basis = lie_basis(sig, valid, d);
    for j in 0..sig.n {
        for b in &tan_basis {
            let mut u = zero.clone();
            u.tangential[j] = b.clone();
            out.push(u);
        }
    }
    out
}

/// `Σ c_i · basis_i`
pub fn combine(sig: Signature, valid: usize, basis: &[TDer], coeffs: &[Q]) -> TDer {
    let mut acc = TDer::zero(sig, valid);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}
