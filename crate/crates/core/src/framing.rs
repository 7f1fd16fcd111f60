//! Framing data and the linear functionals derived from it.

use serde::{Deserialize, Serialize};

use crate::cyclic::{CyclicSeries, CyclicWord};
use crate::error::{GtError, Result};
use crate::rational::Q;
use crate::series::Series;
use crate::signature::{Letter, Signature, Word};

/// Rotation numbers of a framing on the boundary curves and the symplectic basis loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramingData {
    pub rot_boundary: Vec<i64>,
    pub rot_alpha: Vec<i64>,
    pub rot_beta: Vec<i64>,
}

impl FramingData {
    /// The adapted framing: `rot(∂_j) = -1`, `rot(α_i) = rot(β_i) = 0`.
    pub fn adapted(sig: Signature) -> Self {
        FramingData { rot_boundary: vec![-1; sig.n], rot_alpha: vec![0; sig.g], rot_beta: vec![0; sig.g] }
    }

    pub fn new(sig: Signature, rot_boundary: Vec<i64>, rot_alpha: Vec<i64>, rot_beta: Vec<i64>) -> Result<Self> {
        let f = FramingData { rot_boundary, rot_alpha, rot_beta };
        f.validate(sig)?;
        Ok(f)
    }

    pub fn validate(&self, sig: Signature) -> Result<()> {
        if self.rot_boundary.len() != sig.n {
            return Err(GtError::FramingMismatch(format!(
                "rot_boundary has {} entries, expected {}",
                self.rot_boundary.len(),
                sig.n
            )));
        }
        if self.rot_alpha.len() != sig.g || self.rot_beta.len() != sig.g {
            return Err(GtError::FramingMismatch(format!(
                "rot_alpha/rot_beta have {}/{} entries, expected {}",
                self.rot_alpha.len(),
                self.rot_beta.len(),
                sig.g
            )));
        }
        Ok(())
    }

    /// `c_f` on a generator: zero on `x_i, y_i`, `rot(∂_j) + 1` on `z_j`.
    pub fn c_f(&self, sig: &Signature, l: Letter) -> i64 {
        if sig.is_symplectic(l) {
            0
        } else {
            self.rot_boundary[l as usize - 2 * sig.g] + 1
        }
    }

    /// `q(z_j)`, `1 <= j <= n`.
    pub fn q(&self, j: usize) -> i64 {
        self.rot_boundary[j - 1] + 1
    }

    pub fn q_is_zero(&self) -> bool {
        self.rot_boundary.iter().all(|&r| r == -1)
    }

    pub fn p_is_zero(&self) -> bool {
        self.rot_alpha.iter().chain(&self.rot_beta).all(|&r| r == 0)
    }

    /// `rot(∂_0)`, forced by Poincaré–Hopf.
    pub fn rot_boundary_zero(&self, sig: &Signature) -> i64 {
        let s: i64 = (1..=sig.n).map(|j| self.q(j)).sum();
        1 - 2 * sig.g as i64 - s
    }

    /// `p = Σ rot(β_i) x_i − rot(α_i) y_i`, so that `⟨p, x_i⟩ = rot(α_i)` and `⟨p, y_i⟩ = rot(β_i)`.
    pub fn p(&self, sig: Signature, valid: usize) -> Series {
        let mut out = Series::zero(sig, valid);
        for i in 1..=sig.g {
            out.add_term(Word::from_slice(&[sig.x(i)]), Q::from_int(self.rot_beta[i - 1]));
            out.add_term(Word::from_slice(&[sig.y(i)]), Q::from_int(-self.rot_alpha[i - 1]));
        }
        out
    }

    pub fn p_cyclic(&self, sig: Signature, valid: usize) -> CyclicSeries {
        let p = self.p(sig, valid);
        p.map_linear(valid, |w| [(CyclicWord::new(w), Q::one())])
    }
}
