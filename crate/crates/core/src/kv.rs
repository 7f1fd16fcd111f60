//! Kashiwara–Vergne conditions: checks, a degree-by-degree solver and Duflo data.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cyclic::{CyclicSeries, CyclicWord};
use crate::error::{GtError, Result};
use crate::expansions::kvi_defect;
use crate::framing::FramingData;
use crate::linalg::{self, SparseVec};
use crate::loops::{center_span, reduce_modulo};
use crate::rational::Q;
use crate::series::Series;
use crate::signature::{Signature, Word};
use crate::tangential::{bold_r, c_q, combine, div_general, exp, j_q, tder_basis, TAut, TDer};

/// A KV problem for a framed surface, truncated at degree `N`.
#[derive(Clone, Debug)]
pub struct KvProblem {
    pub sig: Signature,
    pub framing: FramingData,
    pub degree: usize,
}

impl KvProblem {
    pub fn new(sig: Signature, framing: FramingData, degree: usize) -> Result<Self> {
        framing.validate(sig)?;
        if degree < 2 {
            return Err(GtError::DegreeOverflow(degree));
        }
        Ok(KvProblem { sig, framing, degree })
    }

    /// KVI is imposed through `N + 2`, KVII through `N`.
    pub fn working_degree(&self) -> usize {
        self.degree + 2
    }

    pub fn omega(&self) -> Series {
        Series::omega(self.sig, self.working_degree())
    }

    pub fn xi(&self) -> Series {
        Series::xi(self.sig, self.working_degree())
    }

    /// `𝐫 + |p|`
    pub fn framing_term(&self) -> CyclicSeries {
        let v = self.working_degree();
        &bold_r(self.sig, v) + &self.framing.p_cyclic(self.sig, v)
    }

    /// `{𝟏, |ω^k|, |z_j^k|}` through degree `N`.
    pub fn center(&self) -> Vec<CyclicSeries> {
        center_span(self.sig, self.degree)
    }
}

/// `φ(F) = j_q(F^{-1}) + F^{-1}(𝐫 + |p|)`, exact through `N`.
pub fn kvii_phi(f: &TAut, problem: &KvProblem) -> Result<CyclicSeries> {
    let finv = f.inverse();
    let j = j_q(&finv, &problem.framing)?;
    let t = finv.apply_cyclic(&problem.framing_term());
    Ok((&j + &t).truncated(problem.degree))
}

/// Residue of `φ(F)` modulo the center; zero iff KVII holds through `N`.
pub fn kvii_defect(f: &TAut, problem: &KvProblem) -> Result<CyclicSeries> {
    let d = kvi_defect(f, problem.working_degree());
    if let Some(m) = d.min_degree() {
        return Err(GtError::KvIFailed(m));
    }
    let phi = kvii_phi(f, problem)?;
    Ok(reduce_modulo(&phi, &problem.center()).0)
}

/// `F(ω) − ξ` through `N + 2`.
pub fn kvi_check(f: &TAut, problem: &KvProblem) -> Series {
    kvi_defect(f, problem.working_degree())
}

/// Which conditions the solver imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KvMode {
    Full,
    KviOnly,
}

/// Duflo data `j(F^{-1}) = |Σ h_j(z_j) − h(ω)|` in genus zero.
///
/// `h[k]` and `h_j[j][k]` are the coefficients of `s^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Duflo {
    pub h: Vec<Q>,
    pub h_j: Vec<Vec<Q>>,
    /// Powers `k` whose split between `h` and the `h_j` is a convention, not data.
    pub ambiguous: Vec<usize>,
    /// `h_{j,k} = h_k` for all `j` and all unambiguous `k >= 2`.
    pub agrees_mod_linear: bool,
}

/// Why the solver stopped at a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Kvi,
    Kvii,
}

/// The unreachable part of a degree-`d` target, with the automorphism reached so far.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub degree: usize,
    pub kvi_target: Series,
    pub kvii_target: CyclicSeries,
    pub kvi_residual: Series,
    pub kvii_residual: CyclicSeries,
    pub partial: TAut,
}

impl Certificate {
    pub fn failing(&self) -> Condition {
        if self.kvi_residual.is_zero() {
            Condition::Kvii
        } else {
            Condition::Kvi
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KvStatus {
    Solved { duflo: Option<Duflo> },
    Obstructed(Certificate),
    CheckedOnly { kvi_ok: bool, kvii_ok: bool, kvi_defect: Series, kvii_residue: CyclicSeries },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub degree: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub attempts: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KvReport {
    #[serde(rename = "signature")]
    pub sig: Signature,
    pub framing: FramingData,
    pub degree: usize,
    pub steps: Vec<StepRecord>,
    pub twist: Option<TAut>,
    pub status: KvStatus,
}

impl KvReport {
    pub fn is_solved(&self) -> bool {
        matches!(self.status, KvStatus::Solved { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EqKey {
    Kvi(Word),
    Kvii(CyclicWord),
}

/// The degree-`d` linear system: columns for `tder_d` then for the degree-`d` center.
struct Step {
    basis: Vec<TDer>,
    columns: Vec<SparseVec<EqKey>>,
    target: SparseVec<EqKey>,
    kvi_target: Series,
    kvii_target: CyclicSeries,
}

fn correction_map(u: &TDer, problem: &KvProblem, omega: &Series, d: usize, mode: KvMode) -> SparseVec<EqKey> {
    let mut col = SparseVec::new();
    for (w, c) in u.apply(omega).graded_component(d + 2).iter() {
        col.insert(EqKey::Kvi(w.clone()), c.clone());
    }
    if mode == KvMode::Full {
        let dq = &div_general(u) - &c_q(u, &problem.framing);
        for (w, c) in dq.graded_component(d).iter() {
            col.insert(EqKey::Kvii(w.clone()), c.clone());
        }
    }
    col
}

fn build_step(f: &TAut, phi: Option<&CyclicSeries>, problem: &KvProblem, d: usize, mode: KvMode) -> Result<Step> {
    let sig = problem.sig;
    let v = problem.working_degree();
    let omega = problem.omega();
    let kvi_target = (&problem.xi() - &f.apply(&omega)).graded_component(d + 2);
    let kvii_target = match phi {
        Some(phi) => phi.graded_component(d),
        None => CyclicSeries::zero(sig, d),
    };
    let basis = tder_basis(sig, v, d);
    let mut columns: Vec<SparseVec<EqKey>> =
        basis.iter().map(|b| correction_map(b, problem, &omega, d, mode)).collect();
    if mode == KvMode::Full {
        for z in center_span(sig, d) {
            let col: SparseVec<EqKey> =
                z.graded_component(d).iter().map(|(w, c)| (EqKey::Kvii(w.clone()), c.clone())).collect();
            if !col.is_empty() {
                columns.push(col);
            }
        }
    }
    let mut target = SparseVec::new();
    for (w, c) in kvi_target.iter() {
        target.insert(EqKey::Kvi(w.clone()), c.clone());
    }
    for (w, c) in kvii_target.iter() {
        target.insert(EqKey::Kvii(w.clone()), c.clone());
    }
    Ok(Step { basis, columns, target, kvi_target, kvii_target })
}

fn split_residual(sig: Signature, d: usize, r: &SparseVec<EqKey>) -> (Series, CyclicSeries) {
    let mut a = Series::zero(sig, d + 2);
    let mut b = CyclicSeries::zero(sig, d);
    for (k, c) in r {
        match k {
            EqKey::Kvi(w) => a.add_term(w.clone(), c.clone()),
            EqKey::Kvii(w) => b.add_term(w.clone(), c.clone()),
        }
    }
    (a, b)
}

/// The first condition failing through degree `d`, given `φ(F)` in full mode.
fn fails_through(f: &TAut, phi: Option<&CyclicSeries>, problem: &KvProblem, d: usize) -> Option<Condition> {
    if !kvi_defect(f, d + 2).is_zero() {
        return Some(Condition::Kvi);
    }
    let phi = phi?.truncated(d);
    let ok = reduce_modulo(&phi, &center_span(problem.sig, d)).0.is_zero();
    (!ok).then_some(Condition::Kvii)
}

fn phi_for(f: &TAut, problem: &KvProblem, mode: KvMode) -> Result<Option<CyclicSeries>> {
    match mode {
        KvMode::Full => kvii_phi(f, problem).map(Some),
        KvMode::KviOnly => Ok(None),
    }
}

/// Solves degree by degree with updates `F ← exp(u) ∘ F`.
///
/// `gauge_seed` adds a seeded random kernel element at every degree.
pub fn kv_solve(problem: &KvProblem, mode: KvMode, gauge_seed: Option<u64>) -> Result<KvReport> {
    let sig = problem.sig;
    let v = problem.working_degree();
    let mut rng = gauge_seed.map(crate::random::rng);
    let mut f = TAut::identity(sig, v);
    let mut phi = phi_for(&f, problem, mode)?;
    let mut steps = Vec::new();
    for d in 1..=problem.degree {
        let mut attempts = 0;
        let (record, failure) = loop {
            attempts += 1;
            let step = build_step(&f, phi.as_ref(), problem, d, mode)?;
            let sol = linalg::solve(&step.columns, &step.target);
            let record = StepRecord {
                degree: d,
                unknowns: step.columns.len(),
                rank: sol.rank,
                kernel_dim: sol.kernel.len(),
                attempts,
            };
            let Some(mut x) = sol.particular else {
                let (kvi_residual, kvii_residual) = split_residual(sig, d, &sol.residual);
                steps.push(record);
                let cert = Certificate {
                    degree: d,
                    kvi_target: step.kvi_target,
                    kvii_target: step.kvii_target,
                    kvi_residual,
                    kvii_residual,
                    partial: f.clone(),
                };
                return Ok(KvReport {
                    sig,
                    framing: problem.framing.clone(),
                    degree: problem.degree,
                    steps,
                    twist: Some(f),
                    status: KvStatus::Obstructed(cert),
                });
            };
            if let Some(r) = rng.as_mut() {
                for k in &sol.kernel {
                    let c = Q::from_int(r.random_range(-2..=2));
                    for (xi, ki) in x.iter_mut().zip(k) {
                        *xi += &c * ki;
                    }
                }
            }
            let u = combine(sig, v, &step.basis, &x[..step.basis.len()]);
            if !u.is_zero() {
                f = exp(&u)?.compose(&f);
                phi = phi_for(&f, problem, mode)?;
            }
            let failure = fails_through(&f, phi.as_ref(), problem, d);
            if failure.is_none() || attempts >= 3 {
                break (record, failure);
            }
        };
        steps.push(record);
        match failure {
            None => {}
            Some(Condition::Kvi) => return Err(GtError::KvIFailed(d)),
            Some(Condition::Kvii) => return Err(GtError::KvIIFailed(d)),
        }
    }
    let status = match mode {
        KvMode::Full => {
            let duflo = if sig.g == 0 { Some(duflo_extract(&f, problem)?) } else { None };
            KvStatus::Solved { duflo }
        }
        KvMode::KviOnly => checked(&f, problem)?,
    };
    Ok(KvReport { sig, framing: problem.framing.clone(), degree: problem.degree, steps, twist: Some(f), status })
}

fn checked(f: &TAut, problem: &KvProblem) -> Result<KvStatus> {
    let kvi = kvi_check(f, problem);
    let kvi_ok = kvi.is_zero();
    let residue = if kvi_ok { kvii_defect(f, problem)? } else { CyclicSeries::zero(problem.sig, problem.degree) };
    Ok(KvStatus::CheckedOnly { kvi_ok, kvii_ok: kvi_ok && residue.is_zero(), kvi_defect: kvi, kvii_residue: residue })
}

/// Checks a given automorphism against both conditions.
pub fn kv_check(f: &TAut, problem: &KvProblem) -> Result<KvReport> {
    problem.sig.check_same(&f.sig())?;
    Ok(KvReport {
        sig: problem.sig,
        framing: problem.framing.clone(),
        degree: problem.degree,
        steps: Vec::new(),
        twist: Some(f.clone()),
        status: checked(f, problem)?,
    })
}

/// Re-derives an obstruction from its partial automorphism with a different elimination order.
pub fn audit_certificate(problem: &KvProblem, cert: &Certificate) -> Result<bool> {
    let d = cert.degree;
    if cert.kvi_residual.is_zero() && cert.kvii_residual.is_zero() {
        return Ok(false);
    }
    let phi = kvii_phi(&cert.partial, problem)?;
    if d > 1 && fails_through(&cert.partial, Some(&phi), problem, d - 1).is_some() {
        return Ok(false);
    }
    let step = build_step(&cert.partial, Some(&phi), problem, d, KvMode::Full)?;
    if !step.kvi_target.agrees_with(&cert.kvi_target) || !step.kvii_target.agrees_with(&cert.kvii_target) {
        return Ok(false);
    }
    let rev = |v: &SparseVec<EqKey>| -> SparseVec<Reverse<EqKey>> {
        v.iter().map(|(k, c)| (Reverse(k.clone()), c.clone())).collect()
    };
    let cols: Vec<_> = step.columns.iter().map(rev).collect();
    let target = rev(&step.target);
    if linalg::solve(&cols, &target).particular.is_some() {
        return Ok(false);
    }
    // the certificate's residual must differ from the target by an image vector
    let mut diff: BTreeMap<Reverse<EqKey>, Q> = target;
    for (w, c) in cert.kvi_residual.iter() {
        *diff.entry(Reverse(EqKey::Kvi(w.clone()))).or_insert_with(Q::zero) -= c;
    }
    for (w, c) in cert.kvii_residual.iter() {
        *diff.entry(Reverse(EqKey::Kvii(w.clone()))).or_insert_with(Q::zero) -= c;
    }
    diff.retain(|_, c| !c.is_zero());
    Ok(linalg::solve(&cols, &diff).particular.is_some())
}

/// Genus-zero Duflo data from `j(F^{-1})`.
///
/// For `k = 1` the split between `h` and the `h_j` is fixed by `h_1 = 0`; for `n = 1`
/// every power is ambiguous and the least-norm split `h_{1,k} = −h_k` is reported.
pub fn duflo_extract(f: &TAut, problem: &KvProblem) -> Result<Duflo> {
    let sig = problem.sig;
    if sig.g != 0 {
        return Err(GtError::GenusNotZero(sig.g));
    }
    let residue = kvii_defect(f, problem)?;
    if let Some(m) = residue.min_degree() {
        return Err(GtError::KvIIFailed(m));
    }
    let j = kvii_phi(f, problem)?;
    let kmax = problem.degree / 2;
    let mut h = vec![Q::zero(); kmax + 1];
    let mut h_j = vec![vec![Q::zero(); kmax + 1]; sig.n];
    let mut ambiguous = Vec::new();
    let omega = Series::omega(sig, problem.degree);
    for k in 1..=kmax {
        let part = j.graded_component(2 * k);
        let zk = |i: usize| -> CyclicWord { CyclicWord::new(&vec![sig.z(i); k]) };
        if sig.n == 1 {
            let c = part.coeff(&zk(1));
            h_j[0][k] = &c / &Q::from_int(2);
            h[k] = -(&c / &Q::from_int(2));
            ambiguous.push(k);
            continue;
        }
        if k == 1 {
            for i in 1..=sig.n {
                h_j[i - 1][1] = part.coeff(&zk(i));
            }
            ambiguous.push(1);
            continue;
        }
        // |ω^k| is the only basis element with mixed necklaces
        let wk = crate::cyclic::trace(&omega.pow(k)).graded_component(2 * k);
        let mixed = wk.iter().find(|(w, _)| !w.letters().iter().all(|&l| l == w.letters()[0]));
        let (mw, mc) = mixed.expect("n >= 2 gives mixed necklaces");
        h[k] = -(part.coeff(mw) / mc.clone());
        let mut rest = part.clone();
        rest.add_scaled(&wk, &h[k]);
        for i in 1..=sig.n {
            h_j[i - 1][k] = rest.coeff(&zk(i));
            rest.add_term(zk(i), -h_j[i - 1][k].clone());
        }
        if !rest.is_zero() {
            return Err(GtError::KvIIFailed(2 * k));
        }
    }
    let agrees_mod_linear = (2..=kmax).filter(|k| !ambiguous.contains(k)).all(|k| h_j.iter().all(|hj| hj[k] == h[k]));
    Ok(Duflo { h, h_j, ambiguous, agrees_mod_linear })
}

/// Rebuilds `j(F^{-1})` from Duflo data.
pub fn duflo_recompose(sig: Signature, duflo: &Duflo, valid: usize) -> CyclicSeries {
    let omega = Series::omega(sig, valid);
    let mut out = CyclicSeries::zero(sig, valid);
    for k in 1..duflo.h.len() {
        out.add_scaled(&crate::cyclic::trace(&omega.pow(k)), &-duflo.h[k].clone());
        for (i, hj) in duflo.h_j.iter().enumerate() {
            out.add_term(CyclicWord::new(&vec![sig.z(i + 1); k]), hj[k].clone());
        }
    }
    out.truncated(valid)
}
