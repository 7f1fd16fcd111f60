//! The graded Goldman bracket, framed Turaev cobracket and the action `σ̂`.

use crate::cyclic::{BiCyclic, CyclicSeries, CyclicWord, TriCyclic};
use crate::error::{GtError, Result};
use crate::framing::FramingData;
use crate::linalg::{self, Echelon, SparseVec};
use crate::rational::Q;
use crate::series::{product_valid, Series};
use crate::signature::{Letter, Signature, Word};
use crate::tangential::TDer;

/// Skew pairing on `gr H`: `⟨x_i, y_i⟩ = 1 = −⟨y_i, x_i⟩`, zero otherwise.
pub fn pairing(sig: &Signature, a: Letter, b: Letter) -> i64 {
    if !sig.is_symplectic(a) || !sig.is_symplectic(b) || a / 2 != b / 2 || a == b {
        0
    } else if a.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `𝔷(z_j, z_k) = δ_{jk} z_j`, zero on weight-one letters.
pub fn zeta(sig: &Signature, a: Letter, b: Letter) -> Option<Letter> {
    (a == b && !sig.is_symplectic(a)).then_some(a)
}

/// `u_{i+1} ⋯ u_l u_1 ⋯ u_{i−1}`
fn rest(w: &[Letter], i: usize) -> Word {
    let mut out = Word::from_slice(&w[i + 1..]);
    out.extend_from_slice(&w[..i]);
    out
}

/// `u_{a} ⋯ u_{b}` cyclically, from index `a` for `len` letters.
fn arc(w: &[Letter], a: usize, len: usize) -> Word {
    let l = w.len();
    (0..len).map(|k| w[(a + k) % l]).collect()
}

fn cat(parts: &[&[Letter]]) -> Word {
    let mut out = Word::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    out
}

fn shifted_valid(v: usize, by: usize) -> Result<usize> {
    v.checked_sub(by).ok_or(GtError::DegreeOverflow(v))
}

/// Associated graded Goldman bracket.
pub fn goldman_bracket_gr(u: &CyclicSeries, v: &CyclicSeries) -> Result<CyclicSeries> {
    u.try_check(v)?;
    let sig = u.sig();
    let pv = product_valid(u.valid_degree(), u.low(), v.valid_degree(), v.low());
    let valid = shifted_valid(pv, 2)?;
    let mut out = CyclicSeries::zero(sig, valid);
    for (cu, a) in u.iter() {
        for (cv, b) in v.iter() {
            let coeff = a * b;
            bracket_words(&sig, cu.letters(), cv.letters(), &coeff, &mut out);
        }
    }
    Ok(out)
}

fn bracket_words(sig: &Signature, u: &[Letter], v: &[Letter], c: &Q, out: &mut CyclicSeries) {
    for (i, &ui) in u.iter().enumerate() {
        let ur = rest(u, i);
        for (j, &vj) in v.iter().enumerate() {
            let p = pairing(sig, ui, vj);
            let z = zeta(sig, ui, vj);
            if p == 0 && z.is_none() {
                continue;
            }
            let vr = rest(v, j);
            if p != 0 {
                out.add_term(CyclicWord::new(&cat(&[&ur, &vr])), c * Q::from_int(p));
            }
            if let Some(z) = z {
                out.add_term(CyclicWord::new(&cat(&[&[z], &ur, &vr])), c.clone());
                out.add_term(CyclicWord::new(&cat(&[&[z], &vr, &ur])), -c);
            }
        }
    }
}

/// Associated graded framed Turaev cobracket.
pub fn turaev_cobracket_gr(u: &CyclicSeries, f: &FramingData) -> Result<BiCyclic> {
    let sig = u.sig();
    f.validate(sig)?;
    let valid = shifted_valid(u.valid_degree(), 2)?;
    let mut out = BiCyclic::zero(sig, valid);
    for (cu, c) in u.iter() {
        cobracket_word(&sig, cu.letters(), c, f, &mut out);
    }
    Ok(out)
}

fn add_wedge(out: &mut BiCyclic, a: &[Letter], b: &[Letter], c: &Q) {
    let pa = CyclicWord::new(a);
    let pb = CyclicWord::new(b);
    if pa == pb {
        return;
    }
    out.add_term((pa.clone(), pb.clone()), c.clone());
    out.add_term((pb, pa), -c);
}

fn cobracket_word(sig: &Signature, u: &[Letter], c: &Q, f: &FramingData, out: &mut BiCyclic) {
    let l = u.len();
    for j in 0..l {
        for k in j + 1..l {
            let inner = &u[j + 1..k];
            let outer = cat(&[&u[k + 1..], &u[..j]]);
            let p = pairing(sig, u[j], u[k]);
            if p != 0 {
                add_wedge(out, inner, &outer, &(c * Q::from_int(p)));
            }
            if let Some(z) = zeta(sig, u[k], u[j]) {
                add_wedge(out, &cat(&[&[z], inner]), &outer, c);
                add_wedge(out, &cat(&[&[z], &outer]), inner, c);
            }
        }
    }
    for i in 0..l {
        let cf = f.c_f(sig, u[i]);
        if cf != 0 {
            add_wedge(out, &[], &rest(u, i), &(c * Q::from_int(cf)));
        }
    }
}

/// The `𝟏 ∧ |A|` component of the graded cobracket.
pub fn es_part(u: &CyclicSeries, f: &FramingData) -> Result<CyclicSeries> {
    let sig = u.sig();
    f.validate(sig)?;
    let valid = shifted_valid(u.valid_degree(), 2)?;
    let mut out = CyclicSeries::zero(sig, valid);
    for (cu, c) in u.iter() {
        let w = cu.letters();
        let l = w.len();
        if l == 1 {
            out.add_term(CyclicWord::unit(), c * Q::from_int(f.c_f(&sig, w[0])));
            continue;
        }
        for i in 0..l {
            let a = w[i];
            let b = w[(i + 1) % l];
            let tail = arc(w, i + 2, l - 2);
            let p = pairing(&sig, a, b);
            if p != 0 {
                out.add_term(CyclicWord::new(&tail), c * Q::from_int(p));
            }
            if let Some(z) = zeta(&sig, a, b) {
                out.add_term(CyclicWord::new(&cat(&[&[z], &tail])), -c);
            }
            let cf = f.c_f(&sig, a);
            if cf != 0 {
                out.add_term(CyclicWord::new(&cat(&[&[b], &tail])), c * Q::from_int(cf));
            }
        }
    }
    Ok(out)
}

/// The `𝟏 ∧` part of an element of `|A| ⊗ |A|`: the coefficients of `𝟏 ⊗ Q`, `Q ≠ 𝟏`.
pub fn unit_wedge_part(w: &BiCyclic) -> CyclicSeries {
    w.map_linear(w.valid_degree(), |(a, b)| (a.is_unit() && !b.is_unit()).then(|| (b.clone(), Q::one())))
}

/// `σ̂(u) = (σ(u), σ_1(u), …, σ_n(u))` in `tDer`.
pub fn sigma_hat_gr(u: &CyclicSeries) -> Result<TDer> {
    let sig = u.sig();
    let v = u.valid_degree();
    let sym_valid = shifted_valid(v, 1)?;
    let tan_valid = shifted_valid(v, 2)?;
    let mut sym = vec![Series::zero(sig, sym_valid); 2 * sig.g];
    let mut tangential = vec![Series::zero(sig, tan_valid); sig.n];
    for (cu, c) in u.iter() {
        let w = cu.letters();
        for (i, &ui) in w.iter().enumerate() {
            let r = rest(w, i);
            if sig.is_symplectic(ui) {
                // ⟨u_i, v⟩ is nonzero only for the partner letter v
                let partner = ui ^ 1;
                let p = pairing(&sig, ui, partner);
                sym[partner as usize].add_term(r, c * Q::from_int(p));
            } else {
                let j = ui as usize - 2 * sig.g;
                tangential[j].add_term(r, c.clone());
            }
        }
    }
    Ok(TDer::new(sig, sym, tangential))
}

/// `σ(u)` as a derivation of `A`, given by letter images.
pub fn sigma_gr(u: &CyclicSeries) -> Result<Vec<Series>> {
    Ok(sigma_hat_gr(u)?.letter_images())
}

/// `σ_j(u)`, `1 <= j <= n`.
pub fn sigma_j_gr(u: &CyclicSeries, j: usize) -> Result<Series> {
    Ok(sigma_hat_gr(u)?.tangential[j - 1].clone())
}

/// `[u, P⊗Q] = [u,P]⊗Q + P⊗[u,Q]`
pub fn bracket_action(u: &CyclicSeries, w: &BiCyclic) -> Result<BiCyclic> {
    let sig = u.sig();
    let valid = shifted_valid(u.valid_degree().min(w.valid_degree() + u.low()), 2)?;
    let mut out = BiCyclic::zero(sig, valid);
    for ((a, b), c) in w.iter() {
        let big = usize::MAX / 4;
        let pa = CyclicSeries::monomial(sig, big, a.clone(), Q::one());
        let pb = CyclicSeries::monomial(sig, big, b.clone(), Q::one());
        let ua = goldman_bracket_gr(u, &pa)?;
        for (k, ck) in ua.iter() {
            out.add_term((k.clone(), b.clone()), ck * c);
        }
        let ub = goldman_bracket_gr(u, &pb)?;
        for (k, ck) in ub.iter() {
            out.add_term((a.clone(), k.clone()), ck * c);
        }
    }
    Ok(out)
}

/// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`
pub fn jacobi_defect(a: &CyclicSeries, b: &CyclicSeries, c: &CyclicSeries) -> Result<CyclicSeries> {
    let t1 = goldman_bracket_gr(a, &goldman_bracket_gr(b, c)?)?;
    let t2 = goldman_bracket_gr(b, &goldman_bracket_gr(c, a)?)?;
    let t3 = goldman_bracket_gr(c, &goldman_bracket_gr(a, b)?)?;
    Ok(&(&t1 + &t2) + &t3)
}

/// `(1 + τ + τ²)(δ ⊗ 1)δ(a)` with `τ` the cyclic permutation of tensor factors.
pub fn cojacobi_defect(a: &CyclicSeries, f: &FramingData) -> Result<TriCyclic> {
    let sig = a.sig();
    let d = turaev_cobracket_gr(a, f)?;
    let valid = shifted_valid(d.valid_degree(), 2)?;
    let mut dd = TriCyclic::zero(sig, valid);
    for ((p, q), c) in d.iter() {
        let pp = CyclicSeries::monomial(sig, d.valid_degree(), p.clone(), Q::one());
        let dp = turaev_cobracket_gr(&pp, f)?;
        for ((x, y), cx) in dp.iter() {
            dd.add_term((x.clone(), y.clone(), q.clone()), cx * c);
        }
    }
    let mut out = dd.clone();
    for ((x, y, z), c) in dd.iter() {
        out.add_term((z.clone(), x.clone(), y.clone()), c.clone());
        out.add_term((y.clone(), z.clone(), x.clone()), c.clone());
    }
    Ok(out)
}

/// `δ^f[a,b] − (a·δ^f b − b·δ^f a)`
pub fn cocycle_defect(a: &CyclicSeries, b: &CyclicSeries, f: &FramingData) -> Result<BiCyclic> {
    let lhs = turaev_cobracket_gr(&goldman_bracket_gr(a, b)?, f)?;
    let r1 = bracket_action(a, &turaev_cobracket_gr(b, f)?)?;
    let r2 = bracket_action(b, &turaev_cobracket_gr(a, f)?)?;
    Ok(&lhs - &(&r1 - &r2))
}

/// The compatibility defect of the unframed (`c_f = 0`) cobracket.
pub fn compatibility_defect(a: &CyclicSeries, b: &CyclicSeries) -> Result<BiCyclic> {
    cocycle_defect(a, b, &FramingData::adapted(a.sig()))
}

/// `[−,−] ∘ δ^f`
pub fn involutivity_defect(a: &CyclicSeries, f: &FramingData) -> Result<CyclicSeries> {
    let sig = a.sig();
    let d = turaev_cobracket_gr(a, f)?;
    let valid = shifted_valid(d.valid_degree(), 2)?;
    let mut out = CyclicSeries::zero(sig, valid);
    let big = usize::MAX / 4;
    for ((p, q), c) in d.iter() {
        let pp = CyclicSeries::monomial(sig, big, p.clone(), Q::one());
        let qq = CyclicSeries::monomial(sig, big, q.clone(), Q::one());
        for (k, ck) in goldman_bracket_gr(&pp, &qq)?.iter() {
            out.add_term(k.clone(), ck * c);
        }
    }
    Ok(out)
}

/// All necklaces of the given degree, in canonical order.
pub fn cyclic_words_of_degree(sig: &Signature, d: usize) -> Vec<CyclicWord> {
    let mut v: Vec<CyclicWord> = sig.words_of_degree(d).iter().map(|w| CyclicWord::new(w)).collect();
    v.sort_by(|a, b| sig.cmp_words(a.letters(), b.letters()));
    v.dedup();
    v
}

/// `{𝟏, |ω^k|, |z_j^k|}` up to degree `d`.
pub fn center_span(sig: Signature, d: usize) -> Vec<CyclicSeries> {
    let mut out = vec![CyclicSeries::unit(sig, d)];
    let omega = Series::omega(sig, d);
    for k in 1..=d / 2 {
        out.push(crate::cyclic::trace(&omega.pow(k)).graded_component(2 * k));
        for j in 1..=sig.n {
            let zk: Word = std::iter::repeat_n(sig.z(j), k).collect();
            out.push(CyclicSeries::monomial(sig, d, CyclicWord::new(&zk), Q::one()));
        }
    }
    out
}

/// Basis of the center in degree exactly `d`, by an exact kernel computation of `ad`
/// against all necklaces of degree `1..=test_degree`.
pub fn center_basis_degree(sig: Signature, d: usize, test_degree: usize) -> Vec<CyclicSeries> {
    let words = cyclic_words_of_degree(&sig, d);
    let big = usize::MAX / 4;
    let tests: Vec<CyclicSeries> = (1..=test_degree)
        .flat_map(|e| cyclic_words_of_degree(&sig, e))
        .map(|w| CyclicSeries::monomial(sig, big, w, Q::one()))
        .collect();
    let columns: Vec<SparseVec<(usize, CyclicWord)>> = words
        .iter()
        .map(|w| {
            let p = CyclicSeries::monomial(sig, big, w.clone(), Q::one());
            let mut col = SparseVec::new();
            for (t, q) in tests.iter().enumerate() {
                let b = goldman_bracket_gr(&p, q).expect("unbounded validity");
                for (k, c) in b.iter() {
                    col.insert((t, k.clone()), c.clone());
                }
            }
            col
        })
        .collect();
    linalg::kernel(&columns)
        .into_iter()
        .map(|coeffs| CyclicSeries::from_terms(sig, d, words.iter().cloned().zip(coeffs)))
        .collect()
}

/// Basis of the center up to degree `d`.
pub fn center_basis(sig: Signature, d: usize) -> Vec<CyclicSeries> {
    (0..=d).flat_map(|e| center_basis_degree(sig, e, (e + 2).max(4))).collect()
}

/// Does `[p, |w|] = 0` hold for all necklaces `w` of degree `1..=test_degree`?
pub fn is_central(p: &CyclicSeries, test_degree: usize) -> bool {
    let sig = p.sig();
    let big = usize::MAX / 4;
    let p = p.clone().with_valid(big);
    (1..=test_degree).all(|e| {
        cyclic_words_of_degree(&sig, e).into_iter().all(|w| {
            let q = CyclicSeries::monomial(sig, big, w, Q::one());
            goldman_bracket_gr(&p, &q).map(|b| b.is_zero()).unwrap_or(false)
        })
    })
}

/// Do two families span the same subspace?
pub fn same_span(a: &[CyclicSeries], b: &[CyclicSeries]) -> bool {
    let va: Vec<_> = a.iter().map(linalg::to_vector).collect();
    let vb: Vec<_> = b.iter().map(linalg::to_vector).collect();
    let ra = linalg::rank(&va);
    let rb = linalg::rank(&vb);
    let mut all = va;
    all.extend(vb);
    ra == rb && linalg::rank(&all) == ra
}

/// Residue of `p` modulo the span of `basis`, with the coefficients used.
pub fn reduce_modulo(p: &CyclicSeries, basis: &[CyclicSeries]) -> (CyclicSeries, Vec<Q>) {
    let mut ech = Echelon::new();
    for b in basis {
        ech.insert(&linalg::to_vector(b));
    }
    let (res, combo) = ech.reduce(&linalg::to_vector(p));
    let mut coeffs = vec![Q::zero(); basis.len()];
    for (i, c) in combo {
        coeffs[i] = c;
    }
    (CyclicSeries::from_terms(p.sig(), p.valid_degree(), res), coeffs)
}

/// Outcome of a membership test `a ∈ [pivot, A]`.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// `b` with `a = [pivot, b]`, when `member`.
    pub witness: Option<Series>,
}

/// Decides `a ∈ [pivot, A]` degree by degree up to `d`; `pivot` must be homogeneous.
pub fn inner_membership(a: &Series, pivot: &Series, d: usize) -> Result<Membership> {
    a.try_check(pivot)?;
    let sig = a.sig();
    let pd = pivot.min_degree().ok_or(GtError::ZeroElement)?;
    let big = usize::MAX / 4;
    let piv = pivot.clone().with_valid(big);
    let mut witness = Series::zero(sig, d.saturating_sub(pd));
    for e in 0..=d {
        let ae = a.graded_component(e);
        if ae.is_zero() {
            continue;
        }
        if e < pd {
            return Ok(Membership { member: false, witness: None });
        }
        let basis = sig.words_of_degree(e - pd);
        let columns: Vec<SparseVec<Word>> =
            basis.iter().map(|w| linalg::to_vector(&piv.commutator(&Series::word(sig, big, w)))).collect();
        let sol = linalg::solve(&columns, &linalg::to_vector(&ae));
        match sol.particular {
            None => return Ok(Membership { member: false, witness: None }),
            Some(x) => {
                for (w, c) in basis.into_iter().zip(x) {
                    witness.add_term(w, c);
                }
            }
        }
    }
    Ok(Membership { member: true, witness: Some(witness) })
}

/// `|a · pivot^l| = 0` for every `l >= 1` with `deg(a) + l·deg(pivot) <= d`.
pub fn inner_lemma_condition(a: &Series, pivot: &Series, d: usize) -> bool {
    let big = usize::MAX / 4;
    let a = a.clone().with_valid(big).truncated(d);
    let piv = pivot.clone().with_valid(big);
    let pd = match pivot.min_degree() {
        Some(p) => p,
        None => return true,
    };
    let mut power = piv.clone();
    let mut l = 1;
    while l * pd <= d {
        let t = crate::cyclic::trace(&a.mul(&power)).truncated(d);
        if !t.is_zero() {
            return false;
        }
        power = power.mul(&piv).truncated(d);
        l += 1;
    }
    true
}
