//! Exact sparse Gaussian elimination over `Q`.

use std::collections::BTreeMap;
use std::ops::Bound;

use crate::rational::Q;
use crate::series::{Key, LinComb};

pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn to_vector<K: Key>(s: &LinComb<K>) -> SparseVec<K> {
    s.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
}

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Q, x: &SparseVec<K>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

struct Row<K> {
    vec: SparseVec<K>,
    /// `vec = Σ combo[i] · input_i`
    combo: SparseVec<usize>,
}

/// Incremental row echelon form with the pivot at each row's least key.
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    inputs: usize,
}

pub enum Inserted {
    /// The input was independent of the previous ones.
    Independent,
    /// `Σ relation[i] · input_i = 0`, with the new input's coefficient equal to one.
    Dependent(SparseVec<usize>),
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), inputs: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// Returns `(residual, combo)` with `v = residual + Σ combo[i] · input_i`.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut r = v.clone();
        let mut combo: SparseVec<usize> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let lower = match &cursor {
                Some(k) => Bound::Excluded(k.clone()),
                None => Bound::Unbounded,
            };
            let next = r
                .range((lower, Bound::Unbounded))
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivots[&k]];
            axpy(&mut r, &-c.clone(), &row.vec);
            axpy(&mut combo, &c, &row.combo);
            cursor = Some(k);
        }
        (r, combo)
    }

    pub fn insert(&mut self, v: &SparseVec<K>) -> Inserted {
        let idx = self.inputs;
        self.inputs += 1;
        let (r, combo) = self.reduce(v);
        if r.is_empty() {
            let mut rel: SparseVec<usize> = combo.into_iter().map(|(i, c)| (i, -c)).collect();
            rel.insert(idx, Q::one());
            return Inserted::Dependent(rel);
        }
        let (pk, pc) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = pc.recip().expect("nonzero pivot");
        let mut c2: SparseVec<usize> = combo.into_iter().map(|(i, c)| (i, -c * &inv)).collect();
        c2.insert(idx, inv.clone());
        let vec = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.pivots.insert(pk, self.rows.len());
        self.rows.push(Row { vec, combo: c2 });
        Inserted::Independent
    }

    /// Is `v` in the span of the inputs?
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Result of solving `Σ x_i · columns_i = target`.
pub struct Solution<K> {
    /// A particular solution, if the system is consistent.
    pub particular: Option<Vec<Q>>,
    /// The target reduced modulo the column span.
    pub residual: SparseVec<K>,
    /// Basis of the kernel of the column map.
    pub kernel: Vec<Vec<Q>>,
    pub rank: usize,
}

pub fn solve<K: Ord + Clone>(columns: &[SparseVec<K>], target: &SparseVec<K>) -> Solution<K> {
    let m = columns.len();
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for col in columns {
        if let Inserted::Dependent(rel) = ech.insert(col) {
            let mut v = vec![Q::zero(); m];
            for (i, c) in rel {
                v[i] = c;
            }
            kernel.push(v);
        }
    }
    let (residual, combo) = ech.reduce(target);
    let particular = if residual.is_empty() {
        let mut x = vec![Q::zero(); m];
        for (i, c) in combo {
            x[i] = c;
        }
        Some(x)
    } else {
        None
    };
    Solution { particular, residual, kernel, rank: ech.rank() }
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Basis of the kernel of the column map.
pub fn kernel<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Vec<Vec<Q>> {
    solve(columns, &BTreeMap::new()).kernel
}
