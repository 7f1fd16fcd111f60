//! Surface signatures, generators of `gr H` and words in them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{GtError, Result};

/// Letter index. For `(g, n)`: `x_i = 2(i-1)`, `y_i = 2(i-1)+1`, `z_j = 2g + j - 1`.
/// The numeric order is the canonical generator order `x1 < y1 < ... < yg < z1 < ... < zn`.
pub type Letter = u8;

/// A word in the generators of `gr H`; the empty word is the unit.
pub type Word = SmallVec<[Letter; 12]>;

/// The surface `Σ_{g,n+1}`: genus `g` with `n + 1` boundary components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub g: usize,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X(usize),
    Y(usize),
    Z(usize),
}

impl Signature {
    pub fn new(g: usize, n: usize) -> Result<Self> {
        if 2 * g + n == 0 || 2 * g + n > 60 {
            return Err(GtError::InvalidSignature { g, n });
        }
        Ok(Signature { g, n })
    }

    /// Rank of the free group `π`.
    pub fn rank(&self) -> usize {
        2 * self.g + self.n
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        0..self.rank() as Letter
    }

    pub fn weight(&self, l: Letter) -> usize {
        if (l as usize) < 2 * self.g {
            1
        } else {
            2
        }
    }

    pub fn is_symplectic(&self, l: Letter) -> bool {
        (l as usize) < 2 * self.g
    }

    pub fn degree(&self, w: &[Letter]) -> usize {
        w.iter().map(|&l| self.weight(l)).sum()
    }

    pub fn x(&self, i: usize) -> Letter {
        debug_assert!(i >= 1 && i <= self.g);
        (2 * (i - 1)) as Letter
    }

    pub fn y(&self, i: usize) -> Letter {
        debug_assert!(i >= 1 && i <= self.g);
        (2 * (i - 1) + 1) as Letter
    }

    pub fn z(&self, j: usize) -> Letter {
        debug_assert!(j >= 1 && j <= self.n);
        (2 * self.g + j - 1) as Letter
    }

    pub fn generator(&self, l: Letter) -> Generator {
        let l = l as usize;
        if l < 2 * self.g {
            if l.is_multiple_of(2) {
                Generator::X(l / 2 + 1)
            } else {
                Generator::Y(l / 2 + 1)
            }
        } else {
            Generator::Z(l - 2 * self.g + 1)
        }
    }

    pub fn letter(&self, gen: Generator) -> Result<Letter> {
        match gen {
            Generator::X(i) if i >= 1 && i <= self.g => Ok(self.x(i)),
            Generator::Y(i) if i >= 1 && i <= self.g => Ok(self.y(i)),
            Generator::Z(j) if j >= 1 && j <= self.n => Ok(self.z(j)),
            other => Err(GtError::GeneratorOutOfRange(format!("{other:?} for {self:?}"))),
        }
    }

    pub fn letter_name(&self, l: Letter) -> String {
        match self.generator(l) {
            Generator::X(i) => format!("x{i}"),
            Generator::Y(i) => format!("y{i}"),
            Generator::Z(j) => format!("z{j}"),
        }
    }

    pub fn parse_letter(&self, s: &str) -> Result<Letter> {
        let s = s.trim();
        let bad = || GtError::Parse(format!("unknown generator `{s}`"));
        let (head, idx) = s.split_at(1.min(s.len()));
        let idx: usize = idx.parse().map_err(|_| bad())?;
        let gen = match head {
            "x" => Generator::X(idx),
            "y" => Generator::Y(idx),
            "z" => Generator::Z(idx),
            _ => return Err(bad()),
        };
        self.letter(gen)
    }

    pub fn word_names(&self, w: &[Letter]) -> Vec<String> {
        w.iter().map(|&l| self.letter_name(l)).collect()
    }

    pub fn parse_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names.iter().map(|s| self.parse_letter(s.as_ref())).collect()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            self.word_names(w).join(" ")
        }
    }

    /// Canonical word order: by degree, then length, then lexicographically.
    pub fn cmp_words(&self, a: &[Letter], b: &[Letter]) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then(a.len().cmp(&b.len())).then(a.cmp(b))
    }

    /// All words of exactly the given degree, in canonical order.
    pub fn words_of_degree(&self, d: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Word::new();
        self.extend_words(d, &mut cur, &mut out);
        out.sort_by(|a, b| self.cmp_words(a, b));
        out
    }

    fn extend_words(&self, rem: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for l in self.letters() {
            let w = self.weight(l);
            if w <= rem {
                cur.push(l);
                self.extend_words(rem - w, cur, out);
                cur.pop();
            }
        }
    }

    pub fn check_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(GtError::SignatureMismatch(*self, *other))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.g, self.n + 1)
    }
}
