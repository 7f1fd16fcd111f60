use std::fmt::Write;

use gt_core::json::to_pretty;
use gt_core::kv::{Condition, KvReport, KvStatus};
use gt_core::parse::{format_cyclic, format_lincomb, format_series};
use gt_core::{BiCyclic, CyclicSeries, CyclicWord, FramingData, Series, Signature, TAut, TDer};
use serde::Serialize;

use crate::{CliError, Format};

/// Human-readable rendering used by `--format text`.
pub trait Text {
    fn text(&self) -> String;
}

pub fn emit<T: Serialize + Text>(value: &T, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => to_pretty(value),
        Format::Text => {
            let mut s = value.text();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    })
}

fn necklace(sig: &Signature, w: &CyclicWord) -> String {
    format!("|{}|", sig.word_names(w.letters()).join(" "))
}

impl Text for Series {
    fn text(&self) -> String {
        format_series(self)
    }
}

impl Text for CyclicSeries {
    fn text(&self) -> String {
        format_cyclic(self)
    }
}

impl Text for BiCyclic {
    fn text(&self) -> String {
        let sig = self.sig();
        format_lincomb(self, |(a, b)| format!("{} ⊗ {}", necklace(&sig, a), necklace(&sig, b)))
    }
}

fn table(sig: Signature, letters: &[Series], tangential: &[Series]) -> String {
    let mut s = String::new();
    for (l, img) in sig.letters().zip(letters) {
        writeln!(s, "{} -> {}", sig.letter_name(l), format_series(img)).unwrap();
    }
    for (j, t) in tangential.iter().enumerate() {
        writeln!(s, "u{} = {}", j + 1, format_series(t)).unwrap();
    }
    s
}

impl Text for TDer {
    fn text(&self) -> String {
        table(self.sig(), &self.sym, &self.tangential)
    }
}

impl Text for TAut {
    fn text(&self) -> String {
        table(self.sig(), &self.images, &self.tangential)
    }
}

impl Text for KvReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "surface {} through degree {}", self.sig, self.degree).unwrap();
        for st in &self.steps {
            writeln!(
                s,
                "  degree {}: {} unknowns, rank {}, kernel {}, {} attempt(s)",
                st.degree, st.unknowns, st.rank, st.kernel_dim, st.attempts
            )
            .unwrap();
        }
        match &self.status {
            KvStatus::Solved { duflo } => {
                writeln!(s, "solved").unwrap();
                if let Some(d) = duflo {
                    let h: Vec<String> = d.h.iter().map(|q| q.to_string()).collect();
                    writeln!(s, "h = [{}]", h.join(", ")).unwrap();
                    writeln!(s, "ambiguous powers {:?}", d.ambiguous).unwrap();
                }
            }
            KvStatus::Obstructed(cert) => {
                let cond = match cert.failing() {
                    Condition::Kvi => "KVI",
                    Condition::Kvii => "KVII",
                };
                writeln!(s, "obstructed at degree {} ({cond})", cert.degree).unwrap();
                if cert.failing() == Condition::Kvii {
                    writeln!(s, "residual {}", format_cyclic(&cert.kvii_residual)).unwrap();
                } else {
                    writeln!(s, "residual {}", format_series(&cert.kvi_residual)).unwrap();
                }
            }
            KvStatus::CheckedOnly { kvi_ok, kvii_ok, kvii_residue, .. } => {
                writeln!(s, "KVI {}", if *kvi_ok { "holds" } else { "fails" }).unwrap();
                writeln!(s, "KVII {}", if *kvii_ok { "holds" } else { "fails" }).unwrap();
                if !kvii_residue.is_zero() {
                    writeln!(s, "KVII residue {}", format_cyclic(kvii_residue)).unwrap();
                }
            }
        }
        s
    }
}

#[derive(Serialize)]
pub struct IdentityCount {
    pub identity: &'static str,
    pub instances: usize,
    pub nonzero: usize,
}

#[derive(Serialize)]
pub struct Axioms {
    pub signature: Signature,
    pub degree: usize,
    pub framing: FramingData,
    pub checks: Vec<IdentityCount>,
    pub all_zero: bool,
}

impl Text for Axioms {
    fn text(&self) -> String {
        let mut s = format!("surface {} through degree {}\n", self.signature, self.degree);
        for c in &self.checks {
            writeln!(s, "{:<14} {:>7} checked, {} nonzero", c.identity, c.instances, c.nonzero).unwrap();
        }
        s
    }
}

#[derive(Serialize)]
pub struct CenterBasis {
    pub signature: Signature,
    pub degree: usize,
    pub basis: Vec<CyclicSeries>,
}

impl Text for CenterBasis {
    fn text(&self) -> String {
        self.basis.iter().map(|b| format_cyclic(b) + "\n").collect()
    }
}

#[derive(Serialize)]
pub struct Audit {
    pub signature: Signature,
    pub degree: usize,
    pub condition: Condition,
    pub valid: bool,
}

impl Text for Audit {
    fn text(&self) -> String {
        let verdict = if self.valid { "confirmed" } else { "rejected" };
        format!("obstruction certificate at degree {} {verdict}\n", self.degree)
    }
}
