use std::fs;
use std::path::Path;

use gt_core::expansions::{Expansion, FreeGroupWord};
use gt_core::json;
use gt_core::kv::{audit_certificate, kv_check, kv_solve, KvMode, KvProblem, KvReport, KvStatus};
use gt_core::loops::{
    center_basis, cocycle_defect, cojacobi_defect, compatibility_defect, cyclic_words_of_degree, es_part,
    goldman_bracket_gr, involutivity_defect, jacobi_defect, sigma_hat_gr, turaev_cobracket_gr,
};
use gt_core::parse::parse_cyclic;
use gt_core::tangential::{div, exp, gdiv, j_q, tdiv};
use gt_core::{CyclicSeries, FramingData, GtError, Signature, TAut, TDer, Q};

use crate::render::{emit, Audit, Axioms, CenterBasis, IdentityCount};
use crate::{Cli, CliError, Command, DerivationInput, ExpansionSource, KvOp, LoopOp, Mode, Surface};

type Out = Result<String, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_framing(path: Option<&Path>, sig: Signature) -> Result<FramingData, CliError> {
    match path {
        None => Ok(FramingData::adapted(sig)),
        Some(p) => {
            let f: FramingData = json::from_str(&read(p)?)?;
            f.validate(sig)?;
            Ok(f)
        }
    }
}

fn cap(cli: &Cli, degree: usize) -> Result<usize, CliError> {
    if degree > cli.max_degree {
        return Err(GtError::DegreeCap { requested: degree, cap: cli.max_degree }.into());
    }
    Ok(degree)
}

struct Ctx {
    sig: Signature,
    degree: usize,
    framing: FramingData,
}

impl Ctx {
    fn new(cli: &Cli, s: &Surface) -> Result<Self, CliError> {
        let sig = Signature::new(s.g, s.n)?;
        let degree = cap(cli, s.degree)?;
        let framing = load_framing(s.framing.as_deref(), sig)?;
        Ok(Ctx { sig, degree, framing })
    }

    fn cyclic(&self, expr: &str) -> Result<CyclicSeries, CliError> {
        Ok(parse_cyclic(self.sig, self.degree, expr)?)
    }

    fn word(&self, s: &str) -> Result<FreeGroupWord, CliError> {
        Ok(FreeGroupWord::parse(&self.sig, s)?)
    }

    fn derivation(&self, input: &DerivationInput) -> Result<TDer, CliError> {
        match (&input.file, &input.expr) {
            (Some(path), _) => {
                let u: TDer = json::from_str(&read(path)?)?;
                self.sig.check_same(&u.sig())?;
                Ok(u)
            }
            (None, Some(expr)) => Ok(sigma_hat_gr(&self.cyclic(expr)?)?),
            (None, None) => Err(CliError::Usage("a necklace expression or --file is required".into())),
        }
    }

    fn problem(&self) -> Result<KvProblem, CliError> {
        Ok(KvProblem::new(self.sig, self.framing.clone(), self.degree)?)
    }

    /// The expansion from a stored solution, or from a fresh full KV solve.
    fn special(&self, source: &ExpansionSource) -> Result<Expansion, CliError> {
        let twist = match &source.kv_solution {
            Some(path) => load_twist(path)?,
            None => {
                let report = kv_solve(&self.problem()?, KvMode::Full, None)?;
                match report.status {
                    KvStatus::Obstructed(cert) => return Err(obstruction(&cert).into()),
                    _ => report.twist.expect("solved report carries a twist"),
                }
            }
        };
        self.sig.check_same(&twist.sig())?;
        Ok(Expansion::new(twist))
    }
}

fn obstruction(cert: &gt_core::kv::Certificate) -> GtError {
    match cert.failing() {
        gt_core::kv::Condition::Kvi => GtError::KvIFailed(cert.degree),
        gt_core::kv::Condition::Kvii => GtError::KvIIFailed(cert.degree),
    }
}

/// A solution file holds either a full report or a bare automorphism.
enum Solution {
    Report(Box<KvReport>),
    Twist(TAut),
}

fn load_solution(path: &Path) -> Result<Solution, CliError> {
    let text = read(path)?;
    let value: serde_json::Value = json::from_str(&text)?;
    if value.get("steps").is_some() {
        Ok(Solution::Report(Box::new(json::from_str(&text)?)))
    } else {
        Ok(Solution::Twist(json::from_str(&text)?))
    }
}

fn load_twist(path: &Path) -> Result<TAut, CliError> {
    match load_solution(path)? {
        Solution::Twist(t) => Ok(t),
        Solution::Report(r) => match r.status {
            KvStatus::Obstructed(cert) => Err(obstruction(&cert).into()),
            _ => r.twist.ok_or_else(|| CliError::Usage(format!("{} carries no twist", path.display()))),
        },
    }
}

pub fn run(cli: &Cli) -> Out {
    let f = cli.format;
    match &cli.command {
        Command::Bracket { surface, a, b } => {
            let c = Ctx::new(cli, surface)?;
            emit(&goldman_bracket_gr(&c.cyclic(a)?, &c.cyclic(b)?)?, f)
        }
        Command::Cobracket { surface, a } => {
            let c = Ctx::new(cli, surface)?;
            emit(&turaev_cobracket_gr(&c.cyclic(a)?, &c.framing)?, f)
        }
        Command::Sigma { surface, a } => {
            let c = Ctx::new(cli, surface)?;
            emit(&sigma_hat_gr(&c.cyclic(a)?)?, f)
        }
        Command::Es { surface, a } => {
            let c = Ctx::new(cli, surface)?;
            emit(&es_part(&c.cyclic(a)?, &c.framing)?, f)
        }
        Command::Axioms { surface } => {
            let c = Ctx::new(cli, surface)?;
            emit(&axioms(&c)?, f)
        }
        Command::Center { surface } => {
            let c = Ctx::new(cli, surface)?;
            emit(&CenterBasis { signature: c.sig, degree: c.degree, basis: center_basis(c.sig, c.degree) }, f)
        }
        Command::Div { surface, input } => {
            let c = Ctx::new(cli, surface)?;
            emit(&div(&c.derivation(input)?)?, f)
        }
        Command::Tdiv { surface, input } => {
            let c = Ctx::new(cli, surface)?;
            emit(&tdiv(&c.derivation(input)?), f)
        }
        Command::Gdiv { surface, input } => {
            let c = Ctx::new(cli, surface)?;
            emit(&gdiv(&c.derivation(input)?, &c.framing), f)
        }
        Command::Jcocycle { surface, input } => {
            let c = Ctx::new(cli, surface)?;
            emit(&j_q(&exp(&c.derivation(input)?)?, &c.framing)?, f)
        }
        Command::Expansion { surface, word, kv_solution } => {
            let c = Ctx::new(cli, surface)?;
            let e = match kv_solution {
                Some(path) => Expansion::new(load_twist(path)?),
                None => Expansion::exponential(c.sig, c.degree),
            };
            c.sig.check_same(&e.sig())?;
            emit(&e.eval(&c.word(word)?, c.degree), f)
        }
        Command::Loop { op } => loop_op(cli, op),
        Command::Kv { op } => kv_op(cli, op),
    }
}

fn loop_op(cli: &Cli, op: &LoopOp) -> Out {
    let f = cli.format;
    match op {
        LoopOp::Log { surface, source, word } => {
            let c = Ctx::new(cli, surface)?;
            emit(&c.special(source)?.loop_log(&c.word(word)?, c.degree), f)
        }
        LoopOp::Bracket { surface, source, a, b } => {
            let c = Ctx::new(cli, surface)?;
            let e = c.special(source)?;
            emit(&e.loop_bracket(&c.word(a)?, &c.word(b)?, c.degree)?, f)
        }
        LoopOp::Cobracket { surface, source, word } => {
            let c = Ctx::new(cli, surface)?;
            let e = c.special(source)?;
            emit(&e.loop_cobracket(&c.word(word)?, &c.framing, c.degree)?, f)
        }
    }
}

fn kv_op(cli: &Cli, op: &KvOp) -> Out {
    let f = cli.format;
    match op {
        KvOp::Solve { surface, mode, seed, out } => {
            let c = Ctx::new(cli, surface)?;
            let mode = match mode {
                Mode::Full => KvMode::Full,
                Mode::KviOnly => KvMode::KviOnly,
            };
            let report = kv_solve(&c.problem()?, mode, *seed)?;
            if let Some(path) = out {
                write(path, &json::to_pretty(&report))?;
            }
            emit(&report, f)
        }
        KvOp::Check { solution, degree, framing } => {
            let (sig, twist, default_degree, default_framing, report) = match load_solution(solution)? {
                Solution::Report(r) => (r.sig, r.twist.clone(), Some(r.degree), Some(r.framing.clone()), Some(r)),
                Solution::Twist(t) => (t.sig(), Some(t), None, None, None),
            };
            let degree = degree
                .or(default_degree)
                .ok_or_else(|| CliError::Usage("--degree is required for a bare automorphism".into()))?;
            let framing = match (framing, default_framing) {
                (Some(p), _) => load_framing(Some(p), sig)?,
                (None, Some(fr)) => fr,
                (None, None) => FramingData::adapted(sig),
            };
            let problem = KvProblem::new(sig, framing, cap(cli, degree)?)?;
            if let Some(KvStatus::Obstructed(cert)) = report.map(|r| r.status) {
                let valid = audit_certificate(&problem, &cert)?;
                return emit(&Audit { signature: sig, degree: cert.degree, condition: cert.failing(), valid }, f);
            }
            let twist = twist.ok_or_else(|| CliError::Usage("the solution carries no twist".into()))?;
            emit(&kv_check(&twist, &problem)?, f)
        }
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    nonzero: usize,
}

impl Tally {
    fn record(&mut self, zero: bool) {
        self.instances += 1;
        self.nonzero += usize::from(!zero);
    }
}

fn axioms(c: &Ctx) -> Result<Axioms, CliError> {
    let basis: Vec<(usize, CyclicSeries)> = (1..=c.degree)
        .flat_map(|d| cyclic_words_of_degree(&c.sig, d).into_iter().map(move |w| (d, w)))
        .map(|(d, w)| (d, CyclicSeries::from_terms(c.sig, c.degree, [(w, Q::one())])))
        .collect();
    let names = ["antisymmetry", "jacobi", "co_jacobi", "compatibility", "cocycle", "involutivity"];
    let mut t: [Tally; 6] = Default::default();
    for (i, (da, a)) in basis.iter().enumerate() {
        t[2].record(cojacobi_defect(a, &c.framing)?.is_zero());
        t[5].record(involutivity_defect(a, &c.framing)?.is_zero());
        for (j, (db, b)) in basis.iter().enumerate().skip(i) {
            if da + db > c.degree {
                continue;
            }
            let ab = goldman_bracket_gr(a, b)?;
            let ba = goldman_bracket_gr(b, a)?;
            t[0].record((&ab + &ba).is_zero());
            t[3].record(compatibility_defect(a, b)?.is_zero());
            t[4].record(cocycle_defect(a, b, &c.framing)?.is_zero());
            for (dc, x) in &basis[j..] {
                if da + db + dc <= c.degree {
                    t[1].record(jacobi_defect(a, b, x)?.is_zero());
                }
            }
        }
    }
    let checks: Vec<IdentityCount> = names
        .iter()
        .zip(t)
        .map(|(name, t)| IdentityCount { identity: name, instances: t.instances, nonzero: t.nonzero })
        .collect();
    let all_zero = checks.iter().all(|x| x.nonzero == 0);
    Ok(Axioms { signature: c.sig, degree: c.degree, framing: c.framing.clone(), checks, all_zero })
}
