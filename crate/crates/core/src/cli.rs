//! Command-line interface.
//!
//! Exit codes: 0 when the command succeeds and every checked condition holds,
//! 1 when a condition fails or a synthesis result is withheld, 2 on usage,
//! input or validation errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::automaton::{inclusion_counterexample, sync_product, Generator, LangKind};
use crate::coordination::{
    build_coordinator, is_cond_closed, is_cond_controllable, is_cond_normal, is_cond_observable, synth_supcc,
    synth_supccn, verify_closed_loop, CoordinationProblem, Level, LevelWitness, NamedVerdict, Outcome, Witness,
};
use crate::error::{Error, Result};
use crate::events::EventTable;
use crate::io::{
    closed_loop_report, load_generator, load_problem, print_generator, synthesis_report, verdicts_report,
    ObservationMode, ProblemFiles, ReportFormat,
};
use crate::language::{check_cd, extend_sigma_k, lift, project_to, ProjectionSpec};
use crate::structural::{is_lcc, is_observer, is_occ};
use crate::synthesis::{nonconflicting, Verdict};

#[derive(Parser, Debug)]
#[command(name = "coordsynth", version, about = "Coordination supervisory control synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check conditional decomposability of K and its prefix closure.
    CheckCd(ProblemArgs),
    /// Extend Σk until K and its prefix closure are conditionally decomposable.
    ExtendSigmaK(ProblemArgs),
    /// Print the coordinator Gk in generator format.
    Coordinator(ProblemArgs),
    /// Supremal conditionally controllable sublanguage.
    Supcc(ReportArgs),
    /// Supremal conditionally controllable and conditionally normal sublanguage.
    Supccn(SupccnArgs),
    /// Observer, OCC, LCC, nonconflict and the conditional properties of K.
    CheckConditions(ReportArgs),
    /// Compose supervisors with the plants and check the closed loop.
    Verify(VerifyArgs),
    /// Language comparisons on generator files.
    #[command(subcommand)]
    Lang(LangCommand),
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// Problem manifest.
    #[arg(long)]
    problem: PathBuf,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct SupccnArgs {
    #[command(flatten)]
    report: ReportArgs,
    /// Override the manifest's observation mode.
    #[arg(long, value_enum)]
    observation: Option<ObservationArg>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    report: ReportArgs,
    /// Supervisor over Σ1∪Σk (default: the synthesized sup_1+k).
    #[arg(long)]
    s1: Option<PathBuf>,
    /// Supervisor over Σ2∪Σk (default: the synthesized sup_2+k).
    #[arg(long)]
    s2: Option<PathBuf>,
    /// Coordinator supervisor over Σk (default: the synthesized sup_k).
    #[arg(long)]
    sk: Option<PathBuf>,
    /// Expected closed-loop language (default: the synthesis result).
    #[arg(long)]
    target: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum LangCommand {
    /// Language equality of two generators.
    Equal(PairArgs),
    /// Whether the first language contains the second.
    Includes(PairArgs),
    /// List the marked words up to a length.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// First generator (the containing one for `includes`).
    first: PathBuf,
    /// Second generator.
    second: PathBuf,
    /// Compare generated instead of marked languages.
    #[arg(long)]
    generated: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Human,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ObservationArg {
    Full,
    Flags,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Human => ReportFormat::Human,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn exit_code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn emit(text: &str, report: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match report {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::CheckCd(a) => check_cd_cmd(&load_problem(&a.problem)?, out),
        Command::ExtendSigmaK(a) => {
            let f = load_problem(&a.problem)?;
            let sk = extend_sigma_k(&f.spec, f.g1.alphabet(), f.g2.alphabet(), &f.sigma_k)?;
            emit(&format!("sigma_k={}\n", names(&f.events, &sk)), None, out)?;
            Ok(0)
        }
        Command::Coordinator(a) => {
            let f = load_problem(&a.problem)?;
            let gk = match &f.coordinator {
                Some(gk) => gk.clone(),
                None => build_coordinator(&f.g1, &f.g2, &f.sigma_k)?,
            };
            emit(&print_generator(&gk, &f.events), None, out)?;
            Ok(0)
        }
        Command::Supcc(a) => {
            let p = load_problem(&a.problem.problem)?.into_problem()?;
            let r = synth_supcc(&p)?;
            emit(
                &synthesis_report(&r, p.events(), a.format.into()),
                a.report.as_deref(),
                out,
            )?;
            Ok(exit_code(r.route().is_some()))
        }
        Command::Supccn(a) => {
            let mut f = load_problem(&a.report.problem.problem)?;
            if let Some(mode) = a.observation {
                f.observation = match mode {
                    ObservationArg::Full => ObservationMode::Full,
                    ObservationArg::Flags => ObservationMode::Flags,
                };
            }
            let observable = f.observable();
            let p = f.into_problem()?;
            let r = synth_supccn(&p, &observable)?;
            let rep = &a.report;
            emit(
                &synthesis_report(&r, p.events(), rep.format.into()),
                rep.report.as_deref(),
                out,
            )?;
            Ok(exit_code(r.route().is_some()))
        }
        Command::CheckConditions(a) => {
            let f = load_problem(&a.problem.problem)?;
            let observable = f.observable();
            let p = f.into_problem()?;
            let verdicts = conditions(&p, &observable)?;
            emit(
                &verdicts_report(&verdicts, p.events(), a.format.into()),
                a.report.as_deref(),
                out,
            )?;
            Ok(exit_code(verdicts.iter().all(NamedVerdict::holds)))
        }
        Command::Verify(a) => verify_cmd(a, out),
        Command::Lang(cmd) => lang_cmd(cmd, out),
    }
}

fn names(t: &EventTable, set: &crate::events::EventSet) -> String {
    set.iter().map(|e| t.name(e)).collect::<Vec<_>>().join(",")
}

fn check_cd_cmd(f: &ProblemFiles, out: &mut dyn Write) -> Result<i32> {
    let (s1, s2) = (f.g1.alphabet(), f.g2.alphabet());
    let mut ok = true;
    let mut text = String::new();
    for (what, k) in [("K", f.spec.clone()), ("closure(K)", f.spec.prefix_closure())] {
        match check_cd(&k, s1, s2, &f.sigma_k)?.counterexample {
            None => text.push_str(&format!("{what}: conditionally decomposable\n")),
            Some(w) => {
                ok = false;
                text.push_str(&format!(
                    "{what}: not conditionally decomposable, missing word {}\n",
                    f.events.format_word(&w)
                ));
            }
        }
    }
    emit(&text, None, out)?;
    Ok(exit_code(ok))
}

fn level_verdict(name: &'static str, v: Verdict<LevelWitness>) -> NamedVerdict {
    match v {
        Verdict::Holds => NamedVerdict {
            name,
            level: None,
            witness: None,
        },
        Verdict::Fails(LevelWitness { level, witness }) => NamedVerdict {
            name,
            level: Some(level),
            witness: Some(witness),
        },
    }
}

fn conditions(p: &CoordinationProblem, observable: &crate::events::EventSet) -> Result<Vec<NamedVerdict>> {
    let unc = p.uncontrollable();
    let sigma_k = p.sigma_k();
    let mut out = Vec::new();
    let subsystem_checks = std::thread::scope(|s| {
        let handles: Vec<_> = [Level::OneK, Level::TwoK]
            .into_iter()
            .map(|level| {
                let unc = &unc;
                s.spawn(move || -> Result<Vec<NamedVerdict>> {
                    let alphabet = p.level_alphabet(level);
                    let lifted = lift(&p.subsystem(level).generated(), &alphabet)?;
                    let spec = ProjectionSpec::new(alphabet.clone(), sigma_k.clone())?;
                    let level_unc = unc.intersection(&alphabet);
                    let wrap = |name, v: Verdict<_>| NamedVerdict {
                        name,
                        level: Some(level),
                        witness: v.witness().cloned().map(Witness::Condition),
                    };
                    Ok(vec![
                        wrap("observer", is_observer(&spec, &lifted)?),
                        wrap("occ", is_occ(&spec, &lifted, &level_unc)?),
                        wrap("lcc", is_lcc(&spec, &lifted, &level_unc)?),
                    ])
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("condition check panicked"))
            .collect::<Vec<_>>()
    });
    for part in subsystem_checks {
        out.extend(part?);
    }

    let projected = sync_product(
        &project_to(&p.g1().generated(), &p.g1().alphabet().intersection(sigma_k))?,
        &project_to(&p.g2().generated(), &p.g2().alphabet().intersection(sigma_k))?,
    );
    out.push(NamedVerdict {
        name: "coordinator_inclusion",
        level: None,
        witness: inclusion_counterexample(&p.gk().generated(), &projected, LangKind::Marked)?.map(Witness::Word),
    });
    let k1 = p.project(p.spec(), Level::OneK)?;
    let k2 = p.project(p.spec(), Level::TwoK)?;
    out.push(NamedVerdict {
        name: "nonconflicting",
        level: None,
        witness: nonconflicting(&k1, &k2).witness().cloned().map(Witness::Word),
    });
    out.push(level_verdict("cond_controllable", is_cond_controllable(p, p.spec())?));
    out.push(level_verdict("cond_closed", is_cond_closed(p, p.spec())?));
    out.push(level_verdict(
        "cond_observable",
        is_cond_observable(p, p.spec(), &p.controllable(), observable)?,
    ));
    out.push(level_verdict("cond_normal", is_cond_normal(p, p.spec(), observable)?));
    Ok(out)
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let mut f = load_problem(&a.report.problem.problem)?;
    let load = |path: &Option<PathBuf>, events: &mut EventTable| -> Result<Option<Generator>> {
        path.as_deref().map(|p| load_generator(p, events)).transpose()
    };
    let mut events = f.events.clone();
    let s1 = load(&a.s1, &mut events)?;
    let s2 = load(&a.s2, &mut events)?;
    let sk = load(&a.sk, &mut events)?;
    let target = load(&a.target, &mut events)?;
    f.events = events;
    let p = f.into_problem()?;
    let synthesized = if [&s1, &s2, &sk, &target].iter().any(|g| g.is_none()) {
        Some(synth_supcc(&p)?)
    } else {
        None
    };
    let pick = |given: Option<Generator>, default: fn(&crate::coordination::SynthesisReport) -> Generator| {
        given.unwrap_or_else(|| default(synthesized.as_ref().expect("synthesized when a default is needed")))
    };
    let s1 = pick(s1, |r| r.sup_1k.clone());
    let s2 = pick(s2, |r| r.sup_2k.clone());
    let sk = pick(sk, |r| r.sup_k.clone());
    let target = pick(target, |r| match &r.outcome {
        Outcome::Justified { language, .. } => language.clone(),
        Outcome::Withheld { candidate } => candidate.clone(),
    });
    let report = verify_closed_loop(&p, &s1, &s2, &sk, &target)?;
    emit(
        &closed_loop_report(&report, p.events(), a.report.format.into()),
        a.report.report.as_deref(),
        out,
    )?;
    Ok(exit_code(report.holds()))
}

fn lang_cmd(cmd: LangCommand, out: &mut dyn Write) -> Result<i32> {
    let mut events = EventTable::new();
    match cmd {
        LangCommand::Enumerate { file, max_len } => {
            let g = load_generator(&file, &mut events)?;
            let mut text = String::new();
            for w in g.enumerate_words(max_len) {
                text.push_str(&events.format_word(&w));
                text.push('\n');
            }
            emit(&text, None, out)?;
            Ok(0)
        }
        LangCommand::Equal(pair) => {
            let (a, b, kind) = load_pair(&pair, &mut events)?;
            let w = match inclusion_counterexample(&a, &b, kind)? {
                Some(w) => Some(w),
                None => inclusion_counterexample(&b, &a, kind)?,
            };
            report_comparison("equal", w, &events, out)
        }
        LangCommand::Includes(pair) => {
            let (sup, sub, kind) = load_pair(&pair, &mut events)?;
            let w = inclusion_counterexample(&sub, &sup, kind)?;
            report_comparison("included", w, &events, out)
        }
    }
}

fn load_pair(pair: &PairArgs, events: &mut EventTable) -> Result<(Generator, Generator, LangKind)> {
    let a = load_generator(&pair.first, events)?;
    let b = load_generator(&pair.second, events)?;
    let kind = if pair.generated {
        LangKind::Generated
    } else {
        LangKind::Marked
    };
    Ok((a, b, kind))
}

fn report_comparison(what: &str, w: Option<crate::events::Word>, t: &EventTable, out: &mut dyn Write) -> Result<i32> {
    let text = match &w {
        None => format!("{what}: yes\n"),
        Some(w) => format!("{what}: no, witness {}\n", t.format_word(w)),
    };
    emit(&text, None, out)?;
    Ok(exit_code(w.is_none()))
}
