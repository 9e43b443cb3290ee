//! Human-readable and JSON renderings of reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::automaton::Generator;
use crate::coordination::{ClosedLoopReport, Mode, NamedVerdict, Outcome, SynthesisReport, Witness};
use crate::events::{EventTable, Word};

/// Longest marked word listed in samples.
pub const SAMPLE_LENGTH: usize = 8;
/// Most words listed per language.
pub const SAMPLE_COUNT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Human,
    Json,
}

#[derive(Serialize)]
pub struct GeneratorJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: Option<usize>,
    pub marked: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
    pub sample_words: Vec<Vec<String>>,
}

impl GeneratorJson {
    pub fn new(g: &Generator, t: &EventTable) -> Self {
        let mut alphabet: Vec<String> = g.alphabet().iter().map(|e| t.name(e).to_string()).collect();
        alphabet.sort();
        GeneratorJson {
            alphabet,
            states: g.num_states(),
            initial: g.initial(),
            marked: g.marked_states().collect(),
            transitions: g.transitions().map(|(s, e, d)| (s, t.name(e).to_string(), d)).collect(),
            sample_words: sample(g).iter().map(|w| t.word_names(w)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub name: &'static str,
    pub level: Option<&'static str>,
    pub holds: bool,
    pub witness: Option<Value>,
}

impl VerdictJson {
    pub fn new(v: &NamedVerdict, t: &EventTable) -> Self {
        VerdictJson {
            name: v.name,
            level: v.level.map(|l| l.name()),
            holds: v.holds(),
            witness: v.witness.as_ref().map(|w| witness_json(w, t)),
        }
    }
}

#[derive(Serialize)]
struct LanguagesJson {
    sup_k: GeneratorJson,
    sup_1k: GeneratorJson,
    sup_2k: GeneratorJson,
    intersection: GeneratorJson,
}

#[derive(Serialize)]
struct SynthesisJson {
    mode: &'static str,
    languages: LanguagesJson,
    verdicts: Vec<VerdictJson>,
    route: Option<&'static str>,
    result_kind: &'static str,
    result: Option<GeneratorJson>,
    candidate: Option<GeneratorJson>,
}

#[derive(Serialize)]
struct ClosedLoopJson {
    holds: bool,
    closed_loop: GeneratorJson,
    checks: Vec<VerdictJson>,
}

fn sample(g: &Generator) -> Vec<Word> {
    let mut words = g.enumerate_words(SAMPLE_LENGTH);
    words.truncate(SAMPLE_COUNT);
    words
}

pub fn witness_json(w: &Witness, t: &EventTable) -> Value {
    match w {
        Witness::Word(word) => json!({ "word": t.word_names(word) }),
        Witness::Controllability(c) => json!({
            "prefix": t.word_names(&c.prefix),
            "event": t.name(c.event),
        }),
        Witness::Observability(o) => json!({
            "enabled": t.word_names(&o.enabled),
            "disabled": t.word_names(&o.disabled),
            "event": t.name(o.event),
        }),
        Witness::Condition(c) => json!({
            "word": t.word_names(&c.word),
            "continuation": t.word_names(&c.continuation),
            "event": t.name(c.event),
        }),
    }
}

pub fn witness_text(w: &Witness, t: &EventTable) -> String {
    match w {
        Witness::Word(word) => t.format_word(word),
        Witness::Controllability(c) => format!("prefix {} then {}", t.format_word(&c.prefix), t.name(c.event)),
        Witness::Observability(o) => format!(
            "{} then {} enabled, {} then {} disabled",
            t.format_word(&o.enabled),
            t.name(o.event),
            t.format_word(&o.disabled),
            t.name(o.event)
        ),
        Witness::Condition(c) if c.continuation.is_empty() => {
            format!("{} / {}", t.format_word(&c.word), t.name(c.event))
        }
        Witness::Condition(c) => format!(
            "{} / {} {}",
            t.format_word(&c.word),
            t.format_word(&c.continuation),
            t.name(c.event)
        ),
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Controllable => "controllable",
        Mode::ControllableNormal => "controllable_normal",
    }
}

fn language_line(g: &Generator, t: &EventTable) -> String {
    if g.is_empty_language() {
        return "∅".to_string();
    }
    let words = g.enumerate_words(SAMPLE_LENGTH);
    let shown: Vec<String> = words.iter().take(SAMPLE_COUNT).map(|w| t.format_word(w)).collect();
    let more = if words.len() > SAMPLE_COUNT { ", …" } else { "" };
    format!("{{{}{more}}}", shown.join(", "))
}

fn verdict_table(out: &mut String, verdicts: &[NamedVerdict], t: &EventTable) {
    let label = |v: &NamedVerdict| match v.level {
        Some(l) => format!("{} [{l}]", v.name),
        None => v.name.to_string(),
    };
    let width = verdicts.iter().map(|v| label(v).chars().count()).max().unwrap_or(0);
    for v in verdicts {
        let l = label(v);
        let pad = width - l.chars().count();
        let status = if v.holds() { "holds" } else { "fails" };
        let _ = write!(out, "  {l}{}  {status}", " ".repeat(pad));
        if let Some(w) = &v.witness {
            let _ = write!(out, "  witness: {}", witness_text(w, t));
        }
        out.push('\n');
    }
}

pub fn synthesis_report(r: &SynthesisReport, t: &EventTable, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let (result, candidate) = match &r.outcome {
                Outcome::Justified { language, .. } => (Some(GeneratorJson::new(language, t)), None),
                Outcome::Withheld { candidate } => (None, Some(GeneratorJson::new(candidate, t))),
            };
            let doc = SynthesisJson {
                mode: mode_name(r.mode),
                languages: LanguagesJson {
                    sup_k: GeneratorJson::new(&r.sup_k, t),
                    sup_1k: GeneratorJson::new(&r.sup_1k, t),
                    sup_2k: GeneratorJson::new(&r.sup_2k, t),
                    intersection: GeneratorJson::new(&r.intersection, t),
                },
                verdicts: r.verdicts.iter().map(|v| VerdictJson::new(v, t)).collect(),
                route: r.route().map(|x| x.name()),
                result_kind: r.result_kind(),
                result,
                candidate,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "mode: {}", mode_name(r.mode));
            out.push_str("languages (marked words up to length 8):\n");
            for (name, g) in [
                ("sup_k", &r.sup_k),
                ("sup_1+k", &r.sup_1k),
                ("sup_2+k", &r.sup_2k),
                ("intersection", &r.intersection),
            ] {
                let _ = writeln!(out, "  {name:<12}  {}", language_line(g, t));
            }
            out.push_str("conditions:\n");
            verdict_table(&mut out, &r.verdicts, t);
            match &r.outcome {
                Outcome::Justified { route, language } => {
                    let _ = writeln!(out, "result ({route}): {}", language_line(language, t));
                }
                Outcome::Withheld { candidate } => {
                    out.push_str("result: withheld, no sufficient condition holds\n");
                    let _ = writeln!(out, "unjustified candidate: {}", language_line(candidate, t));
                }
            }
            out
        }
    }
}

pub fn verdicts_report(verdicts: &[NamedVerdict], t: &EventTable, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let doc: Vec<VerdictJson> = verdicts.iter().map(|v| VerdictJson::new(v, t)).collect();
            let mut s = serde_json::to_string_pretty(&json!({ "verdicts": doc })).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Human => {
            let mut out = String::new();
            verdict_table(&mut out, verdicts, t);
            out
        }
    }
}

pub fn closed_loop_report(r: &ClosedLoopReport, t: &EventTable, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let doc = ClosedLoopJson {
                holds: r.holds(),
                closed_loop: GeneratorJson::new(&r.closed_loop, t),
                checks: r.checks.iter().map(|v| VerdictJson::new(v, t)).collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "closed loop: {}", language_line(&r.closed_loop, t));
            verdict_table(&mut out, &r.checks, t);
            out
        }
    }
}
