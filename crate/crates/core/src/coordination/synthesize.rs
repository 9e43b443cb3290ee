use std::fmt;

use super::{CoordinationProblem, Level, Witness};
use crate::automaton::{inclusion_counterexample, sync_product, Generator, LangKind};
use crate::error::Result;
use crate::events::EventSet;
use crate::language::{lift, project_to, ProjectionSpec};
use crate::structural::{is_lcc, is_observer, is_occ};
use crate::synthesis::{is_controllable, is_normal, nonconflicting, sup_c, sup_cn, ControlContext, Verdict};

/// Which supremal sublanguage is being computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Conditionally controllable.
    Controllable,
    /// Conditionally controllable and conditionally normal.
    ControllableNormal,
}

/// Sufficient condition under which the distributed result is the supremal
/// conditional sublanguage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `sup_k ⊆ P_k(sup_{i+k})` for `i = 1, 2`.
    StrongInclusion,
    /// Nonconflicting local results whose projected intersection is
    /// controllable (and normal) with respect to `L(Gk)`.
    Intersection,
    /// Observer and OCC or LCC for both projections `P^{i+k}_k`.
    ObserverConsistency,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::StrongInclusion => "strong_inclusion",
            Route::Intersection => "intersection",
            Route::ObserverConsistency => "observer_consistency",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated condition of a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedVerdict {
    pub name: &'static str,
    pub level: Option<Level>,
    pub witness: Option<Witness>,
}

impl NamedVerdict {
    pub(crate) fn new<W>(
        name: &'static str,
        level: Option<Level>,
        verdict: Verdict<W>,
        wrap: impl FnOnce(W) -> Witness,
    ) -> Self {
        let witness = match verdict {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(wrap(w)),
        };
        NamedVerdict { name, level, witness }
    }

    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Result of a distributed synthesis.
#[derive(Debug, Clone)]
pub enum Outcome {
    /// A sufficient condition held; `language` is the supremal conditional
    /// sublanguage.
    Justified { route: Route, language: Generator },
    /// No sufficient condition held. `candidate` is `sup_{1+k} ∥ sup_{2+k}`,
    /// which need not be supremal nor conditionally controllable.
    Withheld { candidate: Generator },
}

#[derive(Debug, Clone)]
pub struct SynthesisReport {
    pub mode: Mode,
    pub sup_k: Generator,
    pub sup_1k: Generator,
    pub sup_2k: Generator,
    /// `P_k(sup_{1+k}) ∩ P_k(sup_{2+k})`.
    pub intersection: Generator,
    pub verdicts: Vec<NamedVerdict>,
    pub outcome: Outcome,
}

impl SynthesisReport {
    /// First verdict with this name and level.
    pub fn verdict(&self, name: &str, level: Option<Level>) -> Option<&NamedVerdict> {
        self.verdicts.iter().find(|v| v.name == name && v.level == level)
    }

    /// True when every verdict with this name holds.
    pub fn all_hold(&self, name: &str) -> bool {
        self.verdicts.iter().filter(|v| v.name == name).all(NamedVerdict::holds)
    }

    pub fn route(&self) -> Option<Route> {
        match self.outcome {
            Outcome::Justified { route, .. } => Some(route),
            Outcome::Withheld { .. } => None,
        }
    }

    /// The justified result, if any.
    pub fn result(&self) -> Option<&Generator> {
        match &self.outcome {
            Outcome::Justified { language, .. } => Some(language),
            Outcome::Withheld { .. } => None,
        }
    }

    /// `"language"`, `"empty_language"` or `"withheld"`.
    pub fn result_kind(&self) -> &'static str {
        match &self.outcome {
            Outcome::Justified { language, .. } if language.is_empty_language() => "empty_language",
            Outcome::Justified { .. } => "language",
            Outcome::Withheld { .. } => "withheld",
        }
    }
}

/// Supremal conditionally controllable sublanguage computed level by level.
pub fn synth_supcc(p: &CoordinationProblem) -> Result<SynthesisReport> {
    synthesize(p, Mode::Controllable, &p.alphabet().clone())
}

/// Supremal conditionally controllable and conditionally normal sublanguage,
/// with every level observing the events of `observable`.
pub fn synth_supccn(p: &CoordinationProblem, observable: &EventSet) -> Result<SynthesisReport> {
    synthesize(p, Mode::ControllableNormal, observable)
}

fn level_sup(
    p: &CoordinationProblem,
    level: Level,
    plant: Generator,
    mode: Mode,
    observable: &EventSet,
    spec: &Generator,
) -> Result<Generator> {
    let ctx = ControlContext::new(plant, &p.uncontrollable(), observable);
    let target = p.project(spec, level)?;
    match mode {
        Mode::Controllable => sup_c(&target, &ctx),
        Mode::ControllableNormal => sup_cn(&target, &ctx),
    }
}

fn synthesize(p: &CoordinationProblem, mode: Mode, observable: &EventSet) -> Result<SynthesisReport> {
    let unc = p.uncontrollable();
    let spec = p.spec();
    let sup_k = level_sup(p, Level::K, p.gk().generated(), mode, observable, spec)?;
    let closure_k = sup_k.prefix_closure();
    let local = |level: Level| {
        let plant = sync_product(&p.subsystem(level).generated(), &closure_k);
        level_sup(p, level, plant, mode, observable, spec)
    };
    let (sup_1k, sup_2k) = std::thread::scope(|s| {
        let two = s.spawn(|| local(Level::TwoK));
        let one = local(Level::OneK);
        (one, two.join().expect("level synthesis panicked"))
    });
    let (sup_1k, sup_2k) = (sup_1k?, sup_2k?);
    let sigma_k = p.sigma_k();
    let pk1 = project_to(&sup_1k, sigma_k)?;
    let pk2 = project_to(&sup_2k, sigma_k)?;
    let mut verdicts = Vec::new();

    for (level, pk) in [(Level::OneK, &pk1), (Level::TwoK, &pk2)] {
        let within = inclusion_counterexample(pk, &sup_k, LangKind::Marked)?;
        debug_assert!(within.is_none(), "projected local result escapes sup_k");
        verdicts.push(NamedVerdict::new(
            "projection_within_sup_k",
            Some(level),
            Verdict::from_option(within),
            Witness::Word,
        ));
    }
    for (level, pk) in [(Level::OneK, &pk1), (Level::TwoK, &pk2)] {
        let missing = inclusion_counterexample(&sup_k, pk, LangKind::Marked)?;
        verdicts.push(NamedVerdict::new(
            "strong_inclusion",
            Some(level),
            Verdict::from_option(missing),
            Witness::Word,
        ));
    }

    let noncon = nonconflicting(&sup_1k, &sup_2k);
    verdicts.push(NamedVerdict::new("nonconflicting", None, noncon, Witness::Word));

    let intersection = sync_product(&pk1, &pk2).trim();
    let k_ctx = ControlContext::new(p.gk().generated(), &unc, observable);
    verdicts.push(NamedVerdict::new(
        "intersection_controllable",
        Some(Level::K),
        is_controllable(&intersection, &k_ctx)?,
        Witness::Controllability,
    ));
    if mode == Mode::ControllableNormal {
        verdicts.push(NamedVerdict::new(
            "intersection_normal",
            Some(Level::K),
            is_normal(&intersection, &k_ctx)?,
            Witness::Word,
        ));
        let closure = spec.prefix_closure();
        verdicts.push(NamedVerdict::new(
            "spec_prefix_closed",
            None,
            Verdict::from_option(inclusion_counterexample(&closure, spec, LangKind::Marked)?),
            Witness::Word,
        ));
    }

    let projected_plants = sync_product(
        &project_to(&p.g1().generated(), &p.g1().alphabet().intersection(sigma_k))?,
        &project_to(&p.g2().generated(), &p.g2().alphabet().intersection(sigma_k))?,
    );
    verdicts.push(NamedVerdict::new(
        "coordinator_inclusion",
        None,
        Verdict::from_option(inclusion_counterexample(
            &p.gk().generated(),
            &projected_plants,
            LangKind::Marked,
        )?),
        Witness::Word,
    ));

    for level in [Level::OneK, Level::TwoK] {
        let alphabet = p.level_alphabet(level);
        let lifted = lift(&p.subsystem(level).generated(), &alphabet)?;
        let spec_k = ProjectionSpec::new(alphabet.clone(), sigma_k.clone())?;
        let level_unc = unc.intersection(&alphabet);
        verdicts.push(NamedVerdict::new(
            "observer",
            Some(level),
            is_observer(&spec_k, &lifted)?,
            Witness::Condition,
        ));
        verdicts.push(NamedVerdict::new(
            "occ",
            Some(level),
            is_occ(&spec_k, &lifted, &level_unc)?,
            Witness::Condition,
        ));
        verdicts.push(NamedVerdict::new(
            "lcc",
            Some(level),
            is_lcc(&spec_k, &lifted, &level_unc)?,
            Witness::Condition,
        ));
    }

    let report = SynthesisReport {
        mode,
        sup_k,
        sup_1k,
        sup_2k,
        intersection,
        verdicts,
        outcome: Outcome::Withheld {
            candidate: Generator::empty(p.alphabet().clone()),
        },
    };
    let route = choose_route(&report);
    let language = sync_product(&report.sup_1k, &report.sup_2k).trim();
    let outcome = match route {
        Some(route) => Outcome::Justified { route, language },
        None => Outcome::Withheld { candidate: language },
    };
    Ok(SynthesisReport { outcome, ..report })
}

fn choose_route(r: &SynthesisReport) -> Option<Route> {
    let holds = |name: &str| r.all_hold(name);
    let consistent = [Level::OneK, Level::TwoK].iter().all(|&level| {
        let at = |name: &str| r.verdict(name, Some(level)).is_some_and(NamedVerdict::holds);
        at("observer") && (at("occ") || at("lcc"))
    });
    let normal = r.mode == Mode::ControllableNormal;
    if holds("strong_inclusion") {
        return Some(Route::StrongInclusion);
    }
    if holds("nonconflicting") && holds("intersection_controllable") && (!normal || holds("intersection_normal")) {
        return Some(Route::Intersection);
    }
    let observer_route = if normal {
        holds("spec_prefix_closed") && holds("coordinator_inclusion") && consistent && holds("intersection_normal")
    } else {
        holds("coordinator_inclusion") && holds("nonconflicting") && consistent
    };
    observer_route.then_some(Route::ObserverConsistency)
}
