//! Coordination control of two subsystems `G1`, `G2` with a coordinator `Gk`.
//!
//! Languages live at three levels: `k` over `Σk`, and `i+k` over `Σi ∪ Σk`
//! for `i = 1, 2`.

mod synthesize;
mod verify;

use std::fmt;

use crate::automaton::{inclusion_counterexample, sync_product, Generator, LangKind};
use crate::error::{Error, Result};
use crate::events::{EventSet, EventTable, Word};
use crate::language::{check_cd, project_to};
use crate::structural::ConditionWitness;
use crate::synthesis::{
    is_controllable, is_lm_closed, is_normal, is_observable, ControlContext, ControllabilityWitness,
    ObservabilityWitness, Verdict,
};

pub use synthesize::{synth_supcc, synth_supccn, Mode, NamedVerdict, Outcome, Route, SynthesisReport};
pub use verify::{verify_closed_loop, ClosedLoopReport};

/// One of the three levels of a coordination problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    K,
    OneK,
    TwoK,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::K => "k",
            Level::OneK => "1+k",
            Level::TwoK => "2+k",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Witness attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Word(Word),
    Controllability(ControllabilityWitness),
    Observability(ObservabilityWitness),
    Condition(ConditionWitness),
}

/// Failing level of a three-level check, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelWitness {
    pub level: Level,
    pub witness: Witness,
}

/// `Gk = P_k(G1) ∥ P_k(G2)`, each subsystem projected onto its own share
/// `Σi ∩ Σk` of the coordinator alphabet.
pub fn build_coordinator(g1: &Generator, g2: &Generator, sigma_k: &EventSet) -> Result<Generator> {
    let (s1, s2) = (g1.alphabet(), g2.alphabet());
    check_sigma_k(s1, s2, sigma_k)?;
    let p1 = project_to(g1, &s1.intersection(sigma_k))?;
    let p2 = project_to(g2, &s2.intersection(sigma_k))?;
    Ok(sync_product(&p1, &p2))
}

fn check_sigma_k(s1: &EventSet, s2: &EventSet, sigma_k: &EventSet) -> Result<()> {
    if !s1.intersection(s2).is_subset(sigma_k) {
        return Err(Error::NotSubset("shared events Σ1∩Σ2 must belong to Σk".into()));
    }
    if !sigma_k.is_subset(&s1.union(s2)) {
        return Err(Error::NotSubset("Σk must be contained in Σ1∪Σ2".into()));
    }
    Ok(())
}

/// Validated coordination problem: subsystems, coordinator alphabet,
/// specification `K` over `Σ1 ∪ Σ2` and coordinator `Gk` over `Σk`.
#[derive(Debug, Clone)]
pub struct CoordinationProblem {
    events: EventTable,
    g1: Generator,
    g2: Generator,
    sigma_k: EventSet,
    spec: Generator,
    gk: Generator,
}

impl CoordinationProblem {
    /// Checks `Σ1∩Σ2 ⊆ Σk ⊆ Σ1∪Σ2`, `K ⊆ L_m(G1 ∥ G2 ∥ Gk)` and conditional
    /// decomposability of `K` and `K̄`. Without `gk` the default coordinator
    /// is built.
    pub fn new(
        events: EventTable,
        g1: Generator,
        g2: Generator,
        sigma_k: EventSet,
        spec: Generator,
        gk: Option<Generator>,
    ) -> Result<Self> {
        let (s1, s2) = (g1.alphabet().clone(), g2.alphabet().clone());
        check_sigma_k(&s1, &s2, &sigma_k)?;
        let whole = s1.union(&s2);
        if spec.alphabet() != &whole {
            return Err(Error::AlphabetMismatch {
                left: spec.alphabet().clone(),
                right: whole,
            });
        }
        let gk = match gk {
            Some(gk) => gk,
            None => build_coordinator(&g1, &g2, &sigma_k)?,
        };
        if gk.alphabet() != &sigma_k {
            return Err(Error::AlphabetMismatch {
                left: gk.alphabet().clone(),
                right: sigma_k,
            });
        }
        let p = CoordinationProblem {
            events,
            g1,
            g2,
            sigma_k,
            spec,
            gk,
        };
        let plant = sync_product(&sync_product(&p.g1, &p.g2), &p.gk);
        if let Some(w) = inclusion_counterexample(&p.spec, &plant, LangKind::Marked)? {
            return Err(Error::InvalidProblem(format!(
                "specification word `{}` is not marked by G1 ∥ G2 ∥ Gk",
                p.events.format_word(&w)
            )));
        }
        for (what, k) in [
            ("K", p.spec.clone()),
            ("the prefix closure of K", p.spec.prefix_closure()),
        ] {
            if let Some(w) = check_cd(&k, &s1, &s2, &p.sigma_k)?.counterexample {
                return Err(Error::InvalidProblem(format!(
                    "{what} is not conditionally decomposable: `{}` is missing",
                    p.events.format_word(&w)
                )));
            }
        }
        Ok(p)
    }

    pub fn events(&self) -> &EventTable {
        &self.events
    }

    pub fn g1(&self) -> &Generator {
        &self.g1
    }

    pub fn g2(&self) -> &Generator {
        &self.g2
    }

    pub fn gk(&self) -> &Generator {
        &self.gk
    }

    pub fn spec(&self) -> &Generator {
        &self.spec
    }

    pub fn sigma_k(&self) -> &EventSet {
        &self.sigma_k
    }

    /// `Σ1 ∪ Σ2`.
    pub fn alphabet(&self) -> &EventSet {
        self.spec.alphabet()
    }

    /// Alphabet of a level: `Σk`, `Σ1 ∪ Σk` or `Σ2 ∪ Σk`.
    pub fn level_alphabet(&self, level: Level) -> EventSet {
        match level {
            Level::K => self.sigma_k.clone(),
            Level::OneK => self.g1.alphabet().union(&self.sigma_k),
            Level::TwoK => self.g2.alphabet().union(&self.sigma_k),
        }
    }

    /// Subsystem generator of level `1+k` or `2+k`.
    pub fn subsystem(&self, level: Level) -> &Generator {
        match level {
            Level::K => &self.gk,
            Level::OneK => &self.g1,
            Level::TwoK => &self.g2,
        }
    }

    /// Natural projection of a language over `Σ1 ∪ Σ2` onto a level.
    pub fn project(&self, lang: &Generator, level: Level) -> Result<Generator> {
        project_to(lang, &self.level_alphabet(level))
    }

    pub fn uncontrollable(&self) -> EventSet {
        self.events.uncontrollable().intersection(self.alphabet())
    }

    pub fn controllable(&self) -> EventSet {
        self.events.controllable().intersection(self.alphabet())
    }

    /// Events flagged observable in the event table.
    pub fn observable(&self) -> EventSet {
        self.events.observable().intersection(self.alphabet())
    }

    /// Plant used at a level when checking `lang`: `L(Gk)` at level `k`,
    /// `L(Gi) ∥ closure(P_k(lang))` at level `i+k`.
    fn level_plant(&self, level: Level, pk: &Generator) -> Generator {
        match level {
            Level::K => self.gk.generated(),
            _ => sync_product(&self.subsystem(level).generated(), &pk.prefix_closure()),
        }
    }

    fn check_language(&self, lang: &Generator) -> Result<()> {
        if lang.alphabet() != self.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: lang.alphabet().clone(),
                right: self.alphabet().clone(),
            });
        }
        Ok(())
    }

    /// Runs `check` at levels `k`, `1+k`, `2+k` in that order and returns the
    /// first failure.
    fn three_levels(
        &self,
        lang: &Generator,
        mut check: impl FnMut(Level, &Generator, Generator) -> Result<Option<Witness>>,
    ) -> Result<Verdict<LevelWitness>> {
        self.check_language(lang)?;
        let pk = self.project(lang, Level::K)?;
        for level in [Level::K, Level::OneK, Level::TwoK] {
            let projected = if level == Level::K {
                pk.clone()
            } else {
                self.project(lang, level)?
            };
            let plant = self.level_plant(level, &pk);
            if let Some(witness) = check(level, &projected, plant)? {
                return Ok(Verdict::Fails(LevelWitness { level, witness }));
            }
        }
        Ok(Verdict::Holds)
    }
}

/// Conditional controllability of `lang` with respect to `G1`, `G2`, `Gk`
/// and the uncontrollable events of each level.
pub fn is_cond_controllable(p: &CoordinationProblem, lang: &Generator) -> Result<Verdict<LevelWitness>> {
    let unc = p.uncontrollable();
    p.three_levels(lang, |_, projected, plant| {
        let ctx = ControlContext::fully_observed(plant, &unc);
        Ok(is_controllable(projected, &ctx)?
            .witness()
            .cloned()
            .map(Witness::Controllability))
    })
}

/// Conditional closedness: `P_k(lang)` is `L_m(Gk)`-closed and `P_{i+k}(lang)`
/// is `L_m(Gi) ∥ P_k(lang)`-closed.
pub fn is_cond_closed(p: &CoordinationProblem, lang: &Generator) -> Result<Verdict<LevelWitness>> {
    p.check_language(lang)?;
    let pk = p.project(lang, Level::K)?;
    for level in [Level::K, Level::OneK, Level::TwoK] {
        let (projected, plant) = match level {
            Level::K => (pk.clone(), p.gk.clone()),
            _ => (p.project(lang, level)?, sync_product(p.subsystem(level), &pk)),
        };
        if let Verdict::Fails(w) = is_lm_closed(&projected, &plant)? {
            return Ok(Verdict::Fails(LevelWitness {
                level,
                witness: Witness::Word(w),
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// Conditional observability with respect to the controllable events
/// `controllable` and the observation `Q_i` onto `observable` at each level.
pub fn is_cond_observable(
    p: &CoordinationProblem,
    lang: &Generator,
    controllable: &EventSet,
    observable: &EventSet,
) -> Result<Verdict<LevelWitness>> {
    let unc = p.uncontrollable();
    p.three_levels(lang, |level, projected, plant| {
        let ctx = ControlContext::new(plant, &unc, observable);
        let sigma_c = controllable.intersection(&p.level_alphabet(level));
        Ok(is_observable(projected, &ctx, &sigma_c)?
            .witness()
            .cloned()
            .map(Witness::Observability))
    })
}

/// Conditional normality with respect to the observation onto `observable`.
pub fn is_cond_normal(
    p: &CoordinationProblem,
    lang: &Generator,
    observable: &EventSet,
) -> Result<Verdict<LevelWitness>> {
    let unc = p.uncontrollable();
    p.three_levels(lang, |_, projected, plant| {
        let ctx = ControlContext::new(plant, &unc, observable);
        Ok(is_normal(projected, &ctx)?.witness().cloned().map(Witness::Word))
    })
}

#[cfg(test)]
mod tests;
