//! Monolithic supervisory control: controllability, observability,
//! normality, `L_m(G)`-closedness and nonconflict checks, plus the supremal
//! controllable / normal sublanguage fixpoints.
//!
//! Supervisors are represented by trim generators whose synchronous product
//! with the plant is the closed loop.

mod arena;
mod supremal;

use std::collections::{HashMap, VecDeque};

use crate::automaton::{inclusion_counterexample, sync_product, Generator, LangKind, StateId};
use crate::error::{Error, Result};
use crate::events::{EventId, EventSet, Word};
use crate::language::ProjectionSpec;

use arena::Arena;
pub use supremal::{sup_c, sup_cn, sup_n};

/// Result of a decision procedure, carrying a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }

    pub fn from_option(w: Option<W>) -> Self {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// `s ∈ K̄ ∩ L` with `s·event ∈ L \ K̄` for an uncontrollable `event`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllabilityWitness {
    pub prefix: Word,
    pub event: EventId,
}

/// Two observation-equivalent strings that demand different decisions for a
/// controllable `event`: `enabled·event ∈ K̄` while `disabled·event ∈ L \ K̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityWitness {
    pub enabled: Word,
    pub disabled: Word,
    pub event: EventId,
}

/// Plant, uncontrollable events and observation projection of a monolithic
/// control problem.
#[derive(Debug, Clone)]
pub struct ControlContext {
    plant: Generator,
    uncontrollable: EventSet,
    observation: ProjectionSpec,
}

impl ControlContext {
    /// Both event sets are clipped to the plant alphabet.
    pub fn new(plant: Generator, uncontrollable: &EventSet, observable: &EventSet) -> Self {
        let sigma = plant.alphabet().clone();
        let uncontrollable = uncontrollable.intersection(&sigma);
        let observation =
            ProjectionSpec::new(sigma.clone(), observable.intersection(&sigma)).expect("clipped target is a subset");
        ControlContext {
            plant,
            uncontrollable,
            observation,
        }
    }

    /// Context with every event observable.
    pub fn fully_observed(plant: Generator, uncontrollable: &EventSet) -> Self {
        let sigma = plant.alphabet().clone();
        Self::new(plant, uncontrollable, &sigma)
    }

    pub fn plant(&self) -> &Generator {
        &self.plant
    }

    pub fn uncontrollable(&self) -> &EventSet {
        &self.uncontrollable
    }

    pub fn observation(&self) -> &ProjectionSpec {
        &self.observation
    }

    pub(crate) fn check_alphabet(&self, k: &Generator) -> Result<()> {
        if k.alphabet() != self.plant.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: k.alphabet().clone(),
                right: self.plant.alphabet().clone(),
            });
        }
        Ok(())
    }
}

/// `K̄Σu ∩ L ⊆ K̄`. The witness is the shortest offending prefix.
pub fn is_controllable(k: &Generator, ctx: &ControlContext) -> Result<Verdict<ControllabilityWitness>> {
    ctx.check_alphabet(k)?;
    let arena = Arena::pair(k, ctx.plant());
    let escapes = |q: usize| {
        arena.live[q]
            && arena.delta[q]
                .iter()
                .any(|&(e, d)| ctx.uncontrollable().contains(e) && !arena.live[d])
    };
    let found = arena.shortest_word(|q| arena.live[q], escapes).map(|(prefix, q)| {
        let event = arena.delta[q]
            .iter()
            .find(|&&(e, d)| ctx.uncontrollable().contains(e) && !arena.live[d])
            .map(|&(e, _)| e)
            .expect("escape exists");
        ControllabilityWitness { prefix, event }
    });
    Ok(Verdict::from_option(found))
}

/// Observability of `K` with respect to `L(plant)`, `controllable` and the
/// observation projection: for `s ∈ K̄` and controllable `σ` with `sσ ∈ L \ K̄`,
/// no `s'` observationally equal to `s` has `s'σ ∈ K̄`.
///
/// Decided on the verifier that tracks one string in `K̄` and another in
/// `K̄ ∩ L` with equal observations.
pub fn is_observable(
    k: &Generator,
    ctx: &ControlContext,
    controllable: &EventSet,
) -> Result<Verdict<ObservabilityWitness>> {
    ctx.check_alphabet(k)?;
    let closure = k.trim();
    let plant = ctx.plant();
    let (Some(x0), Some(p0)) = (closure.initial(), plant.initial()) else {
        return Ok(Verdict::Holds);
    };
    let observable = ctx.observation().target();

    // (state of s' in K̄, state of s in K̄, state of s in L)
    type Node = (StateId, StateId, StateId);
    // Which component(s) moved: 0 = s' only, 1 = s only, 2 = both.
    let mut parent: HashMap<Node, Option<(Node, EventId, u8)>> = HashMap::new();
    let start = (x0, x0, p0);
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(node @ (x1, x2, p)) = queue.pop_front() {
        let violation = controllable.iter().find(|&sigma| {
            closure.step(x1, sigma).is_some() && closure.step(x2, sigma).is_none() && plant.step(p, sigma).is_some()
        });
        if let Some(event) = violation {
            let (mut enabled, mut disabled) = (Vec::new(), Vec::new());
            let mut cur = node;
            while let Some((prev, e, who)) = parent[&cur] {
                if who != 1 {
                    enabled.push(e);
                }
                if who != 0 {
                    disabled.push(e);
                }
                cur = prev;
            }
            enabled.reverse();
            disabled.reverse();
            return Ok(Verdict::Fails(ObservabilityWitness {
                enabled,
                disabled,
                event,
            }));
        }
        let mut push = |next: Node, e: EventId, who: u8, queue: &mut VecDeque<Node>| {
            parent.entry(next).or_insert_with(|| {
                queue.push_back(next);
                Some((node, e, who))
            });
        };
        for e in plant.alphabet().iter() {
            let n1 = closure.step(x1, e);
            let n2 = closure.step(x2, e).zip(plant.step(p, e));
            if observable.contains(e) {
                if let (Some(n1), Some((n2, np))) = (n1, n2) {
                    push((n1, n2, np), e, 2, &mut queue);
                }
            } else {
                if let Some(n1) = n1 {
                    push((n1, x2, p), e, 0, &mut queue);
                }
                if let Some((n2, np)) = n2 {
                    push((x1, n2, np), e, 1, &mut queue);
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Normality of `K̄` with respect to `L(plant)` and the observation:
/// `K̄ = P⁻¹P(K̄) ∩ L`. The witness is the shortest word of
/// `P⁻¹P(K̄) ∩ L \ K̄`, or of `K̄ \ L` when the closure leaves the plant.
pub fn is_normal(k: &Generator, ctx: &ControlContext) -> Result<Verdict<Word>> {
    ctx.check_alphabet(k)?;
    let closure = k.prefix_closure();
    if let Some(w) = inclusion_counterexample(&closure, &ctx.plant().generated(), LangKind::Marked)? {
        return Ok(Verdict::Fails(w));
    }
    let arena = Arena::pair(k, ctx.plant()).refine_by_observation(ctx.observation().target());
    let mut mixed = vec![false; arena.len()];
    for q in 0..arena.len() {
        if arena.live[q] {
            mixed[arena.class[q]] = true;
        }
    }
    let found = arena
        .shortest_word(|_| true, |q| !arena.live[q] && mixed[arena.class[q]])
        .map(|(w, _)| w);
    Ok(Verdict::from_option(found))
}

/// `K = K̄ ∩ L_m(plant)`. The witness is a word in the symmetric difference.
pub fn is_lm_closed(k: &Generator, plant: &Generator) -> Result<Verdict<Word>> {
    if k.alphabet() != plant.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: k.alphabet().clone(),
            right: plant.alphabet().clone(),
        });
    }
    let closed = sync_product(&k.prefix_closure(), plant);
    if let Some(w) = inclusion_counterexample(&closed, k, LangKind::Marked)? {
        return Ok(Verdict::Fails(w));
    }
    Ok(Verdict::from_option(inclusion_counterexample(
        k,
        &closed,
        LangKind::Marked,
    )?))
}

/// `L1` and `L2` are nonconflicting: the closure of their product equals the
/// product of their closures. The witness is the shortest blocked word.
pub fn nonconflicting(g1: &Generator, g2: &Generator) -> Verdict<Word> {
    let product = sync_product(&g1.trim(), &g2.trim());
    Verdict::from_option(product.blocking_word())
}
