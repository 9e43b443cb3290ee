//! Natural projection, inverse projection and conditional decomposability.

use crate::automaton::{inclusion_counterexample, sync_product, Generator, LangKind, NondetAutomaton};
use crate::error::{Error, Result};
use crate::events::{EventSet, Word};

/// A natural projection `P: source* → target*` erasing `source \ target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionSpec {
    source: EventSet,
    target: EventSet,
}

impl ProjectionSpec {
    pub fn new(source: EventSet, target: EventSet) -> Result<Self> {
        if !target.is_subset(&source) {
            return Err(Error::NotSubset(format!(
                "projection target {target:?} is not contained in source {source:?}"
            )));
        }
        Ok(ProjectionSpec { source, target })
    }

    pub fn identity(alphabet: EventSet) -> Self {
        ProjectionSpec {
            source: alphabet.clone(),
            target: alphabet,
        }
    }

    pub fn source(&self) -> &EventSet {
        &self.source
    }

    pub fn target(&self) -> &EventSet {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// Projection of a single word.
    pub fn apply(&self, word: &[crate::events::EventId]) -> Word {
        word.iter().copied().filter(|&e| self.target.contains(e)).collect()
    }
}

/// `P(G)`: erases the events outside `spec.target` and determinizes, so that
/// `L(P(G)) = P(L(G))` and `L_m(P(G)) = P(L_m(G))`.
pub fn project(g: &Generator, spec: &ProjectionSpec) -> Result<Generator> {
    if g.alphabet() != spec.source() {
        return Err(Error::AlphabetMismatch {
            left: g.alphabet().clone(),
            right: spec.source().clone(),
        });
    }
    if spec.is_identity() {
        return Ok(g.accessible());
    }
    Ok(NondetAutomaton::hiding(g, spec.target()).determinize())
}

/// Projection of `g` onto `target`, with the source taken to be `g`'s alphabet.
pub fn project_to(g: &Generator, target: &EventSet) -> Result<Generator> {
    project(g, &ProjectionSpec::new(g.alphabet().clone(), target.clone())?)
}

/// Inverse projection `P⁻¹` from `alphabet(g)` to `bigger`: every new event
/// becomes a self-loop at every state.
pub fn lift(g: &Generator, bigger: &EventSet) -> Result<Generator> {
    let mut out = g.with_alphabet(bigger.clone())?;
    let fresh = bigger.difference(g.alphabet());
    for s in 0..out.num_states() {
        for e in fresh.iter() {
            out.add_transition(s, e, s)?;
        }
    }
    Ok(out)
}

/// Outcome of a conditional-decomposability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdVerdict {
    /// Word of `P_{1+k}(K) ∥ P_{2+k}(K)` missing from `K`, if any.
    pub counterexample: Option<Word>,
}

impl CdVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn validate_cd_alphabets(k: &Generator, s1: &EventSet, s2: &EventSet, sk: &EventSet) -> Result<()> {
    let whole = s1.union(s2);
    if k.alphabet() != &whole {
        return Err(Error::AlphabetMismatch {
            left: k.alphabet().clone(),
            right: whole,
        });
    }
    if !s1.intersection(s2).is_subset(sk) {
        return Err(Error::NotSubset("shared events Σ1∩Σ2 must belong to Σk".into()));
    }
    if !sk.is_subset(&whole) {
        return Err(Error::NotSubset("Σk must be contained in Σ1∪Σ2".into()));
    }
    Ok(())
}

/// Decides `L_m(K) = P_{1+k}(K) ∥ P_{2+k}(K)`. Only `⊇` can fail; on failure
/// the shortest word of the product outside `K` is returned.
pub fn check_cd(k: &Generator, s1: &EventSet, s2: &EventSet, sk: &EventSet) -> Result<CdVerdict> {
    validate_cd_alphabets(k, s1, s2, sk)?;
    let p1 = project_to(k, &s1.union(sk))?;
    let p2 = project_to(k, &s2.union(sk))?;
    let composed = sync_product(&p1, &p2);
    let counterexample = inclusion_counterexample(&composed, k, LangKind::Marked)?;
    Ok(CdVerdict { counterexample })
}

/// Greedily extends `sk0` until both `K` and its prefix closure are
/// conditionally decomposable. Candidates from `(Σ1∪Σ2) \ sk0` are added one at
/// a time in event order and the check is rerun after each addition. The
/// result is not minimal in general; the worst case is `Σ1∪Σ2`.
pub fn extend_sigma_k(k: &Generator, s1: &EventSet, s2: &EventSet, sk0: &EventSet) -> Result<EventSet> {
    validate_cd_alphabets(k, s1, s2, sk0)?;
    let closure = k.prefix_closure();
    let decomposes = |sk: &EventSet| -> Result<bool> {
        Ok(check_cd(k, s1, s2, sk)?.holds() && check_cd(&closure, s1, s2, sk)?.holds())
    };
    let mut sk = sk0.clone();
    if decomposes(&sk)? {
        return Ok(sk);
    }
    for e in s1.union(s2).difference(sk0).iter() {
        sk.insert(e);
        if decomposes(&sk)? {
            break;
        }
    }
    Ok(sk)
}
