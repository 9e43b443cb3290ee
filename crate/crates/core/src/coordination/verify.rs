use super::synthesize::NamedVerdict;
use super::{CoordinationProblem, Level, Witness};
use crate::automaton::{inclusion_counterexample, sync_product, Generator, LangKind};
use crate::error::{Error, Result};
use crate::synthesis::Verdict;

/// Per-check outcome of a closed-loop verification.
#[derive(Debug, Clone)]
pub struct ClosedLoopReport {
    /// `L_m(S1/[G1 ∥ (Sk/Gk)]) ∥ L_m(S2/[G2 ∥ (Sk/Gk)])`.
    pub closed_loop: Generator,
    pub checks: Vec<NamedVerdict>,
}

impl ClosedLoopReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(NamedVerdict::holds)
    }
}

/// Composes the supervisors with their plants and checks that each loop is
/// nonblocking, stays within the projected specification, and that the
/// overall closed loop equals `target`.
///
/// `sk` is over `Σk`, `s1` over `Σ1 ∪ Σk`, `s2` over `Σ2 ∪ Σk` and `target`
/// over `Σ1 ∪ Σ2`.
pub fn verify_closed_loop(
    p: &CoordinationProblem,
    s1: &Generator,
    s2: &Generator,
    sk: &Generator,
    target: &Generator,
) -> Result<ClosedLoopReport> {
    for (g, level) in [(sk, Level::K), (s1, Level::OneK), (s2, Level::TwoK)] {
        let expected = p.level_alphabet(level);
        if g.alphabet() != &expected {
            return Err(Error::AlphabetMismatch {
                left: g.alphabet().clone(),
                right: expected,
            });
        }
    }
    p.check_language(target)?;

    let loop_k = sync_product(sk, p.gk());
    let loop_1 = sync_product(&sync_product(s1, p.g1()), &loop_k);
    let loop_2 = sync_product(&sync_product(s2, p.g2()), &loop_k);
    let mut checks = Vec::new();
    for (level, closed) in [(Level::K, &loop_k), (Level::OneK, &loop_1), (Level::TwoK, &loop_2)] {
        let allowed = p.project(p.spec(), level)?;
        checks.push(NamedVerdict::new(
            "within_projected_spec",
            Some(level),
            Verdict::from_option(inclusion_counterexample(closed, &allowed, LangKind::Marked)?),
            Witness::Word,
        ));
        checks.push(NamedVerdict::new(
            "nonblocking",
            Some(level),
            Verdict::from_option(closed.blocking_word()),
            Witness::Word,
        ));
    }
    let closed_loop = sync_product(&loop_1, &loop_2);
    let missing = inclusion_counterexample(target, &closed_loop, LangKind::Marked)?;
    let extra = match missing {
        Some(_) => missing,
        None => inclusion_counterexample(&closed_loop, target, LangKind::Marked)?,
    };
    checks.push(NamedVerdict::new(
        "equals_target",
        None,
        Verdict::from_option(extra),
        Witness::Word,
    ));
    Ok(ClosedLoopReport {
        closed_loop: closed_loop.trim(),
        checks,
    })
}
