use std::collections::{HashMap, VecDeque};

use super::generator::{Generator, StateId};
use crate::error::{Error, Result};
use crate::events::{EventId, Word};

/// Which of the two languages of a generator a comparison refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LangKind {
    /// `L_m(G)`
    Marked,
    /// `L(G)`
    Generated,
}

fn same_alphabet(a: &Generator, b: &Generator) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet().clone(),
            right: b.alphabet().clone(),
        });
    }
    Ok(())
}

/// Shortest word in the `kind` language of `sub` that is not in that of
/// `sup`, found by breadth-first search of the pair product. `None` means
/// inclusion holds.
pub fn inclusion_counterexample(sub: &Generator, sup: &Generator, kind: LangKind) -> Result<Option<Word>> {
    same_alphabet(sub, sup)?;
    let Some(s0) = sub.initial() else {
        return Ok(None);
    };
    type Pair = (StateId, Option<StateId>);
    let violates = |(p, q): Pair| match kind {
        LangKind::Generated => q.is_none(),
        LangKind::Marked => sub.is_marked(p) && !q.is_some_and(|q| sup.is_marked(q)),
    };
    let start: Pair = (s0, sup.initial());
    let mut parent: HashMap<Pair, Option<(Pair, EventId)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        if violates(pair) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some((prev, e)) = parent[&cur] {
                word.push(e);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for (e, d) in sub.transitions_from(pair.0) {
            let next = (d, pair.1.and_then(|q| sup.step(q, e)));
            if let std::collections::hash_map::Entry::Vacant(v) = parent.entry(next) {
                v.insert(Some((pair, e)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// `L(g2) ⊆ L(g1)` for the chosen language kind, i.e. `g1` includes `g2`.
pub fn lang_includes(g1: &Generator, g2: &Generator, kind: LangKind) -> Result<bool> {
    Ok(inclusion_counterexample(g2, g1, kind)?.is_none())
}

/// Exact language equality for the chosen kind.
pub fn lang_equal(g1: &Generator, g2: &Generator, kind: LangKind) -> Result<bool> {
    Ok(lang_includes(g1, g2, kind)? && lang_includes(g2, g1, kind)?)
}
