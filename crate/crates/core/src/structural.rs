//! Observer property, output control consistency (OCC) and local control
//! consistency (LCC) of a natural projection.
//!
//! All three checks work on the prefix-closed generated language `L(G)` of
//! the generator they are given.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automaton::{Generator, NondetAutomaton, StateId};
use crate::error::{Error, Result};
use crate::events::{EventId, EventSet, Word};
use crate::language::ProjectionSpec;
use crate::synthesis::Verdict;

/// Violation of a structural condition.
///
/// * observer: `word` is `s`; the observation `P(s)·continuation·event` is in
///   `P(L)` but no extension of `s` realizes it.
/// * OCC: `word` is the offending string `s'σ0σ1…σℓ` and `event` is `σℓ`.
/// * LCC: `word` is `s` and `event` the uncontrollable target event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionWitness {
    pub word: Word,
    pub continuation: Word,
    pub event: EventId,
}

pub type ConditionVerdict = Verdict<ConditionWitness>;

fn check_source(spec: &ProjectionSpec, g: &Generator) -> Result<Generator> {
    if g.alphabet() != spec.source() {
        return Err(Error::AlphabetMismatch {
            left: g.alphabet().clone(),
            right: spec.source().clone(),
        });
    }
    Ok(g.generated())
}

fn reconstruct<K: std::hash::Hash + Eq + Copy>(parent: &HashMap<K, Option<(K, EventId)>>, mut cur: K) -> Word {
    let mut word = Vec::new();
    while let Some((prev, e)) = parent[&cur] {
        word.push(e);
        cur = prev;
    }
    word.reverse();
    word
}

/// Decides whether `P` is an `L(G)`-observer: whenever `P(s)` is a prefix of
/// some `t ∈ P(L)`, `s` can be extended to `su ∈ L` with `P(su) = t`.
///
/// For every reachable pair (state `q` of `G`, observer estimate `X`) the
/// projected future of `X` must be contained in the projected future of `q`.
pub fn is_observer(spec: &ProjectionSpec, g: &Generator) -> Result<ConditionVerdict> {
    let g = check_source(spec, g)?;
    if spec.is_identity() {
        return Ok(Verdict::Holds);
    }
    let target = spec.target();
    let hidden = NondetAutomaton::hiding(&g, target);
    let (observer, subsets) = hidden.determinize_with_subsets();
    let (Some(q0), Some(o0)) = (g.initial(), observer.initial()) else {
        return Ok(Verdict::Holds);
    };

    // Reachable pairs (q, X) of G × observer with unobservable moves lifted.
    type Pair = (StateId, StateId);
    let mut parent: HashMap<Pair, Option<(Pair, EventId)>> = HashMap::new();
    parent.insert((q0, o0), None);
    let mut queue = VecDeque::from([(q0, o0)]);
    let mut order = Vec::new();
    while let Some(pair @ (q, x)) = queue.pop_front() {
        order.push(pair);
        for (e, q2) in g.transitions_from(q) {
            let x2 = if target.contains(e) {
                observer.step(x, e).expect("observer follows every observable move")
            } else {
                x
            };
            parent.entry((q2, x2)).or_insert_with(|| {
                queue.push_back((q2, x2));
                Some((pair, e))
            });
        }
    }

    let closure_of = |seed: &[StateId]| -> BTreeSet<StateId> {
        let mut set: BTreeSet<StateId> = seed.iter().copied().collect();
        let mut stack: Vec<StateId> = seed.to_vec();
        while let Some(q) = stack.pop() {
            for (e, d) in g.transitions_from(q) {
                if !target.contains(e) && set.insert(d) {
                    stack.push(d);
                }
            }
        }
        set
    };
    let observable_step =
        |set: &BTreeSet<StateId>, e: EventId| -> Vec<StateId> { set.iter().filter_map(|&q| g.step(q, e)).collect() };

    for &(q, x) in &order {
        // Walk (observer state, concrete subset from q) in lockstep.
        let start = closure_of(&[q]);
        let mut seen: HashMap<(StateId, BTreeSet<StateId>), ()> = HashMap::new();
        let mut walk: VecDeque<(StateId, BTreeSet<StateId>, Word)> = VecDeque::from([(x, start, Vec::new())]);
        while let Some((ox, concrete, cont)) = walk.pop_front() {
            if seen.insert((ox, concrete.clone()), ()).is_some() {
                continue;
            }
            for (e, ox2) in observer.transitions_from(ox) {
                let next = observable_step(&concrete, e);
                if next.is_empty() {
                    let _ = &subsets;
                    return Ok(Verdict::Fails(ConditionWitness {
                        word: reconstruct(&parent, (q, x)),
                        continuation: cont,
                        event: e,
                    }));
                }
                let mut cont2 = cont.clone();
                cont2.push(e);
                walk.push_back((ox2, closure_of(&next), cont2));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Output control consistency: on every string of `L(G)`, whenever the
/// observable event `σℓ` closing an unobservable segment is uncontrollable,
/// every event of that segment is uncontrollable.
pub fn is_occ(spec: &ProjectionSpec, g: &Generator, uncontrollable: &EventSet) -> Result<ConditionVerdict> {
    let g = check_source(spec, g)?;
    let target = spec.target();
    let Some(q0) = g.initial() else {
        return Ok(Verdict::Holds);
    };
    // (state, controllable event seen since the last observable event)
    type Node = (StateId, bool);
    let mut parent: HashMap<Node, Option<(Node, EventId)>> = HashMap::new();
    let start = (q0, false);
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(node @ (q, tainted)) = queue.pop_front() {
        if tainted {
            if let Some((e, _)) = g
                .transitions_from(q)
                .find(|&(e, _)| target.contains(e) && uncontrollable.contains(e))
            {
                let mut word = reconstruct(&parent, node);
                word.push(e);
                return Ok(Verdict::Fails(ConditionWitness {
                    word,
                    continuation: Vec::new(),
                    event: e,
                }));
            }
        }
        for (e, d) in g.transitions_from(q) {
            let next = if target.contains(e) {
                (d, false)
            } else {
                (d, tainted || !uncontrollable.contains(e))
            };
            parent.entry(next).or_insert_with(|| {
                queue.push_back(next);
                Some((node, e))
            });
        }
    }
    Ok(Verdict::Holds)
}

/// Local control consistency: for every `s ∈ L(G)` and uncontrollable
/// observable `σu`, if `σu` can follow `s` after some unobservable string, it
/// can follow `s` after an unobservable string of uncontrollable events.
pub fn is_lcc(spec: &ProjectionSpec, g: &Generator, uncontrollable: &EventSet) -> Result<ConditionVerdict> {
    let g = check_source(spec, g)?;
    let target = spec.target();
    let n = g.num_states();
    // Events in Σ0 ∩ Σu reachable from each state via unobservable strings,
    // without and with the restriction to uncontrollable events.
    let reach_via = |q: StateId, only_uncontrollable: bool| -> EventSet {
        let mut found = EventSet::new();
        let mut seen = vec![false; n];
        seen[q] = true;
        let mut stack = vec![q];
        while let Some(p) = stack.pop() {
            for (e, d) in g.transitions_from(p) {
                if target.contains(e) {
                    if uncontrollable.contains(e) {
                        found.insert(e);
                    }
                } else if (!only_uncontrollable || uncontrollable.contains(e)) && !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        found
    };
    let bad: Vec<Option<EventId>> = (0..n)
        .map(|q| reach_via(q, false).difference(&reach_via(q, true)).iter().next())
        .collect();
    Ok(match g.shortest_word_to(|q| bad[q].is_some()) {
        None => Verdict::Holds,
        Some(word) => {
            let q = g.run(&word).expect("witness is generated");
            Verdict::Fails(ConditionWitness {
                word,
                continuation: Vec::new(),
                event: bad[q].expect("state is bad"),
            })
        }
    })
}
