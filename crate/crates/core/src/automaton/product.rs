use std::collections::{HashMap, VecDeque};

use super::generator::{Generator, StateId};
use crate::events::EventSet;

/// Synchronous product: shared events synchronize, private events interleave.
///
/// `L(G1 ∥ G2) = L(G1) ∥ L(G2)` and `L_m(G1 ∥ G2) = L_m(G1) ∥ L_m(G2)`. Over
/// identical alphabets this is the intersection. Only the reachable part is
/// built.
pub fn sync_product(g1: &Generator, g2: &Generator) -> Generator {
    let alphabet = g1.alphabet().union(g2.alphabet());
    let mut out = Generator::empty(alphabet.clone());
    let (Some(i1), Some(i2)) = (g1.initial(), g2.initial()) else {
        return out;
    };
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |pair: (StateId, StateId), out: &mut Generator, queue: &mut VecDeque<(StateId, StateId)>| {
        *index.entry(pair).or_insert_with(|| {
            queue.push_back(pair);
            out.add_labeled_state(
                g1.is_marked(pair.0) && g2.is_marked(pair.1),
                format!("({},{})", label_or_index(g1, pair.0), label_or_index(g2, pair.1)),
            )
        })
    };
    let start = intern((i1, i2), &mut out, &mut queue);
    out.set_initial(start);
    while let Some((q1, q2)) = queue.pop_front() {
        let src = intern((q1, q2), &mut out, &mut queue);
        for e in alphabet.iter() {
            let n1 = if g1.alphabet().contains(e) {
                g1.step(q1, e)
            } else {
                Some(q1)
            };
            let n2 = if g2.alphabet().contains(e) {
                g2.step(q2, e)
            } else {
                Some(q2)
            };
            if let (Some(n1), Some(n2)) = (n1, n2) {
                let dst = intern((n1, n2), &mut out, &mut queue);
                out.add_transition(src, e, dst).expect("product is deterministic");
            }
        }
    }
    out
}

/// Product of any number of generators, left to right.
pub fn sync_product_all<'a>(gens: impl IntoIterator<Item = &'a Generator>) -> Option<Generator> {
    let mut iter = gens.into_iter();
    let first = iter.next()?.clone();
    Some(iter.fold(first, |acc, g| sync_product(&acc, g)))
}

/// Union of the marked languages of two generators over the same alphabet.
/// The generated language of the result is the union of the prefix closures.
pub fn union(g1: &Generator, g2: &Generator) -> Generator {
    let alphabet: EventSet = g1.alphabet().union(g2.alphabet());
    let (a, b) = (g1.trim(), g2.trim());
    let mut out = Generator::empty(alphabet.clone());
    let start = (a.initial(), b.initial());
    if start == (None, None) {
        return out;
    }
    let marked = |p: (Option<StateId>, Option<StateId>)| {
        p.0.is_some_and(|q| a.is_marked(q)) || p.1.is_some_and(|q| b.is_marked(q))
    };
    let mut index = HashMap::new();
    let mut queue = VecDeque::new();
    let s0 = out.add_state(marked(start));
    index.insert(start, s0);
    queue.push_back(start);
    out.set_initial(s0);
    while let Some(pair) = queue.pop_front() {
        let src = index[&pair];
        for e in alphabet.iter() {
            let next = (pair.0.and_then(|q| a.step(q, e)), pair.1.and_then(|q| b.step(q, e)));
            if next == (None, None) {
                continue;
            }
            let dst = *index.entry(next).or_insert_with(|| {
                queue.push_back(next);
                out.add_state(marked(next))
            });
            out.add_transition(src, e, dst).expect("union is deterministic");
        }
    }
    out
}

fn label_or_index(g: &Generator, s: StateId) -> String {
    let l = g.label(s);
    if l.is_empty() {
        s.to_string()
    } else {
        l.to_string()
    }
}
