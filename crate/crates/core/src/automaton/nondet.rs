use std::collections::{BTreeSet, HashMap, VecDeque};

use super::generator::{Generator, StateId};
use crate::events::{EventId, EventSet};

/// Nondeterministic automaton with silent moves, used as the intermediate
/// form of projection before determinization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetAutomaton {
    alphabet: EventSet,
    marked: Vec<bool>,
    /// `None` labels a silent move.
    delta: Vec<Vec<(Option<EventId>, StateId)>>,
    initial: Vec<StateId>,
}

impl NondetAutomaton {
    pub fn new(alphabet: EventSet) -> Self {
        NondetAutomaton {
            alphabet,
            marked: Vec::new(),
            delta: Vec::new(),
            initial: Vec::new(),
        }
    }

    /// Copy of `g` where every event outside `keep` becomes silent.
    pub fn hiding(g: &Generator, keep: &EventSet) -> Self {
        let mut n = NondetAutomaton::new(g.alphabet().intersection(keep));
        for s in 0..g.num_states() {
            n.add_state(g.is_marked(s));
        }
        for (s, e, d) in g.transitions() {
            let label = keep.contains(e).then_some(e);
            n.add_transition(s, label, d);
        }
        if let Some(q0) = g.initial() {
            n.add_initial(q0);
        }
        n
    }

    pub fn alphabet(&self) -> &EventSet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.marked.len()
    }

    pub fn add_state(&mut self, marked: bool) -> StateId {
        self.marked.push(marked);
        self.delta.push(Vec::new());
        self.marked.len() - 1
    }

    pub fn add_initial(&mut self, s: StateId) {
        if !self.initial.contains(&s) {
            self.initial.push(s);
        }
    }

    /// Adds a transition; `label` must be `None` (silent) or an alphabet event.
    pub fn add_transition(&mut self, src: StateId, label: Option<EventId>, dst: StateId) {
        if let Some(e) = label {
            assert!(self.alphabet.contains(e), "event outside the alphabet");
        }
        if !self.delta[src].contains(&(label, dst)) {
            self.delta[src].push((label, dst));
        }
    }

    fn silent_closure(&self, seed: impl IntoIterator<Item = StateId>) -> BTreeSet<StateId> {
        let mut set: BTreeSet<StateId> = seed.into_iter().collect();
        let mut stack: Vec<StateId> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(l, d) in &self.delta[q] {
                if l.is_none() && set.insert(d) {
                    stack.push(d);
                }
            }
        }
        set
    }

    /// Subset construction. Also returns, for every state of the result, the
    /// set of original states it stands for.
    pub fn determinize_with_subsets(&self) -> (Generator, Vec<Vec<StateId>>) {
        let mut g = Generator::empty(self.alphabet.clone());
        let mut subsets: Vec<Vec<StateId>> = Vec::new();
        if self.initial.is_empty() {
            return (g, subsets);
        }
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let start: Vec<StateId> = self.silent_closure(self.initial.iter().copied()).into_iter().collect();
        let mut intern =
            |set: Vec<StateId>, g: &mut Generator, subsets: &mut Vec<Vec<StateId>>, queue: &mut VecDeque<StateId>| {
                if let Some(&id) = index.get(&set) {
                    return id;
                }
                let marked = set.iter().any(|&q| self.marked[q]);
                let label = format!(
                    "{{{}}}",
                    set.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
                );
                let id = g.add_labeled_state(marked, label);
                index.insert(set.clone(), id);
                subsets.push(set);
                queue.push_back(id);
                id
            };
        let mut queue = VecDeque::new();
        let q0 = intern(start, &mut g, &mut subsets, &mut queue);
        g.set_initial(q0);
        while let Some(id) = queue.pop_front() {
            let current = subsets[id].clone();
            for e in self.alphabet.iter() {
                let targets: Vec<StateId> = current
                    .iter()
                    .flat_map(|&q| self.delta[q].iter())
                    .filter(|(l, _)| *l == Some(e))
                    .map(|&(_, d)| d)
                    .collect();
                if targets.is_empty() {
                    continue;
                }
                let next: Vec<StateId> = self.silent_closure(targets).into_iter().collect();
                let nid = intern(next, &mut g, &mut subsets, &mut queue);
                g.add_transition(id, e, nid)
                    .expect("subset construction is deterministic");
            }
        }
        (g, subsets)
    }

    /// Language-equivalent deterministic generator. A subset state is marked
    /// iff it contains a marked state.
    pub fn determinize(&self) -> Generator {
        self.determinize_with_subsets().0
    }
}
