use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::events::{EventId, EventSet, Word};

pub type StateId = usize;

/// Deterministic finite automaton with marked states.
///
/// A generator with zero states (and hence no initial state) represents the
/// empty language; every operation in the crate accepts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    alphabet: EventSet,
    initial: Option<StateId>,
    marked: Vec<bool>,
    delta: Vec<BTreeMap<EventId, StateId>>,
    labels: Vec<String>,
}

impl Generator {
    /// The generator of the empty language over `alphabet`.
    pub fn empty(alphabet: EventSet) -> Self {
        Generator {
            alphabet,
            initial: None,
            marked: Vec::new(),
            delta: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// A single marked state and no transitions: the language `{ε}`.
    pub fn epsilon(alphabet: EventSet) -> Self {
        let mut g = Generator::empty(alphabet);
        let s = g.add_state(true);
        g.set_initial(s);
        g
    }

    /// Recognizer of a finite set of words (a trie). Fails when a word uses
    /// an event outside `alphabet`.
    pub fn from_words<'a, I>(alphabet: EventSet, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut g = Generator::empty(alphabet);
        let root = g.add_state(false);
        g.set_initial(root);
        for w in words {
            let mut q = root;
            for &e in w {
                q = match g.step(q, e) {
                    Some(next) => next,
                    None => {
                        let next = g.add_state(false);
                        g.add_transition(q, e, next)?;
                        next
                    }
                };
            }
            g.marked[q] = true;
        }
        Ok(g.trim())
    }

    /// Recognizer of the prefix-closed language `Σ*` over `alphabet`.
    pub fn universal(alphabet: EventSet) -> Self {
        let mut g = Generator::empty(alphabet.clone());
        let s = g.add_state(true);
        g.set_initial(s);
        for e in alphabet.iter() {
            g.delta[s].insert(e, s);
        }
        g
    }

    pub fn add_state(&mut self, marked: bool) -> StateId {
        self.add_labeled_state(marked, String::new())
    }

    pub fn add_labeled_state(&mut self, marked: bool, label: String) -> StateId {
        self.marked.push(marked);
        self.delta.push(BTreeMap::new());
        self.labels.push(label);
        self.marked.len() - 1
    }

    pub fn set_initial(&mut self, s: StateId) {
        assert!(s < self.num_states(), "initial state out of range");
        self.initial = Some(s);
    }

    pub fn set_marked(&mut self, s: StateId, marked: bool) {
        self.marked[s] = marked;
    }

    /// Adds `src --e--> dst`, rejecting a second successor for `(src, e)`.
    pub fn add_transition(&mut self, src: StateId, e: EventId, dst: StateId) -> Result<()> {
        let n = self.num_states();
        if src >= n {
            return Err(Error::StateOutOfRange(src));
        }
        if dst >= n {
            return Err(Error::StateOutOfRange(dst));
        }
        if !self.alphabet.contains(e) {
            return Err(Error::EventNotInAlphabet(e.to_string()));
        }
        match self.delta[src].get(&e) {
            Some(&d) if d == dst => Ok(()),
            Some(_) => Err(Error::Nondeterministic {
                state: src,
                event: e.to_string(),
            }),
            None => {
                self.delta[src].insert(e, dst);
                Ok(())
            }
        }
    }

    pub fn alphabet(&self) -> &EventSet {
        &self.alphabet
    }

    pub fn initial(&self) -> Option<StateId> {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.marked.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(BTreeMap::len).sum()
    }

    pub fn is_marked(&self, s: StateId) -> bool {
        self.marked[s]
    }

    pub fn marked_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.marked.iter().enumerate().filter(|(_, &m)| m).map(|(s, _)| s)
    }

    pub fn label(&self, s: StateId) -> &str {
        &self.labels[s]
    }

    pub fn set_label(&mut self, s: StateId, label: String) {
        self.labels[s] = label;
    }

    pub fn step(&self, s: StateId, e: EventId) -> Option<StateId> {
        self.delta[s].get(&e).copied()
    }

    /// Outgoing transitions of `s` in event order.
    pub fn transitions_from(&self, s: StateId) -> impl Iterator<Item = (EventId, StateId)> + '_ {
        self.delta[s].iter().map(|(&e, &d)| (e, d))
    }

    /// All transitions `(src, event, dst)` ordered by source then event.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, EventId, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(s, m)| m.iter().map(move |(&e, &d)| (s, e, d)))
    }

    /// State reached by `word` from the initial state.
    pub fn run(&self, word: &[EventId]) -> Option<StateId> {
        let mut q = self.initial?;
        for &e in word {
            q = self.step(q, e)?;
        }
        Some(q)
    }

    /// `word ∈ L_m(G)`.
    pub fn accepts(&self, word: &[EventId]) -> bool {
        self.run(word).is_some_and(|q| self.marked[q])
    }

    /// `word ∈ L(G)`.
    pub fn generates(&self, word: &[EventId]) -> bool {
        self.run(word).is_some()
    }

    pub fn is_empty_language(&self) -> bool {
        !self.trim().initial.is_some()
    }

    /// Same transition structure over a larger alphabet. No self-loops are
    /// added, so the languages are unchanged.
    pub fn with_alphabet(&self, alphabet: EventSet) -> Result<Generator> {
        if !self.alphabet.is_subset(&alphabet) {
            return Err(Error::NotSubset(format!("{:?} ⊄ {:?}", self.alphabet, alphabet)));
        }
        let mut g = self.clone();
        g.alphabet = alphabet;
        Ok(g)
    }

    /// States reachable from the initial state.
    pub fn accessible_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        if let Some(q0) = self.initial {
            let mut queue = VecDeque::from([q0]);
            seen[q0] = true;
            while let Some(q) = queue.pop_front() {
                for (_, d) in self.transitions_from(q) {
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        seen
    }

    /// States from which a marked state can be reached.
    pub fn coaccessible_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, _, d) in self.transitions() {
            rev[d].push(s);
        }
        let mut seen = self.marked.clone();
        let mut stack: Vec<StateId> = self.marked_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Restricts the generator to the states flagged in `keep`, renumbering
    /// them in breadth-first order from the initial state. States not
    /// reachable through kept states are dropped.
    pub fn restrict(&self, keep: &[bool]) -> Generator {
        let mut out = Generator::empty(self.alphabet.clone());
        let q0 = match self.initial {
            Some(q0) if keep[q0] => q0,
            _ => return out,
        };
        let mut map = vec![usize::MAX; self.num_states()];
        let mut queue = VecDeque::from([q0]);
        map[q0] = out.add_labeled_state(self.marked[q0], self.labels[q0].clone());
        out.initial = Some(map[q0]);
        while let Some(q) = queue.pop_front() {
            for (e, d) in self.transitions_from(q) {
                if !keep[d] {
                    continue;
                }
                if map[d] == usize::MAX {
                    map[d] = out.add_labeled_state(self.marked[d], self.labels[d].clone());
                    queue.push_back(d);
                }
                out.delta[map[q]].insert(e, map[d]);
            }
        }
        out
    }

    /// Accessible part.
    pub fn accessible(&self) -> Generator {
        self.restrict(&vec![true; self.num_states()])
    }

    /// Accessible and coaccessible part. Recognizes the same marked language
    /// and generates its prefix closure.
    pub fn trim(&self) -> Generator {
        let acc = self.accessible();
        let co = acc.coaccessible_states();
        acc.restrict(&co)
    }

    /// Recognizer whose marked language is the prefix closure of `L_m(G)`.
    pub fn prefix_closure(&self) -> Generator {
        let mut g = self.trim();
        g.marked.iter_mut().for_each(|m| *m = true);
        g
    }

    /// Recognizer whose marked language is `L(G)`.
    pub fn generated(&self) -> Generator {
        let mut g = self.accessible();
        g.marked.iter_mut().for_each(|m| *m = true);
        g
    }

    /// Every reachable state can reach a marked state.
    pub fn is_nonblocking(&self) -> bool {
        self.blocking_word().is_none()
    }

    /// Shortest word leading to a reachable state that cannot reach marking.
    pub fn blocking_word(&self) -> Option<Word> {
        let co = self.coaccessible_states();
        self.shortest_word_to(|q| !co[q])
    }

    /// `L_m(G)` is prefix-closed and equal to `L(G)`: every accessible state is marked.
    pub fn is_prefix_closed(&self) -> bool {
        let acc = self.accessible_states();
        acc.iter().zip(&self.marked).all(|(&a, &m)| !a || m)
    }

    /// Shortest (then lexicographically least) word reaching a state satisfying `pred`.
    pub fn shortest_word_to(&self, pred: impl Fn(StateId) -> bool) -> Option<Word> {
        let q0 = self.initial?;
        let mut parent: Vec<Option<(StateId, EventId)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[q0] = true;
        let mut queue = VecDeque::from([q0]);
        while let Some(q) = queue.pop_front() {
            if pred(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, e)) = parent[cur] {
                    word.push(e);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for (e, d) in self.transitions_from(q) {
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((q, e));
                    queue.push_back(d);
                }
            }
        }
        None
    }

    /// All words of `L_m(G)` of length at most `max_len`, in lexicographic
    /// order of event registration.
    pub fn enumerate_words(&self, max_len: usize) -> Vec<Word> {
        let g = self.trim();
        let mut out = Vec::new();
        if let Some(q0) = g.initial {
            let mut word = Vec::new();
            g.enumerate_from(q0, max_len, &mut word, &mut out);
        }
        out
    }

    fn enumerate_from(&self, q: StateId, budget: usize, word: &mut Word, out: &mut Vec<Word>) {
        if self.marked[q] {
            out.push(word.clone());
        }
        if budget == 0 {
            return;
        }
        for (e, d) in self.transitions_from(q) {
            word.push(e);
            self.enumerate_from(d, budget - 1, word, out);
            word.pop();
        }
    }
}
