//! Pairing of a specification recognizer with a plant, optionally refined by
//! the observer of the pairing. Every plant string is represented: strings
//! leaving the closure of the specification land in "dead" states.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Generator, NondetAutomaton, StateId};
use crate::events::{EventId, EventSet, Word};

pub(crate) const NO_CLASS: usize = usize::MAX;

#[derive(Debug)]
pub(crate) struct Arena {
    pub alphabet: EventSet,
    pub init: Option<usize>,
    pub delta: Vec<Vec<(EventId, usize)>>,
    /// Reached only by strings in the closure of the specification.
    pub live: Vec<bool>,
    /// Marked in both the specification and the plant.
    pub marked: Vec<bool>,
    /// Observation class (observer state) or `NO_CLASS`.
    pub class: Vec<usize>,
    pub labels: Vec<String>,
}

impl Arena {
    /// Reachable part of `trim(k) × plant`, with missing specification moves
    /// redirected to a dead component.
    pub fn pair(k: &Generator, plant: &Generator) -> Arena {
        let k = k.trim();
        let mut arena = Arena {
            alphabet: plant.alphabet().clone(),
            init: None,
            delta: Vec::new(),
            live: Vec::new(),
            marked: Vec::new(),
            class: Vec::new(),
            labels: Vec::new(),
        };
        let Some(p0) = plant.initial() else {
            return arena;
        };
        let mut index: HashMap<(Option<StateId>, StateId), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |key: (Option<StateId>, StateId), arena: &mut Arena, queue: &mut VecDeque<_>| {
            *index.entry(key).or_insert_with(|| {
                let id = arena.delta.len();
                arena.delta.push(Vec::new());
                arena.live.push(key.0.is_some());
                arena
                    .marked
                    .push(key.0.is_some_and(|x| k.is_marked(x)) && plant.is_marked(key.1));
                arena.class.push(NO_CLASS);
                arena.labels.push(match key.0 {
                    Some(x) => format!("({x},{})", key.1),
                    None => format!("(⊥,{})", key.1),
                });
                queue.push_back((key, id));
                id
            })
        };
        let start = intern((k.initial(), p0), &mut arena, &mut queue);
        arena.init = Some(start);
        while let Some(((x, p), id)) = queue.pop_front() {
            for (e, p2) in plant.transitions_from(p) {
                let x2 = x.and_then(|x| k.step(x, e));
                let dst = intern((x2, p2), &mut arena, &mut queue);
                arena.delta[id].push((e, dst));
            }
        }
        arena
    }

    /// Refines the arena by the observer of its own projection onto
    /// `observable`: the product of each state with the set of states
    /// consistent with its observation. States that share a class are exactly
    /// those reached by strings with observations leading to the same estimate.
    pub fn refine_by_observation(&self, observable: &EventSet) -> Arena {
        let mut out = Arena {
            alphabet: self.alphabet.clone(),
            init: None,
            delta: Vec::new(),
            live: Vec::new(),
            marked: Vec::new(),
            class: Vec::new(),
            labels: Vec::new(),
        };
        let Some(init) = self.init else {
            return out;
        };
        let observer = NondetAutomaton::hiding(&self.as_generator(), observable).determinize();
        let Some(o0) = observer.initial() else {
            return out;
        };
        let mut index: HashMap<(usize, StateId), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |key: (usize, StateId), out: &mut Arena, queue: &mut VecDeque<_>| {
            *index.entry(key).or_insert_with(|| {
                let id = out.delta.len();
                out.delta.push(Vec::new());
                out.live.push(self.live[key.0]);
                out.marked.push(self.marked[key.0]);
                out.class.push(key.1);
                out.labels.push(format!("{}/{}", self.labels[key.0], key.1));
                queue.push_back((key, id));
                id
            })
        };
        let start = intern((init, o0), &mut out, &mut queue);
        out.init = Some(start);
        while let Some(((h, x), id)) = queue.pop_front() {
            for &(e, h2) in &self.delta[h] {
                let x2 = if observable.contains(e) {
                    observer.step(x, e).expect("observer follows every observable move")
                } else {
                    x
                };
                let dst = intern((h2, x2), &mut out, &mut queue);
                out.delta[id].push((e, dst));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    fn as_generator(&self) -> Generator {
        let mut g = Generator::empty(self.alphabet.clone());
        for i in 0..self.len() {
            g.add_state(self.marked[i]);
        }
        for (s, edges) in self.delta.iter().enumerate() {
            for &(e, d) in edges {
                g.add_transition(s, e, d).expect("arena is deterministic");
            }
        }
        if let Some(i) = self.init {
            g.set_initial(i);
        }
        g
    }

    /// Generator over the states flagged in `keep`, trimmed.
    pub fn to_generator(&self, keep: &[bool]) -> Generator {
        let mut g = Generator::empty(self.alphabet.clone());
        let mut map = vec![usize::MAX; self.len()];
        for i in 0..self.len() {
            if keep[i] {
                map[i] = g.add_labeled_state(self.marked[i], self.labels[i].clone());
            }
        }
        for (s, edges) in self.delta.iter().enumerate() {
            if !keep[s] {
                continue;
            }
            for &(e, d) in edges {
                if keep[d] {
                    g.add_transition(map[s], e, map[d]).expect("arena is deterministic");
                }
            }
        }
        match self.init {
            Some(i) if keep[i] => {
                g.set_initial(map[i]);
                g.trim()
            }
            _ => Generator::empty(self.alphabet.clone()),
        }
    }

    /// Breadth-first search from the initial state through states allowed by
    /// `through`, returning the shortest word to a state satisfying `goal`.
    pub fn shortest_word(
        &self,
        through: impl Fn(usize) -> bool,
        goal: impl Fn(usize) -> bool,
    ) -> Option<(Word, usize)> {
        let init = self.init?;
        let mut parent: Vec<Option<(usize, EventId)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[init] = true;
        let mut queue = VecDeque::from([init]);
        while let Some(q) = queue.pop_front() {
            if goal(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, e)) = parent[cur] {
                    word.push(e);
                    cur = p;
                }
                word.reverse();
                return Some((word, q));
            }
            if !through(q) {
                continue;
            }
            for &(e, d) in &self.delta[q] {
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((q, e));
                    queue.push_back(d);
                }
            }
        }
        None
    }
}
