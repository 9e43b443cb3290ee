//! Shared helpers for integration tests: seeded random instances and
//! word-level oracles that decide the control-theoretic definitions on finite
//! languages by enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use coordsynth::automaton::Generator;
use coordsynth::coordination::CoordinationProblem;
use coordsynth::io::{load_problem, ProblemFiles};
use coordsynth::language::extend_sigma_k;
use coordsynth::{EventId, EventSet, EventTable, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Lang = BTreeSet<Word>;

/// Membership test of a prefix-closed language.
pub type Membership<'a> = Box<dyn Fn(&[EventId]) -> bool + 'a>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn set(ids: impl IntoIterator<Item = EventId>) -> EventSet {
    let mut s = EventSet::new();
    for e in ids {
        s.insert(e);
    }
    s
}

/// Table with events `e0..e{n-1}`; flags are irrelevant unless a test reads
/// them back.
pub fn table(n: usize) -> (EventTable, Vec<EventId>) {
    let mut t = EventTable::new();
    let ids = (0..n)
        .map(|i| t.register(&format!("e{i}"), true, true).unwrap())
        .collect();
    (t, ids)
}

pub fn random_subset(rng: &mut ChaCha8Rng, from: &EventSet, p: f64) -> EventSet {
    set(from.iter().filter(|_| rng.gen_bool(p)))
}

/// Deterministic generator with `1..=max_states` states over `alphabet`.
pub fn random_generator(rng: &mut ChaCha8Rng, alphabet: &EventSet, max_states: usize, density: f64) -> Generator {
    random_generator_avoiding(rng, alphabet, max_states, density, &EventSet::new())
}

/// As [`random_generator`], without `avoid` events at the initial state.
pub fn random_generator_avoiding(
    rng: &mut ChaCha8Rng,
    alphabet: &EventSet,
    max_states: usize,
    density: f64,
    avoid: &EventSet,
) -> Generator {
    let n = rng.gen_range(1..=max_states);
    let mut g = Generator::empty(alphabet.clone());
    for _ in 0..n {
        let marked = rng.gen_bool(0.5);
        g.add_state(marked);
    }
    g.set_initial(0);
    for s in 0..n {
        for e in alphabet.iter() {
            if rng.gen_bool(density) && !(s == 0 && avoid.contains(e)) {
                let d = rng.gen_range(0..n);
                g.add_transition(s, e, d).unwrap();
            }
        }
    }
    g
}

/// Acyclic generator: transitions only go to higher-numbered states.
pub fn random_dag(rng: &mut ChaCha8Rng, alphabet: &EventSet, max_states: usize, density: f64) -> Generator {
    let n = rng.gen_range(2..=max_states);
    let mut g = Generator::empty(alphabet.clone());
    for _ in 0..n {
        let marked = rng.gen_bool(0.6);
        g.add_state(marked);
    }
    g.set_initial(0);
    for s in 0..n - 1 {
        for e in alphabet.iter() {
            if rng.gen_bool(density) {
                let d = rng.gen_range(s + 1..n);
                g.add_transition(s, e, d).unwrap();
            }
        }
    }
    g
}

pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &[EventId], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// Shipped example problems.

pub fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn example_manifest(n: u32) -> PathBuf {
    data_path(&format!("example{n}/example{n}.prob"))
}

pub fn load_example(n: u32) -> ProblemFiles {
    load_problem(&example_manifest(n)).unwrap()
}

/// Words written as space-separated event names; `""` is the empty word.
pub fn words(t: &EventTable, list: &[&str]) -> Vec<Word> {
    list.iter()
        .map(|w| w.split_whitespace().map(|n| t.lookup(n).unwrap()).collect())
        .collect()
}

/// Recognizer of exactly `list`.
pub fn finite(alphabet: &EventSet, t: &EventTable, list: &[&str]) -> Generator {
    Generator::from_words(alphabet.clone(), &words(t, list)).unwrap()
}

/// Recognizer of the prefix closure of `list`.
pub fn closure(alphabet: &EventSet, t: &EventTable, list: &[&str]) -> Generator {
    finite(alphabet, t, list).prefix_closure()
}

// ---------------------------------------------------------------------------
// Word-level language operations.

pub fn prefixes(lang: &Lang) -> Lang {
    let mut out = Lang::new();
    for w in lang {
        for i in 0..=w.len() {
            out.insert(w[..i].to_vec());
        }
    }
    out
}

pub fn project_word(w: &[EventId], keep: &EventSet) -> Word {
    w.iter().copied().filter(|&e| keep.contains(e)).collect()
}

pub fn project_lang(lang: &Lang, keep: &EventSet) -> Lang {
    lang.iter().map(|w| project_word(w, keep)).collect()
}

/// Every word over `alphabet` of length at most `max_len`.
pub fn all_words(alphabet: &EventSet, max_len: usize) -> Vec<Word> {
    let events: Vec<EventId> = alphabet.iter().collect();
    let mut out = vec![Word::new()];
    let mut frontier = vec![Word::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &e in &events {
                let mut x = w.clone();
                x.push(e);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Marked words of `g` up to `max_len`, found by running every candidate.
pub fn marked_words(g: &Generator, max_len: usize) -> Lang {
    all_words(g.alphabet(), max_len)
        .into_iter()
        .filter(|w| g.accepts(w))
        .collect()
}

// ---------------------------------------------------------------------------
// Definitional checks. `plant` decides membership in a prefix-closed language.

/// `K̄Σu ∩ L ⊆ K̄`.
pub fn controllable(k: &Lang, plant: &dyn Fn(&[EventId]) -> bool, unc: &EventSet) -> bool {
    let closure = prefixes(k);
    closure.iter().all(|s| {
        unc.iter().all(|u| {
            let mut su = s.clone();
            su.push(u);
            !plant(&su) || closure.contains(&su)
        })
    })
}

/// `K̄ = P⁻¹P(K̄) ∩ L`. Any string of `P⁻¹P(K̄) ∩ L` outside `K̄` has a
/// shortest prefix `tσ` outside `K̄` with `t ∈ K̄`, and `P(tσ) ∈ P(K̄)` since
/// projected closures are prefix-closed, so one-step extensions suffice.
pub fn normal(k: &Lang, plant: &dyn Fn(&[EventId]) -> bool, alphabet: &EventSet, observable: &EventSet) -> bool {
    let closure = prefixes(k);
    if !closure.iter().all(|s| plant(s)) {
        return false;
    }
    let seen = project_lang(&closure, observable);
    closure.iter().all(|t| {
        alphabet.iter().all(|e| {
            let mut te = t.clone();
            te.push(e);
            closure.contains(&te) || !plant(&te) || !seen.contains(&project_word(&te, observable))
        })
    })
}

/// No `s, s' ∈ K̄` with `P(s) = P(s')`, controllable `σ`, `sσ ∈ K̄` and
/// `s'σ ∈ L \ K̄`.
pub fn observable(
    k: &Lang,
    plant: &dyn Fn(&[EventId]) -> bool,
    controllable: &EventSet,
    observable: &EventSet,
) -> bool {
    let closure: Vec<Word> = prefixes(k).into_iter().collect();
    let inside: BTreeSet<&Word> = closure.iter().collect();
    for s in &closure {
        for s2 in &closure {
            if project_word(s, observable) != project_word(s2, observable) {
                continue;
            }
            for e in controllable.iter() {
                let mut se = s.clone();
                se.push(e);
                let mut s2e = s2.clone();
                s2e.push(e);
                if inside.contains(&se) && plant(&s2e) && !inside.contains(&s2e) {
                    return false;
                }
            }
        }
    }
    true
}

/// Union of every subset of `words` satisfying `ok`.
pub fn union_of_qualifying(words: &[Word], ok: impl Fn(&Lang) -> bool) -> Lang {
    assert!(words.len() <= 12, "subset enumeration over {} words", words.len());
    let mut out = Lang::new();
    for mask in 0u32..(1 << words.len()) {
        let subset: Lang = (0..words.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| words[i].clone())
            .collect();
        if ok(&subset) {
            out.extend(subset);
        }
    }
    out
}

/// Marked words of a generator known to accept a finite language.
pub fn finite_language(g: &Generator, bound: usize) -> Lang {
    let words: Lang = g.enumerate_words(bound + 1).into_iter().collect();
    assert!(
        words.iter().all(|w| w.len() <= bound),
        "language is longer than {bound}"
    );
    words
}

// ---------------------------------------------------------------------------
// Coordination instances.

/// The conditional definitions on finite sublanguages of a problem.
pub struct CoordOracle<'a> {
    pub g1: &'a Generator,
    pub g2: &'a Generator,
    pub gk: &'a Generator,
    pub s1: EventSet,
    pub s2: EventSet,
    pub sk: EventSet,
    pub unc: EventSet,
    pub obs: EventSet,
}

impl<'a> CoordOracle<'a> {
    pub fn new(p: &'a CoordinationProblem, obs: &EventSet) -> Self {
        CoordOracle {
            g1: p.g1(),
            g2: p.g2(),
            gk: p.gk(),
            s1: p.g1().alphabet().clone(),
            s2: p.g2().alphabet().clone(),
            sk: p.sigma_k().clone(),
            unc: p.uncontrollable(),
            obs: obs.clone(),
        }
    }

    /// `(projected language, level alphabet, level plant)` for each level.
    fn levels(&self, m: &Lang) -> Vec<(Lang, EventSet, Membership<'_>)> {
        let pk = prefixes(&project_lang(m, &self.sk));
        let gk = self.gk;
        let mut out: Vec<(Lang, EventSet, Membership<'_>)> = vec![(
            project_lang(m, &self.sk),
            self.sk.clone(),
            Box::new(move |w: &[EventId]| gk.generates(w)),
        )];
        for (g, si) in [(self.g1, &self.s1), (self.g2, &self.s2)] {
            let alphabet = si.union(&self.sk);
            let pk = pk.clone();
            let sk = self.sk.clone();
            let si = si.clone();
            let plant = move |w: &[EventId]| g.generates(&project_word(w, &si)) && pk.contains(&project_word(w, &sk));
            out.push((project_lang(m, &alphabet), alphabet, Box::new(plant)));
        }
        out
    }

    pub fn cond_controllable(&self, m: &Lang) -> bool {
        self.levels(m)
            .iter()
            .all(|(lang, alphabet, plant)| controllable(lang, plant.as_ref(), &self.unc.intersection(alphabet)))
    }

    pub fn cond_normal(&self, m: &Lang) -> bool {
        self.levels(m)
            .iter()
            .all(|(lang, alphabet, plant)| normal(lang, plant.as_ref(), alphabet, &self.obs.intersection(alphabet)))
    }

    pub fn in_plant(&self, w: &[EventId]) -> bool {
        self.g1.accepts(&project_word(w, &self.s1))
            && self.g2.accepts(&project_word(w, &self.s2))
            && self.gk.accepts(&project_word(w, &self.sk))
    }
}

pub struct CoordInstance {
    pub problem: CoordinationProblem,
    pub spec_words: Vec<Word>,
    pub observable: EventSet,
}

/// Random conditionally decomposable problem with a finite specification of
/// at most four words. `Σk` is grown from the shared events until `K` and
/// `K̄` decompose. Returns `None` when the plant marks no short word.
pub fn random_coordination(rng: &mut ChaCha8Rng) -> Option<CoordInstance> {
    let n = rng.gen_range(3..=5);
    let mut t = EventTable::new();
    let mut ids = Vec::new();
    for i in 0..n {
        let c = rng.gen_bool(0.55);
        let o = rng.gen_bool(0.75);
        ids.push(t.register(&format!("e{i}"), c, o).unwrap());
    }
    let all = set(ids.iter().copied());
    let shared = ids[0];
    let mut s1 = random_subset(rng, &all, 0.6);
    let mut s2 = all.difference(&s1).union(&random_subset(rng, &s1, 0.4));
    s1.insert(shared);
    s2.insert(shared);
    // Half the plants start with controllable events only, so that the
    // empty word is not always doomed.
    let avoid = if rng.gen_bool(0.5) {
        t.uncontrollable()
    } else {
        EventSet::new()
    };
    let g1 = random_generator_avoiding(rng, &s1, 3, 0.4, &avoid);
    let g2 = random_generator_avoiding(rng, &s2, 3, 0.4, &avoid);
    let sigma = s1.union(&s2);

    let candidates: Vec<Word> = all_words(&sigma, 4)
        .into_iter()
        .filter(|w| g1.accepts(&project_word(w, &s1)) && g2.accepts(&project_word(w, &s2)))
        .collect();
    if candidates.is_empty() {
        return None;
    }
    // Words sharing a prefix with the first pick make the sublanguage
    // lattice less trivial than independent samples.
    let first = candidates.iter().filter(|w| w.len() >= 2).collect::<Vec<_>>();
    let first = (*first.choose(rng).or(candidates.last().as_ref()).unwrap()).clone();
    let count = rng.gen_range(1..=3.min(candidates.len()));
    let related: Vec<&Word> = candidates
        .iter()
        .filter(|w| **w != first && w.first() == first.first())
        .collect();
    let mut spec_words = vec![first];
    while spec_words.len() < count {
        let pool = if rng.gen_bool(0.3) && !related.is_empty() {
            related.clone()
        } else {
            candidates.iter().collect()
        };
        let w = (*pool.choose(rng).unwrap()).clone();
        if !spec_words.contains(&w) {
            spec_words.push(w);
        } else if spec_words.len() >= candidates.len() {
            break;
        }
    }

    // Closing some words under marked uncontrollable continuations gives
    // specifications with both surviving and doomed parts.
    let unc = t.uncontrollable();
    let closed_upto = rng.gen_range(0..=spec_words.len());
    let seeds = spec_words[..closed_upto].to_vec();
    for w in seeds {
        for i in 0..=w.len() {
            for u in unc.iter() {
                let mut x = w[..i].to_vec();
                x.push(u);
                if spec_words.len() < 4 && candidates.contains(&x) && !spec_words.contains(&x) {
                    spec_words.push(x);
                }
            }
        }
    }
    let spec = Generator::from_words(sigma.clone(), &spec_words).unwrap();

    let seed = s1.intersection(&s2).union(&random_subset(rng, &sigma, 0.3));
    let sigma_k = extend_sigma_k(&spec, &s1, &s2, &seed).unwrap();
    let observable = t.observable();
    let problem = CoordinationProblem::new(t, g1, g2, sigma_k, spec, None).ok()?;
    spec_words.sort();
    spec_words.dedup();
    Some(CoordInstance {
        problem,
        spec_words,
        observable,
    })
}

/// Instances from consecutive seeds starting at `seed`.
pub fn coordination_instances(seed: u64, count: usize) -> Vec<CoordInstance> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(inst) = random_coordination(&mut rng) {
            out.push(inst);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Monolithic supremal instances.

pub struct SupInstance {
    pub plant: Generator,
    pub spec: Generator,
    pub spec_words: Vec<Word>,
    pub uncontrollable: EventSet,
    pub observable: EventSet,
}

impl SupInstance {
    /// Spec words the plant marks: the candidates of every supremal.
    pub fn candidates(&self) -> Vec<Word> {
        self.spec_words
            .iter()
            .filter(|w| self.plant.accepts(w))
            .cloned()
            .collect()
    }
}

/// Plant of at most six states over at most four events and a specification
/// of at most four words, mostly marked by the plant.
pub fn random_sup_instance(rng: &mut ChaCha8Rng) -> SupInstance {
    let n = rng.gen_range(2..=4);
    let (_, ids) = table(n);
    let alphabet = set(ids.iter().copied());
    let uncontrollable = random_subset(rng, &alphabet, 0.35);
    let observable = random_subset(rng, &alphabet, 0.7);
    let avoid = if rng.gen_bool(0.5) {
        uncontrollable.clone()
    } else {
        EventSet::new()
    };
    let plant = if rng.gen_bool(0.5) {
        random_dag(rng, &alphabet, 6, 0.5)
    } else {
        random_generator_avoiding(rng, &alphabet, 6, 0.45, &avoid)
    };
    let marked: Vec<Word> = marked_words(&plant, 4).into_iter().collect();

    let count = rng.gen_range(1..=4);
    let mut spec_words: Vec<Word> = Vec::new();
    for _ in 0..3 * count {
        if spec_words.len() == count {
            break;
        }
        let w = if !marked.is_empty() && rng.gen_bool(0.9) {
            marked.choose(rng).unwrap().clone()
        } else {
            random_word(rng, &ids, 4)
        };
        if !spec_words.contains(&w) {
            spec_words.push(w);
        }
    }
    // Uncontrollable continuations that keep part of the specification alive.
    for w in spec_words.clone() {
        if rng.gen_bool(0.5) {
            continue;
        }
        for i in 0..=w.len() {
            for u in uncontrollable.iter() {
                let mut x = w[..i].to_vec();
                x.push(u);
                if spec_words.len() < 4 && x.len() <= 4 && plant.accepts(&x) && !spec_words.contains(&x) {
                    spec_words.push(x);
                }
            }
        }
    }
    spec_words.sort();
    let spec = Generator::from_words(alphabet, &spec_words).unwrap();
    SupInstance {
        plant,
        spec,
        spec_words,
        uncontrollable,
        observable,
    }
}
