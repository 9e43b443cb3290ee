//! Event registry and event sets.
//!
//! Every event used anywhere in a problem is registered once in an
//! [`EventTable`] together with its controllability and observability flags.
//! Identifiers are handed out in registration order, and that order is the
//! iteration order of every [`EventSet`], so all algorithms built on top of
//! them explore events deterministically.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Dense identifier of a registered event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub u32);

impl EventId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A word over registered events.
pub type Word = Vec<EventId>;

/// An ordered set of events (ordered by registration).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EventSet(BTreeSet<EventId>);

impl EventSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, e: EventId) -> bool {
        self.0.contains(&e)
    }

    pub fn insert(&mut self, e: EventId) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: EventId) -> bool {
        self.0.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EventId> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &EventSet) -> EventSet {
        EventSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &EventSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &EventSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<EventId> for EventSet {
    fn from_iter<I: IntoIterator<Item = EventId>>(iter: I) -> Self {
        EventSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EventSet {
    type Item = EventId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, EventId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Attributes of one registered event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventInfo {
    pub name: String,
    pub controllable: bool,
    pub observable: bool,
}

/// Global registry of events; single source of the controllable and
/// observable partitions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EventTable {
    events: Vec<EventInfo>,
    by_name: HashMap<String, EventId>,
}

impl EventTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers an event, or returns the existing id when the name is already
    /// known with identical flags. Flags never change once registered.
    pub fn register(&mut self, name: &str, controllable: bool, observable: bool) -> Result<EventId> {
        if let Some(&id) = self.by_name.get(name) {
            let info = &self.events[id.index()];
            if info.controllable != controllable || info.observable != observable {
                return Err(Error::ConflictingEvent(name.to_string()));
            }
            return Ok(id);
        }
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',' || c == '#') {
            return Err(Error::InvalidEventName(name.to_string()));
        }
        let id = EventId(self.events.len() as u32);
        self.events.push(EventInfo {
            name: name.to_string(),
            controllable,
            observable,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<EventId> {
        self.by_name.get(name).copied()
    }

    /// Looks up a name, failing with [`Error::UnknownEvent`].
    pub fn lookup(&self, name: &str) -> Result<EventId> {
        self.id(name).ok_or_else(|| Error::UnknownEvent(name.to_string()))
    }

    pub fn info(&self, id: EventId) -> &EventInfo {
        &self.events[id.index()]
    }

    pub fn name(&self, id: EventId) -> &str {
        &self.events[id.index()].name
    }

    pub fn iter(&self) -> impl Iterator<Item = (EventId, &EventInfo)> {
        self.events
            .iter()
            .enumerate()
            .map(|(i, info)| (EventId(i as u32), info))
    }

    pub fn all(&self) -> EventSet {
        (0..self.events.len() as u32).map(EventId).collect()
    }

    pub fn controllable(&self) -> EventSet {
        self.iter().filter(|(_, i)| i.controllable).map(|(id, _)| id).collect()
    }

    pub fn uncontrollable(&self) -> EventSet {
        self.iter().filter(|(_, i)| !i.controllable).map(|(id, _)| id).collect()
    }

    pub fn observable(&self) -> EventSet {
        self.iter().filter(|(_, i)| i.observable).map(|(id, _)| id).collect()
    }

    /// Parses a comma separated list of event names.
    pub fn parse_set(&self, list: &str) -> Result<EventSet> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.lookup(s))
            .collect()
    }

    pub fn format_word(&self, word: &[EventId]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        word.iter().map(|&e| self.name(e)).collect::<Vec<_>>().join(" ")
    }

    pub fn format_set(&self, set: &EventSet) -> String {
        let names: Vec<&str> = set.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn word_names(&self, word: &[EventId]) -> Vec<String> {
        word.iter().map(|&e| self.name(e).to_string()).collect()
    }
}
