//! Problem manifests: `key=value` lines naming the generator files of a
//! coordination problem.
//!
//! ```text
//! g1=g1.gen
//! g2=g2.gen
//! spec=k.gen
//! sigma_k=a1,a2,c,u
//! coordinator=auto
//! observation=full
//! ```
//!
//! Paths are relative to the manifest. `coordinator` defaults to `auto`
//! (`P_k(G1) ∥ P_k(G2)`), `observation` to `full`; `observation=flags` uses
//! the observability flags of the event declarations.

use std::fs;
use std::path::{Path, PathBuf};

use crate::automaton::Generator;
use crate::coordination::CoordinationProblem;
use crate::error::{Error, Result};
use crate::events::{EventSet, EventTable};

use super::format::parse_generator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservationMode {
    Full,
    Flags,
}

/// Parsed but not yet validated contents of a manifest.
#[derive(Debug, Clone)]
pub struct ProblemFiles {
    pub events: EventTable,
    pub g1: Generator,
    pub g2: Generator,
    pub spec: Generator,
    pub sigma_k: EventSet,
    pub coordinator: Option<Generator>,
    pub observation: ObservationMode,
}

impl ProblemFiles {
    /// Observable events under the manifest's observation mode.
    pub fn observable(&self) -> EventSet {
        let all = self.g1.alphabet().union(self.g2.alphabet());
        match self.observation {
            ObservationMode::Full => all,
            ObservationMode::Flags => self.events.observable().intersection(&all),
        }
    }

    /// Validates the problem; see [`CoordinationProblem::new`].
    pub fn into_problem(self) -> Result<CoordinationProblem> {
        CoordinationProblem::new(self.events, self.g1, self.g2, self.sigma_k, self.spec, self.coordinator)
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads and parses a generator file, registering its events in `table`.
pub fn load_generator(path: &Path, table: &mut EventTable) -> Result<Generator> {
    let text = read_file(path)?;
    parse_generator(&text, table).map_err(|e| Error::InFile {
        file: path.display().to_string(),
        source: Box::new(e),
    })
}

/// Loads a manifest and every file it references.
pub fn load_problem(path: &Path) -> Result<ProblemFiles> {
    let text = read_file(path)?;
    let in_file = |e: Error| Error::InFile {
        file: path.display().to_string(),
        source: Box::new(e),
    };
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut g1 = None;
    let mut g2 = None;
    let mut spec = None;
    let mut sigma_k = None;
    let mut coordinator = None;
    let mut observation = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(in_file(Error::parse(line, 1, "expected `key=value`")));
        };
        let (key, value) = (key.trim(), value.trim().to_string());
        let slot = match key {
            "g1" => &mut g1,
            "g2" => &mut g2,
            "spec" => &mut spec,
            "sigma_k" => &mut sigma_k,
            "coordinator" => &mut coordinator,
            "observation" => &mut observation,
            _ => return Err(in_file(Error::parse(line, 1, format!("unknown key `{key}`")))),
        };
        if slot.replace((line, value)).is_some() {
            return Err(in_file(Error::parse(line, 1, format!("`{key}` given twice"))));
        }
    }
    let required = |slot: Option<(usize, String)>, key: &str| {
        slot.ok_or_else(|| in_file(Error::parse(text.lines().count().max(1), 1, format!("missing `{key}`"))))
    };
    let resolve = |rel: &str| -> PathBuf { base.join(rel) };

    let mut events = EventTable::new();
    let g1 = load_generator(&resolve(&required(g1, "g1")?.1), &mut events)?;
    let g2 = load_generator(&resolve(&required(g2, "g2")?.1), &mut events)?;
    let spec = load_generator(&resolve(&required(spec, "spec")?.1), &mut events)?;
    let (sk_line, sk_text) = required(sigma_k, "sigma_k")?;
    let sigma_k = events
        .parse_set(&sk_text)
        .map_err(|e| in_file(Error::parse(sk_line, 1, e.to_string())))?;
    let coordinator = match coordinator {
        None => None,
        Some((_, v)) if v == "auto" => None,
        Some((_, v)) => Some(load_generator(&resolve(&v), &mut events)?),
    };
    let observation = match observation.as_ref().map(|(l, v)| (*l, v.as_str())) {
        None | Some((_, "full")) => ObservationMode::Full,
        Some((_, "flags")) => ObservationMode::Flags,
        Some((l, v)) => {
            return Err(in_file(Error::parse(
                l,
                1,
                format!("observation must be `full` or `flags`, found `{v}`"),
            )))
        }
    };
    Ok(ProblemFiles {
        events,
        g1,
        g2,
        spec,
        sigma_k,
        coordinator,
        observation,
    })
}
