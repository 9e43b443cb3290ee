//! Line-oriented generator files.
//!
//! ```text
//! # comment
//! EVENTS
//! a c o
//! u u uo
//! STATES 2
//! INITIAL 0
//! MARKED 0 1
//! TRANSITIONS
//! 0 a 1
//! 1 u 0
//! ```
//!
//! Event lines give the controllability (`c`/`u`) and observability
//! (`o`/`uo`) of each event of the generator's alphabet.

use std::fmt::Write as _;

use crate::automaton::Generator;
use crate::error::{Error, Result};
use crate::events::{EventSet, EventTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Events,
    Transitions,
}

/// `(line, column, src, (event column, event), dst)` of a transition line.
type PendingEdge<'a> = (usize, usize, usize, (usize, &'a str), usize);

/// Whitespace-separated tokens of a line with their 1-based columns, up to
/// the first `#`.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &body[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (body[..byte].chars().count() + 1, tok))
        .collect()
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, col, format!("expected a state number, found `{tok}`")))
}

/// Parses a generator, registering its events in `table`.
pub fn parse_generator(text: &str, table: &mut EventTable) -> Result<Generator> {
    let mut section = Section::Header;
    let mut alphabet = EventSet::new();
    let mut states: Option<(usize, usize)> = None;
    let mut initial: Option<usize> = None;
    let mut marked: Vec<(usize, usize, usize)> = Vec::new();
    let mut transitions: Vec<PendingEdge> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        let once = |seen: bool, what: &str| {
            if seen {
                Err(Error::parse(line, col, format!("{what} given twice")))
            } else {
                Ok(())
            }
        };
        match head {
            "EVENTS" | "TRANSITIONS" if toks.len() == 1 => {
                section = if head == "EVENTS" {
                    Section::Events
                } else {
                    Section::Transitions
                };
            }
            "STATES" => {
                once(states.is_some(), "STATES")?;
                let [_, n] = toks[..] else {
                    return Err(Error::parse(line, col, "expected `STATES n`"));
                };
                states = Some((number(line, n)?, line));
                section = Section::Header;
            }
            "INITIAL" => {
                once(initial.is_some(), "INITIAL")?;
                let [_, s] = toks[..] else {
                    return Err(Error::parse(line, col, "expected `INITIAL id`"));
                };
                initial = Some(number(line, s)?);
                section = Section::Header;
            }
            "MARKED" => {
                for &t in &toks[1..] {
                    marked.push((line, t.0, number(line, t)?));
                }
                section = Section::Header;
            }
            _ => match section {
                Section::Events => {
                    let [(_, name), (fc, c), (fo, o)] = toks[..] else {
                        return Err(Error::parse(line, col, "expected `name c|u o|uo`"));
                    };
                    let controllable = match c {
                        "c" => true,
                        "u" => false,
                        _ => return Err(Error::parse(line, fc, format!("expected `c` or `u`, found `{c}`"))),
                    };
                    let observable = match o {
                        "o" => true,
                        "uo" => false,
                        _ => return Err(Error::parse(line, fo, format!("expected `o` or `uo`, found `{o}`"))),
                    };
                    let id = table
                        .register(name, controllable, observable)
                        .map_err(|e| Error::parse(line, col, e.to_string()))?;
                    if !alphabet.insert(id) {
                        return Err(Error::parse(line, col, format!("event `{name}` listed twice")));
                    }
                }
                Section::Transitions => {
                    let [src, event, dst] = toks[..] else {
                        return Err(Error::parse(line, col, "expected `src event dst`"));
                    };
                    transitions.push((line, col, number(line, src)?, event, number(line, dst)?));
                }
                Section::Header => {
                    return Err(Error::parse(line, col, format!("unexpected `{head}`")));
                }
            },
        }
    }

    let (n, states_line) = states.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing STATES"))?;
    let mut g = Generator::empty(alphabet.clone());
    for _ in 0..n {
        g.add_state(false);
    }
    match initial {
        Some(s) if s < n => g.set_initial(s),
        Some(s) => return Err(Error::parse(states_line, 1, format!("initial state {s} out of range"))),
        None if n > 0 => return Err(Error::parse(states_line, 1, "missing INITIAL for a nonempty generator")),
        None => {}
    }
    for (line, col, s) in marked {
        if s >= n {
            return Err(Error::parse(line, col, format!("state {s} out of range")));
        }
        g.set_marked(s, true);
    }
    for (line, col, src, (event_col, event), dst) in transitions {
        let id = table
            .id(event)
            .filter(|&id| alphabet.contains(id))
            .ok_or_else(|| Error::parse(line, event_col, format!("unknown event `{event}`")))?;
        for s in [src, dst] {
            if s >= n {
                return Err(Error::parse(line, col, format!("state {s} out of range")));
            }
        }
        if g.step(src, id).is_some() {
            return Err(Error::parse(
                line,
                col,
                format!("duplicate transition from state {src} on `{event}`"),
            ));
        }
        g.add_transition(src, id, dst).expect("checked above");
    }
    Ok(g)
}

/// Canonical text of `g`: events and transitions sorted by name, so that
/// printing a parsed file reproduces it byte for byte.
pub fn print_generator(g: &Generator, table: &EventTable) -> String {
    let mut out = String::new();
    let mut events: Vec<_> = g.alphabet().iter().collect();
    events.sort_by(|&a, &b| table.name(a).cmp(table.name(b)));
    out.push_str("EVENTS\n");
    for e in events {
        let info = table.info(e);
        let c = if info.controllable { "c" } else { "u" };
        let o = if info.observable { "o" } else { "uo" };
        let _ = writeln!(out, "{} {c} {o}", info.name);
    }
    let _ = writeln!(out, "STATES {}", g.num_states());
    if let Some(i) = g.initial() {
        let _ = writeln!(out, "INITIAL {i}");
    }
    out.push_str("MARKED");
    for s in g.marked_states() {
        let _ = write!(out, " {s}");
    }
    out.push('\n');
    out.push_str("TRANSITIONS\n");
    let mut edges: Vec<_> = g.transitions().collect();
    edges.sort_by(|a, b| (a.0, table.name(a.1), a.2).cmp(&(b.0, table.name(b.1), b.2)));
    for (s, e, d) in edges {
        let _ = writeln!(out, "{s} {} {d}", table.name(e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{lang_equal, LangKind};

    const SAMPLE: &str = "\
# two states
EVENTS
a c o   # controllable
u u uo
STATES 2
INITIAL 0
MARKED 0 1
TRANSITIONS
0 a 1
1 u 0
";

    #[test]
    fn parses_and_reprints() {
        let mut t = EventTable::new();
        let g = parse_generator(SAMPLE, &mut t).unwrap();
        assert_eq!((g.num_states(), g.num_transitions()), (2, 2));
        assert!(!t.info(t.lookup("u").unwrap()).observable);
        let printed = print_generator(&g, &t);
        let mut t2 = EventTable::new();
        let again = parse_generator(&printed, &mut t2).unwrap();
        assert_eq!(print_generator(&again, &t2), printed);
        assert!(lang_equal(&g, &again, LangKind::Marked).unwrap());
    }

    #[test]
    fn nondeterminism_is_reported_at_the_second_line() {
        let text = "EVENTS\na c o\nSTATES 3\nINITIAL 0\nMARKED\nTRANSITIONS\n1 a 2\n1 a 0\n";
        let err = parse_generator(text, &mut EventTable::new()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 8, column: 1, .. }), "{err}");
    }

    #[test]
    fn unknown_event_points_at_its_column() {
        let text = "EVENTS\na c o\nSTATES 1\nINITIAL 0\nMARKED 0\nTRANSITIONS\n0  b 0\n";
        let err = parse_generator(text, &mut EventTable::new()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 7, column: 4, .. }), "{err}");
    }

    #[test]
    fn missing_initial_is_an_error_unless_empty() {
        let text = "EVENTS\na c o\nSTATES 1\nMARKED 0\n";
        assert!(parse_generator(text, &mut EventTable::new()).is_err());
        let empty = parse_generator("EVENTS\na c o\nSTATES 0\nMARKED\n", &mut EventTable::new()).unwrap();
        assert!(empty.is_empty_language());
    }

    #[test]
    fn marked_initial_without_transitions_is_epsilon() {
        let text = "EVENTS\na c o\nSTATES 1\nINITIAL 0\nMARKED 0\nTRANSITIONS\n";
        let g = parse_generator(text, &mut EventTable::new()).unwrap();
        assert_eq!(g.enumerate_words(3), vec![vec![]]);
    }

    #[test]
    fn conflicting_flags_across_files() {
        let mut t = EventTable::new();
        parse_generator("EVENTS\na c o\nSTATES 0\nMARKED\n", &mut t).unwrap();
        let err = parse_generator("EVENTS\na u o\nSTATES 0\nMARKED\n", &mut t).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
