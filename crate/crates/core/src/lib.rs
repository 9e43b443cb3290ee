//! Coordination control of modular discrete-event systems with partial
//! observation.
//!
//! Two subsystems `G1`, `G2` share events through a coordinator `Gk`. The
//! crate synthesizes supervisors level by level (coordinator, then each
//! subsystem together with the coordinator) and checks the sufficient
//! conditions under which the composed result is the supremal conditionally
//! controllable (and conditionally normal) sublanguage of a specification.

pub mod automaton;
pub mod cli;
pub mod coordination;
pub mod error;
pub mod events;
pub mod io;
pub mod language;
pub mod structural;
pub mod synthesis;

pub use automaton::{Generator, LangKind};
pub use error::{Error, Result};
pub use events::{EventId, EventSet, EventTable, Word};
pub use language::ProjectionSpec;
pub use synthesis::{ControlContext, Verdict};
