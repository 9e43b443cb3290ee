//! Deterministic generators with marked states and the language algebra
//! every other layer builds on: trimming, synchronous product, subset
//! construction and exact language comparison.

mod compare;
mod generator;
mod nondet;
mod product;

pub use compare::{inclusion_counterexample, lang_equal, lang_includes, LangKind};
pub use generator::{Generator, StateId};
pub use nondet::NondetAutomaton;
pub use product::{sync_product, sync_product_all, union};

/// Free-function form of [`Generator::trim`].
pub fn trim(g: &Generator) -> Generator {
    g.trim()
}

/// Free-function form of [`Generator::prefix_closure`].
pub fn prefix_closure(g: &Generator) -> Generator {
    g.prefix_closure()
}

/// Free-function form of [`NondetAutomaton::determinize`].
pub fn determinize(n: &NondetAutomaton) -> Generator {
    n.determinize()
}
