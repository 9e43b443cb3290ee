use std::collections::VecDeque;

use super::arena::{Arena, NO_CLASS};
use super::ControlContext;
use crate::automaton::Generator;
use crate::error::Result;

#[derive(Debug, Clone, Copy)]
struct Requirements {
    controllable: bool,
    normal: bool,
}

/// Supremal controllable sublanguage of `L_m(k) ∩ L_m(plant)` with respect to
/// `L(plant)` and the uncontrollable events of `ctx`.
pub fn sup_c(k: &Generator, ctx: &ControlContext) -> Result<Generator> {
    supremal(
        k,
        ctx,
        Requirements {
            controllable: true,
            normal: false,
        },
    )
}

/// Supremal sublanguage of `L_m(k) ∩ L_m(plant)` whose prefix closure is
/// normal with respect to `L(plant)` and the observation of `ctx`.
pub fn sup_n(k: &Generator, ctx: &ControlContext) -> Result<Generator> {
    supremal(
        k,
        ctx,
        Requirements {
            controllable: false,
            normal: true,
        },
    )
}

/// Supremal controllable and normal sublanguage.
pub fn sup_cn(k: &Generator, ctx: &ControlContext) -> Result<Generator> {
    supremal(
        k,
        ctx,
        Requirements {
            controllable: true,
            normal: true,
        },
    )
}

/// State-deletion fixpoint on the pairing of `k` with the plant.
///
/// Every plant string reaches exactly one arena state, and a string belongs to
/// the candidate closure iff its whole path stays in `good`. Each pass removes
/// states that no surviving sublanguage can reach:
///  - states not reachable, or not coreachable to a good marked state, through good states;
///  - (normality) every member of an observation class that has a non-good member;
///  - (controllability) states with an uncontrollable move into a non-good state.
fn supremal(k: &Generator, ctx: &ControlContext, req: Requirements) -> Result<Generator> {
    ctx.check_alphabet(k)?;
    let paired = Arena::pair(k, ctx.plant());
    let observation_matters = req.normal && !ctx.observation().is_identity();
    let arena = if observation_matters {
        paired.refine_by_observation(ctx.observation().target())
    } else {
        paired
    };
    let Some(init) = arena.init else {
        return Ok(Generator::empty(ctx.plant().alphabet().clone()));
    };
    let n = arena.len();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (s, edges) in arena.delta.iter().enumerate() {
        for &(_, d) in edges {
            rev[d].push(s);
        }
    }
    let classes = if observation_matters {
        arena.class.iter().copied().max().map_or(0, |m| m + 1)
    } else {
        0
    };

    let mut good = arena.live.clone();
    loop {
        let before = good.iter().filter(|&&g| g).count();

        // Reachable through good states.
        let mut reach = vec![false; n];
        if good[init] {
            reach[init] = true;
            let mut queue = VecDeque::from([init]);
            while let Some(q) = queue.pop_front() {
                for &(_, d) in &arena.delta[q] {
                    if good[d] && !reach[d] {
                        reach[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        // Coreachable to a good marked state through good reachable states.
        let mut co = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&q| reach[q] && arena.marked[q]).collect();
        for &q in &stack {
            co[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if reach[p] && !co[p] {
                    co[p] = true;
                    stack.push(p);
                }
            }
        }
        for q in 0..n {
            good[q] = reach[q] && co[q];
        }

        if observation_matters {
            let mut tainted = vec![false; classes];
            for q in 0..n {
                if !good[q] {
                    debug_assert_ne!(arena.class[q], NO_CLASS);
                    tainted[arena.class[q]] = true;
                }
            }
            for q in 0..n {
                if tainted[arena.class[q]] {
                    good[q] = false;
                }
            }
        }

        if req.controllable {
            for q in 0..n {
                if good[q]
                    && arena.delta[q]
                        .iter()
                        .any(|&(e, d)| ctx.uncontrollable().contains(e) && !good[d])
                {
                    good[q] = false;
                }
            }
        }

        if good.iter().filter(|&&g| g).count() == before {
            break;
        }
    }
    Ok(arena.to_generator(&good))
}
