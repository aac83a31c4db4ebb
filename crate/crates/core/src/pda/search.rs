//! Breadth-first exploration of the configuration graph.

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use thiserror::Error;

use super::{Configuration, IterPda, Letter, StateId, Symbol};
use crate::store::Store;

/// Budgets for a search. The ε-moves of an iterated automaton may loop
/// forever (the Fibonacci automaton can guess ever larger flags), so exploration is
/// always bounded by fuel and may additionally prune large stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    /// Maximum number of configurations expanded.
    pub fuel: u64,
    /// Configurations whose store has more entries (all levels) are pruned.
    pub store_cap: Option<usize>,
    /// Configurations with an inner store longer than this are pruned.
    pub flag_cap: Option<usize>,
}

impl Default for RunLimits {
    fn default() -> Self {
        RunLimits { fuel: 1_000_000, store_cap: None, flag_cap: None }
    }
}

impl RunLimits {
    pub fn with_fuel(fuel: u64) -> Self {
        RunLimits { fuel, ..Default::default() }
    }

    pub fn store_cap(mut self, cap: usize) -> Self {
        self.store_cap = Some(cap);
        self
    }

    pub fn flag_cap(mut self, cap: usize) -> Self {
        self.flag_cap = Some(cap);
        self
    }

    pub fn admits(&self, store: &Store<Symbol>) -> bool {
        self.store_cap.map_or(true, |cap| store.size() <= cap)
            && self.flag_cap.map_or(true, |cap| store.widest_flag() <= cap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted,
    Rejected,
    BudgetExhausted,
}

/// Where a search stops successfully. Both goals also require the whole
/// input to be consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goal {
    /// `(q, ε, ε)` for any `q`.
    EmptyStore,
    /// Exactly `(state, ε, store)`.
    Exact { state: StateId, store: Store<Symbol> },
}

impl Goal {
    fn reached(&self, c: &Configuration, input_len: usize) -> bool {
        c.pos == input_len
            && match self {
                Goal::EmptyStore => c.store.is_empty(),
                Goal::Exact { state, store } => c.state == *state && c.store == *store,
            }
    }
}

/// A witness path: `configs[i + 1]` follows from `configs[i]` by
/// `transitions[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub configs: Vec<Configuration>,
    pub transitions: Vec<usize>,
}

impl Trace {
    /// Re-derives every step from the transition table.
    pub fn replays(&self, pda: &IterPda, input: &[Letter]) -> bool {
        self.configs.len() == self.transitions.len() + 1
            && self.configs.windows(2).zip(&self.transitions).all(|(pair, &t)| {
                step(pda, input, &pair[0])
                    .iter()
                    .any(|(ti, next)| *ti == t && *next == pair[1])
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub verdict: Verdict,
    /// Present iff the verdict is `Accepted`.
    pub trace: Option<Trace>,
    /// Configurations expanded.
    pub expanded: u64,
}

/// Every successor of `config` with the index of the transition producing it.
pub fn step(pda: &IterPda, input: &[Letter], config: &Configuration) -> Vec<(usize, Configuration)> {
    let next_letter = input.get(config.pos).copied();
    pda.transitions_from(config.state)
        .filter(|(_, t)| t.input.is_none() || t.input == next_letter)
        .filter(|(_, t)| t.matches(&config.store))
        .filter_map(|(i, t)| {
            let store = t.op.apply(&config.store).ok()?;
            let pos = config.pos + usize::from(t.input.is_some());
            Some((i, Configuration { state: t.to, pos, store }))
        })
        .collect()
}

/// Decides `input` from `(q0, input, Z[ε])`.
pub fn run(pda: &IterPda, input: &[Letter], limits: &RunLimits) -> RunOutcome {
    run_from(pda, input, Configuration::initial(pda), &Goal::EmptyStore, limits)
}

/// Breadth-first search from `start` until `goal` is reached, the frontier
/// empties, or the fuel runs out. Configurations are deduplicated exactly,
/// and the first goal configuration found yields a shortest trace.
pub fn run_from(
    pda: &IterPda,
    input: &[Letter],
    start: Configuration,
    goal: &Goal,
    limits: &RunLimits,
) -> RunOutcome {
    let mut seen: IndexSet<Configuration, FxBuildHasher> = IndexSet::default();
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    let done = |seen: &IndexSet<Configuration, FxBuildHasher>, parent: &[Option<(usize, usize)>], at: usize, expanded| {
        RunOutcome {
            verdict: Verdict::Accepted,
            trace: Some(rebuild(seen, parent, at)),
            expanded,
        }
    };

    if !limits.admits(&start.store) {
        return RunOutcome { verdict: Verdict::Rejected, trace: None, expanded: 0 };
    }
    let reached = goal.reached(&start, input.len());
    seen.insert(start);
    parent.push(None);
    if reached {
        return done(&seen, &parent, 0, 0);
    }

    let mut expanded = 0u64;
    let mut cursor = 0;
    while cursor < seen.len() {
        if expanded >= limits.fuel {
            return RunOutcome { verdict: Verdict::BudgetExhausted, trace: None, expanded };
        }
        expanded += 1;
        let successors = step(pda, input, &seen[cursor]);
        for (t, next) in successors {
            if !limits.admits(&next.store) {
                continue;
            }
            let reached = goal.reached(&next, input.len());
            let (index, fresh) = seen.insert_full(next);
            if fresh {
                parent.push(Some((cursor, t)));
                if reached {
                    return done(&seen, &parent, index, expanded);
                }
            }
        }
        cursor += 1;
    }
    RunOutcome { verdict: Verdict::Rejected, trace: None, expanded }
}

fn rebuild(
    seen: &IndexSet<Configuration, FxBuildHasher>,
    parent: &[Option<(usize, usize)>],
    mut at: usize,
) -> Trace {
    let mut configs = vec![seen[at].clone()];
    let mut transitions = Vec::new();
    while let Some((prev, t)) = parent[at] {
        configs.push(seen[prev].clone());
        transitions.push(t);
        at = prev;
    }
    configs.reverse();
    transitions.reverse();
    Trace { configs, transitions }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no accepting run found (verdict {0:?})")]
pub struct NoAcceptingRun(pub Verdict);

/// The accepting path found by [`run`], initial configuration first.
pub fn trace_accepting(
    pda: &IterPda,
    input: &[Letter],
    limits: &RunLimits,
) -> Result<Vec<Configuration>, NoAcceptingRun> {
    let outcome = run(pda, input, limits);
    match outcome.trace {
        Some(trace) => Ok(trace.configs),
        None => Err(NoAcceptingRun(outcome.verdict)),
    }
}
