use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;

use super::{IterPda, Letter, RunLimits, StateId, Symbol, Verdict};
use crate::store::Store;

type Layer = IndexSet<(StateId, Store<Symbol>), FxBuildHasher>;

/// Online membership test that reads the input one letter at a time.
///
/// After `n` letters the recognizer holds every configuration reachable by
/// consuming exactly those letters (closed under ε-moves and deduplicated).
/// The input position never decreases along a run, so only the current
/// layer has to be kept: memory is bounded by the layer width instead of the
/// length of the input, and a clone is a snapshot that can be resumed with
/// a different suffix.
///
/// The verdicts agree with [`super::run`] whenever both finish within their
/// budgets; no trace is kept.
#[derive(Clone)]
pub struct Recognizer<'a> {
    pda: &'a IterPda,
    limits: RunLimits,
    layer: Layer,
    seeds: Vec<(StateId, Store<Symbol>)>,
    consumed: usize,
    expanded: u64,
    exhausted: bool,
}

impl<'a> Recognizer<'a> {
    pub fn new(pda: &'a IterPda, limits: RunLimits) -> Self {
        let mut r = Recognizer {
            pda,
            limits,
            layer: Layer::default(),
            seeds: Vec::new(),
            consumed: 0,
            expanded: 0,
            exhausted: false,
        };
        r.seeds.push((pda.initial_state(), pda.initial_store()));
        r.close();
        r
    }

    /// Letters read so far.
    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn expanded(&self) -> u64 {
        self.expanded
    }

    /// Number of live configurations at the current position.
    pub fn width(&self) -> usize {
        self.layer.len()
    }

    /// No configuration survives: every continuation is rejected.
    pub fn is_dead(&self) -> bool {
        self.layer.is_empty() && !self.exhausted
    }

    pub fn feed(&mut self, letter: Letter) {
        let mut seeds = std::mem::take(&mut self.seeds);
        seeds.clear();
        for (state, store) in &self.layer {
            for (_, t) in self.pda.transitions_from(*state) {
                if t.input == Some(letter) && t.matches(store) {
                    if let Ok(next) = t.op.apply(store) {
                        seeds.push((t.to, next));
                    }
                }
            }
        }
        self.seeds = seeds;
        self.consumed += 1;
        self.close();
    }

    pub fn feed_all(&mut self, word: &[Letter]) {
        for &letter in word {
            if self.is_dead() {
                self.consumed += 1;
                continue;
            }
            self.feed(letter);
        }
    }

    /// Verdict for the letters fed so far, taken as the whole input.
    pub fn verdict(&self) -> Verdict {
        if self.layer.iter().any(|(_, store)| store.is_empty()) {
            Verdict::Accepted
        } else if self.exhausted {
            Verdict::BudgetExhausted
        } else {
            Verdict::Rejected
        }
    }

    /// Feeds `word` and returns the verdict.
    pub fn decide(mut self, word: &[Letter]) -> Verdict {
        self.feed_all(word);
        self.verdict()
    }

    fn close(&mut self) {
        self.layer.clear();
        for (state, store) in self.seeds.drain(..) {
            if self.limits.admits(&store) {
                self.layer.insert((state, store));
            }
        }
        let mut cursor = 0;
        while cursor < self.layer.len() {
            if self.expanded >= self.limits.fuel {
                self.exhausted = true;
                return;
            }
            self.expanded += 1;
            let (state, store) = self.layer[cursor].clone();
            for (_, t) in self.pda.transitions_from(state) {
                if t.input.is_none() && t.matches(&store) {
                    if let Ok(next) = t.op.apply(&store) {
                        if self.limits.admits(&next) {
                            self.layer.insert((t.to, next));
                        }
                    }
                }
            }
            cursor += 1;
        }
    }
}
