//! k-iterated pushdown automata.
//!
//! An [`IterPda`] reads its input left to right and rewrites an iterated
//! store whose leftmost chain must match the pattern of a transition exactly.
//! A word is accepted when some run reaches empty input with an empty store,
//! in any state. Runs are explored exhaustively under explicit budgets, see
//! [`run`] and [`Recognizer`].

mod dsl;
mod recognizer;
mod search;

use std::fmt;

use thiserror::Error;

use crate::store::{Store, StoreError};

pub use dsl::{parse_spec, parse_store, ParseError, ParseErrorKind};
pub use recognizer::Recognizer;
pub use search::{run, run_from, step, trace_accepting, Goal, NoAcceptingRun, RunLimits, RunOutcome, Trace, Verdict};

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(u32);

        impl $name {
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
    };
}

id_type!(
    /// Index into [`IterPda::states`].
    StateId
);
id_type!(
    /// Index into [`IterPda::input_alphabet`].
    Letter
);
id_type!(
    /// Index into [`IterPda::stack_alphabet`].
    Symbol
);

/// What a transition does to the store.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StackOp {
    Pop { level: usize },
    Push { level: usize, word: Vec<Symbol> },
}

impl StackOp {
    pub fn level(&self) -> usize {
        match self {
            StackOp::Pop { level } | StackOp::Push { level, .. } => *level,
        }
    }

    pub fn apply(&self, store: &Store<Symbol>) -> Result<Store<Symbol>, StoreError> {
        match self {
            StackOp::Pop { level } => store.pop(*level),
            StackOp::Push { level, word } => store.push(*level, word),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: StateId,
    /// `None` is an ε-move.
    pub input: Option<Letter>,
    /// Must equal `topsym` of the store.
    pub pattern: Vec<Symbol>,
    pub to: StateId,
    pub op: StackOp,
}

impl Transition {
    pub fn matches(&self, store: &Store<Symbol>) -> bool {
        store.top_chain().eq(self.pattern.iter())
    }
}

/// A transition written with names, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedTransition {
    pub from: String,
    pub input: Option<String>,
    pub pattern: Vec<String>,
    pub to: String,
    pub op: NamedOp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedOp {
    Pop(usize),
    Push(usize, Vec<String>),
}

impl NamedTransition {
    pub fn new(from: &str, input: Option<&str>, pattern: &[&str], to: &str, op: NamedOp) -> Self {
        NamedTransition {
            from: from.to_owned(),
            input: input.map(str::to_owned),
            pattern: pattern.iter().map(|s| (*s).to_owned()).collect(),
            to: to.to_owned(),
            op,
        }
    }
}

impl NamedOp {
    pub fn push(level: usize, word: &[&str]) -> Self {
        NamedOp::Push(level, word.iter().map(|s| (*s).to_owned()).collect())
    }
}

/// Reasons an automaton definition is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefinitionError {
    #[error("an automaton needs at least one store level")]
    ZeroLevels,
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("`{0}` is declared twice")]
    DuplicateName(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown input letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown stack symbol `{0}`")]
    UnknownSymbol(String),
    #[error("level {level} is outside 1..={levels}")]
    LevelOutOfRange { level: usize, levels: usize },
    #[error("pattern of length {len} cannot match a {levels}-level store")]
    PatternTooLong { len: usize, levels: usize },
    #[error("transition has an empty pattern")]
    EmptyPattern,
    #[error("push of the empty word")]
    EmptyPushWord,
    #[error("transition {0} duplicates an earlier one")]
    DuplicateTransition(usize),
    #[error("transition {index}: {source}")]
    InTransition {
        index: usize,
        #[source]
        source: Box<DefinitionError>,
    },
}

/// A k-iterated pushdown automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterPda {
    levels: usize,
    states: Vec<String>,
    input_alphabet: Vec<String>,
    stack_alphabet: Vec<String>,
    transitions: Vec<Transition>,
    initial_state: StateId,
    initial_symbol: Symbol,
    // transition indices grouped by source state
    by_state: Vec<Vec<usize>>,
}

pub(crate) const EPSILON: &str = "eps";

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn intern(names: &[&str], reserve_eps: bool) -> Result<Vec<String>, DefinitionError> {
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for &name in names {
        if !valid_name(name) || (reserve_eps && name == EPSILON) {
            return Err(DefinitionError::InvalidName(name.to_owned()));
        }
        if out.iter().any(|n| n == name) {
            return Err(DefinitionError::DuplicateName(name.to_owned()));
        }
        out.push(name.to_owned());
    }
    Ok(out)
}

fn lookup(names: &[String], name: &str) -> Option<u32> {
    names.iter().position(|n| n == name).map(|i| i as u32)
}

impl IterPda {
    /// Validates and builds an automaton from named parts.
    pub fn new(
        levels: usize,
        states: &[&str],
        input_alphabet: &[&str],
        stack_alphabet: &[&str],
        initial: (&str, &str),
        transitions: &[NamedTransition],
    ) -> Result<Self, DefinitionError> {
        if levels == 0 {
            return Err(DefinitionError::ZeroLevels);
        }
        let mut pda = IterPda {
            levels,
            states: intern(states, false)?,
            input_alphabet: intern(input_alphabet, true)?,
            stack_alphabet: intern(stack_alphabet, false)?,
            transitions: Vec::with_capacity(transitions.len()),
            initial_state: StateId(0),
            initial_symbol: Symbol(0),
            by_state: vec![Vec::new(); states.len()],
        };
        pda.initial_state = pda.require_state(initial.0)?;
        pda.initial_symbol = pda.require_symbol(initial.1)?;
        for (index, named) in transitions.iter().enumerate() {
            let t = pda.resolve(named).map_err(|e| DefinitionError::InTransition {
                index,
                source: Box::new(e),
            })?;
            if pda.transitions.contains(&t) {
                return Err(DefinitionError::DuplicateTransition(index));
            }
            pda.by_state[t.from.index()].push(pda.transitions.len());
            pda.transitions.push(t);
        }
        Ok(pda)
    }

    fn require_state(&self, name: &str) -> Result<StateId, DefinitionError> {
        self.state(name)
            .ok_or_else(|| DefinitionError::UnknownState(name.to_owned()))
    }

    fn require_symbol(&self, name: &str) -> Result<Symbol, DefinitionError> {
        self.symbol(name)
            .ok_or_else(|| DefinitionError::UnknownSymbol(name.to_owned()))
    }

    fn check_level(&self, level: usize) -> Result<usize, DefinitionError> {
        if (1..=self.levels).contains(&level) {
            Ok(level)
        } else {
            Err(DefinitionError::LevelOutOfRange { level, levels: self.levels })
        }
    }

    fn resolve(&self, named: &NamedTransition) -> Result<Transition, DefinitionError> {
        let from = self.require_state(&named.from)?;
        let to = self.require_state(&named.to)?;
        let input = match &named.input {
            None => None,
            Some(l) => Some(
                self.letter(l)
                    .ok_or_else(|| DefinitionError::UnknownLetter(l.clone()))?,
            ),
        };
        if named.pattern.is_empty() {
            return Err(DefinitionError::EmptyPattern);
        }
        if named.pattern.len() > self.levels {
            return Err(DefinitionError::PatternTooLong {
                len: named.pattern.len(),
                levels: self.levels,
            });
        }
        let pattern = named
            .pattern
            .iter()
            .map(|s| self.require_symbol(s))
            .collect::<Result<Vec<_>, _>>()?;
        let op = match &named.op {
            NamedOp::Pop(level) => StackOp::Pop { level: self.check_level(*level)? },
            NamedOp::Push(level, word) => {
                let level = self.check_level(*level)?;
                if word.is_empty() {
                    return Err(DefinitionError::EmptyPushWord);
                }
                let word = word
                    .iter()
                    .map(|s| self.require_symbol(s))
                    .collect::<Result<Vec<_>, _>>()?;
                StackOp::Push { level, word }
            }
        };
        Ok(Transition { from, input, pattern, to, op })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn input_alphabet(&self) -> &[String] {
        &self.input_alphabet
    }

    pub fn stack_alphabet(&self) -> &[String] {
        &self.stack_alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Number of distinct `(state, input, pattern)` left-hand sides; a rule
    /// with several alternatives counts once.
    pub fn rule_count(&self) -> usize {
        let mut keys: Vec<_> = self
            .transitions
            .iter()
            .map(|t| (t.from, t.input, &t.pattern))
            .collect();
        keys.sort();
        keys.dedup();
        keys.len()
    }

    pub fn initial_state(&self) -> StateId {
        self.initial_state
    }

    pub fn initial_symbol(&self) -> Symbol {
        self.initial_symbol
    }

    /// `Z[ε]`
    pub fn initial_store(&self) -> Store<Symbol> {
        Store::leaf(self.initial_symbol)
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        lookup(&self.states, name).map(StateId)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        lookup(&self.input_alphabet, name).map(Letter)
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        lookup(&self.stack_alphabet, name).map(Symbol)
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id.index()]
    }

    pub fn letter_name(&self, id: Letter) -> &str {
        &self.input_alphabet[id.index()]
    }

    pub fn symbol_name(&self, id: Symbol) -> &str {
        &self.stack_alphabet[id.index()]
    }

    /// Transitions leaving `state`, in definition order.
    pub fn transitions_from(&self, state: StateId) -> impl Iterator<Item = (usize, &Transition)> {
        self.by_state[state.index()]
            .iter()
            .map(move |&i| (i, &self.transitions[i]))
    }

    /// Splits a word into letters. Words containing `,` or whitespace are
    /// split on those; otherwise each character is one letter. `eps` and
    /// the empty string are the empty word.
    pub fn parse_word(&self, word: &str) -> Result<Vec<Letter>, DefinitionError> {
        let word = word.trim();
        if word.is_empty() || word == EPSILON {
            return Ok(Vec::new());
        }
        let resolve = |t: &str| {
            self.letter(t)
                .ok_or_else(|| DefinitionError::UnknownLetter(t.to_owned()))
        };
        if word.contains(|c: char| c == ',' || c.is_whitespace()) {
            word.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(resolve)
                .collect()
        } else {
            let mut buf = [0u8; 4];
            word.chars().map(|c| resolve(c.encode_utf8(&mut buf))).collect()
        }
    }

    /// Renders a store with symbol names.
    pub fn render_store(&self, store: &Store<Symbol>) -> String {
        store.map(&mut |s: &Symbol| self.symbol_name(*s).to_owned()).to_string()
    }

    pub fn render_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_owned();
        }
        let single = self.input_alphabet.iter().all(|l| l.chars().count() == 1);
        let names: Vec<&str> = word.iter().map(|l| self.letter_name(*l)).collect();
        names.join(if single { "" } else { "," })
    }

    /// Transition `index` as a definition line, e.g. `q0 a X1 -> q0 pop1`.
    pub fn transition_text(&self, index: usize) -> Option<String> {
        let t = self.transitions.get(index)?;
        Some(dsl::transition_columns(self, t).join(" "))
    }

    /// The canonical definition text; [`parse_spec`] reads it back.
    pub fn to_spec(&self) -> String {
        dsl::write_spec(self)
    }
}

/// `(state, remaining input, store)`, with the remaining input given as an
/// offset into the word being read.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub pos: usize,
    pub store: Store<Symbol>,
}

impl Configuration {
    pub fn initial(pda: &IterPda) -> Self {
        Configuration { state: pda.initial_state(), pos: 0, store: pda.initial_store() }
    }

    pub fn remaining<'a>(&self, input: &'a [Letter]) -> &'a [Letter] {
        &input[self.pos..]
    }

    pub fn display<'a>(&'a self, pda: &'a IterPda, input: &'a [Letter]) -> impl fmt::Display + 'a {
        ConfigDisplay { config: self, pda, input }
    }
}

struct ConfigDisplay<'a> {
    config: &'a Configuration,
    pda: &'a IterPda,
    input: &'a [Letter],
}

impl fmt::Display for ConfigDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.pda.state_name(self.config.state),
            self.pda.render_word(self.config.remaining(self.input)),
            self.pda.render_store(&self.config.store)
        )
    }
}
