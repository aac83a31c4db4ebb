//! Iterated pushdown stores and automata, with the automata, tree grammars
//! and word recurrences of Fibonacci-tree tilings of the hyperbolic plane.

pub mod automata;
pub mod disc;
pub mod fibonacci;
pub mod grammar;
pub mod pda;
pub mod recurrence;
pub mod store;
pub mod verify;
pub mod word;
pub mod zeckendorf;

pub use automata::{contour_automaton, fibonacci_automaton, ContourParams};
pub use disc::{generate_tiles, DiscError, DiscPoint, SvgOptions, Tile, Tiling};
pub use grammar::{contour_word, expand_level, level_counts, Grammar, ParamError, Preset};
pub use pda::{Configuration, DefinitionError, IterPda, ParseError, RunLimits, Verdict};
pub use recurrence::{Family, LazyRecurrence, RecurrencePair};
pub use store::{Store, StoreError};
pub use word::{ColorWord, NodeColor};
pub use zeckendorf::{ZeckendorfCode, ZeckendorfError};
