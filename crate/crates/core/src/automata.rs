//! The two concrete 2-iterated automata: Fibonacci-length words `a^{f(n)}`
//! and contour words of balls in `{p,4}` / `{p+2,3}` tilings.
//!
//! Both automata guess a radius by growing the flag of `Z` with ε-moves, so
//! plain search never terminates on rejected words. The exact deciders here
//! bound that guess: the length of the input fixes the only useful flag
//! length, and everything longer is pruned.

use crate::fibonacci::{fib_index, first_index_above};
use crate::grammar::{level_length, ParamError};
use crate::pda::{IterPda, NamedOp, NamedTransition, Recognizer, RunLimits, Symbol, Verdict};
use crate::store::Store;

fn t(from: &str, input: Option<&str>, pattern: &[&str], to: &str, op: NamedOp) -> NamedTransition {
    NamedTransition::new(from, input, pattern, to, op)
}

/// The 2-iterated automaton accepting `{ a^{f(n)} }`.
pub fn fibonacci_automaton() -> IterPda {
    use NamedOp::Pop;
    let push = NamedOp::push;
    let rules = [
        t("q0", None, &["Z"], "q0", push(2, &["F"])),
        t("q0", None, &["Z"], "q0", push(1, &["X2"])),
        t("q0", None, &["Z", "F"], "q0", push(2, &["F", "F"])),
        t("q0", None, &["Z", "F"], "q0", push(1, &["X2"])),
        t("q0", None, &["X1", "F"], "q1", Pop(2)),
        t("q0", None, &["X2", "F"], "q2", Pop(2)),
        t("q0", Some("a"), &["X1"], "q0", Pop(1)),
        t("q0", Some("a"), &["X2"], "q0", Pop(1)),
        t("q1", None, &["X1", "F"], "q0", push(1, &["X1", "X2"])),
        t("q2", None, &["X2", "F"], "q0", push(1, &["X1"])),
        t("q1", None, &["X1"], "q0", push(1, &["X1", "X2"])),
        t("q2", None, &["X2"], "q0", push(1, &["X1"])),
    ];
    IterPda::new(2, &["q0", "q1", "q2"], &["a"], &["Z", "X1", "X2", "F"], ("q0", "Z"), &rules)
        .expect("the Fibonacci table is well formed")
}

/// Parameters of a contour automaton: the tree parameter `p` (white nodes
/// have `p - 2` children) and the number of sectors around the central
/// tile, which is also the number of white roots pushed at the start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ContourParams {
    tree_p: usize,
    sectors: usize,
}

impl ContourParams {
    pub fn new(tree_p: usize, sectors: usize) -> Result<Self, ParamError> {
        if tree_p < 5 {
            return Err(ParamError::TreeTooSmall(tree_p));
        }
        if sectors < 3 {
            return Err(ParamError::TooFewSectors(sectors));
        }
        Ok(ContourParams { tree_p, sectors })
    }

    /// `{5,4}`
    pub fn pentagrid() -> Self {
        ContourParams { tree_p: 5, sectors: 5 }
    }

    /// `{7,3}`
    pub fn heptagrid() -> Self {
        ContourParams { tree_p: 5, sectors: 7 }
    }

    /// `{p,4}` for `p >= 5` and `{p,3}` for `p >= 7`: both are spanned by
    /// the trees of parameter `p` and `p - 2` respectively, one per side of
    /// the central tile.
    pub fn for_tiling(p: usize, q: usize) -> Result<Self, ParamError> {
        match q {
            4 => ContourParams::new(p, p),
            3 => ContourParams::new(p.saturating_sub(2), p),
            _ => Err(ParamError::UnsupportedTiling { p, q }),
        }
    }

    pub fn tree_p(&self) -> usize {
        self.tree_p
    }

    pub fn sectors(&self) -> usize {
        self.sectors
    }

    /// Letters in a contour word of radius index `n`.
    pub fn contour_length(&self, n: usize) -> Option<u64> {
        level_length(self.tree_p, n).ok()?.checked_mul(self.sectors as u64)
    }

    /// The unique `n` whose contour words have `len` letters.
    pub fn level_for_length(&self, len: usize) -> Option<usize> {
        let len = len as u64;
        (0..)
            .map_while(|n| self.contour_length(n).map(|l| (n, l)))
            .take_while(|&(_, l)| l <= len)
            .find(|&(_, l)| l == len)
            .map(|(n, _)| n)
    }
}

/// The contour-word automaton: `Z` guesses `n` into its flag, becomes
/// `sectors` white roots, and every node expands into its children until
/// the flags run out, at which point letters are read.
pub fn contour_automaton(cp: &ContourParams) -> IterPda {
    use NamedOp::Pop;
    let whites = |n: usize| vec!["W"; n];
    let roots = whites(cp.sectors);
    let white_children = [vec!["B"], whites(cp.tree_p - 3)].concat();
    let black_children = [vec!["B"], whites(cp.tree_p - 4)].concat();
    let push = NamedOp::push;
    let rules = [
        t("q0", None, &["Z"], "q0", push(2, &["F"])),
        t("q0", None, &["Z"], "q0", push(1, &roots)),
        t("q0", None, &["Z", "F"], "q0", push(2, &["F", "F"])),
        t("q0", None, &["Z", "F"], "q0", push(1, &roots)),
        t("q0", None, &["W", "F"], "q1", Pop(2)),
        t("q0", None, &["B", "F"], "q1", Pop(2)),
        t("q0", Some("b"), &["B"], "q0", Pop(1)),
        t("q0", Some("w"), &["W"], "q0", Pop(1)),
        t("q1", None, &["W", "F"], "q0", push(1, &white_children)),
        t("q1", None, &["B", "F"], "q0", push(1, &black_children)),
        t("q1", None, &["W"], "q0", push(1, &white_children)),
        t("q1", None, &["B"], "q0", push(1, &black_children)),
    ];
    IterPda::new(2, &["q0", "q1"], &["b", "w"], &["Z", "B", "W", "F"], ("q0", "Z"), &rules)
        .expect("the contour table is well formed")
}

/// `Some(n)` with `n` smallest such that `m = f(n)`.
pub fn is_fibonacci(m: u64) -> Option<usize> {
    fib_index(u128::from(m))
}

/// `symbol[F^k]` over the automaton's stack alphabet (which must contain
/// `symbol` and `F`).
pub fn flagged(pda: &IterPda, symbol: &str, k: usize) -> Store<Symbol> {
    let f = pda.symbol("F").expect("automaton has an F symbol");
    let s = pda.symbol(symbol).expect("symbol is in the stack alphabet");
    let flag = Store::from_entries((0..k).map(|_| (f, Store::empty())));
    Store::cons(s, flag, Store::empty())
}

/// Limits for the exact deciders: unbounded fuel, flags capped at `cap`.
/// The capped configuration graphs are finite, so the search terminates.
pub fn exact_limits(cap: usize) -> RunLimits {
    RunLimits { fuel: u64::MAX, store_cap: None, flag_cap: Some(cap) }
}

/// Flag cap for `a^m`: a run that turns `Z[F^k]` into `X2[F^k]` consumes
/// exactly `f(k)` letters, so guesses with `f(k) > m` cannot succeed.
pub fn fibonacci_flag_cap(m: u64) -> usize {
    first_index_above(u128::from(m))
}

/// Terminating membership test for `a^m`.
pub fn accepts_fibonacci_exact(m: u64) -> Verdict {
    let pda = fibonacci_automaton();
    let a = pda.letter("a").expect("letter a");
    let mut r = Recognizer::new(&pda, exact_limits(fibonacci_flag_cap(m)));
    for _ in 0..m {
        if r.is_dead() {
            break;
        }
        r.feed(a);
    }
    if r.is_dead() {
        Verdict::Rejected
    } else {
        r.verdict()
    }
}

/// Letters of a `{b, w}` word, or `None` if another character occurs.
pub fn contour_letters(pda: &IterPda, word: &str) -> Option<Vec<crate::pda::Letter>> {
    let (b, w) = (pda.letter("b")?, pda.letter("w")?);
    word.chars()
        .map(|c| match c {
            'b' => Some(b),
            'w' => Some(w),
            _ => None,
        })
        .collect()
}

/// Terminating membership test for contour words. The word length fixes
/// the radius, which caps the guessed flag.
pub fn accepts_contour_exact(cp: &ContourParams, word: &str) -> Verdict {
    let Some(n) = cp.level_for_length(word.chars().count()) else {
        return Verdict::Rejected;
    };
    let pda = contour_automaton(cp);
    let Some(letters) = contour_letters(&pda, word) else {
        return Verdict::Rejected;
    };
    Recognizer::new(&pda, exact_limits(n)).decide(&letters)
}
