//! Iterated pushdown stores.
//!
//! A level-(k+1) store is a sequence of entries `A[flag]` where `A` is a
//! stack symbol and `flag` is a level-k store. Only the leftmost chain
//! (the first entry, the first entry of its flag, and so on) is visible:
//! [`Store::topsym`] reads it, and [`Store::pop`] / [`Store::push`] rewrite
//! it at a chosen level.
//!
//! Stores are persistent values. Every operation returns a new store and
//! shares the untouched tail with its input, so cloning is O(1) and a store
//! can be handed to many search branches at once.

use std::fmt;
use std::hash::{BuildHasher, Hash, Hasher};
use std::sync::Arc;

use rustc_hash::FxBuildHasher;
use thiserror::Error;

const EMPTY_HASH: u64 = 0x9e37_79b9_7f4a_7c15;

/// Failure of a store operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("pop{level} is undefined: it reaches an empty store")]
    UndefinedPop { level: usize },
    #[error("push{level} is undefined on this store")]
    UndefinedPush { level: usize },
    #[error("push needs a non-empty word")]
    EmptyWord,
    #[error("store levels are numbered from 1")]
    ZeroLevel,
}

/// An iterated pushdown store over symbols `S`. The empty store is ε.
pub struct Store<S> {
    head: Option<Arc<Entry<S>>>,
}

struct Entry<S> {
    symbol: S,
    flag: Store<S>,
    rest: Store<S>,
    hash: u64,
    // number of entries in this sequence, this one included
    len: usize,
    // entries at every level
    size: usize,
    depth: usize,
    // longest inner sequence anywhere below this entry
    widest_flag: usize,
}

impl<S> Store<S> {
    pub const fn empty() -> Self {
        Store { head: None }
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_none()
    }

    /// Number of entries at the outermost level.
    pub fn len(&self) -> usize {
        self.head.as_ref().map_or(0, |e| e.len)
    }

    /// Number of entries at all levels.
    pub fn size(&self) -> usize {
        self.head.as_ref().map_or(0, |e| e.size)
    }

    /// 0 for ε, otherwise one more than the deepest flag.
    pub fn depth(&self) -> usize {
        self.head.as_ref().map_or(0, |e| e.depth)
    }

    /// Length of the longest inner store (any flag, at any level).
    pub fn widest_flag(&self) -> usize {
        self.head.as_ref().map_or(0, |e| e.widest_flag)
    }

    /// First entry as `(symbol, flag)`.
    pub fn top(&self) -> Option<(&S, &Store<S>)> {
        self.head.as_deref().map(|e| (&e.symbol, &e.flag))
    }

    /// The store below the first entry.
    pub fn rest(&self) -> Option<&Store<S>> {
        self.head.as_deref().map(|e| &e.rest)
    }

    pub fn entries(&self) -> Entries<'_, S> {
        Entries { next: self.head.as_deref() }
    }

    /// Symbols along the leftmost chain, outermost first.
    pub fn top_chain(&self) -> TopChain<'_, S> {
        TopChain { next: self.head.as_deref() }
    }

    fn ptr_eq(&self, other: &Self) -> bool {
        match (&self.head, &other.head) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            (None, None) => true,
            _ => false,
        }
    }

    fn cached_hash(&self) -> u64 {
        self.head.as_ref().map_or(EMPTY_HASH, |e| e.hash)
    }
}

impl<S: Hash> Store<S> {
    /// `symbol[flag].rest`
    pub fn cons(symbol: S, flag: Store<S>, rest: Store<S>) -> Self {
        let mut h = FxBuildHasher.build_hasher();
        symbol.hash(&mut h);
        h.write_u64(flag.cached_hash());
        h.write_u64(rest.cached_hash().rotate_left(29));
        let entry = Entry {
            hash: h.finish(),
            len: 1 + rest.len(),
            size: 1 + flag.size() + rest.size(),
            depth: (1 + flag.depth()).max(rest.depth()),
            widest_flag: flag.len().max(flag.widest_flag()).max(rest.widest_flag()),
            symbol,
            flag,
            rest,
        };
        Store { head: Some(Arc::new(entry)) }
    }

    /// `symbol[ε]`
    pub fn leaf(symbol: S) -> Self {
        Store::cons(symbol, Store::empty(), Store::empty())
    }

    /// Builds `A1[f1].A2[f2]...` from its entries.
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Store<S>)>,
        I::IntoIter: DoubleEndedIterator,
    {
        entries
            .into_iter()
            .rev()
            .fold(Store::empty(), |rest, (symbol, flag)| Store::cons(symbol, flag, rest))
    }
}

impl<S: Clone + Hash> Store<S> {
    /// The word read down the leftmost chain.
    pub fn topsym(&self) -> Vec<S> {
        self.top_chain().cloned().collect()
    }

    /// `pop_1` drops the first entry with its whole flag; `pop_{j+1}` pops
    /// the flag of the first entry at level `j`.
    pub fn pop(&self, level: usize) -> Result<Store<S>, StoreError> {
        if level == 0 {
            return Err(StoreError::ZeroLevel);
        }
        self.pop_at(level, level)
    }

    fn pop_at(&self, level: usize, requested: usize) -> Result<Store<S>, StoreError> {
        let entry = self
            .head
            .as_deref()
            .ok_or(StoreError::UndefinedPop { level: requested })?;
        if level == 1 {
            return Ok(entry.rest.clone());
        }
        let flag = entry.flag.pop_at(level - 1, requested)?;
        Ok(Store::cons(entry.symbol.clone(), flag, entry.rest.clone()))
    }

    /// `push_1(w)` replaces the first entry `A[flag]` with
    /// `w1[flag]...wm[flag]`; on ε it only accepts a single letter.
    /// `push_{j+1}(w)` pushes into the flag of the first entry at level `j`.
    pub fn push(&self, level: usize, word: &[S]) -> Result<Store<S>, StoreError> {
        if level == 0 {
            return Err(StoreError::ZeroLevel);
        }
        if word.is_empty() {
            return Err(StoreError::EmptyWord);
        }
        self.push_at(level, word, level)
    }

    fn push_at(&self, level: usize, word: &[S], requested: usize) -> Result<Store<S>, StoreError> {
        match (self.head.as_deref(), level) {
            (None, 1) if word.len() == 1 => Ok(Store::leaf(word[0].clone())),
            (None, _) => Err(StoreError::UndefinedPush { level: requested }),
            (Some(entry), 1) => Ok(word.iter().rev().fold(entry.rest.clone(), |rest, symbol| {
                Store::cons(symbol.clone(), entry.flag.clone(), rest)
            })),
            (Some(entry), _) => {
                let flag = entry.flag.push_at(level - 1, word, requested)?;
                Ok(Store::cons(entry.symbol.clone(), flag, entry.rest.clone()))
            }
        }
    }

    /// Relabels every symbol.
    pub fn map<T: Hash, F: FnMut(&S) -> T>(&self, f: &mut F) -> Store<T> {
        let entries: Vec<_> = self.entries().map(|(s, flag)| (f(s), flag.map(f))).collect();
        Store::from_entries(entries)
    }
}

impl<S> Clone for Store<S> {
    fn clone(&self) -> Self {
        Store { head: self.head.clone() }
    }
}

impl<S> Default for Store<S> {
    fn default() -> Self {
        Store::empty()
    }
}

impl<S> Drop for Store<S> {
    // Long sequences would otherwise be freed recursively.
    fn drop(&mut self) {
        let mut next = self.head.take();
        while let Some(node) = next {
            match Arc::try_unwrap(node) {
                Ok(mut entry) => next = entry.rest.head.take(),
                Err(_) => break,
            }
        }
    }
}

impl<S: PartialEq> PartialEq for Store<S> {
    fn eq(&self, other: &Self) -> bool {
        let (mut a, mut b) = (self, other);
        loop {
            if a.ptr_eq(b) {
                return true;
            }
            match (a.head.as_deref(), b.head.as_deref()) {
                (Some(x), Some(y)) => {
                    if x.hash != y.hash || x.len != y.len || x.symbol != y.symbol || x.flag != y.flag {
                        return false;
                    }
                    a = &x.rest;
                    b = &y.rest;
                }
                _ => return false,
            }
        }
    }
}

impl<S: Eq> Eq for Store<S> {}

impl<S> Hash for Store<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.cached_hash());
    }
}

/// Renders `ε` for the empty store and `A[...]` entries joined by `.`,
/// e.g. `X1[F[]].X2[F[]]`.
impl<S: fmt::Display> fmt::Display for Store<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        write_entries(self, f, |s, f| write!(f, "{s}"))
    }
}

fn write_entries<S>(
    store: &Store<S>,
    f: &mut fmt::Formatter<'_>,
    symbol: fn(&S, &mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    for (i, (s, flag)) in store.entries().enumerate() {
        if i > 0 {
            f.write_str(".")?;
        }
        symbol(s, f)?;
        f.write_str("[")?;
        write_entries(flag, f, symbol)?;
        f.write_str("]")?;
    }
    Ok(())
}

impl<S: fmt::Debug> fmt::Debug for Store<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Store(")?;
        write_entries(self, f, |s, f| write!(f, "{s:?}"))?;
        f.write_str(")")
    }
}

pub struct Entries<'a, S> {
    next: Option<&'a Entry<S>>,
}

impl<'a, S> Iterator for Entries<'a, S> {
    type Item = (&'a S, &'a Store<S>);

    fn next(&mut self) -> Option<Self::Item> {
        let entry = self.next?;
        self.next = entry.rest.head.as_deref();
        Some((&entry.symbol, &entry.flag))
    }
}

pub struct TopChain<'a, S> {
    next: Option<&'a Entry<S>>,
}

impl<'a, S> Iterator for TopChain<'a, S> {
    type Item = &'a S;

    fn next(&mut self) -> Option<&'a S> {
        let entry = self.next?;
        self.next = entry.flag.head.as_deref();
        Some(&entry.symbol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = Store<&'static str>;

    fn leaf(s: &'static str) -> S {
        Store::leaf(s)
    }

    /// `symbol[F^k]`
    fn with_fs(symbol: &'static str, k: usize) -> S {
        Store::cons(symbol, Store::from_entries((0..k).map(|_| ("F", S::empty()))), S::empty())
    }

    #[test]
    fn topsym_examples() {
        assert!(S::empty().topsym().is_empty());
        assert_eq!(leaf("Z").topsym(), vec!["Z"]);
        assert_eq!(with_fs("Z", 2).topsym(), vec!["Z", "F"]);
    }

    #[test]
    fn pop_examples() {
        let two = Store::from_entries([("X1", S::empty()), ("X2", S::empty())]);
        assert_eq!(two.pop(1).unwrap(), leaf("X2"));
        assert_eq!(with_fs("X2", 2).pop(2).unwrap(), with_fs("X2", 1));
        assert_eq!(leaf("X1").pop(2), Err(StoreError::UndefinedPop { level: 2 }));
        assert_eq!(S::empty().pop(1), Err(StoreError::UndefinedPop { level: 1 }));
        assert_eq!(leaf("X1").pop(0), Err(StoreError::ZeroLevel));
    }

    #[test]
    fn push_examples() {
        assert_eq!(leaf("Z").push(2, &["F"]).unwrap(), with_fs("Z", 1));
        let s = Store::cons("X1", leaf("F"), leaf("W"));
        let pushed = s.push(1, &["X1", "X2"]).unwrap();
        assert_eq!(pushed.to_string(), "X1[F[]].X2[F[]].W[]");
        assert_eq!(S::empty().push(1, &["Z"]).unwrap(), leaf("Z"));
    }

    #[test]
    fn push_errors() {
        assert_eq!(S::empty().push(2, &["F"]), Err(StoreError::UndefinedPush { level: 2 }));
        assert_eq!(S::empty().push(1, &["A", "B"]), Err(StoreError::UndefinedPush { level: 1 }));
        // level 2 on a store whose flag is empty is fine for one letter...
        assert!(leaf("Z").push(2, &["F"]).is_ok());
        // ...but not for two, and level 3 needs a nonempty flag.
        assert_eq!(leaf("Z").push(2, &["F", "F"]), Err(StoreError::UndefinedPush { level: 2 }));
        assert_eq!(leaf("Z").push(3, &["F"]), Err(StoreError::UndefinedPush { level: 3 }));
        assert_eq!(leaf("Z").push(1, &[]), Err(StoreError::EmptyWord));
    }

    #[test]
    fn guessing_phase_grows_the_flag() {
        // Z[ε] -push2(F)-> Z[F] -push2(FF)-> Z[F.F] -push2(FF)-> Z[F.F.F]
        let mut s = leaf("Z").push(2, &["F"]).unwrap();
        for k in 2..6 {
            s = s.push(2, &["F", "F"]).unwrap();
            assert_eq!(s, with_fs("Z", k));
        }
    }

    #[test]
    fn measures() {
        let s = Store::from_entries([("X1", with_fs("F", 3).pop(2).unwrap()), ("X2", S::empty())]);
        assert_eq!(S::empty().depth(), 0);
        assert_eq!(leaf("Z").depth(), 1);
        assert_eq!(with_fs("Z", 3).depth(), 2);
        assert_eq!(with_fs("Z", 3).size(), 4);
        assert_eq!(with_fs("Z", 3).widest_flag(), 3);
        assert_eq!(s.len(), 2);
        assert_eq!(s.widest_flag(), 2);
    }

    #[test]
    fn display_format() {
        assert_eq!(S::empty().to_string(), "ε");
        assert_eq!(leaf("Z").to_string(), "Z[]");
        assert_eq!(with_fs("X2", 2).to_string(), "X2[F[].F[]]");
    }

    #[test]
    fn long_stores_drop_without_recursion() {
        let mut s = S::empty();
        for _ in 0..200_000 {
            s = Store::cons("A", S::empty(), s);
        }
        assert_eq!(s.len(), 200_000);
        let t = s.clone();
        assert_eq!(s, t);
        drop(s);
        drop(t);
    }

    #[test]
    fn structurally_equal_stores_hash_equal() {
        use std::collections::hash_map::DefaultHasher;
        let a = with_fs("Z", 4);
        let b = leaf("Z").push(2, &["F"]).unwrap().push(2, &["F", "F"]).unwrap();
        let b = b.push(2, &["F", "F"]).unwrap().push(2, &["F", "F"]).unwrap();
        assert_eq!(a, b);
        let hash = |s: &S| {
            let mut h = DefaultHasher::new();
            s.hash(&mut h);
            h.finish()
        };
        assert_eq!(hash(&a), hash(&b));
        assert_ne!(a, with_fs("Z", 3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const SYMBOLS: [&str; 4] = ["A", "B", "C", "F"];

        fn symbol() -> impl Strategy<Value = &'static str> {
            prop::sample::select(&SYMBOLS[..])
        }

        fn store(levels: u32) -> BoxedStrategy<S> {
            if levels == 0 {
                return Just(S::empty()).boxed();
            }
            prop::collection::vec((symbol(), store(levels - 1)), 0..4)
                .prop_map(Store::from_entries)
                .boxed()
        }

        fn nonempty(levels: u32) -> impl Strategy<Value = S> {
            store(levels).prop_filter("nonempty", |s| !s.is_empty())
        }

        fn word() -> impl Strategy<Value = Vec<&'static str>> {
            prop::collection::vec(symbol(), 1..4)
        }

        proptest! {
            #[test]
            fn pop1_exposes_the_remainder(s in nonempty(3)) {
                let popped = s.pop(1).unwrap();
                prop_assert_eq!(popped.topsym(), s.rest().unwrap().topsym());
                prop_assert_eq!(popped.len(), s.len() - 1);
            }

            #[test]
            fn push1_duplicates_the_top_flag(s in nonempty(3), w in word()) {
                let (_, flag) = s.top().unwrap();
                let pushed = s.push(1, &w).unwrap();
                prop_assert_eq!(pushed.len(), w.len() + s.len() - 1);
                for (i, (sym, f)) in pushed.entries().enumerate() {
                    if i < w.len() {
                        prop_assert_eq!(*sym, w[i]);
                        prop_assert_eq!(f, flag);
                    }
                }
                let tail: Vec<_> = pushed.entries().skip(w.len()).collect();
                let old_tail: Vec<_> = s.entries().skip(1).collect();
                prop_assert_eq!(tail, old_tail);
            }

            #[test]
            fn inner_ops_touch_only_the_top_flag(s in nonempty(3), w in word(), j in 2usize..4) {
                let results = [s.pop(j).ok(), s.push(j, &w).ok()];
                for t in results.into_iter().flatten() {
                    prop_assert_eq!(t.top().unwrap().0, s.top().unwrap().0);
                    prop_assert_eq!(t.rest().unwrap(), s.rest().unwrap());
                }
            }

            #[test]
            fn push_then_pop_is_identity(s in nonempty(3), g in symbol()) {
                prop_assert_eq!(s.push(1, &[g, s.topsym()[0]]).unwrap().pop(1).unwrap(), s.clone());
                let (_, flag) = s.top().unwrap();
                if let Some(&inner) = flag.topsym().first() {
                    prop_assert_eq!(s.push(2, &[g, inner]).unwrap().pop(2).unwrap(), s);
                }
            }

            #[test]
            fn depth_stays_within_level(s in store(3), ops in prop::collection::vec((any::<bool>(), 1usize..4, word()), 0..12)) {
                let mut cur = s;
                for (is_pop, j, w) in ops {
                    let next = if is_pop { cur.pop(j) } else { cur.push(j, &w) };
                    if let Ok(n) = next {
                        cur = n;
                    }
                    prop_assert!(cur.depth() <= 3);
                }
            }

            #[test]
            fn inputs_are_never_mutated(s in nonempty(3), w in word(), j in 1usize..4) {
                let before = s.to_string();
                let _ = s.push(j, &w);
                let _ = s.pop(j);
                prop_assert_eq!(s.to_string(), before);
            }
        }
    }
}
