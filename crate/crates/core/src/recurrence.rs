//! The word pairs read on the leaves of growing Fibonacci trees.
//!
//! * `UW`: `w(n+1) = u(n) w(n) w(n)`, `u(n+1) = u(n) w(n)`, from `u(0) = B`, `w(0) = W`.
//! * `XY`: `y(n+1) = y(n) x(n) y(n)`, `x(n+1) = x(n) y(n)`, from `x(0) = B`, `y(0) = W`.
//!
//! Both families have `|first(n)| = f(2n)` and `|second(n)| = f(2n+1)`.
//! Beyond a few dozen levels the words are too long to build, so
//! [`LazyRecurrence`] answers letter queries from the lengths alone.

use thiserror::Error;

use crate::word::{ColorWord, NodeColor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Uw,
    Xy,
}

/// Which word of a pair: `u`/`x` or `w`/`y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("level {0} is too large: word lengths overflow 128 bits")]
    TooLarge(usize),
    #[error("level {level} is outside the table (max {max})")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("growth ratio needs n >= 1")]
    ZeroIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrencePair {
    pub family: Family,
    pub n: usize,
    /// `u(n)` or `x(n)`
    pub first: ColorWord,
    /// `w(n)` or `y(n)`
    pub second: ColorWord,
}

impl RecurrencePair {
    pub fn initial(family: Family) -> Self {
        RecurrencePair {
            family,
            n: 0,
            first: ColorWord::single(NodeColor::Black),
            second: ColorWord::single(NodeColor::White),
        }
    }

    pub fn next(&self) -> Self {
        let (u, w) = (&self.first, &self.second);
        let second = match self.family {
            Family::Uw => ColorWord::concat([u, w, w]),
            Family::Xy => ColorWord::concat([w, u, w]),
        };
        RecurrencePair { family: self.family, n: self.n + 1, first: ColorWord::concat([u, w]), second }
    }

    pub fn get(&self, which: Component) -> &ColorWord {
        match which {
            Component::First => &self.first,
            Component::Second => &self.second,
        }
    }
}

pub fn pair(family: Family, n: usize) -> RecurrencePair {
    let mut p = RecurrencePair::initial(family);
    for _ in 0..n {
        p = p.next();
    }
    p
}

/// `(u(n), w(n))`
pub fn uw_pair(n: usize) -> RecurrencePair {
    pair(Family::Uw, n)
}

/// `(x(n), y(n))`
pub fn xy_pair(n: usize) -> RecurrencePair {
    pair(Family::Xy, n)
}

/// Letter queries on recurrence words without building them.
#[derive(Debug, Clone)]
pub struct LazyRecurrence {
    family: Family,
    // (|first(n)|, |second(n)|)
    lengths: Vec<(u128, u128)>,
}

impl LazyRecurrence {
    /// Table for levels `0..=max_level`.
    pub fn new(family: Family, max_level: usize) -> Result<Self, RecurrenceError> {
        let mut lengths = vec![(1u128, 1u128)];
        for level in 1..=max_level {
            let (f, s) = lengths[level - 1];
            let first = f.checked_add(s);
            let second = first.and_then(|x| x.checked_add(s));
            match (first, second) {
                (Some(first), Some(second)) => lengths.push((first, second)),
                _ => return Err(RecurrenceError::TooLarge(level)),
            }
        }
        Ok(LazyRecurrence { family, lengths })
    }

    pub fn max_level(&self) -> usize {
        self.lengths.len() - 1
    }

    fn check(&self, level: usize) -> Result<(), RecurrenceError> {
        if level > self.max_level() {
            Err(RecurrenceError::LevelOutOfRange { level, max: self.max_level() })
        } else {
            Ok(())
        }
    }

    pub fn len(&self, level: usize, which: Component) -> Result<u128, RecurrenceError> {
        self.check(level)?;
        let (f, s) = self.lengths[level];
        Ok(match which {
            Component::First => f,
            Component::Second => s,
        })
    }

    /// The letter at `index` of `first(level)` or `second(level)`, or
    /// `None` past the end.
    pub fn letter_at(
        &self,
        level: usize,
        which: Component,
        mut index: u128,
    ) -> Result<Option<NodeColor>, RecurrenceError> {
        if index >= self.len(level, which)? {
            return Ok(None);
        }
        let (mut level, mut which) = (level, which);
        while level > 0 {
            use Component::{First as U, Second as W};
            let parts: &[Component] = match (self.family, which) {
                (_, U) => &[U, W],
                (Family::Uw, W) => &[U, W, W],
                (Family::Xy, W) => &[W, U, W],
            };
            level -= 1;
            for &part in parts {
                let len = self.len(level, part)?;
                if index < len {
                    which = part;
                    break;
                }
                index -= len;
            }
        }
        Ok(Some(match which {
            Component::First => NodeColor::Black,
            Component::Second => NodeColor::White,
        }))
    }

    /// Letters around the separator of `second(level + 1)`: offset 0 is the
    /// first letter after `u(level)` in `u w w` (UW), or after the leading
    /// `y(level)` in `y x y` (XY). Negative offsets read leftwards.
    pub fn separator_letter(&self, level: usize, offset: i128) -> Result<Option<NodeColor>, RecurrenceError> {
        self.check(level + 1)?;
        let left = match self.family {
            Family::Uw => self.len(level, Component::First)?,
            Family::Xy => self.len(level, Component::Second)?,
        };
        let Some(index) = (left as i128).checked_add(offset).filter(|i| *i >= 0) else {
            return Ok(None);
        };
        self.letter_at(level + 1, Component::Second, index as u128)
    }
}

/// `|w(n+1)| / |w(n)|` as an exact fraction and a float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub numerator: u128,
    pub denominator: u128,
    pub ratio: f64,
}

pub fn growth_evidence(n: usize) -> Result<Growth, RecurrenceError> {
    if n == 0 {
        return Err(RecurrenceError::ZeroIndex);
    }
    let table = LazyRecurrence::new(Family::Uw, n + 1)?;
    let numerator = table.len(n + 1, Component::Second)?;
    let denominator = table.len(n, Component::Second)?;
    Ok(Growth { numerator, denominator, ratio: numerator as f64 / denominator as f64 })
}
