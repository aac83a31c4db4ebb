//! Words over the node colors `B` and `W`, packed one bit per letter.
//!
//! Level words and recurrence words reach hundreds of millions of letters,
//! so they are stored as bit vectors (`1` = black).

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeColor {
    Black,
    White,
}

impl NodeColor {
    pub fn letter(self) -> char {
        match self {
            NodeColor::Black => 'B',
            NodeColor::White => 'W',
        }
    }

    /// The input letter reading this color on a contour.
    pub fn input_letter(self) -> char {
        self.letter().to_ascii_lowercase()
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'B' | 'b' => Some(NodeColor::Black),
            'W' | 'w' => Some(NodeColor::White),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            NodeColor::Black => NodeColor::White,
            NodeColor::White => NodeColor::Black,
        }
    }

    fn bit(self) -> bool {
        self == NodeColor::Black
    }

    fn from_bit(bit: bool) -> Self {
        if bit {
            NodeColor::Black
        } else {
            NodeColor::White
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a node color")]
pub struct BadColor(pub char);

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ColorWord {
    bits: BitVec<u64, Lsb0>,
}

impl ColorWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(letters: usize) -> Self {
        ColorWord { bits: BitVec::with_capacity(letters) }
    }

    pub fn single(color: NodeColor) -> Self {
        let mut w = Self::with_capacity(1);
        w.push(color);
        w
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<NodeColor> {
        self.bits.get(index).map(|b| NodeColor::from_bit(*b))
    }

    pub fn set(&mut self, index: usize, color: NodeColor) {
        self.bits.set(index, color.bit());
    }

    pub fn push(&mut self, color: NodeColor) {
        self.bits.push(color.bit());
    }

    pub fn append(&mut self, other: &ColorWord) {
        self.bits.extend_from_bitslice(&other.bits);
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a ColorWord>) -> ColorWord {
        let parts: Vec<&ColorWord> = parts.into_iter().collect();
        let mut out = Self::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            out.append(p);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeColor> + '_ {
        self.bits.iter().by_vals().map(NodeColor::from_bit)
    }

    /// `(black, white)` letter counts.
    pub fn counts(&self) -> (u64, u64) {
        let black = self.bits.count_ones() as u64;
        (black, self.len() as u64 - black)
    }

    pub fn is_prefix_of(&self, other: &ColorWord) -> bool {
        other.bits.starts_with(&self.bits)
    }

    pub fn is_suffix_of(&self, other: &ColorWord) -> bool {
        other.bits.ends_with(&self.bits)
    }

    /// Lowercase `b`/`w` letters.
    pub fn to_input_string(&self) -> String {
        self.iter().map(NodeColor::input_letter).collect()
    }
}

impl fmt::Display for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(NodeColor::letter).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 64 {
            write!(f, "ColorWord({self})")
        } else {
            write!(f, "ColorWord(len {})", self.len())
        }
    }
}

impl FromStr for ColorWord {
    type Err = BadColor;

    /// Accepts `B`/`W` in either case.
    fn from_str(s: &str) -> Result<Self, BadColor> {
        s.chars()
            .map(|c| NodeColor::from_letter(c).ok_or(BadColor(c)))
            .collect()
    }
}

impl FromIterator<NodeColor> for ColorWord {
    fn from_iter<I: IntoIterator<Item = NodeColor>>(iter: I) -> Self {
        ColorWord { bits: iter.into_iter().map(NodeColor::bit).collect() }
    }
}
