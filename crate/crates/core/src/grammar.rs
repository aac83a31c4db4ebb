//! Substitution grammars for the trees spanning one sector of a `{p,4}` or
//! `{p+2,3}` tiling.
//!
//! A white node has `p - 2` children and a black node `p - 3`; in both cases
//! exactly one child is black. The rule variant is the position of that
//! black child. For `p = 5` the canonical rules are `W -> BWW` and
//! `B -> BW`, the Fibonacci tree.
//!
//! Level words are computed by substituting every letter of level `n` to get
//! level `n + 1`; trees are never materialized.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::word::{ColorWord, NodeColor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("tree parameter p = {0} must be at least 5")]
    TreeTooSmall(usize),
    #[error("{0} sectors: need at least 3")]
    TooFewSectors(usize),
    #[error("{color:?} variant {variant} out of range 0..={max}")]
    VariantOutOfRange { color: NodeColor, variant: usize, max: usize },
    #[error("{{{p},{q}}} is not a {{p,4}} or {{p,3}} tiling with a tree parameter of at least 5")]
    UnsupportedTiling { p: usize, q: usize },
    #[error("level {0} counts overflow 64 bits")]
    Overflow(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantMode {
    /// Every node uses the grammar's variants.
    Fixed,
    /// Every node draws its variant uniformly from a generator seeded here.
    PerNodeRandom { seed: u64 },
}

/// Named grammars: `G0`/`G1` (canonical pentagrid), `G2` (white rule
/// `W -> WBW`), `G3` (all variants mixed at random), and `Gp` for general
/// `p` with canonical rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    G0,
    G1,
    G2,
    G3 { seed: u64 },
    Gp { p: usize, sectors: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grammar {
    tree_p: usize,
    sectors: usize,
    white_variant: usize,
    black_variant: usize,
    mode: VariantMode,
}

impl Grammar {
    pub fn new(
        tree_p: usize,
        sectors: usize,
        white_variant: usize,
        black_variant: usize,
        mode: VariantMode,
    ) -> Result<Self, ParamError> {
        if tree_p < 5 {
            return Err(ParamError::TreeTooSmall(tree_p));
        }
        if sectors < 3 {
            return Err(ParamError::TooFewSectors(sectors));
        }
        let g = Grammar { tree_p, sectors, white_variant, black_variant, mode };
        for (color, variant) in [(NodeColor::White, white_variant), (NodeColor::Black, black_variant)] {
            let max = g.variant_count(color) - 1;
            if variant > max {
                return Err(ParamError::VariantOutOfRange { color, variant, max });
            }
        }
        Ok(g)
    }

    pub fn preset(preset: Preset) -> Result<Self, ParamError> {
        match preset {
            Preset::G0 | Preset::G1 => Grammar::new(5, 5, 0, 0, VariantMode::Fixed),
            Preset::G2 => Grammar::new(5, 5, 1, 0, VariantMode::Fixed),
            Preset::G3 { seed } => Grammar::new(5, 5, 0, 0, VariantMode::PerNodeRandom { seed }),
            Preset::Gp { p, sectors } => Grammar::new(p, sectors, 0, 0, VariantMode::Fixed),
        }
    }

    pub fn tree_p(&self) -> usize {
        self.tree_p
    }

    pub fn sectors(&self) -> usize {
        self.sectors
    }

    pub fn mode(&self) -> VariantMode {
        self.mode
    }

    pub fn arity(&self, color: NodeColor) -> usize {
        match color {
            NodeColor::White => self.tree_p - 2,
            NodeColor::Black => self.tree_p - 3,
        }
    }

    /// Number of rule variants for a color (positions of the black child).
    pub fn variant_count(&self, color: NodeColor) -> usize {
        self.arity(color) - 1
    }

    /// The fixed variant for `color`.
    pub fn variant(&self, color: NodeColor) -> usize {
        match color {
            NodeColor::White => self.white_variant,
            NodeColor::Black => self.black_variant,
        }
    }

    /// Children of a `color` node under the given variant.
    pub fn children(&self, color: NodeColor, variant: usize) -> ColorWord {
        (0..self.arity(color))
            .map(|i| if i == variant { NodeColor::Black } else { NodeColor::White })
            .collect()
    }

    fn expand_with(
        &self,
        root: NodeColor,
        levels: usize,
        choose: &mut impl FnMut(NodeColor) -> usize,
    ) -> ColorWord {
        let mut current = ColorWord::single(root);
        for _ in 0..levels {
            let estimate = current.len() * (self.tree_p - 2);
            let mut next = ColorWord::with_capacity(estimate);
            for color in current.iter() {
                let black_at = choose(color);
                for i in 0..self.arity(color) {
                    next.push(if i == black_at { NodeColor::Black } else { NodeColor::White });
                }
            }
            current = next;
        }
        current
    }
}

/// Level `level` of a tree rooted at a given color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelWord {
    pub level: usize,
    pub letters: ColorWord,
}

fn variant_chooser<'r>(g: &Grammar, rng: &'r mut ChaCha8Rng) -> impl FnMut(NodeColor) -> usize + 'r {
    let g = *g;
    move |color| match g.mode {
        VariantMode::Fixed => g.variant(color),
        VariantMode::PerNodeRandom { .. } => rng.gen_range(0..g.variant_count(color)),
    }
}

fn rng_for(g: &Grammar) -> ChaCha8Rng {
    match g.mode {
        VariantMode::Fixed => ChaCha8Rng::seed_from_u64(0),
        VariantMode::PerNodeRandom { seed } => ChaCha8Rng::seed_from_u64(seed),
    }
}

/// Colors of level `n` of the tree rooted at `root`, left to right.
pub fn expand_level(g: &Grammar, root: NodeColor, n: usize) -> LevelWord {
    let mut rng = rng_for(g);
    let letters = g.expand_with(root, n, &mut variant_chooser(g, &mut rng));
    LevelWord { level: n, letters }
}

/// The border of the ball of radius `n + 1` around the central tile: one
/// level-`n` word per sector. In random mode each sector is sampled
/// independently from the same generator.
pub fn contour_colors(g: &Grammar, n: usize) -> ColorWord {
    match g.mode {
        VariantMode::Fixed => {
            let sector = expand_level(g, NodeColor::White, n).letters;
            ColorWord::concat(std::iter::repeat(&sector).take(g.sectors))
        }
        VariantMode::PerNodeRandom { .. } => {
            let mut rng = rng_for(g);
            let mut choose = variant_chooser(g, &mut rng);
            let sectors: Vec<ColorWord> = (0..g.sectors)
                .map(|_| g.expand_with(NodeColor::White, n, &mut choose))
                .collect();
            ColorWord::concat(&sectors)
        }
    }
}

/// [`contour_colors`] spelled over the input alphabet `{b, w}`.
pub fn contour_word(g: &Grammar, n: usize) -> String {
    contour_colors(g, n).to_input_string()
}

/// `(black, white)` node counts on level `n` below a white root:
/// `B' = B + W`, `W' = (p-4) B + (p-3) W`.
pub fn level_counts(g: &Grammar, n: usize) -> Result<(u64, u64), ParamError> {
    level_counts_for(g.tree_p, n)
}

pub(crate) fn level_counts_for(tree_p: usize, n: usize) -> Result<(u64, u64), ParamError> {
    let (wb, ww) = (tree_p as u64 - 4, tree_p as u64 - 3);
    let (mut black, mut white) = (0u64, 1u64);
    for level in 1..=n {
        let overflow = || ParamError::Overflow(level);
        let next_black = black.checked_add(white).ok_or_else(overflow)?;
        let next_white = wb
            .checked_mul(black)
            .and_then(|x| ww.checked_mul(white).and_then(|y| x.checked_add(y)))
            .ok_or_else(overflow)?;
        black = next_black;
        white = next_white;
    }
    Ok((black, white))
}

/// Number of letters on level `n` below a white root.
pub fn level_length(tree_p: usize, n: usize) -> Result<u64, ParamError> {
    let (b, w) = level_counts_for(tree_p, n)?;
    b.checked_add(w).ok_or(ParamError::Overflow(n))
}

/// Level `n` of a pentagrid tree whose nodes pick their rule variant at
/// random (`G3`).
pub fn sample_variant_level(seed: u64, n: usize) -> LevelWord {
    let g = Grammar::preset(Preset::G3 { seed }).expect("G3 parameters are valid");
    expand_level(&g, NodeColor::White, n)
}
