//! The labelled binary tree of positive primitive pairs.
//!
//! Every `(p, q)` with `p, q >= 1` is reached from `(1, 1)` by a unique
//! sequence of the two moves
//!
//! * left, `S⁻¹R`: `(p, q) ↦ (p + q, q)`
//! * right, `S⁻¹R²`: `(p, q) ↦ (p, p + q)`
//!
//! which makes the tree a bijection onto the open positive quadrant. Adding
//! `(1, 0)` as an extra vertex below the root (level `-1`) extends it to all
//! of `X1`.
//!
//! Words are stored in application order: the first letter is the first move
//! made from the root.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::lattice::{Region, TorusCurve};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeLetter {
    /// `S⁻¹R`, written `1`.
    Left,
    /// `S⁻¹R²`, written `2`.
    Right,
}

impl TreeLetter {
    pub fn step(self, x: &TorusCurve) -> Result<TorusCurve> {
        let (p, q) = (x.p(), x.q());
        let (p, q) = match self {
            TreeLetter::Left => (p.checked_add(q).ok_or(Error::Overflow)?, q),
            TreeLetter::Right => (p, p.checked_add(q).ok_or(Error::Overflow)?),
        };
        TorusCurve::new(p, q)
    }

    fn digit(self) -> char {
        match self {
            TreeLetter::Left => '1',
            TreeLetter::Right => '2',
        }
    }
}

/// A path from the root, ordered lexicographically with `1 < 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeWord(Vec<TreeLetter>);

impl TreeWord {
    pub fn new(letters: Vec<TreeLetter>) -> Self {
        TreeWord(letters)
    }

    pub fn letters(&self) -> &[TreeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: TreeLetter) {
        self.0.push(letter);
    }

    pub fn child(&self, letter: TreeLetter) -> TreeWord {
        let mut w = self.clone();
        w.push(letter);
        w
    }

    pub fn prefix(&self, len: usize) -> TreeWord {
        TreeWord(self.0[..len.min(self.0.len())].to_vec())
    }

    /// The word read as a binary number, `1 ↦ 0` and `2 ↦ 1`, most
    /// significant letter first. This is the word's rank among the words of
    /// the same length in lexicographic order.
    pub fn index(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, l| (acc << 1) | u64::from(*l == TreeLetter::Right))
    }

    /// Inverse of [`TreeWord::index`] for words of length `len`.
    pub fn from_index(len: u32, index: u64) -> TreeWord {
        debug_assert!(len < 64 && index < (1u64 << len));
        TreeWord(
            (0..len)
                .rev()
                .map(|bit| if (index >> bit) & 1 == 1 { TreeLetter::Right } else { TreeLetter::Left })
                .collect(),
        )
    }

    /// All `2^len` words of length `len` in lexicographic order.
    pub fn all_of_length(len: u32) -> impl Iterator<Item = TreeWord> {
        (0..1u64 << len).map(move |i| TreeWord::from_index(len, i))
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        self.0.iter().try_for_each(|l| f.write_char(l.digit()))
    }
}

impl FromStr for TreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '1' => Ok(TreeLetter::Left),
                '2' => Ok(TreeLetter::Right),
                _ => Err(Error::Parse { what: "tree word", input: s.to_string() }),
            })
            .collect::<Result<Vec<_>>>()
            .map(TreeWord)
    }
}

/// Label of the vertex reached from the root by `word`.
pub fn evaluate(word: &TreeWord) -> Result<TorusCurve> {
    word.0.iter().try_fold(TorusCurve::ROOT, |x, l| l.step(&x))
}

/// A tree word stored as maximal runs of equal letters, in application order.
///
/// Levels grow linearly in `max(p, q)` (the label `(n, 1)` sits at level
/// `n - 1`), so this is the form to use when only the length or a short
/// prefix is needed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunWord {
    runs: Vec<(TreeLetter, u64)>,
}

impl RunWord {
    pub fn runs(&self) -> &[(TreeLetter, u64)] {
        &self.runs
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|r| r.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// The first `min(len, self.len())` letters.
    pub fn prefix(&self, len: u64) -> TreeWord {
        let mut out = Vec::new();
        let mut left = len;
        for &(letter, count) in &self.runs {
            if left == 0 {
                break;
            }
            let take = count.min(left);
            out.extend(core::iter::repeat_n(letter, take as usize));
            left -= take;
        }
        TreeWord(out)
    }

    pub fn to_word(&self) -> TreeWord {
        self.prefix(u64::MAX)
    }
}

fn check_positive(x: &TorusCurve) -> Result<()> {
    if x.p() >= 1 && x.q() >= 1 {
        Ok(())
    } else {
        Err(Error::NotInPositiveQuadrant(*x))
    }
}

/// Run-length factorization by Euclidean division.
///
/// Descending from `(p, q)`, each division step strips `⌊p/q⌋` left moves
/// (or `⌊q/p⌋` right moves), except that the final run toward `(1, 1)` stops
/// one short, at `(1, 1)` rather than `(0, 1)`.
pub fn factorize_runs(x: &TorusCurve) -> Result<RunWord> {
    check_positive(x)?;
    let (mut p, mut q) = (x.p() as u64, x.q() as u64);
    let mut discovered = Vec::new();
    while p != q {
        if p > q {
            let n = if q == 1 { p - 1 } else { p / q };
            discovered.push((TreeLetter::Left, n));
            p -= n * q;
        } else {
            let n = if p == 1 { q - 1 } else { q / p };
            discovered.push((TreeLetter::Right, n));
            q -= n * p;
        }
    }
    debug_assert_eq!((p, q), (1, 1));
    discovered.reverse();
    Ok(RunWord { runs: discovered })
}

/// The unique word with `evaluate(word) == x`, for `p, q >= 1`.
pub fn factorize(x: &TorusCurve) -> Result<TreeWord> {
    factorize_runs(x).map(|r| r.to_word())
}

/// Reference factorization, one subtraction per letter.
pub fn factorize_subtractive(x: &TorusCurve) -> Result<TreeWord> {
    check_positive(x)?;
    let (mut p, mut q) = (x.p(), x.q());
    let mut letters = Vec::new();
    while (p, q) != (1, 1) {
        if p > q {
            letters.push(TreeLetter::Left);
            p -= q;
        } else {
            letters.push(TreeLetter::Right);
            q -= p;
        }
    }
    letters.reverse();
    Ok(TreeWord(letters))
}

/// Distance from `(1, 1)`; `-1` for `(1, 0)`.
pub fn level_of(x: &TorusCurve) -> Result<i64> {
    if x.region() != Region::X1 {
        return Err(Error::NotInX1(*x));
    }
    if *x == TorusCurve::BASE {
        return Ok(-1);
    }
    let len = factorize_runs(x)?.len();
    i64::try_from(len).map_err(|_| Error::Overflow)
}

/// Labels of the `2^k` vertices at level `k`, in lexicographic word order.
pub fn enumerate_level(k: u32) -> Result<Vec<TorusCurve>> {
    let mut level = alloc::vec![TorusCurve::ROOT];
    for _ in 0..k {
        let mut next = Vec::with_capacity(level.len() * 2);
        for x in &level {
            next.push(TreeLetter::Left.step(x)?);
            next.push(TreeLetter::Right.step(x)?);
        }
        level = next;
    }
    Ok(level)
}

/// A vertex of the tree: either the extra vertex `(1, 0)` (no word) or the
/// end of a path from the root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeVertex {
    word: Option<TreeWord>,
    label: TorusCurve,
}

impl TreeVertex {
    pub fn base() -> Self {
        TreeVertex { word: None, label: TorusCurve::BASE }
    }

    pub fn root() -> Self {
        TreeVertex { word: Some(TreeWord::default()), label: TorusCurve::ROOT }
    }

    pub fn from_word(word: TreeWord) -> Result<Self> {
        let label = evaluate(&word)?;
        Ok(TreeVertex { word: Some(word), label })
    }

    /// The vertex carrying `x`, which must lie in `X1`.
    pub fn from_label(x: &TorusCurve) -> Result<Self> {
        if *x == TorusCurve::BASE {
            return Ok(TreeVertex::base());
        }
        if x.region() != Region::X1 {
            return Err(Error::NotInX1(*x));
        }
        Ok(TreeVertex { word: Some(factorize(x)?), label: *x })
    }

    pub fn word(&self) -> Option<&TreeWord> {
        self.word.as_ref()
    }

    pub fn label(&self) -> TorusCurve {
        self.label
    }

    pub fn is_base(&self) -> bool {
        self.word.is_none()
    }

    pub fn level(&self) -> i64 {
        self.word.as_ref().map_or(-1, |w| w.len() as i64)
    }

    pub fn children(&self) -> Result<(TreeVertex, TreeVertex)> {
        let word = self.word.as_ref().ok_or(Error::SpecialVertex)?;
        let left = TreeVertex {
            word: Some(word.child(TreeLetter::Left)),
            label: TreeLetter::Left.step(&self.label)?,
        };
        let right = TreeVertex {
            word: Some(word.child(TreeLetter::Right)),
            label: TreeLetter::Right.step(&self.label)?,
        };
        Ok((left, right))
    }

    /// The tree parent; the root's parent is `(1, 0)`, which has none.
    pub fn parent(&self) -> Option<TreeVertex> {
        let word = self.word.as_ref()?;
        if word.is_empty() {
            return Some(TreeVertex::base());
        }
        let up = word.prefix(word.len() - 1);
        let label = evaluate(&up).expect("prefix of a valid word");
        Some(TreeVertex { word: Some(up), label })
    }
}

/// Every vertex of level at most `depth`, preceded by `(1, 0)`: breadth first,
/// lexicographic within a level.
pub fn vertices_to_depth(depth: u32) -> Result<Vec<TreeVertex>> {
    let mut out = alloc::vec![TreeVertex::base(), TreeVertex::root()];
    let mut frontier = alloc::vec![TreeVertex::root()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for v in &frontier {
            let (l, r) = v.children()?;
            next.push(l);
            next.push(r);
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}
