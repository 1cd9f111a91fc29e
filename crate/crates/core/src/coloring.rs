//! Almost invariant colorings of torus curves in finite form.
//!
//! A [`StructuredColoring`] of level `k` colors `X1` through the tree: each
//! of the `2^k` vertices at level `k` (an *anchor*) passes its color to its
//! whole subtree, and the `2^k` vertices above level `k` together with
//! `(1, 0)` carry their own *exception* colors. The coloring is extended to
//! all of `X` by `R`-invariance, and finally a finite set of *overrides*
//! recolors individual curves.
//!
//! Without overrides such a coloring is `R`-invariant and `S` changes the
//! color of at most `2·2^(k+1)` curves, all of them within `S`-distance one
//! of a label of level at most `k`. Since overrides only touch finitely many
//! curves, every value of this type is almost invariant, and up to
//! equivalence every almost invariant coloring of `X` with finitely many
//! colors arises this way (see [`StructuredColoring::normalize`]).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{Generator, Region, TorusCurve};
use crate::tree::{self, TreeVertex, TreeWord};
use crate::{Error, Result};

/// Largest supported anchor level; a level-`k` coloring stores `2^(k+1)` colors.
pub const MAX_LEVEL: u32 = 24;

/// An opaque, non-empty color name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(String);

impl Color {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyColor);
        }
        Ok(Color(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Where a point of `X1` takes its color from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Anchor(usize),
    Shallow(usize),
}

/// Slot of a vertex in the exception table: `(1, 0)` first, then the tree
/// vertices of level `< k` in heap order (root 1, children of `i` at `2i`
/// and `2i + 1`).
fn shallow_slot(vertex: &TreeVertex) -> usize {
    match vertex.word() {
        None => 0,
        Some(w) => (1usize << w.len()) + w.index() as usize,
    }
}

fn shallow_vertex(slot: usize) -> TreeVertex {
    if slot == 0 {
        return TreeVertex::base();
    }
    let len = usize::BITS - 1 - slot.leading_zeros();
    let word = TreeWord::from_index(len, (slot - (1usize << len)) as u64);
    TreeVertex::from_word(word).expect("shallow labels are small")
}

fn check_level(level: u64) -> Result<u32> {
    if level > u64::from(MAX_LEVEL) {
        return Err(Error::LevelTooLarge(level));
    }
    Ok(level as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredColoring {
    level: u32,
    /// Indexed by the rank of the level-`k` word.
    anchors: Vec<Color>,
    /// Indexed by [`shallow_slot`].
    exceptions: Vec<Color>,
    overrides: BTreeMap<TorusCurve, Color>,
}

/// The exact set of curves `x` with `c(g x) != c(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub generator: Generator,
    pub defect: BTreeSet<TorusCurve>,
    /// Whether `defect` was obtained from a candidate set that provably
    /// contains every defect point. Always the case for this representation.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallCheck {
    pub generator: Generator,
    /// Curves in the ball whose color the generator changes, found by scanning.
    pub violations: Vec<TorusCurve>,
    /// The certified defect restricted to the ball.
    pub certified: Vec<TorusCurve>,
}

impl BallCheck {
    pub fn consistent(&self) -> bool {
        self.violations == self.certified
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallReport {
    pub radius: u32,
    pub checks: Vec<BallCheck>,
}

impl BallReport {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(BallCheck::consistent)
    }

    pub fn check(&self, generator: Generator) -> Option<&BallCheck> {
        self.checks.iter().find(|c| c.generator == generator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// The colorings differ exactly on this finite set.
    Equivalent { differences: BTreeSet<TorusCurve> },
    /// The subtree below this anchor word is colored differently throughout.
    Inequivalent { word: TreeWord },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

impl StructuredColoring {
    /// A coloring with anchors `palette` (in lexicographic word order) and
    /// no overrides.
    ///
    /// Shallow vertices missing from `exception_colors` get the color of
    /// their leftmost level-`k` descendant; for `(1, 0)` that is the first
    /// palette entry.
    pub fn construct(
        level: u32,
        palette: Vec<Color>,
        exception_colors: &BTreeMap<TorusCurve, Color>,
    ) -> Result<Self> {
        let level = check_level(u64::from(level))?;
        let expected = 1usize << level;
        if palette.len() != expected {
            return Err(Error::PaletteSize { expected, actual: palette.len() });
        }
        let mut seen = BTreeSet::new();
        for color in &palette {
            if !seen.insert(color) {
                return Err(Error::DuplicateColor(color.0.clone()));
            }
        }
        let mut exceptions: Vec<Color> = (0..expected)
            .map(|slot| {
                let leftmost = match shallow_vertex(slot).word() {
                    None => 0,
                    Some(w) => (w.index() as usize) << (level as usize - w.len()),
                };
                palette[leftmost].clone()
            })
            .collect();
        for (x, color) in exception_colors {
            let slot = Self::slot_of(level, x)?;
            exceptions[slot] = color.clone();
        }
        Ok(StructuredColoring { level, anchors: palette, exceptions, overrides: BTreeMap::new() })
    }

    /// Assembles a coloring from complete tables. Anchor colors may repeat.
    pub fn from_parts(
        level: u32,
        anchors: BTreeMap<TreeWord, Color>,
        exceptions: BTreeMap<TorusCurve, Color>,
        overrides: BTreeMap<TorusCurve, Color>,
    ) -> Result<Self> {
        let level = check_level(u64::from(level))?;
        let size = 1usize << level;
        let mut anchor_table: Vec<Option<Color>> = alloc::vec![None; size];
        for (word, color) in anchors {
            if word.len() != level as usize {
                return Err(Error::BadAnchorWord(word.to_string()));
            }
            anchor_table[word.index() as usize] = Some(color);
        }
        let anchors = anchor_table
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| Error::MissingAnchor(TreeWord::from_index(level, i as u64).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut exception_table: Vec<Option<Color>> = alloc::vec![None; size];
        for (x, color) in exceptions {
            exception_table[Self::slot_of(level, &x)?] = Some(color);
        }
        let exceptions = exception_table
            .into_iter()
            .enumerate()
            .map(|(slot, c)| c.ok_or_else(|| Error::MissingException(shallow_vertex(slot).label())))
            .collect::<Result<Vec<_>>>()?;
        Ok(StructuredColoring { level, anchors, exceptions, overrides })
    }

    fn slot_of(level: u32, x: &TorusCurve) -> Result<usize> {
        let vertex = TreeVertex::from_label(x).map_err(|_| Error::NotShallow(*x))?;
        if vertex.level() >= i64::from(level) {
            return Err(Error::NotShallow(*x));
        }
        Ok(shallow_slot(&vertex))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `(word, color)` for every anchor, in word order.
    pub fn anchors(&self) -> impl Iterator<Item = (TreeWord, &Color)> + '_ {
        self.anchors
            .iter()
            .enumerate()
            .map(|(i, c)| (TreeWord::from_index(self.level, i as u64), c))
    }

    /// `(vertex, color)` for `(1, 0)` and every vertex of level `< k`.
    pub fn exceptions(&self) -> impl Iterator<Item = (TreeVertex, &Color)> + '_ {
        self.exceptions
            .iter()
            .enumerate()
            .map(|(slot, c)| (shallow_vertex(slot), c))
    }

    pub fn overrides(&self) -> &BTreeMap<TorusCurve, Color> {
        &self.overrides
    }

    pub fn set_override(&mut self, x: TorusCurve, color: Color) {
        self.overrides.insert(x, color);
    }

    pub fn without_overrides(&self) -> Self {
        StructuredColoring { overrides: BTreeMap::new(), ..self.clone() }
    }

    /// Every color appearing anywhere in the finite data.
    pub fn colors(&self) -> BTreeSet<&Color> {
        self.anchors
            .iter()
            .chain(&self.exceptions)
            .chain(self.overrides.values())
            .collect()
    }

    fn cell(&self, x1: &TorusCurve) -> Cell {
        debug_assert_eq!(x1.region(), Region::X1);
        if *x1 == TorusCurve::BASE {
            return Cell::Shallow(0);
        }
        let runs = tree::factorize_runs(x1).expect("X1 points other than (1,0) are positive");
        let k = u64::from(self.level);
        if runs.len() >= k {
            Cell::Anchor(runs.prefix(k).index() as usize)
        } else {
            let word = runs.to_word();
            Cell::Shallow((1usize << word.len()) + word.index() as usize)
        }
    }

    /// Color of `x` ignoring overrides.
    fn background(&self, x: &TorusCurve) -> &Color {
        let (x1, _) = x.orbit_rep_x1();
        match self.cell(&x1) {
            Cell::Anchor(i) => &self.anchors[i],
            Cell::Shallow(i) => &self.exceptions[i],
        }
    }

    pub fn color_of(&self, x: &TorusCurve) -> &Color {
        self.overrides.get(x).unwrap_or_else(|| self.background(x))
    }

    /// Upper bound on `|defect(S)|` without overrides: `2·2^(k+1)`.
    pub fn s_defect_bound(&self) -> u64 {
        2 * (1u64 << (self.level + 1))
    }

    /// Points that could possibly be in the defect of `g`.
    ///
    /// Without overrides, `R` changes nothing, and a label `x` of level
    /// `> k` satisfies `S x = R^j (parent of x)`, which carries the parent's
    /// color, i.e. the same anchor color as `x`. As `S` exchanges `X1` and
    /// `X2 ∪ X3`, the `S`-defect lies in the labels of level `<= k` and their
    /// `S`-images. An override at `y` can only add `y` and `g⁻¹ y`.
    fn defect_candidates(&self, g: Generator) -> Result<BTreeSet<TorusCurve>> {
        let mut out = BTreeSet::new();
        if g == Generator::S {
            for v in tree::vertices_to_depth(self.level)? {
                let x = v.label();
                out.insert(x);
                out.insert(x.s_image());
            }
        }
        for y in self.overrides.keys() {
            out.insert(*y);
            out.insert(g.act(y)?);
            out.insert(g.act_inverse(y)?);
        }
        Ok(out)
    }

    pub fn defect(&self, g: Generator) -> Result<DefectReport> {
        let mut defect = BTreeSet::new();
        for x in self.defect_candidates(g)? {
            if self.color_of(&g.act(&x)?) != self.color_of(&x) {
                defect.insert(x);
            }
        }
        Ok(DefectReport { generator: g, defect, certified: true })
    }

    /// Scans `ball(radius)` for color changes under `S` and `R` and pairs
    /// the result with the certified defect restricted to the ball.
    pub fn verify_ball(&self, radius: u32) -> Result<BallReport> {
        let ball = crate::lattice::ball(radius);
        let mut checks = Vec::with_capacity(2);
        for g in [Generator::S, Generator::R] {
            let mut violations = Vec::new();
            for x in &ball {
                if self.color_of(&g.act(x)?) != self.color_of(x) {
                    violations.push(*x);
                }
            }
            let certified = self
                .defect(g)?
                .defect
                .into_iter()
                .filter(|x| x.max_norm() <= u64::from(radius))
                .collect();
            checks.push(BallCheck { generator: g, violations, certified });
        }
        Ok(BallReport { radius, checks })
    }

    fn map_colors(&self, f: impl Fn(&Color) -> Color) -> Self {
        StructuredColoring {
            level: self.level,
            anchors: self.anchors.iter().map(&f).collect(),
            exceptions: self.exceptions.iter().map(&f).collect(),
            overrides: self.overrides.iter().map(|(x, c)| (*x, f(c))).collect(),
        }
    }

    /// Post-composition with a color map, which must cover every color used.
    pub fn simplify(&self, f: &BTreeMap<Color, Color>) -> Result<Self> {
        if let Some(missing) = self.colors().into_iter().find(|c| !f.contains_key(*c)) {
            return Err(Error::MissingColor(missing.0.clone()));
        }
        Ok(self.map_colors(|c| f[c].clone()))
    }

    /// Two-color simplification: colors in `class0` become `"0"`, all others
    /// `"1"`. Both sides must contain an anchor color, which makes both
    /// color classes infinite.
    pub fn binarize(&self, class0: &BTreeSet<Color>) -> Result<Self> {
        let inside = self.anchors.iter().any(|c| class0.contains(c));
        let outside = self.anchors.iter().any(|c| !class0.contains(c));
        if !(inside && outside) {
            return Err(Error::TrivialSplit);
        }
        let zero = Color("0".to_string());
        let one = Color("1".to_string());
        Ok(self.map_colors(|c| if class0.contains(c) { zero.clone() } else { one.clone() }))
    }

    /// Equivalent to a constant coloring, i.e. all anchors agree.
    pub fn is_trivial(&self) -> bool {
        self.anchors.windows(2).all(|w| w[0] == w[1])
    }

    /// The same coloring, pointwise, presented with anchors at `level`.
    pub fn refine(&self, level: u32) -> Result<Self> {
        let level = check_level(u64::from(level))?;
        if level <= self.level {
            return Ok(self.clone());
        }
        let shift = level - self.level;
        let size = 1usize << level;
        let anchors = (0..size).map(|i| self.anchors[i >> shift].clone()).collect();
        let exceptions = (0..size)
            .map(|slot| {
                if slot < 1 << self.level {
                    self.exceptions[slot].clone()
                } else {
                    self.background(&shallow_vertex(slot).label()).clone()
                }
            })
            .collect();
        Ok(StructuredColoring { level, anchors, exceptions, overrides: self.overrides.clone() })
    }

    /// Decides whether the two colorings differ on only finitely many curves.
    pub fn equivalent(&self, other: &StructuredColoring) -> Result<Equivalence> {
        let level = self.level.max(other.level);
        let a = self.refine(level)?;
        let b = other.refine(level)?;
        if let Some(i) = (0..a.anchors.len()).find(|&i| a.anchors[i] != b.anchors[i]) {
            return Ok(Equivalence::Inequivalent { word: TreeWord::from_index(level, i as u64) });
        }
        // With equal anchors, disagreements sit on overrides or on the
        // R-orbits of the shallow vertices.
        let mut candidates: BTreeSet<TorusCurve> =
            a.overrides.keys().chain(b.overrides.keys()).copied().collect();
        for slot in 0..a.exceptions.len() {
            let x = shallow_vertex(slot).label();
            let rx = x.r_image()?;
            candidates.insert(x);
            candidates.insert(rx);
            candidates.insert(rx.r_image()?);
        }
        let differences = candidates
            .into_iter()
            .filter(|x| a.color_of(x) != b.color_of(x))
            .collect();
        Ok(Equivalence::Equivalent { differences })
    }

    /// The canonical override-free, `R`-invariant coloring equivalent to
    /// this one.
    ///
    /// Overrides are first spread over their `R`-orbits using the color of
    /// the orbit's `X1` point. The anchor level of the result is the least
    /// `K >= 0` such that no tree label of level `> K` has its color changed
    /// by `S`; below that level every label has its parent's color. Anchor
    /// colors may repeat. `normalize` is idempotent, and equal normal forms
    /// imply equivalence. The converse needs only the anchors: equivalent
    /// colorings may still disagree on shallow labels.
    pub fn normalize(&self) -> Result<Self> {
        let spread = self.r_invariantize()?;
        let mut target = 0u64;
        for x in spread.defect(Generator::S)?.defect {
            if x.region() == Region::X1 && x != TorusCurve::BASE {
                target = target.max(tree::factorize_runs(&x)?.len());
            }
        }
        let level = check_level(target)?;
        let anchors = tree::enumerate_level(level)?
            .iter()
            .map(|x| spread.color_of(x).clone())
            .collect();
        let exceptions = (0..1usize << level)
            .map(|slot| spread.color_of(&shallow_vertex(slot).label()).clone())
            .collect();
        Ok(StructuredColoring { level, anchors, exceptions, overrides: BTreeMap::new() })
    }

    /// Recolors `R x` and `R² x` like `x` for every `X1` point `x` whose
    /// orbit carries an override.
    fn r_invariantize(&self) -> Result<Self> {
        let reps: BTreeSet<TorusCurve> = self.overrides.keys().map(|x| x.orbit_rep_x1().0).collect();
        let mut overrides = BTreeMap::new();
        for x1 in reps {
            let color = self.color_of(&x1).clone();
            let rx = x1.r_image()?;
            let rrx = rx.r_image()?;
            overrides.insert(x1, color.clone());
            overrides.insert(rx, color.clone());
            overrides.insert(rrx, color);
        }
        Ok(StructuredColoring { overrides, ..self.clone() })
    }
}
