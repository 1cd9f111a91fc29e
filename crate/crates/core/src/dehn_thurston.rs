//! Dehn-Thurston coordinates relative to a pants decomposition, the action of
//! twists on the pants curves, and colorings of the lattices those twists
//! generate.
//!
//! A twist on pants curve `k` adds `m_k` to the twisting number `t_k` and
//! leaves every other coordinate alone. Twists on distinct pants curves
//! commute, so interesting twists at a multicurve span an injective copy of
//! `Z^d`. A [`LatticeColoring`] models the restriction of a coloring to such
//! a copy; the checks here are the necessary conditions an almost invariant
//! coloring of the full orbit would have to satisfy there.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coloring::Color;
use crate::{Error, Result};

/// Compact surface of genus `g` with `r` boundary components, with
/// `g >= 2`, or `g = 1` and `r = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceSpec {
    genus: u32,
    boundary: u32,
}

/// Keeps coordinate vectors to a sane size.
const MAX_PANTS_CURVES: u64 = 1 << 16;

impl SurfaceSpec {
    pub fn new(genus: u32, boundary: u32) -> Result<Self> {
        let valid = genus >= 2 || (genus == 1 && boundary == 0);
        let n = 3 * u64::from(genus) + u64::from(boundary);
        if !valid || n - 3 > MAX_PANTS_CURVES {
            return Err(Error::InvalidSurface { genus, boundary });
        }
        Ok(SurfaceSpec { genus, boundary })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    /// Number of pants curves, `3g + r - 3`.
    pub fn curve_count(&self) -> usize {
        (3 * self.genus + self.boundary - 3) as usize
    }
}

/// A multicurve by its intersection numbers `m` and twisting numbers `t`.
///
/// Only `m >= 0` is enforced; the admissibility conditions that decide
/// which tuples come from actual multicurves are not checked.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DTMulticurve {
    surface: SurfaceSpec,
    m: Vec<i64>,
    t: Vec<i64>,
}

impl DTMulticurve {
    pub fn new(surface: SurfaceSpec, m: Vec<i64>, t: Vec<i64>) -> Result<Self> {
        let n = surface.curve_count();
        for len in [m.len(), t.len()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, actual: len });
            }
        }
        if m.iter().any(|&x| x < 0) {
            return Err(Error::NegativeIntersection);
        }
        Ok(DTMulticurve { surface, m, t })
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn intersections(&self) -> &[i64] {
        &self.m
    }

    pub fn twists(&self) -> &[i64] {
        &self.t
    }

    /// Converts a 1-based curve index to a vector position.
    fn position(&self, k: usize) -> Result<usize> {
        let len = self.m.len();
        if k == 0 || k > len {
            return Err(Error::IndexOutOfRange { index: k, len });
        }
        Ok(k - 1)
    }

    /// `τ_k^n D`: `t_k ↦ t_k + n·m_k`.
    pub fn twist(&self, k: usize, n: i64) -> Result<Self> {
        let i = self.position(k)?;
        let shift = n.checked_mul(self.m[i]).ok_or(Error::Overflow)?;
        let mut out = self.clone();
        out.t[i] = out.t[i].checked_add(shift).ok_or(Error::Overflow)?;
        Ok(out)
    }

    /// The twist on curve `k` fixes `D` iff `m_k = 0`.
    pub fn acts_trivially(&self, k: usize) -> Result<bool> {
        Ok(self.m[self.position(k)?] == 0)
    }

    /// `(τ_k, D)` is an interesting pair iff `m_k > 0`.
    pub fn is_interesting(&self, k: usize) -> Result<bool> {
        self.acts_trivially(k).map(|t| !t)
    }

    /// `τ_k^n D` for `n` in `start..=end`.
    pub fn string(&self, k: usize, start: i64, end: i64) -> Result<Vec<Self>> {
        if start > end {
            return Err(Error::InvalidRange { start, end });
        }
        self.position(k)?;
        (start..=end).map(|n| self.twist(k, n)).collect()
    }
}

/// The commuting twists on pants curves `axes` acting on `base`, as a map
/// `Z^d → multicurves`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistLattice {
    base: DTMulticurve,
    axes: Vec<usize>,
}

/// Embeds `Z^d` through the twists on the listed pants curves, each of which
/// must act non-trivially on `base`. The map is injective: each axis moves
/// only its own twisting number, by a non-zero step.
pub fn lattice_from_twists(base: &DTMulticurve, axes: &[usize]) -> Result<TwistLattice> {
    let mut seen = BTreeSet::new();
    for &k in axes {
        if !seen.insert(k) {
            return Err(Error::DuplicateIndex(k));
        }
        if !base.is_interesting(k)? {
            return Err(Error::NotInteresting(k));
        }
    }
    Ok(TwistLattice { base: base.clone(), axes: axes.to_vec() })
}

impl TwistLattice {
    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn point(&self, z: &[i64]) -> Result<DTMulticurve> {
        if z.len() != self.axes.len() {
            return Err(Error::DimensionMismatch { expected: self.axes.len(), actual: z.len() });
        }
        self.axes
            .iter()
            .zip(z)
            .try_fold(self.base.clone(), |d, (&k, &n)| d.twist(k, n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    /// Sectors are split at 0, with 0 itself on the `+` side.
    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// A sign pattern naming one of the `2^d` sectors, written like `"+-"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorKey(pub Vec<Sign>);

impl SectorKey {
    pub fn of_point(z: &[i64]) -> SectorKey {
        SectorKey(z.iter().map(|&x| Sign::of(x)).collect())
    }

    /// Bit `i` is set when axis `i + 1` is negative.
    fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Minus)
            .map(|(i, _)| 1usize << i)
            .sum()
    }

    fn from_index(dim: usize, index: usize) -> SectorKey {
        SectorKey(
            (0..dim)
                .map(|i| if index >> i & 1 == 1 { Sign::Minus } else { Sign::Plus })
                .collect(),
        )
    }
}

impl fmt::Display for SectorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Minus => "-",
                Sign::Plus => "+",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SectorKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::Parse { what: "sector", input: s.to_string() }),
            })
            .collect::<Result<Vec<_>>>()
            .map(SectorKey)
    }
}

/// Largest lattice dimension accepted.
pub const MAX_DIMENSION: usize = 16;

/// A coloring of `Z^d`: one background color per sign sector and finitely
/// many exceptional points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeColoring {
    dim: usize,
    sectors: Vec<Color>,
    exceptions: BTreeMap<Vec<i64>, Color>,
}

/// `{z : c(z + e_axis) != c(z)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftDefect {
    Finite(BTreeSet<Vec<i64>>),
    /// The sector `minus_side` and its neighbour across the axis differ, so
    /// the whole face `z_axis = -1` of that sector changes color.
    Infinite { minus_side: SectorKey },
}

impl ShiftDefect {
    pub fn is_finite(&self) -> bool {
        matches!(self, ShiftDefect::Finite(_))
    }
}

/// Axis-aligned box `lo..=hi` per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Region {
    pub fn contains(&self, z: &[i64]) -> bool {
        z.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisFuture {
    pub axis: usize,
    pub future: Color,
    pub past: Color,
    /// Number of unit moves on the path from the future ray to the past ray.
    pub path_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma1Report {
    /// Every axis defect is finite; outside `region` no unit move changes a
    /// color, and for each axis a path around `region` joins the future ray
    /// to the past ray without a color change.
    Pass { region: Region, axes: Vec<AxisFuture> },
    /// These axes change infinitely many colors, so nothing is asserted.
    HypothesisFailure { axes: Vec<usize> },
    /// A move outside the bounded region changed the color. Cannot happen
    /// when the hypotheses hold; reported rather than asserted.
    PathBroken { axis: usize, at: Vec<i64> },
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        matches!(self, Lemma1Report::Pass { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFutureReport {
    pub futures: Vec<(usize, Color)>,
    /// Pairs of axes with different futures.
    pub violations: Vec<(usize, usize)>,
}

impl CommonFutureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LatticeColoring {
    pub fn new(
        dim: usize,
        sectors: BTreeMap<SectorKey, Color>,
        exceptions: BTreeMap<Vec<i64>, Color>,
    ) -> Result<Self> {
        if dim == 0 || dim > MAX_DIMENSION {
            return Err(Error::BadDimension(dim));
        }
        let mut table: Vec<Option<Color>> = alloc::vec![None; 1 << dim];
        for (key, color) in sectors {
            if key.0.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: key.0.len() });
            }
            table[key.index()] = Some(color);
        }
        let sectors = table
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| Error::Parse {
                    what: "complete sector table",
                    input: SectorKey::from_index(dim, i).to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for z in exceptions.keys() {
            if z.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: z.len() });
            }
        }
        Ok(LatticeColoring { dim, sectors, exceptions })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn sectors(&self) -> impl Iterator<Item = (SectorKey, &Color)> + '_ {
        self.sectors
            .iter()
            .enumerate()
            .map(|(i, c)| (SectorKey::from_index(self.dim, i), c))
    }

    pub fn exceptions(&self) -> &BTreeMap<Vec<i64>, Color> {
        &self.exceptions
    }

    pub fn sector_color(&self, key: &SectorKey) -> &Color {
        &self.sectors[key.index()]
    }

    fn background(&self, z: &[i64]) -> &Color {
        &self.sectors[SectorKey::of_point(z).index()]
    }

    pub fn color_at(&self, z: &[i64]) -> Result<&Color> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: z.len() });
        }
        Ok(self.exceptions.get(z).unwrap_or_else(|| self.background(z)))
    }

    fn axis_position(&self, axis: usize) -> Result<usize> {
        if axis == 0 || axis > self.dim {
            return Err(Error::IndexOutOfRange { index: axis, len: self.dim });
        }
        Ok(axis - 1)
    }

    /// Smallest box containing the origin and every exception.
    pub fn exception_box(&self) -> Region {
        let mut lo = alloc::vec![0i64; self.dim];
        let mut hi = alloc::vec![0i64; self.dim];
        for z in self.exceptions.keys() {
            for i in 0..self.dim {
                lo[i] = lo[i].min(z[i]);
                hi[i] = hi[i].max(z[i]);
            }
        }
        Region { lo, hi }
    }

    /// Classifies the points whose color changes under the unit shift along
    /// `axis` (1-based).
    ///
    /// Background colors change only across the hyperplane `z_axis = -1 → 0`.
    /// For `d >= 2` each face of that crossing is infinite, so a pair of
    /// differing neighbouring sectors gives an infinite defect; for `d = 1`
    /// the crossing is the single point `-1`. Everything else comes from
    /// exceptions `y` and their preimages `y - e_axis`.
    pub fn shift_defect(&self, axis: usize) -> Result<ShiftDefect> {
        let a = self.axis_position(axis)?;
        let mut candidates: BTreeSet<Vec<i64>> = BTreeSet::new();
        if self.dim >= 2 {
            for i in 0..self.sectors.len() {
                if i >> a & 1 == 1 && self.sectors[i] != self.sectors[i & !(1 << a)] {
                    return Ok(ShiftDefect::Infinite { minus_side: SectorKey::from_index(self.dim, i) });
                }
            }
        } else {
            candidates.insert(alloc::vec![-1]);
        }
        for y in self.exceptions.keys() {
            candidates.insert(y.clone());
            let mut below = y.clone();
            below[a] = below[a].checked_sub(1).ok_or(Error::Overflow)?;
            candidates.insert(below);
        }
        let mut defect = BTreeSet::new();
        for z in candidates {
            let mut next = z.clone();
            next[a] = next[a].checked_add(1).ok_or(Error::Overflow)?;
            if self.color_at(&next)? != self.color_at(&z)? {
                defect.insert(z);
            }
        }
        Ok(ShiftDefect::Finite(defect))
    }

    fn require_almost_invariant(&self) -> Result<()> {
        for axis in 1..=self.dim {
            if !self.shift_defect(axis)?.is_finite() {
                return Err(Error::NotAlmostInvariant { axis });
            }
        }
        Ok(())
    }

    /// Eventual color of `base + n·e_axis` as `n → +∞` (`forward`) or
    /// `n → -∞`.
    fn ray_limit(&self, axis: usize, base: &[i64], forward: bool) -> Result<Color> {
        self.require_almost_invariant()?;
        let a = self.axis_position(axis)?;
        if base.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: base.len() });
        }
        let bbox = self.exception_box();
        let mut far = base.to_vec();
        far[a] = if forward {
            bbox.hi[a].max(base[a]).checked_add(1)
        } else {
            bbox.lo[a].min(base[a]).checked_sub(1)
        }
        .ok_or(Error::Overflow)?;
        Ok(self.background(&far).clone())
    }

    pub fn future_at(&self, axis: usize, base: &[i64]) -> Result<Color> {
        self.ray_limit(axis, base, true)
    }

    pub fn past_at(&self, axis: usize, base: &[i64]) -> Result<Color> {
        self.ray_limit(axis, base, false)
    }

    /// Future of the twist along `axis` at the origin.
    pub fn future(&self, axis: usize) -> Result<Color> {
        self.future_at(axis, &alloc::vec![0; self.dim])
    }

    pub fn past(&self, axis: usize) -> Result<Color> {
        self.past_at(axis, &alloc::vec![0; self.dim])
    }

    /// Future equals past along every axis, by walking around the region in
    /// which moves may change colors.
    pub fn lemma1_check(&self) -> Result<Lemma1Report> {
        if self.dim < 2 {
            return Err(Error::BadDimension(self.dim));
        }
        let failing: Vec<usize> = (1..=self.dim)
            .filter_map(|axis| match self.shift_defect(axis) {
                Ok(d) if d.is_finite() => None,
                Ok(_) => Some(Ok(axis)),
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<_>>()?;
        if !failing.is_empty() {
            return Ok(Lemma1Report::HypothesisFailure { axes: failing });
        }

        // Every defect point z has z and z + e_i inside the exception box
        // widened by one, so moves between points outside it keep colors.
        let bbox = self.exception_box();
        let region = Region {
            lo: bbox.lo.iter().map(|x| x - 1).collect(),
            hi: bbox.hi.iter().map(|x| x + 1).collect(),
        };
        let mut axes = Vec::with_capacity(self.dim);
        for axis in 1..=self.dim {
            let a = axis - 1;
            let b = if a == 0 { 1 } else { 0 };
            let mut z = alloc::vec![0i64; self.dim];
            z[a] = region.hi[a] + 1;
            let future = self.color_at(&z)?.clone();
            let mut path_len = 0;
            let mut walk = |z: &mut Vec<i64>, i: usize, target: i64| -> Result<Option<Vec<i64>>> {
                while z[i] != target {
                    let before = self.color_at(z)?.clone();
                    z[i] += if target > z[i] { 1 } else { -1 };
                    path_len += 1;
                    if *self.color_at(z)? != before {
                        return Ok(Some(z.clone()));
                    }
                }
                Ok(None)
            };
            let legs = [(b, region.hi[b] + 1), (a, region.lo[a] - 1), (b, 0)];
            for (i, target) in legs {
                if let Some(at) = walk(&mut z, i, target)? {
                    return Ok(Lemma1Report::PathBroken { axis, at });
                }
            }
            let past = self.color_at(&z)?.clone();
            debug_assert_eq!(future, self.future(axis)?);
            debug_assert_eq!(past, self.past(axis)?);
            axes.push(AxisFuture { axis, future, past, path_len });
        }
        Ok(Lemma1Report::Pass { region, axes })
    }

    /// All axes share one future.
    pub fn common_future_check(&self) -> Result<CommonFutureReport> {
        self.require_almost_invariant()?;
        let futures = (1..=self.dim)
            .map(|axis| self.future(axis).map(|c| (axis, c)))
            .collect::<Result<Vec<_>>>()?;
        let mut violations = Vec::new();
        for (i, (ai, ci)) in futures.iter().enumerate() {
            for (aj, cj) in &futures[i + 1..] {
                if ci != cj {
                    violations.push((*ai, *aj));
                }
            }
        }
        Ok(CommonFutureReport { futures, violations })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn genus2(m: &[i64], t: &[i64]) -> DTMulticurve {
        let s = SurfaceSpec::new(2, 0).unwrap();
        let mut mm = m.to_vec();
        let mut tt = t.to_vec();
        mm.resize(3, 0);
        tt.resize(3, 0);
        DTMulticurve::new(s, mm, tt).unwrap()
    }

    fn col(s: &str) -> Color {
        Color::new(s).unwrap()
    }

    fn lattice(sectors: &[(&str, &str)], exceptions: &[(&[i64], &str)]) -> LatticeColoring {
        let dim = sectors[0].0.len();
        LatticeColoring::new(
            dim,
            sectors.iter().map(|(k, c)| (k.parse().unwrap(), col(c))).collect(),
            exceptions.iter().map(|(z, c)| (z.to_vec(), col(c))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn surfaces() {
        assert_eq!(SurfaceSpec::new(2, 0).unwrap().curve_count(), 3);
        assert_eq!(SurfaceSpec::new(1, 0).unwrap().curve_count(), 0);
        assert_eq!(SurfaceSpec::new(3, 2).unwrap().curve_count(), 8);
        assert!(SurfaceSpec::new(1, 1).is_err());
        assert!(SurfaceSpec::new(0, 4).is_err());
    }

    #[test]
    fn multicurve_validation() {
        let s = SurfaceSpec::new(2, 0).unwrap();
        assert_eq!(
            DTMulticurve::new(s, vec![1], vec![0, 0, 0]),
            Err(Error::LengthMismatch { expected: 3, actual: 1 })
        );
        assert_eq!(DTMulticurve::new(s, vec![-1, 0, 0], vec![0; 3]), Err(Error::NegativeIntersection));
    }

    #[test]
    fn twist_examples() {
        let d = genus2(&[3], &[5]);
        assert_eq!(d.twist(1, 2).unwrap().twists()[0], 11);
        let d = genus2(&[0], &[7]);
        assert_eq!(d.twist(1, 100).unwrap(), d);
        let d = genus2(&[2, 3], &[1, -4]);
        assert_eq!(
            d.twist(1, 5).unwrap().twist(2, -3).unwrap(),
            d.twist(2, -3).unwrap().twist(1, 5).unwrap()
        );
        assert_eq!(d.twist(4, 1), Err(Error::IndexOutOfRange { index: 4, len: 3 }));
        assert_eq!(d.twist(0, 1), Err(Error::IndexOutOfRange { index: 0, len: 3 }));
        assert_eq!(genus2(&[i64::MAX], &[0]).twist(1, 2), Err(Error::Overflow));
    }

    #[test]
    fn triviality_and_interest() {
        let d = genus2(&[0, 1], &[9, 9]);
        assert!(d.acts_trivially(1).unwrap());
        assert!(!d.is_interesting(1).unwrap());
        assert!(!d.acts_trivially(2).unwrap());
        assert!(d.is_interesting(2).unwrap());
        assert_eq!(d.acts_trivially(2).unwrap(), d.twist(2, 1).unwrap() == d);
    }

    #[test]
    fn strings() {
        let s = genus2(&[2], &[0]).string(1, 0, 3).unwrap();
        let t: Vec<_> = s.iter().map(|d| d.twists()[0]).collect();
        assert_eq!(t, vec![0, 2, 4, 6]);
        let s = genus2(&[0], &[4]).string(1, -3, 3).unwrap();
        assert!(s.iter().all(|d| *d == s[0]));
        let s = genus2(&[5], &[0]).string(1, -50, 50).unwrap();
        assert_eq!(s.iter().collect::<BTreeSet<_>>().len(), 101);
        assert!(genus2(&[1], &[0]).string(1, 2, 1).is_err());
    }

    #[test]
    fn twist_lattices() {
        let d = genus2(&[1, 1], &[0, 0]);
        let l = lattice_from_twists(&d, &[1, 2]).unwrap();
        assert_eq!(l.point(&[3, 4]).unwrap().twists(), &[3, 4, 0]);
        assert_eq!(lattice_from_twists(&d, &[1, 3]), Err(Error::NotInteresting(3)));
        assert_eq!(lattice_from_twists(&d, &[1, 1]), Err(Error::DuplicateIndex(1)));
        let line = lattice_from_twists(&d, &[2]).unwrap();
        let via_line: Vec<_> = (-3..=3).map(|n| line.point(&[n]).unwrap()).collect();
        assert_eq!(via_line, d.string(2, -3, 3).unwrap());
    }

    #[test]
    fn shift_defects() {
        let noisy = lattice(
            &[("++", "red"), ("+-", "red"), ("-+", "red"), ("--", "red")],
            &[(&[0, 0], "blue"), (&[3, -2], "blue"), (&[5, 5], "green")],
        );
        for axis in [1, 2] {
            match noisy.shift_defect(axis).unwrap() {
                ShiftDefect::Finite(s) => assert!(s.len() <= 6 && !s.is_empty()),
                other => panic!("{other:?}"),
            }
        }
        // left (x < 0) red, right blue
        let halves = lattice(&[("++", "blue"), ("+-", "blue"), ("-+", "red"), ("--", "red")], &[]);
        assert!(!halves.shift_defect(1).unwrap().is_finite());
        assert_eq!(halves.shift_defect(2).unwrap(), ShiftDefect::Finite(BTreeSet::new()));
        // top (y >= 0) red, bottom blue
        let top = lattice(&[("++", "red"), ("-+", "red"), ("+-", "blue"), ("--", "blue")], &[]);
        assert!(top.shift_defect(1).unwrap().is_finite());
        assert!(!top.shift_defect(2).unwrap().is_finite());
    }

    #[test]
    fn one_dimensional_lattice_can_have_distinct_ends() {
        let line = lattice(&[("-", "red"), ("+", "blue")], &[]);
        assert_eq!(line.shift_defect(1).unwrap(), ShiftDefect::Finite(BTreeSet::from([vec![-1]])));
        assert_eq!(line.future(1).unwrap(), col("blue"));
        assert_eq!(line.past(1).unwrap(), col("red"));
        assert_eq!(line.lemma1_check(), Err(Error::BadDimension(1)));
    }

    #[test]
    fn futures_and_pasts() {
        let noisy = lattice(
            &[("++", "red"), ("+-", "red"), ("-+", "red"), ("--", "red")],
            &[(&[4, 0], "blue"), (&[-9, 0], "blue")],
        );
        for axis in [1, 2] {
            assert_eq!(noisy.future(axis).unwrap(), col("red"));
            assert_eq!(noisy.past(axis).unwrap(), col("red"));
        }
        let halves = lattice(&[("++", "blue"), ("+-", "blue"), ("-+", "red"), ("--", "red")], &[]);
        assert_eq!(halves.future(2), Err(Error::NotAlmostInvariant { axis: 1 }));
        assert_eq!(halves.common_future_check(), Err(Error::NotAlmostInvariant { axis: 1 }));
    }

    #[test]
    fn lemma1_reports() {
        let noisy = lattice(
            &[("++", "red"), ("+-", "red"), ("-+", "red"), ("--", "red")],
            &[(&[1, 2], "blue"), (&[-3, 0], "blue")],
        );
        match noisy.lemma1_check().unwrap() {
            Lemma1Report::Pass { region, axes } => {
                assert_eq!(region, Region { lo: vec![-4, -1], hi: vec![2, 3] });
                assert!(axes.iter().all(|a| a.future == a.past));
            }
            other => panic!("{other:?}"),
        }
        assert!(noisy.common_future_check().unwrap().passed());

        let halves = lattice(&[("++", "blue"), ("+-", "blue"), ("-+", "red"), ("--", "red")], &[]);
        assert_eq!(halves.lemma1_check().unwrap(), Lemma1Report::HypothesisFailure { axes: vec![1] });
    }

    #[test]
    fn lattice_validation() {
        let partial = BTreeMap::from([("++".parse().unwrap(), col("a"))]);
        assert!(LatticeColoring::new(2, partial, BTreeMap::new()).is_err());
        assert_eq!(
            LatticeColoring::new(0, BTreeMap::new(), BTreeMap::new()),
            Err(Error::BadDimension(0))
        );
        let l = lattice(&[("+", "a"), ("-", "b")], &[]);
        assert_eq!(l.color_at(&[1, 2]), Err(Error::DimensionMismatch { expected: 1, actual: 2 }));
    }
}
