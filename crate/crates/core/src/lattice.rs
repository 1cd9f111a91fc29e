//! Unoriented simple closed curves on the torus as primitive pairs up to sign,
//! and the action of `SL(2,Z)` on them.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// A primitive pair `(p, q)` in canonical sign form.
///
/// The canonical representative is the one lying in `X1 ⊔ X2 ⊔ X3`, which is
/// the same as `q > 0`, or `q == 0` and `p > 0`. Coordinates equal to
/// `i64::MIN` are rejected so that negation never overflows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusCurve {
    p: i64,
    q: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    /// `p >= 1, q >= 0`
    X1,
    /// `q > -p >= 0`
    X2,
    /// `-p >= q > 0`
    X3,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl TorusCurve {
    /// The curve `(1, 0)`, the extra vertex below the root of the tree.
    pub const BASE: TorusCurve = TorusCurve { p: 1, q: 0 };
    /// The curve `(1, 1)`, root of the tree.
    pub const ROOT: TorusCurve = TorusCurve { p: 1, q: 1 };

    /// Canonicalizes an arbitrary primitive pair.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        canonicalize(p, q)
    }

    /// Sign normalization of a pair already known to be primitive.
    fn from_primitive(p: i64, q: i64) -> Result<Self> {
        if p == i64::MIN || q == i64::MIN {
            return Err(Error::Overflow);
        }
        debug_assert_eq!(gcd(p.unsigned_abs(), q.unsigned_abs()), 1);
        if q > 0 || (q == 0 && p > 0) {
            Ok(TorusCurve { p, q })
        } else {
            Ok(TorusCurve { p: -p, q: -q })
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn region(&self) -> Region {
        let (p, q) = (self.p, self.q);
        if p >= 1 && q >= 0 {
            Region::X1
        } else if q > -p && -p >= 0 {
            Region::X2
        } else {
            debug_assert!(-p >= q && q > 0);
            Region::X3
        }
    }

    /// `max(|p|, |q|)`.
    pub fn max_norm(&self) -> u64 {
        self.p.unsigned_abs().max(self.q.unsigned_abs())
    }

    /// Image under `S`, which never overflows on canonical input.
    pub fn s_image(&self) -> TorusCurve {
        // S(p,q) = (q,-p) = -(-q,p)
        TorusCurve::from_primitive(self.q, -self.p).expect("S preserves the coordinate range")
    }

    pub fn r_image(&self) -> Result<TorusCurve> {
        IntMatrix2::R.apply(self)
    }

    pub fn r_inv_image(&self) -> Result<TorusCurve> {
        IntMatrix2::R_INV.apply(self)
    }

    /// Returns `(x1, j)` with `x1` in `X1` and `self = R^j x1`.
    pub fn orbit_rep_x1(&self) -> (TorusCurve, u8) {
        let (p, q) = (self.p, self.q);
        match self.region() {
            Region::X1 => (*self, 0),
            // R^-1 (p,q) = (p+q, -p); p <= 0 < q keeps both sums in range.
            Region::X2 => (TorusCurve { p: p + q, q: -p }, 1),
            // R^-2 = R, and R (p,q) = (-q, p+q) ~ (q, -p-q) with p+q <= 0.
            Region::X3 => (TorusCurve { p: q, q: -(p + q) }, 2),
        }
    }

    /// Geometric intersection number `|p q' - q p'|` on the torus.
    pub fn intersection(&self, other: &TorusCurve) -> u128 {
        let det = self.p as i128 * other.q as i128 - self.q as i128 * other.p as i128;
        det.unsigned_abs()
    }

    /// The transvection `v ↦ v + ⟨v, x⟩ x` realizing the Dehn twist along
    /// this curve, where `⟨(a,b),(p,q)⟩ = aq - bp`.
    pub fn twist_matrix(&self) -> Result<IntMatrix2> {
        let (p, q) = (self.p, self.q);
        let pq = p.checked_mul(q).ok_or(Error::Overflow)?;
        let pp = p.checked_mul(p).ok_or(Error::Overflow)?;
        let qq = q.checked_mul(q).ok_or(Error::Overflow)?;
        let a = pq.checked_add(1).ok_or(Error::Overflow)?;
        let d = 1i64.checked_sub(pq).ok_or(Error::Overflow)?;
        Ok(IntMatrix2 { a, b: -pp, c: qq, d })
    }
}

/// Canonical sign representative of a primitive pair.
pub fn canonicalize(p: i64, q: i64) -> Result<TorusCurve> {
    if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return Err(Error::NotPrimitive { p, q });
    }
    TorusCurve::from_primitive(p, q)
}

/// All canonical curves with `max(|p|,|q|) <= n`, sorted.
pub fn ball(n: u32) -> Vec<TorusCurve> {
    let n = i64::from(n);
    let mut out = Vec::new();
    for q in 0..=n {
        for p in -n..=n {
            if q == 0 && p <= 0 {
                continue;
            }
            if gcd(p.unsigned_abs(), q.unsigned_abs()) == 1 {
                out.push(TorusCurve { p, q });
            }
        }
    }
    out.sort_unstable();
    out
}

impl fmt::Display for TorusCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for TorusCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "curve", input: s.to_string() };
        let (p, q) = s.split_once('/').ok_or_else(err)?;
        let p: i64 = p.trim().parse().map_err(|_| err())?;
        let q: i64 = q.trim().parse().map_err(|_| err())?;
        canonicalize(p, q)
    }
}

/// A 2×2 integer matrix of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2 { a: 1, b: 0, c: 0, d: 1 };
    pub const S: IntMatrix2 = IntMatrix2 { a: 0, b: 1, c: -1, d: 0 };
    pub const S_INV: IntMatrix2 = IntMatrix2 { a: 0, b: -1, c: 1, d: 0 };
    pub const R: IntMatrix2 = IntMatrix2 { a: 0, b: -1, c: 1, d: 1 };
    pub const R_INV: IntMatrix2 = IntMatrix2 { a: 1, b: 1, c: -1, d: 0 };

    /// Builds `[[a, b], [c, d]]`, rejecting determinants other than 1.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NotUnimodular { a, b, c, d });
        }
        Ok(IntMatrix2 { a, b, c, d })
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn inverse(&self) -> Result<IntMatrix2> {
        let neg = |x: i64| x.checked_neg().ok_or(Error::Overflow);
        Ok(IntMatrix2 { a: self.d, b: neg(self.b)?, c: neg(self.c)?, d: self.a })
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &IntMatrix2) -> Result<IntMatrix2> {
        let dot = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            x.checked_mul(y)
                .and_then(|l| z.checked_mul(w).and_then(|r| l.checked_add(r)))
                .ok_or(Error::Overflow)
        };
        Ok(IntMatrix2 {
            a: dot(self.a, rhs.a, self.b, rhs.c)?,
            b: dot(self.a, rhs.b, self.b, rhs.d)?,
            c: dot(self.c, rhs.a, self.d, rhs.c)?,
            d: dot(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    /// Matrix times the column vector `(p, q)`, then sign canonicalization.
    pub fn apply(&self, x: &TorusCurve) -> Result<TorusCurve> {
        let row = |u: i64, v: i64| -> Result<i64> {
            u.checked_mul(x.p)
                .and_then(|l| v.checked_mul(x.q).and_then(|r| l.checked_add(r)))
                .ok_or(Error::Overflow)
        };
        TorusCurve::from_primitive(row(self.a, self.b)?, row(self.c, self.d)?)
    }

    /// Integer power, negative exponents going through the inverse.
    pub fn pow(&self, n: i64) -> Result<IntMatrix2> {
        let mut base = if n < 0 { self.inverse()? } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = IntMatrix2::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// The two generators whose defects determine almost invariance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    S,
    R,
}

impl Generator {
    pub fn matrix(self) -> IntMatrix2 {
        match self {
            Generator::S => IntMatrix2::S,
            Generator::R => IntMatrix2::R,
        }
    }

    pub fn act(self, x: &TorusCurve) -> Result<TorusCurve> {
        match self {
            Generator::S => Ok(x.s_image()),
            Generator::R => x.r_image(),
        }
    }

    pub fn act_inverse(self, x: &TorusCurve) -> Result<TorusCurve> {
        match self {
            Generator::S => Ok(x.s_image()),
            Generator::R => x.r_inv_image(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::S => "S",
            Generator::R => "R",
        })
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(Generator::S),
            "R" | "r" => Ok(Generator::R),
            _ => Err(Error::Parse { what: "generator", input: s.to_string() }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLetter {
    S,
    SInv,
    R,
    RInv,
}

impl GroupLetter {
    pub fn matrix(self) -> IntMatrix2 {
        match self {
            GroupLetter::S => IntMatrix2::S,
            GroupLetter::SInv => IntMatrix2::S_INV,
            GroupLetter::R => IntMatrix2::R,
            GroupLetter::RInv => IntMatrix2::R_INV,
        }
    }
}

/// A word over `S, S⁻¹, R, R⁻¹`, read as the matrix product in written
/// order: `[S⁻¹, R]` is `S⁻¹·R`, so `R` acts first.
///
/// Text form uses `S`, `R` and lowercase `s`, `r` for the inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<GroupLetter>);

impl GroupWord {
    pub fn matrix(&self) -> Result<IntMatrix2> {
        self.0
            .iter()
            .try_fold(IntMatrix2::IDENTITY, |acc, l| acc.mul(&l.matrix()))
    }

    pub fn apply(&self, x: &TorusCurve) -> Result<TorusCurve> {
        self.0.iter().rev().try_fold(*x, |y, l| l.matrix().apply(&y))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                GroupLetter::S => "S",
                GroupLetter::SInv => "s",
                GroupLetter::R => "R",
                GroupLetter::RInv => "r",
            })?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'S' => Ok(GroupLetter::S),
                's' => Ok(GroupLetter::SInv),
                'R' => Ok(GroupLetter::R),
                'r' => Ok(GroupLetter::RInv),
                _ => Err(Error::Parse { what: "group word", input: s.to_string() }),
            })
            .collect::<Result<Vec<_>>>()
            .map(GroupWord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(p: i64, q: i64) -> TorusCurve {
        TorusCurve::new(p, q).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(c(1, 0), TorusCurve::BASE);
        let x = c(3, -5);
        assert_eq!((x.p(), x.q()), (-3, 5));
        assert_eq!(x.region(), Region::X2);
        let y = c(1, -1);
        assert_eq!((y.p(), y.q()), (-1, 1));
        assert_eq!(y.region(), Region::X3);
        assert_eq!(c(-1, 0), TorusCurve::BASE);
    }

    #[test]
    fn rejects_non_primitive() {
        assert_eq!(TorusCurve::new(0, 0), Err(Error::NotPrimitive { p: 0, q: 0 }));
        assert_eq!(TorusCurve::new(2, 4), Err(Error::NotPrimitive { p: 2, q: 4 }));
        assert!(TorusCurve::new(0, 1).is_ok());
        assert_eq!(TorusCurve::new(i64::MIN, 1), Err(Error::Overflow));
    }

    #[test]
    fn regions() {
        assert_eq!(c(1, 1).region(), Region::X1);
        assert_eq!(c(0, 1).region(), Region::X2);
        assert_eq!(c(-2, 1).region(), Region::X3);
    }

    #[test]
    fn generator_actions() {
        assert_eq!(IntMatrix2::S.apply(&c(1, 0)).unwrap(), c(0, 1));
        assert_eq!(IntMatrix2::R.apply(&c(1, 1)).unwrap(), c(-1, 2));
        assert_eq!(IntMatrix2::IDENTITY.apply(&c(4, 7)).unwrap(), c(4, 7));
        // R^-1 (-q, p) = (p-q, q)
        assert_eq!(IntMatrix2::R_INV.apply(&c(-3, 5)).unwrap(), c(2, 3));
    }

    #[test]
    fn words() {
        let ss: GroupWord = "SS".parse().unwrap();
        assert_eq!(ss.apply(&c(5, 3)).unwrap(), c(5, 3));
        let rrr: GroupWord = "RRR".parse().unwrap();
        assert_eq!(rrr.apply(&c(2, 7)).unwrap(), c(2, 7));
        let w = GroupWord(vec![GroupLetter::SInv, GroupLetter::R]);
        assert_eq!(w.apply(&c(1, 1)).unwrap(), c(2, 1));
        assert_eq!(w.matrix().unwrap().apply(&c(1, 1)).unwrap(), c(2, 1));
        assert!("SX".parse::<GroupWord>().is_err());
    }

    #[test]
    fn orbit_representatives() {
        assert_eq!(c(2, 1).orbit_rep_x1(), (c(2, 1), 0));
        assert_eq!(c(0, 1).orbit_rep_x1(), (c(1, 0), 1));
        assert_eq!(c(-2, 1).orbit_rep_x1(), (c(1, 1), 2));
    }

    #[test]
    fn intersections() {
        assert_eq!(c(1, 0).intersection(&c(0, 1)), 1);
        assert_eq!(c(1, 0).intersection(&c(1, 0)), 0);
        assert_eq!(c(2, 1).intersection(&c(1, 2)), 3);
    }

    #[test]
    fn twist_matrix_along_base() {
        let m = TorusCurve::BASE.twist_matrix().unwrap();
        assert_eq!(m.entries(), [[1, -1], [0, 1]]);
        assert_eq!(m.apply(&TorusCurve::BASE).unwrap(), TorusCurve::BASE);
    }

    #[test]
    fn small_balls() {
        assert_eq!(ball(1), vec![c(-1, 1), c(0, 1), c(1, 0), c(1, 1)]);
        let b2 = ball(2);
        for x in [c(2, 1), c(1, 2), c(-1, 2), c(-2, 1)] {
            assert!(b2.contains(&x));
        }
        assert!(b2.iter().all(|x| TorusCurve::new(x.p(), x.q()).unwrap() == *x));
    }

    #[test]
    fn text_form() {
        let x: TorusCurve = "3/-5".parse().unwrap();
        assert_eq!(x.to_string(), "-3/5");
        assert!("2/4".parse::<TorusCurve>().is_err());
        assert!("3".parse::<TorusCurve>().is_err());
    }

    #[test]
    fn pow_and_inverse() {
        let r3 = IntMatrix2::R.pow(3).unwrap().entries();
        assert_eq!(r3, [[-1, 0], [0, -1]]);
        assert_eq!(IntMatrix2::S.pow(-1).unwrap(), IntMatrix2::S_INV);
        assert!(IntMatrix2::new(1, 1, 1, 1).is_err());
    }
}
