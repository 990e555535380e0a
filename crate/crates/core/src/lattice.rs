//! Exact planar lattice geometry.
//!
//! Integer vectors carry edge directions, rational points carry positions.
//! Nothing here touches floating point: every predicate is decided exactly.

use core::cmp::Ordering;
use core::fmt;
use core::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An integer vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVec {
    pub x: i64,
    pub y: i64,
}

impl IntVec {
    pub const ZERO: IntVec = IntVec { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        IntVec { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_add(self, other: IntVec) -> Result<IntVec> {
        Ok(IntVec {
            x: self.x.checked_add(other.x).ok_or(Error::Overflow)?,
            y: self.y.checked_add(other.y).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_scale(self, k: i64) -> Result<IntVec> {
        Ok(IntVec {
            x: self.x.checked_mul(k).ok_or(Error::Overflow)?,
            y: self.y.checked_mul(k).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_neg(self) -> Result<IntVec> {
        Ok(IntVec {
            x: self.x.checked_neg().ok_or(Error::Overflow)?,
            y: self.y.checked_neg().ok_or(Error::Overflow)?,
        })
    }

    /// Dot product, exact for all `i64` inputs.
    pub fn dot(self, other: IntVec) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    pub fn is_primitive(self) -> bool {
        !self.is_zero() && self.x.unsigned_abs().gcd(&self.y.unsigned_abs()) == 1
    }
}

impl Neg for IntVec {
    type Output = IntVec;

    /// Panics on `i64::MIN` components; use [`IntVec::checked_neg`] for untrusted input.
    fn neg(self) -> IntVec {
        self.checked_neg().expect("IntVec negation overflowed")
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// `u.x·v.y − u.y·v.x`.
///
/// Computed in `i128`; for `i64` inputs the result always fits.
pub fn wedge(u: IntVec, v: IntVec) -> i128 {
    u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128
}

/// Divides `v` by the gcd of its components.
pub fn primitive_of(v: IntVec) -> Result<IntVec> {
    if v.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    let g = v.x.unsigned_abs().gcd(&v.y.unsigned_abs());
    // g >= 1, and g divides both components, so the quotients fit in i64
    // except for i64::MIN / 1, which is itself.
    let g = g as i128;
    Ok(IntVec {
        x: (v.x as i128 / g) as i64,
        y: (v.y as i128 / g) as i64,
    })
}

/// Quarter turn counterclockwise: `(x, y) ↦ (−y, x)`.
///
/// The fibre circle of a visible Lagrangian over a segment with direction `v`
/// has class `rot90(v)`.
pub fn rot90(v: IntVec) -> Result<IntVec> {
    Ok(IntVec {
        x: v.y.checked_neg().ok_or(Error::Overflow)?,
        y: v.x,
    })
}

/// A point with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RatPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RatPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RatPoint {
            x: int(x),
            y: int(y),
        }
    }

    pub fn origin() -> Self {
        RatPoint::from_ints(0, 0)
    }

    /// `self + t·v`.
    pub fn offset(&self, v: IntVec, t: &Rational) -> RatPoint {
        RatPoint {
            x: &self.x + t * int(v.x),
            y: &self.y + t * int(v.y),
        }
    }

    /// `other − self` as a rational vector.
    pub fn delta_to(&self, other: &RatPoint) -> (Rational, Rational) {
        (&other.x - &self.x, &other.y - &self.y)
    }

    /// If `other = self + t·v` for some rational `t`, returns `t`.
    pub fn multiple_along(&self, other: &RatPoint, v: IntVec) -> Option<Rational> {
        if v.is_zero() {
            return None;
        }
        let (dx, dy) = self.delta_to(other);
        // dx·v.y − dy·v.x = 0 and t = dx/v.x or dy/v.y
        if &dx * int(v.y) != &dy * int(v.x) {
            return None;
        }
        Some(if v.x != 0 {
            dx / int(v.x)
        } else {
            dy / int(v.y)
        })
    }

    /// `(a + b) / 2`.
    pub fn midpoint(a: &RatPoint, b: &RatPoint) -> RatPoint {
        let two = int(2);
        RatPoint {
            x: (&a.x + &b.x) / &two,
            y: (&a.y + &b.y) / &two,
        }
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Primitive lattice direction and affine length of the segment `from → to`.
///
/// `to − from = length · direction` with `direction` primitive and `length > 0`.
pub fn direction_between(from: &RatPoint, to: &RatPoint) -> Result<(IntVec, Rational)> {
    let (dx, dy) = from.delta_to(to);
    if dx.is_zero() && dy.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    let l = dx.denom().lcm(dy.denom());
    let ix = dx.numer() * (&l / dx.denom());
    let iy = dy.numer() * (&l / dy.denom());
    let g = ix.gcd(&iy);
    let px = (&ix / &g).to_i64().ok_or(Error::Overflow)?;
    let py = (&iy / &g).to_i64().ok_or(Error::Overflow)?;
    Ok((IntVec::new(px, py), Rational::new(g, l)))
}

/// Sign of the cross product `(b − a) × (c − a)`.
pub fn orient(a: &RatPoint, b: &RatPoint, c: &RatPoint) -> Ordering {
    let lhs = (&b.x - &a.x) * (&c.y - &a.y);
    let rhs = (&b.y - &a.y) * (&c.x - &a.x);
    lhs.cmp(&rhs)
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: &RatPoint, a: &RatPoint, b: &RatPoint) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Whether the closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_intersect(a: &RatPoint, b: &RatPoint, c: &RatPoint, d: &RatPoint) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Integral affine map `p ↦ L·p + t` with `det L = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularAffineMap {
    linear: [[i64; 2]; 2],
    translation: (Rational, Rational),
}

impl UnimodularAffineMap {
    pub fn new(linear: [[i64; 2]; 2], translation: (Rational, Rational)) -> Result<Self> {
        let det = linear[0][0] as i128 * linear[1][1] as i128
            - linear[0][1] as i128 * linear[1][0] as i128;
        if det != 1 && det != -1 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(UnimodularAffineMap {
            linear,
            translation,
        })
    }

    pub fn identity() -> Self {
        UnimodularAffineMap {
            linear: [[1, 0], [0, 1]],
            translation: (Rational::zero(), Rational::zero()),
        }
    }

    pub fn linear(&self) -> [[i64; 2]; 2] {
        self.linear
    }

    pub fn translation(&self) -> &(Rational, Rational) {
        &self.translation
    }

    pub fn det(&self) -> i64 {
        let l = self.linear;
        (l[0][0] as i128 * l[1][1] as i128 - l[0][1] as i128 * l[1][0] as i128) as i64
    }

    pub fn apply_vec(&self, v: IntVec) -> Result<IntVec> {
        let l = self.linear;
        let x = l[0][0] as i128 * v.x as i128 + l[0][1] as i128 * v.y as i128;
        let y = l[1][0] as i128 * v.x as i128 + l[1][1] as i128 * v.y as i128;
        Ok(IntVec {
            x: i64::try_from(x).map_err(|_| Error::Overflow)?,
            y: i64::try_from(y).map_err(|_| Error::Overflow)?,
        })
    }

    pub fn apply_point(&self, p: &RatPoint) -> RatPoint {
        let l = self.linear;
        RatPoint {
            x: int(l[0][0]) * &p.x + int(l[0][1]) * &p.y + &self.translation.0,
            y: int(l[1][0]) * &p.x + int(l[1][1]) * &p.y + &self.translation.1,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularAffineMap) -> Result<UnimodularAffineMap> {
        let a = self.linear;
        let b = other.linear;
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let v = a[i][0] as i128 * b[0][j] as i128 + a[i][1] as i128 * b[1][j] as i128;
                *cell = i64::try_from(v).map_err(|_| Error::Overflow)?;
            }
        }
        let t = self.apply_point(&RatPoint::new(
            other.translation.0.clone(),
            other.translation.1.clone(),
        ));
        UnimodularAffineMap::new(m, (t.x, t.y))
    }
}
