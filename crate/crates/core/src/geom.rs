//! Exact integer primitives for plane geometry: lattice vectors, 2x2 integer
//! matrices, angular order of rays, and lattice-point counting.
//!
//! Everything in this module is exact. There is no floating point, and all
//! arithmetic is checked against overflow by the build profile.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum GeomError {
    #[error("zero direction")]
    ZeroDirection,
    #[error("degenerate triangle: vertices are collinear")]
    DegenerateTriangle,
}

/// A point or direction of the integer lattice Z^2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const ZERO: Self = Self { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Cross product `self.x * other.y - self.y * other.x`.
    ///
    /// Positive iff `other` lies counter-clockwise of `self` within a half
    /// turn, zero iff the two are parallel.
    pub fn cross(self, other: Self) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Self) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// The same direction with coprime coordinates.
    pub fn primitive(self) -> Result<Self, GeomError> {
        if self.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        let g = gcd(self.x.abs(), self.y.abs());
        Ok(Self::new(self.x / g, self.y / g))
    }

    /// Counter-clockwise quarter turn.
    pub(crate) fn rot90(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn max_abs(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for LatticeVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for LatticeVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * v.x, self * v.y)
    }
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Multiplicative inverse of `k` modulo `n`, if `gcd(k, n) = 1`.
pub(crate) fn mod_inverse(k: u32, n: u32) -> Option<u32> {
    let (mut r0, mut r1) = (n as i64, (k % n) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i64) as u32)
}

/// A 2x2 integer matrix, row-major `[[a, b], [c, d]]`.
///
/// The name records the role the type plays: pieces of a plane map must have
/// determinant +-1, which is enforced where maps are built. `order` and the
/// arithmetic here work for arbitrary integer entries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// Matrix whose columns are `u` and `v`.
    pub fn from_columns(u: LatticeVector, v: LatticeVector) -> Self {
        Self::new(u.x, v.x, u.y, v.y)
    }

    pub fn det(self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(self) -> i64 {
        self.a + self.d
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    pub fn apply(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    /// Exact inverse, defined only for determinant +-1.
    pub fn inverse(self) -> Option<Self> {
        match self.det() {
            1 => Some(Self::new(self.d, -self.b, -self.c, self.a)),
            -1 => Some(Self::new(-self.d, self.b, self.c, -self.a)),
            _ => None,
        }
    }

    /// Smallest `n <= max_n` with `self^n = id`, by exact integer powering.
    ///
    /// A matrix of finite order has determinant +-1, so anything else is
    /// rejected immediately.
    pub fn order(self, max_n: u32) -> Option<u32> {
        if self.det().abs() != 1 {
            return None;
        }
        let mut p = self;
        for n in 1..=max_n {
            if p.is_identity() {
                return Some(n);
            }
            p = p * self;
        }
        None
    }

    pub fn max_abs_entry(self) -> i64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }
}

impl Mul for UnimodularMatrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

impl Mul<LatticeVector> for UnimodularMatrix {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        self.apply(v)
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// 0 for the half-open upper half turn (angle in [0, pi)), 1 for the lower.
fn half(v: LatticeVector) -> u8 {
    debug_assert!(!v.is_zero());
    if v.y > 0 || (v.y == 0 && v.x > 0) {
        0
    } else {
        1
    }
}

/// Total order on nonzero vectors by absolute angle in [0, 2*pi), starting at
/// the positive x-axis. Quadrant bucket first, then a cross-product sign; no
/// trigonometry anywhere.
pub(crate) fn cmp_angle(u: LatticeVector, v: LatticeVector) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| match u.cross(v) {
        c if c > 0 => Ordering::Less,
        c if c < 0 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// Angular position class of `x` relative to `a`: 0 same direction, 1 within
/// the open half turn counter-clockwise of `a`, 2 opposite, 3 beyond.
fn rel_class(a: LatticeVector, x: LatticeVector) -> u8 {
    let c = a.cross(x);
    if c > 0 {
        1
    } else if c < 0 {
        3
    } else if a.dot(x) > 0 {
        0
    } else {
        2
    }
}

/// Compare the counter-clockwise angular distance from `a` of `x` and `y`.
fn rel_cmp(a: LatticeVector, x: LatticeVector, y: LatticeVector) -> Ordering {
    let (cx, cy) = (rel_class(a, x), rel_class(a, y));
    cx.cmp(&cy).then_with(|| {
        if cx == 1 || cx == 3 {
            match x.cross(y) {
                c if c > 0 => Ordering::Less,
                c if c < 0 => Ordering::Greater,
                _ => Ordering::Equal,
            }
        } else {
            Ordering::Equal
        }
    })
}

/// Does `p` lie in the half-open arc that sweeps counter-clockwise from
/// direction `a` (inclusive) to direction `b` (exclusive)? Arcs of any width
/// below a full turn are supported; `a == b` denotes the empty arc.
pub(crate) fn in_arc_half_open(a: LatticeVector, b: LatticeVector, p: LatticeVector) -> bool {
    rel_cmp(a, p, b) == Ordering::Less
}

/// Strict interior of the arc from `a` to `b`.
pub(crate) fn in_open_arc(a: LatticeVector, b: LatticeVector, p: LatticeVector) -> bool {
    rel_class(a, p) != 0 && in_arc_half_open(a, b, p)
}

/// Some direction strictly inside the counter-clockwise arc from `a` to `b`.
pub(crate) fn interior_dir(a: LatticeVector, b: LatticeVector) -> LatticeVector {
    let c = a.cross(b);
    if c > 0 {
        a + b
    } else if c == 0 {
        // distinct parallel directions are opposite: the arc is a half turn
        a.rot90()
    } else {
        -(a + b)
    }
}

/// Checks that nonzero `rays` are pairwise distinct directions listed in
/// strictly counter-clockwise cyclic order winding exactly once. Gaps of any
/// size are allowed. Returns the offending index on failure.
pub(crate) fn check_ccw_cycle(rays: &[LatticeVector]) -> Result<(), usize> {
    let k = rays.len();
    if k < 2 {
        return Err(0);
    }
    let mut descents = 0usize;
    let mut descent_at = 0usize;
    for i in 0..k {
        let u = rays[i];
        let v = rays[(i + 1) % k];
        match cmp_angle(u, v) {
            Ordering::Equal => return Err(i),
            Ordering::Greater => {
                descents += 1;
                descent_at = i;
            }
            Ordering::Less => {}
        }
    }
    // one descent = the single wrap past the reference axis = one full turn
    if descents == 1 {
        Ok(())
    } else {
        Err(descent_at)
    }
}

/// True iff the rays form a strict counter-clockwise fan: pairwise
/// non-parallel, one full turn, every successive gap strictly below a half
/// turn (including the wrap from last back to first).
pub fn is_ccw_fan(rays: &[LatticeVector]) -> bool {
    if rays.iter().any(|r| r.is_zero()) || check_ccw_cycle(rays).is_err() {
        return false;
    }
    let k = rays.len();
    (0..k).all(|i| rays[i].cross(rays[(i + 1) % k]) > 0)
}

/// All lattice points in the closed triangle `a b c`, in lexicographic order
/// (x, then y), found by a bounding-box scan with exact half-plane tests.
pub fn lattice_points_in_triangle(
    a: LatticeVector,
    b: LatticeVector,
    c: LatticeVector,
) -> Result<Vec<LatticeVector>, GeomError> {
    let orient = (b - a).cross(c - a);
    if orient == 0 {
        return Err(GeomError::DegenerateTriangle);
    }
    let sign = orient.signum();
    let xmin = a.x.min(b.x).min(c.x);
    let xmax = a.x.max(b.x).max(c.x);
    let ymin = a.y.min(b.y).min(c.y);
    let ymax = a.y.max(b.y).max(c.y);
    let mut out = Vec::new();
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            let p = LatticeVector::new(x, y);
            let inside = sign * (b - a).cross(p - a) >= 0
                && sign * (c - b).cross(p - b) >= 0
                && sign * (a - c).cross(p - c) >= 0;
            if inside {
                out.push(p);
            }
        }
    }
    Ok(out)
}
