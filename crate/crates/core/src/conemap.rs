//! Piecewise-linear maps of the plane: a fan of cones with one integer matrix
//! of determinant +-1 per cone, agreeing on shared boundary rays.
//!
//! Maps are stored in a canonical form: rays primitive, sorted by angle from
//! the positive x-axis, and adjacent cones with equal matrices merged. A map
//! with no rays is globally linear. Equality of two values is therefore
//! equality of the maps they denote.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::geom::{
    check_ccw_cycle, cmp_angle, gcd, in_arc_half_open, in_open_arc, interior_dir, LatticeVector,
    UnimodularMatrix,
};

/// Matrix entries past this bound abort period searches with a growth verdict.
pub const DEFAULT_GROWTH_BOUND: i64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("expected {expected} matrices for {rays} rays, got {matrices}")]
    ArityMismatch { rays: usize, matrices: usize, expected: usize },
    #[error("a single ray cannot bound a fan; use no rays for a linear map")]
    SingleRay,
    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },
    #[error("ray {index} is not primitive")]
    NotPrimitiveRay { index: usize },
    #[error("rays are not in strict counter-clockwise cyclic order near index {index}")]
    NotCcwFan { index: usize },
    #[error("matrix {index} has determinant {det}, expected +1 or -1")]
    BadDeterminant { index: usize, det: i64 },
    #[error("matrix {index} flips orientation relative to matrix 0")]
    MixedOrientation { index: usize },
    #[error("adjacent pieces disagree on shared ray {ray_index}")]
    Discontinuity { ray_index: usize },
    #[error("map is not periodic within {max_n} iterations")]
    NotPeriodic { max_n: u32 },
    #[error("rotation number is undefined for orientation-reversing maps")]
    RotationUndefined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Preserving => write!(f, "preserving"),
            Orientation::Reversing => write!(f, "reversing"),
        }
    }
}

/// Result of a bounded period search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodOutcome {
    /// Exact: every piece of the n-th power is the identity matrix.
    Periodic(u32),
    /// Some composed matrix entry exceeded the growth bound; the map cannot
    /// be periodic at desk scale.
    GrowthExceeded,
    /// No identity power found within the bound, no growth blow-up either.
    NoPeriodWithinBound,
}

impl PeriodOutcome {
    pub fn period(self) -> Option<u32> {
        match self {
            PeriodOutcome::Periodic(n) => Some(n),
            _ => None,
        }
    }
}

/// Reduced rotation number k/n of an orientation-preserving periodic map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RotationNumber {
    numerator: u32,
    denominator: u32,
}

impl RotationNumber {
    /// Reduces k/n. Requires n > 0 and k < n.
    pub fn new(k: u32, n: u32) -> Self {
        assert!(n > 0 && k < n, "rotation number requires 0 <= k < n");
        let g = gcd(k as i64, n as i64) as u32;
        Self { numerator: k / g, denominator: n / g }
    }

    pub fn numerator(self) -> u32 {
        self.numerator
    }

    pub fn denominator(self) -> u32 {
        self.denominator
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// A continuous plane map that is linear on each cone of a fan.
///
/// `rays` are primitive directions in counter-clockwise cyclic order;
/// `matrices[i]` acts on the closed cone sweeping counter-clockwise from
/// `rays[i]` to `rays[i + 1 mod k]`. An empty ray list denotes a globally
/// linear map carried by a single matrix. Points on a boundary ray belong to
/// the cone the ray opens (the lower-closed convention); continuity makes the
/// choice observationally irrelevant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFanMap {
    rays: Vec<LatticeVector>,
    matrices: Vec<UnimodularMatrix>,
}

impl ConeFanMap {
    /// Validates and canonicalizes a map given as parallel ray/matrix lists.
    ///
    /// Rejects non-fans, non-primitive rays, determinants other than +-1,
    /// mixed orientation, and discontinuities across shared rays, each with
    /// the offending index. Adjacent cones carrying equal matrices are merged
    /// so the piece count is minimal.
    pub fn new(
        rays: Vec<LatticeVector>,
        matrices: Vec<UnimodularMatrix>,
    ) -> Result<Self, MapError> {
        if rays.is_empty() {
            if matrices.len() != 1 {
                return Err(MapError::ArityMismatch {
                    rays: 0,
                    matrices: matrices.len(),
                    expected: 1,
                });
            }
            let det = matrices[0].det();
            if det.abs() != 1 {
                return Err(MapError::BadDeterminant { index: 0, det });
            }
            return Ok(Self { rays, matrices });
        }
        if rays.len() == 1 {
            return Err(MapError::SingleRay);
        }
        if matrices.len() != rays.len() {
            return Err(MapError::ArityMismatch {
                rays: rays.len(),
                matrices: matrices.len(),
                expected: rays.len(),
            });
        }
        for (index, r) in rays.iter().enumerate() {
            if r.is_zero() {
                return Err(MapError::ZeroRay { index });
            }
            if r.primitive().expect("nonzero") != *r {
                return Err(MapError::NotPrimitiveRay { index });
            }
        }
        check_ccw_cycle(&rays).map_err(|index| MapError::NotCcwFan { index })?;
        let sign0 = matrices[0].det().signum();
        for (index, m) in matrices.iter().enumerate() {
            let det = m.det();
            if det.abs() != 1 {
                return Err(MapError::BadDeterminant { index, det });
            }
            if det.signum() != sign0 {
                return Err(MapError::MixedOrientation { index });
            }
        }
        let k = rays.len();
        for i in 0..k {
            let prev = matrices[(i + k - 1) % k];
            if prev * rays[i] != matrices[i] * rays[i] {
                return Err(MapError::Discontinuity { ray_index: i });
            }
        }
        Ok(Self::merged(rays, matrices))
    }

    /// The globally linear map given by one matrix of determinant +-1.
    pub fn linear(matrix: UnimodularMatrix) -> Result<Self, MapError> {
        Self::new(Vec::new(), vec![matrix])
    }

    pub fn identity() -> Self {
        Self { rays: Vec::new(), matrices: vec![UnimodularMatrix::IDENTITY] }
    }

    /// Merge adjacent equal matrices and rotate so rays[0] has least angle.
    fn merged(rays: Vec<LatticeVector>, matrices: Vec<UnimodularMatrix>) -> Self {
        let k = rays.len();
        let keep: Vec<usize> =
            (0..k).filter(|&i| matrices[(i + k - 1) % k] != matrices[i]).collect();
        if keep.is_empty() {
            return Self { rays: Vec::new(), matrices: vec![matrices[0]] };
        }
        // a ray survives iff the matrices on its two sides differ, so the
        // matrix on the merged cone opened by ray i is matrices[i]
        let mut rays: Vec<_> = keep.iter().map(|&i| rays[i]).collect();
        let mut mats: Vec<_> = keep.iter().map(|&i| matrices[i]).collect();
        let first = (0..rays.len())
            .min_by(|&i, &j| cmp_angle(rays[i], rays[j]))
            .expect("nonempty");
        rays.rotate_left(first);
        mats.rotate_left(first);
        Self { rays, matrices: mats }
    }

    pub fn is_linear(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_linear() && self.matrices[0].is_identity()
    }

    /// Number of linear pieces (1 for a globally linear map).
    pub fn pieces(&self) -> usize {
        self.matrices.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn matrices(&self) -> &[UnimodularMatrix] {
        &self.matrices
    }

    pub fn orientation(&self) -> Orientation {
        if self.matrices[0].det() == 1 {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }

    pub(crate) fn max_abs_entry(&self) -> i64 {
        self.matrices.iter().map(|m| m.max_abs_entry()).max().expect("nonempty")
    }

    /// Index of the cone whose half-open arc contains the direction of `p`.
    fn locate(&self, p: LatticeVector) -> usize {
        debug_assert!(!self.rays.is_empty());
        // rays are sorted by absolute angle, so the cone is found by ranking
        let idx = self.rays.partition_point(|&r| cmp_angle(r, p) != Ordering::Greater);
        if idx == 0 {
            self.rays.len() - 1
        } else {
            idx - 1
        }
    }

    /// The matrix acting at a nonzero direction.
    pub fn matrix_at(&self, direction: LatticeVector) -> UnimodularMatrix {
        assert!(!direction.is_zero(), "direction must be nonzero");
        if self.is_linear() {
            self.matrices[0]
        } else {
            self.matrices[self.locate(direction)]
        }
    }

    /// Applies the map to a lattice point. The origin is fixed.
    pub fn eval(&self, p: LatticeVector) -> LatticeVector {
        if p.is_zero() {
            p
        } else {
            self.matrix_at(p) * p
        }
    }

    /// The composite `self . other` (apply `other` first), as a fan map with
    /// minimal pieces: the rays of `other` are kept, each ray of `self` is
    /// pulled back through the piece of `other` whose cone its preimage
    /// lands in, and equal adjacent pieces are merged afterwards.
    pub fn compose(&self, other: &ConeFanMap) -> ConeFanMap {
        if self.is_linear() && other.is_linear() {
            return ConeFanMap::linear(self.matrices[0] * other.matrices[0])
                .expect("products of unimodular matrices are unimodular");
        }
        let mut rays = other.rays.clone();
        for &r in &self.rays {
            if other.is_linear() {
                let pre = other.matrices[0].inverse().expect("unimodular") * r;
                rays.push(pre.primitive().expect("nonzero"));
            } else {
                let k = other.rays.len();
                for j in 0..k {
                    let a = other.rays[j];
                    let b = other.rays[(j + 1) % k];
                    let pre = other.matrices[j].inverse().expect("unimodular") * r;
                    let pre = pre.primitive().expect("nonzero");
                    if in_open_arc(a, b, pre) {
                        rays.push(pre);
                    }
                }
            }
        }
        rays.sort_by(|&u, &v| cmp_angle(u, v));
        rays.dedup();
        let k = rays.len();
        let matrices = (0..k)
            .map(|i| {
                let d = interior_dir(rays[i], rays[(i + 1) % k]);
                let inner = other.matrix_at(d);
                let outer = self.matrix_at(inner * d);
                outer * inner
            })
            .collect();
        ConeFanMap::new(rays, matrices).expect("composition preserves map invariants")
    }

    /// Iterated composition; the zeroth power is the identity.
    pub fn power(&self, exponent: u32) -> ConeFanMap {
        let mut acc = ConeFanMap::identity();
        for _ in 0..exponent {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Smallest n <= max_n with `self^n = id`, decided by exact identity of
    /// every merged piece, never by sampling points.
    pub fn period(&self, max_n: u32) -> PeriodOutcome {
        self.period_with_growth_bound(max_n, DEFAULT_GROWTH_BOUND)
    }

    /// Period search with an explicit growth cutoff: once any composed matrix
    /// entry exceeds `growth_bound` the orbit cannot return and the search
    /// reports growth instead of exhausting the bound.
    pub fn period_with_growth_bound(&self, max_n: u32, growth_bound: i64) -> PeriodOutcome {
        assert!(max_n >= 1);
        let mut acc = self.clone();
        for n in 1..=max_n {
            if acc.max_abs_entry() > growth_bound {
                return PeriodOutcome::GrowthExceeded;
            }
            if acc.is_identity() {
                return PeriodOutcome::Periodic(n);
            }
            if n < max_n {
                acc = self.compose(&acc);
            }
        }
        PeriodOutcome::NoPeriodWithinBound
    }

    /// Rotation number of an orientation-preserving map that is periodic
    /// within `max_n`: the winding count of the orbit of (1, 0) over one
    /// period, reduced. Each half-open arc between successive orbit
    /// directions is tested for containing the reference direction (1, 0),
    /// so every crossing is counted exactly once.
    pub fn rotation_number(&self, max_n: u32) -> Result<RotationNumber, MapError> {
        if self.orientation() == Orientation::Reversing {
            return Err(MapError::RotationUndefined);
        }
        let n = match self.period(max_n) {
            PeriodOutcome::Periodic(n) => n,
            _ => return Err(MapError::NotPeriodic { max_n }),
        };
        let reference = LatticeVector::new(1, 0);
        let mut k = 0u32;
        let mut p = reference;
        let mut dir = reference;
        for _ in 0..n {
            let q = self.eval(p);
            let qdir = q.primitive().expect("periodic orbits avoid the origin");
            if in_arc_half_open(dir, qdir, reference) {
                k += 1;
            }
            p = q;
            dir = qdir;
        }
        debug_assert_eq!(p, reference, "orbit of a period-{n} map must close");
        Ok(RotationNumber::new(k, n))
    }
}
