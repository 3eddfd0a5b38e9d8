//! Fundamental polygons and their trace sequences.
//!
//! A fundamental polygon is a counter-clockwise cycle of lattice vectors
//! e_0, ..., e_{n-1} in which every consecutive origin triangle has area 1/2
//! (equivalently cross(e_i, e_{i+1}) = 1). Such a polygon determines a
//! periodic piecewise-linear map of period n and rotation number 1/n, and is
//! in turn encoded by the integer sequence m_i with e_{i-1} + e_{i+1} = m_i e_i.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::conemap::{ConeFanMap, MapError, Orientation};
use crate::geom::{
    check_ccw_cycle, gcd, lattice_points_in_triangle, mod_inverse, LatticeVector,
    UnimodularMatrix,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("a fundamental polygon needs at least 3 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("duplicate vertex at indices {first} and {second}")]
    DuplicateVertex { first: usize, second: usize },
    #[error("vertices are not in strict counter-clockwise order near index {index}")]
    NotCcw { index: usize },
    #[error("cross(e_{index}, e_{next}) = {value}, expected 1")]
    CrossNotOne { index: usize, next: usize, value: i64 },
    #[error("triangle 0 e_{index} e_{next} contains extra lattice point {point}")]
    ExtraLatticePoint { index: usize, next: usize, point: LatticeVector },
    #[error("sequence does not close into a polygon")]
    ClosureFailure,
    #[error("vertex {index} is not removable: e_{index} != e_{prev} + e_{next}")]
    NotRemovable { index: usize, prev: usize, next: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The integers m_0, ..., m_{n-1} with e_{i-1} + e_{i+1} = m_i e_i; entry i is
/// the trace of the i-th linear piece of the polygon's map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceSequence {
    entries: Vec<i64>,
}

impl TraceSequence {
    pub fn new(entries: Vec<i64>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Lexicographically least cyclic rotation; the canonical representative
    /// of the sequence up to the free choice of starting vertex.
    pub fn canonical(&self) -> TraceSequence {
        let n = self.entries.len();
        let best = (0..n)
            .map(|s| {
                let mut rot = self.entries.clone();
                rot.rotate_left(s);
                rot
            })
            .min()
            .unwrap_or_default();
        TraceSequence::new(best)
    }
}

impl fmt::Display for TraceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for TraceSequence {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(entries))
    }
}

/// Counter-clockwise lattice vertices whose consecutive origin triangles all
/// have area 1/2 and contain no lattice points besides their corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalPolygon {
    vertices: Vec<LatticeVector>,
}

impl FundamentalPolygon {
    /// Validates the vertex cycle, naming the violated invariant and index.
    pub fn new(vertices: Vec<LatticeVector>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices { n });
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(PolygonError::DuplicateVertex { first: i, second: j });
                }
            }
        }
        for i in 0..n {
            let next = (i + 1) % n;
            let value = vertices[i].cross(vertices[next]);
            if value != 1 {
                return Err(PolygonError::CrossNotOne { index: i, next, value });
            }
        }
        check_ccw_cycle(&vertices).map_err(|index| PolygonError::NotCcw { index })?;
        for i in 0..n {
            let next = (i + 1) % n;
            let pts =
                lattice_points_in_triangle(LatticeVector::ZERO, vertices[i], vertices[next])
                    .expect("area-1/2 triangles are not degenerate");
            if pts.len() != 3 {
                let point = pts
                    .into_iter()
                    .find(|&p| {
                        p != LatticeVector::ZERO && p != vertices[i] && p != vertices[next]
                    })
                    .expect("a fourth point exists when the count exceeds three");
                return Err(PolygonError::ExtraLatticePoint { index: i, next, point });
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Never true: a valid polygon has at least three vertices.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The trace sequence m_i with e_{i-1} + e_{i+1} = m_i e_i.
    pub fn trace_sequence(&self) -> TraceSequence {
        let n = self.vertices.len();
        let entries = (0..n)
            .map(|i| {
                let sum = self.vertices[(i + n - 1) % n] + self.vertices[(i + 1) % n];
                let e = self.vertices[i];
                let m = if e.x != 0 { sum.x / e.x } else { sum.y / e.y };
                assert_eq!(m * e, sum, "e_{} + e_{} must be a multiple of e_{i}", i + n - 1, i + 1);
                m
            })
            .collect();
        TraceSequence::new(entries)
    }

    /// Rebuilds the polygon from a trace sequence with e_0 = (1,0) and
    /// e_1 = (0,1). Fails unless the recurrence e_{i+1} = m_i e_i - e_{i-1}
    /// closes back onto e_0, e_1 and the result validates; both failures
    /// signal a non-admissible sequence.
    pub fn from_sequence(seq: &TraceSequence) -> Result<Self, PolygonError> {
        let n = seq.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices { n });
        }
        let m = seq.entries();
        let mut v = Vec::with_capacity(n);
        v.push(LatticeVector::new(1, 0));
        v.push(LatticeVector::new(0, 1));
        for i in 1..n - 1 {
            let e = m[i] * v[i] - v[i - 1];
            v.push(e);
        }
        let wrap0 = m[n - 1] * v[n - 1] - v[n - 2];
        let wrap1 = m[0] * v[0] - v[n - 1];
        if wrap0 != v[0] || wrap1 != v[1] {
            return Err(PolygonError::ClosureFailure);
        }
        Self::new(v)
    }

    /// The piecewise-linear map whose i-th piece sends e_i to e_{i+1} and
    /// e_{i+1} to e_{i+2}; it has period n and rotation number 1/n.
    pub fn to_map(&self) -> ConeFanMap {
        let n = self.vertices.len();
        let matrices: Vec<UnimodularMatrix> = (0..n)
            .map(|i| {
                let basis = UnimodularMatrix::from_columns(
                    self.vertices[i],
                    self.vertices[(i + 1) % n],
                );
                let image = UnimodularMatrix::from_columns(
                    self.vertices[(i + 1) % n],
                    self.vertices[(i + 2) % n],
                );
                image * basis.inverse().expect("consecutive vertices are unimodular")
            })
            .collect();
        ConeFanMap::new(self.vertices.clone(), matrices)
            .expect("fundamental polygons induce valid maps")
    }

    /// Recovers the fundamental polygon of an orientation-preserving map that
    /// is periodic within `max_n`: with period n and rotation number k/n, the
    /// orbit of (1, 0) under the (k^-1 mod n)-th power winds once and lists
    /// the vertices in counter-clockwise order.
    pub fn of_map(map: &ConeFanMap, max_n: u32) -> Result<Self, PolygonError> {
        if map.orientation() == Orientation::Reversing {
            return Err(MapError::RotationUndefined.into());
        }
        let n = map
            .period(max_n)
            .period()
            .ok_or(MapError::NotPeriodic { max_n })?;
        if n < 3 {
            return Err(PolygonError::TooFewVertices { n: n as usize });
        }
        let rn = map.rotation_number(max_n).expect("periodic and orientation-preserving");
        assert_eq!(rn.denominator(), n, "rotation numerator is coprime to the period");
        let j = mod_inverse(rn.numerator(), n).expect("coprimality gives an inverse");
        let g = map.power(j);
        let mut pts = Vec::with_capacity(n as usize);
        let mut p = LatticeVector::new(1, 0);
        for _ in 0..n {
            pts.push(p);
            p = g.eval(p);
        }
        // normalize away a common scale; a no-op for orbits through (1, 0)
        let content = pts.iter().fold(0, |acc, q| gcd(acc, gcd(q.x, q.y)));
        if content > 1 {
            for q in &mut pts {
                *q = LatticeVector::new(q.x / content, q.y / content);
            }
        }
        Self::new(pts)
    }

    /// Inserts the mediant e_i + e_{i+1} between positions i and i+1, giving
    /// a valid polygon with one more vertex (and a map of period n + 1).
    pub fn insert_vertex(&self, i: usize) -> FundamentalPolygon {
        let n = self.vertices.len();
        assert!(i < n, "insertion index {i} out of range for {n} vertices");
        let mut v = self.vertices.clone();
        let mediant = v[i] + v[(i + 1) % n];
        v.insert(i + 1, mediant);
        Self::new(v).expect("mediant insertion preserves validity")
    }

    /// Removes vertex i, which requires e_i = e_{i-1} + e_{i+1}.
    pub fn remove_vertex(&self, i: usize) -> Result<FundamentalPolygon, PolygonError> {
        let n = self.vertices.len();
        assert!(i < n, "removal index {i} out of range for {n} vertices");
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        if self.vertices[i] != self.vertices[prev] + self.vertices[next] {
            return Err(PolygonError::NotRemovable { index: i, prev, next });
        }
        let mut v = self.vertices.clone();
        v.remove(i);
        Ok(Self::new(v).expect("removal of a mediant preserves validity"))
    }

    /// Image under a determinant-one change of basis.
    pub(crate) fn transformed(&self, m: UnimodularMatrix) -> FundamentalPolygon {
        assert_eq!(m.det(), 1, "only orientation-preserving conjugations keep polygons valid");
        let v = self.vertices.iter().map(|&p| m * p).collect();
        Self::new(v).expect("unimodular images of valid polygons stay valid")
    }

    /// Same cycle, listed from vertex `start`.
    pub(crate) fn rotated(&self, start: usize) -> FundamentalPolygon {
        let mut v = self.vertices.clone();
        v.rotate_left(start);
        Self { vertices: v }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{named_map, ALPHA, BETA};

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn alpha_polygon() -> FundamentalPolygon {
        FundamentalPolygon::new(vec![v(1, 0), v(0, 1), v(-1, -1)]).unwrap()
    }

    fn phi_polygon(m: i64) -> FundamentalPolygon {
        FundamentalPolygon::new(vec![v(1, 0), v(0, 1), v(-1, 0), v(m, -1)]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(FundamentalPolygon::new(vec![v(1, 0), v(0, 1), v(-1, -1)]).is_ok());
        assert!(FundamentalPolygon::new(vec![v(1, 0), v(0, 1), v(-1, 0), v(2, -1)]).is_ok());
        assert!(matches!(
            FundamentalPolygon::new(vec![v(1, 0), v(0, 2)]),
            Err(PolygonError::TooFewVertices { n: 2 })
        ));
        assert!(matches!(
            FundamentalPolygon::new(vec![v(1, 0), v(0, 2), v(-1, -1)]),
            Err(PolygonError::CrossNotOne { index: 0, value: 2, .. })
        ));
        assert!(matches!(
            FundamentalPolygon::new(vec![v(1, 0), v(0, 1), v(1, 0)]),
            Err(PolygonError::DuplicateVertex { .. })
        ));
    }

    #[test]
    fn sequences_of_named_polygons() {
        assert_eq!(alpha_polygon().trace_sequence(), TraceSequence::new(vec![-1, -1, -1]));
        // the quadrilateral sequences are cyclic words: compare canonically
        for m in 0..4 {
            assert_eq!(
                phi_polygon(m).trace_sequence().canonical(),
                TraceSequence::new(vec![0, -m, 0, m]).canonical()
            );
        }
        let hexagon =
            FundamentalPolygon::of_map(&ConeFanMap::linear(crate::catalog::GAMMA).unwrap(), 10)
                .unwrap();
        assert_eq!(hexagon.trace_sequence(), TraceSequence::new(vec![1; 6]));
    }

    #[test]
    fn from_sequence_examples() {
        let square = FundamentalPolygon::from_sequence(&TraceSequence::new(vec![0, 0, 0, 0]))
            .unwrap();
        assert_eq!(square.vertices(), &[v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]);

        let c = FundamentalPolygon::from_sequence(&TraceSequence::new(vec![1, 2, 1, 2, 1, 2, 1, 2]))
            .unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(c.to_map().period(20).period(), Some(8));

        assert_eq!(
            FundamentalPolygon::from_sequence(&TraceSequence::new(vec![1, 1, 1])),
            Err(PolygonError::ClosureFailure)
        );
    }

    #[test]
    fn maps_of_polygons() {
        // the triangle's map merges to a single matrix conjugate to ALPHA:
        // the (0 -1; 1 m) normal form relative to the basis e_0, e_1
        let tri_map = alpha_polygon().to_map();
        assert_eq!(tri_map, ConeFanMap::linear(UnimodularMatrix::new(0, -1, 1, -1)).unwrap());
        assert_eq!(tri_map.matrices()[0].trace(), ALPHA.trace());
        assert_eq!(tri_map.matrices()[0].order(10), ALPHA.order(10));
        let square = FundamentalPolygon::from_sequence(&TraceSequence::new(vec![0; 4])).unwrap();
        assert_eq!(square.to_map(), ConeFanMap::linear(BETA).unwrap());

        // the four pieces of the quadrilateral family, in cone order
        let m = 2;
        let map = phi_polygon(m).to_map();
        assert_eq!(map.pieces(), 4);
        assert_eq!(map.matrices()[0], UnimodularMatrix::new(0, -1, 1, 0));
        assert_eq!(map.matrices()[1], UnimodularMatrix::new(-m, -1, 1, 0));
        assert_eq!(map.matrices()[2], UnimodularMatrix::new(-m, -m * m - 1, 1, m));
        assert_eq!(map.matrices()[3], UnimodularMatrix::new(0, -1, 1, m));
    }

    #[test]
    fn polygon_of_h_lists_nine_vertices() {
        let p = FundamentalPolygon::of_map(&named_map("H").unwrap(), 20).unwrap();
        assert_eq!(
            p.vertices(),
            &[
                v(1, 0),
                v(2, 1),
                v(1, 1),
                v(1, 2),
                v(0, 1),
                v(-1, 1),
                v(-1, 0),
                v(0, -1),
                v(1, -1)
            ]
        );
        assert_eq!(p.trace_sequence().to_string(), "3,1,3,1,3,1,1,1,1");
        assert_eq!(p.to_map(), named_map("H").unwrap().power(5));
    }

    #[test]
    fn polygon_of_a_map_agrees_with_its_normalized_power() {
        // the orbit construction lands on the power with rotation 1/n, so a
        // map and that power share one fundamental polygon
        let e = named_map("E").unwrap();
        assert_eq!(
            FundamentalPolygon::of_map(&e, 20).unwrap(),
            FundamentalPolygon::of_map(&e.power(3), 20).unwrap()
        );
    }

    #[test]
    fn polygon_of_beta_is_the_square() {
        let p = FundamentalPolygon::of_map(&ConeFanMap::linear(BETA).unwrap(), 10).unwrap();
        assert_eq!(p.vertices(), &[v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]);
    }

    #[test]
    fn insertion_examples() {
        let p = alpha_polygon().insert_vertex(0);
        assert_eq!(p.vertices(), &[v(1, 0), v(1, 1), v(0, 1), v(-1, -1)]);
        assert_eq!(
            p.trace_sequence().canonical(),
            TraceSequence::new(vec![0, 1, 0, -1]).canonical()
        );
        // growth to every order
        let mut q = alpha_polygon();
        for i in 0..8 {
            q = q.insert_vertex(i % q.len());
            assert_eq!(q.to_map().period(20).period(), Some(q.len() as u32));
        }
    }

    #[test]
    fn removal_examples() {
        let p = alpha_polygon();
        for i in 0..p.len() {
            let q = p.insert_vertex(i);
            assert_eq!(q.remove_vertex(i + 1).unwrap(), p);
        }
        // the m=1 quadrilateral loses (1,0) and becomes the triangle
        let phi1 = phi_polygon(1);
        let reduced = phi1.remove_vertex(0).unwrap();
        assert_eq!(
            reduced.trace_sequence().canonical(),
            TraceSequence::new(vec![-1, -1, -1])
        );
        // for m = 2 no vertex is removable
        let phi2 = phi_polygon(2);
        for i in 0..phi2.len() {
            assert!(matches!(
                phi2.remove_vertex(i),
                Err(PolygonError::NotRemovable { .. })
            ));
        }
    }

    #[test]
    fn canonical_rotation_examples() {
        assert_eq!(
            TraceSequence::new(vec![0, 1, 0, -1]).canonical(),
            TraceSequence::new(vec![-1, 0, 1, 0])
        );
        assert_eq!(
            TraceSequence::new(vec![-1, -1, -1]).canonical(),
            TraceSequence::new(vec![-1, -1, -1])
        );
    }

    #[test]
    fn sequence_parsing_round_trip() {
        let s: TraceSequence = "0,-2,0,2".parse().unwrap();
        assert_eq!(s, TraceSequence::new(vec![0, -2, 0, 2]));
        assert_eq!(s.to_string(), "0,-2,0,2");
    }
}
