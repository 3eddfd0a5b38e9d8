//! Shared helpers for the integration suites.

use rand::rngs::StdRng;
use rand::Rng;

use plmap::{FundamentalPolygon, LatticeVector, TraceSequence};

pub fn v(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

/// A random fundamental polygon: a random base (the triangle or a
/// quadrilateral with shear up to 3) grown by random mediant insertions.
pub fn random_polygon(rng: &mut StdRng, insertions: usize) -> FundamentalPolygon {
    let mut p = if rng.random_bool(0.3) {
        FundamentalPolygon::from_sequence(&TraceSequence::new(vec![-1, -1, -1])).unwrap()
    } else {
        let m = rng.random_range(0..=3);
        FundamentalPolygon::new(vec![v(1, 0), v(0, 1), v(-1, 0), v(m, -1)]).unwrap()
    };
    for _ in 0..insertions {
        let i = rng.random_range(0..p.len());
        p = p.insert_vertex(i);
    }
    p
}
