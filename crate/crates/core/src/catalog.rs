//! Named maps, the normalized half-plane family and its bounded
//! classification, and the second-order recurrences the two-piece maps encode.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use thiserror::Error;

use crate::conemap::{ConeFanMap, PeriodOutcome, DEFAULT_GROWTH_BOUND};
use crate::geom::{LatticeVector, UnimodularMatrix};
use crate::polygon::FundamentalPolygon;

/// Order 3.
pub const ALPHA: UnimodularMatrix = UnimodularMatrix::new(-1, -1, 1, 0);
/// Order 4.
pub const BETA: UnimodularMatrix = UnimodularMatrix::new(0, -1, 1, 0);
/// Order 6.
pub const GAMMA: UnimodularMatrix = UnimodularMatrix::new(1, -1, 1, 0);
/// Parabolic (trace -2), infinite order.
pub const MU: UnimodularMatrix = UnimodularMatrix::new(-2, -1, 1, 0);
/// Hyperbolic (trace -3), infinite order.
pub const NU: UnimodularMatrix = UnimodularMatrix::new(-3, -1, 1, 0);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error(
        "unknown map name {0:?}; expected alpha, beta, gamma, mu, nu, H, G, F, E, D, \
         phi(M) with M >= 0, or reflect2(N)"
    )]
    UnknownName(String),
}

/// The maps the toolkit knows by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedMap {
    Alpha,
    Beta,
    Gamma,
    Mu,
    Nu,
    H,
    G,
    F,
    E,
    D,
    /// Quadrilateral family: the map of the polygon (1,0),(0,1),(-1,0),(m,-1).
    Phi(i64),
    /// Orientation-reversing period-2 family split on the y-axis.
    Reflect2(i64),
}

impl NamedMap {
    pub fn build(self) -> ConeFanMap {
        match self {
            NamedMap::Alpha => ConeFanMap::linear(ALPHA),
            NamedMap::Beta => ConeFanMap::linear(BETA),
            NamedMap::Gamma => ConeFanMap::linear(GAMMA),
            NamedMap::Mu => ConeFanMap::linear(MU),
            NamedMap::Nu => ConeFanMap::linear(NU),
            NamedMap::H => two_piece(ALPHA, GAMMA),
            NamedMap::G => two_piece(BETA, GAMMA),
            NamedMap::F => two_piece(ALPHA, BETA),
            NamedMap::E => two_piece(MU, ALPHA),
            NamedMap::D => two_piece(NU, ALPHA),
            NamedMap::Phi(m) => {
                let p = FundamentalPolygon::new(vec![
                    LatticeVector::new(1, 0),
                    LatticeVector::new(0, 1),
                    LatticeVector::new(-1, 0),
                    LatticeVector::new(m, -1),
                ])
                .expect("the quadrilateral family is valid for m >= 0");
                return p.to_map();
            }
            NamedMap::Reflect2(n) => ConeFanMap::new(
                vec![LatticeVector::new(0, 1), LatticeVector::new(0, -1)],
                vec![UnimodularMatrix::new(1, 0, n, -1), UnimodularMatrix::new(1, 0, 0, -1)],
            ),
        }
        .expect("catalog maps are valid by construction")
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedMap::Alpha => write!(f, "alpha"),
            NamedMap::Beta => write!(f, "beta"),
            NamedMap::Gamma => write!(f, "gamma"),
            NamedMap::Mu => write!(f, "mu"),
            NamedMap::Nu => write!(f, "nu"),
            NamedMap::H => write!(f, "H"),
            NamedMap::G => write!(f, "G"),
            NamedMap::F => write!(f, "F"),
            NamedMap::E => write!(f, "E"),
            NamedMap::D => write!(f, "D"),
            NamedMap::Phi(m) => write!(f, "phi({m})"),
            NamedMap::Reflect2(n) => write!(f, "reflect2({n})"),
        }
    }
}

impl FromStr for NamedMap {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownName(s.to_string());
        match s {
            "alpha" => return Ok(NamedMap::Alpha),
            "beta" => return Ok(NamedMap::Beta),
            "gamma" => return Ok(NamedMap::Gamma),
            "mu" => return Ok(NamedMap::Mu),
            "nu" => return Ok(NamedMap::Nu),
            "H" => return Ok(NamedMap::H),
            "G" => return Ok(NamedMap::G),
            "F" => return Ok(NamedMap::F),
            "E" => return Ok(NamedMap::E),
            "D" => return Ok(NamedMap::D),
            _ => {}
        }
        if let Some(arg) = s.strip_prefix("phi(").and_then(|r| r.strip_suffix(')')) {
            let m: i64 = arg.trim().parse().map_err(|_| unknown())?;
            if m < 0 {
                return Err(unknown());
            }
            return Ok(NamedMap::Phi(m));
        }
        if let Some(arg) = s.strip_prefix("reflect2(").and_then(|r| r.strip_suffix(')')) {
            let n: i64 = arg.trim().parse().map_err(|_| unknown())?;
            return Ok(NamedMap::Reflect2(n));
        }
        Err(unknown())
    }
}

/// Looks up a map by name: `alpha`, `beta`, `gamma`, `mu`, `nu` (linear),
/// `H`, `G`, `F`, `E`, `D` (two-piece), `phi(M)`, `reflect2(N)`.
pub fn named_map(name: &str) -> Result<ConeFanMap, CatalogError> {
    name.parse::<NamedMap>().map(NamedMap::build)
}

/// Split on the y-axis: matrices[0] acts for x <= 0, matrices[1] for x >= 0.
fn two_piece(left: UnimodularMatrix, right: UnimodularMatrix) -> Result<ConeFanMap, crate::conemap::MapError> {
    ConeFanMap::new(
        vec![LatticeVector::new(0, 1), LatticeVector::new(0, -1)],
        vec![left, right],
    )
}

/// Normalized two-piece family: (a -1; 1 0) on the right half plane and
/// (b -1; 1 0) on the left. The shared second column makes continuity
/// automatic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfPlaneParams {
    pub a: i64,
    pub b: i64,
}

pub fn half_plane_map(p: HalfPlaneParams) -> ConeFanMap {
    two_piece(
        UnimodularMatrix::new(p.b, -1, 1, 0),
        UnimodularMatrix::new(p.a, -1, 1, 0),
    )
    .expect("normalized half-plane maps are always continuous")
}

/// One classified grid cell. A `Periodic` outcome is exact (identity of all
/// merged pieces); the other outcomes are bounded-search evidence, with a
/// witness point when one was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRow {
    pub params: HalfPlaneParams,
    pub outcome: PeriodOutcome,
    pub witness: Option<LatticeVector>,
}

const PROBES: [LatticeVector; 5] = [
    LatticeVector::new(1, 0),
    LatticeVector::new(0, 1),
    LatticeVector::new(1, 1),
    LatticeVector::new(2, 1),
    LatticeVector::new(1, 2),
];

fn growth_witness(map: &ConeFanMap, max_period: u32) -> Option<LatticeVector> {
    for probe in PROBES {
        let mut p = probe;
        for _ in 0..4 * max_period {
            p = map.eval(p);
            if p.max_abs() > DEFAULT_GROWTH_BOUND {
                return Some(p);
            }
        }
    }
    None
}

fn non_return_witness(map: &ConeFanMap, max_period: u32) -> Option<LatticeVector> {
    PROBES.into_iter().find(|&probe| {
        let mut p = probe;
        for _ in 0..max_period {
            p = map.eval(p);
            if p == probe {
                return false;
            }
        }
        true
    })
}

/// Runs the bounded period search over a parameter grid, in row-major
/// (a, b) order. Periodic verdicts are exact; aperiodic verdicts carry the
/// evidence kind and, when found, an orbit witness.
pub fn classify_half_plane(
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
    max_period: u32,
) -> Vec<ClassificationRow> {
    let mut rows = Vec::new();
    for a in a_range {
        for b in b_range.clone() {
            let params = HalfPlaneParams { a, b };
            let map = half_plane_map(params);
            let outcome = map.period_with_growth_bound(max_period, DEFAULT_GROWTH_BOUND);
            let witness = match outcome {
                PeriodOutcome::Periodic(_) => None,
                PeriodOutcome::GrowthExceeded => growth_witness(&map, max_period),
                PeriodOutcome::NoPeriodWithinBound => non_return_witness(&map, max_period),
            };
            rows.push(ClassificationRow { params, outcome, witness });
        }
    }
    rows
}

/// The three second-order recurrences carried by the elliptic two-piece maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceKind {
    /// x_{n+1} = |x_n| - x_{n-1}
    H,
    /// x_{n+1} = (|x_n| + x_n)/2 - x_{n-1}
    G,
    /// x_{n+1} = (|x_n| - x_n)/2 - x_{n-1}
    F,
}

impl FromStr for RecurrenceKind {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "H" => Ok(RecurrenceKind::H),
            "G" => Ok(RecurrenceKind::G),
            "F" => Ok(RecurrenceKind::F),
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceOrbit {
    /// x_0, x_1, ..., x_steps.
    pub terms: Vec<i64>,
    /// Least t with (x_{t+1}, x_t) = (x_1, x_0), if the state returns within
    /// the iteration budget.
    pub period: Option<u32>,
}

/// Iterates the named recurrence from the seed pair (x_0, x_1) and reports
/// the least period of the state sequence (x_{m+1}, x_m).
pub fn recurrence_orbit(kind: RecurrenceKind, x0: i64, x1: i64, steps: u32) -> RecurrenceOrbit {
    assert!(steps >= 2, "need at least two steps to iterate a pair");
    let step = |prev: i64, cur: i64| -> i64 {
        match kind {
            RecurrenceKind::H => cur.abs() - prev,
            RecurrenceKind::G => cur.max(0) - prev,
            RecurrenceKind::F => (-cur).max(0) - prev,
        }
    };
    let mut terms = Vec::with_capacity(steps as usize + 1);
    terms.push(x0);
    terms.push(x1);
    for t in 2..=steps as usize {
        terms.push(step(terms[t - 2], terms[t - 1]));
    }
    let period = (1..steps as usize)
        .find(|&t| terms[t] == terms[0] && terms[t + 1] == terms[1])
        .map(|t| t as u32);
    RecurrenceOrbit { terms, period }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conemap::Orientation;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    #[test]
    fn named_map_evaluations() {
        let h = named_map("H").unwrap();
        assert_eq!(h.eval(v(3, 5)), v(-2, 3));

        // G realizes (x, y) -> ((|x| + x)/2 - y, x)
        let g = named_map("G").unwrap();
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                let expect = v((x.abs() + x) / 2 - y, x);
                assert_eq!(g.eval(v(x, y)), expect);
            }
        }

        assert_eq!(named_map("phi(0)").unwrap(), ConeFanMap::linear(BETA).unwrap());
        assert!(named_map("nonsense").is_err());
        assert!(named_map("phi(-1)").is_err());
    }

    #[test]
    fn half_plane_params_recover_the_named_maps() {
        let cases = [
            ((1, -1), "H"),
            ((1, 0), "G"),
            ((0, -1), "F"),
            ((-1, -2), "E"),
            ((-1, -3), "D"),
        ];
        for ((a, b), name) in cases {
            assert_eq!(half_plane_map(HalfPlaneParams { a, b }), named_map(name).unwrap());
        }
        let linear = half_plane_map(HalfPlaneParams { a: 1, b: 1 });
        assert!(linear.is_linear());
        assert_eq!(linear.matrices()[0].trace(), 1);
    }

    #[test]
    fn refuted_period_candidates() {
        // the (0,-2) map would need period 3, but the orbit of (0,-1) denies it
        let f = half_plane_map(HalfPlaneParams { a: 0, b: -2 });
        let mut p = v(0, -1);
        for _ in 0..3 {
            p = f.eval(p);
        }
        assert_eq!(p, v(-1, 0));
        assert_eq!(f.period(120).period(), None);

        // the (1,-2) map would need period 4
        let f = half_plane_map(HalfPlaneParams { a: 1, b: -2 });
        let mut p = v(0, -1);
        for _ in 0..4 {
            p = f.eval(p);
        }
        assert_eq!(p, v(-1, 0));
        assert_eq!(f.period(120).period(), None);
    }

    #[test]
    fn classification_swap_symmetry() {
        let rows = classify_half_plane(-4..=1, -4..=1, 60);
        let outcome_of = |a: i64, b: i64| {
            rows.iter()
                .find(|r| r.params == HalfPlaneParams { a, b })
                .map(|r| r.outcome)
                .unwrap()
        };
        for a in -4..=1 {
            for b in -4..=1 {
                assert_eq!(outcome_of(a, b), outcome_of(b, a), "swap at ({a},{b})");
            }
        }
    }

    #[test]
    fn reversing_family_has_period_two() {
        for n in -10..=10 {
            let f = named_map(&format!("reflect2({n})")).unwrap();
            assert_eq!(f.orientation(), Orientation::Reversing);
            assert_eq!(f.period(10), PeriodOutcome::Periodic(2));
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(recurrence_orbit(RecurrenceKind::H, 1, 0, 12).period, Some(9));
        assert_eq!(recurrence_orbit(RecurrenceKind::G, 1, 0, 12).period, Some(5));
        assert_eq!(recurrence_orbit(RecurrenceKind::F, 1, 0, 12).period, Some(7));
        let zero = recurrence_orbit(RecurrenceKind::H, 0, 0, 5);
        assert_eq!(zero.period, Some(1));
        assert!(zero.terms.iter().all(|&t| t == 0));
        // the terms really follow the recurrence
        let orbit = recurrence_orbit(RecurrenceKind::H, 1, 0, 12);
        assert_eq!(&orbit.terms[..7], &[1, 0, -1, 1, 2, 1, -1]);
    }

    #[test]
    fn recurrence_states_match_map_orbits() {
        for (kind, name) in [
            (RecurrenceKind::H, "H"),
            (RecurrenceKind::G, "G"),
            (RecurrenceKind::F, "F"),
        ] {
            let map = named_map(name).unwrap();
            let orbit = recurrence_orbit(kind, 3, -7, 16);
            let mut state = v(orbit.terms[1], orbit.terms[0]);
            for t in 1..orbit.terms.len() - 1 {
                state = map.eval(state);
                assert_eq!(state, v(orbit.terms[t + 1], orbit.terms[t]));
            }
        }
    }
}
