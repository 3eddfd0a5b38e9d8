//! Admissible-sequence enumeration by vertex insertion, and the encoding of
//! fundamental polygons as two rooted binary trees plus a shear.
//!
//! Polygons with at least four vertices contain an antipodal vertex pair.
//! Fixing e_0 = (1,0), e_1 = (0,1) and e_k = (-1,0), the second-quadrant
//! vertices are exactly the mediant insertions between (0,1) and (-1,0),
//! which form a rooted binary tree; the lower half plane is the mirror image
//! of another such tree, sheared horizontally by an integer.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geom::{LatticeVector, UnimodularMatrix};
use crate::polygon::{FundamentalPolygon, PolygonError, TraceSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("polygon has no antipodal vertex pair (only possible for triangles)")]
    NoAntipodalPair,
    #[error("tree node labelled {found} where the mediant {expected} was required")]
    BadLabel { expected: LatticeVector, found: LatticeVector },
    #[error("vertex chain between {lo} and {hi} does not contain their mediant")]
    MissingMediant { lo: LatticeVector, hi: LatticeVector },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// Rewrites a trace sequence under insertion of a mediant between vertices i
/// and i+1: m_i and m_{i+1} gain one and a fresh entry 1 appears in between.
/// Agrees with `FundamentalPolygon::insert_vertex` followed by
/// `trace_sequence`.
pub fn insert_into_sequence(seq: &TraceSequence, i: usize) -> TraceSequence {
    let n = seq.len();
    assert!(i < n, "insertion index {i} out of range for length {n}");
    let mut m = seq.entries().to_vec();
    m[i] += 1;
    m[(i + 1) % n] += 1;
    m.insert(i + 1, 1);
    TraceSequence::new(m)
}

/// All canonical admissible sequences of length `n` whose entries fit in
/// [-max_entry, max_entry], generated by breadth-first vertex insertion from
/// the triangle sequence and the quadrilateral sequences (0, -m, 0, m).
///
/// Entries never decrease under insertion, and every descendant of the m-th
/// quadrilateral base keeps an entry >= m, so pruning at the bound loses
/// nothing. Completeness is therefore relative to `max_entry`.
pub fn enumerate_admissible(n: usize, max_entry: i64) -> Vec<TraceSequence> {
    assert!(n >= 3, "admissible sequences have length at least 3");
    assert!(max_entry >= 0);
    let fits = |s: &TraceSequence| s.entries().iter().all(|&e| e.abs() <= max_entry);
    let mut level: BTreeSet<TraceSequence> = BTreeSet::new();
    let triangle = TraceSequence::new(vec![-1, -1, -1]);
    if fits(&triangle) {
        level.insert(triangle.canonical());
    }
    let mut len = 3;
    while len < n {
        let mut next: BTreeSet<TraceSequence> = BTreeSet::new();
        for s in &level {
            for i in 0..len {
                let t = insert_into_sequence(s, i);
                if fits(&t) {
                    next.insert(t.canonical());
                }
            }
        }
        if len + 1 == 4 {
            for m in 0..=max_entry {
                next.insert(TraceSequence::new(vec![0, -m, 0, m]).canonical());
            }
        }
        level = next;
        len += 1;
    }
    level.into_iter().collect()
}

/// Node of a vertex-insertion tree. The label is the inserted vertex, the
/// mediant of its slot's two boundary directions; the left child fills the
/// slot towards (-1,0) and the right child the slot towards (0,1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeNode {
    pub label: LatticeVector,
    pub left: Option<Box<TreeNode>>,
    pub right: Option<Box<TreeNode>>,
}

/// A rooted binary tree of mediant insertions; empty trees are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InsertionTree {
    pub root: Option<Box<TreeNode>>,
}

impl InsertionTree {
    pub fn empty() -> Self {
        Self { root: None }
    }

    pub fn node_count(&self) -> usize {
        fn count(node: &Option<Box<TreeNode>>) -> usize {
            node.as_ref().map_or(0, |n| 1 + count(&n.left) + count(&n.right))
        }
        count(&self.root)
    }
}

/// A fundamental polygon in canonical position, as upper tree, lower tree and
/// the horizontal shear applied to the lower half plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonCode {
    pub upper: InsertionTree,
    pub lower: InsertionTree,
    pub shear: i64,
}

impl PolygonCode {
    /// A polygon and its image under (x, y) -> (-x, -y) encode conjugate
    /// maps. This picks the lexicographically smaller of the two codes, a
    /// unique representative per map.
    pub fn canonical(&self) -> Result<PolygonCode, CodecError> {
        let p = polygon_from_trees(self)?;
        let negated = FundamentalPolygon::new(p.vertices().iter().map(|&v| -v).collect())
            .expect("negation preserves validity");
        let other = tree_from_polygon(&negated)?;
        Ok(self.clone().min(other))
    }
}

const E0: LatticeVector = LatticeVector::new(1, 0);
const E1: LatticeVector = LatticeVector::new(0, 1);
const E0_NEG: LatticeVector = LatticeVector::new(-1, 0);
const E1_NEG: LatticeVector = LatticeVector::new(0, -1);

/// Appends the chain of a subtree in counter-clockwise order within the slot
/// (lo, hi): right subtree first (towards lo), then the node, then the left.
fn decode_chain(
    node: &Option<Box<TreeNode>>,
    lo: LatticeVector,
    hi: LatticeVector,
    out: &mut Vec<LatticeVector>,
) -> Result<(), CodecError> {
    if let Some(n) = node {
        let mediant = lo + hi;
        if n.label != mediant {
            return Err(CodecError::BadLabel { expected: mediant, found: n.label });
        }
        decode_chain(&n.right, lo, mediant, out)?;
        out.push(mediant);
        decode_chain(&n.left, mediant, hi, out)?;
    }
    Ok(())
}

/// Rebuilds the tree from a counter-clockwise vertex chain in slot (lo, hi).
fn encode_chain(
    chain: &[LatticeVector],
    lo: LatticeVector,
    hi: LatticeVector,
) -> Result<Option<Box<TreeNode>>, CodecError> {
    if chain.is_empty() {
        return Ok(None);
    }
    let mediant = lo + hi;
    let pos = chain
        .iter()
        .position(|&v| v == mediant)
        .ok_or(CodecError::MissingMediant { lo, hi })?;
    let right = encode_chain(&chain[..pos], lo, mediant)?;
    let left = encode_chain(&chain[pos + 1..], mediant, hi)?;
    Ok(Some(Box::new(TreeNode { label: mediant, left, right })))
}

fn shear_matrix(m: i64) -> UnimodularMatrix {
    UnimodularMatrix::new(1, m, 0, 1)
}

/// Decodes a code back into its polygon: (1,0), (0,1), the upper-tree chain,
/// (-1,0), then the mirror image of the lower-tree chain sheared by
/// (1 m; 0 1). Well-formed codes always decode to valid polygons.
pub fn polygon_from_trees(code: &PolygonCode) -> Result<FundamentalPolygon, CodecError> {
    let mut upper = Vec::new();
    decode_chain(&code.upper.root, E1, E0_NEG, &mut upper)?;
    let mut lower = Vec::new();
    decode_chain(&code.lower.root, E1, E0_NEG, &mut lower)?;

    let shear = shear_matrix(code.shear);
    let mut vertices = vec![E0, E1];
    vertices.extend(upper);
    vertices.push(E0_NEG);
    vertices.push(shear * E1_NEG);
    vertices.extend(lower.into_iter().map(|v| shear * -v));
    Ok(FundamentalPolygon::new(vertices)?)
}

/// Encodes a polygon with at least four vertices as (upper, lower, shear).
///
/// The cycle is rotated to start at the first vertex whose antipode is also a
/// vertex, then conjugated so e_0 = (1,0) and e_1 = (0,1). The second-quadrant
/// chain gives the upper tree; the lower chain, unsheared and negated, gives
/// the lower tree. Inverse of `polygon_from_trees` on its canonical frame.
pub fn tree_from_polygon(p: &FundamentalPolygon) -> Result<PolygonCode, CodecError> {
    let verts = p.vertices();
    let n = verts.len();
    let start = (0..n)
        .find(|&i| verts.contains(&-verts[i]))
        .ok_or(CodecError::NoAntipodalPair)?;
    let rotated = p.rotated(start);
    let basis = UnimodularMatrix::from_columns(rotated.vertices()[0], rotated.vertices()[1]);
    let framed = rotated.transformed(basis.inverse().expect("consecutive vertices are unimodular"));
    let v = framed.vertices();
    debug_assert_eq!(v[0], E0);
    debug_assert_eq!(v[1], E1);
    let k = v
        .iter()
        .position(|&q| q == E0_NEG)
        .expect("the antipode survives the change of frame");

    let upper = encode_chain(&v[2..k], E1, E0_NEG)?;

    // cross((-1,0), e_{k+1}) = 1 forces e_{k+1} = (-shear, -1)
    let first_lower = v[k + 1];
    debug_assert_eq!(first_lower.y, -1);
    let shear = -first_lower.x;
    let unshear = shear_matrix(-shear);
    let lower_chain: Vec<LatticeVector> =
        v[k + 2..].iter().map(|&q| -(unshear * q)).collect();
    let lower = encode_chain(&lower_chain, E1, E0_NEG)?;

    Ok(PolygonCode {
        upper: InsertionTree { root: upper },
        lower: InsertionTree { root: lower },
        shear,
    })
}

/// Number of distinct second-quadrant vertex sets produced by all insertion
/// trees with `h` nodes, by exhaustive enumeration with deduplication. Equals
/// the h-th Catalan number.
pub fn count_upper_configs(h: u32) -> u64 {
    fn shapes(h: u32) -> Vec<Option<Box<TreeNode>>> {
        if h == 0 {
            return vec![None];
        }
        let mut out = Vec::new();
        for left_size in 0..h {
            for l in shapes(left_size) {
                for r in shapes(h - 1 - left_size) {
                    // placeholder labels; decode_chain derives the real ones
                    out.push(Some(Box::new(TreeNode {
                        label: LatticeVector::ZERO,
                        left: l.clone(),
                        right: r,
                    })));
                }
            }
        }
        out
    }

    fn relabel(node: &mut Option<Box<TreeNode>>, lo: LatticeVector, hi: LatticeVector) {
        if let Some(n) = node {
            let mediant = lo + hi;
            n.label = mediant;
            relabel(&mut n.right, lo, mediant);
            relabel(&mut n.left, mediant, hi);
        }
    }

    let mut seen: BTreeSet<Vec<LatticeVector>> = BTreeSet::new();
    for mut shape in shapes(h) {
        relabel(&mut shape, E1, E0_NEG);
        let mut chain = Vec::new();
        decode_chain(&shape, E1, E0_NEG, &mut chain).expect("relabelled shapes are well formed");
        chain.sort();
        seen.insert(chain);
    }
    seen.len() as u64
}
