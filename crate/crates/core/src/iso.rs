//! GL(3, Z) equivalences of lattice polytopes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::duality::is_reflexive;
use crate::error::{Error, Result};
use crate::geom::LatticePolytope;
use crate::linalg::{det3_wide, IntMat3, IntVec3};

/// How a matrix acts on points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `x -> x M` on row vectors.
    Row,
    /// `x -> M x` on column vectors.
    Column,
}

impl Convention {
    pub fn apply(&self, m: &IntMat3, x: &IntVec3) -> IntVec3 {
        match self {
            Convention::Row => m.apply_row(x),
            Convention::Column => m.apply_col(x),
        }
    }

    /// The matrix that acts the same way under the row convention.
    pub fn as_row_matrix(&self, m: &IntMat3) -> IntMat3 {
        match self {
            Convention::Row => *m,
            Convention::Column => m.transpose(),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Row => "row",
            Convention::Column => "column",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub matrix: IntMat3,
    pub convention: Convention,
}

impl IsoWitness {
    pub fn new(matrix: IntMat3, convention: Convention) -> Result<Self> {
        if !matrix.is_unimodular() {
            return Err(Error::NotUnimodular(matrix.det()));
        }
        Ok(IsoWitness { matrix, convention })
    }

    pub fn apply(&self, x: &IntVec3) -> IntVec3 {
        self.convention.apply(&self.matrix, x)
    }

    /// Row-convention matrix of the induced map on the dual lattice that
    /// carries `polar_dual(q)` onto `polar_dual(p)` when this maps `p` onto `q`.
    pub fn dual_row_matrix(&self) -> IntMat3 {
        self.convention.as_row_matrix(&self.matrix).transpose()
    }
}

/// Which conventions carry `p`'s vertex set onto `q`'s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoMatch {
    Row,
    Column,
    Both,
    None,
}

impl IsoMatch {
    pub fn holds(&self) -> bool {
        *self != IsoMatch::None
    }

    /// A convention that works, preferring row.
    pub fn convention(&self) -> Option<Convention> {
        match self {
            IsoMatch::Row | IsoMatch::Both => Some(Convention::Row),
            IsoMatch::Column => Some(Convention::Column),
            IsoMatch::None => None,
        }
    }
}

impl fmt::Display for IsoMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoMatch::Row => "row",
            IsoMatch::Column => "column",
            IsoMatch::Both => "both",
            IsoMatch::None => "none",
        })
    }
}

pub fn apply_unimodular(p: &LatticePolytope, w: &IsoWitness) -> Result<LatticePolytope> {
    if !w.matrix.is_unimodular() {
        return Err(Error::NotUnimodular(w.matrix.det()));
    }
    p.map_vertices(|v| w.apply(v))
}

fn maps_onto(p: &LatticePolytope, q: &LatticePolytope, m: &IntMat3, c: Convention) -> bool {
    let mut image: Vec<IntVec3> = p.vertices().iter().map(|v| c.apply(m, v)).collect();
    image.sort_unstable();
    image == q.vertices()
}

pub fn verify_iso(p: &LatticePolytope, q: &LatticePolytope, m: &IntMat3) -> IsoMatch {
    if !m.is_unimodular() || p.vertices().len() != q.vertices().len() {
        return IsoMatch::None;
    }
    match (
        maps_onto(p, q, m, Convention::Row),
        maps_onto(p, q, m, Convention::Column),
    ) {
        (true, true) => IsoMatch::Both,
        (true, false) => IsoMatch::Row,
        (false, true) => IsoMatch::Column,
        (false, false) => IsoMatch::None,
    }
}

/// Unimodular invariants used to reject non-equivalent pairs cheaply and to
/// deduplicate search results.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantKey {
    pub f_vector: (usize, usize, usize),
    pub edge_lengths: Vec<i64>,
    pub lattice_points: usize,
    pub reflexive: bool,
}

impl InvariantKey {
    pub fn of(p: &LatticePolytope) -> Self {
        InvariantKey {
            f_vector: p.f_vector(),
            edge_lengths: p.edge_length_profile(),
            lattice_points: p.lattice_points().len(),
            reflexive: is_reflexive(p),
        }
    }
}

/// Exhaustive search for a linear lattice isomorphism `p -> q`.
///
/// Fixes the first linearly independent vertex triple of `p` and tries every
/// ordered vertex triple of `q` as its image. The result is row convention.
pub fn find_iso(p: &LatticePolytope, q: &LatticePolytope) -> Option<IsoWitness> {
    if InvariantKey::of(p) != InvariantKey::of(q) {
        return None;
    }
    let pv = p.vertices();
    let qv = q.vertices();
    let n = pv.len();
    let source = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
        .map(|idx| IntMat3::from_rows(idx.map(|i| pv[i])))
        .find(|m| det3_wide(m) != 0)?;
    let det = det3_wide(&source);
    let adj = source.adjugate();

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let target = IntMat3::from_rows([qv[a], qv[b], qv[c]]);
                // source * M = target  =>  M = adj(source) * target / det
                let numer = adj * target;
                if numer.0.iter().flatten().any(|&x| x as i128 % det != 0) {
                    continue;
                }
                let m = IntMat3(numer.0.map(|r| r.map(|x| (x as i128 / det) as i64)));
                if m.is_unimodular() && maps_onto(p, q, &m, Convention::Row) {
                    return Some(IsoWitness {
                        matrix: m,
                        convention: Convention::Row,
                    });
                }
            }
        }
    }
    None
}
