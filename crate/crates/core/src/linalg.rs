//! Exact integer vectors and 3x3 matrices.
//!
//! Everything here is `i64` on the outside. Products that can grow (dot and
//! cross products, determinants, Cramer numerators) are accumulated in `i128`
//! and narrowed with an explicit check, so an overflow aborts instead of
//! wrapping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::WeightSystem;

pub(crate) fn narrow(v: i128) -> i64 {
    i64::try_from(v).unwrap_or_else(|_| panic!("integer overflow: {v} does not fit in i64"))
}

/// A point of the lattice M = Z^3 (or of its dual N).
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct IntVec3(pub [i64; 3]);

/// An exponent vector (i, j, k, l) of a monomial in W, X, Y, Z.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct IntVec4(pub [i64; 4]);

/// Row-major 3x3 integer matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMat3(pub [[i64; 3]; 3]);

impl IntVec3 {
    pub const ZERO: IntVec3 = IntVec3([0, 0, 0]);

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        IntVec3([x, y, z])
    }

    pub fn x(&self) -> i64 {
        self.0[0]
    }
    pub fn y(&self) -> i64 {
        self.0[1]
    }
    pub fn z(&self) -> i64 {
        self.0[2]
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn dot(&self, other: &IntVec3) -> i64 {
        narrow(self.dot_wide(other))
    }

    pub(crate) fn dot_wide(&self, other: &IntVec3) -> i128 {
        (0..3).map(|i| self.0[i] as i128 * other.0[i] as i128).sum()
    }

    pub fn cross(&self, other: &IntVec3) -> IntVec3 {
        let [a1, a2, a3] = self.0.map(i128::from);
        let [b1, b2, b3] = other.0.map(i128::from);
        IntVec3([
            narrow(a2 * b3 - a3 * b2),
            narrow(a3 * b1 - a1 * b3),
            narrow(a1 * b2 - a2 * b1),
        ])
    }

    pub fn scale(&self, k: i64) -> IntVec3 {
        IntVec3(
            self.0
                .map(|c| c.checked_mul(k).expect("integer overflow in scale")),
        )
    }
}

impl fmt::Display for IntVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl From<[i64; 3]> for IntVec3 {
    fn from(v: [i64; 3]) -> Self {
        IntVec3(v)
    }
}

impl Add for IntVec3 {
    type Output = IntVec3;
    fn add(self, rhs: IntVec3) -> IntVec3 {
        IntVec3(std::array::from_fn(|i| {
            self.0[i]
                .checked_add(rhs.0[i])
                .expect("integer overflow in add")
        }))
    }
}

impl Sub for IntVec3 {
    type Output = IntVec3;
    fn sub(self, rhs: IntVec3) -> IntVec3 {
        IntVec3(std::array::from_fn(|i| {
            self.0[i]
                .checked_sub(rhs.0[i])
                .expect("integer overflow in sub")
        }))
    }
}

impl Neg for IntVec3 {
    type Output = IntVec3;
    fn neg(self) -> IntVec3 {
        IntVec3(
            self.0
                .map(|c| c.checked_neg().expect("integer overflow in neg")),
        )
    }
}

impl IntVec4 {
    pub const ONES: IntVec4 = IntVec4([1, 1, 1, 1]);

    pub const fn new(i: i64, j: i64, k: i64, l: i64) -> Self {
        IntVec4([i, j, k, l])
    }

    pub fn dot(&self, other: &IntVec4) -> i64 {
        narrow((0..4).map(|i| self.0[i] as i128 * other.0[i] as i128).sum())
    }
}

impl fmt::Display for IntVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl Add for IntVec4 {
    type Output = IntVec4;
    fn add(self, rhs: IntVec4) -> IntVec4 {
        IntVec4(std::array::from_fn(|i| {
            self.0[i]
                .checked_add(rhs.0[i])
                .expect("integer overflow in add")
        }))
    }
}

impl Sub for IntVec4 {
    type Output = IntVec4;
    fn sub(self, rhs: IntVec4) -> IntVec4 {
        IntVec4(std::array::from_fn(|i| {
            self.0[i]
                .checked_sub(rhs.0[i])
                .expect("integer overflow in sub")
        }))
    }
}

impl Mul<i64> for IntVec4 {
    type Output = IntVec4;
    fn mul(self, k: i64) -> IntVec4 {
        IntVec4(
            self.0
                .map(|c| c.checked_mul(k).expect("integer overflow in mul")),
        )
    }
}

impl IntMat3 {
    pub const IDENTITY: IntMat3 = IntMat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn from_rows(rows: [IntVec3; 3]) -> Self {
        IntMat3(rows.map(|r| r.0))
    }

    pub fn row(&self, i: usize) -> IntVec3 {
        IntVec3(self.0[i])
    }

    pub fn col(&self, j: usize) -> IntVec3 {
        IntVec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn transpose(&self) -> IntMat3 {
        IntMat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i])
        }))
    }

    pub fn det(&self) -> i64 {
        det3(self)
    }

    pub fn is_unimodular(&self) -> bool {
        det3_wide(self).abs() == 1
    }

    /// `v M` with `v` a row vector.
    pub fn apply_row(&self, v: &IntVec3) -> IntVec3 {
        IntVec3(std::array::from_fn(|j| v.dot(&self.col(j))))
    }

    /// `M v` with `v` a column vector.
    pub fn apply_col(&self, v: &IntVec3) -> IntVec3 {
        IntVec3(std::array::from_fn(|i| self.row(i).dot(v)))
    }

    /// Adjugate: `M adj(M) = det(M) I`.
    pub fn adjugate(&self) -> IntMat3 {
        let m = &self.0;
        let cof = |r: usize, c: usize| -> i64 {
            let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            let minor = m[rs[0]][cs[0]] as i128 * m[rs[1]][cs[1]] as i128
                - m[rs[0]][cs[1]] as i128 * m[rs[1]][cs[0]] as i128;
            let sign = if (r + c).is_multiple_of(2) { 1 } else { -1 };
            narrow(sign * minor)
        };
        // adj = transpose of the cofactor matrix
        IntMat3(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i))))
    }

    /// Inverse of a unimodular matrix, `None` otherwise.
    pub fn unimodular_inverse(&self) -> Option<IntMat3> {
        match self.det() {
            1 => Some(self.adjugate()),
            -1 => Some(IntMat3(self.adjugate().0.map(|r| r.map(|c| -c)))),
            _ => None,
        }
    }
}

impl Mul for IntMat3 {
    type Output = IntMat3;
    fn mul(self, rhs: IntMat3) -> IntMat3 {
        IntMat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.row(i).dot(&rhs.col(j)))
        }))
    }
}

impl fmt::Display for IntMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {} {}", r[0], r[1], r[2])?;
        }
        Ok(())
    }
}

/// gcd of the absolute values of the components; 0 only for the zero vector.
pub fn gcd_all(v: &IntVec3) -> i64 {
    v.0.iter().fold(0i64, |g, &c| g.gcd(&c))
}

pub fn primitive(v: &IntVec3) -> Result<IntVec3> {
    let g = gcd_all(v);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(IntVec3(v.0.map(|c| c / g)))
}

pub(crate) fn det3_wide(m: &IntMat3) -> i128 {
    let a = m.0.map(|r| r.map(i128::from));
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn det3(m: &IntMat3) -> i64 {
    narrow(det3_wide(m))
}

/// The four 3x3 minors of the 3x4 matrix whose rows are the basis vectors;
/// minor `k` drops column `k`.
fn maximal_minors(basis: &[IntVec4; 3]) -> [i128; 4] {
    std::array::from_fn(|drop| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != drop).collect();
        let m = IntMat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| basis[i].0[cols[j]])
        }));
        det3_wide(&m)
    })
}

/// Integer coordinates `(c1, c2, c3)` with `c1 e1 + c2 e2 + c3 e3 = v`.
///
/// Solved by Cramer's rule on a nonsingular 3x3 row selection, then checked
/// against the remaining equation.
pub fn coords_in_basis(v: &IntVec4, basis: &[IntVec4; 3]) -> Result<IntVec3> {
    let minors = maximal_minors(basis);
    let drop = minors
        .iter()
        .position(|&m| m != 0)
        .ok_or(Error::DependentBasis)?;
    let rows: Vec<usize> = (0..4).filter(|&r| r != drop).collect();
    // columns are basis vectors, rows are the selected coordinates
    let system = |replace: Option<usize>| -> IntMat3 {
        IntMat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| match replace {
                Some(k) if k == j => v.0[rows[i]],
                _ => basis[j].0[rows[i]],
            })
        }))
    };
    let det = det3_wide(&system(None));
    let numer: [i128; 3] = std::array::from_fn(|k| det3_wide(&system(Some(k))));

    // c_k = numer_k / det must also satisfy the dropped equation
    let lhs: i128 = (0..3).map(|k| basis[k].0[drop] as i128 * numer[k]).sum();
    if lhs != v.0[drop] as i128 * det {
        return Err(Error::NotInSpan(*v));
    }
    if numer.iter().any(|n| n % det != 0) {
        return Err(Error::NotIntegral(*v));
    }
    Ok(IntVec3(numer.map(|n| narrow(n / det))))
}

/// Index of the span of `basis` inside `{v in Z^4 : a.v = 0}`.
///
/// The kernel is a saturated rank-3 lattice, so the gcd of its maximal minors
/// is 1 and the index of any full-rank sublattice is the gcd of its own
/// maximal minors.
pub fn sublattice_index(basis: &[IntVec4; 3], weights: &WeightSystem) -> Result<i64> {
    let a = weights.as_vec4();
    for (index, e) in basis.iter().enumerate() {
        let value = a.dot(e);
        if value != 0 {
            return Err(Error::BasisNotInKernel {
                index: index + 1,
                vector: *e,
                value,
            });
        }
    }
    let g = maximal_minors(basis).iter().fold(0i128, |g, m| g.gcd(m));
    if g == 0 {
        return Err(Error::DependentBasis);
    }
    Ok(narrow(g))
}
