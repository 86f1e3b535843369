//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::EdgeVector;
use crate::rational::Rational;

/// A dense matrix given by its rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
    ncols: usize,
}

impl RationalMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(row) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                actual: row.len(),
            });
        }
        Ok(RationalMatrix { rows, ncols })
    }

    pub fn from_edge_vectors(ncols: usize, rows: &[EdgeVector]) -> Result<Self> {
        RationalMatrix::new(ncols, rows.iter().map(|r| r.as_slice().to_vec()).collect())
    }

    pub fn from_ints(ncols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        RationalMatrix::new(
            ncols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Reduces `rows` in place to row echelon form and returns the pivot columns.
fn eliminate(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows = m.rows.clone();
    eliminate(&mut rows, m.ncols).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Singular,
}

pub fn solve_square(m: &RationalMatrix, rhs: &[Rational]) -> Result<Solution> {
    let n = m.nrows();
    if m.ncols != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: m.ncols,
        });
    }
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: rhs.len(),
        });
    }
    let mut rows: Vec<Vec<Rational>> = m
        .rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = eliminate(&mut rows, n);
    if pivots.len() < n {
        return Ok(Solution::Singular);
    }
    Ok(Solution::Unique(rows.into_iter().map(|mut r| r.pop().unwrap()).collect()))
}

/// The coprime nonnegative integer vector on the ray of `v`.
pub fn minimum_integer_form(v: &EdgeVector) -> Result<EdgeVector> {
    if let Some(i) = (0..v.len()).find(|&i| v[i].is_negative()) {
        return Err(Error::NegativeComponent(i));
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let scale = integer_scale(v.as_slice());
    Ok(v.scaled(&scale))
}

/// The positive factor turning `v` (not all zero) into a coprime integer vector.
pub(crate) fn integer_scale(v: &[Rational]) -> Rational {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let gcd = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    Rational::new(lcm, gcd)
}

pub fn is_minimum_integer_form(v: &EdgeVector) -> bool {
    v.is_nonnegative()
        && !v.is_zero()
        && v.iter().all(|x| x.is_integer())
        && v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer())).is_one()
}

/// An incrementally grown row space kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    ncols: usize,
    basis: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace {
            ncols,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, row: &[Rational]) -> Vec<Rational> {
        let mut row = row.to_vec();
        for (col, b) in &self.basis {
            if row[*col].is_zero() {
                continue;
            }
            let factor = row[*col].clone();
            for (x, y) in row.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        row
    }

    pub fn contains(&self, row: &[Rational]) -> bool {
        self.reduce(row).iter().all(Zero::is_zero)
    }

    /// Adds `row` if it is independent of the current space; returns whether it was.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        let mut row = self.reduce(row);
        let Some(col) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[col].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, b) in self.basis.iter_mut() {
            if b[col].is_zero() {
                continue;
            }
            let factor = b[col].clone();
            for (x, y) in b.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        self.basis.push((col, row));
        true
    }
}

/// An incrementally grown span of 0/1 rows, reduced over the rationals with
/// integer arithmetic. Falls back to [`RowSpace`] on overflow.
#[derive(Clone, Debug)]
pub struct BinaryRowSpace {
    ncols: usize,
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    // rows in echelon form, each scaled to integers, with their pivot column
    Int(Vec<(usize, Vec<i128>)>),
    Exact(RowSpace),
}

impl BinaryRowSpace {
    pub fn new(ncols: usize) -> Self {
        BinaryRowSpace {
            ncols,
            inner: Inner::Int(Vec::new()),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            Inner::Int(b) => b.len(),
            Inner::Exact(s) => s.rank(),
        }
    }

    fn reduce_int(basis: &[(usize, Vec<i128>)], row: &[i128]) -> Option<Vec<i128>> {
        let mut row = row.to_vec();
        for (col, b) in basis {
            let a = row[*col];
            if a == 0 {
                continue;
            }
            let p = b[*col];
            let g = gcd_i128(a, p);
            let (ma, mb) = (p / g, a / g);
            let mut content = 0i128;
            for (x, y) in row.iter_mut().zip(b) {
                *x = x.checked_mul(ma)?.checked_sub(y.checked_mul(mb)?)?;
                content = gcd_i128(content, *x);
            }
            if content > 1 {
                for x in row.iter_mut() {
                    *x /= content;
                }
            }
        }
        Some(row)
    }

    fn to_exact(basis: &[(usize, Vec<i128>)], ncols: usize) -> RowSpace {
        let mut space = RowSpace::new(ncols);
        for (_, b) in basis {
            let row: Vec<Rational> = b.iter().map(|&x| Rational::from_integer(x.into())).collect();
            space.insert(&row);
        }
        space
    }

    fn rational_row(row: &[i128]) -> Vec<Rational> {
        row.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    pub fn contains(&self, row: &[i128]) -> bool {
        match &self.inner {
            Inner::Int(basis) => match Self::reduce_int(basis, row) {
                Some(r) => r.iter().all(|&x| x == 0),
                None => Self::to_exact(basis, self.ncols).contains(&Self::rational_row(row)),
            },
            Inner::Exact(s) => s.contains(&Self::rational_row(row)),
        }
    }

    pub fn insert(&mut self, row: &[i128]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        if let Inner::Int(basis) = &mut self.inner {
            match Self::reduce_int(basis, row) {
                Some(r) => {
                    let Some(col) = r.iter().position(|&x| x != 0) else {
                        return false;
                    };
                    basis.push((col, r));
                    return true;
                }
                None => self.inner = Inner::Exact(Self::to_exact(basis, self.ncols)),
            }
        }
        match &mut self.inner {
            Inner::Exact(s) => s.insert(&Self::rational_row(row)),
            Inner::Int(_) => unreachable!(),
        }
    }
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
