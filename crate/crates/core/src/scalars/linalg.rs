//! Exact elimination. Over Q the forward pass is fraction-free (Bareiss) on
//! integer-scaled rows; over Q(zeta_N) it is plain Gauss-Jordan with eagerly
//! reduced field arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Matrix, Rational, Scalar};
use crate::error::{Error, Result};

/// Reduced row echelon form: `rows[i]` has a 1 in column `pivots[i]` and zeros
/// in every other pivot column.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    match m.field() {
        Field::Rational => rref_bareiss(m),
        Field::Cyclotomic(_) => rref_gauss_jordan(m),
    }
}

fn rref_bareiss(m: &Matrix) -> Rref {
    let (nr, nc) = (m.rows(), m.cols());
    // integer-scale each row
    let mut a: Vec<Vec<BigInt>> = (0..nr)
        .map(|i| {
            let row: Vec<Rational> = m.row(i).iter().map(|x| x.as_rational().unwrap()).collect();
            let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let pivot = prow[c].clone();
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in (c + 1)..nc {
                let lhs = &pivot * &row[j];
                let val = if factor.is_zero() || prow[j].is_zero() {
                    lhs
                } else {
                    lhs - &factor * &prow[j]
                };
                row[j] = if prev.is_one() { val } else { val / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }

    // back substitution in Q
    let mut rows: Vec<Vec<BigRational>> = a
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for (i, &pc) in pivots.iter().enumerate() {
        let inv = rows[i][pc].recip();
        for x in rows[i].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
    }
    for i in (0..pivots.len()).rev() {
        let pc = pivots[i];
        let (upper, lower) = rows.split_at_mut(i);
        let prow = &lower[0];
        for row in upper.iter_mut() {
            let factor = row[pc].clone();
            if factor.is_zero() {
                continue;
            }
            for j in pc..nc {
                if !prow[j].is_zero() {
                    row[j] -= &factor * &prow[j];
                }
            }
        }
    }
    Rref {
        rows: rows
            .into_iter()
            .map(|row| row.into_iter().map(|x| Scalar::Rat(Rational::from_inner(x))).collect())
            .collect(),
        pivots,
        cols: nc,
    }
}

fn rref_gauss_jordan(m: &Matrix) -> Rref {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Scalar>> = (0..nr).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("non-zero pivot");
        for x in a[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = a[r].clone();
        let nz: Vec<usize> = (c..nc).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &nz {
                row[j] = &row[j] - &(&factor * &prow[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());
    Rref {
        rows: a,
        pivots,
        cols: nc,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right null space.
pub fn kernel(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field().clone();
    let e = rref(m);
    let mut is_pivot = vec![false; e.cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..e.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); e.cols];
            v[free] = field.one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = -&row[free];
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    if b.len() != m.rows() {
        return Err(Error::ShapeError("right-hand side length".into()));
    }
    let rhs = Matrix::from_columns(m.field(), m.rows(), &[b.to_vec()]);
    let aug = m.hcat(&rhs)?;
    let e = rref(&aug);
    if e.pivots.last() == Some(&m.cols()) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![m.field().zero(); m.cols()];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[m.cols()].clone();
    }
    Ok(x)
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::ShapeError("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    if m.is_diagonal() {
        let d = m.diagonal().iter().map(|x| x.inv()).collect::<Result<Vec<_>>>()?;
        return Ok(Matrix::diag(m.field(), d));
    }
    let aug = m.hcat(&Matrix::identity(m.field(), n))?;
    let e = rref(&aug);
    if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
        return Err(Error::DivisionByZero);
    }
    let rows = e.rows.into_iter().map(|r| r[n..].to_vec()).collect();
    Matrix::from_rows(m.field(), rows)
}

/// Incrementally grown subspace of `F^n`, kept in semi-echelon form for fast
/// membership and independence tests.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    echelon: Vec<(usize, Vec<Scalar>)>,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn new(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            echelon: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn spanned_by(field: &Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut s = Subspace::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The independent vectors accepted so far, as they were inserted.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (p, row) in &self.echelon {
            if r[*p].is_zero() {
                continue;
            }
            let factor = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("non-zero");
        let row = r.iter().map(|x| x * &inv).collect();
        self.echelon.push((p, row));
        self.basis.push(v.to_vec());
        true
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}
