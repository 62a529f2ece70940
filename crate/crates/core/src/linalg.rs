//! Dense exact matrices over the rationals.
//!
//! Row reduction is fraction-free: every row is scaled to a primitive
//! integer vector and eliminated with integer cross-multiplication, so
//! intermediate denominators never appear. Pivots are chosen by largest
//! magnitude with ties broken by lowest row index, which makes every
//! reported basis deterministic.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
    // Integer numerators over one common denominator, built on first use by
    // the product routines.
    scaled: OnceLock<(Vec<BigInt>, BigInt)>,
}

impl PartialEq for RatMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for RatMatrix {}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    fn build(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        RatMatrix { rows, cols, data, scaled: OnceLock::new() }
    }

    fn scaled(&self) -> &(Vec<BigInt>, BigInt) {
        self.scaled.get_or_init(|| common_denominator(&self.data))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::build(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix::build(rows, cols, data)
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: data.len() });
        }
        Ok(RatMatrix::build(rows, cols, data))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, actual: row.len() });
            }
            data.extend(row);
        }
        Ok(RatMatrix::build(n, cols, data))
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        for col in columns {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, actual: col.len() });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
        self.scaled = OnceLock::new();
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (r..self.cols).all(|c| self.get(r, c) == &-self.get(c, r).clone()))
    }

    /// Matrix product. Panics on incompatible shapes.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let (a, da) = self.scaled();
        let (b, db) = other.scaled();
        let den = da * db;
        let mut acc = vec![BigInt::zero(); self.rows * other.cols];
        for r in 0..self.rows {
            let out = &mut acc[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let x = &a[r * self.cols + k];
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k * other.cols..(k + 1) * other.cols]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
        }
        let data = acc.into_iter().map(|n| ratio(n, &den)).collect();
        RatMatrix::build(self.rows, other.cols, data)
    }

    /// Matrix-vector product. Panics on incompatible shapes.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let (a, da) = self.scaled();
        let (x, dx) = common_denominator(v);
        let den = da * dx;
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (m, y) in a[r * self.cols..(r + 1) * self.cols].iter().zip(&x) {
                    if !m.is_zero() && !y.is_zero() {
                        acc += m * y;
                    }
                }
                ratio(acc, &den)
            })
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMatrix::build(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RatMatrix::build(self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        let data = self.data.iter().map(|a| a * s).collect();
        RatMatrix::build(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> RatMatrix {
        let data = self.data.iter().map(|a| -a.clone()).collect();
        RatMatrix::build(self.rows, self.cols, data)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[RatMatrix]) -> Result<RatMatrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch { expected: cols, actual: b.cols });
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(RatMatrix::build(rows, cols, data))
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }

    /// Basis of `{x : self * x = 0}`; empty iff full column rank.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        nullspace(self)
    }

    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        solve(self, b)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        inverse(self)
    }
}

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

/// `values = numerators / denominator` with the least common denominator.
fn common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = values.iter().fold(BigInt::one(), |acc, x| {
        if x.denom().is_one() {
            acc
        } else {
            acc.lcm(x.denom())
        }
    });
    let ints = values
        .iter()
        .map(|x| if x.denom() == &lcm { x.numer().clone() } else { x.numer() * (&lcm / x.denom()) })
        .collect();
    (ints, lcm)
}

fn ratio(numer: BigInt, denom: &BigInt) -> Rational {
    if numer.is_zero() {
        Rational::zero()
    } else if denom.is_one() {
        Rational::from_integer(numer)
    } else {
        Rational::new(numer, denom.clone())
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(ints)
}

fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    row
}

/// Fraction-free forward elimination followed by exact back substitution.
pub fn rref(m: &RatMatrix) -> Rref {
    let cols = m.cols;
    let mut pending: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| integer_row(m.row(r)))
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    let mut echelon: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots = Vec::new();

    for c in 0..cols {
        if pending.is_empty() {
            break;
        }
        // Largest magnitude wins; `max_by` keeps the last maximum, so scan in
        // reverse to keep the lowest index on ties.
        let Some(best) = pending
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, row)| !row[c].is_zero())
            .max_by(|(_, a), (_, b)| a[c].abs().cmp(&b[c].abs()))
            .map(|(i, _)| i)
        else {
            continue;
        };
        let pivot_row = pending.remove(best);
        let p = pivot_row[c].clone();
        let mut kept = Vec::with_capacity(pending.len());
        for row in pending.drain(..) {
            if row[c].is_zero() {
                kept.push(row);
                continue;
            }
            let f = row[c].clone();
            let mut next: Vec<BigInt> = Vec::with_capacity(cols);
            for j in 0..cols {
                if j < c {
                    next.push(BigInt::zero());
                } else if pivot_row[j].is_zero() {
                    next.push(&row[j] * &p);
                } else {
                    next.push(&row[j] * &p - &f * &pivot_row[j]);
                }
            }
            let next = primitive(next);
            if next.iter().any(|x| !x.is_zero()) {
                kept.push(next);
            }
        }
        pending = kept;
        echelon.push(pivot_row);
        pivots.push(c);
    }

    // Back substitution in exact rationals.
    let mut rows: Vec<Vec<Rational>> = echelon
        .into_iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let lead = row[pc].clone();
            row.into_iter().map(|x| Rational::new(x, lead.clone())).collect()
        })
        .collect();
    for k in (0..rows.len()).rev() {
        let pc = pivots[k];
        let (above, rest) = rows.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
    }
    Rref { rows, pivots, cols }
}

pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let r = rref(m);
    let mut is_pivot = vec![false; r.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..r.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); r.cols];
        v[free] = Rational::one();
        for (row, &pc) in r.rows.iter().zip(&r.pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(normalize_leading(v));
    }
    basis
}

/// Nullspace of the vertical stack of `blocks`, computed by intersecting
/// one block kernel at a time. Returns the same basis as [`nullspace`] on
/// the stacked matrix.
pub fn nullspace_of_blocks(cols: usize, blocks: &[RatMatrix]) -> Result<Vec<Vec<Rational>>> {
    let mut basis: Vec<Vec<Rational>> = (0..cols)
        .map(|i| {
            let mut v = vec![Rational::zero(); cols];
            v[i] = Rational::one();
            v
        })
        .collect();
    for block in blocks {
        if block.cols != cols {
            return Err(Error::DimensionMismatch { expected: cols, actual: block.cols });
        }
        if basis.is_empty() {
            break;
        }
        let frame = RatMatrix::from_columns(cols, &basis)?;
        let kernel = nullspace(&block.mul(&frame));
        if kernel.len() == basis.len() {
            continue;
        }
        basis = kernel.iter().map(|k| frame.mul_vec(k)).collect();
        basis = kernel_basis(cols, &basis);
    }
    Ok(basis)
}

/// The basis [`nullspace`] would report for a kernel spanned by `vectors`:
/// one vector per free column `f`, supported on columns `<= f` and vanishing
/// on the other free columns.
fn kernel_basis(cols: usize, vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let reversed = RatMatrix::from_fn(vectors.len(), cols, |r, c| vectors[r][cols - 1 - c].clone());
    let r = rref(&reversed);
    let mut out: Vec<Vec<Rational>> = r
        .rows
        .iter()
        .map(|row| normalize_leading((0..cols).map(|c| row[cols - 1 - c].clone()).collect()))
        .collect();
    out.reverse();
    out
}

/// Scales a vector so its first nonzero entry is 1.
pub fn normalize_leading(mut v: Vec<Rational>) -> Vec<Rational> {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x = &*x / &lead;
            }
        }
    }
    v
}

pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, actual: b.len() });
    }
    let aug = RatMatrix::from_fn(m.rows, m.cols + 1, |r, c| {
        if c < m.cols {
            m.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let r = rref(&aug);
    if r.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (row, &pc) in r.rows.iter().zip(&r.pivots) {
        x[pc] = row[m.cols].clone();
    }
    Ok(Some(x))
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows, actual: m.cols });
    }
    let n = m.rows;
    let aug = RatMatrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let r = rref(&aug);
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| r.rows[i][n + j].clone()))
}

/// Cayley transform `(I - S)(I + S)^-1` of a skew-symmetric matrix; the
/// result is exactly orthogonal.
pub fn cayley_orthogonal(skew: &RatMatrix) -> Result<RatMatrix> {
    if !skew.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    let id = RatMatrix::identity(skew.rows);
    let inv = inverse(&id.add(skew))?;
    Ok(id.sub(skew).mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(RatMatrix::identity(2).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_single_equation() {
        assert_eq!(m(&[&[1, -1]]).nullspace(), vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn nullspace_leading_entry_is_one() {
        let a = m(&[&[2, 4, 6], &[1, 2, 3]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            assert!(v.iter().find(|x| !x.is_zero()).unwrap().is_one());
        }
        assert_eq!(a.rank() + ns.len(), 3);
    }

    #[test]
    fn solve_examples() {
        let id = RatMatrix::identity(3);
        let b = vec![int(1), rat(2, 3), int(-5)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(m(&[&[2]]).solve(&[int(1)]).unwrap(), Some(vec![rat(1, 2)]));
        assert_eq!(m(&[&[1], &[1]]).solve(&[int(1), int(2)]).unwrap(), None);
        assert!(id.solve(&[int(1)]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn cayley_of_zero_is_identity() {
        assert_eq!(cayley_orthogonal(&RatMatrix::zeros(3, 3)).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn cayley_two_by_two() {
        // (I - S)(I + S)^-1 with S = [[0,1],[-1,0]]: I + S has inverse
        // (1/2)[[1,-1],[1,1]], and the product is the quarter turn [[0,-1],[1,0]].
        let s = m(&[&[0, 1], &[-1, 0]]);
        let q = cayley_orthogonal(&s).unwrap();
        assert_eq!(q, m(&[&[0, -1], &[1, 0]]));
        assert_eq!(q.transpose().mul(&q), RatMatrix::identity(2));
    }

    #[test]
    fn cayley_rejects_non_skew() {
        assert_eq!(cayley_orthogonal(&m(&[&[1, 0], &[0, 0]])), Err(Error::NotSkewSymmetric));
    }

    #[test]
    fn block_nullspace_matches_stacked() {
        let mut s = crate::sample::Sampler::new(3);
        for trial in 0..40 {
            let cols = 2 + trial % 6;
            let blocks: Vec<RatMatrix> = (0..1 + trial % 4)
                .map(|_| {
                    // rank-deficient blocks so the kernel is usually nontrivial
                    let a = RatMatrix::from_fn(2, cols, |_, _| s.rational());
                    let mix = RatMatrix::from_fn(3, 2, |_, _| s.rational());
                    mix.mul(&a)
                })
                .collect();
            let stacked = RatMatrix::vstack(&blocks).unwrap();
            assert_eq!(nullspace_of_blocks(cols, &blocks).unwrap(), nullspace(&stacked), "trial {trial}");
        }
    }
}
