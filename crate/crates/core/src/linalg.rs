//! Exact linear algebra over ℚ.
//!
//! Everything here works with arbitrary-precision rationals. Matrices are
//! stored sparsely and switch to dense rows once more than half of a row is
//! filled, which is what happens during elimination of the (very sparse)
//! monomial differentials.
//!
//! Pivoting is deterministic: columns are scanned left to right and the first
//! row (in current order) with a nonzero entry becomes the pivot row.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// One row of a matrix under elimination.
#[derive(Clone, Debug)]
enum Row {
    /// Sorted by column, no explicit zeros.
    Sparse(Vec<(usize, Rational)>),
    Dense(Vec<Rational>),
}

impl Row {
    fn from_dense(values: &[Rational]) -> Row {
        let nnz = values.iter().filter(|v| !v.is_zero()).count();
        if 2 * nnz > values.len() {
            Row::Dense(values.to_vec())
        } else {
            Row::Sparse(
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            )
        }
    }

    fn get(&self, col: usize) -> Rational {
        match self {
            Row::Sparse(entries) => match entries.binary_search_by_key(&col, |(c, _)| *c) {
                Ok(pos) => entries[pos].1.clone(),
                Err(_) => Rational::zero(),
            },
            Row::Dense(values) => values[col].clone(),
        }
    }

    fn is_nonzero_at(&self, col: usize) -> bool {
        match self {
            Row::Sparse(entries) => entries.binary_search_by_key(&col, |(c, _)| *c).is_ok(),
            Row::Dense(values) => !values[col].is_zero(),
        }
    }

    fn leading(&self) -> Option<usize> {
        match self {
            Row::Sparse(entries) => entries.first().map(|(c, _)| *c),
            Row::Dense(values) => values.iter().position(|v| !v.is_zero()),
        }
    }

    fn is_zero(&self) -> bool {
        self.leading().is_none()
    }

    fn entries(&self) -> Box<dyn Iterator<Item = (usize, &Rational)> + '_> {
        match self {
            Row::Sparse(entries) => Box::new(entries.iter().map(|(c, v)| (*c, v))),
            Row::Dense(values) => Box::new(
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero()),
            ),
        }
    }

    fn scale(&mut self, factor: &Rational) {
        match self {
            Row::Sparse(entries) => entries.iter_mut().for_each(|(_, v)| *v *= factor),
            Row::Dense(values) => values.iter_mut().for_each(|v| *v *= factor),
        }
    }

    /// `self += factor * other`.
    fn axpy(&mut self, factor: &Rational, other: &Row, width: usize) {
        match self {
            Row::Dense(values) => {
                for (c, v) in other.entries() {
                    values[c] += factor * v;
                }
            }
            Row::Sparse(entries) => {
                let mut merged = Vec::with_capacity(entries.len() + 4);
                let mut mine = std::mem::take(entries).into_iter().peekable();
                for (c, v) in other.entries() {
                    while let Some((mc, _)) = mine.peek() {
                        if *mc < c {
                            merged.push(mine.next().unwrap());
                        } else {
                            break;
                        }
                    }
                    let add = factor * v;
                    match mine.peek() {
                        Some((mc, _)) if *mc == c => {
                            let (_, mv) = mine.next().unwrap();
                            let sum = mv + add;
                            if !sum.is_zero() {
                                merged.push((c, sum));
                            }
                        }
                        _ => {
                            if !add.is_zero() {
                                merged.push((c, add));
                            }
                        }
                    }
                }
                merged.extend(mine);
                *entries = merged;
                if 2 * entries.len() > width {
                    let mut dense = vec![Rational::zero(); width];
                    for (c, v) in entries.drain(..) {
                        dense[c] = v;
                    }
                    *self = Row::Dense(dense);
                }
            }
        }
    }

    fn to_dense(&self, width: usize) -> Vec<Rational> {
        match self {
            Row::Dense(values) => values.clone(),
            Row::Sparse(entries) => {
                let mut dense = vec![Rational::zero(); width];
                for (c, v) in entries {
                    dense[*c] = v.clone();
                }
                dense
            }
        }
    }
}

/// A rational matrix with sparse storage, falling back to dense rows when a
/// row is more than half full.
#[derive(Clone)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Row>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Row::Sparse(Vec::new()); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i] = Row::Sparse(vec![(i, Rational::one())]);
        }
        m
    }

    /// Builds a matrix from dense rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "row length does not match column count");
                Row::from_dense(r)
            })
            .collect();
        RatMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut triplets = Vec::new();
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length does not match row count");
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    triplets.push((r, c, v.clone()));
                }
            }
        }
        Self::from_triplets(rows, columns.len(), triplets)
    }

    /// Builds a matrix from `(row, col, value)` entries; repeated positions add up.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut per_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            per_row[r].push((c, v));
        }
        let data = per_row
            .into_iter()
            .map(|mut entries| {
                entries.sort_by_key(|(c, _)| *c);
                let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
                for (c, v) in entries {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                if 2 * merged.len() > cols {
                    Row::Sparse(merged).densified(cols)
                } else {
                    Row::Sparse(merged)
                }
            })
            .collect();
        RatMatrix { rows, cols, data }
    }

    /// Convenience constructor from small integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        Self::from_rows(cols, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.data[row].get(col)
    }

    pub fn row(&self, row: usize) -> Vec<Rational> {
        self.data[row].to_dense(self.cols)
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.data[r].get(col)).collect()
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.entries().count()).sum()
    }

    /// Whether any row has switched to dense storage.
    pub fn has_dense_rows(&self) -> bool {
        self.data.iter().any(|r| matches!(r, Row::Dense(_)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Row::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let triplets = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.entries()
                    .map(move |(c, v)| (c, r, v.clone()))
                    .collect::<Vec<_>>()
            });
        Self::from_triplets(self.cols, self.rows, triplets)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.entries()
                    .fold(Rational::zero(), |acc, (c, x)| acc + x * &v[c])
            })
            .collect())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc = Row::Sparse(Vec::new());
            for (k, v) in row.entries() {
                acc.axpy(v, &other.data[k], other.cols);
            }
            out.push(acc);
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    /// Reduced row echelon form of the rows (deterministic pivoting).
    pub fn row_echelon(&self) -> Echelon {
        let mut echelon = Echelon::new(self.cols);
        for row in &self.data {
            echelon.insert_row(row.clone());
        }
        echelon
    }
}

impl Row {
    fn densified(self, width: usize) -> Row {
        Row::Dense(self.to_dense(width))
    }
}

impl PartialEq for RatMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|r| self.row(r) == other.row(r))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A row space kept in reduced row echelon form.
///
/// Rows are stored in increasing pivot order; every pivot entry is 1 and
/// every pivot column is zero in all other rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// RREF of the span of `vectors`, inserted in order.
    pub fn from_vectors<'a>(width: usize, vectors: impl IntoIterator<Item = &'a Vec<Rational>>) -> Self {
        let mut e = Echelon::new(width);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.rows[i].to_dense(self.width)
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        (0..self.rows.len()).map(|i| self.row(i))
    }

    fn reduce_row(&self, row: &mut Row) {
        for (pivot_row, &p) in self.rows.iter().zip(&self.pivots) {
            if row.is_nonzero_at(p) {
                let factor = -row.get(p);
                row.axpy(&factor, pivot_row, self.width);
            }
        }
    }

    /// Reduces `v` against the stored rows: the result is zero in every pivot
    /// column and differs from `v` by an element of the row space.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.width, "vector length does not match echelon width");
        let mut row = Row::from_dense(v);
        self.reduce_row(&mut row);
        row.to_dense(self.width)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut row = Row::from_dense(v);
        self.reduce_row(&mut row);
        row.is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the rank went up.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.width, "vector length does not match echelon width");
        self.insert_row(Row::from_dense(v))
    }

    fn insert_row(&mut self, mut row: Row) -> bool {
        self.reduce_row(&mut row);
        let Some(lead) = row.leading() else {
            return false;
        };
        let inv = row.get(lead).recip();
        row.scale(&inv);
        for existing in &mut self.rows {
            if existing.is_nonzero_at(lead) {
                let factor = -existing.get(lead);
                existing.axpy(&factor, &row, self.width);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
        true
    }
}

/// Rank over ℚ.
pub fn rank(m: &RatMatrix) -> usize {
    m.row_echelon().rank()
}

/// Scales a vector so that its entries are coprime integers; the sign is
/// chosen so that the last nonzero entry is positive.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    if ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        gcd = -gcd;
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

/// Basis of the null space `{x : m x = 0}`.
///
/// One vector per free column of the RREF, in increasing free-column order.
/// Each vector is scaled to coprime integer entries with a positive entry in
/// its free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let echelon = m.row_echelon();
    let pivots = echelon.pivots();
    let mut basis = Vec::new();
    let mut next_pivot = 0;
    for free in 0..m.cols() {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![Rational::zero(); m.cols()];
        v[free] = Rational::one();
        for (row, &p) in echelon.rows.iter().zip(pivots) {
            let entry = row.get(free);
            if !entry.is_zero() {
                v[p] = -entry;
            }
        }
        let v = primitive(&v);
        // `primitive` makes the last nonzero entry positive; the free column
        // is the last nonzero one, since pivots after it are not involved.
        basis.push(v);
    }
    basis
}

/// Coefficients `x` with `m x = v`, or `None` when `v` is not in the column
/// span. Free variables are set to zero.
pub fn solve_membership(m: &RatMatrix, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
    if v.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            found: v.len(),
        });
    }
    let width = m.cols() + 1;
    let mut echelon = Echelon::new(width);
    for r in 0..m.rows() {
        let mut row = m.row(r);
        row.push(v[r].clone());
        echelon.insert(&row);
    }
    if echelon.pivots().last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &p) in echelon.rows.iter().zip(echelon.pivots()) {
        x[p] = row.get(m.cols());
    }
    Ok(Some(x))
}

/// `ambient_dim − rank(span(subspace))`.
pub fn quotient_dimension(ambient_dim: usize, subspace: &[Vec<Rational>]) -> Result<usize, LinalgError> {
    if let Some(bad) = subspace.iter().find(|v| v.len() != ambient_dim) {
        return Err(LinalgError::DimensionMismatch {
            expected: ambient_dim,
            found: bad.len(),
        });
    }
    Ok(ambient_dim - Echelon::from_vectors(ambient_dim, subspace).rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
        let k = kernel_basis(&RatMatrix::zeros(2, 3));
        assert_eq!(k, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
        let k = kernel_basis(&RatMatrix::from_int_rows(&[&[1, 1, 0]]));
        assert_eq!(k, vec![ints(&[-1, 1, 0]), ints(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_vectors_are_primitive() {
        let m = RatMatrix::from_rows(3, &[vec![ratio(1, 2), ratio(1, 3), rat(0)]]);
        let k = kernel_basis(&m);
        assert_eq!(k[0], ints(&[-2, 3, 0]));
    }

    #[test]
    fn membership_examples() {
        let id = RatMatrix::identity(2);
        assert_eq!(solve_membership(&id, &ints(&[3, 5])).unwrap(), Some(ints(&[3, 5])));
        let zero = RatMatrix::zeros(2, 2);
        assert_eq!(solve_membership(&zero, &ints(&[1, 0])).unwrap(), None);
        let m = RatMatrix::from_int_rows(&[&[2], &[4]]);
        assert_eq!(solve_membership(&m, &ints(&[1, 2])).unwrap(), Some(vec![ratio(1, 2)]));
        assert!(matches!(
            solve_membership(&m, &ints(&[1])),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn quotient_dimension_examples() {
        assert_eq!(quotient_dimension(4, &[]).unwrap(), 4);
        let three = [ints(&[1, 0, 0]), ints(&[1, 1, 0]), ints(&[1, 1, 1])];
        assert_eq!(quotient_dimension(3, &three).unwrap(), 0);
        let dependent = [ints(&[1, 0, 0]), ints(&[2, 0, 0])];
        assert_eq!(quotient_dimension(3, &dependent).unwrap(), 2);
        assert!(quotient_dimension(3, &[ints(&[1])]).is_err());
    }

    #[test]
    fn dense_fallback_kicks_in() {
        let m = RatMatrix::from_int_rows(&[&[1, 1, 1, 0], &[0, 0, 0, 1]]);
        assert!(m.has_dense_rows());
        let sparse = RatMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 0, 0, 1]]);
        assert!(!sparse.has_dense_rows());
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn echelon_reduce_is_canonical() {
        let e = Echelon::from_vectors(3, &[ints(&[0, 2, 2]), ints(&[1, 1, 0])]);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(e.reduce(&ints(&[1, 2, 1])), ints(&[0, 0, 0]));
        assert_eq!(e.reduce(&ints(&[0, 0, 1])), ints(&[0, 0, 1]));
    }

    #[test]
    fn matrix_product() {
        let a = RatMatrix::from_int_rows(&[&[1, 2], &[0, 1]]);
        let b = RatMatrix::from_int_rows(&[&[1, -2], &[0, 1]]);
        assert_eq!(a.mul(&b).unwrap(), RatMatrix::identity(2));
    }
}
