//! Exact rational matrices, subspaces of ℚⁿ and orthogonal projections.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(t.into());
    let int = |s: &str| -> Result<BigInt, ParseRationalError> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse::<BigInt>().map_err(|_| malformed())
    };
    if let Some((p, q)) = t.split_once('/') {
        let (p, q) = (int(p.trim())?, int(q.trim())?);
        if q.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(t.into()));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let negative = whole.starts_with('-');
        let whole = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => int(w)?,
        };
        let scale = num_traits::pow(BigInt::from(10u8), frac.len());
        let frac = frac.parse::<BigInt>().map_err(|_| malformed())?;
        let mag = whole.abs() * &scale + frac;
        let num = if negative { -mag } else { mag };
        return Ok(Rational::new(num, scale));
    }
    Ok(Rational::from_integer(int(t)?))
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("expected {expected} entries, got {actual}")]
    Shape { expected: usize, actual: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("not idempotent: (P^2 - P) has entry {entry} at ({row}, {col})")]
    NotIdempotent {
        row: usize,
        col: usize,
        entry: String,
    },
    #[error("not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
}

/// A dense matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::Shape {
                    expected: c,
                    actual: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("rows of equal length")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
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

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = a * other.get(k, c);
                    out.data[r * other.cols + c] += v;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::DimensionMismatch(
                self.rows * self.cols,
                other.rows * other.cols,
            ));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First asymmetric position, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                if self.get(r, c) != self.get(c, r) {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Mx = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (i, x) in self.row(r).iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// A subspace of ℚⁿ, stored as the nonzero rows of a reduced row echelon
/// basis. Two subspaces are equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            dim: n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::row_space(&RationalMatrix::identity(n))
    }

    pub fn span(n: usize, vectors: &[Vec<Rational>]) -> Result<Self, MatrixError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(MatrixError::DimensionMismatch(n, v.len()));
        }
        let m = RationalMatrix::from_rows(vectors.to_vec())
            .unwrap_or_else(|_| RationalMatrix::zeros(0, n));
        if vectors.is_empty() {
            return Ok(Self::zero(n));
        }
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &RationalMatrix) -> Self {
        let (r, pivots) = m.rref();
        Subspace {
            dim: m.cols(),
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn column_space(m: &RationalMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    /// Ambient dimension n.
    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    fn as_matrix(&self) -> RationalMatrix {
        if self.basis.is_empty() {
            return RationalMatrix::zeros(0, self.dim);
        }
        RationalMatrix::from_rows(self.basis.clone())
            .expect("basis rows share the ambient dimension")
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        RationalMatrix::from_rows(rows).is_ok_and(|m| m.rank() == self.rank())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let rows: Vec<Vec<Rational>> = self.basis.iter().chain(&other.basis).cloned().collect();
        if rows.is_empty() {
            return Self::zero(self.dim);
        }
        Self::row_space(&RationalMatrix::from_rows(rows).expect("equal ambient dimension"))
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.dim);
        }
        let null = self.as_matrix().nullspace();
        Self::span(self.dim, &null).expect("nullspace vectors have the ambient dimension")
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    /// The orthogonal projection onto this subspace, `Bᵀ(BBᵀ)⁻¹B`.
    pub fn projection_matrix(&self) -> RationalMatrix {
        if self.basis.is_empty() {
            return RationalMatrix::zeros(self.dim, self.dim);
        }
        let b = self.as_matrix();
        let bt = b.transpose();
        let gram = b.mul(&bt).expect("conformable");
        let inv = gram
            .inverse()
            .expect("a basis has an invertible Gram matrix over ℚ");
        bt.mul(&inv).and_then(|m| m.mul(&b)).expect("conformable")
    }
}

/// An orthogonal projection on ℚⁿ, identified with its range.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Projection {
    range: Subspace,
}

impl Projection {
    pub fn onto(range: Subspace) -> Self {
        Projection { range }
    }

    pub fn zero(n: usize) -> Self {
        Self::onto(Subspace::zero(n))
    }

    pub fn identity(n: usize) -> Self {
        Self::onto(Subspace::full(n))
    }

    /// Accepts `P` only if `P² = P` and `Pᵀ = P` hold exactly.
    pub fn from_matrix(p: &RationalMatrix) -> Result<Self, MatrixError> {
        if !p.is_square() {
            return Err(MatrixError::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        if let Some((row, col)) = p.asymmetry() {
            return Err(MatrixError::NotSymmetric { row, col });
        }
        let diff = p.mul(p)?.sub(p)?;
        if let Some(i) = diff.entries().iter().position(|x| !x.is_zero()) {
            return Err(MatrixError::NotIdempotent {
                row: i / p.cols(),
                col: i % p.cols(),
                entry: diff.entries()[i].to_string(),
            });
        }
        Ok(Self::onto(Subspace::column_space(p)))
    }

    pub fn range(&self) -> &Subspace {
        &self.range
    }

    pub fn dim(&self) -> usize {
        self.range.ambient()
    }

    pub fn rank(&self) -> usize {
        self.range.rank()
    }

    pub fn matrix(&self) -> RationalMatrix {
        self.range.projection_matrix()
    }

    pub fn leq(&self, other: &Projection) -> bool {
        self.range.is_subspace_of(&other.range)
    }

    pub fn meet(&self, other: &Projection) -> Projection {
        Self::onto(self.range.intersect(&other.range))
    }

    pub fn join(&self, other: &Projection) -> Projection {
        Self::onto(self.range.sum(&other.range))
    }

    pub fn ortho(&self) -> Projection {
        Self::onto(self.range.orthogonal_complement())
    }

    pub fn is_orthogonal_to(&self, other: &Projection) -> bool {
        self.leq(&other.ortho())
    }

    /// Checks `P² = P` and `Pᵀ = P` on the materialized matrix.
    pub fn verify_idempotent(&self) -> bool {
        let p = self.matrix();
        p.is_symmetric() && p.mul(&p).is_ok_and(|q| q == p)
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix())
    }
}
