//! Eigendecomposition of rational symmetric matrices with rational spectrum,
//! and step spectral families.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::{Elem, OrthomodularLattice};
use crate::linalg::{MatrixError, Projection, Rational, RationalMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("characteristic polynomial has a factor without rational roots: {factor}")]
    IrrationalSpectrum { factor: String },
    #[error("coefficient too large for rational root search: {0}")]
    CoefficientTooLarge(String),
    #[error("eigenpairs are invalid: {0}")]
    InvalidEigenpairs(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Synthetic division by `(x - r)`; the remainder is dropped.
    fn deflate(&self, r: &Rational) -> Polynomial {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + carry * r;
            out[i - 1] = carry.clone();
        }
        Polynomial::new(out)
    }
}

impl core::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det(xI - A)` by the Faddeev–LeVerrier recurrence.
pub fn characteristic_polynomial(a: &RationalMatrix) -> Result<Polynomial, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let id = RationalMatrix::identity(n);
    let mut m = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add(&id.scale(&c[n - k + 1]))?;
        let am = a.mul(&m)?;
        c[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
    }
    Ok(Polynomial::new(c))
}

/// Trial division stays below a million steps.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Result<Vec<u64>, SpectralError> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&n| n <= DIVISOR_LIMIT)
        .ok_or_else(|| SpectralError::CoefficientTooLarge(format!("{n}")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Rational roots with multiplicity in increasing order, plus the factor
/// that has no rational roots left.
pub fn rational_roots(p: &Polynomial) -> Result<(Vec<Rational>, Polynomial), SpectralError> {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    while rest.degree() > 0 && rest.coeffs[0].is_zero() {
        roots.push(Rational::zero());
        rest = Polynomial::new(rest.coeffs[1..].to_vec());
    }
    loop {
        if rest.degree() == 0 {
            break;
        }
        let lcm = rest
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rest
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().expect("nonzero degree"))?;
        let mut found = None;
        'search: for &q in &qs {
            for &p in &ps {
                for sign in [-1i64, 1] {
                    let cand = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                    if rest.eval(&cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                rest = rest.deflate(&r);
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    Ok((roots, rest))
}

/// Distinct eigenvalues with their eigenprojections, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralDecomposition {
    dim: usize,
    pairs: Vec<(Rational, Projection)>,
}

impl SpectralDecomposition {
    pub fn pairs(&self) -> &[(Rational, Projection)] {
        &self.pairs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &Rational> {
        self.pairs.iter().map(|(l, _)| l)
    }

    pub fn min_eigenvalue(&self) -> &Rational {
        &self.pairs[0].0
    }

    pub fn max_eigenvalue(&self) -> &Rational {
        &self.pairs[self.pairs.len() - 1].0
    }

    /// `Σ λᵢ Pᵢ`.
    pub fn reconstruct(&self) -> RationalMatrix {
        self.pairs
            .iter()
            .fold(RationalMatrix::zeros(self.dim, self.dim), |acc, (l, p)| {
                acc.add(&p.matrix().scale(l)).expect("same dimension")
            })
    }

    /// Builds a decomposition from explicitly supplied eigenpairs, checking
    /// that eigenvalues are distinct and the projections are pairwise
    /// orthogonal and sum to the identity.
    pub fn from_pairs(
        dim: usize,
        mut pairs: Vec<(Rational, Projection)>,
    ) -> Result<Self, SpectralError> {
        if pairs.is_empty() {
            return Err(SpectralError::InvalidEigenpairs("no eigenpairs".into()));
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SpectralError::InvalidEigenpairs(format!(
                    "repeated eigenvalue {}",
                    w[0].0
                )));
            }
        }
        for (l, p) in &pairs {
            if p.dim() != dim {
                return Err(SpectralError::InvalidEigenpairs(format!(
                    "projection for {l} has dimension {}",
                    p.dim()
                )));
            }
            if p.rank() == 0 {
                return Err(SpectralError::InvalidEigenpairs(format!(
                    "projection for {l} is zero"
                )));
            }
        }
        let mut total = RationalMatrix::zeros(dim, dim);
        for (i, (li, pi)) in pairs.iter().enumerate() {
            for (lj, pj) in &pairs[i + 1..] {
                if !pi.is_orthogonal_to(pj) {
                    return Err(SpectralError::InvalidEigenpairs(format!(
                        "projections for {li} and {lj} are not orthogonal"
                    )));
                }
            }
            total = total.add(&pi.matrix())?;
        }
        if total != RationalMatrix::identity(dim) {
            return Err(SpectralError::InvalidEigenpairs(
                "projections do not sum to the identity".into(),
            ));
        }
        Ok(SpectralDecomposition { dim, pairs })
    }

    /// Sum of the eigenprojections with eigenvalue strictly below `lambda`.
    pub fn projection_below(&self, lambda: &Rational) -> Projection {
        self.pairs
            .iter()
            .filter(|(l, _)| l < lambda)
            .fold(Projection::zero(self.dim), |acc, (_, p)| acc.join(p))
    }

    /// The left-continuous family `A_λ = Σ_{λᵢ<λ} Pᵢ`.
    pub fn spectral_family(&self) -> SpectralFamily<Projection> {
        let breakpoints: Vec<Rational> = self.pairs.iter().map(|(l, _)| l.clone()).collect();
        let mut values = vec![Projection::zero(self.dim)];
        for (_, p) in &self.pairs {
            let next = values.last().expect("nonempty").join(p);
            values.push(next);
        }
        SpectralFamily {
            flavor: Flavor::LeftContinuous,
            breakpoints,
            values,
        }
    }
}

/// Decomposes a symmetric rational matrix whose spectrum is rational.
pub fn eigendecompose(a: &RationalMatrix) -> Result<SpectralDecomposition, SpectralError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    if let Some((row, col)) = a.asymmetry() {
        return Err(SpectralError::NotHermitian { row, col });
    }
    let n = a.rows();
    let poly = characteristic_polynomial(a)?;
    let (mut roots, rest) = rational_roots(&poly)?;
    if rest.degree() > 0 {
        return Err(SpectralError::IrrationalSpectrum {
            factor: format!("{rest}"),
        });
    }
    roots.dedup();
    let id = RationalMatrix::identity(n);
    let pairs = roots
        .into_iter()
        .map(|l| {
            let shifted = a.sub(&id.scale(&l)).expect("same dimension");
            let space = Subspace::span(n, &shifted.nullspace()).expect("ambient dimension");
            (l, Projection::onto(space))
        })
        .collect();
    let d = SpectralDecomposition::from_pairs(n, pairs)?;
    debug_assert_eq!(&d.reconstruct(), a);
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `value(λ) = F_i` with `i = #{breakpoints < λ}`.
    LeftContinuous,
    /// `value(λ) = F_i` with `i = #{breakpoints ≤ λ}`.
    WeaklyRightContinuous,
}

/// A step family: `values[0]` holds below every breakpoint and
/// `values[i]` between breakpoint `i - 1` and breakpoint `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralFamily<V> {
    pub flavor: Flavor,
    pub breakpoints: Vec<Rational>,
    pub values: Vec<V>,
}

impl<V> SpectralFamily<V> {
    pub fn value_at(&self, lambda: &Rational) -> &V {
        let i = match self.flavor {
            Flavor::LeftContinuous => self.breakpoints.iter().filter(|b| *b < lambda).count(),
            Flavor::WeaklyRightContinuous => {
                self.breakpoints.iter().filter(|b| *b <= lambda).count()
            }
        };
        &self.values[i]
    }

    pub fn map<W>(&self, f: impl FnMut(&V) -> W) -> SpectralFamily<W> {
        SpectralFamily {
            flavor: self.flavor,
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}

/// Order structure needed to check a family.
pub trait FamilyOrder<V> {
    fn leq(&self, a: &V, b: &V) -> bool;
    fn is_bottom(&self, v: &V) -> bool;
    fn is_top(&self, v: &V) -> bool;
}

/// Projections on ℚⁿ under range inclusion.
pub struct ProjectionOrder {
    pub dim: usize,
}

impl FamilyOrder<Projection> for ProjectionOrder {
    fn leq(&self, a: &Projection, b: &Projection) -> bool {
        a.leq(b)
    }
    fn is_bottom(&self, v: &Projection) -> bool {
        v.rank() == 0
    }
    fn is_top(&self, v: &Projection) -> bool {
        v.rank() == self.dim
    }
}

impl FamilyOrder<Elem> for OrthomodularLattice {
    fn leq(&self, a: &Elem, b: &Elem) -> bool {
        self.lattice().leq(*a, *b)
    }
    fn is_bottom(&self, v: &Elem) -> bool {
        *v == self.bottom()
    }
    fn is_top(&self, v: &Elem) -> bool {
        *v == self.top()
    }
}

/// Outcome of checking a family's defining conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub flavor: Flavor,
    /// Breakpoints strictly increasing and one more value than breakpoints.
    pub well_formed: bool,
    /// First index `i` with `values[i] ≰ values[i + 1]`.
    pub monotone_violation: Option<usize>,
    /// Meet of all values is the bottom.
    pub bottom: bool,
    /// Join of all values is the top. For the weakly right continuous
    /// flavor this is reported, not required.
    pub top: bool,
    /// One-sided continuity in the flavor's direction. Holds for every
    /// well-formed step family by the flavor's convention.
    pub continuity: bool,
}

impl FamilyReport {
    /// Whether the family satisfies every condition its flavor requires.
    pub fn holds(&self) -> bool {
        let base =
            self.well_formed && self.monotone_violation.is_none() && self.bottom && self.continuity;
        match self.flavor {
            Flavor::LeftContinuous => base && self.top,
            Flavor::WeaklyRightContinuous => base,
        }
    }
}

/// Checks the conditions for a family's flavor exactly.
///
/// For a monotone step family the meet over all λ is the lowest value and
/// the join is the highest, so bottom and top reduce to the end values.
pub fn verify_family<V>(order: &impl FamilyOrder<V>, f: &SpectralFamily<V>) -> FamilyReport {
    let well_formed =
        f.values.len() == f.breakpoints.len() + 1 && f.breakpoints.windows(2).all(|w| w[0] < w[1]);
    let monotone_violation = f.values.windows(2).position(|w| !order.leq(&w[0], &w[1]));
    FamilyReport {
        flavor: f.flavor,
        well_formed,
        monotone_violation,
        bottom: f.values.first().is_some_and(|v| order.is_bottom(v)),
        top: f.values.last().is_some_and(|v| order.is_top(v)),
        continuity: well_formed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::parse_rational;
    use alloc::string::ToString;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn characteristic_polynomial_of_small_matrices() {
        let a = RationalMatrix::from_ints(&[&[2, 1], &[1, 2]]);
        // x^2 - 4x + 3
        let p = characteristic_polynomial(&a).unwrap();
        assert_eq!(p.coeffs(), [q("3"), q("-4"), q("1")]);
        assert_eq!(p.to_string(), "x^2 - 4x + 3");
        let (roots, rest) = rational_roots(&p).unwrap();
        assert_eq!(roots, [q("1"), q("3")]);
        assert_eq!(rest.degree(), 0);
    }

    #[test]
    fn diagonal_decomposition() {
        let a = RationalMatrix::diag(&[q("1"), q("2")]);
        let d = eigendecompose(&a).unwrap();
        assert_eq!(d.pairs().len(), 2);
        assert_eq!(
            d.pairs()[0].1.matrix(),
            RationalMatrix::from_ints(&[&[1, 0], &[0, 0]])
        );
        assert_eq!(
            d.pairs()[1].1.matrix(),
            RationalMatrix::from_ints(&[&[0, 0], &[0, 1]])
        );
    }

    #[test]
    fn swap_matrix_decomposition() {
        let a = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let d = eigendecompose(&a).unwrap();
        let half = q("1/2");
        let minus = RationalMatrix::from_rows(vec![
            vec![half.clone(), -half.clone()],
            vec![-half.clone(), half.clone()],
        ])
        .unwrap();
        let plus = RationalMatrix::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half],
        ])
        .unwrap();
        assert_eq!(d.pairs()[0].0, q("-1"));
        assert_eq!(d.pairs()[0].1.matrix(), minus);
        assert_eq!(d.pairs()[1].0, q("1"));
        assert_eq!(d.pairs()[1].1.matrix(), plus);
        assert_eq!(d.reconstruct(), a);
    }

    #[test]
    fn rejects_bad_input() {
        let a = RationalMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        assert_eq!(
            eigendecompose(&a),
            Err(SpectralError::NotHermitian { row: 0, col: 1 })
        );
        let a = RationalMatrix::from_ints(&[&[1, 1], &[1, 0]]);
        match eigendecompose(&a) {
            Err(SpectralError::IrrationalSpectrum { factor }) => assert_eq!(factor, "x^2 - x - 1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn repeated_and_zero_eigenvalues() {
        let a = RationalMatrix::diag(&[q("0"), q("3/2"), q("3/2")]);
        let d = eigendecompose(&a).unwrap();
        assert_eq!(d.pairs().len(), 2);
        assert_eq!(d.pairs()[1].1.rank(), 2);
        assert_eq!(d.reconstruct(), a);
    }

    #[test]
    fn left_continuous_family_of_diagonal() {
        let d = eigendecompose(&RationalMatrix::diag(&[q("1"), q("2")])).unwrap();
        let f = d.spectral_family();
        assert_eq!(f.value_at(&q("1")).rank(), 0);
        assert_eq!(
            f.value_at(&q("3/2")).matrix(),
            RationalMatrix::from_ints(&[&[1, 0], &[0, 0]])
        );
        assert_eq!(f.value_at(&q("2")).rank(), 1);
        assert_eq!(f.value_at(&q("5/2")).rank(), 2);
        let report = verify_family(&ProjectionOrder { dim: 2 }, &f);
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn family_with_short_top_fails() {
        let f = SpectralFamily {
            flavor: Flavor::LeftContinuous,
            breakpoints: vec![q("0")],
            values: vec![
                Projection::zero(2),
                Projection::onto(Subspace::span(2, &[vec![q("1"), q("0")]]).unwrap()),
            ],
        };
        let r = verify_family(&ProjectionOrder { dim: 2 }, &f);
        assert!(!r.top && !r.holds());
        let g = SpectralFamily {
            flavor: Flavor::WeaklyRightContinuous,
            ..f
        };
        let r = verify_family(&ProjectionOrder { dim: 2 }, &g);
        assert!(!r.top && r.holds());
    }

    #[test]
    fn from_pairs_validation() {
        let e1 = Projection::onto(Subspace::span(2, &[vec![q("1"), q("0")]]).unwrap());
        let e2 = e1.ortho();
        assert!(
            SpectralDecomposition::from_pairs(2, vec![(q("1"), e1.clone()), (q("2"), e2)]).is_ok()
        );
        assert!(SpectralDecomposition::from_pairs(
            2,
            vec![(q("1"), e1.clone()), (q("2"), e1.clone())]
        )
        .is_err());
        assert!(SpectralDecomposition::from_pairs(2, vec![(q("1"), e1)]).is_err());
    }
}
