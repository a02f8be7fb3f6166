//! Randomized invariants for the exact linear algebra, spectral families and
//! the subobject algebra.

use num_traits::{One, Zero};
use proptest::prelude::*;

use qst_core::linalg::{Projection, Rational, RationalMatrix, Subspace};
use qst_core::spectral::{
    characteristic_polynomial, eigendecompose, verify_family, ProjectionOrder,
};
use qst_core::{make_mo, Daseinisation};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for c in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn small_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-5i64..=5, n * n)
        .prop_map(move |v| RationalMatrix::new(n, n, v.into_iter().map(q).collect()).unwrap())
}

/// `R diag(a, b) Rᵀ` for the rational rotation from a Pythagorean pair.
fn rotated(m: i64, n: i64, a: i64, b: i64) -> RationalMatrix {
    let h = q(m * m + n * n);
    let c = q(m * m - n * n) / &h;
    let s = q(2 * m * n) / &h;
    let r = RationalMatrix::from_rows(vec![vec![c.clone(), -s.clone()], vec![s, c]]).unwrap();
    let d = RationalMatrix::diag(&[q(a), q(b)]);
    r.mul(&d).unwrap().mul(&r.transpose()).unwrap()
}

proptest! {
    #[test]
    fn characteristic_polynomial_matches_cofactor_determinant(a in small_matrix(3), x in -6i64..=6) {
        let p = characteristic_polynomial(&a).unwrap();
        let rows: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| {
                let d = if i == j { q(x) } else { q(0) };
                d - a.get(i, j)
            }).collect())
            .collect();
        prop_assert_eq!(p.eval(&q(x)), det(&rows));
    }

    #[test]
    fn rotated_diagonals_decompose_exactly(m in 1i64..5, n in 1i64..5, a in -4i64..4, b in -4i64..4) {
        prop_assume!(m != n);
        let x = rotated(m, n, a, b);
        let d = eigendecompose(&x).unwrap();
        prop_assert_eq!(d.reconstruct(), x);
        let mut want = vec![q(a), q(b)];
        want.sort();
        want.dedup();
        prop_assert_eq!(d.eigenvalues().cloned().collect::<Vec<_>>(), want);
        for (_, p) in d.pairs() {
            prop_assert!(p.verify_idempotent());
            prop_assert!(p.matrix().is_symmetric());
        }
        let family = d.spectral_family();
        let order = ProjectionOrder { dim: 2 };
        prop_assert!(verify_family(&order, &family).holds());
    }

    #[test]
    fn projection_lattice_is_orthomodular(v in prop::collection::vec(-3i64..=3, 3), w in prop::collection::vec(-3i64..=3, 3)) {
        let v: Vec<Rational> = v.into_iter().map(q).collect();
        let w: Vec<Rational> = w.into_iter().map(q).collect();
        let a = Projection::onto(Subspace::span(3, std::slice::from_ref(&v)).unwrap());
        let b = Projection::onto(Subspace::span(3, &[v, w]).unwrap());
        prop_assert!(a.leq(&b));
        prop_assert_eq!(a.join(&b.meet(&a.ortho())), b.clone());
        prop_assert_eq!(a.ortho().ortho(), a.clone());
        prop_assert!(b.verify_idempotent());
        let m = b.matrix();
        prop_assert_eq!(m.mul(&m).unwrap(), m);
    }

    #[test]
    fn subspace_intersection_contains_exactly_common_vectors(
        a in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 0..3),
        b in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 0..3),
        probe in prop::collection::vec(-2i64..=2, 3),
    ) {
        let conv = |vs: Vec<Vec<i64>>| vs.into_iter().map(|v| v.into_iter().map(q).collect()).collect::<Vec<Vec<Rational>>>();
        let sa = Subspace::span(3, &conv(a)).unwrap();
        let sb = Subspace::span(3, &conv(b)).unwrap();
        let meet = sa.intersect(&sb);
        let p: Vec<Rational> = probe.into_iter().map(q).collect();
        prop_assert_eq!(meet.contains(&p), sa.contains(&p) && sb.contains(&p));
        prop_assert_eq!(meet.rank() + sa.sum(&sb).rank(), sa.rank() + sb.rank());
    }

    #[test]
    fn star_laws_on_random_mo3_pairs(i in 0usize..10_000, j in 0usize..10_000) {
        let d = Daseinisation::new(make_mo(3).unwrap()).unwrap();
        let p = d.presheaf();
        let subs = p.enumerate_subobjects().unwrap();
        let s = &subs[i % subs.len()];
        let t = &subs[j % subs.len()];
        prop_assert_eq!(p.join(s, &d.star(s)).unwrap(), p.top());
        prop_assert!(p.leq(&d.star(&d.star(s)), s).unwrap());
        let lhs = d.star(&p.meet(s, t).unwrap());
        prop_assert_eq!(lhs, p.join(&d.star(s), &d.star(t)).unwrap());
        let l = d.lattice();
        prop_assert!(p.leq(d.daseinise(d.epsilon(s)), s).unwrap());
        prop_assert!(l.leq(l.join(d.epsilon(s), d.epsilon(t)), d.epsilon(&p.join(s, t).unwrap())));
    }
}
