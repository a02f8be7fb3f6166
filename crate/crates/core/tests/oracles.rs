//! Brute-force oracles that recompute the core structures from the lattice
//! order alone and compare them with the library.

use qst_core::generated::generate_oml;
use qst_core::linalg::{Projection, Rational, Subspace};
use qst_core::presheaf::PointSet;
use qst_core::{
    enumerate_boolean_subalgebras, make_boolean, make_mo, Caps, ClopenSubobject, Daseinisation,
    Elem, OrthomodularLattice, SpectralPresheaf,
};

fn fixtures() -> Vec<(&'static str, OrthomodularLattice)> {
    let q = |n: i64| Rational::from_integer(n.into());
    let lines = [
        Projection::onto(Subspace::span(2, &[vec![q(1), q(0)]]).unwrap()),
        Projection::onto(Subspace::span(2, &[vec![q(1), q(1)]]).unwrap()),
    ];
    let gen = generate_oml(2, &lines, &Caps::default())
        .unwrap()
        .into_oml();
    vec![
        ("boolean:1", make_boolean(1).unwrap()),
        ("boolean:2", make_boolean(2).unwrap()),
        ("boolean:3", make_boolean(3).unwrap()),
        ("mo:2", make_mo(2).unwrap()),
        ("mo:3", make_mo(3).unwrap()),
        ("lines", gen),
    ]
}

/// Every subset closed under 0, 1, ⊥, ∧, ∨ on which ∧ distributes over ∨.
fn brute_subalgebras(l: &OrthomodularLattice) -> Vec<Vec<Elem>> {
    let elems: Vec<Elem> = l.elems().collect();
    let n = elems.len();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<Elem> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| elems[i])
            .collect();
        let has = |e: Elem| set.contains(&e);
        if !has(l.bottom()) || !has(l.top()) {
            continue;
        }
        let closed = set.iter().all(|&x| {
            has(l.ortho(x)) && set.iter().all(|&y| has(l.meet(x, y)) && has(l.join(x, y)))
        });
        let distributive = closed
            && set.iter().all(|&x| {
                set.iter().all(|&y| {
                    set.iter()
                        .all(|&z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)))
                })
            });
        if distributive {
            out.push(set);
        }
    }
    out
}

#[test]
fn subalgebra_enumeration_matches_brute_force() {
    for (name, l) in fixtures() {
        let mut want = brute_subalgebras(&l);
        let mut got: Vec<Vec<Elem>> = enumerate_boolean_subalgebras(&l)
            .unwrap()
            .members()
            .iter()
            .map(|b| b.carrier().to_vec())
            .collect();
        for v in want.iter_mut().chain(got.iter_mut()) {
            v.sort();
        }
        want.sort();
        got.sort();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn known_subalgebra_counts() {
    let count = |l: &OrthomodularLattice| enumerate_boolean_subalgebras(l).unwrap().len();
    assert_eq!(count(&make_mo(2).unwrap()), 3);
    assert_eq!(count(&make_mo(3).unwrap()), 4);
    assert_eq!(count(&make_boolean(3).unwrap()), 5);
}

/// Atom of each point, per fiber.
fn atoms(p: &SpectralPresheaf) -> Vec<Vec<Elem>> {
    p.fibers()
        .iter()
        .map(|f| f.points().iter().map(|pt| pt.atom).collect())
        .collect()
}

/// Restriction recomputed from the order: the point with atom `x` maps to
/// the unique atom of the smaller algebra above `x`.
fn brute_restrict(p: &SpectralPresheaf, big: usize, small: usize, set: PointSet) -> PointSet {
    let l = p.lattice();
    let a = atoms(p);
    let mut out = 0;
    for (i, &x) in a[big].iter().enumerate() {
        if set & (1 << i) != 0 {
            let hits: Vec<usize> = (0..a[small].len())
                .filter(|&j| l.leq(x, a[small][j]))
                .collect();
            assert_eq!(hits.len(), 1);
            out |= 1 << hits[0];
        }
    }
    out
}

/// All restriction-closed families of point sets.
fn brute_subobjects(p: &SpectralPresheaf) -> Vec<Vec<PointSet>> {
    let sizes = p.fiber_sizes();
    let total: usize = sizes.iter().sum();
    assert!(total <= 20);
    let base = p.base();
    let mut out = Vec::new();
    for mask in 0u64..(1 << total) {
        let mut parts = Vec::new();
        let mut shift = 0;
        for &s in &sizes {
            parts.push((mask >> shift) & ((1 << s) - 1));
            shift += s;
        }
        let closed = (0..sizes.len()).all(|big| {
            (0..sizes.len()).all(|small| {
                !base.leq(small, big)
                    || brute_restrict(p, big, small, parts[big]) & !parts[small] == 0
            })
        });
        if closed {
            out.push(parts);
        }
    }
    out
}

#[test]
fn subobject_enumeration_matches_brute_force() {
    for (name, l) in fixtures() {
        if name == "mo:3" || name == "boolean:3" {
            continue;
        }
        let p = SpectralPresheaf::new(l).unwrap();
        let mut want = brute_subobjects(&p);
        let mut got: Vec<Vec<PointSet>> = p
            .enumerate_subobjects()
            .unwrap()
            .iter()
            .map(|s| s.parts().to_vec())
            .collect();
        want.sort();
        got.sort();
        assert_eq!(got, want, "{name}");
    }
    let mo2 = SpectralPresheaf::new(make_mo(2).unwrap()).unwrap();
    assert_eq!(mo2.enumerate_subobjects().unwrap().len(), 17);
}

#[test]
fn restriction_matches_order_oracle() {
    for (name, l) in fixtures() {
        let p = SpectralPresheaf::new(l).unwrap();
        for big in 0..p.base().len() {
            for small in 0..p.base().len() {
                if !p.base().leq(small, big) {
                    continue;
                }
                for set in 0..(1u64 << p.fibers()[big].len()) {
                    assert_eq!(
                        p.restrict_set(big, small, set),
                        brute_restrict(&p, big, small, set),
                        "{name}"
                    );
                }
            }
        }
    }
}

fn leq(s: &ClopenSubobject, t: &ClopenSubobject) -> bool {
    s.parts().iter().zip(t.parts()).all(|(a, b)| a & !b == 0)
}

fn meet(p: &SpectralPresheaf, s: &ClopenSubobject, t: &ClopenSubobject) -> ClopenSubobject {
    p.subobject(
        s.parts()
            .iter()
            .zip(t.parts())
            .map(|(a, b)| a & b)
            .collect(),
    )
    .unwrap()
}

fn join(p: &SpectralPresheaf, s: &ClopenSubobject, t: &ClopenSubobject) -> ClopenSubobject {
    p.subobject(
        s.parts()
            .iter()
            .zip(t.parts())
            .map(|(a, b)| a | b)
            .collect(),
    )
    .unwrap()
}

#[test]
fn heyting_implication_is_the_largest_solution() {
    for (name, l) in fixtures() {
        if name == "mo:3" || name == "boolean:3" {
            continue;
        }
        let p = SpectralPresheaf::new(l).unwrap();
        let subs = p.enumerate_subobjects().unwrap();
        for s in &subs {
            for t in &subs {
                let want = subs
                    .iter()
                    .filter(|r| leq(&meet(&p, r, s), t))
                    .fold(p.bottom(), |acc, r| join(&p, &acc, r));
                assert!(leq(&meet(&p, &want, s), t));
                assert_eq!(p.heyting_implies(s, t).unwrap(), want, "{name}");
            }
        }
    }
}

#[test]
fn coheyting_subtraction_is_the_smallest_solution() {
    for (name, l) in fixtures() {
        if name == "mo:3" || name == "boolean:3" {
            continue;
        }
        let p = SpectralPresheaf::new(l).unwrap();
        let subs = p.enumerate_subobjects().unwrap();
        for s in &subs {
            for t in &subs {
                let want = subs
                    .iter()
                    .filter(|r| leq(t, &join(&p, s, r)))
                    .fold(p.top(), |acc, r| meet(&p, &acc, r));
                assert!(leq(t, &join(&p, s, &want)));
                assert_eq!(p.coheyting_minus(t, s).unwrap(), want, "{name}");
            }
        }
    }
}

/// At a context `B`, the atom `x` lies under the least element of `B`
/// above `a` exactly when `a ≰ x⊥`.
fn brute_delta(p: &SpectralPresheaf, a: Elem) -> Vec<PointSet> {
    let l = p.lattice();
    atoms(p)
        .iter()
        .map(|fiber| {
            fiber
                .iter()
                .enumerate()
                .filter(|(_, &x)| !l.leq(a, l.ortho(x)))
                .fold(0, |m, (i, _)| m | (1 << i))
        })
        .collect()
}

#[test]
fn daseinisation_matches_oracle() {
    for (name, l) in fixtures() {
        let d = Daseinisation::new(l.clone()).unwrap();
        for a in l.elems() {
            assert_eq!(
                d.daseinise(a).parts(),
                brute_delta(d.presheaf(), a).as_slice(),
                "{name} {a:?}"
            );
        }
    }
}

#[test]
fn epsilon_matches_oracle() {
    for (name, l) in fixtures() {
        if name == "mo:3" || name == "boolean:3" {
            continue;
        }
        let d = Daseinisation::new(l.clone()).unwrap();
        let p = d.presheaf();
        for s in p.enumerate_subobjects().unwrap() {
            let below: Vec<Elem> = l
                .elems()
                .filter(|&a| {
                    brute_delta(p, a)
                        .iter()
                        .zip(s.parts())
                        .all(|(x, y)| x & !y == 0)
                })
                .collect();
            let want = l.join_all(below.iter().copied());
            assert!(below.iter().all(|&a| l.leq(a, want)));
            assert_eq!(d.epsilon(&s), want, "{name}");
            let star = d.star(&s);
            assert_eq!(star.parts(), brute_delta(p, l.ortho(want)).as_slice());
        }
    }
}

#[test]
fn star_matches_heyting_negation_only_without_the_trivial_context() {
    let b2 = make_boolean(2).unwrap();
    let caps = Caps::default();
    let with = Daseinisation::from_presheaf(
        SpectralPresheaf::with_options(b2.clone(), &caps, true).unwrap(),
    );
    let without =
        Daseinisation::from_presheaf(SpectralPresheaf::with_options(b2, &caps, false).unwrap());
    let agrees = |d: &Daseinisation| {
        let p = d.presheaf();
        p.enumerate_subobjects()
            .unwrap()
            .iter()
            .all(|s| d.star(s) == p.heyting_not(s).unwrap())
    };
    assert!(agrees(&without));
    assert!(!agrees(&with));
}
