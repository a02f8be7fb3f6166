//! Outer daseinisation `δ`, its upper adjoint `ε`, the quotient lattice `E`,
//! the map `h`, and the star negation.

use alloc::vec::Vec;

use crate::caps::Caps;
use crate::lattice::{Elem, OrthomodularLattice};
use crate::presheaf::{stone_iso, ClopenSubobject, PresheafError, SpectralPresheaf};
use crate::subalgebra::BooleanSubalgebra;

/// The least element of `b` above `a`.
pub fn daseinise_at(l: &OrthomodularLattice, a: Elem, b: &BooleanSubalgebra) -> Elem {
    l.meet_all(b.carrier().iter().copied().filter(|&x| l.leq(a, x)))
}

/// A spectral presheaf together with the daseinisation of every element.
#[derive(Debug, Clone)]
pub struct Daseinisation {
    presheaf: SpectralPresheaf,
    delta: Vec<ClopenSubobject>,
}

impl Daseinisation {
    pub fn new(oml: OrthomodularLattice) -> Result<Self, PresheafError> {
        Self::with_caps(oml, &Caps::default())
    }

    pub fn with_caps(oml: OrthomodularLattice, caps: &Caps) -> Result<Self, PresheafError> {
        Ok(Self::from_presheaf(SpectralPresheaf::with_caps(oml, caps)?))
    }

    pub fn from_presheaf(presheaf: SpectralPresheaf) -> Self {
        let l = presheaf.lattice();
        let delta = l
            .elems()
            .map(|a| {
                let parts = presheaf
                    .base()
                    .members()
                    .iter()
                    .map(|b| {
                        stone_iso(l, b, daseinise_at(l, a, b))
                            .expect("daseinisation lands in the subalgebra")
                    })
                    .collect();
                presheaf.wrap(parts)
            })
            .collect();
        Daseinisation { presheaf, delta }
    }

    pub fn presheaf(&self) -> &SpectralPresheaf {
        &self.presheaf
    }

    pub fn lattice(&self) -> &OrthomodularLattice {
        self.presheaf.lattice()
    }

    /// `δ(a)`: at each context `B`, the points sending `daseinise_at(a, B)`
    /// to 1.
    pub fn daseinise(&self, a: Elem) -> &ClopenSubobject {
        &self.delta[a.index()]
    }

    /// `ε(S) = ⋁{a | δ(a) ≤ S}`.
    pub fn epsilon(&self, s: &ClopenSubobject) -> Elem {
        let l = self.lattice();
        l.join_all(
            l.elems()
                .filter(|&a| self.presheaf.leq_unchecked(&self.delta[a.index()], s)),
        )
    }

    /// `S* = δ(ε(S)⊥)`.
    pub fn star(&self, s: &ClopenSubobject) -> ClopenSubobject {
        let l = self.lattice();
        self.delta[l.ortho(self.epsilon(s)).index()].clone()
    }

    /// `S ⇒ T = S* ∨ T`.
    pub fn star_implies(&self, s: &ClopenSubobject, t: &ClopenSubobject) -> ClopenSubobject {
        self.presheaf.join_unchecked(&self.star(s), t)
    }

    /// The class of `S` in `E`.
    pub fn class_of(&self, s: &ClopenSubobject) -> EpsilonClass {
        EpsilonClass(self.epsilon(s))
    }

    /// `f(a) = [δ(a)]`.
    pub fn iso_f(&self, a: Elem) -> EpsilonClass {
        self.class_of(&self.delta[a.index()])
    }

    /// `g([S]) = ε(S)`.
    pub fn iso_g(&self, c: EpsilonClass) -> Elem {
        c.0
    }

    /// The canonical representative `δ(ε(S))` of a class. This is also the
    /// map `h : E → Sub_cl`.
    pub fn map_h(&self, c: EpsilonClass) -> &ClopenSubobject {
        &self.delta[c.0.index()]
    }

    /// `[S]* = [S*]`.
    pub fn class_star(&self, c: EpsilonClass) -> EpsilonClass {
        self.class_of(&self.star(self.map_h(c)))
    }

    /// Builds `E` from `L` via `f`, one class per lattice element.
    pub fn e_quotient(&self) -> EQuotient {
        EQuotient::build(self)
    }
}

/// An `ε`-equivalence class, identified by the common value of `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsilonClass(pub Elem);

impl EpsilonClass {
    pub fn epsilon_value(self) -> Elem {
        self.0
    }
}

/// The lattice `E` of `ε`-classes.
///
/// Meets are computed on representatives, the order is `c ≤ d` iff
/// `c ∧ d = c`, and the join of `c, d` is the meet of all common upper
/// bounds. None of these tables consults the order of `L` directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EQuotient {
    classes: Vec<EpsilonClass>,
    meet: Vec<EpsilonClass>,
    join: Vec<EpsilonClass>,
}

impl EQuotient {
    fn build(d: &Daseinisation) -> Self {
        let p = d.presheaf();
        let classes: Vec<EpsilonClass> = d.lattice().elems().map(|a| d.iso_f(a)).collect();
        let n = classes.len();
        let mut meet = Vec::with_capacity(n * n);
        for &c in &classes {
            for &e in &classes {
                meet.push(d.class_of(&p.meet_unchecked(d.map_h(c), d.map_h(e))));
            }
        }
        let idx = |c: EpsilonClass| c.0.index();
        let leq = |c: EpsilonClass, e: EpsilonClass| meet[idx(c) * n + idx(e)] == c;
        let mut join = Vec::with_capacity(n * n);
        for &c in &classes {
            for &e in &classes {
                let mut acc = p.top();
                for &u in &classes {
                    if leq(c, u) && leq(e, u) {
                        acc = p.meet_unchecked(&acc, d.map_h(u));
                    }
                }
                join.push(d.class_of(&acc));
            }
        }
        EQuotient {
            classes,
            meet,
            join,
        }
    }

    pub fn classes(&self) -> &[EpsilonClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn meet(&self, c: EpsilonClass, e: EpsilonClass) -> EpsilonClass {
        self.meet[c.0.index() * self.classes.len() + e.0.index()]
    }

    pub fn join(&self, c: EpsilonClass, e: EpsilonClass) -> EpsilonClass {
        self.join[c.0.index() * self.classes.len() + e.0.index()]
    }

    pub fn leq(&self, c: EpsilonClass, e: EpsilonClass) -> bool {
        self.meet(c, e) == c
    }

    /// The join obtained by transporting through `g` and `f`:
    /// `f(g(c) ∨ g(e))`. Used to cross-check [`EQuotient::join`].
    pub fn join_via_transport(
        &self,
        d: &Daseinisation,
        c: EpsilonClass,
        e: EpsilonClass,
    ) -> EpsilonClass {
        d.iso_f(d.lattice().join(d.iso_g(c), d.iso_g(e)))
    }
}

/// Result of grouping an enumeration of subobjects by `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub subobjects: usize,
    /// Number of subobjects in each class, indexed by `ε` value.
    pub class_sizes: Vec<usize>,
}

impl Partition {
    pub fn nonempty_classes(&self) -> usize {
        self.class_sizes.iter().filter(|&&c| c > 0).count()
    }
}

/// Groups subobjects by their `ε` value.
pub fn partition_by_epsilon(d: &Daseinisation, subobjects: &[ClopenSubobject]) -> Partition {
    let mut class_sizes = alloc::vec![0; d.lattice().len()];
    for s in subobjects {
        class_sizes[d.epsilon(s).index()] += 1;
    }
    Partition {
        subobjects: subobjects.len(),
        class_sizes,
    }
}

/// Every enumerated `S` with `ε(S) = 1`. A singleton `{⊤}` is expected.
pub fn top_class_members(
    d: &Daseinisation,
    subobjects: &[ClopenSubobject],
) -> Vec<ClopenSubobject> {
    let top = d.lattice().top();
    subobjects
        .iter()
        .filter(|s| d.epsilon(s) == top)
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_boolean, make_mo};

    fn mo2() -> Daseinisation {
        Daseinisation::new(make_mo(2).unwrap()).unwrap()
    }

    #[test]
    fn daseinise_at_examples() {
        let d = mo2();
        let l = d.lattice();
        let a = l.elem("a").unwrap();
        let base = d.presheaf().base();
        assert_eq!(daseinise_at(l, a, base.get(1)), a);
        assert_eq!(daseinise_at(l, a, base.get(2)), l.top());
        assert_eq!(daseinise_at(l, a, base.get(0)), l.top());
        for b in base.members() {
            assert_eq!(daseinise_at(l, l.bottom(), b), l.bottom());
        }
    }

    #[test]
    fn daseinisation_of_atom_in_mo2() {
        let d = mo2();
        let p = d.presheaf();
        let l = d.lattice();
        let a = l.elem("a").unwrap();
        // ({μ}, {λ_a}, {λ_b, λ_b'})
        assert_eq!(d.daseinise(a).parts(), [0b1, 0b01, 0b11]);
        assert_eq!(d.daseinise(l.top()), &p.top());
        assert_eq!(d.daseinise(l.bottom()), &p.bottom());
        let b = l.elem("b").unwrap();
        assert_eq!(
            d.daseinise(l.join(a, b)),
            &p.join(d.daseinise(a), d.daseinise(b)).unwrap()
        );
    }

    #[test]
    fn meet_of_two_daseinisations() {
        let d = mo2();
        let l = d.lattice();
        let (a, b) = (l.elem("a").unwrap(), l.elem("b").unwrap());
        let m = d.presheaf().meet(d.daseinise(a), d.daseinise(b)).unwrap();
        assert_eq!(m.parts(), [0b1, 0b01, 0b01]);
        assert_eq!(d.epsilon(&m), l.bottom());
    }

    #[test]
    fn epsilon_inverts_delta() {
        let d = mo2();
        for a in d.lattice().elems() {
            assert_eq!(d.epsilon(d.daseinise(a)), a);
        }
        assert_eq!(d.epsilon(&d.presheaf().bottom()), d.lattice().bottom());
    }

    #[test]
    fn star_examples() {
        let d = mo2();
        let p = d.presheaf();
        let l = d.lattice();
        let a = l.elem("a").unwrap();
        let da = d.daseinise(a);
        assert_eq!(&d.star(da), d.daseinise(l.ortho(a)));
        assert_eq!(p.join(da, &d.star(da)).unwrap(), p.top());
        let both = p.meet(da, &d.star(da)).unwrap();
        // full at B0 and B_b, empty at B_a
        assert_eq!(both.parts(), [0b1, 0b00, 0b11]);
    }

    #[test]
    fn heyting_negation_of_atom_is_bottom() {
        let d = mo2();
        let p = d.presheaf();
        let a = d.lattice().elem("a").unwrap();
        let n = p.heyting_not(d.daseinise(a)).unwrap();
        assert_eq!(n, p.bottom());
        assert_ne!(p.join(d.daseinise(a), &n).unwrap(), p.top());
    }

    #[test]
    fn quotient_of_mo2() {
        let d = mo2();
        let e = d.e_quotient();
        assert_eq!(e.len(), 6);
        let all = d.presheaf().enumerate_subobjects().unwrap();
        let part = partition_by_epsilon(&d, &all);
        assert_eq!(part.subobjects, 17);
        assert_eq!(part.nonempty_classes(), 6);
        for &c in e.classes() {
            for &k in e.classes() {
                assert_eq!(e.join(c, k), e.join_via_transport(&d, c, k));
            }
        }
    }

    #[test]
    fn class_lem_fails_for_coheyting_negation() {
        let d = mo2();
        let p = d.presheaf();
        let e = d.e_quotient();
        let s = p.subobject(alloc::vec![0b1, 0b01, 0b01]).unwrap();
        let ns = p.coheyting_not(&s).unwrap();
        let j = e.join(d.class_of(&s), d.class_of(&ns));
        assert_eq!(j, EpsilonClass(d.lattice().bottom()));
        assert_ne!(j, d.class_of(&p.top()));
    }

    #[test]
    fn top_class_is_singleton() {
        for l in [make_mo(2).unwrap(), make_boolean(3).unwrap()] {
            let d = Daseinisation::new(l).unwrap();
            let all = d.presheaf().enumerate_subobjects().unwrap();
            assert_eq!(top_class_members(&d, &all), [d.presheaf().top()]);
        }
    }
}
