//! Stone spaces, the spectral presheaf over B(L), and its algebra of clopen
//! subobjects.
//!
//! A Stone point of a finite Boolean algebra is a homomorphism into `{0,1}`,
//! which is the same thing as an atom `p` (the homomorphism sends `x` to 1
//! iff `p ≤ x`). Points of a fiber are numbered by the increasing id order of
//! the atoms, so a subset of a fiber is a `u64` bitmask.
//!
//! Finite Stone spaces are discrete: every subset is clopen. Clopenness is
//! therefore a predicate that always holds ([`SpectralPresheaf::is_clopen`])
//! rather than a separate check.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::caps::{check_cap, CapExceeded, Caps};
use crate::lattice::{Elem, Fnv, OrthomodularLattice};
use crate::subalgebra::{
    enumerate_boolean_subalgebras_with_caps, BooleanSubalgebra, SubalgebraPoset,
};

/// Subset of the points of one fiber.
pub type PointSet = u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresheafError {
    #[error("subobjects belong to different presheaves")]
    ParentMismatch,
    #[error("element `{0}` is not in the subalgebra")]
    ElementNotInSubalgebra(String),
    #[error("point set is not a clopen subset of this Stone space")]
    NotASubsetOfPoints,
    #[error("family of parts is not closed under restriction")]
    NotRestrictionClosed,
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
}

/// A point of a Stone space: the homomorphism `x ↦ [atom ≤ x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StonePoint {
    pub atom: Elem,
}

impl StonePoint {
    /// The value of the homomorphism at `x`.
    pub fn value(&self, l: &OrthomodularLattice, x: Elem) -> bool {
        l.leq(self.atom, x)
    }
}

/// The Stone space of a finite Boolean subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneSpace {
    points: Vec<StonePoint>,
}

impl StoneSpace {
    pub fn points(&self) -> &[StonePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn full(&self) -> PointSet {
        full_mask(self.points.len())
    }
}

#[inline]
fn full_mask(k: usize) -> PointSet {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// The Stone space of `b`: one point per atom, in atom order.
pub fn stone_space(b: &BooleanSubalgebra) -> StoneSpace {
    StoneSpace {
        points: b.atoms().iter().map(|&atom| StonePoint { atom }).collect(),
    }
}

/// `φ(x) = {λ | λ(x) = 1}` as a point set.
pub fn stone_iso(
    l: &OrthomodularLattice,
    b: &BooleanSubalgebra,
    x: Elem,
) -> Result<PointSet, PresheafError> {
    if !b.contains(x) {
        return Err(PresheafError::ElementNotInSubalgebra(l.name(x).into()));
    }
    Ok(b.atoms()
        .iter()
        .enumerate()
        .filter(|(_, &a)| l.leq(a, x))
        .fold(0, |m, (i, _)| m | (1 << i)))
}

/// Inverse of [`stone_iso`]: the join of the atoms in `points`.
pub fn stone_iso_inv(
    l: &OrthomodularLattice,
    b: &BooleanSubalgebra,
    points: PointSet,
) -> Result<Elem, PresheafError> {
    if points & !full_mask(b.atoms().len()) != 0 {
        return Err(PresheafError::NotASubsetOfPoints);
    }
    Ok(l.join_all(
        b.atoms()
            .iter()
            .enumerate()
            .filter(|(i, _)| points & (1 << i) != 0)
            .map(|(_, &a)| a),
    ))
}

/// A clopen subobject: one point set per fiber, closed under restriction.
///
/// Ordering is lexicographic on the parts, which is also the order
/// [`SpectralPresheaf::enumerate_subobjects`] produces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClopenSubobject {
    parent: u64,
    parts: Vec<PointSet>,
}

impl ClopenSubobject {
    pub fn parts(&self) -> &[PointSet] {
        &self.parts
    }

    pub fn part(&self, fiber: usize) -> PointSet {
        self.parts[fiber]
    }

    /// Fingerprint of the presheaf this subobject belongs to.
    pub fn parent(&self) -> u64 {
        self.parent
    }
}

/// The spectral presheaf of a finite orthomodular lattice.
#[derive(Debug, Clone)]
pub struct SpectralPresheaf {
    oml: OrthomodularLattice,
    base: SubalgebraPoset,
    fibers: Vec<StoneSpace>,
    /// Restriction maps, keyed by `(larger, smaller)`. Entry `i` of the
    /// vector is the index of the image of point `i`.
    restrictions: BTreeMap<(usize, usize), Vec<u8>>,
    /// For each fiber, the fibers below it (including itself).
    below: Vec<Vec<usize>>,
    fingerprint: u64,
}

impl SpectralPresheaf {
    pub fn new(oml: OrthomodularLattice) -> Result<Self, PresheafError> {
        Self::with_caps(oml, &Caps::default())
    }

    pub fn with_caps(oml: OrthomodularLattice, caps: &Caps) -> Result<Self, PresheafError> {
        Self::with_options(oml, caps, true)
    }

    /// With `include_trivial = false` the context `{0, 1}` is left out of
    /// the base whenever the lattice has any other Boolean subalgebra.
    pub fn with_options(
        oml: OrthomodularLattice,
        caps: &Caps,
        include_trivial: bool,
    ) -> Result<Self, PresheafError> {
        let mut base = enumerate_boolean_subalgebras_with_caps(&oml, caps)?;
        if !include_trivial {
            base = base.without_trivial();
        }
        let fibers: Vec<StoneSpace> = base.members().iter().map(stone_space).collect();
        let m = base.len();
        let mut restrictions = BTreeMap::new();
        let mut below = vec![Vec::new(); m];
        for (big, below_big) in below.iter_mut().enumerate() {
            for small in 0..m {
                if !base.leq(small, big) {
                    continue;
                }
                below_big.push(small);
                let small_atoms = base.get(small).atoms();
                let map = fibers[big]
                    .points
                    .iter()
                    .map(|p| {
                        small_atoms
                            .iter()
                            .position(|&a| oml.leq(p.atom, a))
                            .expect("every atom lies below exactly one atom of a subalgebra")
                            as u8
                    })
                    .collect();
                restrictions.insert((big, small), map);
            }
        }
        let mut h = Fnv::with_seed(oml.fingerprint());
        h.write_usize(m);
        let fingerprint = h.finish();
        Ok(SpectralPresheaf {
            oml,
            base,
            fibers,
            restrictions,
            below,
            fingerprint,
        })
    }

    pub fn lattice(&self) -> &OrthomodularLattice {
        &self.oml
    }

    pub fn base(&self) -> &SubalgebraPoset {
        &self.base
    }

    pub fn fibers(&self) -> &[StoneSpace] {
        &self.fibers
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(StoneSpace::len).collect()
    }

    /// Fibers below `fiber`, itself included.
    pub fn below(&self, fiber: usize) -> &[usize] {
        &self.below[fiber]
    }

    /// Image of point `point` of fiber `big` in fiber `small`, which must be
    /// a subalgebra of `big`.
    pub fn restrict_point(&self, big: usize, small: usize, point: usize) -> usize {
        self.restrictions[&(big, small)][point] as usize
    }

    /// Image of a point set under restriction.
    pub fn restrict_set(&self, big: usize, small: usize, points: PointSet) -> PointSet {
        let map = &self.restrictions[&(big, small)];
        map.iter()
            .enumerate()
            .filter(|(i, _)| points & (1 << i) != 0)
            .fold(0, |m, (_, &j)| m | (1 << j))
    }

    /// Every subset of a finite Stone space is clopen.
    pub fn is_clopen(&self, fiber: usize, points: PointSet) -> bool {
        points & !self.fibers[fiber].full() == 0
    }

    /// Checks that restriction is functorial: identities restrict to
    /// identities and restriction along a chain composes.
    pub fn check_functoriality(&self) -> bool {
        let m = self.base.len();
        for b in 0..m {
            let id = &self.restrictions[&(b, b)];
            if id.iter().enumerate().any(|(i, &j)| i != j as usize) {
                return false;
            }
        }
        for b in 0..m {
            for &b1 in &self.below[b] {
                for &b2 in &self.below[b1] {
                    for p in 0..self.fibers[b].len() {
                        let via = self.restrict_point(b1, b2, self.restrict_point(b, b1, p));
                        if via != self.restrict_point(b, b2, p) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Wraps a family of parts, checking that it is restriction-closed.
    pub fn subobject(&self, parts: Vec<PointSet>) -> Result<ClopenSubobject, PresheafError> {
        if parts.len() != self.fibers.len() {
            return Err(PresheafError::ParentMismatch);
        }
        for (i, &p) in parts.iter().enumerate() {
            if !self.is_clopen(i, p) {
                return Err(PresheafError::NotASubsetOfPoints);
            }
        }
        let s = ClopenSubobject {
            parent: self.fingerprint,
            parts,
        };
        if !self.is_restriction_closed(&s) {
            return Err(PresheafError::NotRestrictionClosed);
        }
        Ok(s)
    }

    pub(crate) fn wrap(&self, parts: Vec<PointSet>) -> ClopenSubobject {
        debug_assert_eq!(parts.len(), self.fibers.len());
        ClopenSubobject {
            parent: self.fingerprint,
            parts,
        }
    }

    pub fn is_restriction_closed(&self, s: &ClopenSubobject) -> bool {
        (0..self.fibers.len()).all(|b| {
            self.below[b]
                .iter()
                .all(|&small| self.restrict_set(b, small, s.parts[b]) & !s.parts[small] == 0)
        })
    }

    fn owns(&self, s: &ClopenSubobject) -> Result<(), PresheafError> {
        if s.parent == self.fingerprint && s.parts.len() == self.fibers.len() {
            Ok(())
        } else {
            Err(PresheafError::ParentMismatch)
        }
    }

    pub fn top(&self) -> ClopenSubobject {
        self.wrap(self.fibers.iter().map(StoneSpace::full).collect())
    }

    pub fn bottom(&self) -> ClopenSubobject {
        self.wrap(vec![0; self.fibers.len()])
    }

    pub fn leq(&self, s: &ClopenSubobject, t: &ClopenSubobject) -> Result<bool, PresheafError> {
        self.owns(s)?;
        self.owns(t)?;
        Ok(self.leq_unchecked(s, t))
    }

    pub(crate) fn leq_unchecked(&self, s: &ClopenSubobject, t: &ClopenSubobject) -> bool {
        s.parts.iter().zip(&t.parts).all(|(a, b)| a & !b == 0)
    }

    pub fn meet(
        &self,
        s: &ClopenSubobject,
        t: &ClopenSubobject,
    ) -> Result<ClopenSubobject, PresheafError> {
        self.owns(s)?;
        self.owns(t)?;
        Ok(self.meet_unchecked(s, t))
    }

    pub(crate) fn meet_unchecked(
        &self,
        s: &ClopenSubobject,
        t: &ClopenSubobject,
    ) -> ClopenSubobject {
        self.wrap(s.parts.iter().zip(&t.parts).map(|(a, b)| a & b).collect())
    }

    pub fn join(
        &self,
        s: &ClopenSubobject,
        t: &ClopenSubobject,
    ) -> Result<ClopenSubobject, PresheafError> {
        self.owns(s)?;
        self.owns(t)?;
        Ok(self.join_unchecked(s, t))
    }

    pub(crate) fn join_unchecked(
        &self,
        s: &ClopenSubobject,
        t: &ClopenSubobject,
    ) -> ClopenSubobject {
        self.wrap(s.parts.iter().zip(&t.parts).map(|(a, b)| a | b).collect())
    }

    /// n-ary meet; the empty meet is ⊤.
    pub fn meet_all<'a, I>(&self, items: I) -> Result<ClopenSubobject, PresheafError>
    where
        I: IntoIterator<Item = &'a ClopenSubobject>,
    {
        items
            .into_iter()
            .try_fold(self.top(), |acc, s| self.meet(&acc, s))
    }

    /// n-ary join; the empty join is ⊥.
    pub fn join_all<'a, I>(&self, items: I) -> Result<ClopenSubobject, PresheafError>
    where
        I: IntoIterator<Item = &'a ClopenSubobject>,
    {
        items
            .into_iter()
            .try_fold(self.bottom(), |acc, s| self.join(&acc, s))
    }

    /// Heyting implication: `λ ∈ (S ⇒ T)_B` iff every restriction of `λ` to a
    /// subalgebra of `B` that lands in `S` also lands in `T`.
    pub fn heyting_implies(
        &self,
        s: &ClopenSubobject,
        t: &ClopenSubobject,
    ) -> Result<ClopenSubobject, PresheafError> {
        self.owns(s)?;
        self.owns(t)?;
        Ok(self.heyting_implies_unchecked(s, t))
    }

    pub(crate) fn heyting_implies_unchecked(
        &self,
        s: &ClopenSubobject,
        t: &ClopenSubobject,
    ) -> ClopenSubobject {
        let parts = (0..self.fibers.len())
            .map(|b| {
                let mut keep = 0;
                for p in 0..self.fibers[b].len() {
                    let ok = self.below[b].iter().all(|&small| {
                        let q = self.restrict_point(b, small, p);
                        s.parts[small] & (1 << q) == 0 || t.parts[small] & (1 << q) != 0
                    });
                    if ok {
                        keep |= 1 << p;
                    }
                }
                keep
            })
            .collect();
        self.wrap(parts)
    }

    /// Heyting negation `¬S = S ⇒ ⊥`.
    pub fn heyting_not(&self, s: &ClopenSubobject) -> Result<ClopenSubobject, PresheafError> {
        self.heyting_implies(s, &self.bottom())
    }

    /// Co-Heyting subtraction: the smallest subobject `R` with `T ≤ S ∨ R`.
    ///
    /// Starts from the fiberwise difference `T_B ∖ S_B` and closes it under
    /// restriction.
    pub fn coheyting_minus(
        &self,
        t: &ClopenSubobject,
        s: &ClopenSubobject,
    ) -> Result<ClopenSubobject, PresheafError> {
        self.owns(s)?;
        self.owns(t)?;
        Ok(self.coheyting_minus_unchecked(t, s))
    }

    pub(crate) fn coheyting_minus_unchecked(
        &self,
        t: &ClopenSubobject,
        s: &ClopenSubobject,
    ) -> ClopenSubobject {
        let diff: Vec<PointSet> = t.parts.iter().zip(&s.parts).map(|(a, b)| a & !b).collect();
        let mut parts = diff.clone();
        for (big, &d) in diff.iter().enumerate() {
            for &small in &self.below[big] {
                parts[small] |= self.restrict_set(big, small, d);
            }
        }
        self.wrap(parts)
    }

    /// Co-Heyting (paraconsistent) negation `~S = ⊤ ∖ S`.
    pub fn coheyting_not(&self, s: &ClopenSubobject) -> Result<ClopenSubobject, PresheafError> {
        self.coheyting_minus(&self.top(), s)
    }

    /// Total number of Stone points, i.e. `log2` of the number of raw part
    /// families.
    pub fn total_points(&self) -> usize {
        self.fibers.iter().map(StoneSpace::len).sum()
    }

    pub fn enumerate_subobjects(&self) -> Result<Vec<ClopenSubobject>, PresheafError> {
        self.enumerate_subobjects_with_caps(&Caps::default())
    }

    /// All clopen subobjects in lexicographic order of their parts.
    ///
    /// Fibers are ordered by carrier size, so every proper subalgebra of a
    /// fiber has already been assigned when the fiber is reached and the
    /// admissible points of the fiber are known.
    pub fn enumerate_subobjects_with_caps(
        &self,
        caps: &Caps,
    ) -> Result<Vec<ClopenSubobject>, PresheafError> {
        check_cap("subobject bits", caps.subobject_bits, self.total_points())?;
        let mut out = Vec::new();
        let mut parts = vec![0; self.fibers.len()];
        self.extend_subobjects(0, &mut parts, &mut out);
        Ok(out)
    }

    fn extend_subobjects(
        &self,
        fiber: usize,
        parts: &mut Vec<PointSet>,
        out: &mut Vec<ClopenSubobject>,
    ) {
        if fiber == self.fibers.len() {
            out.push(self.wrap(parts.clone()));
            return;
        }
        let mut allowed = 0;
        for p in 0..self.fibers[fiber].len() {
            let ok = self.below[fiber]
                .iter()
                .filter(|&&small| small != fiber)
                .all(|&small| parts[small] & (1 << self.restrict_point(fiber, small, p)) != 0);
            if ok {
                allowed |= 1 << p;
            }
        }
        // submasks of `allowed` in increasing order
        let mut sub: PointSet = 0;
        loop {
            parts[fiber] = sub;
            self.extend_subobjects(fiber + 1, parts, out);
            if sub == allowed {
                break;
            }
            sub = (sub.wrapping_sub(allowed)) & allowed;
        }
        parts[fiber] = 0;
    }

    /// Human-readable rendering, e.g. `({λ[1]}, {λ[a]}, {λ[b]})`.
    pub fn describe(&self, s: &ClopenSubobject) -> String {
        let mut out = String::from("(");
        for (i, (fiber, &part)) in self.fibers.iter().zip(&s.parts).enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('{');
            let mut first = true;
            for (j, p) in fiber.points.iter().enumerate() {
                if part & (1 << j) != 0 {
                    if !first {
                        out.push(',');
                    }
                    first = false;
                    let _ = write!(out, "λ[{}]", self.oml.name(p.atom));
                }
            }
            out.push('}');
        }
        out.push(')');
        out
    }

    /// Short hexadecimal encoding, one mask per fiber.
    pub fn encode(&self, s: &ClopenSubobject) -> String {
        let mut out = String::new();
        for (i, part) in s.parts.iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            out.push_str(&format!("{part:x}"));
        }
        out
    }

    /// Parses the output of [`SpectralPresheaf::encode`].
    pub fn decode(&self, text: &str) -> Result<ClopenSubobject, PresheafError> {
        let parts = text
            .split('.')
            .map(|p| u64::from_str_radix(p, 16).map_err(|_| PresheafError::NotASubsetOfPoints))
            .collect::<Result<Vec<_>, _>>()?;
        self.subobject(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_boolean, make_mo};

    fn mo2() -> SpectralPresheaf {
        SpectralPresheaf::new(make_mo(2).unwrap()).unwrap()
    }

    #[test]
    fn stone_spaces_have_one_point_per_atom() {
        let p = mo2();
        assert_eq!(p.fiber_sizes(), [1, 2, 2]);
        let b8 = SpectralPresheaf::new(make_boolean(3).unwrap()).unwrap();
        let last = b8.base().len() - 1;
        assert_eq!(b8.fibers()[last].len(), 3);
        assert_eq!(b8.fibers()[0].len(), 1);
    }

    #[test]
    fn stone_iso_in_mo2() {
        let p = mo2();
        let l = p.lattice();
        let ba = p.base().get(1);
        let a = l.elem("a").unwrap();
        let ac = l.elem("a'").unwrap();
        assert_eq!(stone_iso(l, ba, l.top()).unwrap(), 0b11);
        assert_eq!(stone_iso(l, ba, l.bottom()).unwrap(), 0);
        assert_eq!(stone_iso(l, ba, a).unwrap(), 0b01);
        assert_eq!(stone_iso(l, ba, ac).unwrap(), 0b10);
        assert_eq!(stone_iso_inv(l, ba, 0b01).unwrap(), a);
        let b = l.elem("b").unwrap();
        assert_eq!(
            stone_iso(l, ba, b),
            Err(PresheafError::ElementNotInSubalgebra("b".into()))
        );
    }

    #[test]
    fn restrictions_collapse_onto_trivial_fiber() {
        let p = mo2();
        for big in [1, 2] {
            assert_eq!(p.restrict_point(big, 0, 0), 0);
            assert_eq!(p.restrict_point(big, 0, 1), 0);
        }
        assert!(p.check_functoriality());
    }

    #[test]
    fn mo2_has_seventeen_subobjects() {
        let p = mo2();
        let all = p.enumerate_subobjects().unwrap();
        assert_eq!(all.len(), 17);
        assert_eq!(all[0], p.bottom());
        assert_eq!(*all.last().unwrap(), p.top());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(p.join_all(&all).unwrap(), p.top());
    }

    #[test]
    fn subobject_counts_of_small_boolean_algebras() {
        let p = SpectralPresheaf::new(make_boolean(1).unwrap()).unwrap();
        assert_eq!(p.enumerate_subobjects().unwrap().len(), 2);
        let p = SpectralPresheaf::new(make_boolean(2).unwrap()).unwrap();
        assert_eq!(p.enumerate_subobjects().unwrap().len(), 5);
    }

    #[test]
    fn coheyting_negation_example() {
        let p = mo2();
        // ({μ}, {λ_a}, {λ_b})
        let s = p.subobject(vec![0b1, 0b01, 0b01]).unwrap();
        let ns = p.coheyting_not(&s).unwrap();
        assert_eq!(ns.parts(), [0b1, 0b10, 0b10]);
        assert_eq!(p.join(&ns, &s).unwrap(), p.top());
        assert_eq!(p.meet(&ns, &s).unwrap().parts(), [0b1, 0, 0]);
    }

    #[test]
    fn closure_is_enforced() {
        let p = mo2();
        assert_eq!(
            p.subobject(vec![0, 0b01, 0]),
            Err(PresheafError::NotRestrictionClosed)
        );
        assert_eq!(
            p.subobject(vec![0, 0b100, 0]),
            Err(PresheafError::NotASubsetOfPoints)
        );
    }

    #[test]
    fn parent_mismatch_is_detected() {
        let p = mo2();
        let q = SpectralPresheaf::new(make_mo(3).unwrap()).unwrap();
        assert_eq!(
            p.meet(&p.top(), &q.top()),
            Err(PresheafError::ParentMismatch)
        );
        assert_eq!(p.heyting_not(&q.top()), Err(PresheafError::ParentMismatch));
    }

    #[test]
    fn encode_round_trip() {
        let p = mo2();
        for s in p.enumerate_subobjects().unwrap() {
            assert_eq!(p.decode(&p.encode(&s)).unwrap(), s);
        }
        assert_eq!(p.describe(&p.top()), "({λ[1]}, {λ[a],λ[a']}, {λ[b],λ[b']})");
    }

    #[test]
    fn subobject_cap() {
        let p = mo2();
        let caps = Caps {
            subobject_bits: 4,
            ..Caps::default()
        };
        assert!(matches!(
            p.enumerate_subobjects_with_caps(&caps),
            Err(PresheafError::SizeCapExceeded(_))
        ));
    }
}
