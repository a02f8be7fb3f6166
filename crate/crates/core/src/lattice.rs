//! Finite bounded lattices and orthomodular lattices.
//!
//! Elements are opaque ids; all structure lives in explicit meet/join tables,
//! so the same machinery serves hand-written lattices and projection lattices.
//! The order is recovered from the meet table (`a <= b` iff `a ∧ b = a`).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::caps::{check_cap, CapExceeded, Caps};

/// Index of an element inside its lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Which bound was missing when a poset failed to be a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => f.write_str("greatest lower bound"),
            BoundKind::Join => f.write_str("least upper bound"),
        }
    }
}

/// The orthocomplement laws, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthoLaw {
    /// `a ∧ a⊥ = 0`
    NonContradiction,
    /// `a ∨ a⊥ = 1`
    ExcludedMiddle,
    /// `a ≤ b ⟹ b⊥ ≤ a⊥`
    Antitone,
    /// `a⊥⊥ = a`
    Involution,
    /// `(a ∧ b)⊥ = a⊥ ∨ b⊥`
    DeMorganMeet,
    /// `(a ∨ b)⊥ = a⊥ ∧ b⊥`
    DeMorganJoin,
}

impl fmt::Display for OrthoLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrthoLaw::NonContradiction => "a ∧ a⊥ = 0",
            OrthoLaw::ExcludedMiddle => "a ∨ a⊥ = 1",
            OrthoLaw::Antitone => "a ≤ b ⟹ b⊥ ≤ a⊥",
            OrthoLaw::Involution => "a⊥⊥ = a",
            OrthoLaw::DeMorganMeet => "(a ∧ b)⊥ = a⊥ ∨ b⊥",
            OrthoLaw::DeMorganJoin => "(a ∨ b)⊥ = a⊥ ∧ b⊥",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("lattice needs at least two elements")]
    Degenerate,
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element id `{0}`")]
    UnknownElement(String),
    #[error("not a poset: `{0}` ≤ `{1}` and `{1}` ≤ `{0}`")]
    NotAPoset(String, String),
    #[error("not a lattice: `{a}` and `{b}` have no {kind}")]
    NotALattice {
        a: String,
        b: String,
        kind: BoundKind,
    },
    #[error("no orthocomplement given for `{0}`")]
    MissingOrthocomplement(String),
    #[error("conflicting orthocomplements for `{0}`")]
    ConflictingOrthocomplement(String),
    #[error("orthocomplement law {law} fails at {witness}")]
    OrthoLawViolation { law: OrthoLaw, witness: String },
    #[error("not orthomodular: `{a}` ≤ `{b}` but `{b}` ≠ `{a}` ∨ (`{b}` ∧ `{a}`⊥)")]
    NotOrthomodular { a: String, b: String },
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
}

/// A lattice as it appears in an input file: ids, order pairs and
/// (optionally) orthocomplement pairs. The order may be given by its
/// covering pairs; reflexive-transitive closure is taken.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub ortho: Option<Vec<(String, String)>>,
}

/// A finite bounded lattice with materialized meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    index: BTreeMap<String, Elem>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Lattice {
    /// Builds a lattice from validated tables. The tables must already be
    /// a lattice; only used by generators that construct them directly.
    pub(crate) fn from_tables(names: Vec<String>, meet: Vec<Elem>, join: Vec<Elem>) -> Lattice {
        let n = names.len();
        debug_assert_eq!(meet.len(), n * n);
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), Elem(i as u16)))
            .collect();
        let mut lattice = Lattice {
            names,
            index,
            meet,
            join,
            bottom: Elem(0),
            top: Elem(0),
        };
        let bottom = lattice.elems().fold(Elem(0), |acc, x| lattice.meet(acc, x));
        let top = lattice.elems().fold(Elem(0), |acc, x| lattice.join(acc, x));
        lattice.bottom = bottom;
        lattice.top = top;
        lattice
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.names.len() as u16).map(Elem)
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    /// Meet of a finite family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a finite family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// FNV-1a over the tables; equal lattices get equal fingerprints.
    pub(crate) fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        h.write_usize(self.names.len());
        for name in &self.names {
            h.write(name.as_bytes());
            h.write(&[0xff]);
        }
        for e in self.meet.iter().chain(self.join.iter()) {
            h.write(&e.0.to_le_bytes());
        }
        h.finish()
    }
}

/// Builds and validates the underlying lattice of a spec, ignoring any
/// orthocomplement data.
pub fn build_lattice(spec: &LatticeSpec) -> Result<Lattice, LatticeError> {
    build_lattice_with_caps(spec, &Caps::default())
}

pub fn build_lattice_with_caps(spec: &LatticeSpec, caps: &Caps) -> Result<Lattice, LatticeError> {
    let n = spec.elements.len();
    if n < 2 {
        return Err(LatticeError::Degenerate);
    }
    check_cap("lattice elements", caps.table_elements, n)?;
    let mut index = BTreeMap::new();
    for (i, name) in spec.elements.iter().enumerate() {
        if index.insert(name.clone(), Elem(i as u16)).is_some() {
            return Err(LatticeError::DuplicateElement(name.clone()));
        }
    }
    let lookup = |s: &String| -> Result<usize, LatticeError> {
        index
            .get(s)
            .map(|e: &Elem| e.index())
            .ok_or_else(|| LatticeError::UnknownElement(s.clone()))
    };

    let mut le = vec![false; n * n];
    for i in 0..n {
        le[i * n + i] = true;
    }
    for (a, b) in &spec.leq {
        let (a, b) = (lookup(a)?, lookup(b)?);
        le[a * n + b] = true;
    }
    // Warshall closure.
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if le[i * n + j] && le[j * n + i] {
                return Err(LatticeError::NotAPoset(
                    spec.elements[i].clone(),
                    spec.elements[j].clone(),
                ));
            }
        }
    }

    let name = |i: usize| spec.elements[i].clone();
    let mut meet = vec![Elem(0); n * n];
    let mut join = vec![Elem(0); n * n];
    for a in 0..n {
        for b in a..n {
            let lower: Vec<usize> = (0..n).filter(|&x| le[x * n + a] && le[x * n + b]).collect();
            let glb = lower
                .iter()
                .copied()
                .find(|&m| lower.iter().all(|&x| le[x * n + m]))
                .ok_or_else(|| LatticeError::NotALattice {
                    a: name(a),
                    b: name(b),
                    kind: BoundKind::Meet,
                })?;
            let upper: Vec<usize> = (0..n).filter(|&x| le[a * n + x] && le[b * n + x]).collect();
            let lub = upper
                .iter()
                .copied()
                .find(|&m| upper.iter().all(|&x| le[m * n + x]))
                .ok_or_else(|| LatticeError::NotALattice {
                    a: name(a),
                    b: name(b),
                    kind: BoundKind::Join,
                })?;
            meet[a * n + b] = Elem(glb as u16);
            meet[b * n + a] = Elem(glb as u16);
            join[a * n + b] = Elem(lub as u16);
            join[b * n + a] = Elem(lub as u16);
        }
    }
    Ok(Lattice::from_tables(spec.elements.clone(), meet, join))
}

/// A finite orthomodular lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthomodularLattice {
    base: Lattice,
    ortho: Vec<Elem>,
}

impl OrthomodularLattice {
    /// Validates the orthocomplement laws and the orthomodular law.
    pub fn new(base: Lattice, ortho: Vec<Elem>) -> Result<Self, LatticeError> {
        assert_eq!(
            base.len(),
            ortho.len(),
            "orthocomplement table has wrong length"
        );
        let oml = OrthomodularLattice { base, ortho };
        oml.validate()?;
        Ok(oml)
    }

    fn validate(&self) -> Result<(), LatticeError> {
        let l = &self.base;
        let nm = |a: Elem| l.name(a).to_string();
        let violation = |law, witness: String| LatticeError::OrthoLawViolation { law, witness };
        for a in l.elems() {
            let ac = self.ortho(a);
            if l.meet(a, ac) != l.bottom() {
                return Err(violation(
                    OrthoLaw::NonContradiction,
                    format!("a = `{}`", nm(a)),
                ));
            }
            if l.join(a, ac) != l.top() {
                return Err(violation(
                    OrthoLaw::ExcludedMiddle,
                    format!("a = `{}`", nm(a)),
                ));
            }
        }
        for a in l.elems() {
            for b in l.elems() {
                if l.leq(a, b) && !l.leq(self.ortho(b), self.ortho(a)) {
                    return Err(violation(
                        OrthoLaw::Antitone,
                        format!("a = `{}`, b = `{}`", nm(a), nm(b)),
                    ));
                }
            }
        }
        for a in l.elems() {
            if self.ortho(self.ortho(a)) != a {
                return Err(violation(OrthoLaw::Involution, format!("a = `{}`", nm(a))));
            }
        }
        for a in l.elems() {
            for b in l.elems() {
                let pair = || format!("a = `{}`, b = `{}`", nm(a), nm(b));
                if self.ortho(l.meet(a, b)) != l.join(self.ortho(a), self.ortho(b)) {
                    return Err(violation(OrthoLaw::DeMorganMeet, pair()));
                }
                if self.ortho(l.join(a, b)) != l.meet(self.ortho(a), self.ortho(b)) {
                    return Err(violation(OrthoLaw::DeMorganJoin, pair()));
                }
            }
        }
        for a in l.elems() {
            for b in l.elems() {
                if l.leq(a, b) && l.join(a, l.meet(b, self.ortho(a))) != b {
                    return Err(LatticeError::NotOrthomodular { a: nm(a), b: nm(b) });
                }
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> &Lattice {
        &self.base
    }

    #[inline]
    pub fn ortho(&self, a: Elem) -> Elem {
        self.ortho[a.index()]
    }

    /// `a ≤ b⊥`
    #[inline]
    pub fn orthogonal(&self, a: Elem, b: Elem) -> bool {
        self.base.leq(a, self.ortho(b))
    }

    pub(crate) fn fingerprint(&self) -> u64 {
        let mut h = Fnv::with_seed(self.base.fingerprint());
        for e in &self.ortho {
            h.write(&e.0.to_le_bytes());
        }
        h.finish()
    }
}

impl core::ops::Deref for OrthomodularLattice {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.base
    }
}

/// Builds an orthomodular lattice from a spec with orthocomplement pairs.
///
/// Each pair `(a, b)` sets `a⊥ = b`; the reverse `b⊥ = a` is implied unless
/// given explicitly.
pub fn build_oml(spec: &LatticeSpec) -> Result<OrthomodularLattice, LatticeError> {
    build_oml_with_caps(spec, &Caps::default())
}

pub fn build_oml_with_caps(
    spec: &LatticeSpec,
    caps: &Caps,
) -> Result<OrthomodularLattice, LatticeError> {
    let base = build_lattice_with_caps(spec, caps)?;
    let pairs = match &spec.ortho {
        Some(p) => p,
        None => {
            return Err(LatticeError::MissingOrthocomplement(
                base.name(base.bottom()).to_string(),
            ))
        }
    };
    let lookup = |s: &String| {
        base.elem(s)
            .ok_or_else(|| LatticeError::UnknownElement(s.clone()))
    };
    let mut ortho: Vec<Option<Elem>> = vec![None; base.len()];
    for (a, b) in pairs {
        let (a, b) = (lookup(a)?, lookup(b)?);
        match ortho[a.index()] {
            Some(prev) if prev != b => {
                return Err(LatticeError::ConflictingOrthocomplement(
                    base.name(a).to_string(),
                ))
            }
            _ => ortho[a.index()] = Some(b),
        }
    }
    for (a, b) in pairs {
        let (a, b) = (lookup(a)?, lookup(b)?);
        match ortho[b.index()] {
            Some(prev) if prev != a => {
                return Err(LatticeError::ConflictingOrthocomplement(
                    base.name(b).to_string(),
                ))
            }
            _ => ortho[b.index()] = Some(a),
        }
    }
    let ortho = ortho
        .iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| LatticeError::MissingOrthocomplement(base.names()[i].clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    OrthomodularLattice::new(base, ortho)
}

/// The powerset algebra on `atoms` atoms, with set complement as
/// orthocomplement. Element `i` is the subset with bitmask `i`.
pub fn make_boolean(atoms: usize) -> Result<OrthomodularLattice, LatticeError> {
    make_boolean_with_caps(atoms, &Caps::default())
}

pub fn make_boolean_with_caps(
    atoms: usize,
    caps: &Caps,
) -> Result<OrthomodularLattice, LatticeError> {
    if atoms == 0 {
        return Err(LatticeError::Degenerate);
    }
    check_cap("boolean atoms", 16, atoms)?;
    let n = 1usize << atoms;
    check_cap("lattice elements", caps.table_elements, n)?;
    let names = (0..n).map(|mask| subset_name(mask, atoms)).collect();
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            meet.push(Elem((a & b) as u16));
            join.push(Elem((a | b) as u16));
        }
    }
    let ortho = (0..n).map(|a| Elem((!a & (n - 1)) as u16)).collect();
    OrthomodularLattice::new(Lattice::from_tables(names, meet, join), ortho)
}

fn subset_name(mask: usize, atoms: usize) -> String {
    if mask == 0 {
        return "0".to_string();
    }
    if mask == (1 << atoms) - 1 {
        return "1".to_string();
    }
    let mut s = String::new();
    for i in 0..atoms {
        if mask & (1 << i) != 0 {
            s.push_str(&format!("a{}", i + 1));
        }
    }
    s
}

/// The horizontal sum `MO_n` of `n` four-element blocks `{0, x_i, x_i', 1}`.
///
/// Elements are ordered `0, x1, x1', …, xn, xn', 1`.
pub fn make_mo(pairs: usize) -> Result<OrthomodularLattice, LatticeError> {
    make_mo_with_caps(pairs, &Caps::default())
}

pub fn make_mo_with_caps(pairs: usize, caps: &Caps) -> Result<OrthomodularLattice, LatticeError> {
    if pairs == 0 {
        return Err(LatticeError::Degenerate);
    }
    let n = 2 * pairs + 2;
    check_cap("lattice elements", caps.table_elements, n)?;
    let mut names = vec!["0".to_string()];
    for i in 1..=pairs {
        let base = mo_atom_name(i, pairs);
        names.push(base.clone());
        names.push(format!("{base}'"));
    }
    names.push("1".to_string());
    let top = n - 1;
    let mut meet = vec![Elem(0); n * n];
    let mut join = vec![Elem(0); n * n];
    for a in 0..n {
        for b in 0..n {
            let (m, j) = if a == b {
                (a, a)
            } else if a == 0 || b == 0 {
                (0, a + b)
            } else if a == top || b == top {
                (a + b - top, top)
            } else {
                (0, top)
            };
            meet[a * n + b] = Elem(m as u16);
            join[a * n + b] = Elem(j as u16);
        }
    }
    let ortho = (0..n)
        .map(|a| {
            let o = if a == 0 {
                top
            } else if a == top {
                0
            } else if a % 2 == 1 {
                a + 1
            } else {
                a - 1
            };
            Elem(o as u16)
        })
        .collect();
    OrthomodularLattice::new(Lattice::from_tables(names, meet, join), ortho)
}

fn mo_atom_name(i: usize, pairs: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if pairs <= LETTERS.len() {
        (LETTERS[i - 1] as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// A set of lattice elements, stored as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn with_capacity(n: usize) -> Self {
        ElemSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, e: Elem) -> bool {
        let (w, b) = (e.index() / 64, e.index() % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, e: Elem) -> bool {
        let (w, b) = (e.index() / 64, e.index() % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w & (1u64 << b) != 0)
                .map(move |b| Elem((i * 64 + b) as u16))
        })
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut s = ElemSet::default();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

pub(crate) struct Fnv(u64);

impl Fnv {
    pub(crate) fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    pub(crate) fn with_seed(seed: u64) -> Self {
        let mut h = Fnv::new();
        h.write(&seed.to_le_bytes());
        h
    }

    pub(crate) fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }

    pub(crate) fn write_usize(&mut self, x: usize) {
        self.write(&(x as u64).to_le_bytes());
    }

    pub(crate) fn finish(&self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(
        elements: &[&str],
        leq: &[(&str, &str)],
        ortho: Option<&[(&str, &str)]>,
    ) -> LatticeSpec {
        let s = |x: &&str| x.to_string();
        LatticeSpec {
            elements: elements.iter().map(s).collect(),
            leq: leq
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            ortho: ortho.map(|o| {
                o.iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect()
            }),
        }
    }

    fn mo2_spec() -> LatticeSpec {
        spec(
            &["0", "a", "a'", "b", "b'", "1"],
            &[
                ("0", "a"),
                ("0", "a'"),
                ("0", "b"),
                ("0", "b'"),
                ("a", "1"),
                ("a'", "1"),
                ("b", "1"),
                ("b'", "1"),
            ],
            Some(&[("a", "a'"), ("b", "b'"), ("0", "1")]),
        )
    }

    #[test]
    fn mo2_spec_is_a_valid_oml() {
        let l = build_oml(&mo2_spec()).unwrap();
        assert_eq!(l.len(), 6);
        let (a, b) = (l.elem("a").unwrap(), l.elem("b").unwrap());
        assert_eq!(l.meet(a, b), l.bottom());
        assert_eq!(l.join(a, b), l.top());
        assert_eq!(l.name(l.ortho(a)), "a'");
    }

    #[test]
    fn mo2_spec_matches_generator() {
        let from_spec = build_oml(&mo2_spec()).unwrap();
        let generated = make_mo(2).unwrap();
        assert_eq!(from_spec, generated);
    }

    #[test]
    fn benzene_is_not_orthomodular() {
        // 0 < a < b < 1 and 0 < b' < a' < 1
        let s = spec(
            &["0", "a", "b", "b'", "a'", "1"],
            &[
                ("0", "a"),
                ("a", "b"),
                ("b", "1"),
                ("0", "b'"),
                ("b'", "a'"),
                ("a'", "1"),
            ],
            Some(&[("a", "a'"), ("b", "b'"), ("0", "1")]),
        );
        let err = build_oml(&s).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotOrthomodular {
                a: "a".into(),
                b: "b".into()
            }
        );
    }

    #[test]
    fn self_orthogonal_middle_of_chain_is_rejected() {
        let s = spec(
            &["0", "x", "1"],
            &[("0", "x"), ("x", "1")],
            Some(&[("x", "x"), ("0", "1")]),
        );
        match build_oml(&s).unwrap_err() {
            LatticeError::OrthoLawViolation { law, witness } => {
                assert_eq!(law, OrthoLaw::NonContradiction);
                assert!(witness.contains('x'));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn cyclic_order_is_not_a_poset() {
        let s = spec(&["0", "x", "y", "1"], &[("x", "y"), ("y", "x")], None);
        assert!(matches!(
            build_lattice(&s),
            Err(LatticeError::NotAPoset(..))
        ));
    }

    #[test]
    fn missing_join_is_reported() {
        // two maximal elements, no top
        let s = spec(&["0", "x", "y"], &[("0", "x"), ("0", "y")], None);
        assert!(matches!(
            build_lattice(&s),
            Err(LatticeError::NotALattice {
                kind: BoundKind::Join,
                ..
            })
        ));
    }

    #[test]
    fn unknown_and_duplicate_ids() {
        let s = spec(&["0", "1"], &[("0", "z")], None);
        assert_eq!(
            build_lattice(&s),
            Err(LatticeError::UnknownElement("z".into()))
        );
        let s = spec(&["0", "0"], &[], None);
        assert_eq!(
            build_lattice(&s),
            Err(LatticeError::DuplicateElement("0".into()))
        );
    }

    #[test]
    fn missing_and_conflicting_ortho() {
        let mut s = mo2_spec();
        s.ortho = Some(vec![("a".into(), "a'".into()), ("0".into(), "1".into())]);
        assert_eq!(
            build_oml(&s),
            Err(LatticeError::MissingOrthocomplement("b".into()))
        );
        s.ortho = Some(vec![("a".into(), "a'".into()), ("a".into(), "b".into())]);
        assert_eq!(
            build_oml(&s),
            Err(LatticeError::ConflictingOrthocomplement("a".into()))
        );
    }

    #[test]
    fn boolean_sizes() {
        assert_eq!(make_boolean(1).unwrap().len(), 2);
        let b2 = make_boolean(2).unwrap();
        assert_eq!(b2.len(), 4);
        let b3 = make_boolean(3).unwrap();
        assert_eq!(b3.len(), 8);
        for x in b3.elems() {
            for y in b3.elems() {
                for z in b3.elems() {
                    assert_eq!(
                        b3.meet(x, b3.join(y, z)),
                        b3.join(b3.meet(x, y), b3.meet(x, z))
                    );
                }
            }
        }
        assert!(matches!(make_boolean(0), Err(LatticeError::Degenerate)));
        assert!(matches!(
            make_boolean(17),
            Err(LatticeError::SizeCapExceeded(_))
        ));
    }

    #[test]
    fn mo1_is_the_four_element_boolean_algebra() {
        let mo1 = make_mo(1).unwrap();
        let b2 = make_boolean(2).unwrap();
        assert_eq!(mo1.len(), 4);
        // same shape: two complementary atoms
        let atoms: Vec<_> = mo1
            .elems()
            .filter(|&x| x != mo1.bottom() && x != mo1.top())
            .collect();
        assert_eq!(atoms.len(), 2);
        assert_eq!(mo1.ortho(atoms[0]), atoms[1]);
        assert_eq!(b2.ortho(Elem(1)), Elem(2));
    }

    #[test]
    fn mo2_is_not_distributive() {
        let l = make_mo(2).unwrap();
        let a = l.elem("a").unwrap();
        let b = l.elem("b").unwrap();
        let bc = l.elem("b'").unwrap();
        assert_eq!(l.meet(a, l.join(b, bc)), a);
        assert_eq!(l.join(l.meet(a, b), l.meet(a, bc)), l.bottom());
    }

    #[test]
    fn mo_family_is_orthomodular() {
        for n in 1..=6 {
            let l = make_mo(n).unwrap();
            assert_eq!(l.len(), 2 * n + 2);
            for a in l.elems() {
                for b in l.elems() {
                    if l.leq(a, b) {
                        assert_eq!(l.join(a, l.meet(b, l.ortho(a))), b);
                    }
                }
            }
        }
    }

    #[test]
    fn elem_set_basics() {
        let mut s = ElemSet::with_capacity(70);
        assert!(s.insert(Elem(3)));
        assert!(!s.insert(Elem(3)));
        s.insert(Elem(65));
        assert_eq!(s.len(), 2);
        assert!(s.contains(Elem(65)));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![Elem(3), Elem(65)]);
        let t: ElemSet = [Elem(3), Elem(65), Elem(7)].into_iter().collect();
        assert!(s.is_subset(&t));
        assert!(!t.is_subset(&s));
    }
}
