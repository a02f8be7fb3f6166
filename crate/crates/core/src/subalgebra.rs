//! The poset B(L) of Boolean subalgebras of a finite orthomodular lattice.

use alloc::vec;
use alloc::vec::Vec;

use crate::caps::{check_cap, CapExceeded, Caps};
use crate::lattice::{Elem, ElemSet, OrthomodularLattice};

/// A Boolean subalgebra, given by its carrier and its atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanSubalgebra {
    carrier: Vec<Elem>,
    members: ElemSet,
    atoms: Vec<Elem>,
}

impl BooleanSubalgebra {
    /// Carrier in increasing id order.
    pub fn carrier(&self) -> &[Elem] {
        &self.carrier
    }

    /// Atoms in increasing id order.
    pub fn atoms(&self) -> &[Elem] {
        &self.atoms
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn is_subalgebra_of(&self, other: &BooleanSubalgebra) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Checks closure under the three operations and distributivity on
    /// all carrier triples.
    pub fn verify(&self, l: &OrthomodularLattice) -> bool {
        is_closed_and_distributive(l, &self.members)
    }
}

/// `true` if `set` contains 0 and 1, is closed under meet, join and
/// orthocomplement, and is distributive.
pub fn is_closed_and_distributive(l: &OrthomodularLattice, set: &ElemSet) -> bool {
    if !set.contains(l.bottom()) || !set.contains(l.top()) {
        return false;
    }
    let items: Vec<Elem> = set.iter().collect();
    for &x in &items {
        if !set.contains(l.ortho(x)) {
            return false;
        }
        for &y in &items {
            if !set.contains(l.meet(x, y)) || !set.contains(l.join(x, y)) {
                return false;
            }
        }
    }
    for &x in &items {
        for &y in &items {
            for &z in &items {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return false;
                }
            }
        }
    }
    true
}

/// All Boolean subalgebras of a lattice, ordered by inclusion.
///
/// Members are sorted by carrier size, then lexicographically by carrier
/// ids, so the trivial subalgebra `{0, 1}` is always index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraPoset {
    members: Vec<BooleanSubalgebra>,
    /// `leq[i * m + j]` iff member `i` is contained in member `j`.
    leq: Vec<bool>,
}

impl SubalgebraPoset {
    pub fn members(&self) -> &[BooleanSubalgebra] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &BooleanSubalgebra {
        &self.members[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.members.len() + j]
    }

    /// Index of the subalgebra with exactly this carrier.
    pub fn position(&self, carrier: &[Elem]) -> Option<usize> {
        self.members.iter().position(|b| b.carrier == carrier)
    }

    /// The same poset without `{0, 1}`, unless that is the only member.
    pub fn without_trivial(&self) -> SubalgebraPoset {
        let m = self.len();
        if m <= 1 {
            return self.clone();
        }
        let members = self.members[1..].to_vec();
        let mut leq = Vec::with_capacity((m - 1) * (m - 1));
        for i in 1..m {
            for j in 1..m {
                leq.push(self.leq(i, j));
            }
        }
        SubalgebraPoset { members, leq }
    }

    /// Indices of maximal subalgebras (the maximal Boolean "contexts").
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(i, j)))
            .collect()
    }
}

/// Enumerates B(L) under the default caps.
pub fn enumerate_boolean_subalgebras(
    l: &OrthomodularLattice,
) -> Result<SubalgebraPoset, CapExceeded> {
    enumerate_boolean_subalgebras_with_caps(l, &Caps::default())
}

/// Enumerates B(L).
///
/// A finite Boolean subalgebra is determined by its atoms, which form a
/// family of pairwise orthogonal nonzero elements joining to 1; conversely
/// every such family generates a Boolean subalgebra. The search walks
/// orthogonal families in increasing id order and keeps those with join 1.
pub fn enumerate_boolean_subalgebras_with_caps(
    l: &OrthomodularLattice,
    caps: &Caps,
) -> Result<SubalgebraPoset, CapExceeded> {
    check_cap("lattice elements", caps.lattice_elements, l.len())?;
    let mut families = Vec::new();
    let mut chosen = Vec::new();
    orthogonal_families(
        l,
        0,
        l.bottom(),
        &mut chosen,
        &mut families,
        caps.subalgebras,
    )?;

    let mut members: Vec<BooleanSubalgebra> = families
        .into_iter()
        .map(|atoms| generate_from_atoms(l, atoms))
        .collect();
    for b in &members {
        assert!(
            b.verify(l),
            "orthogonal decomposition generated a non-Boolean subset"
        );
    }
    members.sort_by(|x, y| (x.len(), &x.carrier).cmp(&(y.len(), &y.carrier)));

    let m = members.len();
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = members[i].is_subalgebra_of(&members[j]);
        }
    }
    Ok(SubalgebraPoset { members, leq })
}

fn orthogonal_families(
    l: &OrthomodularLattice,
    start: usize,
    acc: Elem,
    chosen: &mut Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
    cap: usize,
) -> Result<(), CapExceeded> {
    if !chosen.is_empty() && acc == l.top() {
        out.push(chosen.clone());
        return check_cap("boolean subalgebras", cap, out.len());
    }
    let room = l.ortho(acc);
    for x in start..l.len() {
        let x = Elem(x as u16);
        if x == l.bottom() || !l.leq(x, room) {
            continue;
        }
        chosen.push(x);
        orthogonal_families(l, x.index() + 1, l.join(acc, x), chosen, out, cap)?;
        chosen.pop();
    }
    Ok(())
}

fn generate_from_atoms(l: &OrthomodularLattice, mut atoms: Vec<Elem>) -> BooleanSubalgebra {
    atoms.sort();
    let k = atoms.len();
    let mut members = ElemSet::with_capacity(l.len());
    for mask in 0u64..(1u64 << k) {
        let x = l.join_all(
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &a)| a),
        );
        members.insert(x);
    }
    let carrier = members.iter().collect();
    BooleanSubalgebra {
        carrier,
        members,
        atoms,
    }
}
