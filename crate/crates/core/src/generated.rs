//! Finite orthomodular lattices of projections on ℚⁿ.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::caps::{check_cap, Caps};
use crate::lattice::{Elem, Lattice, LatticeError, OrthomodularLattice};
use crate::linalg::Projection;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("no generators and no dimension given")]
    Empty,
    #[error("generator {index} has dimension {actual}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("closure exceeded {limit} elements (partial closure has {partial})")]
    SizeCapExceeded { limit: usize, partial: usize },
    #[error("closure failed validation: {0}")]
    Invalid(#[from] LatticeError),
}

/// The sub-orthomodular-lattice of P(ℚⁿ) generated by some projections.
///
/// Elements are sorted by rank, then by canonical basis, so `0` comes first
/// and the identity last.
#[derive(Debug, Clone)]
pub struct GeneratedOml {
    dim: usize,
    generators: Vec<Projection>,
    elements: Vec<Projection>,
    index: BTreeMap<Projection, Elem>,
    oml: OrthomodularLattice,
}

impl GeneratedOml {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Projection] {
        &self.generators
    }

    pub fn oml(&self) -> &OrthomodularLattice {
        &self.oml
    }

    pub fn into_oml(self) -> OrthomodularLattice {
        self.oml
    }

    pub fn projection(&self, e: Elem) -> &Projection {
        &self.elements[e.index()]
    }

    pub fn projections(&self) -> &[Projection] {
        &self.elements
    }

    pub fn elem_of(&self, p: &Projection) -> Option<Elem> {
        self.index.get(p).copied()
    }
}

/// Closes `generators` under meet, join and orthocomplement, then builds
/// and validates the resulting orthomodular lattice.
pub fn generate_oml(
    dim: usize,
    generators: &[Projection],
    caps: &Caps,
) -> Result<GeneratedOml, GenerateError> {
    if dim == 0 {
        return Err(GenerateError::Empty);
    }
    for (index, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(GenerateError::DimensionMismatch {
                index,
                expected: dim,
                actual: g.dim(),
            });
        }
    }
    let limit = caps.generated_elements;
    let over = |partial: usize| GenerateError::SizeCapExceeded { limit, partial };
    let mut set: BTreeSet<Projection> = BTreeSet::new();
    set.insert(Projection::zero(dim));
    set.insert(Projection::identity(dim));
    for g in generators {
        set.insert(g.clone());
        set.insert(g.ortho());
    }
    if set.len() > limit {
        return Err(over(set.len()));
    }
    let mut frontier: Vec<Projection> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let known: Vec<Projection> = set.iter().cloned().collect();
        let mut fresh = Vec::new();
        for a in &frontier {
            for b in &known {
                for c in [a.meet(b), a.join(b), a.ortho()] {
                    if !set.contains(&c) {
                        set.insert(c.clone());
                        fresh.push(c);
                        if set.len() > limit {
                            return Err(over(set.len()));
                        }
                    }
                }
            }
        }
        frontier = fresh;
    }

    let mut elements: Vec<Projection> = set.into_iter().collect();
    elements.sort_by(|a, b| (a.rank(), a).cmp(&(b.rank(), b)));
    let n = elements.len();
    check_cap("lattice elements", caps.table_elements, n).map_err(|_| over(n))?;
    let index: BTreeMap<Projection, Elem> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), Elem(i as u16)))
        .collect();
    let at = |p: &Projection| index[p];
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            meet.push(at(&a.meet(b)));
            join.push(at(&a.join(b)));
        }
    }
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => format!("p{i}"),
        })
        .collect();
    let base = Lattice::from_tables(names, meet, join);
    let ortho = elements.iter().map(|p| at(&p.ortho())).collect();
    let oml = OrthomodularLattice::new(base, ortho)?;
    Ok(GeneratedOml {
        dim,
        generators: generators.to_vec(),
        elements,
        index,
        oml,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{parse_rational, Rational, Subspace};
    use alloc::vec;

    fn line(v: &[&str]) -> Projection {
        let v: Vec<Rational> = v.iter().map(|s| parse_rational(s).unwrap()).collect();
        Projection::onto(Subspace::span(v.len(), &[v]).unwrap())
    }

    #[test]
    fn commuting_diagonal_projections() {
        let g = generate_oml(2, &[line(&["1", "0"])], &Caps::default()).unwrap();
        assert_eq!(g.oml().len(), 4);
        let b = crate::enumerate_boolean_subalgebras(g.oml()).unwrap();
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn two_lines_give_mo2() {
        let g = generate_oml(2, &[line(&["1", "0"]), line(&["1", "1"])], &Caps::default()).unwrap();
        assert_eq!(g.oml().len(), 6);
        let b = crate::enumerate_boolean_subalgebras(g.oml()).unwrap();
        assert_eq!(b.len(), 3);
        for p in g.projections() {
            assert!(p.verify_idempotent());
        }
        for a in g.oml().elems() {
            for c in g.oml().elems() {
                assert_eq!(g.oml().leq(a, c), g.projection(a).leq(g.projection(c)));
            }
        }
    }

    #[test]
    fn three_lines_give_mo3() {
        let g = generate_oml(
            2,
            &[line(&["1", "0"]), line(&["1", "1"]), line(&["1", "2"])],
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(g.oml().len(), 8);
    }

    #[test]
    fn closure_cap() {
        // two generic lines in ℚ³ with their complements generate 0, 1, the
        // two lines, the two planes, the plane they span, and its normal
        let gens = vec![line(&["1", "0", "0"]), line(&["1", "1", "1"])];
        let small = Caps {
            generated_elements: 5,
            ..Caps::default()
        };
        assert!(matches!(
            generate_oml(3, &gens, &small),
            Err(GenerateError::SizeCapExceeded { limit: 5, .. })
        ));
        let g = generate_oml(3, &gens, &Caps::default()).unwrap();
        assert!(g.oml().len() > 5);
        assert!(matches!(
            generate_oml(2, &[line(&["1", "0", "0"])], &Caps::default()),
            Err(GenerateError::DimensionMismatch { .. })
        ));
    }
}
