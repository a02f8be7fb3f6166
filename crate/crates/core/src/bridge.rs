//! Real-number names over the clopen subobjects, built from spectral
//! families on a finite rational grid, and the map back to families.
//!
//! A grid `q₀ < … < q_m` stands in for ℚ. Names of distinct grid rationals
//! are taken to be distinct, so `‖q̂ ∈ u‖ = u(q̂)`. Off the grid the
//! truth values follow the right-continuous step reading: the value at `q`
//! is the value at the largest grid point `≤ q`, and the value at `q₀`
//! below the grid.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::daseinisation::Daseinisation;
use crate::generated::GeneratedOml;
use crate::lattice::Elem;
use crate::linalg::Rational;
use crate::logic::{Evaluator, Profile};
use crate::presheaf::ClopenSubobject;
use crate::spectral::{verify_family, FamilyReport, Flavor, SpectralDecomposition, SpectralFamily};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BridgeError {
    #[error("grid is empty")]
    EmptyGrid,
    #[error("grid is not strictly increasing at position {0}")]
    GridNotIncreasing(usize),
    #[error("grid [{first}, {last}] does not bracket the spectrum [{min}, {max}]; need first <= min and last > max")]
    GridDoesNotBracketSpectrum {
        first: String,
        last: String,
        min: String,
        max: String,
    },
    #[error("spectral projection at {0} is not an element of the context lattice")]
    ProjectionNotInContext(String),
    #[error("{0} is not a grid point")]
    OffGridRational(String),
    #[error("{0} lies above the grid")]
    LambdaAboveGrid(String),
    #[error("names are defined over different grids")]
    GridMismatch,
    #[error("names live over different presheaves")]
    ContextMismatch,
    #[error("family dimension {family} does not match context dimension {context}")]
    DimensionMismatch { family: usize, context: usize },
}

/// Strictly increasing, nonempty list of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGrid {
    points: Vec<Rational>,
}

impl RationalGrid {
    pub fn new(points: Vec<Rational>) -> Result<Self, BridgeError> {
        if points.is_empty() {
            return Err(BridgeError::EmptyGrid);
        }
        if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(BridgeError::GridNotIncreasing(i + 1));
        }
        Ok(RationalGrid { points })
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn first(&self) -> &Rational {
        &self.points[0]
    }

    pub fn last(&self) -> &Rational {
        &self.points[self.points.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, q: &Rational) -> Option<usize> {
        self.points.binary_search(q).ok()
    }
}

/// A name `u` with `dom(u) = {q̂ : q on the grid}` and `u(q̂) = values[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealName {
    grid: RationalGrid,
    values: Vec<ClopenSubobject>,
}

impl RealName {
    /// Pairs grid points with truth values; the lengths must match.
    pub fn new(grid: RationalGrid, values: Vec<ClopenSubobject>) -> Self {
        assert_eq!(grid.len(), values.len(), "one truth value per grid point");
        RealName { grid, values }
    }

    pub fn grid(&self) -> &RationalGrid {
        &self.grid
    }

    pub fn values(&self) -> &[ClopenSubobject] {
        &self.values
    }
}

/// `u(q̂) = h(f(A_q)) = δ(A_q)` for a left-continuous family with values in
/// the context lattice.
pub fn bridge_from_family(
    model: &Daseinisation,
    family: &SpectralFamily<Elem>,
    grid: &RationalGrid,
) -> Result<RealName, BridgeError> {
    if let (Some(min), Some(max)) = (family.breakpoints.first(), family.breakpoints.last()) {
        if grid.first() > min || grid.last() <= max {
            return Err(BridgeError::GridDoesNotBracketSpectrum {
                first: format!("{}", grid.first()),
                last: format!("{}", grid.last()),
                min: format!("{min}"),
                max: format!("{max}"),
            });
        }
    }
    let values = grid
        .points()
        .iter()
        .map(|q| {
            let a = *family.value_at(q);
            let h = model.map_h(model.iso_f(a)).clone();
            debug_assert_eq!(&h, model.daseinise(a));
            h
        })
        .collect();
    Ok(RealName::new(grid.clone(), values))
}

/// Transfers a projection family into the context lattice.
pub fn family_in_context(
    context: &GeneratedOml,
    family: &SpectralFamily<crate::linalg::Projection>,
) -> Result<SpectralFamily<Elem>, BridgeError> {
    let mut values = Vec::with_capacity(family.values.len());
    for (i, p) in family.values.iter().enumerate() {
        if p.dim() != context.dim() {
            return Err(BridgeError::DimensionMismatch {
                family: p.dim(),
                context: context.dim(),
            });
        }
        let e = context.elem_of(p).ok_or_else(|| {
            let at = match i {
                0 => format!(
                    "below {}",
                    family
                        .breakpoints
                        .first()
                        .map_or(String::new(), |b| format!("{b}"))
                ),
                i => format!("{}+", family.breakpoints[i - 1]),
            };
            BridgeError::ProjectionNotInContext(at)
        })?;
        values.push(e);
    }
    Ok(SpectralFamily {
        flavor: family.flavor,
        breakpoints: family.breakpoints.clone(),
        values,
    })
}

/// The name of a matrix given by its decomposition.
pub fn bridge_h(
    model: &Daseinisation,
    context: &GeneratedOml,
    decomposition: &SpectralDecomposition,
    grid: &RationalGrid,
) -> Result<RealName, BridgeError> {
    let family = family_in_context(context, &decomposition.spectral_family())?;
    bridge_from_family(model, &family, grid)
}

/// `‖q̂ ∈ u‖`. Off-grid rationals are an error unless `step` is set.
pub fn membership<'u>(
    u: &'u RealName,
    q: &Rational,
    step: bool,
) -> Result<&'u ClopenSubobject, BridgeError> {
    if let Some(i) = u.grid.position(q) {
        return Ok(&u.values[i]);
    }
    if !step {
        return Err(BridgeError::OffGridRational(format!("{q}")));
    }
    let below = u.grid.points().iter().filter(|p| *p <= q).count();
    Ok(&u.values[below.saturating_sub(1)])
}

/// Grid forms of the cut conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindReport {
    /// `P_{q₀} = ⊥`.
    pub bottom_at_first: bool,
    /// `P_{q_m} = ⊤`.
    pub top_at_last: bool,
    /// First grid index `i` with `P_{q_i} ≰ P_{q_{i+1}}`.
    pub monotone_violation: Option<usize>,
    /// `⋀_{s>r} P_s = P_r` under the step reading, which holds for every
    /// monotone name.
    pub right_continuous: bool,
}

impl DedekindReport {
    pub fn holds(&self) -> bool {
        self.bottom_at_first
            && self.top_at_last
            && self.monotone_violation.is_none()
            && self.right_continuous
    }
}

pub fn is_dedekind_real(model: &Daseinisation, u: &RealName) -> DedekindReport {
    let p = model.presheaf();
    let monotone_violation = u
        .values
        .windows(2)
        .position(|w| !p.leq(&w[0], &w[1]).unwrap_or(false));
    DedekindReport {
        bottom_at_first: u.values[0] == p.bottom(),
        top_at_last: u.values[u.values.len() - 1] == p.top(),
        monotone_violation,
        right_continuous: monotone_violation.is_none(),
    }
}

/// `E_λ = ⋀_{q>λ} P_q` over grid points. At `λ = q_m` the meet is empty
/// and equals ⊤; beyond the grid it is undefined.
pub fn cut_to_e(
    model: &Daseinisation,
    u: &RealName,
    lambda: &Rational,
) -> Result<ClopenSubobject, BridgeError> {
    if lambda > u.grid.last() {
        return Err(BridgeError::LambdaAboveGrid(format!("{lambda}")));
    }
    let p = model.presheaf();
    Ok(u.grid
        .points()
        .iter()
        .zip(&u.values)
        .filter(|(q, _)| *q > lambda)
        .fold(p.top(), |acc, (_, v)| {
            p.meet(&acc, v).expect("same presheaf")
        }))
}

/// `G_λ = g([E_λ]) = ε(E_λ)` as a weakly right continuous step family with
/// a breakpoint at every grid point but the last.
pub fn to_operator_family_g(
    model: &Daseinisation,
    u: &RealName,
) -> Result<SpectralFamily<Elem>, BridgeError> {
    let pts = u.grid.points();
    let below = pts[0].clone() - Rational::from_integer(1.into());
    let mut values = Vec::with_capacity(pts.len());
    values.push(model.epsilon(&cut_to_e(model, u, &below)?));
    for q in &pts[..pts.len() - 1] {
        values.push(model.epsilon(&cut_to_e(model, u, q)?));
    }
    Ok(SpectralFamily {
        flavor: Flavor::WeaklyRightContinuous,
        breakpoints: pts[..pts.len() - 1].to_vec(),
        values,
    })
}

/// Checks of the family produced by [`to_operator_family_g`].
pub fn verify_g(model: &Daseinisation, g: &SpectralFamily<Elem>) -> FamilyReport {
    verify_family(model.lattice(), g)
}

/// One grid point of the round trip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripPoint {
    pub lambda: Rational,
    pub got: Elem,
    pub expected: Elem,
}

/// Compares `G(H(A))_λ` with `⋀_{q>λ, q on grid} A_q` at every grid point.
pub fn round_trip(
    model: &Daseinisation,
    family: &SpectralFamily<Elem>,
    grid: &RationalGrid,
) -> Result<Vec<RoundTripPoint>, BridgeError> {
    let u = bridge_from_family(model, family, grid)?;
    let g = to_operator_family_g(model, &u)?;
    let l = model.lattice();
    Ok(grid
        .points()
        .iter()
        .map(|lambda| {
            let expected = l.meet_all(
                grid.points()
                    .iter()
                    .filter(|q| *q > lambda)
                    .map(|q| *family.value_at(q)),
            );
            RoundTripPoint {
                lambda: lambda.clone(),
                got: *g.value_at(lambda),
                expected,
            }
        })
        .collect())
}

/// `‖u = v‖ = ⋀_q (P^u_q ⇒ P^v_q) ∧ (P^v_q ⇒ P^u_q)` with the profile's
/// implication.
pub fn equality_truth(
    model: &Daseinisation,
    u: &RealName,
    v: &RealName,
    profile: Profile,
) -> Result<ClopenSubobject, BridgeError> {
    if u.grid != v.grid {
        return Err(BridgeError::GridMismatch);
    }
    let p = model.presheaf();
    let fp = p.top().parent();
    if u.values.iter().chain(&v.values).any(|s| s.parent() != fp) {
        return Err(BridgeError::ContextMismatch);
    }
    let eval = Evaluator::new(model, profile);
    let mut acc = p.top();
    for (a, b) in u.values.iter().zip(&v.values) {
        let both = p
            .meet(&eval.implies(a, b), &eval.implies(b, a))
            .expect("same presheaf");
        acc = p.meet(&acc, &both).expect("same presheaf");
    }
    Ok(acc)
}

/// Where the "assume all classes agree" argument breaks: a grid point with
/// `[¬P_q] ∨ [P_q] ≠ [⊤]` under the profile's negation.
pub fn class_excluded_middle_failure(
    model: &Daseinisation,
    u: &RealName,
    profile: Profile,
) -> Option<Rational> {
    let eval = Evaluator::new(model, profile);
    let e = model.e_quotient();
    let top = model.class_of(&model.presheaf().top());
    u.grid.points().iter().zip(&u.values).find_map(|(q, s)| {
        let joined = e.join(model.class_of(&eval.negate(s)), model.class_of(s));
        (joined != top).then(|| q.clone())
    })
}

/// Outcome of comparing the names of two matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    pub u: RealName,
    pub v: RealName,
    /// First grid point where the sampled families differ.
    pub family_differs_at: Option<Rational>,
    /// First grid point with `[P^u_q] ≠ [P^v_q]`.
    pub class_differs_at: Option<Rational>,
    pub star_truth: ClopenSubobject,
    pub heyting_truth: ClopenSubobject,
    pub star_is_top: bool,
    pub heyting_is_top: bool,
    pub g_u: SpectralFamily<Elem>,
    pub g_v: SpectralFamily<Elem>,
    /// First grid point where the recovered families differ.
    pub g_differs_at: Option<Rational>,
    /// Star truth `≠ ⊤` implies some class differs; `true` when the
    /// implication holds on this instance.
    pub star_argument_holds: bool,
    /// Grid points where the class-level excluded middle used by the first
    /// attempt fails, per profile (star, heyting), checked on `u`.
    pub star_chain_break: Option<Rational>,
    pub heyting_chain_break: Option<Rational>,
    /// The spectra differ but the grid cannot see it.
    pub grid_resolution_limited: bool,
}

pub fn injectivity_experiment(
    model: &Daseinisation,
    a: &SpectralFamily<Elem>,
    b: &SpectralFamily<Elem>,
    grid: &RationalGrid,
) -> Result<InjectivityReport, BridgeError> {
    let u = bridge_from_family(model, a, grid)?;
    let v = bridge_from_family(model, b, grid)?;
    let first_diff = |f: &dyn Fn(&Rational) -> bool| grid.points().iter().find(|q| f(q)).cloned();
    let family_differs_at = first_diff(&|q| a.value_at(q) != b.value_at(q));
    let class_differs_at = first_diff(&|q| {
        let i = grid.position(q).expect("grid point");
        model.class_of(&u.values[i]) != model.class_of(&v.values[i])
    });
    let star_truth = equality_truth(model, &u, &v, Profile::STAR)?;
    let heyting_truth = equality_truth(model, &u, &v, Profile::HEYTING)?;
    let top = model.presheaf().top();
    let star_is_top = star_truth == top;
    let heyting_is_top = heyting_truth == top;
    let g_u = to_operator_family_g(model, &u)?;
    let g_v = to_operator_family_g(model, &v)?;
    let g_differs_at = first_diff(&|q| g_u.value_at(q) != g_v.value_at(q));
    let spectra_differ = a != b;
    Ok(InjectivityReport {
        family_differs_at: family_differs_at.clone(),
        class_differs_at: class_differs_at.clone(),
        star_argument_holds: star_is_top || class_differs_at.is_some(),
        star_chain_break: class_excluded_middle_failure(model, &u, Profile::STAR),
        heyting_chain_break: class_excluded_middle_failure(model, &u, Profile::HEYTING),
        grid_resolution_limited: spectra_differ && family_differs_at.is_none(),
        u,
        v,
        star_truth,
        heyting_truth,
        star_is_top,
        heyting_is_top,
        g_u,
        g_v,
        g_differs_at,
    })
}
