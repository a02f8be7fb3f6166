//! The four commands and witness replay.

use qst_core::bridge::{
    bridge_from_family, family_in_context, injectivity_experiment, is_dedekind_real, round_trip,
    to_operator_family_g, verify_g, RationalGrid,
};
use qst_core::generated::{generate_oml, GeneratedOml};
use qst_core::laws::{self, Clause, ClauseKind, Suite};
use qst_core::logic::{
    replay, validation_report, CheckResult, Checker, Counterexample, SearchMode, Status,
    ValueSource,
};
use qst_core::spectral::{verify_family, FamilyReport, Flavor, ProjectionOrder, SpectralFamily};
use qst_core::{
    parse_formula, Caps, ClopenSubobject, Daseinisation, Elem, OrthomodularLattice, Profile,
    SpectralPresheaf,
};

use crate::error::{exit, CliError};
use crate::input::{Experiment, LoadedLattice};
use crate::report::*;

/// Builds the presheaf and daseinisation for a loaded lattice.
pub fn model(l: &LoadedLattice, caps: &Caps) -> Result<Daseinisation, CliError> {
    let p = SpectralPresheaf::with_options(l.oml.clone(), caps, l.include_trivial)?;
    Ok(Daseinisation::from_presheaf(p))
}

fn view(d: &Daseinisation, s: &ClopenSubobject) -> SubobjectView {
    SubobjectView {
        encoded: d.presheaf().encode(s),
        text: d.presheaf().describe(s),
    }
}

fn is_distributive(l: &OrthomodularLattice) -> bool {
    l.elems().all(|x| {
        l.elems().all(|y| {
            l.elems()
                .all(|z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z)))
        })
    })
}

pub fn lattice_check(l: &LoadedLattice, caps: &Caps) -> Result<(Body, i32), CliError> {
    let d = model(l, caps)?;
    let p = d.presheaf();
    let oml = d.lattice();
    let names = |es: &[Elem]| es.iter().map(|&e| oml.name(e).to_string()).collect();
    let base = p.base();
    let mut inclusions = Vec::new();
    for i in 0..base.len() {
        for j in 0..base.len() {
            if i != j && base.leq(i, j) {
                inclusions.push((i, j));
            }
        }
    }
    let body = LatticeCheckBody {
        name: l.name.clone(),
        elements: oml.names().to_vec(),
        orthocomplement: oml
            .elems()
            .map(|e| (oml.name(e).to_string(), oml.name(oml.ortho(e)).to_string()))
            .collect(),
        distributive: is_distributive(oml),
        include_trivial: l.include_trivial,
        subalgebras: base
            .members()
            .iter()
            .map(|b| SubalgebraView {
                carrier: names(b.carrier()),
                atoms: names(b.atoms()),
            })
            .collect(),
        inclusions,
        maximal: base.maximal(),
        fiber_sizes: p.fiber_sizes(),
        functorial: p.check_functoriality(),
        subobjects: p.enumerate_subobjects_with_caps(caps).ok().map(|s| s.len()),
    };
    let code = if body.functorial {
        exit::OK
    } else {
        exit::CHECK_FAILED
    };
    Ok((Body::LatticeCheck(body), code))
}

/// Which suites `theorems` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelector {
    Daseinisation,
    Epsilon,
    Quotient,
    HMap,
    TopClass,
    Star,
    All,
}

impl SuiteSelector {
    pub const TOKENS: [&'static str; 7] = ["2.3", "2.5", "2.6", "3.1", "3.2", "4.2", "all"];

    pub fn parse(token: &str) -> Result<Self, CliError> {
        Ok(match token {
            "2.3" => Self::Daseinisation,
            "2.5" => Self::Epsilon,
            "2.6" => Self::Quotient,
            "3.1" => Self::HMap,
            "3.2" => Self::TopClass,
            "4.2" => Self::Star,
            "all" => Self::All,
            other => {
                return Err(CliError::input(format!(
                    "unknown suite `{other}`; expected one of {}",
                    Self::TOKENS.join(", ")
                )))
            }
        })
    }

    fn token(self) -> &'static str {
        match self {
            Self::Daseinisation => "2.3",
            Self::Epsilon => "2.5",
            Self::Quotient => "2.6",
            Self::HMap => "3.1",
            Self::TopClass => "3.2",
            Self::Star => "4.2",
            Self::All => "all",
        }
    }

    fn needs_subobjects(self) -> bool {
        !matches!(self, Self::Daseinisation | Self::Quotient | Self::HMap)
    }
}

fn kind_name(k: ClauseKind) -> &'static str {
    match k {
        ClauseKind::Law => "law",
        ClauseKind::Search => "search",
        ClauseKind::Info => "info",
    }
}

fn clause_view(d: &Daseinisation, c: &Clause) -> ClauseView {
    ClauseView {
        id: c.id.into(),
        statement: c.statement.into(),
        kind: kind_name(c.kind).into(),
        holds: c.holds,
        checked: c.checked,
        witness: c.witness.clone(),
        witness_subobjects: c.witness_subobjects.iter().map(|s| view(d, s)).collect(),
    }
}

fn suite_view(d: &Daseinisation, selector: &str, s: &Suite) -> SuiteView {
    SuiteView {
        id: s.id.into(),
        selector: selector.into(),
        title: s.title.into(),
        passed: s.passed(),
        clauses: s.clauses.iter().map(|c| clause_view(d, c)).collect(),
    }
}

pub fn theorems(
    l: &LoadedLattice,
    which: SuiteSelector,
    caps: &Caps,
) -> Result<(Body, i32), CliError> {
    let d = model(l, caps)?;
    let e = d.e_quotient();
    let subs = if which == SuiteSelector::All || which.needs_subobjects() {
        Some(d.presheaf().enumerate_subobjects_with_caps(caps)?)
    } else {
        d.presheaf().enumerate_subobjects_with_caps(caps).ok()
    };
    let s = subs.as_deref();
    let mut suites = Vec::new();
    let selected = |x: SuiteSelector| which == SuiteSelector::All || which == x;
    if selected(SuiteSelector::Daseinisation) {
        suites.push(suite_view(
            &d,
            SuiteSelector::Daseinisation.token(),
            &laws::daseinisation_laws(&d),
        ));
    }
    if selected(SuiteSelector::Epsilon) {
        suites.push(suite_view(
            &d,
            SuiteSelector::Epsilon.token(),
            &laws::epsilon_laws(&d, s.expect("enumerated")),
        ));
    }
    if selected(SuiteSelector::Quotient) {
        suites.push(suite_view(
            &d,
            SuiteSelector::Quotient.token(),
            &laws::quotient_laws(&d, &e, s),
        ));
    }
    if selected(SuiteSelector::HMap) {
        suites.push(suite_view(
            &d,
            SuiteSelector::HMap.token(),
            &laws::h_map_laws(&d, &e, s),
        ));
    }
    if selected(SuiteSelector::TopClass) {
        suites.push(suite_view(
            &d,
            SuiteSelector::TopClass.token(),
            &laws::top_class_laws(&d, s.expect("enumerated")),
        ));
    }
    if selected(SuiteSelector::Star) {
        suites.push(suite_view(
            &d,
            SuiteSelector::Star.token(),
            &laws::star_laws(&d, &e, s.expect("enumerated")),
        ));
    }
    if which == SuiteSelector::All {
        suites.push(suite_view(
            &d,
            "negative",
            &laws::negative_results(&d, &e, s.expect("enumerated")),
        ));
    }
    let body = TheoremsBody {
        lattice: l.name.clone(),
        elements: d.lattice().len(),
        subalgebras: d.presheaf().base().len(),
        subobjects: subs.as_ref().map(Vec::len),
        suites,
    };
    let code = if body.passed() {
        exit::OK
    } else {
        exit::CHECK_FAILED
    };
    Ok((Body::Theorems(body), code))
}

fn mode_view(m: SearchMode) -> ModeView {
    match m {
        SearchMode::Exhaustive => ModeView::Exhaustive,
        SearchMode::Sampled { seed, count } => ModeView::Sampled { seed, count },
    }
}

fn check_view(d: &Daseinisation, profile: Profile, r: &CheckResult) -> CheckView {
    let (status, counterexample) = match &r.status {
        Status::Valid => ("valid", None),
        Status::BudgetExhausted => ("budget-exhausted", None),
        Status::Counterexample(cx) => (
            "counterexample",
            Some(CounterexampleView {
                instance: cx.instance.clone(),
                premises: cx.premises.iter().map(|f| f.to_string()).collect(),
                formula: cx.formula.to_string(),
                valuation: cx
                    .valuation
                    .iter()
                    .map(|(v, s)| (v.clone(), view(d, s)))
                    .collect(),
                value: view(d, &cx.value),
            }),
        ),
    };
    CheckView {
        label: r.label(),
        profile: profile.name.into(),
        status: status.into(),
        instances: r.instances,
        checked: r.checked,
        mode: mode_view(r.mode),
        notice: r.notice.clone(),
        counterexample,
    }
}

pub struct LogicOptions {
    pub profile: Profile,
    pub mode: SearchMode,
}

pub fn logic(l: &LoadedLattice, opts: &LogicOptions, caps: &Caps) -> Result<(Body, i32), CliError> {
    let d = model(l, caps)?;
    let checker = Checker::auto(&d, *caps);
    let values = match checker.source() {
        ValueSource::Enumerated(all) => format!("enumerated:{}", all.len()),
        ValueSource::Random { domain_size } => format!("random:{domain_size}"),
    };
    let report = validation_report(&checker, opts.profile, opts.mode)?;
    let entries: Vec<CheckView> = report
        .entries
        .iter()
        .map(|r| check_view(&d, opts.profile, r))
        .collect();
    let mut comparison = Vec::new();
    for other in [Profile::STAR, Profile::HEYTING, Profile::COHEYTING] {
        if other != opts.profile {
            let r = checker.check_axiom(8, other, opts.mode)?;
            comparison.push(check_view(&d, other, &r));
        }
    }
    let class_level = match checker.source() {
        ValueSource::Enumerated(all) => {
            let neg = laws::negative_results(&d, &d.e_quotient(), all);
            ["heyting-class-lem-fails", "coheyting-class-lem-fails"]
                .iter()
                .filter_map(|id| neg.clause(id))
                .map(|c| clause_view(&d, c))
                .collect()
        }
        ValueSource::Random { .. } => Vec::new(),
    };
    let body = LogicBody {
        lattice: l.name.clone(),
        profile: opts.profile.name.into(),
        mode: mode_view(opts.mode),
        values,
        valid_axioms: report.valid_axioms(),
        axioms: report.axioms().count(),
        valid_rules: report.rules().filter(|r| r.is_valid()).count(),
        rules: report.rules().count(),
        entries,
        comparison,
        class_level,
    };
    Ok((Body::Logic(body), exit::OK))
}

fn decode(d: &Daseinisation, v: &SubobjectView) -> Result<ClopenSubobject, CliError> {
    Ok(d.presheaf().decode(&v.encoded)?)
}

fn replay_check(
    d: &Daseinisation,
    checker: &Checker<'_>,
    seed: u64,
    c: &CheckView,
) -> Result<Option<bool>, CliError> {
    let Some(cx) = &c.counterexample else {
        return Ok(None);
    };
    let profile = Profile::by_name(&c.profile)?;
    let stored = Counterexample {
        instance: cx.instance.clone(),
        premises: cx
            .premises
            .iter()
            .map(|p| parse_formula(p))
            .collect::<Result<_, _>>()?,
        formula: parse_formula(&cx.formula)?,
        valuation: cx
            .valuation
            .iter()
            .map(|(v, s)| Ok((v.clone(), decode(d, s)?)))
            .collect::<Result<_, CliError>>()?,
        value: decode(d, &cx.value)?,
    };
    Ok(Some(replay(&checker.evaluator(profile, seed), &stored)?))
}

/// Re-checks every witness and counterexample stored in a report against
/// the given lattice.
pub fn replay_report(
    l: &LoadedLattice,
    report: &Report,
    source: &str,
    caps: &Caps,
) -> Result<(Body, i32), CliError> {
    let d = model(l, caps)?;
    let mut items = Vec::new();
    match &report.body {
        Body::Logic(b) => {
            let checker = Checker::auto(&d, *caps);
            let seed = match b.mode {
                ModeView::Sampled { seed, .. } => seed,
                ModeView::Exhaustive => 0,
            };
            for c in b.entries.iter().chain(&b.comparison) {
                items.push(ReplayItem {
                    label: format!("{} ({})", c.label, c.profile),
                    replayed: replay_check(&d, &checker, seed, c)?,
                });
            }
        }
        Body::Theorems(b) => {
            let e = d.e_quotient();
            for s in &b.suites {
                for c in &s.clauses {
                    if c.witness_subobjects.is_empty() {
                        continue;
                    }
                    let subs = c
                        .witness_subobjects
                        .iter()
                        .map(|v| decode(&d, v))
                        .collect::<Result<Vec<_>, _>>()?;
                    items.push(ReplayItem {
                        label: format!("{}/{}", s.id, c.id),
                        replayed: laws::replay_clause(&d, &e, &s.id, &c.id, &subs),
                    });
                }
            }
        }
        _ => {
            return Err(CliError::input(format!(
                "{source}: only logic and theorems reports carry witnesses"
            )))
        }
    }
    let body = ReplayBody {
        source: source.into(),
        items,
    };
    let code = if body.all_replayed() {
        exit::OK
    } else {
        exit::CHECK_FAILED
    };
    Ok((Body::Replay(body), code))
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::LeftContinuous => "left-continuous",
        Flavor::WeaklyRightContinuous => "weakly-right-continuous",
    }
}

fn family_view(l: &OrthomodularLattice, f: &SpectralFamily<Elem>, r: &FamilyReport) -> FamilyView {
    FamilyView {
        flavor: flavor_name(f.flavor).into(),
        breakpoints: f.breakpoints.iter().map(|b| b.to_string()).collect(),
        values: f.values.iter().map(|&e| l.name(e).to_string()).collect(),
        holds: r.holds(),
        monotone: r.monotone_violation.is_none(),
        bottom: r.bottom,
        top: r.top,
        continuity: r.continuity,
    }
}

/// The context lattice: eigenprojections of every matrix plus any extra
/// generators.
pub fn experiment_context(x: &Experiment, caps: &Caps) -> Result<GeneratedOml, CliError> {
    let mut gens = Vec::new();
    for (_, d) in &x.matrices {
        gens.extend(d.pairs().iter().map(|(_, p)| p.clone()));
    }
    gens.extend(x.extra_generators.iter().cloned());
    Ok(generate_oml(x.dim, &gens, caps)?)
}

pub fn bridge(x: &Experiment, caps: &Caps) -> Result<(Body, i32), CliError> {
    let profile = Profile::by_name(&x.profile)?;
    let grid = RationalGrid::new(x.grid.clone())?;
    let ctx = experiment_context(x, caps)?;
    let presheaf = SpectralPresheaf::with_options(ctx.oml().clone(), caps, x.include_trivial)?;
    let d = Daseinisation::from_presheaf(presheaf);
    let l = d.lattice();
    let wants = |c: &str| x.checks.iter().any(|k| k == c);

    let mut families = Vec::new();
    let mut matrices = Vec::new();
    for (name, dec) in &x.matrices {
        let pf = dec.spectral_family();
        let pr = verify_family(&ProjectionOrder { dim: x.dim }, &pf);
        let fam = family_in_context(&ctx, &pf)?;
        let u = bridge_from_family(&d, &fam, &grid)?;
        let name_values = grid
            .points()
            .iter()
            .zip(u.values())
            .map(|(q, s)| GridValueView {
                q: q.to_string(),
                value: view(&d, s),
            })
            .collect();
        let dedekind = wants("dedekind").then(|| {
            let r = is_dedekind_real(&d, &u);
            DedekindView {
                holds: r.holds(),
                bottom_at_first: r.bottom_at_first,
                top_at_last: r.top_at_last,
                monotone_violation: r.monotone_violation,
                right_continuous: r.right_continuous,
            }
        });
        let g_family = if wants("family") {
            let g = to_operator_family_g(&d, &u)?;
            Some(family_view(l, &g, &verify_g(&d, &g)))
        } else {
            None
        };
        let round = if wants("round-trip") {
            round_trip(&d, &fam, &grid)?
                .into_iter()
                .map(|p| RoundTripView {
                    lambda: p.lambda.to_string(),
                    got: l.name(p.got).into(),
                    expected: l.name(p.expected).into(),
                    equal: p.got == p.expected,
                })
                .collect()
        } else {
            Vec::new()
        };
        let fam_view = family_view(l, &fam, &verify_family(l, &fam));
        matrices.push(MatrixView {
            name: name.clone(),
            eigenpairs: dec
                .pairs()
                .iter()
                .map(|(v, p)| (v.to_string(), p.matrix().to_string()))
                .collect(),
            family: FamilyView {
                holds: fam_view.holds && pr.holds(),
                ..fam_view
            },
            name_values,
            dedekind,
            g_family,
            round_trip: round,
        });
        families.push((name.clone(), fam));
    }

    let mut injectivity = Vec::new();
    if wants("injectivity") {
        for i in 0..families.len() {
            for j in i + 1..families.len() {
                let (an, a) = &families[i];
                let (bn, b) = &families[j];
                let r = injectivity_experiment(&d, a, b, &grid)?;
                let profile_truth = qst_core::bridge::equality_truth(&d, &r.u, &r.v, profile)?;
                let s = |q: &Option<qst_core::linalg::Rational>| q.as_ref().map(|q| q.to_string());
                injectivity.push(InjectivityView {
                    first: an.clone(),
                    second: bn.clone(),
                    family_differs_at: s(&r.family_differs_at),
                    class_differs_at: s(&r.class_differs_at),
                    star_truth: view(&d, &r.star_truth),
                    star_is_top: r.star_is_top,
                    heyting_truth: view(&d, &r.heyting_truth),
                    heyting_is_top: r.heyting_is_top,
                    profile_truth: view(&d, &profile_truth),
                    g_differs_at: s(&r.g_differs_at),
                    star_argument_holds: r.star_argument_holds,
                    star_chain_break: s(&r.star_chain_break),
                    heyting_chain_break: s(&r.heyting_chain_break),
                    grid_resolution_limited: r.grid_resolution_limited,
                });
            }
        }
    }

    let body = BridgeBody {
        experiment: x.name.clone(),
        grid: grid.points().iter().map(|q| q.to_string()).collect(),
        profile: profile.name.into(),
        checks: x.checks.clone(),
        context: ContextView {
            dim: ctx.dim(),
            elements: l
                .elems()
                .map(|e| ContextElementView {
                    name: l.name(e).into(),
                    projection: ctx.projection(e).matrix().to_string(),
                })
                .collect(),
            subalgebras: d.presheaf().base().len(),
            include_trivial: x.include_trivial,
        },
        matrices,
        injectivity,
    };
    let code = if body.passed() {
        exit::OK
    } else {
        exit::CHECK_FAILED
    };
    Ok((Body::Bridge(body), code))
}
