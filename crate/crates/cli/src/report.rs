//! Machine-readable reports and their text rendering.
//!
//! Everything except `header.generated_at` is a deterministic function of
//! the inputs, caps and seed.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use qst_core::Caps;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    /// Seconds since the Unix epoch.
    pub generated_at: u64,
}

impl Header {
    pub fn now() -> Self {
        let generated_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Header {
            tool: "qst".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            schema: SCHEMA_VERSION,
            generated_at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsView {
    pub lattice_elements: usize,
    pub table_elements: usize,
    pub subalgebras: usize,
    pub subobject_bits: usize,
    pub generated_elements: usize,
    pub valuations: u64,
}

impl From<&Caps> for CapsView {
    fn from(c: &Caps) -> Self {
        CapsView {
            lattice_elements: c.lattice_elements,
            table_elements: c.table_elements,
            subalgebras: c.subalgebras,
            subobject_bits: c.subobject_bits,
            generated_elements: c.generated_elements,
            valuations: c.valuations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub header: Header,
    pub command: String,
    pub input: String,
    pub caps: CapsView,
    pub seed: Option<u64>,
    pub body: Body,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON with the timestamp zeroed, for byte comparisons.
    pub fn to_json_without_timestamp(&self) -> String {
        let mut r = self.clone();
        r.header.generated_at = 0;
        r.to_json()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} | {} {}",
            self.header.tool, self.header.version, self.command, self.input
        );
        match &self.body {
            Body::LatticeCheck(b) => b.render(&mut out),
            Body::Theorems(b) => b.render(&mut out),
            Body::Logic(b) => b.render(&mut out),
            Body::Bridge(b) => b.render(&mut out),
            Body::Replay(b) => b.render(&mut out),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    LatticeCheck(LatticeCheckBody),
    Theorems(TheoremsBody),
    Logic(LogicBody),
    Bridge(BridgeBody),
    Replay(ReplayBody),
}

/// A subobject as its encoding plus a readable description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubobjectView {
    pub encoded: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraView {
    pub carrier: Vec<String>,
    pub atoms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCheckBody {
    pub name: String,
    pub elements: Vec<String>,
    pub orthocomplement: Vec<(String, String)>,
    pub distributive: bool,
    pub include_trivial: bool,
    pub subalgebras: Vec<SubalgebraView>,
    /// Pairs `(i, j)` with member `i` strictly below member `j`.
    pub inclusions: Vec<(usize, usize)>,
    pub maximal: Vec<usize>,
    pub fiber_sizes: Vec<usize>,
    pub functorial: bool,
    /// `None` when enumeration exceeds the caps.
    pub subobjects: Option<usize>,
}

impl LatticeCheckBody {
    fn render(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "lattice {}: {} elements, valid orthomodular lattice",
            self.name,
            self.elements.len()
        );
        let _ = writeln!(out, "  distributive: {}", self.distributive);
        let _ = writeln!(
            out,
            "  boolean subalgebras: {}{}",
            self.subalgebras.len(),
            if self.include_trivial {
                ""
            } else {
                " (trivial context excluded)"
            }
        );
        for (i, b) in self.subalgebras.iter().enumerate() {
            let _ = writeln!(
                out,
                "    [{i}] {{{}}} atoms {{{}}}",
                b.carrier.join(", "),
                b.atoms.join(", ")
            );
        }
        let _ = writeln!(out, "  maximal: {:?}", self.maximal);
        let fibers: Vec<String> = self.fiber_sizes.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(out, "  fiber sizes: {}", fibers.join("/"));
        let _ = writeln!(out, "  restriction functorial: {}", self.functorial);
        match self.subobjects {
            Some(n) => {
                let _ = writeln!(out, "  clopen subobjects: {n}");
            }
            None => {
                let _ = writeln!(out, "  clopen subobjects: not enumerated (cap)");
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseView {
    pub id: String,
    pub statement: String,
    pub kind: String,
    pub holds: bool,
    pub checked: u64,
    pub witness: Option<String>,
    pub witness_subobjects: Vec<SubobjectView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteView {
    pub id: String,
    pub selector: String,
    pub title: String,
    pub passed: bool,
    pub clauses: Vec<ClauseView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremsBody {
    pub lattice: String,
    pub elements: usize,
    pub subalgebras: usize,
    pub subobjects: Option<usize>,
    pub suites: Vec<SuiteView>,
}

impl TheoremsBody {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "lattice {}: {} elements, {} subalgebras, {} subobjects",
            self.lattice,
            self.elements,
            self.subalgebras,
            self.subobjects
                .map_or("unenumerated".into(), |n| n.to_string())
        );
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{} [{}] {}: {}",
                s.selector,
                s.id,
                s.title,
                if s.passed { "PASS" } else { "FAIL" }
            );
            for c in &s.clauses {
                let mark = match (c.kind.as_str(), c.holds) {
                    ("law", true) => "ok  ",
                    ("law", false) => "FAIL",
                    ("search", true) => "found",
                    ("search", false) => "none",
                    (_, true) => "yes ",
                    (_, false) => "no  ",
                };
                let _ = writeln!(
                    out,
                    "  {mark} {:<28} {} ({} checked)",
                    c.id, c.statement, c.checked
                );
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "         witness: {w}");
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModeView {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleView {
    pub instance: String,
    pub premises: Vec<String>,
    pub formula: String,
    pub valuation: Vec<(String, SubobjectView)>,
    pub value: SubobjectView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckView {
    pub label: String,
    pub profile: String,
    /// `valid`, `counterexample` or `budget-exhausted`.
    pub status: String,
    pub instances: usize,
    pub checked: u64,
    pub mode: ModeView,
    pub notice: Option<String>,
    pub counterexample: Option<CounterexampleView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicBody {
    pub lattice: String,
    pub profile: String,
    pub mode: ModeView,
    /// `enumerated:<count>` or `random:<domain size>`.
    pub values: String,
    pub valid_axioms: usize,
    pub axioms: usize,
    pub valid_rules: usize,
    pub rules: usize,
    pub entries: Vec<CheckView>,
    /// The excluded middle under the other profiles, and the class-level
    /// searches for the two negations.
    pub comparison: Vec<CheckView>,
    pub class_level: Vec<ClauseView>,
}

impl LogicBody {
    fn render(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "lattice {} | profile {} | {} | values {}",
            self.lattice,
            self.profile,
            mode_text(&self.mode),
            self.values
        );
        let _ = writeln!(
            out,
            "axioms valid: {}/{}   rules valid: {}/{}",
            self.valid_axioms, self.axioms, self.valid_rules, self.rules
        );
        for e in &self.entries {
            render_check(out, e);
        }
        if !self.comparison.is_empty() || !self.class_level.is_empty() {
            let _ = writeln!(out, "comparison:");
            for e in &self.comparison {
                render_check(out, e);
            }
            for c in &self.class_level {
                let _ = writeln!(
                    out,
                    "  {:<10} {} ({})",
                    if c.holds { "found" } else { "none" },
                    c.statement,
                    c.witness.as_deref().unwrap_or("no witness")
                );
            }
        }
    }
}

fn mode_text(m: &ModeView) -> String {
    match m {
        ModeView::Exhaustive => "exhaustive".into(),
        ModeView::Sampled { seed, count } => format!("sampled seed={seed} count={count}"),
    }
}

fn render_check(out: &mut String, e: &CheckView) {
    let _ = writeln!(
        out,
        "  {:<9} {:<10} {:<16} {} valuations{}",
        e.label,
        e.profile,
        e.status,
        e.checked,
        e.notice
            .as_ref()
            .map_or(String::new(), |n| format!(" ({n})"))
    );
    if let Some(cx) = &e.counterexample {
        let _ = writeln!(out, "      instance {}", cx.instance);
        if !cx.premises.is_empty() {
            let _ = writeln!(out, "      premises {}", cx.premises.join(" ; "));
        }
        let _ = writeln!(out, "      formula  {}", cx.formula);
        for (v, s) in &cx.valuation {
            let _ = writeln!(out, "      {v} = {}", s.text);
        }
        let _ = writeln!(out, "      value    {}", cx.value.text);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextElementView {
    pub name: String,
    pub projection: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextView {
    pub dim: usize,
    pub elements: Vec<ContextElementView>,
    pub subalgebras: usize,
    pub include_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridValueView {
    pub q: String,
    pub value: SubobjectView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedekindView {
    pub holds: bool,
    pub bottom_at_first: bool,
    pub top_at_last: bool,
    pub monotone_violation: Option<usize>,
    pub right_continuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyView {
    pub flavor: String,
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
    pub holds: bool,
    pub monotone: bool,
    /// Meet of all values is 0.
    pub bottom: bool,
    /// Join of all values is 1.
    pub top: bool,
    pub continuity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripView {
    pub lambda: String,
    pub got: String,
    pub expected: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixView {
    pub name: String,
    pub eigenpairs: Vec<(String, String)>,
    pub family: FamilyView,
    pub name_values: Vec<GridValueView>,
    pub dedekind: Option<DedekindView>,
    pub g_family: Option<FamilyView>,
    pub round_trip: Vec<RoundTripView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityView {
    pub first: String,
    pub second: String,
    pub family_differs_at: Option<String>,
    pub class_differs_at: Option<String>,
    pub star_truth: SubobjectView,
    pub star_is_top: bool,
    pub heyting_truth: SubobjectView,
    pub heyting_is_top: bool,
    pub profile_truth: SubobjectView,
    pub g_differs_at: Option<String>,
    pub star_argument_holds: bool,
    pub star_chain_break: Option<String>,
    pub heyting_chain_break: Option<String>,
    pub grid_resolution_limited: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeBody {
    pub experiment: String,
    pub grid: Vec<String>,
    pub profile: String,
    pub checks: Vec<String>,
    pub context: ContextView,
    pub matrices: Vec<MatrixView>,
    pub injectivity: Vec<InjectivityView>,
}

impl BridgeBody {
    /// Every required check passed.
    pub fn passed(&self) -> bool {
        self.matrices.iter().all(|m| {
            m.family.holds
                && m.dedekind.as_ref().is_none_or(|d| d.holds)
                && m.g_family.as_ref().is_none_or(|g| g.holds)
                && m.round_trip.iter().all(|r| r.equal)
        }) && self.injectivity.iter().all(|i| i.star_argument_holds)
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(
            out,
            "experiment {} | profile {}",
            self.experiment, self.profile
        );
        let _ = writeln!(out, "grid {}", self.grid.join(" "));
        let _ = writeln!(
            out,
            "context: {} projections on Q^{}, {} subalgebras",
            self.context.elements.len(),
            self.context.dim,
            self.context.subalgebras
        );
        for e in &self.context.elements {
            let _ = writeln!(out, "  {:<4} {}", e.name, e.projection);
        }
        for m in &self.matrices {
            let _ = writeln!(out, "matrix {}", m.name);
            for (l, p) in &m.eigenpairs {
                let _ = writeln!(out, "  eigenvalue {l}: {p}");
            }
            let _ = writeln!(
                out,
                "  spectral family conditions: {}",
                pass(m.family.holds)
            );
            for v in &m.name_values {
                let _ = writeln!(out, "  u({}) = {}", v.q, v.value.text);
            }
            if let Some(d) = &m.dedekind {
                let _ = writeln!(
                    out,
                    "  dedekind: {} (bottom {}, top {}, monotone {}, right-continuous {})",
                    pass(d.holds),
                    d.bottom_at_first,
                    d.top_at_last,
                    d.monotone_violation.is_none(),
                    d.right_continuous
                );
            }
            if let Some(g) = &m.g_family {
                let _ = writeln!(
                    out,
                    "  G family: meet is 0: {}, right-continuous: {}, join is 1: {}",
                    g.bottom, g.continuity, g.top
                );
                let _ = writeln!(
                    out,
                    "    breakpoints {} | values {}",
                    g.breakpoints.join(" "),
                    g.values.join(" ")
                );
            }
            if !m.round_trip.is_empty() {
                let ok = m.round_trip.iter().all(|r| r.equal);
                let _ = writeln!(
                    out,
                    "  round trip at {} grid points: {}",
                    m.round_trip.len(),
                    pass(ok)
                );
                for r in m.round_trip.iter().filter(|r| !r.equal) {
                    let _ = writeln!(
                        out,
                        "    at {}: got {}, expected {}",
                        r.lambda, r.got, r.expected
                    );
                }
            }
        }
        for i in &self.injectivity {
            let _ = writeln!(out, "injectivity {} vs {}", i.first, i.second);
            let _ = writeln!(out, "  families differ at: {}", opt(&i.family_differs_at));
            let _ = writeln!(out, "  classes differ at:  {}", opt(&i.class_differs_at));
            let _ = writeln!(
                out,
                "  star ||u = v||:    {} (top: {})",
                i.star_truth.text, i.star_is_top
            );
            let _ = writeln!(
                out,
                "  heyting ||u = v||: {} (top: {})",
                i.heyting_truth.text, i.heyting_is_top
            );
            let _ = writeln!(out, "  G families differ at: {}", opt(&i.g_differs_at));
            let _ = writeln!(out, "  star argument holds: {}", i.star_argument_holds);
            let _ = writeln!(
                out,
                "  class excluded middle fails at: star {}, heyting {}",
                opt(&i.star_chain_break),
                opt(&i.heyting_chain_break)
            );
            if i.grid_resolution_limited {
                let _ = writeln!(out, "  spectra differ but the grid does not separate them");
            }
        }
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn opt(o: &Option<String>) -> &str {
    o.as_deref().unwrap_or("-")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayItem {
    pub label: String,
    /// `None` when the item carries nothing replayable.
    pub replayed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayBody {
    pub source: String,
    pub items: Vec<ReplayItem>,
}

impl ReplayBody {
    pub fn all_replayed(&self) -> bool {
        self.items.iter().all(|i| i.replayed != Some(false))
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "replaying witnesses from {}", self.source);
        for i in &self.items {
            let s = match i.replayed {
                Some(true) => "replayed",
                Some(false) => "MISMATCH",
                None => "skipped",
            };
            let _ = writeln!(out, "  {s:<9} {}", i.label);
        }
    }
}
