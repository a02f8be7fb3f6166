//! Algebraic model checking over the clopen subobjects.
//!
//! A formula is *valid* when every valuation sends it to ⊤; a rule is valid
//! when every valuation that sends all premises to ⊤ also sends the
//! conclusion to ⊤.
//!
//! Text syntax, loosest binding first:
//!
//! ```text
//! formula := 'forall' ident [':' ident] '.' formula
//!          | disj ['->' formula]            (right associative)
//! disj    := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '~' unary | atom
//! atom    := ident | ident '=' ident | 'top' | 'bot' | '(' formula ')'
//! ```
//!
//! Quantifiers range over a named finite domain of subobjects; the default
//! domain is `sub`.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::caps::{CapExceeded, Caps};
use crate::daseinisation::Daseinisation;
use crate::presheaf::{ClopenSubobject, PointSet};

/// Name of the default quantifier domain.
pub const DEFAULT_DOMAIN: &str = "sub";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    /// Identity of the values of two variables: ⊤ if equal, ⊥ otherwise.
    Eq(String, String),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall {
        var: String,
        domain: String,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(name.into())
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let mut push = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Formula::Var(v) => push(v, bound),
            Formula::Eq(a, b) => {
                push(a, bound);
                push(b, bound);
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall { var, body, .. } => {
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Forall { .. } => 0,
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, x: &Formula, min: u8) -> fmt::Result {
            if x.precedence() < min {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        }
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Top => f.write_str("top"),
            Formula::Bottom => f.write_str("bot"),
            Formula::Not(x) => {
                f.write_str("~")?;
                wrap(f, x, 4)
            }
            Formula::And(a, b) => {
                wrap(f, a, 3)?;
                f.write_str(" & ")?;
                wrap(f, b, 4)
            }
            Formula::Or(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" | ")?;
                wrap(f, b, 3)
            }
            Formula::Implies(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" -> ")?;
                wrap(f, b, 1)
            }
            Formula::Forall { var, domain, body } => {
                if domain == DEFAULT_DOMAIN {
                    write!(f, "forall {var} . {body}")
                } else {
                    write!(f, "forall {var} : {domain} . {body}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown quantifier domain `{0}`")]
    UnknownDomain(String),
    #[error("unknown axiom {0}")]
    UnknownAxiom(u8),
    #[error("unknown rule {0}")]
    UnknownRule(u8),
    #[error("unknown semantics profile `{0}`")]
    UnknownProfile(String),
    #[error(transparent)]
    SizeCapExceeded(#[from] CapExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Amp,
    Bar,
    Tilde,
    Arrow,
    Eq,
    Dot,
    Colon,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, LogicError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'&' => Token::Amp,
            b'|' => Token::Bar,
            b'~' => Token::Tilde,
            b'=' => Token::Eq,
            b'.' => Token::Dot,
            b':' => Token::Colon,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((i, Token::Arrow));
                i += 2;
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_owned())));
                continue;
            }
            _ => {
                return Err(LogicError::Parse {
                    offset: i,
                    message: format!("unexpected character `{}`", c as char),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: &str) -> Result<T, LogicError> {
        Err(LogicError::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, LogicError> {
        match self.peek() {
            Some(Token::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        if let Some(Token::Ident(k)) = self.peek() {
            if k == "forall" {
                self.pos += 1;
                let var = self.ident()?;
                let domain = if self.eat(&Token::Colon) {
                    self.ident()?
                } else {
                    DEFAULT_DOMAIN.into()
                };
                if !self.eat(&Token::Dot) {
                    return self.err("expected `.` after quantifier");
                }
                let body = self.formula()?;
                return Ok(Formula::Forall {
                    var,
                    domain,
                    body: Box::new(body),
                });
            }
        }
        let lhs = self.disjunction()?;
        if self.eat(&Token::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut acc = self.conjunction()?;
        while self.eat(&Token::Bar) {
            let rhs = self.conjunction()?;
            acc = Formula::Or(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut acc = self.unary()?;
        while self.eat(&Token::Amp) {
            let rhs = self.unary()?;
            acc = Formula::And(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        if self.eat(&Token::Tilde) {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, LogicError> {
        if self.eat(&Token::LParen) {
            let f = self.formula()?;
            if !self.eat(&Token::RParen) {
                return self.err("expected `)`");
            }
            return Ok(f);
        }
        match self.peek() {
            Some(Token::Ident(s)) if s == "top" => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(Token::Ident(s)) if s == "bot" => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Some(Token::Ident(s)) if s == "forall" => self.formula(),
            Some(Token::Ident(_)) => {
                let v = self.ident()?;
                if self.eat(&Token::Eq) {
                    let w = self.ident()?;
                    Ok(Formula::Eq(v, w))
                } else {
                    Ok(Formula::Var(v))
                }
            }
            _ => self.err("expected formula"),
        }
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "forall" | "top" | "bot")
}

/// Parses the text syntax described in the module documentation.
pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.pos != p.tokens.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

fn parse_static(text: &str) -> Formula {
    parse_formula(text).expect("built-in schema parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Negation {
    Heyting,
    CoHeyting,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Implication {
    /// The Heyting residual.
    Heyting,
    /// `~S ∨ T`.
    CoHeyting,
    /// `S* ∨ T`.
    Star,
}

/// A named choice of negation and implication. The designated value is ⊤.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Profile {
    pub name: &'static str,
    pub negation: Negation,
    pub implication: Implication,
}

impl Profile {
    pub const STAR: Profile = Profile {
        name: "star",
        negation: Negation::Star,
        implication: Implication::Star,
    };
    pub const HEYTING: Profile = Profile {
        name: "heyting",
        negation: Negation::Heyting,
        implication: Implication::Heyting,
    };
    pub const COHEYTING: Profile = Profile {
        name: "coheyting",
        negation: Negation::CoHeyting,
        implication: Implication::CoHeyting,
    };

    pub fn by_name(name: &str) -> Result<Profile, LogicError> {
        match name {
            "star" => Ok(Self::STAR),
            "heyting" => Ok(Self::HEYTING),
            "coheyting" | "co" => Ok(Self::COHEYTING),
            _ => Err(LogicError::UnknownProfile(name.into())),
        }
    }
}

/// Binds formula connectives to operations on one presheaf.
pub struct Evaluator<'a> {
    model: &'a Daseinisation,
    profile: Profile,
    domains: BTreeMap<String, Vec<ClopenSubobject>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(model: &'a Daseinisation, profile: Profile) -> Self {
        Evaluator {
            model,
            profile,
            domains: BTreeMap::new(),
        }
    }

    pub fn with_domain(mut self, name: &str, members: Vec<ClopenSubobject>) -> Self {
        self.domains.insert(name.into(), members);
        self
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn negate(&self, s: &ClopenSubobject) -> ClopenSubobject {
        let p = self.model.presheaf();
        match self.profile.negation {
            Negation::Heyting => p.heyting_implies_unchecked(s, &p.bottom()),
            Negation::CoHeyting => p.coheyting_minus_unchecked(&p.top(), s),
            Negation::Star => self.model.star(s),
        }
    }

    pub fn implies(&self, s: &ClopenSubobject, t: &ClopenSubobject) -> ClopenSubobject {
        let p = self.model.presheaf();
        match self.profile.implication {
            Implication::Heyting => p.heyting_implies_unchecked(s, t),
            Implication::CoHeyting => {
                p.join_unchecked(&p.coheyting_minus_unchecked(&p.top(), s), t)
            }
            Implication::Star => self.model.star_implies(s, t),
        }
    }

    pub fn eval(
        &self,
        formula: &Formula,
        valuation: &[(String, ClopenSubobject)],
    ) -> Result<ClopenSubobject, LogicError> {
        let mut env: Vec<(&str, &ClopenSubobject)> =
            valuation.iter().map(|(k, v)| (k.as_str(), v)).collect();
        self.eval_in(formula, &mut env)
    }

    fn eval_in<'e>(
        &'e self,
        formula: &'e Formula,
        env: &mut Vec<(&'e str, &'e ClopenSubobject)>,
    ) -> Result<ClopenSubobject, LogicError> {
        let p = self.model.presheaf();
        let lookup = |env: &Vec<(&str, &ClopenSubobject)>, v: &str| {
            env.iter()
                .rev()
                .find(|(k, _)| *k == v)
                .map(|(_, s)| (*s).clone())
                .ok_or_else(|| LogicError::UnboundVariable(v.into()))
        };
        Ok(match formula {
            Formula::Var(v) => lookup(env, v)?,
            Formula::Eq(a, b) => {
                if lookup(env, a)? == lookup(env, b)? {
                    p.top()
                } else {
                    p.bottom()
                }
            }
            Formula::Top => p.top(),
            Formula::Bottom => p.bottom(),
            Formula::Not(x) => self.negate(&self.eval_in(x, env)?),
            Formula::And(a, b) => p.meet_unchecked(&self.eval_in(a, env)?, &self.eval_in(b, env)?),
            Formula::Or(a, b) => p.join_unchecked(&self.eval_in(a, env)?, &self.eval_in(b, env)?),
            Formula::Implies(a, b) => self.implies(&self.eval_in(a, env)?, &self.eval_in(b, env)?),
            Formula::Forall { var, domain, body } => {
                let members = self
                    .domains
                    .get(domain)
                    .ok_or_else(|| LogicError::UnknownDomain(domain.clone()))?;
                let mut acc = p.top();
                for m in members {
                    env.push((var.as_str(), m));
                    let v = self.eval_in(body, env);
                    env.pop();
                    acc = p.meet_unchecked(&acc, &v?);
                }
                acc
            }
        })
    }
}

/// How valuations are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

/// A valuation under which a formula or rule fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub instance: String,
    pub premises: Vec<Formula>,
    pub formula: Formula,
    pub valuation: Vec<(String, ClopenSubobject)>,
    /// Value of `formula` (the conclusion, for rules) under `valuation`.
    pub value: ClopenSubobject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Valid,
    Counterexample(Box<Counterexample>),
    /// Sampling found no counterexample; validity is not established.
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Axiom,
    Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub kind: CheckKind,
    pub number: u8,
    pub status: Status,
    pub instances: usize,
    /// Valuations visited across all instances.
    pub checked: u64,
    pub mode: SearchMode,
    /// Set when an exhaustive request fell back to sampling.
    pub notice: Option<String>,
}

impl CheckResult {
    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }

    pub fn label(&self) -> String {
        match self.kind {
            CheckKind::Axiom => format!("axiom {}", self.number),
            CheckKind::Rule => format!("rule {}", self.number),
        }
    }
}

/// One instance of a schema: premises (empty for axioms) and a formula.
#[derive(Debug, Clone)]
struct Instance {
    label: String,
    premises: Vec<Formula>,
    conclusion: Formula,
}

impl Instance {
    fn axiom(label: &str, text: &str) -> Self {
        Instance {
            label: label.into(),
            premises: Vec::new(),
            conclusion: parse_static(text),
        }
    }

    fn rule(label: &str, premises: &[&str], conclusion: &str) -> Self {
        Instance {
            label: label.into(),
            premises: premises.iter().map(|p| parse_static(p)).collect(),
            conclusion: parse_static(conclusion),
        }
    }

    fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in self
            .premises
            .iter()
            .chain(core::iter::once(&self.conclusion))
        {
            for v in f.free_vars() {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Bodies `Φ(x)` used to instantiate the quantifier schemas; `q` is a
/// parameter in which `x` does not occur.
const BODY_TEMPLATES: [&str; 6] = ["x", "x & q", "x | q", "~x", "q -> x", "x -> q"];

fn substitute(template: &str, var: &str) -> String {
    let mut out = String::new();
    for (i, tok) in template.split(' ').enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match tok {
            "x" => out.push_str(var),
            "~x" => {
                out.push('~');
                out.push_str(var);
            }
            t => out.push_str(t),
        }
    }
    out
}

pub const AXIOM_NUMBERS: core::ops::RangeInclusive<u8> = 1..=11;
pub const RULE_NUMBERS: core::ops::RangeInclusive<u8> = 1..=6;

fn axiom_instances(n: u8) -> Result<Vec<Instance>, LogicError> {
    let quantified = |build: &dyn Fn(&str) -> String| -> Vec<Instance> {
        BODY_TEMPLATES
            .iter()
            .map(|t| Instance::axiom(&format!("{n}[{t}]"), &build(t)))
            .collect()
    };
    Ok(match n {
        1 => vec![Instance::axiom("1", "p -> p")],
        2 => vec![
            Instance::axiom("2a", "p & q -> p"),
            Instance::axiom("2b", "p & q -> q"),
        ],
        3 => vec![Instance::axiom("3", "p & (q | r) -> (p & q) | (p & r)")],
        4 => vec![Instance::axiom("4", "(p -> q) & (q -> r) -> (p -> r)")],
        5 => vec![Instance::axiom("5", "(p -> q) & (p -> r) -> (p -> q & r)")],
        6 => vec![Instance::axiom("6", "(p -> ~q) -> (q -> ~p)")],
        7 => vec![Instance::axiom("7", "~~q -> q")],
        8 => vec![Instance::axiom("8", "p | ~p")],
        9 => quantified(&|t| {
            format!(
                "(forall x . {}) -> ({})",
                substitute(t, "x"),
                substitute(t, "y")
            )
        }),
        10 => quantified(&|t| {
            let b = substitute(t, "x");
            format!("(forall x . (p -> {b})) -> (p -> forall x . {b})")
        }),
        11 => quantified(&|t| {
            let b = substitute(t, "x");
            format!("(forall x . (p | {b})) -> (p | forall x . {b})")
        }),
        _ => return Err(LogicError::UnknownAxiom(n)),
    })
}

fn rule_instances(n: u8) -> Result<Vec<Instance>, LogicError> {
    Ok(match n {
        1 => vec![Instance::rule("1", &["p", "q"], "p & q")],
        2 => vec![Instance::rule("2", &["p", "p -> q"], "q")],
        3 => vec![Instance::rule("3", &["p", "~q"], "~(p -> q)")],
        4 => vec![Instance::rule(
            "4",
            &["p -> q", "r -> s"],
            "(q -> r) -> (p -> s)",
        )],
        // Generalization: the premise must hold for every value of `x`,
        // which is exactly designation of its universal closure.
        5 => BODY_TEMPLATES
            .iter()
            .map(|t| {
                let b = substitute(t, "x");
                Instance::rule(
                    &format!("5[{t}]"),
                    &[&format!("forall x . {b}")],
                    &format!("forall x . {b}"),
                )
            })
            .collect(),
        6 => BODY_TEMPLATES
            .iter()
            .map(|t| {
                Instance::rule(
                    &format!("6[{t}]"),
                    &["x = y"],
                    &format!("({}) -> ({})", substitute(t, "x"), substitute(t, "y")),
                )
            })
            .collect(),
        _ => return Err(LogicError::UnknownRule(n)),
    })
}

/// Where valuations come from.
#[derive(Debug, Clone)]
pub enum ValueSource {
    /// A complete enumeration of the subobjects.
    Enumerated(Vec<ClopenSubobject>),
    /// No enumeration is available; valuations are drawn by closing random
    /// part families under restriction. The quantifier domain is a sample
    /// of `domain_size` such subobjects.
    Random { domain_size: usize },
}

/// Checks axioms and rules against one presheaf under one profile.
pub struct Checker<'a> {
    model: &'a Daseinisation,
    source: ValueSource,
    caps: Caps,
}

impl<'a> Checker<'a> {
    pub fn new(model: &'a Daseinisation, source: ValueSource, caps: Caps) -> Self {
        Checker {
            model,
            source,
            caps,
        }
    }

    /// Uses the full enumeration when it fits in the caps and random
    /// subobjects otherwise.
    pub fn auto(model: &'a Daseinisation, caps: Caps) -> Self {
        let source = match model.presheaf().enumerate_subobjects_with_caps(&caps) {
            Ok(all) => ValueSource::Enumerated(all),
            Err(_) => ValueSource::Random { domain_size: 64 },
        };
        Checker {
            model,
            source,
            caps,
        }
    }

    pub fn source(&self) -> &ValueSource {
        &self.source
    }

    fn domain(&self, seed: u64) -> Vec<ClopenSubobject> {
        match &self.source {
            ValueSource::Enumerated(all) => all.clone(),
            ValueSource::Random { domain_size } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17) ^ 0x5eed_d0a1);
                (0..*domain_size)
                    .map(|_| self.random_subobject(&mut rng))
                    .collect()
            }
        }
    }

    fn random_subobject(&self, rng: &mut ChaCha8Rng) -> ClopenSubobject {
        let p = self.model.presheaf();
        let raw: Vec<PointSet> = p
            .fibers()
            .iter()
            .map(|f| rng.next_u64() & f.full())
            .collect();
        let mut parts = raw.clone();
        for (big, &r) in raw.iter().enumerate() {
            for &small in p.below(big) {
                parts[small] |= p.restrict_set(big, small, r);
            }
        }
        p.wrap(parts)
    }

    pub fn evaluator(&self, profile: Profile, seed: u64) -> Evaluator<'a> {
        Evaluator::new(self.model, profile).with_domain(DEFAULT_DOMAIN, self.domain(seed))
    }

    pub fn check_axiom(
        &self,
        n: u8,
        profile: Profile,
        mode: SearchMode,
    ) -> Result<CheckResult, LogicError> {
        let instances = axiom_instances(n)?;
        self.run(CheckKind::Axiom, n, &instances, profile, mode)
    }

    pub fn check_rule(
        &self,
        n: u8,
        profile: Profile,
        mode: SearchMode,
    ) -> Result<CheckResult, LogicError> {
        let instances = rule_instances(n)?;
        self.run(CheckKind::Rule, n, &instances, profile, mode)
    }

    fn run(
        &self,
        kind: CheckKind,
        number: u8,
        instances: &[Instance],
        profile: Profile,
        mode: SearchMode,
    ) -> Result<CheckResult, LogicError> {
        let seed = match mode {
            SearchMode::Sampled { seed, .. } => seed,
            SearchMode::Exhaustive => 0,
        };
        let eval = self.evaluator(profile, seed);
        let top = self.model.presheaf().top();
        let mut effective = mode;
        let mut notice = None;
        if let (SearchMode::Exhaustive, ValueSource::Random { .. }) = (mode, &self.source) {
            effective = SearchMode::Sampled {
                seed: 0,
                count: self.caps.valuations.min(100_000),
            };
            notice = Some("subobjects not enumerable under caps; sampled instead".into());
        }
        let mut checked = 0u64;
        for inst in instances {
            let vars = inst.vars();
            let mut visit = |valuation: Vec<(String, ClopenSubobject)>| -> Result<Option<Counterexample>, LogicError> {
                let premises_hold = inst
                    .premises
                    .iter()
                    .map(|f| eval.eval(f, &valuation).map(|v| v == top))
                    .collect::<Result<Vec<bool>, _>>()?
                    .into_iter()
                    .all(|b| b);
                if !premises_hold {
                    return Ok(None);
                }
                let value = eval.eval(&inst.conclusion, &valuation)?;
                if value == top {
                    return Ok(None);
                }
                Ok(Some(Counterexample {
                    instance: inst.label.clone(),
                    premises: inst.premises.clone(),
                    formula: inst.conclusion.clone(),
                    valuation,
                    value,
                }))
            };
            let found = match effective {
                SearchMode::Exhaustive => {
                    let ValueSource::Enumerated(all) = &self.source else {
                        unreachable!("exhaustive mode requires an enumeration")
                    };
                    let total = (all.len() as u64).checked_pow(vars.len() as u32);
                    match total {
                        Some(t) if t <= self.caps.valuations => {
                            exhaustive(&vars, all, &mut checked, &mut visit)?
                        }
                        _ => {
                            notice = Some(format!(
                                "{} valuations exceed the cap of {}; sampled instead",
                                total.map_or("too many".to_string(), |t| t.to_string()),
                                self.caps.valuations
                            ));
                            effective = SearchMode::Sampled {
                                seed: 0,
                                count: self.caps.valuations,
                            };
                            self.sampled(&vars, 0, self.caps.valuations, &mut checked, &mut visit)?
                        }
                    }
                }
                SearchMode::Sampled { seed, count } => {
                    self.sampled(&vars, seed, count, &mut checked, &mut visit)?
                }
            };
            if let Some(cx) = found {
                return Ok(CheckResult {
                    kind,
                    number,
                    status: Status::Counterexample(Box::new(cx)),
                    instances: instances.len(),
                    checked,
                    mode: effective,
                    notice,
                });
            }
        }
        let status = match effective {
            SearchMode::Exhaustive => Status::Valid,
            SearchMode::Sampled { .. } => Status::BudgetExhausted,
        };
        Ok(CheckResult {
            kind,
            number,
            status,
            instances: instances.len(),
            checked,
            mode: effective,
            notice,
        })
    }

    fn sampled<F>(
        &self,
        vars: &[String],
        seed: u64,
        count: u64,
        checked: &mut u64,
        visit: &mut F,
    ) -> Result<Option<Counterexample>, LogicError>
    where
        F: FnMut(Vec<(String, ClopenSubobject)>) -> Result<Option<Counterexample>, LogicError>,
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let valuation = vars
                .iter()
                .map(|v| {
                    let s = match &self.source {
                        ValueSource::Enumerated(all) => {
                            all[(rng.next_u64() % all.len() as u64) as usize].clone()
                        }
                        ValueSource::Random { .. } => self.random_subobject(&mut rng),
                    };
                    (v.clone(), s)
                })
                .collect();
            *checked += 1;
            if let Some(cx) = visit(valuation)? {
                return Ok(Some(cx));
            }
        }
        Ok(None)
    }
}

fn exhaustive<F>(
    vars: &[String],
    all: &[ClopenSubobject],
    checked: &mut u64,
    visit: &mut F,
) -> Result<Option<Counterexample>, LogicError>
where
    F: FnMut(Vec<(String, ClopenSubobject)>) -> Result<Option<Counterexample>, LogicError>,
{
    let k = vars.len();
    let mut idx = vec![0usize; k];
    loop {
        let valuation = vars
            .iter()
            .zip(&idx)
            .map(|(v, &i)| (v.clone(), all[i].clone()))
            .collect();
        *checked += 1;
        if let Some(cx) = visit(valuation)? {
            return Ok(Some(cx));
        }
        // odometer, last variable fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < all.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// All axioms and rules under one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub profile: Profile,
    pub mode: SearchMode,
    pub entries: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn axioms(&self) -> impl Iterator<Item = &CheckResult> {
        self.entries.iter().filter(|e| e.kind == CheckKind::Axiom)
    }

    pub fn rules(&self) -> impl Iterator<Item = &CheckResult> {
        self.entries.iter().filter(|e| e.kind == CheckKind::Rule)
    }

    pub fn entry(&self, kind: CheckKind, number: u8) -> Option<&CheckResult> {
        self.entries
            .iter()
            .find(|e| e.kind == kind && e.number == number)
    }

    pub fn valid_axioms(&self) -> usize {
        self.axioms().filter(|e| e.is_valid()).count()
    }
}

/// Runs axioms 1–11 and rules 1–6.
pub fn validation_report(
    checker: &Checker<'_>,
    profile: Profile,
    mode: SearchMode,
) -> Result<ValidationReport, LogicError> {
    let mut entries = Vec::new();
    for n in AXIOM_NUMBERS {
        entries.push(checker.check_axiom(n, profile, mode)?);
    }
    for n in RULE_NUMBERS {
        entries.push(checker.check_rule(n, profile, mode)?);
    }
    Ok(ValidationReport {
        profile,
        mode,
        entries,
    })
}

/// Re-evaluates a stored counterexample: premises must all be ⊤ and the
/// formula must evaluate to the recorded non-⊤ value.
pub fn replay(eval: &Evaluator<'_>, cx: &Counterexample) -> Result<bool, LogicError> {
    let top = eval.model.presheaf().top();
    for p in &cx.premises {
        if eval.eval(p, &cx.valuation)? != top {
            return Ok(false);
        }
    }
    let value = eval.eval(&cx.formula, &cx.valuation)?;
    Ok(value == cx.value && value != top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_boolean, make_mo};

    fn mo2() -> Daseinisation {
        Daseinisation::new(make_mo(2).unwrap()).unwrap()
    }

    #[test]
    fn parse_and_print() {
        for text in [
            "p -> p",
            "p & q -> p",
            "p & (q | r) -> p & q | p & r",
            "(p -> q) -> r",
            "~~q -> q",
            "forall x . x -> y",
            "(forall x : d . x & q) -> y & q",
            "x = y",
            "top | bot",
        ] {
            let f = parse_formula(text).unwrap();
            let printed = f.to_string();
            assert_eq!(parse_formula(&printed).unwrap(), f, "{text} -> {printed}");
        }
        assert!(matches!(
            parse_formula("p ->"),
            Err(LogicError::Parse { .. })
        ));
        assert!(matches!(
            parse_formula("p $ q"),
            Err(LogicError::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse_formula("(p"), Err(LogicError::Parse { .. })));
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse_formula("p -> q -> r").unwrap();
        assert_eq!(f, parse_formula("p -> (q -> r)").unwrap());
        assert_eq!(f.free_vars(), ["p", "q", "r"]);
    }

    #[test]
    fn substitution_of_templates() {
        assert_eq!(substitute("x & q", "y"), "y & q");
        assert_eq!(substitute("~x", "y"), "~y");
        assert_eq!(substitute("q -> x", "x"), "q -> x");
    }

    #[test]
    fn unbound_variable() {
        let d = mo2();
        let e = Evaluator::new(&d, Profile::STAR);
        assert_eq!(
            e.eval(&parse_formula("p").unwrap(), &[]),
            Err(LogicError::UnboundVariable("p".into()))
        );
        assert_eq!(
            e.eval(&parse_formula("forall x : nowhere . x").unwrap(), &[]),
            Err(LogicError::UnknownDomain("nowhere".into()))
        );
    }

    #[test]
    fn excluded_middle_by_profile() {
        let d = mo2();
        let p = d.presheaf();
        let a = d.lattice().elem("a").unwrap();
        let lem = parse_formula("p | ~p").unwrap();
        let val = vec![("p".to_string(), d.daseinise(a).clone())];
        let h = Evaluator::new(&d, Profile::HEYTING)
            .eval(&lem, &val)
            .unwrap();
        assert_eq!(&h, d.daseinise(a));
        assert_ne!(h, p.top());
        let s = Evaluator::new(&d, Profile::STAR).eval(&lem, &val).unwrap();
        assert_eq!(s, p.top());
        let id = parse_formula("p -> p").unwrap();
        for x in p.enumerate_subobjects().unwrap() {
            let v = vec![("p".to_string(), x)];
            assert_eq!(
                Evaluator::new(&d, Profile::STAR).eval(&id, &v).unwrap(),
                p.top()
            );
        }
    }

    #[test]
    fn heyting_axiom_eight_fails_on_mo2() {
        let d = mo2();
        let checker = Checker::auto(&d, Caps::default());
        let r = checker
            .check_axiom(8, Profile::HEYTING, SearchMode::Exhaustive)
            .unwrap();
        let Status::Counterexample(cx) = &r.status else {
            panic!("expected counterexample, got {r:?}");
        };
        let eval = checker.evaluator(Profile::HEYTING, 0);
        assert!(replay(&eval, cx).unwrap());
        let star = checker
            .check_axiom(8, Profile::STAR, SearchMode::Exhaustive)
            .unwrap();
        assert!(star.is_valid());
        assert_eq!(star.checked, 17);
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = mo2();
        let checker = Checker::auto(&d, Caps::default());
        let mode = SearchMode::Sampled { seed: 7, count: 50 };
        let a = checker.check_axiom(4, Profile::HEYTING, mode).unwrap();
        let b = checker.check_axiom(4, Profile::HEYTING, mode).unwrap();
        assert_eq!(a, b);
        assert!(!matches!(a.status, Status::Valid));
    }

    #[test]
    fn random_source_without_enumeration() {
        let d = Daseinisation::new(make_boolean(2).unwrap()).unwrap();
        let checker = Checker::new(&d, ValueSource::Random { domain_size: 8 }, Caps::default());
        let r = checker
            .check_axiom(1, Profile::STAR, SearchMode::Exhaustive)
            .unwrap();
        assert_eq!(r.status, Status::BudgetExhausted);
        assert!(r.notice.is_some());
        for s in checker.domain(3) {
            assert!(d.presheaf().is_restriction_closed(&s));
        }
    }

    #[test]
    fn unknown_schema_numbers() {
        let d = mo2();
        let checker = Checker::auto(&d, Caps::default());
        assert_eq!(
            checker.check_axiom(12, Profile::STAR, SearchMode::Exhaustive),
            Err(LogicError::UnknownAxiom(12))
        );
        assert_eq!(
            checker.check_rule(0, Profile::STAR, SearchMode::Exhaustive),
            Err(LogicError::UnknownRule(0))
        );
    }
}
