//! Exhaustive law suites for daseinisation, `ε`, the quotient `E`, the map
//! `h` and the star negation, plus the searched negative results.
//!
//! Every suite returns a [`Suite`] of [`Clause`]s. A clause of kind
//! [`ClauseKind::Law`] is a universally quantified statement checked over the
//! whole fixture; [`ClauseKind::Search`] clauses look for a witness and
//! report the search size when none exists.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::daseinisation::{
    partition_by_epsilon, top_class_members, Daseinisation, EQuotient, EpsilonClass,
};
use crate::lattice::Elem;
use crate::presheaf::ClopenSubobject;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseKind {
    Law,
    Search,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub id: &'static str,
    pub statement: &'static str,
    pub kind: ClauseKind,
    /// For laws: no violation found. For searches: a witness was found.
    /// For informational clauses: the stated property holds.
    pub holds: bool,
    /// Number of instances examined.
    pub checked: u64,
    pub witness: Option<String>,
    /// Subobjects making up the witness, in the order the clause names them.
    pub witness_subobjects: Vec<ClopenSubobject>,
}

impl Clause {
    fn new(id: &'static str, statement: &'static str, kind: ClauseKind) -> Self {
        Clause {
            id,
            statement,
            kind,
            holds: kind != ClauseKind::Search,
            checked: 0,
            witness: None,
            witness_subobjects: Vec::new(),
        }
    }

    fn law(id: &'static str, statement: &'static str) -> Self {
        Self::new(id, statement, ClauseKind::Law)
    }

    /// Records one instance of a universal statement; keeps the first
    /// counterexample.
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.holds = false;
            self.witness = Some(witness());
        }
    }

    fn check_with(
        &mut self,
        ok: bool,
        subs: &[&ClopenSubobject],
        witness: impl FnOnce() -> String,
    ) {
        let first = self.witness.is_none();
        self.check(ok, witness);
        if !ok && first {
            self.witness_subobjects = subs.iter().map(|s| (*s).clone()).collect();
        }
    }

    /// Records one candidate of an existential search.
    fn found(
        &mut self,
        hit: bool,
        subs: &[&ClopenSubobject],
        witness: impl FnOnce() -> String,
    ) -> bool {
        self.checked += 1;
        if hit && !self.holds {
            self.holds = true;
            self.witness = Some(witness());
            self.witness_subobjects = subs.iter().map(|s| (*s).clone()).collect();
        }
        self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suite {
    pub id: &'static str,
    pub title: &'static str,
    pub clauses: Vec<Clause>,
}

impl Suite {
    /// All laws hold. Searches and informational clauses do not affect this.
    pub fn passed(&self) -> bool {
        self.clauses
            .iter()
            .filter(|c| c.kind == ClauseKind::Law)
            .all(|c| c.holds)
    }

    pub fn clause(&self, id: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }
}

/// All subsets of `items` of size at most `k`.
fn small_subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(0usize, Vec::new())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, set) in &frontier {
            for (i, &x) in items.iter().enumerate().skip(*start) {
                let mut s: Vec<T> = set.clone();
                s.push(x);
                out.push(s.clone());
                next.push((i + 1, s));
            }
        }
        frontier = next;
    }
    out
}

/// Injectivity, join preservation (families of size ≤ 3 and the full
/// family), monotonicity, bounds, and the meet inequality for `δ`.
pub fn daseinisation_laws(d: &Daseinisation) -> Suite {
    let p = d.presheaf();
    let l = d.lattice();
    let elems: Vec<Elem> = l.elems().collect();
    let nm = |a: Elem| l.name(a);

    let mut inj = Clause::law("i", "δ is injective");
    let mut joins = Clause::law("ii", "δ(⋁aᵢ) = ⋁δ(aᵢ)");
    let mut mono = Clause::law("iii", "a ≤ b ⟹ δ(a) ≤ δ(b)");
    let mut bounds = Clause::law("iv", "δ(0) = ⊥ and δ(1) = ⊤");
    let mut meets = Clause::law("v", "δ(a ∧ b) ≤ δ(a) ∧ δ(b)");

    for &a in &elems {
        for &b in &elems {
            inj.check(a == b || d.daseinise(a) != d.daseinise(b), || {
                format!("δ({}) = δ({})", nm(a), nm(b))
            });
            if l.leq(a, b) {
                mono.check(p.leq_unchecked(d.daseinise(a), d.daseinise(b)), || {
                    format!("a = {}, b = {}", nm(a), nm(b))
                });
            }
            let lhs = d.daseinise(l.meet(a, b));
            let rhs = p.meet_unchecked(d.daseinise(a), d.daseinise(b));
            meets.check(p.leq_unchecked(lhs, &rhs), || {
                format!("a = {}, b = {}", nm(a), nm(b))
            });
        }
    }
    let mut families = small_subsets(&elems, 3);
    families.push(elems.clone());
    for fam in &families {
        let lhs = d.daseinise(l.join_all(fam.iter().copied()));
        let rhs = fam
            .iter()
            .fold(p.bottom(), |acc, &a| p.join_unchecked(&acc, d.daseinise(a)));
        joins.check(*lhs == rhs, || {
            let names: Vec<&str> = fam.iter().map(|&a| nm(a)).collect();
            format!("family {{{}}}", names.join(", "))
        });
    }
    bounds.check(*d.daseinise(l.bottom()) == p.bottom(), || "δ(0) ≠ ⊥".into());
    bounds.check(*d.daseinise(l.top()) == p.top(), || "δ(1) ≠ ⊤".into());

    Suite {
        id: "daseinisation",
        title: "properties of outer daseinisation",
        clauses: vec![inj, joins, mono, bounds, meets],
    }
}

/// Meet preservation, monotonicity, `ε∘δ = id`, `δ∘ε ≤ id`, the join
/// inequality, and the adjunction `δ(a) ≤ S ⟺ a ≤ ε(S)`.
pub fn epsilon_laws(d: &Daseinisation, subs: &[ClopenSubobject]) -> Suite {
    let p = d.presheaf();
    let l = d.lattice();
    let desc = |s: &ClopenSubobject| p.describe(s);

    let mut meets = Clause::law("i", "ε(⋀Sᵢ) = ⋀ε(Sᵢ)");
    let mut mono = Clause::law("ii", "S ≤ T ⟹ ε(S) ≤ ε(T)");
    let mut retract = Clause::law("iii", "ε(δ(a)) = a");
    let mut counit = Clause::law("iv", "δ(ε(S)) ≤ S");
    let mut joins = Clause::law("v", "ε(S ∨ T) ≥ ε(S) ∨ ε(T)");
    let mut adj = Clause::law("adjunction", "δ(a) ≤ S ⟺ a ≤ ε(S)");

    let eps: Vec<Elem> = subs.iter().map(|s| d.epsilon(s)).collect();
    for (i, s) in subs.iter().enumerate() {
        counit.check_with(p.leq_unchecked(d.daseinise(eps[i]), s), &[s], || {
            format!("S = {}", desc(s))
        });
        for a in l.elems() {
            adj.check_with(
                p.leq_unchecked(d.daseinise(a), s) == l.leq(a, eps[i]),
                &[s],
                || format!("a = {}, S = {}", l.name(a), desc(s)),
            );
        }
        for (j, t) in subs.iter().enumerate() {
            let m = p.meet_unchecked(s, t);
            meets.check_with(d.epsilon(&m) == l.meet(eps[i], eps[j]), &[s, t], || {
                format!("S = {}, T = {}", desc(s), desc(t))
            });
            if p.leq_unchecked(s, t) {
                mono.check_with(l.leq(eps[i], eps[j]), &[s, t], || {
                    format!("S = {}, T = {}", desc(s), desc(t))
                });
            }
            let j_st = p.join_unchecked(s, t);
            joins.check_with(
                l.leq(l.join(eps[i], eps[j]), d.epsilon(&j_st)),
                &[s, t],
                || format!("S = {}, T = {}", desc(s), desc(t)),
            );
            for (k, r) in subs.iter().enumerate() {
                let m3 = p.meet_unchecked(&m, r);
                meets.check_with(
                    d.epsilon(&m3) == l.meet_all([eps[i], eps[j], eps[k]]),
                    &[s, t, r],
                    || format!("S = {}, T = {}, R = {}", desc(s), desc(t), desc(r)),
                );
            }
        }
    }
    let all = subs
        .iter()
        .fold(p.top(), |acc, s| p.meet_unchecked(&acc, s));
    meets.check(d.epsilon(&all) == l.meet_all(eps.iter().copied()), || {
        "meet of the whole enumeration".into()
    });
    for a in l.elems() {
        retract.check(d.epsilon(d.daseinise(a)) == a, || {
            format!("a = {}", l.name(a))
        });
    }

    Suite {
        id: "epsilon",
        title: "properties of the upper adjoint ε",
        clauses: vec![meets, mono, retract, counit, joins, adj],
    }
}

/// `g∘f = id`, `f∘g = id`, and preservation of meet, join and order by
/// both maps. With an enumeration, also checks that grouping all subobjects
/// by `ε` yields exactly `|L|` classes.
pub fn quotient_laws(d: &Daseinisation, e: &EQuotient, subs: Option<&[ClopenSubobject]>) -> Suite {
    let l = d.lattice();
    let nm = |a: Elem| l.name(a);
    let cn = |c: EpsilonClass| l.name(c.epsilon_value());

    let mut gf = Clause::law("g∘f", "g(f(a)) = a");
    let mut fg = Clause::law("f∘g", "f(g(c)) = c");
    let mut f_meet = Clause::law("f-meet", "f(a ∧ b) = f(a) ∧ f(b)");
    let mut f_join = Clause::law("f-join", "f(a ∨ b) = f(a) ∨ f(b)");
    let mut f_order = Clause::law("f-order", "a ≤ b ⟺ f(a) ≤ f(b)");
    let mut g_meet = Clause::law("g-meet", "g(c ∧ k) = g(c) ∧ g(k)");
    let mut g_join = Clause::law("g-join", "g(c ∨ k) = g(c) ∨ g(k)");
    let mut g_order = Clause::law("g-order", "c ≤ k ⟺ g(c) ≤ g(k)");
    let mut cross = Clause::law("join-cross-check", "meet of upper bounds = f(g(c) ∨ g(k))");

    for a in l.elems() {
        gf.check(d.iso_g(d.iso_f(a)) == a, || format!("a = {}", nm(a)));
        for b in l.elems() {
            let w = || format!("a = {}, b = {}", nm(a), nm(b));
            f_meet.check(d.iso_f(l.meet(a, b)) == e.meet(d.iso_f(a), d.iso_f(b)), w);
            f_join.check(d.iso_f(l.join(a, b)) == e.join(d.iso_f(a), d.iso_f(b)), w);
            f_order.check(l.leq(a, b) == e.leq(d.iso_f(a), d.iso_f(b)), w);
        }
    }
    for &c in e.classes() {
        fg.check(d.iso_f(d.iso_g(c)) == c, || format!("c = [{}]", cn(c)));
        for &k in e.classes() {
            let w = || format!("c = [{}], k = [{}]", cn(c), cn(k));
            g_meet.check(d.iso_g(e.meet(c, k)) == l.meet(d.iso_g(c), d.iso_g(k)), w);
            g_join.check(d.iso_g(e.join(c, k)) == l.join(d.iso_g(c), d.iso_g(k)), w);
            g_order.check(e.leq(c, k) == l.leq(d.iso_g(c), d.iso_g(k)), w);
            cross.check(e.join(c, k) == e.join_via_transport(d, c, k), w);
        }
    }
    let mut clauses = vec![
        gf, fg, f_meet, f_join, f_order, g_meet, g_join, g_order, cross,
    ];
    if let Some(subs) = subs {
        let part = partition_by_epsilon(d, subs);
        let mut count = Clause::law("class-count", "grouping Sub_cl by ε gives |L| classes");
        count.check(part.nonempty_classes() == l.len(), || {
            format!(
                "{} classes for {} elements",
                part.nonempty_classes(),
                l.len()
            )
        });
        let mut fg_all = Clause::law("f∘g-subobjects", "f(g([S])) = [S] for every enumerated S");
        for s in subs {
            let c = d.class_of(s);
            fg_all.check_with(d.iso_f(d.iso_g(c)) == c, &[s], || d.presheaf().describe(s));
        }
        clauses.push(count);
        clauses.push(fg_all);
    }
    Suite {
        id: "quotient",
        title: "the quotient E is isomorphic to L",
        clauses,
    }
}

/// `ε∘h = g`, `h` preserves joins, `h` is injective.
pub fn h_map_laws(d: &Daseinisation, e: &EQuotient, subs: Option<&[ClopenSubobject]>) -> Suite {
    let p = d.presheaf();
    let l = d.lattice();
    let cn = |c: EpsilonClass| l.name(c.epsilon_value());

    let mut retract = Clause::law("i", "ε(h([S])) = ε(S)");
    let mut joins = Clause::law("ii", "h([S] ∨ [T]) = h([S]) ∨ h([T])");
    let mut inj = Clause::law("iii", "h is injective");

    for &c in e.classes() {
        retract.check(d.epsilon(d.map_h(c)) == d.iso_g(c), || {
            format!("c = [{}]", cn(c))
        });
        for &k in e.classes() {
            let w = || format!("c = [{}], k = [{}]", cn(c), cn(k));
            joins.check(
                *d.map_h(e.join(c, k)) == p.join_unchecked(d.map_h(c), d.map_h(k)),
                w,
            );
            inj.check(c == k || d.map_h(c) != d.map_h(k), w);
        }
    }
    if let Some(subs) = subs {
        for s in subs {
            retract.check_with(
                d.epsilon(d.map_h(d.class_of(s))) == d.epsilon(s),
                &[s],
                || p.describe(s),
            );
        }
    }
    Suite {
        id: "h-map",
        title: "the map h = δ∘ε on classes",
        clauses: vec![retract, joins, inj],
    }
}

/// The class of ⊤ contains ⊤ only.
pub fn top_class_laws(d: &Daseinisation, subs: &[ClopenSubobject]) -> Suite {
    let p = d.presheaf();
    let members = top_class_members(d, subs);
    let mut single = Clause::law("singleton", "ε(S) = 1 ⟹ S = ⊤");
    single.checked = subs.len() as u64;
    if members.len() != 1 || members[0] != p.top() {
        single.holds = false;
        let names: Vec<String> = members.iter().map(|s| p.describe(s)).collect();
        single.witness = Some(format!("{{{}}}", names.join(", ")));
        single.witness_subobjects = members;
    }
    Suite {
        id: "top-class",
        title: "the class of ⊤ is a singleton",
        clauses: vec![single],
    }
}

/// The nine properties of the star negation, the class-level laws, and a
/// search for a strict witness of `S ∧ S* > ⊥`.
pub fn star_laws(d: &Daseinisation, e: &EQuotient, subs: &[ClopenSubobject]) -> Suite {
    let p = d.presheaf();
    let l = d.lattice();
    let top = p.top();
    let desc = |s: &ClopenSubobject| p.describe(s);

    let mut lem = Clause::law("i", "S ∨ S* = ⊤");
    let mut dn = Clause::law("ii", "S** ≤ S");
    let mut tn = Clause::law("iii", "S*** = S*");
    let mut nc = Clause::law("iv", "S ∧ S* ≥ ⊥");
    let mut dm_meet = Clause::law("v", "(S ∧ T)* = S* ∨ T*");
    let mut dm_join = Clause::law("vi", "(S ∨ T)* ≤ S* ∧ T*");
    let mut eps_join = Clause::law("vii", "ε(S) ∨ ε(S*) = 1");
    let mut eps_meet = Clause::law("viii", "ε(S) ∧ ε(S*) = 0");
    let mut anti = Clause::law("ix", "S ≤ T ⟹ T* ≤ S*");
    let mut strict = Clause::new("iv-strict", "some S has S ∧ S* > ⊥", ClauseKind::Search);
    let mut class_lem = Clause::law("class-lem", "[S*] ∨ [S] = [⊤]");
    let mut class_star = Clause::law("class-star", "[f(a)]* = f(a⊥)");
    let mut g_star = Clause::law("g-star", "g([S]*) = g([S])⊥");
    let mut well_defined = Clause::law("star-well-defined", "ε(S) = ε(T) ⟹ S* = T*");

    let stars: Vec<ClopenSubobject> = subs.iter().map(|s| d.star(s)).collect();
    let top_class = d.class_of(&top);
    for (i, s) in subs.iter().enumerate() {
        let ss = &stars[i];
        let sss = d.star(ss);
        let ssss = d.star(&sss);
        lem.check_with(p.join_unchecked(s, ss) == top, &[s], || desc(s));
        dn.check_with(p.leq_unchecked(&sss, s), &[s], || desc(s));
        tn.check_with(ssss == *ss, &[s], || desc(s));
        let both = p.meet_unchecked(s, ss);
        nc.check_with(p.leq_unchecked(&p.bottom(), &both), &[s], || desc(s));
        strict.found(both != p.bottom(), &[s], || {
            format!("S = {}, S ∧ S* = {}", desc(s), desc(&both))
        });
        let (es, ess) = (d.epsilon(s), d.epsilon(ss));
        eps_join.check_with(l.join(es, ess) == l.top(), &[s], || desc(s));
        eps_meet.check_with(l.meet(es, ess) == l.bottom(), &[s], || desc(s));
        class_lem.check_with(
            e.join(d.class_of(ss), d.class_of(s)) == top_class,
            &[s],
            || desc(s),
        );
        g_star.check_with(
            d.iso_g(d.class_star(d.class_of(s))) == l.ortho(es),
            &[s],
            || desc(s),
        );
        for (j, t) in subs.iter().enumerate() {
            let ts = &stars[j];
            let w = || format!("S = {}, T = {}", desc(s), desc(t));
            dm_meet.check_with(
                d.star(&p.meet_unchecked(s, t)) == p.join_unchecked(ss, ts),
                &[s, t],
                w,
            );
            dm_join.check_with(
                p.leq_unchecked(&d.star(&p.join_unchecked(s, t)), &p.meet_unchecked(ss, ts)),
                &[s, t],
                w,
            );
            if p.leq_unchecked(s, t) {
                anti.check_with(p.leq_unchecked(ts, ss), &[s, t], w);
            }
            if d.epsilon(s) == d.epsilon(t) {
                well_defined.check_with(ss == ts, &[s, t], w);
            }
        }
    }
    for a in l.elems() {
        class_star.check(d.class_star(d.iso_f(a)) == d.iso_f(l.ortho(a)), || {
            format!("a = {}", l.name(a))
        });
    }

    Suite {
        id: "star",
        title: "the star negation S* = δ(ε(S)⊥)",
        clauses: vec![
            lem,
            dn,
            tn,
            nc,
            dm_meet,
            dm_join,
            eps_join,
            eps_meet,
            anti,
            strict,
            class_lem,
            class_star,
            g_star,
            well_defined,
        ],
    }
}

/// Searches for the failures that motivate the star negation, and records
/// the positive co-Heyting facts next to them.
pub fn negative_results(d: &Daseinisation, e: &EQuotient, subs: &[ClopenSubobject]) -> Suite {
    let p = d.presheaf();
    let l = d.lattice();
    let top = p.top();
    let top_class = d.class_of(&top);
    let desc = |s: &ClopenSubobject| p.describe(s);

    let mut heyting_lem = Clause::new(
        "heyting-lem-fails",
        "some S has ¬S ∨ S ≠ ⊤",
        ClauseKind::Search,
    );
    let mut class_co_lem = Clause::new(
        "coheyting-class-lem-fails",
        "some S has [~S] ∨ [S] ≠ [⊤]",
        ClauseKind::Search,
    );
    let mut heyting_class_lem = Clause::new(
        "heyting-class-lem-fails",
        "some S has [¬S] ∨ [S] ≠ [⊤]",
        ClauseKind::Search,
    );
    let mut co_lem = Clause::law("coheyting-lem", "~S ∨ S = ⊤");
    let mut co_nc = Clause::new(
        "coheyting-nc-fails",
        "some S has ~S ∧ S ≠ ⊥",
        ClauseKind::Search,
    );
    let mut eps_joins = Clause::new(
        "epsilon-join-fails",
        "some S, T have ε(S ∨ T) ≠ ε(S) ∨ ε(T)",
        ClauseKind::Search,
    );
    let mut star_is_heyting = Clause::new(
        "star-equals-heyting-not",
        "S* = ¬S for every S",
        ClauseKind::Info,
    );
    let mut star_class_complement = Clause::new(
        "star-class-complement",
        "[S*] is the complement of [S] in E",
        ClauseKind::Info,
    );

    for s in subs {
        let neg = p.heyting_not(s).expect("same parent");
        let co = p.coheyting_not(s).expect("same parent");
        heyting_lem.found(p.join_unchecked(&neg, s) != top, &[s], || {
            format!("S = {}, ¬S = {}", desc(s), desc(&neg))
        });
        heyting_class_lem.found(
            e.join(d.class_of(&neg), d.class_of(s)) != top_class,
            &[s],
            || format!("S = {}, ¬S = {}", desc(s), desc(&neg)),
        );
        class_co_lem.found(
            e.join(d.class_of(&co), d.class_of(s)) != top_class,
            &[s],
            || {
                format!(
                    "S = {}, ~S = {}, [~S] ∨ [S] = [{}]",
                    desc(s),
                    desc(&co),
                    l.name(e.join(d.class_of(&co), d.class_of(s)).epsilon_value())
                )
            },
        );
        co_lem.check_with(p.join_unchecked(&co, s) == top, &[s], || desc(s));
        co_nc.found(p.meet_unchecked(&co, s) != p.bottom(), &[s], || {
            format!(
                "S = {}, ~S ∧ S = {}",
                desc(s),
                desc(&p.meet_unchecked(&co, s))
            )
        });
        let ss = d.star(s);
        star_is_heyting.check_with(ss == neg, &[s], || {
            format!("S = {}, S* = {}, ¬S = {}", desc(s), desc(&ss), desc(&neg))
        });
        let (c, cs) = (d.class_of(s), d.class_of(&ss));
        star_class_complement.check_with(
            e.join(c, cs) == top_class && e.meet(c, cs) == d.iso_f(l.bottom()),
            &[s],
            || desc(s),
        );
    }
    'outer: for s in subs {
        for t in subs {
            let hit = d.epsilon(&p.join_unchecked(s, t)) != l.join(d.epsilon(s), d.epsilon(t));
            if eps_joins.found(hit, &[s, t], || {
                format!(
                    "S = {}, T = {}, ε(S ∨ T) = {}, ε(S) ∨ ε(T) = {}",
                    desc(s),
                    desc(t),
                    l.name(d.epsilon(&p.join_unchecked(s, t))),
                    l.name(l.join(d.epsilon(s), d.epsilon(t)))
                )
            }) {
                break 'outer;
            }
        }
    }

    Suite {
        id: "negative",
        title: "failures of the Heyting and co-Heyting negations",
        clauses: vec![
            heyting_lem,
            heyting_class_lem,
            class_co_lem,
            co_lem,
            co_nc,
            eps_joins,
            star_is_heyting,
            star_class_complement,
        ],
    }
}

/// Re-evaluates a searched or violated clause on stored witness
/// subobjects. Returns `None` for clause ids that carry no replayable
/// witness.
pub fn replay_clause(
    d: &Daseinisation,
    e: &EQuotient,
    suite: &str,
    clause: &str,
    subs: &[ClopenSubobject],
) -> Option<bool> {
    let p = d.presheaf();
    let l = d.lattice();
    let top = p.top();
    let s = subs.first()?;
    Some(match (suite, clause) {
        ("negative", "heyting-lem-fails") => {
            p.join_unchecked(&p.heyting_implies_unchecked(s, &p.bottom()), s) != top
        }
        ("negative", "heyting-class-lem-fails") => {
            let neg = p.heyting_implies_unchecked(s, &p.bottom());
            e.join(d.class_of(&neg), d.class_of(s)) != d.class_of(&top)
        }
        ("negative", "coheyting-class-lem-fails") => {
            let co = p.coheyting_minus_unchecked(&top, s);
            e.join(d.class_of(&co), d.class_of(s)) != d.class_of(&top)
        }
        ("negative", "coheyting-nc-fails") => {
            p.meet_unchecked(&p.coheyting_minus_unchecked(&top, s), s) != p.bottom()
        }
        ("negative", "epsilon-join-fails") => {
            let t = subs.get(1)?;
            d.epsilon(&p.join_unchecked(s, t)) != l.join(d.epsilon(s), d.epsilon(t))
        }
        ("negative", "star-equals-heyting-not") => {
            d.star(s) != p.heyting_implies_unchecked(s, &p.bottom())
        }
        ("star", "iv-strict") => p.meet_unchecked(s, &d.star(s)) != p.bottom(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_boolean, make_mo};

    #[test]
    fn small_subsets_sizes() {
        let items = [1, 2, 3, 4];
        // 1 + 4 + 6 + 4
        assert_eq!(small_subsets(&items, 3).len(), 15);
        assert_eq!(small_subsets(&items, 0), vec![Vec::<i32>::new()]);
    }

    #[test]
    fn mo2_suites_pass() {
        let d = Daseinisation::new(make_mo(2).unwrap()).unwrap();
        let e = d.e_quotient();
        let subs = d.presheaf().enumerate_subobjects().unwrap();
        for suite in [
            daseinisation_laws(&d),
            epsilon_laws(&d, &subs),
            quotient_laws(&d, &e, Some(&subs)),
            h_map_laws(&d, &e, Some(&subs)),
            top_class_laws(&d, &subs),
            star_laws(&d, &e, &subs),
        ] {
            assert!(suite.passed(), "{suite:#?}");
        }
        let star = star_laws(&d, &e, &subs);
        assert!(star.clause("iv-strict").unwrap().holds);
        let neg = negative_results(&d, &e, &subs);
        for id in [
            "heyting-lem-fails",
            "coheyting-class-lem-fails",
            "epsilon-join-fails",
            "coheyting-nc-fails",
        ] {
            assert!(neg.clause(id).unwrap().holds, "{id}");
        }
        assert!(neg.clause("coheyting-lem").unwrap().holds);
    }

    #[test]
    fn witnesses_replay() {
        let d = Daseinisation::new(make_mo(2).unwrap()).unwrap();
        let e = d.e_quotient();
        let subs = d.presheaf().enumerate_subobjects().unwrap();
        for suite in [negative_results(&d, &e, &subs), star_laws(&d, &e, &subs)] {
            for c in &suite.clauses {
                if c.kind == ClauseKind::Search && c.holds {
                    assert_eq!(
                        replay_clause(&d, &e, suite.id, c.id, &c.witness_subobjects),
                        Some(true),
                        "{}",
                        c.id
                    );
                }
            }
        }
    }

    #[test]
    fn two_element_algebra_has_no_negative_witnesses() {
        let d = Daseinisation::new(make_boolean(1).unwrap()).unwrap();
        let e = d.e_quotient();
        let subs = d.presheaf().enumerate_subobjects().unwrap();
        let neg = negative_results(&d, &e, &subs);
        assert!(!neg.clause("heyting-lem-fails").unwrap().holds);
        assert_eq!(neg.clause("heyting-lem-fails").unwrap().checked, 2);
    }
}
