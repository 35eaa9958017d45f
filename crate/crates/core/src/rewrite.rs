//! Fuel-bounded rewriting with β and left-linear, symbol-headed rules.
//!
//! Rules are first-order: a left-hand side is `f(q1, .., qn)` where every
//! `qi` is a pattern variable or `g(x1, .., xk)` over pattern variables.
//! Pattern variables are the free variables of the left-hand side. Rules
//! are closed under substitution and context, and β is built in.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::term::{name, Name, Term, TermKind};

#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub name: Name,
    pub lhs: Term,
    pub rhs: Term,
}

impl RewriteRule {
    pub fn new(rule_name: &str, lhs: Term, rhs: Term) -> RewriteRule {
        RewriteRule {
            name: name(rule_name),
            lhs,
            rhs,
        }
    }

    fn head(&self) -> (&Name, &[Term]) {
        self.lhs.as_sym().expect("validated rule lhs")
    }

    /// Pattern variables in order of occurrence, with repetitions.
    fn pattern_var_occurrences(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.lhs.visit(&mut |t| {
            if let TermKind::Free(x) = t.kind() {
                out.push(x.clone());
            }
        });
        out
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ⟶ {}", self.name, self.lhs, self.rhs)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuleError {
    #[error("rule {0}: left-hand side must be a symbol application")]
    NotSymbolHeaded(Name),
    #[error("rule {0}: patterns may nest symbols at most two deep")]
    PatternTooDeep(Name),
    #[error("rule {rule}: variable {var} of the right-hand side is not bound by the left-hand side")]
    UnboundRhsVariable { rule: Name, var: Name },
    #[error("rule name {0} used twice")]
    DuplicateName(Name),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RewriteError {
    #[error("fuel exhausted while reducing {term}")]
    FuelExhausted { term: Term },
}

/// Budget of head-rewrite steps. `Fuel::unlimited()` never runs out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel {
    remaining: Option<u64>,
}

impl Fuel {
    pub const DEFAULT: u64 = 100_000;

    pub fn new(steps: u64) -> Fuel {
        Fuel {
            remaining: Some(steps),
        }
    }

    pub fn unlimited() -> Fuel {
        Fuel { remaining: None }
    }

    /// Command-line convention: 0 means unlimited.
    pub fn from_limit(steps: u64) -> Fuel {
        if steps == 0 {
            Fuel::unlimited()
        } else {
            Fuel::new(steps)
        }
    }

    pub fn remaining(&self) -> Option<u64> {
        self.remaining
    }

    fn consume(&mut self, at: &Term) -> Result<(), RewriteError> {
        match &mut self.remaining {
            None => Ok(()),
            Some(0) => Err(RewriteError::FuelExhausted { term: at.clone() }),
            Some(n) => {
                *n -= 1;
                Ok(())
            }
        }
    }
}

impl Default for Fuel {
    fn default() -> Fuel {
        Fuel::new(Fuel::DEFAULT)
    }
}

pub type Bindings = Vec<(Name, Term)>;

/// Ordered rules plus built-in β.
#[derive(Clone, Debug)]
pub struct RuleSet {
    rules: Vec<RewriteRule>,
    beta: bool,
    by_head: HashMap<Name, Vec<usize>>,
}

impl RuleSet {
    pub fn new(rules: Vec<RewriteRule>, beta: bool) -> Result<RuleSet, RuleError> {
        let mut seen = BTreeSet::new();
        for r in &rules {
            if !seen.insert(r.name.clone()) {
                return Err(RuleError::DuplicateName(r.name.clone()));
            }
            validate(r)?;
        }
        let mut by_head: HashMap<Name, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_head.entry(r.head().0.clone()).or_default().push(i);
        }
        Ok(RuleSet {
            rules,
            beta,
            by_head,
        })
    }

    pub fn beta_only() -> RuleSet {
        RuleSet::new(Vec::new(), true).expect("empty rule set")
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn beta_enabled(&self) -> bool {
        self.beta
    }

    pub fn rule(&self, rule_name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| &*r.name == rule_name)
    }

    fn candidates(&self, f: &str, arity: usize) -> impl Iterator<Item = &RewriteRule> {
        self.by_head
            .get(f)
            .into_iter()
            .flatten()
            .map(move |&i| &self.rules[i])
            .filter(move |r| r.head().1.len() == arity)
    }

    /// Head contraction of `t` by a symbol rule, without reducing arguments.
    pub fn contract_rule(&self, t: &Term) -> Option<(&RewriteRule, Term)> {
        let (f, args) = t.as_sym()?;
        self.candidates(f, args.len()).find_map(|r| {
            match_pattern(&r.lhs, t).map(|sigma| (r, r.rhs.subst_many(&sigma)))
        })
    }

    /// Weak head normal form, leftmost-outermost.
    pub fn whnf(&self, t: &Term, fuel: &mut Fuel) -> Result<Term, RewriteError> {
        let mut t = t.clone();
        loop {
            match t.kind() {
                TermKind::App(..) => {
                    let (head, args) = unwind(&t);
                    let head = self.whnf(&head, fuel)?;
                    match head.kind() {
                        TermKind::Abs(_, _, body) if self.beta => {
                            fuel.consume(&t)?;
                            let mut args = args.into_iter();
                            let first = args.next().expect("application spine");
                            t = Term::apps(body.instantiate(&first), args);
                        }
                        _ => return Ok(Term::apps(head, args)),
                    }
                }
                TermKind::Sym(f, args) => match self.try_rules(f, args, fuel)? {
                    Ok(next) => t = next,
                    Err(stuck) => return Ok(stuck),
                },
                _ => return Ok(t),
            }
        }
    }

    /// Tries each rule for `f`, reducing argument positions that the
    /// pattern inspects. Returns the contractum, or the (partially reduced)
    /// stuck term.
    fn try_rules(
        &self,
        f: &Name,
        args: &[Term],
        fuel: &mut Fuel,
    ) -> Result<Result<Term, Term>, RewriteError> {
        let mut args: Vec<Term> = args.to_vec();
        let mut reduced = vec![false; args.len()];
        let candidates: Vec<&RewriteRule> = self.candidates(f, args.len()).collect();
        for rule in candidates {
            let (_, pats) = rule.head();
            for (i, p) in pats.iter().enumerate() {
                if matches!(p.kind(), TermKind::Sym(..)) && !reduced[i] {
                    args[i] = self.whnf(&args[i], fuel)?;
                    reduced[i] = true;
                }
            }
            let subject = Term::sym_named(f.clone(), args.clone());
            if let Some(sigma) = match_pattern(&rule.lhs, &subject) {
                fuel.consume(&subject)?;
                return Ok(Ok(rule.rhs.subst_many(&sigma)));
            }
        }
        Ok(Err(Term::sym_named(f.clone(), args)))
    }

    /// Full normal form, leftmost-outermost.
    pub fn normalize(&self, t: &Term, fuel: &mut Fuel) -> Result<Term, RewriteError> {
        let h = self.whnf(t, fuel)?;
        Ok(match h.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => h,
            TermKind::App(f, a) => Term::app(self.normalize(f, fuel)?, self.normalize(a, fuel)?),
            TermKind::Abs(x, a, b) => {
                Term::abs_raw(x.clone(), self.normalize(a, fuel)?, self.normalize(b, fuel)?)
            }
            TermKind::Prod(x, a, b) => {
                Term::prod_raw(x.clone(), self.normalize(a, fuel)?, self.normalize(b, fuel)?)
            }
            TermKind::Sym(f, args) => {
                let args = args
                    .iter()
                    .map(|a| self.normalize(a, fuel))
                    .collect::<Result<_, _>>()?;
                Term::sym_named(f.clone(), args)
            }
        })
    }

    /// Full normal form, innermost-first. Only used to cross-check the
    /// production strategy.
    pub fn normalize_innermost(&self, t: &Term, fuel: &mut Fuel) -> Result<Term, RewriteError> {
        match t.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => Ok(t.clone()),
            TermKind::App(f, a) => {
                let f = self.normalize_innermost(f, fuel)?;
                let a = self.normalize_innermost(a, fuel)?;
                match f.kind() {
                    TermKind::Abs(_, _, body) if self.beta => {
                        fuel.consume(t)?;
                        self.normalize_innermost(&body.instantiate(&a), fuel)
                    }
                    _ => Ok(Term::app(f, a)),
                }
            }
            TermKind::Abs(x, a, b) => Ok(Term::abs_raw(
                x.clone(),
                self.normalize_innermost(a, fuel)?,
                self.normalize_innermost(b, fuel)?,
            )),
            TermKind::Prod(x, a, b) => Ok(Term::prod_raw(
                x.clone(),
                self.normalize_innermost(a, fuel)?,
                self.normalize_innermost(b, fuel)?,
            )),
            TermKind::Sym(f, args) => {
                let args = args
                    .iter()
                    .map(|a| self.normalize_innermost(a, fuel))
                    .collect::<Result<Vec<_>, _>>()?;
                let t = Term::sym_named(f.clone(), args);
                match self.contract_rule(&t) {
                    Some((_, next)) => {
                        fuel.consume(&t)?;
                        self.normalize_innermost(&next, fuel)
                    }
                    None => Ok(t),
                }
            }
        }
    }

    /// Normalize-and-compare. Sound for confluent rule sets.
    pub fn convertible(&self, a: &Term, b: &Term, fuel: &mut Fuel) -> Result<bool, RewriteError> {
        if a == b {
            return Ok(true);
        }
        Ok(self.normalize(a, fuel)? == self.normalize(b, fuel)?)
    }

    /// One leftmost-outermost step anywhere in `t`, if `t` is not normal.
    pub fn step(&self, t: &Term) -> Option<(Name, Term)> {
        if let TermKind::App(f, a) = t.kind() {
            if let TermKind::Abs(_, _, body) = f.kind() {
                if self.beta {
                    return Some((name("beta"), body.instantiate(a)));
                }
            }
        }
        if let Some((r, next)) = self.contract_rule(t) {
            return Some((r.name.clone(), next));
        }
        match t.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => None,
            TermKind::App(f, a) => {
                if let Some((r, f2)) = self.step(f) {
                    return Some((r, Term::app(f2, a.clone())));
                }
                self.step(a).map(|(r, a2)| (r, Term::app(f.clone(), a2)))
            }
            TermKind::Abs(x, a, b) => {
                if let Some((r, a2)) = self.step(a) {
                    return Some((r, Term::abs_raw(x.clone(), a2, b.clone())));
                }
                self.step(b)
                    .map(|(r, b2)| (r, Term::abs_raw(x.clone(), a.clone(), b2)))
            }
            TermKind::Prod(x, a, b) => {
                if let Some((r, a2)) = self.step(a) {
                    return Some((r, Term::prod_raw(x.clone(), a2, b.clone())));
                }
                self.step(b)
                    .map(|(r, b2)| (r, Term::prod_raw(x.clone(), a.clone(), b2)))
            }
            TermKind::Sym(f, args) => {
                for (i, arg) in args.iter().enumerate() {
                    if let Some((r, arg2)) = self.step(arg) {
                        let mut args = args.clone();
                        args[i] = arg2;
                        return Some((r, Term::sym_named(f.clone(), args)));
                    }
                }
                None
            }
        }
    }

    /// Normalize one step at a time, recording every intermediate term.
    /// The first element is `t` itself, the last is its normal form.
    pub fn normalize_traced(&self, t: &Term, fuel: &mut Fuel) -> Result<Vec<(Name, Term)>, RewriteError> {
        let mut trace = vec![(name("start"), t.clone())];
        let mut cur = t.clone();
        while let Some((rule, next)) = self.step(&cur) {
            fuel.consume(&cur)?;
            trace.push((rule, next.clone()));
            cur = next;
        }
        Ok(trace)
    }
}

fn validate(r: &RewriteRule) -> Result<(), RuleError> {
    let (_, pats) = r
        .lhs
        .as_sym()
        .ok_or_else(|| RuleError::NotSymbolHeaded(r.name.clone()))?;
    for p in pats {
        match p.kind() {
            TermKind::Free(_) => {}
            TermKind::Sym(_, inner) => {
                if inner.iter().any(|q| q.as_free().is_none()) {
                    return Err(RuleError::PatternTooDeep(r.name.clone()));
                }
            }
            _ => return Err(RuleError::PatternTooDeep(r.name.clone())),
        }
    }
    let vars: BTreeSet<Name> = r.pattern_var_occurrences().into_iter().collect();
    if let Some(v) = r.rhs.free_vars().into_iter().find(|v| !vars.contains(v)) {
        return Err(RuleError::UnboundRhsVariable {
            rule: r.name.clone(),
            var: v,
        });
    }
    Ok(())
}

fn unwind(t: &Term) -> (Term, Vec<Term>) {
    let mut args = Vec::new();
    let mut head = t.clone();
    while let TermKind::App(f, a) = head.kind() {
        args.push(a.clone());
        let f = f.clone();
        head = f;
    }
    args.reverse();
    (head, args)
}

/// Syntactic first-order matching of a rule pattern against `subject`.
/// Repeated pattern variables must bind α-equivalent terms.
pub fn match_pattern(pattern: &Term, subject: &Term) -> Option<Bindings> {
    let mut sigma = Bindings::new();
    if match_into(pattern, subject, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

fn match_into(pattern: &Term, subject: &Term, sigma: &mut Bindings) -> bool {
    match (pattern.kind(), subject.kind()) {
        (TermKind::Free(x), _) => match sigma.iter().find(|(y, _)| y == x) {
            Some((_, bound)) => bound == subject,
            None => {
                sigma.push((x.clone(), subject.clone()));
                true
            }
        },
        (TermKind::Sym(f, ps), TermKind::Sym(g, ts)) => {
            f == g
                && ps.len() == ts.len()
                && ps.iter().zip(ts).all(|(p, t)| match_into(p, t, sigma))
        }
        _ => false,
    }
}

/// Problems that break orthogonality (hence the confluence argument).
#[derive(Clone, Debug, PartialEq)]
pub enum OrthogonalityIssue {
    NonLeftLinear {
        rule: Name,
        var: Name,
    },
    /// `inner`'s left-hand side unifies with the subterm of `outer`'s
    /// left-hand side at `position` (argument indices from the root).
    Overlap {
        outer: Name,
        inner: Name,
        position: Vec<usize>,
    },
}

impl fmt::Display for OrthogonalityIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrthogonalityIssue::NonLeftLinear { rule, var } => {
                write!(f, "rule {rule} is not left-linear in {var}")
            }
            OrthogonalityIssue::Overlap {
                outer,
                inner,
                position,
            } => write!(f, "rule {inner} overlaps rule {outer} at position {position:?}"),
        }
    }
}

/// Left-linearity violations and critical overlaps between rule left-hand
/// sides. β cannot overlap symbol-headed patterns, so only the listed rules
/// are compared.
pub fn check_orthogonality(rules: &RuleSet) -> Vec<OrthogonalityIssue> {
    let mut issues = Vec::new();
    for r in rules.rules() {
        let mut seen = BTreeSet::new();
        for v in r.pattern_var_occurrences() {
            if !seen.insert(v.clone()) {
                issues.push(OrthogonalityIssue::NonLeftLinear {
                    rule: r.name.clone(),
                    var: v,
                });
            }
        }
    }
    for outer in rules.rules() {
        for (position, sub) in symbol_positions(&outer.lhs) {
            for inner in rules.rules() {
                if position.is_empty() && std::ptr::eq(outer, inner) {
                    continue;
                }
                let renamed = rename_vars(&inner.lhs, "'");
                if unify(&sub, &renamed).is_some() {
                    issues.push(OrthogonalityIssue::Overlap {
                        outer: outer.name.clone(),
                        inner: inner.name.clone(),
                        position: position.clone(),
                    });
                }
            }
        }
    }
    // each root overlap shows up once per ordering; keep one
    let mut dedup: Vec<OrthogonalityIssue> = Vec::new();
    for issue in issues {
        let mirrored = match &issue {
            OrthogonalityIssue::Overlap {
                outer,
                inner,
                position,
            } if position.is_empty() => Some(OrthogonalityIssue::Overlap {
                outer: inner.clone(),
                inner: outer.clone(),
                position: Vec::new(),
            }),
            _ => None,
        };
        if !dedup.contains(&issue) && mirrored.is_none_or(|m| !dedup.contains(&m)) {
            dedup.push(issue);
        }
    }
    dedup
}

fn symbol_positions(t: &Term) -> Vec<(Vec<usize>, Term)> {
    let mut out = Vec::new();
    fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Term)>) {
        if let TermKind::Sym(_, args) = t.kind() {
            out.push((path.clone(), t.clone()));
            for (i, a) in args.iter().enumerate() {
                path.push(i);
                go(a, path, out);
                path.pop();
            }
        }
    }
    go(t, &mut Vec::new(), &mut out);
    out
}

fn rename_vars(t: &Term, suffix: &str) -> Term {
    let vars = t.free_vars();
    let map: Bindings = vars
        .into_iter()
        .map(|v| {
            let renamed = Term::var(&format!("{v}{suffix}"));
            (v, renamed)
        })
        .collect();
    t.subst_many(&map)
}

/// Syntactic unification over symbol applications and variables.
fn unify(a: &Term, b: &Term) -> Option<Bindings> {
    let mut sigma = Bindings::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((s, t)) = stack.pop() {
        let s = s.subst_many(&sigma);
        let t = t.subst_many(&sigma);
        if s == t {
            continue;
        }
        match (s.kind(), t.kind()) {
            (TermKind::Free(x), _) => {
                if t.occurs_free(x) {
                    return None;
                }
                bind(&mut sigma, x.clone(), t.clone());
            }
            (_, TermKind::Free(y)) => {
                if s.occurs_free(y) {
                    return None;
                }
                bind(&mut sigma, y.clone(), s.clone());
            }
            (TermKind::Sym(f, xs), TermKind::Sym(g, ys)) if f == g && xs.len() == ys.len() => {
                stack.extend(xs.iter().cloned().zip(ys.iter().cloned()));
            }
            _ => return None,
        }
    }
    Some(sigma)
}

fn bind(sigma: &mut Bindings, x: Name, t: Term) {
    let single = [(x.clone(), t.clone())];
    for (_, u) in sigma.iter_mut() {
        *u = u.subst_many(&single);
    }
    sigma.push((x, t));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Sort;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn el(t: Term) -> Term {
        Term::sym("El", vec![t])
    }

    fn prop() -> Term {
        Term::sym("prop", vec![])
    }

    #[test]
    fn match_binds_variable() {
        let s = match_pattern(&el(v("v")), &el(prop())).unwrap();
        assert_eq!(s, vec![(name("v"), prop())]);
    }

    #[test]
    fn match_fails_on_other_head() {
        assert!(match_pattern(&el(v("v")), &Term::sym("Prf", vec![v("p")])).is_none());
    }

    #[test]
    fn match_nested_pattern_binds_five() {
        let pat = Term::sym(
            "fst",
            vec![
                v("t0"),
                v("p0"),
                Term::sym("pair'", vec![v("t1"), v("p1"), v("m")]),
            ],
        );
        let subject = Term::sym(
            "fst",
            vec![
                v("A"),
                v("P"),
                Term::sym("pair'", vec![v("B"), v("Q"), v("x")]),
            ],
        );
        let s = match_pattern(&pat, &subject).unwrap();
        let names: Vec<&str> = s.iter().map(|(x, _)| &**x).collect();
        assert_eq!(names, ["t0", "p0", "t1", "p1", "m"]);
    }

    #[test]
    fn whnf_beta_and_stuck_var() {
        let rs = RuleSet::beta_only();
        let id = Term::abs("x", v("T"), v("x"));
        let mut fuel = Fuel::default();
        assert_eq!(rs.whnf(&Term::app(id, v("u")), &mut fuel).unwrap(), v("u"));
        assert_eq!(rs.whnf(&v("x"), &mut fuel).unwrap(), v("x"));
        assert_eq!(fuel.remaining(), Some(Fuel::DEFAULT - 1));
    }

    #[test]
    fn fuel_exhaustion_is_an_error() {
        // ω = (λx. x x)(λx. x x)
        let d = Term::abs("x", v("T"), Term::app(v("x"), v("x")));
        let omega = Term::app(d.clone(), d);
        let rs = RuleSet::beta_only();
        let err = rs.normalize(&omega, &mut Fuel::new(50)).unwrap_err();
        assert!(matches!(err, RewriteError::FuelExhausted { .. }));
    }

    #[test]
    fn normalize_sort_is_identity() {
        let rs = RuleSet::beta_only();
        let p = Term::sort(Sort::Prop);
        assert_eq!(rs.normalize(&p, &mut Fuel::default()).unwrap(), p);
    }

    #[test]
    fn beta_convertible_up_to_alpha() {
        let rs = RuleSet::beta_only();
        let a = Term::abs("x", v("T"), v("x"));
        let b = Term::abs("y", v("T"), v("y"));
        assert!(rs.convertible(&a, &b, &mut Fuel::default()).unwrap());
    }

    #[test]
    fn rejects_deep_patterns() {
        let r = RewriteRule::new(
            "deep",
            Term::sym("f", vec![Term::sym("g", vec![Term::sym("h", vec![])])]),
            Term::sym("h", vec![]),
        );
        assert_eq!(
            RuleSet::new(vec![r], false).unwrap_err(),
            RuleError::PatternTooDeep(name("deep"))
        );
    }

    #[test]
    fn rejects_unbound_rhs_variable() {
        let r = RewriteRule::new("bad", Term::sym("f", vec![v("x")]), v("y"));
        assert!(matches!(
            RuleSet::new(vec![r], false),
            Err(RuleError::UnboundRhsVariable { .. })
        ));
    }

    #[test]
    fn orthogonality_reports_nonlinear() {
        let r = RewriteRule::new("dup", Term::sym("f", vec![v("x"), v("x")]), v("x"));
        let rs = RuleSet::new(vec![r], false).unwrap();
        let issues = check_orthogonality(&rs);
        assert_eq!(
            issues,
            vec![OrthogonalityIssue::NonLeftLinear {
                rule: name("dup"),
                var: name("x")
            }]
        );
    }

    #[test]
    fn orthogonality_reports_overlap() {
        let a = RewriteRule::new("a", el(prop()), Term::sym("A", vec![]));
        let b = RewriteRule::new("b", el(v("v")), Term::sym("B", vec![]));
        let rs = RuleSet::new(vec![a, b], false).unwrap();
        let issues = check_orthogonality(&rs);
        assert_eq!(issues.len(), 1);
        assert!(matches!(&issues[0], OrthogonalityIssue::Overlap { position, .. } if position.is_empty()));
    }

    #[test]
    fn nested_overlap_is_found() {
        // f(g(x)) -> x  and  g(a) -> b overlap below the root
        let r1 = RewriteRule::new(
            "r1",
            Term::sym("f", vec![Term::sym("g", vec![v("x")])]),
            v("x"),
        );
        let r2 = RewriteRule::new("r2", Term::sym("g", vec![v("y")]), v("y"));
        let rs = RuleSet::new(vec![r1, r2], false).unwrap();
        let issues = check_orthogonality(&rs);
        assert_eq!(
            issues,
            vec![OrthogonalityIssue::Overlap {
                outer: name("r1"),
                inner: name("r2"),
                position: vec![0],
            }]
        );
    }

    #[test]
    fn whnf_reduces_inspected_argument() {
        // f(g(x)) -> x ; c -> g(d) as a nullary symbol rule
        let r1 = RewriteRule::new(
            "r1",
            Term::sym("f", vec![Term::sym("g", vec![v("x")])]),
            v("x"),
        );
        let r2 = RewriteRule::new(
            "r2",
            Term::sym("c", vec![]),
            Term::sym("g", vec![Term::sym("d", vec![])]),
        );
        let rs = RuleSet::new(vec![r1, r2], true).unwrap();
        let t = Term::sym("f", vec![Term::sym("c", vec![])]);
        assert_eq!(
            rs.whnf(&t, &mut Fuel::default()).unwrap(),
            Term::sym("d", vec![])
        );
    }

    #[test]
    fn traced_normal_form_agrees() {
        let rs = RuleSet::beta_only();
        let id = Term::abs("x", v("T"), v("x"));
        let t = Term::app(
            Term::abs("f", v("U"), Term::app(v("f"), Term::app(id.clone(), v("a")))),
            id,
        );
        let trace = rs.normalize_traced(&t, &mut Fuel::default()).unwrap();
        let last = &trace.last().unwrap().1;
        assert_eq!(last, &rs.normalize(&t, &mut Fuel::default()).unwrap());
        assert_eq!(last, &v("a"));
    }
}
