//! Terms shared by both kernels.
//!
//! Bound variables are de Bruijn indices and free variables are names
//! (the locally nameless style). Binders keep the name they were written
//! with as a display hint only, so α-equivalence is plain structural
//! equality and `==` on [`Term`] *is* `alpha_eq`.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Identifier for free variables, binder hints and signature symbols.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

/// Sorts of both systems. `Prop`, `Type` and `Kind` belong to PVS-Cert,
/// `TYPE` and `KIND` to the λΠ side; the kernels reject foreign sorts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Prop,
    Type,
    Kind,
    LfType,
    LfKind,
}

impl Sort {
    pub fn as_str(self) -> &'static str {
        match self {
            Sort::Prop => "Prop",
            Sort::Type => "Type",
            Sort::Kind => "Kind",
            Sort::LfType => "TYPE",
            Sort::LfKind => "KIND",
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub enum TermKind {
    Sort(Sort),
    /// De Bruijn index, 0 is the innermost enclosing binder.
    Bound(u32),
    Free(Name),
    App(Term, Term),
    Abs(Name, Term, Term),
    Prod(Name, Term, Term),
    /// Fully applied signature symbol.
    Sym(Name, Vec<Term>),
}

/// Immutable, cheaply clonable term.
#[derive(Clone)]
pub struct Term(Arc<TermKind>);

impl Term {
    pub fn kind(&self) -> &TermKind {
        &self.0
    }

    pub fn sort(s: Sort) -> Term {
        Term(Arc::new(TermKind::Sort(s)))
    }

    pub fn bound(i: u32) -> Term {
        Term(Arc::new(TermKind::Bound(i)))
    }

    pub fn var(x: &str) -> Term {
        Term::free(name(x))
    }

    pub fn free(x: Name) -> Term {
        Term(Arc::new(TermKind::Free(x)))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term(Arc::new(TermKind::App(f, a)))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    /// Abstraction whose body already uses `Bound(0)` for the binder.
    pub fn abs_raw(hint: Name, annot: Term, body: Term) -> Term {
        Term(Arc::new(TermKind::Abs(hint, annot, body)))
    }

    pub fn prod_raw(hint: Name, dom: Term, cod: Term) -> Term {
        Term(Arc::new(TermKind::Prod(hint, dom, cod)))
    }

    /// `λx:annot. body` where `x` occurs free in `body`.
    pub fn abs(x: &str, annot: Term, body: Term) -> Term {
        let body = body.close(x);
        Term::abs_raw(name(x), annot, body)
    }

    /// `Πx:dom. cod` where `x` occurs free in `cod`.
    pub fn prod(x: &str, dom: Term, cod: Term) -> Term {
        let cod = cod.close(x);
        Term::prod_raw(name(x), dom, cod)
    }

    /// Non-dependent product `dom -> cod`.
    pub fn arrow(dom: Term, cod: Term) -> Term {
        Term::prod_raw(name("_"), dom, cod.shift(1, 0))
    }

    pub fn sym(f: &str, args: Vec<Term>) -> Term {
        Term(Arc::new(TermKind::Sym(name(f), args)))
    }

    pub fn sym_named(f: Name, args: Vec<Term>) -> Term {
        Term(Arc::new(TermKind::Sym(f, args)))
    }

    pub fn as_sort(&self) -> Option<Sort> {
        match self.kind() {
            TermKind::Sort(s) => Some(*s),
            _ => None,
        }
    }

    pub fn as_free(&self) -> Option<&Name> {
        match self.kind() {
            TermKind::Free(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<(&Name, &[Term])> {
        match self.kind() {
            TermKind::Sym(f, args) => Some((f, args)),
            _ => None,
        }
    }

    pub fn is_sym(&self, f: &str) -> bool {
        matches!(self.kind(), TermKind::Sym(g, _) if &**g == f)
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => 1,
            TermKind::App(a, b) | TermKind::Abs(_, a, b) | TermKind::Prod(_, a, b) => {
                1 + a.size() + b.size()
            }
            TermKind::Sym(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// True when no bound index escapes its binders.
    pub fn is_locally_closed(&self) -> bool {
        self.loose_bound_above() == 0
    }

    /// One more than the largest loose bound index, 0 if none.
    fn loose_bound_above(&self) -> u32 {
        match self.kind() {
            TermKind::Sort(_) | TermKind::Free(_) => 0,
            TermKind::Bound(i) => i + 1,
            TermKind::App(a, b) => a.loose_bound_above().max(b.loose_bound_above()),
            TermKind::Abs(_, a, b) | TermKind::Prod(_, a, b) => a
                .loose_bound_above()
                .max(b.loose_bound_above().saturating_sub(1)),
            TermKind::Sym(_, args) => args.iter().map(Term::loose_bound_above).max().unwrap_or(0),
        }
    }

    /// Whether `Bound(depth)` (relative to this term) occurs.
    pub fn has_loose_bound(&self, depth: u32) -> bool {
        match self.kind() {
            TermKind::Sort(_) | TermKind::Free(_) => false,
            TermKind::Bound(i) => *i == depth,
            TermKind::App(a, b) => a.has_loose_bound(depth) || b.has_loose_bound(depth),
            TermKind::Abs(_, a, b) | TermKind::Prod(_, a, b) => {
                a.has_loose_bound(depth) || b.has_loose_bound(depth + 1)
            }
            TermKind::Sym(_, args) => args.iter().any(|t| t.has_loose_bound(depth)),
        }
    }

    /// Rebuild the term bottom-up through `f`, which receives the current
    /// binder depth and may short-circuit a node by returning `Some`.
    fn map_at(&self, depth: u32, f: &mut impl FnMut(&Term, u32) -> Option<Term>) -> Term {
        if let Some(t) = f(self, depth) {
            return t;
        }
        match self.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => self.clone(),
            TermKind::App(a, b) => {
                let (a2, b2) = (a.map_at(depth, f), b.map_at(depth, f));
                if a2.ptr_eq(a) && b2.ptr_eq(b) {
                    self.clone()
                } else {
                    Term::app(a2, b2)
                }
            }
            TermKind::Abs(x, a, b) => {
                let (a2, b2) = (a.map_at(depth, f), b.map_at(depth + 1, f));
                if a2.ptr_eq(a) && b2.ptr_eq(b) {
                    self.clone()
                } else {
                    Term::abs_raw(x.clone(), a2, b2)
                }
            }
            TermKind::Prod(x, a, b) => {
                let (a2, b2) = (a.map_at(depth, f), b.map_at(depth + 1, f));
                if a2.ptr_eq(a) && b2.ptr_eq(b) {
                    self.clone()
                } else {
                    Term::prod_raw(x.clone(), a2, b2)
                }
            }
            TermKind::Sym(g, args) => {
                let new: Vec<Term> = args.iter().map(|t| t.map_at(depth, f)).collect();
                if new.iter().zip(args).all(|(n, o)| n.ptr_eq(o)) {
                    self.clone()
                } else {
                    Term::sym_named(g.clone(), new)
                }
            }
        }
    }

    /// Add `by` to every bound index `>= cutoff`.
    pub fn shift(&self, by: u32, cutoff: u32) -> Term {
        if by == 0 {
            return self.clone();
        }
        self.map_at(cutoff, &mut |t, depth| match t.kind() {
            TermKind::Bound(i) if *i >= depth => Some(Term::bound(i + by)),
            TermKind::Sort(_) | TermKind::Free(_) => Some(t.clone()),
            _ => None,
        })
    }

    /// Substitute `arg` for `Bound(0)` of a binder body, lowering the
    /// remaining loose indices. `arg` may itself contain loose indices.
    pub fn instantiate(&self, arg: &Term) -> Term {
        self.map_at(0, &mut |t, depth| match t.kind() {
            TermKind::Bound(i) if *i == depth => Some(arg.shift(depth, 0)),
            TermKind::Bound(i) if *i > depth => Some(Term::bound(i - 1)),
            TermKind::Sort(_) | TermKind::Free(_) => Some(t.clone()),
            _ => None,
        })
    }

    /// Instantiate the `n` outermost-to-innermost binders of a telescope at
    /// once: `Bound(k)` (at depth 0) becomes `args[n - 1 - k]`.
    pub fn instantiate_many(&self, args: &[Term]) -> Term {
        let n = args.len() as u32;
        if n == 0 {
            return self.clone();
        }
        self.map_at(0, &mut |t, depth| match t.kind() {
            TermKind::Bound(i) if *i >= depth && *i < depth + n => {
                let k = i - depth;
                Some(args[(n - 1 - k) as usize].shift(depth, 0))
            }
            TermKind::Bound(i) if *i >= depth + n => Some(Term::bound(i - n)),
            TermKind::Sort(_) | TermKind::Free(_) => Some(t.clone()),
            _ => None,
        })
    }

    /// Replace the free variable `x` with `Bound(depth)` at each depth.
    pub fn close(&self, x: &str) -> Term {
        self.map_at(0, &mut |t, depth| match t.kind() {
            TermKind::Free(y) if &**y == x => Some(Term::bound(depth)),
            TermKind::Free(_) | TermKind::Sort(_) | TermKind::Bound(_) => Some(t.clone()),
            _ => None,
        })
    }

    /// Open a binder body with the free variable `x`.
    pub fn open(&self, x: &str) -> Term {
        self.instantiate(&Term::var(x))
    }

    /// Capture-avoiding substitution of the free variable `x` by `u`.
    pub fn subst(&self, x: &str, u: &Term) -> Term {
        self.map_at(0, &mut |t, depth| match t.kind() {
            TermKind::Free(y) if &**y == x => Some(u.shift(depth, 0)),
            TermKind::Free(_) | TermKind::Sort(_) | TermKind::Bound(_) => Some(t.clone()),
            _ => None,
        })
    }

    /// Parallel substitution of free variables.
    pub fn subst_many(&self, map: &[(Name, Term)]) -> Term {
        if map.is_empty() {
            return self.clone();
        }
        self.map_at(0, &mut |t, depth| match t.kind() {
            TermKind::Free(y) => Some(
                map.iter()
                    .find(|(x, _)| x == y)
                    .map(|(_, u)| u.shift(depth, 0))
                    .unwrap_or_else(|| t.clone()),
            ),
            TermKind::Sort(_) | TermKind::Bound(_) => Some(t.clone()),
            _ => None,
        })
    }

    /// Rename symbol heads through `f`, keeping everything else.
    pub fn map_symbols(&self, f: &mut impl FnMut(&Name, Vec<Term>) -> Term) -> Term {
        match self.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => self.clone(),
            TermKind::App(a, b) => Term::app(a.map_symbols(f), b.map_symbols(f)),
            TermKind::Abs(x, a, b) => Term::abs_raw(x.clone(), a.map_symbols(f), b.map_symbols(f)),
            TermKind::Prod(x, a, b) => {
                Term::prod_raw(x.clone(), a.map_symbols(f), b.map_symbols(f))
            }
            TermKind::Sym(g, args) => {
                let args = args.iter().map(|t| t.map_symbols(f)).collect();
                f(g, args)
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) => {}
            TermKind::Free(x) => {
                out.insert(x.clone());
            }
            TermKind::App(a, b) | TermKind::Abs(_, a, b) | TermKind::Prod(_, a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            TermKind::Sym(_, args) => args.iter().for_each(|t| t.collect_free(out)),
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) => false,
            TermKind::Free(y) => &**y == x,
            TermKind::App(a, b) | TermKind::Abs(_, a, b) | TermKind::Prod(_, a, b) => {
                a.occurs_free(x) || b.occurs_free(x)
            }
            TermKind::Sym(_, args) => args.iter().any(|t| t.occurs_free(x)),
        }
    }

    /// Every symbol name occurring in the term.
    pub fn symbols(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| {
            if let TermKind::Sym(f, _) = t.kind() {
                out.insert(f.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        match self.kind() {
            TermKind::Sort(_) | TermKind::Bound(_) | TermKind::Free(_) => {}
            TermKind::App(a, b) | TermKind::Abs(_, a, b) | TermKind::Prod(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            TermKind::Sym(_, args) => args.iter().for_each(|t| t.visit(f)),
        }
    }
}

/// One step from a node to one of its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    Fun,
    Arg,
    Annot,
    Body,
    Dom,
    Cod,
    SymArg(usize),
}

/// Position of a subterm, from the root down.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermPath(pub Vec<PathStep>);

impl TermPath {
    pub fn root() -> TermPath {
        TermPath(Vec::new())
    }

    pub fn child(&self, step: PathStep) -> TermPath {
        let mut steps = self.0.clone();
        steps.push(step);
        TermPath(steps)
    }
}

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("<root>");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            match step {
                PathStep::Fun => f.write_str("fun")?,
                PathStep::Arg => f.write_str("arg")?,
                PathStep::Annot => f.write_str("annot")?,
                PathStep::Body => f.write_str("body")?,
                PathStep::Dom => f.write_str("dom")?,
                PathStep::Cod => f.write_str("cod")?,
                PathStep::SymArg(k) => write!(f, "{k}")?,
            }
        }
        Ok(())
    }
}

/// Capture-avoiding single substitution `body{x ↦ u}`.
pub fn substitute(body: &Term, binding: (&str, &Term)) -> Term {
    body.subst(binding.0, binding.1)
}

/// α-equivalence: equality up to the names of bound variables.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    a == b
}

pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    t.free_vars()
}

/// A variant of `hint` that is not rejected by `taken`.
pub fn fresh_name(hint: &str, mut taken: impl FnMut(&str) -> bool) -> Name {
    let base = if hint.is_empty() || hint == "_" { "x" } else { hint };
    let mut candidate = base.to_string();
    while taken(&candidate) {
        candidate.push('\'');
    }
    name(&candidate)
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        match (self.kind(), other.kind()) {
            (TermKind::Sort(a), TermKind::Sort(b)) => a == b,
            (TermKind::Bound(a), TermKind::Bound(b)) => a == b,
            (TermKind::Free(a), TermKind::Free(b)) => a == b,
            (TermKind::App(f1, a1), TermKind::App(f2, a2)) => f1 == f2 && a1 == a2,
            (TermKind::Abs(_, a1, b1), TermKind::Abs(_, a2, b2))
            | (TermKind::Prod(_, a1, b1), TermKind::Prod(_, a2, b2)) => a1 == a2 && b1 == b2,
            (TermKind::Sym(f, xs), TermKind::Sym(g, ys)) => f == g && xs == ys,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.kind() {
            TermKind::Sort(s) => (0u8, s).hash(state),
            TermKind::Bound(i) => (1u8, i).hash(state),
            TermKind::Free(x) => (2u8, x).hash(state),
            TermKind::App(a, b) => {
                3u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            TermKind::Abs(_, a, b) => {
                4u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            TermKind::Prod(_, a, b) => {
                5u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            TermKind::Sym(f, args) => {
                6u8.hash(state);
                f.hash(state);
                args.hash(state);
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self, crate::syntax::Mode::detect(self)))
    }
}
