//! Typing contexts and signatures.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::term::{fresh_name, name, Name, Sort, Term};

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: Name,
    pub ty: Term,
    /// Body of a definition, stored with earlier definitions already unfolded.
    pub value: Option<Term>,
}

/// Ordered variable declarations, optionally with definitions.
///
/// Contexts are persistent: extending one shares the prefix.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<Arc<Entry>>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_decls<'a>(decls: impl IntoIterator<Item = (&'a str, Term)>) -> Context {
        let mut ctx = Context::new();
        for (x, ty) in decls {
            ctx = ctx.push(name(x), ty);
        }
        ctx
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl DoubleEndedIterator<Item = &Entry> + ExactSizeIterator {
        self.entries.iter().map(|e| &**e)
    }

    pub fn lookup(&self, x: &str) -> Option<&Entry> {
        self.entries.iter().rev().find(|e| &*e.name == x).map(|e| &**e)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    /// Context restricted to its first `n` entries.
    pub fn prefix(&self, n: usize) -> Context {
        Context {
            entries: self.entries[..n].to_vec(),
        }
    }

    pub fn push(&self, x: Name, ty: Term) -> Context {
        let mut entries = self.entries.clone();
        entries.push(Arc::new(Entry {
            name: x,
            ty,
            value: None,
        }));
        Context { entries }
    }

    pub fn push_definition(&self, x: Name, ty: Term, value: Term) -> Context {
        let value = self.unfold(&value);
        let mut entries = self.entries.clone();
        entries.push(Arc::new(Entry {
            name: x,
            ty,
            value: Some(value),
        }));
        Context { entries }
    }

    pub fn has_definitions(&self) -> bool {
        self.entries.iter().any(|e| e.value.is_some())
    }

    /// Replace every defined variable by its body.
    pub fn unfold(&self, t: &Term) -> Term {
        if !self.has_definitions() {
            return t.clone();
        }
        let defs: Vec<(Name, Term)> = self
            .entries
            .iter()
            .filter_map(|e| e.value.as_ref().map(|v| (e.name.clone(), v.clone())))
            .filter(|(x, _)| t.occurs_free(x))
            .collect();
        t.subst_many(&defs)
    }

    /// A name based on `hint` that is neither declared here nor free in `avoid`.
    pub fn fresh(&self, hint: &str, avoid: &Term) -> Name {
        fresh_name(hint, |n| self.contains(n) || avoid.occurs_free(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visibility {
    Public,
    /// May appear in terms produced by conversion, never in user input.
    Protected,
}

/// Typing of one signature symbol: `params ⊢ f(params) : result : sort`.
///
/// The type of parameter `i` and the result type are stored under `i`
/// (resp. all) parameter binders, using bound indices for earlier parameters.
#[derive(Clone, Debug)]
pub struct SymbolType {
    pub params: Vec<(Name, Term)>,
    pub result: Term,
    pub sort: Sort,
    pub visibility: Visibility,
}

impl SymbolType {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

/// Builds a [`SymbolType`] from named parameters that refer to each other
/// as free variables.
pub struct SymbolBuilder {
    params: Vec<(Name, Term)>,
}

impl SymbolBuilder {
    pub fn new() -> SymbolBuilder {
        SymbolBuilder { params: Vec::new() }
    }

    pub fn param(mut self, x: &str, ty: Term) -> SymbolBuilder {
        let ty = self.close_params(ty);
        self.params.push((name(x), ty));
        self
    }

    pub fn result(self, result: Term, sort: Sort) -> SymbolType {
        let result = self.close_params(result);
        SymbolType {
            params: self.params,
            result,
            sort,
            visibility: Visibility::Public,
        }
    }

    /// Parameters are in scope as free variables; `t` is locally closed.
    fn close_params(&self, t: Term) -> Term {
        let n = self.params.len() as u32;
        close_names(&t, &self.params, n, 0)
    }
}

impl Default for SymbolBuilder {
    fn default() -> Self {
        SymbolBuilder::new()
    }
}

fn close_names(t: &Term, params: &[(Name, Term)], n: u32, depth: u32) -> Term {
    use crate::term::TermKind;
    match t.kind() {
        TermKind::Free(y) => match params.iter().rposition(|(x, _)| x == y) {
            Some(i) => Term::bound(n - 1 - i as u32 + depth),
            None => t.clone(),
        },
        TermKind::Sort(_) | TermKind::Bound(_) => t.clone(),
        TermKind::App(a, b) => Term::app(
            close_names(a, params, n, depth),
            close_names(b, params, n, depth),
        ),
        TermKind::Abs(h, a, b) => Term::abs_raw(
            h.clone(),
            close_names(a, params, n, depth),
            close_names(b, params, n, depth + 1),
        ),
        TermKind::Prod(h, a, b) => Term::prod_raw(
            h.clone(),
            close_names(a, params, n, depth),
            close_names(b, params, n, depth + 1),
        ),
        TermKind::Sym(f, args) => Term::sym_named(
            f.clone(),
            args.iter().map(|a| close_names(a, params, n, depth)).collect(),
        ),
    }
}

/// Finite map from symbol names to their typings.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    entries: BTreeMap<Name, SymbolType>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Panics on a duplicate symbol: signatures are built from fixed tables.
    pub fn declare(&mut self, f: &str, ty: SymbolType) {
        let prev = self.entries.insert(name(f), ty);
        assert!(prev.is_none(), "symbol {f} declared twice");
    }

    pub fn protect(&mut self, f: &str) {
        if let Some(e) = self.entries.get_mut(f) {
            e.visibility = Visibility::Protected;
        }
    }

    pub fn get(&self, f: &str) -> Option<&SymbolType> {
        self.entries.get(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &SymbolType)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
