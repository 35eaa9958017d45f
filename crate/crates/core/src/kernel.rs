//! A type checker for Type Systems Modulo: a pure type system extended
//! with fixed-arity signature symbols and a rewrite-decided conversion.
//!
//! Both kernels are instances of [`TypeSystem`]; they differ only in their
//! sorts, axioms, product rules, signature and conversion.

use thiserror::Error;

use crate::context::{Context, SymbolType};
use crate::rewrite::{Fuel, RewriteError, RuleSet};
use crate::term::{Name, Sort, Term, TermKind, TermPath};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TypeError {
    #[error("unbound variable {0}")]
    UnboundVariable(Name),
    #[error("loose bound variable #{0}")]
    LooseBound(u32),
    #[error("sort {0} does not belong to this system")]
    ForeignSort(Sort),
    #[error("sort {0} has no type")]
    SortHasNoType(Sort),
    #[error("unknown symbol {0}")]
    UnknownSymbol(Name),
    #[error("symbol {symbol} expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: Name,
        expected: usize,
        found: usize,
    },
    #[error("{term} has type {ty}, which is not a product")]
    NotAFunction { term: Term, ty: Term },
    #[error("argument {arg} has type {found} but {expected} was expected")]
    DomainMismatch {
        arg: Term,
        expected: Term,
        found: Term,
    },
    #[error("no product rule for ({dom}, {cod})")]
    IllegalProduct { dom: Sort, cod: Sort },
    #[error("{term} has type {ty}, which is not a sort")]
    NotASort { term: Term, ty: Term },
    #[error("{0} is declared twice")]
    DuplicateName(Name),
    #[error("{term} has type {found} but {expected} was expected")]
    TypeMismatch {
        term: Term,
        expected: Term,
        found: Term,
    },
    #[error("{a} and {b} are not convertible")]
    NotConvertible { a: Term, b: Term },
    #[error("protected symbol {symbol} used at {path}")]
    ProtectedSymbol { symbol: Name, path: TermPath },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

impl TypeError {
    pub fn is_fuel_exhausted(&self) -> bool {
        matches!(self, TypeError::Rewrite(RewriteError::FuelExhausted { .. }))
    }
}

pub type TypeResult<T> = Result<T, TypeError>;

/// How normal forms are compared once computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Syntactic,
    /// Compare after erasing the proof component of every pair.
    ModuloProofs,
}

#[derive(Clone, Debug)]
pub struct TypeSystem {
    pub name: &'static str,
    pub sorts: Vec<Sort>,
    pub axioms: Vec<(Sort, Sort)>,
    pub products: Vec<(Sort, Sort, Sort)>,
    pub signature: crate::context::Signature,
    pub rules: RuleSet,
    pub comparison: Comparison,
}

impl TypeSystem {
    pub fn axiom(&self, s: Sort) -> TypeResult<Sort> {
        if !self.sorts.contains(&s) {
            return Err(TypeError::ForeignSort(s));
        }
        self.axioms
            .iter()
            .find(|(a, _)| *a == s)
            .map(|(_, b)| *b)
            .ok_or(TypeError::SortHasNoType(s))
    }

    pub fn product_sort(&self, dom: Sort, cod: Sort) -> TypeResult<Sort> {
        self.products
            .iter()
            .find(|(a, b, _)| *a == dom && *b == cod)
            .map(|(_, _, c)| *c)
            .ok_or(TypeError::IllegalProduct { dom, cod })
    }

    pub fn symbol(&self, f: &Name) -> TypeResult<&SymbolType> {
        self.signature
            .get(f)
            .ok_or_else(|| TypeError::UnknownSymbol(f.clone()))
    }

    /// Weak head normal form after unfolding definitions.
    pub fn whnf(&self, ctx: &Context, t: &Term, fuel: &mut Fuel) -> TypeResult<Term> {
        Ok(self.rules.whnf(&ctx.unfold(t), fuel)?)
    }

    pub fn normalize(&self, ctx: &Context, t: &Term, fuel: &mut Fuel) -> TypeResult<Term> {
        Ok(self.rules.normalize(&ctx.unfold(t), fuel)?)
    }

    /// Decides conversion by normalizing both sides and comparing.
    pub fn conv(&self, ctx: &Context, a: &Term, b: &Term, fuel: &mut Fuel) -> TypeResult<bool> {
        if a == b {
            return Ok(true);
        }
        let na = self.normalize(ctx, a, fuel)?;
        let nb = self.normalize(ctx, b, fuel)?;
        Ok(match self.comparison {
            Comparison::Syntactic => na == nb,
            Comparison::ModuloProofs => crate::pcert::pi_erase(&na) == crate::pcert::pi_erase(&nb),
        })
    }

    /// Synthesizes the type of `t` in `ctx`, which is assumed well formed.
    pub fn infer(&self, ctx: &Context, t: &Term, fuel: &mut Fuel) -> TypeResult<Term> {
        match t.kind() {
            TermKind::Sort(s) => Ok(Term::sort(self.axiom(*s)?)),
            TermKind::Bound(i) => Err(TypeError::LooseBound(*i)),
            TermKind::Free(x) => ctx
                .lookup(x)
                .map(|e| e.ty.clone())
                .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
            TermKind::App(f, a) => {
                let tf = self.infer(ctx, f, fuel)?;
                let wf = self.whnf(ctx, &tf, fuel)?;
                let TermKind::Prod(_, dom, cod) = wf.kind() else {
                    return Err(TypeError::NotAFunction {
                        term: f.clone(),
                        ty: tf,
                    });
                };
                let ta = self.infer(ctx, a, fuel)?;
                if !self.conv(ctx, &ta, dom, fuel)? {
                    return Err(TypeError::DomainMismatch {
                        arg: a.clone(),
                        expected: dom.clone(),
                        found: ta,
                    });
                }
                Ok(cod.instantiate(a))
            }
            TermKind::Abs(x, annot, body) => {
                let s1 = self.infer_sort(ctx, annot, fuel)?;
                let v = ctx.fresh(x, body);
                let inner = ctx.push(v.clone(), annot.clone());
                let tb = self.infer(&inner, &body.open(&v), fuel)?;
                let s2 = self.infer_sort(&inner, &tb, fuel)?;
                self.product_sort(s1, s2)?;
                Ok(Term::prod_raw(x.clone(), annot.clone(), tb.close(&v)))
            }
            TermKind::Prod(x, dom, cod) => {
                let s1 = self.infer_sort(ctx, dom, fuel)?;
                let v = ctx.fresh(x, cod);
                let inner = ctx.push(v.clone(), dom.clone());
                let s2 = self.infer_sort(&inner, &cod.open(&v), fuel)?;
                Ok(Term::sort(self.product_sort(s1, s2)?))
            }
            TermKind::Sym(f, args) => {
                let st = self.symbol(f)?;
                if st.arity() != args.len() {
                    return Err(TypeError::ArityMismatch {
                        symbol: f.clone(),
                        expected: st.arity(),
                        found: args.len(),
                    });
                }
                for (i, arg) in args.iter().enumerate() {
                    let expected = st.params[i].1.instantiate_many(&args[..i]);
                    let found = self.infer(ctx, arg, fuel)?;
                    if !self.conv(ctx, &found, &expected, fuel)? {
                        return Err(TypeError::DomainMismatch {
                            arg: arg.clone(),
                            expected,
                            found,
                        });
                    }
                }
                Ok(st.result.instantiate_many(args))
            }
        }
    }

    /// The sort of a type: infers the type of `t` and requires it to
    /// reduce to one of this system's sorts.
    pub fn infer_sort(&self, ctx: &Context, t: &Term, fuel: &mut Fuel) -> TypeResult<Sort> {
        let ty = self.infer(ctx, t, fuel)?;
        match self.whnf(ctx, &ty, fuel)?.as_sort() {
            Some(s) if self.sorts.contains(&s) => Ok(s),
            _ => Err(TypeError::NotASort {
                term: t.clone(),
                ty,
            }),
        }
    }

    /// Checks `t` against `expected` through conversion.
    pub fn check(&self, ctx: &Context, t: &Term, expected: &Term, fuel: &mut Fuel) -> TypeResult<()> {
        let found = self.infer(ctx, t, fuel)?;
        if self.conv(ctx, &found, expected, fuel)? {
            Ok(())
        } else {
            Err(TypeError::TypeMismatch {
                term: t.clone(),
                expected: expected.clone(),
                found,
            })
        }
    }

    /// Checks one new declaration against an already well-formed context.
    pub fn check_entry(
        &self,
        ctx: &Context,
        x: &Name,
        ty: &Term,
        value: Option<&Term>,
        fuel: &mut Fuel,
    ) -> TypeResult<()> {
        if ctx.contains(x) {
            return Err(TypeError::DuplicateName(x.clone()));
        }
        self.infer_sort(ctx, ty, fuel)?;
        if let Some(v) = value {
            self.check(ctx, v, ty, fuel)?;
        }
        Ok(())
    }

    /// `Γ ⊢ WF`: every entry's type is typed by a sort under its prefix.
    pub fn check_wf(&self, ctx: &Context, fuel: &mut Fuel) -> TypeResult<()> {
        let mut prefix = Context::new();
        for e in ctx.entries() {
            self.check_entry(&prefix, &e.name, &e.ty, e.value.as_ref(), fuel)?;
            prefix = match &e.value {
                Some(v) => prefix.push_definition(e.name.clone(), e.ty.clone(), v.clone()),
                None => prefix.push(e.name.clone(), e.ty.clone()),
            };
        }
        Ok(())
    }

    /// Checks the typing of every signature entry:
    /// `params ⊢ WF` and `params ⊢ result : sort`.
    pub fn validate_signature(&self) -> Result<(), (Name, TypeError)> {
        for (f, st) in self.signature.iter() {
            let mut ctx = Context::new();
            let mut opened: Vec<Term> = Vec::new();
            let check = |ctx: &mut Context, opened: &mut Vec<Term>| -> TypeResult<()> {
                let mut fuel = Fuel::default();
                for (x, ty) in &st.params {
                    let ty = ty.instantiate_many(opened);
                    self.infer_sort(ctx, &ty, &mut fuel)?;
                    let v = ctx.fresh(x, &ty);
                    *ctx = ctx.push(v.clone(), ty);
                    opened.push(Term::free(v));
                }
                let result = st.result.instantiate_many(opened);
                let s = self.infer_sort(ctx, &result, &mut fuel)?;
                if s != st.sort {
                    return Err(TypeError::TypeMismatch {
                        term: result,
                        expected: Term::sort(st.sort),
                        found: Term::sort(s),
                    });
                }
                Ok(())
            };
            check(&mut ctx, &mut opened).map_err(|e| (f.clone(), e))?;
        }
        Ok(())
    }
}
