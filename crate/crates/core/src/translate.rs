//! Translation of typable PVS-Cert terms into the encoding.

use std::collections::HashMap;

use crate::context::Context;
use crate::kernel::{TypeError, TypeResult};
use crate::lf::{el, enc_kind, enc_type, prf};
use crate::pcert;
use crate::rewrite::Fuel;
use crate::session::Diagnostic;
use crate::syntax::{Decl, Development, Mode};
use crate::term::{name, Name, Sort, Term, TermKind};

/// One translation pass. Sorts of subterms are cached; binders are opened
/// with names that cannot occur in user input, so a term determines its
/// sort within one pass.
pub struct Translator<'f> {
    fuel: &'f mut Fuel,
    cache: HashMap<Term, Sort>,
    counter: usize,
}

impl<'f> Translator<'f> {
    pub fn new(fuel: &'f mut Fuel) -> Translator<'f> {
        Translator {
            fuel,
            cache: HashMap::new(),
            counter: 0,
        }
    }

    fn sort(&mut self, ctx: &Context, t: &Term) -> TypeResult<Sort> {
        if let Some(s) = self.cache.get(t) {
            return Ok(*s);
        }
        let s = pcert::sort_of(ctx, t, self.fuel)?;
        self.cache.insert(t.clone(), s);
        Ok(s)
    }

    fn open(&mut self, ctx: &Context, hint: &Name, dom: &Term, body: &Term) -> (Context, Name, Term) {
        self.counter += 1;
        let v = name(&format!("{hint}#{}", self.counter));
        (ctx.push(v.clone(), dom.clone()), v.clone(), body.open(&v))
    }

    /// `⟦M⟧` for `M` typable in `ctx`.
    pub fn term(&mut self, ctx: &Context, m: &Term) -> TypeResult<Term> {
        match m.kind() {
            TermKind::Sort(Sort::Prop) => Ok(Term::sym("prop", vec![])),
            TermKind::Sort(Sort::Type) => Ok(Term::sym("type", vec![])),
            TermKind::Sort(s) => Err(TypeError::SortHasNoType(*s)),
            TermKind::Bound(i) => Err(TypeError::LooseBound(*i)),
            TermKind::Free(_) => Ok(m.clone()),
            TermKind::App(f, a) => Ok(Term::app(self.term(ctx, f)?, self.term(ctx, a)?)),
            TermKind::Abs(x, a, body) => {
                let annot = self.ty(ctx, a)?;
                let (inner, v, opened) = self.open(ctx, x, a, body);
                let body = self.term(&inner, &opened)?.close(&v);
                Ok(Term::abs_raw(x.clone(), annot, body))
            }
            TermKind::Prod(x, a, cod) => {
                let s1 = self.sort(ctx, a)?;
                let (inner, v, opened) = self.open(ctx, x, a, cod);
                let s2 = self.sort(&inner, &opened)?;
                let head = match (s1, s2) {
                    (Sort::Type, Sort::Type) => "arrd",
                    (Sort::Type, Sort::Prop) => "fa",
                    (Sort::Prop, Sort::Prop) => "impd",
                    (dom, cod) => return Err(TypeError::IllegalProduct { dom, cod }),
                };
                let dom = self.term(ctx, a)?;
                let annot = self.ty(ctx, a)?;
                let body = self.term(&inner, &opened)?.close(&v);
                Ok(Term::sym(head, vec![dom, Term::abs_raw(x.clone(), annot, body)]))
            }
            TermKind::Sym(f, args) => {
                let args = args
                    .iter()
                    .map(|a| self.term(ctx, a))
                    .collect::<TypeResult<Vec<_>>>()?;
                Ok(Term::sym_named(f.clone(), args))
            }
        }
    }

    /// `⟦T⟧_type`.
    pub fn ty(&mut self, ctx: &Context, t: &Term) -> TypeResult<Term> {
        match t.as_sort() {
            Some(Sort::Type) => return Ok(enc_type()),
            Some(Sort::Kind) => return Ok(enc_kind()),
            _ => {}
        }
        match self.sort(ctx, t)? {
            Sort::Type => Ok(el(self.term(ctx, t)?)),
            Sort::Prop => Ok(prf(self.term(ctx, t)?)),
            _ => Err(TypeError::NotASort {
                term: t.clone(),
                ty: Term::sort(Sort::Kind),
            }),
        }
    }

    /// `⟦Γ⟧`, definitions included.
    pub fn ctx(&mut self, ctx: &Context) -> TypeResult<Context> {
        let mut out = Context::new();
        for (i, e) in ctx.entries().enumerate() {
            let prefix = ctx.prefix(i);
            let ty = self.ty(&prefix, &e.ty)?;
            out = match &e.value {
                Some(v) => out.push_definition(e.name.clone(), ty, self.term(&prefix, v)?),
                None => out.push(e.name.clone(), ty),
            };
        }
        Ok(out)
    }
}

/// `⟦M⟧_Γ`, after checking that `M` is typable in `Γ`.
pub fn translate_term(ctx: &Context, m: &Term, fuel: &mut Fuel) -> TypeResult<Term> {
    pcert::infer_pcert(ctx, m, fuel)?;
    Translator::new(fuel).term(ctx, m)
}

pub fn translate_type(ctx: &Context, t: &Term, fuel: &mut Fuel) -> TypeResult<Term> {
    Translator::new(fuel).ty(ctx, t)
}

pub fn translate_ctx(ctx: &Context, fuel: &mut Fuel) -> TypeResult<Context> {
    Translator::new(fuel).ctx(ctx)
}

/// Translates a checked pcert development into an lf development with the
/// same names. Definitions without a type annotation get their inferred one.
pub fn translate_development(dev: &Development, fuel: Fuel) -> Result<Development, Diagnostic> {
    assert_eq!(dev.mode, Mode::Pcert, "translation expects a pcert development");
    let mut out = Development::new(Mode::Lf);
    let mut ctx = Context::new();
    for d in &dev.decls {
        let fail = |error| Diagnostic {
            span: d.span.clone(),
            judgment: crate::session::judgment(Mode::Pcert, &d.decl),
            error,
        };
        let mut budget = fuel;
        let (next, def_ty) = crate::session::check_decl(Mode::Pcert, &ctx, &d.decl, &mut budget).map_err(fail)?;
        let mut budget = fuel;
        let mut tr = Translator::new(&mut budget);
        let decl = match &d.decl {
            Decl::SymbolDecl { name, ty } => Decl::SymbolDecl {
                name: name.clone(),
                ty: tr.ty(&ctx, ty).map_err(fail)?,
            },
            Decl::Definition { name, body, .. } => {
                let ty = def_ty.expect("definitions have a type");
                Decl::Definition {
                    name: name.clone(),
                    ty: Some(tr.ty(&ctx, &ty).map_err(fail)?),
                    body: tr.term(&ctx, body).map_err(fail)?,
                }
            }
            Decl::AssertJudgment { subject, ty } => Decl::AssertJudgment {
                subject: tr.term(&ctx, subject).map_err(fail)?,
                ty: tr.ty(&ctx, ty).map_err(fail)?,
            },
            Decl::AssertConv { a, b } => Decl::AssertConv {
                a: tr.term(&ctx, a).map_err(fail)?,
                b: tr.term(&ctx, b).map_err(fail)?,
            },
        };
        out.decls.push(crate::syntax::Declaration {
            decl,
            span: d.span.clone(),
        });
        ctx = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, print_term};

    fn pc(s: &str) -> Term {
        parse_term(s, Mode::Pcert).unwrap()
    }

    fn lf(s: &str) -> Term {
        parse_term(s, Mode::Lf).unwrap()
    }

    fn base() -> Context {
        Context::from_decls([
            ("T", pc("Type")),
            ("P", pc("T -> Prop")),
            ("M", pc("psub(T, P)")),
        ])
    }

    #[test]
    fn prop_translates_to_prop() {
        let mut f = Fuel::default();
        assert_eq!(translate_term(&Context::new(), &pc("Prop"), &mut f).unwrap(), lf("prop"));
    }

    #[test]
    fn forall_dispatch() {
        let mut f = Fuel::default();
        let t = translate_term(&base(), &pc("!x: T. P x"), &mut f).unwrap();
        assert_eq!(t, lf("fa(T, \\x: El(T). P x)"));
        let t = translate_term(&base(), &pc("T -> T"), &mut f).unwrap();
        assert_eq!(t, lf("arrd(T, \\x: El(T). T)"));
        let t = translate_term(&Context::new(), &pc("!A: Prop. A -> A"), &mut f).unwrap();
        assert_eq!(t, lf("fa(prop, \\A: El(prop). impd(A, \\x: Prf(A). A))"));
    }

    #[test]
    fn projections_map_homomorphically() {
        let mut f = Fuel::default();
        let t = translate_term(&base(), &pc("fst(T, P, M)"), &mut f).unwrap();
        assert_eq!(t, lf("fst(T, P, M)"));
    }

    #[test]
    fn types() {
        let mut f = Fuel::default();
        assert_eq!(translate_type(&base(), &pc("T"), &mut f).unwrap(), lf("El(T)"));
        assert_eq!(translate_type(&base(), &pc("Kind"), &mut f).unwrap(), lf("Kind"));
        let p = translate_type(&base(), &pc("Prop"), &mut f).unwrap();
        assert_eq!(p, lf("El(prop)"));
        let n = crate::lf::rules().normalize(&p, &mut f).unwrap();
        assert_eq!(n, lf("Prop"));
    }

    #[test]
    fn contexts() {
        let mut f = Fuel::default();
        assert!(translate_ctx(&Context::new(), &mut f).unwrap().is_empty());
        let c = translate_ctx(&base(), &mut f).unwrap();
        let shown: Vec<String> = c.entries().map(|e| print_term(&e.ty, Mode::Lf)).collect();
        assert_eq!(shown, ["Type", "El(arrd(T, \\x: El(T). prop))", "El(psub(T, P))"]);
    }

    #[test]
    fn untypable_input_is_refused() {
        let mut f = Fuel::default();
        assert!(translate_term(&Context::new(), &pc("x"), &mut f).is_err());
    }
}
