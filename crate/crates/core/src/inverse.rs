//! Partial inverse of the translation, from the encoding back to PVS-Cert.

use thiserror::Error;

use crate::context::Context;
use crate::rewrite::{Fuel, RuleSet};
use crate::session::{check_decl, judgment, Diagnostic};
use crate::syntax::{Decl, Development, Mode};
use crate::term::{PathStep, Sort, Term, TermKind, TermPath};
use crate::translate::Translator;

#[derive(Clone, Debug, Error, PartialEq)]
#[error("{term} at {path} is not the translation of a PVS-Cert term")]
pub struct NotInImage {
    pub path: TermPath,
    pub term: Term,
}

pub type InverseResult = Result<Term, NotInImage>;

fn fail(path: &TermPath, t: &Term) -> NotInImage {
    NotInImage {
        path: path.clone(),
        term: t.clone(),
    }
}

fn term_at(m: &Term, path: &TermPath) -> InverseResult {
    match m.kind() {
        TermKind::Free(_) | TermKind::Bound(_) => Ok(m.clone()),
        TermKind::App(f, a) => Ok(Term::app(
            term_at(f, &path.child(PathStep::Fun))?,
            term_at(a, &path.child(PathStep::Arg))?,
        )),
        TermKind::Abs(x, a, b) => Ok(Term::abs_raw(
            x.clone(),
            type_at(a, &path.child(PathStep::Annot))?,
            term_at(b, &path.child(PathStep::Body))?,
        )),
        TermKind::Sym(f, args) => match (&**f, &args[..]) {
            ("prop", []) => Ok(Term::sort(Sort::Prop)),
            ("type", []) => Ok(Term::sort(Sort::Type)),
            ("fa" | "impd" | "arrd", [dom, lam]) => {
                // the binder annotation is not inspected
                let TermKind::Abs(x, _, body) = lam.kind() else {
                    return Err(fail(path, m));
                };
                let lam_path = path.child(PathStep::SymArg(1));
                Ok(Term::prod_raw(
                    x.clone(),
                    term_at(dom, &path.child(PathStep::SymArg(0)))?,
                    term_at(body, &lam_path.child(PathStep::Body))?,
                ))
            }
            ("psub", [_, _]) | ("pair", [_, _, _, _]) | ("fst", [_, _, _]) | ("snd", [_, _, _]) => {
                let args = args
                    .iter()
                    .enumerate()
                    .map(|(i, a)| term_at(a, &path.child(PathStep::SymArg(i))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Term::sym_named(f.clone(), args))
            }
            _ => Err(fail(path, m)),
        },
        TermKind::Sort(_) | TermKind::Prod(..) => Err(fail(path, m)),
    }
}

fn type_at(t: &Term, path: &TermPath) -> InverseResult {
    match t.kind() {
        TermKind::Sym(f, args) => match (&**f, &args[..]) {
            ("Kind", []) => Ok(Term::sort(Sort::Kind)),
            ("Type", []) => Ok(Term::sort(Sort::Type)),
            ("El" | "Prf", [m]) => term_at(m, &path.child(PathStep::SymArg(0))),
            _ => Err(fail(path, t)),
        },
        TermKind::Prod(x, a, b) => Ok(Term::prod_raw(
            x.clone(),
            type_at(a, &path.child(PathStep::Dom))?,
            type_at(b, &path.child(PathStep::Cod))?,
        )),
        _ => Err(fail(path, t)),
    }
}

/// `⁻⟦M⟧`; fails at the leftmost-outermost subterm no clause applies to.
pub fn inverse_term(m: &Term) -> InverseResult {
    term_at(m, &TermPath::root())
}

/// `⁻⟦T⟧` for encoded types.
pub fn inverse_type(t: &Term) -> InverseResult {
    type_at(t, &TermPath::root())
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RoundTripError {
    #[error(transparent)]
    NotInImage(#[from] NotInImage),
    #[error("inverse gives {recovered}, expected {original} up to β")]
    Mismatch { original: Term, recovered: Term },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundTripFailure {
    pub name: String,
    pub error: RoundTripError,
}

/// Translates and inverts `m`, comparing β-normal forms with `m`.
pub fn roundtrip_term(ctx: &Context, m: &Term, fuel: &mut Fuel) -> Result<Result<(), RoundTripError>, crate::kernel::TypeError> {
    let image = Translator::new(fuel).term(ctx, m)?;
    let recovered = match inverse_term(&image) {
        Ok(t) => t,
        Err(e) => return Ok(Err(e.into())),
    };
    let beta = RuleSet::beta_only();
    let a = beta.normalize(m, fuel)?;
    let b = beta.normalize(&recovered, fuel)?;
    Ok(if a == b {
        Ok(())
    } else {
        Err(RoundTripError::Mismatch {
            original: m.clone(),
            recovered,
        })
    })
}

/// Checks a pcert development and round-trips every definition body.
pub fn roundtrip_development(dev: &Development, fuel: Fuel) -> Result<Vec<RoundTripFailure>, Diagnostic> {
    assert_eq!(dev.mode, Mode::Pcert, "round trips start from a pcert development");
    let mut ctx = Context::new();
    let mut failures = Vec::new();
    for d in &dev.decls {
        let fail = |error| Diagnostic {
            span: d.span.clone(),
            judgment: judgment(Mode::Pcert, &d.decl),
            error,
        };
        let (next, _) = check_decl(Mode::Pcert, &ctx, &d.decl, &mut fuel.clone()).map_err(fail)?;
        if let Decl::Definition { name, body, .. } = &d.decl {
            if let Err(error) = roundtrip_term(&ctx, body, &mut fuel.clone()).map_err(fail)? {
                failures.push(RoundTripFailure {
                    name: name.clone(),
                    error,
                });
            }
        }
        ctx = next;
    }
    Ok(failures)
}
