//! Checking whole developments declaration by declaration.

use thiserror::Error;

use crate::context::Context;
use crate::kernel::{TypeError, TypeSystem};
use crate::rewrite::Fuel;
use crate::syntax::{print_term, Decl, Development, Mode, SourceSpan};
use crate::term::{name, Term};

/// A kernel failure located in the source.
#[derive(Clone, Debug, Error, PartialEq)]
#[error("{span}: while checking {judgment}: {error}")]
pub struct Diagnostic {
    pub span: SourceSpan,
    pub judgment: String,
    #[source]
    pub error: TypeError,
}

impl Diagnostic {
    pub fn is_fuel_exhausted(&self) -> bool {
        self.error.is_fuel_exhausted()
    }

    pub fn is_protected_symbol(&self) -> bool {
        matches!(self.error, TypeError::ProtectedSymbol { .. })
    }
}

pub fn system_for(mode: Mode) -> &'static TypeSystem {
    match mode {
        Mode::Pcert => crate::pcert::system(),
        Mode::Lf => crate::lf::system(),
    }
}

/// Result of a successful check: the context built from the file.
#[derive(Clone, Debug)]
pub struct Checked {
    pub mode: Mode,
    pub ctx: Context,
    /// Type of every definition, in declaration order.
    pub definitions: Vec<(String, Term, Term)>,
}

fn public(mode: Mode, terms: &[&Term]) -> Result<(), TypeError> {
    if mode == Mode::Lf {
        for t in terms {
            crate::lf::assert_public(t, &crate::lf::system().signature)?;
        }
    }
    Ok(())
}

/// Checks one declaration against `ctx`, returning the extended context.
pub fn check_decl(
    mode: Mode,
    ctx: &Context,
    decl: &Decl,
    fuel: &mut Fuel,
) -> Result<(Context, Option<Term>), TypeError> {
    let sys = system_for(mode);
    match decl {
        Decl::SymbolDecl { name: x, ty } => {
            public(mode, &[ty])?;
            sys.check_entry(ctx, &name(x), ty, None, fuel)?;
            Ok((ctx.push(name(x), ty.clone()), None))
        }
        Decl::Definition { name: x, ty, body } => {
            public(mode, &[body])?;
            let ty = match ty {
                Some(ty) => {
                    public(mode, &[ty])?;
                    ty.clone()
                }
                None => sys.infer(ctx, body, fuel)?,
            };
            sys.check_entry(ctx, &name(x), &ty, Some(body), fuel)?;
            Ok((ctx.push_definition(name(x), ty.clone(), body.clone()), Some(ty)))
        }
        Decl::AssertJudgment { subject, ty } => {
            public(mode, &[subject, ty])?;
            if ty.as_sort().is_none() {
                sys.infer_sort(ctx, ty, fuel)?;
            }
            sys.check(ctx, subject, ty, fuel)?;
            Ok((ctx.clone(), None))
        }
        Decl::AssertConv { a, b } => {
            public(mode, &[a, b])?;
            sys.infer(ctx, a, fuel)?;
            sys.infer(ctx, b, fuel)?;
            if sys.conv(ctx, a, b, fuel)? {
                Ok((ctx.clone(), None))
            } else {
                Err(TypeError::NotConvertible {
                    a: a.clone(),
                    b: b.clone(),
                })
            }
        }
    }
}

/// A human-readable rendering of what a declaration asks the kernel.
pub fn judgment(mode: Mode, decl: &Decl) -> String {
    let p = |t: &Term| print_term(t, mode);
    match decl {
        Decl::SymbolDecl { name, ty } => format!("{name} : {}", p(ty)),
        Decl::Definition { name, ty: Some(ty), body } => format!("{name} := {} : {}", p(body), p(ty)),
        Decl::Definition { name, ty: None, body } => format!("{name} := {}", p(body)),
        Decl::AssertJudgment { subject, ty } => format!("⊢ {} : {}", p(subject), p(ty)),
        Decl::AssertConv { a, b } => format!("⊢ {} ≡ {}", p(a), p(b)),
    }
}

/// Checks every declaration in file order with the kernel of `dev.mode`.
/// Each declaration gets its own copy of `fuel`.
pub fn check_development(dev: &Development, fuel: Fuel) -> Result<Checked, Diagnostic> {
    let mut ctx = Context::new();
    let mut definitions = Vec::new();
    for d in &dev.decls {
        let (next, def_ty) = check_decl(dev.mode, &ctx, &d.decl, &mut fuel.clone()).map_err(|error| Diagnostic {
            span: d.span.clone(),
            judgment: judgment(dev.mode, &d.decl),
            error,
        })?;
        if let (Decl::Definition { name, body, .. }, Some(ty)) = (&d.decl, def_ty) {
            definitions.push((name.clone(), body.clone(), ty));
        }
        ctx = next;
    }
    Ok(Checked {
        mode: dev.mode,
        ctx,
        definitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_file;

    fn check(src: &str) -> Result<Checked, Diagnostic> {
        check_development(&parse_file(src, "test").unwrap(), Fuel::default())
    }

    #[test]
    fn empty_file_checks() {
        assert!(check("").is_ok());
    }

    #[test]
    fn definitions_unfold_in_conversion() {
        let c = check(
            "symbol nat : Type;\nsymbol z : nat;\ndefinition id := \\x: nat. x;\nconvertible id z, z;",
        )
        .unwrap();
        assert_eq!(c.definitions.len(), 1);
        assert_eq!(c.definitions[0].2.to_string(), "nat -> nat");
    }

    #[test]
    fn diagnostics_carry_spans() {
        let e = check("symbol nat : Type;\nsymbol z : nat;\nassert z : Prop;").unwrap_err();
        assert_eq!(e.span.line, 3);
        assert_eq!(e.judgment, "⊢ z : Prop");
        assert!(matches!(e.error, TypeError::TypeMismatch { .. }));
    }

    #[test]
    fn duplicates_are_rejected() {
        let e = check("symbol a : Type;\nsymbol a : Type;").unwrap_err();
        assert!(matches!(e.error, TypeError::DuplicateName(_)));
    }

    #[test]
    fn protected_symbol_in_lf_mode() {
        let e = check(
            "#MODE lf\nsymbol nat : Type;\nsymbol even : El(nat) -> Prop;\nsymbol three : El(nat);\nassert pair'(nat, even, three) : El(psub(nat, even));",
        )
        .unwrap_err();
        assert!(e.is_protected_symbol());
    }

    #[test]
    fn not_convertible() {
        let e = check("symbol A : Prop;\nsymbol B : Prop;\nconvertible A, B;").unwrap_err();
        assert!(matches!(e.error, TypeError::NotConvertible { .. }));
    }
}
