//! Export of encoded developments to Lambdapi concrete syntax.

use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

use super::{Decl, Development, Mode};
use crate::context::{SymbolType, Visibility};
use crate::rewrite::Fuel;
use crate::term::{Name, Sort, Term, TermKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportMode {
    /// The encoding signature followed by the development.
    Signature,
    /// The development alone.
    Development,
}

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("only lf developments can be exported, found a {0} development")]
    WrongMode(Mode),
    #[error("the development does not check: {0}")]
    UncheckedInput(#[from] crate::session::Diagnostic),
}

const LP_KEYWORDS: &[&str] = &[
    "as", "assert", "assertnot", "associative", "assume", "begin", "builtin", "coerce_rule",
    "commutative", "compute", "constant", "debug", "end", "eval", "fail", "flag", "generalize",
    "have", "in", "induction", "inductive", "infix", "injective", "left", "let", "notation",
    "open", "opaque", "prefix", "print", "private", "proofterm", "protected", "prover",
    "prover_timeout", "quantifier", "refine", "reflexivity", "remove", "require", "rewrite",
    "right", "rule", "search", "sequential", "set", "simplify", "solve", "symbol", "symmetry",
    "try", "type", "TYPE", "unif_rule", "verbose", "why3", "with",
];

fn is_simple(x: &str) -> bool {
    let mut cs = x.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An identifier as Lambdapi reads it, escaped with `{|…|}` when needed.
pub fn ident(x: &str) -> String {
    if is_simple(x) && !LP_KEYWORDS.contains(&x) {
        x.to_string()
    } else {
        format!("{{|{x}|}}")
    }
}

const TOP: u8 = 0;
const HEAD: u8 = 1;
const ATOM: u8 = 2;

struct LpPrinter<'a> {
    avoid: BTreeSet<Name>,
    scope: Vec<Name>,
    pattern_vars: &'a [Name],
    out: String,
}

impl LpPrinter<'_> {
    fn binder(&self, hint: &str) -> Name {
        let hint: String = hint.chars().filter(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        let base = if is_simple(&hint) && hint != "_" { hint } else { "x".to_string() };
        let taken = |n: &str| {
            LP_KEYWORDS.contains(&n)
                || super::is_reserved(n)
                || self.avoid.contains(n)
                || self.scope.iter().any(|s| &**s == n)
        };
        let mut candidate = base.clone();
        let mut i = 0;
        while taken(&candidate) {
            candidate = format!("{base}{i}");
            i += 1;
        }
        Name::from(candidate.as_str())
    }

    fn paren(&mut self, on: bool, s: &str) {
        if on {
            self.out.push_str(s);
        }
    }

    fn term(&mut self, t: &Term, prec: u8) {
        match t.kind() {
            TermKind::Sort(Sort::LfType) => self.out.push_str("TYPE"),
            TermKind::Sort(s) => self.out.push_str(s.as_str()),
            TermKind::Bound(i) => {
                let x = self.scope[self.scope.len() - 1 - *i as usize].clone();
                self.out.push_str(&x);
            }
            TermKind::Free(x) => {
                if self.pattern_vars.contains(x) {
                    let _ = write!(self.out, "${x}");
                } else {
                    self.out.push_str(&ident(x));
                }
            }
            TermKind::App(f, a) => {
                self.paren(prec > HEAD, "(");
                self.term(f, HEAD);
                self.out.push(' ');
                self.term(a, ATOM);
                self.paren(prec > HEAD, ")");
            }
            TermKind::Abs(x, a, b) => {
                self.paren(prec > TOP, "(");
                let x = self.binder(x);
                let _ = write!(self.out, "λ {x} : ");
                self.term(a, TOP);
                self.out.push_str(", ");
                self.scope.push(x);
                self.term(b, TOP);
                self.scope.pop();
                self.paren(prec > TOP, ")");
            }
            TermKind::Prod(x, a, b) => {
                self.paren(prec > TOP, "(");
                if b.has_loose_bound(0) {
                    let x = self.binder(x);
                    let _ = write!(self.out, "Π {x} : ");
                    self.term(a, TOP);
                    self.out.push_str(", ");
                    self.scope.push(x);
                } else {
                    self.term(a, HEAD);
                    self.out.push_str(" → ");
                    self.scope.push(Name::from("_"));
                }
                self.term(b, TOP);
                self.scope.pop();
                self.paren(prec > TOP, ")");
            }
            TermKind::Sym(f, args) => {
                let wrap = prec > HEAD && !args.is_empty();
                self.paren(wrap, "(");
                self.out.push_str(&ident(f));
                for a in args {
                    self.out.push(' ');
                    self.term(a, ATOM);
                }
                self.paren(wrap, ")");
            }
        }
    }
}

fn render(t: &Term, pattern_vars: &[Name]) -> String {
    let mut p = LpPrinter {
        avoid: t.free_vars(),
        scope: Vec::new(),
        pattern_vars,
        out: String::new(),
    };
    p.term(t, TOP);
    p.out
}

/// Renders a term of the encoding in Lambdapi syntax.
pub fn lp_term(t: &Term) -> String {
    render(t, &[])
}

/// `Π (x : A) …, R` for a symbol telescope.
fn symbol_type(st: &SymbolType) -> Term {
    st.params
        .iter()
        .rev()
        .fold(st.result.clone(), |acc, (x, ty)| Term::prod_raw(x.clone(), ty.clone(), acc))
}

/// Symbols that head a rewrite rule cannot be declared constant.
fn declaration_keyword(f: &str, st: &SymbolType, rule_heads: &BTreeSet<Name>) -> &'static str {
    match (st.visibility, rule_heads.contains(f)) {
        (Visibility::Protected, _) => "protected symbol",
        (Visibility::Public, true) => "symbol",
        (Visibility::Public, false) => "constant symbol",
    }
}

/// The encoding signature with its rewrite rules.
pub fn signature_text() -> String {
    let sys = crate::lf::system();
    let rule_heads: BTreeSet<Name> = sys
        .rules
        .rules()
        .iter()
        .filter_map(|r| r.lhs.as_sym().map(|(f, _)| f.clone()))
        .collect();
    let mut out = String::from("// Encoding of PVS-Cert in the λΠ-calculus modulo rewriting\n\n");
    for (f, _) in super::LF_BUILTINS {
        let st = sys.signature.get(f).expect("builtin table matches signature");
        let _ = writeln!(
            out,
            "{} {} : {};",
            declaration_keyword(f, st, &rule_heads),
            ident(f),
            lp_term(&symbol_type(st))
        );
    }
    out.push('\n');
    out.push_str("// β-reduction is built into Lambdapi\n");
    for r in sys.rules.rules() {
        let vars: Vec<Name> = r.lhs.free_vars().into_iter().collect();
        let _ = writeln!(
            out,
            "rule {} ↪ {}; // {}",
            render(&r.lhs, &vars),
            render(&r.rhs, &vars),
            r.name
        );
    }
    out
}

fn development_text(dev: &Development) -> String {
    let mut out = String::new();
    for d in &dev.decls {
        let line = match &d.decl {
            Decl::SymbolDecl { name, ty } => {
                format!("constant symbol {} : {};", ident(name), lp_term(ty))
            }
            Decl::Definition { name, ty: Some(ty), body } => {
                format!("symbol {} : {} ≔ {};", ident(name), lp_term(ty), lp_term(body))
            }
            Decl::Definition { name, ty: None, body } => {
                format!("symbol {} ≔ {};", ident(name), lp_term(body))
            }
            Decl::AssertJudgment { subject, ty } => {
                format!("assert ⊢ {} : {};", lp_term(subject), lp_term(ty))
            }
            Decl::AssertConv { a, b } => format!("assert ⊢ {} ≡ {};", lp_term(a), lp_term(b)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Exports an lf development after checking it.
pub fn export_lambdapi(dev: &Development, mode: ExportMode, fuel: Fuel) -> Result<String, ExportError> {
    if dev.mode != Mode::Lf {
        return Err(ExportError::WrongMode(dev.mode));
    }
    crate::session::check_development(dev, fuel)?;
    let mut out = String::from("// Generated by pcert\n");
    if mode == ExportMode::Signature {
        out.push('\n');
        out.push_str(&signature_text());
    }
    if !dev.decls.is_empty() {
        out.push('\n');
        out.push_str(&development_text(dev));
    }
    Ok(out)
}
