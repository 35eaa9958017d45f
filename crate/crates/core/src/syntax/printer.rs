use std::collections::BTreeSet;
use std::fmt::Write;

use super::{is_reserved, Decl, Declaration, Development, Mode};
use crate::term::{fresh_name, Name, Term, TermKind};

const TOP: u8 = 0;
const HEAD: u8 = 1;
const ATOM: u8 = 2;

struct Printer {
    mode: Mode,
    free: BTreeSet<Name>,
    scope: Vec<Name>,
    out: String,
}

impl Printer {
    fn binder(&self, hint: &str) -> Name {
        fresh_name(hint, |n| {
            is_reserved(n) || self.free.contains(n) || self.scope.iter().any(|s| &**s == n)
        })
    }

    fn open(&mut self, prec: u8, need: u8) {
        if prec > need {
            self.out.push('(');
        }
    }

    fn close(&mut self, prec: u8, need: u8) {
        if prec > need {
            self.out.push(')');
        }
    }

    fn under(&mut self, x: Name, body: &Term, prec: u8) {
        self.scope.push(x);
        self.term(body, prec);
        self.scope.pop();
    }

    fn term(&mut self, t: &Term, prec: u8) {
        match t.kind() {
            TermKind::Sort(s) => self.out.push_str(s.as_str()),
            TermKind::Bound(i) => {
                let i = *i as usize;
                if i < self.scope.len() {
                    let x = self.scope[self.scope.len() - 1 - i].clone();
                    self.out.push_str(&x);
                } else {
                    let _ = write!(self.out, "#{}", i - self.scope.len());
                }
            }
            TermKind::Free(x) => self.out.push_str(x),
            TermKind::App(f, a) => {
                self.open(prec, HEAD);
                self.term(f, HEAD);
                self.out.push(' ');
                self.term(a, ATOM);
                self.close(prec, HEAD);
            }
            TermKind::Abs(x, a, b) => {
                self.open(prec, TOP);
                let x = self.binder(x);
                let _ = write!(self.out, "\\{x}: ");
                self.term(a, TOP);
                self.out.push_str(". ");
                self.under(x, b, TOP);
                self.close(prec, TOP);
            }
            TermKind::Prod(x, a, b) => {
                self.open(prec, TOP);
                if b.has_loose_bound(0) {
                    let x = self.binder(x);
                    let _ = write!(self.out, "!{x}: ");
                    self.term(a, TOP);
                    self.out.push_str(". ");
                    self.under(x, b, TOP);
                } else {
                    self.term(a, HEAD);
                    self.out.push_str(" -> ");
                    // the binder is unused, so any name will do
                    self.under(Name::from("_"), b, TOP);
                }
                self.close(prec, TOP);
            }
            TermKind::Sym(f, args) => {
                if let (Mode::Pcert, "psub", [ty, p]) = (self.mode, &**f, &args[..]) {
                    if let TermKind::Abs(x, a, body) = p.kind() {
                        if a == ty {
                            let x = self.binder(x);
                            let _ = write!(self.out, "{{{x}: ");
                            self.term(ty, TOP);
                            self.out.push_str(" | ");
                            self.under(x, body, TOP);
                            self.out.push('}');
                            return;
                        }
                    }
                }
                self.out.push_str(f);
                if !args.is_empty() {
                    self.out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            self.out.push_str(", ");
                        }
                        self.term(a, TOP);
                    }
                    self.out.push(')');
                }
            }
        }
    }
}

fn new_printer(mode: Mode, terms: &[&Term]) -> Printer {
    let mut free = BTreeSet::new();
    for t in terms {
        free.extend(t.free_vars());
    }
    Printer {
        mode,
        free,
        scope: Vec::new(),
        out: String::new(),
    }
}

/// Renders `t` in the surface syntax of `mode`. Binder names are primed
/// as needed so that the output parses back to an α-equivalent term.
pub fn print_term(t: &Term, mode: Mode) -> String {
    let mut p = new_printer(mode, &[t]);
    p.term(t, TOP);
    p.out
}

pub fn print_decl(d: &Declaration, mode: Mode) -> String {
    let p = |t: &Term| print_term(t, mode);
    match &d.decl {
        Decl::SymbolDecl { name, ty } => format!("symbol {name} : {};", p(ty)),
        Decl::Definition { name, ty: Some(ty), body } => {
            format!("definition {name} : {} := {};", p(ty), p(body))
        }
        Decl::Definition { name, ty: None, body } => format!("definition {name} := {};", p(body)),
        Decl::AssertJudgment { subject, ty } => format!("assert {} : {};", p(subject), p(ty)),
        Decl::AssertConv { a, b } => format!("convertible {}, {};", p(a), p(b)),
    }
}

pub fn print_file(dev: &Development) -> String {
    let mut out = format!("#MODE {}\n", dev.mode);
    for d in &dev.decls {
        out.push_str(&print_decl(d, dev.mode));
        out.push('\n');
    }
    out
}
