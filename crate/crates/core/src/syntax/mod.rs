//! Surface syntax shared by both systems.
//!
//! ```text
//! #MODE pcert
//! symbol nat : Type;
//! definition two : nat := succ (succ zero);
//! assert \x: nat. x : nat -> nat;
//! convertible fst(nat, even, pair(nat, even, two, h)), two;
//! ```

pub mod lambdapi;
mod lexer;
mod parser;
mod printer;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{Term, TermKind};

pub use parser::{parse_file, parse_term};
pub use printer::{print_decl, print_file, print_term};

/// Which kernel a file is checked with; also selects the meaning of the
/// names `Prop`, `Type` and `Kind`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Pcert,
    Lf,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Pcert => "pcert",
            Mode::Lf => "lf",
        }
    }

    pub fn builtins(self) -> &'static [(&'static str, usize)] {
        match self {
            Mode::Pcert => PCERT_BUILTINS,
            Mode::Lf => LF_BUILTINS,
        }
    }

    pub fn builtin_arity(self, f: &str) -> Option<usize> {
        self.builtins().iter().find(|(g, _)| *g == f).map(|(_, n)| *n)
    }

    /// Guesses the mode a term was written in, for display purposes.
    pub fn detect(t: &Term) -> Mode {
        let mut lf = false;
        t.visit(&mut |s| match s.kind() {
            TermKind::Sort(crate::term::Sort::LfType | crate::term::Sort::LfKind) => {
                lf = true
            }
            TermKind::Sym(f, _) if Mode::Pcert.builtin_arity(f).is_none() && Mode::Lf.builtin_arity(f).is_some() => {
                lf = true
            }
            _ => {}
        });
        if lf {
            Mode::Lf
        } else {
            Mode::Pcert
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const PCERT_BUILTINS: &[(&str, usize)] = &[("psub", 2), ("pair", 4), ("fst", 3), ("snd", 3)];

pub const LF_BUILTINS: &[(&str, usize)] = &[
    ("Kind", 0),
    ("Type", 0),
    ("Prop", 0),
    ("type", 0),
    ("prop", 0),
    ("El", 1),
    ("Prf", 1),
    ("fa", 2),
    ("impd", 2),
    ("arrd", 2),
    ("psub", 2),
    ("pair", 4),
    ("fst", 3),
    ("snd", 3),
    ("pair'", 3),
];

const KEYWORDS: &[&str] = &["symbol", "definition", "assert", "convertible"];
const SORT_NAMES: &[&str] = &["Prop", "Type", "Kind", "TYPE", "KIND"];

/// Names that can never denote a variable, in either mode. Reserving the
/// builtins of both modes lets a translated file reuse every user name.
pub fn is_reserved(x: &str) -> bool {
    KEYWORDS.contains(&x)
        || SORT_NAMES.contains(&x)
        || PCERT_BUILTINS.iter().any(|(f, _)| *f == x)
        || LF_BUILTINS.iter().any(|(f, _)| *f == x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn synthetic() -> SourceSpan {
        SourceSpan {
            file: Arc::from("<generated>"),
            line: 0,
            column: 0,
            length: 0,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("`{0}` is reserved")]
    Reserved(String),
    #[error("symbol {symbol} expects {expected} arguments, got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    SymbolDecl { name: String, ty: Term },
    Definition { name: String, ty: Option<Term>, body: Term },
    AssertJudgment { subject: Term, ty: Term },
    AssertConv { a: Term, b: Term },
}

impl Decl {
    pub fn name(&self) -> Option<&str> {
        match self {
            Decl::SymbolDecl { name, .. } | Decl::Definition { name, .. } => Some(name),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Declaration {
    pub decl: Decl,
    pub span: SourceSpan,
}

/// Equality ignores spans.
impl PartialEq for Declaration {
    fn eq(&self, other: &Declaration) -> bool {
        self.decl == other.decl
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Development {
    pub mode: Mode,
    pub decls: Vec<Declaration>,
}

impl Development {
    pub fn new(mode: Mode) -> Development {
        Development {
            mode,
            decls: Vec::new(),
        }
    }

    pub fn push(&mut self, decl: Decl) {
        self.decls.push(Declaration {
            decl,
            span: SourceSpan::synthetic(),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_tables_match_signatures() {
        let pc = crate::pcert::signature();
        assert_eq!(pc.len(), PCERT_BUILTINS.len());
        for (f, n) in PCERT_BUILTINS {
            assert_eq!(pc.get(f).unwrap().arity(), *n);
        }
        let lf = crate::lf::signature();
        assert_eq!(lf.len(), LF_BUILTINS.len());
        for (f, n) in LF_BUILTINS {
            assert_eq!(lf.get(f).unwrap().arity(), *n);
        }
    }

    #[test]
    fn detect_mode() {
        assert_eq!(Mode::detect(&Term::sort(crate::term::Sort::Prop)), Mode::Pcert);
        assert_eq!(Mode::detect(&Term::sym("prop", vec![])), Mode::Lf);
    }
}
