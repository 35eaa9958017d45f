use std::sync::Arc;

use super::lexer::{tokenize, Tok, Token};
use super::{is_reserved, Decl, Declaration, Development, Mode, ParseError, ParseErrorKind, SourceSpan};
use crate::term::{Sort, Term};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    file: Arc<str>,
    mode: Mode,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn span_of(&self, t: &Token) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            line: t.line,
            column: t.column,
            length: t.len,
        }
    }

    fn error(&self, t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            span: self.span_of(t),
        }
    }

    fn expect(&mut self, want: Tok) -> PResult<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.error(
                &t,
                ParseErrorKind::Unexpected {
                    expected: want.describe(),
                    found: t.tok.describe(),
                },
            ))
        }
    }

    /// An identifier usable as a variable or declaration name.
    fn binder_name(&mut self) -> PResult<String> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if is_reserved(s) => {
                Err(self.error(&t, ParseErrorKind::Reserved(s.clone())))
            }
            Tok::Ident(s) => Ok(s.clone()),
            other => Err(self.error(
                &t,
                ParseErrorKind::Unexpected {
                    expected: "identifier".into(),
                    found: other.describe(),
                },
            )),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek() {
            Tok::Lambda | Tok::Pi => {
                let lambda = self.next().tok == Tok::Lambda;
                let x = self.binder_name()?;
                self.expect(Tok::Colon)?;
                let annot = self.term()?;
                self.expect(Tok::Dot)?;
                let body = self.term()?;
                Ok(if lambda {
                    Term::abs(&x, annot, body)
                } else {
                    Term::prod(&x, annot, body)
                })
            }
            _ => {
                let lhs = self.app()?;
                if *self.peek() == Tok::Arrow {
                    self.next();
                    let rhs = self.term()?;
                    Ok(Term::arrow(lhs, rhs))
                } else {
                    Ok(lhs)
                }
            }
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !super::KEYWORDS.contains(&s.as_str()),
            Tok::LParen | Tok::LBrace => true,
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<Term> {
        let mut f = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            f = Term::app(f, a);
        }
        Ok(f)
    }

    fn atom(&mut self) -> PResult<Term> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => self.ident(&t, s),
            Tok::LParen => {
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::LBrace => {
                let x = self.binder_name()?;
                self.expect(Tok::Colon)?;
                let ty = self.term()?;
                self.expect(Tok::Bar)?;
                let pred = self.term()?;
                self.expect(Tok::RBrace)?;
                Ok(Term::sym("psub", vec![ty.clone(), Term::abs(&x, ty, pred)]))
            }
            other => Err(self.error(
                &t,
                ParseErrorKind::Unexpected {
                    expected: "a term".into(),
                    found: other.describe(),
                },
            )),
        }
    }

    fn ident(&mut self, t: &Token, s: &str) -> PResult<Term> {
        match (s, self.mode) {
            ("TYPE", _) => return Ok(Term::sort(Sort::LfType)),
            ("KIND", _) => return Ok(Term::sort(Sort::LfKind)),
            ("Prop", Mode::Pcert) => return Ok(Term::sort(Sort::Prop)),
            ("Type", Mode::Pcert) => return Ok(Term::sort(Sort::Type)),
            ("Kind", Mode::Pcert) => return Ok(Term::sort(Sort::Kind)),
            _ => {}
        }
        let Some(arity) = self.mode.builtin_arity(s) else {
            if is_reserved(s) {
                return Err(self.error(t, ParseErrorKind::Reserved(s.to_string())));
            }
            return Ok(Term::var(s));
        };
        if arity == 0 {
            return Ok(Term::sym(s, vec![]));
        }
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.next();
            loop {
                args.push(self.term()?);
                let sep = self.next();
                match &sep.tok {
                    Tok::Comma => continue,
                    Tok::RParen => break,
                    other => {
                        return Err(self.error(
                            &sep,
                            ParseErrorKind::Unexpected {
                                expected: "`,` or `)`".into(),
                                found: other.describe(),
                            },
                        ))
                    }
                }
            }
        }
        if args.len() != arity {
            return Err(self.error(
                t,
                ParseErrorKind::ArityMismatch {
                    symbol: s.to_string(),
                    expected: arity,
                    found: args.len(),
                },
            ));
        }
        Ok(Term::sym(s, args))
    }

    fn decl(&mut self) -> PResult<Declaration> {
        let start = self.next();
        let keyword = match &start.tok {
            Tok::Ident(s) => s.clone(),
            other => {
                return Err(self.error(
                    &start,
                    ParseErrorKind::Unexpected {
                        expected: "a declaration".into(),
                        found: other.describe(),
                    },
                ))
            }
        };
        let decl = match keyword.as_str() {
            "symbol" => {
                let name = self.binder_name()?;
                self.expect(Tok::Colon)?;
                let ty = self.term()?;
                Decl::SymbolDecl { name, ty }
            }
            "definition" => {
                let name = self.binder_name()?;
                let ty = if *self.peek() == Tok::Colon {
                    self.next();
                    Some(self.term()?)
                } else {
                    None
                };
                self.expect(Tok::Define)?;
                let body = self.term()?;
                Decl::Definition { name, ty, body }
            }
            "assert" => {
                let subject = self.term()?;
                self.expect(Tok::Colon)?;
                let ty = self.term()?;
                Decl::AssertJudgment { subject, ty }
            }
            "convertible" => {
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                Decl::AssertConv { a, b }
            }
            _ => {
                return Err(self.error(
                    &start,
                    ParseErrorKind::Unexpected {
                        expected: "a declaration".into(),
                        found: start.tok.describe(),
                    },
                ))
            }
        };
        let end = self.expect(Tok::Semi)?;
        let mut span = self.span_of(&start);
        span.length = end.offset + end.len - start.offset;
        Ok(Declaration { decl, span })
    }
}

/// Parses a whole file; `file` names it in diagnostics.
pub fn parse_file(src: &str, file: &str) -> Result<Development, ParseError> {
    let file: Arc<str> = Arc::from(file);
    let toks = tokenize(src, &file)?;
    let mut p = Parser {
        toks,
        pos: 0,
        file,
        mode: Mode::Pcert,
    };
    if *p.peek() == Tok::Mode {
        p.next();
        let t = p.next();
        p.mode = match &t.tok {
            Tok::Ident(s) if s == "pcert" => Mode::Pcert,
            Tok::Ident(s) if s == "lf" => Mode::Lf,
            other => {
                return Err(p.error(&t, ParseErrorKind::UnknownMode(other.describe())))
            }
        };
    }
    let mut decls = Vec::new();
    while *p.peek() != Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(Development {
        mode: p.mode,
        decls,
    })
}

/// Parses a single term.
pub fn parse_term(src: &str, mode: Mode) -> Result<Term, ParseError> {
    let file: Arc<str> = Arc::from("<term>");
    let toks = tokenize(src, &file)?;
    let mut p = Parser {
        toks,
        pos: 0,
        file,
        mode,
    };
    let t = p.term()?;
    let end = p.next();
    if end.tok != Tok::Eof {
        return Err(p.error(
            &end,
            ParseErrorKind::Unexpected {
                expected: "end of input".into(),
                found: end.tok.describe(),
            },
        ));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(s: &str) -> Term {
        parse_term(s, Mode::Pcert).unwrap()
    }

    #[test]
    fn symbol_declaration() {
        let d = parse_file("symbol T : Type;", "f").unwrap();
        assert_eq!(d.mode, Mode::Pcert);
        assert_eq!(
            d.decls[0].decl,
            Decl::SymbolDecl {
                name: "T".into(),
                ty: Term::sort(Sort::Type)
            }
        );
        assert_eq!(d.decls[0].span.length, 16);
    }

    #[test]
    fn under_applied_builtin() {
        let e = parse_file("symbol x : fst(T);", "f").unwrap_err();
        assert_eq!(
            e.kind,
            ParseErrorKind::ArityMismatch {
                symbol: "fst".into(),
                expected: 3,
                found: 1
            }
        );
        assert_eq!((e.span.line, e.span.column), (1, 12));
    }

    #[test]
    fn arrows_associate_right_and_application_left() {
        let t = pc("A -> B -> C");
        assert_eq!(
            t,
            Term::arrow(Term::var("A"), Term::arrow(Term::var("B"), Term::var("C")))
        );
        let a = pc("f x y");
        assert_eq!(a, Term::apps(Term::var("f"), [Term::var("x"), Term::var("y")]));
    }

    #[test]
    fn binders_extend_right() {
        let t = pc("\\x: A. f x -> B");
        let expected = Term::abs(
            "x",
            Term::var("A"),
            Term::arrow(Term::app(Term::var("f"), Term::var("x")), Term::var("B")),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn subtype_sugar() {
        let t = pc("{n: nat | even n}");
        let expected = Term::sym(
            "psub",
            vec![
                Term::var("nat"),
                Term::abs("n", Term::var("nat"), Term::app(Term::var("even"), Term::var("n"))),
            ],
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn sorts_depend_on_mode() {
        assert_eq!(pc("Prop"), Term::sort(Sort::Prop));
        assert_eq!(parse_term("Prop", Mode::Lf).unwrap(), Term::sym("Prop", vec![]));
        assert_eq!(parse_term("TYPE", Mode::Lf).unwrap(), Term::sort(Sort::LfType));
        assert_eq!(
            parse_term("El(prop)", Mode::Lf).unwrap(),
            Term::sym("El", vec![Term::sym("prop", vec![])])
        );
    }

    #[test]
    fn reserved_names_are_rejected() {
        assert!(matches!(
            parse_term("El", Mode::Pcert).unwrap_err().kind,
            ParseErrorKind::Reserved(_)
        ));
        assert!(parse_file("symbol prop : Type;", "f").is_err());
    }

    #[test]
    fn assert_and_convertible() {
        let d = parse_file(
            "#MODE pcert\nassert \\x: A. x : A -> A;\nconvertible a, b; // done",
            "f",
        )
        .unwrap();
        assert_eq!(d.decls.len(), 2);
        assert_eq!(d.decls[1].span.line, 3);
    }

    #[test]
    fn missing_semicolon() {
        let e = parse_file("symbol a : A symbol b : B;", "f").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Unexpected { .. }));
    }

    #[test]
    fn unknown_mode() {
        assert!(parse_file("#MODE coq", "f").is_err());
    }
}
