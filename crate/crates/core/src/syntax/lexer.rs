use super::{ParseError, ParseErrorKind, SourceSpan};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Mode,
    Colon,
    Semi,
    Define,
    Comma,
    Dot,
    Lambda,
    Pi,
    Arrow,
    LBrace,
    RBrace,
    Bar,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Mode => "`#MODE`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Define => "`:=`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Lambda => "`\\`".into(),
            Tok::Pi => "`!`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
    /// Byte offset and length in the source.
    pub offset: usize,
    pub len: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '?'
}

pub fn tokenize(src: &str, file: &Arc<str>) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(i, c)) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if src[i..].starts_with("//") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        let start = (line, col, i);
        let push = |out: &mut Vec<Token>, tok: Tok, len: usize| {
            out.push(Token {
                tok,
                line: start.0,
                column: start.1,
                offset: start.2,
                len,
            })
        };
        if ident_start(c) {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !ident_continue(d) {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            let text = &src[i..end];
            col += text.chars().count();
            push(&mut out, Tok::Ident(text.to_string()), end - i);
            continue;
        }
        let rest = &src[i..];
        let (tok, len) = if rest.starts_with("#MODE") {
            (Tok::Mode, 5)
        } else if rest.starts_with(":=") {
            (Tok::Define, 2)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else {
            let t = match c {
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '\\' => Tok::Lambda,
                '!' => Tok::Pi,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '|' => Tok::Bar,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnexpectedChar(c),
                        span: SourceSpan {
                            file: file.clone(),
                            line,
                            column: col,
                            length: 1,
                        },
                    })
                }
            };
            (t, c.len_utf8())
        };
        for _ in 0..rest[..len].chars().count() {
            chars.next();
        }
        col += len;
        push(&mut out, tok, len);
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
        offset: src.len(),
        len: 0,
    });
    Ok(out)
}
