//! Lexer shared by all the DSL file formats.

use crate::diag::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Number(usize),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    Arrow,     // ->
    EqEq,      // ==
    Eq,        // =
    ColonEq,   // :=
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

pub fn lex(source: &str) -> Result<Vec<Token>, (Span, String)> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' || (c == '/' && bytes.get(i + 1) == Some(&b'/')) {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let kind = match c {
            '(' => {
                i += 1;
                TokenKind::LParen
            }
            ')' => {
                i += 1;
                TokenKind::RParen
            }
            '{' => {
                i += 1;
                TokenKind::LBrace
            }
            '}' => {
                i += 1;
                TokenKind::RBrace
            }
            '[' => {
                i += 1;
                TokenKind::LBracket
            }
            ']' => {
                i += 1;
                TokenKind::RBracket
            }
            ',' => {
                i += 1;
                TokenKind::Comma
            }
            ';' => {
                i += 1;
                TokenKind::Semi
            }
            '.' => {
                i += 1;
                TokenKind::Dot
            }
            ':' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    TokenKind::ColonEq
                } else {
                    i += 1;
                    TokenKind::Colon
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    TokenKind::Arrow
                } else {
                    return Err((Span::new(start, i + 1), "stray `-`".to_owned()));
                }
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 2;
                    TokenKind::EqEq
                } else {
                    i += 1;
                    TokenKind::Eq
                }
            }
            '"' => {
                i += 1;
                let text_start = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err((Span::new(start, i), "unterminated string".to_owned()));
                }
                let text = source[text_start..i].to_owned();
                i += 1;
                TokenKind::Str(text)
            }
            c if c.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: usize = source[start..i].parse().map_err(|_| {
                    (Span::new(start, i), "number out of range".to_owned())
                })?;
                TokenKind::Number(n)
            }
            c if is_ident_start(c) => {
                loop {
                    if i < bytes.len() && is_ident_continue(bytes[i] as char) {
                        i += 1;
                    } else if i < bytes.len()
                        && bytes[i] == b'-'
                        && bytes.get(i + 1).is_some_and(|&b| is_ident_continue(b as char))
                    {
                        // hyphenated names (rule tags); `->` stays an arrow
                        i += 2;
                    } else {
                        break;
                    }
                }
                TokenKind::Ident(source[start..i].to_owned())
            }
            other => {
                return Err((Span::new(start, i + 1), format!("unexpected character `{other}`")));
            }
        };
        tokens.push(Token { kind, span: Span::new(start, i) });
    }
    tokens.push(Token { kind: TokenKind::Eof, span: Span::new(source.len(), source.len()) });
    Ok(tokens)
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '@'
}
