//! Tokens for the surface language. Unicode spellings are folded into their
//! ASCII counterparts here, so the parser only sees one alphabet.

use super::diag::{ParseError, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Fuel,
    Backslash,
    Dot,
    DotDot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Define,
    Arrow,
    Star,
    Caret,
    Subset,
    Implies,
    RelEq,
    ConvL,
    ConvR,
    Minus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Fuel => "#fuel",
            Tok::Backslash => "\\",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Define => ":=",
            Tok::Arrow => "->",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Subset => "<=",
            Tok::Implies => "=>",
            Tok::RelEq => "~~",
            Tok::ConvL => "<|",
            Tok::ConvR => "|>",
            Tok::Minus => "-",
            Tok::Ident(_) | Tok::Num(_) | Tok::Eof => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub const KEYWORDS: &[&str] = &[
    "def", "type", "proof", "check", "normalize", "analyze", "dump", "all", "rec", "fun", "Fun", "conv_i",
    "conv_e", "iota", "rho", "pi", "via", "Dparam", "Dind", "Sum", "Prod",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

const COMBINING_DOT: char = '\u{307}';

fn ident_start(c: char) -> bool {
    c.is_alphabetic() && !"λΛιρπ∀".contains(c) || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() && !"λΛιρπ∀".contains(c) || c == '_' || c == '\'' || c == COMBINING_DOT
}

/// Splits `src` into tokens. Dotted names are reserved for generated code
/// and are only accepted when `allow_dotted` is set.
pub fn lex(src: &str, allow_dotted: bool) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let rest = &src[start..];
        if rest.starts_with("--") {
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                it.next();
            }
            continue;
        }
        if ident_start(c) {
            let mut end = start;
            while let Some(&(i, c)) = it.peek() {
                if !ident_continue(c) {
                    break;
                }
                end = i + c.len_utf8();
                it.next();
            }
            let text = &src[start..end];
            if text.contains(COMBINING_DOT) && !allow_dotted {
                return Err(ParseError::new(
                    "reserved-name",
                    Span::new(start, end),
                    format!("`{text}` uses a dotted name, which is reserved for generated proofs"),
                ));
            }
            out.push(Token {
                tok: Tok::Ident(text.to_string()),
                span: Span::new(start, end),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                it.next();
            }
            let n = src[start..end].parse().map_err(|_| {
                ParseError::new("syntax", Span::new(start, end), "number out of range")
            })?;
            out.push(Token {
                tok: Tok::Num(n),
                span: Span::new(start, end),
            });
            continue;
        }
        const SYMBOLS: &[(&str, Tok)] = &[
            ("#fuel", Tok::Fuel),
            ("⋅⋅", Tok::DotDot),
            ("..", Tok::DotDot),
            (":=", Tok::Define),
            ("->", Tok::Arrow),
            ("<=", Tok::Subset),
            ("=>", Tok::Implies),
            ("~~", Tok::RelEq),
            ("<|", Tok::ConvL),
            ("|>", Tok::ConvR),
            ("\\", Tok::Backslash),
            ("λ", Tok::Backslash),
            (".", Tok::Dot),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[", Tok::LBracket),
            ("]", Tok::RBracket),
            ("{", Tok::LBrace),
            ("}", Tok::RBrace),
            (",", Tok::Comma),
            (":", Tok::Colon),
            ("→", Tok::Arrow),
            ("*", Tok::Star),
            ("·", Tok::Star),
            ("⋅", Tok::Star),
            ("^", Tok::Caret),
            ("∪", Tok::Caret),
            ("⊆", Tok::Subset),
            ("⇒", Tok::Implies),
            ("≅", Tok::RelEq),
            ("◁", Tok::ConvL),
            ("▷", Tok::ConvR),
            ("-", Tok::Minus),
        ];
        const WORDS: &[(&str, &str)] = &[("∀", "all"), ("Λ", "Fun"), ("ι", "iota"), ("ρ", "rho"), ("π", "pi")];
        if let Some((sym, tok)) = SYMBOLS.iter().find(|(s, _)| rest.starts_with(s)) {
            let end = start + sym.len();
            out.push(Token {
                tok: tok.clone(),
                span: Span::new(start, end),
            });
            while it.peek().is_some_and(|&(i, _)| i < end) {
                it.next();
            }
            continue;
        }
        if let Some((sym, word)) = WORDS.iter().find(|(s, _)| rest.starts_with(s)) {
            let end = start + sym.len();
            out.push(Token {
                tok: Tok::Ident(word.to_string()),
                span: Span::new(start, end),
            });
            it.next();
            continue;
        }
        return Err(ParseError::new(
            "syntax",
            Span::new(start, start + c.len_utf8()),
            format!("unexpected character `{c}`"),
        ));
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}
