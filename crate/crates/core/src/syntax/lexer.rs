use super::parser::{ParseError, ParseErrorKind};

const KEYWORDS: &[&str] = &["and", "or", "not", "exists", "forall", "Top", "Bottom", "T"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Number(f64),
    Subsumed,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Dot,
    Comma,
    Bar,
    At,
    Colon,
    Geq,
    Leq,
    Gt,
    Lt,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Number(n) => format!("number {n}"),
            TokenKind::Subsumed => "`[=`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Bar => "`|`".into(),
            TokenKind::At => "`@`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Geq => "`>=`".into(),
            TokenKind::Leq => "`<=`".into(),
            TokenKind::Gt => "`>`".into(),
            TokenKind::Lt => "`<`".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// Tokenises `text`. Positions are 1-based; `line` and `col0` give the
/// position of the first character, so a statement body can be lexed with
/// its offset inside the original line.
pub(crate) fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = line;
    let mut col = col0;
    while i < chars.len() {
        let c = chars[i];
        let start_col = col;
        let tok = |kind| Token {
            kind,
            line,
            column: start_col,
        };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[s..i].iter().collect();
            col += i - s;
            out.push(tok(TokenKind::Ident(word)));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let signed_number = (c == '-' || c == '+') && next.is_some_and(|d| d.is_ascii_digit());
        if c.is_ascii_digit() || signed_number {
            let s = i;
            if signed_number {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len()
                && chars[i] == '.'
                && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())
            {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[s..i].iter().collect();
            col += i - s;
            let value: f64 = lit.parse().map_err(|_| ParseError {
                line,
                column: start_col,
                kind: ParseErrorKind::Syntax(format!("malformed number `{lit}`")),
            })?;
            out.push(tok(TokenKind::Number(value)));
            continue;
        }
        let (kind, width) = match (c, next) {
            ('[', Some('=')) => (TokenKind::Subsumed, 2),
            ('>', Some('=')) => (TokenKind::Geq, 2),
            ('<', Some('=')) => (TokenKind::Leq, 2),
            ('>', _) => (TokenKind::Gt, 1),
            ('<', _) => (TokenKind::Lt, 1),
            ('[', _) => (TokenKind::LBracket, 1),
            (']', _) => (TokenKind::RBracket, 1),
            ('(', _) => (TokenKind::LParen, 1),
            (')', _) => (TokenKind::RParen, 1),
            ('{', _) => (TokenKind::LBrace, 1),
            ('}', _) => (TokenKind::RBrace, 1),
            ('.', _) => (TokenKind::Dot, 1),
            (',', _) => (TokenKind::Comma, 1),
            ('|', _) => (TokenKind::Bar, 1),
            ('@', _) => (TokenKind::At, 1),
            (':', _) => (TokenKind::Colon, 1),
            _ => {
                return Err(ParseError {
                    line,
                    column: start_col,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
                })
            }
        };
        out.push(tok(kind));
        i += width;
        col += width;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        lex(s, 1, 1).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn weights_and_operators() {
        assert_eq!(
            kinds("T(A) [= B @ -50"),
            vec![
                TokenKind::Ident("T".into()),
                TokenKind::LParen,
                TokenKind::Ident("A".into()),
                TokenKind::RParen,
                TokenKind::Subsumed,
                TokenKind::Ident("B".into()),
                TokenKind::At,
                TokenKind::Number(-50.0),
            ]
        );
        assert_eq!(kinds(">= 0.25"), vec![TokenKind::Geq, TokenKind::Number(0.25)]);
        assert_eq!(
            kinds("[0.4,0.8]"),
            vec![
                TokenKind::LBracket,
                TokenKind::Number(0.4),
                TokenKind::Comma,
                TokenKind::Number(0.8),
                TokenKind::RBracket
            ]
        );
    }

    #[test]
    fn positions_and_errors() {
        let toks = lex("A and\n  B", 3, 5).unwrap();
        assert_eq!((toks[0].line, toks[0].column), (3, 5));
        assert_eq!((toks[2].line, toks[2].column), (4, 3));
        let err = lex("A $ B", 1, 1).unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(kinds("A # B and C"), vec![TokenKind::Ident("A".into())]);
    }
}
