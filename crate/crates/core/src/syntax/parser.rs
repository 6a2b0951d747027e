use std::fmt;

use thiserror::Error;

use super::lexer::{is_keyword, lex, Token, TokenKind};
use super::{
    Assertion, Axiom, Concept, ConditionalConstraint, DefeasibleInclusion, Inclusion,
    ProbAssertion, Signature, Theta,
};

/// Identifier namespace expected at a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Namespace {
    Concept,
    Role,
    Individual,
}

impl fmt::Display for Namespace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Namespace::Concept => "concept name",
            Namespace::Role => "role name",
            Namespace::Individual => "individual name",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown {expected} `{name}`")]
    UnknownIdentifier { name: String, expected: Namespace },
    #[error("`T(..)` cannot be nested inside another `T(..)`")]
    NestedTypicality,
    #[error("`T(..)` is only allowed as the whole left-hand side of an inclusion")]
    MisplacedTypicality,
    #[error("defeasible inclusion for `{0}`, which is not declared distinguished")]
    UndeclaredSubject(String),
    #[error("`def({declared})` block contains an inclusion for `T({used})`")]
    SubjectMismatch { declared: String, used: String },
    #[error("`{0}` is declared distinguished more than once")]
    DuplicateDeclaration(String),
    #[error("{0}")]
    OutOfRange(String),
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// One line of a `.wkb` file.
#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Distinguished(Vec<String>),
    Axiom(Axiom),
}

/// Parses a concept, resolving every identifier against `sig`.
/// `T(..)` may appear anywhere (but not nested).
pub fn parse_concept(text: &str, sig: &Signature) -> Result<Concept, ParseError> {
    parse_concept_with(text, Some(sig))
}

/// Parses a concept without resolving identifiers.
pub fn parse_concept_unchecked(text: &str) -> Result<Concept, ParseError> {
    parse_concept_with(text, None)
}

fn parse_concept_with(text: &str, sig: Option<&Signature>) -> Result<Concept, ParseError> {
    let mut p = Parser::new(text, 1, 1, sig)?;
    p.typ_policy = TypPolicy::Anywhere;
    let c = p.concept()?;
    p.finish()?;
    Ok(c)
}

/// Parses a single axiom, with or without a `.wkb` statement prefix.
///
/// Bare forms: `C [= D`, `C [= D >= n`, `T(C) [= D @ w`, `C(a)`,
/// `r(a,b)`, `C(a) > n`, `(C | D)[l,u]`, `P(C(a))[p]`. With `sig` given,
/// identifiers are resolved against it.
pub fn parse_axiom(text: &str, sig: Option<&Signature>) -> Result<Axiom, ParseError> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    if let Some((head, rest)) = split_prefix(trimmed) {
        let col = 1 + offset + (trimmed.len() - rest.len());
        return match parse_prefixed(head, rest, 1, col, sig)? {
            Statement::Axiom(ax) => Ok(ax),
            Statement::Distinguished(_) => Err(ParseError {
                line: 1,
                column: 1 + offset,
                kind: ParseErrorKind::Syntax("expected an axiom, found a declaration".into()),
            }),
        };
    }
    let mut p = Parser::new(text, 1, 1, sig)?;
    let ax = p.bare_axiom()?;
    p.finish()?;
    Ok(ax)
}

/// Parses one `.wkb` line. Blank and comment-only lines yield `None`.
pub fn parse_statement(line_text: &str, line: usize) -> Result<Option<Statement>, ParseError> {
    let code = match line_text.find('#') {
        Some(i) => &line_text[..i],
        None => line_text,
    };
    let trimmed = code.trim_start();
    if trimmed.trim().is_empty() {
        return Ok(None);
    }
    let offset = code.len() - trimmed.len();
    match split_prefix(trimmed) {
        Some((head, rest)) => {
            let col = 1 + offset + (trimmed.len() - rest.len());
            parse_prefixed(head, rest, line, col, None).map(Some)
        }
        None => Err(ParseError {
            line,
            column: 1 + offset,
            kind: ParseErrorKind::Syntax(
                "expected one of `distinguished:`, `strict:`, `def(..):`, `assert:`, `fuzzy:`, \
                 `fuzzy-assert:`, `cc:`, `passert:`"
                    .into(),
            ),
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Head {
    Distinguished,
    Strict,
    Def,
    Assert,
    Fuzzy,
    FuzzyAssert,
    Cc,
    Passert,
}

const PREFIXES: &[(&str, Head)] = &[
    ("distinguished:", Head::Distinguished),
    ("strict:", Head::Strict),
    ("def", Head::Def),
    ("assert:", Head::Assert),
    ("fuzzy-assert:", Head::FuzzyAssert),
    ("fuzzy:", Head::Fuzzy),
    ("cc:", Head::Cc),
    ("passert:", Head::Passert),
];

fn split_prefix(s: &str) -> Option<(Head, &str)> {
    for (p, head) in PREFIXES {
        if let Some(rest) = s.strip_prefix(p) {
            if *head == Head::Def && !rest.trim_start().starts_with('(') {
                continue;
            }
            return Some((*head, rest));
        }
    }
    None
}

fn parse_prefixed(
    head: Head,
    rest: &str,
    line: usize,
    col: usize,
    sig: Option<&Signature>,
) -> Result<Statement, ParseError> {
    let mut p = Parser::new(rest, line, col, sig)?;
    let st = match head {
        Head::Distinguished => Statement::Distinguished(p.name_list()?),
        Head::Strict => {
            let inc = p.inclusion(false)?;
            Statement::Axiom(Axiom::Strict(inc))
        }
        Head::Def => Statement::Axiom(Axiom::Typicality(p.def_block()?)),
        Head::Assert => Statement::Axiom(Axiom::Assertion(p.assertion()?)),
        Head::Fuzzy => Statement::Axiom(p.fuzzy_inclusion()?),
        Head::FuzzyAssert => Statement::Axiom(p.fuzzy_assertion()?),
        Head::Cc => Statement::Axiom(Axiom::Conditional(p.conditional()?)),
        Head::Passert => Statement::Axiom(Axiom::Probabilistic(p.prob_assertion()?)),
    };
    p.finish()?;
    Ok(st)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TypPolicy {
    Forbidden,
    Anywhere,
}

struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    sig: Option<&'s Signature>,
    end: (usize, usize),
    typ_policy: TypPolicy,
    in_typ: bool,
}

impl<'s> Parser<'s> {
    fn new(
        text: &str,
        line: usize,
        col: usize,
        sig: Option<&'s Signature>,
    ) -> Result<Self, ParseError> {
        let toks = lex(text, line, col)?;
        let lines = text.split('\n').count();
        let last = text.rsplit('\n').next().unwrap_or("");
        let end_col = if lines == 1 {
            col + last.chars().count()
        } else {
            1 + last.chars().count()
        };
        Ok(Parser {
            toks,
            pos: 0,
            sig,
            end: (line + lines - 1, end_col),
            typ_policy: TypPolicy::Forbidden,
            in_typ: false,
        })
    }

    fn peek(&self) -> Option<&TokenKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn peek_at(&self, k: usize) -> Option<&TokenKind> {
        self.toks.get(self.pos + k).map(|t| &t.kind)
    }

    fn position(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.position();
        ParseError { line, column, kind }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = self
            .peek()
            .map(TokenKind::describe)
            .unwrap_or_else(|| "end of input".into());
        self.error(ParseErrorKind::Syntax(format!(
            "expected {expected}, found {found}"
        )))
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<(), ParseError> {
        if self.eat(&kind) {
            Ok(())
        } else {
            Err(self.unexpected(&kind.describe()))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        match self.peek() {
            Some(TokenKind::Ident(s)) if s == kw => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(self.unexpected("end of statement"))
        } else {
            Ok(())
        }
    }

    fn ident(&mut self, ns: Namespace) -> Result<String, ParseError> {
        match self.peek() {
            Some(TokenKind::Ident(s)) if !is_keyword(s) => {
                let name = s.clone();
                if let Some(sig) = self.sig {
                    let known = match ns {
                        Namespace::Concept => sig.concepts.contains(&name),
                        Namespace::Role => sig.roles.contains(&name),
                        Namespace::Individual => sig.individuals.contains(&name),
                    };
                    if !known {
                        return Err(self.error(ParseErrorKind::UnknownIdentifier {
                            name,
                            expected: ns,
                        }));
                    }
                }
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.unexpected(&ns.to_string())),
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        match self.peek() {
            Some(TokenKind::Number(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn unit_number(&mut self, what: &str) -> Result<f64, ParseError> {
        let at = self.position();
        let n = self.number()?;
        if !(0.0..=1.0).contains(&n) {
            return Err(ParseError {
                line: at.0,
                column: at.1,
                kind: ParseErrorKind::OutOfRange(format!("{what} {n} is outside [0,1]")),
            });
        }
        Ok(n)
    }

    fn theta(&mut self) -> Option<Theta> {
        let t = match self.peek()? {
            TokenKind::Geq => Theta::Geq,
            TokenKind::Leq => Theta::Leq,
            TokenKind::Gt => Theta::Gt,
            TokenKind::Lt => Theta::Lt,
            _ => return None,
        };
        self.pos += 1;
        Some(t)
    }

    // concept grammar

    fn concept(&mut self) -> Result<Concept, ParseError> {
        let mut left = self.conjunction()?;
        while self.eat_keyword("or") {
            let right = self.conjunction()?;
            left = Concept::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Concept, ParseError> {
        let mut left = self.unary()?;
        while self.eat_keyword("and") {
            let right = self.unary()?;
            left = Concept::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Concept, ParseError> {
        if self.eat_keyword("not") {
            return Ok(Concept::not(self.unary()?));
        }
        for (kw, exists) in [("exists", true), ("forall", false)] {
            if self.eat_keyword(kw) {
                let role = self.ident(Namespace::Role)?;
                self.expect(TokenKind::Dot)?;
                let body = self.unary()?;
                return Ok(if exists {
                    Concept::exists(role, body)
                } else {
                    Concept::forall(role, body)
                });
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Concept, ParseError> {
        match self.peek() {
            Some(TokenKind::Ident(s)) if s == "Top" => {
                self.pos += 1;
                Ok(Concept::Top)
            }
            Some(TokenKind::Ident(s)) if s == "Bottom" => {
                self.pos += 1;
                Ok(Concept::Bottom)
            }
            Some(TokenKind::Ident(s)) if s == "T" => self.typicality(),
            Some(TokenKind::Ident(_)) => Ok(Concept::Name(self.ident(Namespace::Concept)?)),
            Some(TokenKind::LBrace) => {
                self.pos += 1;
                let a = self.ident(Namespace::Individual)?;
                self.expect(TokenKind::RBrace)?;
                Ok(Concept::Nominal(a))
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let c = self.concept()?;
                self.expect(TokenKind::RParen)?;
                Ok(c)
            }
            _ => Err(self.unexpected("a concept")),
        }
    }

    fn typicality(&mut self) -> Result<Concept, ParseError> {
        if self.in_typ {
            return Err(self.error(ParseErrorKind::NestedTypicality));
        }
        if self.typ_policy == TypPolicy::Forbidden {
            return Err(self.error(ParseErrorKind::MisplacedTypicality));
        }
        self.pos += 1;
        self.expect(TokenKind::LParen)?;
        self.in_typ = true;
        let inner = self.concept();
        self.in_typ = false;
        let inner = inner?;
        self.expect(TokenKind::RParen)?;
        Ok(Concept::typ(inner))
    }

    /// A concept that may be `T(C)` as a whole but contains no other
    /// typicality.
    fn left_side(&mut self, allow_typ: bool) -> Result<Concept, ParseError> {
        let is_typ = matches!(self.peek(), Some(TokenKind::Ident(s)) if s == "T")
            && self.peek_at(1) == Some(&TokenKind::LParen);
        if allow_typ && is_typ {
            self.typ_policy = TypPolicy::Anywhere;
            let c = self.typicality();
            self.typ_policy = TypPolicy::Forbidden;
            return c;
        }
        self.concept()
    }

    // statement bodies

    fn name_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        if self.peek().is_none() {
            return Ok(out);
        }
        loop {
            out.push(self.ident(Namespace::Concept)?);
            if !self.eat(&TokenKind::Comma) {
                break;
            }
        }
        Ok(out)
    }

    fn inclusion(&mut self, allow_typ: bool) -> Result<Inclusion, ParseError> {
        let sub = self.left_side(allow_typ)?;
        self.expect(TokenKind::Subsumed)?;
        let sup = self.concept()?;
        Ok(Inclusion::new(sub, sup))
    }

    /// `(Ci): T(Ci) [= D @ w`
    fn def_block(&mut self) -> Result<DefeasibleInclusion, ParseError> {
        self.expect(TokenKind::LParen)?;
        let declared = self.ident(Namespace::Concept)?;
        self.expect(TokenKind::RParen)?;
        self.expect(TokenKind::Colon)?;
        let d = self.weighted_default()?;
        if d.subject != declared {
            return Err(self.error(ParseErrorKind::SubjectMismatch {
                declared,
                used: d.subject,
            }));
        }
        Ok(d)
    }

    /// `T(Ci) [= D @ w` with `Ci` a concept name.
    fn weighted_default(&mut self) -> Result<DefeasibleInclusion, ParseError> {
        if !self.eat_keyword("T") {
            return Err(self.unexpected("`T`"));
        }
        self.expect(TokenKind::LParen)?;
        let subject = self.ident(Namespace::Concept)?;
        self.expect(TokenKind::RParen)?;
        self.expect(TokenKind::Subsumed)?;
        let consequent = self.concept()?;
        self.expect(TokenKind::At)?;
        let weight = self.number()?;
        Ok(DefeasibleInclusion {
            subject,
            consequent,
            weight,
        })
    }

    fn at_role_assertion(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2), self.peek_at(3)),
            (
                Some(TokenKind::Ident(r)),
                Some(TokenKind::LParen),
                Some(TokenKind::Ident(_)),
                Some(TokenKind::Comma)
            ) if !is_keyword(r)
        )
    }

    fn concept_application(&mut self) -> Result<(Concept, String), ParseError> {
        let concept = self.concept()?;
        self.expect(TokenKind::LParen)?;
        let a = self.ident(Namespace::Individual)?;
        self.expect(TokenKind::RParen)?;
        Ok((concept, a))
    }

    fn assertion(&mut self) -> Result<Assertion, ParseError> {
        if self.at_role_assertion() {
            let role = self.ident(Namespace::Role)?;
            self.expect(TokenKind::LParen)?;
            let subject = self.ident(Namespace::Individual)?;
            self.expect(TokenKind::Comma)?;
            let object = self.ident(Namespace::Individual)?;
            self.expect(TokenKind::RParen)?;
            return Ok(Assertion::Role {
                role,
                subject,
                object,
            });
        }
        let (concept, individual) = self.concept_application()?;
        Ok(Assertion::Concept {
            concept,
            individual,
        })
    }

    fn fuzzy_inclusion(&mut self) -> Result<Axiom, ParseError> {
        let inclusion = self.inclusion(true)?;
        let theta = self.theta().ok_or_else(|| self.unexpected("`>=`, `<=`, `>` or `<`"))?;
        let degree = self.unit_number("degree")?;
        Ok(Axiom::Fuzzy {
            inclusion,
            theta,
            degree,
        })
    }

    fn fuzzy_assertion(&mut self) -> Result<Axiom, ParseError> {
        let (concept, individual) = self.concept_application()?;
        let theta = self.theta().ok_or_else(|| self.unexpected("`>=`, `<=`, `>` or `<`"))?;
        let degree = self.unit_number("degree")?;
        Ok(Axiom::FuzzyAssertion {
            concept,
            individual,
            theta,
            degree,
        })
    }

    fn conditional(&mut self) -> Result<ConditionalConstraint, ParseError> {
        self.expect(TokenKind::LParen)?;
        let conclusion = self.concept()?;
        self.expect(TokenKind::Bar)?;
        let condition = self.concept()?;
        self.expect(TokenKind::RParen)?;
        self.expect(TokenKind::LBracket)?;
        let at = self.position();
        let lower = self.unit_number("lower bound")?;
        self.expect(TokenKind::Comma)?;
        let upper = self.unit_number("upper bound")?;
        self.expect(TokenKind::RBracket)?;
        if lower > upper {
            return Err(ParseError {
                line: at.0,
                column: at.1,
                kind: ParseErrorKind::OutOfRange(format!(
                    "lower bound {lower} exceeds upper bound {upper}"
                )),
            });
        }
        Ok(ConditionalConstraint {
            conclusion,
            condition,
            lower,
            upper,
        })
    }

    fn prob_assertion(&mut self) -> Result<ProbAssertion, ParseError> {
        match self.peek() {
            Some(TokenKind::Ident(s)) if s == "P" => self.pos += 1,
            _ => return Err(self.unexpected("`P`")),
        }
        self.expect(TokenKind::LParen)?;
        let (concept, individual) = self.concept_application()?;
        self.expect(TokenKind::RParen)?;
        self.expect(TokenKind::LBracket)?;
        let probability = self.unit_number("probability")?;
        self.expect(TokenKind::RBracket)?;
        Ok(ProbAssertion {
            concept,
            individual,
            probability,
        })
    }

    fn bare_axiom(&mut self) -> Result<Axiom, ParseError> {
        let has_subsumed = self.toks.iter().any(|t| t.kind == TokenKind::Subsumed);
        let has_bar = self.toks.iter().any(|t| t.kind == TokenKind::Bar);
        let starts_p = matches!(self.peek(), Some(TokenKind::Ident(s)) if s == "P")
            && self.peek_at(1) == Some(&TokenKind::LParen);
        if starts_p && self.toks.last().map(|t| &t.kind) == Some(&TokenKind::RBracket) {
            let save = self.pos;
            if let Ok(pa) = self.prob_assertion() {
                if self.pos == self.toks.len() {
                    return Ok(Axiom::Probabilistic(pa));
                }
            }
            self.pos = save;
        }
        if has_subsumed {
            let inclusion = self.inclusion(true)?;
            if let Some(theta) = self.theta() {
                let degree = self.unit_number("degree")?;
                return Ok(Axiom::Fuzzy {
                    inclusion,
                    theta,
                    degree,
                });
            }
            if self.eat(&TokenKind::At) {
                let weight = self.number()?;
                return match inclusion.sub {
                    Concept::Typ(inner) => match *inner {
                        Concept::Name(subject) => Ok(Axiom::Typicality(DefeasibleInclusion {
                            subject,
                            consequent: inclusion.sup,
                            weight,
                        })),
                        _ => Err(self.error(ParseErrorKind::Syntax(
                            "weighted inclusions need a concept name inside `T(..)`".into(),
                        ))),
                    },
                    _ => Err(self.error(ParseErrorKind::Syntax(
                        "only typicality inclusions carry a weight".into(),
                    ))),
                };
            }
            return Ok(Axiom::Strict(inclusion));
        }
        if has_bar {
            return Ok(Axiom::Conditional(self.conditional()?));
        }
        let assertion = self.assertion()?;
        if let Some(theta) = self.theta() {
            let degree = self.unit_number("degree")?;
            return match assertion {
                Assertion::Concept {
                    concept,
                    individual,
                } => Ok(Axiom::FuzzyAssertion {
                    concept,
                    individual,
                    theta,
                    degree,
                }),
                Assertion::Role { .. } => Err(self.error(ParseErrorKind::Syntax(
                    "fuzzy role assertions are not supported".into(),
                ))),
            };
        }
        Ok(Axiom::Assertion(assertion))
    }
}
