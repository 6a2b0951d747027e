use std::fmt::{self, Display, Formatter, Write};

use super::{Assertion, Axiom, Concept, Statement};

// binding levels: or < and < unary
const OR: u8 = 0;
const AND: u8 = 1;
const UNARY: u8 = 2;

fn level(c: &Concept) -> u8 {
    match c {
        Concept::Or(..) => OR,
        Concept::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(c: &Concept, min: u8, f: &mut Formatter<'_>) -> fmt::Result {
    if level(c) < min {
        f.write_char('(')?;
        write_concept(c, f)?;
        f.write_char(')')
    } else {
        write_concept(c, f)
    }
}

fn write_concept(c: &Concept, f: &mut Formatter<'_>) -> fmt::Result {
    match c {
        Concept::Top => f.write_str("Top"),
        Concept::Bottom => f.write_str("Bottom"),
        Concept::Name(n) => f.write_str(n),
        Concept::Nominal(a) => write!(f, "{{{a}}}"),
        Concept::Typ(inner) => {
            f.write_str("T(")?;
            write_concept(inner, f)?;
            f.write_char(')')
        }
        Concept::Not(inner) => {
            f.write_str("not ")?;
            write_at(inner, UNARY, f)
        }
        Concept::Exists(r, inner) => {
            write!(f, "exists {r}.")?;
            write_at(inner, UNARY, f)
        }
        Concept::Forall(r, inner) => {
            write!(f, "forall {r}.")?;
            write_at(inner, UNARY, f)
        }
        // left-associative: the right operand needs parentheses at equal level
        Concept::And(l, r) => {
            write_at(l, AND, f)?;
            f.write_str(" and ")?;
            write_at(r, UNARY, f)
        }
        Concept::Or(l, r) => {
            write_at(l, OR, f)?;
            f.write_str(" or ")?;
            write_at(r, AND, f)
        }
    }
}

impl Display for Concept {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_concept(self, f)
    }
}

/// Concept followed by `(a)`; anything but an atom gets parenthesised.
struct Applied<'a>(&'a Concept, &'a str);

impl Display for Applied<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            Concept::Top
            | Concept::Bottom
            | Concept::Name(_)
            | Concept::Nominal(_)
            | Concept::Typ(_) => write!(f, "{}({})", self.0, self.1),
            other => write!(f, "({other})({})", self.1),
        }
    }
}

impl Display for Axiom {
    /// The `.wkb` statement line for this axiom.
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Strict(inc) => write!(f, "strict: {} [= {}", inc.sub, inc.sup),
            Axiom::Typicality(d) => write!(
                f,
                "def({s}): T({s}) [= {} @ {}",
                d.consequent,
                d.weight,
                s = d.subject
            ),
            Axiom::Fuzzy {
                inclusion,
                theta,
                degree,
            } => write!(
                f,
                "fuzzy: {} [= {} {theta} {degree}",
                inclusion.sub, inclusion.sup
            ),
            Axiom::Assertion(Assertion::Concept {
                concept,
                individual,
            }) => write!(f, "assert: {}", Applied(concept, individual)),
            Axiom::Assertion(Assertion::Role {
                role,
                subject,
                object,
            }) => write!(f, "assert: {role}({subject},{object})"),
            Axiom::FuzzyAssertion {
                concept,
                individual,
                theta,
                degree,
            } => write!(
                f,
                "fuzzy-assert: {} {theta} {degree}",
                Applied(concept, individual)
            ),
            Axiom::Conditional(cc) => write!(
                f,
                "cc: ({} | {})[{},{}]",
                cc.conclusion, cc.condition, cc.lower, cc.upper
            ),
            Axiom::Probabilistic(pa) => write!(
                f,
                "passert: P({})[{}]",
                Applied(&pa.concept, &pa.individual),
                pa.probability
            ),
        }
    }
}

impl Display for Statement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Distinguished(names) => write!(f, "distinguished: {}", names.join(", ")),
            Statement::Axiom(ax) => ax.fmt(f),
        }
    }
}
