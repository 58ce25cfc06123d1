//! Recursive-descent parser for the specification language.
//!
//! Binding strength, loosest first: temporal operators, `->` (right
//! associative), `or`, `and`, `not`, comparisons. A prefix temporal operator
//! takes everything to its right as its body, also in operand position.

use std::collections::BTreeSet;

use super::ast::{Formula, Interval, Term};
use super::StlError;

const KEYWORDS: &[&str] =
    &["true", "not", "and", "or", "always", "eventually", "once", "historically", "until", "since", "inf"];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Gt,
    Ge,
    Lt,
    Le,
    Arrow,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
    /// Byte offset just past the token.
    end: usize,
    start: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, StlError> {
    let mut tokens = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, c)) = chars.peek() {
        let (tl, tc) = (line, col);
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
        let mut push = |tok: Tok, end: usize| {
            tokens.push(Token { tok, text: src[start..end].to_string(), line: tl, column: tc, end, start });
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = i + d.len_utf8();
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            push(Tok::Ident(src[start..end].to_string()), end);
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            let mut seen_dot = false;
            while let Some(&(i, d)) = chars.peek() {
                let frac_follows =
                    d == '.' && !seen_dot && src[i + 1..].chars().next().is_some_and(|n| n.is_ascii_digit());
                if d.is_ascii_digit() || frac_follows {
                    seen_dot |= d == '.';
                    end = i + 1;
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let value = src[start..end].parse().expect("digits form a valid float");
            push(Tok::Num(value), end);
            continue;
        }
        chars.next();
        col += 1;
        let next = chars.peek().map(|&(_, d)| d);
        let two = |chars: &mut std::iter::Peekable<std::str::CharIndices>, col: &mut usize| {
            chars.next();
            *col += 1;
            start + 2
        };
        match (c, next) {
            ('-', Some('>')) => {
                let end = two(&mut chars, &mut col);
                push(Tok::Arrow, end)
            }
            ('>', Some('=')) => {
                let end = two(&mut chars, &mut col);
                push(Tok::Ge, end)
            }
            ('<', Some('=')) => {
                let end = two(&mut chars, &mut col);
                push(Tok::Le, end)
            }
            ('(', _) => push(Tok::LParen, start + 1),
            (')', _) => push(Tok::RParen, start + 1),
            ('[', _) => push(Tok::LBrack, start + 1),
            (']', _) => push(Tok::RBrack, start + 1),
            (',', _) => push(Tok::Comma, start + 1),
            ('+', _) => push(Tok::Plus, start + 1),
            ('-', _) => push(Tok::Minus, start + 1),
            ('*', _) => push(Tok::Star, start + 1),
            ('/', _) => push(Tok::Slash, start + 1),
            ('>', _) => push(Tok::Gt, start + 1),
            ('<', _) => push(Tok::Lt, start + 1),
            ('=' | '!' | '&' | '|' | '~', _) => {
                let mut name = c.to_string();
                if let Some(d @ ('=' | '&' | '|')) = next {
                    name.push(d);
                }
                return Err(StlError::UnknownOperator { name, line: tl, column: tc });
            }
            _ => {
                return Err(StlError::Syntax {
                    line: tl,
                    column: tc,
                    found: format!("`{c}`"),
                    expected: vec!["token".into()],
                })
            }
        }
    }
    tokens.push(Token { tok: Tok::Eof, text: String::new(), line, column: col, end: src.len(), start: src.len() });
    Ok(tokens)
}

/// Failure inside the parser. `Soft` failures may be recovered by backtracking;
/// the furthest one is reported.
enum Fail {
    Soft,
    Hard(StlError),
}

type PResult<T> = Result<T, Fail>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    furthest: usize,
    expected: BTreeSet<String>,
}

/// Parses specification text into a formula.
pub fn parse(text: &str) -> Result<Formula, StlError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, furthest: 0, expected: BTreeSet::new() };
    let result = p.formula().and_then(|f| {
        if p.peek() == &Tok::Eof {
            Ok(f)
        } else {
            Err(p.fail(&["end of input", "`and`", "`or`", "`->`", "`until`", "`since`"]))
        }
    });
    match result {
        Ok(f) => Ok(f),
        Err(Fail::Hard(e)) => Err(e),
        Err(Fail::Soft) => Err(p.syntax_error()),
    }
}

/// Parses an arithmetic term on its own.
pub fn parse_term(text: &str) -> Result<Term, StlError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, furthest: 0, expected: BTreeSet::new() };
    let result = p.term().and_then(|t| if p.peek() == &Tok::Eof { Ok(t) } else { Err(p.fail(&["end of input"])) });
    match result {
        Ok(t) => Ok(t),
        Err(Fail::Hard(e)) => Err(e),
        Err(Fail::Soft) => Err(p.syntax_error()),
    }
}

fn diff(p: Term, q: Term) -> Term {
    if q.is_zero_literal() {
        p
    } else {
        Term::sub(p, q)
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn keyword(&self) -> Option<&str> {
        match self.peek() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => Some(s.as_str()),
            _ => None,
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail(&mut self, expected: &[&str]) -> Fail {
        if self.pos > self.furthest {
            self.furthest = self.pos;
            self.expected.clear();
        }
        if self.pos == self.furthest {
            self.expected.extend(expected.iter().map(|s| s.to_string()));
        }
        Fail::Soft
    }

    fn syntax_error(&self) -> StlError {
        let t = &self.tokens[self.furthest];
        let found = if t.tok == Tok::Eof { "end of input".to_string() } else { format!("`{}`", t.text) };
        StlError::Syntax { line: t.line, column: t.column, found, expected: self.expected.iter().cloned().collect() }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, name: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.fail(&[name]))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.keyword() == Some(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        if let Some(op @ ("always" | "eventually" | "once" | "historically")) = self.keyword() {
            let op = op.to_string();
            self.bump();
            let window = self.window()?;
            let body = self.formula()?;
            return Ok(match op.as_str() {
                "always" => Formula::always(window, body),
                "eventually" => Formula::eventually(window, body),
                "once" => Formula::once(window, body),
                _ => Formula::historically(window, body),
            });
        }
        let lhs = self.implication()?;
        if let Some(op @ ("until" | "since")) = self.keyword() {
            let until = op == "until";
            self.bump();
            let window = self.window()?;
            let rhs = self.formula()?;
            return Ok(if until { Formula::until(window, lhs, rhs) } else { Formula::since(window, lhs, rhs) });
        }
        Ok(lhs)
    }

    fn window(&mut self) -> PResult<Interval> {
        if !self.eat(&Tok::LBrack) {
            self.fail(&["`[`"]);
            return Ok(Interval::unbounded());
        }
        let lo = self.number()?;
        self.expect(&Tok::Comma, "`,`")?;
        if self.eat_keyword("inf") {
            self.expect(&Tok::RBrack, "`]`")?;
            return Ok(Interval::starting_at(lo));
        }
        let hi = match self.peek() {
            Tok::Num(v) if *v >= lo => *v,
            Tok::Num(_) => return Err(self.fail(&["upper bound not below the lower bound"])),
            _ => return Err(self.fail(&["number", "`inf`"])),
        };
        self.bump();
        self.expect(&Tok::RBrack, "`]`")?;
        Ok(Interval::closed(lo, hi))
    }

    fn number(&mut self) -> PResult<f64> {
        if let Tok::Num(v) = *self.peek() {
            self.bump();
            Ok(v)
        } else {
            Err(self.fail(&["number"]))
        }
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.operand(Self::implication)?;
            return Ok(Formula::implies(lhs, rhs));
        }
        self.fail(&["`->`"]);
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat_keyword("or") {
            let rhs = self.operand(Self::conjunction)?;
            lhs = Formula::or(lhs, rhs);
        }
        self.fail(&["`or`"]);
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.negation()?;
        while self.eat_keyword("and") {
            let rhs = self.negation()?;
            lhs = Formula::and(lhs, rhs);
        }
        self.fail(&["`and`"]);
        Ok(lhs)
    }

    /// A prefix temporal operator in operand position swallows the rest.
    fn operand(&mut self, next: fn(&mut Self) -> PResult<Formula>) -> PResult<Formula> {
        if matches!(self.keyword(), Some("always" | "eventually" | "once" | "historically")) {
            self.formula()
        } else {
            next(self)
        }
    }

    fn negation(&mut self) -> PResult<Formula> {
        if self.eat_keyword("not") {
            return Ok(Formula::not(self.negation()?));
        }
        self.operand(Self::primary)
    }

    fn primary(&mut self) -> PResult<Formula> {
        if self.eat_keyword("true") {
            return Ok(Formula::True);
        }
        if self.peek() == &Tok::LParen {
            let save = self.pos;
            match self.comparison() {
                Ok(f) => return Ok(f),
                Err(Fail::Hard(e)) => return Err(Fail::Hard(e)),
                Err(Fail::Soft) => self.pos = save,
            }
            self.bump();
            let inner = self.formula()?;
            self.expect(&Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        if self.keyword().is_none() && !matches!(self.peek(), Tok::Ident(_) | Tok::Num(_) | Tok::Minus) {
            return Err(self.fail(&["`true`", "`not`", "`(`", "temporal operator", "term"]));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let op = self.peek().clone();
        if !matches!(op, Tok::Gt | Tok::Ge | Tok::Lt | Tok::Le) {
            return Err(self.fail(&["`>`", "`>=`", "`<`", "`<=`"]));
        }
        self.bump();
        let rhs = self.term()?;
        Ok(match op {
            Tok::Gt => Formula::atom(diff(lhs, rhs)),
            Tok::Ge => Formula::atom_non_strict(diff(lhs, rhs)),
            Tok::Lt => Formula::atom(diff(rhs, lhs)),
            _ => Formula::atom_non_strict(diff(rhs, lhs)),
        })
    }

    fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Term::add(lhs, self.product()?);
            } else if self.eat(&Tok::Minus) {
                lhs = Term::sub(lhs, self.product()?);
            } else {
                self.fail(&["`+`", "`-`"]);
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> PResult<Term> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Term::mul(lhs, self.unary()?);
            } else if self.eat(&Tok::Slash) {
                lhs = Term::div(lhs, self.unary()?);
            } else {
                self.fail(&["`*`", "`/`"]);
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Term> {
        if self.eat(&Tok::Minus) {
            if let Tok::Num(v) = *self.peek() {
                self.bump();
                return Ok(Term::constant(-v));
            }
            return Ok(Term::neg(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Term::constant(v))
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                let tok = self.bump();
                let next = &self.tokens[self.pos];
                if next.tok == Tok::LBrack && next.start == tok.end {
                    return Err(Fail::Hard(StlError::UnknownOperator { name, line: tok.line, column: tok.column }));
                }
                Ok(Term::var(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.fail(&["identifier", "number", "`(`", "`-`"])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_gt0() -> Formula {
        Formula::atom(Term::var("x"))
    }

    #[test]
    fn always_atom() {
        assert_eq!(parse("always (x > 0)").unwrap(), Formula::always(Interval::unbounded(), x_gt0()));
    }

    #[test]
    fn bounded_implication_with_sugar() {
        let f = parse("always[0,5] ((d - d_safe) > 0 -> (a_ego <= -4))").unwrap();
        let expected = Formula::always(
            Interval::closed(0.0, 5.0),
            Formula::implies(
                Formula::atom(Term::sub(Term::var("d"), Term::var("d_safe"))),
                Formula::atom_non_strict(Term::sub(Term::constant(-4.0), Term::var("a_ego"))),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn dangling_comparator_is_reported_at_end() {
        match parse("x >").unwrap_err() {
            StlError::Syntax { line, column, found, expected } => {
                assert_eq!((line, column), (1, 4));
                assert_eq!(found, "end of input");
                assert!(expected.contains(&"identifier".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_positions_track_lines() {
        match parse("always (x > 0)\n  and (y > )").unwrap_err() {
            StlError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 12)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_operators() {
        assert!(matches!(parse("x > 0 && y > 0"), Err(StlError::UnknownOperator { .. })));
        assert!(matches!(parse("x = 0"), Err(StlError::UnknownOperator { .. })));
        match parse("G[0,1] (x > 0)").unwrap_err() {
            StlError::UnknownOperator { name, line, column } => {
                assert_eq!((name.as_str(), line, column), ("G", 1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let f = parse("a > 0 or b > 0 and not c > 0 -> d > 0").unwrap();
        let a = Formula::atom(Term::var("a"));
        let b = Formula::atom(Term::var("b"));
        let c = Formula::atom(Term::var("c"));
        let d = Formula::atom(Term::var("d"));
        assert_eq!(f, Formula::implies(Formula::or(a, Formula::and(b, Formula::not(c))), d));
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse("a > 0 -> b > 0 -> c > 0").unwrap();
        let [a, b, c] = ["a", "b", "c"].map(|v| Formula::atom(Term::var(v)));
        assert_eq!(f, Formula::implies(a, Formula::implies(b, c)));
    }

    #[test]
    fn prefix_temporal_extends_right() {
        let f = parse("x > 0 and always y > 0 or z > 0").unwrap();
        let [x, y, z] = ["x", "y", "z"].map(|v| Formula::atom(Term::var(v)));
        assert_eq!(f, Formula::and(x, Formula::always(Interval::unbounded(), Formula::or(y, z))));
    }

    #[test]
    fn until_binds_loosest() {
        let f = parse("a > 0 and b > 0 until[1,3] c > 0").unwrap();
        let [a, b, c] = ["a", "b", "c"].map(|v| Formula::atom(Term::var(v)));
        assert_eq!(f, Formula::until(Interval::closed(1.0, 3.0), Formula::and(a, b), c));
    }

    #[test]
    fn comparisons_swap_operands() {
        assert_eq!(parse("x < 3").unwrap(), Formula::atom(Term::sub(Term::constant(3.0), Term::var("x"))));
        assert_eq!(parse("x >= y").unwrap(), Formula::atom_non_strict(Term::sub(Term::var("x"), Term::var("y"))));
        assert_eq!(parse("0 < x").unwrap(), x_gt0());
    }

    #[test]
    fn arithmetic_precedence_and_unary_minus() {
        let t = parse_term("a - b * -2 / (c + 1)").unwrap();
        let expected = Term::sub(
            Term::var("a"),
            Term::div(Term::mul(Term::var("b"), Term::constant(-2.0)), Term::add(Term::var("c"), Term::constant(1.0))),
        );
        assert_eq!(t, expected);
        assert_eq!(parse_term("-x").unwrap(), Term::neg(Term::var("x")));
    }

    #[test]
    fn parenthesized_term_versus_formula() {
        let f = parse("((x + 1) > 0)").unwrap();
        assert_eq!(f, Formula::atom(Term::add(Term::var("x"), Term::constant(1.0))));
        let g = parse("((x > 0))").unwrap();
        assert_eq!(g, x_gt0());
    }

    #[test]
    fn windows() {
        let f = parse("eventually[2,inf] x > 0").unwrap();
        assert_eq!(f, Formula::eventually(Interval::starting_at(2.0), x_gt0()));
        assert!(parse("eventually[3,1] x > 0").is_err());
        assert!(parse("eventually[1,2 x > 0").is_err());
    }

    #[test]
    fn printed_formula_reparses_to_itself() {
        for text in [
            "always[0,5] ((d - d_safe) > 0 -> (a_ego <= -4))",
            "not x / 2 >= -1.5 until[0,3] once y > z",
            "historically[1,2] (x * (y - 1) > 0.25 since true)",
            "-(x) > -0.5 and eventually[0,inf] x > 0",
        ] {
            let f = parse(text).unwrap();
            let printed = f.to_string();
            assert_eq!(parse(&printed).unwrap(), f, "{printed}");
        }
    }

    #[test]
    fn keywords_are_not_variables() {
        assert!(parse("always > 0").is_err());
        assert!(parse("x + until > 0").is_err());
    }
}
