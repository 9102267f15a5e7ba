use std::ops::Range;

use num_traits::{One, Signed};
use thiserror::Error;

use super::{CoFormula, Formula, Literal, Pair, PcoFormula, Rel};
use crate::model::Signature;
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {}..{}", span.start, span.end)]
pub struct ParseError {
    pub span: Range<usize>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("value `{value}` is not in the range of `{variable}`")]
    ValueNotInRange { variable: String, value: String },
    #[error("{0}")]
    Invalid(String),
}

impl ParseError {
    fn new(span: Range<usize>, kind: ParseErrorKind) -> Self {
        ParseError { span, kind }
    }

    fn invalid(span: Range<usize>, msg: impl Into<String>) -> Self {
        ParseError::new(span, ParseErrorKind::Invalid(msg.into()))
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Semi,
    Bar,
    Amp,
    Bang,
    Neq,
    Eq,
    EqEq,
    Ge,
    Gt,
    Le,
    Lt,
    FatArrow,
    Arrow,
    Squiggle,
    Gdisj,
    Strict,
    Slash,
    Star,
    Word(String),
    Quoted(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Quoted(w) => format!("\"{w}\""),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Bar => "|",
            Tok::Amp => "&",
            Tok::Bang => "!",
            Tok::Neq => "!=",
            Tok::Eq => "=",
            Tok::EqEq => "==",
            Tok::Ge => ">=",
            Tok::Gt => ">",
            Tok::Le => "<=",
            Tok::Lt => "<",
            Tok::FatArrow => "=>",
            Tok::Arrow => "->",
            Tok::Squiggle => "~>",
            Tok::Gdisj => "\\/",
            Tok::Strict => "<|>",
            Tok::Slash => "/",
            Tok::Star => "*",
            _ => "",
        }
    }
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '′')
}

fn lex(text: &str) -> PResult<Vec<(Tok, Range<usize>)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        chars.next();
        let next = chars.peek().map(|&(_, c)| c);
        let two = |tok: Tok, chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            chars.next();
            tok
        };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '|' => Tok::Bar,
            '&' => Tok::Amp,
            '/' => Tok::Slash,
            '*' => Tok::Star,
            '!' if next == Some('=') => two(Tok::Neq, &mut chars),
            '!' => Tok::Bang,
            '=' if next == Some('=') => two(Tok::EqEq, &mut chars),
            '=' if next == Some('>') => two(Tok::FatArrow, &mut chars),
            '=' => Tok::Eq,
            '>' if next == Some('=') => two(Tok::Ge, &mut chars),
            '>' => Tok::Gt,
            '<' if next == Some('=') => two(Tok::Le, &mut chars),
            '<' if next == Some('|') => {
                chars.next();
                match chars.next() {
                    Some((_, '>')) => Tok::Strict,
                    _ => return Err(syntax(start..start + 2, "`<|>`", "`<|`")),
                }
            }
            '<' => Tok::Lt,
            '~' if next == Some('>') => two(Tok::Squiggle, &mut chars),
            '\\' if next == Some('/') => two(Tok::Gdisj, &mut chars),
            '-' if next == Some('>') => two(Tok::Arrow, &mut chars),
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, '\\')) => match chars.next() {
                            Some((_, c)) => s.push(c),
                            None => return Err(syntax(start..text.len(), "closing `\"`", "end of input")),
                        },
                        Some((_, c)) => s.push(c),
                        None => return Err(syntax(start..text.len(), "closing `\"`", "end of input")),
                    }
                }
                let end = chars.peek().map_or(text.len(), |&(i, _)| i);
                out.push((Tok::Quoted(s), start..end));
                continue;
            }
            c if is_word_char(c) || (c == '-' && next.is_some_and(|n| n.is_ascii_digit())) => {
                let mut end = start + c.len_utf8();
                while let Some(&(i, c)) = chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    end = i + c.len_utf8();
                    chars.next();
                }
                out.push((Tok::Word(text[start..end].to_string()), start..end));
                continue;
            }
            other => {
                return Err(syntax(start..start + other.len_utf8(), "a formula", &format!("`{other}`")));
            }
        };
        let end = chars.peek().map_or(text.len(), |&(i, _)| i);
        out.push((tok, start..end));
    }
    out.push((Tok::Eof, text.len()..text.len()));
    Ok(out)
}

fn syntax(span: Range<usize>, expected: &str, found: &str) -> ParseError {
    ParseError::new(span, ParseErrorKind::Syntax { expected: expected.into(), found: found.into() })
}

/// Untyped syntax tree; typed into CO or PCO afterwards.
#[derive(Debug, Clone)]
struct Node {
    kind: Kind,
    span: Range<usize>,
}

#[derive(Debug, Clone)]
enum Kind {
    Lit { var: String, value: String, positive: bool, var_span: Range<usize>, value_span: Range<usize> },
    And(Box<Node>, Box<Node>),
    Tensor(Box<Node>, Box<Node>),
    Sup(Box<Node>, Box<Node>),
    Cf(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Gdisj(Vec<Node>),
    Strict(Box<Node>, Box<Node>),
    Not(Box<Node>),
    Pr { star: bool, arg: Box<Node>, cond: Option<Box<Node>>, rel: Rel, rhs: Rhs },
    Ne,
    Bot,
    Top,
    Dep { determinants: Vec<(String, Range<usize>)>, dependent: (String, Range<usize>) },
    CIndep(Box<Node>, Box<Node>, Box<Node>),
    CNeg(Box<Node>),
}

#[derive(Debug, Clone)]
enum Rhs {
    Const(Rational),
    Pr { arg: Box<Node>, cond: Option<Box<Node>> },
}

struct Parser {
    toks: Vec<(Tok, Range<usize>)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Range<usize> {
        self.toks[self.pos].1.clone()
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].1.end
        }
    }

    fn bump(&mut self) -> (Tok, Range<usize>) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        syntax(self.span(), expected, &self.peek().describe())
    }

    fn expect(&mut self, tok: Tok) -> PResult<Range<usize>> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(&format!("`{}`", tok.text())))
        }
    }

    fn node(kind: Kind, start: usize, end: usize) -> Node {
        Node { kind, span: start..end }
    }

    /// Implication level: `~>`, `=>`, `->`, right associative.
    fn expr(&mut self, nt: bool) -> PResult<Node> {
        let left = self.gdisj(nt)?;
        let start = left.span.start;
        let op = self.peek().clone();
        match op {
            Tok::Squiggle | Tok::FatArrow | Tok::Arrow => {
                self.bump();
                let right = self.expr(nt)?;
                let end = right.span.end;
                let kind = match op {
                    Tok::Squiggle => Kind::Cf(Box::new(left), Box::new(right)),
                    Tok::FatArrow => Kind::Sup(Box::new(left), Box::new(right)),
                    _ => Kind::Implies(Box::new(left), Box::new(right)),
                };
                Ok(Self::node(kind, start, end))
            }
            _ => Ok(left),
        }
    }

    fn gdisj(&mut self, nt: bool) -> PResult<Node> {
        let first = self.strict(nt)?;
        if *self.peek() != Tok::Gdisj {
            return Ok(first);
        }
        let start = first.span.start;
        let mut items = vec![first];
        while *self.peek() == Tok::Gdisj {
            self.bump();
            items.push(self.strict(nt)?);
        }
        let end = self.prev_end();
        Ok(Self::node(Kind::Gdisj(items), start, end))
    }

    fn strict(&mut self, nt: bool) -> PResult<Node> {
        let mut left = self.tensor(nt)?;
        while *self.peek() == Tok::Strict {
            self.bump();
            let right = self.tensor(nt)?;
            let span = left.span.start..right.span.end;
            left = Node { kind: Kind::Strict(Box::new(left), Box::new(right)), span };
        }
        Ok(left)
    }

    /// In `nt` mode a bare `|` belongs to an enclosing `Pr(a | g)`.
    fn tensor(&mut self, nt: bool) -> PResult<Node> {
        let mut left = self.conj()?;
        while !nt && *self.peek() == Tok::Bar {
            self.bump();
            let right = self.conj()?;
            let span = left.span.start..right.span.end;
            left = Node { kind: Kind::Tensor(Box::new(left), Box::new(right)), span };
        }
        Ok(left)
    }

    fn conj(&mut self) -> PResult<Node> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unary()?;
            let span = left.span.start..right.span.end;
            left = Node { kind: Kind::And(Box::new(left), Box::new(right)), span };
        }
        Ok(left)
    }

    fn unary(&mut self) -> PResult<Node> {
        if *self.peek() == Tok::Bang {
            let start = self.bump().1.start;
            let inner = self.unary()?;
            let end = inner.span.end;
            return Ok(Self::node(Kind::Not(Box::new(inner)), start, end));
        }
        self.atom()
    }

    fn keyword(&self) -> Option<&str> {
        let Tok::Word(w) = self.peek() else { return None };
        let next = self.peek_at(1);
        let kw = match w.as_str() {
            "Pr" if matches!(next, Tok::LParen | Tok::Star) => "Pr",
            "dep" | "cindep" | "cneg" if *next == Tok::LParen => w.as_str(),
            "NE" | "bot" | "top" if !matches!(next, Tok::Eq | Tok::Neq) => w.as_str(),
            _ => return None,
        };
        Some(kw)
    }

    fn atom(&mut self) -> PResult<Node> {
        let start = self.span().start;
        if *self.peek() == Tok::LParen {
            self.bump();
            let inner = self.expr(false)?;
            let end = self.expect(Tok::RParen)?.end;
            return Ok(Node { kind: inner.kind, span: start..end });
        }
        match self.keyword() {
            Some("Pr") => return self.probability(),
            Some("NE") => {
                let end = self.bump().1.end;
                return Ok(Self::node(Kind::Ne, start, end));
            }
            Some("bot") => {
                let end = self.bump().1.end;
                return Ok(Self::node(Kind::Bot, start, end));
            }
            Some("top") => {
                let end = self.bump().1.end;
                return Ok(Self::node(Kind::Top, start, end));
            }
            Some("cneg") => {
                self.bump();
                self.expect(Tok::LParen)?;
                let inner = self.expr(false)?;
                let end = self.expect(Tok::RParen)?.end;
                return Ok(Self::node(Kind::CNeg(Box::new(inner)), start, end));
            }
            Some("dep") => {
                self.bump();
                self.expect(Tok::LParen)?;
                let mut determinants = Vec::new();
                if *self.peek() != Tok::Semi {
                    loop {
                        determinants.push(self.name("a variable")?);
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::Semi)?;
                let dependent = self.name("a variable")?;
                let end = self.expect(Tok::RParen)?.end;
                return Ok(Self::node(Kind::Dep { determinants, dependent }, start, end));
            }
            Some("cindep") => {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.expr(false)?;
                self.expect(Tok::Semi)?;
                let b = self.expr(true)?;
                self.expect(Tok::Bar)?;
                let g = self.expr(false)?;
                let end = self.expect(Tok::RParen)?.end;
                return Ok(Self::node(Kind::CIndep(Box::new(a), Box::new(b), Box::new(g)), start, end));
            }
            _ => {}
        }
        self.literal()
    }

    fn name(&mut self, what: &str) -> PResult<(String, Range<usize>)> {
        match self.peek().clone() {
            Tok::Word(w) | Tok::Quoted(w) => {
                let span = self.bump().1;
                Ok((w, span))
            }
            _ => Err(self.error(what)),
        }
    }

    fn literal(&mut self) -> PResult<Node> {
        let (var, var_span) = self.name("a formula")?;
        let positive = match self.peek() {
            Tok::Eq => true,
            Tok::Neq => false,
            _ => return Err(self.error("`=` or `!=`")),
        };
        self.bump();
        let (value, value_span) = self.name("a value")?;
        let span = var_span.start..value_span.end;
        Ok(Node { kind: Kind::Lit { var, value, positive, var_span, value_span }, span })
    }

    /// `Pr(a) rel e`, `Pr(a | g) rel Pr(b | d)`, `Pr*(a) rel e`.
    fn probability(&mut self) -> PResult<Node> {
        let start = self.bump().1.start;
        let star = if *self.peek() == Tok::Star {
            self.bump();
            true
        } else {
            false
        };
        let (arg, cond) = self.pr_body()?;
        if star {
            if let Some(c) = &cond {
                return Err(ParseError::invalid(c.span.clone(), "`Pr*` does not take a condition"));
            }
        }
        let rel = match self.peek() {
            Tok::Ge => Rel::Ge,
            Tok::Gt => Rel::Gt,
            Tok::Le => Rel::Le,
            Tok::Lt => Rel::Lt,
            Tok::EqEq | Tok::Eq => Rel::Eq,
            Tok::Neq => Rel::Ne,
            _ => return Err(self.error("a comparison (`>=`, `>`, `<=`, `<`, `==`, `!=`)")),
        };
        self.bump();
        let rhs = if matches!(self.peek(), Tok::Word(w) if w == "Pr") && *self.peek_at(1) == Tok::LParen {
            if star {
                return Err(ParseError::invalid(self.span(), "`Pr*` compares against a constant only"));
            }
            self.bump();
            let (arg, cond) = self.pr_body()?;
            Rhs::Pr { arg: Box::new(arg), cond: cond.map(Box::new) }
        } else {
            Rhs::Const(self.epsilon()?)
        };
        let end = self.prev_end();
        Ok(Self::node(Kind::Pr { star, arg: Box::new(arg), cond: cond.map(Box::new), rel, rhs }, start, end))
    }

    fn pr_body(&mut self) -> PResult<(Node, Option<Node>)> {
        self.expect(Tok::LParen)?;
        let arg = self.expr(true)?;
        let cond = if *self.peek() == Tok::Bar {
            self.bump();
            Some(self.expr(false)?)
        } else {
            None
        };
        self.expect(Tok::RParen)?;
        Ok((arg, cond))
    }

    fn epsilon(&mut self) -> PResult<Rational> {
        let start = self.span().start;
        let Tok::Word(num) = self.peek().clone() else {
            return Err(self.error("a probability such as `1/2` or `0.25`"));
        };
        self.bump();
        let mut text = num;
        if *self.peek() == Tok::Slash {
            self.bump();
            let Tok::Word(den) = self.peek().clone() else {
                return Err(self.error("a denominator"));
            };
            self.bump();
            text = format!("{text}/{den}");
        }
        let span = start..self.prev_end();
        let eps = parse_rational(&text)
            .ok_or_else(|| syntax(span.clone(), "a probability such as `1/2` or `0.25`", &format!("`{text}`")))?;
        if eps.is_negative() || eps > Rational::one() {
            return Err(ParseError::invalid(span, format!("probability `{text}` is outside [0,1]")));
        }
        Ok(eps)
    }
}

fn parse_node(text: &str) -> PResult<Node> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let node = p.expr(false)?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("an operator or end of input"));
    }
    Ok(node)
}

fn antecedent(node: &Node, out: &mut Vec<Pair>) -> PResult<()> {
    match &node.kind {
        Kind::Lit { var, value, positive: true, .. } => {
            out.push((var.clone(), value.clone()));
            Ok(())
        }
        Kind::And(a, b) => {
            antecedent(a, out)?;
            antecedent(b, out)
        }
        _ => Err(ParseError::invalid(
            node.span.clone(),
            "the antecedent of `~>` must be a conjunction of equalities `X=x`",
        )),
    }
}

fn pairs_of(node: &Node) -> PResult<Vec<Pair>> {
    let mut out = Vec::new();
    antecedent(node, &mut out)?;
    Ok(out)
}

fn to_co(node: &Node) -> PResult<CoFormula> {
    let b = |n: &Node| to_co(n).map(Box::new);
    Ok(match &node.kind {
        Kind::Lit { var, value, positive, .. } => {
            if *positive {
                CoFormula::Eq(var.clone(), value.clone())
            } else {
                CoFormula::Neq(var.clone(), value.clone())
            }
        }
        Kind::And(x, y) => CoFormula::And(b(x)?, b(y)?),
        Kind::Tensor(x, y) => CoFormula::Tensor(b(x)?, b(y)?),
        Kind::Sup(x, y) => CoFormula::Sup(b(x)?, b(y)?),
        Kind::Cf(x, y) => CoFormula::Cf(pairs_of(x)?, b(y)?),
        Kind::Not(x) => CoFormula::Not(b(x)?),
        Kind::Bot => CoFormula::Bot,
        Kind::Top => CoFormula::Top,
        _ => {
            return Err(ParseError::invalid(
                node.span.clone(),
                "only event formulas (literals, `&`, `|`, `=>`, `~>`, `!`) are allowed here",
            ))
        }
    })
}

fn to_pco(node: &Node) -> PResult<PcoFormula> {
    let b = |n: &Node| to_pco(n).map(Box::new);
    Ok(match &node.kind {
        Kind::Lit { var, value, positive, .. } => {
            PcoFormula::Lit(Literal { var: var.clone(), value: value.clone(), positive: *positive })
        }
        Kind::And(x, y) => PcoFormula::And(b(x)?, b(y)?),
        Kind::Tensor(..) => {
            return Err(ParseError::invalid(
                node.span.clone(),
                "`|` is only allowed inside event formulas; use `\\/` between statements",
            ))
        }
        Kind::Sup(x, y) => PcoFormula::Sup(to_co(x)?, b(y)?),
        Kind::Cf(x, y) => PcoFormula::Cf(pairs_of(x)?, b(y)?),
        Kind::Implies(x, y) => PcoFormula::Implies(b(x)?, b(y)?),
        Kind::Gdisj(items) => PcoFormula::Gdisj(items.iter().map(to_pco).collect::<PResult<_>>()?),
        Kind::Strict(x, y) => PcoFormula::StrictTensor(b(x)?, b(y)?),
        Kind::Not(_) => {
            // a CO negation used as a statement
            PcoFormula::try_from_co(&to_co(node)?).ok_or_else(|| {
                ParseError::invalid(node.span.clone(), "`|` is only allowed inside event formulas")
            })?
        }
        Kind::Pr { star, arg, cond, rel, rhs } => {
            let arg = to_co(arg)?;
            let cond = cond.as_deref().map(to_co).transpose()?;
            match (star, rhs, cond) {
                (true, Rhs::Const(eps), None) => PcoFormula::PrStar { arg, rel: *rel, eps: eps.clone() },
                (false, Rhs::Const(eps), None) => PcoFormula::PrConst { arg, rel: *rel, eps: eps.clone() },
                (false, Rhs::Const(eps), Some(cond)) => {
                    PcoFormula::CondPrConst { arg, cond, rel: *rel, eps: eps.clone() }
                }
                (false, Rhs::Pr { arg: right, cond: rcond }, lcond) => {
                    let right = to_co(right)?;
                    let right_cond = rcond.as_deref().map(to_co).transpose()?;
                    if lcond.is_none() && right_cond.is_none() {
                        PcoFormula::PrCmp { left: arg, rel: *rel, right }
                    } else {
                        PcoFormula::CondPrCmp { left: arg, left_cond: lcond, rel: *rel, right, right_cond }
                    }
                }
                _ => return Err(ParseError::invalid(node.span.clone(), "malformed `Pr*` atom")),
            }
        }
        Kind::Ne => PcoFormula::Ne,
        Kind::Bot => PcoFormula::Bot,
        Kind::Top => PcoFormula::Top,
        Kind::CNeg(x) => PcoFormula::CNeg(b(x)?),
        Kind::Dep { determinants, dependent } => PcoFormula::Dep {
            determinants: determinants.iter().map(|(n, _)| n.clone()).collect(),
            dependent: dependent.0.clone(),
        },
        Kind::CIndep(x, y, z) => PcoFormula::CIndep { left: to_co(x)?, right: to_co(y)?, cond: to_co(z)? },
    })
}

fn check_names(node: &Node, sig: &Signature) -> PResult<()> {
    let var = |name: &str, span: &Range<usize>| {
        sig.index_of(name)
            .ok_or_else(|| ParseError::new(span.clone(), ParseErrorKind::UnknownVariable(name.to_string())))
    };
    match &node.kind {
        Kind::Lit { var: v, value, var_span, value_span, .. } => {
            let i = var(v, var_span)?;
            sig.value_of(i, value).map_err(|_| {
                ParseError::new(
                    value_span.clone(),
                    ParseErrorKind::ValueNotInRange { variable: v.clone(), value: value.clone() },
                )
            })?;
            Ok(())
        }
        Kind::And(a, b)
        | Kind::Tensor(a, b)
        | Kind::Sup(a, b)
        | Kind::Cf(a, b)
        | Kind::Implies(a, b)
        | Kind::Strict(a, b) => {
            check_names(a, sig)?;
            check_names(b, sig)
        }
        Kind::Gdisj(items) => items.iter().try_for_each(|n| check_names(n, sig)),
        Kind::Not(a) | Kind::CNeg(a) => check_names(a, sig),
        Kind::Pr { arg, cond, rhs, .. } => {
            check_names(arg, sig)?;
            if let Some(c) = cond {
                check_names(c, sig)?;
            }
            if let Rhs::Pr { arg, cond } = rhs {
                check_names(arg, sig)?;
                if let Some(c) = cond {
                    check_names(c, sig)?;
                }
            }
            Ok(())
        }
        Kind::Dep { determinants, dependent } => {
            for (n, span) in determinants.iter().chain(std::iter::once(dependent)) {
                var(n, span)?;
            }
            Ok(())
        }
        Kind::CIndep(a, b, c) => {
            check_names(a, sig)?;
            check_names(b, sig)?;
            check_names(c, sig)
        }
        Kind::Ne | Kind::Bot | Kind::Top => Ok(()),
    }
}

fn typed(node: &Node) -> PResult<Formula> {
    match to_co(node) {
        Ok(co) => Ok(Formula::Co(co)),
        Err(_) => to_pco(node).map(Formula::Pco),
    }
}

/// Parses an event formula if the text is one, otherwise a PCO formula.
/// Sugar is kept.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    typed(&parse_node(text)?)
}

/// Like [`parse`], also checking variables and values against `sig`.
pub fn parse_with(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let node = parse_node(text)?;
    check_names(&node, sig)?;
    typed(&node)
}

pub fn parse_co(text: &str) -> Result<CoFormula, ParseError> {
    to_co(&parse_node(text)?)
}

pub fn parse_co_with(text: &str, sig: &Signature) -> Result<CoFormula, ParseError> {
    let node = parse_node(text)?;
    check_names(&node, sig)?;
    to_co(&node)
}

/// Parses a statement. Event formulas without `|` are read as statements.
pub fn parse_pco(text: &str) -> Result<PcoFormula, ParseError> {
    to_pco(&parse_node(text)?)
}

pub fn parse_pco_with(text: &str, sig: &Signature) -> Result<PcoFormula, ParseError> {
    let node = parse_node(text)?;
    check_names(&node, sig)?;
    to_pco(&node)
}
