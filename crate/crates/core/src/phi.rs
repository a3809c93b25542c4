//! Propositional formulas in the two atoms `Pa` and `Pb`.
//!
//! Grammar:
//!
//! ```text
//! phi    := term | term "->" phi        (right-associative, lowest)
//! term   := factor | term "&" factor | term "|" factor   (left-associative)
//! factor := "!" factor | "Pa" | "Pb" | "(" phi ")"
//! ```
//!
//! `&` and `|` share one precedence level. Whitespace between tokens is
//! ignored.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Phi {
    Pa,
    Pb,
    Not(Box<Phi>),
    And(Box<Phi>, Box<Phi>),
    Or(Box<Phi>, Box<Phi>),
    Implies(Box<Phi>, Box<Phi>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: expected {expected}")]
pub struct PhiParseError {
    /// 1-based byte column.
    pub column: usize,
    pub expected: &'static str,
}

impl Phi {
    pub fn parse(text: &str) -> Result<Phi, PhiParseError> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            depth: 0,
        };
        let phi = parser.implication()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("end of formula"));
        }
        Ok(phi)
    }

    /// `Pa & Pb`, the conjunction used by the UMP-shaped property form.
    pub fn conjunction() -> Phi {
        Phi::And(Box::new(Phi::Pa), Box::new(Phi::Pb))
    }

    pub fn eval(&self, pa: bool, pb: bool) -> bool {
        match self {
            Phi::Pa => pa,
            Phi::Pb => pb,
            Phi::Not(x) => !x.eval(pa, pb),
            Phi::And(x, y) => x.eval(pa, pb) && y.eval(pa, pb),
            Phi::Or(x, y) => x.eval(pa, pb) || y.eval(pa, pb),
            Phi::Implies(x, y) => !x.eval(pa, pb) || y.eval(pa, pb),
        }
    }

    /// Truth table indexed by `(pa as usize) << 1 | pb as usize`.
    pub fn truth_table(&self) -> [bool; 4] {
        [
            self.eval(false, false),
            self.eval(false, true),
            self.eval(true, false),
            self.eval(true, true),
        ]
    }
}

impl FromStr for Phi {
    type Err = PhiParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Phi::parse(s)
    }
}

// Binding strength used when printing: implication 0, and/or 1, not/atoms 2.
fn level(phi: &Phi) -> u8 {
    match phi {
        Phi::Implies(..) => 0,
        Phi::And(..) | Phi::Or(..) => 1,
        _ => 2,
    }
}

struct Wrapped<'a>(&'a Phi, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(out, "({})", self.0)
        } else {
            write!(out, "{}", self.0)
        }
    }
}

impl fmt::Display for Phi {
    /// Prints with the fewest parentheses that re-parse to the same tree.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phi::Pa => write!(out, "Pa"),
            Phi::Pb => write!(out, "Pb"),
            Phi::Not(x) => write!(out, "!{}", Wrapped(x, level(x) < 2)),
            Phi::And(x, y) | Phi::Or(x, y) => {
                let op = if matches!(self, Phi::And(..)) {
                    "&"
                } else {
                    "|"
                };
                write!(
                    out,
                    "{} {op} {}",
                    Wrapped(x, level(x) < 1),
                    Wrapped(y, level(y) < 2)
                )
            }
            Phi::Implies(x, y) => {
                write!(out, "{} -> {}", Wrapped(x, level(x) < 1), y)
            }
        }
    }
}

const MAX_DEPTH: usize = 256;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &'static str) -> PhiParseError {
        PhiParseError {
            column: self.pos + 1,
            expected,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn descend(&mut self) -> Result<(), PhiParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("shallower nesting"));
        }
        Ok(())
    }

    fn implication(&mut self) -> Result<Phi, PhiParseError> {
        self.descend()?;
        let lhs = self.term()?;
        let phi = if self.eat("->") {
            Phi::Implies(Box::new(lhs), Box::new(self.implication()?))
        } else {
            lhs
        };
        self.depth -= 1;
        Ok(phi)
    }

    fn term(&mut self) -> Result<Phi, PhiParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat("&") {
                lhs = Phi::And(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat("|") {
                lhs = Phi::Or(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Phi, PhiParseError> {
        self.descend()?;
        let phi = if self.eat("!") {
            Phi::Not(Box::new(self.factor()?))
        } else if self.eat("(") {
            let inner = self.implication()?;
            if !self.eat(")") {
                return Err(self.error("`)`"));
            }
            inner
        } else if self.eat("Pa") {
            Phi::Pa
        } else if self.eat("Pb") {
            Phi::Pb
        } else {
            return Err(self.error("`Pa`, `Pb`, `!` or `(`"));
        };
        self.depth -= 1;
        Ok(phi)
    }
}
