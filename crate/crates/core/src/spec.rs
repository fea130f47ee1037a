//! The group-spec mini-language.
//!
//! ```text
//! spec := term ("x" term)*
//! term := "C" int | "D" int | "Dic" int | "Q" int
//!       | "SDP(" int "," int "," int ")" | catalog-name
//! ```
//!
//! Products are left-associative direct products. Whitespace is ignored.
//! `Q<n>` is the dicyclic group of order `n` and requires `4 | n`.

use std::fmt;
use std::str::FromStr;

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::{self, Group};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Cyclic(usize),
    /// Dihedral group of the given (even) order.
    Dihedral(usize),
    /// Dicyclic group of order `4n`.
    Dicyclic(usize),
    Semidirect {
        m: usize,
        n: usize,
        t: usize,
    },
    Named(String),
}

impl Atom {
    pub fn order(&self) -> usize {
        match self {
            Atom::Cyclic(n) | Atom::Dihedral(n) => *n,
            Atom::Dicyclic(n) => n.saturating_mul(4),
            Atom::Semidirect { m, n, .. } => m.saturating_mul(*n),
            Atom::Named(name) => catalog::named_order(name).unwrap_or(0),
        }
    }

    pub fn build(&self) -> Result<Group> {
        match self {
            Atom::Cyclic(n) => group::make_cyclic(*n),
            Atom::Dihedral(n) => group::make_dihedral(*n),
            Atom::Dicyclic(n) => group::make_dicyclic(*n),
            Atom::Semidirect { m, n, t } => group::semidirect_cyclic(*m, *n, *t),
            Atom::Named(name) => catalog::build_named(name),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Dihedral(n) => write!(f, "D{n}"),
            Atom::Dicyclic(n) => f.write_str(&group::dicyclic_label(*n)),
            Atom::Semidirect { m, n, t } => write!(f, "SDP({m},{n},{t})"),
            Atom::Named(name) => f.write_str(name),
        }
    }
}

/// A parsed spec: the direct product of its factors, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    source: String,
    factors: Vec<Atom>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let factors = Parser::new(text).spec()?;
        Ok(GroupSpec {
            source: text.to_string(),
            factors,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn factors(&self) -> &[Atom] {
        &self.factors
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Order of the group this spec describes, saturating on overflow.
    pub fn order(&self) -> usize {
        self.factors
            .iter()
            .fold(1usize, |acc, a| acc.saturating_mul(a.order()))
    }

    /// Builds the group. Its label equals [`GroupSpec::canonical`].
    pub fn build(&self) -> Result<Group> {
        let mut iter = self.factors.iter();
        let first = iter.next().expect("parser yields at least one factor");
        let mut g = first.build()?;
        for atom in iter {
            g = group::direct_product(&g, &atom.build()?)?;
        }
        Ok(g.with_label(self.canonical()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            text,
        }
    }

    /// Byte offset of the current token in the source text.
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::InvalidSpec {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|&(_, c)| c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(k, c)| self.peek_at(k) == Some(c))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        let mut value: usize = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as usize))
                .ok_or_else(|| self.error("integer too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        Ok(value)
    }

    fn spec(&mut self) -> Result<Vec<Atom>> {
        let mut factors = vec![self.term()?];
        while self.peek() == Some('x') {
            self.pos += 1;
            factors.push(self.term()?);
        }
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(factors)
    }

    fn digit_at(&self, k: usize) -> bool {
        self.peek_at(k).is_some_and(|c| c.is_ascii_digit())
    }

    fn term(&mut self) -> Result<Atom> {
        let start = self.offset();
        let param = |message: String| Error::InvalidSpec {
            position: start,
            message,
        };
        if self.starts_with("SDP(") {
            self.pos += 4;
            let m = self.int()?;
            self.expect(',')?;
            let n = self.int()?;
            self.expect(',')?;
            let t = self.int()?;
            self.expect(')')?;
            if m == 0 || n == 0 {
                return Err(param(format!("SDP({m},{n},{t}) needs m, n >= 1")));
            }
            return Ok(Atom::Semidirect { m, n, t });
        }
        if self.starts_with("Dic") && self.digit_at(3) {
            self.pos += 3;
            let n = self.int()?;
            if n == 0 {
                return Err(param("Dic0 is not a group".into()));
            }
            return Ok(Atom::Dicyclic(n));
        }
        if let Some(c @ ('C' | 'D' | 'Q')) = self.peek() {
            if self.digit_at(1) {
                self.pos += 1;
                let n = self.int()?;
                return match c {
                    'C' if n == 0 => Err(param("C0 is not a group".into())),
                    'C' => Ok(Atom::Cyclic(n)),
                    'D' if n == 0 || n % 2 != 0 => Err(param(format!(
                        "D{n}: dihedral order must be positive and even"
                    ))),
                    'D' => Ok(Atom::Dihedral(n)),
                    _ if n == 0 || n % 4 != 0 => Err(param(format!(
                        "Q{n}: order must be a positive multiple of 4"
                    ))),
                    _ => Ok(Atom::Dicyclic(n / 4)),
                };
            }
        }
        let begin = self.pos;
        while let Some(c) = self.peek() {
            if c == 'x' || !(c.is_ascii_alphanumeric() || c == '_') {
                break;
            }
            self.pos += 1;
        }
        if self.pos == begin {
            return Err(self.error("expected a group term"));
        }
        let name: String = self.chars[begin..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        if catalog::named_order(&name).is_none() {
            return Err(param(format!("unknown group name '{name}'")));
        }
        Ok(Atom::Named(name))
    }
}
