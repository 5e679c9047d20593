//! Text syntax for family expressions.
//!
//! ```text
//! expr  := "K(" n ")" | "Fm(" n ")" | "fan(" n [";" block ("," block)*] ")"
//!        | "cone(" list ")" | "du(" list ")" | "star(" list ")" | "circ(" list ")"
//! block := n                 pure block on n attachment vertices
//!        | "[" n+ "]"        clique sizes h_1 .. h_s
//! list  := expr ("," expr)*
//! ```
//!
//! `star` with more than two arguments folds to the left. The output of
//! `Display` for [`FamilyExpr`] parses back to the same value.

use crate::error::{Error, Result};
use crate::family::FamilyExpr;
use crate::graph::FanBlock;

/// Largest integer literal accepted.
pub const MAX_LITERAL: usize = 1000;
/// Largest graph an expression may describe.
pub const MAX_VERTICES: usize = 256;
const MAX_DEPTH: usize = 64;

/// Parses and validates an expression.
pub fn parse_expr(text: &str) -> Result<FamilyExpr> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    let n = e.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::InvalidFamily(format!(
            "{n} vertices, at most {MAX_VERTICES} supported"
        )));
    }
    e.validate()?;
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a constructor name"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn number(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        match text.parse::<usize>() {
            Ok(n) if n <= MAX_LITERAL => Ok(n),
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("number larger than {MAX_LITERAL}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<FamilyExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        self.ws();
        let start = self.pos;
        let name = self.ident()?.to_string();
        self.expect(b'(')?;
        let e = match name.as_str() {
            "K" => FamilyExpr::Complete(self.number()?),
            "Fm" => FamilyExpr::BipartiteFm(self.number()?),
            "fan" => self.fan()?,
            "cone" => FamilyExpr::Cone(self.list()?),
            "du" => FamilyExpr::DisjointUnion(self.list()?),
            "circ" => FamilyExpr::Circ(self.list()?),
            "star" => {
                let parts = self.list()?;
                if parts.len() < 2 {
                    return Err(self.err("star needs at least two arguments"));
                }
                let mut it = parts.into_iter();
                let first = it.next().expect("two parts");
                it.fold(first, FamilyExpr::star)
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unknown constructor {other:?}"),
                })
            }
        };
        self.expect(b')')?;
        self.depth -= 1;
        Ok(e)
    }

    fn list(&mut self) -> Result<Vec<FamilyExpr>> {
        let mut out = vec![self.expr()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn fan(&mut self) -> Result<FamilyExpr> {
        let m = self.number()?;
        let mut blocks = Vec::new();
        if self.peek() == Some(b';') {
            self.pos += 1;
            if self.peek() != Some(b')') {
                blocks.push(self.block()?);
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    blocks.push(self.block()?);
                }
            }
        }
        Ok(FamilyExpr::Fan { m, blocks })
    }

    fn block(&mut self) -> Result<FanBlock> {
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let mut cliques = vec![self.number()?];
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                cliques.push(self.number()?);
            }
            self.expect(b']')?;
            Ok(FanBlock { cliques })
        } else {
            Ok(FanBlock::pure(self.number()?))
        }
    }
}
