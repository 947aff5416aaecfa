//! Textual notation for subsets, families and integer ranges.
//!
//! Subsets are written as comma-separated labels in braces, e.g. `{1,3,4}`;
//! the empty set is `{}`. A family is a braced list of subsets, e.g.
//! `{{},{1},{1,2}}`. Whitespace between tokens is ignored. These parsers take
//! untrusted input and must never panic.

use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Inputs longer than this are rejected before parsing.
pub const MAX_INPUT_LEN: usize = 1 << 20;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Result<Self> {
        if text.len() > MAX_INPUT_LEN {
            return Err(Error::Parse(format!("input longer than {MAX_INPUT_LEN} bytes")));
        }
        Ok(Self {
            bytes: text.as_bytes(),
            pos: 0,
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(Error::Parse(format!(
                "expected '{}' at byte {}, found '{}'",
                byte as char,
                self.pos,
                (b as char).escape_default()
            ))),
            None => Err(Error::Parse(format!("expected '{}', found end of input", byte as char))),
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a label at byte {start}")));
        }
        // Only ASCII digits were consumed.
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or_default();
        digits
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("label '{digits}' is out of range")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(Error::Parse(format!("trailing input at byte {}", self.pos))),
        }
    }

    fn label_set(&mut self) -> Result<Vec<u32>> {
        self.expect(b'{')?;
        let mut labels = Vec::new();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(labels);
        }
        loop {
            let label = self.number()?;
            if label == 0 {
                return Err(Error::Parse("labels are positive integers".into()));
            }
            labels.push(label);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(Error::Parse(format!("expected ',' or '}}' at byte {}", self.pos))),
            }
        }
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("label {} repeated", w[0])));
        }
        Ok(labels)
    }
}

/// Parses `{1,3,4}` into sorted, distinct labels.
pub fn parse_label_set(text: &str) -> Result<Vec<u32>> {
    let mut cur = Cursor::new(text)?;
    let labels = cur.label_set()?;
    cur.finish()?;
    Ok(labels)
}

/// Parses `{{},{1},{1,2}}` into its member label sets, in input order.
pub fn parse_family(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut cur = Cursor::new(text)?;
    cur.expect(b'{')?;
    let mut sets = Vec::new();
    if cur.peek() == Some(b'}') {
        cur.pos += 1;
    } else {
        loop {
            sets.push(cur.label_set()?);
            match cur.peek() {
                Some(b',') => cur.pos += 1,
                Some(b'}') => {
                    cur.pos += 1;
                    break;
                }
                _ => return Err(Error::Parse(format!("expected ',' or '}}' at byte {}", cur.pos))),
            }
        }
    }
    cur.finish()?;
    Ok(sets)
}

/// An inclusive integer range written `a..b`, `a..=b` or a single `a`.
///
/// `a..b` is inclusive of `b`, matching how parameter grids are usually
/// written on the command line; `5..4` is a valid empty range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub start: u32,
    pub end: u32,
}

impl IntRange {
    pub fn single(v: u32) -> Self {
        Self { start: v, end: v }
    }

    pub fn iter(&self) -> RangeInclusive<u32> {
        self.start..=self.end
    }

    pub fn is_empty(&self) -> bool {
        self.start > self.end
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let parse = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("'{s}' is not a non-negative integer")))
        };
        match text.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                Ok(Self {
                    start: parse(a)?,
                    end: parse(b)?,
                })
            }
            None => parse(text).map(Self::single),
        }
    }
}
