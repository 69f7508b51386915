//! Generator symbols and words over a finite generating set.
//!
//! Symbols order as `(index, inverse_flag)`, and words order by shortlex
//! (length first, then lexicographically by symbol). Every representative
//! choice in the crate breaks ties with this order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSymbol {
    pub index: u16,
    pub inverse: bool,
}

impl GeneratorSymbol {
    pub const fn new(index: u16, inverse: bool) -> Self {
        Self { index, inverse }
    }

    pub const fn gen(index: u16) -> Self {
        Self::new(index, false)
    }

    #[must_use]
    pub const fn inv(self) -> Self {
        Self::new(self.index, !self.inverse)
    }
}

/// A finite sequence of generator symbols. No reduction is implied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<GeneratorSymbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = GeneratorSymbol>) -> Self {
        Word(symbols.into_iter().collect())
    }

    /// Word from signed generator indices: `k` is generator `k-1`, `-k` its inverse.
    pub fn from_signed(letters: &[i32]) -> Self {
        Word(
            letters
                .iter()
                .map(|&l| {
                    assert!(l != 0, "signed letters are 1-based");
                    GeneratorSymbol::new((l.unsigned_abs() - 1) as u16, l < 0)
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.0
    }

    /// The formal inverse: reversed, with every symbol inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, s: GeneratorSymbol) {
        self.0.push(s);
    }

    /// Fails if a symbol index is outside an alphabet of `rank` generators.
    pub fn check_alphabet(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|s| s.index as usize >= rank) {
            Some(s) => Err(Error::input(format!(
                "generator index {} outside alphabet of size {rank}",
                s.index
            ))),
            None => Ok(()),
        }
    }

    /// Free reduction: cancels adjacent `s s^-1` pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<GeneratorSymbol> = Vec::with_capacity(self.len());
        for &s in &self.0 {
            if out.last() == Some(&s.inv()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        Word(out)
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Renders with the given generator names; the identity prints as `e`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Parses whitespace separated tokens `name` or `name^k` (k may be negative); `e` is the empty word.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let mut symbols = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" {
                continue;
            }
            let (name, power) = match token.split_once('^') {
                Some((base, exp)) => {
                    let k: i32 = exp
                        .parse()
                        .map_err(|_| Error::input(format!("bad exponent in `{token}`")))?;
                    (base, k)
                }
                None => (token, 1),
            };
            let index = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::input(format!("unknown generator `{name}`")))?;
            let symbol = GeneratorSymbol::new(index as u16, power < 0);
            symbols.extend(std::iter::repeat_n(symbol, power.unsigned_abs() as usize));
        }
        Ok(Word(symbols))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (k, s) in self.word.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(s.index as usize) {
                Some(n) => f.write_str(n)?,
                None => write!(f, "g{}", s.index)?,
            }
            if s.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
