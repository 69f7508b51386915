//! Small-cancellation presentations solved with Dehn's algorithm.
//!
//! Relators of the form `s^2` declare `s` an involution: `s^-1` is rewritten
//! to `s` before any other reduction, and such relators take no part in the
//! piece condition.

use crate::error::{Error, Result};
use crate::word::{GeneratorSymbol, Word};

#[derive(Debug, Clone)]
pub struct DehnPresentation {
    rank: usize,
    involution: Vec<bool>,
    relators: Vec<Word>,
    // All cyclic rotations of the non-involution relators and their inverses.
    symmetrized: Vec<Word>,
    // Generators whose exponent sum is an invariant of the element.
    counted: Vec<bool>,
    // Every relator has even length, so word length parity is an invariant.
    even: bool,
}

impl DehnPresentation {
    pub fn new(rank: usize, relators: Vec<Word>) -> Result<Self> {
        let mut involution = vec![false; rank];
        let mut long = Vec::new();
        for r in &relators {
            r.check_alphabet(rank)?;
            if r.is_empty() {
                return Err(Error::input("empty relator"));
            }
            let s = r.symbols();
            if s.len() == 2 && s[0] == s[1] {
                involution[s[0].index as usize] = true;
            } else {
                long.push(r.clone());
            }
        }
        let mut p = DehnPresentation {
            rank,
            involution,
            relators: relators.clone(),
            symmetrized: Vec::new(),
            counted: vec![false; rank],
            even: relators.iter().all(|r| r.len() % 2 == 0),
        };
        for i in 0..rank {
            p.counted[i] = !p.involution[i] && long.iter().all(|r| exponent_sum(r, i) == 0);
        }
        let mut sym = Vec::new();
        for r in &long {
            let r = p.fold_involutions(r);
            for w in [r.clone(), r.inverse()] {
                let w = p.fold_involutions(&w);
                for k in 0..w.len() {
                    let rot: Vec<_> = w.symbols()[k..]
                        .iter()
                        .chain(&w.symbols()[..k])
                        .copied()
                        .collect();
                    let rot = Word(rot);
                    if !sym.contains(&rot) {
                        sym.push(rot);
                    }
                }
            }
        }
        p.symmetrized = sym;
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_involution(&self, index: u16) -> bool {
        self.involution[index as usize]
    }

    fn fold_involutions(&self, w: &Word) -> Word {
        Word::from_symbols(w.symbols().iter().map(|&s| {
            if s.inverse && self.involution[s.index as usize] {
                s.inv()
            } else {
                s
            }
        }))
    }

    fn cancels(&self, x: GeneratorSymbol, y: GeneratorSymbol) -> bool {
        y == x.inv() || (x == y && self.involution[x.index as usize])
    }

    fn free_reduce(&self, w: Vec<GeneratorSymbol>) -> Vec<GeneratorSymbol> {
        let mut out: Vec<GeneratorSymbol> = Vec::with_capacity(w.len());
        for s in w {
            match out.last() {
                Some(&t) if self.cancels(t, s) => {
                    out.pop();
                }
                _ => out.push(s),
            }
        }
        out
    }

    /// Dehn's algorithm: repeatedly replaces more than half of a relator by
    /// the inverse of its complement. For a C'(1/6) presentation the result is
    /// empty exactly when `w` represents the identity.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut cur = self.free_reduce(self.fold_involutions(w).0);
        'outer: loop {
            for r in &self.symmetrized {
                let half = r.len() / 2 + 1;
                let rs = r.symbols();
                for start in 0..cur.len() {
                    let avail = cur.len() - start;
                    if avail < half {
                        break;
                    }
                    let mut m = 0;
                    while m < rs.len() && m < avail && cur[start + m] == rs[m] {
                        m += 1;
                    }
                    if m >= half {
                        // cur[start..start+m] = prefix u of r = u v, so u = v^-1.
                        let replacement = Word(rs[m..].to_vec()).inverse();
                        let replacement = self.fold_involutions(&replacement);
                        let mut next = Vec::with_capacity(cur.len());
                        next.extend_from_slice(&cur[..start]);
                        next.extend_from_slice(replacement.symbols());
                        next.extend_from_slice(&cur[start + m..]);
                        cur = self.free_reduce(next);
                        continue 'outer;
                    }
                }
            }
            return Word(cur);
        }
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    /// Shortlex-least word equal to `w`. Candidates are scanned in shortlex
    /// order up to the length of the Dehn-reduced form; only Dehn-reduced
    /// prefixes are extended, since a geodesic never holds more than half a
    /// relator.
    pub fn normalize(&self, w: &Word) -> Word {
        let reduced = self.dehn_reduce(w);
        if reduced.len() <= 1 {
            return reduced;
        }
        let target_inv = reduced.inverse();
        let mut symbols = Vec::new();
        for i in 0..self.rank {
            symbols.push(GeneratorSymbol::new(i as u16, false));
            if !self.involution[i] {
                symbols.push(GeneratorSymbol::new(i as u16, true));
            }
        }
        let mut sums = vec![0i64; self.rank];
        for s in reduced.symbols() {
            sums[s.index as usize] += if s.inverse { -1 } else { 1 };
        }
        let floor = self.remaining_floor(&sums);
        for len in floor..=reduced.len() {
            if self.even && (reduced.len() - len) % 2 == 1 {
                continue;
            }
            let mut cand = Vec::with_capacity(len);
            if let Some(found) = self.search(&symbols, &mut cand, len, &mut sums, &target_inv) {
                return found;
            }
        }
        reduced
    }

    fn remaining_floor(&self, sums: &[i64]) -> usize {
        sums.iter()
            .zip(&self.counted)
            .filter(|(_, &c)| c)
            .map(|(v, _)| v.unsigned_abs() as usize)
            .sum()
    }

    // True when `cand` ends with more than half of some relator.
    fn ends_long(&self, cand: &[GeneratorSymbol]) -> bool {
        self.symmetrized.iter().any(|r| {
            let half = r.len() / 2 + 1;
            cand.len() >= half && cand[cand.len() - half..] == r.symbols()[..half]
        })
    }

    fn search(
        &self,
        symbols: &[GeneratorSymbol],
        cand: &mut Vec<GeneratorSymbol>,
        len: usize,
        sums: &mut [i64],
        target_inv: &Word,
    ) -> Option<Word> {
        if cand.len() == len {
            let w = Word(cand.clone()).concat(target_inv);
            return self.is_identity(&w).then(|| Word(cand.clone()));
        }
        for &s in symbols {
            if let Some(&t) = cand.last() {
                if self.cancels(t, s) {
                    continue;
                }
            }
            let step = if s.inverse { -1 } else { 1 };
            sums[s.index as usize] -= step;
            cand.push(s);
            let viable = self.remaining_floor(sums) <= len - cand.len() && !self.ends_long(cand);
            if viable {
                if let Some(w) = self.search(symbols, cand, len, sums, target_inv) {
                    sums[s.index as usize] += step;
                    return Some(w);
                }
            }
            cand.pop();
            sums[s.index as usize] += step;
        }
        None
    }
}

fn exponent_sum(w: &Word, index: usize) -> i64 {
    w.symbols()
        .iter()
        .filter(|s| s.index as usize == index)
        .map(|s| if s.inverse { -1 } else { 1 })
        .sum()
}

/// Checks the C'(1/6) condition by enumerating every piece exhaustively.
///
/// A piece is a common prefix of two cyclic readings of relators (or their
/// inverses) taken at distinct positions, capped below the relator length.
/// Relators `s^2` only declare involutions and are skipped.
pub fn verify_c16(relators: &[Word]) -> Result<bool> {
    let mut readings: Vec<(usize, Vec<GeneratorSymbol>)> = Vec::new();
    let mut involutions: Vec<u16> = Vec::new();
    for r in relators {
        if r.is_empty() {
            return Err(Error::input("empty relator"));
        }
        let s = r.symbols();
        if s.len() == 2 && s[0] == s[1] {
            involutions.push(s[0].index);
        }
    }
    let fold = |w: &Word| -> Vec<GeneratorSymbol> {
        w.symbols()
            .iter()
            .map(|&s| if s.inverse && involutions.contains(&s.index) { s.inv() } else { s })
            .collect()
    };
    for (ri, r) in relators.iter().enumerate() {
        let s = r.symbols();
        if s.len() == 2 && s[0] == s[1] {
            continue;
        }
        if r.freely_reduced() != *r || (r.len() > 1 && s[0] == s[s.len() - 1].inv()) {
            return Err(Error::input("relator is not cyclically reduced"));
        }
        for w in [fold(r), fold(&r.inverse())] {
            for k in 0..w.len() {
                let rot: Vec<_> = w[k..].iter().chain(&w[..k]).copied().collect();
                readings.push((ri, rot));
            }
        }
    }
    for i in 0..readings.len() {
        for j in (i + 1)..readings.len() {
            let (ri, a) = &readings[i];
            let (rj, b) = &readings[j];
            let cap = a.len().min(b.len()) - 1;
            let piece = a.iter().zip(b).take(cap).take_while(|(x, y)| x == y).count();
            let bound = relators[*ri].len().min(relators[*rj].len());
            if 6 * piece >= bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
