use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::word::{GeneratorSymbol, Word};

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteTable {
    table: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    normal_forms: Vec<Word>,
}

impl FiniteTable {
    pub fn new(table: Vec<Vec<u32>>, generators: Vec<u32>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::input("finite table is empty"));
        }
        if table.iter().any(|row| row.len() != order) {
            return Err(Error::input("finite table is not square"));
        }
        if table.iter().flatten().any(|&x| x as usize >= order) {
            return Err(Error::input("finite table entry out of range"));
        }
        for (x, row) in table.iter().enumerate() {
            if row[0] as usize != x || table[0][x] as usize != x {
                return Err(Error::input("element 0 is not the identity of the table"));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for (x, row) in table.iter().enumerate() {
            match row.iter().position(|&p| p == 0) {
                Some(y) => inverse[x] = y as u32,
                None => return Err(Error::input(format!("element {x} has no inverse"))),
            }
        }
        for x in 0..order {
            for y in 0..order {
                let xy = table[x][y] as usize;
                for z in 0..order {
                    if table[xy][z] != table[x][table[y][z] as usize] {
                        return Err(Error::input("finite table is not associative"));
                    }
                }
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g as usize >= order) {
            return Err(Error::input(format!("generator element {g} out of range")));
        }
        let mut t = FiniteTable {
            table,
            inverse,
            generators,
            normal_forms: Vec::new(),
        };
        t.normal_forms = t.shortlex_forms()?;
        Ok(t)
    }

    /// Z/n with a single generator mapped to element 1.
    pub fn cyclic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("cyclic group order must be positive"));
        }
        let table = (0..n)
            .map(|x| (0..n).map(|y| (x + y) % n).collect())
            .collect();
        let gens = if n == 1 { vec![0] } else { vec![1] };
        Self::new(table, gens)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn symbol_element(&self, s: GeneratorSymbol) -> u32 {
        let g = self.generators[s.index as usize];
        if s.inverse {
            self.inverse[g as usize]
        } else {
            g
        }
    }

    pub fn evaluate(&self, w: &Word) -> u32 {
        w.symbols()
            .iter()
            .fold(0u32, |acc, &s| self.table[acc as usize][self.symbol_element(s) as usize])
    }

    pub fn normal_form(&self, element: u32) -> &Word {
        &self.normal_forms[element as usize]
    }

    pub fn normalize(&self, w: &Word) -> Word {
        self.normal_form(self.evaluate(w)).clone()
    }

    // Breadth-first search whose queue stays in shortlex order, so the first
    // word reaching an element is its shortlex-least representative.
    fn shortlex_forms(&self) -> Result<Vec<Word>> {
        let mut forms: Vec<Option<Word>> = vec![None; self.order()];
        forms[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0u32]);
        let mut symbols: Vec<GeneratorSymbol> = Vec::new();
        for i in 0..self.rank() {
            symbols.push(GeneratorSymbol::new(i as u16, false));
            symbols.push(GeneratorSymbol::new(i as u16, true));
        }
        while let Some(x) = queue.pop_front() {
            for &s in &symbols {
                let y = self.table[x as usize][self.symbol_element(s) as usize];
                if forms[y as usize].is_none() {
                    let mut w = forms[x as usize].clone().unwrap();
                    w.push(s);
                    forms[y as usize] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        forms
            .into_iter()
            .map(|f| f.ok_or_else(|| Error::input("generators do not generate the finite table")))
            .collect()
    }
}
