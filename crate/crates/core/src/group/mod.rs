//! Group models with decidable word problems.
//!
//! Every model maps a word to its shortlex-least representative, so normal
//! forms are geodesic and two words name the same element exactly when their
//! normal forms agree.

mod dehn;
mod file;
mod finite;
mod peripheral;

pub use dehn::{verify_c16, DehnPresentation};
pub use file::{ModelDef, ModelFile, PeripheralDef};
pub use finite::FiniteTable;
pub use peripheral::{PeripheralDescription, PeripheralSpec, Peripherals};

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{GeneratorSymbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    FiniteTable,
    Free,
    FreeProduct,
    DirectProduct,
    SmallCancellation,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::FiniteTable => "finite-table",
            ModelKind::Free => "free",
            ModelKind::FreeProduct => "free-product",
            ModelKind::DirectProduct => "direct-product",
            ModelKind::SmallCancellation => "small-cancellation",
        })
    }
}

#[derive(Debug, Clone)]
struct Factors {
    models: Vec<GroupModel>,
    // global generator index -> (factor, local generator index)
    owner: Vec<(usize, u16)>,
    offsets: Vec<u16>,
}

impl Factors {
    fn new(models: Vec<GroupModel>) -> Self {
        let mut owner = Vec::new();
        let mut offsets = Vec::new();
        for (f, m) in models.iter().enumerate() {
            offsets.push(owner.len() as u16);
            for local in 0..m.rank() {
                owner.push((f, local as u16));
            }
        }
        Factors { models, owner, offsets }
    }

    fn local(&self, s: GeneratorSymbol) -> (usize, GeneratorSymbol) {
        let (f, l) = self.owner[s.index as usize];
        (f, GeneratorSymbol::new(l, s.inverse))
    }

    fn global(&self, factor: usize, w: &Word) -> impl Iterator<Item = GeneratorSymbol> + '_ {
        let off = self.offsets[factor];
        w.symbols()
            .iter()
            .map(move |s| GeneratorSymbol::new(s.index + off, s.inverse))
            .collect::<Vec<_>>()
            .into_iter()
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Finite(FiniteTable),
    Free,
    FreeProduct(Factors),
    DirectProduct(Factors),
    SmallCancellation(DehnPresentation),
}

/// A finitely generated group with a normal-form oracle.
#[derive(Debug, Clone)]
pub struct GroupModel {
    names: Vec<String>,
    repr: Repr,
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() || n == "e" || n.contains(char::is_whitespace) || n.contains('^') {
            return Err(Error::input(format!("invalid generator name `{n}`")));
        }
        if names[..i].contains(n) {
            return Err(Error::input(format!("duplicate generator name `{n}`")));
        }
    }
    if names.len() > u16::MAX as usize {
        return Err(Error::input("too many generators"));
    }
    Ok(())
}

fn names_of(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

impl GroupModel {
    pub fn finite(names: &[&str], table: FiniteTable) -> Result<Self> {
        let names = names_of(names);
        check_names(&names)?;
        if names.len() != table.rank() {
            return Err(Error::input("generator names do not match the table's generators"));
        }
        Ok(GroupModel { names, repr: Repr::Finite(table) })
    }

    /// Z/n generated by `name`.
    pub fn cyclic(n: u32, name: &str) -> Result<Self> {
        Self::finite(&[name], FiniteTable::cyclic(n)?)
    }

    pub fn free(names: &[&str]) -> Result<Self> {
        let names = names_of(names);
        check_names(&names)?;
        Ok(GroupModel { names, repr: Repr::Free })
    }

    pub fn free_product(factors: Vec<GroupModel>) -> Result<Self> {
        let names: Vec<String> = factors.iter().flat_map(|m| m.names.clone()).collect();
        check_names(&names)?;
        Ok(GroupModel { names, repr: Repr::FreeProduct(Factors::new(factors)) })
    }

    pub fn direct_product(factors: Vec<GroupModel>) -> Result<Self> {
        let names: Vec<String> = factors.iter().flat_map(|m| m.names.clone()).collect();
        check_names(&names)?;
        Ok(GroupModel { names, repr: Repr::DirectProduct(Factors::new(factors)) })
    }

    pub fn small_cancellation(names: &[&str], relators: Vec<Word>) -> Result<Self> {
        let names = names_of(names);
        check_names(&names)?;
        let p = DehnPresentation::new(names.len(), relators)?;
        Ok(GroupModel { names, repr: Repr::SmallCancellation(p) })
    }

    /// D_inf = Z/2 * Z/2 with involutions `a`, `b`.
    pub fn infinite_dihedral() -> Self {
        Self::free_product(vec![
            Self::cyclic(2, "a").expect("valid"),
            Self::cyclic(2, "b").expect("valid"),
        ])
        .expect("valid")
    }

    /// Z/2 * Z/3 with generators `a` (order 2) and `b` (order 3).
    pub fn modular() -> Self {
        Self::free_product(vec![
            Self::cyclic(2, "a").expect("valid"),
            Self::cyclic(3, "b").expect("valid"),
        ])
        .expect("valid")
    }

    /// Free abelian group of rank `names.len()`.
    pub fn free_abelian(names: &[&str]) -> Result<Self> {
        let factors = names.iter().map(|n| Self::free(&[n])).collect::<Result<Vec<_>>>()?;
        Self::direct_product(factors)
    }

    pub fn kind(&self) -> ModelKind {
        match self.repr {
            Repr::Finite(_) => ModelKind::FiniteTable,
            Repr::Free => ModelKind::Free,
            Repr::FreeProduct(_) => ModelKind::FreeProduct,
            Repr::DirectProduct(_) => ModelKind::DirectProduct,
            Repr::SmallCancellation(_) => ModelKind::SmallCancellation,
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Group order when it is known to be finite.
    pub fn order(&self) -> Option<usize> {
        match &self.repr {
            Repr::Finite(t) => Some(t.order()),
            Repr::Free => (self.rank() == 0).then_some(1),
            Repr::FreeProduct(f) => {
                let orders: Vec<Option<usize>> = f.models.iter().map(|m| m.order()).collect();
                let nontrivial = orders.iter().filter(|o| **o != Some(1)).count();
                match nontrivial {
                    0 => Some(1),
                    1 => orders.into_iter().find(|o| *o != Some(1)).flatten(),
                    _ => None,
                }
            }
            Repr::DirectProduct(f) => f.models.iter().map(|m| m.order()).product(),
            Repr::SmallCancellation(_) => None,
        }
    }

    /// Generator symbols labelling Cayley graph edges, in shortlex order.
    pub fn symbols(&self) -> Vec<GeneratorSymbol> {
        (0..self.rank() as u16)
            .flat_map(|i| [GeneratorSymbol::new(i, false), GeneratorSymbol::new(i, true)])
            .collect()
    }

    pub fn normalize(&self, w: &Word) -> Result<Word> {
        w.check_alphabet(self.rank())?;
        Ok(self.normalize_unchecked(w))
    }

    pub(crate) fn normalize_unchecked(&self, w: &Word) -> Word {
        match &self.repr {
            Repr::Finite(t) => t.normalize(w),
            Repr::Free => w.freely_reduced(),
            Repr::SmallCancellation(p) => p.normalize(w),
            Repr::FreeProduct(f) => {
                let mut stack: Vec<(usize, Word)> = Vec::new();
                for &s in w.symbols() {
                    let (factor, local) = f.local(s);
                    let model = &f.models[factor];
                    match stack.last_mut() {
                        Some((top, syl)) if *top == factor => {
                            syl.push(local);
                            *syl = model.normalize_unchecked(syl);
                            if syl.is_empty() {
                                stack.pop();
                            }
                        }
                        _ => {
                            let syl = model.normalize_unchecked(&Word(vec![local]));
                            if !syl.is_empty() {
                                stack.push((factor, syl));
                            }
                        }
                    }
                }
                Word::from_symbols(stack.iter().flat_map(|(fi, syl)| f.global(*fi, syl)))
            }
            Repr::DirectProduct(f) => {
                let mut parts = vec![Word::empty(); f.models.len()];
                for &s in w.symbols() {
                    let (factor, local) = f.local(s);
                    parts[factor].push(local);
                }
                Word::from_symbols(parts.iter().enumerate().flat_map(|(fi, part)| {
                    let nf = f.models[fi].normalize_unchecked(part);
                    f.global(fi, &nf).collect::<Vec<_>>()
                }))
            }
        }
    }

    /// Normal form of `x * y`.
    pub fn multiply(&self, x: &Word, y: &Word) -> Result<Word> {
        self.normalize(&x.concat(y))
    }

    pub fn inverse(&self, x: &Word) -> Result<Word> {
        self.normalize(&x.inverse())
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        Ok(self.normalize(w)?.is_empty())
    }

    /// Splits a free-product normal form into `(factor, syllable)` pieces,
    /// with syllables written in the global alphabet.
    pub fn syllables(&self, nf: &Word) -> Option<Vec<(usize, Word)>> {
        let Repr::FreeProduct(f) = &self.repr else {
            return None;
        };
        let mut out: Vec<(usize, Word)> = Vec::new();
        for &s in nf.symbols() {
            let factor = f.owner[s.index as usize].0;
            match out.last_mut() {
                Some((top, syl)) if *top == factor => syl.push(s),
                _ => out.push((factor, Word(vec![s]))),
            }
        }
        Some(out)
    }

    /// Number of free-product factors, or `None` for other kinds.
    pub fn factor_count(&self) -> Option<usize> {
        match &self.repr {
            Repr::FreeProduct(f) => Some(f.models.len()),
            _ => None,
        }
    }

    pub fn factor(&self, i: usize) -> Option<&GroupModel> {
        match &self.repr {
            Repr::FreeProduct(f) | Repr::DirectProduct(f) => f.models.get(i),
            _ => None,
        }
    }

    /// Global generator indices belonging to free-product factor `i`.
    pub fn factor_generators(&self, i: usize) -> Option<Vec<u16>> {
        match &self.repr {
            Repr::FreeProduct(f) if i < f.models.len() => Some(
                (0..f.models[i].rank() as u16).map(|l| l + f.offsets[i]).collect(),
            ),
            _ => None,
        }
    }

    pub fn dehn(&self) -> Option<&DehnPresentation> {
        match &self.repr {
            Repr::SmallCancellation(p) => Some(p),
            _ => None,
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> Word {
        Word::from_signed(l)
    }

    #[test]
    fn free_reduction_example() {
        let f2 = GroupModel::free(&["x", "y"]).unwrap();
        assert_eq!(f2.normalize(&w(&[1, -1, 2])).unwrap(), w(&[2]));
    }

    #[test]
    fn dihedral_relator_collapse() {
        let d = GroupModel::infinite_dihedral();
        assert_eq!(d.normalize(&w(&[1, 1, 2])).unwrap(), w(&[2]));
        let sc = GroupModel::small_cancellation(&["a", "b"], vec![w(&[1, 1]), w(&[2, 2])]).unwrap();
        assert_eq!(sc.normalize(&w(&[1, 1, 2])).unwrap(), w(&[2]));
    }

    #[test]
    fn finite_cycle() {
        let z3 = GroupModel::cyclic(3, "g").unwrap();
        assert_eq!(z3.normalize(&w(&[1, 1, 1, 1])).unwrap(), w(&[1]));
    }

    #[test]
    fn malformed_symbol_is_input_error() {
        let f2 = GroupModel::free(&["x", "y"]).unwrap();
        assert!(matches!(f2.normalize(&w(&[3])), Err(Error::Input(_))));
    }

    #[test]
    fn free_product_merges_syllables() {
        let m = GroupModel::modular();
        // b a a b = b b = b^-1
        assert_eq!(m.normalize(&w(&[2, 1, 1, 2])).unwrap(), w(&[-2]));
        let syl = m.syllables(&w(&[1, 2, 1, -2])).unwrap();
        assert_eq!(syl.len(), 4);
        assert_eq!(m.order(), None);
    }

    #[test]
    fn direct_product_commutes() {
        let z2 = GroupModel::free_abelian(&["x", "y"]).unwrap();
        assert_eq!(z2.normalize(&w(&[2, 1, -2])).unwrap(), w(&[1]));
        assert_eq!(z2.normalize(&w(&[2, -1])).unwrap(), w(&[-1, 2]));
        let klein = GroupModel::direct_product(vec![
            GroupModel::cyclic(2, "a").unwrap(),
            GroupModel::cyclic(2, "b").unwrap(),
        ])
        .unwrap();
        assert_eq!(klein.order(), Some(4));
    }

    #[test]
    fn names_are_validated() {
        assert!(GroupModel::free(&["e"]).is_err());
        assert!(GroupModel::free(&["x", "x"]).is_err());
    }
}
