use std::collections::{BTreeSet, VecDeque};

use super::GroupModel;
use crate::error::{Error, Result};
use crate::word::{GeneratorSymbol, Word};

/// Largest finite peripheral subgroup the closure enumeration will accept.
pub const PERIPHERAL_ORDER_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PeripheralDescription {
    /// A free factor of a free-product model.
    Factor(usize),
    /// The finite subgroup generated by the listed generators.
    Generated(Vec<u16>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeripheralSpec {
    pub lambda: usize,
    pub description: PeripheralDescription,
}

impl PeripheralSpec {
    pub fn factor(lambda: usize, factor: usize) -> Self {
        Self { lambda, description: PeripheralDescription::Factor(factor) }
    }

    pub fn generated(lambda: usize, generators: Vec<u16>) -> Self {
        Self { lambda, description: PeripheralDescription::Generated(generators) }
    }
}

#[derive(Debug, Clone)]
struct Resolved {
    spec: PeripheralSpec,
    // Full element list in shortlex order, when the subgroup is finite.
    elements: Option<Vec<Word>>,
}

/// A peripheral collection resolved against a model.
#[derive(Debug, Clone, Default)]
pub struct Peripherals {
    entries: Vec<Resolved>,
}

fn closure(model: &GroupModel, generators: &[u16], cap: usize) -> Result<Option<Vec<Word>>> {
    let mut seen: BTreeSet<Word> = BTreeSet::from([Word::empty()]);
    let mut queue = VecDeque::from([Word::empty()]);
    while let Some(x) = queue.pop_front() {
        for &g in generators {
            for inv in [false, true] {
                let mut y = x.clone();
                y.push(GeneratorSymbol::new(g, inv));
                let y = model.normalize_unchecked(&y);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Ok(None);
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(Some(seen.into_iter().collect()))
}

impl Peripherals {
    pub fn none() -> Self {
        Self::default()
    }

    /// Validates the specs against the model; lambdas must be `0..k` in order.
    pub fn resolve(model: &GroupModel, specs: &[PeripheralSpec]) -> Result<Self> {
        let mut entries = Vec::with_capacity(specs.len());
        for (i, spec) in specs.iter().enumerate() {
            if spec.lambda != i {
                return Err(Error::input(format!(
                    "peripheral lambdas must be 0..{} in order, found {} at position {i}",
                    specs.len(),
                    spec.lambda
                )));
            }
            let elements = match &spec.description {
                PeripheralDescription::Factor(k) => {
                    let gens = model.factor_generators(*k).ok_or_else(|| {
                        Error::input(format!("peripheral {i}: model has no free factor {k}"))
                    })?;
                    match model.factor(*k).and_then(|f| f.order()) {
                        Some(order) if order <= PERIPHERAL_ORDER_CAP => {
                            closure(model, &gens, PERIPHERAL_ORDER_CAP)?
                        }
                        _ => None,
                    }
                }
                PeripheralDescription::Generated(gens) => {
                    if let Some(&g) = gens.iter().find(|&&g| g as usize >= model.rank()) {
                        return Err(Error::input(format!("peripheral {i}: generator {g} out of range")));
                    }
                    let elements = closure(model, gens, PERIPHERAL_ORDER_CAP)?.ok_or(
                        Error::Resource { what: "peripheral subgroup closure", cap: PERIPHERAL_ORDER_CAP },
                    )?;
                    Some(elements)
                }
            };
            entries.push(Resolved { spec: spec.clone(), elements });
        }
        Ok(Peripherals { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn entry(&self, lambda: usize) -> Result<&Resolved> {
        self.entries
            .get(lambda)
            .ok_or_else(|| Error::input(format!("peripheral index {lambda} out of range")))
    }

    pub fn spec(&self, lambda: usize) -> Result<&PeripheralSpec> {
        Ok(&self.entry(lambda)?.spec)
    }

    pub fn specs(&self) -> Vec<PeripheralSpec> {
        self.entries.iter().map(|e| e.spec.clone()).collect()
    }

    /// All elements of `P_lambda` when it is finite.
    pub fn elements(&self, lambda: usize) -> Result<Option<&[Word]>> {
        Ok(self.entry(lambda)?.elements.as_deref())
    }

    pub fn order(&self, lambda: usize) -> Result<Option<usize>> {
        Ok(self.entry(lambda)?.elements.as_ref().map(Vec::len))
    }

    /// Membership of a normal form in `P_lambda`.
    pub fn contains(&self, model: &GroupModel, lambda: usize, g: &Word) -> Result<bool> {
        let e = self.entry(lambda)?;
        if let Some(els) = &e.elements {
            return Ok(els.binary_search_by(|x| x.shortlex_cmp(g)).is_ok());
        }
        match e.spec.description {
            PeripheralDescription::Factor(k) => {
                let syl = model.syllables(g).expect("factor peripheral on a free product");
                Ok(syl.is_empty() || (syl.len() == 1 && syl[0].0 == k))
            }
            PeripheralDescription::Generated(_) => unreachable!("generated peripherals are finite"),
        }
    }

    /// Shortlex-least element of the left coset `g P_lambda`; `g` must be a normal form.
    pub fn coset_rep(&self, model: &GroupModel, lambda: usize, g: &Word) -> Result<Word> {
        let e = self.entry(lambda)?;
        match &e.spec.description {
            PeripheralDescription::Factor(k) => Ok(strip_last(model, *k, g)),
            PeripheralDescription::Generated(_) => {
                let els = e.elements.as_ref().expect("generated peripherals are finite");
                Ok(els
                    .iter()
                    .map(|p| model.normalize_unchecked(&g.concat(p)))
                    .min()
                    .expect("subgroup contains the identity"))
            }
        }
    }

    /// Shortlex-least element of the double coset `P_lambda x P_mu`.
    pub fn double_coset_rep(
        &self,
        model: &GroupModel,
        lambda: usize,
        x: &Word,
        mu: usize,
    ) -> Result<Word> {
        let left = self.entry(lambda)?;
        let right = self.entry(mu)?;
        // Finite sides are enumerated; factor sides are handled by stripping
        // the outermost syllable, which yields the least element of a coset.
        let lefts: Vec<Word> = match &left.spec.description {
            PeripheralDescription::Factor(_) => vec![x.clone()],
            PeripheralDescription::Generated(_) => left
                .elements
                .as_ref()
                .unwrap()
                .iter()
                .map(|p| p.concat(x))
                .collect(),
        };
        let rights: Vec<Word> = match &right.spec.description {
            PeripheralDescription::Factor(_) => vec![Word::empty()],
            PeripheralDescription::Generated(_) => right.elements.clone().unwrap(),
        };
        let mut best: Option<Word> = None;
        for l in &lefts {
            for q in &rights {
                let mut z = model.normalize_unchecked(&l.concat(q));
                if let PeripheralDescription::Factor(k) = right.spec.description {
                    z = strip_last(model, k, &z);
                }
                if let PeripheralDescription::Factor(k) = left.spec.description {
                    z = strip_first(model, k, &z);
                }
                if best.as_ref().is_none_or(|b| z < *b) {
                    best = Some(z);
                }
            }
        }
        Ok(best.expect("subgroups contain the identity"))
    }
}

fn strip_last(model: &GroupModel, factor: usize, g: &Word) -> Word {
    let mut syl = model.syllables(g).expect("factor peripheral on a free product");
    if syl.last().is_some_and(|(f, _)| *f == factor) {
        syl.pop();
    }
    Word::from_symbols(syl.into_iter().flat_map(|(_, w)| w.0))
}

fn strip_first(model: &GroupModel, factor: usize, g: &Word) -> Word {
    let syl = model.syllables(g).expect("factor peripheral on a free product");
    let skip = usize::from(syl.first().is_some_and(|(f, _)| *f == factor));
    Word::from_symbols(syl.into_iter().skip(skip).flat_map(|(_, w)| w.0))
}
