//! Model definition files (TOML).
//!
//! ```toml
//! name = "dihedral"
//!
//! [model]
//! kind = "free-product"
//! factors = [
//!   { kind = "cyclic", order = 2, generator = "a" },
//!   { kind = "cyclic", order = 2, generator = "b" },
//! ]
//!
//! [[peripheral]]
//! factor = 0
//!
//! [[peripheral]]
//! generators = ["b"]
//! ```
//!
//! Model kinds: `cyclic` (`order`, `generator`), `finite-table` (`generators`,
//! `table`, `generator-elements`), `free` (`generators`), `free-abelian`
//! (`generators`), `free-product` / `direct-product` (`factors`) and
//! `small-cancellation` (`generators`, `relators` written as words such as
//! `"x y x^-1 y^-1"`). Peripherals either name a free factor by index or list
//! generators whose closure is a finite subgroup.

use serde::{Deserialize, Serialize};

use super::{FiniteTable, GroupModel, PeripheralSpec};
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelDef {
    Cyclic {
        order: u32,
        generator: String,
    },
    FiniteTable {
        generators: Vec<String>,
        table: Vec<Vec<u32>>,
        #[serde(rename = "generator-elements")]
        generator_elements: Vec<u32>,
    },
    Free {
        generators: Vec<String>,
    },
    FreeAbelian {
        generators: Vec<String>,
    },
    FreeProduct {
        factors: Vec<ModelDef>,
    },
    DirectProduct {
        factors: Vec<ModelDef>,
    },
    SmallCancellation {
        generators: Vec<String>,
        relators: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeripheralDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default)]
    pub name: String,
    pub model: ModelDef,
    #[serde(default)]
    pub peripheral: Vec<PeripheralDef>,
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

impl ModelDef {
    pub fn build(&self) -> Result<GroupModel> {
        match self {
            ModelDef::Cyclic { order, generator } => GroupModel::cyclic(*order, generator),
            ModelDef::FiniteTable { generators, table, generator_elements } => {
                let t = FiniteTable::new(table.clone(), generator_elements.clone())?;
                GroupModel::finite(&strs(generators), t)
            }
            ModelDef::Free { generators } => GroupModel::free(&strs(generators)),
            ModelDef::FreeAbelian { generators } => GroupModel::free_abelian(&strs(generators)),
            ModelDef::FreeProduct { factors } => {
                GroupModel::free_product(factors.iter().map(ModelDef::build).collect::<Result<_>>()?)
            }
            ModelDef::DirectProduct { factors } => GroupModel::direct_product(
                factors.iter().map(ModelDef::build).collect::<Result<_>>()?,
            ),
            ModelDef::SmallCancellation { generators, relators } => {
                let names: Vec<String> = generators.clone();
                let rels = relators
                    .iter()
                    .map(|r| Word::parse(r, &names))
                    .collect::<Result<Vec<_>>>()?;
                GroupModel::small_cancellation(&strs(generators), rels)
            }
        }
    }
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::input(format!("model file: {e}")))
    }

    pub fn build(&self) -> Result<(GroupModel, Vec<PeripheralSpec>)> {
        let model = self.model.build()?;
        let mut specs = Vec::with_capacity(self.peripheral.len());
        for (lambda, p) in self.peripheral.iter().enumerate() {
            let spec = match (&p.factor, &p.generators) {
                (Some(k), None) => PeripheralSpec::factor(lambda, *k),
                (None, Some(gens)) => {
                    let idx = gens
                        .iter()
                        .map(|g| {
                            model
                                .names()
                                .iter()
                                .position(|n| n == g)
                                .map(|i| i as u16)
                                .ok_or_else(|| Error::input(format!("unknown generator `{g}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    PeripheralSpec::generated(lambda, idx)
                }
                _ => {
                    return Err(Error::input(format!(
                        "peripheral {lambda}: give exactly one of `factor` or `generators`"
                    )))
                }
            };
            specs.push(spec);
        }
        Ok((model, specs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ModelKind;

    #[test]
    fn parses_documented_example() {
        let text = r#"
name = "dihedral"

[model]
kind = "free-product"
factors = [
  { kind = "cyclic", order = 2, generator = "a" },
  { kind = "cyclic", order = 2, generator = "b" },
]

[[peripheral]]
factor = 0

[[peripheral]]
generators = ["b"]
"#;
        let f = ModelFile::parse(text).unwrap();
        let (m, specs) = f.build().unwrap();
        assert_eq!(m.kind(), ModelKind::FreeProduct);
        assert_eq!(specs.len(), 2);
        assert_eq!(m.names(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn small_cancellation_relators_parse() {
        let text = r#"
[model]
kind = "small-cancellation"
generators = ["x", "y", "z", "w"]
relators = ["x y x^-1 y^-1 z w z^-1 w^-1"]
"#;
        let (m, specs) = ModelFile::parse(text).unwrap().build().unwrap();
        assert_eq!(m.kind(), ModelKind::SmallCancellation);
        assert!(specs.is_empty());
    }

    #[test]
    fn rejects_ambiguous_peripheral() {
        let text = r#"
[model]
kind = "free"
generators = ["x"]

[[peripheral]]
"#;
        assert!(ModelFile::parse(text).unwrap().build().is_err());
        assert!(ModelFile::parse("[model]\nkind = \"bogus\"").is_err());
    }
}
