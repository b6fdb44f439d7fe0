//! GroupSpec files: JSON with 1-based cycle-notation generators.

use primcycle::families::{ConstructedGroup, FamilyDescriptor};
use primcycle::{GroupSpec, Permutation};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default)]
    pub label: Option<String>,
    pub degree: usize,
    pub point_base: u8,
    pub generators: Vec<String>,
    #[serde(default)]
    pub descriptor: Option<FamilyDescriptor>,
    #[serde(default)]
    pub witness_cycle: Option<String>,
}

impl SpecFile {
    pub fn from_constructed(g: &ConstructedGroup) -> Self {
        SpecFile {
            label: g.spec.label().map(str::to_string),
            degree: g.degree(),
            point_base: 1,
            generators: g.spec.generators().iter().map(Permutation::to_cycle_string).collect(),
            descriptor: Some(g.descriptor.clone()),
            witness_cycle: g.witness_cycle.as_ref().map(Permutation::to_cycle_string),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        // serde_json errors already carry the line and column
        let file: SpecFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if file.point_base != 1 {
            return Err(format!("point_base must be 1, found {}", file.point_base));
        }
        Ok(file)
    }

    pub fn to_group(&self) -> Result<GroupSpec, String> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Permutation::parse_cycles(s, self.degree).map_err(|e| format!("generator {}: {e}", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let group = GroupSpec::new(self.degree, gens).map_err(|e| e.to_string())?;
        Ok(match &self.label {
            Some(l) => group.with_label(l.clone()),
            None => group,
        })
    }
}
