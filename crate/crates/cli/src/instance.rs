//! Instance files: the semigroup, ideal, module and exponents a command works on.

use std::sync::Arc;

use rr_core::oracle::{ModuleChoice, OracleInstance};
use rr_core::{NormalizedIdeal, NumericalSemigroup};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub semigroup: Vec<i64>,
    #[serde(default)]
    pub ideal: Option<Vec<i64>>,
    #[serde(default)]
    pub module: Option<ModuleChoice>,
    #[serde(default)]
    pub t: Option<u32>,
    #[serde(default)]
    pub n_max: Option<u32>,
    #[serde(default)]
    pub colon: Option<ColonSpec>,
}

/// `(I^a M^p : I^b M^q)` intersected with the chosen ambient.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColonSpec {
    pub numerator: Term,
    pub denominator: Term,
    #[serde(default)]
    pub within: Within,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(default)]
    pub ideal_power: u32,
    #[serde(default)]
    pub with_module: bool,
}

#[derive(Debug, Default, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Within {
    #[default]
    Ring,
    Module,
    Integers,
}

impl Within {
    pub fn name(self) -> &'static str {
        match self {
            Within::Ring => "ring",
            Within::Module => "module",
            Within::Integers => "integers",
        }
    }
}

/// A validated instance with its objects built.
pub struct Instance {
    pub spec: InstanceSpec,
    pub semigroup: Arc<NumericalSemigroup>,
    pub ideal: NormalizedIdeal,
    pub module: NormalizedIdeal,
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: InstanceSpec = serde_json::from_str(text)
            .map_err(|e| CliError::Validation(format!("instance: {e}")))?;
        if spec.t == Some(0) {
            return Err(CliError::Validation("t must be at least 1".into()));
        }
        if spec.n_max == Some(0) {
            return Err(CliError::Validation("n_max must be at least 1".into()));
        }
        let semigroup = Arc::new(NumericalSemigroup::new(&spec.semigroup)?);
        let ideal = match &spec.ideal {
            None => NormalizedIdeal::maximal(&semigroup),
            Some(gens) => {
                if let Some(&bad) = gens.iter().find(|&&g| g <= 0 || !semigroup.contains(g)) {
                    return Err(rr_core::Error::NotInSemigroup(bad).into());
                }
                NormalizedIdeal::from_generators(&semigroup, gens)?
            }
        };
        let module = spec.module().build(&semigroup)?;
        Ok(Instance {
            spec,
            semigroup,
            ideal,
            module,
        })
    }

    pub fn t(&self) -> u32 {
        self.spec.t.unwrap_or(1)
    }

    pub fn oracle_instance(&self) -> OracleInstance {
        OracleInstance {
            semigroup: self.semigroup.generators().to_vec(),
            ideal: self.ideal.minimal_generators(),
            module: self.spec.module(),
            t: self.t(),
        }
    }
}

impl InstanceSpec {
    fn module(&self) -> ModuleChoice {
        self.module.clone().unwrap_or(ModuleChoice::Canonical)
    }
}
