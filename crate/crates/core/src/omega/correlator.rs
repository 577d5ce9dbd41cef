use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{multinomial, serde_rational, Rational};

/// Where correlator values come from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum CorrelatorSource {
    /// Genus zero only, by the multinomial formula.
    #[default]
    BuiltinGenus0,
    /// Explicit values keyed by genus and sorted exponent list; genus zero
    /// queries still use the builtin formula.
    Table(BTreeMap<(u32, Vec<u32>), Rational>),
}

/// Source of intersection numbers `<tau_{d_1} ... tau_{d_n}>_g`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CorrelatorProvider {
    source: CorrelatorSource,
}

#[derive(Deserialize)]
struct TableLine {
    g: u32,
    d: Vec<u32>,
    #[serde(with = "serde_rational")]
    value: Rational,
}

impl CorrelatorProvider {
    pub fn builtin() -> Self {
        Self {
            source: CorrelatorSource::BuiltinGenus0,
        }
    }

    pub fn source(&self) -> &CorrelatorSource {
        &self.source
    }

    /// Parses JSON lines `{"g": 1, "d": [1], "value": "1/24"}`; blank lines are skipped.
    pub fn from_json_lines(text: &str) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let entry: TableLine = serde_json::from_str(line).map_err(|e| {
                Error::Malformed(format!("correlator table line {}: {e}", lineno + 1))
            })?;
            let mut d = entry.d;
            d.sort_unstable();
            if let Some(old) = table.insert((entry.g, d.clone()), entry.value.clone()) {
                if old != entry.value {
                    return Err(Error::Malformed(format!(
                        "correlator table line {}: conflicting value for genus {} {:?}",
                        lineno + 1,
                        entry.g,
                        d
                    )));
                }
            }
        }
        Ok(Self {
            source: CorrelatorSource::Table(table),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_lines(&std::fs::read_to_string(path)?)
    }

    /// `<tau_{d_1} ... tau_{d_n}>_genus`, zero off the dimension constraint.
    pub fn correlator(&self, genus: u32, d: &[u32]) -> Result<Rational> {
        let n = d.len() as i64;
        if 2 * genus as i64 - 2 + n <= 0 {
            return Err(Error::Unstable { genus, n });
        }
        let total: i64 = d.iter().map(|&x| x as i64).sum();
        if total != 3 * genus as i64 - 3 + n {
            return Ok(Rational::zero());
        }
        if genus == 0 {
            let parts: Vec<u64> = d.iter().map(|&x| x as u64).collect();
            let value = multinomial(total as u64, &parts)?;
            return Ok(Rational::from_integer(value));
        }
        let mut key = d.to_vec();
        key.sort_unstable();
        match &self.source {
            CorrelatorSource::Table(table) => table
                .get(&(genus, key.clone()))
                .cloned()
                .ok_or(Error::CorrelatorMissing { genus, d: key }),
            CorrelatorSource::BuiltinGenus0 => Err(Error::CorrelatorMissing { genus, d: key }),
        }
    }
}

/// `<tau_0^n tau_{b_1+1} ... tau_{b_p+1}>_genus`, the integral of the
/// pushed-forward class with exponents `b` over a space with `n` points.
pub fn kappa_integral(
    n: u32,
    b: &[u32],
    provider: &CorrelatorProvider,
    genus: u32,
) -> Result<Rational> {
    let degree: i64 = b.iter().map(|&x| x as i64).sum();
    let dimension = 3 * genus as i64 - 3 + n as i64;
    if degree != dimension {
        return Err(Error::DimensionMismatch { degree, dimension });
    }
    let mut d = vec![0u32; n as usize];
    d.extend(b.iter().map(|&x| x + 1));
    provider.correlator(genus, &d)
}
