//! Deliberate corruptions used to confirm that each verification can fail.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::MultiIndex;

/// A set of corruptions; the default plan corrupts nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaultPlan {
    /// Flip the sign `(-1)^{p-k}` in the set-partition expansions.
    pub partition_sign: bool,
    /// Flip the sign of `s_3` on one side of the Laplace identity.
    pub laplace_s3_sign: bool,
    /// Add 1 to `V(m)` where it enters the generating function.
    pub volume: Option<MultiIndex>,
    /// Add 1 to the Zograf number `v_n`.
    pub zograf: Option<u32>,
    /// Add `q^2` to the Poincare polynomial `P_n`.
    pub poincare: Option<u32>,
}

impl FaultPlan {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    /// Combines two plans, taking every corruption present in either.
    pub fn merge(mut self, other: FaultPlan) -> Self {
        self.partition_sign |= other.partition_sign;
        self.laplace_s3_sign |= other.laplace_s3_sign;
        self.volume = self.volume.or(other.volume);
        self.zograf = self.zograf.or(other.zograf);
        self.poincare = self.poincare.or(other.poincare);
        self
    }
}

/// Parses `omega-sign`, `laplace-s3`, `volume:<m>`, `zograf:<n>` or `poincare:<n>`.
impl FromStr for FaultPlan {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("unknown fault '{text}'"));
        let mut plan = FaultPlan::default();
        match text.split_once(':') {
            None if text == "omega-sign" => plan.partition_sign = true,
            None if text == "laplace-s3" => plan.laplace_s3_sign = true,
            Some(("volume", m)) => plan.volume = Some(m.parse()?),
            Some(("zograf", n)) => plan.zograf = Some(n.parse().map_err(|_| bad())?),
            Some(("poincare", n)) => plan.poincare = Some(n.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        assert!("omega-sign".parse::<FaultPlan>().unwrap().partition_sign);
        assert!("laplace-s3".parse::<FaultPlan>().unwrap().laplace_s3_sign);
        assert_eq!(
            "volume:2".parse::<FaultPlan>().unwrap().volume,
            Some(MultiIndex::from_multiplicities(&[2]))
        );
        assert_eq!("zograf:6".parse::<FaultPlan>().unwrap().zograf, Some(6));
        assert_eq!("poincare:5".parse::<FaultPlan>().unwrap().poincare, Some(5));
        assert!("zograf:x".parse::<FaultPlan>().is_err());
        assert!("nothing".parse::<FaultPlan>().is_err());
        assert!(FaultPlan::none().is_empty());
    }
}
