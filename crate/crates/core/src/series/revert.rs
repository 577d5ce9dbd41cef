use num_traits::One;

use super::GradedSeries;
use crate::error::{Error, Result};

impl GradedSeries {
    /// `self(inner(t))`. `inner` must have no `t^0` term so that the
    /// composite is determined by the truncated data.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_compatible(inner, "compose")?;
        if !inner.coeffs[0].is_empty() {
            return Err(Error::Precondition(
                "compose needs an inner series without t^0 term".into(),
            ));
        }
        let mut acc = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for k in (0..=self.trunc_degree).rev() {
            acc = acc.mul(inner)?;
            let mut head = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
            head.coeffs[0] = self.coeffs[k].clone();
            acc = acc.add(&head)?;
        }
        Ok(acc)
    }

    /// Compositional inverse `b` with `self(b(t)) = t` and `b(self(t)) = t`.
    ///
    /// Requires a zero `t^0` coefficient and `t^1` coefficient exactly 1.
    /// Each pass of `b <- b - (self(b) - t)` fixes one more degree; pass `k`
    /// runs at truncation `k`.
    pub fn revert(&self) -> Result<Self> {
        if !self.is_tangent_to_identity() {
            return Err(Error::NotInvertible(
                "revert needs the form t + O(t^2) with rational leading coefficient 1".into(),
            ));
        }
        let mut b = Self::main_var(self.vars.clone(), 1, self.trunc_weight);
        for k in 2..=self.trunc_degree {
            let a_k = self.restrict(k, self.trunc_weight);
            let b_k = b.restrict(k, self.trunc_weight);
            let t = Self::main_var(self.vars.clone(), k, self.trunc_weight);
            let residual = a_k.compose(&b_k)?.sub(&t)?;
            b = b_k.sub(&residual)?;
        }
        Ok(b.restrict(self.trunc_degree, self.trunc_weight))
    }

    /// `true` when the `t^1` coefficient is exactly 1 and `t^0` vanishes.
    pub fn is_tangent_to_identity(&self) -> bool {
        self.coeffs[0].is_empty()
            && self.trunc_degree >= 1
            && self.coeffs[1].len() == 1
            && self.coeffs[1]
                .get(&self.vars.zero_exponent())
                .is_some_and(One::is_one)
    }
}
