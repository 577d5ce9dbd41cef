use num_traits::{One, Zero};

use super::{accumulate, mul_poly_into, AuxPoly, GradedSeries};
use crate::error::{Error, Result};
use crate::exact::Rational;

impl GradedSeries {
    /// d/dt. The top coefficient of the result is zero.
    pub fn derive_main(&self) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for d in 1..=self.trunc_degree {
            let factor = Rational::from_integer(d.into());
            out.coeffs[d - 1] = self.coeffs[d]
                .iter()
                .map(|(e, v)| (e.clone(), v * &factor))
                .collect();
        }
        out
    }

    /// Partial derivative in the named auxiliary variable.
    pub fn derive_aux(&self, name: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for (d, poly) in self.coeffs.iter().enumerate() {
            for (e, v) in poly {
                if e[idx] == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[idx] -= 1;
                accumulate(
                    &mut out.coeffs[d],
                    e2,
                    v * Rational::from_integer(e[idx].into()),
                );
            }
        }
        Ok(out)
    }

    /// Antiderivative in `t` with zero constant term. The input must vanish
    /// in the top degree, otherwise the result would leave the truncation.
    pub fn integrate_main(&self) -> Result<Self> {
        if !self.coeffs[self.trunc_degree].is_empty() {
            return Err(Error::Precondition(format!(
                "integrate_main needs degree <= {}",
                self.trunc_degree.saturating_sub(1)
            )));
        }
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for d in 0..self.trunc_degree {
            let factor = Rational::new(1.into(), ((d + 1) as i64).into());
            out.coeffs[d + 1] = self.coeffs[d]
                .iter()
                .map(|(e, v)| (e.clone(), v * &factor))
                .collect();
        }
        Ok(out)
    }

    /// `exp(self)`. The `t^0` coefficient must have no rational constant part.
    pub fn exp_series(&self) -> Result<Self> {
        let zero_e = self.vars.zero_exponent();
        let head = &self.coeffs[0];
        if head.contains_key(&zero_e) {
            return Err(Error::Precondition(
                "exp needs a series without constant rational term".into(),
            ));
        }
        let mut tail = self.clone();
        tail.coeffs[0].clear();

        // t E' = (t A') E  gives  n E_n = sum_{k=1..n} k A_k E_{n-k}
        let mut out = Self::one(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for n in 1..=self.trunc_degree {
            let mut acc = AuxPoly::new();
            for k in 1..=n {
                if tail.coeffs[k].is_empty() || out.coeffs[n - k].is_empty() {
                    continue;
                }
                let mut prod = AuxPoly::new();
                mul_poly_into(
                    &mut prod,
                    &tail.coeffs[k],
                    &out.coeffs[n - k],
                    &self.vars,
                    self.trunc_weight,
                );
                let kf = Rational::from_integer((k as i64).into());
                for (e, v) in prod {
                    accumulate(&mut acc, e, v * &kf);
                }
            }
            let inv_n = Rational::new(1.into(), (n as i64).into());
            out.coeffs[n] = acc.into_iter().map(|(e, v)| (e, v * &inv_n)).collect();
        }

        if head.is_empty() {
            return Ok(out);
        }
        let head_exp = self.exp_aux(head);
        let mut head_series = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        head_series.coeffs[0] = head_exp;
        head_series.mul(&out)
    }

    /// `Σ u^k / k!` for a nilpotent auxiliary polynomial.
    fn exp_aux(&self, u: &AuxPoly) -> AuxPoly {
        let zero_e = self.vars.zero_exponent();
        let mut result = AuxPoly::new();
        result.insert(zero_e, Rational::one());
        let mut power = result.clone();
        let mut k = 1i64;
        loop {
            let mut next = AuxPoly::new();
            mul_poly_into(&mut next, &power, u, &self.vars, self.trunc_weight);
            if next.is_empty() {
                break;
            }
            let inv_k = Rational::new(1.into(), k.into());
            next = next.into_iter().map(|(e, v)| (e, v * &inv_k)).collect();
            for (e, v) in &next {
                accumulate(&mut result, e.clone(), v.clone());
            }
            power = next;
            k += 1;
        }
        result
    }

    /// `log(self)`. The `t^0` coefficient must have rational constant part 1.
    pub fn log_series(&self) -> Result<Self> {
        let zero_e = self.vars.zero_exponent();
        let head = &self.coeffs[0];
        if head.get(&zero_e).is_none_or(|c| !c.is_one()) {
            return Err(Error::Precondition(
                "log needs a series with constant term 1".into(),
            ));
        }
        let head_only = head.len() == 1;
        let (normalized, head_log) = if head_only {
            (self.clone(), AuxPoly::new())
        } else {
            let mut head_series =
                Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
            head_series.coeffs[0] = head.clone();
            (self.div(&head_series)?, self.log_aux(head))
        };

        // t L' = t B' / B  gives  n L_n = n B_n - sum_{k=1..n-1} k L_k B_{n-k}
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        out.coeffs[0] = head_log;
        for n in 1..=self.trunc_degree {
            let nf = Rational::from_integer((n as i64).into());
            let mut acc: AuxPoly = normalized.coeffs[n]
                .iter()
                .map(|(e, v)| (e.clone(), v * &nf))
                .collect();
            for k in 1..n {
                if out.coeffs[k].is_empty() || normalized.coeffs[n - k].is_empty() {
                    continue;
                }
                let mut prod = AuxPoly::new();
                mul_poly_into(
                    &mut prod,
                    &out.coeffs[k],
                    &normalized.coeffs[n - k],
                    &self.vars,
                    self.trunc_weight,
                );
                let kf = Rational::from_integer((k as i64).into());
                for (e, v) in prod {
                    accumulate(&mut acc, e, -(v * &kf));
                }
            }
            let inv_n = nf.recip();
            out.coeffs[n] = acc.into_iter().map(|(e, v)| (e, v * &inv_n)).collect();
        }
        Ok(out)
    }

    /// `log(1 + u) = Σ (-1)^{k+1} u^k / k` for a polynomial `1 + u` with nilpotent `u`.
    fn log_aux(&self, p: &AuxPoly) -> AuxPoly {
        let zero_e = self.vars.zero_exponent();
        let u: AuxPoly = p
            .iter()
            .filter(|(e, _)| **e != zero_e)
            .map(|(e, v)| (e.clone(), v.clone()))
            .collect();
        let mut result = AuxPoly::new();
        let mut power = u.clone();
        let mut k = 1i64;
        while !power.is_empty() {
            let coeff = Rational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
            for (e, v) in &power {
                accumulate(&mut result, e.clone(), v * &coeff);
            }
            let mut next = AuxPoly::new();
            mul_poly_into(&mut next, &power, &u, &self.vars, self.trunc_weight);
            power = next;
            k += 1;
        }
        result
    }

    /// `self^alpha = exp(alpha log self)` where `alpha` is a polynomial in
    /// the auxiliary variables only.
    pub fn pow_formal(&self, alpha: &Self) -> Result<Self> {
        if alpha.coeffs.iter().skip(1).any(|p| !p.is_empty()) {
            return Err(Error::Precondition(
                "pow_formal exponent must not involve the main variable".into(),
            ));
        }
        if alpha.is_zero() {
            self.check_compatible(alpha, "pow_formal")?;
            return Ok(Self::one(
                self.vars.clone(),
                self.trunc_degree,
                self.trunc_weight,
            ));
        }
        alpha.mul(&self.log_series()?)?.exp_series()
    }

    /// `self^alpha` for a rational exponent.
    pub fn pow_rational(&self, alpha: &Rational) -> Result<Self> {
        if alpha.is_zero() {
            return Ok(Self::one(
                self.vars.clone(),
                self.trunc_degree,
                self.trunc_weight,
            ));
        }
        self.log_series()?.scale(alpha).exp_series()
    }
}
