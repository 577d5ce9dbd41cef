use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{volume_recursive, zograf_v};
use crate::error::{Error, Result};
use crate::exact::{factorial, multi_indices_up_to_weight, Rational};
use crate::fault::FaultPlan;
use crate::series::{GradedSeries, VariableTable};

/// `Σ_{|m| <= weight_cap} V(m) x^{|m|} s^m` over the given table of `s`
/// variables, with a separate cap on the `x`-degree.
pub fn generating_series(
    vars: Arc<VariableTable>,
    x_cap: usize,
    weight_cap: u32,
    fault: &FaultPlan,
) -> GradedSeries {
    let width = vars.len();
    let mut terms = Vec::new();
    for m in multi_indices_up_to_weight(weight_cap as u64) {
        if m.max_index() as usize > width {
            continue;
        }
        let mut v = volume_recursive(&m);
        if fault.volume.as_ref() == Some(&m) {
            v += Rational::one();
        }
        terms.push((m.weight() as usize, m.to_dense(width), v));
    }
    GradedSeries::from_terms(vars, x_cap, weight_cap, terms).expect("exponents match the table")
}

/// `F(x; s)` through `x`-degree and weight `order`.
pub fn generating_f(order: u32) -> GradedSeries {
    let vars = Arc::new(VariableTable::s_variables(order as usize));
    generating_series(vars, order as usize, order, &FaultPlan::default())
}

/// First nonzero coefficient of a residual series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub identity: String,
    /// `None` when the identity holds exactly.
    pub first_nonzero: Option<ResidualTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualTerm {
    pub x_degree: usize,
    pub monomial: String,
    pub weight: u64,
    pub value: Rational,
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_nonzero {
            None => write!(f, "{}: exact", self.identity),
            Some(t) => write!(
                f,
                "{}: residual {} at x^{} {} (weight {})",
                self.identity, t.value, t.x_degree, t.monomial, t.weight
            ),
        }
    }
}

/// Outcome of the differential-equation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeReport {
    pub order: u32,
    pub residuals: Vec<Residual>,
    pub passed: bool,
}

impl PdeReport {
    pub fn first_failure(&self) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.first_nonzero.is_some())
    }
}

fn monomial_text(vars: &VariableTable, e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .names()
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(n, &k)| {
            if k == 1 {
                n.clone()
            } else {
                format!("{n}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn compare(
    identity: String,
    lhs: &GradedSeries,
    rhs: &GradedSeries,
    weight_cap: u32,
) -> Result<Residual> {
    let diff = lhs.sub(rhs)?;
    let vars = diff.vars().clone();
    let first_nonzero = diff
        .terms()
        .find(|(_, e, _)| vars.weight_of(e) <= weight_cap as u64)
        .map(|(d, e, v)| ResidualTerm {
            x_degree: d,
            monomial: monomial_text(&vars, e),
            weight: vars.weight_of(e),
            value: v.clone(),
        });
    Ok(Residual {
        identity,
        first_nonzero,
    })
}

/// Verifies the differential equations satisfied by `F` and the auxiliary
/// series `H_a` (`H_0 = x`, `H_a = ∫ H_{a-1} F dx`) for `1 <= a <= order`,
/// through weight `order` in `s`.
pub fn check_pde(order: u32) -> Result<PdeReport> {
    check_pde_with(order, &FaultPlan::default())
}

pub fn check_pde_with(order: u32, fault: &FaultPlan) -> Result<PdeReport> {
    if order == 0 {
        return Err(Error::Precondition(
            "the differential-equation check needs order >= 1".into(),
        ));
    }
    let n = order as usize;
    let vars = Arc::new(VariableTable::s_variables(n));
    // every series here has x-degree = weight + c with c <= n + 1, so this cap never truncates
    let x_cap = 2 * n + 2;
    // d/ds_a lowers the weight by a; build F with enough headroom for all a <= n
    let big = generating_series(vars.clone(), x_cap, 2 * order, fault);
    let f = big.restrict(x_cap, order);
    let fx = f.derive_main();
    let mut df = vec![GradedSeries::main_var(vars.clone(), x_cap, order).mul(&fx)?];
    for a in 1..=n {
        df.push(big.derive_aux(&format!("s{a}"))?.restrict(x_cap, order));
    }

    let mut h = vec![GradedSeries::main_var(vars.clone(), x_cap, order)];
    for a in 1..=n {
        let next = h[a - 1].mul(&f)?.integrate_main()?;
        h.push(next);
    }

    let f2 = f.mul(&f)?;
    let mut fx_pow = vec![GradedSeries::one(vars.clone(), x_cap, order)];
    let mut f2_pow = vec![GradedSeries::one(vars.clone(), x_cap, order)];
    for k in 1..=n + 1 {
        fx_pow.push(fx_pow[k - 1].mul(&fx)?);
        f2_pow.push(f2_pow[k - 1].mul(&f2)?);
    }

    let mut residuals = Vec::new();
    for a in 1..=n {
        let flow_rhs = h[a].mul(&f)?.derive_main();
        residuals.push(compare(
            format!("dF/ds{a} = d/dx(H_{a} F)"),
            &df[a],
            &flow_rhs,
            order,
        )?);

        let ladder_rhs = h[a - 1].mul(&f)?;
        residuals.push(compare(
            format!("dH_{a}/dx = H_{} F", a - 1),
            &h[a].derive_main(),
            &ladder_rhs,
            order,
        )?);

        let cleared_lhs = h[a].mul(&fx_pow[a + 1])?;
        let mut cleared_rhs = GradedSeries::zero(vars.clone(), x_cap, order);
        for k in 0..=a {
            let term = f2_pow[k].mul(&df[a - k])?.mul(&fx_pow[a - k])?;
            cleared_rhs = if k % 2 == 0 {
                cleared_rhs.add(&term)?
            } else {
                cleared_rhs.sub(&term)?
            };
        }
        residuals.push(compare(
            format!(
                "H_{a} (dF/dx)^{} = sum_k (-1)^k F^(2k) D_({a}-k)F (dF/dx)^({a}-k)",
                a + 1
            ),
            &cleared_lhs,
            &cleared_rhs,
            order,
        )?);
    }
    let passed = residuals.iter().all(|r| r.first_nonzero.is_none());
    Ok(PdeReport {
        order,
        residuals,
        passed,
    })
}

/// At `s = (1, 0, 0, ...)`: checks that
/// `y = Σ_{n>=3} v_n x^{n-2} / ((n-2)! (n-3)!)` and
/// `x = Σ_{m>=1} (-1)^{m-1} y^m / (m! (m-1)!)` are mutually inverse through `order`.
pub fn check_bessel_specialization(order: u32) -> Result<bool> {
    Ok(check_bessel_specialization_with(order, &FaultPlan::default())?.is_none())
}

/// Returns the first offending coefficient, or `None` when the check passes.
pub fn check_bessel_specialization_with(order: u32, fault: &FaultPlan) -> Result<Option<String>> {
    if order < 3 {
        return Err(Error::Precondition(
            "the Bessel specialization check needs order >= 3".into(),
        ));
    }
    let vars = Arc::new(VariableTable::empty());
    let n_cap = order as usize;
    let mut y_coeffs = vec![Rational::zero(); n_cap + 1];
    for n in 3..=order + 2 {
        let mut v = zograf_v(n)?;
        if fault.zograf == Some(n) {
            v += Rational::one();
        }
        let denom = factorial(n as u64 - 2) * factorial(n as u64 - 3);
        y_coeffs[(n - 2) as usize] = v / Rational::from_integer(denom);
    }
    let mut x_coeffs = vec![Rational::zero(); n_cap + 1];
    for m in 1..=order as u64 {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        x_coeffs[m as usize] = Rational::new(BigInt::from(sign), factorial(m) * factorial(m - 1));
    }
    let y = GradedSeries::from_coefficients(vars.clone(), n_cap, 0, &y_coeffs);
    let x = GradedSeries::from_coefficients(vars.clone(), n_cap, 0, &x_coeffs);
    let t = GradedSeries::main_var(vars, n_cap, 0);
    for (label, composite) in [("x(y(t))", x.compose(&y)?), ("y(x(t))", y.compose(&x)?)] {
        let diff = composite.sub(&t)?;
        let first = diff
            .terms()
            .next()
            .map(|(d, _, v)| format!("{label} - t has coefficient {v} at t^{d}"));
        if first.is_some() {
            return Ok(first);
        }
    }
    Ok(None)
}
