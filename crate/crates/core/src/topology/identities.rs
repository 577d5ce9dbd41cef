use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{euler_characteristic, poincare};
use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::fault::FaultPlan;
use crate::series::{GradedSeries, VariableTable};

/// `y = Σ_{n<=order} P_n(q) x^n / n!` with `q` of weight 1 and a `q`-degree
/// cap of `2 order + 4`.
pub fn betti_series(order: u32, fault: &FaultPlan) -> Result<GradedSeries> {
    let vars = Arc::new(VariableTable::new([("q", 1)])?);
    let q_cap = 2 * order + 4;
    let mut y = GradedSeries::zero(vars, order as usize, q_cap);
    for n in 1..=order {
        let mut p = poincare(n)?;
        if fault.poincare == Some(n) {
            p.add_term(2, BigInt::one());
        }
        let nf = factorial(n as u64);
        for (e, c) in p.terms() {
            y.add_term(n as usize, vec![e], Rational::new(c.clone(), nf.clone()));
        }
    }
    Ok(y)
}

fn first_difference(
    label: &str,
    lhs: &GradedSeries,
    rhs: &GradedSeries,
    max_degree: usize,
) -> Result<Option<String>> {
    let diff = lhs.sub(rhs)?;
    let first = diff
        .terms()
        .find(|(d, _, _)| *d <= max_degree)
        .map(|(d, e, v)| format!("{label}: residual {v} at x^{d} q^{}", e[0]));
    Ok(first)
}

/// Checks `(1+y)^{q^2} = 1 + q^2 x + q^4 (y - x)` through `x`-degree `order`,
/// then the cleared differential equation `(1 - q^2 (y - x)) y' = 1 + y`
/// through `x`-degree `order - 1`. Returns the first offending coefficient.
pub fn implicit_equation_report(order: u32, fault: &FaultPlan) -> Result<Option<String>> {
    if order == 0 {
        return Err(Error::Precondition(
            "the implicit equation check needs order >= 1".into(),
        ));
    }
    let y = betti_series(order, fault)?;
    let vars = y.vars().clone();
    let (n, w) = (y.trunc_degree(), y.trunc_weight());
    let one = GradedSeries::one(vars.clone(), n, w);
    let x = GradedSeries::main_var(vars.clone(), n, w);
    let q2 = GradedSeries::aux_var(vars.clone(), n, w, "q")?.pow(2)?;
    let q4 = q2.mul(&q2)?;

    let lhs = one.add(&y)?.pow_formal(&q2)?;
    let y_minus_x = y.sub(&x)?;
    let rhs = one.add(&q2.mul(&x)?)?.add(&q4.mul(&y_minus_x)?)?;
    if let Some(bad) = first_difference("(1+y)^(q^2) = 1 + q^2 x + q^4 (y-x)", &lhs, &rhs, n)? {
        return Ok(Some(bad));
    }

    let cleared_lhs = one.sub(&q2.mul(&y_minus_x)?)?.mul(&y.derive_main())?;
    let cleared_rhs = one.add(&y)?;
    first_difference(
        "(1 - q^2 (y-x)) dy/dx = 1 + y",
        &cleared_lhs,
        &cleared_rhs,
        n - 1,
    )
}

pub fn implicit_equation_check(order: u32) -> Result<bool> {
    Ok(implicit_equation_report(order, &FaultPlan::default())?.is_none())
}

/// At `q = 1`: `y = Σ χ_n x^n / n!` satisfies `x = 2y - (1+y) log(1+y)`
/// through `order`.
pub fn euler_identity_check(order: u32) -> Result<bool> {
    if order == 0 {
        return Err(Error::Precondition(
            "the Euler identity check needs order >= 1".into(),
        ));
    }
    let vars = Arc::new(VariableTable::empty());
    let n = order as usize;
    let mut coeffs = vec![Rational::from_integer(0.into())];
    for k in 1..=order {
        coeffs.push(Rational::new(euler_characteristic(k)?, factorial(k as u64)));
    }
    let y = GradedSeries::from_coefficients(vars.clone(), n, 0, &coeffs);
    let one_plus_y = GradedSeries::one(vars.clone(), n, 0).add(&y)?;
    let two = Rational::from_integer(2.into());
    let rhs = y
        .scale(&two)
        .sub(&one_plus_y.mul(&one_plus_y.log_series()?)?)?;
    Ok(rhs == GradedSeries::main_var(vars, n, 0))
}
