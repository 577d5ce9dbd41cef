//! Truncated power series in one distinguished variable whose coefficients
//! are exact rational polynomials in weighted auxiliary variables.
//!
//! A [`GradedSeries`] lives in the quotient ring
//! `Q[aux]/(weight > W) [[t]] / (t^(N+1))`: ring operations are exact there.
//! Derivatives are not compatible with the truncation ideal, so the top
//! `t`-degree of `derive_main` and the top weights of `derive_aux` only carry
//! the information present in the truncated input; callers that need those
//! coefficients compute with headroom and cut back with [`GradedSeries::restrict`].

mod calculus;
mod json;
mod revert;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

pub use json::SeriesJson;

/// Exponent vector over the auxiliary variables, dense in table order.
pub type Exponent = Vec<u32>;

/// Polynomial in the auxiliary variables.
pub type AuxPoly = BTreeMap<Exponent, Rational>;

/// Ordered, uniquely named auxiliary variables with positive weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VariableTable {
    pub fn new<S: Into<String>, I: IntoIterator<Item = (S, u32)>>(vars: I) -> Result<Self> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, weight) in vars {
            let name = name.into();
            if names.contains(&name) {
                return Err(Error::DuplicateVariable(name));
            }
            if weight == 0 {
                return Err(Error::Precondition(format!(
                    "variable {name} must have positive weight"
                )));
            }
            names.push(name);
            weights.push(weight);
        }
        Ok(Self { names, weights })
    }

    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            weights: Vec::new(),
        }
    }

    /// `s1, ..., s{count}` with `weight(s_a) = a`.
    pub fn s_variables(count: usize) -> Self {
        Self {
            names: (1..=count).map(|a| format!("s{a}")).collect(),
            weights: (1..=count as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight_of(&self, exponent: &[u32]) -> u64 {
        exponent
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn zero_exponent(&self) -> Exponent {
        vec![0; self.len()]
    }
}

/// Truncated graded power series; see the module docs for the ring it models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    vars: Arc<VariableTable>,
    trunc_degree: usize,
    trunc_weight: u32,
    /// `coeffs[d]` is the coefficient of `t^d`; never contains zero values.
    coeffs: Vec<AuxPoly>,
}

impl GradedSeries {
    pub fn zero(vars: Arc<VariableTable>, trunc_degree: usize, trunc_weight: u32) -> Self {
        Self {
            vars,
            trunc_degree,
            trunc_weight,
            coeffs: vec![AuxPoly::new(); trunc_degree + 1],
        }
    }

    pub fn constant(
        vars: Arc<VariableTable>,
        trunc_degree: usize,
        trunc_weight: u32,
        value: Rational,
    ) -> Self {
        let mut out = Self::zero(vars, trunc_degree, trunc_weight);
        let e = out.vars.zero_exponent();
        out.add_term(0, e, value);
        out
    }

    pub fn one(vars: Arc<VariableTable>, trunc_degree: usize, trunc_weight: u32) -> Self {
        Self::constant(vars, trunc_degree, trunc_weight, Rational::one())
    }

    /// The distinguished variable `t` itself.
    pub fn main_var(vars: Arc<VariableTable>, trunc_degree: usize, trunc_weight: u32) -> Self {
        let mut out = Self::zero(vars, trunc_degree, trunc_weight);
        let e = out.vars.zero_exponent();
        out.add_term(1, e, Rational::one());
        out
    }

    pub fn aux_var(
        vars: Arc<VariableTable>,
        trunc_degree: usize,
        trunc_weight: u32,
        name: &str,
    ) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut out = Self::zero(vars, trunc_degree, trunc_weight);
        let mut e = out.vars.zero_exponent();
        e[idx] = 1;
        out.add_term(0, e, Rational::one());
        Ok(out)
    }

    /// Builds a series from `(degree, exponent, value)` triples. Terms beyond
    /// the truncation are dropped; repeated keys add up.
    pub fn from_terms<I>(
        vars: Arc<VariableTable>,
        trunc_degree: usize,
        trunc_weight: u32,
        terms: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Exponent, Rational)>,
    {
        let mut out = Self::zero(vars, trunc_degree, trunc_weight);
        for (d, e, value) in terms {
            if e.len() != out.vars.len() {
                return Err(Error::SeriesMismatch(format!(
                    "exponent of length {} for a table of {} variables",
                    e.len(),
                    out.vars.len()
                )));
            }
            out.add_term(d, e, value);
        }
        Ok(out)
    }

    /// Univariate series from its coefficient list `[c_0, c_1, ...]`.
    pub fn from_coefficients(
        vars: Arc<VariableTable>,
        trunc_degree: usize,
        trunc_weight: u32,
        coeffs: &[Rational],
    ) -> Self {
        let mut out = Self::zero(vars, trunc_degree, trunc_weight);
        for (d, c) in coeffs.iter().enumerate() {
            let e = out.vars.zero_exponent();
            out.add_term(d, e, c.clone());
        }
        out
    }

    pub fn vars(&self) -> &Arc<VariableTable> {
        &self.vars
    }

    pub fn trunc_degree(&self) -> usize {
        self.trunc_degree
    }

    pub fn trunc_weight(&self) -> u32 {
        self.trunc_weight
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(AuxPoly::is_empty)
    }

    /// The auxiliary polynomial multiplying `t^d` (empty beyond the truncation).
    pub fn slice(&self, d: usize) -> &AuxPoly {
        static EMPTY: AuxPoly = AuxPoly::new();
        self.coeffs.get(d).unwrap_or(&EMPTY)
    }

    pub fn coefficient(&self, d: usize, e: &[u32]) -> Rational {
        self.slice(d).get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Pure rational coefficient of `t^d` (the part free of auxiliary variables).
    pub fn scalar_coefficient(&self, d: usize) -> Rational {
        self.coefficient(d, &self.vars.zero_exponent())
    }

    /// All nonzero terms sorted by `(d, e)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Exponent, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(d, poly)| poly.iter().map(move |(e, v)| (d, e, v)))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(AuxPoly::len).sum()
    }

    /// Largest `d` with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|p| !p.is_empty())
    }

    /// Adds `value * t^d * aux^e`, dropping it when outside the truncation.
    pub fn add_term(&mut self, d: usize, e: Exponent, value: Rational) {
        if d > self.trunc_degree
            || self.vars.weight_of(&e) > self.trunc_weight as u64
            || value.is_zero()
        {
            return;
        }
        accumulate(&mut self.coeffs[d], e, value);
    }

    /// Same series under new truncation caps. Lowering a cap drops terms;
    /// raising one pads with zeros, which is only meaningful when the caller
    /// knows the missing coefficients vanish.
    pub fn restrict(&self, trunc_degree: usize, trunc_weight: u32) -> Self {
        let mut out = Self::zero(self.vars.clone(), trunc_degree, trunc_weight);
        for (d, e, v) in self.terms() {
            out.add_term(d, e.clone(), v.clone());
        }
        out
    }

    /// Keeps only the terms passing `keep(d, weight)`.
    pub fn filter_terms(&self, keep: impl Fn(usize, u64) -> bool) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for (d, e, v) in self.terms() {
            if keep(d, self.vars.weight_of(e)) {
                out.add_term(d, e.clone(), v.clone());
            }
        }
        out
    }

    fn check_compatible(&self, other: &Self, op: &str) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::SeriesMismatch(format!(
                "{op}: different variable tables"
            )));
        }
        if self.trunc_degree != other.trunc_degree || self.trunc_weight != other.trunc_weight {
            return Err(Error::SeriesMismatch(format!(
                "{op}: truncations (N={}, W={}) and (N={}, W={})",
                self.trunc_degree, self.trunc_weight, other.trunc_degree, other.trunc_weight
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let mut out = self.clone();
        for (dst, src) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (e, v) in src {
                accumulate(dst, e.clone(), v.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        let mut out = self.clone();
        for (dst, src) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (e, v) in src {
                accumulate(dst, e.clone(), -v.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        if factor.is_zero() {
            return out;
        }
        for (dst, src) in out.coeffs.iter_mut().zip(&self.coeffs) {
            *dst = src.iter().map(|(e, v)| (e.clone(), v * factor)).collect();
        }
        out
    }

    /// Multiplies by `t^shift`, dropping what falls off the top.
    pub fn shift_main(&self, shift: usize) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for d in 0..=self.trunc_degree {
            if d + shift > self.trunc_degree {
                break;
            }
            out.coeffs[d + shift] = self.coeffs[d].clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for (d1, p1) in self.coeffs.iter().enumerate() {
            if p1.is_empty() {
                continue;
            }
            for (d2, p2) in other.coeffs.iter().enumerate() {
                if d1 + d2 > self.trunc_degree {
                    break;
                }
                if p2.is_empty() {
                    continue;
                }
                mul_poly_into(
                    &mut out.coeffs[d1 + d2],
                    p1,
                    p2,
                    &self.vars,
                    self.trunc_weight,
                );
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `a / b`, requiring the `(d = 0, e = 0)` coefficient of `b` to be nonzero.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_compatible(divisor, "div")?;
        let inv0 = invert_aux(divisor.slice(0), &self.vars, self.trunc_weight)?;
        let mut out = Self::zero(self.vars.clone(), self.trunc_degree, self.trunc_weight);
        for n in 0..=self.trunc_degree {
            let mut rest = self.coeffs[n].clone();
            for k in 1..=n {
                let mut prod = AuxPoly::new();
                mul_poly_into(
                    &mut prod,
                    &divisor.coeffs[k],
                    &out.coeffs[n - k],
                    &self.vars,
                    self.trunc_weight,
                );
                for (e, v) in prod {
                    accumulate(&mut rest, e, -v);
                }
            }
            let mut q = AuxPoly::new();
            mul_poly_into(&mut q, &rest, &inv0, &self.vars, self.trunc_weight);
            out.coeffs[n] = q;
        }
        Ok(out)
    }

    /// Renders the series with `main` as the name of the distinguished variable.
    pub fn to_text(&self, main: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (d, e, v) in self.terms() {
            let mut factors: Vec<String> = Vec::new();
            for (name, &k) in self.vars.names().iter().zip(e.iter()) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            match d {
                0 => {}
                1 => factors.push(main.to_string()),
                _ => factors.push(format!("{main}^{d}")),
            }
            let term = if factors.is_empty() {
                v.to_string()
            } else if v.is_one() {
                factors.join("*")
            } else if *v == -Rational::one() {
                format!("-{}", factors.join("*"))
            } else {
                format!("{v}*{}", factors.join("*"))
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

pub(crate) fn accumulate(poly: &mut AuxPoly, e: Exponent, value: Rational) {
    if value.is_zero() {
        return;
    }
    match poly.entry(e) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += value;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// `dst += a * b` with terms above the weight cap discarded.
pub(crate) fn mul_poly_into(
    dst: &mut AuxPoly,
    a: &AuxPoly,
    b: &AuxPoly,
    vars: &VariableTable,
    cap: u32,
) {
    let cap = cap as u64;
    let b_terms: Vec<(&Exponent, &Rational, u64)> =
        b.iter().map(|(e, v)| (e, v, vars.weight_of(e))).collect();
    for (ea, va) in a {
        let wa = vars.weight_of(ea);
        if wa > cap {
            continue;
        }
        for &(eb, vb, wb) in &b_terms {
            if wa + wb > cap {
                continue;
            }
            let e: Exponent = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
            accumulate(dst, e, va * vb);
        }
    }
}

/// Inverse of an auxiliary polynomial with nonzero constant term, modulo the
/// weight cap: `c^{-1} Σ (-u)^k` where `p = c (1 + u)`.
fn invert_aux(p: &AuxPoly, vars: &VariableTable, cap: u32) -> Result<AuxPoly> {
    let zero_e = vars.zero_exponent();
    let c = p.get(&zero_e).cloned().unwrap_or_else(Rational::zero);
    if c.is_zero() {
        return Err(Error::NotInvertible(
            "constant coefficient has no nonzero rational part".into(),
        ));
    }
    let c_inv = c.recip();
    let minus_u: AuxPoly = p
        .iter()
        .filter(|(e, _)| **e != zero_e)
        .map(|(e, v)| (e.clone(), -(v * &c_inv)))
        .collect();
    let mut result = AuxPoly::new();
    result.insert(zero_e.clone(), Rational::one());
    let mut power = result.clone();
    // (-u)^k vanishes once k exceeds the weight cap, since every term of u has weight >= 1
    for _ in 0..cap {
        let mut next = AuxPoly::new();
        mul_poly_into(&mut next, &power, &minus_u, vars, cap);
        if next.is_empty() {
            break;
        }
        for (e, v) in &next {
            accumulate(&mut result, e.clone(), v.clone());
        }
        power = next;
    }
    Ok(result.into_iter().map(|(e, v)| (e, v * &c_inv)).collect())
}
