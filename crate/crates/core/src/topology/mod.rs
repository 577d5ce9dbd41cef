//! Betti numbers of the genus-zero moduli spaces `M̄_{0,n+1}` via their
//! Poincaré polynomials `P_n(q)`, and the generating-function identities
//! they satisfy.

mod identities;
mod recovery;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, Rational};

pub use identities::{
    betti_series, euler_identity_check, implicit_equation_check, implicit_equation_report,
};
pub use recovery::{
    check_leading_coefficients, leading_coefficient_law, recover_a_polynomials, APolynomial,
    ARecovery,
};

/// A polynomial with integer coefficients in one named variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    var: String,
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPolynomial {
    pub fn zero(var: &str) -> Self {
        Self {
            var: var.to_string(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(var: &str) -> Self {
        Self::monomial(var, 0, BigInt::one())
    }

    pub fn monomial(var: &str, exponent: u32, coeff: BigInt) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exponent, coeff);
        p
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coefficient(&self, exponent: u32) -> BigInt {
        self.coeffs
            .get(&exponent)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exponent: u32, coeff: BigInt) {
        let slot = self.coeffs.entry(exponent).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut out = Self::zero(&self.var);
        for (e, c) in self.terms() {
            out.add_term(e, c * factor);
        }
        out
    }

    pub fn shift(&self, by: u32) -> Self {
        Self {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + by, c.clone()))
                .collect(),
        }
    }

    /// Value at 1, the sum of the coefficients.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Dense coefficient list from exponent 0 through the degree.
    pub fn dense(&self) -> Vec<BigInt> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coefficient(e)).collect(),
        }
    }

    /// True when `c_k = c_{d-k}` for the degree `d`.
    pub fn is_palindromic(&self) -> bool {
        let dense = self.dense();
        dense.iter().eq(dense.iter().rev())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(&self.var)?,
                (_, false) => write!(f, "{mag}{}", self.var)?,
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn poincare_cache() -> &'static Mutex<Vec<IntPolynomial>> {
    static CACHE: OnceLock<Mutex<Vec<IntPolynomial>>> = OnceLock::new();
    // index i holds P_{i+1}
    CACHE.get_or_init(|| Mutex::new(vec![IntPolynomial::one("q")]))
}

/// `P_n(q)`, the Poincaré polynomial of `M̄_{0,n+1}`, from
/// `P_1 = 1`, `P_{n+1} = P_n + q^2 Σ_{m=2}^{n} C(n,m) P_m P_{n+1-m}`.
pub fn poincare(n: u32) -> Result<IntPolynomial> {
    if n < 1 {
        return Err(Error::Precondition(
            "Poincare polynomials start at n = 1".into(),
        ));
    }
    let mut cache = poincare_cache().lock().expect("poincare cache poisoned");
    while cache.len() < n as usize {
        let n = cache.len() as u32;
        let mut sum = IntPolynomial::zero("q");
        for m in 2..=n {
            let prod = cache[(m - 1) as usize].mul(&cache[(n - m) as usize]);
            sum = sum.add(&prod.scale(&binomial(n as u64, m as u64)));
        }
        let next = cache[(n - 1) as usize].add(&sum.shift(2));
        cache.push(next);
    }
    Ok(cache[(n - 1) as usize].clone())
}

/// `B_j(n) = dim H^j(M̄_{0,n+1})`; zero for out-of-range `j`.
pub fn betti(j: u32, n: u32) -> Result<BigInt> {
    Ok(poincare(n)?.coefficient(j))
}

/// Closed forms
/// `B_2(n) = 2^n - (n^2+n+2)/2` and
/// `B_4(n) = (3/2) 3^n - (n^2+5n+8) 2^n / 4 + (3n^4+2n^3+21n^2+22n+12)/24`.
pub fn betti_closed(j: u32, n: u32) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::Precondition("Betti numbers start at n = 1".into()));
    }
    let n_big = BigInt::from(n);
    let p2 = |k: u32| Rational::from_integer(BigInt::from(k).pow(n));
    let r = |v: BigInt| Rational::from_integer(v);
    let value = match j {
        2 => p2(2) - Rational::new(&n_big * &n_big + &n_big + 2, BigInt::from(2)),
        4 => {
            let n2 = &n_big * &n_big;
            let n3 = &n2 * &n_big;
            let n4 = &n3 * &n_big;
            Rational::new(BigInt::from(3), BigInt::from(2)) * p2(3)
                - r(&n2 + 5 * &n_big + 8) * p2(2) / r(BigInt::from(4))
                + Rational::new(
                    3 * n4 + 2 * n3 + 21 * n2 + 22 * &n_big + 12,
                    BigInt::from(24),
                )
        }
        _ => {
            return Err(Error::Precondition(format!(
                "closed Betti forms exist for j = 2, 4 only, got {j}"
            )))
        }
    };
    if !value.is_integer() {
        return Err(Error::NonIntegral {
            m: format!("B_{j}({n})"),
            value: value.to_string(),
        });
    }
    Ok(value.to_integer())
}

/// `χ(M̄_{0,n+1}) = P_n(1)`.
pub fn euler_characteristic(n: u32) -> Result<BigInt> {
    Ok(poincare(n)?.value_at_one())
}

/// The `n` in `1..=n_max` whose `P_n` is not palindromic. Expected empty.
pub fn non_palindromic(n_max: u32) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if !poincare(n)?.is_palindromic() {
            out.push(n);
        }
    }
    Ok(out)
}

/// The `n` in `1..=n_max` whose `P_n` has a nonzero odd coefficient.
pub fn odd_coefficients(n_max: u32) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if poincare(n)?.terms().any(|(e, _)| e % 2 == 1) {
            out.push(n);
        }
    }
    Ok(out)
}

/// CSV `n,coefficients,euler` for `1 <= n <= n_max`; the coefficient list is
/// the dense list of `P_n` separated by spaces.
pub fn betti_csv(n_max: u32) -> Result<String> {
    let mut out = String::from("n,coefficients,euler\n");
    for n in 1..=n_max {
        let p = poincare(n)?;
        let coeffs: Vec<String> = p.dense().iter().map(BigInt::to_string).collect();
        out.push_str(&format!("{n},{},{}\n", coeffs.join(" "), p.value_at_one()));
    }
    Ok(out)
}
