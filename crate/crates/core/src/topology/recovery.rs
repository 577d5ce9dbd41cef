use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::betti;
use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

/// A polynomial in `x` and `u`, keyed by `(x exponent, u exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APolynomial {
    pub coeffs: BTreeMap<(u32, u32), Rational>,
}

impl APolynomial {
    pub fn coefficient(&self, x_exp: u32, u_exp: u32) -> Rational {
        self.coeffs
            .get(&(x_exp, u_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `p(n)` with `B(n) = Σ_k p_k(n) k^n`: the part multiplying `u^k`, with
    /// `x^i e^{kx}` contributing `n(n-1)...(n-i+1) k^{-i}`. Returns the degree
    /// and leading coefficient of `p_k` in `n`.
    pub fn exponential_part_leading(&self, k: u32) -> Option<(u32, Rational)> {
        let (&(i, _), c) = self
            .coeffs
            .iter()
            .filter(|((_, u), _)| *u == k)
            .max_by_key(|((i, _), _)| *i)?;
        Some((i, c / Rational::from_integer(BigInt::from(k).pow(i))))
    }
}

impl fmt::Display for APolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut by_u: BTreeMap<u32, Vec<(u32, &Rational)>> = BTreeMap::new();
        for ((i, k), c) in &self.coeffs {
            by_u.entry(*k).or_default().push((*i, c));
        }
        let mut first = true;
        for (k, parts) in by_u.iter().rev() {
            let inner: Vec<String> = parts
                .iter()
                .map(|(i, c)| match i {
                    0 => format!("{c}"),
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                })
                .collect();
            let u = match k {
                0 => String::new(),
                1 => "*u".to_string(),
                _ => format!("*u^{k}"),
            };
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}){u}", inner.join(" + "))?;
        }
        Ok(())
    }
}

/// The recovered polynomial together with the size of the system it solves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ARecovery {
    pub j: u32,
    pub polynomial: APolynomial,
    pub unknowns: usize,
    pub equations: usize,
}

/// Solves `Σ_{n>=1} B_j(n) x^n / n! = A_j(x, e^x)` coefficientwise through
/// `x^{n_max}` for `A_j` of weighted degree `<= j + 2` (`x` weight 1, `u`
/// weight 2), with `u | A_j` for `j >= 1`.
pub fn recover_a_polynomials(j: u32, n_max: u32) -> Result<ARecovery> {
    if j % 2 == 1 || j > 4 {
        return Err(Error::Precondition(format!(
            "A_j is recovered for j in {{0, 2, 4}}, got {j}"
        )));
    }
    if n_max < j + 8 {
        return Err(Error::Precondition(format!(
            "n_max must be at least j + 8 = {}, got {n_max}",
            j + 8
        )));
    }
    let min_u = if j == 0 { 0 } else { 1 };
    let mut unknowns = Vec::new();
    for k in min_u..=(j + 2) / 2 {
        for i in 0..=(j + 2 - 2 * k) {
            unknowns.push((i, k));
        }
    }
    // [x^d] x^i e^{kx} = k^{d-i} / (d-i)!
    let mut rows = Vec::new();
    for d in 0..=n_max {
        let row: Vec<Rational> = unknowns
            .iter()
            .map(|&(i, k)| {
                if d < i {
                    Rational::zero()
                } else {
                    Rational::new(BigInt::from(k).pow(d - i), factorial((d - i) as u64))
                }
            })
            .collect();
        let rhs = if d == 0 {
            Rational::zero()
        } else {
            Rational::new(betti(j, d)?, factorial(d as u64))
        };
        rows.push((row, rhs));
    }
    let equations = rows.len();
    let solution = solve_exact(rows, unknowns.len())?;
    let coeffs = unknowns
        .iter()
        .zip(solution)
        .filter(|(_, c)| !c.is_zero())
        .map(|(key, c)| (*key, c))
        .collect();
    Ok(ARecovery {
        j,
        polynomial: APolynomial { coeffs },
        unknowns: unknowns.len(),
        equations,
    })
}

/// Row reduction over the rationals; the system must have full column rank
/// and every leftover equation must reduce to `0 = 0`.
fn solve_exact(mut rows: Vec<(Vec<Rational>, Rational)>, cols: usize) -> Result<Vec<Rational>> {
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            return Err(Error::LinearSystem(format!(
                "underdetermined: no pivot for unknown {col}"
            )));
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row].0[col].recip();
        let (row, rhs) = &mut rows[pivot_row];
        row.iter_mut().for_each(|v| *v *= &inv);
        *rhs *= &inv;
        let (pivot, pivot_rhs) = rows[pivot_row].clone();
        for (r, (row, rhs)) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &factor * pv;
            }
            *rhs -= &factor * &pivot_rhs;
        }
        pivot_row += 1;
    }
    if let Some((_, rhs)) = rows[cols..].iter().find(|(_, rhs)| !rhs.is_zero()) {
        return Err(Error::LinearSystem(format!(
            "inconsistent: leftover equation 0 = {rhs}"
        )));
    }
    Ok(rows[..cols].iter().map(|(_, rhs)| rhs.clone()).collect())
}

/// `(-1)^l / (2^l l!) (j-l+1)^{j-2l-1} / (j-l)!`, the predicted leading
/// coefficient of `p_{j,l}(n)` (degree `2l`) in `B_{2j}(n) = Σ_l p_{j,l}(n) (j+1-l)^n`.
pub fn leading_coefficient_law(j: u32, l: u32) -> Rational {
    let sign = if l.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let base = BigInt::from(j - l + 1);
    let exp = j as i64 - 2 * l as i64 - 1;
    let power = if exp >= 0 {
        Rational::from_integer(base.pow(exp as u32))
    } else {
        Rational::new(BigInt::one(), base.pow((-exp) as u32))
    };
    let denom = BigInt::from(2u32).pow(l) * factorial(l as u64) * factorial((j - l) as u64);
    Rational::new(sign, denom) * power
}

/// Compares every `p_{j,l}` read off a recovered `A_{2j}` with
/// [`leading_coefficient_law`], returning the first mismatch.
pub fn check_leading_coefficients(recovery: &ARecovery) -> Option<String> {
    let j = recovery.j / 2;
    for l in 0..=j {
        let k = j + 1 - l;
        let want = leading_coefficient_law(j, l);
        match recovery.polynomial.exponential_part_leading(k) {
            Some((deg, c)) if deg == 2 * l && c == want => {}
            got => {
                let got = got
                    .map(|(d, c)| format!("degree {d}, leading {c}"))
                    .unwrap_or_else(|| "absent".into());
                return Some(format!(
                    "p_{{{j},{l}}}: expected degree {}, leading {want}; got {got}",
                    2 * l
                ));
            }
        }
    }
    None
}

impl ARecovery {
    pub fn leading_coefficients_hold(&self) -> bool {
        check_leading_coefficients(self).is_none()
    }
}
