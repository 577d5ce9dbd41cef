//! Formal algebra generated by symbols `w(a)`, with the tuple elements
//! `w(a_1, ..., a_p)` defined from them, plus the genus-zero correlators.

mod correlator;
mod useries;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{enumerate_compositions, factorial, MultiIndex, Rational};
use crate::fault::FaultPlan;

pub use correlator::{kappa_integral, CorrelatorProvider, CorrelatorSource};
pub use useries::{u_series_identity_check, u_series_report, USeriesReport};

/// Which family of basis elements the keys of an [`OmegaExpression`] denote.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `w(a_1) w(a_2) ...`, key = sorted multiset of labels
    Monomial,
    /// `w(a_1, ..., a_p)`, key = sorted label list
    Tuple,
}

/// Exact linear combination of basis elements keyed by sorted label lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaExpression {
    basis: Basis,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl OmegaExpression {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis element with coefficient 1; `labels` need not be sorted.
    pub fn basis_element(basis: Basis, labels: &[u32]) -> Self {
        let mut out = Self::zero(basis);
        out.add_term(labels.to_vec(), Rational::one());
        out
    }

    /// The unit `1`, i.e. the empty monomial.
    pub fn one() -> Self {
        Self::basis_element(Basis::Monomial, &[])
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, labels: &[u32]) -> Rational {
        let mut key = labels.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mut labels: Vec<u32>, value: Rational) {
        if value.is_zero() {
            return;
        }
        labels.sort_unstable();
        match self.terms.entry(labels) {
            Entry::Vacant(slot) => {
                slot.insert(value);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Rational) {
        assert_eq!(
            self.basis, other.basis,
            "adding expressions in different bases"
        );
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * factor);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(self.basis);
        out.add_scaled(self, factor);
        out
    }

    /// Product in the monomial basis (concatenation of label multisets).
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            self.basis == Basis::Monomial && other.basis == Basis::Monomial,
            "products are taken in the monomial basis"
        );
        let mut out = Self::zero(Basis::Monomial);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.add_term(key, v1 * v2);
            }
        }
        out
    }

    /// Rewrites in the monomial basis.
    pub fn to_monomials(&self) -> Self {
        match self.basis {
            Basis::Monomial => self.clone(),
            Basis::Tuple => {
                let mut out = Self::zero(Basis::Monomial);
                for (k, v) in &self.terms {
                    out.add_scaled(&tuple_to_monomials(k), v);
                }
                out
            }
        }
    }

    /// Rewrites in the tuple basis.
    pub fn to_tuples(&self) -> Self {
        match self.basis {
            Basis::Tuple => self.clone(),
            Basis::Monomial => {
                let mut out = Self::zero(Basis::Tuple);
                for (k, v) in &self.terms {
                    if k.is_empty() {
                        out.add_term(Vec::new(), v.clone());
                    } else {
                        out.add_scaled(&monomials_to_tuples(k), v);
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for OmegaExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (key, v) in &self.terms {
            let body = match self.basis {
                Basis::Monomial if key.is_empty() => String::new(),
                Basis::Monomial => key.iter().map(|a| format!("w({a})")).collect::<String>(),
                Basis::Tuple => format!(
                    "w({})",
                    key.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                ),
            };
            let negative = *v < Rational::zero();
            let mag = if negative { -v.clone() } else { v.clone() };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match (body.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&body)?,
                (false, false) => write!(f, "{mag}*{body}")?,
            }
        }
        Ok(())
    }
}

/// All permutations of `0..p` in lexicographic order.
fn permutations(p: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..p).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..p).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..p)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// `w(a_1, ..., a_p)` as the sum over permutations of products over cycles.
pub fn tuple_to_monomials(a: &[u32]) -> OmegaExpression {
    let p = a.len();
    let mut out = OmegaExpression::zero(Basis::Monomial);
    for sigma in permutations(p) {
        let mut seen = vec![false; p];
        let mut key = Vec::new();
        for start in 0..p {
            if seen[start] {
                continue;
            }
            let mut sum = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                sum += a[j];
                j = sigma[j];
            }
            key.push(sum);
        }
        out.add_term(key, Rational::one());
    }
    out
}

/// Same element computed by peeling off the last argument:
/// `w(a_1..a_p) = w(a_1..a_{p-1}) w(a_p) + Σ_i w(.., a_i + a_p, ..)`.
pub fn tuple_to_monomials_recursive(a: &[u32]) -> OmegaExpression {
    match a.len() {
        0 => OmegaExpression::one(),
        1 => OmegaExpression::basis_element(Basis::Monomial, a),
        p => {
            let head = &a[..p - 1];
            let last = a[p - 1];
            let mut out = tuple_to_monomials_recursive(head)
                .mul(&OmegaExpression::basis_element(Basis::Monomial, &[last]));
            for i in 0..p - 1 {
                let mut merged = head.to_vec();
                merged[i] += last;
                out = out.add(&tuple_to_monomials_recursive(&merged));
            }
            out
        }
    }
}

/// `(-1)^{p-k} / k!`, the weight of an ordered `k`-block partition of `p` items.
pub(crate) fn partition_coefficient(p: usize, k: usize, fault: &FaultPlan) -> Rational {
    let sign = if (p - k).is_multiple_of(2) { 1 } else { -1 };
    let sign = if fault.partition_sign { -sign } else { sign };
    Rational::new(sign.into(), factorial(k as u64))
}

/// Ordered partitions of `{0..p}` into `k` nonempty blocks, as block lists.
pub(crate) fn ordered_set_partitions(p: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let positions = MultiIndex::from_multiplicities(&vec![1; p]);
    enumerate_compositions(&positions, k, false)
        .map(|parts| {
            parts
                .iter()
                .map(|block| block.iter().map(|(pos, _)| pos as usize - 1).collect())
                .collect()
        })
        .collect()
}

/// The monomial `w(a_1) ... w(a_p)` expanded in the tuple basis.
pub fn monomials_to_tuples(a: &[u32]) -> OmegaExpression {
    monomials_to_tuples_with(a, &FaultPlan::default())
}

pub fn monomials_to_tuples_with(a: &[u32], fault: &FaultPlan) -> OmegaExpression {
    let p = a.len();
    let mut out = OmegaExpression::zero(Basis::Tuple);
    for k in 1..=p {
        let coeff = partition_coefficient(p, k, fault);
        for blocks in ordered_set_partitions(p, k) {
            let key = blocks
                .iter()
                .map(|b| b.iter().map(|&j| a[j]).sum())
                .collect();
            out.add_term(key, coeff.clone());
        }
    }
    out
}
