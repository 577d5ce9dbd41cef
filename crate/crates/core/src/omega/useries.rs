use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::{
    ordered_set_partitions, partition_coefficient, tuple_to_monomials, Basis, OmegaExpression,
};
use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::fault::FaultPlan;

/// Polynomial in `t_1..t_p` (exponent vectors as keys) with coefficients in
/// the monomial basis, truncated at degree `T` in each variable.
type OmegaPoly = BTreeMap<Vec<u32>, OmegaExpression>;

/// Outcome of checking both U-series identities for one `(p, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeriesReport {
    pub p: usize,
    pub order: u32,
    pub lemma_holds: bool,
    pub corollary_holds: bool,
    /// First differing coefficient, as `identity: t-exponent => difference`.
    pub first_failure: Option<String>,
}

impl USeriesReport {
    pub fn passed(&self) -> bool {
        self.lemma_holds && self.corollary_holds
    }
}

struct Builder {
    nvars: usize,
    order: u32,
    tuple_cache: HashMap<Vec<u32>, OmegaExpression>,
}

impl Builder {
    fn tuple(&mut self, labels: &[u32]) -> OmegaExpression {
        let mut key = labels.to_vec();
        key.sort_unstable();
        self.tuple_cache
            .entry(key.clone())
            .or_insert_with(|| tuple_to_monomials(&key))
            .clone()
    }

    /// Terms of `(Σ_{j in block} t_j)^a / a!` with each exponent at most `T`.
    fn power_terms(&self, block: &[usize], a: u32) -> Vec<(Vec<u32>, Rational)> {
        let mut out = Vec::new();
        let mut current = vec![0u32; block.len()];
        fn rec(
            pos: usize,
            left: u32,
            order: u32,
            current: &mut Vec<u32>,
            out: &mut Vec<(Vec<u32>, Rational)>,
        ) {
            if pos + 1 == current.len() {
                if left <= order {
                    current[pos] = left;
                    let denom = current.iter().fold(num_bigint::BigInt::one(), |acc, &c| {
                        acc * factorial(c as u64)
                    });
                    out.push((current.clone(), Rational::new(1.into(), denom)));
                }
                return;
            }
            for c in 0..=left.min(order) {
                current[pos] = c;
                rec(pos + 1, left - c, order, current, out);
            }
        }
        rec(0, a, self.order, &mut current, &mut out);
        out.into_iter()
            .map(|(cs, coeff)| {
                let mut e = vec![0u32; self.nvars];
                for (&j, &c) in block.iter().zip(&cs) {
                    e[j] = c;
                }
                (e, coeff)
            })
            .collect()
    }

    /// `U(Σ_{j in B_1} t_j, ..., Σ_{j in B_k} t_j)` truncated at degree `T` per variable.
    fn substituted(&mut self, blocks: &[Vec<usize>]) -> OmegaPoly {
        let mut out = OmegaPoly::new();
        let ranges: Vec<u32> = blocks.iter().map(|b| b.len() as u32 * self.order).collect();
        let mut labels = vec![0u32; blocks.len()];
        loop {
            let omega = self.tuple(&labels);
            let mut partial: Vec<(Vec<u32>, Rational)> =
                vec![(vec![0; self.nvars], Rational::one())];
            for (block, &a) in blocks.iter().zip(&labels) {
                let terms = self.power_terms(block, a);
                let mut next = Vec::with_capacity(partial.len() * terms.len());
                for (e1, c1) in &partial {
                    for (e2, c2) in &terms {
                        let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                        next.push((e, c1 * c2));
                    }
                }
                partial = next;
            }
            for (e, c) in partial {
                out.entry(e)
                    .or_insert_with(|| OmegaExpression::zero(Basis::Monomial))
                    .add_scaled(&omega, &c);
            }
            let mut i = 0;
            loop {
                if i == labels.len() {
                    return prune(out);
                }
                if labels[i] < ranges[i] {
                    labels[i] += 1;
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
        }
    }

    fn mul(&self, a: &OmegaPoly, b: &OmegaPoly) -> OmegaPoly {
        let mut out = OmegaPoly::new();
        for (e1, w1) in a {
            for (e2, w2) in b {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                if e.iter().any(|&x| x > self.order) {
                    continue;
                }
                let prod = w1.mul(w2);
                out.entry(e)
                    .or_insert_with(|| OmegaExpression::zero(Basis::Monomial))
                    .add_scaled(&prod, &Rational::one());
            }
        }
        prune(out)
    }
}

fn prune(poly: OmegaPoly) -> OmegaPoly {
    poly.into_iter().filter(|(_, w)| !w.is_zero()).collect()
}

fn add_into(dst: &mut OmegaPoly, src: &OmegaPoly, factor: &Rational) {
    for (e, w) in src {
        dst.entry(e.clone())
            .or_insert_with(|| OmegaExpression::zero(Basis::Monomial))
            .add_scaled(w, factor);
    }
}

fn first_difference(lhs: &OmegaPoly, rhs: &OmegaPoly) -> Option<String> {
    let mut diff = lhs.clone();
    add_into(&mut diff, rhs, &-Rational::one());
    prune(diff)
        .into_iter()
        .next()
        .map(|(e, w)| format!("t-exponent {e:?} => {w}"))
}

fn singletons(range: std::ops::Range<usize>) -> Vec<Vec<usize>> {
    range.map(|j| vec![j]).collect()
}

/// Checks the self-reproducing identities of the generating series
/// `U(t_1..t_p) = Σ w(a_1..a_p) Π t_i^{a_i}/a_i!` (labels from 0):
/// the peeling rule for the last variable, and the expansion of
/// `U(t_1)...U(t_p)` over ordered set partitions.
pub fn u_series_report(p: usize, order: u32, fault: &FaultPlan) -> Result<USeriesReport> {
    if !(2..=4).contains(&p) || order > 4 {
        return Err(Error::Precondition(format!(
            "U-series check needs 2 <= p <= 4 and T <= 4, got p={p}, T={order}"
        )));
    }
    let mut b = Builder {
        nvars: p,
        order,
        tuple_cache: HashMap::new(),
    };

    let lhs = b.substituted(&singletons(0..p));
    let mut rhs = {
        let head = b.substituted(&singletons(0..p - 1));
        let last = b.substituted(&[vec![p - 1]]);
        b.mul(&head, &last)
    };
    for i in 0..p - 1 {
        let mut blocks = singletons(0..p - 1);
        blocks[i].push(p - 1);
        let merged = b.substituted(&blocks);
        add_into(&mut rhs, &merged, &Rational::one());
    }
    let rhs = prune(rhs);
    let lemma_failure = first_difference(&lhs, &rhs);

    let mut product = b.substituted(&[vec![0]]);
    for j in 1..p {
        let factor = b.substituted(&[vec![j]]);
        product = b.mul(&product, &factor);
    }
    let mut expansion = OmegaPoly::new();
    for k in 1..=p {
        let coeff = partition_coefficient(p, k, fault);
        for blocks in ordered_set_partitions(p, k) {
            let term = b.substituted(&blocks);
            add_into(&mut expansion, &term, &coeff);
        }
    }
    let expansion = prune(expansion);
    let corollary_failure = first_difference(&product, &expansion);

    let first_failure = lemma_failure
        .as_ref()
        .map(|f| format!("peeling rule: {f}"))
        .or_else(|| {
            corollary_failure
                .as_ref()
                .map(|f| format!("partition expansion: {f}"))
        });
    Ok(USeriesReport {
        p,
        order,
        lemma_holds: lemma_failure.is_none(),
        corollary_holds: corollary_failure.is_none(),
        first_failure,
    })
}

/// `true` when both identities hold for `p` variables through degree `order`.
pub fn u_series_identity_check(p: usize, order: u32) -> Result<bool> {
    Ok(u_series_report(p, order, &FaultPlan::default())?.passed())
}
