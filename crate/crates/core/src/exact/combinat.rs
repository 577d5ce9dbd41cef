use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Factorials below this bound are served from a table built once.
pub const FACTORIAL_CACHE_BOUND: u64 = 512;

fn factorial_table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(FACTORIAL_CACHE_BOUND as usize);
        table.push(BigInt::one());
        for n in 1..FACTORIAL_CACHE_BOUND {
            let next = &table[n as usize - 1] * BigInt::from(n);
            table.push(next);
        }
        table
    })
}

pub fn factorial(n: u64) -> BigInt {
    let table = factorial_table();
    if n < FACTORIAL_CACHE_BOUND {
        return table[n as usize].clone();
    }
    let mut acc = table[table.len() - 1].clone();
    for k in FACTORIAL_CACHE_BOUND..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n! / Π parts_i!`; the parts must sum to `n`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigInt> {
    let sum: u64 = parts.iter().sum();
    if sum != n {
        return Err(Error::MultinomialMismatch { n, sum });
    }
    let mut acc = BigInt::one();
    let mut running = 0;
    for &p in parts {
        running += p;
        acc *= binomial(running, p);
    }
    Ok(acc)
}

/// `K(n_1, ..., n_a) = 1 / (n_1 (n_1+n_2) ... (n_1+...+n_a))`.
pub fn kernel_k(args: &[u64]) -> Result<Rational> {
    if args.is_empty() {
        return Err(Error::EmptyKernel);
    }
    let mut denom = BigInt::one();
    let mut partial = 0u64;
    for &n in args {
        if n == 0 {
            return Err(Error::NonPositiveKernelArgument(n));
        }
        partial += n;
        denom *= BigInt::from(partial);
    }
    Ok(Rational::new(BigInt::one(), denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_k(&[2]).unwrap(), rat(1, 2));
        assert_eq!(kernel_k(&[2, 1]).unwrap(), rat(1, 6));
        // direct product 1/(2*3*4)
        assert_eq!(kernel_k(&[2, 1, 1]).unwrap(), rat(1, 2 * 3 * 4));
        assert!(matches!(kernel_k(&[]), Err(Error::EmptyKernel)));
    }

    #[test]
    fn kernel_telescopes() {
        // K(n_1..n_a) * (n_1+...+n_a) = K(n_1..n_{a-1})
        let seqs: [&[u64]; 4] = [&[2, 1], &[3, 1, 4], &[2, 5, 1, 1], &[7, 2, 2, 9, 1]];
        for seq in seqs {
            let total: u64 = seq.iter().sum();
            let lhs = kernel_k(seq).unwrap() * Rational::from_integer(total.into());
            assert_eq!(lhs, kernel_k(&seq[..seq.len() - 1]).unwrap());
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(0, &[]).unwrap(), BigInt::from(1));
        // 6!/(2!3!1!) = 720/12
        let oracle = factorial(6) / (factorial(2) * factorial(3) * factorial(1));
        assert_eq!(multinomial(6, &[2, 3, 1]).unwrap(), oracle);
        assert_eq!(oracle, BigInt::from(60));
        assert!(multinomial(5, &[2, 2]).is_err());
    }

    #[test]
    fn factorial_beyond_cache() {
        let f = factorial(FACTORIAL_CACHE_BOUND + 3);
        let g = factorial(FACTORIAL_CACHE_BOUND - 1);
        let ratio = (FACTORIAL_CACHE_BOUND..=FACTORIAL_CACHE_BOUND + 3)
            .fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        assert_eq!(f, g * ratio);
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 10), BigInt::from(0));
    }
}
