//! Genus-zero higher Weil-Petersson volumes `V(m)` by three independent
//! algorithms, Zograf's numbers, and the generating function `F(x; s)`.

mod pde;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    binomial, enumerate_compositions, factorial, kernel_k, multi_indices_up_to_weight,
    parse_rational, MultiIndex, Rational,
};
use crate::omega::{kappa_integral, CorrelatorProvider};
use crate::series::{GradedSeries, VariableTable};

pub use pde::{
    check_bessel_specialization, check_bessel_specialization_with, check_pde, check_pde_with,
    generating_f, generating_series, PdeReport, Residual,
};

/// Algorithm used to evaluate `V(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VolumeMethod {
    Recursive,
    Closed,
    Inversion,
    All,
}

impl VolumeMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Recursive => "recursive",
            Self::Closed => "closed",
            Self::Inversion => "inversion",
            Self::All => "all",
        }
    }
}

impl fmt::Display for VolumeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VolumeMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursive" => Ok(Self::Recursive),
            "closed" => Ok(Self::Closed),
            "inversion" => Ok(Self::Inversion),
            "all" => Ok(Self::All),
            _ => Err(Error::Malformed(format!("unknown method '{s}'"))),
        }
    }
}

/// A request for one volume.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeQuery {
    pub m: MultiIndex,
    pub genus: u32,
    pub method: VolumeMethod,
}

fn zograf_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    // index i holds v_{i+3}
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Zograf's number `v_n`, the volume of the genus-zero moduli space with `n` points.
pub fn zograf_v(n: u32) -> Result<Rational> {
    if n < 3 {
        return Err(Error::Precondition(format!("v_n needs n >= 3, got {n}")));
    }
    let mut cache = zograf_cache().lock().expect("zograf cache poisoned");
    while cache.len() <= (n - 3) as usize {
        let n = cache.len() as u64 + 3;
        let mut sum = Rational::zero();
        for i in 1..=n - 3 {
            let c = BigInt::from(i * (n - i - 2)) * binomial(n - 4, i - 1) * binomial(n, i + 1);
            sum += Rational::new(c, BigInt::from(n - 1))
                * &cache[(i - 1) as usize]
                * &cache[(n - i - 3) as usize];
        }
        cache.push(sum / Rational::from_integer(2.into()));
    }
    Ok(cache[(n - 3) as usize].clone())
}

fn volume_cache() -> &'static RwLock<HashMap<MultiIndex, Rational>> {
    static CACHE: OnceLock<RwLock<HashMap<MultiIndex, Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `V(m)` by the recursion that removes one copy of the smallest index present.
pub fn volume_recursive(m: &MultiIndex) -> Rational {
    if m.is_zero() {
        return Rational::one();
    }
    if let Some(v) = volume_cache().read().expect("volume cache poisoned").get(m) {
        return v.clone();
    }
    let a = m.min_index().expect("nonzero multi-index has an index");
    let value = recursion_step(m, a);
    volume_cache()
        .write()
        .expect("volume cache poisoned")
        .insert(m.clone(), value.clone());
    value
}

/// `V(m)` with the outermost recursion step taken at index `a` instead of
/// the smallest one.
pub fn volume_recursive_with_pivot(m: &MultiIndex, a: u32) -> Result<Rational> {
    if m.get(a) == 0 {
        return Err(Error::Precondition(format!(
            "pivot {a} is absent from m = {m}"
        )));
    }
    Ok(recursion_step(m, a))
}

fn recursion_step(m: &MultiIndex, a: u32) -> Rational {
    let rest = m.minus_delta(a).expect("pivot present");
    let prefactor = Rational::new(
        BigInt::from(rest.weight() + a as u64 + 1),
        BigInt::from(m.get(a)),
    );
    let mut sum = Rational::zero();
    for parts in enumerate_compositions(&rest, a as usize + 1, true) {
        let mut args: Vec<u64> = parts[..a as usize].iter().map(|p| p.weight() + 1).collect();
        args[0] += 1;
        let mut term = kernel_k(&args).expect("kernel arguments are positive");
        for p in &parts {
            term *= volume_recursive(p);
        }
        sum += term;
    }
    prefactor * sum
}

/// Memoized volumes as text map `m -> value`, for persistence between runs.
pub fn export_volume_cache() -> BTreeMap<String, String> {
    volume_cache()
        .read()
        .expect("volume cache poisoned")
        .iter()
        .map(|(m, v)| (m.to_text(), v.to_string()))
        .collect()
}

/// Loads values produced by [`export_volume_cache`].
pub fn import_volume_cache(entries: &BTreeMap<String, String>) -> Result<usize> {
    let parsed = entries
        .iter()
        .map(|(m, v)| Ok((m.parse::<MultiIndex>()?, parse_rational(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut cache = volume_cache().write().expect("volume cache poisoned");
    let count = parsed.len();
    cache.extend(parsed.into_iter().filter(|(m, _)| !m.is_zero()));
    Ok(count)
}

/// `V_g(m)` from correlators, summing over ordered decompositions of `m`
/// into nonzero parts with alternating weights.
pub fn volume_closed(
    m: &MultiIndex,
    provider: &CorrelatorProvider,
    genus: u32,
) -> Result<Rational> {
    let weight = m.weight() as i64;
    let n = weight + 3 - 3 * genus as i64;
    if n < 0 || 2 * genus as i64 - 2 + n <= 0 {
        return Err(Error::Unstable { genus, n });
    }
    let n = n as u32;
    if m.is_zero() {
        return provider.correlator(genus, &vec![0; n as usize]);
    }
    let p = m.norm() as usize;
    let mut total = Rational::zero();
    for k in 1..=p {
        let sign = if (p - k).is_multiple_of(2) { 1 } else { -1 };
        let outer = Rational::new(sign.into(), factorial(k as u64));
        let mut inner = Rational::zero();
        for parts in enumerate_compositions(m, k, false) {
            let b: Vec<u32> = parts.iter().map(|q| q.weight() as u32).collect();
            let denom = parts
                .iter()
                .fold(BigInt::one(), |acc, q| acc * q.multi_factorial());
            inner += kappa_integral(n, &b, provider, genus)? / Rational::from_integer(denom);
        }
        total += outer * inner;
    }
    Ok(total / Rational::from_integer(factorial(weight as u64)))
}

/// `x(y; s) = Σ_{|m| <= N} (-1)^{||m||} y^{|m|+1} s^m / ((|m|+1)! m!)`.
pub fn inversion_series(order: u32) -> GradedSeries {
    let vars = Arc::new(VariableTable::s_variables(order as usize));
    let mut terms = Vec::new();
    for m in multi_indices_up_to_weight(order as u64) {
        let w = m.weight();
        let sign = if m.norm() % 2 == 0 { 1 } else { -1 };
        let value = Rational::new(sign.into(), factorial(w + 1) * m.multi_factorial());
        terms.push((w as usize + 1, m.to_dense(order as usize), value));
    }
    GradedSeries::from_terms(vars, order as usize + 1, order, terms)
        .expect("exponents match the table")
}

/// All `V(m)` with `|m| <= order`, read off the reverted inversion series.
pub fn volumes_via_inversion(order: u32) -> Result<BTreeMap<MultiIndex, Rational>> {
    let y = inversion_series(order).revert()?;
    let mut out = BTreeMap::new();
    for m in multi_indices_up_to_weight(order as u64) {
        let d = m.weight() as usize + 1;
        let c = y.coefficient(d, &m.to_dense(order as usize));
        out.insert(m, c * Rational::from_integer(BigInt::from(d)));
    }
    Ok(out)
}

/// `V(m) |m|! m!`, the integral of the monomial in the classes `w(a)`.
pub fn intersection_integral(m: &MultiIndex) -> Result<BigInt> {
    let v = volume_recursive(m);
    let scaled = v.clone() * Rational::from_integer(factorial(m.weight()) * m.multi_factorial());
    if !scaled.is_integer() || scaled.is_negative() {
        return Err(Error::NonIntegral {
            m: m.to_text(),
            value: scaled.to_string(),
        });
    }
    Ok(scaled.to_integer())
}

/// Evaluates a query. With [`VolumeMethod::All`] the three genus-zero values
/// are returned in the order recursive, closed, inversion.
pub fn evaluate(
    query: &VolumeQuery,
    provider: &CorrelatorProvider,
) -> Result<Vec<(VolumeMethod, Rational)>> {
    if query.genus > 0 && query.method != VolumeMethod::Closed {
        return Err(Error::Precondition(
            "genus > 0 volumes need the closed method".into(),
        ));
    }
    let inversion = |m: &MultiIndex| -> Result<Rational> {
        let table = volumes_via_inversion(m.weight() as u32)?;
        Ok(table[m].clone())
    };
    Ok(match query.method {
        VolumeMethod::Recursive => vec![(VolumeMethod::Recursive, volume_recursive(&query.m))],
        VolumeMethod::Closed => vec![(
            VolumeMethod::Closed,
            volume_closed(&query.m, provider, query.genus)?,
        )],
        VolumeMethod::Inversion => vec![(VolumeMethod::Inversion, inversion(&query.m)?)],
        VolumeMethod::All => vec![
            (VolumeMethod::Recursive, volume_recursive(&query.m)),
            (VolumeMethod::Closed, volume_closed(&query.m, provider, 0)?),
            (VolumeMethod::Inversion, inversion(&query.m)?),
        ],
    })
}

/// CSV table of every `V(m)` with `|m| <= max_weight`:
/// `m,weight,norm,value,integral`.
pub fn volume_table_csv(max_weight: u32) -> Result<String> {
    let mut out = String::from("m,weight,norm,value,integral\n");
    for m in multi_indices_up_to_weight(max_weight as u64) {
        let v = volume_recursive(&m);
        let integral = intersection_integral(&m)?;
        out.push_str(&format!(
            "\"{}\",{},{},{},{}\n",
            m.to_text(),
            m.weight(),
            m.norm(),
            v,
            integral
        ));
    }
    Ok(out)
}
