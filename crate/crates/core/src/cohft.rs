//! Normalized invertible one-dimensional cohomological field theories.
//!
//! A theory of order `N` is described in three interchangeable ways:
//!
//! * potential coefficients `C_3 = 1, C_4, ..., C_N` of `Φ(x) = Σ C_n x^n / n!`;
//! * coefficients `B_0 = 1, B_1, ..., B_{N-3}` of `U(η) = Σ B_n η^n`, where
//!   `x = Σ B_n y^{n+1} / (n+1)!` inverts `y = Φ''(x)`;
//! * canonical coordinates `s_1, ..., s_{N-3}`, the coefficients of `-log U`.
//!
//! The order `N` is always the potential order, so every conversion keeps it
//! fixed. The tensor product multiplies `U` series and adds canonical coordinates.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    factorial, multi_indices_of_weight, parse_rational, rational_string, MultiIndex, Rational,
};
use crate::fault::FaultPlan;
use crate::series::{GradedSeries, VariableTable};
use crate::volumes::{inversion_series, volume_recursive};

/// `C_3, ..., C_N`, stored from `n = 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialCoeffs {
    order: u32,
    c: Vec<Rational>,
}

/// `B_0, ..., B_{N-3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UCoeffs {
    order: u32,
    b: Vec<Rational>,
}

/// `s_1, ..., s_{N-3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCoords {
    order: u32,
    s: Vec<Rational>,
}

fn check_order(order: u32) -> Result<()> {
    if order < 3 {
        return Err(Error::Precondition(format!(
            "CohFT order must be at least 3, got {order}"
        )));
    }
    Ok(())
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Malformed(format!(
            "{what} needs {want} values, got {got}"
        )));
    }
    Ok(())
}

impl PotentialCoeffs {
    /// `values[i]` is `C_{i+3}`; `values[0]` must be 1.
    pub fn new(order: u32, values: Vec<Rational>) -> Result<Self> {
        check_order(order)?;
        check_len("potential coefficients", values.len(), order as usize - 2)?;
        if !values[0].is_one() {
            return Err(Error::Normalization(format!(
                "C_3 = {} instead of 1",
                values[0]
            )));
        }
        Ok(Self { order, c: values })
    }

    /// The unit theory `Φ = x^3/6`.
    pub fn trivial(order: u32) -> Result<Self> {
        check_order(order)?;
        let mut c = vec![Rational::zero(); order as usize - 2];
        c[0] = Rational::one();
        Ok(Self { order, c })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `C_n`, zero outside `3..=N`.
    pub fn get(&self, n: u32) -> Rational {
        n.checked_sub(3)
            .and_then(|i| self.c.get(i as usize))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> &[Rational] {
        &self.c
    }
}

impl UCoeffs {
    /// `values[n]` is `B_n`; `values[0]` must be 1.
    pub fn new(order: u32, values: Vec<Rational>) -> Result<Self> {
        check_order(order)?;
        check_len("U coefficients", values.len(), order as usize - 2)?;
        if !values[0].is_one() {
            return Err(Error::Normalization(format!(
                "B_0 = {} instead of 1",
                values[0]
            )));
        }
        Ok(Self { order, b: values })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, n: u32) -> Rational {
        self.b
            .get(n as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> &[Rational] {
        &self.b
    }

    fn series(&self) -> GradedSeries {
        GradedSeries::from_coefficients(
            Arc::new(VariableTable::empty()),
            self.b.len() - 1,
            0,
            &self.b,
        )
    }

    fn from_series(order: u32, u: &GradedSeries) -> Self {
        let b = (0..=order as usize - 3)
            .map(|n| u.scalar_coefficient(n))
            .collect();
        Self { order, b }
    }
}

impl SCoords {
    /// `values[a-1]` is `s_a`.
    pub fn new(order: u32, values: Vec<Rational>) -> Result<Self> {
        check_order(order)?;
        check_len("canonical coordinates", values.len(), order as usize - 3)?;
        Ok(Self { order, s: values })
    }

    pub fn zero(order: u32) -> Result<Self> {
        Self::new(order, vec![Rational::zero(); order as usize - 3])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, a: u32) -> Rational {
        a.checked_sub(1)
            .and_then(|i| self.s.get(i as usize))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> &[Rational] {
        &self.s
    }

    /// Componentwise sum.
    pub fn add(&self, other: &SCoords) -> Result<SCoords> {
        same_order(self.order, other.order)?;
        let s = self.s.iter().zip(&other.s).map(|(a, b)| a + b).collect();
        Ok(SCoords {
            order: self.order,
            s,
        })
    }
}

fn same_order(a: u32, b: u32) -> Result<()> {
    if a != b {
        return Err(Error::Precondition(format!(
            "theories of different orders {a} and {b}"
        )));
    }
    Ok(())
}

fn univariate(cap: usize, coeffs: &[Rational]) -> GradedSeries {
    GradedSeries::from_coefficients(Arc::new(VariableTable::empty()), cap, 0, coeffs)
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

/// Reverts `y = Φ''(x)` and reads off `U`.
pub fn c_to_b(c: &PotentialCoeffs) -> Result<UCoeffs> {
    let cap = c.order as usize - 2;
    let mut y = vec![Rational::zero(); cap + 1];
    for n in 3..=c.order {
        y[(n - 2) as usize] = c.get(n) / fact(n - 2);
    }
    let x = univariate(cap, &y).revert()?;
    let b = (0..=c.order - 3)
        .map(|n| x.scalar_coefficient(n as usize + 1) * fact(n + 1))
        .collect();
    UCoeffs::new(c.order, b)
}

/// Reverts `x = Σ B_n y^{n+1} / (n+1)!` and reads off the potential.
pub fn b_to_c(b: &UCoeffs) -> Result<PotentialCoeffs> {
    let cap = b.order as usize - 2;
    let mut x = vec![Rational::zero(); cap + 1];
    for n in 0..=b.order - 3 {
        x[n as usize + 1] = b.get(n) / fact(n + 1);
    }
    let y = univariate(cap, &x).revert()?;
    let c = (3..=b.order)
        .map(|n| y.scalar_coefficient(n as usize - 2) * fact(n - 2))
        .collect();
    PotentialCoeffs::new(b.order, c)
}

/// `U = exp(-Σ s_a η^a)`.
pub fn s_to_b(s: &SCoords) -> Result<UCoeffs> {
    let cap = s.order as usize - 3;
    let mut arg = vec![Rational::zero(); cap + 1];
    for a in 1..=cap as u32 {
        arg[a as usize] = -s.get(a);
    }
    let u = univariate(cap, &arg).exp_series()?;
    Ok(UCoeffs::from_series(s.order, &u))
}

/// `s_a = [η^a](-log U)`.
pub fn b_to_s(b: &UCoeffs) -> Result<SCoords> {
    let l = b.series().log_series()?;
    let s = (1..=b.order as usize - 3)
        .map(|a| -l.scalar_coefficient(a))
        .collect();
    SCoords::new(b.order, s)
}

/// The tensor product: `U_{A'⊗A''} = U_{A'} U_{A''}`.
pub fn tensor_product(left: &PotentialCoeffs, right: &PotentialCoeffs) -> Result<PotentialCoeffs> {
    same_order(left.order, right.order)?;
    let u = c_to_b(left)?.series().mul(&c_to_b(right)?.series())?;
    b_to_c(&UCoeffs::from_series(left.order, &u))
}

/// `C_n = (n-3)! Σ_{|m| = n-3} V(m) s^m`, the potential whose third
/// derivative is the volume generating function.
pub fn potential_from_s(s: &SCoords, order: u32) -> Result<PotentialCoeffs> {
    check_order(order)?;
    if s.order < order {
        return Err(Error::Precondition(format!(
            "coordinates of order {} cannot determine a potential of order {order}",
            s.order
        )));
    }
    let mut c = Vec::with_capacity(order as usize - 2);
    for n in 3..=order {
        let w = (n - 3) as u64;
        let mut sum = Rational::zero();
        for m in multi_indices_of_weight(w) {
            let mono = m
                .iter()
                .fold(Rational::one(), |acc, (a, k)| acc * pow(&s.get(a), k));
            if !mono.is_zero() {
                sum += volume_recursive(&m) * mono;
            }
        }
        c.push(sum * fact(n - 3));
    }
    PotentialCoeffs::new(order, c)
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

/// `Σ_{|m| = w} (|m| + ||m||)! / Π ((a+1)!^{m(a)} m(a)!) Π (-z_a)^{m(a)}`,
/// the shape shared by both explicit conversions.
fn explicit_sum(w: u32, z: impl Fn(u32) -> Rational) -> Rational {
    let mut total = Rational::zero();
    for m in multi_indices_of_weight(w as u64) {
        let mut denom = m.multi_factorial();
        let mut term = Rational::one();
        for (a, k) in m.iter() {
            denom *= factorial(a as u64 + 1).pow(k);
            term *= pow(&-z(a), k);
        }
        let num = factorial(m.weight() + m.norm());
        total += term * Rational::new(num, denom);
    }
    total
}

/// `B_n` as an explicit polynomial in `C_4, C_5, ...`.
pub fn explicit_b_from_c(c: &PotentialCoeffs) -> UCoeffs {
    let b = (0..=c.order - 3)
        .map(|n| explicit_sum(n, |a| c.get(a + 3)))
        .collect();
    UCoeffs { order: c.order, b }
}

/// `C_n` as an explicit polynomial in `B_1, B_2, ...`.
pub fn explicit_c_from_b(b: &UCoeffs) -> PotentialCoeffs {
    let c = (3..=b.order)
        .map(|n| explicit_sum(n - 3, |a| b.get(a)))
        .collect();
    PotentialCoeffs { order: b.order, c }
}

/// Applies `∫_0^∞ e^{-y/η} y^k dy = k! η^{k+1}` term by term to the
/// inversion series `x(y; s)`, multiplies by `η^{-2}`, and compares with
/// `exp(-Σ s_a η^a)` through degree and weight `order`. Returns the first
/// differing coefficient, if any.
pub fn laplace_identity_report(order: u32, fault: &FaultPlan) -> Result<Option<String>> {
    if order == 0 {
        return Err(Error::Precondition(
            "the Laplace identity check needs order >= 1".into(),
        ));
    }
    let n = order as usize;
    let x = inversion_series(order);
    let vars = x.vars().clone();
    let mut lhs = GradedSeries::zero(vars.clone(), n, order);
    for (d, e, v) in x.terms() {
        // y^d/.. maps to d! η^{d+1}, then η^{-2}
        lhs.add_term(
            d - 1,
            e.clone(),
            v * Rational::from_integer(factorial(d as u64)),
        );
    }
    let mut arg = GradedSeries::zero(vars.clone(), n, order);
    for a in 1..=n {
        let mut e = vars.zero_exponent();
        e[a - 1] = 1;
        let sign = if a == 3 && fault.laplace_s3_sign {
            1
        } else {
            -1
        };
        arg.add_term(a, e, Rational::from_integer(sign.into()));
    }
    let rhs = arg.exp_series()?;
    let diff = lhs.sub(&rhs)?;
    let first = diff.terms().next().map(|(d, e, v)| {
        let mono = MultiIndex::from_multiplicities(e);
        format!(
            "Laplace transform differs by {v} at eta^{d} s^m with m = ({})",
            mono.to_text()
        )
    });
    Ok(first)
}

pub fn laplace_identity_check(order: u32) -> Result<bool> {
    Ok(laplace_identity_report(order, &FaultPlan::default())?.is_none())
}

/// A theory with `C_n = p/q`, `|p| <= 9`, `1 <= q <= 9` for `n >= 4`.
pub fn random_theory<R: Rng>(order: u32, rng: &mut R) -> Result<PotentialCoeffs> {
    check_order(order)?;
    let mut c = vec![Rational::one()];
    for _ in 4..=order {
        let p: i64 = rng.gen_range(-9..=9);
        let q: i64 = rng.gen_range(1..=9);
        c.push(Rational::new(BigInt::from(p), BigInt::from(q)));
    }
    PotentialCoeffs::new(order, c)
}

/// Which coordinate system a [`CohftJson`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coords {
    C,
    B,
    #[serde(rename = "s")]
    S,
}

impl std::str::FromStr for Coords {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "C" | "c" => Ok(Self::C),
            "B" | "b" => Ok(Self::B),
            "s" | "S" => Ok(Self::S),
            _ => Err(Error::Malformed(format!(
                "unknown coordinate system '{text}'"
            ))),
        }
    }
}

/// `{"order": N, "coords": "C" | "B" | "s", "values": ["1", ...]}` with index
/// origin 3 for `C`, 0 for `B` and 1 for `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohftJson {
    pub order: u32,
    pub coords: Coords,
    pub values: Vec<String>,
}

/// A theory in any of the three coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theory {
    Potential(PotentialCoeffs),
    U(UCoeffs),
    Canonical(SCoords),
}

impl Theory {
    pub fn order(&self) -> u32 {
        match self {
            Self::Potential(c) => c.order,
            Self::U(b) => b.order,
            Self::Canonical(s) => s.order,
        }
    }

    pub fn coords(&self) -> Coords {
        match self {
            Self::Potential(_) => Coords::C,
            Self::U(_) => Coords::B,
            Self::Canonical(_) => Coords::S,
        }
    }

    pub fn to_potential(&self) -> Result<PotentialCoeffs> {
        match self {
            Self::Potential(c) => Ok(c.clone()),
            Self::U(b) => b_to_c(b),
            Self::Canonical(s) => b_to_c(&s_to_b(s)?),
        }
    }

    pub fn to_u(&self) -> Result<UCoeffs> {
        match self {
            Self::Potential(c) => c_to_b(c),
            Self::U(b) => Ok(b.clone()),
            Self::Canonical(s) => s_to_b(s),
        }
    }

    pub fn to_canonical(&self) -> Result<SCoords> {
        match self {
            Self::Canonical(s) => Ok(s.clone()),
            other => b_to_s(&other.to_u()?),
        }
    }

    pub fn convert(&self, coords: Coords) -> Result<Theory> {
        Ok(match coords {
            Coords::C => Self::Potential(self.to_potential()?),
            Coords::B => Self::U(self.to_u()?),
            Coords::S => Self::Canonical(self.to_canonical()?),
        })
    }

    pub fn to_json(&self) -> CohftJson {
        let values = match self {
            Self::Potential(c) => &c.c,
            Self::U(b) => &b.b,
            Self::Canonical(s) => &s.s,
        };
        CohftJson {
            order: self.order(),
            coords: self.coords(),
            values: values.iter().map(rational_string).collect(),
        }
    }

    pub fn from_json(json: &CohftJson) -> Result<Self> {
        let values = json
            .values
            .iter()
            .map(|v| parse_rational(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(match json.coords {
            Coords::C => Self::Potential(PotentialCoeffs::new(json.order, values)?),
            Coords::B => Self::U(UCoeffs::new(json.order, values)?),
            Coords::S => Self::Canonical(SCoords::new(json.order, values)?),
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("CohFT JSON serializes")
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::exact::{int, rat};
    use crate::volumes::zograf_v;

    fn potential(order: u32, tail: &[Rational]) -> PotentialCoeffs {
        let mut c = vec![int(1)];
        c.extend_from_slice(tail);
        c.resize(order as usize - 2, int(0));
        PotentialCoeffs::new(order, c).unwrap()
    }

    /// The tensor law for `C_4 .. C_7`, from an independent symbolic Lagrange inversion.
    fn hand_law(l: &PotentialCoeffs, r: &PotentialCoeffs) -> [Rational; 4] {
        let (a4, a5, a6, a7) = (l.get(4), l.get(5), l.get(6), l.get(7));
        let (b4, b5, b6, b7) = (r.get(4), r.get(5), r.get(6), r.get(7));
        let c4 = &a4 + &b4;
        let c5 = &a5 + int(5) * &a4 * &b4 + &b5;
        let c6 = &a6
            + (int(8) * &a4 * &a4 + int(9) * &a5) * &b4
            + &a4 * (int(8) * &b4 * &b4 + int(9) * &b5)
            + &b6;
        let c7 = &a7
            + (int(35) * &a4 * &a5 + int(14) * &a6) * &b4
            + (int(61) * &a4 * &a4 * &b4 * &b4
                + int(33) * &a4 * &a4 * &b5
                + int(33) * &a5 * &b4 * &b4
                + int(19) * &a5 * &b5)
            + &a4 * (int(35) * &b4 * &b5 + int(14) * &b6)
            + &b7;
        [c4, c5, c6, c7]
    }

    #[test]
    fn trivial_theory_has_trivial_u() {
        let b = c_to_b(&PotentialCoeffs::trivial(7).unwrap()).unwrap();
        assert_eq!(b.values(), &[int(1), int(0), int(0), int(0), int(0)]);
        let c = b_to_c(&b).unwrap();
        assert_eq!(c, PotentialCoeffs::trivial(7).unwrap());
    }

    #[test]
    fn single_c4_gives_b1() {
        let b = c_to_b(&potential(6, &[rat(3, 7)])).unwrap();
        assert_eq!(b.get(1), rat(-3, 7));
    }

    #[test]
    fn normalization_is_enforced() {
        assert!(matches!(
            PotentialCoeffs::new(5, vec![int(2), int(0), int(0)]),
            Err(Error::Normalization(_))
        ));
        assert!(matches!(
            UCoeffs::new(5, vec![int(0), int(0), int(0)]),
            Err(Error::Normalization(_))
        ));
        assert!(PotentialCoeffs::new(5, vec![int(1)]).is_err());
        assert!(PotentialCoeffs::new(2, vec![]).is_err());
    }

    #[test]
    fn s_to_b_low_terms() {
        let s = SCoords::new(6, vec![rat(2, 3), rat(-1, 5), int(4)]).unwrap();
        let b = s_to_b(&s).unwrap();
        assert_eq!(b.get(1), rat(-2, 3));
        assert_eq!(b.get(2), rat(2, 9) + rat(1, 5));
        assert_eq!(
            s_to_b(&SCoords::zero(6).unwrap()).unwrap().values(),
            &[int(1), int(0), int(0), int(0)]
        );
    }

    #[test]
    fn b_to_s_examples() {
        let exp_minus_eta =
            UCoeffs::new(7, vec![int(1), int(-1), rat(1, 2), rat(-1, 6), rat(1, 24)]).unwrap();
        assert_eq!(
            b_to_s(&exp_minus_eta).unwrap().values(),
            &[int(1), int(0), int(0), int(0)]
        );
        let b = UCoeffs::new(5, vec![int(1), int(0), int(-1)]).unwrap();
        assert_eq!(b_to_s(&b).unwrap().values(), &[int(0), int(1)]);
    }

    #[test]
    fn potential_from_s_examples() {
        let zero = potential_from_s(&SCoords::zero(7).unwrap(), 7).unwrap();
        assert_eq!(zero, PotentialCoeffs::trivial(7).unwrap());
        let mut unit = vec![int(0); 7];
        unit[0] = int(1);
        let c = potential_from_s(&SCoords::new(10, unit).unwrap(), 10).unwrap();
        for n in 3..=10 {
            assert_eq!(c.get(n), zograf_v(n).unwrap() / fact(n - 3), "n={n}");
        }
        let s = SCoords::new(5, vec![rat(1, 3), rat(2, 7)]).unwrap();
        assert_eq!(
            potential_from_s(&s, 5).unwrap().get(5),
            rat(5, 2) * rat(1, 9) + rat(2, 7)
        );
    }

    #[test]
    fn volume_specialization_through_all_coordinates() {
        let mut unit = vec![int(0); 6];
        unit[0] = int(1);
        let s = SCoords::new(9, unit).unwrap();
        let c = potential_from_s(&s, 9).unwrap();
        assert_eq!(c_to_b(&c).unwrap(), s_to_b(&s).unwrap());
        assert_eq!(b_to_c(&s_to_b(&s).unwrap()).unwrap(), c);
    }

    #[test]
    fn printed_tensor_law_on_seeded_theories() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let l = random_theory(7, &mut rng).unwrap();
            let r = random_theory(7, &mut rng).unwrap();
            let t = tensor_product(&l, &r).unwrap();
            let law = hand_law(&l, &r);
            for (i, want) in law.iter().enumerate() {
                assert_eq!(&t.get(i as u32 + 4), want, "C_{}", i + 4);
            }
        }
    }

    #[test]
    fn explicit_sums_match_reversion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for order in 3..=8 {
            let c = random_theory(order, &mut rng).unwrap();
            let b = c_to_b(&c).unwrap();
            assert_eq!(explicit_b_from_c(&c), b, "order {order}");
            assert_eq!(explicit_c_from_b(&b), c, "order {order}");
        }
    }

    #[test]
    fn laplace_identity() {
        assert!(laplace_identity_check(4).unwrap());
        assert!(laplace_identity_check(10).unwrap());
        let bad = laplace_identity_report(
            4,
            &FaultPlan {
                laplace_s3_sign: true,
                ..FaultPlan::default()
            },
        )
        .unwrap();
        assert!(bad.unwrap().ends_with("m = (0,0,1)"));
        assert!(laplace_identity_check(0).is_err());
    }

    #[test]
    fn json_roundtrip_and_conversion() {
        let t = Theory::Potential(potential(6, &[rat(1, 2), int(-3), rat(5, 7)]));
        let text = t.to_json_string();
        assert!(text.contains("\"coords\": \"C\""));
        assert_eq!(Theory::from_json_str(&text).unwrap(), t);
        let s = t.convert(Coords::S).unwrap();
        assert_eq!(s.to_json().values.len(), 3);
        assert_eq!(s.convert(Coords::C).unwrap(), t);
        assert!(Theory::from_json_str(
            "{\"order\":5,\"coords\":\"C\",\"values\":[\"2\",\"0\",\"0\"]}"
        )
        .is_err());
        assert!(Theory::from_json_str("{\"order\":5,\"coords\":\"Q\",\"values\":[]}").is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=12).prop_map(|(p, q)| rat(p, q))
    }

    fn arb_theory(order: u32) -> impl Strategy<Value = PotentialCoeffs> {
        proptest::collection::vec(arb_rational(), order as usize - 3)
            .prop_map(move |tail| potential(order, &tail))
    }

    fn arb_s(order: u32) -> impl Strategy<Value = SCoords> {
        proptest::collection::vec(arb_rational(), order as usize - 3)
            .prop_map(move |s| SCoords::new(order, s).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tensor_is_commutative_associative_with_unit(a in arb_theory(8), b in arb_theory(8), c in arb_theory(8)) {
            let ab = tensor_product(&a, &b).unwrap();
            prop_assert_eq!(&ab, &tensor_product(&b, &a).unwrap());
            prop_assert_eq!(
                tensor_product(&ab, &c).unwrap(),
                tensor_product(&a, &tensor_product(&b, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(tensor_product(&a, &PotentialCoeffs::trivial(8).unwrap()).unwrap(), a);
        }

        #[test]
        fn coordinates_add_under_tensor(s1 in arb_s(8), s2 in arb_s(8)) {
            let a = potential_from_s(&s1, 8).unwrap();
            let b = potential_from_s(&s2, 8).unwrap();
            let s = b_to_s(&c_to_b(&tensor_product(&a, &b).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(s, s1.add(&s2).unwrap());
        }

        #[test]
        fn coordinate_triangle_commutes(s in arb_s(8), c in arb_theory(8)) {
            prop_assert_eq!(&b_to_s(&s_to_b(&s).unwrap()).unwrap(), &s);
            let b = c_to_b(&c).unwrap();
            prop_assert_eq!(b_to_c(&b).unwrap(), c);
            prop_assert_eq!(c_to_b(&b_to_c(&b).unwrap()).unwrap(), b.clone());
            prop_assert_eq!(s_to_b(&b_to_s(&b).unwrap()).unwrap(), b);
            let from_s = potential_from_s(&s, 8).unwrap();
            prop_assert_eq!(b_to_s(&c_to_b(&from_s).unwrap()).unwrap(), s);
        }
    }
}
