//! Floating-point checks of the growth of Zograf's numbers, Euler
//! characteristics and Betti numbers. Exact values are computed upstream and
//! converted to `f64` only in the final ratio.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::topology::{betti, euler_characteristic};
use crate::volumes::zograf_v;

/// Leading constant of `v_{n+3} C^n / (2n)!`.
pub const WP_LIMIT: f64 = 1.3620537;

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational converts to f64")
}

/// `J_nu(x)` for `nu` in `{0, 1}` and `|x| <= 50` from the ascending series.
/// Beyond `|x| = 4` the terms are summed exactly to avoid cancellation.
pub fn bessel_j(nu: u32, x: f64) -> Result<f64> {
    if nu > 1 {
        return Err(Error::Range(format!("Bessel order {nu} is not 0 or 1")));
    }
    if !x.is_finite() || x.abs() > 50.0 {
        return Err(Error::Range(format!(
            "Bessel argument {x} outside [-50, 50]"
        )));
    }
    if x.abs() <= 4.0 {
        let h = x / 2.0;
        let mut term = if nu == 0 { 1.0 } else { h };
        let mut sum = term;
        for k in 1..200u32 {
            term *= -h * h / (k as f64 * (k + nu) as f64);
            sum += term;
            if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        return Ok(sum);
    }
    let h = Rational::from_float(x).expect("finite") / Rational::from_integer(2.into());
    let h2 = &h * &h;
    let mut term = if nu == 0 { Rational::one() } else { h.clone() };
    let mut sum = term.clone();
    let mut k = 1u32;
    loop {
        term = -term * &h2 / Rational::from_integer(BigInt::from(k) * BigInt::from(k + nu));
        sum += &term;
        if k as f64 > x.abs() && to_f64(&term).abs() < 1e-30 {
            break;
        }
        k += 1;
    }
    Ok(to_f64(&sum))
}

fn j0(x: f64) -> f64 {
    bessel_j(0, x).expect("argument in range")
}

fn j1(x: f64) -> f64 {
    bessel_j(1, x).expect("argument in range")
}

/// Newton iteration for a zero of `J_0` (using `J_0' = -J_1`).
pub fn newton_gamma0_from(start: f64) -> f64 {
    let mut x = start;
    for _ in 0..100 {
        let step = j0(x) / j1(x);
        x += step;
        if step.abs() < 1e-16 * x.abs() {
            break;
        }
    }
    x
}

/// Bisection on `[2, 3]` for the first zero of `J_0`.
pub fn find_gamma0_bisection() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The smallest positive zero `γ_0` of `J_0`: bisection on `[2, 3]` down to a
/// bracket of width `1e-3`, then Newton.
pub fn find_gamma0() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    newton_gamma0_from(0.5 * (lo + hi))
}

/// `C = 2 γ_0 J_1(γ_0)`.
pub fn constant_c() -> f64 {
    constant_c_from(find_gamma0())
}

pub fn constant_c_from(gamma0: f64) -> f64 {
    2.0 * gamma0 * j1(gamma0)
}

/// `v_{n+3} / (2n)!` exactly.
pub fn wp_scaled(n: u32) -> Result<Rational> {
    Ok(zograf_v(n + 3)? / Rational::from_integer(factorial(2 * n as u64)))
}

/// `v_{n+3} C^n / (2n)!` for `3 <= n <= 80`.
pub fn wp_ratio(n: u32) -> Result<f64> {
    if !(3..=80).contains(&n) {
        return Err(Error::Range(format!(
            "wp_ratio needs 3 <= n <= 80, got {n}"
        )));
    }
    wp_ratio_unchecked(n, constant_c())
}

fn wp_ratio_unchecked(n: u32, c: f64) -> Result<f64> {
    Ok(to_f64(&wp_scaled(n)?) * c.powi(n as i32))
}

/// The same ratio with every step in `f64`, including `(2n)!` and the
/// Zograf recursion. Overflows once `(2n)!` leaves the `f64` range.
pub fn wp_ratio_float_pipeline(n: u32) -> f64 {
    let top = n as usize + 3;
    let mut v = vec![0.0f64; top + 1];
    v[3] = 1.0;
    let binom = |a: usize, b: usize| -> f64 {
        (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
    };
    for m in 4..=top {
        let mut sum = 0.0;
        for i in 1..=m - 3 {
            sum += (i * (m - i - 2)) as f64 / (m - 1) as f64
                * binom(m - 4, i - 1)
                * binom(m, i + 1)
                * v[i + 2]
                * v[m - i];
        }
        v[m] = sum / 2.0;
    }
    let fact: f64 = (1..=2 * n as u64).map(|k| k as f64).product();
    v[top] * constant_c().powi(n as i32) / fact
}

/// One Richardson step in `1/n`: `2 r(2n) - r(n)`.
pub fn richardson(n: u32) -> Result<f64> {
    Ok(2.0 * wp_ratio(2 * n)? - wp_ratio(n)?)
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift).to_f64().expect("60-bit value fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `χ(M̄_{0,n+3}) √(n+2) ((e^2 - 2e)/(n+2))^{n+3/2}` for `3 <= n <= 120`.
pub fn euler_ratio(n: u32) -> Result<f64> {
    if !(3..=120).contains(&n) {
        return Err(Error::Range(format!(
            "euler_ratio needs 3 <= n <= 120, got {n}"
        )));
    }
    let chi = euler_characteristic(n + 2)?;
    let e = std::f64::consts::E;
    let m = (n + 2) as f64;
    let log_ratio =
        ln_big(&chi) + 0.5 * m.ln() + (n as f64 + 1.5) * ((e * e - 2.0 * e).ln() - m.ln());
    Ok(log_ratio.exp())
}

/// `B_{2j}(n) j! / (j+1)^{n+j-1}` for `1 <= j <= 4`, `n <= 60`.
pub fn betti_asymptotic_ratio(j: u32, n: u32) -> Result<f64> {
    if !(1..=4).contains(&j) || n > 60 || n == 0 {
        return Err(Error::Range(format!(
            "betti_asymptotic_ratio needs 1 <= j <= 4 and 1 <= n <= 60, got j={j}, n={n}"
        )));
    }
    let b = betti(2 * j, n)?;
    let ratio = Rational::new(b * factorial(j as u64), BigInt::from(j + 1).pow(n + j - 1));
    Ok(to_f64(&ratio))
}

/// CSV `n,numerator,denominator,ratio,extrapolated` over `n_min..=n_max`,
/// where `numerator/denominator = v_{n+3}/(2n)!` and `extrapolated` is empty
/// when `2n` exceeds the range of [`wp_ratio`].
pub fn asymptotics_csv(n_min: u32, n_max: u32) -> Result<String> {
    let mut out = String::from("n,numerator,denominator,ratio,extrapolated\n");
    for n in n_min..=n_max {
        let exact = wp_scaled(n)?;
        let ratio = wp_ratio(n)?;
        let extrapolated = if 2 * n <= 80 {
            format!("{:.12}", richardson(n)?)
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{n},{},{},{ratio:.12},{extrapolated}\n",
            exact.numer(),
            exact.denom()
        ));
    }
    Ok(out)
}

/// `|r(n) - r(n+5)|` for the given `n`.
pub fn wp_ratio_step(n: u32) -> Result<f64> {
    Ok((wp_ratio(n)? - wp_ratio(n + 5)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        // reference values from an independent implementation
        assert!((bessel_j(0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j(1, 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(0, 10.0).unwrap() - (-0.245_935_764_451_348_3)).abs() < 1e-14);
        assert!((bessel_j(1, 30.0).unwrap() - (-0.118_751_062_616_623_05)).abs() < 1e-13);
        assert!((bessel_j(0, -3.0).unwrap() - bessel_j(0, 3.0).unwrap()).abs() < 1e-16);
        assert!(bessel_j(0, 51.0).is_err());
        assert!(bessel_j(2, 1.0).is_err());
    }

    #[test]
    fn gamma0_and_constant() {
        let g = find_gamma0();
        assert!((g - 2.4048255577).abs() < 1e-9);
        assert!(bessel_j(0, g).unwrap().abs() < 1e-12);
        assert!(bessel_j(0, g - 1e-6).unwrap() > 0.0 && bessel_j(0, g + 1e-6).unwrap() < 0.0);
        assert!((newton_gamma0_from(2.5) - find_gamma0_bisection()).abs() < 1e-10);
        let c = constant_c();
        assert!((c - 2.496918339).abs() < 1e-8);
        assert!((constant_c_from(newton_gamma0_from(2.2)) - c).abs() < 1e-10);
        assert_eq!(find_gamma0().to_bits(), g.to_bits());
    }

    #[test]
    fn wp_ratio_converges() {
        assert!((wp_ratio(50).unwrap() - WP_LIMIT).abs() < 1e-2);
        assert!((richardson(30).unwrap() - WP_LIMIT).abs() < 1e-3);
        let steps: Vec<f64> = (20..=55)
            .step_by(5)
            .map(|n| wp_ratio_step(n).unwrap())
            .collect();
        assert!(steps.windows(2).all(|w| w[1] < w[0]), "{steps:?}");
        assert!(wp_ratio(2).is_err() && wp_ratio(81).is_err());
    }

    #[test]
    fn float_pipeline_breaks_where_exact_does_not() {
        assert!((wp_ratio_float_pipeline(10) - wp_ratio(10).unwrap()).abs() < 1e-10);
        assert!(!wp_ratio_float_pipeline(90).is_finite());
        let exact = wp_ratio_unchecked(90, constant_c()).unwrap();
        assert!(exact.is_finite() && (exact - WP_LIMIT).abs() < 1e-2);
    }

    #[test]
    fn euler_ratio_trend() {
        let r30 = euler_ratio(30).unwrap();
        let r60 = euler_ratio(60).unwrap();
        assert!((r60 - 1.0).abs() < 0.05);
        assert!((r60 - 1.0).abs() < (r30 - 1.0).abs());
        assert!(euler_ratio(121).is_err());
    }

    #[test]
    fn betti_ratios() {
        assert_eq!(betti_asymptotic_ratio(1, 5).unwrap(), 0.5);
        assert!((betti_asymptotic_ratio(1, 40).unwrap() - 1.0).abs() < 1e-6);
        assert!((betti_asymptotic_ratio(2, 40).unwrap() - 1.0).abs() < 1e-2);
        assert!(betti_asymptotic_ratio(5, 10).is_err());
    }

    #[test]
    fn csv_columns() {
        let csv = asymptotics_csv(3, 4).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("n,numerator,denominator,ratio,extrapolated")
        );
        // v_6 / 6! = 61/720
        assert!(lines.next().unwrap().starts_with("3,61,720,"));
    }
}
