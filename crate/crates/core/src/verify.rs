//! Self-check suites aggregating every verification in the crate.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{
    betti_asymptotic_ratio, constant_c, euler_ratio, find_gamma0, richardson, wp_ratio, WP_LIMIT,
};
use crate::cohft::{
    b_to_c, b_to_s, c_to_b, explicit_b_from_c, explicit_c_from_b, laplace_identity_report,
    potential_from_s, random_theory, s_to_b, tensor_product, PotentialCoeffs, UCoeffs,
};
use crate::error::{Error, Result};
use crate::exact::{multi_indices_up_to_weight, MultiIndex, Rational};
use crate::fault::FaultPlan;
use crate::omega::{
    monomials_to_tuples_with, tuple_to_monomials, tuple_to_monomials_recursive, u_series_report,
    Basis, CorrelatorProvider, OmegaExpression,
};
use crate::topology::{
    betti, betti_closed, check_leading_coefficients, euler_identity_check,
    implicit_equation_report, non_palindromic, odd_coefficients, recover_a_polynomials,
};
use crate::volumes::{
    check_bessel_specialization_with, check_pde_with, intersection_integral, volume_closed,
    volume_recursive, volumes_via_inversion, zograf_v,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Pde,
    Inversion,
    Laplace,
    Omega,
    Appendix,
    Asym,
    Tensor,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Pde,
        Suite::Inversion,
        Suite::Laplace,
        Suite::Omega,
        Suite::Appendix,
        Suite::Asym,
        Suite::Tensor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pde => "pde",
            Suite::Inversion => "inversion",
            Suite::Laplace => "laplace",
            Suite::Omega => "omega",
            Suite::Appendix => "appendix",
            Suite::Asym => "asym",
            Suite::Tensor => "tensor",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|s| s.name() == text)
            .ok_or_else(|| Error::Malformed(format!("unknown suite '{text}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One named check. Soft checks are reported but never fail a suite.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub soft: bool,
    /// The first offending item when the check fails.
    pub detail: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed, self.soft) {
            (true, _) => "PASS",
            (false, true) => "WARN",
            (false, false) => "FAIL",
        };
        write!(f, "[{status}] {}: {}", self.suite, self.name)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.soft)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed && !c.soft)
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub order: u32,
    pub seed: u64,
    pub fault: FaultPlan,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            order: 6,
            seed: 0,
            fault: FaultPlan::default(),
        }
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<CheckOutcome>,
}

impl Recorder {
    /// `outcome` is `Ok(None)` on success, `Ok(Some(detail))` on failure.
    fn record(&mut self, name: impl Into<String>, outcome: Result<Option<String>>) {
        self.push(name.into(), false, outcome);
    }

    fn soft(&mut self, name: impl Into<String>, outcome: Result<Option<String>>) {
        self.push(name.into(), true, outcome);
    }

    fn push(&mut self, name: String, soft: bool, outcome: Result<Option<String>>) {
        let (passed, detail) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(d)) => (false, Some(d)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.checks.push(CheckOutcome {
            suite: self.suite,
            name,
            passed,
            soft,
            detail,
        });
    }
}

fn first<T>(
    items: impl IntoIterator<Item = T>,
    bad: impl Fn(&T) -> Result<Option<String>>,
) -> Result<Option<String>> {
    for item in items {
        if let Some(d) = bad(&item)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn within(label: &str, value: f64, target: f64, tol: f64) -> Option<String> {
    ((value - target).abs() > tol)
        .then(|| format!("{label} = {value:.12}, expected {target} +- {tol:e}"))
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite, config: &CheckConfig) -> Result<SuiteReport> {
    if config.order < 3 {
        return Err(Error::Precondition(format!(
            "check order must be at least 3, got {}",
            config.order
        )));
    }
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut checks = Vec::new();
    for s in suites {
        let mut rec = Recorder {
            suite: s,
            checks: Vec::new(),
        };
        match s {
            Suite::Pde => pde(&mut rec, config),
            Suite::Inversion => inversion(&mut rec, config),
            Suite::Laplace => laplace(&mut rec, config),
            Suite::Omega => omega(&mut rec, config),
            Suite::Appendix => appendix(&mut rec, config),
            Suite::Asym => asym(&mut rec),
            Suite::Tensor => tensor(&mut rec, config),
            Suite::All => unreachable!("expanded above"),
        }
        checks.extend(rec.checks);
    }
    Ok(SuiteReport { checks })
}

fn pde(rec: &mut Recorder, config: &CheckConfig) {
    match check_pde_with(config.order, &config.fault) {
        Ok(report) => {
            for r in report.residuals {
                let detail = r.first_nonzero.as_ref().map(|_| r.to_string());
                rec.record(r.identity.clone(), Ok(detail));
            }
        }
        Err(e) => rec.record("differential equations", Err(e)),
    }
}

fn inversion(rec: &mut Recorder, config: &CheckConfig) {
    let order = config.order;
    let provider = CorrelatorProvider::builtin();
    rec.record(
        format!("recursion = closed formula = series reversion for |m| <= {order}"),
        volumes_via_inversion(order).and_then(|inv| {
            first(multi_indices_up_to_weight(order as u64), |m| {
                let r = volume_recursive(m);
                let c = volume_closed(m, &provider, 0)?;
                let i = &inv[m];
                Ok((r != c || &r != i)
                    .then(|| format!("m = {m}: recursive {r}, closed {c}, inversion {i}")))
            })
        }),
    );
    let bessel_order = order + 6;
    rec.record(
        format!("Bessel specialization through order {bessel_order}"),
        check_bessel_specialization_with(bessel_order, &config.fault),
    );
    rec.record(
        format!(
            "Zograf numbers from single-index volumes for n <= {}",
            order + 3
        ),
        first(3..=order + 3, |&n| {
            let k = (n - 3) as u64;
            let m = MultiIndex::from_pairs([(1, k as u32)]);
            let f = Rational::from_integer(crate::exact::factorial(k));
            let mut v = zograf_v(n)?;
            if config.fault.zograf == Some(n) {
                v += Rational::from_integer(1.into());
            }
            let scaled = volume_recursive(&m) * &f * &f;
            Ok((scaled != v).then(|| format!("n = {n}: volume gives {scaled}, Zograf {v}")))
        }),
    );
    rec.record(
        format!("|m|! m! V(m) is a nonnegative integer for |m| <= {order}"),
        first(multi_indices_up_to_weight(order as u64), |m| {
            Ok(intersection_integral(m).err().map(|e| e.to_string()))
        }),
    );
}

fn laplace(rec: &mut Recorder, config: &CheckConfig) {
    let order = config.order + 4;
    rec.record(
        format!(
            "term-wise Laplace transform of x(y; s) is exp(-sum s_a eta^a) through order {order}"
        ),
        laplace_identity_report(order, &config.fault),
    );
}

fn omega(rec: &mut Recorder, config: &CheckConfig) {
    let labels = |p: usize| -> Vec<u32> { (0..p as u32).map(|i| 3u32.pow(i)).collect() };
    rec.record(
        "tuple expansion: cycle sum = recursion for p <= 5",
        first(1..=5usize, |&p| {
            let a = labels(p);
            Ok((tuple_to_monomials(&a) != tuple_to_monomials_recursive(&a))
                .then(|| format!("labels {a:?}")))
        }),
    );
    let mut multisets = Vec::new();
    fn rec_sets(prefix: &mut Vec<u32>, min: u32, depth: usize, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if depth == 0 {
            return;
        }
        for a in min..=4 {
            prefix.push(a);
            rec_sets(prefix, a, depth - 1, out);
            prefix.pop();
        }
    }
    rec_sets(&mut Vec::new(), 1, 4, &mut multisets);
    rec.record(
        "set-partition inversion roundtrips for p <= 4",
        first(multisets, |a| {
            let back = monomials_to_tuples_with(a, &config.fault).to_monomials();
            let want = OmegaExpression::basis_element(Basis::Monomial, a);
            Ok((back != want).then(|| {
                let shown: Vec<String> = a.iter().map(|x| format!("w({x})")).collect();
                format!("monomial {} comes back as {back}", shown.join(""))
            }))
        }),
    );
    rec.record(
        "U-series peeling rule and partition expansion for p <= 3, degree <= 2",
        first(2..=3usize, |&p| {
            let r = u_series_report(p, 2, &config.fault)?;
            Ok((!r.passed()).then(|| format!("p = {p}: {}", r.first_failure.unwrap_or_default())))
        }),
    );
}

fn appendix(rec: &mut Recorder, config: &CheckConfig) {
    let order = config.order + 6;
    rec.record(
        format!("implicit equation and cleared differential equation through order {order}"),
        implicit_equation_report(order, &config.fault),
    );
    rec.record(
        format!("q = 1 specialization x = 2y - (1+y) log(1+y) through order {order}"),
        euler_identity_check(order).map(|ok| (!ok).then(|| "identity fails".to_string())),
    );
    rec.record(
        "closed forms of B_2(n), B_4(n) for n <= 30",
        first(1..=30u32, |&n| {
            for j in [2, 4] {
                let (c, r) = (betti_closed(j, n)?, betti(j, n)?);
                if c != r {
                    return Ok(Some(format!("B_{j}({n}): closed {c}, recursion {r}")));
                }
            }
            Ok(None)
        }),
    );
    rec.record(
        "odd Betti numbers vanish for n <= 30",
        odd_coefficients(30)
            .map(|bad| bad.first().map(|n| format!("P_{n} has an odd coefficient"))),
    );
    for j in [0u32, 2, 4] {
        rec.record(
            format!("A_{j} recovered exactly, leading coefficients of p_(j,l) as predicted"),
            recover_a_polynomials(j, j + 12).map(|r| check_leading_coefficients(&r)),
        );
    }
    rec.soft(
        "Poincare polynomials are palindromic for n <= 30",
        non_palindromic(30).map(|bad| bad.first().map(|n| format!("P_{n} is not palindromic"))),
    );
}

fn asym(rec: &mut Recorder) {
    rec.record(
        "gamma_0 = 2.4048255577",
        Ok(within("gamma_0", find_gamma0(), 2.4048255577, 1e-9)),
    );
    rec.record(
        "C = 2.496918339",
        Ok(within("C", constant_c(), 2.496918339, 1e-8)),
    );
    rec.record(
        "v_{n+3} C^n / (2n)! at n = 50",
        wp_ratio(50).map(|r| within("ratio(50)", r, WP_LIMIT, 1e-2)),
    );
    rec.record(
        "Richardson extrapolation from n = 30, 60",
        richardson(30).map(|r| within("extrapolated", r, WP_LIMIT, 1e-3)),
    );
    rec.record(
        "Euler characteristic ratio at n = 60 within 5% and improving from n = 30",
        euler_ratio(30).and_then(|r30| {
            let r60 = euler_ratio(60)?;
            let ok = (r60 - 1.0).abs() < 0.05 && (r60 - 1.0).abs() < (r30 - 1.0).abs();
            Ok((!ok).then(|| format!("ratio(30) = {r30:.6}, ratio(60) = {r60:.6}")))
        }),
    );
    rec.record(
        "B_2(n) / 2^n at n = 40",
        betti_asymptotic_ratio(1, 40).map(|r| within("B_2 ratio", r, 1.0, 1e-6)),
    );
}

/// `U` multiplied by the explicit sums instead of series reversion.
fn tensor_by_explicit_sums(a: &PotentialCoeffs, b: &PotentialCoeffs) -> Result<PotentialCoeffs> {
    let (ua, ub) = (explicit_b_from_c(a), explicit_b_from_c(b));
    let n = ua.values().len();
    let prod: Vec<Rational> = (0..n)
        .map(|k| (0..=k).map(|i| &ua.values()[i] * &ub.values()[k - i]).sum())
        .collect();
    Ok(explicit_c_from_b(&UCoeffs::new(a.order(), prod)?))
}

fn tensor(rec: &mut Recorder, config: &CheckConfig) {
    let order = config.order.max(4);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let theories: Result<Vec<PotentialCoeffs>> =
        (0..6).map(|_| random_theory(order, &mut rng)).collect();
    let theories = match theories {
        Ok(t) => t,
        Err(e) => return rec.record("random theories", Err(e)),
    };
    let pairs: Vec<(usize, usize)> = (0..theories.len())
        .map(|i| (i, (i + 1) % theories.len()))
        .collect();
    rec.record(
        "tensor product by reversion = tensor product by explicit sums",
        first(pairs.clone(), |&(i, j)| {
            let (x, y) = (
                tensor_product(&theories[i], &theories[j])?,
                tensor_by_explicit_sums(&theories[i], &theories[j])?,
            );
            Ok(
                (x != y)
                    .then(|| format!("theories {i}, {j}: {:?} vs {:?}", x.values(), y.values())),
            )
        }),
    );
    rec.record(
        "tensor product is commutative and associative with the trivial unit",
        first(pairs.clone(), |&(i, j)| {
            let (a, b, c) = (
                &theories[i],
                &theories[j],
                &theories[(j + 1) % theories.len()],
            );
            let ab = tensor_product(a, b)?;
            let ok = ab == tensor_product(b, a)?
                && tensor_product(&ab, c)? == tensor_product(a, &tensor_product(b, c)?)?
                && tensor_product(a, &PotentialCoeffs::trivial(order)?)? == *a;
            Ok((!ok).then(|| format!("theories {i}, {j}")))
        }),
    );
    rec.record(
        "coordinate conversions roundtrip and canonical coordinates add",
        first(pairs, |&(i, j)| {
            let (a, b) = (&theories[i], &theories[j]);
            let (sa, sb) = (b_to_s(&c_to_b(a)?)?, b_to_s(&c_to_b(b)?)?);
            let back = b_to_c(&s_to_b(&sa)?)? == *a;
            let from_s = b_to_s(&c_to_b(&potential_from_s(&sa, order)?)?)? == sa;
            let sum = b_to_s(&c_to_b(&tensor_product(a, b)?)?)? == sa.add(&sb)?;
            Ok((!(back && from_s && sum)).then(|| {
                format!("theories {i}, {j}: roundtrip {back}, volumes {from_s}, additivity {sum}")
            }))
        }),
    );
}
