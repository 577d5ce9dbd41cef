//! `wpvol`: exact higher Weil-Petersson volumes and the checks around them.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wpvol::asymptotics::{asymptotics_csv, constant_c, find_gamma0};
use wpvol::cohft::{tensor_product, Coords, Theory};
use wpvol::exact::rational_string;
use wpvol::fault::FaultPlan;
use wpvol::omega::CorrelatorProvider;
use wpvol::topology::{betti_csv, euler_characteristic, poincare};
use wpvol::verify::{run_suite, CheckConfig, Suite};
use wpvol::volumes::{
    evaluate, export_volume_cache, generating_f, import_volume_cache, intersection_integral,
    zograf_v, VolumeMethod, VolumeQuery,
};
use wpvol::{Error, MultiIndex};

#[derive(Parser)]
#[command(
    name = "wpvol",
    version,
    about = "Exact higher Weil-Petersson volumes of genus-zero moduli spaces"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Truncation order used by every computation.
    #[arg(long, global = true, default_value_t = 6)]
    order: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON-lines correlator table for genus > 0.
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long = "inject-fault", global = true, hide = true)]
    inject_fault: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// V(m) by one or all methods, with the integral |m|! m! V(m).
    Volume {
        /// Multiplicities m(1),m(2),... separated by commas.
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "recursive")]
        method: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
    },
    /// The generating function F(x; s) through the order.
    Series,
    /// Zograf's number v_n.
    Zograf {
        #[arg(long)]
        n: u32,
    },
    /// Tensor product of two CohFTs given as JSON files.
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Converts a CohFT JSON file to another coordinate system.
    Coords {
        #[arg(long)]
        input: PathBuf,
        /// C, B or s.
        #[arg(long, default_value = "s")]
        to: String,
    },
    /// Poincare polynomials and Betti numbers of the moduli spaces.
    Betti {
        #[arg(long)]
        n: u32,
        /// Print only the Poincare polynomial P_n.
        #[arg(long)]
        poly: bool,
    },
    /// Growth of Zograf's numbers against the Bessel constant.
    Asym {
        /// Largest n in the table.
        #[arg(long, default_value_t = 40)]
        n: u32,
    },
    /// Runs a verification suite; exits 1 on any failure.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Exit code 1: a verification failed or a computation could not finish.
/// Exit code 2: the input could not be understood.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ParseMultiIndex(_)
            | Error::ParseRational(_)
            | Error::Malformed(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::Precondition(_)
            | Error::Range(_)
            | Error::Normalization(_)
            | Error::UnknownVariable(_) => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = std::env::var_os("WPVOL_CACHE_DIR").map(|d| PathBuf::from(d).join("volumes.json"));
    if let Some(path) = &cache {
        if let Err(e) = load_cache(path) {
            eprintln!("wpvol: ignoring volume cache {}: {e}", path.display());
        }
    }
    let result = run(&cli);
    if let Some(path) = &cache {
        if let Err(e) = save_cache(path) {
            eprintln!("wpvol: cannot write volume cache {}: {e}", path.display());
        }
    }
    match result {
        Ok(code) => code,
        Err(Failure::Verification(msg)) => {
            eprintln!("wpvol: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("wpvol: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_cache(path: &Path) -> Result<(), Error> {
    if !path.exists() {
        return Ok(());
    }
    let entries: BTreeMap<String, String> = serde_json::from_str(&fs::read_to_string(path)?)?;
    import_volume_cache(&entries)?;
    Ok(())
}

fn save_cache(path: &Path) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let text = serde_json::to_string_pretty(&export_volume_cache())?;
    fs::write(path, text + "\n")?;
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let g = &cli.global;
    let mut fault = FaultPlan::default();
    for f in &g.inject_fault {
        fault = fault.merge(f.parse()?);
    }
    let (text, code) = match &cli.command {
        Command::Volume { m, method, genus } => cmd_volume(g, m, method, *genus)?,
        Command::Series => (cmd_series(g)?, ExitCode::SUCCESS),
        Command::Zograf { n } => (cmd_zograf(g, *n)?, ExitCode::SUCCESS),
        Command::Tensor { left, right } => (cmd_tensor(g, left, right)?, ExitCode::SUCCESS),
        Command::Coords { input, to } => (cmd_coords(input, to)?, ExitCode::SUCCESS),
        Command::Betti { n, poly } => (cmd_betti(g, *n, *poly)?, ExitCode::SUCCESS),
        Command::Asym { n } => (cmd_asym(g, *n)?, ExitCode::SUCCESS),
        Command::Check { suite } => cmd_check(g, suite, fault)?,
    };
    emit(g, &text)?;
    Ok(code)
}

fn emit(g: &Global, text: &str) -> Result<(), Failure> {
    match &g.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Verification(e.to_string()))
        }
    }
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON value serializes") + "\n"
}

fn cmd_volume(
    g: &Global,
    m_text: &str,
    method: &str,
    genus: u32,
) -> Result<(String, ExitCode), Failure> {
    let m: MultiIndex = m_text.parse()?;
    let method: VolumeMethod = method.parse()?;
    let provider = match &g.table {
        Some(path) => CorrelatorProvider::load(path)?,
        None => CorrelatorProvider::builtin(),
    };
    let values = evaluate(
        &VolumeQuery {
            m: m.clone(),
            genus,
            method,
        },
        &provider,
    )?;
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let integral = if genus == 0 {
        Some(intersection_integral(&m)?)
    } else {
        None
    };
    let text = match g.format {
        Format::Text => {
            let mut out = String::new();
            for (method, v) in &values {
                out.push_str(&format!("V({m}) = {v}  [{method}]\n"));
            }
            if let Some(i) = &integral {
                out.push_str(&format!("integral = {i}\n"));
            }
            out
        }
        Format::Json => {
            let vals: serde_json::Map<String, Value> = values
                .iter()
                .map(|(k, v)| (k.name().to_string(), Value::String(rational_string(v))))
                .collect();
            pretty(&json!({
                "m": m.to_text(),
                "genus": genus,
                "values": vals,
                "integral": integral.map(|i| i.to_string()),
            }))
        }
        Format::Csv => {
            let mut out = String::from("method,value\n");
            for (method, v) in &values {
                out.push_str(&format!("{method},{v}\n"));
            }
            out
        }
    };
    if !agree {
        emit(g, &text)?;
        return Err(Failure::Verification(format!("methods disagree on V({m})")));
    }
    Ok((text, ExitCode::SUCCESS))
}

fn cmd_series(g: &Global) -> Outcome {
    let f = generating_f(g.order);
    Ok(match g.format {
        Format::Json => f.to_json_string() + "\n",
        Format::Csv => {
            let mut out = String::from("x_degree,monomial,value\n");
            for (d, e, v) in f.terms() {
                let mono: Vec<String> = e.iter().map(u32::to_string).collect();
                out.push_str(&format!("{d},\"{}\",{v}\n", mono.join(",")));
            }
            out
        }
        Format::Text => format!("F = {}\n", f.to_text("x")),
    })
}

fn cmd_zograf(g: &Global, n: u32) -> Outcome {
    let v = zograf_v(n)?;
    Ok(match g.format {
        Format::Json => pretty(&json!({ "n": n, "v": rational_string(&v) })),
        Format::Csv => format!("n,v\n{n},{v}\n"),
        Format::Text => format!("v_{n} = {v}\n"),
    })
}

fn read_theory(path: &Path) -> Result<Theory, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Theory::from_json_str(&text)?)
}

fn cmd_tensor(g: &Global, left: &Path, right: &Path) -> Outcome {
    let (l, r) = (
        read_theory(left)?.to_potential()?,
        read_theory(right)?.to_potential()?,
    );
    if l.order() != g.order || r.order() != g.order {
        return Err(Failure::Usage(format!(
            "theories have orders {} and {}, but --order is {}",
            l.order(),
            r.order(),
            g.order
        )));
    }
    Ok(Theory::Potential(tensor_product(&l, &r)?).to_json_string() + "\n")
}

fn cmd_coords(input: &Path, to: &str) -> Outcome {
    let target: Coords = to.parse()?;
    Ok(read_theory(input)?.convert(target)?.to_json_string() + "\n")
}

fn cmd_betti(g: &Global, n: u32, poly: bool) -> Outcome {
    let p = poincare(n)?;
    if poly {
        return Ok(format!("{p}\n"));
    }
    Ok(match g.format {
        Format::Csv => betti_csv(n)?,
        Format::Json => {
            let coeffs: Vec<String> = p.dense().iter().map(ToString::to_string).collect();
            pretty(
                &json!({ "n": n, "coefficients": coeffs, "euler": euler_characteristic(n)?.to_string() }),
            )
        }
        Format::Text => {
            let mut out = format!("P_{n}(q) = {p}\n");
            for (j, b) in p.terms() {
                out.push_str(&format!("B_{j}({n}) = {b}\n"));
            }
            out.push_str(&format!("chi = {}\n", p.value_at_one()));
            out
        }
    })
}

fn cmd_asym(g: &Global, n_max: u32) -> Outcome {
    if !(3..=80).contains(&n_max) {
        return Err(Failure::Usage(format!(
            "--n must lie in 3..=80, got {n_max}"
        )));
    }
    let csv = asymptotics_csv(3, n_max)?;
    Ok(match g.format {
        Format::Csv => csv,
        _ => format!(
            "gamma_0 = {:.12}\nC = {:.12}\n{csv}",
            find_gamma0(),
            constant_c()
        ),
    })
}

fn cmd_check(g: &Global, suite: &str, fault: FaultPlan) -> Result<(String, ExitCode), Failure> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(
        suite,
        &CheckConfig {
            order: g.order,
            seed: g.seed,
            fault,
        },
    )?;
    let failed = report
        .checks
        .iter()
        .filter(|c| !c.passed && !c.soft)
        .count();
    let text = match g.format {
        Format::Json => pretty(&Value::Array(
            report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "suite": c.suite.name(),
                        "check": c.name,
                        "passed": c.passed,
                        "soft": c.soft,
                        "detail": c.detail,
                    })
                })
                .collect(),
        )),
        Format::Csv => {
            let mut out = String::from("suite,check,status,detail\n");
            for c in &report.checks {
                let status = if c.passed {
                    "pass"
                } else if c.soft {
                    "warn"
                } else {
                    "fail"
                };
                let detail = c.detail.clone().unwrap_or_default().replace('"', "'");
                out.push_str(&format!(
                    "{},\"{}\",{status},\"{detail}\"\n",
                    c.suite,
                    c.name.replace('"', "'")
                ));
            }
            out
        }
        Format::Text => {
            let mut out: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
            out.push_str(&format!(
                "{} checks, {failed} failed\n",
                report.checks.len()
            ));
            out
        }
    };
    let code = if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    Ok((text, code))
}
