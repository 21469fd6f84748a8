//! Command-line front end: single computations (coefficients, count
//! vectors, transforms, depth data), oracle enumeration, and verification
//! sweeps with JSON/CSV reports.
//!
//! Exit codes: 0 on success with all checks passing, 1 when a verification
//! run has failing theorem rows, 2 on usage or parameter errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqfd::{
    alpha_vector, beta_from_alpha, depth_bounds_cycle, depth_bounds_path, enumerate_alpha,
    ext_binom, ext_binom_ie, qdepth, quotient_spec, sweep, AlphaVector, CycleFamily, DepthBounds,
    DepthValue, GeneralIdealSpec, QuotientId, SweepOptions, SweepReport, Variant,
    DEFAULT_ORACLE_CAP,
};

#[derive(Parser)]
#[command(
    name = "sqfd",
    version,
    about = "Exact invariants of squarefree run ideals on paths and cycles",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    PathQuotient,
    PathIdeal,
    CycleQuotient,
    CycleIdeal,
    CycleRel,
    /// Arbitrary ideal pair from a --spec JSON file; counts via enumeration.
    General,
}

impl FamilyArg {
    fn quotient_id(self) -> Option<QuotientId> {
        match self {
            FamilyArg::PathQuotient => Some(QuotientId::PathQuotient),
            FamilyArg::PathIdeal => Some(QuotientId::PathIdeal),
            FamilyArg::CycleQuotient => Some(QuotientId::CycleQuotient),
            FamilyArg::CycleIdeal => Some(QuotientId::CycleIdeal),
            FamilyArg::CycleRel => Some(QuotientId::CycleRel),
            FamilyArg::General => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Printed,
    Corrected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Printed => Variant::Printed,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Which module to evaluate, by family parameters or by spec file.
#[derive(Args)]
struct Selection {
    /// Module family.
    #[arg(long, value_enum, default_value_t = FamilyArg::PathQuotient)]
    family: FamilyArg,
    /// Ambient number of variables.
    #[arg(long)]
    n: Option<u32>,
    /// Run length of the generators.
    #[arg(long)]
    m: Option<u32>,
    /// Reading of the relative count formula (cycle families only).
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    variant: VariantArg,
    /// JSON ideal-pair file {"n": .., "gens_I": [[..]], "gens_J": [[..]]};
    /// when given, counts come from subset enumeration.
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Ambient-size bound for enumeration (overrides SQFD_ORACLE_CAP).
    #[arg(long)]
    oracle_cap: Option<u32>,
}

impl Selection {
    fn family_params(&self) -> Result<(QuotientId, u32, u32), String> {
        let id = self
            .family
            .quotient_id()
            .ok_or("--family general requires --spec FILE")?;
        let n = self.n.ok_or("--n is required")?;
        let m = self.m.ok_or("--m is required")?;
        Ok((id, n, m))
    }

    fn load_spec(path: &Path) -> Result<GeneralIdealSpec, String> {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        GeneralIdealSpec::from_json(&text).map_err(|e| e.to_string())
    }

    /// Count vector via the closed forms, or via enumeration for a spec file.
    fn alpha(&self) -> Result<AlphaVector, String> {
        if let Some(path) = &self.spec {
            let spec = Self::load_spec(path)?;
            return enumerate_alpha(&spec, resolve_cap(self.oracle_cap)?).map_err(|e| e.to_string());
        }
        let (id, n, m) = self.family_params()?;
        alpha_vector(id, n, m, self.variant.into()).map_err(|e| e.to_string())
    }

    /// Count vector via enumeration in all cases.
    fn alpha_enumerated(&self) -> Result<AlphaVector, String> {
        let cap = resolve_cap(self.oracle_cap)?;
        let spec = match &self.spec {
            Some(path) => Self::load_spec(path)?,
            None => {
                let (id, n, m) = self.family_params()?;
                quotient_spec(id, n, m).map_err(|e| e.to_string())?
            }
        };
        enumerate_alpha(&spec, cap).map_err(|e| e.to_string())
    }
}

/// Grid and execution flags shared by `verify` and `sweep`.
#[derive(Args)]
struct GridArgs {
    /// Smallest ambient size.
    #[arg(long, default_value_t = 2)]
    n_min: u32,
    /// Largest ambient size.
    #[arg(long, default_value_t = 12)]
    n_max: u32,
    /// Restrict to one run length (default: all 1 <= m <= n).
    #[arg(long)]
    m: Option<u32>,
    /// Worker threads; 0 uses the default pool.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Ambient-size bound for oracle checks (overrides SQFD_ORACLE_CAP).
    #[arg(long)]
    oracle_cap: Option<u32>,
    /// Write the report to this file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient of t^k in (1 + t + ... + t^(m-1))^N.
    Coeff {
        #[arg(long = "N", allow_negative_numbers = true)]
        exponent: i64,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Evaluate the inclusion–exclusion form instead of the product row.
        #[arg(long)]
        ie: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count vector of a module: one count per degree 0..=n.
    Alpha {
        #[command(flatten)]
        sel: Selection,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Alternating transform of a count vector at level d.
    Beta {
        #[command(flatten)]
        sel: Selection,
        /// Transform level, 0 <= d <= n.
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Largest level at which the transform stays nonnegative.
    Qdepth {
        #[command(flatten)]
        sel: Selection,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Depth data for every module of a family: proved depth, proved
    /// partition-depth interval, and the transform invariant.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count vector by brute-force subset enumeration.
    Oracle {
        #[command(flatten)]
        sel: Selection,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the check catalogue and print failures plus a summary line.
    Verify {
        /// Sweep every run length (clears --m).
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run the check catalogue and emit the full report.
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn resolve_cap(flag: Option<u32>) -> Result<u32, String> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("SQFD_ORACLE_CAP") {
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .map_err(|_| format!("invalid SQFD_ORACLE_CAP value `{s}`")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ORACLE_CAP),
        Err(e) => Err(format!("cannot read SQFD_ORACLE_CAP: {e}")),
    }
}

fn vector_line(values: &[num_bigint::BigInt]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            let mut owned = text.to_owned();
            if !owned.ends_with('\n') {
                owned.push('\n');
            }
            fs::write(path, owned).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn scalar_output(value: String, format: Format) -> Result<String, String> {
    match format {
        Format::Text => Ok(value),
        Format::Json => Ok(serde_json::to_string(&value).expect("string serializes")),
        Format::Csv => Err("csv output is only available for sweep".into()),
    }
}

fn vector_output(values: &[num_bigint::BigInt], format: Format) -> Result<String, String> {
    match format {
        Format::Text => Ok(vector_line(values)),
        Format::Json => {
            let strings: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            Ok(serde_json::to_string(&strings).expect("strings serialize"))
        }
        Format::Csv => Err("csv output is only available for sweep".into()),
    }
}

fn bounds_line(b: &DepthBounds) -> String {
    let mut line = format!("{} n={} m={}", b.module, b.n, b.m);
    if let Some(v) = b.variant {
        line.push_str(&format!(" variant={v}"));
    }
    line.push_str(&format!(" phi={}", b.phi));
    match b.depth {
        DepthValue::Exact(v) => line.push_str(&format!(" depth={v}")),
        DepthValue::AtLeast(v) => line.push_str(&format!(" depth>={v}")),
    }
    line.push_str(&format!(" sdepth>={}", b.sdepth_lower));
    if let Some(hi) = b.sdepth_upper {
        line.push_str(&format!(" sdepth<={hi}"));
    }
    line.push_str(&format!(" qdepth={}", b.qdepth));
    line
}

fn run_sweep(grid: &GridArgs, clear_m: bool) -> Result<SweepReport, String> {
    let opts = SweepOptions {
        n_min: grid.n_min,
        n_max: grid.n_max,
        m: if clear_m { None } else { grid.m },
        oracle_cap: resolve_cap(grid.oracle_cap)?,
        jobs: grid.jobs,
    };
    sweep(&opts).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Coeff {
            exponent,
            m,
            k,
            ie,
            format,
        } => {
            if m < 1 {
                return Err(format!("m must be >= 1, got {m}"));
            }
            let value = if ie {
                ext_binom_ie(exponent, m, k)
            } else {
                ext_binom(exponent, m, k)
            };
            emit(&scalar_output(value.to_string(), format)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Alpha { sel, format } => {
            let alpha = sel.alpha()?;
            emit(&vector_output(alpha.values(), format)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Beta { sel, d, format } => {
            let alpha = sel.alpha()?;
            let beta = beta_from_alpha(&alpha, d).map_err(|e| e.to_string())?;
            emit(&vector_output(beta.values(), format)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Qdepth { sel, format } => {
            let alpha = sel.alpha()?;
            let depth = qdepth(&alpha).map_err(|e| e.to_string())?;
            emit(&scalar_output(depth.to_string(), format)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds {
            n,
            m,
            variant,
            format,
        } => {
            let mut rows = depth_bounds_path(n, m).map_err(|e| e.to_string())?;
            if CycleFamily::new(n, m).is_ok() {
                rows.extend(depth_bounds_cycle(n, m, variant.into()).map_err(|e| e.to_string())?);
            }
            let text = match format {
                Format::Text => rows.iter().map(bounds_line).collect::<Vec<_>>().join("\n"),
                Format::Json => serde_json::to_string_pretty(&rows).expect("bounds serialize"),
                Format::Csv => return Err("csv output is only available for sweep".into()),
            };
            emit(&text, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { sel, format } => {
            let alpha = sel.alpha_enumerated()?;
            emit(&vector_output(alpha.values(), format)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { all, grid } => {
            let report = run_sweep(&grid, all)?;
            for row in report.failures() {
                println!("FAIL {row}");
            }
            if report.summary.disc > 0 {
                println!(
                    "note: {} printed-reading discrepancies recorded (not failures)",
                    report.summary.disc
                );
            }
            println!(
                "summary: pass={} fail={} disc={}",
                report.summary.pass, report.summary.fail, report.summary.disc
            );
            println!(
                "result: {}",
                if report.is_success() { "OK" } else { "FAIL" }
            );
            if let Some(path) = &grid.out {
                emit(&report.to_json(), Some(path))?;
            }
            Ok(if report.is_success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sweep { grid, format } => {
            let report = run_sweep(&grid, false)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Text => format!(
                    "summary: pass={} fail={} disc={}\nresult: {}",
                    report.summary.pass,
                    report.summary.fail,
                    report.summary.disc,
                    if report.is_success() { "OK" } else { "FAIL" }
                ),
            };
            emit(&text, grid.out.as_deref())?;
            Ok(if report.is_success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
