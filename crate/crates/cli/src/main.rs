//! Command line front end: parse model specs, run exact ML degree
//! computations with seeds, and emit tables in markdown, CSV, or JSON.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use mldeg_core::arith::{rat, rat_string, Rat};
use mldeg_core::error::Error as CoreError;
use mldeg_core::likelihood::{
    count_solutions, facet_report, flag_report, ml_degree_opt,
};
use mldeg_core::models::{scaling_preset, ModelSpec, ScaledModel};
use mldeg_core::polytope::normalized_volume;
use mldeg_core::rng::Rng;
use mldeg_core::solve::SolveOpts;
use mldeg_core::tropical::{
    cayley_subdivision_check, eliminant_int_coeffs, tropical_eliminant, tropical_system,
    TropicalWeights,
};

use output::{Format, Table};

#[derive(Parser)]
#[command(
    name = "mldeg",
    about = "Exact maximum likelihood degrees of scaled toric models",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Path to a JSON model spec
    #[arg(long)]
    spec: PathBuf,
    /// Seed determining all randomness of the run
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Trust agreement of two primes instead of certifying heavy Gröbner
    /// bases over the rationals
    #[arg(long)]
    modular_gb: bool,
    /// Cooperative timeout per face computation, in seconds
    #[arg(long, default_value_t = 3600)]
    timeout: u64,
    /// Omit timing columns (for byte-identical reruns)
    #[arg(long)]
    no_timing: bool,
}

impl CommonArgs {
    fn opts(&self) -> SolveOpts {
        SolveOpts {
            deadline: Some(Instant::now() + Duration::from_secs(self.timeout)),
            modular: self.modular_gb,
        }
    }

    fn load_spec(&self) -> Result<ModelSpec> {
        let text = std::fs::read_to_string(&self.spec)
            .with_context(|| format!("cannot read {}", self.spec.display()))?;
        Ok(ModelSpec::from_json(&text)?)
    }

    fn load_model(&self) -> Result<ScaledModel> {
        Ok(self.load_spec()?.to_model(self.seed)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// ML degree and degree of the model
    Compute(CommonArgs),
    /// ML degrees of all facets (and the model itself)
    Facets(CommonArgs),
    /// ML degrees and degrees along the flag recorded in the spec
    Flag(CommonArgs),
    /// Solution counts of the likelihood equations under data-zero patterns
    Zeros(ZerosArgs),
    /// Model spec utilities
    Model(ModelCmd),
    /// Tropical degenerations
    Tropical(TropicalCmd),
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Pattern of data entries, e.g. "u,u,0,u,0,0,0,0,0" (or "uu0u00000");
    /// may be repeated for several rows
    #[arg(long, required = true)]
    pattern: Vec<String>,
    /// Comma-separated scaling presets to evaluate
    #[arg(long, default_value = "c1,c2,c3,c4,c5,c6")]
    scalings: String,
}

#[derive(Args)]
struct ModelCmd {
    #[command(subcommand)]
    sub: ModelSub,
}

#[derive(Subcommand)]
enum ModelSub {
    /// Check the standing assumptions on the design matrix
    Validate(CommonArgs),
}

#[derive(Args)]
struct TropicalCmd {
    #[command(subcommand)]
    sub: TropicalSub,
}

#[derive(Subcommand)]
enum TropicalSub {
    /// Univariate eliminant of the deformed system over Q(t)
    Eliminate(CommonArgs),
    /// Cayley subdivision criterion for the deformed system
    Subdivide(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Facets(a) => cmd_facets(a),
        Command::Flag(a) => cmd_flag(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Model(m) => match &m.sub {
            ModelSub::Validate(a) => cmd_validate(a),
        },
        Command::Tropical(t) => match &t.sub {
            TropicalSub::Eliminate(a) => cmd_tropical_eliminate(a),
            TropicalSub::Subdivide(a) => cmd_tropical_subdivide(a),
        },
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<CoreError>()
                .map(exit_code_for)
                .unwrap_or(1);
            ExitCode::from(code)
        }
    }
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::GenericityFailure(_) => 2,
        CoreError::Timeout => 3,
        _ => 1,
    }
}

fn cmd_compute(args: &CommonArgs) -> Result<ExitCode> {
    let model = args.load_model()?;
    let opts = args.opts();
    let start = Instant::now();
    let mldeg = ml_degree_opt(&model, args.seed, &opts)?;
    let degree = if model.dim() == 0 {
        rat(1).numer().clone()
    } else {
        normalized_volume(&model.config())?
    };
    let mut table = Table::new("compute", &["ml_degree", "degree", "seed"]);
    table.row(vec![
        mldeg.to_string(),
        degree.to_string(),
        args.seed.to_string(),
    ]);
    if !args.no_timing {
        table.note(format!("wall time: {} ms", start.elapsed().as_millis()));
    }
    table.emit(args.format);
    Ok(ExitCode::SUCCESS)
}

fn report_table(
    name: &str,
    report: &mldeg_core::likelihood::MLReport,
    args: &CommonArgs,
) -> Table {
    let headers: Vec<&str> = if args.no_timing {
        vec!["dimension", "face", "ml_degree", "degree"]
    } else {
        vec!["dimension", "face", "ml_degree", "degree", "ms"]
    };
    let mut table = Table::new(name, &headers);
    for row in &report.rows {
        let mldeg = match &row.ml_degree {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let degree = match &row.degree {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let mut cells = vec![row.dim.to_string(), row.label.clone(), mldeg, degree];
        if !args.no_timing {
            cells.push(row.millis.to_string());
        }
        table.row(cells);
    }
    table.note(format!("seed: {}", report.seed));
    if !report.monotonicity_violations.is_empty() {
        for v in &report.monotonicity_violations {
            table.note(format!("monotonicity violation: {v}"));
        }
    }
    table
}

fn cmd_facets(args: &CommonArgs) -> Result<ExitCode> {
    let model = args.load_model()?;
    let report = facet_report(&model, args.seed, &args.opts())?;
    report_table("facets", &report, args).emit(args.format);
    let all_ok = report.rows.iter().all(|r| r.ml_degree.is_ok());
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_flag(args: &CommonArgs) -> Result<ExitCode> {
    let spec = args.load_spec()?;
    let model = spec.to_model(args.seed)?;
    let flag_1based = spec
        .flag
        .ok_or_else(|| anyhow!("the spec has no \"flag\" entry"))?;
    let flag: Vec<Vec<usize>> = flag_1based
        .iter()
        .map(|set| {
            set.iter()
                .map(|&i| {
                    if i == 0 || i > model.n_cols() {
                        Err(anyhow!("flag index {i} out of range"))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let report = flag_report(&model, &flag, args.seed, &args.opts())?;
    report_table("flag", &report, args).emit(args.format);
    let all_ok = report.rows.iter().all(|r| r.ml_degree.is_ok());
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn parse_pattern(pattern: &str, n: usize) -> Result<Vec<bool>> {
    let symbols: Vec<String> = if pattern.contains(',') {
        pattern.split(',').map(|s| s.trim().to_string()).collect()
    } else {
        pattern.chars().map(|c| c.to_string()).collect()
    };
    if symbols.len() != n {
        return Err(anyhow!(
            "pattern has {} entries, the model has {} columns",
            symbols.len(),
            n
        ));
    }
    symbols
        .iter()
        .map(|s| match s.as_str() {
            "u" | "U" => Ok(true),
            "0" => Ok(false),
            other => Err(anyhow!("pattern entries are 'u' or '0', got {other:?}")),
        })
        .collect()
}

fn cmd_zeros(args: &ZerosArgs) -> Result<ExitCode> {
    let common = &args.common;
    let model = common.load_model()?;
    let opts = common.opts();
    let names: Vec<String> = args
        .scalings
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let mut headers = vec!["pattern".to_string()];
    headers.extend(names.iter().cloned());
    let header_refs: Vec<&str> = headers.iter().map(|s| s.as_str()).collect();
    let mut table = Table::new("zeros", &header_refs);

    for pattern in &args.pattern {
        let mask = parse_pattern(pattern, model.n_cols())?;
        let mut cells = vec![pattern.clone()];
        for name in &names {
            let scaling = scaling_preset(name, model.n_cols())
                .ok_or_else(|| anyhow!("unknown scaling preset {name:?}"))?;
            let mut scaled = model.clone();
            scaled.scaling = scaling;
            // instantiate the symbolic entries with seeded positive values
            let mut rng = Rng::derive(common.seed, &format!("zeros {pattern} {name}"));
            let u: Vec<Rat> = mask
                .iter()
                .map(|&sym| if sym { rat(rng.int_in(1, 10_000)) } else { rat(0) })
                .collect();
            let count = count_solutions(&scaled, &u, common.seed, &opts)?;
            cells.push(count.display_count());
        }
        table.row(cells);
    }
    table.note(format!("seed: {}", common.seed));
    table.emit(common.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: &CommonArgs) -> Result<ExitCode> {
    let spec = args.load_spec()?;
    let model = spec.to_model(args.seed)?;
    let report = mldeg_core::lattice::validate_design_matrix(&model.matrix);
    let mut table = Table::new(
        "validate",
        &["first_row_ones", "full_rank", "lattice_index_one", "lattice_index"],
    );
    table.row(vec![
        report.first_row_ones.to_string(),
        report.full_rank.to_string(),
        report.lattice_index_one.to_string(),
        report
            .lattice_index
            .as_ref()
            .map(|i| i.to_string())
            .unwrap_or_else(|| "-".to_string()),
    ]);
    table.emit(args.format);
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn tropical_inputs(
    args: &CommonArgs,
) -> Result<(
    ScaledModel,
    mldeg_core::polytope::FaceDescriptor,
    TropicalWeights,
    Vec<Rat>,
    Option<usize>,
    Option<Vec<usize>>,
)> {
    let spec = args.load_spec()?;
    let model = spec.to_model(args.seed)?;
    let trop = spec
        .tropical
        .ok_or_else(|| anyhow!("the spec has no \"tropical\" entry"))?;
    let members: Vec<usize> = trop
        .face
        .iter()
        .map(|&i| {
            if i == 0 || i > model.n_cols() {
                Err(anyhow!("face index {i} out of range"))
            } else {
                Ok(i - 1)
            }
        })
        .collect::<Result<_>>()?;
    let faces = mldeg_core::polytope::face_lattice(&model.config())?;
    let face = faces
        .iter()
        .find(|f| f.members == members)
        .ok_or_else(|| anyhow!("the given columns are not a face of the polytope"))?
        .clone();

    let parse_weights = |map: &std::collections::BTreeMap<String, String>| -> Result<_> {
        map.iter()
            .map(|(k, v)| {
                let col: usize = k.parse().context("weight keys are column numbers")?;
                if col == 0 || col > model.n_cols() {
                    return Err(anyhow!("weight column {col} out of range"));
                }
                Ok((col - 1, mldeg_core::arith::parse_rat(v)?))
            })
            .collect::<Result<std::collections::BTreeMap<usize, Rat>>>()
    };
    let weights = TropicalWeights {
        monomial: parse_weights(&trop.monomial_weights)?,
        data: parse_weights(&trop.data_weights)?,
    };
    let data: Vec<Rat> = trop
        .data
        .iter()
        .map(|s| Ok(mldeg_core::arith::parse_rat(s)?))
        .collect::<Result<_>>()?;
    Ok((model, face, weights, data, trop.keep, trop.order))
}

fn cmd_tropical_eliminate(args: &CommonArgs) -> Result<ExitCode> {
    let (model, face, weights, data, keep, order) = tropical_inputs(args)?;
    let system = tropical_system(&model, &data, &face, &weights)?;
    let keep = keep.unwrap_or(1);
    let eliminant = tropical_eliminant(&system, keep, order.as_deref(), &args.opts())?;
    let coeffs = eliminant_int_coeffs(&eliminant, keep);
    let mut table = Table::new("tropical eliminate", &["theta_power", "coefficient"]);
    for (i, c) in coeffs.iter().enumerate() {
        table.row(vec![i.to_string(), c.to_string()]);
    }
    table.note(format!(
        "eliminant in theta_{keep}, coefficients in Z[t], primitive"
    ));
    if system.weight_denominator > 1 {
        table.note(format!(
            "weights cleared by t -> t^{}",
            system.weight_denominator
        ));
    }
    table.emit(args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_tropical_subdivide(args: &CommonArgs) -> Result<ExitCode> {
    let (model, face, weights, _data, _, _) = tropical_inputs(args)?;
    let check = cayley_subdivision_check(&model, &face, &weights)?;
    let mut table = Table::new("tropical subdivide", &["cell", "size", "members"]);
    for (i, cell) in check.subdivision.cells.iter().enumerate() {
        let members: Vec<String> = cell.iter().map(|&j| (j + 1).to_string()).collect();
        table.row(vec![
            (i + 1).to_string(),
            cell.len().to_string(),
            members.join(" "),
        ]);
    }
    table.note(format!("is_triangulation: {}", check.is_triangulation));
    table.note(format!("max_cell_size: {}", check.max_cell_size));
    table.emit(args.format);
    Ok(ExitCode::SUCCESS)
}

// keep the helper visible to tests
#[allow(dead_code)]
fn render_scaling(scaling: &[Rat]) -> String {
    scaling.iter().map(rat_string).collect::<Vec<_>>().join(",")
}
