//! `simcrit`: derive, audit, and apply similarity criteria from the
//! command line. See `simcrit --help` and the README for the full
//! command and exit-code contract.

use clap::{Args, Parser, Subcommand};
use simcrit::rational::{to_f64, Zero};
use simcrit::{
    check_basis, check_similarity, default_registry, derive_pi_groups, eval_pi, parse_unit,
    slm_preset, solve_unknown, DimensionalMatrix, PiGroup, DEFAULT_TOLERANCE,
};
use simcrit_cli::error::{CliError, EXIT_NOT_SIMILAR, EXIT_SINGULAR};
use simcrit_cli::parse_cli_number;
use simcrit_cli::problem::{
    load_case, load_problem, preset_problem_file, problem_from_slice, LoadedProblem,
};
use simcrit_cli::report::{
    build_derivation_report, print_time_export, render_human, to_canonical_json,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "simcrit",
    version,
    about = "Exact-arithmetic similarity criteria: derive π-groups, check \
             model/prototype similarity, and plan laser-melting builds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive and check π-groups from a problem file
    #[command(subcommand)]
    Pi(PiCommand),
    /// Unit-expression utilities
    #[command(subcommand)]
    Unit(UnitCommand),
    /// Compare cases and solve unknowns over derived criteria
    #[command(subcommand)]
    Similarity(SimilarityCommand),
    /// Built-in laser-melting problem, reference data, and planning arithmetic
    #[command(subcommand)]
    Slm(SlmCommand),
}

#[derive(Subcommand)]
enum PiCommand {
    /// Derive every π-group of a problem and print a derivation report
    Derive {
        /// Problem file (JSON)
        problem: PathBuf,
        /// Write the report as JSON to a path, or to stdout with `-`
        #[arg(long)]
        json: Option<String>,
        /// Keep declared dims when unit texts conflict with them
        #[arg(long)]
        no_audit: bool,
    },
    /// Exact determinant test of the problem's basis selection
    CheckBasis {
        /// Problem file (JSON)
        problem: PathBuf,
    },
}

#[derive(Subcommand)]
enum UnitCommand {
    /// Parse a unit expression into dimensions and an SI scale factor
    Parse {
        /// Unit expression, e.g. `кДж/(кг·°C)` or `W/m^2`
        expr: String,
    },
}

#[derive(Subcommand)]
enum SimilarityCommand {
    /// Evaluate all criteria for two cases and test their similarity
    Check {
        problem: PathBuf,
        case_a: PathBuf,
        case_b: PathBuf,
        /// Relative tolerance (default 1e-9)
        #[arg(long, value_parser = parse_cli_number)]
        tol: Option<f64>,
    },
    /// Solve one criterion for the single parameter a case leaves out
    Solve {
        problem: PathBuf,
        case: PathBuf,
        /// Target quantity symbol of the group to invert
        #[arg(long)]
        group: String,
        /// Desired π value
        #[arg(long, value_parser = parse_cli_number)]
        target_pi: f64,
    },
}

#[derive(Subcommand)]
enum SlmCommand {
    /// Show the built-in problem and its derived criteria
    Preset {
        /// Write the problem file here instead of deriving
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Reconcile the preset's unit strings against its dimension rows
    Audit,
    /// Estimate build time from part volume and deposition rate
    EstimateTime(EstimateArgs),
    /// Deposition rate implied by a (volume, hours) pair
    ImpliedRate(ImpliedRateArgs),
    /// Winner-over-loser ratio of a metric across two cases
    Compare(CompareArgs),
    /// Reference build-time table
    Table {
        /// Write the table as JSON to this path
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EstimateArgs {
    /// Part volume in cm³ (decimal comma accepted)
    #[arg(long, value_parser = parse_cli_number)]
    volume: f64,
    /// Deposition rate in cm³/h
    #[arg(long, value_parser = parse_cli_number)]
    rate: f64,
}

#[derive(Args)]
struct ImpliedRateArgs {
    #[arg(long, value_parser = parse_cli_number)]
    volume: f64,
    #[arg(long, value_parser = parse_cli_number)]
    hours: f64,
}

#[derive(Args)]
struct CompareArgs {
    /// Metric value of the first case
    #[arg(long, value_parser = parse_cli_number)]
    a: f64,
    /// Metric value of the second case
    #[arg(long, value_parser = parse_cli_number)]
    b: f64,
    /// Larger values win (default)
    #[arg(long, conflicts_with = "lower_better")]
    higher_better: bool,
    /// Smaller values win
    #[arg(long)]
    lower_better: bool,
    /// Significant figures for the displayed ratio
    #[arg(long, default_value_t = 2)]
    sig_figs: u32,
    #[arg(long, default_value = "A")]
    label_a: String,
    #[arg(long, default_value = "B")]
    label_b: String,
    #[arg(long, default_value = "value")]
    metric: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Pi(cmd) => run_pi(cmd),
        Command::Unit(cmd) => run_unit(cmd),
        Command::Similarity(cmd) => run_similarity(cmd),
        Command::Slm(cmd) => run_slm(cmd),
    }
}

fn run_pi(cmd: PiCommand) -> Result<ExitCode, CliError> {
    let registry = default_registry();
    match cmd {
        PiCommand::Derive {
            problem,
            json,
            no_audit,
        } => {
            let loaded = load_problem(&problem, &registry, no_audit)?;
            derive_and_report(&loaded, json.as_deref())
        }
        PiCommand::CheckBasis { problem } => {
            let loaded = load_problem(&problem, &registry, false)?;
            let check = check_basis(&loaded.matrix, &loaded.basis)?;
            println!("basis determinant: {}", check.determinant);
            println!(
                "independent: {}",
                if check.independent { "yes" } else { "no" }
            );
            if check.independent {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_SINGULAR))
            }
        }
    }
}

fn derive_and_report(loaded: &LoadedProblem, json: Option<&str>) -> Result<ExitCode, CliError> {
    let square = loaded.basis.len() == loaded.matrix.system().arity();
    let determinant = if square {
        let check = check_basis(&loaded.matrix, &loaded.basis)?;
        if !check.independent {
            return Err(CliError::SingularBasis(
                "basis is dimensionally dependent: determinant = 0".into(),
            ));
        }
        Some(check.determinant)
    } else {
        None
    };
    let groups = derive_pi_groups(&loaded.matrix, &loaded.basis)?;
    let report = build_derivation_report(loaded, &groups, determinant.as_ref());
    match json {
        Some("-") => print!("{}", to_canonical_json(&report)),
        Some(path) => {
            std::fs::write(path, to_canonical_json(&report))
                .map_err(|e| CliError::io(path, e))?;
            print!("{}", render_human(&report));
            println!("report written to {path}");
        }
        None => print!("{}", render_human(&report)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_unit(cmd: UnitCommand) -> Result<ExitCode, CliError> {
    match cmd {
        UnitCommand::Parse { expr } => {
            let registry = default_registry();
            let parsed =
                parse_unit(&expr, &registry).map_err(|e| CliError::schema(e.to_string()))?;
            let vector: Vec<String> = parsed
                .dims
                .exponents()
                .iter()
                .map(|e| e.to_string())
                .collect();
            println!("expression: {expr}");
            println!("dimensions: {}", parsed.dims);
            println!("vector:     [{}]", vector.join(", "));
            println!("si_scale:   {}", parsed.si_scale);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_similarity(cmd: SimilarityCommand) -> Result<ExitCode, CliError> {
    let registry = default_registry();
    match cmd {
        SimilarityCommand::Check {
            problem,
            case_a,
            case_b,
            tol,
        } => {
            let loaded = load_problem(&problem, &registry, false)?;
            let groups = derive_pi_groups(&loaded.matrix, &loaded.basis)?;
            let a = load_case(&case_a, &loaded.matrix)?;
            let b = load_case(&case_b, &loaded.matrix)?;
            let tolerance = tol.unwrap_or(DEFAULT_TOLERANCE);
            let report = check_similarity(&groups, &loaded.matrix, &a, &b, tolerance)?;
            println!(
                "comparing `{}` and `{}` (tolerance {:e})",
                report.label_a, report.label_b, report.tolerance
            );
            for comparison in &report.groups {
                println!(
                    "  {} : a = {:e}, b = {:e}, relative deviation = {:e}",
                    comparison.rendering,
                    comparison.value_a,
                    comparison.value_b,
                    comparison.relative_deviation
                );
            }
            println!("similar: {}", if report.similar { "yes" } else { "no" });
            if report.similar {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_NOT_SIMILAR))
            }
        }
        SimilarityCommand::Solve {
            problem,
            case,
            group,
            target_pi,
        } => {
            let loaded = load_problem(&problem, &registry, false)?;
            let groups = derive_pi_groups(&loaded.matrix, &loaded.basis)?;
            let partial = load_case(&case, &loaded.matrix)?;
            let target_index = loaded.matrix.index_of(&group).ok_or_else(|| {
                CliError::schema(format!("`{group}` is not a quantity of this problem"))
            })?;
            let pi_group = groups
                .iter()
                .find(|g| g.target_index() == target_index)
                .ok_or_else(|| {
                    CliError::schema(format!(
                        "`{group}` is a basis quantity; criteria exist only for \
                         non-basis quantities"
                    ))
                })?;
            let solved_si = solve_unknown(pi_group, &loaded.matrix, &partial, target_pi)?;
            let unknown = unknown_symbol(pi_group, &loaded.matrix, &partial);
            let quantity = &loaded.matrix.quantities()[loaded
                .matrix
                .index_of(&unknown)
                .expect("unknown symbol comes from the matrix")];
            let scale = to_f64(&quantity.si_scale_or_one());
            match &quantity.unit_text {
                Some(unit) if scale != 1.0 => {
                    println!("{unknown} = {} {unit}", solved_si / scale);
                    println!("  = {solved_si} (SI)");
                }
                Some(unit) => println!("{unknown} = {solved_si} {unit}"),
                None => println!("{unknown} = {solved_si}"),
            }
            // feeding the solution back must reproduce the target
            let mut complete = partial.clone();
            complete
                .set(&unknown, solved_si)
                .map_err(CliError::from)?;
            let check = eval_pi(pi_group, &loaded.matrix, &complete)?;
            debug_assert!((check - target_pi).abs() <= 1e-9 * target_pi.abs());
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// The referenced quantity the partial case leaves unvalued (exactly one,
/// or `solve_unknown` would have failed).
fn unknown_symbol(
    group: &PiGroup,
    matrix: &DimensionalMatrix,
    partial: &simcrit::CaseAssignment,
) -> String {
    matrix
        .quantities()
        .iter()
        .zip(group.monomial())
        .find(|(q, e)| !e.is_zero() && partial.get(&q.symbol).is_none())
        .map(|(q, _)| q.symbol.clone())
        .expect("solve_unknown succeeded, so exactly one referenced symbol is missing")
}

fn run_slm(cmd: SlmCommand) -> Result<ExitCode, CliError> {
    let registry = default_registry();
    match cmd {
        SlmCommand::Preset { emit } => {
            let file = preset_problem_file(&registry);
            let json = to_canonical_json(&file);
            match emit {
                Some(path) => {
                    std::fs::write(&path, &json)
                        .map_err(|e| CliError::io(path.display().to_string(), e))?;
                    println!("problem file written to {}", path.display());
                }
                None => {
                    // the preset summary is exactly the derivation of its
                    // own canonical emission
                    let loaded = problem_from_slice(json.as_bytes(), &registry, false)?;
                    derive_and_report(&loaded, None)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        SlmCommand::Audit => {
            let (matrix, _) = slm_preset();
            let records = simcrit::audit_preset(&matrix, &registry);
            println!(
                "{:<8} {:<14} {:<22} {:<22} match",
                "symbol", "unit", "declared", "parsed"
            );
            let mut mismatches = Vec::new();
            for record in &records {
                let parsed = match (&record.parsed, &record.parse_error) {
                    (Some(p), _) => p.dims.to_string(),
                    (None, Some(e)) => format!("unparseable: {e}"),
                    (None, None) => "unparseable".to_string(),
                };
                println!(
                    "{:<8} {:<14} {:<22} {:<22} {}",
                    record.symbol,
                    record.unit_text,
                    record.declared.to_string(),
                    parsed,
                    if record.matches { "ok" } else { "MISMATCH" }
                );
                if !record.matches {
                    mismatches.push(record.symbol.clone());
                }
            }
            println!(
                "{} mismatch(es){}",
                mismatches.len(),
                if mismatches.is_empty() {
                    String::new()
                } else {
                    format!(": {}", mismatches.join(", "))
                }
            );
            Ok(ExitCode::SUCCESS)
        }
        SlmCommand::EstimateTime(args) => {
            let estimate = simcrit::estimate_print_time(args.volume, args.rate)
                .map_err(|e| CliError::schema(e.to_string()))?;
            println!("{}", format_hours(estimate.hours));
            if let Some(warning) = estimate.rate_warning {
                println!("warning: {warning}");
            }
            Ok(ExitCode::SUCCESS)
        }
        SlmCommand::ImpliedRate(args) => {
            let rate = simcrit::implied_rate(args.volume, args.hours)
                .map_err(|e| CliError::schema(e.to_string()))?;
            println!("{rate} cm³/h");
            Ok(ExitCode::SUCCESS)
        }
        SlmCommand::Compare(args) => {
            let higher_is_better = !args.lower_better;
            let result = simcrit::compare_materials(
                args.a,
                args.b,
                &args.label_a,
                &args.label_b,
                &args.metric,
                higher_is_better,
                args.sig_figs,
            )
            .map_err(|e| CliError::schema(e.to_string()))?;
            println!(
                "×{}, winner: {} ({})",
                result.display_ratio, result.better, result.metric_name
            );
            Ok(ExitCode::SUCCESS)
        }
        SlmCommand::Table { emit } => {
            let export = print_time_export();
            match emit {
                Some(path) => {
                    std::fs::write(&path, to_canonical_json(&export))
                        .map_err(|e| CliError::io(path.display().to_string(), e))?;
                    println!("table written to {}", path.display());
                }
                None => {
                    println!(
                        "{:<24} {:>10} {:>7} {:>7} {:>7}",
                        "part", "volume_cm3", "A_h", "B_h", "C_h"
                    );
                    for row in &export.rows {
                        println!(
                            "{:<24} {:>10} {:>7} {:>7} {:>7}",
                            row.part, row.volume_cm3, row.hours_a, row.hours_b, row.hours_c
                        );
                    }
                    let classes: Vec<String> = export
                        .classes
                        .iter()
                        .map(|c| format!("{} = {} mm", c.class, c.tolerance_mm))
                        .collect();
                    println!("accuracy classes: {}", classes.join(", "));
                    println!(
                        "supported deposition rate: {}–{} cm³/h",
                        export.deposition_rate_cm3_per_h.min, export.deposition_rate_cm3_per_h.max
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn format_hours(hours: f64) -> String {
    if hours == 0.0 {
        "0 h".to_string()
    } else {
        format!("{hours:.1} h")
    }
}
