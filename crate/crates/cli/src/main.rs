use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pot_core::game::posterior_from_structure;
use pot_core::numeric::format_rational;
use pot_core::quadratic::{convergence_order, n_of_b, quadratic_report, simulate_quadratic, QuadraticReport};
use pot_core::tsb::{assemble_pbe, check_pbe, EquilibriumDocument, PbeTriple, TsbSolution};
use pot_core::{
    compute_pot, enumerate_extreme_equilibria, parse_game, solve_cs, solve_op, CommGame, Error,
    EquilibriumTuple, Matrix, Rational, SimplexVector,
};
use serde_json::{json, Value};

mod output;

use output::{Csv, Format, Report};

#[derive(Parser)]
#[command(name = "pot", version, about = "Equilibria of sender-receiver games and the price of transparency")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Sender-optimal overt persuasion.
    SolveOp { game: PathBuf },
    /// Covert signaling: best and worst belief-dominant equilibria plus babbling.
    SolveCs { game: PathBuf },
    /// Price of transparency for every covert-signaling candidate.
    Pot { game: PathBuf },
    /// Extreme equilibria of the belief game.
    Enumerate { game: PathBuf },
    /// Verify an equilibrium document against a game.
    Check { game: PathBuf, equilibrium: PathBuf },
    /// Partition equilibrium of the uniform-quadratic game.
    Quadratic {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Number of intervals; defaults to the finest partition.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Convergence of both values over a grid of biases.
    QuadraticSweep {
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        grid: Vec<f64>,
        /// Add a Monte Carlo estimate for each grid point.
        #[arg(long)]
        simulate: bool,
        #[arg(long, default_value_t = 100_000, requires = "simulate")]
        trials: u64,
        #[arg(long, default_value_t = 0, requires = "simulate")]
        seed: u64,
    },
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Parse(_) => "parse",
            Error::Validation(_) => "validation",
            Error::DegenerateSignal(_) => "degenerate_signal",
            Error::PlausibilityViolation => "plausibility_violation",
            Error::NoBeliefDominantPbe => "no_belief_dominant_pbe",
            Error::NotBinary(_) => "not_binary",
            Error::ZeroOpValue => "zero_op_value",
            Error::BoundaryPrior(_) => "boundary_prior",
            Error::NonPositiveBias(_) => "non_positive_bias",
            Error::PartitionTooFine { .. } => "partition_too_fine",
            Error::GridTooSmall(_) => "grid_too_small",
        };
        let code = if e == Error::NoBeliefDominantPbe { 2 } else { 3 };
        Failure { code, kind, message: e.to_string() }
    }
}

/// A report, plus the infeasibility that should still set exit code 2.
struct Outcome {
    report: Report,
    infeasible: Option<Failure>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, infeasible: None }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            return fail(&Failure { code: 3, kind: "usage", message: e.to_string().trim_end().into() })
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.report.render(cli.format));
            match outcome.infeasible {
                Some(f) => fail(&f),
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => fail(&f),
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
    ExitCode::from(f.code)
}

fn load_game(path: &Path) -> Result<CommGame, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure {
        code: 3,
        kind: "io",
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(parse_game(&bytes)?)
}

fn run(command: Command) -> Result<Outcome, Failure> {
    Ok(match command {
        Command::SolveOp { game } => solve_op_report(&load_game(&game)?)?.into(),
        Command::SolveCs { game } => solve_cs_report(&load_game(&game)?)?,
        Command::Pot { game } => pot_report(&load_game(&game)?)?,
        Command::Enumerate { game } => {
            let game = load_game(&game)?;
            let tuples = enumerate_extreme_equilibria(game.sender_payoff(), game.receiver_payoff())?;
            Report::new(json!({ "equilibria": tuples.iter().map(tuple_json).collect::<Vec<_>>() })).into()
        }
        Command::Check { game, equilibrium } => check_report(&load_game(&game)?, &equilibrium)?.into(),
        Command::Quadratic { b, n } => {
            let r = quadratic_report(b, n)?;
            Report { body: json!(r), csv: Some(quadratic_csv(&[r], None)) }.into()
        }
        Command::QuadraticSweep { grid, simulate, trials, seed } => {
            sweep_report(&grid, simulate.then_some((trials, seed)))?.into()
        }
    })
}

fn rat(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn simplex(v: &SimplexVector) -> Value {
    vector(v.entries())
}

fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector(r)).collect())
}

fn tuple_json(t: &EquilibriumTuple) -> Value {
    json!({
        "action": simplex(&t.action),
        "belief": simplex(&t.belief),
        "sender_value": rat(&t.sender_value),
        "receiver_value": rat(&t.receiver_value),
    })
}

fn equilibrium_json(game: &CommGame, triple: &PbeTriple) -> Result<Value, Failure> {
    Ok(json!(EquilibriumDocument::from_triple(game, triple)?))
}

fn solve_op_report(game: &CommGame) -> Result<Report, Failure> {
    let op = solve_op(game)?;
    let beliefs = posterior_from_structure(game, &op.pi)?;
    let triple = PbeTriple { pi: op.pi.clone(), a: op.a.clone(), lambda: beliefs.beliefs };
    let signals: Vec<&str> = op.recommended.iter().map(|&k| game.actions[k].as_str()).collect();
    Ok(Report::new(json!({
        "value": rat(&op.value),
        "signals": signals,
        "joint": matrix(&op.joint),
        "equilibrium": equilibrium_json(game, &triple)?,
    })))
}

fn tsb_json(game: &CommGame, sol: &Option<TsbSolution>) -> Result<Value, Failure> {
    let Some(sol) = sol else { return Ok(Value::Null) };
    let triple = assemble_pbe(game, sol)?;
    Ok(json!({
        "value": rat(&sol.value),
        "receiver_value": rat(&sol.receiver_value()),
        "weights": simplex(&sol.weights),
        "equilibrium": equilibrium_json(game, &triple)?,
    }))
}

fn infeasible_if(missing: bool) -> Option<Failure> {
    missing.then(|| Error::NoBeliefDominantPbe.into())
}

fn solve_cs_report(game: &CommGame) -> Result<Outcome, Failure> {
    let cs = solve_cs(game)?;
    let body = json!({
        "candidates": cs.candidates.len(),
        "tsb_max": tsb_json(game, &cs.tsb_max)?,
        "tsb_min": tsb_json(game, &cs.tsb_min)?,
        "babbling": {
            "action": game.actions[cs.babbling.action],
            "sender_preferred": rat(&cs.babbling.sender_preferred),
            "sender_worst": rat(&cs.babbling.sender_worst),
            "receiver_value": rat(&cs.babbling.receiver_value),
        },
    });
    Ok(Outcome { report: Report::new(body), infeasible: infeasible_if(cs.tsb_max.is_none()) })
}

fn pot_report(game: &CommGame) -> Result<Outcome, Failure> {
    let pot = compute_pot(game)?;
    let missing = pot.candidate(pot_core::pot::CandidateKind::TsbMax).is_none();
    Ok(Outcome { report: Report::new(json!(pot)), infeasible: infeasible_if(missing) })
}

fn check_report(game: &CommGame, path: &Path) -> Result<Report, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure {
        code: 3,
        kind: "io",
        message: format!("{}: {e}", path.display()),
    })?;
    let doc: EquilibriumDocument =
        serde_json::from_slice(&bytes).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
    let triple = doc.to_triple()?;
    let report = check_pbe(game, &triple.pi, &triple.a, &triple.lambda)?;
    let mut body = json!(report);
    body["all_true"] = json!(report.all_true());
    Ok(Report::new(body))
}

fn quadratic_csv(rows: &[QuadraticReport], sims: Option<&[Value]>) -> Csv {
    let mut header = vec!["b", "N", "ucs", "uop", "ratio_abs"];
    if sims.is_some() {
        header.extend(["sim_sender_mean", "sim_sender_se"]);
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut cells = vec![r.b.to_string(), r.n.to_string(), r.ucs.to_string(), r.uop.to_string(), r.ratio_abs.to_string()];
            if let Some(sims) = sims {
                cells.push(sims[i]["sender_mean"].to_string());
                cells.push(sims[i]["sender_se"].to_string());
            }
            cells
        })
        .collect();
    Csv { header, rows }
}

fn sweep_report(grid: &[f64], simulate: Option<(u64, u64)>) -> Result<Report, Failure> {
    let conv = convergence_order(grid)?;
    let sims = match simulate {
        Some((trials, seed)) => Some(
            grid.iter()
                .map(|&b| Ok(json!(simulate_quadratic(b, n_of_b(b)?, trials, seed)?)))
                .collect::<Result<Vec<Value>, Error>>()?,
        ),
        None => None,
    };
    let csv = quadratic_csv(&conv.rows, sims.as_deref());
    let mut body = json!(conv);
    if let Some(sims) = sims {
        body["simulations"] = Value::Array(sims);
    }
    Ok(Report { body, csv: Some(csv) })
}
