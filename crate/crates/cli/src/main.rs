//! Command-line interface to the game solvers: load a game from a JSON
//! document or a built-in generator, run one of the solver operations, and
//! print a text or JSON report.
//!
//! Exit codes: 0 on success, 1 on a negative decision (no equilibrium
//! found, membership check failed, falsifying deviation found), 2 on usage
//! or parse errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use coopeq::format::{parse_game, write_game};
use coopeq::game::{Game, MixedStrategy, Player, StrategyProfile, ValuePair};
use coopeq::games::generate;
use coopeq::solvers::{
    alpha_of, best_utility, ce_falsify, coco_value, find_mpce, find_pareto_optimal_mpce, find_pce,
    is_pce_with_bu, minimax_value, sidepay_mpce_profile, sidepay_mpce_value,
};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "coopeq",
    version,
    about = "Cooperative-equilibrium solvers for two-player normal-form games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show a game's size, labels, and payoff range
    Info(GameArgs),
    /// Best utility each player can get when the opponent best-responds
    Bu(GameArgs),
    /// Minimax value of each player
    Minimax(GameArgs),
    /// Maximum social welfare and a pure profile attaining it
    Msw(GameArgs),
    /// Split the game into team and zero-sum parts
    Decompose(GameArgs),
    /// Find a perfect cooperative equilibrium, if one exists
    Pce(GameArgs),
    /// Check whether a profile is a perfect cooperative equilibrium
    CheckPce(ProfileArgs),
    /// Report a profile's alpha: min over players of utility minus best utility
    Alpha(ProfileArgs),
    /// Find a profile maximizing alpha
    Mpce(GameArgs),
    /// Find a Pareto-optimal alpha-maximizing profile (also a cooperative equilibrium)
    PoMpce(GameArgs),
    /// Coco value of the game
    Coco(GameArgs),
    /// Unique alpha-maximizing value once side payments are allowed
    SidepayMpce(GameArgs),
    /// Deal profile attaining the side-payment value
    SidepayProfile(GameArgs),
    /// Search for a deviation falsifying the cooperative-equilibrium conditions
    CheckCe(CheckCeArgs),
    /// Print a generated game as a JSON document
    Gen(GameArgs),
}

#[derive(Args)]
struct GameArgs {
    /// Path to a game document (JSON)
    #[arg(long)]
    game: Option<PathBuf>,
    /// Built-in generator: prisoners, travelers, bargaining, coordination, centipede, xam1
    #[arg(long = "gen", value_name = "NAME")]
    generator: Option<String>,
    /// Generator parameter as key=value (repeatable)
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    /// Comparison tolerance for decisions
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct ProfileArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Mixed profile: two comma-separated probability lists joined by ';'
    #[arg(long)]
    profile: String,
}

#[derive(Args)]
struct CheckCeArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Mixed profile: two comma-separated probability lists joined by ';'
    #[arg(long)]
    profile: String,
    /// Grid subdivisions for the deviation search
    #[arg(long, default_value_t = 20)]
    grid: usize,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Info(a) => info(&load(&a)?, &a),
        Command::Bu(a) => value_pair_report(&a, "bu", |g| {
            ValuePair::new(best_utility(g, Player::One), best_utility(g, Player::Two))
        }),
        Command::Minimax(a) => value_pair_report(&a, "minimax", |g| {
            ValuePair::new(minimax_value(g, Player::One), minimax_value(g, Player::Two))
        }),
        Command::Msw(a) => msw(&load(&a)?, &a),
        Command::Decompose(a) => decompose(&load(&a)?, &a),
        Command::Pce(a) => pce(&load(&a)?, &a),
        Command::CheckPce(a) => check_pce(&load(&a.game)?, &a),
        Command::Alpha(a) => alpha(&load(&a.game)?, &a),
        Command::Mpce(a) => mpce(&load(&a)?, &a, find_mpce),
        Command::PoMpce(a) => mpce(&load(&a)?, &a, find_pareto_optimal_mpce),
        Command::Coco(a) => value_pair_report(&a, "coco", coco_value),
        Command::SidepayMpce(a) => value_pair_report(&a, "sidepay-mpce", sidepay_mpce_value),
        Command::SidepayProfile(a) => sidepay_profile(&load(&a)?, &a),
        Command::CheckCe(a) => check_ce(&load(&a.game)?, &a),
        Command::Gen(a) => gen(&a),
    }
}

fn load(args: &GameArgs) -> Result<Game, String> {
    match (&args.game, &args.generator) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            parse_game(&text).map_err(|e| e.to_string())
        }
        (None, Some(name)) => {
            let params = parse_params(&args.params)?;
            generate(name, &params).map_err(|e| e.to_string())
        }
        (None, None) => Err("provide a game with --game <path> or --gen <name>".into()),
        (Some(_), Some(_)) => Err("--game and --gen are mutually exclusive".into()),
    }
}

fn parse_params(raw: &[String]) -> Result<Vec<(String, String)>, String> {
    raw.iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("parameter {p:?} is not of the form key=value"))
        })
        .collect()
}

fn parse_profile(text: &str, g: &Game, tolerance: f64) -> Result<StrategyProfile, String> {
    let (p1, p2) = text
        .split_once(';')
        .ok_or("profile must be two probability lists joined by ';'")?;
    let parse_side = |side: &str, len: usize, who: &str| -> Result<MixedStrategy, String> {
        let probs: Vec<f64> = side
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{who}: {e}")))
            .collect::<Result<_, _>>()?;
        if probs.len() != len {
            return Err(format!(
                "{who} needs {len} probabilities, got {}",
                probs.len()
            ));
        }
        MixedStrategy::new(probs, tolerance.max(1e-6)).map_err(|e| format!("{who}: {e}"))
    };
    Ok(StrategyProfile::new(
        parse_side(p1, g.rows(), "player 1 strategy")?,
        parse_side(p2, g.cols(), "player 2 strategy")?,
    ))
}

/// Formats a number with 12 significant digits, trimming trailing zeros.
fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 17) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn pair(v: ValuePair) -> String {
    format!("({}, {})", sig(v.v1), sig(v.v2))
}

fn strategy_text(g: &Game, player: Player, s: &MixedStrategy) -> String {
    let parts: Vec<String> = s
        .support(1e-12)
        .into_iter()
        .map(|a| format!("{} {}", sig(s.get(a)), g.label(player, a)))
        .collect();
    parts.join(" + ")
}

fn profile_text(g: &Game, s: &StrategyProfile) -> String {
    format!(
        "[{}; {}]",
        strategy_text(g, Player::One, &s.s1),
        strategy_text(g, Player::Two, &s.s2)
    )
}

fn profile_json(s: &StrategyProfile) -> serde_json::Value {
    json!({ "s1": s.s1.probs(), "s2": s.s2.probs() })
}

fn emit(args: &GameArgs, text: String, json_value: serde_json::Value) -> Result<u8, String> {
    match args.format {
        OutputFormat::Text => println!("{text}"),
        OutputFormat::Json => println!("{json_value}"),
    }
    Ok(0)
}

fn info(g: &Game, args: &GameArgs) -> Result<u8, String> {
    let labels = |p: Player| -> Vec<String> { (0..g.actions(p)).map(|a| g.label(p, a)).collect() };
    let l1 = labels(Player::One);
    let l2 = labels(Player::Two);
    emit(
        args,
        format!(
            "{}x{} game\nplayer 1 actions: {}\nplayer 2 actions: {}",
            g.rows(),
            g.cols(),
            l1.join(", "),
            l2.join(", ")
        ),
        json!({ "rows": g.rows(), "cols": g.cols(), "actions": [l1, l2] }),
    )
}

fn value_pair_report(
    args: &GameArgs,
    name: &str,
    f: impl Fn(&Game) -> ValuePair,
) -> Result<u8, String> {
    let g = load(args)?;
    let v = f(&g);
    emit(
        args,
        pair(v),
        json!({ "command": name, "v1": v.v1, "v2": v.v2 }),
    )
}

fn msw(g: &Game, args: &GameArgs) -> Result<u8, String> {
    let m = g.msw();
    let (i, j) = m.profile;
    emit(
        args,
        format!(
            "{} at ({}, {})",
            sig(m.value),
            g.label(Player::One, i),
            g.label(Player::Two, j)
        ),
        json!({ "value": m.value, "profile": [i, j] }),
    )
}

fn decompose(g: &Game, args: &GameArgs) -> Result<u8, String> {
    let d = g.decompose();
    let rows = |m: &Vec<Vec<f64>>| -> String {
        m.iter()
            .map(|r| r.iter().map(|&v| sig(v)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    };
    emit(
        args,
        format!("team:\n{}\nzero-sum:\n{}", rows(&d.team), rows(&d.zerosum)),
        json!({ "team": d.team, "zerosum": d.zerosum }),
    )
}

fn pce(g: &Game, args: &GameArgs) -> Result<u8, String> {
    match find_pce(g, args.tolerance) {
        Some(s) => {
            let u = g.expected_utilities(&s).map_err(|e| e.to_string())?;
            emit(
                args,
                format!("PCE {} with utilities {}", profile_text(g, &s), pair(u)),
                json!({ "found": true, "profile": profile_json(&s), "utilities": [u.v1, u.v2] }),
            )
        }
        None => {
            match args.format {
                OutputFormat::Text => println!("no PCE"),
                OutputFormat::Json => println!("{}", json!({ "found": false })),
            }
            Ok(1)
        }
    }
}

fn check_pce(g: &Game, args: &ProfileArgs) -> Result<u8, String> {
    let s = parse_profile(&args.profile, g, args.game.tolerance)?;
    let bu = (best_utility(g, Player::One), best_utility(g, Player::Two));
    let verdict = is_pce_with_bu(g, &s, bu, args.game.tolerance).map_err(|e| e.to_string())?;
    let u = g.expected_utilities(&s).map_err(|e| e.to_string())?;
    match args.game.format {
        OutputFormat::Text => println!(
            "PCE: {verdict} (utilities {}, thresholds {})",
            pair(u),
            pair(ValuePair::new(bu.0, bu.1))
        ),
        OutputFormat::Json => println!(
            "{}",
            json!({ "is_pce": verdict, "utilities": [u.v1, u.v2], "bu": [bu.0, bu.1] })
        ),
    }
    Ok(if verdict { 0 } else { 1 })
}

fn alpha(g: &Game, args: &ProfileArgs) -> Result<u8, String> {
    let s = parse_profile(&args.profile, g, args.game.tolerance)?;
    let a = alpha_of(g, &s).map_err(|e| e.to_string())?;
    emit(&args.game, sig(a), json!({ "alpha": a }))
}

fn mpce(
    g: &Game,
    args: &GameArgs,
    solver: impl Fn(&Game) -> coopeq::solvers::AlphaResult,
) -> Result<u8, String> {
    let r = solver(g);
    let u = g
        .expected_utilities(&r.profile)
        .map_err(|e| e.to_string())?;
    emit(
        args,
        format!(
            "alpha {} at {} with utilities {}",
            sig(r.alpha),
            profile_text(g, &r.profile),
            pair(u)
        ),
        json!({
            "alpha": r.alpha,
            "profile": profile_json(&r.profile),
            "utilities": [u.v1, u.v2],
        }),
    )
}

fn sidepay_profile(g: &Game, args: &GameArgs) -> Result<u8, String> {
    let d = sidepay_mpce_profile(g);
    let (i, j) = d.agreed_profile;
    emit(
        args,
        format!(
            "agree on ({}, {}), player 1 pays {}; backups ({}, {})",
            g.label(Player::One, i),
            g.label(Player::Two, j),
            sig(d.transfer),
            g.label(Player::One, d.backup1),
            g.label(Player::Two, d.backup2)
        ),
        json!({
            "agreed_profile": [i, j],
            "transfer": d.transfer,
            "backup1": d.backup1,
            "backup2": d.backup2,
        }),
    )
}

fn check_ce(g: &Game, args: &CheckCeArgs) -> Result<u8, String> {
    if args.grid < 1 {
        return Err("--grid must be at least 1".into());
    }
    let s = parse_profile(&args.profile, g, args.game.tolerance)?;
    match ce_falsify(g, &s, args.grid, args.game.tolerance).map_err(|e| e.to_string())? {
        Some(v) => {
            let who = match v.player {
                Player::One => 1,
                Player::Two => 2,
            };
            match args.game.format {
                OutputFormat::Text => println!(
                    "violation: player {who} deviates to {} and gets up to {}",
                    strategy_text(g, v.player, &v.deviation),
                    sig(v.best_case)
                ),
                OutputFormat::Json => println!(
                    "{}",
                    json!({
                        "violation": true,
                        "player": who,
                        "deviation": v.deviation.probs(),
                        "best_case": v.best_case,
                    })
                ),
            }
            Ok(1)
        }
        None => {
            match args.game.format {
                OutputFormat::Text => println!("no violation found at grid {}", args.grid),
                OutputFormat::Json => println!("{}", json!({ "violation": false })),
            }
            Ok(0)
        }
    }
}

fn gen(args: &GameArgs) -> Result<u8, String> {
    if args.generator.is_none() {
        return Err("gen requires --gen <name>".into());
    }
    if args.game.is_some() {
        return Err("gen takes --gen, not --game".into());
    }
    let g = load(args)?;
    println!("{}", write_game(&g));
    Ok(0)
}
