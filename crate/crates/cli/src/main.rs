//! Command-line front end: bound tables in three formats, position
//! queries, seeded playouts, and self-verification of the oracles.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tablut_core::{
    apply_move, bounds_report, derive_geometry, enumerate_placements, legal_moves, multinomial,
    outcome, perft, perft_parallel, perft_scan, random_playout, Coord, Move, Outcome, Position,
    PLACEMENT_REGION_CAP,
};

/// Deepest perft `verify perft` will attempt.
const PERFT_DEPTH_CAP: usize = 6;

#[derive(Parser)]
#[command(
    name = "tablut",
    version,
    about = "Tablut rules engine and state-space bound calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact state-space bound terms with their two-digit
    /// displays and published reference values
    Bounds {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every legal move of a position, one per line
    Legal {
        /// Position text, e.g. "3BBB3/4B4/4W4/B3W3B/BBWWKWWBB/B3W3B/4W4/4B4/3BBB3 w"
        tbn: String,
    },
    /// Apply one move and print the resulting position, captures, and status
    Apply {
        /// Position text
        tbn: String,
        /// Move text, e.g. "e4-c4"
        mv: String,
    },
    /// Play uniformly random legal moves from a position and print the trace
    Playout {
        /// Position text
        tbn: String,
        /// Random seed; the trace is fully determined by it
        #[arg(long)]
        seed: u64,
        /// Stop after this many moves if the game has not ended
        #[arg(long, default_value_t = 300)]
        max_plies: usize,
    },
    /// Re-derive internal constants and cross-check the oracles
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Capture geometry derived from the board predicates vs the published
    /// constants
    Geometry,
    /// Exhaustive placement enumeration vs the multinomial closed form
    Placements {
        /// Largest region size to sweep (exhaustive up to 14 cells)
        #[arg(long, default_value_t = 10)]
        max_region: usize,
    },
    /// Move-sequence counts from the starting position, engine walker vs
    /// naive scanner, with throughput
    Perft {
        /// Deepest ply count to compare (at most 6)
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

fn main() {
    // Rust ignores SIGPIPE by default, turning `tablut bounds | head` into
    // a panic mid-print; restore the conventional silent exit.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Bounds { format } => cmd_bounds(format),
        Command::Legal { tbn } => cmd_legal(&tbn),
        Command::Apply { tbn, mv } => cmd_apply(&tbn, &mv),
        Command::Playout {
            tbn,
            seed,
            max_plies,
        } => cmd_playout(&tbn, seed, max_plies),
        Command::Verify { check } => match check {
            VerifyCommand::Geometry => cmd_verify_geometry(),
            VerifyCommand::Placements { max_region } => cmd_verify_placements(max_region),
            VerifyCommand::Perft { depth } => cmd_verify_perft(depth),
        },
    }
}

/// Upper bounds reported in the literature for other solved and unsolved
/// games, printed as static reference annotations alongside ours.
const LITERATURE: &[(&str, &str, &str)] = &[
    ("Tablut", "1.4e27", "no solution"),
    ("Nine Men's Morris", "3e11", "strong solution"),
    ("English Draughts", "5e20", "weak solution"),
    ("International Draughts", "1e30", "no solution"),
    ("Othello", "1e28", "no solution"),
    ("Chess", "1e43 / 1e50", "no solution"),
    ("Go", "2e170", "no solution"),
];

fn cmd_bounds(format: Format) -> Result<()> {
    let report = bounds_report();
    match format {
        Format::Text => {
            println!("{:<18} {:>8} {:>10}  exact", "term", "display", "published");
            for e in report.entries() {
                println!(
                    "{:<18} {:>8} {:>10}  {}",
                    e.term.to_string(),
                    e.display,
                    e.published,
                    e.exact
                );
            }
            println!();
            println!("state-space upper bounds from the literature (reference, not computed):");
            for (game, bound, status) in LITERATURE {
                println!("  {game:<24} {bound:<12} {status}");
            }
        }
        Format::Json => {
            let mut record = serde_json::Map::new();
            for e in report.entries() {
                let mut fields = serde_json::Map::new();
                fields.insert("exact".into(), e.exact.to_string().into());
                fields.insert("display".into(), e.display.clone().into());
                fields.insert("published".into(), e.published.into());
                record.insert(e.term.to_string(), fields.into());
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Object(record))?
            );
        }
        Format::Csv => {
            println!("term,exact,display,published");
            for e in report.entries() {
                println!("{},{},{},{}", e.term, e.exact, e.display, e.published);
            }
        }
    }
    Ok(())
}

fn parse_position(tbn: &str) -> Result<Position> {
    tbn.parse::<Position>().context("parsing position")
}

fn cmd_legal(tbn: &str) -> Result<()> {
    let p = parse_position(tbn)?;
    for mv in legal_moves(&p)? {
        println!("{mv}");
    }
    Ok(())
}

fn cmd_apply(tbn: &str, mv: &str) -> Result<()> {
    let p = parse_position(tbn)?;
    let mv: Move = mv.parse().context("parsing move")?;
    let r = apply_move(&p, mv)?;
    let captured = if r.captured.is_empty() {
        "none".to_string()
    } else {
        r.captured
            .iter()
            .map(Coord::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("position: {}", r.next);
    println!("captures: {captured}");
    println!("outcome: {}", r.outcome);
    Ok(())
}

fn cmd_playout(tbn: &str, seed: u64, max_plies: usize) -> Result<()> {
    let p = parse_position(tbn)?;
    let trace = random_playout(&p, seed, max_plies);
    for (i, step) in trace.steps().iter().enumerate() {
        if step.captured.is_empty() {
            println!("{:>3}. {}", i + 1, step.mv);
        } else {
            let taken: Vec<String> = step.captured.iter().map(Coord::to_string).collect();
            println!("{:>3}. {} x{}", i + 1, step.mv, taken.join(",x"));
        }
    }
    println!("plies: {}", trace.plies());
    println!("final: {}", trace.final_position());
    println!("outcome: {}", trace.outcome());
    Ok(())
}

fn cmd_verify_geometry() -> Result<()> {
    let g = derive_geometry();
    let rows = [
        ("king_cells_total", g.king_cells_total, 45),
        ("king_cells_non_castle", g.king_cells_non_castle, 44),
        ("castle_adjacent_cells", g.castle_adjacent_cells, 4),
        ("camp_adjacent_king_cells", g.camp_adjacent_king_cells, 12),
        ("camp_capture_configs", g.camp_capture_configs, 20),
        ("ordinary_capture_cells", g.ordinary_capture_cells, 28),
        ("ordinary_capture_configs", g.ordinary_capture_configs, 56),
        ("escape_cells", g.escape_cells, 16),
    ];
    let mut passed = 0;
    for (name, derived, expected) in rows {
        let ok = derived == expected;
        passed += ok as usize;
        println!(
            "{name:<26} derived {derived:>3}  expected {expected:>3}  {}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!("geometry: {passed}/{} PASS", rows.len());
    if passed != rows.len() {
        bail!(
            "{} geometry rows disagree with the published constants",
            rows.len() - passed
        );
    }
    Ok(())
}

fn cmd_verify_placements(max_region: usize) -> Result<()> {
    if max_region > PLACEMENT_REGION_CAP {
        bail!("--max-region {max_region} exceeds the exhaustive cap of {PLACEMENT_REGION_CAP}");
    }
    let mut checks = 0usize;
    for n in 0..=max_region {
        let region: Vec<Coord> = Coord::all().take(n).collect();
        for b in 0..=n {
            for w in 0..=(n - b) {
                let enumerated = enumerate_placements(&region, b, w)?;
                let closed = multinomial(n, &[b, w, n - b - w])?;
                if enumerated != closed {
                    bail!(
                        "region {n}, {b} black, {w} white: enumerated {enumerated} \
                         but multinomial gives {closed}"
                    );
                }
                checks += 1;
            }
        }
        println!(
            "region {n:>2}: all {} piece splits agree",
            (n + 1) * (n + 2) / 2
        );
    }
    println!("placements: {checks} equalities hold");
    Ok(())
}

fn cmd_verify_perft(depth: usize) -> Result<()> {
    if depth > PERFT_DEPTH_CAP {
        bail!("--depth {depth} exceeds the cap of {PERFT_DEPTH_CAP}");
    }
    let p = tablut_core::initial_position();
    debug_assert_eq!(outcome(&p), Outcome::Ongoing);
    for d in 1..=depth {
        let started = Instant::now();
        let engine = perft(&p, d);
        let engine_time = started.elapsed();
        let scan = perft_scan(&p, d);
        let parallel = perft_parallel(&p, d);
        let rate = engine
            .to_string()
            .parse::<f64>()
            .map(|n| n / engine_time.as_secs_f64())
            .unwrap_or(f64::INFINITY);
        println!(
            "depth {d}: engine {engine}  scan {scan}  parallel {parallel}  ({rate:.0} sequences/s)"
        );
        if scan != engine {
            bail!("depth {d}: engine counts {engine} but the naive scanner counts {scan}");
        }
        if parallel != engine {
            bail!("depth {d}: sequential count {engine} but parallel count {parallel}");
        }
    }
    println!("perft: engine and scanner agree through depth {depth}");
    Ok(())
}
