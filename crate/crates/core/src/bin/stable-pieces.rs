use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use stable_pieces::cells::cellular_report;
use stable_pieces::closure::{hasse_diagram, piece_closure};
use stable_pieces::format::{self, Format};
use stable_pieces::order::{geq_twisted, Method, PiecePoset};
use stable_pieces::session::{load_datum, Session};
use stable_pieces::verify::{run, standard_settings, Check, Outcome, Setting};
use stable_pieces::{CartanDatum, Error, PieceIndex};

/// Largest group the `verify` command accepts for a user-supplied datum.
const VERIFY_ORDER_LIMIT: usize = 5000;

#[derive(Parser)]
#[command(name = "stable-pieces", version, about = "G-stable pieces of wonderful compactifications")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Root datum by type, e.g. A2, G2, A1xA1.
    #[arg(long = "type", value_name = "TYPE", global = true, conflicts_with = "cartan")]
    kind: Option<String>,
    /// JSON datum document: {"cartan": [[..]]}, {"type": "A", "rank": n}, or a list of factors.
    #[arg(long, value_name = "FILE", global = true)]
    cartan: Option<PathBuf>,
    /// Diagram automorphism as 1-based pairs, e.g. "1:2,2:1", or "id".
    #[arg(long, global = true, default_value = "id")]
    automorphism: String,
    /// Output format: json, csv, dot or text.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Directory for the Bruhat matrix and piece list caches.
    #[arg(long, value_name = "DIR", global = true)]
    cache_dir: Option<PathBuf>,
    /// Report timings and cache activity on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// List all pieces with J_inf and dimension.
    Pieces,
    /// List the pieces in the closure of one piece.
    Closure {
        #[arg(long)]
        piece: String,
    },
    /// Covering relations of the closure order on all pieces (DOT by default).
    Hasse,
    /// Cellular-decomposition report for the closure of one piece.
    Cells {
        #[arg(long)]
        piece: String,
    },
    /// The closure order as a full relation; with --piece, the elements
    /// above the piece in the twisted order; with --bruhat, the Bruhat order.
    Order {
        #[arg(long, conflicts_with = "bruhat")]
        piece: Option<String>,
        #[arg(long)]
        bruhat: bool,
    },
    /// Cross-check the fast algorithms against the oracles.
    Verify {
        /// Largest rank among the standard data (ignored with --type/--cartan).
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Restrict to these checks (by short name).
        #[arg(long)]
        check: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Property,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = execute(&cli, &mut out);
    // Output is assembled in full before it is written.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn datum(c: &Common) -> Result<Option<CartanDatum>, Failure> {
    Ok(match (&c.kind, &c.cartan) {
        (Some(t), _) => Some(CartanDatum::parse_type(t)?),
        (None, Some(path)) => Some(load_datum(path)?),
        (None, None) => None,
    })
}

fn session(c: &Common) -> Result<Session, Failure> {
    let d = datum(c)?.ok_or_else(|| Failure::Usage("one of --type or --cartan is required".into()))?;
    Ok(Session::new(d, &c.automorphism, c.cache_dir.clone())?)
}

fn execute(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let c = &cli.common;
    let start = Instant::now();
    let fmt = |default: Format| c.format.unwrap_or(default);
    if let Command::Verify { max_rank, check } = &cli.command {
        return verify(c, *max_rank, check, fmt(Format::Text), out);
    }
    let s = session(c)?;
    let (g, d) = (s.group(), s.delta());
    let piece = |text: &str| -> Result<PieceIndex, Failure> { Ok(PieceIndex::parse(text, g, d)?) };
    *out = match &cli.command {
        Command::Pieces => format::pieces(g, d, s.pieces(), fmt(Format::Text))?,
        Command::Closure { piece: p } => {
            let p = piece(p)?;
            let closure = piece_closure(g, d, &p);
            match fmt(Format::Text) {
                Format::Dot => {
                    let (nodes, edges) = hasse_diagram(g, d, &closure);
                    format::relation(g, &nodes, &edges, Format::Dot)?
                }
                f => format::pieces(g, d, &closure, f)?,
            }
        }
        Command::Hasse => {
            let (nodes, edges) = hasse_diagram(g, d, s.pieces());
            format::relation(g, &nodes, &edges, fmt(Format::Dot))?
        }
        Command::Cells { piece: p } => format::cells(g, &cellular_report(g, d, &piece(p)?), fmt(Format::Text))?,
        Command::Order { bruhat: true, .. } => format::bruhat(g, s.bruhat(), fmt(Format::Text))?,
        Command::Order { piece: Some(p), .. } => {
            let p = piece(p)?;
            let mut above: Vec<_> = g
                .elements()
                .iter()
                .filter(|u| geq_twisted(g, d, u, &p, Method::Conjugate))
                .cloned()
                .collect();
            g.sort_canonical(&mut above);
            format::elements(g, &above, fmt(Format::Text))?
        }
        Command::Order { piece: None, .. } => {
            let poset = PiecePoset::new(g, d, s.pieces().to_vec());
            let n = poset.len();
            let strict: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && poset.leq(a, b))
                .collect();
            format::relation(g, poset.pieces(), &strict, fmt(Format::Text))?
        }
        Command::Verify { .. } => unreachable!("handled above"),
    };
    if c.verbose > 0 {
        for line in s.take_log() {
            eprintln!("{line}");
        }
        eprintln!("done in {:.3?}", start.elapsed());
    }
    Ok(())
}

fn verify(c: &Common, max_rank: usize, only: &[String], f: Format, out: &mut String) -> Result<(), Failure> {
    let checks: Vec<Check> = if only.is_empty() {
        Check::ALL.to_vec()
    } else {
        only.iter()
            .map(|name| {
                Check::ALL
                    .into_iter()
                    .find(|k| k.slug() == name)
                    .ok_or_else(|| Failure::Usage(format!("unknown check {name:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let settings: Vec<Setting> = match datum(c)? {
        Some(d) => {
            let s = Session::new(d, &c.automorphism, None)?;
            if s.group().order() > VERIFY_ORDER_LIMIT {
                return Err(Failure::Usage(format!(
                    "group order {} exceeds the verification limit {VERIFY_ORDER_LIMIT}",
                    s.group().order()
                )));
            }
            let label = match &c.kind {
                Some(t) => format!("{t} delta={}", s.delta()),
                None => format!("cartan delta={}", s.delta()),
            };
            let (g, delta) = s.into_parts();
            vec![Setting::from_parts(label, g, delta)]
        }
        None => standard_settings(max_rank)
            .into_iter()
            .map(|(t, d)| Setting::new(t, d))
            .collect::<Result<_, _>>()?,
    };
    let jobs: Vec<(&Setting, Check)> = settings.iter().flat_map(|s| checks.iter().map(move |&k| (s, k))).collect();
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .map(|&(s, k)| {
            let t = Instant::now();
            let o = run(k, s);
            if c.verbose > 0 {
                eprintln!("{} {}: {:.3?}", s.label, k.slug(), t.elapsed());
            }
            o
        })
        .collect();
    *out = format::verification(&outcomes, f)?;
    if outcomes.iter().all(Outcome::passed) {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}
