use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubicy_cli::{batch_lines, run, Command, Format, Report, Request};

#[derive(Parser)]
#[command(
    name = "cubicy",
    version,
    about = "Cubic Calabi-Yau algebras on two generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Most square roots a single computation may adjoin.
    #[arg(long, default_value_t = 4, global = true)]
    tower_depth: usize,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Run once per line of this file, taking the line as the potential.
    #[arg(long, global = true)]
    batch: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Potential {
    /// A quartic such as `w1 - 2*w2`; read from stdin when omitted.
    potential: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Place a potential in the classification.
    Classify(Potential),
    /// Decide the Calabi-Yau property.
    CyCheck(Potential),
    /// Point scheme and its curve type.
    PointScheme(Potential),
    /// The shift map at a point `(a:b),(c:d)`.
    Tau {
        #[command(flatten)]
        w: Potential,
        #[arg(long)]
        point: String,
    },
    /// Homological determinant of an automorphism, or a search for one.
    Hdet {
        #[command(flatten)]
        w: Potential,
        /// `[[a,b],[c,d]]`, sending x to ax+cy and y to bx+dy.
        #[arg(long)]
        sigma: Option<String>,
        /// Random automorphisms to sample when no sigma is given.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Whether two potentials give isomorphic algebras.
    Equiv { first: String, second: String },
    /// Three-generator presentation with z in degree 2.
    PresentDq(Potential),
    /// Clifford-type presentation for potentials in Sym^4.
    PresentClifford(Potential),
    /// Graded dimensions of the algebra.
    Hilbert {
        #[command(flatten)]
        w: Potential,
        /// Cubic relations separated by `;`, instead of a potential.
        #[arg(long)]
        relations: Option<String>,
    },
    /// Ideal membership of an element.
    Member {
        #[command(flatten)]
        w: Potential,
        #[arg(long)]
        element: String,
        #[arg(long)]
        relations: Option<String>,
    },
}

fn request(cli: &Cli) -> Request {
    let equiv;
    let (command, w) = match &cli.command {
        Cmd::Equiv { first, .. } => {
            equiv = Potential {
                potential: Some(first.clone()),
            };
            (Command::Equiv, &equiv)
        }
        Cmd::Classify(w) => (Command::Classify, w),
        Cmd::CyCheck(w) => (Command::CyCheck, w),
        Cmd::PointScheme(w) => (Command::PointScheme, w),
        Cmd::Tau { w, .. } => (Command::Tau, w),
        Cmd::Hdet { w, .. } => (Command::Hdet, w),
        Cmd::PresentDq(w) => (Command::PresentDq, w),
        Cmd::PresentClifford(w) => (Command::PresentClifford, w),
        Cmd::Hilbert { w, .. } => (Command::Hilbert, w),
        Cmd::Member { w, .. } => (Command::Member, w),
    };
    let mut req = Request::new(command, "");
    req.potential = w.potential.clone();
    req.max_degree = cli.max_degree;
    req.tower_depth = cli.tower_depth;
    req.seed = cli.seed;
    match &cli.command {
        Cmd::Tau { point, .. } => req.point = Some(point.clone()),
        Cmd::Hdet { sigma, samples, .. } => {
            req.sigma = sigma.clone();
            req.samples = *samples;
        }
        Cmd::Equiv { second, .. } => req.other = Some(second.clone()),
        Cmd::Hilbert { relations, .. } => req.relations = relations.clone(),
        Cmd::Member {
            element, relations, ..
        } => {
            req.element = Some(element.clone());
            req.relations = relations.clone();
        }
        _ => {}
    }
    req
}

fn read_stdin() -> std::io::Result<String> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s)?;
    Ok(s.trim().to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let base = request(&cli);
    let reports: Vec<Report> = if let Some(path) = &cli.batch {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("cubicy: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        batch_lines(&text)
            .map(|line| {
                let mut req = base.clone();
                req.potential = Some(line.to_string());
                run(&req)
            })
            .collect()
    } else {
        let mut req = base;
        let needs_potential = req.relations.is_none();
        if req.potential.is_none() && needs_potential {
            match read_stdin() {
                Ok(s) => req.potential = Some(s),
                Err(e) => {
                    eprintln!("cubicy: cannot read stdin: {e}");
                    return ExitCode::from(1);
                }
            }
        }
        vec![run(&req)]
    };
    match (format, cli.batch.is_some()) {
        (Format::Json, true) => {
            let all: Vec<_> = reports.iter().map(Report::to_json).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&all).expect("serializable")
            );
        }
        _ => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", r.render(format));
            }
        }
    }
    for r in &reports {
        if let Some(e) = &r.error {
            eprintln!("cubicy: {} ({})", e.message, e.code);
        }
    }
    let code = reports.iter().map(Report::exit_code).max().unwrap_or(0);
    ExitCode::from(code as u8)
}
