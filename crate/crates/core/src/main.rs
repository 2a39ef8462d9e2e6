use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use collatz_repr::rational::decimal_string;
use collatz_repr::verify::verify;
use collatz_repr::{
    approximate, digits_of, emit, find_absolute_loops, fractal_graph, invert, point_of, represent,
    EventuallyPeriodicSeq, FiniteSeq, Format, OddRational, Representation, Viewport,
};

#[derive(Parser, Debug)]
#[command(
    name = "collatz-repr",
    version,
    about = "Collatz representations of odd rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Collatz representation of a rational
    Repr {
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        a: BigRational,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Rational with the given eventually periodic representation
    Invert {
        #[arg(value_parser = periodic)]
        seq: EventuallyPeriodicSeq,
        /// Append a decimal rendering with this many significant digits
        #[arg(long)]
        dec: Option<usize>,
    },
    /// Point P(A) = (C^-1[A,(2)], C^-1[A,(1)]) for A over {1,2}
    Point {
        #[arg(value_parser = finite)]
        seq: FiniteSeq,
        #[arg(long)]
        dec: Option<usize>,
    },
    /// Emit the graph P_n of all points with |A| <= depth
    Fractal {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        #[arg(long, value_parser = viewport, allow_hyphen_values = true)]
        viewport: Option<[BigRational; 4]>,
        #[arg(long, default_value_t = 12)]
        dec: usize,
        /// Output file, `-` for standard output
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Approximate z <= -1 from above by C^-1[A,(1)] with A over {1,2}
    Approx {
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        z: BigRational,
        #[arg(long, value_parser = rational)]
        eps: BigRational,
        #[arg(long)]
        trace: bool,
        /// Also print the first K digits of the infinite expansion
        #[arg(long)]
        digits: Option<usize>,
        #[arg(long, default_value_t = 12)]
        dec: usize,
    },
    /// First K digits of the infinite {1,2}-expansion of z <= -1
    Digits {
        #[arg(value_parser = rational, allow_hyphen_values = true)]
        z: BigRational,
        #[arg(long)]
        digits: usize,
    },
    /// Search odd integers in [min, max] for absolutely periodic elements
    Loops {
        #[arg(long, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, allow_hyphen_values = true)]
        max: i64,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = LoopFormat::Text)]
        format: LoopFormat,
    },
    /// Run the invariant suites over {1,2}^{<=depth}
    Verify {
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Svg,
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Svg => Format::Svg,
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LoopFormat {
    Text,
    Json,
}

fn rational(s: &str) -> Result<BigRational, String> {
    collatz_repr::parse_rational(s).map_err(|e| e.to_string())
}

fn periodic(s: &str) -> Result<EventuallyPeriodicSeq, String> {
    s.parse().map_err(|e: collatz_repr::Error| e.to_string())
}

fn finite(s: &str) -> Result<FiniteSeq, String> {
    s.parse().map_err(|e: collatz_repr::Error| e.to_string())
}

/// Four comma-separated rationals; emptiness is checked later as a domain error.
fn viewport(s: &str) -> Result<[BigRational; 4], String> {
    let parts = s
        .split(',')
        .map(collatz_repr::parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    parts
        .try_into()
        .map_err(|_| format!("viewport `{s}` needs xmin,xmax,ymin,ymax"))
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<collatz_repr::Error> for Failure {
    fn from(e: collatz_repr::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn odd(r: BigRational) -> Result<OddRational, Failure> {
    Ok(OddRational::from_ratio(r)?)
}

fn annotate(r: &BigRational, dec: Option<usize>) -> String {
    match dec {
        Some(p) => format!("{r} ~ {}", decimal_string(r, p)),
        None => r.to_string(),
    }
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Repr { a, max_steps } => {
            let a = odd(a)?;
            match represent(&a, max_steps) {
                Representation::Periodic(s) => writeln!(out, "{s}").unwrap(),
                Representation::Truncated {
                    prefix,
                    last_iterate,
                    steps_used,
                } => writeln!(
                    out,
                    "truncated after {steps_used} steps: {prefix} last iterate {last_iterate}"
                )
                .unwrap(),
                Representation::Degenerate { prefix } => {
                    return Err(Failure::Domain(format!(
                        "trajectory reaches -1/3 after {prefix}; 3a+1 vanishes there"
                    )))
                }
            }
        }
        Command::Invert { seq, dec } => {
            let a = invert(&seq)?;
            writeln!(out, "{}", annotate(a.as_ratio(), dec)).unwrap();
        }
        Command::Point { seq, dec } => {
            let p = point_of(&seq)?;
            writeln!(
                out,
                "({}, {})",
                annotate(p.x.as_ratio(), dec),
                annotate(p.y.as_ratio(), dec)
            )
            .unwrap();
        }
        Command::Fractal {
            depth,
            format,
            viewport,
            dec,
            output,
        } => {
            if matches!(format, OutFormat::Svg) && output.is_none() {
                return Err(Failure::Usage(
                    "svg output requires -o <file> (use `-o -` for standard output)".into(),
                ));
            }
            let viewport = match viewport {
                Some([xmin, xmax, ymin, ymax]) => Viewport::new(xmin, xmax, ymin, ymax)?,
                None => Viewport::default(),
            };
            let graph = fractal_graph(depth)?;
            let bytes = emit(&graph, format.into(), &viewport, dec)?;
            match output {
                Some(path) if path.as_os_str() != "-" => std::fs::write(path, bytes)?,
                _ => out.push_str(&String::from_utf8(bytes).expect("utf-8 output")),
            }
        }
        Command::Approx {
            z,
            eps,
            trace,
            digits,
            dec,
        } => {
            let res = approximate(&z, &eps)?;
            writeln!(out, "sequence: {}", res.sequence).unwrap();
            writeln!(out, "value: {}", res.value).unwrap();
            writeln!(out, "error: {}", res.error).unwrap();
            writeln!(
                out,
                "value_dec: {}",
                decimal_string(res.value.as_ratio(), dec)
            )
            .unwrap();
            writeln!(out, "error_dec: {}", decimal_string(&res.error, dec)).unwrap();
            writeln!(out, "rounds: {}", res.rounds()).unwrap();
            if trace {
                for (i, r) in res.trace.iter().enumerate() {
                    writeln!(
                        out,
                        "round {}: twos {} ones {} error {} -> {}",
                        i + 1,
                        r.twos_appended,
                        r.ones_appended,
                        r.error_before,
                        r.error_after
                    )
                    .unwrap();
                }
            }
            if let Some(k) = digits {
                writeln!(out, "digits: {}", digits_of(&z, k)?).unwrap();
            }
        }
        Command::Digits { z, digits } => {
            writeln!(out, "{}", digits_of(&z, digits)?).unwrap();
        }
        Command::Loops {
            min,
            max,
            max_steps,
            format,
        } => {
            if min > max {
                return Err(Failure::Usage(format!("--min {min} exceeds --max {max}")));
            }
            let search = find_absolute_loops(min, max, max_steps);
            match format {
                LoopFormat::Text => {
                    writeln!(
                        out,
                        "scanned {} odd integers in [{min}, {max}], max steps {max_steps}",
                        search.scanned
                    )
                    .unwrap();
                    for (i, l) in search.loops.iter().enumerate() {
                        let members: Vec<String> =
                            l.members.iter().map(|m| m.to_string()).collect();
                        writeln!(
                            out,
                            "loop {}: [{}] cycle {}",
                            i + 1,
                            members.join(","),
                            EventuallyPeriodicSeq::pure(l.quotient_cycle.clone())?
                        )
                        .unwrap();
                    }
                    let undecided: Vec<String> =
                        search.undecided.iter().map(|u| u.to_string()).collect();
                    writeln!(
                        out,
                        "undecided: {} [{}]",
                        undecided.len(),
                        undecided.join(",")
                    )
                    .unwrap();
                }
                LoopFormat::Json => {
                    let doc = json!({
                        "min": min,
                        "max": max,
                        "max_steps": max_steps,
                        "scanned": search.scanned,
                        "loops": search.loops.iter().map(|l| json!({
                            "members": l.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                            "quotient_cycle": l.quotient_cycle.values(),
                            "canonical": l.canonical,
                        })).collect::<Vec<_>>(),
                        "undecided": search.undecided.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
                }
            }
        }
        Command::Verify { depth } => {
            let started = Instant::now();
            let report = verify(depth)?;
            // runtime goes to stderr so stdout stays byte-identical across runs
            let text = report.to_string();
            for line in text.lines().filter(|l| !l.starts_with("runtime")) {
                writeln!(out, "{line}").unwrap();
            }
            eprintln!("runtime {:.3} s", started.elapsed().as_secs_f64());
            if !report.all_passed() {
                return Err(Failure::Domain("verification failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => Cli::command()
            .error(clap::error::ErrorKind::ArgumentConflict, msg)
            .exit(),
    }
}
