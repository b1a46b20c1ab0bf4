//! `orbitope`: JSON front-end to the orbit-polytope library.
//!
//! Every subcommand prints one JSON document on stdout. Exit status is 0 on
//! success, 1 on a domain error (with `{"error": ...}` on stdout) and 2 on a
//! usage or input-schema error (with a diagnostic on stderr).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use orbitope::composition::{iterated_restrict, restrict_contract, Composition};
use orbitope::geometry::{composition_of_point, max_face_vertices, normally_equivalent, orbit_vertices, Point};
use orbitope::hcomp::{antipode, coproduct, inject, HopfElement};
use orbitope::invariants::{chi, chi_bruteforce, ChiReport};
use orbitope::monoid::count_structures;
use orbitope::nsym::{char_to_series, convolve, series_inverse, series_mul, CharacterSpec, NSymSeries};
use orbitope::{selftest, Bounds};

#[derive(Parser)]
#[command(name = "orbitope", version, about = "Exact combinatorics of orbit polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// JSON arguments are taken inline when they start with `{`, `[` or `"`,
/// and read from the named file otherwise.
#[derive(Subcommand)]
enum Command {
    /// Composition of a point (run lengths of its sorted coordinates).
    Classify {
        #[arg(long)]
        point: String,
    },
    /// All vertices of the orbit polytope of a point.
    Vertices {
        #[arg(long)]
        point: String,
    },
    /// Vertices of the face maximizing a linear functional.
    Maxface {
        #[arg(long)]
        point: String,
        #[arg(long)]
        functional: String,
    },
    /// Whether two orbit polytopes are normally equivalent.
    Normeq {
        #[arg(long, num_args = 1, required = true)]
        point: Vec<String>,
    },
    /// Restriction/contraction of a composition at a size, or iterated
    /// restriction along a size sequence.
    Delta {
        #[arg(long)]
        composition: String,
        #[arg(long, conflicts_with = "sizes", required_unless_present = "sizes")]
        size: Option<usize>,
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Coproduct in the Hopf algebra of compositions.
    Coproduct {
        #[arg(long)]
        composition: String,
    },
    /// Antipode of an element of the Hopf algebra of compositions.
    Antipode {
        #[arg(long)]
        element: String,
    },
    /// Polynomial invariant of the basic character.
    Chi {
        #[arg(long)]
        composition: String,
        /// Also print monomial coefficients.
        #[arg(long)]
        monomial: bool,
        /// Use the ordered-set-partition sum instead of the refinement formula.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Convolution of two characters and its ribbon series.
    Convolve {
        #[arg(long = "char", num_args = 1, required = true)]
        chars: Vec<String>,
        #[arg(long)]
        degree: usize,
    },
    /// Product of two truncated ribbon series.
    SeriesMul {
        #[arg(long, num_args = 1, required = true)]
        series: Vec<String>,
    },
    /// Inverse of a truncated ribbon series.
    SeriesInv {
        #[arg(long)]
        series: String,
    },
    /// Number of labeled structures on an n-element set.
    Count {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Runs the oracle-equivalence suites.
    Selftest {
        #[arg(long)]
        max_n: Option<usize>,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Domain(orbitope::Error),
}

impl From<orbitope::Error> for Failure {
    fn from(e: orbitope::Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn read_json(arg: &str) -> anyhow::Result<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with(['{', '[', '"']) {
        arg.to_string()
    } else {
        let path = PathBuf::from(arg);
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing JSON argument {arg:?}"))
}

fn parse<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    let value = read_json(arg).map_err(usage)?;
    serde_json::from_value(value).with_context(|| format!("invalid {what}")).map_err(usage)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn within(size: usize, bound: usize) -> Result<(), Failure> {
    if size > bound {
        return Err(orbitope::Error::BruteForceBound { size, bound }.into());
    }
    Ok(())
}

fn pair<T>(mut items: Vec<T>, flag: &str) -> Result<(T, T), Failure> {
    if items.len() != 2 {
        return Err(usage(anyhow::anyhow!("--{flag} must be given exactly twice")));
    }
    let second = items.pop().unwrap();
    Ok((items.pop().unwrap(), second))
}

/// Output document and whether the command succeeded.
fn dispatch(command: Command) -> Result<(Value, bool), Failure> {
    let bounds = Bounds::from_env();
    let value = match command {
        Command::Classify { point } => {
            let p: Point = parse(&point, "point")?;
            json!({ "composition": composition_of_point(&p) })
        }
        Command::Vertices { point } => {
            let p: Point = parse(&point, "point")?;
            within(p.dim(), bounds.geometry)?;
            let vertices = orbit_vertices(&p);
            json!({ "count": vertices.len(), "vertices": to_value(&vertices) })
        }
        Command::Maxface { point, functional } => {
            let p: Point = parse(&point, "point")?;
            let y: Point = parse(&functional, "functional")?;
            within(p.dim(), bounds.geometry)?;
            json!({ "vertices": to_value(&max_face_vertices(&p, &y)?) })
        }
        Command::Normeq { point } => {
            let (a, b) = pair(point, "point")?;
            let p: Point = parse(&a, "point")?;
            let q: Point = parse(&b, "point")?;
            json!({
                "equivalent": normally_equivalent(&p, &q)?,
                "compositions": [composition_of_point(&p), composition_of_point(&q)],
            })
        }
        Command::Delta { composition, size, sizes } => {
            let alpha: Composition = parse(&composition, "composition")?;
            match (size, sizes) {
                (Some(i), _) => {
                    let (restriction, contraction) = restrict_contract(&alpha, i)?;
                    json!({ "restriction": restriction, "contraction": contraction })
                }
                (None, Some(sizes)) => {
                    let sizes: Vec<usize> = parse(&sizes, "size sequence")?;
                    json!({ "parts": iterated_restrict(&alpha, &sizes)? })
                }
                (None, None) => return Err(usage(anyhow::anyhow!("one of --size or --sizes is required"))),
            }
        }
        Command::Coproduct { composition } => {
            let alpha: Composition = parse(&composition, "composition")?;
            json!({ "terms": to_value(&coproduct(&inject(&alpha))) })
        }
        Command::Antipode { element } => {
            let x: HopfElement = parse(&element, "Hopf element")?;
            json!({ "antipode": to_value(&antipode(&x)) })
        }
        Command::Chi { composition, monomial, bruteforce } => {
            let alpha: Composition = parse(&composition, "composition")?;
            let poly = if bruteforce { chi_bruteforce(&alpha, bounds.chi)? } else { chi(&alpha) };
            to_value(&ChiReport::new(poly, monomial))
        }
        Command::Convolve { chars, degree } => {
            let (a, b) = pair(chars, "char")?;
            let zeta = parse::<CharacterSpec>(&a, "character")?.build(Some(degree))?;
            let psi = parse::<CharacterSpec>(&b, "character")?.build(Some(degree))?;
            let product = convolve(&zeta, &psi);
            json!({ "character": to_value(&product), "series": to_value(&char_to_series(&product, degree)?) })
        }
        Command::SeriesMul { series } => {
            let (a, b) = pair(series, "series")?;
            let f: NSymSeries = parse(&a, "series")?;
            let g: NSymSeries = parse(&b, "series")?;
            json!({ "series": to_value(&series_mul(&f, &g)?) })
        }
        Command::SeriesInv { series } => {
            let f: NSymSeries = parse(&series, "series")?;
            json!({ "series": to_value(&series_inverse(&f)?) })
        }
        Command::Count { n } => {
            let n = usize::try_from(n).map_err(|_| orbitope::Error::NegativeSize(n))?;
            let count = count_structures(n);
            let count = match u64::try_from(&count) {
                Ok(small) => json!(small),
                Err(_) => json!(count.to_string()),
            };
            json!({ "count": count })
        }
        Command::Selftest { max_n } => {
            let report = selftest::run(max_n.unwrap_or(bounds.chi.min(6)));
            return Ok((to_value(&report), report.ok()));
        }
    };
    Ok((value, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((value, ok)) => {
            println!("{value}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
