use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pauli_lgr::orbits::MAX_TABLE_QUBITS;
use pauli_lgr::verify::{self, Status, Suite};
use pauli_lgr::{
    all_pluecker_relations, cayley_quadric, enumerate_generators, generator_count,
    generator_from_operators, is_separable, lagrangian_constraints, named_quadrics, orbit_table,
    par, parse_label, pluecker_relations, point_of, quadric_orbit, to_observable, Correspondence,
    Error, ProjPoint, Stratification, TRankTable, MAX_ENUM_QUBITS,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "pauli-lgr",
    version,
    about = "Maximal commuting Pauli sets and the binary Lagrangian Grassmannian"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Number of maximal commuting sets per qubit count.
    Counts {
        /// Largest N to enumerate.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// List every maximal commuting set on N qubits.
    Generators {
        #[arg(long)]
        n: usize,
    },
    /// Map a set of commuting operators to its point.
    Project {
        /// Comma- or space-separated Pauli labels, e.g. "ZX,XZ".
        #[arg(long)]
        ops: String,
    },
    /// Recover the commuting set of a point.
    Lift {
        #[arg(long)]
        n: usize,
        /// Point as bits in display order ("[1:0:1:0]", "1010") or hex ("0xa").
        #[arg(long)]
        point: String,
    },
    /// The full correspondence: every commuting set with its point.
    Map {
        #[arg(long)]
        n: usize,
    },
    /// Plücker relations over GF(2).
    Relations {
        #[arg(long)]
        n: usize,
        /// Every distinct relation instead of an independent basis.
        #[arg(long)]
        all: bool,
    },
    /// Linear isotropy constraints on Plücker coordinates.
    Constraints {
        #[arg(long)]
        n: usize,
    },
    /// Orbits of the local Clifford group with qubit permutations.
    Orbits {
        #[arg(long)]
        n: usize,
    },
    /// Orbit table with representatives, observables and ranks.
    Tables {
        #[arg(long)]
        n: usize,
        /// Include orbits outside the image.
        #[arg(long)]
        all: bool,
    },
    /// Tensor rank and related invariants of a point.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        point: String,
    },
    /// Quadrics defining the image.
    Quadrics {
        #[arg(long)]
        n: usize,
    },
    /// The hyperdeterminant quadric and its orbit.
    Cayley {
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite; exits with status 5 on any failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        n: usize,
    },
}

/// A command result: named columns, one JSON value per cell.
struct Output {
    headers: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    failed: bool,
}

impl Output {
    fn new(headers: &[&'static str]) -> Self {
        Output {
            headers: headers.to_vec(),
            rows: Vec::new(),
            failed: false,
        }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let items: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            self.headers
                                .iter()
                                .map(|h| h.to_string())
                                .zip(r.iter().cloned())
                                .collect::<Map<_, _>>(),
                        )
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&items).expect("json values serialise");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.headers.join(",") + "\n";
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|v| csv_cell(&plain(v))).collect();
                    s += &cells.join(",");
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let cells: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(plain).collect())
                    .collect();
                let mut widths: Vec<usize> =
                    self.headers.iter().map(|h| h.chars().count()).collect();
                for r in &cells {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |items: Vec<String>| -> String {
                    let padded: Vec<String> = items
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut s = line(self.headers.iter().map(|h| h.to_string()).collect());
                for r in cells {
                    s += &line(r);
                }
                s
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidLabel { .. }
        | Error::InvalidPoint { .. }
        | Error::UnsupportedN { .. }
        | Error::MixedQubitCounts { .. }
        | Error::DimensionMismatch { .. }
        | Error::NotInImage(_) => 2,
        Error::NonCommuting { .. } => 3,
        Error::NotMaximal { .. } => 4,
        _ => 1,
    }
}

fn labels(points: impl IntoIterator<Item = pauli_lgr::PauliPoint>) -> Value {
    Value::Array(
        points
            .into_iter()
            .map(|p| Value::String(p.label()))
            .collect(),
    )
}

fn point_cells(p: &ProjPoint) -> [Value; 3] {
    [
        json!(p.to_string()),
        json!(p.hex()),
        json!(to_observable(p).label()),
    ]
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::Counts { max_n } => {
            let mut out = Output::new(&["n", "formula", "enumerated"]);
            for n in 1..=max_n {
                let enumerated = if n <= MAX_ENUM_QUBITS {
                    json!(enumerate_generators(n)?.len())
                } else {
                    Value::Null
                };
                out.push(vec![json!(n), json!(generator_count(n)), enumerated]);
            }
            out
        }
        Command::Generators { n } => {
            let mut out = Output::new(&["index", "basis"]);
            for (i, g) in enumerate_generators(n)?.into_iter().enumerate() {
                out.push(vec![json!(i + 1), labels(g.basis_operators())]);
            }
            out
        }
        Command::Project { ops } => {
            let parsed = ops
                .split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(parse_label)
                .collect::<Result<Vec<_>, _>>()?;
            let g = generator_from_operators(&parsed)?;
            let p = point_of(&g)?;
            let mut out = Output::new(&["basis", "point", "hex", "observable"]);
            let [a, b, c] = point_cells(&p);
            out.push(vec![labels(g.basis_operators()), a, b, c]);
            out
        }
        Command::Lift { n, point } => {
            let p = ProjPoint::parse(n, &point)?;
            let g = if p.on_chart() {
                pauli_lgr::lift_chart(&p)?
            } else {
                Correspondence::build(n)?.lift(&p)?
            };
            let mut out = Output::new(&["point", "hex", "observable", "basis"]);
            let [a, b, c] = point_cells(&p);
            out.push(vec![a, b, c, labels(g.basis_operators())]);
            out
        }
        Command::Map { n } => {
            let corr = Correspondence::build(n)?;
            let mut out = Output::new(&["index", "basis", "point", "hex", "observable"]);
            for (i, (g, p)) in corr.generators().iter().zip(corr.points()).enumerate() {
                let [a, b, c] = point_cells(p);
                out.push(vec![json!(i + 1), labels(g.basis_operators()), a, b, c]);
            }
            out
        }
        Command::Relations { n, all } => {
            let mut out = Output::new(&["index", "terms", "relation"]);
            let rels = if all {
                all_pluecker_relations(n)?
            } else {
                pluecker_relations(n)?
            };
            for (i, r) in rels.iter().enumerate() {
                out.push(vec![json!(i + 1), json!(r.len()), json!(r.to_string())]);
            }
            out
        }
        Command::Constraints { n } => {
            let mut out = Output::new(&["index", "terms", "constraint"]);
            for (i, c) in lagrangian_constraints(n)?.iter().enumerate() {
                out.push(vec![json!(i + 1), json!(c.len()), json!(c.to_string())]);
            }
            out
        }
        Command::Orbits { n } => {
            let strat = Stratification::compute(n)?;
            let image = if n >= 2 {
                strat.image_orbits(&Correspondence::build(n)?)?
            } else {
                Vec::new()
            };
            let mut out = Output::new(&[
                "orbit_id",
                "size",
                "representative_bits",
                "observable",
                "in_image",
            ]);
            for o in strat.orbits() {
                out.push(vec![
                    json!(o.id),
                    json!(o.size),
                    json!(o.representative.to_string()),
                    json!(to_observable(&o.representative).label()),
                    json!(image.contains(&o.id)),
                ]);
            }
            out
        }
        Command::Tables { n, all } => {
            let corr = Correspondence::build(n)?;
            let mut out = Output::new(&[
                "orbit_id",
                "label",
                "size",
                "representative_bits",
                "observable",
                "t_rank",
                "e_rank",
                "sample_commuting_set",
            ]);
            for r in orbit_table(&corr)? {
                if !all && !r.in_image {
                    continue;
                }
                out.push(vec![
                    json!(r.orbit_id),
                    json!(r.label),
                    json!(r.size),
                    json!(r.representative.to_string()),
                    json!(r.observable.label()),
                    json!(r.t_rank),
                    json!(r.e_rank),
                    labels(r.commuting_set),
                ]);
            }
            out
        }
        Command::Rank { n, point } => {
            let p = ProjPoint::parse(n, &point)?;
            let t = TRankTable::build(n)?;
            let strat = Stratification::compute(n)?;
            let id = strat.orbit_id(&p);
            let (in_image, e) = if n >= 2 {
                let corr = Correspondence::build(n)?;
                let inside = corr.contains(&p);
                (
                    inside,
                    if inside {
                        Some(pauli_lgr::e_rank(&p, &corr)?)
                    } else {
                        None
                    },
                )
            } else {
                (false, None)
            };
            let mut out = Output::new(&[
                "point",
                "observable",
                "t_rank",
                "separable",
                "orbit_id",
                "orbit_size",
                "in_image",
                "e_rank",
            ]);
            out.push(vec![
                json!(p.to_string()),
                json!(to_observable(&p).label()),
                json!(t.rank(&p)),
                json!(is_separable(&p)),
                json!(id),
                json!(strat.orbit(id).size),
                json!(in_image),
                json!(e),
            ]);
            out
        }
        Command::Quadrics { n } => {
            let mut out = Output::new(&["name", "quadric"]);
            for (name, q) in named_quadrics(n)? {
                out.push(vec![json!(name), json!(q.to_string())]);
            }
            out
        }
        Command::Cayley { n } => {
            let q = cayley_quadric(n)?;
            let named = if n <= MAX_TABLE_QUBITS {
                named_quadrics(n)?
            } else {
                Vec::new()
            };
            let mut out = Output::new(&["index", "quadric", "name"]);
            for (i, f) in quadric_orbit(&q).iter().enumerate() {
                let name = named.iter().find(|(_, g)| g == f).map(|(k, _)| k.clone());
                out.push(vec![json!(i + 1), json!(f.to_string()), json!(name)]);
            }
            out
        }
        Command::Verify { suite, n } => {
            let checks = verify::run(suite, n)?;
            let mut out = Output::new(&["status", "suite", "check", "detail"]);
            out.failed = checks.iter().any(|c| c.status == Status::Fail);
            for c in checks {
                out.push(vec![
                    json!(c.status.to_string()),
                    json!(c.suite),
                    json!(c.name),
                    json!(c.detail),
                ]);
            }
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if !par::is_parallel() {
            eprintln!("warning: built without the parallel feature, --threads ignored");
        } else if let Err(e) = par::set_threads(t) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let output = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = output.render(cli.format);
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if output.failed {
        ExitCode::from(5)
    } else {
        ExitCode::SUCCESS
    }
}
