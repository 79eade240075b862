//! The `depthposet` command line.
//!
//! Exit codes: 0 on success, 1 on bad input or usage, 2 when `verify`
//! finds a mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cancellation::{cancel, cancel_complex, cancel_shallow_checked, is_shallow, shallow_pairs, ShallowPair};
use crate::complex::{betti, cells_per_dimension, Filter, LefschetzComplex};
use crate::depth_poset::{book_keeping, build_depth_poset, order_pi, BirthDeathPair};
use crate::emit;
use crate::error::{Error, Result};
use crate::gf2::{standard_reduction, OrderedBoundaryMatrix};
use crate::io::{self, Loaded};
use crate::oracle::{self, DEFAULT_CAP};

#[derive(Debug, Parser)]
#[command(name = "depthposet", version, about = "Persistence pairs, shallow cancellations and depth posets of filtered Lefschetz complexes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Break ties in filter values instead of rejecting them.
    #[arg(long, global = true)]
    perturb: bool,

    /// Print the ordered boundary matrix (grid and coordinate list) first.
    #[arg(long, global = true)]
    dump_matrix: bool,

    /// Run the expensive postcondition checks.
    #[arg(long, global = true)]
    debug_check: bool,
}

#[derive(Debug, Args)]
struct Input {
    /// Complex file (JSON).
    file: PathBuf,
    /// Filter file `{"values":[...]}`, overriding values in the complex file.
    #[arg(long)]
    filter: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Dot,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a complex (and its filter, if any).
    Validate(Input),
    /// Birth-death pairs and essential cells.
    Pairs {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Shallow pairs.
    Shallow {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Cancel facet-cofacet pairs in order and write the quotient.
    Cancel {
        #[command(flatten)]
        input: Input,
        /// A pair `facet,cofacet` by label or id; repeat for a sequence.
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        /// Write the quotient here; the Betti report then goes to stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The depth poset.
    Depth {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "dot")]
        format: DiagramFormat,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The special shallow orders: by decreasing birth, by increasing death,
    /// by persistence.
    Orders {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Compare the book-keeping poset with brute-force enumeration on
    /// seeded random instances.
    Verify {
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_bd: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Generate a random filtered flag complex.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Mismatch) => 2,
    }
}

fn load_input(cli: &Cli, input: &Input, out: &mut dyn Write) -> Result<Loaded> {
    let loaded = io::load(&input.file, input.filter.as_deref(), cli.perturb)?;
    if cli.dump_matrix {
        if let Some(filter) = &loaded.filter {
            let m = OrderedBoundaryMatrix::build(&loaded.complex, filter);
            write!(out, "{}", m.dump_grid(&loaded.complex))?;
            write!(out, "{}", m.dump_coordinates(&loaded.complex))?;
        }
    }
    Ok(loaded)
}

fn require_filter(loaded: Loaded, file: &Path) -> Result<(LefschetzComplex, Filter)> {
    match loaded.filter {
        Some(f) => Ok((loaded.complex, f)),
        None => Err(Error::Format(format!(
            "{} has no filter values; add \"value\" to every cell or pass --filter",
            file.display()
        ))),
    }
}

fn write_target(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pair_json(complex: &LefschetzComplex, p: &BirthDeathPair) -> serde_json::Value {
    serde_json::json!({
        "birth": complex.label(p.birth),
        "death": complex.label(p.death),
        "dim": p.dim,
        "birth_value": p.birth_value,
        "death_value": p.death_value,
        "persistence": p.persistence,
    })
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::result::Result<(), Failure> {
    match &cli.command {
        Command::Validate(input) => {
            let loaded = load_input(cli, input, out)?;
            let c = &loaded.complex;
            writeln!(
                out,
                "valid: {} cells {:?} by dimension, {} incidences, betti {}",
                c.len(),
                cells_per_dimension(c),
                c.incidence_count(),
                betti(c)
            )?;
            match &loaded.filter {
                Some(_) => writeln!(out, "filter: injective and monotone")?,
                None => writeln!(out, "filter: none")?,
            }
        }
        Command::Pairs { input, format } => {
            let (complex, filter) = require_filter(load_input(cli, input, out)?, &input.file)?;
            let pairing = standard_reduction(&OrderedBoundaryMatrix::build(&complex, &filter));
            let mut pairs = pairing.birth_death_pairs(&complex, &filter);
            pairs.sort_by(|a, b| a.death_value.total_cmp(&b.death_value));
            let mut essential = pairing.essential().to_vec();
            essential.sort_by(|&a, &b| filter.value(a).total_cmp(&filter.value(b)));
            match format {
                TextFormat::Text => {
                    writeln!(out, "pairs: {}", pairs.len())?;
                    for p in &pairs {
                        writeln!(
                            out,
                            "{} dim={} birth={} death={} persistence={}",
                            p.display(&complex),
                            p.dim,
                            p.birth_value,
                            p.death_value,
                            p.persistence
                        )?;
                    }
                    let names: Vec<String> = essential.iter().map(|&c| complex.label(c)).collect();
                    writeln!(out, "essential: {}", names.join(" "))?;
                }
                TextFormat::Json => {
                    let doc = serde_json::json!({
                        "pairs": pairs.iter().map(|p| pair_json(&complex, p)).collect::<Vec<_>>(),
                        "essential": essential.iter().map(|&c| complex.label(c)).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
                }
            }
        }
        Command::Shallow { input, format } => {
            let (complex, filter) = require_filter(load_input(cli, input, out)?, &input.file)?;
            let shallow = shallow_pairs(&complex, &filter);
            match format {
                TextFormat::Text => {
                    writeln!(out, "shallow pairs: {}", shallow.len())?;
                    for p in &shallow {
                        writeln!(out, "({},{})", complex.label(p.birth), complex.label(p.death))?;
                    }
                }
                TextFormat::Json => {
                    let doc: Vec<_> = shallow
                        .iter()
                        .map(|p| BirthDeathPair::new(&complex, &filter, p.birth, p.death))
                        .map(|p| pair_json(&complex, &p))
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
                }
            }
        }
        Command::Cancel { input, pairs, out: target } => {
            let loaded = load_input(cli, input, out)?;
            let original = loaded.complex.clone();
            let before = betti(&original);
            let mut complex = loaded.complex;
            let mut filter = loaded.filter;
            let mut origin: Vec<usize> = (0..complex.len()).collect();
            let mut report = String::new();
            for text in pairs {
                let (s, t) = resolve_pair(&original, text)?;
                let locate = |id: usize| {
                    origin.binary_search(&id).map_err(|_| {
                        Error::InvalidParameter(format!("{} was already cancelled", original.label(id)))
                    })
                };
                let (s, t) = (locate(s)?, locate(t)?);
                let (next_complex, next_filter, next_origin) = match &filter {
                    Some(f) => {
                        let q = if cli.debug_check && is_shallow(&complex, f, s, t) {
                            cancel_shallow_checked(&complex, f, ShallowPair { birth: s, death: t })?
                        } else {
                            cancel(&complex, f, s, t)?
                        };
                        (q.complex, Some(q.filter), q.origin)
                    }
                    None => {
                        let (c, o) = cancel_complex(&complex, s, t)?;
                        (c, None, o)
                    }
                };
                report.push_str(&format!("cancelled ({},{})\n", complex.label(s), complex.label(t)));
                origin = next_origin.iter().map(|&i| origin[i]).collect();
                complex = next_complex;
                filter = next_filter;
            }
            let after = betti(&complex);
            if cli.debug_check && after != before {
                return Err(Error::Internal(format!("betti changed from {before} to {after}")).into());
            }
            report.push_str(&format!("betti before: {before}\nbetti after: {after}\n"));
            let quotient = io::to_json(&complex, filter.as_ref());
            match target {
                Some(path) => {
                    std::fs::write(path, quotient)?;
                    out.write_all(report.as_bytes())?;
                }
                None => {
                    out.write_all(quotient.as_bytes())?;
                    err.write_all(report.as_bytes())?;
                }
            }
        }
        Command::Depth { input, format, out: target } => {
            let (complex, filter) = require_filter(load_input(cli, input, out)?, &input.file)?;
            let poset = build_depth_poset(&complex, &filter)?;
            if cli.debug_check {
                let brute = oracle::brute_depth_poset(&complex, &filter, DEFAULT_CAP)?;
                if brute.relations_by_cells() != poset.relations_by_cells() {
                    return Err(Error::Internal("book-keeping poset differs from enumeration".into()).into());
                }
            }
            let text = match format {
                DiagramFormat::Dot => emit::emit_dot(&poset, &complex),
                DiagramFormat::Json => emit::emit_json(&poset, &complex),
                DiagramFormat::Csv => emit::emit_annotated_csv(&poset),
                DiagramFormat::Svg => emit::emit_svg(&poset, &complex),
            };
            write_target(target.as_deref(), &text, out)?;
        }
        Command::Orders { input, format } => {
            let (complex, filter) = require_filter(load_input(cli, input, out)?, &input.file)?;
            let (alpha, omega) = book_keeping(&OrderedBoundaryMatrix::build(&complex, &filter));
            let pi = order_pi(&alpha.order);
            let named = [("alpha", &alpha.order), ("omega", &omega.order), ("pi", &pi)];
            match format {
                TextFormat::Text => {
                    for (name, order) in named {
                        let items: Vec<String> = order.iter().map(|p| p.display(&complex)).collect();
                        writeln!(out, "{name}: {}", items.join(" "))?;
                    }
                }
                TextFormat::Json => {
                    let doc: serde_json::Map<String, serde_json::Value> = named
                        .iter()
                        .map(|(name, order)| {
                            let items: Vec<String> = order.iter().map(|p| p.display(&complex)).collect();
                            (name.to_string(), serde_json::json!(items))
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
                }
            }
        }
        Command::Verify { seeds, seed, max_bd, cap } => {
            let report = oracle::verify_sweep(*seed, *seeds, *max_bd, *cap)?;
            for (bd, count) in report.histogram() {
                writeln!(out, "|BD| = {bd}: {count} instances")?;
            }
            writeln!(out, "{} instances with at least one relation", report.nontrivial())?;
            writeln!(out, "{}/{} match", report.matched(), report.total())?;
            let bad = report.mismatched_seeds();
            if !bad.is_empty() {
                for s in bad {
                    writeln!(err, "mismatch at seed {s}; reproduce with `depthposet verify --seed {s} --seeds 1 --max-bd {max_bd}`")?;
                }
                return Err(Failure::Mismatch);
            }
        }
        Command::Random { seed, vertices, dim, density, out: target } => {
            let (complex, filter) = oracle::random_filtered_complex(*seed, *vertices, *dim, *density)?;
            write_target(target.as_deref(), &io::to_json(&complex, Some(&filter)), out)?;
        }
    }
    Ok(())
}

fn resolve_pair(complex: &LefschetzComplex, text: &str) -> Result<(usize, usize)> {
    let (a, b) = text
        .rsplit_once(',')
        .ok_or_else(|| Error::InvalidParameter(format!("pair `{text}` is not of the form facet,cofacet")))?;
    let find = |name: &str| {
        complex
            .find(name.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("no cell named `{}`", name.trim())))
    };
    Ok((find(a)?, find(b)?))
}
