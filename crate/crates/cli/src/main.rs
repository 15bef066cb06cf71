//! Command-line frontend: construct codes, inspect diagrams and bounds,
//! puncture, verify distances, and summarize code files.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors (clap uses 2 for malformed flags as well). All commands
//! are deterministic for fixed flags; sampled verification takes an
//! explicit seed with a fixed default.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use subspace_codes::codefile;
use subspace_codes::ferrers::EchelonFerrersForm;
use subspace_codes::field::Field;
use subspace_codes::matrix::GFMatrix;
use subspace_codes::multilevel::{
    construct_code, lexicode_skeleton, verify_fiber_distances, CheckMode, SkeletonCode,
    SubspaceCode,
};
use subspace_codes::puncture::{puncture, verify_min_distance, Hyperplane};
use subspace_codes::subspace::{subspace_distance, BinaryVector};

#[derive(Parser)]
#[clap(name = "subspace-codes")]
#[clap(version = env!("CARGO_PKG_VERSION"))]
#[clap(about = "Construction toolkit for constant-dimension subspace codes")]
#[clap(subcommand_required = true)]
#[clap(arg_required_else_help = true)]
struct Cli {
    #[clap(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Build a code from a constant-weight skeleton and rank-metric fibers
    Construct {
        /// field order (a prime power)
        #[clap(long, default_value_t = 2)]
        q: u32,
        /// ambient dimension
        #[clap(long)]
        n: usize,
        /// codeword dimension
        #[clap(long)]
        k: usize,
        /// target subspace distance (even)
        #[clap(long)]
        d: usize,
        /// skeleton file overriding the greedy default, one binary vector
        /// per line
        #[clap(long, value_name = "FILE")]
        skeleton: Option<PathBuf>,
        /// write the code to this file
        #[clap(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print the greedy constant-weight skeleton for given parameters
    Skeleton {
        /// skeleton length
        #[clap(long)]
        n: usize,
        /// weight of every word
        #[clap(long)]
        k: usize,
        /// minimum Hamming distance (even)
        #[clap(long)]
        d: usize,
        /// write the skeleton to this file instead of stdout
        #[clap(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Show the echelon Ferrers form of a binary vector and its dimension
    /// bound
    Bound {
        /// identifying vector as a binary string
        #[clap(long)]
        v: String,
        /// designed rank distance
        #[clap(long)]
        delta: usize,
    },
    /// Drop one coordinate: project codewords through a coordinate
    /// hyperplane
    Puncture {
        /// input code file
        #[clap(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// 1-based coordinate to drop
        #[clap(long)]
        drop_coordinate: usize,
        /// distinguished vector as a digit string; must be nonzero at the
        /// dropped coordinate
        #[clap(long)]
        v: String,
        /// write the punctured code to this file
        #[clap(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Measure minimum distance and check the per-fiber distance laws
    Verify {
        /// input code file
        #[clap(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// fail unless the measured minimum reaches this value
        #[clap(long)]
        expect_distance: Option<usize>,
        /// scan every codeword pair (the default)
        #[clap(long, action, conflicts_with = "sample")]
        exhaustive: bool,
        /// scan this many uniformly sampled pairs instead
        #[clap(long, value_name = "N")]
        sample: Option<u64>,
        /// seed for sampled scans
        #[clap(long, default_value_t = 7)]
        seed: u64,
    },
    /// Summarize a code file
    Stats {
        /// input code file
        #[clap(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe (e.g. `... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Commands) -> Result<ExitCode, String> {
    match command {
        Commands::Construct {
            q,
            n,
            k,
            d,
            skeleton,
            out,
        } => cmd_construct(q, n, k, d, skeleton.as_deref(), out.as_deref()),
        Commands::Skeleton { n, k, d, out } => cmd_skeleton(n, k, d, out.as_deref()),
        Commands::Bound { v, delta } => cmd_bound(&v, delta),
        Commands::Puncture {
            input,
            drop_coordinate,
            v,
            out,
        } => cmd_puncture(&input, drop_coordinate, &v, out.as_deref()),
        Commands::Verify {
            input,
            expect_distance,
            exhaustive,
            sample,
            seed,
        } => cmd_verify(&input, expect_distance, exhaustive, sample, seed),
        Commands::Stats { input } => cmd_stats(&input),
    }
}

fn field_of_order(q: u32) -> Result<Field, String> {
    if q < 2 {
        return Err(format!("field order must be at least 2 (got {q})"));
    }
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .expect("q >= 2 has a factor");
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(format!("field order {q} is not a prime power"));
    }
    Field::new(p, e).map_err(|err| err.to_string())
}

fn read_code(path: &Path) -> Result<SubspaceCode, String> {
    let text =
        fs::read_to_string(path).map_err(|err| format!("cannot read {}: {err}", path.display()))?;
    let outcome = codefile::parse(&text).map_err(|err| format!("{}: {err}", path.display()))?;
    for warning in &outcome.warnings {
        eprintln!("warning: {}: {warning}", path.display());
    }
    Ok(outcome.code)
}

// Called before the report is printed: a reader closing our stdout (e.g.
// `... | head`) kills the process mid-report, and the output file must
// already be on disk by then.
fn write_code(code: &SubspaceCode, path: &Path) -> Result<(), String> {
    let text = codefile::emit(code).map_err(|err| err.to_string())?;
    fs::write(path, text).map_err(|err| format!("cannot write {}: {err}", path.display()))
}

fn parse_row(text: &str, n: usize, field: &Field) -> Result<Vec<u32>, String> {
    let order = field.order();
    let row: Vec<u32> = text
        .chars()
        .map(|ch| {
            ch.to_digit(10)
                .filter(|&digit| digit < order)
                .ok_or_else(|| format!("'{ch}' is not a digit below {order}"))
        })
        .collect::<Result<_, _>>()?;
    if row.len() != n {
        return Err(format!("vector has {} digits, expected {n}", row.len()));
    }
    Ok(row)
}

fn cmd_construct(
    q: u32,
    n: usize,
    k: usize,
    d: usize,
    skeleton: Option<&Path>,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(format!("--d must be a positive even integer (got {d})"));
    }
    let field = field_of_order(q)?;
    let custom = match skeleton {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|err| format!("cannot read {}: {err}", path.display()))?;
            let mut words = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let word: BinaryVector = line
                    .parse()
                    .map_err(|_| format!("{}:{}: not a binary vector", path.display(), idx + 1))?;
                words.push(word);
            }
            Some(
                SkeletonCode::from_words(n, k, &words)
                    .map_err(|err| format!("{}: {err}", path.display()))?,
            )
        }
        None => None,
    };
    let code =
        construct_code(&field, n, k, d / 2, custom.as_ref()).map_err(|err| err.to_string())?;
    if let Some(path) = out {
        write_code(&code, path)?;
    }

    println!(
        "constructed {} codewords over {} in ambient dimension {n} (k={k}, d={d})",
        code.len(),
        field
    );
    let fibers = code
        .fibers()
        .expect("constructed codes carry fiber reports");
    let mut attained = 0;
    for fiber in fibers {
        println!(
            "fiber {}: dim {}, bound {}, {}, size {}",
            fiber.vector,
            fiber.dimension,
            fiber.bound,
            if fiber.attains_bound {
                "attained"
            } else {
                "below bound"
            },
            fiber.size
        );
        if fiber.attains_bound {
            attained += 1;
        }
    }
    if attained == fibers.len() {
        println!("all {} fibers attain the dimension bound", fibers.len());
    } else {
        println!(
            "{attained} of {} fibers attain the dimension bound",
            fibers.len()
        );
    }
    if let Some(path) = out {
        println!("wrote {} codewords to {}", code.len(), path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_skeleton(n: usize, k: usize, d: usize, out: Option<&Path>) -> Result<ExitCode, String> {
    let skeleton = lexicode_skeleton(n, k, d).map_err(|err| err.to_string())?;
    let mut text = String::new();
    for word in skeleton.words() {
        text.push_str(&word.to_string());
        text.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|err| format!("cannot write {}: {err}", path.display()))?;
            println!(
                "wrote {} skeleton words to {}",
                skeleton.len(),
                path.display()
            );
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound(v: &str, delta: usize) -> Result<ExitCode, String> {
    if delta == 0 {
        return Err("--delta must be at least 1".to_string());
    }
    let vector: BinaryVector = v
        .parse()
        .map_err(|_| format!("'{v}' is not a binary vector"))?;
    let form = EchelonFerrersForm::new(vector).map_err(|err| err.to_string())?;
    println!("echelon form of {vector}:");
    print!("{}", form.render());
    let diagram = form.diagram();
    let row_dots: Vec<String> = (0..diagram.box_rows())
        .map(|i| diagram.row_dot_count(i).to_string())
        .collect();
    println!(
        "Ferrers diagram ({} dots, rows {}):",
        diagram.dot_count(),
        if row_dots.is_empty() {
            "none".to_string()
        } else {
            row_dots.join(" ")
        }
    );
    print!("{}", diagram.render());
    println!(
        "dimension bound for delta {delta}: {}",
        diagram.dimension_bound(delta)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_puncture(
    input: &Path,
    drop_coordinate: usize,
    v: &str,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    let code = read_code(input)?;
    let n = code.ambient();
    if drop_coordinate == 0 || drop_coordinate > n {
        return Err(format!(
            "--drop-coordinate must be between 1 and {n} (got {drop_coordinate})"
        ));
    }
    let field = code.field().clone();
    let hyperplane =
        Hyperplane::coordinate(&field, n, drop_coordinate - 1).map_err(|err| err.to_string())?;
    let row = parse_row(v, n, &field)?;
    let vector = GFMatrix::from_rows(&field, n, &[row]);
    let (punctured, accounting) =
        puncture(&code, &hyperplane, &vector).map_err(|err| err.to_string())?;
    if let Some(path) = out {
        write_code(&punctured, path)?;
    }

    println!(
        "punctured {} -> {} codewords (dropped coordinate {drop_coordinate}, ambient {n} -> {})",
        accounting.input_size,
        accounting.output_size,
        n - 1
    );
    println!(
        "contained in hyperplane: {}, through the vector: {}, overlap: {}",
        accounting.contained, accounting.through_vector, accounting.overlap
    );
    for fiber in &accounting.fibers {
        println!(
            "fiber {}: {} contained, {} through",
            fiber.vector, fiber.contained, fiber.through_vector
        );
    }
    if let Some(path) = out {
        println!("wrote {} codewords to {}", punctured.len(), path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn describe(code: &SubspaceCode) -> String {
    let shape = match code.constant_dimension() {
        Some(k) => format!("constant dimension {k}"),
        None => "mixed dimensions".to_string(),
    };
    let claimed = match code.claimed_distance() {
        Some(d) => format!("claimed distance {d}"),
        None => "no claimed distance".to_string(),
    };
    format!(
        "{} codewords over {}, ambient {}, {shape}, {claimed}",
        code.len(),
        code.field(),
        code.ambient()
    )
}

fn cmd_verify(
    input: &Path,
    expect_distance: Option<usize>,
    _exhaustive: bool,
    sample: Option<u64>,
    seed: u64,
) -> Result<ExitCode, String> {
    let code = read_code(input)?;
    println!("code: {}", describe(&code));
    if code.len() < 2 {
        println!("fewer than two codewords; nothing to scan");
        println!("PASS");
        return Ok(ExitCode::SUCCESS);
    }

    let mut failed = false;
    match sample {
        None => {
            let scan =
                verify_min_distance(&code, expect_distance).map_err(|err| err.to_string())?;
            println!(
                "distance scan: minimum {} over {} pairs (exhaustive)",
                scan.minimum, scan.pairs
            );
            if let Some(expected) = expect_distance {
                let satisfied = scan.satisfied == Some(true);
                println!(
                    "expectation {expected}: {}",
                    if satisfied { "satisfied" } else { "violated" }
                );
                failed |= !satisfied;
            }
        }
        Some(count) => {
            let words = code.words();
            let mut rng = StdRng::seed_from_u64(seed);
            let mut minimum = usize::MAX;
            for _ in 0..count {
                let i = rng.gen_range(0..words.len());
                let mut j = rng.gen_range(0..words.len() - 1);
                if j >= i {
                    j += 1;
                }
                minimum = minimum.min(subspace_distance(&words[i], &words[j]));
            }
            println!("distance scan: minimum {minimum} over {count} sampled pairs (seed {seed})");
            if let Some(expected) = expect_distance {
                let satisfied = minimum >= expected;
                println!(
                    "expectation {expected}: {} on the sample",
                    if satisfied { "satisfied" } else { "violated" }
                );
                failed |= !satisfied;
            }
        }
    }

    match code.constant_dimension() {
        Some(k) if k >= 1 => {
            let mode = match sample {
                None => CheckMode::Exhaustive,
                Some(count) => CheckMode::Sample { count, seed },
            };
            let law = verify_fiber_distances(&code, mode).map_err(|err| err.to_string())?;
            println!(
                "fiber laws: {} violations over {} pairs ({} same-fiber, {} cross-fiber)",
                law.violations.len(),
                law.pairs,
                law.same_fiber_pairs,
                law.cross_fiber_pairs
            );
            failed |= !law.pass();
        }
        _ => println!("fiber laws: skipped (mixed dimensions)"),
    }

    if failed {
        println!("FAIL");
        Ok(ExitCode::from(1))
    } else {
        println!("PASS");
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_stats(input: &Path) -> Result<ExitCode, String> {
    let code = read_code(input)?;
    println!("code: {}", describe(&code));
    println!("dimension profile:");
    for (dim, count) in code.dimension_profile() {
        println!("  dim {dim} x {count}");
    }
    println!("identifying vectors:");
    for (vector, count) in code.identifying_histogram() {
        println!("  {vector} x {count}");
    }
    Ok(ExitCode::SUCCESS)
}
