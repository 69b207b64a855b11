//! Command-line front end: validation, subdivision, fundamental groups,
//! covers, category bounds, bundles, fibre collapsing checks, and
//! certification, with stable JSON files for scripting.
//!
//! Exit codes: 0 for Yes/success, 1 for No/failure, 2 for
//! Unknown/budget, 3 for input errors. All output is deterministic for
//! fixed inputs and budgets.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gcat_cli::corpus;
use gcat_core::io;
use gcat_core::{
    barycentric_subdivision, cat_lower, cat_upper, check_fca, combine_covers,
    edge_path_presentation, multiplicity_and_nerve, simplify_presentation, validate_cover, Answer,
    Budget, FactStore, GroupClass, QueryOutcome, Result, SimplicialComplex, Statement, Strategy,
    VertexCover,
};

#[derive(Parser)]
#[command(
    name = "gcat",
    version,
    about = "Certified cover bounds and vanishing certificates for finite simplicial complexes"
)]
struct Cli {
    #[command(flatten)]
    limits: Limits,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Limits {
    /// Cap on stored facts during certification and on exhaustive search
    /// effort; exceeding it is reported, never silently truncated.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Coset table cap for enumerations; exceeding it yields Unknown.
    #[arg(long, global = true)]
    max_cosets: Option<usize>,
    /// Reserved for randomized strategies; every current strategy is
    /// deterministic, so the seed is accepted and recorded only.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

impl Limits {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(n) = self.budget {
            b.max_facts = n;
        }
        if let Some(n) = self.max_cosets {
            b.max_cosets = n;
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex file is well formed; exit 3 names the violated
    /// invariant.
    Validate { file: PathBuf },
    /// f-vector and Euler characteristic.
    Chi { file: PathBuf },
    /// Barycentric subdivision, iterated n times; emits a complex file.
    Subdivide {
        file: PathBuf,
        #[arg(short, default_value_t = 1)]
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Edge-path presentation of the fundamental group; emits a
    /// presentation file, with the abelianization reported on stderr.
    Pi1 {
        file: PathBuf,
        /// Apply at most this many simplification moves first.
        #[arg(long)]
        simplify: Option<usize>,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
    },
    /// Staircase product of two complexes; emits a complex file.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Wedge of complexes at chosen basepoints; emits a complex file.
    Wedge {
        files: Vec<PathBuf>,
        /// Basepoint per summand, comma separated; vertex 0 everywhere by
        /// default.
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<usize>>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Mapping torus of a self-map, fibred over the three-vertex circle;
    /// emits the total complex.
    MappingTorus {
        fibre: PathBuf,
        /// Image of each fibre vertex, comma separated.
        #[arg(long, value_delimiter = ',')]
        automorphism: Vec<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the bundle file for later cover combination.
        #[arg(long)]
        bundle_out: Option<PathBuf>,
    },
    /// Cover checks.
    Cover {
        #[command(subcommand)]
        op: CoverOp,
    },
    /// Nerve of a cover; emits the nerve complex, with the multiplicity
    /// reported on stderr.
    Nerve {
        complex: PathBuf,
        cover: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Category-style bounds.
    Cat {
        #[command(subcommand)]
        op: CatOp,
    },
    /// Combine a fibre cover and a base cover over a bundle into a cover
    /// of the total space; emits a cover file.
    Combine {
        bundle: PathBuf,
        fibre_cover: PathBuf,
        base_cover: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Fibre collapsing checks.
    Fca {
        #[command(subcommand)]
        op: FcaOp,
    },
    /// Load facts, saturate the derivation rules, and query a goal;
    /// prints the derivation trace or the missing premises.
    Certify {
        /// Goal statement, for example "simvol_zero(torus)".
        #[arg(long)]
        goal: String,
        /// Fact file with axiom and computed lines.
        #[arg(long)]
        facts: Option<PathBuf>,
        /// Register extra complexes (repeatable).
        #[arg(long = "complex")]
        complexes: Vec<PathBuf>,
    },
    /// Write the bundled example corpus into a directory.
    Corpus {
        #[arg(long, default_value = "corpus")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum CoverOp {
    /// Validate every piece of a cover against a group class.
    Check {
        complex: PathBuf,
        cover: PathBuf,
        #[arg(long)]
        class: String,
    },
}

#[derive(Subcommand)]
enum CatOp {
    /// Certified upper bound; prints the bound and the witness cover.
    Upper {
        file: PathBuf,
        #[arg(long)]
        class: String,
        /// stars, greedy, or exact.
        #[arg(long, default_value = "stars")]
        strategy: String,
        /// Also write the witness cover to a file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Certified lower bound from the fundamental group.
    Lower {
        file: PathBuf,
        #[arg(long)]
        class: String,
    },
}

#[derive(Subcommand)]
enum FcaOp {
    /// Check the fibre collapsing assumption for a map file; prints a
    /// per-fibre table.
    Check {
        map: PathBuf,
        #[arg(long)]
        class: String,
        /// Dimension cap on the target.
        #[arg(long)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
        Err(e) => {
            // --help and --version land here
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let budget = cli.limits.budget();
    match run(cli.command, &budget) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e.category() {
                gcat_core::ErrorCategory::BudgetExceeded => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        gcat_core::Error::Malformed(format!("cannot read {}: {e}", path.display()))
    })
}

fn write_out(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| {
        gcat_core::Error::Malformed(format!("cannot write {}: {e}", path.display()))
    })?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Print to stdout, or write to the file when one is given.
fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => write_out(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    io::parse_complex(&read(path)?)
}

fn load_cover(path: &Path) -> Result<VertexCover> {
    io::parse_cover(&read(path)?)
}

fn answer_code(a: Answer) -> u8 {
    match a {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::Unknown => 2,
    }
}

fn run(command: Command, budget: &Budget) -> Result<u8> {
    match command {
        Command::Validate { file } => {
            let x = load_complex(&file)?;
            let dim = x.dim().map_or("empty".to_string(), |d| d.to_string());
            println!(
                "ok: {} with f-vector {:?}, dimension {dim}",
                x.name(),
                x.f_vector()
            );
            Ok(0)
        }
        Command::Chi { file } => {
            let x = load_complex(&file)?;
            println!("name: {}", x.name());
            println!("f-vector: {:?}", x.f_vector());
            println!("chi: {}", x.euler_characteristic());
            Ok(0)
        }
        Command::Subdivide { file, n, out } => {
            let mut x = load_complex(&file)?;
            for _ in 0..n {
                x = barycentric_subdivision(&x).complex;
            }
            emit(out.as_deref(), &io::render_complex(&x))?;
            Ok(0)
        }
        Command::Pi1 {
            file,
            simplify,
            basepoint,
        } => {
            let x = load_complex(&file)?;
            let (mut pres, _) = edge_path_presentation(&x, basepoint)?;
            if let Some(moves) = simplify {
                pres = simplify_presentation(&pres, moves);
            }
            let ab = pres.abelianization();
            eprintln!(
                "presentation: {} generators, {} relators",
                pres.generator_count,
                pres.relators.len()
            );
            eprintln!("abelianization: rank {}, torsion {:?}", ab.rank, ab.torsion);
            print!("{}", io::render_presentation(&pres));
            Ok(0)
        }
        Command::Product { left, right, out } => {
            let a = load_complex(&left)?;
            let b = load_complex(&right)?;
            let p = gcat_core::product(&a, &b)?;
            emit(out.as_deref(), &io::render_complex(&p.complex))?;
            Ok(0)
        }
        Command::Wedge { files, at, out } => {
            if files.is_empty() {
                return Err(gcat_core::Error::Malformed(
                    "wedge needs at least one complex file".into(),
                ));
            }
            let complexes: Vec<SimplicialComplex> =
                files.iter().map(|f| load_complex(f)).collect::<Result<_>>()?;
            let basepoints = match at {
                Some(v) => {
                    if v.len() != complexes.len() {
                        return Err(gcat_core::Error::Malformed(format!(
                            "{} basepoints given for {} complexes",
                            v.len(),
                            complexes.len()
                        )));
                    }
                    v
                }
                None => vec![0; complexes.len()],
            };
            let summands: Vec<(&SimplicialComplex, usize)> = complexes
                .iter()
                .zip(basepoints.iter().copied())
                .collect();
            let (w, _) = gcat_core::wedge(&summands)?;
            emit(out.as_deref(), &io::render_complex(&w))?;
            Ok(0)
        }
        Command::MappingTorus {
            fibre,
            automorphism,
            out,
            bundle_out,
        } => {
            let f = load_complex(&fibre)?;
            let g = gcat_core::SimplicialMap::new(&f, &f, automorphism)?;
            let bundle = gcat_core::Bundle::mapping_torus(&f, &g)?;
            eprintln!(
                "total space {} with chi {}",
                bundle.total.name(),
                bundle.total.euler_characteristic()
            );
            if let Some(path) = bundle_out {
                write_out(&path, &io::render_bundle(&bundle)?)?;
            }
            emit(out.as_deref(), &io::render_complex(&bundle.total))?;
            Ok(0)
        }
        Command::Cover { op } => {
            let CoverOp::Check {
                complex,
                cover,
                class,
            } = op;
            let x = load_complex(&complex)?;
            let c = load_cover(&cover)?;
            let class: GroupClass = class.parse()?;
            let report = validate_cover(&x, &c, &class, budget)?;
            for (i, verdict) in report.piece_verdicts.iter().enumerate() {
                println!("piece {i}: {:?}", verdict.answer);
            }
            println!("partition: {}", report.partition);
            println!("admissible: {:?}", report.admissible);
            Ok(answer_code(report.admissible))
        }
        Command::Nerve { complex, cover, out } => {
            let x = load_complex(&complex)?;
            let c = load_cover(&cover)?;
            let report = multiplicity_and_nerve(&x, &c)?;
            eprintln!("multiplicity: {}", report.multiplicity);
            emit(out.as_deref(), &io::render_complex(&report.nerve))?;
            Ok(0)
        }
        Command::Cat { op } => match op {
            CatOp::Upper {
                file,
                class,
                strategy,
                out,
            } => {
                let x = load_complex(&file)?;
                let class: GroupClass = class.parse()?;
                let strategy: Strategy = strategy.parse()?;
                let bound = cat_upper(&x, &class, strategy, budget)?;
                eprintln!(
                    "cover on {} with {} pieces, admissible: {:?}, optimal: {}",
                    bound.complex.name(),
                    bound.cover.pieces.len(),
                    bound.report.admissible,
                    bound.optimal
                );
                println!("{}", bound.bound);
                let rendered = io::render_cover(&bound.cover, &bound.complex)?;
                match out {
                    Some(path) => write_out(&path, &rendered)?,
                    None => print!("{rendered}"),
                }
                Ok(answer_code(bound.report.admissible))
            }
            CatOp::Lower { file, class } => {
                let x = load_complex(&file)?;
                let class: GroupClass = class.parse()?;
                let (bound, verdict) = cat_lower(&x, &class, budget)?;
                for line in &verdict.trace {
                    eprintln!("{line}");
                }
                println!("{bound}");
                Ok(0)
            }
        },
        Command::Combine {
            bundle,
            fibre_cover,
            base_cover,
            out,
        } => {
            let b = io::parse_bundle(&read(&bundle)?)?;
            let fc = load_cover(&fibre_cover)?;
            let bc = load_cover(&base_cover)?;
            let combined = combine_covers(&b, &fc, &bc)?;
            emit(out.as_deref(), &io::render_cover(&combined, &b.total)?)?;
            Ok(0)
        }
        Command::Fca { op } => {
            let FcaOp::Check { map, class, dim } = op;
            let (src, tgt, f) = io::parse_map(&read(&map)?)?;
            let class: GroupClass = class.parse()?;
            let report = check_fca(&f, &src, &tgt, &class, dim, budget)?;
            for fibre in &report.fibres {
                println!(
                    "fibre over {:?}: {} vertices, {:?}",
                    fibre.target_simplex, fibre.fibre_vertex_count, fibre.verdict.answer
                );
            }
            println!(
                "fca({}, {}, {}): {:?}",
                report.map_source, class, report.cap, report.holds
            );
            Ok(answer_code(report.holds))
        }
        Command::Certify {
            goal,
            facts,
            complexes,
        } => {
            let goal: Statement = goal.parse()?;
            let mut store = FactStore::new();
            for path in &complexes {
                store.register_complex(&load_complex(path)?)?;
            }
            for class in goal_classes(&goal) {
                store.hint_class(class);
            }
            if let Some(path) = facts {
                io::load_facts(&read(&path)?, &mut store, budget)?;
            }
            let saturation = store.saturate(budget)?;
            eprintln!(
                "saturated in {} rounds, {} derived facts",
                saturation.rounds, saturation.derived
            );
            for (a, b) in &saturation.contradictions {
                println!("contradiction: fact #{a} against fact #{b}");
            }
            match store.query(&goal) {
                QueryOutcome::Proved(trace) => {
                    print!("{}", trace.render());
                    println!("proved: {goal}");
                    Ok(0)
                }
                QueryOutcome::Unproved { missing } => {
                    println!("unproved: {goal}");
                    for line in missing {
                        println!("  - {line}");
                    }
                    Ok(1)
                }
            }
        }
        Command::Corpus { out_dir } => {
            fs::create_dir_all(&out_dir).map_err(|e| {
                gcat_core::Error::Malformed(format!(
                    "cannot create {}: {e}",
                    out_dir.display()
                ))
            })?;
            for (name, contents) in corpus::corpus_files()? {
                write_out(&out_dir.join(name), &contents)?;
            }
            Ok(0)
        }
    }
}

/// Classes mentioned by the goal, used to seed rule instantiation.
fn goal_classes(goal: &Statement) -> Vec<GroupClass> {
    match goal {
        Statement::CatUpper { class, .. }
        | Statement::CatLower { class, .. }
        | Statement::MapCatUpper { class, .. }
        | Statement::Fca { class, .. } => vec![class.clone()],
        _ => Vec::new(),
    }
}

