use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use gemcat::catalog_io::{
    decode_catalogue, decode_known, decode_partition, encode_catalogue, encode_partition, encode_witnesses,
    verify_tables, VerifyError,
};
use gemcat::classifier::{classify, identify, split_and_name, ClassPartition};
use gemcat::generator::build_catalogue_set;
use gemcat::{canonical_code, first_homology, homology, Code, ColouredGraph};

/// Exit statuses beyond success and usage errors.
const MISMATCH: u8 = 2;
const BREACH: u8 = 3;

#[derive(Parser)]
#[command(name = "gemcat", version, about = "Catalogues of rigid crystallizations of closed 3-manifolds")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Order of the members fed to the classifier.
    #[arg(long, global = true, value_enum, default_value_t = SeedOrder::Canonical)]
    seed_order: SeedOrder,
    /// Log level: error, warn, info, debug or trace.
    #[arg(long, global = true, default_value = "warn")]
    log: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedOrder {
    /// By vertex count, then code.
    Canonical,
    /// As listed in the input files, taken in file-name order.
    Input,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the rigid catalogues with 2p vertices for every p up to --max-p.
    Gen {
        #[arg(long)]
        max_p: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write the cluster-less sub-catalogues.
        #[arg(long)]
        clusterless: bool,
    },
    /// Partition the catalogues in a directory into classes.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Lines `<code> <name>` naming known crystallizations.
        #[arg(long)]
        known: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Name classes of an existing class file by splitting connected sums.
    Split {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        known: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recognize the manifold of a gem given in the graph text format.
    Identify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        classes: PathBuf,
    },
    /// Integral homology of a gem, from a graph file or a code.
    Homology {
        #[arg(long, conflicts_with = "code")]
        graph: Option<PathBuf>,
        #[arg(long)]
        code: Option<String>,
    },
    /// Compare regenerated catalogue sizes with the published tables.
    VerifyTables {
        #[arg(long)]
        max_p: usize,
        #[arg(long)]
        clusterless: bool,
    },
    /// Sizes of the catalogue files in a directory.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    env_logger::Builder::new().parse_filters(&cli.log).init();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen { max_p, out, clusterless } => {
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            for p in 1..=*max_p {
                let set = build_catalogue_set(p);
                let mut cats = vec![set.bipartite, set.non_bipartite];
                if *clusterless {
                    cats.push(set.bipartite_clusterless);
                    cats.push(set.non_bipartite_clusterless);
                }
                for cat in cats {
                    let file = out.join(catalogue_file_name(cat.p, cat.flags.bipartite, cat.flags.clusterless));
                    fs::write(&file, encode_catalogue(&cat)).with_context(|| format!("writing {}", file.display()))?;
                    println!("{} {}", file.display(), cat.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { input, depth, known, out, witnesses } => {
            let codes = read_catalogues(input, cli.seed_order)?;
            log::info!("classifying {} codes", codes.len());
            let mut part = classify(&codes, *depth);
            part = split_and_name(part, &read_known(known.as_deref())?);
            if let Some(path) = witnesses {
                fs::write(path, encode_witnesses(&part))?;
            }
            let breaches = homology_breaches(&part);
            write_or_print(out.as_deref(), &encode_partition(&part))?;
            summarize(&part);
            if breaches > 0 {
                eprintln!("{breaches} classes with incoherent first homology");
                return Ok(ExitCode::from(BREACH));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Split { class, known, out } => {
            let mut part = read_partition(class)?;
            part = split_and_name(part, &read_known(known.as_deref())?);
            write_or_print(out.as_deref(), &encode_partition(&part))?;
            summarize(&part);
            Ok(ExitCode::SUCCESS)
        }
        Command::Identify { graph, classes } => {
            let g = read_graph(graph)?;
            let part = read_partition(classes)?;
            match identify(&g, &part) {
                Ok(name) => {
                    println!("{name}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => bail!("{e}"),
            }
        }
        Command::Homology { graph, code } => {
            let g = match (graph, code) {
                (Some(path), None) => read_graph(path)?,
                (None, Some(text)) => {
                    let code: Code = text.parse().context("parsing the code")?;
                    code.decode()?
                }
                _ => bail!("give exactly one of --graph and --code"),
            };
            let h = homology(&g)?;
            for (k, group) in h.iter().enumerate() {
                println!("H{k} = {group}");
            }
            if first_homology(&g)? != h[1] {
                return Ok(ExitCode::from(BREACH));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTables { max_p, clusterless } => match verify_tables(*max_p, *clusterless) {
            Ok(report) => {
                print!("{report}");
                Ok(ExitCode::SUCCESS)
            }
            Err(VerifyError::Mismatch(report)) => {
                print!("{report}");
                eprintln!("{} mismatching cells", report.mismatches().count());
                Ok(ExitCode::from(MISMATCH))
            }
            Err(e) => bail!("{e}"),
        },
        Command::Stats { input } => {
            for (path, cat) in catalogue_files(input)? {
                println!("{} p={} vertices={} count={}", path.display(), cat.p, 2 * cat.p, cat.len());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn catalogue_file_name(p: usize, bipartite: bool, clusterless: bool) -> String {
    format!(
        "C{:02}{}{}.cat",
        2 * p,
        if bipartite { "" } else { "-nb" },
        if clusterless { "-clusterless" } else { "" }
    )
}

fn catalogue_files(dir: &Path) -> Result<Vec<(PathBuf, gemcat::generator::Catalogue)>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cat"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let text = fs::read_to_string(&path)?;
        let cat = decode_catalogue(&text).with_context(|| format!("{}", path.display()))?;
        out.push((path, cat));
    }
    Ok(out)
}

/// Codes of the full (not cluster-less) catalogues in `dir`.
fn read_catalogues(dir: &Path, order: SeedOrder) -> Result<Vec<Code>> {
    let mut codes: Vec<Code> = Vec::new();
    for (_, cat) in catalogue_files(dir)? {
        if !cat.flags.clusterless {
            codes.extend(cat.codes);
        }
    }
    if let SeedOrder::Canonical = order {
        codes.sort_by(|a, b| (a.order(), a).cmp(&(b.order(), b)));
    }
    codes.dedup();
    Ok(codes)
}

/// The order-two gem is always known as the 3-sphere.
fn read_known(path: Option<&Path>) -> Result<BTreeMap<Code, String>> {
    let mut known = match path {
        Some(p) => decode_known(&fs::read_to_string(p)?).with_context(|| format!("{}", p.display()))?,
        None => BTreeMap::new(),
    };
    let sphere = canonical_code(&ColouredGraph::order_two())?.0;
    known.entry(sphere).or_insert_with(|| "S3".to_string());
    Ok(known)
}

fn read_partition(path: &Path) -> Result<ClassPartition> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut part = decode_partition(&text).with_context(|| format!("{}", path.display()))?;
    let depth = part.depth;
    part.rebuild_images(depth);
    Ok(part)
}

fn read_graph(path: &Path) -> Result<ColouredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ColouredGraph::from_text(&text).with_context(|| format!("{}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summarize(part: &ClassPartition) {
    let named = part.classes.iter().filter(|c| c.name.is_some()).count();
    eprintln!("{} members, {} classes, {} named", part.members.len(), part.classes.len(), named);
}

/// Classes whose members disagree on torsion or on free rank minus handle
/// number.
fn homology_breaches(part: &ClassPartition) -> usize {
    part.classes
        .iter()
        .filter(|class| {
            let keys: Vec<_> = class
                .members
                .iter()
                .map(|&m| {
                    let member = &part.members[m];
                    let h1 = member.code.decode().ok().and_then(|g| first_homology(&g).ok());
                    h1.map(|h1| (h1.rank as i64 - member.h, h1.torsion))
                })
                .collect();
            keys.iter().any(|k| k.is_none() || *k != keys[0])
        })
        .count()
}
