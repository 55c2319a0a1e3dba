use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use latgen::codec::{self, DigestAlgorithm};
use latgen::count::{render_table, CountTable};
use latgen::generator::{list_family, FamilySpec, GeneratorConfig, Target};
use latgen::oracle::{brute_force_family, ORACLE_MAX};
use latgen::stats::{self, Anchor};
use latgen::verify::{self, Report};
use latgen::{Error, Lattice, Result, MAX_ELEMENTS};

#[derive(Parser)]
#[command(name = "latgen", version, about = "Generate and count finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the sorted digraph6 list of a family.
    Generate(GenerateArgs),
    /// Print indecomposable and total counts per size.
    Count(CountArgs),
    /// Check lattice lists.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Count lattices by brute force.
    Oracle(OracleArgs),
    /// Shape statistics as CSV.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Decode, re-encode and optionally canonicalize a list.
    Convert(ConvertArgs),
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Debug: disable the pair-budget cut.
    #[arg(long)]
    no_pair_budget: bool,
    /// Debug: disable the fixed/simple mother shortcuts.
    #[arg(long)]
    no_shortcuts: bool,
    /// Build semimodular lattices directly instead of as duals.
    #[arg(long)]
    direct_semimodular: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    search: SearchArgs,
    /// Only vertically indecomposable lattices.
    #[arg(long)]
    vi_only: bool,
    /// Output file (`.gz` compresses); the list goes to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// No two records are isomorphic.
    Isofree { list: PathBuf },
    /// Every lattice of SUB appears in SUPER.
    Contain { sub: PathBuf, sup: PathBuf },
    /// The dual of every lattice is listed.
    Dual { list: PathBuf },
    /// Digest of the sorted list; with --expect, compare against it.
    Digest {
        list: PathBuf,
        #[arg(long)]
        md5: bool,
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    max_n: usize,
    /// Print the canonical records instead of counts.
    #[arg(long)]
    forms: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnchorArg {
    Top,
    Bottom,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Mean length per size; the family column is the file stem.
    Length { lists: Vec<PathBuf> },
    /// Mean level widths at one size.
    Widths {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "top")]
        anchor: AnchorArg,
        lists: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct ConvertArgs {
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace each record by its canonical form.
    #[arg(long)]
    canonicalize: bool,
}

fn spec_for(args: &SearchArgs) -> Result<(Target, FamilySpec, GeneratorConfig)> {
    let target: Target = args.family.parse()?;
    if target == Target::GeometricDual {
        return Err(Error::UnknownFamily(args.family.clone()));
    }
    if !(1..=MAX_ELEMENTS).contains(&args.max_n) {
        return Err(Error::SizeOutOfRange(args.max_n, 1, MAX_ELEMENTS));
    }
    let spec = if args.direct_semimodular {
        if target != Target::Semimodular {
            return Err(Error::Conflict("--direct-semimodular needs --family semimodular"));
        }
        FamilySpec::semimodular_direct()
    } else {
        target.spec()
    };
    if args.threads == 0 {
        return Err(Error::Conflict("--threads must be at least 1"));
    }
    let config = GeneratorConfig {
        pair_budget: !args.no_pair_budget,
        shortcuts: !args.no_shortcuts,
        threads: args.threads,
        check_invariants: false,
    };
    Ok((target, spec, config))
}

fn table(target: Target, vi: BTreeMap<usize, u64>, max_n: usize) -> Result<CountTable> {
    CountTable::new(target.name(), vi, max_n, target.decomposable())
}

fn generate(args: &GenerateArgs) -> Result<ExitCode> {
    let (target, spec, config) = spec_for(&args.search)?;
    let list = list_family(&spec, args.search.max_n, &config, args.vi_only)?;
    let counts = render_table(&table(target, list.vi_counts, args.search.max_n)?);
    match &args.out {
        Some(path) => {
            codec::write_list(path, &list.records)?;
            print!("{counts}");
        }
        None => {
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            codec::write_sorted(&mut w, &list.records)?;
            w.flush()?;
            eprint!("{counts}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn count(args: &CountArgs) -> Result<ExitCode> {
    let (target, spec, config) = spec_for(&args.search)?;
    let list = list_family(&spec, args.search.max_n, &config, true)?;
    print!("{}", render_table(&table(target, list.vi_counts, args.search.max_n)?));
    Ok(ExitCode::SUCCESS)
}

fn report(r: Report) -> ExitCode {
    println!("{r}");
    if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verify_cmd(cmd: &VerifyCommand) -> Result<ExitCode> {
    Ok(match cmd {
        VerifyCommand::Isofree { list } => report(verify::check_isomorph_free(&codec::read_list(list, false)?)?),
        VerifyCommand::Contain { sub, sup } => report(verify::check_containment(
            &codec::read_list(sub, false)?,
            &codec::read_list(sup, false)?,
        )?),
        VerifyCommand::Dual { list } => report(verify::check_duality_closed(&codec::read_list(list, false)?)?),
        VerifyCommand::Digest { list, md5, expect } => {
            let algorithm = if *md5 { DigestAlgorithm::Md5 } else { DigestAlgorithm::Sha256 };
            let digest = codec::digest_list(&codec::read_list(list, false)?, algorithm);
            println!("{}  {}", digest, algorithm.name());
            match expect {
                Some(e) if !e.eq_ignore_ascii_case(&digest) => {
                    println!("digest mismatch: expected {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
    })
}

fn oracle(args: &OracleArgs) -> Result<ExitCode> {
    let target: Target = args.family.parse()?;
    if args.max_n > ORACLE_MAX || args.max_n == 0 {
        return Err(Error::OracleTooLarge { n: args.max_n, max: ORACLE_MAX });
    }
    let mut vi = BTreeMap::new();
    let mut total = BTreeMap::new();
    let mut records = Vec::new();
    for n in 1..=args.max_n {
        let forms = brute_force_family(n, |l| target.contains(l))?;
        total.insert(n, forms.len() as u64);
        let indecomposable = forms
            .iter()
            .filter(|f| f.to_lattice().is_vertically_indecomposable())
            .count();
        vi.insert(n, indecomposable as u64);
        records.extend(forms.iter().map(codec::encode));
    }
    if args.forms {
        let stdout = io::stdout();
        let mut w = io::BufWriter::new(stdout.lock());
        codec::write_sorted(&mut w, &records)?;
        w.flush()?;
    } else {
        println!("n, vi, total");
        for n in 1..=args.max_n {
            println!("{n}, {}, {}", vi[&n], total[&n]);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_lattices(path: &Path) -> Result<Vec<Lattice>> {
    codec::read_list(path, false)?
        .iter()
        .map(|r| codec::decode(r)?.to_lattice())
        .collect()
}

fn family_label(path: &Path) -> String {
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("list");
    name.split('.').next().unwrap_or(name).to_string()
}

fn stats_cmd(cmd: &StatsCommand) -> Result<ExitCode> {
    match cmd {
        StatsCommand::Length { lists } => {
            let mut rows = Vec::new();
            for p in lists {
                rows.push((family_label(p), stats::average_length(&load_lattices(p)?)?));
            }
            print!("{}", stats::length_csv(&rows));
        }
        StatsCommand::Widths { n, anchor, lists } => {
            let anchor = match anchor {
                AnchorArg::Top => Anchor::Top,
                AnchorArg::Bottom => Anchor::Bottom,
            };
            let mut rows = Vec::new();
            for p in lists {
                rows.push((family_label(p), stats::average_level_widths(&load_lattices(p)?, *n, anchor)?));
            }
            print!("{}", stats::widths_csv(*n, anchor, &rows));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn convert(args: &ConvertArgs) -> Result<ExitCode> {
    let records = codec::read_list(&args.input, false)?;
    let out: Vec<String> = if args.canonicalize {
        verify::recanonicalize(&records)?
    } else {
        records
            .iter()
            .map(|r| codec::decode(r).map(|d| codec::encode_rows(&d.rows)))
            .collect::<Result<_>>()?
    };
    match &args.out {
        Some(p) => codec::write_list(p, &out)?,
        None => {
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            codec::write_sorted(&mut w, &out)?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Count(a) => count(a),
        Command::Verify(c) => verify_cmd(c),
        Command::Oracle(a) => oracle(a),
        Command::Stats(c) => stats_cmd(c),
        Command::Convert(a) => convert(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
