use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use overlat_core::kummer::{
    classify_range, verify_case_k0mod3, verify_case_k1mod3, verify_explicit_isometries, verify_index3, verify_liste,
    verify_mod3_preservation, ClassificationResult,
};
use overlat_core::lattice::file::parse_lattice;
use overlat_core::lattice::IntegralLattice;
use overlat_core::overlat::{construct_overlattice, enumerate_prime_subgroups, format_vector, same_genus};
use overlat_core::report::{Report, Status};
use overlat_core::Error;

#[derive(Parser)]
#[command(name = "overlat", version, about = "Discriminant forms and over-lattices of integral lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors, generators and q/b tables of the discriminant group.
    Discriminant { file: PathBuf },
    /// Over-lattices of index p, one per isotropic subgroup of order p.
    Overlattices {
        file: PathBuf,
        #[arg(long)]
        prime: i64,
        /// Lattice to compare each over-lattice against (same genus or not).
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Over-lattices of T(A)(3) isometric to T(X), for a range of k.
    KummerTable {
        #[arg(long)]
        k_min: i64,
        #[arg(long)]
        k_max: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Runs every check for one k.
    Verify {
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

fn load(path: &Path) -> Result<IntegralLattice> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_lattice(&text).with_context(|| format!("parsing {}", path.display()))
}

fn group_name(orders: &[i64]) -> String {
    if orders.is_empty() {
        return "0".into();
    }
    orders.iter().rev().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
}

fn discriminant(path: &Path) -> Result<bool> {
    let l = load(path)?;
    let a = l.discriminant_group()?;
    let m = a.module();
    // Largest factor first, matching the printed group.
    let idx: Vec<usize> = (0..m.num_generators()).rev().collect();
    println!("lattice: rank {}, det {}, signature {:?}", l.rank(), l.det(), l.signature());
    println!("group: {}", group_name(a.orders()));
    println!("order: {}", a.order());
    let factors: Vec<String> = a.orders().iter().map(|d| d.to_string()).collect();
    println!("invariant factors: {}", factors.join(", "));
    let q = m.q_values();
    let b = m.b_table();
    for (n, &i) in idx.iter().enumerate() {
        println!(
            "g{} = {}  order {}  q = {}",
            n + 1,
            format_vector(&a.representatives()[i]),
            a.orders()[i],
            q[i]
        );
    }
    if !idx.is_empty() {
        println!("b:");
        for &i in &idx {
            let row: Vec<String> = idx.iter().map(|&j| b[i][j].to_string()).collect();
            println!("  {}", row.join("\t"));
        }
    }
    Ok(true)
}

fn overlattices(path: &Path, p: i64, target: Option<&Path>) -> Result<bool> {
    let l = load(path)?;
    let target = target.map(load).transpose()?;
    let s = enumerate_prime_subgroups(&l, p)?;
    println!("order-{p} subgroups: {} ({} isotropic)", s.all.len(), s.isotropic.len());
    for h in &s.all {
        if !h.is_isotropic() {
            println!("{h}  q = {}  not isotropic", h.q_value());
            continue;
        }
        let over = construct_overlattice(&l, h)?;
        let rows = over.gram().to_i64()?.to_rows();
        let gram: Vec<String> = rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let group = over.lattice().discriminant_group()?;
        print!("{h}  q = 0  gram [{}]  group {}", gram.join(","), group_name(group.orders()));
        if let Some(t) = &target {
            print!("  same genus as target: {}", same_genus(over.lattice(), t)?);
        }
        println!();
    }
    Ok(true)
}

fn table_row(r: &ClassificationResult, sep: &str) -> String {
    let w: Vec<String> = r.witnesses.iter().map(|w| w.to_string()).collect();
    format!("{}{sep}{}{sep}{}", r.k, r.n_over, w.join(";"))
}

fn kummer_table(k_min: i64, k_max: i64, format: Format) -> Result<bool> {
    if k_min < 1 {
        bail!("--k-min must be at least 1");
    }
    let rows = if k_min > k_max { vec![] } else { classify_range(k_min, k_max)? };
    match format {
        Format::Tsv => {
            println!("k\tn_over\twitnesses");
            for r in &rows {
                println!("{}", table_row(r, "\t"));
            }
        }
        Format::Text => {
            println!("{:>6}  {:>7}  {:>6}  witnesses", "k", "k mod 9", "n_over");
            for r in &rows {
                let w: Vec<String> = r.witnesses.iter().map(|w| w.to_string()).collect();
                println!("{:>6}  {:>7}  {:>6}  {}", r.k, r.k % 9, r.n_over, w.join(" "));
            }
        }
    }
    Ok(true)
}

fn section(out: &mut Report, name: &str, result: overlat_core::Result<Report>) -> Result<()> {
    match result {
        Ok(r) => out.absorb(name, r),
        Err(Error::NotApplicable(why)) => out.not_applicable(name, why),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn verify(k: i64, bound: i64) -> Result<bool> {
    if bound < 0 {
        bail!("--bound must be nonnegative");
    }
    let start = Instant::now();
    let mut all = Report::new(format!("verify k = {k}, bound = {bound}"));
    section(&mut all, "index", verify_index3(k))?;
    section(&mut all, "list", verify_liste(k))?;
    section(&mut all, "k = 1 mod 3", verify_case_k1mod3(k))?;
    section(&mut all, "k = 0 mod 3", verify_case_k0mod3(k))?;
    section(&mut all, "isometries", verify_explicit_isometries(k))?;
    section(&mut all, "O(T(X))", verify_mod3_preservation(k, bound))?;
    print!("{all}");
    let count = |s: Status| all.checks.iter().filter(|c| c.status == s).count();
    println!(
        "summary: {} passed, {} failed, {} not applicable ({} ms)",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::NotApplicable),
        start.elapsed().as_millis()
    );
    Ok(all.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Discriminant { file } => discriminant(file),
        Command::Overlattices { file, prime, target } => overlattices(file, *prime, target.as_deref()),
        Command::KummerTable { k_min, k_max, format } => kummer_table(*k_min, *k_max, *format),
        Command::Verify { k, bound } => verify(*k, *bound),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
