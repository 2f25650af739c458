//! `mi`: command-line front end for the bscmi harnesses.
//!
//! Exit status: 0 when every check passes, 1 when any check fails, 2 on
//! usage or input errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bscmi::boolfn::{make_class, FunctionClass, TruthTable};
use bscmi::channel::joint_yz;
use bscmi::exact::{p_grid, ExactProb};
use bscmi::io::{read_truth_table, write_joint_csv};
use bscmi::karamata::{build_karamata_sequences, sub_inequality_ledger, write_partial_sums_csv};
use bscmi::mi::mutual_information;
use bscmi::verify::{
    class3_reduction_check, exhaustive_check, sweep_table, theorem_classes, verify_class, verify_table,
    write_reports_csv, write_reports_json, write_sweep_csv, ExhaustiveSummary, VerifyReport,
    MARGIN_TOL, MAX_FULL_SCAN_N, MAX_SWEEP_DEN,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const REDUCTION_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "mi", version, about = "Mutual information of Boolean functions through a binary symmetric channel")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Crossover probability as a rational, e.g. 3/8. Overrides the grid.
    #[arg(long, global = true, value_parser = parse_p)]
    p: Option<ExactProb>,
    /// Grid denominator: p = k/den for k = 0..=den/2.
    #[arg(long, global = true, default_value_t = 64)]
    p_den: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// MI of one function at one p.
    Compute {
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        source: Source,
        /// Dump the exact joint table of (Y, f(X)) as CSV.
        #[arg(long)]
        dump_joint: Option<PathBuf>,
    },
    /// Check the bound for function classes over n and p grids.
    Verify {
        /// Class spec, or `all` for every class covered by the bound.
        #[arg(long, default_value = "all")]
        class: String,
        /// Single n or an inclusive range such as 2..10.
        #[arg(long, default_value = "2..10", value_parser = parse_range)]
        n: RangeInclusive<u32>,
        /// Also check this many uniformly random tables per n.
        #[arg(long, default_value_t = 0)]
        random_tables: usize,
    },
    /// Exact majorization certificate for the single-point function.
    Karamata {
        #[arg(long)]
        n: u32,
        /// Write every partial sum as CSV.
        #[arg(long)]
        dump_sums: Option<PathBuf>,
    },
    /// Scan every function of n variables.
    Exhaustive {
        #[arg(long)]
        n: u32,
        /// Scan one half-split representative per orbit.
        #[arg(long)]
        canonical: bool,
        /// Allow the n = 5 scan (2^32 tables).
        #[arg(long)]
        large: bool,
    },
    /// MI of one function along the p grid.
    Sweep {
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        source: Source,
    },
    /// Compare the depth-r subcube on n variables with a single point on r.
    ReduceCheck {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Class spec such as class1:i=0, class3:r=2:prefix=1 or dictator:j=1.
    #[arg(long)]
    function: Option<String>,
    /// Truth-table JSON file.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn parse_p(s: &str) -> std::result::Result<ExactProb, String> {
    let p: ExactProb = s.parse().map_err(|e: bscmi::Error| e.to_string())?;
    if p > ExactProb::half() {
        return Err(format!("p = {p} exceeds 1/2"));
    }
    Ok(p)
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo == 0 || lo > hi {
        return Err(format!("bad range {s:?}"));
    }
    Ok(lo..=hi)
}

impl Global {
    fn grid(&self) -> Result<Vec<ExactProb>> {
        if let Some(p) = &self.p {
            return Ok(vec![p.clone()]);
        }
        if self.p_den == 0 || self.p_den > MAX_SWEEP_DEN {
            bail!("--p-den must be in 1..={MAX_SWEEP_DEN}");
        }
        Ok(p_grid(self.p_den))
    }

    fn single_p(&self) -> Result<&ExactProb> {
        self.p.as_ref().context("--p is required")
    }

    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

impl Source {
    fn load(&self, n: Option<u32>) -> Result<TruthTable> {
        if let Some(path) = &self.table {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let t = read_truth_table(io::BufReader::new(file))?;
            if n.is_some_and(|n| n != t.n()) {
                bail!("--n disagrees with table dimension {}", t.n());
            }
            return Ok(t);
        }
        let spec = self.function.as_deref().expect("clap enforces one source");
        let class: FunctionClass = spec.parse()?;
        let n = n.context("--n is required with --function")?;
        Ok(make_class(n, &class)?)
    }
}

fn write_json<T: Serialize>(mut out: impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn random_table(rng: &mut ChaCha8Rng, n: u32) -> Result<TruthTable> {
    Ok(TruthTable::from_fn(n, |_| rng.gen())?)
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    match &cli.command {
        Command::Compute { n, source, dump_joint } => {
            let f = source.load(*n)?;
            let j = joint_yz(&f, g.single_p()?)?;
            if let Some(path) = dump_joint {
                let mut w = BufWriter::new(create(path)?);
                write_joint_csv(&mut w, &j)?;
                w.flush()?;
            }
            let r = mutual_information(&j);
            let mut out = g.writer()?;
            write_json(&mut out, &r)?;
            out.flush()?;
            Ok(r.margin_bits >= -MARGIN_TOL)
        }
        Command::Verify { class, n, random_tables } => {
            let grid = g.grid()?;
            let mut reports: Vec<VerifyReport> = Vec::new();
            let mut skipped = Vec::new();
            if class == "all" {
                for nn in n.clone() {
                    for c in theorem_classes(nn) {
                        let v = verify_class(&c, nn..=nn, &grid);
                        reports.extend(v.reports);
                        skipped.extend(v.skipped);
                    }
                }
            } else {
                let c: FunctionClass = class.parse()?;
                let v = verify_class(&c, n.clone(), &grid);
                reports.extend(v.reports);
                skipped.extend(v.skipped);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            for nn in n.clone() {
                for _ in 0..*random_tables {
                    let t = random_table(&mut rng, nn)?;
                    let label = format!("table:{}", bscmi::io::TruthTableFile::from(&t).bits_hex);
                    for p in &grid {
                        reports.push(verify_table(&t, &label, p)?);
                    }
                }
            }
            for s in &skipped {
                eprintln!("skipped: {s}");
            }
            let mut out = g.writer()?;
            match g.format.unwrap_or(Format::Json) {
                Format::Json => write_reports_json(&mut out, &reports)?,
                Format::Csv => write_reports_csv(&mut out, &reports)?,
            }
            out.flush()?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                eprintln!("{failed} of {} reports failed", reports.len());
            }
            Ok(failed == 0)
        }
        Command::Karamata { n, dump_sums } => {
            let inst = build_karamata_sequences(*n, g.single_p()?)?;
            let cert = sub_inequality_ledger(&inst)?;
            if let Some(path) = dump_sums {
                let mut w = BufWriter::new(create(path)?);
                write_partial_sums_csv(&mut w, &inst.x_seq, &inst.y_seq)?;
                w.flush()?;
            }
            let mut out = g.writer()?;
            write_json(&mut out, &cert)?;
            out.flush()?;
            Ok(cert.holds && cert.totals_equal)
        }
        Command::Exhaustive { n, canonical, large } => {
            if *n > MAX_FULL_SCAN_N && !large {
                bail!("n = {n} needs --large");
            }
            let summaries: Vec<ExhaustiveSummary> = exhaustive_check(*n, &g.grid()?, *canonical)?;
            let mut out = g.writer()?;
            match g.format.unwrap_or(Format::Json) {
                Format::Json => write_json(&mut out, &summaries)?,
                Format::Csv => {
                    writeln!(out, "p,num_functions_scanned,max_mi_bits,bound_bits,max_margin,argmax_count,dictator_attains_max")?;
                    for s in &summaries {
                        writeln!(
                            out,
                            "{},{},{:.17e},{:.17e},{:.17e},{},{}",
                            s.p, s.num_functions_scanned, s.max_mi_bits, s.bound_bits, s.max_margin,
                            s.argmax_count, s.dictator_attains_max
                        )?;
                    }
                }
            }
            out.flush()?;
            let half = ExactProb::half();
            Ok(summaries
                .iter()
                .all(|s| s.max_margin >= -MARGIN_TOL && (s.p >= half || s.dictator_attains_max)))
        }
        Command::Sweep { n, source } => {
            if g.p.is_some() {
                bail!("sweep takes --p-den, not --p");
            }
            let f = source.load(*n)?;
            let rows = sweep_table(&f, g.p_den)?;
            let mut out = g.writer()?;
            match g.format.unwrap_or(Format::Csv) {
                Format::Csv => write_sweep_csv(&mut out, &rows)?,
                Format::Json => write_json(&mut out, &rows)?,
            }
            out.flush()?;
            Ok(rows.iter().all(|r| r.margin_bits >= -MARGIN_TOL))
        }
        Command::ReduceCheck { n, r } => {
            if *r == 0 || r >= n {
                bail!("need 1 <= r <= n-1");
            }
            #[derive(Serialize)]
            struct Row {
                p: ExactProb,
                mi_full: f64,
                mi_reduced: f64,
                ok: bool,
            }
            let mut rows = Vec::new();
            for p in g.grid()? {
                let (mi_full, mi_reduced) = class3_reduction_check(*n, *r, &p)?;
                let ok = (mi_full - mi_reduced).abs() <= REDUCTION_TOL;
                rows.push(Row { p, mi_full, mi_reduced, ok });
            }
            let mut out = g.writer()?;
            match g.format.unwrap_or(Format::Json) {
                Format::Json => write_json(&mut out, &rows)?,
                Format::Csv => {
                    writeln!(out, "p,mi_full,mi_reduced,ok")?;
                    for row in &rows {
                        writeln!(out, "{},{:.17e},{:.17e},{}", row.p, row.mi_full, row.mi_reduced, row.ok)?;
                    }
                }
            }
            out.flush()?;
            Ok(rows.iter().all(|row| row.ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
