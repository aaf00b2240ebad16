use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use yf_lattice::boundary::{d_beta_prime, level_distribution, level_distribution_f64, TailOnesWord};
use yf_lattice::experiments::{concentration_sweep, identity_suite, Concentration, SuiteConfig};
use yf_lattice::harmonic::{d_beta, g_all, pi, q, FMemo};
use yf_lattice::magic::build_table;
use yf_lattice::pathcount::{d_paths_dp, d_paths_formula};
use yf_lattice::rational::{parse_beta, parse_rational, Rational};
use yf_lattice::word::{enumerate_level, parse_word_arg, render_word_arg, Word};
use yf_lattice::Error;

const OUT_DIR_VAR: &str = "YF_OUT_DIR";

#[derive(Parser)]
#[command(name = "yf", version, about = "Exact computations on the Young-Fibonacci lattice")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Write to this file instead of stdout. Relative paths are resolved
    /// against $YF_OUT_DIR when it is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Method {
    Dp,
    Formula,
    Both,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Mode {
    Suffix,
    Pi,
}

#[derive(Subcommand)]
enum Command {
    /// List the words of rank n in level order.
    Level { n: usize },
    /// Number of descending paths from y down to x.
    Dcount {
        x: String,
        y: String,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// The function f(x, y, z).
    F { x: String, y: usize, z: usize },
    /// The values g(x, j) for every 2 of x.
    G { x: String },
    /// q(x).
    Q { x: String },
    /// pi(x).
    Pi { x: String },
    /// Coefficients of d_beta(x) as a polynomial in beta.
    Dbeta { x: String },
    /// The kernel d'_beta(x, w).
    Dprime {
        x: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        beta: String,
    },
    /// Masses of mu_{w,beta} on level n.
    Measure {
        #[arg(long)]
        w: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        n: usize,
        /// Floating-point masses (non-authoritative).
        #[arg(long)]
        float: bool,
    },
    /// The table T_{w,beta,n}.
    Magic {
        #[arg(long)]
        w: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        symbolic: bool,
    },
    /// Tail masses outside the concentration sets for a range of n.
    Sweep {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        w: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        eps: Option<String>,
        /// `A..B..step`, `A..B` or a single `N`.
        #[arg(long)]
        n: String,
        /// Floating-point masses (non-authoritative).
        #[arg(long)]
        float: bool,
    },
    /// Run the identity suite up to the given rank.
    Verify {
        #[arg(long)]
        max_rank: usize,
        /// Comma-separated beta grid.
        #[arg(long, default_value = "1/4,1/2,3/4,1")]
        betas: String,
        /// Comma-separated cores of w.
        #[arg(long, default_value = "eps,2,22,212")]
        cores: String,
    },
}

/// Rows to emit; `pretty` prints them space-aligned, `csv` as CSV.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    /// Pretty mode omits the header for single-value answers.
    scalar: bool,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            scalar: false,
        }
    }

    fn scalar(header: &[&str], values: Vec<String>) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: vec![values],
            scalar: true,
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn write<W: Write>(&self, format: Format, mut out: W) -> io::Result<()> {
        match format {
            Format::Csv => {
                let mut wr = csv::Writer::from_writer(out);
                wr.write_record(&self.header)?;
                for r in &self.rows {
                    wr.write_record(r)?;
                }
                wr.flush()
            }
            Format::Pretty if self.scalar => {
                for r in &self.rows {
                    writeln!(out, "{}", r.join(" "))?;
                }
                Ok(())
            }
            Format::Pretty => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (i, c) in r.iter().enumerate() {
                        widths[i] = widths[i].max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(&self.header))?;
                for r in &self.rows {
                    writeln!(out, "{}", line(r))?;
                }
                Ok(())
            }
        }
    }
}

enum Failure {
    Usage(String),
    Identities,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

fn word(s: &str) -> Result<Word, Failure> {
    Ok(parse_word_arg(s)?)
}

/// Parses `A..B..step`, `A..B` or `N`.
fn parse_n_range(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("invalid n range {s:?}; expected A..B..step"));
    let parts: Vec<&str> = s.split("..").collect();
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let (a, b, step) = match nums[..] {
        [n] => (n, n, 1),
        [a, b] => (a, b, 1),
        [a, b, step] => (a, b, step),
        _ => return Err(bad()),
    };
    if step == 0 || a > b {
        return Err(bad());
    }
    Ok((a..=b).step_by(step).collect())
}

fn run(cli: &Cli) -> Result<Table, Failure> {
    Ok(match &cli.command {
        Command::Level { n } => {
            let mut t = Table::new(&["word", "length"]);
            for v in enumerate_level(*n).words {
                t.push(vec![render_word_arg(&v), v.len().to_string()]);
            }
            t
        }
        Command::Dcount { x, y, method } => {
            let (xw, yw) = (word(x)?, word(y)?);
            match method {
                Method::Dp => Table::scalar(&["dp"], vec![d_paths_dp(&xw, &yw).to_string()]),
                Method::Formula => {
                    Table::scalar(&["formula"], vec![d_paths_formula(&xw, &yw)?.to_string()])
                }
                Method::Both => {
                    let dp = d_paths_dp(&xw, &yw);
                    let formula = d_paths_formula(&xw, &yw)?;
                    let verdict = if dp == formula { "MATCH" } else { "MISMATCH" };
                    Table::scalar(
                        &["dp", "formula", "verdict"],
                        vec![dp.to_string(), formula.to_string(), verdict.to_string()],
                    )
                }
            }
        }
        Command::F { x, y, z } => {
            let value = FMemo::new().f(&word(x)?, *y, *z)?;
            Table::scalar(&["f"], vec![value.to_string()])
        }
        Command::G { x } => {
            let gs = g_all(&word(x)?);
            Table::scalar(&["g"], vec![gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")])
        }
        Command::Q { x } => Table::scalar(&["q"], vec![q(&word(x)?).to_string()]),
        Command::Pi { x } => Table::scalar(&["pi"], vec![pi(&word(x)?).to_string()]),
        Command::Dbeta { x } => {
            let xw = word(x)?;
            let mut t = Table::new(&["power", "coefficient"]);
            for (i, c) in d_beta(&xw).coeffs().iter().enumerate() {
                t.push(vec![i.to_string(), c.to_string()]);
            }
            t
        }
        Command::Dprime { x, w, beta } => {
            let value = d_beta_prime(&word(x)?, &TailOnesWord::parse(w)?, &parse_beta(beta)?)?;
            Table::scalar(&["dprime"], vec![value.to_string()])
        }
        Command::Measure { w, beta, n, float } => {
            let w = TailOnesWord::parse(w)?;
            let beta = parse_beta(beta)?;
            let mut t = Table::new(&["word", "mass"]);
            if *float {
                for (v, m) in level_distribution_f64(&w, &beta, *n)?.masses {
                    t.push(vec![render_word_arg(&v), format!("{m:e}")]);
                }
            } else {
                for (v, m) in level_distribution(&w, &beta, *n)?.masses {
                    t.push(vec![render_word_arg(&v), m.to_string()]);
                }
            }
            t
        }
        Command::Magic { w, beta, n, symbolic } => {
            let tab = build_table(&TailOnesWord::parse(w)?, &parse_beta(beta)?, *n)?;
            let mut header = vec!["word".to_string()];
            header.extend((0..=*n).map(|y| y.to_string()));
            let mut t = Table {
                header,
                rows: Vec::new(),
                scalar: false,
            };
            let cells = symbolic.then(|| tab.symbolic());
            for (r, v) in tab.words.iter().enumerate() {
                let mut row = vec![render_word_arg(v)];
                match &cells {
                    Some(c) => row.extend(c[r].iter().map(|s| s.render())),
                    None => row.extend(tab.entries[r].iter().map(|e| e.to_string())),
                }
                t.push(row);
            }
            t
        }
        Command::Sweep {
            mode,
            w,
            beta,
            l,
            eps,
            n,
            float,
        } => {
            let conc = match (mode, l, eps) {
                (Mode::Suffix, Some(l), None) => Concentration::Suffix { l: *l },
                (Mode::Pi, None, Some(e)) => Concentration::Pi {
                    eps: parse_rational(e)?,
                },
                (Mode::Suffix, _, _) => return Err(Failure::Usage("--mode suffix takes --l and no --eps".into())),
                (Mode::Pi, _, _) => return Err(Failure::Usage("--mode pi takes --eps and no --l".into())),
            };
            let report = concentration_sweep(
                &conc,
                &TailOnesWord::parse(w)?,
                &parse_beta(beta)?,
                &parse_n_range(n)?,
                *float,
            )?;
            let mut t = Table::new(&["mode", "w", "beta", "parameter", "n", "tail", "head", "arithmetic"]);
            let arith = if report.approximate { "float-nonauthoritative" } else { "exact" };
            for r in &report.rows {
                t.push(vec![
                    conc.mode_name().to_string(),
                    render_word_arg(report.w.core()),
                    report.beta.to_string(),
                    conc.parameter(),
                    r.n.to_string(),
                    r.tail.to_string(),
                    r.head.to_string(),
                    arith.to_string(),
                ]);
            }
            t
        }
        Command::Verify {
            max_rank,
            betas,
            cores,
        } => {
            let betas: Vec<Rational> = betas
                .split(',')
                .map(|b| parse_beta(b.trim()))
                .collect::<Result<_, _>>()?;
            let cores: Vec<TailOnesWord> = cores
                .split(',')
                .map(|c| TailOnesWord::parse(c.trim()))
                .collect::<Result<_, _>>()?;
            let report = identity_suite(&SuiteConfig {
                max_rank: *max_rank,
                betas,
                cores,
            })?;
            if cli.format == Format::Pretty {
                emit_text(cli, &report.summary())?;
            } else {
                let mut buf = Vec::new();
                report.write_csv(&mut buf)?;
                emit_text(cli, &String::from_utf8(buf).expect("csv is utf-8"))?;
            }
            if !report.all_passed() {
                return Err(Failure::Identities);
            }
            return Ok(Table::new(&[]));
        }
    })
}

fn out_path(cli: &Cli) -> Option<PathBuf> {
    let p = cli.out.as_ref()?;
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Some(PathBuf::from(dir).join(p)),
        _ => Some(p.clone()),
    }
}

fn emit_text(cli: &Cli, text: &str) -> io::Result<()> {
    match out_path(cli) {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn emit(cli: &Cli, table: &Table) -> io::Result<()> {
    match out_path(cli) {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            table.write(cli.format, &mut f)?;
            f.flush()
        }
        None => table.write(cli.format, io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let result = run(&cli).and_then(|t| {
        if matches!(cli.command, Command::Verify { .. }) {
            Ok(())
        } else {
            emit(&cli, &t).map_err(Failure::from)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identities) => {
            eprintln!("identity suite reported failures");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
