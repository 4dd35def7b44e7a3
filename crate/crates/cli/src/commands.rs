//! Command-line definitions and the code behind each subcommand.

use std::io::Write;
use std::path::{Path, PathBuf};

use agq_core::agq::{build_rule, RuleOptions, Seed, Stopping};
use agq_core::expsum::{build_expsum, dirichlet_residuals, residual_report, ExpSumOptions};
use agq_core::measures::{MomentKind, SampleGrid};
use agq_core::numerics::{Context, Real, DEFAULT_DIGITS};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, Demo, DIRICHLET_ORDER};
use crate::error::{CliError, Result};
use crate::io::{describe_warning, read_json, read_text, write_json, write_text, Csv, ExpSumFile, RuleFile};
use crate::measure::MeasureSpec;

#[derive(Debug, Parser)]
#[command(name = "agq", version, about = "Approximate Gaussian quadrature from moments")]
pub struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "AGQ_PRECISION", default_value_t = DEFAULT_DIGITS)]
    pub precision: u32,
    /// File of `key = value` lines supplying defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a rule and its error certificate.
    Build(BuildArgs),
    /// Per-degree error and certificate of a stored rule.
    Sweep(SweepArgs),
    /// AGQ against Gauss-Legendre on the benchmark integrands.
    Tables(TablesArgs),
    /// Exponential-sum approximation of uniform samples.
    Expsum(ExpsumArgs),
    /// Singular values of a Hankel moment matrix.
    Svd(SvdArgs),
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// lebesgue_pm1, lebesgue_01, chebyshev1, logweight, trig, discrete or moments.
    #[arg(long)]
    pub measure: String,
    /// Discrete measure: comma separated atoms, complex as `re:im`.
    #[arg(long, allow_hyphen_values = true)]
    pub atoms: Option<String>,
    /// Discrete measure: comma separated weights.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// `moments` measure: file with one `re[,im]` per line.
    #[arg(long)]
    pub moments: Option<PathBuf>,
    /// Moment kind for discrete and tabulated measures.
    #[arg(long, value_enum, default_value_t = Kind::Power)]
    pub kind: Kind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Power,
    Trig,
}

impl From<Kind> for MomentKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Power => MomentKind::Power,
            Kind::Trig => MomentKind::Trigonometric,
        }
    }
}

impl MeasureArgs {
    pub fn spec(&self) -> Result<MeasureSpec> {
        match self.measure.as_str() {
            "discrete" => {
                let (Some(a), Some(w)) = (&self.atoms, &self.weights) else {
                    return Err(CliError::Usage("discrete measure needs --atoms and --weights".into()));
                };
                MeasureSpec::discrete(self.kind.into(), a, w)
            }
            "moments" => {
                let path = self.moments.as_ref().ok_or_else(|| CliError::Usage("moments measure needs --moments FILE".into()))?;
                MeasureSpec::from_moment_lines(self.kind.into(), &read_text(path)?)
            }
            name => MeasureSpec::builtin(name),
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("stop").required(true).args(["eps", "nodes"])))]
pub struct BuildArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// Order N: the number of moments, minus one, that quasiorthogonality controls.
    #[arg(long)]
    pub order: usize,
    /// Stop at the smallest degree with least-squares residual at most this.
    #[arg(long)]
    pub eps: Option<String>,
    /// Fixed node count.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Degree search start: `eps`, `off`, or a relative rank threshold.
    #[arg(long, default_value = "eps")]
    pub seed: String,
    /// Largest degree tried.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Drop nodes whose weight is below this fraction of the largest.
    #[arg(long)]
    pub prune: Option<String>,
    /// Rule file to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Monomial,
    Trig,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Rule file written by `build`.
    #[arg(long)]
    pub rule: PathBuf,
    /// `monomial` for power rules (`x^n`), `trig` for trigonometric ones (`e^{inx}`).
    #[arg(long, value_enum, default_value_t = Family::Monomial)]
    pub family: Family,
    /// Highest degree swept.
    #[arg(long, default_value_t = 700)]
    pub nmax: usize,
    /// CSV to write; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script plotting the CSV.
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Benchmark: 2 for log(1-x/1.05), 3 for 1/(1-x/1.05), 4 for exp(-10x).
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
    pub table: u8,
    /// CSV to write; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add a runtime column (breaks byte-identical reruns).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["samples", "demo"])))]
pub struct ExpsumArgs {
    /// Sample file: `a,<x>`, `b,<x>`, `M,<int>` then `M + 1` lines `re[,im]`.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    /// bessel0, bessel25 or dirichlet.
    #[arg(long)]
    pub demo: Option<String>,
    /// Stop at the fewest terms with least-squares residual at most this.
    #[arg(long)]
    pub eps: Option<String>,
    /// Fixed term count.
    #[arg(long, conflicts_with = "eps")]
    pub terms: Option<usize>,
    /// Upper limit on the term count.
    #[arg(long)]
    pub terms_max: Option<usize>,
    /// JSON file for the approximation.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV of per-point absolute errors.
    #[arg(long)]
    pub residuals: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SvdArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// Rows; the matrix is `size x (size + 1)` unless `--cols` is given.
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

/// Run a parsed command, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    if cli.precision < 10 {
        return Err(CliError::Usage(format!("precision must be at least 10 digits, got {}", cli.precision)));
    }
    let ctx = Context::new(cli.precision);
    match &cli.command {
        Command::Build(a) => build(a, &ctx, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Tables(a) => tables(a, &ctx, out),
        Command::Expsum(a) => expsum(a, &ctx, out),
        Command::Svd(a) => svd(a, &ctx, out),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(CliError::io("<stdout>"))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_text(p, text),
        None => out.write_all(text.as_bytes()).map_err(CliError::io("<stdout>")),
    }
}

fn positive(ctx: &Context, s: &str, what: &str) -> Result<Real> {
    let v = ctx.parse(s)?;
    if !v.is_positive() {
        return Err(CliError::Usage(format!("{what} must be positive, got {s}")));
    }
    Ok(v)
}

fn build(a: &BuildArgs, ctx: &Context, out: &mut dyn Write) -> Result<()> {
    let spec = a.measure.spec()?;
    let stopping = match (&a.eps, a.nodes) {
        (Some(e), _) => Stopping::Residual(positive(ctx, e, "--eps")?),
        (None, Some(k)) => Stopping::Nodes(k),
        (None, None) => unreachable!("clap enforces --eps or --nodes"),
    };
    let top = match (&stopping, a.max_degree) {
        (Stopping::Nodes(k), m) => m.unwrap_or(0).max(k.saturating_sub(1)),
        (Stopping::Residual(_), Some(m)) => m,
        (Stopping::Residual(_), None) => a.order.saturating_sub(1),
    };
    let mu = spec.moments(a.order + top + 1, ctx)?;
    let mut opts = RuleOptions::new(stopping);
    opts.max_degree = a.max_degree;
    opts.seed = match a.seed.as_str() {
        "eps" => Seed::Epsilon,
        "off" => Seed::Off,
        s => Seed::Delta(positive(ctx, s, "--seed")?),
    };
    if let Some(p) = &a.prune {
        opts.prune_tol = ctx.parse(p)?;
    }
    let (rule, cert) = build_rule(&mu, a.order, &opts, ctx)?;
    say(out, &format!("measure: {}", rule.descriptor))?;
    say(out, &format!("order N = {}, degree d = {}, nodes = {}", rule.order, rule.degree, rule.len()))?;
    say(out, &format!("residual inf = {}", rule.epsilon.to_sci(6, ctx)))?;
    say(out, &format!("residual 2 = {}", rule.residual_2.to_sci(6, ctx)))?;
    say(out, &format!("certified up to degree {}", cert.max_degree()))?;
    if !rule.pruned.is_empty() {
        say(out, &format!("pruned {} nodes", rule.pruned.len()))?;
    }
    if let Some(p) = &a.out {
        write_json(p, &RuleFile::new(&rule, spec, ctx))?;
        say(out, &format!("wrote {}", p.display()))?;
    }
    Ok(())
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let file: RuleFile = read_json(&a.rule)?;
    // Rules carry their own precision.
    let ctx = file.context();
    let (rule, cert) = file.to_rule(&ctx)?;
    let want = match a.family {
        Family::Monomial => MomentKind::Power,
        Family::Trig => MomentKind::Trigonometric,
    };
    if rule.kind != want {
        return Err(CliError::Usage(format!("family {:?} does not match a {} rule", a.family, rule.kind.as_str())));
    }
    let exact = file.measure.moments(a.nmax, &ctx)?;
    let points = bench::sweep(&rule, &cert, &exact, a.nmax)?;
    let mut csv = Csv::new(&["n", "measured_error", "bound"]);
    for p in &points {
        csv.push(vec![
            p.n.to_string(),
            p.error.to_decimal(&ctx),
            p.bound.as_ref().map_or(String::new(), |b| b.to_decimal(&ctx)),
        ]);
    }
    emit(out, a.out.as_deref(), &csv.render())?;
    if let (Some(g), Some(o)) = (&a.gnuplot, &a.out) {
        write_text(g, &gnuplot_sweep(o))?;
    }
    Ok(())
}

fn tables(a: &TablesArgs, ctx: &Context, out: &mut dyn Write) -> Result<()> {
    let rows = bench::bench_table(a.table, ctx.digits())?;
    let mut header = vec!["integrand", "nodes", "listed_order", "order", "agq_error", "gl_error", "bound", "ref_agq", "ref_gl"];
    if a.timing {
        header.push("runtime_s");
    }
    let mut csv = Csv::new(&header);
    for r in &rows {
        let mut cells = vec![
            r.integrand.name().to_string(),
            r.spec.nodes.to_string(),
            r.spec.listed_order.to_string(),
            r.order.to_string(),
            r.agq_error.to_decimal(ctx),
            r.classical_error.to_decimal(ctx),
            r.bound.to_decimal(ctx),
            format!("{:e}", r.spec.ref_agq),
            format!("{:e}", r.spec.ref_gl),
        ];
        if a.timing {
            cells.push(format!("{:.3}", r.runtime.as_secs_f64()));
        }
        csv.push(cells);
    }
    emit(out, a.out.as_deref(), &csv.render())
}

fn expsum(a: &ExpsumArgs, ctx: &Context, out: &mut dyn Write) -> Result<()> {
    let stopping = match (&a.eps, a.terms) {
        (Some(e), _) => Some(Stopping::Residual(positive(ctx, e, "--eps")?)),
        (None, Some(0)) => return Err(CliError::Usage("--terms must be positive".into())),
        (None, Some(k)) => Some(Stopping::Nodes(k)),
        (None, None) => None,
    };
    let d_max = match a.terms_max {
        Some(0) => return Err(CliError::Usage("--terms-max must be positive".into())),
        m => m.map(|k| k - 1),
    };
    let (approx, residuals) = if let Some(name) = &a.demo {
        let demo: Demo = name.parse()?;
        let stop = stopping.unwrap_or(Stopping::Nodes(bench::BESSEL_TERMS));
        let (e, grid) = bench::run_demo(demo, stop, d_max, ctx)?;
        let res = match grid {
            Some(g) => residual_report(&e, &g, ctx).per_sample,
            None => dirichlet_residuals(&e, DIRICHLET_ORDER, ctx),
        };
        (e, res)
    } else {
        let path = a.samples.as_ref().expect("clap enforces --samples or --demo");
        let grid = SampleGrid::parse_csv(&read_text(path)?, ctx)?;
        let mut opts = ExpSumOptions::new(stopping.unwrap_or_else(|| Stopping::Residual(ctx.tol(20))));
        opts.max_degree = d_max;
        let e = build_expsum(&grid, &opts, ctx)?;
        let res = residual_report(&e, &grid, ctx).per_sample;
        (e, res)
    };
    let max = residuals.iter().map(|(_, e)| e.clone()).fold(ctx.zero(), Real::max);
    say(out, &format!("terms = {}, internal order N = {}", approx.len(), approx.order))?;
    say(out, &format!("quasiorthogonality residual = {}", approx.epsilon.to_sci(6, ctx)))?;
    say(out, &format!("max abs error on grid = {}", max.to_sci(6, ctx)))?;
    for w in &approx.warnings {
        eprintln!("warning: {}", describe_warning(w));
    }
    if let Some(p) = &a.out {
        write_json(p, &ExpSumFile::new(&approx, ctx))?;
    }
    if let Some(p) = &a.residuals {
        let mut csv = Csv::new(&["x", "abs_error"]);
        for (x, e) in &residuals {
            csv.push(vec![x.to_decimal(ctx), e.to_decimal(ctx)]);
        }
        write_text(p, &csv.render())?;
    }
    Ok(())
}

fn svd(a: &SvdArgs, ctx: &Context, out: &mut dyn Write) -> Result<()> {
    let spec = a.measure.spec()?;
    let cols = a.cols.unwrap_or(a.size + 1);
    let s = bench::hankel_spectrum(&spec, a.size, cols, ctx)?;
    let mut csv = Csv::new(&["index", "sigma"]);
    for (i, v) in s.iter().enumerate() {
        csv.push(vec![(i + 1).to_string(), v.to_decimal(ctx)]);
    }
    emit(out, a.out.as_deref(), &csv.render())?;
    if let (Some(g), Some(o)) = (&a.gnuplot, &a.out) {
        write_text(g, &gnuplot_svd(o))?;
    }
    Ok(())
}

fn gnuplot_sweep(csv: &Path) -> String {
    format!(
        "set datafile separator ','\nset logscale y\nset xlabel 'n'\nset ylabel 'absolute error'\n\
         plot '{0}' using 1:2 skip 1 with lines title 'measured', \\\n     '{0}' using 1:3 skip 1 with lines title 'bound'\n",
        csv.display()
    )
}

fn gnuplot_svd(csv: &Path) -> String {
    format!(
        "set datafile separator ','\nset logscale y\nset xlabel 'i'\nset ylabel 'sigma_i'\n\
         plot '{}' using 1:2 skip 1 with points pt 7 title 'singular values'\n",
        csv.display()
    )
}
