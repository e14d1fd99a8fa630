//! Command-line front end: tables, asymptotic constants and a golden-file
//! verifier.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use tangles::algebra::{BigInt, BigRational, ColorPoly, QuadraticNumber, Ring, Scalar, Series};
use tangles::golden::{self, GoldenTable, TableId};
use tangles::nm2_exact::{self, Field, SearchBox};
use tangles::planar::{PlanarOracle, DEFAULT_BUDGET, HARD_LIMIT};
use tangles::renorm::{solve_fixed_point, BareCorrelators};
use tangles::{n1_exact, Error};

/// Largest order accepted by `n1`.
pub const N1_MAX_ORDER: usize = 128;
/// Largest order accepted by `nm2`.
pub const NM2_MAX_ORDER: usize = 64;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    VerifyFailed = 1,
    Usage = 2,
    Budget = 3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Only {
    Tables,
    N1,
    Nm2,
    General,
    Asymptotics,
}

/// The loop weight: a rational number or kept symbolic.
#[derive(Clone, Debug, PartialEq)]
pub enum LoopWeight {
    Formal,
    Value(BigRational),
}

impl FromStr for LoopWeight {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "formal" {
            return Ok(LoopWeight::Formal);
        }
        let parsed = match s.split_once('/') {
            Some((a, b)) => a.trim().parse::<BigInt>().ok().zip(b.trim().parse::<BigInt>().ok()),
            None => s.trim().parse::<BigInt>().ok().map(|a| (a, BigInt::from(1))),
        };
        match parsed {
            Some((_, d)) if d == BigInt::from(0) => Err("zero denominator".into()),
            Some((a, d)) => Ok(LoopWeight::Value(BigRational::new(a, d))),
            None => Err(format!("expected a rational number or `formal`, got `{s}`")),
        }
    }
}

impl fmt::Display for LoopWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopWeight::Formal => f.write_str("formal"),
            LoopWeight::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "tangles", version, about = "Counts of prime alternating tangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Decimal digits for the singularity search.
    #[arg(long, global = true, default_value_t = 60)]
    pub precision: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest order the diagram enumerator may attempt.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tangle counts at n = 1 with a given number of legs.
    N1 {
        #[arg(long, default_value_t = 4)]
        legs: usize,
        #[arg(long, default_value_t = 32)]
        order: usize,
    },
    /// Four-leg counts at n = −2.
    Nm2 {
        #[arg(long, default_value_t = 32)]
        order: usize,
    },
    /// Renormalized four-leg functions at any n from the diagram enumerator.
    General {
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, default_value = "formal", allow_hyphen_values = true)]
        n: LoopWeight,
    },
    /// Singularities and large-order constants at n = 1 and n = −2.
    Asymptotics {
        /// Order at which the n = 1 estimates are compared.
        #[arg(long, default_value_t = 32)]
        order: usize,
    },
    /// Recompute everything and compare with the reference tables.
    Verify {
        #[arg(long, value_enum)]
        only: Option<Only>,
        /// Directory holding `tab1_G4c.tsv` and friends instead of the
        /// built-in tables.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

impl Cli {
    /// One line describing the effective configuration.
    pub fn describe(&self) -> String {
        let cmd = match &self.command {
            Command::N1 { legs, order } => format!("n1 legs={legs} order={order}"),
            Command::Nm2 { order } => format!("nm2 order={order}"),
            Command::General { order, n } => format!("general order={order} n={n}"),
            Command::Asymptotics { order } => format!("asymptotics order={order}"),
            Command::Verify { only, golden_dir } => format!(
                "verify only={} golden-dir={}",
                only.map_or("all".to_string(), |o| format!("{o:?}").to_lowercase()),
                golden_dir.as_ref().map_or("built-in".to_string(), |d| d.display().to_string())
            ),
        };
        let threads = self.threads.map_or("auto".to_string(), |t| t.to_string());
        format!(
            "{cmd} format={} precision={} threads={threads} budget={}",
            format!("{:?}", self.format).to_lowercase(),
            self.precision,
            self.budget
        )
    }
}

/// Rows of strings under named columns.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Tsv => {
                s += &format!("# {}\n", self.columns.join("\t"));
                for r in &self.rows {
                    s += &r.join("\t");
                    s.push('\n');
                }
            }
            Format::Json => {
                for r in &self.rows {
                    let obj: serde_json::Map<String, serde_json::Value> = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.clone(), serde_json::Value::String(v.clone())))
                        .collect();
                    s += &serde_json::Value::Object(obj).to_string();
                    s.push('\n');
                }
            }
        }
        s
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Budget { .. } => Exit::Budget,
            Error::InvalidArgument(_) => Exit::Usage,
            _ => Exit::VerifyFailed,
        };
        Failure { exit, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { exit: Exit::Usage, message: message.into() }
}

fn budget(message: impl Into<String>) -> Failure {
    Failure { exit: Exit::Budget, message: message.into() }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// `n1 --legs L --order P`.
pub fn cmd_n1(legs: usize, order: usize) -> Outcome<Table> {
    if legs < 4 || legs % 2 == 1 {
        return Err(usage(format!("--legs must be an even number ≥ 4, got {legs}")));
    }
    if order > N1_MAX_ORDER {
        return Err(budget(format!("order {order} exceeds the n1 limit {N1_MAX_ORDER}")));
    }
    let mut t = Table::new(&["p", &format!("G{legs}c")]);
    for (i, v) in n1_exact::tangle_counts(legs, order)?.iter().enumerate() {
        t.push(vec![(i + 1).to_string(), v.to_string()]);
    }
    Ok(t)
}

/// `nm2 --order P`.
pub fn cmd_nm2(order: usize) -> Outcome<Table> {
    if order > NM2_MAX_ORDER {
        return Err(budget(format!("order {order} exceeds the nm2 limit {NM2_MAX_ORDER}")));
    }
    let mut t = Table::new(&["p", "Gamma"]);
    for (i, v) in nm2_exact::gamma_table(order)?.iter().enumerate() {
        t.push(vec![(i + 1).to_string(), v.to_string()]);
    }
    Ok(t)
}

/// Renormalized `Γ₁`, `Γ₂` and `Γ₁ + (n+1)Γ₂`, which counts the tangles of
/// the table at `n = 1` and at `n = −2`.
pub fn cmd_general(order: usize, n: &LoopWeight, budget_limit: usize) -> Outcome<Table> {
    let oracle = PlanarOracle::new(budget_limit)?;
    let bare = BareCorrelators::from_oracle(&oracle, order)?;
    let mut t = Table::new(&["p", "gamma1", "gamma2", "vertical"]);
    match n {
        LoopWeight::Formal => {
            let sol = solve_fixed_point(&bare, order)?;
            let n1 = ColorPoly::n().add_ref(&ColorPoly::one());
            let v = sol.gamma1.add_series(&sol.gamma2.mul_scalar(&n1));
            push_series(&mut t, &[&sol.gamma1, &sol.gamma2, &v]);
        }
        LoopWeight::Value(x) => {
            let sol = solve_fixed_point(&bare.specialize(x), order)?;
            let n1 = x + BigRational::from_integer(1.into());
            let v = sol.gamma1.add_series(&sol.gamma2.mul_scalar(&n1));
            push_series(&mut t, &[&sol.gamma1, &sol.gamma2, &v]);
        }
    }
    Ok(t)
}

fn push_series<R: Ring + fmt::Display>(t: &mut Table, cols: &[&Series<R>]) {
    let order = cols.iter().map(|s| s.order()).min().unwrap_or(0);
    for p in 1..=order {
        let mut row = vec![p.to_string()];
        row.extend(cols.iter().map(|s| s.coeff(p).to_string()));
        t.push(row);
    }
}

fn hp_text(x: &nm2_exact::ComplexHP, digits: usize) -> String {
    let (re, im) = x.to_decimal(digits);
    let im = match im.strip_prefix('-') {
        Some(rest) => format!("- {rest}"),
        None => format!("+ {im}"),
    };
    format!("{re} {im}i")
}

/// Exact constants at `n = 1` and the numeric branch points at `n = −2`.
pub fn cmd_asymptotics(order: usize, digits: usize) -> Outcome<Table> {
    let mut t = Table::new(&["quantity", "value"]);
    let mut kv = |k: &str, v: String| t.push(vec![k.to_string(), v]);
    let (ac, g0c, tc) = n1_exact::critical_point()?;
    kv("n1.A_c", ac.to_string());
    kv("n1.g0_c", g0c.to_string());
    kv("n1.t_c", tc.to_string());
    let data = n1_exact::exact_constants()?;
    kv("n1.g_c", data.g_c.to_string());
    kv("n1.g_c.decimal", format!("{:.15}", data.g_c.to_f64()));
    kv("n1.a_sq", data.a_sq.to_string());
    kv("n1.b", data.b.to_string());
    let sol = n1_exact::solve_a(order)?;
    for l in 2..=4 {
        let c = n1_exact::asymptotics(&sol, l, order)?;
        kv(&format!("n1.ratio.G{}c.p{order}", 2 * l), format!("{:.6}", c.ratio));
    }
    let pair = nm2_exact::find_singularities(digits, &SearchBox::default())?;
    let s = &pair[0];
    kv("nm2.g_c", hp_text(&s.g_c, digits));
    kv("nm2.cst", hp_text(&s.amplitude, digits));
    kv("nm2.growth", format!("{:.10}", 1.0 / s.g_c.norm()));
    kv("nm2.exponent", format!("{:.6}", s.exponent));
    kv("nm2.newton_residual", format!("{:.3e}", s.residual));
    Ok(t)
}

/// The reference tables, built in or read from `dir`.
pub fn load_golden(dir: Option<&Path>) -> Outcome<Vec<GoldenTable>> {
    let Some(dir) = dir else { return Ok(golden::builtin()) };
    golden::COLUMNS
        .iter()
        .map(|&(table, column)| {
            let path = dir.join(format!("{table}_{column}.tsv"));
            let text = std::fs::read_to_string(&path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(GoldenTable::parse(table, column, &text)?)
        })
        .collect()
}

/// One verification line.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Compare computed `values[p−1]` with a golden column; reports the first
/// divergence.
pub fn compare_column(golden: &GoldenTable, values: &[BigInt], seconds: f64) -> Check {
    let name = format!("{} {}", golden.table, golden.column);
    for (p, want) in &golden.rows {
        let got = values.get(p - 1);
        if got != Some(want) {
            let got = got.map_or("nothing".to_string(), |g| g.to_string());
            return Check {
                name,
                pass: false,
                detail: format!("first divergence at p={p}: expected {want}, computed {got}"),
            };
        }
    }
    Check { name, pass: true, detail: format!("{} rows match ({seconds:.2} s)", golden.rows.len()) }
}

fn column<'a>(tables: &'a [GoldenTable], table: TableId, col: &str) -> &'a GoldenTable {
    tables.iter().find(|t| t.table == table && t.column == col).expect("every column is loaded")
}

fn tab1_checks(tables: &[GoldenTable]) -> Outcome<Vec<Check>> {
    let mut out = Vec::new();
    for g in tables.iter().filter(|t| t.table == TableId::Tab1) {
        let legs = golden::legs(g.column).expect("tab1 column");
        let top = g.rows.iter().map(|r| r.0).max().unwrap_or(0);
        let start = Instant::now();
        let values = n1_exact::tangle_counts(legs, top)?;
        out.push(compare_column(g, &values, start.elapsed().as_secs_f64()));
    }
    Ok(out)
}

fn tab2_checks(tables: &[GoldenTable]) -> Outcome<Vec<Check>> {
    let g = column(tables, TableId::Tab2, "Gamma");
    let top = g.rows.iter().map(|r| r.0).max().unwrap_or(0);
    let start = Instant::now();
    let values = nm2_exact::gamma_table(top)?;
    Ok(vec![compare_column(g, &values, start.elapsed().as_secs_f64())])
}

fn n1_constant_checks(order: usize) -> Outcome<Vec<Check>> {
    let (ac, g0c, tc) = n1_exact::critical_point()?;
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let crit = ac == q(3, 1) && g0c == q(4, 27) && tc == q(4, 3);
    let data = n1_exact::exact_constants()?;
    let want = QuadraticNumber::new(q(-101, 270), q(1, 270), 21001);
    let mut out = vec![
        Check {
            name: "n1 critical point".into(),
            pass: crit,
            detail: format!("A_c = {ac}, g0_c = {g0c}, t_c = {tc}"),
        },
        Check {
            name: "n1 g_c".into(),
            pass: data.g_c == want,
            detail: format!("g_c = {} (expected {want})", data.g_c),
        },
    ];
    let sol = n1_exact::solve_a(order)?;
    for l in 2..=4 {
        let c = n1_exact::asymptotics(&sol, l, order)?;
        out.push(Check {
            name: format!("n1 G{}c asymptotics", 2 * l),
            pass: (c.ratio - 1.0).abs() <= 0.10,
            detail: format!("predicted/exact at p={order} is {:.4} (tolerance 10%)", c.ratio),
        });
    }
    Ok(out)
}

fn nm2_asymptotic_checks(digits: usize) -> Outcome<Vec<Check>> {
    let pair = nm2_exact::find_singularities(digits, &SearchBox::default())?;
    let s = &pair[0];
    let g = s.g_c.approx();
    let c = s.amplitude.approx();
    let growth = 1.0 / g.norm();
    Ok(vec![
        Check {
            name: "nm2 g_c".into(),
            pass: (g.re + 0.239).abs() <= 2e-3 && (g.im.abs() - 0.135).abs() <= 2e-3,
            detail: format!("g_c = {} (target -0.239 ± 0.135i, tolerance 2e-3)", hp_text(&s.g_c, 20)),
        },
        Check {
            name: "nm2 amplitude".into(),
            pass: (c.re + 0.237).abs() <= 5e-2 && (c.im.abs() - 0.090).abs() <= 5e-2,
            detail: format!("cst = {} (target -0.237 ± 0.090i, tolerance 5e-2)", hp_text(&s.amplitude, 20)),
        },
        Check {
            name: "nm2 growth".into(),
            pass: (growth / 3.64 - 1.0).abs() <= 0.01,
            detail: format!("1/|g_c| = {growth:.6} (target 3.64, tolerance 1%)"),
        },
        Check {
            name: "nm2 exponent".into(),
            pass: (s.exponent - 0.5).abs() <= 0.05,
            detail: format!("local exponent {:.4} (target 0.5 ± 0.05)", s.exponent),
        },
    ])
}

fn general_checks(tables: &[GoldenTable], budget_limit: usize) -> Outcome<Vec<Check>> {
    let order = 4.min(budget_limit);
    let start = Instant::now();
    let oracle = PlanarOracle::new(budget_limit)?;
    let bare = BareCorrelators::from_oracle(&oracle, order)?;
    let elapsed = start.elapsed().as_secs_f64();
    let mut out = Vec::new();
    for (n, table, col) in [(1, TableId::Tab1, "G4c"), (-2, TableId::Tab2, "Gamma")] {
        let x = BigRational::from_integer(n.into());
        let sol = solve_fixed_point(&bare.specialize(&x), order)?;
        let w = x + BigRational::from_integer(1.into());
        let v = sol.gamma1.add_series(&sol.gamma2.mul_scalar(&w));
        let values: Vec<BigInt> = (1..=order)
            .map(|p| {
                let c = v.coeff(p);
                if c.is_integer() {
                    c.to_integer()
                } else {
                    BigInt::from(-999_999)
                }
            })
            .collect();
        let mut g = column(tables, table, col).clone();
        g.rows.retain(|r| r.0 <= order);
        let mut c = compare_column(&g, &values, elapsed);
        c.name = format!("general n={n} vs {table} {col}");
        out.push(c);
    }
    Ok(out)
}

/// All checks selected by `only`.
pub fn cmd_verify(only: Option<Only>, golden_dir: Option<&Path>, digits: usize, budget_limit: usize) -> Outcome<Vec<Check>> {
    let tables = load_golden(golden_dir)?;
    let want = |o: Only| only.is_none() || only == Some(o);
    let mut out = Vec::new();
    if want(Only::Tables) || want(Only::N1) {
        out.extend(tab1_checks(&tables)?);
    }
    if want(Only::Tables) || want(Only::Nm2) {
        out.extend(tab2_checks(&tables)?);
    }
    if want(Only::General) {
        out.extend(general_checks(&tables, budget_limit)?);
    }
    if want(Only::N1) || want(Only::Asymptotics) {
        out.extend(n1_constant_checks(32)?);
    }
    if want(Only::Nm2) || want(Only::Asymptotics) {
        out.extend(nm2_asymptotic_checks(digits)?);
    }
    Ok(out)
}

/// Run a parsed command; returns the rendered output and the exit code.
pub fn execute(cli: &Cli) -> Outcome<(String, Exit)> {
    if cli.precision < 50 || cli.precision > 1000 {
        return Err(usage(format!("--precision must lie in 50..=1000, got {}", cli.precision)));
    }
    if cli.budget > HARD_LIMIT {
        return Err(budget(format!("--budget {} exceeds the hard limit {HARD_LIMIT}", cli.budget)));
    }
    let table = match &cli.command {
        Command::N1 { legs, order } => cmd_n1(*legs, *order)?,
        Command::Nm2 { order } => cmd_nm2(*order)?,
        Command::General { order, n } => cmd_general(*order, n, cli.budget)?,
        Command::Asymptotics { order } => cmd_asymptotics(*order, cli.precision)?,
        Command::Verify { only, golden_dir } => {
            let checks = cmd_verify(*only, golden_dir.as_deref(), cli.precision, cli.budget)?;
            let mut t = Table::new(&["status", "check", "detail"]);
            for c in &checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                t.push(vec![status.into(), c.name.clone(), c.detail.clone()]);
            }
            let code = if checks.iter().all(|c| c.pass) { Exit::Success } else { Exit::VerifyFailed };
            return Ok((t.render(cli.format), code));
        }
    };
    Ok((table.render(cli.format), Exit::Success))
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage } else { Exit::Success };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code as i32;
        }
    };
    let _ = writeln!(err, "# tangles {}", cli.describe());
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return Exit::Usage as i32;
        }
        pool = pool.num_threads(t);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(Failure { exit: Exit::VerifyFailed, message: e.to_string() }),
    };
    match result {
        Ok((text, code)) => match out.write_all(text.as_bytes()) {
            Ok(()) => code as i32,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                Exit::VerifyFailed as i32
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.exit as i32
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_weight_parsing() {
        assert_eq!("formal".parse::<LoopWeight>(), Ok(LoopWeight::Formal));
        let v = |a: i64, b: i64| LoopWeight::Value(BigRational::new(a.into(), b.into()));
        assert_eq!("-2".parse::<LoopWeight>(), Ok(v(-2, 1)));
        assert_eq!("3/4".parse::<LoopWeight>(), Ok(v(3, 4)));
        assert!("1/0".parse::<LoopWeight>().is_err());
        assert!("two".parse::<LoopWeight>().is_err());
    }

    #[test]
    fn table_rendering() {
        let mut t = Table::new(&["p", "x"]);
        t.push(vec!["1".into(), "-7".into()]);
        assert_eq!(t.render(Format::Tsv), "# p\tx\n1\t-7\n");
        assert_eq!(t.render(Format::Json), "{\"p\":\"1\",\"x\":\"-7\"}\n");
    }

    #[test]
    fn first_divergence() {
        let g = GoldenTable::parse(TableId::Tab2, "Gamma", "1\t1\n2\t-1\n3\t1\n").unwrap();
        let ok = compare_column(&g, &[1, -1, 1].map(BigInt::from), 0.0);
        assert!(ok.pass);
        let bad = compare_column(&g, &[1, -1, 2].map(BigInt::from), 0.0);
        assert!(!bad.pass);
        assert!(bad.detail.contains("p=3"), "{}", bad.detail);
        let short = compare_column(&g, &[1, -1].map(BigInt::from), 0.0);
        assert!(!short.pass);
    }
}
