//! Command-line front end. Settings come from an optional flat config file
//! and are overridden by flags.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use wordmeasure::branching::LrCache;
use wordmeasure::{
    dim_hook_content, dim_weyl, parse_word, power_word_fourier_exact, sym_dim, DominantWeight, FreeWord, MonomialSpec,
    Rational,
};

use crate::error::{LabError, Result};
use crate::experiments::{parse_monomial, Lab, Metric};
use crate::report::{Estimate, Report};
use crate::verify::property_suite;

pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const DEFAULT_VERIFY_DRAWS: u64 = 200;

/// Keys accepted in config files; each is also a `--key` flag.
pub const KNOWN_KEYS: &[&str] = &[
    "n", "word", "word2", "lambda", "ell", "beta", "gamma", "eps", "delta", "M", "m", "d", "samples", "seed", "workers",
    "metric", "out", "cache", "monomial", "force",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Fourier,
    ConvCheck,
    PowerExact,
    SpreadProb,
    ApproxEig,
    ProjectionLaw,
    SmallBall,
    TraceMoment,
    Weingarten,
    Dims,
    VerifyAll,
}

#[derive(Debug, Parser)]
#[command(name = "wordmeasure", version, about = "Word measures on unitary groups: exact kernels and seeded Monte Carlo")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub n: Option<String>,
    /// Word such as "x1 x2 x1^-1 x2^-1".
    #[arg(long)]
    pub word: Option<String>,
    /// Second word for conv-check; defaults to --word.
    #[arg(long)]
    pub word2: Option<String>,
    /// Highest weight such as "[1,-1]", padded with zeros to rank n.
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub ell: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub delta: Option<String>,
    /// Moment order for trace-moment.
    #[arg(long = "M")]
    pub big_m: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    /// Projection dimension for projection-law.
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long)]
    pub samples: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub workers: Option<String>,
    /// hs or geodesic.
    #[arg(long)]
    pub metric: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
    /// File backing the Littlewood–Richardson cache.
    #[arg(long)]
    pub cache: Option<String>,
    /// Monomial "f1;f2;h1;h2" with comma-separated 1-based indices.
    #[arg(long)]
    pub monomial: Option<String>,
    #[arg(long)]
    pub config: Option<String>,
    /// Run outside a theorem's hypotheses as an informational measurement.
    #[arg(long)]
    pub force: bool,
    /// Sweep one parameter, "key=v1,v2,...", writing CSV.
    #[arg(long)]
    pub sweep: Option<String>,
}

/// Resolved `key = value` settings.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn check_key(key: &str) -> Result<()> {
    if KNOWN_KEYS.contains(&key) {
        Ok(())
    } else {
        Err(LabError::Usage(format!("unknown setting {key:?}; known settings: {}", KNOWN_KEYS.join(", "))))
    }
}

impl Settings {
    /// Parses a flat config file: `key = value` per line, `#` comments.
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(LabError::Usage(format!("config line {}: expected key = value, got {line:?}", lineno + 1)));
            };
            let key = key.trim();
            check_key(key).map_err(|e| LabError::Usage(format!("config line {}: {e}", lineno + 1)))?;
            let value = value.trim().trim_matches('"');
            values.insert(key.to_string(), value.to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| LabError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse_config(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        check_key(key)?;
        self.values.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|e| LabError::Usage(format!("invalid value {v:?} for --{key}: {e}"))))
            .transpose()
    }

    pub fn require<T: FromStr>(&self, key: &str, command: Command) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)?.ok_or_else(|| {
            LabError::Usage(format!("{} needs --{key}", command.to_possible_value().expect("named").get_name()))
        })
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn word(&self, key: &str, command: Command) -> Result<FreeWord> {
        Ok(parse_word(&self.require::<String>(key, command)?)?)
    }

    fn weight(&self, n: usize, command: Command) -> Result<DominantWeight> {
        Ok(DominantWeight::parse_padded(&self.require::<String>("lambda", command)?, n)?)
    }

    fn lab(&self, default_samples: u64) -> Result<Lab> {
        let lab = Lab::new(self.get_or("samples", default_samples)?, self.get_or("seed", 0)?, self.get_or("workers", 1)?)
            .forced(self.get_or("force", false)?);
        Ok(match self.raw("cache") {
            Some(path) => lab.with_cache(LrCache::with_file(path)),
            None => lab,
        })
    }

    fn from_cli(cli: &Cli) -> Result<Self> {
        let mut s = match &cli.config {
            Some(path) => Self::load(Path::new(path))?,
            None => Self::default(),
        };
        let flags = [
            ("n", &cli.n),
            ("word", &cli.word),
            ("word2", &cli.word2),
            ("lambda", &cli.lambda),
            ("ell", &cli.ell),
            ("beta", &cli.beta),
            ("gamma", &cli.gamma),
            ("eps", &cli.eps),
            ("delta", &cli.delta),
            ("M", &cli.big_m),
            ("m", &cli.m),
            ("d", &cli.d),
            ("samples", &cli.samples),
            ("seed", &cli.seed),
            ("workers", &cli.workers),
            ("metric", &cli.metric),
            ("out", &cli.out),
            ("cache", &cli.cache),
            ("monomial", &cli.monomial),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                s.set(key, v.clone())?;
            }
        }
        if cli.force {
            s.set("force", "true")?;
        }
        Ok(s)
    }
}

/// What a command produces.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Report(Report),
    Json(Value),
    Text(String),
}

impl Output {
    fn exit_code(&self) -> i32 {
        match self {
            Output::Report(r) => r.exit_code(),
            _ => 0,
        }
    }

    fn render(&self) -> String {
        match self {
            Output::Report(r) => r.to_json(),
            Output::Json(v) => v.to_string(),
            Output::Text(t) => t.clone(),
        }
    }
}

fn dims(lambda: &DominantWeight) -> Value {
    let n = lambda.rank();
    let dim: Rational = dim_weyl(lambda);
    let partition = lambda.to_partition();
    let hook = partition.as_ref().map(|p| dim_hook_content::<Rational>(p, n).map(|d| d.to_string()).ok());
    let sym = partition.as_ref().map(|p| sym_dim::<Rational>(p).to_string());
    json!({
        "lambda": lambda.entries(),
        "n": n,
        "dim_weyl": dim.to_string(),
        "polynomial": partition.is_some(),
        "dim_hook_content": hook.flatten(),
        "sym_dim": sym,
    })
}

fn verify_all(lab: &Lab) -> Report {
    let start = std::time::Instant::now();
    let outcomes = property_suite(lab.seed, lab.samples as usize);
    let violations: u64 = outcomes.iter().map(|o| o.violations).sum();
    let instances: u64 = outcomes.iter().map(|o| o.instances).sum();
    let pass = outcomes.iter().all(|o| o.passed());
    let mut report = Report::new("verify_all", Estimate::exact(violations as f64), instances, lab.seed, lab.workers)
        .param("draws", lab.samples)
        .derived("checks", serde_json::to_value(&outcomes).expect("outcomes serialize"))
        .with_pass(Some(pass));
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Runs one command with resolved settings.
pub fn execute(command: Command, s: &Settings) -> Result<Output> {
    let c = command;
    let report = match command {
        Command::PowerExact => {
            let n: usize = s.require("n", c)?;
            let lambda = s.weight(n, c)?;
            let ell: usize = s.require("ell", c)?;
            let value = match s.raw("cache") {
                Some(path) => LrCache::with_file(path).power_word_fourier_exact(&lambda, ell)?,
                None => power_word_fourier_exact(&lambda, ell)?,
            };
            return Ok(Output::Text(value.to_string()));
        }
        Command::Dims => {
            let n: usize = s.require("n", c)?;
            return Ok(Output::Json(dims(&s.weight(n, c)?)));
        }
        Command::VerifyAll => verify_all(&s.lab(DEFAULT_VERIFY_DRAWS)?),
        Command::Fourier => {
            let n: usize = s.require("n", c)?;
            s.lab(DEFAULT_SAMPLES)?.mc_fourier(&s.word("word", c)?, &s.weight(n, c)?)?
        }
        Command::ConvCheck => {
            let n: usize = s.require("n", c)?;
            let w1 = s.word("word", c)?;
            let w2 = if s.raw("word2").is_some() { s.word("word2", c)? } else { w1.clone() };
            s.lab(DEFAULT_SAMPLES)?.mc_convolution_identity(&w1, &w2, &s.weight(n, c)?)?
        }
        Command::SpreadProb => s.lab(DEFAULT_SAMPLES)?.mc_spread_failure(
            &s.word("word", c)?,
            s.require("n", c)?,
            s.require("beta", c)?,
            s.require("eps", c)?,
            s.get("gamma")?,
        )?,
        Command::ApproxEig => s.lab(DEFAULT_SAMPLES)?.mc_approx_eigenvectors(
            &s.word("word", c)?,
            s.require("n", c)?,
            s.get_or("m", 1)?,
            s.require("eps", c)?,
        )?,
        Command::ProjectionLaw => {
            s.lab(DEFAULT_SAMPLES)?.mc_projection_law(s.require("d", c)?, s.require("n", c)?, s.require("eps", c)?)?
        }
        Command::SmallBall => {
            let word = match s.raw("word") {
                Some(w) => parse_word(w)?,
                None => FreeWord::generator(1)?,
            };
            let metric: Metric = s.get_or("metric", Metric::Geodesic)?;
            s.lab(DEFAULT_SAMPLES)?.mc_small_ball(&word, s.require("n", c)?, s.require("delta", c)?, metric)?
        }
        Command::TraceMoment => {
            s.lab(DEFAULT_SAMPLES)?.mc_trace_moment(&s.word("word", c)?, s.require("n", c)?, s.get_or("M", 1)?)?
        }
        Command::Weingarten => {
            let spec = match s.raw("monomial") {
                Some(text) => parse_monomial(text)?,
                None => MonomialSpec::abs_power(1, 1, s.get_or("m", 1)?)?,
            };
            s.lab(DEFAULT_SAMPLES)?.mc_weingarten_crosscheck(&spec, s.require("n", c)?)?
        }
    };
    Ok(Output::Report(report))
}

/// Runs `command` once per sweep value and renders the results as CSV.
pub fn sweep(command: Command, s: &Settings, spec: &str) -> Result<(String, i32)> {
    let (key, values) = spec
        .split_once('=')
        .ok_or_else(|| LabError::Usage(format!("bad sweep {spec:?}; expected key=v1,v2,...")))?;
    let key = key.trim();
    check_key(key)?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "param", "value", "experiment", "mean_re", "mean_im", "stderr", "pass", "bound", "n_samples", "seed", "workers",
    ])?;
    let mut code = 0;
    for value in values.split(',').map(str::trim).filter(|v| !v.is_empty()) {
        let mut point = s.clone();
        point.set(key, value)?;
        let Output::Report(r) = execute(command, &point)? else {
            return Err(LabError::Usage("sweeps need a Monte Carlo subcommand".into()));
        };
        code = code.max(r.exit_code());
        let opt = |x: Option<String>| x.unwrap_or_default();
        writer.write_record([
            key.to_string(),
            value.to_string(),
            r.experiment.clone(),
            r.estimate.mean_re.to_string(),
            r.estimate.mean_im.to_string(),
            r.estimate.stderr.to_string(),
            opt(r.pass.map(|p| p.to_string())),
            opt(r.bound.map(|b| b.to_string())),
            r.n_samples.to_string(),
            r.seed.to_string(),
            r.workers.to_string(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| LabError::Output(e.to_string()))?;
    Ok((String::from_utf8(bytes).expect("csv is utf-8"), code))
}

fn emit(text: &str, out_path: Option<&str>, stdout: &mut dyn Write) -> Result<()> {
    match out_path {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => writeln!(stdout, "{text}")?,
    }
    Ok(())
}

fn run_parsed(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let settings = Settings::from_cli(cli)?;
    let (text, code) = match &cli.sweep {
        Some(spec) => {
            let (csv, code) = sweep(cli.command, &settings, spec)?;
            (csv.trim_end().to_string(), code)
        }
        None => {
            let output = execute(cli.command, &settings)?;
            (output.render(), output.exit_code())
        }
    };
    emit(&text, settings.raw("out"), stdout)?;
    Ok(code)
}

/// Exit codes: 0 on PASS or informational, 2 on FAIL, 1 on usage and
/// hypothesis errors.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{rendered}");
                0
            } else {
                let _ = write!(stderr, "{rendered}");
                1
            };
        }
    };
    match run_parsed(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
