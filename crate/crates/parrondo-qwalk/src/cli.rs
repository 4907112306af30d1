//! Command-line frontend: single runs, parameter sweeps, the classical
//! baseline, and full report generation.
//!
//! Physics parameters have no hidden defaults: sequence, coins, phase and
//! step count must be given explicitly, either as flags or through a
//! `key = value` config file (flags override file values). Angles are
//! radians by default; a `d` suffix selects degrees (`45d`).

use crate::contour::{zero_contour, GridField};
use crate::error::Error;
use crate::output;
use crate::sweep::{
    preset, run_sweep, AxisName, BaseConfig, RecordMode, SweepAxis, SweepSpec, PRESET_NAMES,
};
use crate::walk::{evolve, GameSpec, InitialCoin, Sequence};
use crate::{ClassicalParams, CoinParams, ObservableSeries};
use clap::{Args, Parser, Subcommand};
use std::collections::HashMap;
use std::path::{Path, PathBuf};

const TOOL: &str = concat!("parrondo-qwalk ", env!("CARGO_PKG_VERSION"));

/// Exit 2 for usage problems, 1 for runtime/I/O failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. }
            | Error::OracleCapacity(_)
            | Error::SingularSystem(_)
            | Error::InvalidEigenvalue(_)
            | Error::SweepPoint { .. } => CliError::Runtime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("I/O error: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "parrondo-qwalk", version, about = "Quantum-walk Parrondo game simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one game and write the per-step observable series
    Run(RunArgs),
    /// Run a parameter sweep (named preset or custom axes)
    Sweep(SweepArgs),
    /// Classical Parrondo baseline: Markov analysis or Monte Carlo
    Classical(ClassicalArgs),
    /// Regenerate every preset's CSV/SVG artifacts into a directory
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Game schedule over {A, B}, e.g. ABB
    #[arg(long)]
    sequence: Option<String>,
    /// Coin A angles alpha,beta,gamma (radians; `d` suffix for degrees)
    #[arg(long)]
    coin_a: Option<String>,
    /// Coin B angles alpha,beta,gamma
    #[arg(long)]
    coin_b: Option<String>,
    /// Phase applied to the coin at the origin
    #[arg(long)]
    phi: Option<String>,
    /// Initial coin polar angle, in [0, pi]
    #[arg(long)]
    theta: Option<String>,
    /// Initial coin relative phase, in [0, 2*pi)
    #[arg(long)]
    varphi: Option<String>,
    /// Number of walk steps
    #[arg(long)]
    steps: Option<String>,
    /// Output file path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Config file with `key = value` lines mirroring the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Named experiment preset
    #[arg(long)]
    preset: Option<String>,
    /// Axis definition name:start:stop:points (repeat for a second axis)
    #[arg(long)]
    axis: Vec<String>,
    /// Record mode for custom sweeps: final or series
    #[arg(long)]
    record: Option<String>,
    #[arg(long)]
    sequence: Option<String>,
    #[arg(long)]
    coin_a: Option<String>,
    #[arg(long)]
    coin_b: Option<String>,
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    varphi: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// Output CSV path (multi-panel presets append _<label>)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render an SVG heatmap to this path
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Worker threads (0 = auto); PARRONDO_QWALK_THREADS as fallback
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ClassicalArgs {
    /// Print the stationary distribution and expected value instead of
    /// simulating
    #[arg(long)]
    analytic: bool,
    /// Bias parameter, 0 <= c < 1/10
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    sequence: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Directory to fill with one CSV (and SVG where applicable) per
    /// preset panel
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
}

/// Values merged from the config file and the command line; flags win.
struct Merged {
    file: HashMap<String, String>,
}

impl Merged {
    fn load(config: &Option<PathBuf>) -> CliResult<Self> {
        let mut file = HashMap::new();
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {path:?}: {e}")))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(CliError::Usage(format!(
                        "config line {}: expected key = value, got {line:?}",
                        lineno + 1
                    )));
                };
                file.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Self { file })
    }

    fn opt(&self, key: &str, flag: &Option<String>) -> Option<String> {
        flag.clone().or_else(|| self.file.get(key).cloned())
    }

    fn req(&self, key: &str, flag: &Option<String>) -> CliResult<String> {
        self.opt(key, flag)
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{key}")))
    }
}

/// Parse an angle: radians by default, degrees with a `d` suffix.
fn parse_angle(s: &str) -> CliResult<f64> {
    let s = s.trim();
    let (body, degrees) = match s.strip_suffix(['d', 'D']) {
        Some(body) => (body, true),
        None => (s, false),
    };
    let v: f64 = body
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid angle {s:?}")))?;
    Ok(if degrees { v.to_radians() } else { v })
}

/// Parse `alpha,beta,gamma` with an optional `d` suffix per component.
fn parse_coin(s: &str) -> CliResult<CoinParams> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "coin must be alpha,beta,gamma, got {s:?}"
        )));
    }
    Ok(CoinParams::new(
        parse_angle(parts[0])?,
        parse_angle(parts[1])?,
        parse_angle(parts[2])?,
    )?)
}

fn parse_usize(key: &str, s: &str) -> CliResult<usize> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid --{key} value {s:?}")))
}

fn parse_u64(key: &str, s: &str) -> CliResult<u64> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid --{key} value {s:?}")))
}

fn parse_f64(key: &str, s: &str) -> CliResult<f64> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid --{key} value {s:?}")))
}

/// `name:start:stop:points`, angles accepted per component.
fn parse_axis(s: &str) -> CliResult<SweepAxis> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "axis must be name:start:stop:points, got {s:?}"
        )));
    }
    let name = AxisName::parse(parts[0].trim())?;
    Ok(SweepAxis::new(
        name,
        parse_angle(parts[1])?,
        parse_angle(parts[2])?,
        parse_usize("axis points", parts[3])?,
    )?)
}

fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("PARRONDO_QWALK_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Classical(args) => cmd_classical(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

struct GameInputs {
    raw: Vec<(&'static str, String)>,
    game: GameSpec,
    initial: InitialCoin,
    steps: usize,
}

/// Collect and validate the shared physics flags, keeping the raw strings
/// for verbatim metadata echo.
fn game_inputs(
    merged: &Merged,
    sequence: &Option<String>,
    coin_a: &Option<String>,
    coin_b: &Option<String>,
    phi: &Option<String>,
    theta: &Option<String>,
    varphi: &Option<String>,
    steps: &Option<String>,
) -> CliResult<GameInputs> {
    let raw_sequence = merged.req("sequence", sequence)?;
    let raw_coin_a = merged.req("coin-a", coin_a)?;
    let raw_coin_b = merged.req("coin-b", coin_b)?;
    let raw_phi = merged.req("phi", phi)?;
    let raw_theta = merged.req("theta", theta)?;
    let raw_varphi = merged.req("varphi", varphi)?;
    let raw_steps = merged.req("steps", steps)?;

    let game = GameSpec::new(
        parse_coin(&raw_coin_a)?,
        parse_coin(&raw_coin_b)?,
        Sequence::parse(&raw_sequence)?,
        parse_angle(&raw_phi)?,
    )?;
    let initial = InitialCoin::new(parse_angle(&raw_theta)?, parse_angle(&raw_varphi)?)?;
    let steps = parse_usize("steps", &raw_steps)?;
    if steps == 0 {
        return Err(CliError::Usage("--steps must be >= 1".into()));
    }
    Ok(GameInputs {
        raw: vec![
            ("sequence", raw_sequence),
            ("coin-a", raw_coin_a),
            ("coin-b", raw_coin_b),
            ("phi", raw_phi),
            ("theta", raw_theta),
            ("varphi", raw_varphi),
            ("steps", raw_steps),
        ],
        game,
        initial,
        steps,
    })
}

fn cmd_run(args: RunArgs) -> CliResult<()> {
    let merged = Merged::load(&args.config)?;
    let inputs = game_inputs(
        &merged,
        &args.sequence,
        &args.coin_a,
        &args.coin_b,
        &args.phi,
        &args.theta,
        &args.varphi,
        &args.steps,
    )?;
    let format = merged.opt("format", &args.format).unwrap_or_else(|| "csv".into());
    if format != "csv" && format != "json" {
        return Err(CliError::Usage(format!(
            "--format must be csv or json, got {format:?}"
        )));
    }
    let out = args
        .out
        .or_else(|| merged.file.get("out").map(PathBuf::from))
        .ok_or_else(|| CliError::Usage("missing required flag --out".into()))?;

    let mut series = ObservableSeries::default();
    let mut obs_err = None;
    evolve(&inputs.game, inputs.initial, inputs.steps, |state| {
        if obs_err.is_none() {
            if let Err(e) = series.push_from(state) {
                obs_err = Some(e);
            }
        }
    })?;
    if let Some(e) = obs_err {
        return Err(e.into());
    }

    let mut command = String::from("parrondo-qwalk run");
    for (k, v) in &inputs.raw {
        command.push_str(&format!(" --{k} {v}"));
    }
    command.push_str(&format!(" --format {format} --out {}", out.display()));
    let mut metadata = vec![format!("tool: {TOOL}"), format!("command: {command}")];
    for (k, v) in &inputs.raw {
        metadata.push(format!("{k}: {v}"));
    }

    let text = match format.as_str() {
        "csv" => output::series_csv(&series, &metadata),
        _ => output::series_json(&series, &metadata),
    };
    write_file(&out, &text)
}

/// Derive per-panel paths: a single panel keeps the given path, multiple
/// panels get `_<label>` appended to the stem.
fn panel_path(base: &Path, label: &str, multi: bool) -> PathBuf {
    if !multi {
        return base.to_path_buf();
    }
    let stem = base.file_stem().unwrap_or_default().to_string_lossy();
    let ext = base.extension().map(|e| e.to_string_lossy().to_string());
    let name = match ext {
        Some(ext) => format!("{stem}_{label}.{ext}"),
        None => format!("{stem}_{label}"),
    };
    base.with_file_name(name)
}

fn sweep_metadata(command: &str, label: &str, spec: &SweepSpec) -> Vec<String> {
    let mut m = vec![
        format!("tool: {TOOL}"),
        format!("command: {command}"),
        format!("panel: {label}"),
        format!("sequence: {}", spec.base.game.sequence),
        format!(
            "coin_a: {},{},{}",
            spec.base.game.coin_a.alpha(),
            spec.base.game.coin_a.beta(),
            spec.base.game.coin_a.gamma()
        ),
        format!(
            "coin_b: {},{},{}",
            spec.base.game.coin_b.alpha(),
            spec.base.game.coin_b.beta(),
            spec.base.game.coin_b.gamma()
        ),
        format!("phi: {}", spec.base.game.origin_phase),
        format!("theta: {}", spec.base.initial.theta()),
        format!("varphi: {}", spec.base.initial.varphi()),
        format!("steps: {}", spec.base.steps),
        format!("record: {}", spec.record_mode.as_str()),
    ];
    for (i, axis) in spec.axes.iter().enumerate() {
        m.push(format!(
            "axis{}: {}:{}:{}:{} (inclusive endpoints)",
            i + 1,
            axis.name.as_str(),
            axis.start,
            axis.stop,
            axis.points
        ));
    }
    m
}

fn write_sweep_outputs(
    command: &str,
    sweeps: &[(String, SweepSpec)],
    out: &Path,
    svg: Option<&Path>,
) -> CliResult<()> {
    let multi = sweeps.len() > 1;
    for (label, spec) in sweeps {
        let result = run_sweep(spec)?;
        let metadata = sweep_metadata(command, label, spec);
        write_file(&panel_path(out, label, multi), &output::sweep_csv(&result, &metadata))?;
        if let Some(svg_path) = svg {
            let contours = if spec.axes.len() == 2 && spec.record_mode == RecordMode::FinalOnly {
                Some(zero_contour(&GridField::from_sweep(&result)?))
            } else {
                None
            };
            let svg_text = output::heatmap_svg(&result, contours.as_deref())?;
            write_file(&panel_path(svg_path, label, multi), &svg_text)?;
        }
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> CliResult<()> {
    let merged = Merged::load(&args.config)?;
    let out = args
        .out
        .clone()
        .or_else(|| merged.file.get("out").map(PathBuf::from))
        .ok_or_else(|| CliError::Usage("missing required flag --out".into()))?;
    let threads = thread_count(args.threads);
    let preset_name = merged.opt("preset", &args.preset);

    let (command, sweeps) = if let Some(name) = preset_name {
        let p = preset(&name)?;
        let mut command = format!("parrondo-qwalk sweep --preset {name} --out {}", out.display());
        if let Some(svg) = &args.svg {
            command.push_str(&format!(" --svg {}", svg.display()));
        }
        (command, p.sweeps)
    } else {
        // custom sweep from explicit flags / config
        let inputs = game_inputs(
            &merged,
            &args.sequence,
            &args.coin_a,
            &args.coin_b,
            &args.phi,
            &args.theta,
            &args.varphi,
            &args.steps,
        )?;
        let mut axis_specs: Vec<String> = args.axis.clone();
        if axis_specs.is_empty() {
            for key in ["axis", "axis2"] {
                if let Some(v) = merged.file.get(key) {
                    axis_specs.push(v.clone());
                }
            }
        }
        if axis_specs.is_empty() || axis_specs.len() > 2 {
            return Err(CliError::Usage(format!(
                "custom sweeps need 1 or 2 --axis definitions, got {}",
                axis_specs.len()
            )));
        }
        let axes = axis_specs
            .iter()
            .map(|s| parse_axis(s))
            .collect::<CliResult<Vec<_>>>()?;
        let record_raw = merged.opt("record", &args.record).unwrap_or_else(|| "final".into());
        let record_mode = match record_raw.as_str() {
            "final" => RecordMode::FinalOnly,
            "series" => RecordMode::FullSeries,
            other => {
                return Err(CliError::Usage(format!(
                    "--record must be final or series, got {other:?}"
                )))
            }
        };
        let spec = SweepSpec {
            base: BaseConfig {
                game: inputs.game.clone(),
                initial: inputs.initial,
                steps: inputs.steps,
            },
            axes,
            record_mode,
        };
        spec.validate()?;
        let mut command = String::from("parrondo-qwalk sweep");
        for (k, v) in &inputs.raw {
            command.push_str(&format!(" --{k} {v}"));
        }
        for a in &axis_specs {
            command.push_str(&format!(" --axis {a}"));
        }
        command.push_str(&format!(" --record {record_raw} --out {}", out.display()));
        if let Some(svg) = &args.svg {
            command.push_str(&format!(" --svg {}", svg.display()));
        }
        (command, vec![("custom".to_string(), spec)])
    };

    in_pool(threads, || {
        write_sweep_outputs(&command, &sweeps, &out, args.svg.as_deref())
    })?
}

fn cmd_classical(args: ClassicalArgs) -> CliResult<()> {
    let merged = Merged::load(&args.config)?;
    let raw_c = merged.req("c", &args.c)?;
    let params = ClassicalParams::new(parse_f64("c", &raw_c)?)?;

    if args.analytic {
        let t = crate::transition_matrix(params);
        let d = crate::stationary_distribution(&t)?;
        let ev = crate::game_b_expected_value(params)?;
        println!("c = {}", params.c());
        println!(
            "win probabilities: p_A = {}, p_B1 = {}, p_B2 = {}",
            params.p_a(),
            params.p_b1(),
            params.p_b2()
        );
        println!("stationary distribution d = ({}, {}, {})", d[0], d[1], d[2]);
        println!("game B expected value per round = {ev}");
        return Ok(());
    }

    let raw_sequence = merged.req("sequence", &args.sequence)?;
    let raw_steps = merged.req("steps", &args.steps)?;
    let raw_trials = merged.req("trials", &args.trials)?;
    let raw_seed = merged.req("seed", &args.seed)?;
    let out = args
        .out
        .or_else(|| merged.file.get("out").map(PathBuf::from))
        .ok_or_else(|| CliError::Usage("missing required flag --out".into()))?;

    let sequence = Sequence::parse(&raw_sequence)?;
    let steps = parse_usize("steps", &raw_steps)?;
    let trials = parse_usize("trials", &raw_trials)?;
    let seed = parse_u64("seed", &raw_seed)?;
    if steps == 0 || trials == 0 {
        return Err(CliError::Usage("--steps and --trials must be >= 1".into()));
    }

    let threads = thread_count(args.threads);
    let traj = in_pool(threads, || {
        crate::simulate_classical(&sequence, params, steps, trials, seed)
    })?;

    let command = format!(
        "parrondo-qwalk classical --sequence {raw_sequence} --c {raw_c} --steps {raw_steps} --trials {raw_trials} --seed {raw_seed} --out {}",
        out.display()
    );
    let mut metadata = vec![
        format!("tool: {TOOL}"),
        format!("command: {command}"),
        format!("sequence: {raw_sequence}"),
        format!("c: {raw_c}"),
        format!("steps: {raw_steps}"),
        format!("trials: {raw_trials}"),
        format!("seed: {raw_seed}"),
    ];
    if sequence.as_str().len() > 1 {
        metadata.push(
            "note: composite classical sequences are an extension beyond the single-game baseline"
                .into(),
        );
    }
    write_file(&out, &output::classical_csv(&traj, &metadata))
}

fn cmd_report(args: ReportArgs) -> CliResult<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    let threads = thread_count(args.threads);
    in_pool(threads, || -> CliResult<()> {
        for name in PRESET_NAMES {
            let p = preset(name)?;
            let csv_base = args.out_dir.join(format!("{name}.csv"));
            let multi = p.sweeps.len() > 1;
            for (label, spec) in &p.sweeps {
                let result = run_sweep(spec)?;
                let csv_path = panel_path(&csv_base, label, multi);
                let command = format!(
                    "parrondo-qwalk sweep --preset {name} --out {}",
                    csv_base.display()
                );
                write_file(&csv_path, &output::sweep_csv(&result, &sweep_metadata(&command, label, spec)))?;
                // SVG where the sweep shape supports a heatmap
                let heatmap_shape = (spec.axes.len() == 2
                    && spec.record_mode == RecordMode::FinalOnly)
                    || (spec.axes.len() == 1 && spec.record_mode == RecordMode::FullSeries);
                if heatmap_shape {
                    let contours = if spec.axes.len() == 2 {
                        Some(zero_contour(&GridField::from_sweep(&result)?))
                    } else {
                        None
                    };
                    let svg_text = output::heatmap_svg(&result, contours.as_deref())?;
                    let svg_path = panel_path(&args.out_dir.join(format!("{name}.svg")), label, multi);
                    write_file(&svg_path, &svg_text)?;
                }
            }
        }
        Ok(())
    })?
}
