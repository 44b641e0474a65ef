//! Command-line surface: code construction, Monte Carlo simulation, design
//! optimization, and grid sweeps.
//!
//! Output is machine-readable: JSON for single results, CSV for sweeps (one
//! `# {config}` comment line, then a header row). Every artifact embeds its
//! resolved configuration, library version, and seed, so rerunning the
//! embedded config reproduces it byte-for-byte.
//!
//! Exit codes: 0 success, 2 usage error, 3 infeasible design, 4 truncated
//! simulation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use polarcat::analysis;
use polarcat::bch::OuterCode;
use polarcat::channel::{ChannelSpec, RngSeed};
use polarcat::frame::ConcatenatedScheme;
use polarcat::optimize::{
    self, design, design_with_candidates, DesignResult, FsrMode, GaCache, Scenario, SearchOptions,
};
use polarcat::polar::{ga_analyze, PolarCode};
use polarcat::simulate::{run_sim, DecoderKind, FramePlan, SimPlan, SimResult, StopRule};

const VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_USAGE: i32 = 2;
const EXIT_INFEASIBLE: i32 = 3;
const EXIT_TRUNCATED: i32 = 4;

#[derive(Parser, Serialize)]
#[command(
    name = "polarcat",
    version,
    about = "Polar-BCH concatenated code design and evaluation"
)]
struct Cli {
    /// Worker threads for simulation and search (default: all cores).
    /// Results are independent of this setting.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
enum Command {
    /// Prints a polar code six-tuple (and optionally the outer code and the
    /// concatenated scheme's predicted performance) as JSON.
    Construct(ConstructArgs),
    /// Monte Carlo frame simulation over an SNR grid; emits CSV rows.
    Simulate(SimulateArgs),
    /// Exhaustive design search for one scenario; emits a JSON result.
    Optimize(OptimizeArgs),
    /// Composite design+measure sweeps over frame-length or SNR grids.
    Sweep(SweepArgs),
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    /// Polar code length (power of two).
    #[arg(long)]
    np: usize,
    /// Polar message length.
    #[arg(long)]
    kp: usize,
    /// Design / evaluation SNR in dB.
    #[arg(long, allow_hyphen_values = true)]
    snr_db: f64,
    /// Outer BCH length 2^m - 1 (7..511).
    #[arg(long)]
    no: Option<usize>,
    /// Outer BCH designed correction capability.
    #[arg(long)]
    to: Option<usize>,
    /// Super-segments per frame.
    #[arg(long, default_value_t = 1)]
    beta: usize,
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ChannelKind {
    Awgn,
    Rayleigh,
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum DecoderArg {
    Fec,
    Sc,
}

#[derive(Args, Serialize)]
struct SimulateArgs {
    #[arg(long)]
    np: usize,
    #[arg(long)]
    kp: usize,
    #[arg(long)]
    no: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, default_value_t = 1)]
    beta: usize,
    /// Codewords per frame for the bare-polar baseline (no outer code;
    /// requires --decoder sc).
    #[arg(long)]
    ncw: Option<usize>,
    #[arg(long, value_enum, default_value_t = ChannelKind::Awgn)]
    channel: ChannelKind,
    /// Single evaluation SNR in dB (for Rayleigh: the average SNR).
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    /// SNR grid: comma list "0,2,4" or range "start:step:end".
    #[arg(long, allow_hyphen_values = true)]
    snr_grid: Option<String>,
    /// Rayleigh discretization states (echoed into the config; the
    /// simulation itself draws continuous block fading).
    #[arg(long, default_value_t = 64)]
    states: usize,
    #[arg(long, value_enum, default_value_t = DecoderArg::Fec)]
    decoder: DecoderArg,
    #[arg(long, default_value_t = 10_000)]
    frames: u64,
    /// Stop when the Wilson half-width falls below this fraction of the FSR
    /// estimate (checked every --frames frames, up to --max-frames).
    #[arg(long)]
    target_ci: Option<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    max_frames: u64,
    /// Payload bits per frame (default: full capacity).
    #[arg(long)]
    payload_len: Option<usize>,
    /// Throughput = this factor times measured FSR (default:
    /// payload_len / frame_bits).
    #[arg(long)]
    rate_factor: Option<f64>,
    #[arg(long, env = "POLARCAT_SEED", default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ScenarioArg {
    FixedNp,
    Phy,
    Mac,
    TargetFsr,
    Fading,
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FsrModeArg {
    Exact,
    Bound,
}

#[derive(Args, Serialize)]
struct OptimizeArgs {
    #[arg(long, value_enum)]
    scenario: ScenarioArg,
    /// Polar length: required for fixed-np; restricts the search for phy and
    /// fading.
    #[arg(long)]
    np: Option<usize>,
    /// Largest admissible outer-code length.
    #[arg(long, default_value_t = 511)]
    no_max: usize,
    #[arg(long)]
    lphy: Option<usize>,
    #[arg(long)]
    lmac: Option<usize>,
    #[arg(long)]
    fsr_target: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    /// Average SNR for the fading scenario.
    #[arg(long, allow_hyphen_values = true)]
    avg_snr_db: Option<f64>,
    #[arg(long, default_value_t = 64)]
    states: usize,
    #[arg(long, value_enum, default_value_t = FsrModeArg::Exact)]
    fsr_mode: FsrModeArg,
    /// Lift the t <= 2^(j-2)-1 enumeration bound.
    #[arg(long, default_value_t = false)]
    lift_t_bound: bool,
    /// Write every evaluated candidate as CSV to this path.
    #[arg(long)]
    dump_candidates: Option<String>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SweepKind {
    /// Fixed n_p over a PHY-length grid: per point, design + measure the
    /// FEC-assisted optimum and a rate-optimized bare-SC baseline.
    PhyLengths,
    /// Fixed n_p over an (average-)SNR grid, AWGN and/or Rayleigh designs;
    /// frames = 0 emits analytic predictions only.
    FadingGrid,
}

#[derive(Args, Serialize)]
struct SweepArgs {
    #[arg(long, value_enum)]
    kind: SweepKind,
    #[arg(long)]
    np: usize,
    #[arg(long)]
    lphy_grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    snr_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    snr_grid: Option<String>,
    /// Channel models for fading-grid: comma list of awgn,rayleigh.
    #[arg(long, default_value = "awgn,rayleigh")]
    channels: String,
    #[arg(long, default_value_t = 64)]
    states: usize,
    #[arg(long, default_value_t = 511)]
    no_max: usize,
    /// Decoders for phy-lengths: comma list of fec,sc.
    #[arg(long, default_value = "fec,sc")]
    decoders: String,
    /// Frames per measured point (0 = analytic only, fading-grid).
    #[arg(long, default_value_t = 10_000)]
    frames: u64,
    #[arg(long, env = "POLARCAT_SEED", default_value_t = 1)]
    seed: u64,
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(EXIT_USAGE);
}

fn validate_np(np: usize) {
    if !np.is_power_of_two() || np < 2 {
        usage_error("n_p must be a power of two (>= 2)");
    }
    if np > optimize::MAX_POLAR {
        usage_error("n_p exceeds the supported maximum of 512");
    }
}

fn build_outer(no: usize, to: usize) -> OuterCode {
    if !(no + 1).is_power_of_two() || !(7..=511).contains(&no) {
        usage_error("n_o must be 2^m - 1 with 7 <= n_o <= 511");
    }
    let m = (no + 1).ilog2();
    match OuterCode::construct_unbounded(m, to) {
        Some(code) => code,
        None => usage_error(&format!("no valid BCH code of length {no} with t = {to}")),
    }
}

/// Rebuilds the outer code a design search reported, by (n_o, k_o).
fn outer_by_params(n_o: usize, k_o: usize) -> OuterCode {
    let m = (n_o + 1).ilog2();
    let mut t = 1;
    while let Some(code) = OuterCode::construct_unbounded(m, t) {
        if code.k() == k_o {
            return code;
        }
        if code.k() < k_o {
            break;
        }
        t = code.t() + 1;
    }
    usage_error(&format!("no BCH code with n_o = {n_o}, k_o = {k_o}"));
}

fn scheme_from_design(d: &DesignResult, snr_db: f64) -> ConcatenatedScheme {
    let polar = PolarCode::construct(d.n_p, d.k_p, snr_db).expect("searched parameters are valid");
    let outer = outer_by_params(d.n_o, d.k_o);
    ConcatenatedScheme::new(polar, outer, d.beta).expect("beta >= 1")
}

fn parse_grid(spec: &str) -> Vec<f64> {
    let parse = |s: &str| -> f64 {
        s.trim()
            .parse()
            .unwrap_or_else(|_| usage_error(&format!("bad grid value '{s}'")))
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            usage_error("grid range must be start:step:end");
        }
        let (start, step, end) = (parse(parts[0]), parse(parts[1]), parse(parts[2]));
        if step <= 0.0 {
            usage_error("grid step must be positive");
        }
        let mut grid = Vec::new();
        let mut x = start;
        while x <= end + 1e-9 {
            grid.push(x);
            x += step;
        }
        grid
    } else {
        spec.split(',').map(parse).collect()
    }
}

fn parse_usize_grid(spec: &str) -> Vec<usize> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .unwrap_or_else(|_| usage_error(&format!("bad grid value '{s}'")))
        })
        .collect()
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&b| b + 1).collect()
}

fn cmd_construct(args: &ConstructArgs, config: serde_json::Value) {
    validate_np(args.np);
    if args.kp > args.np {
        usage_error("k_p must not exceed n_p");
    }
    let polar = PolarCode::construct(args.np, args.kp, args.snr_db)
        .unwrap_or_else(|e| usage_error(&e.to_string()));
    let ga = ga_analyze(args.np, args.snr_db).expect("validated");
    let mut out = json!({
        "version": VERSION,
        "config": config,
        "polar": {
            "n_p": polar.n(),
            "k_p": polar.k(),
            "rate": polar.rate(),
            "design_snr_db": polar.design_snr_db(),
            "frozen": one_based(&polar.frozen_positions()),
            "frozen_values": vec![0u8; polar.n() - polar.k()],
            "degradation_order": one_based(polar.degradation_order()),
            "eps": polar.bit_channel_eps(),
        },
    });
    match (args.no, args.to) {
        (Some(no), Some(to)) => {
            let outer = build_outer(no, to);
            out["outer"] = json!({
                "n_o": outer.n(),
                "k_o": outer.k(),
                "t_o": outer.t(),
                "rate": outer.rate(),
                "generator": outer.generator().to_string(),
            });
            let scheme = ConcatenatedScheme::new(polar, outer, args.beta)
                .unwrap_or_else(|e| usage_error(&e.to_string()));
            out["scheme"] = json!({
                "beta": scheme.beta,
                "l_phy": scheme.l_phy(),
                "l_mac": scheme.l_mac(),
                "rate": scheme.rate(),
                "predicted": analysis::report(&scheme, &ga, args.snr_db),
            });
        }
        (None, None) => {}
        _ => usage_error("--no and --to must be given together"),
    }
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
}

const SIM_CSV_HEADER: &str = "snr_db,fsr,ci_lo,ci_hi,throughput,frames,seed";

fn cmd_simulate(args: &SimulateArgs, config: serde_json::Value) {
    let grid: Vec<f64> = match (&args.snr_grid, args.snr_db) {
        (Some(spec), None) => parse_grid(spec),
        (None, Some(x)) => vec![x],
        _ => usage_error("provide exactly one of --snr-db or --snr-grid"),
    };
    validate_np(args.np);
    if args.kp > args.np || args.kp == 0 {
        usage_error("k_p must be in [1, n_p]");
    }
    let stop = match args.target_ci {
        Some(t) => StopRule::TargetRelCi {
            target: t,
            check_every: args.frames,
            max_frames: args.max_frames,
        },
        None => StopRule::FixedFrames(args.frames),
    };
    println!(
        "# {}",
        serde_json::to_string(&json!({"version": VERSION, "config": config})).unwrap()
    );
    println!("{SIM_CSV_HEADER}");
    let mut truncated = false;
    for &snr_db in &grid {
        let channel = match args.channel {
            ChannelKind::Awgn => ChannelSpec::awgn(snr_db),
            ChannelKind::Rayleigh => ChannelSpec::rayleigh(snr_db, args.states)
                .unwrap_or_else(|e| usage_error(&e.to_string())),
        };
        let frame = match args.ncw {
            Some(n_cw) => {
                if args.decoder != DecoderArg::Sc {
                    usage_error("--ncw is the bare-polar baseline and requires --decoder sc");
                }
                let code = PolarCode::construct(args.np, args.kp, snr_db)
                    .unwrap_or_else(|e| usage_error(&e.to_string()));
                FramePlan::PolarOnly { code, n_cw }
            }
            None => {
                let (no, to) = match (args.no, args.to) {
                    (Some(no), Some(to)) => (no, to),
                    _ => usage_error("--no and --to are required (or use --ncw for bare polar)"),
                };
                let polar = PolarCode::construct(args.np, args.kp, snr_db)
                    .unwrap_or_else(|e| usage_error(&e.to_string()));
                let scheme = ConcatenatedScheme::new(polar, build_outer(no, to), args.beta)
                    .unwrap_or_else(|e| usage_error(&e.to_string()));
                FramePlan::Concatenated(scheme)
            }
        };
        let decoder = match args.decoder {
            DecoderArg::Fec => DecoderKind::FecAssisted,
            DecoderArg::Sc => DecoderKind::ScBaseline,
        };
        let plan = SimPlan {
            frame,
            channel,
            decoder,
            stop,
            seed: RngSeed(args.seed),
            payload_len: args.payload_len,
            rate_factor: args.rate_factor,
        };
        let r = run_sim(&plan);
        truncated |= r.truncated;
        println!(
            "{snr_db},{},{},{},{},{},{}",
            r.fsr, r.ci_lo, r.ci_hi, r.throughput, r.frames, args.seed
        );
    }
    if truncated {
        std::process::exit(EXIT_TRUNCATED);
    }
}

fn cmd_optimize(args: &OptimizeArgs, config: serde_json::Value) {
    let opts = SearchOptions {
        fsr_mode: match args.fsr_mode {
            FsrModeArg::Exact => FsrMode::Exact,
            FsrModeArg::Bound => FsrMode::Bound,
        },
        lift_t_bound: args.lift_t_bound,
    };
    if let Some(np) = args.np {
        validate_np(np);
    }
    let need_snr = || {
        args.snr_db
            .unwrap_or_else(|| usage_error("--snr-db is required for this scenario"))
    };
    let (scenario, channel) = match args.scenario {
        ScenarioArg::FixedNp => {
            let n_p = args
                .np
                .unwrap_or_else(|| usage_error("--np is required for fixed-np"));
            (
                Scenario::FixedPolarLength {
                    n_p,
                    n_o_max: args.no_max,
                },
                ChannelSpec::awgn(need_snr()),
            )
        }
        ScenarioArg::Phy => {
            let l_phy = args
                .lphy
                .unwrap_or_else(|| usage_error("--lphy is required for phy"));
            (
                Scenario::ConstrainedPhy {
                    l_phy,
                    n_p_restrict: args.np,
                },
                ChannelSpec::awgn(need_snr()),
            )
        }
        ScenarioArg::Mac => {
            let l_mac = args
                .lmac
                .unwrap_or_else(|| usage_error("--lmac is required for mac"));
            (
                Scenario::ConstrainedMac { l_mac },
                ChannelSpec::awgn(need_snr()),
            )
        }
        ScenarioArg::TargetFsr => {
            let fsr_target = args
                .fsr_target
                .unwrap_or_else(|| usage_error("--fsr-target is required for target-fsr"));
            if !(0.0..=1.0).contains(&fsr_target) {
                usage_error("--fsr-target must be in [0, 1]");
            }
            let l_mac = args
                .lmac
                .unwrap_or_else(|| usage_error("--lmac is required for target-fsr"));
            (
                Scenario::TargetFsr { fsr_target, l_mac },
                ChannelSpec::awgn(need_snr()),
            )
        }
        ScenarioArg::Fading => {
            let avg = args
                .avg_snr_db
                .unwrap_or_else(|| usage_error("--avg-snr-db is required for fading"));
            let spec = ChannelSpec::rayleigh(avg, args.states)
                .unwrap_or_else(|e| usage_error(&e.to_string()));
            let scenario = match (args.np, args.lphy) {
                (Some(n_p), None) => Scenario::FixedPolarLength {
                    n_p,
                    n_o_max: args.no_max,
                },
                (_, Some(l_phy)) => Scenario::ConstrainedPhy {
                    l_phy,
                    n_p_restrict: args.np,
                },
                (None, None) => usage_error("fading requires --np and/or --lphy"),
            };
            (scenario, spec)
        }
    };
    let outcome = if args.dump_candidates.is_some() {
        design_with_candidates(scenario, &channel, &opts).map(|(r, dump)| (r, Some(dump)))
    } else {
        design(scenario, &channel, &opts).map(|r| (r, None))
    };
    match outcome {
        Ok((result, dump)) => {
            if let (Some(path), Some(cands)) = (&args.dump_candidates, dump) {
                let mut body = String::from("n_p,k_p,n_o,k_o,t_o,beta,fsr,objective\n");
                for c in &cands {
                    body.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        c.n_p, c.k_p, c.n_o, c.k_o, c.t_o, c.beta, c.fsr, c.objective
                    ));
                }
                std::fs::write(path, body)
                    .unwrap_or_else(|e| usage_error(&format!("cannot write {path}: {e}")));
            }
            let out = json!({
                "version": VERSION,
                "config": config,
                "feasible": true,
                "design": result,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Err(polarcat::Error::Infeasible(reason)) => {
            let out = json!({
                "version": VERSION,
                "config": config,
                "feasible": false,
                "scenario": format!("{scenario:?}"),
                "reason": reason,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            std::process::exit(EXIT_INFEASIBLE);
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

const SWEEP_CSV_HEADER: &str =
    "kind,channel,decoder,grid,snr_db,np,kp,no,ko,to,beta,predicted_t,fsr,ci_lo,ci_hi,throughput,frames,seed";

/// One sweep CSV row; empty strings mark fields a mode leaves undefined.
#[allow(clippy::too_many_arguments)]
fn sweep_row(
    kind: &str,
    channel: &str,
    decoder: &str,
    grid: String,
    snr_db: f64,
    code: (usize, usize, usize, usize, usize, usize),
    predicted_t: f64,
    measured: Option<&SimResult>,
    frames: u64,
    seed: u64,
) -> String {
    let (np, kp, no, ko, to, beta) = code;
    let (fsr, ci_lo, ci_hi, throughput) = match measured {
        Some(r) => (
            r.fsr.to_string(),
            r.ci_lo.to_string(),
            r.ci_hi.to_string(),
            r.throughput.to_string(),
        ),
        None => (String::new(), String::new(), String::new(), String::new()),
    };
    format!(
        "{kind},{channel},{decoder},{grid},{snr_db},{np},{kp},{no},{ko},{to},{beta},\
         {predicted_t},{fsr},{ci_lo},{ci_hi},{throughput},{frames},{seed}"
    )
}

fn cmd_sweep(args: &SweepArgs, config: serde_json::Value) {
    validate_np(args.np);
    println!(
        "# {}",
        serde_json::to_string(&json!({"version": VERSION, "config": config})).unwrap()
    );
    println!("{SWEEP_CSV_HEADER}");
    match args.kind {
        SweepKind::PhyLengths => sweep_phy_lengths(args),
        SweepKind::FadingGrid => sweep_fading_grid(args),
    }
}

/// Per PHY budget: the FEC-assisted constrained-PHY optimum (n_p pinned) and
/// the rate-optimized bare-SC baseline with N_cw = L_PHY / n_p codewords,
/// both measured by simulation.
fn sweep_phy_lengths(args: &SweepArgs) {
    let snr_db = args
        .snr_db
        .unwrap_or_else(|| usage_error("--snr-db is required"));
    let grid = args
        .lphy_grid
        .as_ref()
        .map(|g| parse_usize_grid(g))
        .unwrap_or_else(|| usage_error("--lphy-grid is required"));
    let decoders: Vec<&str> = args.decoders.split(',').map(str::trim).collect();
    let channel = ChannelSpec::awgn(snr_db);
    let cache = GaCache::new();
    let opts = SearchOptions::default();
    for &l_phy in &grid {
        for decoder in &decoders {
            match *decoder {
                "fec" => {
                    let scenario = Scenario::ConstrainedPhy {
                        l_phy,
                        n_p_restrict: Some(args.np),
                    };
                    let Ok(d) = design(scenario, &channel, &opts) else {
                        continue;
                    };
                    let mut plan = SimPlan::new(
                        FramePlan::Concatenated(scheme_from_design(&d, snr_db)),
                        channel.clone(),
                        DecoderKind::FecAssisted,
                        args.frames,
                        args.seed,
                    );
                    plan.rate_factor = Some(d.l_mac as f64 / l_phy as f64);
                    let r = run_sim(&plan);
                    println!(
                        "{}",
                        sweep_row(
                            "phy-lengths",
                            "awgn",
                            "fec",
                            l_phy.to_string(),
                            snr_db,
                            (d.n_p, d.k_p, d.n_o, d.k_o, d.t_o, d.beta),
                            d.objective,
                            Some(&r),
                            r.frames,
                            args.seed,
                        )
                    );
                }
                "sc" => {
                    let n_cw = l_phy / args.np;
                    if n_cw == 0 {
                        continue;
                    }
                    let (k_p, _fsr_pred, t_pred) =
                        optimize::optimize_sc_baseline(args.np, n_cw, &channel, &cache);
                    let code = PolarCode::construct(args.np, k_p, snr_db).expect("validated");
                    let plan = SimPlan::new(
                        FramePlan::PolarOnly { code, n_cw },
                        channel.clone(),
                        DecoderKind::ScBaseline,
                        args.frames,
                        args.seed,
                    );
                    let r = run_sim(&plan);
                    println!(
                        "{}",
                        sweep_row(
                            "phy-lengths",
                            "awgn",
                            "sc",
                            l_phy.to_string(),
                            snr_db,
                            (args.np, k_p, 0, 0, 0, 1),
                            t_pred,
                            Some(&r),
                            r.frames,
                            args.seed,
                        )
                    );
                }
                other => usage_error(&format!("unknown decoder '{other}'")),
            }
        }
    }
}

/// Per (average) SNR grid point and channel model: the fixed-n_p design
/// optimum, analytic by default, measured when frames > 0.
fn sweep_fading_grid(args: &SweepArgs) {
    let grid = args
        .snr_grid
        .as_ref()
        .map(|g| parse_grid(g))
        .unwrap_or_else(|| usage_error("--snr-grid is required"));
    let channels: Vec<&str> = args.channels.split(',').map(str::trim).collect();
    let opts = SearchOptions::default();
    for &snr_db in &grid {
        for model in &channels {
            let channel = match *model {
                "awgn" => ChannelSpec::awgn(snr_db),
                "rayleigh" => ChannelSpec::rayleigh(snr_db, args.states)
                    .unwrap_or_else(|e| usage_error(&e.to_string())),
                other => usage_error(&format!("unknown channel '{other}'")),
            };
            let scenario = Scenario::FixedPolarLength {
                n_p: args.np,
                n_o_max: args.no_max,
            };
            let Ok(d) = design(scenario, &channel, &opts) else {
                continue;
            };
            let code = (d.n_p, d.k_p, d.n_o, d.k_o, d.t_o, d.beta);
            if args.frames == 0 {
                println!(
                    "{}",
                    sweep_row(
                        "fading-grid",
                        model,
                        "fec",
                        format!("{snr_db}"),
                        snr_db,
                        code,
                        d.objective,
                        None,
                        0,
                        args.seed,
                    )
                );
            } else {
                let mut plan = SimPlan::new(
                    FramePlan::Concatenated(scheme_from_design(&d, snr_db)),
                    channel.clone(),
                    DecoderKind::FecAssisted,
                    args.frames,
                    args.seed,
                );
                plan.rate_factor = Some(d.l_mac as f64 / d.l_phy as f64);
                let r = run_sim(&plan);
                println!(
                    "{}",
                    sweep_row(
                        "fading-grid",
                        model,
                        "fec",
                        format!("{snr_db}"),
                        snr_db,
                        code,
                        d.objective,
                        Some(&r),
                        r.frames,
                        args.seed,
                    )
                );
            }
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .unwrap_or_else(|e| usage_error(&format!("cannot build worker pool: {e}")));
    }
    let config = serde_json::to_value(&cli.command).unwrap();
    match &cli.command {
        Command::Construct(args) => cmd_construct(args, config),
        Command::Simulate(args) => cmd_simulate(args, config),
        Command::Optimize(args) => cmd_optimize(args, config),
        Command::Sweep(args) => cmd_sweep(args, config),
    }
}
