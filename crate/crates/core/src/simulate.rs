//! Monte Carlo measurement of frame success rate and effective throughput.
//!
//! Every frame draws its payload and channel noise from an independent
//! stream derived from (master seed, frame index), so results are
//! bit-identical for any worker count and any batching.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{transmit_with, ChannelSpec, RngSeed};
use crate::frame::{self, ConcatenatedScheme};
use crate::polar::{sc_decode, PolarCode, ScDecoderState};

/// What is transmitted per frame.
#[derive(Debug, Clone)]
pub enum FramePlan {
    /// A concatenated scheme frame of beta super-segments.
    Concatenated(ConcatenatedScheme),
    /// A frame of `n_cw` bare polar codewords (no outer code), the classic
    /// multi-codeword baseline.
    PolarOnly { code: PolarCode, n_cw: usize },
}

impl FramePlan {
    pub fn payload_capacity(&self) -> usize {
        match self {
            FramePlan::Concatenated(s) => s.l_mac(),
            FramePlan::PolarOnly { code, n_cw } => code.k() * n_cw,
        }
    }

    pub fn frame_bits(&self) -> usize {
        match self {
            FramePlan::Concatenated(s) => s.l_phy(),
            FramePlan::PolarOnly { code, n_cw } => code.n() * n_cw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DecoderKind {
    FecAssisted,
    ScBaseline,
}

/// Stopping rule for a run.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum StopRule {
    FixedFrames(u64),
    /// Stop once the Wilson half-width falls below `target` relative to the
    /// FSR estimate, checking every `check_every` frames, up to `max_frames`.
    TargetRelCi {
        target: f64,
        check_every: u64,
        max_frames: u64,
    },
}

#[derive(Debug, Clone)]
pub struct SimPlan {
    pub frame: FramePlan,
    pub channel: ChannelSpec,
    pub decoder: DecoderKind,
    pub stop: StopRule,
    pub seed: RngSeed,
    /// Payload bits drawn per frame; defaults to the full capacity.
    pub payload_len: Option<usize>,
    /// Multiplier for measured throughput (throughput = factor * FSR);
    /// defaults to payload_len / frame_bits.
    pub rate_factor: Option<f64>,
}

impl SimPlan {
    pub fn new(
        frame: FramePlan,
        channel: ChannelSpec,
        decoder: DecoderKind,
        frames: u64,
        seed: u64,
    ) -> Self {
        Self {
            frame,
            channel,
            decoder,
            stop: StopRule::FixedFrames(frames),
            seed: RngSeed(seed),
            payload_len: None,
            rate_factor: None,
        }
    }

    fn payload_len(&self) -> usize {
        self.payload_len
            .unwrap_or_else(|| self.frame.payload_capacity())
    }

    fn rate_factor(&self) -> f64 {
        self.rate_factor
            .unwrap_or_else(|| self.payload_len() as f64 / self.frame.frame_bits() as f64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimResult {
    pub frames: u64,
    pub successes: u64,
    pub fsr: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// rate factor times the FSR estimate.
    pub throughput: f64,
    /// Outer-decode failure counts per column position (FEC-assisted only).
    pub column_failures: Vec<u64>,
    /// Set when a TargetRelCi rule hit max_frames before reaching its target.
    pub truncated: bool,
    pub elapsed_secs: f64,
}

/// 95% Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

struct Tally {
    successes: u64,
    column_failures: Vec<u64>,
}

/// Runs one frame end to end; returns (success, per-column failure flags).
fn run_frame(plan: &SimPlan, frame_idx: u64) -> (bool, Vec<bool>) {
    let mut rng = plan.seed.stream(frame_idx);
    let payload_len = plan.payload_len();
    let payload: Vec<u8> = (0..payload_len).map(|_| rng.random_range(0..2u8)).collect();
    match &plan.frame {
        FramePlan::Concatenated(scheme) => {
            let frame_bits = frame::encode(scheme, &payload);
            let out = transmit_with(&frame_bits, &plan.channel, &mut rng);
            let decoded = match plan.decoder {
                DecoderKind::FecAssisted => frame::decode_fec_assisted(scheme, &out.llrs),
                DecoderKind::ScBaseline => frame::decode_sc_baseline(scheme, &out.llrs),
            };
            let ok = decoded.payload[..payload_len] == payload[..];
            let fails = decoded.column_ok.iter().map(|&c| !c).collect();
            (ok, fails)
        }
        FramePlan::PolarOnly { code, n_cw } => {
            let k = code.k();
            let mut frame_bits = Vec::with_capacity(code.n() * n_cw);
            for cw in 0..*n_cw {
                frame_bits.extend(code.encode(&payload[cw * k..(cw + 1) * k]));
            }
            let out = transmit_with(&frame_bits, &plan.channel, &mut rng);
            let n = code.n();
            let ok = (0..*n_cw).all(|cw| {
                let u = sc_decode(code, &out.llrs[cw * n..(cw + 1) * n]);
                code.extract_message(&u) == payload[cw * k..(cw + 1) * k]
            });
            (ok, Vec::new())
        }
    }
}

fn run_batch(plan: &SimPlan, start: u64, count: u64, columns: usize) -> Tally {
    (start..start + count)
        .into_par_iter()
        .fold(
            || Tally {
                successes: 0,
                column_failures: vec![0; columns],
            },
            |mut acc, idx| {
                let (ok, fails) = run_frame(plan, idx);
                acc.successes += ok as u64;
                for (slot, f) in acc.column_failures.iter_mut().zip(&fails) {
                    *slot += *f as u64;
                }
                acc
            },
        )
        .reduce(
            || Tally {
                successes: 0,
                column_failures: vec![0; columns],
            },
            |mut a, b| {
                a.successes += b.successes;
                for (x, y) in a.column_failures.iter_mut().zip(&b.column_failures) {
                    *x += y;
                }
                a
            },
        )
}

/// Runs the plan to completion under its stopping rule.
pub fn run_sim(plan: &SimPlan) -> SimResult {
    let start_time = std::time::Instant::now();
    let columns = match (&plan.frame, plan.decoder) {
        (FramePlan::Concatenated(s), DecoderKind::FecAssisted) => s.beta * s.polar.k(),
        _ => 0,
    };
    let mut frames = 0u64;
    let mut tally = Tally {
        successes: 0,
        column_failures: vec![0; columns],
    };
    let mut truncated = false;
    match plan.stop {
        StopRule::FixedFrames(n) => {
            tally = run_batch(plan, 0, n, columns);
            frames = n;
        }
        StopRule::TargetRelCi {
            target,
            check_every,
            max_frames,
        } => {
            let step = check_every.max(1);
            truncated = true;
            while frames < max_frames {
                let batch = step.min(max_frames - frames);
                let t = run_batch(plan, frames, batch, columns);
                tally.successes += t.successes;
                for (x, y) in tally.column_failures.iter_mut().zip(&t.column_failures) {
                    *x += y;
                }
                frames += batch;
                let (lo, hi) = wilson_interval(tally.successes, frames);
                let p = tally.successes as f64 / frames as f64;
                if p > 0.0 && (hi - lo) / 2.0 <= target * p {
                    truncated = false;
                    break;
                }
            }
        }
    }
    let fsr = tally.successes as f64 / frames as f64;
    let (ci_lo, ci_hi) = wilson_interval(tally.successes, frames);
    SimResult {
        frames,
        successes: tally.successes,
        fsr,
        ci_lo,
        ci_hi,
        throughput: plan.rate_factor() * fsr,
        column_failures: tally.column_failures,
        truncated,
        elapsed_secs: start_time.elapsed().as_secs_f64(),
    }
}

/// Runs each plan in order; one result row per plan.
pub fn sweep(plans: &[SimPlan]) -> Vec<SimResult> {
    plans.iter().map(run_sim).collect()
}

/// Genie-aided per-bit-channel error rates over an AWGN channel: every
/// decision is compared against the true input bit and then forced correct,
/// so each rate is conditioned on correct decoding of the previous bits.
/// Frozen positions report 0.
pub fn genie_bit_error_rates(
    code: &PolarCode,
    snr_db: f64,
    trials: u64,
    seed: RngSeed,
) -> Vec<f64> {
    let n = code.n();
    let spec = ChannelSpec::awgn(snr_db);
    let errors: Vec<u64> = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, trial| {
                let mut rng = seed.stream(trial);
                let msg: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2u8)).collect();
                let u = code.assemble_u(&msg);
                let c = code.encode_u(&u);
                let out = transmit_with(&c, &spec, &mut rng);
                let mut state = ScDecoderState::new(code, &out.llrs);
                for _ in 0..n {
                    let (b, d, frozen) = state.decode_next(code);
                    if !frozen {
                        if d != u[b] {
                            acc[b] += 1;
                        }
                        state.override_last(code, b, u[b]);
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    errors.iter().map(|&e| e as f64 / trials as f64).collect()
}
