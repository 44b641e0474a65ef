//! Exhaustive design-space search: given a budget scenario and a channel,
//! find the (polar, outer, beta) combination maximizing effective throughput
//! (or minimizing frame length under a target FSR).
//!
//! The search sweeps every admissible outer code family n_o = 2^j - 1 with
//! designed capability t in [1, 2^(j-2) - 1], every k_p in [1, n_p], and for
//! the constrained-PHY scenario every beta from 1 up to the budget floor.
//! GA runs are memoized per (n_p, SNR) within a search.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{ln_fsr_sc_baseline, ln_p_x};
use crate::bch::OuterCode;
use crate::channel::ChannelSpec;
use crate::polar::{ga_analyze, GaResult};
use crate::{Error, Result};

/// Smallest admissible outer-code length (BCH).
pub const N_O_MIN: usize = 7;
/// Largest polar length in the search space.
pub const MAX_POLAR: usize = 512;
/// Largest outer-code length (GF(2^9)).
pub const MAX_OUTER: usize = 511;

/// Which FSR estimate drives the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FsrMode {
    /// Product of P_x over the information set.
    Exact,
    /// Worst-information-channel lower bound.
    Bound,
}

/// Design scenario.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum Scenario {
    /// Single concatenation (beta = 1) at a given polar length; maximize
    /// T = r_o r_p FSR over outer codes of length up to n_o_max.
    FixedPolarLength { n_p: usize, n_o_max: usize },
    /// beta n_o n_p <= l_phy; maximize T = beta k_o k_p FSR / l_phy.
    /// `n_p_restrict` optionally pins the polar length within the budget.
    ConstrainedPhy {
        l_phy: usize,
        n_p_restrict: Option<usize>,
    },
    /// beta k_o k_p >= l_mac; maximize T = l_mac FSR / (beta n_o n_p).
    ConstrainedMac { l_mac: usize },
    /// Minimize beta n_o n_p subject to FSR >= fsr_target and
    /// beta k_o k_p >= l_mac.
    TargetFsr { fsr_target: f64, l_mac: usize },
}

/// Search options beyond the scenario itself.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchOptions {
    pub fsr_mode: FsrMode,
    /// Lifts the t <= 2^(j-2) - 1 enumeration bound to (n_o - 1) / 2.
    pub lift_t_bound: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            fsr_mode: FsrMode::Exact,
            lift_t_bound: false,
        }
    }
}

/// One evaluated candidate (used for dump files and diagnostics).
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub n_p: usize,
    pub k_p: usize,
    pub n_o: usize,
    pub k_o: usize,
    pub t_o: usize,
    pub beta: usize,
    pub fsr: f64,
    pub objective: f64,
}

/// The winning design plus search metadata.
#[derive(Debug, Clone, Serialize)]
pub struct DesignResult {
    pub n_p: usize,
    pub k_p: usize,
    pub n_o: usize,
    pub k_o: usize,
    pub t_o: usize,
    pub beta: usize,
    pub l_phy: usize,
    pub l_mac: usize,
    /// Predicted FSR under the chosen mode at the evaluation SNR (for fading
    /// designs, at the average SNR's state mix this is the state-averaged
    /// success probability).
    pub fsr: f64,
    /// Scenario objective value (throughput, or for TargetFsr the throughput
    /// of the shortest feasible frame).
    pub objective: f64,
    pub scenario: Scenario,
    pub fsr_mode: FsrMode,
    pub snr_db: f64,
    pub fading_states: Option<usize>,
    pub candidates_evaluated: u64,
}

/// Memoized GA runs keyed by (n_p, SNR bits).
#[derive(Default)]
pub struct GaCache {
    map: Mutex<HashMap<(usize, u64), Arc<GaResult>>>,
}

impl GaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize, snr_db: f64) -> Arc<GaResult> {
        let key = (n, snr_db.to_bits());
        if let Some(hit) = self.map.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let ga = Arc::new(ga_analyze(n, snr_db).expect("valid GA parameters"));
        self.map.lock().unwrap().insert(key, ga.clone());
        ga
    }
}

/// All outer codes of length 2^j - 1 <= n_o_max with t in the enumeration
/// range, deduplicated by generator (several t can reach the same code; the
/// largest designed capability is kept).
pub fn enumerate_outer_codes(n_o_max: usize, opts: &SearchOptions) -> Vec<OuterCode> {
    let mut out: Vec<OuterCode> = Vec::new();
    for m in 3..=9u32 {
        let n_o = (1usize << m) - 1;
        if n_o > n_o_max {
            break;
        }
        let t_max = if opts.lift_t_bound {
            (n_o - 1) / 2
        } else {
            (1usize << (m - 2)) - 1
        };
        let mut by_k: HashMap<usize, OuterCode> = HashMap::new();
        for t in 1..=t_max {
            let code = if opts.lift_t_bound {
                OuterCode::construct_unbounded(m, t)
            } else {
                OuterCode::construct(m, t)
            };
            if let Some(code) = code {
                by_k.entry(code.k())
                    .and_modify(|c| {
                        if code.t() > c.t() {
                            *c = code.clone();
                        }
                    })
                    .or_insert(code);
            }
        }
        let mut family: Vec<OuterCode> = by_k.into_values().collect();
        family.sort_by_key(|c| c.k());
        out.extend(family);
    }
    out
}

/// Admissible polar lengths for a PHY budget (or the full range).
fn polar_lengths(l_phy: Option<usize>, restrict: Option<usize>) -> Vec<usize> {
    let max = match l_phy {
        Some(budget) => {
            let cap = budget / N_O_MIN;
            if cap < 2 {
                return Vec::new();
            }
            (1usize << cap.ilog2()).min(MAX_POLAR)
        }
        None => MAX_POLAR,
    };
    let mut lengths = Vec::new();
    let mut n = 2;
    while n <= max {
        if restrict.is_none_or(|r| r == n) {
            lengths.push(n);
        }
        n *= 2;
    }
    lengths
}

/// Total order on candidates: higher objective first, then smaller beta,
/// smaller L_PHY, larger k_p, then ascending (n_p, n_o) and descending k_o.
/// A total order keeps the argmax unique, so the parallel reduction is
/// order-independent.
fn better(a: &Candidate, b: &Candidate) -> bool {
    if a.objective != b.objective {
        return a.objective > b.objective;
    }
    if a.beta != b.beta {
        return a.beta < b.beta;
    }
    if a.l_phy() != b.l_phy() {
        return a.l_phy() < b.l_phy();
    }
    if a.k_p != b.k_p {
        return a.k_p > b.k_p;
    }
    if a.n_p != b.n_p {
        return a.n_p < b.n_p;
    }
    if a.n_o != b.n_o {
        return a.n_o < b.n_o;
    }
    a.k_o > b.k_o
}

/// Total order for the TargetFsr scenario: shortest frame first, then higher
/// throughput, then ascending (n_p, n_o), larger k_p, descending k_o.
fn better_target(a: &Candidate, b: &Candidate) -> bool {
    if a.l_phy() != b.l_phy() {
        return a.l_phy() < b.l_phy();
    }
    if a.objective != b.objective {
        return a.objective > b.objective;
    }
    if a.n_p != b.n_p {
        return a.n_p < b.n_p;
    }
    if a.n_o != b.n_o {
        return a.n_o < b.n_o;
    }
    if a.k_p != b.k_p {
        return a.k_p > b.k_p;
    }
    a.k_o > b.k_o
}

impl Candidate {
    fn l_phy(&self) -> usize {
        self.beta * self.n_o * self.n_p
    }
}

/// Per-state GA data prepared for one (n_p, channel) pair: eps sorted most-
/// to least-degraded, one row per channel state.
struct StateEps {
    prob: f64,
    eps_ordered: Vec<f64>,
}

fn states_for(channel: &ChannelSpec, n_p: usize, cache: &GaCache) -> Vec<StateEps> {
    match channel {
        ChannelSpec::Awgn { snr_db } => {
            let ga = cache.get(n_p, *snr_db);
            vec![StateEps {
                prob: 1.0,
                eps_ordered: ga.order.iter().map(|&b| ga.eps[b]).collect(),
            }]
        }
        ChannelSpec::Rayleigh { states, .. } => states
            .iter()
            .map(|st| {
                let ga = cache.get(n_p, st.snr_db);
                StateEps {
                    prob: st.prob,
                    eps_ordered: ga.order.iter().map(|&b| ga.eps[b]).collect(),
                }
            })
            .collect(),
    }
}

/// Per-state log-FSR building blocks for one outer code: ln P_x over the
/// ordered channels, plus suffix sums so ln FSR_seg(k_p) is O(1) per query.
struct SegmentLnFsr {
    prob: f64,
    /// suffix[k] = sum of ln P_x over the k most reliable channels.
    suffix: Vec<f64>,
    /// ln P_x per channel in degradation order (for bound mode).
    ln_px: Vec<f64>,
}

fn segment_ln_fsr(states: &[StateEps], outer: &OuterCode) -> Vec<SegmentLnFsr> {
    states
        .iter()
        .map(|st| {
            let n_p = st.eps_ordered.len();
            let ln_px: Vec<f64> = st
                .eps_ordered
                .iter()
                .map(|&e| ln_p_x(e, outer.n(), outer.t()))
                .collect();
            let mut suffix = vec![0.0; n_p + 1];
            for k in 1..=n_p {
                suffix[k] = suffix[k - 1] + ln_px[n_p - k];
            }
            SegmentLnFsr {
                prob: st.prob,
                suffix,
                ln_px,
            }
        })
        .collect()
}

/// State-averaged FSR of a (k_p, beta) point from precomputed segments.
fn fsr_at(segments: &[SegmentLnFsr], k_p: usize, beta: usize, mode: FsrMode) -> f64 {
    let n_p = segments[0].ln_px.len();
    segments
        .iter()
        .map(|seg| {
            let ln_seg = match mode {
                FsrMode::Exact => seg.suffix[k_p],
                FsrMode::Bound => k_p as f64 * seg.ln_px[n_p - k_p],
            };
            seg.prob * (beta as f64 * ln_seg).exp()
        })
        .sum()
}

struct SearchOutcome {
    best: Option<Candidate>,
    evaluated: u64,
    dump: Option<Vec<Candidate>>,
}

fn search(
    scenario: Scenario,
    channel: &ChannelSpec,
    opts: &SearchOptions,
    cache: &GaCache,
    want_dump: bool,
) -> SearchOutcome {
    let is_target = matches!(scenario, Scenario::TargetFsr { .. });
    let prefer = if is_target { better_target } else { better };
    if let Scenario::TargetFsr { fsr_target, .. } = scenario {
        // Every bit channel has eps > 0 at finite SNR, so FSR < 1 exactly;
        // a target of 1 can only be met through floating-point underflow.
        if fsr_target >= 1.0 {
            return SearchOutcome {
                best: None,
                evaluated: 0,
                dump: want_dump.then(Vec::new),
            };
        }
    }

    let (lengths, outer_cap) = match scenario {
        Scenario::FixedPolarLength { n_p, n_o_max } => (vec![n_p], n_o_max.min(MAX_OUTER)),
        Scenario::ConstrainedPhy {
            l_phy,
            n_p_restrict,
        } => (polar_lengths(Some(l_phy), n_p_restrict), MAX_OUTER),
        Scenario::ConstrainedMac { .. } | Scenario::TargetFsr { .. } => {
            (polar_lengths(None, None), MAX_OUTER)
        }
    };

    let mut best: Option<Candidate> = None;
    let mut evaluated = 0u64;
    let mut dump = want_dump.then(Vec::new);

    for n_p in lengths {
        // Outer families that physically fit at least one segment
        // (n_o <= L_PHY / n_p); the beta loop enforces the rest.
        let outer_max = match scenario {
            Scenario::ConstrainedPhy { l_phy, .. } => {
                let cap = l_phy / n_p;
                if cap < N_O_MIN {
                    continue;
                }
                cap.min(outer_cap)
            }
            _ => outer_cap,
        };
        let outers = enumerate_outer_codes(outer_max, opts);
        if outers.is_empty() {
            continue;
        }
        let states = states_for(channel, n_p, cache);

        let outcomes: Vec<(Option<Candidate>, u64, Option<Vec<Candidate>>)> = outers
            .par_iter()
            .map(|outer| {
                let mut local_best: Option<Candidate> = None;
                let mut local_eval = 0u64;
                let mut local_dump = want_dump.then(Vec::new);
                let segments = segment_ln_fsr(&states, outer);
                let mut consider = |k_p: usize, beta: usize, fsr: f64, objective: f64| {
                    if let Scenario::TargetFsr { fsr_target, .. } = scenario {
                        if fsr < fsr_target {
                            return;
                        }
                    }
                    local_eval += 1;
                    let cand = Candidate {
                        n_p,
                        k_p,
                        n_o: outer.n(),
                        k_o: outer.k(),
                        t_o: outer.t(),
                        beta,
                        fsr,
                        objective,
                    };
                    if let Some(d) = local_dump.as_mut() {
                        d.push(cand.clone());
                    }
                    if local_best.as_ref().is_none_or(|b| prefer(&cand, b)) {
                        local_best = Some(cand);
                    }
                };
                match scenario {
                    Scenario::FixedPolarLength { .. } => {
                        for k_p in 1..=n_p {
                            let fsr = fsr_at(&segments, k_p, 1, opts.fsr_mode);
                            let rate = outer.rate() * k_p as f64 / n_p as f64;
                            consider(k_p, 1, fsr, rate * fsr);
                        }
                    }
                    Scenario::ConstrainedPhy { l_phy, .. } => {
                        for beta in 1..=(l_phy / (n_p * outer.n())) {
                            for k_p in 1..=n_p {
                                let fsr = fsr_at(&segments, k_p, beta, opts.fsr_mode);
                                let t = (beta * outer.k() * k_p) as f64 * fsr / l_phy as f64;
                                consider(k_p, beta, fsr, t);
                            }
                        }
                    }
                    Scenario::ConstrainedMac { l_mac } | Scenario::TargetFsr { l_mac, .. } => {
                        for k_p in 1..=n_p {
                            let beta = l_mac.div_ceil(outer.k() * k_p);
                            let fsr = fsr_at(&segments, k_p, beta, opts.fsr_mode);
                            let t = l_mac as f64 * fsr / (beta * outer.n() * n_p) as f64;
                            consider(k_p, beta, fsr, t);
                        }
                    }
                }
                (local_best, local_eval, local_dump)
            })
            .collect();

        for (cand, count, d) in outcomes {
            evaluated += count;
            if let (Some(dst), Some(mut src)) = (dump.as_mut(), d) {
                dst.append(&mut src);
            }
            if let Some(c) = cand {
                if best.as_ref().is_none_or(|b| prefer(&c, b)) {
                    best = Some(c);
                }
            }
        }
    }
    SearchOutcome {
        best,
        evaluated,
        dump,
    }
}

fn finish(
    scenario: Scenario,
    channel: &ChannelSpec,
    opts: &SearchOptions,
    outcome: SearchOutcome,
) -> Result<(DesignResult, Option<Vec<Candidate>>)> {
    let Some(c) = outcome.best else {
        return Err(Error::Infeasible(format!(
            "no admissible design under {scenario:?}"
        )));
    };
    let fading_states = match channel {
        ChannelSpec::Awgn { .. } => None,
        ChannelSpec::Rayleigh { states, .. } => Some(states.len()),
    };
    Ok((
        DesignResult {
            n_p: c.n_p,
            k_p: c.k_p,
            n_o: c.n_o,
            k_o: c.k_o,
            t_o: c.t_o,
            beta: c.beta,
            l_phy: c.l_phy(),
            l_mac: c.beta * c.k_o * c.k_p,
            fsr: c.fsr,
            objective: c.objective,
            scenario,
            fsr_mode: opts.fsr_mode,
            snr_db: channel.nominal_snr_db(),
            fading_states,
            candidates_evaluated: outcome.evaluated,
        },
        outcome.dump,
    ))
}

/// Runs the exhaustive search for a scenario over the given channel
/// (AWGN: objective T at the fixed SNR; Rayleigh: state-averaged objective).
pub fn design(
    scenario: Scenario,
    channel: &ChannelSpec,
    opts: &SearchOptions,
) -> Result<DesignResult> {
    let cache = GaCache::new();
    let outcome = search(scenario, channel, opts, &cache, false);
    finish(scenario, channel, opts, outcome).map(|(r, _)| r)
}

/// Same as [`design`], also returning every evaluated candidate.
pub fn design_with_candidates(
    scenario: Scenario,
    channel: &ChannelSpec,
    opts: &SearchOptions,
) -> Result<(DesignResult, Vec<Candidate>)> {
    let cache = GaCache::new();
    let outcome = search(scenario, channel, opts, &cache, true);
    finish(scenario, channel, opts, outcome).map(|(r, d)| (r, d.unwrap_or_default()))
}

/// Rate-optimized plain-SC baseline: the k_p maximizing
/// r_p * (prod (1 - eps_b))^n_cw, with the FSR and throughput at the optimum.
pub fn optimize_sc_baseline(
    n_p: usize,
    n_cw: usize,
    channel: &ChannelSpec,
    cache: &GaCache,
) -> (usize, f64, f64) {
    let states = states_for(channel, n_p, cache);
    let mut best = (1usize, 0.0f64, -1.0f64);
    for k_p in 1..=n_p {
        let fsr: f64 = states
            .iter()
            .map(|st| st.prob * ln_fsr_sc_baseline(&st.eps_ordered[n_p - k_p..], n_cw).exp())
            .sum();
        let t = k_p as f64 / n_p as f64 * fsr;
        if t > best.2 {
            best = (k_p, fsr, t);
        }
    }
    best
}
