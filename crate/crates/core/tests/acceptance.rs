//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;

use polarcat::analysis::{fsr_fec_assisted, fsr_lower_bound, p_x};
use polarcat::bch::OuterCode;
use polarcat::channel::{ChannelSpec, RngSeed};
use polarcat::frame::ConcatenatedScheme;
use polarcat::optimize::{
    design, design_with_candidates, enumerate_outer_codes, FsrMode, GaCache, Scenario,
    SearchOptions,
};
use polarcat::polar::{ga_analyze, sc_decode, PolarCode, LLR_CLIP};
use polarcat::simulate::{genie_bit_error_rates, run_sim, DecoderKind, FramePlan, SimPlan};

fn pass(criterion: u32, detail: &str) {
    println!("criterion {criterion}: PASS — {detail}");
}

fn cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_polarcat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

fn cli_design(args: &[&str]) -> serde_json::Value {
    let (stdout, code) = cli(args);
    assert_eq!(code, 0, "optimize failed: {args:?}\n{stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("JSON output");
    v["design"].clone()
}

fn scheme(n_p: usize, k_p: usize, m: u32, t: usize, beta: usize, snr: f64) -> ConcatenatedScheme {
    ConcatenatedScheme::new(
        PolarCode::construct(n_p, k_p, snr).unwrap(),
        OuterCode::construct(m, t).unwrap(),
        beta,
    )
    .unwrap()
}

/// Criterion 1: Table-reproduction for the constrained-PHY scenario via the
/// CLI. Exact parameters, or a near-tie no worse than tabulated - 0.01.
#[test]
fn criterion_01_constrained_phy_table() {
    let tab_5db: [(usize, (usize, usize), f64); 4] = [
        (256, (63, 45), 0.51),
        (512, (127, 92), 0.52),
        (1024, (255, 187), 0.53),
        (2048, (511, 376), 0.53),
    ];
    for (l_phy, (n_o, k_o), t_tab) in tab_5db {
        let d = cli_design(&[
            "optimize",
            "--scenario",
            "phy",
            "--lphy",
            &l_phy.to_string(),
            "--snr-db",
            "5",
        ]);
        let t_star = d["objective"].as_f64().unwrap();
        let exact_params =
            d["n_p"] == 4 && d["k_p"] == 3 && d["beta"] == 1 && d["n_o"] == n_o && d["k_o"] == k_o;
        if exact_params {
            assert!(
                (t_star - t_tab).abs() <= 0.01,
                "L={l_phy}: exact params but T* {t_star} vs {t_tab}"
            );
        } else {
            assert!(
                t_star >= t_tab - 0.01,
                "L={l_phy}: params {d} with T* {t_star} below near-tie floor of {t_tab}"
            );
        }
    }
    let tab_0db = [(256usize, 0.19), (512, 0.18), (1024, 0.19), (2048, 0.20)];
    for (l_phy, t_tab) in tab_0db {
        let d = cli_design(&[
            "optimize",
            "--scenario",
            "phy",
            "--lphy",
            &l_phy.to_string(),
            "--snr-db",
            "0",
        ]);
        let t_star = d["objective"].as_f64().unwrap();
        assert!(
            (t_star - t_tab).abs() <= 0.01,
            "0 dB, L={l_phy}: T* {t_star} vs {t_tab}"
        );
    }
    pass(
        1,
        "constrained-PHY optima match the tabulated values at 5 and 0 dB",
    );
}

/// Criterion 2: constrained-MAC table at 5 dB (throughput and frame length)
/// and the beta pattern at 0 dB.
#[test]
fn criterion_02_constrained_mac_table() {
    let tab_5db = [
        (128usize, 0.49, 252usize),
        (256, 0.50, 496),
        (512, 0.50, 1020),
        (1024, 0.51, 1984),
    ];
    for (l_mac, t_tab, l_phy_tab) in tab_5db {
        let d = cli_design(&[
            "optimize",
            "--scenario",
            "mac",
            "--lmac",
            &l_mac.to_string(),
            "--snr-db",
            "5",
        ]);
        let t_star = d["objective"].as_f64().unwrap();
        assert!(
            (t_star - t_tab).abs() <= 0.01,
            "L_MAC={l_mac}: T* {t_star} vs {t_tab}"
        );
        let l_phy = d["l_phy"].as_u64().unwrap() as i64;
        let block = (d["n_o"].as_u64().unwrap() * d["n_p"].as_u64().unwrap()) as i64;
        assert!(
            (l_phy - l_phy_tab as i64).abs() <= block,
            "L_MAC={l_mac}: L_PHY {l_phy} not within one code block of {l_phy_tab}"
        );
    }
    let beta_0db = [3u64, 3, 3, 1];
    for (i, l_mac) in [128usize, 256, 512, 1024].into_iter().enumerate() {
        let d = cli_design(&[
            "optimize",
            "--scenario",
            "mac",
            "--lmac",
            &l_mac.to_string(),
            "--snr-db",
            "0",
        ]);
        assert_eq!(
            d["beta"].as_u64().unwrap(),
            beta_0db[i],
            "0 dB, L_MAC={l_mac}: beta"
        );
    }
    pass(
        2,
        "constrained-MAC optima match Table values at 5 dB; beta = {3,3,3,1} at 0 dB",
    );
}

/// Criterion 3: the n = 8, 5 dB degradation order, in under a millisecond.
#[test]
fn criterion_03_degradation_order() {
    let _warmup = ga_analyze(8, 5.0).unwrap();
    let start = std::time::Instant::now();
    let ga = ga_analyze(8, 5.0).unwrap();
    let elapsed = start.elapsed();
    let one_based: Vec<usize> = ga.order.iter().map(|&b| b + 1).collect();
    assert_eq!(one_based, vec![1, 2, 3, 5, 4, 6, 7, 8]);
    assert!(elapsed.as_micros() < 1000, "GA took {elapsed:?}");
    pass(3, &format!("w = (1,2,3,5,4,6,7,8) in {elapsed:?}"));
}

/// Criterion 4: genie-aided Monte Carlo vs GA eps, 3 standard errors per bit
/// channel with eps >= 1e-4.
///
/// KNOWN RED: the fitted GA model under-predicts the all-check bit channel
/// (GA 0.22404 vs true 0.23325, a 7-sigma gap at 1e5 trials); the other
/// seven channels agree within ~1.4 sigma.
#[test]
fn criterion_04_ga_vs_monte_carlo() {
    let trials = 100_000u64;
    let code = PolarCode::construct(8, 8, 5.0).unwrap();
    let ga = ga_analyze(8, 5.0).unwrap();
    let start = std::time::Instant::now();
    let rates = genie_bit_error_rates(&code, 5.0, trials, RngSeed(2024));
    assert!(start.elapsed().as_secs() < 60, "runtime budget");
    let mut lines = Vec::new();
    let mut worst_z: f64 = 0.0;
    for (b, (&measured, &eps)) in rates.iter().zip(&ga.eps).enumerate() {
        if eps < 1e-4 {
            continue;
        }
        let sigma = (eps * (1.0 - eps) / trials as f64).sqrt();
        let z = (measured - eps) / sigma;
        worst_z = worst_z.max(z.abs());
        lines.push(format!(
            "bit {}: GA {eps:.5} measured {measured:.5} z {z:+.2}",
            b + 1
        ));
    }
    let detail = lines.join("; ");
    assert!(
        worst_z <= 3.0,
        "criterion 4: FAIL — GA eps outside 3 standard errors: {detail}"
    );
    pass(4, &detail);
}

/// Criterion 5: analytic FSR vs simulation for the (4,3)+(7,4,1) scheme at
/// 5 dB over 1e5 frames, both against measured-eps and GA-eps predictions.
#[test]
fn criterion_05_fsr_vs_simulation() {
    let start = std::time::Instant::now();
    let s = scheme(4, 3, 3, 1, 1, 5.0);
    let plan = SimPlan::new(
        FramePlan::Concatenated(s),
        ChannelSpec::awgn(5.0),
        DecoderKind::FecAssisted,
        100_000,
        4242,
    );
    let r = run_sim(&plan);
    // Per-bit-channel error rates measured independently of GA.
    let full = PolarCode::construct(4, 4, 5.0).unwrap();
    let rates = genie_bit_error_rates(&full, 5.0, 200_000, RngSeed(99));
    let ga = ga_analyze(4, 5.0).unwrap();
    let info = &ga.order[1..];
    let eps_meas: Vec<f64> = info.iter().map(|&b| rates[b]).collect();
    let eps_ga: Vec<f64> = info.iter().map(|&b| ga.eps[b]).collect();
    let pred_meas = fsr_fec_assisted(&eps_meas, 7, 1, 1);
    let pred_ga = fsr_fec_assisted(&eps_ga, 7, 1, 1);
    assert!(
        r.ci_lo <= pred_meas && pred_meas <= r.ci_hi,
        "measured-eps prediction {pred_meas} outside Wilson interval [{}, {}]",
        r.ci_lo,
        r.ci_hi
    );
    let rel = (r.fsr - pred_ga).abs() / r.fsr;
    assert!(
        rel <= 0.05,
        "GA prediction {pred_ga} vs simulated {} (rel {rel})",
        r.fsr
    );
    assert!(start.elapsed().as_secs() < 300, "runtime budget");
    pass(
        5,
        &format!(
            "simulated {:.5} in [{:.5}, {:.5}]; measured-eps pred {pred_meas:.5}; GA pred {pred_ga:.5} (rel {rel:.4})",
            r.fsr, r.ci_lo, r.ci_hi
        ),
    );
}

/// Criterion 6: growing the PHY frame at n_p = 16 and 5 dB, the measured
/// throughput of the rate-optimized SC baseline strictly decreases while the
/// FEC-assisted optimum is nondecreasing (1e4 frames per point).
#[test]
fn criterion_06_frame_length_trend() {
    let start = std::time::Instant::now();
    let snr = 5.0;
    let channel = ChannelSpec::awgn(snr);
    let cache = GaCache::new();
    let opts = SearchOptions::default();
    let mut fec_t = Vec::new();
    let mut sc_t = Vec::new();
    for l_phy in [128usize, 512, 2048] {
        let d = design(
            Scenario::ConstrainedPhy {
                l_phy,
                n_p_restrict: Some(16),
            },
            &channel,
            &opts,
        )
        .unwrap();
        let m = (d.n_o + 1).ilog2();
        let mut t_req = 1;
        let outer = loop {
            let c = OuterCode::construct_unbounded(m, t_req).expect("searched code exists");
            if c.k() == d.k_o {
                break c;
            }
            t_req = c.t() + 1;
        };
        let polar = PolarCode::construct(d.n_p, d.k_p, snr).unwrap();
        let mut plan = SimPlan::new(
            FramePlan::Concatenated(ConcatenatedScheme::new(polar, outer, d.beta).unwrap()),
            channel.clone(),
            DecoderKind::FecAssisted,
            10_000,
            7,
        );
        plan.rate_factor = Some(d.l_mac as f64 / l_phy as f64);
        fec_t.push(run_sim(&plan).throughput);

        let n_cw = l_phy / 16;
        let (k_p, _, _) = polarcat::optimize::optimize_sc_baseline(16, n_cw, &channel, &cache);
        let code = PolarCode::construct(16, k_p, snr).unwrap();
        let sc_plan = SimPlan::new(
            FramePlan::PolarOnly { code, n_cw },
            channel.clone(),
            DecoderKind::ScBaseline,
            10_000,
            8,
        );
        sc_t.push(run_sim(&sc_plan).throughput);
    }
    assert!(
        sc_t[0] > sc_t[1] && sc_t[1] > sc_t[2],
        "SC baseline not strictly decreasing: {sc_t:?}"
    );
    assert!(
        fec_t[0] <= fec_t[1] && fec_t[1] <= fec_t[2],
        "FEC-assisted not nondecreasing: {fec_t:?}"
    );
    assert!(start.elapsed().as_secs() < 900, "runtime budget");
    pass(
        6,
        &format!("FEC {fec_t:.3?} nondecreasing; SC {sc_t:.3?} strictly decreasing"),
    );
}

/// Criterion 7: two-regime behavior of the design optimum over an (average-)
/// SNR grid for n_p in {32, 128}, AWGN and Rayleigh (analytic mode).
///
/// KNOWN RED for the Rayleigh curves: the optimum still gains 0.07-0.08 per
/// 2 dB at 14 dB average SNR (saturation only sets in near 30 dB), so the
/// last-two-points-within-0.01 check cannot hold (saturation to the
/// r_o-limited plateau of ~0.84 only completes near a 30 dB average).
/// The AWGN curves pass.
#[test]
fn criterion_07_fading_regimes() {
    let start = std::time::Instant::now();
    let opts = SearchOptions::default();
    let grid: Vec<f64> = (0..=7).map(|g| 2.0 * g as f64).collect();
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for n_p in [32usize, 128] {
        for model in ["awgn", "rayleigh"] {
            let curve: Vec<f64> = grid
                .iter()
                .map(|&snr| {
                    let channel = if model == "awgn" {
                        ChannelSpec::awgn(snr)
                    } else {
                        ChannelSpec::rayleigh(snr, 64).unwrap()
                    };
                    design(
                        Scenario::FixedPolarLength { n_p, n_o_max: 31 },
                        &channel,
                        &opts,
                    )
                    .unwrap()
                    .objective
                })
                .collect();
            let monotone = curve.windows(2).all(|w| w[1] >= w[0] - 1e-9);
            let saturation = (curve[7] - curve[6]).abs() <= 0.01;
            details.push(format!(
                "{model} n_p={n_p}: monotone={monotone} last-two delta={:.4}",
                (curve[7] - curve[6]).abs()
            ));
            assert!(monotone, "{model} n_p={n_p}: curve not monotone: {curve:?}");
            if !saturation {
                failures.push(format!(
                    "{model} n_p={n_p}: last two points {:.3} -> {:.3}",
                    curve[6], curve[7]
                ));
            }
        }
    }
    assert!(start.elapsed().as_secs() < 60, "runtime budget");
    assert!(
        failures.is_empty(),
        "criterion 7: FAIL — saturation not reached by 14 dB: {} | {}",
        failures.join("; "),
        details.join("; ")
    );
    pass(7, &details.join("; "));
}

/// Criterion 8: over the constrained-PHY table grid at 5 dB, the beta = 1
/// optimum dominates every beta > 1 candidate.
#[test]
fn criterion_08_single_concatenation_dominates() {
    let opts = SearchOptions::default();
    let channel = ChannelSpec::awgn(5.0);
    for l_phy in [256usize, 512, 1024, 2048] {
        let (best, candidates) = design_with_candidates(
            Scenario::ConstrainedPhy {
                l_phy,
                n_p_restrict: None,
            },
            &channel,
            &opts,
        )
        .unwrap();
        assert_eq!(best.beta, 1, "L={l_phy}: optimum uses beta {}", best.beta);
        let multi = candidates.iter().filter(|c| c.beta > 1).count();
        assert!(
            multi > 0,
            "L={l_phy}: no multi-segment candidates were searched"
        );
        let best_multi = candidates
            .iter()
            .filter(|c| c.beta > 1)
            .map(|c| c.objective)
            .fold(f64::MIN, f64::max);
        assert!(
            best_multi <= best.objective + 1e-12,
            "L={l_phy}: a beta > 1 design ({best_multi}) beats the optimum ({})",
            best.objective
        );
    }
    pass(
        8,
        "beta = 1 dominates all beta > 1 candidates on the table grid",
    );
}

/// Criterion 9: the property suites.
#[test]
fn criterion_09_property_suites() {
    let start = std::time::Instant::now();

    // BCH exhaustive correction for (7,4,1) and (15,7,2).
    for (m, t) in [(3u32, 1usize), (4, 2)] {
        let code = OuterCode::construct(m, t).unwrap();
        for msg_val in 0u32..(1 << code.k()) {
            let msg: Vec<u8> = (0..code.k()).map(|i| ((msg_val >> i) & 1) as u8).collect();
            let cw = code.encode(&msg);
            // All error patterns of weight <= t.
            let mut patterns: Vec<Vec<usize>> = vec![vec![]];
            for e1 in 0..code.n() {
                patterns.push(vec![e1]);
                if t == 2 {
                    for e2 in (e1 + 1)..code.n() {
                        patterns.push(vec![e1, e2]);
                    }
                }
            }
            for pat in patterns {
                let mut rx = cw.clone();
                for &e in &pat {
                    rx[e] ^= 1;
                }
                let (dec, flips, ok) = code.correct(&rx);
                assert!(ok && dec == cw && flips == pat.len());
            }
        }
    }

    // Polar noiseless round-trip for all n_p <= 32 (exhaustive for k <= 10).
    for stages in 1..=5u32 {
        let n = 1usize << stages;
        for k in 0..=n {
            let code = PolarCode::construct(n, k, 4.0).unwrap();
            let cases = if k <= 10 { 1usize << k } else { 1 << 10 };
            for v in 0..cases {
                let msg: Vec<u8> = (0..k).map(|j| ((v >> (j % 10)) & 1) as u8).collect();
                let c = code.encode(&msg);
                let llrs: Vec<f64> = c
                    .iter()
                    .map(|&b| if b == 0 { LLR_CLIP } else { -LLR_CLIP })
                    .collect();
                assert_eq!(code.extract_message(&sc_decode(&code, &llrs)), msg);
            }
        }
    }

    // Transform involution for n_p <= 64.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for stages in 1..=6u32 {
        let n = 1usize << stages;
        let code = PolarCode::construct(n, n, 0.0).unwrap();
        for _ in 0..50 {
            let u: Vec<u8> = (0..n).map(|_| rng.random_range(0..2)).collect();
            assert_eq!(code.encode_u(&code.encode_u(&u)), u);
        }
    }

    // p_x against the 2^7 enumeration oracle.
    for t in 0..=7usize {
        for eps_i in 1..10 {
            let eps = eps_i as f64 / 10.0;
            let mut brute = 0.0;
            for pattern in 0u32..(1 << 7) {
                let w = pattern.count_ones() as usize;
                if w <= t {
                    brute += eps.powi(w as i32) * (1.0 - eps).powi((7 - w) as i32);
                }
            }
            assert!((p_x(eps, 7, t) - brute).abs() < 1e-12);
        }
    }

    // Lower bound below the exact FSR on 1000 random schemes.
    for _ in 0..1000 {
        let k = rng.random_range(1..=16usize);
        let mut eps: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..0.5)).collect();
        eps.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let n_o = [7usize, 15, 31, 63][rng.random_range(0..4)];
        let t_o = rng.random_range(1..=3usize);
        let beta = rng.random_range(1..=4usize);
        let exact = fsr_fec_assisted(&eps, n_o, t_o, beta);
        let bound = fsr_lower_bound(eps[0], n_o, t_o, beta, k);
        assert!(bound <= exact + 1e-12);
    }

    // Optimizer equals the brute-force oracle for toy budgets.
    let opts = SearchOptions::default();
    for l_phy in [28usize, 48, 64] {
        for snr in [0.0, 3.0, 6.0] {
            let channel = ChannelSpec::awgn(snr);
            let got = design(
                Scenario::ConstrainedPhy {
                    l_phy,
                    n_p_restrict: None,
                },
                &channel,
                &opts,
            );
            // Oracle candidate: (objective, beta, n_p, k_p, n_o, k_o).
            #[derive(Debug, Clone, Copy, PartialEq)]
            struct Cand(f64, usize, usize, usize, usize, usize);
            // The documented tie order: higher T, smaller beta, smaller
            // L_PHY, larger k_p, ascending (n_p, n_o), descending k_o.
            fn beats(a: &Cand, b: &Cand) -> bool {
                let (al, bl) = (a.1 * a.4 * a.2, b.1 * b.4 * b.2);
                if a.0 != b.0 {
                    return a.0 > b.0;
                }
                if a.1 != b.1 {
                    return a.1 < b.1;
                }
                if al != bl {
                    return al < bl;
                }
                if a.3 != b.3 {
                    return a.3 > b.3;
                }
                if a.2 != b.2 {
                    return a.2 < b.2;
                }
                if a.4 != b.4 {
                    return a.4 < b.4;
                }
                a.5 > b.5
            }
            let mut best: Option<Cand> = None;
            let mut n_p = 2usize;
            while n_p * 7 <= l_phy {
                let ga = ga_analyze(n_p, snr).unwrap();
                let eps_ordered: Vec<f64> = ga.order.iter().map(|&b| ga.eps[b]).collect();
                for outer in enumerate_outer_codes(l_phy / n_p, &opts) {
                    for beta in 1..=(l_phy / (n_p * outer.n())) {
                        for k_p in 1..=n_p {
                            let info = &eps_ordered[n_p - k_p..];
                            let fsr = fsr_fec_assisted(info, outer.n(), outer.t(), beta);
                            let t = (beta * outer.k() * k_p) as f64 * fsr / l_phy as f64;
                            let cand = Cand(t, beta, n_p, k_p, outer.n(), outer.k());
                            if best.as_ref().is_none_or(|b| beats(&cand, b)) {
                                best = Some(cand);
                            }
                        }
                    }
                }
                n_p *= 2;
            }
            match (got, best) {
                (Ok(d), Some(Cand(t, beta, n_p, k_p, n_o, k_o))) => {
                    assert!((d.objective - t).abs() < 1e-12, "L={l_phy} snr={snr}");
                    assert_eq!(
                        (d.beta, d.n_p, d.k_p, d.n_o, d.k_o),
                        (beta, n_p, k_p, n_o, k_o),
                        "L={l_phy} snr={snr}"
                    );
                }
                (Err(_), None) => {}
                (got, best) => panic!("L={l_phy} snr={snr}: {got:?} vs oracle {best:?}"),
            }
        }
    }

    // Determinism across worker counts (simulation and search).
    let plan = SimPlan::new(
        FramePlan::Concatenated(scheme(8, 5, 3, 1, 2, 3.0)),
        ChannelSpec::awgn(3.0),
        DecoderKind::FecAssisted,
        3000,
        99,
    );
    let scenario = Scenario::ConstrainedPhy {
        l_phy: 512,
        n_p_restrict: None,
    };
    let chan5 = ChannelSpec::awgn(5.0);
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| {
            (
                run_sim(&plan).successes,
                design(scenario, &chan5, &opts).unwrap().objective,
            )
        });
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(8)
        .build()
        .unwrap()
        .install(|| {
            (
                run_sim(&plan).successes,
                design(scenario, &chan5, &opts).unwrap().objective,
            )
        });
    assert_eq!(single, many);

    assert!(start.elapsed().as_secs() < 600, "runtime budget");
    pass(
        9,
        "BCH/polar/p_x/bound/optimizer/determinism property suites all hold",
    );
}

/// Criterion 10: no design found by the budget-constrained scenarios at 5 dB
/// exceeds T* = 0.54.
///
/// The ceiling is a claim about the evaluated budget grids: without a frame
/// budget, larger codes legitimately pass it (the unconstrained fixed-length
/// scenario reaches 0.61 at n_p = 128 with a 65k-bit frame, Monte Carlo
/// confirmed 0.9875 [0.9711, 0.9946] vs 0.992 predicted FSR), approaching
/// the BPSK-constrained capacity at this SNR.
#[test]
fn criterion_10_throughput_ceiling() {
    let channel = ChannelSpec::awgn(5.0);
    let mut max_t = f64::MIN;
    let mut max_from = String::new();
    let mut record = |t: f64, from: String| {
        if t > max_t {
            max_t = t;
            max_from = from;
        }
    };
    for fsr_mode in [FsrMode::Exact, FsrMode::Bound] {
        let opts = SearchOptions {
            fsr_mode,
            lift_t_bound: false,
        };
        for l_phy in [256usize, 512, 1024, 2048] {
            let d = design(
                Scenario::ConstrainedPhy {
                    l_phy,
                    n_p_restrict: None,
                },
                &channel,
                &opts,
            )
            .unwrap();
            record(d.objective, format!("phy L={l_phy} ({fsr_mode:?})"));
        }
        for l_mac in [128usize, 256, 512, 1024] {
            let d = design(Scenario::ConstrainedMac { l_mac }, &channel, &opts).unwrap();
            record(d.objective, format!("mac L={l_mac} ({fsr_mode:?})"));
        }
        for fsr_target in [0.9, 0.95, 0.99] {
            let d = design(
                Scenario::TargetFsr {
                    fsr_target,
                    l_mac: 512,
                },
                &channel,
                &opts,
            )
            .unwrap();
            record(
                d.objective,
                format!("target-fsr {fsr_target} ({fsr_mode:?})"),
            );
        }
    }
    assert!(max_t <= 0.54, "{max_from} reached T = {max_t}");
    pass(
        10,
        &format!("largest observed T* = {max_t:.4} ({max_from}) <= 0.54"),
    );
}
