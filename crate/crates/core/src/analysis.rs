//! Closed-form performance predictors: the column-survival probability P_x,
//! exact and lower-bound frame success rates, the plain-SC baseline FSR, and
//! effective throughput under the different budget scenarios.
//!
//! All probability products are accumulated in log space; an FSR below
//! e^-700 is reported as 0 with the `underflow` flag set on reports.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::frame::ConcatenatedScheme;
use crate::polar::GaResult;
use crate::{Error, Result};

/// ln of the binomial coefficient C(n, z).
fn ln_choose(n: usize, z: usize) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(z as f64 + 1.0) - ln_gamma((n - z) as f64 + 1.0)
}

/// Natural log of P_x: the probability of at most t errors among n
/// independent bit flips of probability eps.
pub fn ln_p_x(eps: f64, n: usize, t: usize) -> f64 {
    assert!((0.0..=1.0).contains(&eps), "eps must be a probability");
    assert!(t <= n, "t must not exceed n");
    if eps == 0.0 || t == n {
        return 0.0;
    }
    if eps == 1.0 {
        return f64::NEG_INFINITY;
    }
    let ln_eps = eps.ln();
    let ln_1m = (-eps).ln_1p();
    // log-sum-exp over the binomial pmf terms z = 0..=t.
    let terms: Vec<f64> = (0..=t)
        .map(|z| ln_choose(n, z) + z as f64 * ln_eps + (n - z) as f64 * ln_1m)
        .collect();
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    max + terms.iter().map(|&v| (v - max).exp()).sum::<f64>().ln()
}

/// P_x as a probability.
pub fn p_x(eps: f64, n: usize, t: usize) -> f64 {
    ln_p_x(eps, n, t).exp().min(1.0)
}

/// Floor below which an FSR is reported as exactly zero.
pub const FSR_UNDERFLOW_LN: f64 = -700.0;

fn fsr_from_ln(ln_fsr: f64) -> f64 {
    if ln_fsr < FSR_UNDERFLOW_LN {
        0.0
    } else {
        ln_fsr.exp().min(1.0)
    }
}

/// Exact FEC-assisted FSR: (prod over the information set of P_x(eps_b))^beta.
/// `eps_info` holds the GA error probabilities of the k_p information
/// channels; `n_o`/`t_o` describe the outer code.
pub fn fsr_fec_assisted(eps_info: &[f64], n_o: usize, t_o: usize, beta: usize) -> f64 {
    fsr_from_ln(ln_fsr_fec_assisted(eps_info, n_o, t_o, beta))
}

pub fn ln_fsr_fec_assisted(eps_info: &[f64], n_o: usize, t_o: usize, beta: usize) -> f64 {
    let ln_prod: f64 = eps_info.iter().map(|&e| ln_p_x(e, n_o, t_o)).sum();
    beta as f64 * ln_prod
}

/// FSR lower bound: P_x at the least reliable information channel, raised to
/// beta * k_p.
pub fn fsr_lower_bound(eps_worst: f64, n_o: usize, t_o: usize, beta: usize, k_p: usize) -> f64 {
    fsr_from_ln((beta * k_p) as f64 * ln_p_x(eps_worst, n_o, t_o))
}

/// FSR of plain SC decoding over `n_cw` independent codewords:
/// (prod over the information set of (1 - eps_b))^n_cw.
pub fn fsr_sc_baseline(eps_info: &[f64], n_cw: usize) -> f64 {
    fsr_from_ln(ln_fsr_sc_baseline(eps_info, n_cw))
}

pub fn ln_fsr_sc_baseline(eps_info: &[f64], n_cw: usize) -> f64 {
    let ln_cw: f64 = eps_info.iter().map(|&e| (-e).ln_1p()).sum();
    n_cw as f64 * ln_cw
}

/// Budget scenario a throughput figure is computed under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ThroughputScenario {
    /// T = r_o r_p FSR (no frame budget; padding-free).
    Nominal,
    /// T = beta k_o k_p FSR / L_PHY, requires beta n_o n_p <= L_PHY.
    ConstrainedPhy { l_phy: usize },
    /// T = L_MAC FSR / (beta n_o n_p), requires beta k_o k_p >= L_MAC.
    ConstrainedMac { l_mac: usize },
}

/// Effective throughput of a scheme under a scenario. The three formulas
/// coincide when the frame fills its budget exactly.
pub fn throughput(
    scheme: &ConcatenatedScheme,
    fsr: f64,
    scenario: ThroughputScenario,
) -> Result<f64> {
    match scenario {
        ThroughputScenario::Nominal => Ok(scheme.rate() * fsr),
        ThroughputScenario::ConstrainedPhy { l_phy } => {
            if scheme.l_phy() > l_phy {
                return Err(Error::InvalidParameter(format!(
                    "scheme occupies {} bits, over the PHY budget {l_phy}",
                    scheme.l_phy()
                )));
            }
            Ok(scheme.l_mac() as f64 * fsr / l_phy as f64)
        }
        ThroughputScenario::ConstrainedMac { l_mac } => {
            if scheme.l_mac() < l_mac {
                return Err(Error::InvalidParameter(format!(
                    "scheme delivers {} bits, under the MAC requirement {l_mac}",
                    scheme.l_mac()
                )));
            }
            Ok(l_mac as f64 * fsr / scheme.l_phy() as f64)
        }
    }
}

/// State-averaged throughput over a discretized fading profile.
pub fn fading_average(per_state_throughput: &[f64], probs: &[f64]) -> f64 {
    assert_eq!(per_state_throughput.len(), probs.len());
    per_state_throughput
        .iter()
        .zip(probs)
        .map(|(t, p)| t * p)
        .sum()
}

/// Closed-form predictions for one scheme at one SNR.
#[derive(Debug, Clone, Serialize)]
pub struct ThroughputReport {
    pub snr_db: f64,
    pub fsr: f64,
    pub fsr_lower_bound: f64,
    pub fsr_sc_baseline: f64,
    pub throughput: f64,
    /// GA error probabilities of the information set (worst first).
    pub eps_info: Vec<f64>,
    /// Set when the exact FSR product underflowed e^-700 and was reported 0.
    pub underflow: bool,
}

/// Builds the full prediction report for a scheme from a GA run at `snr_db`.
pub fn report(scheme: &ConcatenatedScheme, ga: &GaResult, snr_db: f64) -> ThroughputReport {
    let polar = &scheme.polar;
    let n = polar.n();
    let k = polar.k();
    let eps_info: Vec<f64> = ga.order[n - k..].iter().map(|&b| ga.eps[b]).collect();
    let (n_o, t_o) = (scheme.outer.n(), scheme.outer.t());
    let ln_fsr = ln_fsr_fec_assisted(&eps_info, n_o, t_o, scheme.beta);
    let fsr = fsr_from_ln(ln_fsr);
    let worst = eps_info.first().copied().unwrap_or(0.0);
    ThroughputReport {
        snr_db,
        fsr,
        fsr_lower_bound: fsr_lower_bound(worst, n_o, t_o, scheme.beta, k),
        fsr_sc_baseline: fsr_sc_baseline(&eps_info, scheme.beta * n_o),
        throughput: scheme.rate() * fsr,
        eps_info,
        underflow: ln_fsr < FSR_UNDERFLOW_LN && ln_fsr.is_finite(),
    }
}
