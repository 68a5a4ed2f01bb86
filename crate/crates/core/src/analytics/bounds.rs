//! Mixing-time bound calculators.

use serde::Serialize;

use super::edge_process::edge_process_first;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaBound {
    pub m: usize,
    pub lambda: f64,
    pub delta: usize,
    pub p1: f64,
    /// `2Δ·p_1`, the bound on `E[d(X_T, Y_T)]` for independent sets.
    pub alpha: f64,
    /// `alpha < 1`.
    pub rapid_mixing: bool,
}

pub fn indset_alpha_bound(m: usize, lambda: f64, delta: usize) -> Result<AlphaBound> {
    let p1 = edge_process_first(m, lambda)?;
    let alpha = 2.0 * delta as f64 * p1;
    Ok(AlphaBound {
        m,
        lambda,
        delta,
        p1,
        alpha,
        rapid_mixing: alpha < 1.0,
    })
}

/// `1 - (2λΔ+1) λ^{2λΔ} / ((1+λ)^{2λΔ+1} - λ^{2λΔ+1})`: the value of `2Δp_1`
/// at the threshold edge size `m = 2λΔ + 1`.
pub fn threshold_alpha_expression(lambda: f64, delta: usize) -> f64 {
    let s = 2.0 * lambda * delta as f64;
    1.0 - (s + 1.0) * lambda.powf(s) / ((1.0 + lambda).powf(s + 1.0) - lambda.powf(s + 1.0))
}

/// `R = ((1+λ)^{2λΔ+1} - λ^{2λΔ+1}) / ((2λΔ+1) λ^{2λΔ})`, so that the
/// threshold value of `2Δp_1` is `1 - 1/R`.
pub fn threshold_ratio(lambda: f64, delta: usize) -> f64 {
    let s = 2.0 * lambda * delta as f64;
    ((1.0 + lambda).powf(s + 1.0) - lambda.powf(s + 1.0)) / ((s + 1.0) * lambda.powf(s))
}

/// Mixing time from a stopping-time path coupling:
/// `(1/p) · 3/(1-α) · ln(e·D2) · ln(2·D1 / (ε(1-α)))`.
pub fn stopping_time_bound(p: f64, alpha: f64, d1: f64, d2: f64, eps: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Precondition(format!("p = {p} must lie in (0, 1]")));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Precondition(format!("alpha = {alpha} must lie in [0, 1)")));
    }
    if !(d1 >= 1.0 && d2 >= 1.0) {
        return Err(Error::Precondition("D1 and D2 must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition(format!("eps = {eps} must lie in (0, 1)")));
    }
    let gap = 1.0 - alpha;
    Ok((1.0 / p) * (3.0 / gap) * (std::f64::consts::E * d2).ln() * (2.0 * d1 / (eps * gap)).ln())
}

/// The same bound rounded up to a whole number of steps.
pub fn stopping_time_horizon(p: f64, alpha: f64, d1: f64, d2: f64, eps: f64) -> Result<u64> {
    Ok(stopping_time_bound(p, alpha, d1, d2, eps)?.ceil() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVariant {
    /// General stopping-time bound from `(p, α, D1, D2, ε)`.
    StoppingTime,
    /// Independent sets at `m ≥ 2λΔ+1`: `6nR ln(nR/ε)`.
    Indset,
    /// Independent sets at `m ≥ 2λΔ+2`: `6(2λΔ+1) n ln(n(2λΔ+1)/ε)`.
    IndsetLinear,
    /// Independent sets with `α = 2Δp_1(m)` evaluated at the actual `m` and
    /// plugged into the stopping-time bound with `p = 1/n, D1 = n, D2 = 2`.
    IndsetAtM,
    /// Colourings with `m ≥ 4, q ≥ Δ+1`: `nq ln(n/ε)`.
    Colouring,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundInputs {
    StoppingTime {
        p: f64,
        alpha: f64,
        d1: f64,
        d2: f64,
        eps: f64,
    },
    Indset {
        n: usize,
        lambda: f64,
        delta: usize,
        m: usize,
        eps: f64,
    },
    Colouring {
        n: usize,
        q: usize,
        delta: usize,
        m: usize,
        eps: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub variant: BoundVariant,
    pub inputs: BoundInputs,
    pub tau: f64,
    /// `2Δp_1(m)` for the independent-set variants.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_bound: Option<f64>,
    /// False when the inputs lie outside the regime the bound is proved for.
    pub precondition_met: bool,
}

pub fn stopping_time_report(p: f64, alpha: f64, d1: f64, d2: f64, eps: f64) -> Result<BoundReport> {
    Ok(BoundReport {
        variant: BoundVariant::StoppingTime,
        inputs: BoundInputs::StoppingTime {
            p,
            alpha,
            d1,
            d2,
            eps,
        },
        tau: stopping_time_bound(p, alpha, d1, d2, eps)?,
        alpha_bound: None,
        precondition_met: true,
    })
}

/// Independent-set mixing bound in the chosen variant.
///
/// [`BoundVariant::Indset`] is evaluated even when `m < 2λΔ+1`; the report then
/// carries `precondition_met = false`. The other variants refuse inputs
/// outside their regime.
pub fn indset_mixing_bound(
    n: usize,
    lambda: f64,
    delta: usize,
    m: usize,
    eps: f64,
    variant: BoundVariant,
) -> Result<BoundReport> {
    if n == 0 || delta == 0 {
        return Err(Error::Precondition("n and Δ must be positive".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition(format!("eps = {eps} must lie in (0, 1)")));
    }
    let alpha = indset_alpha_bound(m, lambda, delta)?;
    let nf = n as f64;
    let s = 2.0 * lambda * delta as f64;
    let (tau, met) = match variant {
        BoundVariant::Indset => {
            let r = threshold_ratio(lambda, delta);
            (6.0 * nf * r * (nf * r / eps).ln(), m as f64 >= s + 1.0)
        }
        BoundVariant::IndsetLinear => {
            if (m as f64) < s + 2.0 {
                return Err(Error::Precondition(format!(
                    "linear variant needs m >= 2λΔ+2 = {}",
                    s + 2.0
                )));
            }
            (6.0 * (s + 1.0) * nf * (nf * (s + 1.0) / eps).ln(), true)
        }
        BoundVariant::IndsetAtM => {
            if !alpha.rapid_mixing {
                return Err(Error::Precondition(format!(
                    "2Δp_1 = {} is not below 1 at m = {m}",
                    alpha.alpha
                )));
            }
            (stopping_time_bound(1.0 / nf, alpha.alpha, nf.max(1.0), 2.0, eps)?, true)
        }
        other => {
            return Err(Error::param(format!(
                "{other:?} is not an independent-set variant"
            )))
        }
    };
    Ok(BoundReport {
        variant,
        inputs: BoundInputs::Indset {
            n,
            lambda,
            delta,
            m,
            eps,
        },
        tau,
        alpha_bound: Some(alpha.alpha),
        precondition_met: met,
    })
}

/// One-step path coupling bound for colourings, `nq ln(n/ε)`.
pub fn colouring_path_bound(n: usize, q: usize, delta: usize, m: usize, eps: f64) -> Result<BoundReport> {
    if m < 4 {
        return Err(Error::Precondition(format!(
            "edge size m = {m} < 4; use the stopping-time threshold machinery for m = 3"
        )));
    }
    if q < delta + 1 {
        return Err(Error::Precondition(format!("q = {q} must be at least Δ+1 = {}", delta + 1)));
    }
    if n == 0 || !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Precondition("need n > 0 and eps in (0, 1)".into()));
    }
    let nf = n as f64;
    Ok(BoundReport {
        variant: BoundVariant::Colouring,
        inputs: BoundInputs::Colouring {
            n,
            q,
            delta,
            m,
            eps,
        },
        tau: nf * q as f64 * (nf / eps).ln(),
        alpha_bound: None,
        precondition_met: true,
    })
}
