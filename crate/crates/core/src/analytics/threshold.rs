//! Colouring threshold machinery: the per-disagreement survival factor `φ`,
//! the success integral, and the root `β*` that fixes the `q ≈ 1.6467Δ`
//! threshold.

use serde::Serialize;

use super::quadrature::{adaptive_simpson, bisect};
use crate::error::{Error, Result};

/// Absolute tolerance for every integral in this module.
pub const INTEGRAL_TOL: f64 = 1e-10;
/// Stand-in for `∞` as an upper limit. The integrand is at most `e^{-z}` and
/// `e^{-40} < 1e-17`.
pub const INFINITY_PROXY: f64 = 40.0;
const ROOT_TOL: f64 = 1e-9;
const SERIES_TOL: f64 = 1e-14;
const SERIES_MAX_TERMS: usize = 10_000;

/// Literal constants of the colouring success integral, `a ≈ 2Δ/(q-Δ)` and
/// `b ≈ (q-Δ)/q` at `q = 1.65Δ`, rounded.
pub const LITERAL_A: f64 = 3.077;
pub const LITERAL_B: f64 = 0.3941;
pub const LITERAL_UPPER: f64 = 20.0;
/// The same constants without rounding.
pub const EXACT_A: f64 = 2.0 / 0.65;
pub const EXACT_B: f64 = 0.65 / 1.65;

/// `φ(d) = 1 - d(1 - e^{-(q-Δ+d)t/(Mq)}) / (q-Δ+d)`.
pub fn phi(d: f64, t: f64, q: f64, delta: f64, big_m: f64) -> Result<f64> {
    if !(q > delta && d >= 1.0 && t >= 0.0 && big_m >= 1.0) {
        return Err(Error::param(format!(
            "phi needs q > Δ, d ≥ 1, t ≥ 0, M ≥ 1 (got q={q}, Δ={delta}, d={d}, t={t}, M={big_m})"
        )));
    }
    let s = q - delta + d;
    Ok(1.0 - d * (-(-s * t / (big_m * q)).exp_m1()) / s)
}

/// `∫₀^upper e^{-z - a(1 - e^{-bz})} dz`.
pub fn success_integral(a: f64, b: f64, upper: f64) -> Result<f64> {
    if !(a >= 0.0 && b > 0.0 && upper > 0.0) {
        return Err(Error::param(format!(
            "success integral needs a ≥ 0, b > 0, upper > 0 (got {a}, {b}, {upper})"
        )));
    }
    // Beyond the proxy the remaining mass is below the tolerance.
    let upper = upper.min(INFINITY_PROXY);
    let q = adaptive_simpson(|z: f64| (-z + a * (-b * z).exp_m1()).exp(), 0.0, upper, INTEGRAL_TOL)?;
    Ok(q.value)
}

/// `∫₀^∞ e^{-z - (2(1-β)/β)(1 - e^{-βz})} dz`, truncated at [`INFINITY_PROXY`].
pub fn beta_integral(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    success_integral(2.0 * (1.0 - beta) / beta, beta, INFINITY_PROXY)
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::param(format!("β = {beta} must lie in (0, 1]")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
}

/// `Σ_{i≥0} (-2)^i (1-β)^i / Π_{j=0}^{i} (1+jβ)`, summed until a term drops
/// below `1e-14` in magnitude.
pub fn series_value(beta: f64, max_terms: usize) -> Result<SeriesValue> {
    check_beta(beta)?;
    let mut term = 1.0;
    let mut value = 0.0;
    for i in 0..max_terms {
        if i > 0 {
            term *= -2.0 * (1.0 - beta) / (1.0 + i as f64 * beta);
        }
        value += term;
        if term.abs() < SERIES_TOL {
            return Ok(SeriesValue { value, terms: i + 1 });
        }
    }
    Err(Error::Numerical(format!(
        "series did not converge within {max_terms} terms at β = {beta}"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootMethod {
    Integral,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub beta_star: f64,
    /// `1/(1-β*)`: colourings with `q > q_factor·Δ` are in the rapid regime.
    pub q_factor: f64,
    pub method: RootMethod,
    /// Value of the defining equation minus ½ at `β*`.
    pub residual: f64,
}

/// Root of `(integral or series)(β) = ½` by bisection on `[0.2, 0.6]`.
pub fn beta_star(method: RootMethod) -> Result<ThresholdReport> {
    let f = |beta: f64| -> Result<f64> {
        Ok(match method {
            RootMethod::Integral => beta_integral(beta)?,
            RootMethod::Series => series_value(beta, SERIES_MAX_TERMS)?.value,
        } - 0.5)
    };
    let beta_star = bisect(f, 0.2, 0.6, ROOT_TOL)?;
    Ok(ThresholdReport {
        beta_star,
        q_factor: 1.0 / (1.0 - beta_star),
        method,
        residual: f(beta_star)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralConstants {
    pub a: f64,
    pub b: f64,
    pub upper: f64,
    pub value: f64,
}

/// The success integral under the rounded literal constants and under the
/// unrounded ones, both on `[0, 20]`.
pub fn colouring_integral_constants() -> Result<[IntegralConstants; 2]> {
    let eval = |a: f64, b: f64| -> Result<IntegralConstants> {
        Ok(IntegralConstants {
            a,
            b,
            upper: LITERAL_UPPER,
            value: success_integral(a, b, LITERAL_UPPER)?,
        })
    };
    Ok([eval(LITERAL_A, LITERAL_B)?, eval(EXACT_A, EXACT_B)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_limits() {
        for d in 1..=5 {
            assert_eq!(phi(d as f64, 0.0, 33.0, 20.0, 41.0).unwrap(), 1.0);
            let lim = 1.0 - d as f64 / (13.0 + d as f64);
            assert!((phi(d as f64, 1e9, 33.0, 20.0, 41.0).unwrap() - lim).abs() < 1e-12);
        }
        assert!(phi(1.0, 1.0, 20.0, 20.0, 41.0).is_err());
    }

    #[test]
    fn integral_examples() {
        let v = success_integral(0.0, 1.0, 3.0).unwrap();
        assert!((v - (1.0 - (-3.0f64).exp())).abs() < 1e-10);
        let lit = success_integral(LITERAL_A, LITERAL_B, LITERAL_UPPER).unwrap();
        assert!(lit > 0.5003);
        assert!((lit - 0.500608).abs() < 1e-6);
        let b = 0.392729;
        let root = success_integral(2.0 * (1.0 - b) / b, b, 200.0).unwrap();
        assert!((root - 0.5).abs() < 1e-4);
    }

    #[test]
    fn series_examples() {
        assert_eq!(series_value(1.0, 10).unwrap().value, 1.0);
        assert!((series_value(0.392729, 10_000).unwrap().value - 0.5).abs() < 1e-5);
        for beta in [0.3, 0.4, 0.5] {
            let s = series_value(beta, 10_000).unwrap().value;
            let i = beta_integral(beta).unwrap();
            assert!((s - i).abs() < 1e-8, "β={beta}: {s} vs {i}");
        }
        assert!(series_value(0.01, 5).is_err());
    }

    #[test]
    fn roots_agree() {
        let a = beta_star(RootMethod::Integral).unwrap();
        let b = beta_star(RootMethod::Series).unwrap();
        assert!((a.beta_star - 0.392729).abs() < 1e-5);
        assert!((a.q_factor - 1.64671).abs() < 1e-4);
        assert!((a.beta_star - b.beta_star).abs() < 1e-6);
        assert!(a.residual.abs() < 1e-8);
    }

    #[test]
    fn both_constant_sets_reported() {
        let [lit, exact] = colouring_integral_constants().unwrap();
        assert!(lit.value > 0.5003 && exact.value > 0.5003);
        assert!((exact.value - 0.500705).abs() < 1e-6);
    }
}
