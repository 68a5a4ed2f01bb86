//! Bankruptcy probabilities of the single-edge birth–death game.
//!
//! With `k` units (unoccupied vertices of the edge other than the change
//! vertex) out of an edge of size `m`, `p_k` is the probability of reaching
//! zero units before the change vertex is picked. The `p_k` solve the
//! tridiagonal system
//!
//! ```text
//! (m-1+2λ) p_1 - (m-2) p_2                          = λ
//! -kλ p_{k-1} + (m-k+(k+1)λ) p_k - (m-k-1) p_{k+1}  = 0   (k = 2..m-1)
//! ```
//!
//! and have the closed form
//! `p_k = Σ_{i=k+1}^{m} C(m,i) λ^{m+k-i} / (((1+λ)^m - λ^m) C(m-1,k))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeProcessTable {
    pub m: usize,
    pub lambda: f64,
    /// `p[k-1]` is `p_k` for `k = 1..m-1`.
    pub p: Vec<f64>,
}

impl EdgeProcessTable {
    /// `p_k`, 1-based.
    pub fn get(&self, k: usize) -> f64 {
        self.p[k - 1]
    }
}

fn check(m: usize, lambda: f64) -> Result<()> {
    if m < 2 {
        return Err(Error::param(format!("edge size m = {m} must be at least 2")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::param(format!("fugacity must be positive, got {lambda}")));
    }
    Ok(())
}

/// Coefficients `(sub, diag, sup, rhs)` of row `k` (1-based).
fn row(m: usize, lambda: f64, k: usize) -> (f64, f64, f64, f64) {
    let (mf, kf) = (m as f64, k as f64);
    let sub = if k >= 2 { -kf * lambda } else { 0.0 };
    let diag = mf - kf + (kf + 1.0) * lambda;
    let sup = -(mf - kf - 1.0);
    let rhs = if k == 1 { lambda } else { 0.0 };
    (sub, diag, sup, rhs)
}

/// Solves the tridiagonal system directly (Thomas algorithm).
pub fn edge_process_solve(m: usize, lambda: f64) -> Result<EdgeProcessTable> {
    check(m, lambda)?;
    let size = m - 1;
    let mut c_prime = vec![0.0; size];
    let mut d_prime = vec![0.0; size];
    for i in 0..size {
        let (a, b, c, d) = row(m, lambda, i + 1);
        let (pivot, rhs) = if i == 0 {
            (b, d)
        } else {
            (b - a * c_prime[i - 1], d - a * d_prime[i - 1])
        };
        if pivot.abs() < f64::MIN_POSITIVE || !pivot.is_finite() {
            return Err(Error::Numerical(format!("singular pivot at row {}", i + 1)));
        }
        c_prime[i] = c / pivot;
        d_prime[i] = rhs / pivot;
    }
    let mut p = vec![0.0; size];
    p[size - 1] = d_prime[size - 1];
    for i in (0..size - 1).rev() {
        p[i] = d_prime[i] - c_prime[i] * p[i + 1];
    }
    Ok(EdgeProcessTable { m, lambda, p })
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k)
        .map(|j| ((n - j) as f64).ln() - ((j + 1) as f64).ln())
        .sum()
}

/// Closed-form `p_k`, evaluated in the log domain so that `(1+λ)^m` never
/// has to be represented.
pub fn edge_process_closed(m: usize, lambda: f64, k: usize) -> Result<f64> {
    check(m, lambda)?;
    if k == 0 || k >= m {
        return Err(Error::param(format!("k = {k} must lie in 1..={}", m - 1)));
    }
    let ln_lambda = lambda.ln();
    let terms: Vec<f64> = (k + 1..=m)
        .map(|i| ln_binomial(m, i) + (m + k - i) as f64 * ln_lambda)
        .collect();
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ln_num = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
    let ln_ratio = m as f64 * (lambda / (1.0 + lambda)).ln();
    let ln_den = m as f64 * lambda.ln_1p() + (-ln_ratio.exp()).ln_1p() + ln_binomial(m - 1, k);
    let value = (ln_num - ln_den).exp();
    if !value.is_finite() {
        return Err(Error::Numerical(format!(
            "p_{k} not representable for m = {m}, λ = {lambda}"
        )));
    }
    Ok(value)
}

pub fn edge_process_closed_table(m: usize, lambda: f64) -> Result<EdgeProcessTable> {
    check(m, lambda)?;
    let p = (1..m)
        .map(|k| edge_process_closed(m, lambda, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeProcessTable { m, lambda, p })
}

/// `p_{m-1} = λ^{m-1} / ((1+λ)^m - λ^m)`.
pub fn edge_process_last(m: usize, lambda: f64) -> Result<f64> {
    check(m, lambda)?;
    let r = lambda / (1.0 + lambda);
    Ok(r.powi(m as i32 - 1) / ((1.0 + lambda) * (1.0 - r.powi(m as i32))))
}

/// `p_1 = (λ/(m-1)) (1 - m λ^{m-1} / ((1+λ)^m - λ^m))`.
pub fn edge_process_first(m: usize, lambda: f64) -> Result<f64> {
    let last = edge_process_last(m, lambda)?;
    Ok(lambda / (m as f64 - 1.0) * (1.0 - m as f64 * last))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn check_exact(m: usize, lambda: &BigRational) -> Result<()> {
    if m < 2 {
        return Err(Error::param(format!("edge size m = {m} must be at least 2")));
    }
    if *lambda <= BigRational::zero() {
        return Err(Error::param("fugacity must be positive"));
    }
    Ok(())
}

/// Exact rational solution of the tridiagonal system.
pub fn edge_process_solve_exact(m: usize, lambda: &BigRational) -> Result<Vec<BigRational>> {
    check_exact(m, lambda)?;
    let size = m - 1;
    let lam = lambda.clone();
    let int = |x: usize| BigRational::from_integer(BigInt::from(x));
    let mut c_prime: Vec<BigRational> = Vec::with_capacity(size);
    let mut d_prime: Vec<BigRational> = Vec::with_capacity(size);
    for i in 0..size {
        let k = i + 1;
        let sub = -(int(k) * &lam);
        let diag = int(m - k) + int(k + 1) * &lam;
        let sup = -int(m - k - 1);
        let rhs = if k == 1 { lam.clone() } else { BigRational::zero() };
        let (pivot, rhs) = if i == 0 {
            (diag, rhs)
        } else {
            (
                diag - &sub * &c_prime[i - 1],
                rhs - &sub * &d_prime[i - 1],
            )
        };
        if pivot.is_zero() {
            return Err(Error::Numerical(format!("singular pivot at row {k}")));
        }
        c_prime.push(sup / &pivot);
        d_prime.push(rhs / &pivot);
    }
    let mut p = vec![BigRational::zero(); size];
    p[size - 1] = d_prime[size - 1].clone();
    for i in (0..size - 1).rev() {
        p[i] = &d_prime[i] - &c_prime[i] * &p[i + 1];
    }
    Ok(p)
}

/// Exact rational closed form of `p_k`.
pub fn edge_process_closed_exact(m: usize, lambda: &BigRational, k: usize) -> Result<BigRational> {
    check_exact(m, lambda)?;
    if k == 0 || k >= m {
        return Err(Error::param(format!("k = {k} must lie in 1..={}", m - 1)));
    }
    let num = (k + 1..=m).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::from_integer(binomial(m, i)) * Pow::pow(lambda, (m + k - i) as u32)
    });
    let one = BigRational::one();
    let den = (Pow::pow(&(&one + lambda), m as u32) - Pow::pow(lambda, m as u32))
        * BigRational::from_integer(binomial(m - 1, k));
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn m3_lambda1_by_hand() {
        // 4p1 - p2 = 1, -2p1 + 4p2 = 0  =>  p1 = 2/7, p2 = 1/7
        let t = edge_process_solve(3, 1.0).unwrap();
        assert!((t.get(1) - 2.0 / 7.0).abs() < 1e-15);
        assert!((t.get(2) - 1.0 / 7.0).abs() < 1e-15);
        assert!((edge_process_closed(3, 1.0, 2).unwrap() - 1.0 / 7.0).abs() < 1e-15);
        assert!((edge_process_closed(3, 1.0, 1).unwrap() - 2.0 / 7.0).abs() < 1e-15);
        let exact = edge_process_solve_exact(3, &rat(1, 1)).unwrap();
        assert_eq!(exact, vec![rat(2, 7), rat(1, 7)]);
        assert_eq!(edge_process_closed_exact(3, &rat(1, 1), 1).unwrap(), rat(2, 7));
    }

    #[test]
    fn m2_is_scalar() {
        let t = edge_process_solve(2, 0.5).unwrap();
        assert!((t.get(1) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn tiny_lambda_vanishes() {
        let t = edge_process_solve(3, 1e-9).unwrap();
        assert!(t.p.iter().all(|&p| p.abs() < 1e-8));
        assert!(edge_process_closed(3, 1e-9, 1).unwrap() < 1e-8);
    }

    #[test]
    fn closed_matches_solve_m5() {
        let a = edge_process_solve(5, 0.5).unwrap();
        let b = edge_process_closed_table(5, 0.5).unwrap();
        for (x, y) in a.p.iter().zip(&b.p) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn large_m_does_not_overflow() {
        let t = edge_process_closed_table(2000, 3.0).unwrap();
        assert!(t.p.iter().all(|p| p.is_finite() && *p >= 0.0 && *p <= 1.0));
        assert!(t.p.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn exact_closed_and_exact_solve_agree() {
        for m in 2..12 {
            let lam = rat(3, 2);
            let solved = edge_process_solve_exact(m, &lam).unwrap();
            for k in 1..m {
                assert_eq!(solved[k - 1], edge_process_closed_exact(m, &lam, k).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(edge_process_solve(1, 1.0).is_err());
        assert!(edge_process_solve(3, 0.0).is_err());
        assert!(edge_process_closed(3, 1.0, 3).is_err());
        assert!(edge_process_closed(3, 1.0, 0).is_err());
    }
}
