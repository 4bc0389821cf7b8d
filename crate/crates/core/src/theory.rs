//! Closed-form quantities the experiments compare against. Everything is
//! real-valued; callers round.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TheoryError {
    #[error("p = {0} must lie strictly between 0 and 1")]
    Probability(f64),
    #[error("n·p = {0} must exceed 1")]
    Sparse(f64),
    #[error("phi is defined for x >= 0, got {0}")]
    NegativeArgument(f64),
    #[error("the constant factor needs C > 2, got {0}")]
    Exponent(f64),
    #[error("omega must be positive, got {0}")]
    Omega(f64),
}

fn check(n: f64, p: f64) -> Result<(), TheoryError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(TheoryError::Probability(p));
    }
    if n * p <= 1.0 {
        return Err(TheoryError::Sparse(n * p));
    }
    Ok(())
}

/// `b = 1/(1-p)`.
pub fn log_base(p: f64) -> f64 {
    1.0 / (1.0 - p)
}

/// `2 log_b(np)`, the typical independence number scale.
pub fn k0_asymptotic(n: f64, p: f64) -> Result<f64, TheoryError> {
    check(n, p)?;
    Ok(2.0 * (n * p).ln() / -(-p).ln_1p())
}

/// `n ln(1/(1-p)) / (2 ln(np))`.
pub fn chi_asymptotic(n: f64, p: f64) -> Result<f64, TheoryError> {
    check(n, p)?;
    Ok(n * -(-p).ln_1p() / (2.0 * (n * p).ln()))
}

/// `(chi, chi ln n + 1)`: the range the paintability and choice numbers
/// must fall in.
pub fn chain_bounds(chi: usize, n: usize) -> (usize, f64) {
    (chi, chi as f64 * (n as f64).ln() + 1.0)
}

/// `(1+x) ln(1+x) - x`.
pub fn phi(x: f64) -> Result<f64, TheoryError> {
    if x < 0.0 || x.is_nan() {
        return Err(TheoryError::NegativeArgument(x));
    }
    Ok((1.0 + x) * x.ln_1p() - x)
}

/// Constant in front of `chi` when `np = (ln n)^C`: 2 as `C -> inf`
/// (pass `f64::INFINITY`), `2C/(C-2)` on `[4, inf)`, 4 on `(2, 4)`.
pub fn constant_factor(c: f64) -> Result<f64, TheoryError> {
    if c.is_nan() || c <= 2.0 {
        Err(TheoryError::Exponent(c))
    } else if c.is_infinite() {
        Ok(2.0)
    } else if c >= 4.0 {
        Ok(2.0 * c / (c - 2.0))
    } else {
        Ok(4.0)
    }
}

/// The exponent `C` with `np = (ln n)^C`.
pub fn polylog_exponent(n: f64, p: f64) -> f64 {
    (n * p).ln() / n.ln().ln()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeBounds {
    pub n: f64,
    pub p: f64,
    pub b: f64,
    pub chi_asymptotic: f64,
    pub k0_asymptotic: f64,
    pub eraser_budget_prediction: f64,
    /// Evaluated at `C = ln(np)/ln ln n`; an asymptotic label, not a finite-n bound.
    pub constant_factor: Option<f64>,
    pub s0: f64,
    pub large_threshold: f64,
    pub small_threshold: f64,
}

pub fn regime_bounds(n: f64, p: f64, omega: f64) -> Result<RegimeBounds, TheoryError> {
    check(n, p)?;
    if !(omega > 0.0) {
        return Err(TheoryError::Omega(omega));
    }
    let ln_n = n.ln();
    let large = n / (omega * ln_n * ln_n);
    let k0_asym = k0_asymptotic(n, p)?;
    Ok(RegimeBounds {
        n,
        p,
        b: log_base(p),
        chi_asymptotic: chi_asymptotic(n, p)?,
        k0_asymptotic: k0_asym,
        eraser_budget_prediction: n / k0_asym,
        constant_factor: constant_factor(polylog_exponent(n, p)).ok(),
        s0: 10.0 * ln_n / p,
        large_threshold: large,
        small_threshold: p * large,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn chi_examples() {
        let v = chi_asymptotic(1024.0, 0.5).unwrap();
        assert!(rel(v, 1024.0 / 18.0) < 1e-12);
        let (n, p) = (1e6, 1e-3);
        let v = chi_asymptotic(n, p).unwrap();
        assert!(rel(v, n * p / (2.0 * (n * p).ln())) < 1e-3);
        assert_eq!(chi_asymptotic(1000.0, 0.001), Err(TheoryError::Sparse(1000.0 * 0.001)));
        assert!(chi_asymptotic(10.0, 1.0).is_err());
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain_bounds(1, 1), (1, 1.0));
        let (lo, hi) = chain_bounds(4, 10);
        assert_eq!(lo, 4);
        assert!((hi - (4.0 * 10f64.ln() + 1.0)).abs() < 1e-12);
        let hi = 3.0 * (E * E).ln() + 1.0;
        assert!((hi - 7.0).abs() < 1e-12);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0.0).unwrap(), 0.0);
        assert!((phi(E - 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(phi(-0.1).is_err());
        for i in 1..=40 {
            let x = 2f64.powi(i) / i as f64;
            assert!(phi(x).unwrap() >= 2f64.powi(i) / 4.0, "i = {i}");
        }
    }

    #[test]
    fn phi_is_convex_and_nonnegative_on_a_grid() {
        let h = 0.01;
        for k in 1..5000 {
            let x = k as f64 * h;
            let (a, b, c) = (phi(x - h).unwrap(), phi(x).unwrap(), phi(x + h).unwrap());
            assert!(b >= 0.0);
            assert!(a + c - 2.0 * b >= -1e-12, "x = {x}");
        }
    }

    #[test]
    fn constant_factor_table() {
        assert_eq!(constant_factor(f64::INFINITY), Ok(2.0));
        assert_eq!(constant_factor(6.0), Ok(3.0));
        assert_eq!(constant_factor(3.0), Ok(4.0));
        assert_eq!(constant_factor(4.0), Ok(4.0));
        assert!(constant_factor(2.0).is_err());
        assert!(constant_factor(1.0).is_err());
        assert!((constant_factor(4.0 - 1e-9).unwrap() - constant_factor(4.0 + 1e-9).unwrap()).abs() < 1e-8);
        let mut last = 4.0;
        for k in 1..1000 {
            let v = constant_factor(4.0 + k as f64 * 0.5).unwrap();
            assert!(v < last && v > 2.0);
            last = v;
        }
    }

    #[test]
    fn regime_examples() {
        let r = regime_bounds(1e4, 0.5, 2.0).unwrap();
        assert!((r.s0 - 184.2).abs() < 0.05);
        assert!((r.large_threshold - 58.9).abs() < 0.05);
        assert!(rel(r.small_threshold, 0.5 * r.large_threshold) < 1e-15);
        assert!(rel(r.chi_asymptotic, r.eraser_budget_prediction) < 1e-9);
        assert!(r.b > 1.0);
        assert!(rel(r.k0_asymptotic, 2.0 * 5000f64.ln() / LN_2) < 1e-12);
    }

    #[test]
    fn regime_fixture_sparse() {
        let n: f64 = 1e6;
        let p = 1e-3;
        let omega = n.ln().ln();
        let r = regime_bounds(n, p, omega).unwrap();
        let ln_n = n.ln();
        let b = 1.0 / (1.0 - p);
        assert!(rel(r.s0, 10.0 * ln_n / p) < 1e-12);
        assert!(rel(r.large_threshold, n / (omega * ln_n * ln_n)) < 1e-12);
        assert!(rel(r.eraser_budget_prediction, n / (2.0 * (n * p).ln() / b.ln())) < 1e-9);
        // C = ln 1000 / ln ln 1e6 ~ 2.63 sits in (2, 4).
        assert_eq!(r.constant_factor, Some(4.0));
        assert!((r.s0 - 138_155.1).abs() < 0.1);
        assert!((r.large_threshold - 1_995.3).abs() < 0.1);
    }
}
