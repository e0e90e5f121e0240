//! Capacity exponent and entropy bounds.
//!
//! `ι_q = log2 r` where `r` is the positive root of
//! `x³ - (q-2)x² - (q-3)x - (q-2)`. For every `β ∈ [0, 1]`,
//! `H(β) / (1 + 2β) ≤ ι_q`, with equality only at `q = 3` and `β = β̄`, the
//! root of `(1 - x)³ = x`.

use crate::{Error, Result};

/// Numeric tolerances used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Absolute width at which bisection stops.
    pub bisection: f64,
    /// Bound on `|p_q(r)|` for the capacity cubic.
    pub polynomial_residual: f64,
    /// Bound on `|(1 - β̄)³ - β̄|`.
    pub beta_bar_residual: f64,
    /// Agreement between independently computed closed forms.
    pub identity: f64,
    /// Slack allowed in `H(β)/(1+2β) ≤ ι_q`.
    pub entropy_bound_slack: f64,
    /// How close the grid maximum must come to `ι_3`.
    pub entropy_bound_tightness: f64,
    /// Successive-iterate change at which power iteration stops.
    pub power_iteration: f64,
    pub power_iteration_cap: usize,
}

pub const TOLERANCES: Tolerances = Tolerances {
    bisection: 1e-13,
    polynomial_residual: 1e-12,
    beta_bar_residual: 1e-13,
    identity: 1e-10,
    entropy_bound_slack: 1e-12,
    entropy_bound_tightness: 1e-6,
    power_iteration: 1e-12,
    power_iteration_cap: 1_000_000,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityResult {
    pub q: u32,
    /// Positive root of the capacity cubic.
    pub r: f64,
    /// `log2 r`, bits per symbol.
    pub iota: f64,
}

impl CapacityResult {
    pub fn residual(&self) -> f64 {
        capacity_polynomial(self.q, self.r).abs()
    }
}

/// `x³ - (q-2)x² - (q-3)x - (q-2)`.
pub fn capacity_polynomial(q: u32, x: f64) -> f64 {
    let q = f64::from(q);
    ((x - (q - 2.0)) * x - (q - 3.0)) * x - (q - 2.0)
}

fn capacity_derivative(q: u32, x: f64) -> f64 {
    let q = f64::from(q);
    (3.0 * x - 2.0 * (q - 2.0)) * x - (q - 3.0)
}

/// Bisection on a sign-changing bracket, then a few guarded Newton steps.
fn find_root(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo < 0.0 && fhi > 0.0 || flo > 0.0 && fhi < 0.0) {
        return Err(Error::OutOfRange { name: "root bracket", value: lo });
    }
    let rising = fhi > 0.0;
    while hi - lo > TOLERANCES.bisection {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = df(x);
        if d == 0.0 {
            break;
        }
        let step = x - f(x) / d;
        // Stay within the bracket found by bisection.
        if (step - x).abs() > 2.0 * TOLERANCES.bisection {
            break;
        }
        x = step;
    }
    Ok(x)
}

/// `ι_q` and the dominant root `r ∈ (1, q)`.
pub fn iota(q: u32) -> Result<CapacityResult> {
    if q < 3 {
        return Err(Error::UnsupportedAlphabet { q });
    }
    // p(1) = 8 - 3q < 0 and p(q) = q² + 2q + 2 > 0.
    let r = find_root(
        |x| capacity_polynomial(q, x),
        |x| capacity_derivative(q, x),
        1.0,
        f64::from(q),
    )?;
    Ok(CapacityResult { q, r, iota: libm::log2(r) })
}

fn check_unit(name: &'static str, beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value: beta })
    }
}

/// `H(β)` in bits with `0 log 0 = 0`.
pub fn binary_entropy(beta: f64) -> Result<f64> {
    check_unit("beta", beta)?;
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * libm::log2(p) };
    Ok(term(beta) + term(1.0 - beta))
}

/// `β̄`, the root of `(1 - x)³ = x` in `[0, 1]`.
pub fn beta_bar() -> f64 {
    let g = |x: f64| {
        let y = 1.0 - x;
        y * y * y - x
    };
    let dg = |x: f64| {
        let y = 1.0 - x;
        -3.0 * y * y - 1.0
    };
    find_root(g, dg, 0.0, 1.0).expect("g(0) = 1 > 0 > -1 = g(1)")
}

/// `H(β) / (1 + 2β)`, the lower bound on `ι_q`.
pub fn entropy_rate_bound(beta: f64) -> Result<f64> {
    Ok(binary_entropy(beta)? / (1.0 + 2.0 * beta))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyBoundPoint {
    pub beta: f64,
    pub value: f64,
}

impl EntropyBoundPoint {
    pub fn at(beta: f64) -> Result<Self> {
        Ok(Self { beta, value: entropy_rate_bound(beta)? })
    }
}

/// Ratios of a code family: `tau = t/m` duplications per root symbol and
/// `beta = b/t` length-3 duplications.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticRateParams {
    pub tau: f64,
    pub beta: f64,
}

/// `(ι_q + τ H(β)) / (1 + τ (1 + 2β))`.
pub fn asymptotic_rate(q: u32, params: AsymptoticRateParams) -> Result<f64> {
    if !(params.tau >= 0.0 && params.tau.is_finite()) {
        return Err(Error::OutOfRange { name: "tau", value: params.tau });
    }
    let h = binary_entropy(params.beta)?;
    let iota = iota(q)?.iota;
    Ok((iota + params.tau * h) / (1.0 + params.tau * (1.0 + 2.0 * params.beta)))
}

/// Grid check of the entropy-rate bound for one alphabet size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Report {
    pub q: u32,
    pub grid_size: usize,
    pub iota: f64,
    pub beta_bar: f64,
    /// Largest `H(β)/(1+2β)` over the grid and where it occurs.
    pub max_value: f64,
    pub argmax: f64,
    /// `min_β (ι_q - H(β)/(1+2β))`.
    pub min_slack: f64,
    /// The bound holds at every grid point within the slack tolerance.
    pub bound_holds: bool,
    /// `q = 3` only: the grid maximum is within the tightness tolerance of
    /// `ι_3`. Required by `pass` once the grid spacing is at most `1e-3`.
    pub tight: Option<bool>,
    /// `q = 3` only: the argmax is within `2 / grid_size` of `β̄`.
    pub argmax_near_beta_bar: Option<bool>,
    pub pass: bool,
}

/// Grid spacing at or below which `q = 3` must attain `ι_3` to within the
/// tightness tolerance.
pub const TIGHTNESS_SPACING: f64 = 1e-3;

pub fn verify_lemma1(q: u32, grid_size: usize) -> Result<Lemma1Report> {
    if grid_size < 2 {
        return Err(Error::OutOfRange { name: "grid_size", value: grid_size as f64 });
    }
    let iota = iota(q)?.iota;
    let beta_bar = beta_bar();
    let mut max_value = f64::NEG_INFINITY;
    let mut argmax = 0.0;
    let mut min_slack = f64::INFINITY;
    let last = (grid_size - 1) as f64;
    for i in 0..grid_size {
        let beta = i as f64 / last;
        let value = entropy_rate_bound(beta)?;
        if value > max_value {
            max_value = value;
            argmax = beta;
        }
        min_slack = min_slack.min(iota - value);
    }
    let bound_holds = min_slack >= -TOLERANCES.entropy_bound_slack;
    let (tight, argmax_near_beta_bar, pass) = if q == 3 {
        let tight = (iota - max_value).abs() < TOLERANCES.entropy_bound_tightness;
        let near = (argmax - beta_bar).abs() <= 2.0 / grid_size as f64;
        let fine = 1.0 / last <= TIGHTNESS_SPACING;
        (Some(tight), Some(near), bound_holds && near && (tight || !fine))
    } else {
        (None, None, bound_holds && min_slack > 0.0)
    };
    Ok(Lemma1Report {
        q,
        grid_size,
        iota,
        beta_bar,
        max_value,
        argmax,
        min_slack,
        bound_holds,
        tight,
        argmax_near_beta_bar,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain bisection to machine precision; no Newton step.
    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let rising = f(hi) > 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == rising {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn ternary_capacity() {
        let c = iota(3).unwrap();
        let oracle = bisect(|x| x * x * x - x * x - 1.0, 1.0, 2.0);
        assert!((c.r - oracle).abs() < 1e-12);
        assert!((c.r - 1.465571232).abs() < 1e-9);
        assert!((c.iota - 0.551463).abs() < 1e-6);
        assert!((c.r * c.r * c.r - c.r * c.r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quaternary_root_bracket() {
        let p = |x: f64| x * x * x - 2.0 * x * x - x - 2.0;
        assert!(p(2.0) < 0.0 && p(3.0) > 0.0);
        let c = iota(4).unwrap();
        assert!(c.r > 2.0 && c.r < 3.0);
        assert!((c.r - bisect(p, 2.0, 3.0)).abs() < 1e-12);
    }

    #[test]
    fn capacity_residuals_and_monotonicity() {
        let mut prev = 0.0;
        for q in 3..=64 {
            let c = iota(q).unwrap();
            assert!(c.r > 1.0);
            assert!(c.residual() < TOLERANCES.polynomial_residual * f64::from(q * q), "q={q}");
            assert!(c.iota > prev);
            prev = c.iota;
        }
        assert!(iota(2).is_err());
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        let h = binary_entropy(0.25).unwrap();
        let direct = -0.25 * libm::log2(0.25) - 0.75 * libm::log2(0.75);
        assert!((h - direct).abs() < 1e-15);
        assert!((h - binary_entropy(0.75).unwrap()).abs() < 1e-15);
        assert!((h - 0.811278).abs() < 1e-6);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn beta_bar_identities() {
        let b = beta_bar();
        let oracle = bisect(|x| (1.0 - x) * (1.0 - x) * (1.0 - x) - x, 0.0, 1.0);
        assert!((b - oracle).abs() < 1e-13);
        assert!((b - 0.317672).abs() < 1e-6);
        assert!(((1.0 - b).powi(3) - b).abs() < TOLERANCES.beta_bar_residual);
        let x = 1.0 / (1.0 - b);
        assert!((x * x * x - x * x - 1.0).abs() < TOLERANCES.identity);
        assert!((b - (1.0 - 1.0 / iota(3).unwrap().r)).abs() < TOLERANCES.identity);
    }

    #[test]
    fn entropy_rate_bound_values() {
        let b = beta_bar();
        assert_eq!(entropy_rate_bound(0.0).unwrap(), 0.0);
        let at_bar = entropy_rate_bound(b).unwrap();
        assert!((at_bar + libm::log2(1.0 - b)).abs() < 1e-10);
        assert!((at_bar - iota(3).unwrap().iota).abs() < 1e-8);
        assert!(entropy_rate_bound(2.0).is_err());
    }

    #[test]
    fn asymptotic_rate_limits() {
        let it = iota(3).unwrap().iota;
        for beta in [0.0, 0.3, 1.0] {
            let v = asymptotic_rate(3, AsymptoticRateParams { tau: 0.0, beta }).unwrap();
            assert_eq!(v, it);
        }
        let beta = 0.4;
        let far = asymptotic_rate(3, AsymptoticRateParams { tau: 1e6, beta }).unwrap();
        assert!((far - entropy_rate_bound(beta).unwrap()).abs() < 1e-5);
        let b = beta_bar();
        let eq = asymptotic_rate(3, AsymptoticRateParams { tau: 1.0, beta: b }).unwrap();
        assert!(eq <= it + 1e-15 && (eq - it).abs() < 1e-8);
        assert!(asymptotic_rate(3, AsymptoticRateParams { tau: -1.0, beta }).is_err());
        assert!(asymptotic_rate(3, AsymptoticRateParams { tau: 1.0, beta: 1.1 }).is_err());
        assert!(asymptotic_rate(2, AsymptoticRateParams { tau: 1.0, beta }).is_err());
    }

    #[test]
    fn asymptotic_rate_never_exceeds_capacity() {
        for q in [3, 4, 7] {
            let it = iota(q).unwrap().iota;
            for i in 0..100 {
                for j in 0..100 {
                    let params = AsymptoticRateParams { tau: f64::from(i), beta: f64::from(j) / 99.0 };
                    assert!(asymptotic_rate(q, params).unwrap() <= it + 1e-12);
                }
            }
        }
    }

    #[test]
    fn entropy_bound_grid() {
        let r = verify_lemma1(3, 10_000).unwrap();
        assert!(r.pass && r.bound_holds);
        assert!((r.argmax - 0.3177).abs() < 1e-3);
        let r4 = verify_lemma1(4, 10_000).unwrap();
        assert!(r4.pass && r4.min_slack > 0.0);
        let coarse = verify_lemma1(3, 2).unwrap();
        assert!(coarse.pass);
        assert_eq!(coarse.max_value, 0.0);
        assert!(verify_lemma1(3, 1).is_err());
    }
}
