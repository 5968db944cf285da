//! The generalized binomial distribution `B(2B, mu, m)` of the `m`-th
//! spherical Landau level.
//!
//! Outcomes are `j = 0..=2B+2m` with
//!
//! ```text
//! p_j = m!(2B+m)! / (j!(2B+2m-j)!) * mu^(j-m) (1-mu)^(2B+m-j) * [P_m^(j-m, 2B+m-j)(1-2mu)]^2
//! ```
//!
//! The powers `mu^(j-m)` (for `j < m`) and `(1-mu)^(2B+m-j)` (for `j > 2B+m`)
//! are negative; the squared Jacobi factor always carries the matching
//! endpoint zero, so it is split off with [`factor_jacobi`] and the powers
//! are combined before anything is evaluated.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::{factor_jacobi, jacobi, log_factorial, JacobiArgs};

/// Half-width of the Poissonian band around the critical radii.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Parameters of `B(2B, mu, m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbdParams {
    /// Field strength `B` (the monopole charge is `2B`).
    pub field: u32,
    /// Landau level index `m`.
    pub level: u32,
    /// `mu_z = |z|^2 / (1 + |z|^2)`.
    pub mu: f64,
}

impl GbdParams {
    pub fn new(field: u32, level: u32, mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return domain(format!("mu = {mu} must lie in [0, 1]"));
        }
        Ok(Self { field, level, mu })
    }

    /// Largest outcome `2B + 2m`.
    pub fn max_outcome(&self) -> u32 {
        2 * self.field + 2 * self.level
    }

    /// Number of outcomes `d_{B,m} = 2B + 2m + 1`.
    pub fn support_len(&self) -> usize {
        self.max_outcome() as usize + 1
    }

    fn check_index(&self, j: i64) -> Result<u32> {
        let max = self.max_outcome() as i64;
        if j < 0 || j > max {
            return Err(Error::Index { index: j, max });
        }
        Ok(j as u32)
    }
}

/// `r^2 / (1 + r^2)`, with `mu = 1` at `r = inf`.
pub fn mu_from_radius(r: f64) -> f64 {
    if r.is_infinite() {
        1.0
    } else if r <= 1.0 {
        let r2 = r * r;
        r2 / (1.0 + r2)
    } else {
        let inv = 1.0 / r;
        1.0 / (1.0 + inv * inv)
    }
}

/// Inverse of [`mu_from_radius`].
pub fn radius_from_mu(mu: f64) -> f64 {
    if mu >= 1.0 {
        f64::INFINITY
    } else {
        (mu / (1.0 - mu)).sqrt()
    }
}

/// `ln(a^e)` with `0^0 = 1`.
fn ln_pow(base: f64, exp: i64) -> f64 {
    if exp == 0 {
        0.0
    } else {
        exp as f64 * base.ln()
    }
}

fn pmf_unchecked(params: &GbdParams, j: u32) -> f64 {
    let GbdParams { field, level, mu } = *params;
    let (b2, m) = (2 * field as i64, level as i64);
    let j = j as i64;
    let split = factor_jacobi(JacobiArgs::new(
        level,
        (j - m) as f64,
        (b2 + m - j) as f64,
        1.0 - 2.0 * mu,
    ));
    let mu_exp = j - m + 2 * split.lower_power as i64;
    let comp_exp = b2 + m - j + 2 * split.upper_power as i64;
    debug_assert!(mu_exp >= 0 && comp_exp >= 0);
    let reduced = jacobi(split.reduced).expect("reduced Jacobi parameters are nonnegative");
    if reduced == 0.0 {
        return 0.0;
    }
    let ln_prefactor = log_factorial(level as u64) + log_factorial((b2 + m) as u64)
        - log_factorial(j as u64)
        - log_factorial((b2 + 2 * m - j) as u64);
    let ln_p = ln_prefactor
        + 2.0 * split.ln_scale
        + ln_pow(mu, mu_exp)
        + ln_pow(1.0 - mu, comp_exp)
        + 2.0 * reduced.abs().ln();
    ln_p.exp().min(1.0)
}

/// Probability of outcome `j`.
pub fn pmf(params: &GbdParams, j: i64) -> Result<f64> {
    let j = params.check_index(j)?;
    Ok(pmf_unchecked(params, j))
}

/// The full probability vector with its running sums.
#[derive(Debug, Clone, PartialEq)]
pub struct PmfTable {
    pub params: GbdParams,
    pub probs: Vec<f64>,
    pub cumulative: Vec<f64>,
}

impl PmfTable {
    pub fn new(params: GbdParams) -> Self {
        let probs: Vec<f64> = (0..=params.max_outcome())
            .map(|j| pmf_unchecked(&params, j).clamp(0.0, 1.0))
            .collect();
        let cumulative = probs
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Self {
            params,
            probs,
            cumulative,
        }
    }

    pub fn cdf(&self, j: i64) -> Result<f64> {
        let j = self.params.check_index(j)?;
        Ok(self.cumulative[j as usize])
    }

    /// Inverse transform: the smallest outcome with positive mass whose
    /// cumulative probability reaches `u`.
    pub fn sample(&self, u: f64) -> u32 {
        self.probs
            .iter()
            .zip(&self.cumulative)
            .position(|(&p, &c)| p > 0.0 && c >= u)
            .or_else(|| self.probs.iter().rposition(|&p| p > 0.0))
            .unwrap_or(0) as u32
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(j, p)| j as f64 * p)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(j, p)| (j as f64 - mean).powi(2) * p)
            .sum()
    }

    /// `sum_j e^{ijt} p_j`
    pub fn char_fn(&self, t: f64) -> Complex64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(j, &p)| Complex64::from_polar(p, j as f64 * t))
            .sum()
    }
}

pub fn pmf_table(params: &GbdParams) -> PmfTable {
    PmfTable::new(*params)
}

pub fn cdf(params: &GbdParams, j: i64) -> Result<f64> {
    params.check_index(j)?;
    Ok((0..=j as u32).map(|k| pmf_unchecked(params, k)).sum())
}

/// Inverse-transform sample driven by a caller supplied uniform `u` in `[0, 1)`.
pub fn sample(params: &GbdParams, u: f64) -> u32 {
    PmfTable::new(*params).sample(u)
}

/// `E(X) = m + 2B mu`
pub fn mean(params: &GbdParams) -> f64 {
    params.level as f64 + 2.0 * params.field as f64 * params.mu
}

/// `Var(X) = 2B mu(1-mu) + 2 mu(1-mu) m(2B+m+1)`
pub fn variance(params: &GbdParams) -> f64 {
    let (b, m, mu) = (params.field as f64, params.level as f64, params.mu);
    let spread = mu * (1.0 - mu);
    2.0 * b * spread + 2.0 * spread * m * (2.0 * b + m + 1.0)
}

/// Mandel parameter `Var/E - 1`; `None` when the mean vanishes.
pub fn mandel_q(params: &GbdParams) -> Option<f64> {
    let mean = mean(params);
    (mean > 0.0).then(|| variance(params) / mean - 1.0)
}

/// Characteristic function by summing over the probability table.
pub fn char_fn_direct(params: &GbdParams, t: f64) -> Complex64 {
    PmfTable::new(*params).char_fn(t)
}

/// `e^{imt} ((1-mu) + mu e^{it})^{2B} P_m^{(0,2B)}(1 - 4mu(1-mu)(1-cos t))`
pub fn char_fn_closed(params: &GbdParams, t: f64) -> Complex64 {
    let GbdParams { field, level, mu } = *params;
    let half_sin = (0.5 * t).sin();
    let x = 1.0 - 8.0 * mu * (1.0 - mu) * half_sin * half_sin;
    let jac = jacobi(JacobiArgs::new(level, 0.0, 2.0 * field as f64, x))
        .expect("parameters (0, 2B) are nonnegative");
    let binomial = (Complex64::new(1.0 - mu, 0.0) + Complex64::from_polar(mu, t)).powu(2 * field);
    Complex64::from_polar(1.0, level as f64 * t) * binomial * jac
}

/// Photon counting statistics of a coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    SubPoissonian,
    Poissonian,
    SuperPoissonian,
    /// Mean photon number zero; the Mandel parameter is undefined.
    Degenerate,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::SubPoissonian => "SUB_POISSONIAN",
            Regime::Poissonian => "POISSONIAN",
            Regime::SuperPoissonian => "SUPER_POISSONIAN",
            Regime::Degenerate => "DEGENERATE",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: Option<f64>,
    pub regime: Regime,
}

pub fn moment_summary(params: &GbdParams) -> MomentSummary {
    MomentSummary {
        mean: mean(params),
        variance: variance(params),
        mandel_q: mandel_q(params),
        regime: classify(params.field, params.level, radius_from_mu(params.mu)),
    }
}

/// Critical radii and parameters separating sub- from super-Poissonian
/// statistics for `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeBoundary {
    pub r_minus: f64,
    pub r_plus: f64,
    pub mu_minus: f64,
    pub mu_plus: f64,
}

/// Roots of `T_m(mu) = 2(B + m(2B+m+1)) mu^2 - 2m(2B+m+1) mu + m`.
///
/// The Mandel parameter is `-T_m(mu) / (2B mu + m)`, so these are exactly
/// the Poissonian points.
pub fn mandel_quadratic_roots(field: u32, level: u32) -> Result<(f64, f64)> {
    if level == 0 {
        return domain("critical parameters need m >= 1; for m = 0 the statistics are sub-Poissonian everywhere");
    }
    let (b, m) = (field as f64, level as f64);
    let k = m * (2.0 * b + m + 1.0);
    let quad = 2.0 * (b + k);
    let lin = -2.0 * k;
    let disc = (lin * lin - 4.0 * quad * m).max(0.0);
    let q = 0.5 * (-lin + disc.sqrt());
    Ok((m / q, q / quad))
}

/// `r_pm^2 = m (1 pm sqrt(1 - 1/(m(2B+m))))`, the radii at which `T_m`
/// vanishes, written in closed form.
pub fn critical_radii_closed_form(field: u32, level: u32) -> Result<(f64, f64)> {
    if level == 0 {
        return domain("critical radii need m >= 1");
    }
    let m = level as f64;
    let eps = 1.0 / (m * (2.0 * field as f64 + m));
    let root = (1.0 - eps).sqrt();
    // 1 - sqrt(1 - eps) without cancellation
    let lower = eps / (1.0 + root);
    Ok(((m * lower).sqrt(), (m * (1.0 + root)).sqrt()))
}

pub fn regime_boundaries(field: u32, level: u32) -> Result<RegimeBoundary> {
    let (mu_minus, mu_plus) = mandel_quadratic_roots(field, level)?;
    let boundary = RegimeBoundary {
        r_minus: radius_from_mu(mu_minus),
        r_plus: radius_from_mu(mu_plus),
        mu_minus,
        mu_plus,
    };
    let (r_minus, r_plus) = critical_radii_closed_form(field, level)?;
    if (r_minus - boundary.r_minus).abs() > 1e-10 || (r_plus - boundary.r_plus).abs() > 1e-10 {
        return domain(format!(
            "critical radii disagree: quadratic gives ({}, {}), closed form ({r_minus}, {r_plus})",
            boundary.r_minus, boundary.r_plus
        ));
    }
    Ok(boundary)
}

/// Photon statistics of the coherent state labelled by a point at
/// stereographic radius `r` (`r = inf` allowed).
pub fn classify(field: u32, level: u32, r: f64) -> Regime {
    if level == 0 {
        return if field == 0 || r == 0.0 {
            Regime::Degenerate
        } else {
            Regime::SubPoissonian
        };
    }
    let bounds = regime_boundaries(field, level).expect("level >= 1");
    if r.is_infinite() {
        return Regime::SubPoissonian;
    }
    if (r - bounds.r_minus).abs() <= BOUNDARY_TOLERANCE
        || (r - bounds.r_plus).abs() <= BOUNDARY_TOLERANCE
    {
        Regime::Poissonian
    } else if r < bounds.r_minus || r > bounds.r_plus {
        Regime::SubPoissonian
    } else {
        Regime::SuperPoissonian
    }
}

fn ln_poisson(lambda: f64, j: u64) -> f64 {
    j as f64 * lambda.ln() - lambda - log_factorial(j)
}

/// Total variation distance between `Binom(2B, lambda/2B)` and `Poisson(lambda)`.
///
/// The Poisson tail is summed until its cumulative mass exceeds `1 - 1e-15`.
pub fn poisson_tv_distance(field: u32, lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return domain(format!("lambda = {lambda} must be positive"));
    }
    let n = 2 * field;
    if lambda > n as f64 {
        return domain(format!("lambda = {lambda} exceeds 2B = {n}"));
    }
    let binom = PmfTable::new(GbdParams::new(field, 0, lambda / n as f64)?);
    let mut poisson_mass = 0.0;
    let mut diff = 0.0;
    let mut j = 0u64;
    loop {
        let p = ln_poisson(lambda, j).exp();
        let b = binom.probs.get(j as usize).copied().unwrap_or(0.0);
        diff += (b - p).abs();
        poisson_mass += p;
        j += 1;
        if j > n as u64 && poisson_mass > 1.0 - 1e-15 {
            break;
        }
        if j > n as u64 + 100_000 {
            break;
        }
    }
    Ok(0.5 * diff)
}

/// Evenly spaced points `t_min..=t_max`.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![start],
        _ => (0..n)
            .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `101` points over `[-pi, pi]`, the grid used by the characteristic
/// function checks.
pub fn char_fn_grid() -> Vec<f64> {
    linspace(-PI, PI, 101)
}
