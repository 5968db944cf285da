//! Eigenspaces of the monopole Hamiltonian on the Riemann sphere and the
//! generalized coherent states built from them.
//!
//! Points are stereographic coordinates `z`; the invariant probability
//! measure is `(1+|z|^2)^{-2} dx dy / pi`, which in the variables
//! `t = |z|^2/(1+|z|^2)` and `theta = arg z` becomes `dt dtheta / (2 pi)`.
//! All Gram-type integrands are trigonometric polynomials in `theta` and
//! polynomials in `t`, so the product rule of [`quadrature_grid`] integrates
//! them exactly.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::gbd::mu_from_radius;
use crate::quadrature::gauss_legendre_unit;
use crate::specfun::{
    factor_jacobi, hyp2f1_terminating, jacobi, log_factorial, JacobiArgs, TermHypArgs,
};

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn new(x: f64, y: f64) -> Self {
        SpherePoint::Finite(Complex64::new(x, y))
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        if r.is_infinite() {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(Complex64::from_polar(r, theta))
        }
    }

    /// `mu_z = |z|^2 / (1 + |z|^2)`, equal to 1 at infinity.
    pub fn mu(&self) -> f64 {
        match self {
            SpherePoint::Finite(z) => mu_from_radius(z.norm()),
            SpherePoint::Infinity => 1.0,
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

/// The Landau level `eps_m^B = (2m+1)B + m(m+1)` and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenspaceSpec {
    pub field: u32,
    pub level: u32,
    pub dim: usize,
    pub eigenvalue: f64,
}

impl EigenspaceSpec {
    pub fn new(field: u32, level: u32) -> Self {
        let (b, m) = (field as f64, level as f64);
        Self {
            field,
            level,
            dim: (2 * field + 2 * level + 1) as usize,
            eigenvalue: (2.0 * m + 1.0) * b + m * (m + 1.0),
        }
    }

    fn max_index(&self) -> u32 {
        self.dim as u32 - 1
    }

    fn check_index(&self, j: i64) -> Result<u32> {
        let max = self.max_index() as i64;
        if j < 0 || j > max {
            return Err(Error::Index { index: j, max });
        }
        Ok(j as u32)
    }
}

fn h_unchecked(spec: &EigenspaceSpec, j: u32, p: &SpherePoint) -> Complex64 {
    let (field, level) = (spec.field, spec.level);
    let z = match p {
        SpherePoint::Infinity => {
            // limit along the positive real axis; only j = 2B+m survives
            return if j == 2 * field + level {
                let sign = if level % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign * log_factorial(level as u64).exp(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        SpherePoint::Finite(z) => *z,
    };
    let r2 = z.norm_sqr();
    let shift = j as i64 - level as i64;
    let x = (1.0 - r2) / (1.0 + r2);
    let split = factor_jacobi(JacobiArgs::new(
        level,
        shift as f64,
        (2 * field + level) as f64 - j as f64,
        x,
    ));
    let reduced = jacobi(split.reduced).expect("reduced Jacobi parameters are nonnegative");
    // z^{j-m} ((1-x)/2)^l = conj(z)^l (1+|z|^2)^{-l} when j - m = -l
    let monomial = if shift >= 0 {
        z.powu(shift as u32)
    } else {
        z.conj().powu((-shift) as u32)
    };
    let decay = -(field as i32) - split.lower_power as i32 - split.upper_power as i32;
    let scale = split.sign * (log_factorial(level as u64) + split.ln_scale).exp();
    monomial * (scale * reduced * (1.0 + r2).powi(decay))
}

/// `h_j^{B,m}(z) = m! (1+|z|^2)^{-B} z^{j-m} P_m^{(j-m, 2B+m-j)}((1-|z|^2)/(1+|z|^2))`.
///
/// For `j < m` the negative power of `z` is cancelled against the zero of
/// the Jacobi factor at `|z| = 0`. At infinity the limit along the positive
/// real axis is returned.
pub fn basis_h(field: u32, level: u32, j: i64, p: &SpherePoint) -> Result<Complex64> {
    let spec = EigenspaceSpec::new(field, level);
    let j = spec.check_index(j)?;
    Ok(h_unchecked(&spec, j, p))
}

fn ln_rho(spec: &EigenspaceSpec, j: u32) -> f64 {
    let top = spec.max_index() as u64;
    log_factorial(spec.level as u64) + log_factorial(j as u64) + log_factorial(top - j as u64)
        - (spec.dim as f64).ln()
        - log_factorial((2 * spec.field + spec.level) as u64)
}

/// Squared `L^2` norm of `h_j`: `m! j! (2B+2m-j)! / ((2B+2m+1) (2B+m)!)`.
pub fn norm_rho(field: u32, level: u32, j: i64) -> Result<f64> {
    let spec = EigenspaceSpec::new(field, level);
    let j = spec.check_index(j)?;
    Ok(ln_rho(&spec, j).exp())
}

/// Reproducing kernel of the eigenspace:
///
/// `K(z,w) = d (1+z conj(w))^{2B} (1+|z|^2)^{-B} (1+|w|^2)^{-B} 2F1(-m, m+2B+1; 1; |z-w|^2/((1+|z|^2)(1+|w|^2)))`.
///
/// A point at infinity is the limit along the positive real axis.
pub fn kernel(field: u32, level: u32, z: &SpherePoint, w: &SpherePoint) -> Complex64 {
    let d = (2 * field + 2 * level + 1) as f64;
    let hyp = |t: f64| {
        hyp2f1_terminating(TermHypArgs {
            m: level,
            b: (level + 2 * field + 1) as f64,
            c: 1.0,
            t,
        })
        .expect("c = 1")
    };
    match (z, w) {
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
            let (nz, nw) = (1.0 + z.norm_sqr(), 1.0 + w.norm_sqr());
            let cross = (Complex64::new(1.0, 0.0) + z * w.conj()).powu(2 * field);
            let dist = (z - w).norm_sqr() / (nz * nw);
            cross * (d * (nz * nw).powi(-(field as i32)) * hyp(dist))
        }
        (SpherePoint::Finite(z), SpherePoint::Infinity) => {
            let nz = 1.0 + z.norm_sqr();
            z.powu(2 * field) * (d * nz.powi(-(field as i32)) * hyp(1.0 / nz))
        }
        (SpherePoint::Infinity, SpherePoint::Finite(_)) => kernel(field, level, w, z).conj(),
        (SpherePoint::Infinity, SpherePoint::Infinity) => Complex64::new(d, 0.0),
    }
}

/// Expansion of the coherent state `|z, B, m>` over the orthonormal
/// monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentStateCoeffs {
    pub spec: EigenspaceSpec,
    pub label: SpherePoint,
    pub coeffs: Vec<Complex64>,
}

impl CoherentStateCoeffs {
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `|c_j|^2`, the photon-number distribution of the state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// `c_j = K(z,z)^{-1/2} h_j(z) / sqrt(rho_j)` with `K(z,z) = 2B+2m+1`.
pub fn coherent_coeffs(field: u32, level: u32, p: &SpherePoint) -> CoherentStateCoeffs {
    let spec = EigenspaceSpec::new(field, level);
    let ln_d = (spec.dim as f64).ln();
    let coeffs = (0..=spec.max_index())
        .map(|j| h_unchecked(&spec, j, p) * (-0.5 * (ln_rho(&spec, j) + ln_d)).exp())
        .collect();
    CoherentStateCoeffs {
        spec,
        label: *p,
        coeffs,
    }
}

/// `phi_j(xi) = sqrt((2B+2m)! / (j! (2B+2m-j)!)) xi^j`
pub fn monomial_basis(field: u32, level: u32, j: u32, xi: Complex64) -> Complex64 {
    let top = (2 * field + 2 * level) as u64;
    let ln_norm =
        0.5 * (log_factorial(top) - log_factorial(j as u64) - log_factorial(top - j as u64));
    xi.powu(j) * ln_norm.exp()
}

/// Wave function `sum_j c_j phi_j(xi)` of the coherent state.
pub fn cs_wavefunction_series(field: u32, level: u32, p: &SpherePoint, xi: Complex64) -> Complex64 {
    coherent_coeffs(field, level, p)
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c * monomial_basis(field, level, j as u32, xi))
        .sum()
}

/// `sqrt((2B+2m)!/((2B+m)! m!)) ((1+xi z)^2/(1+|z|^2))^B ((xi - conj z)(1+xi z)/(1+|z|^2))^m`
pub fn cs_wavefunction_closed(field: u32, level: u32, p: &SpherePoint, xi: Complex64) -> Complex64 {
    let ln_norm = 0.5
        * (log_factorial((2 * field + 2 * level) as u64)
            - log_factorial((2 * field + level) as u64)
            - log_factorial(level as u64));
    let norm = ln_norm.exp();
    match p {
        SpherePoint::Finite(z) => {
            let nz = 1.0 + z.norm_sqr();
            let one_plus = Complex64::new(1.0, 0.0) + xi * z;
            let field_part = (one_plus * one_plus / nz).powu(field);
            let level_part = ((xi - z.conj()) * one_plus / nz).powu(level);
            field_part * level_part * norm
        }
        SpherePoint::Infinity => (-xi).powu(level) * xi.powu(2 * field) * norm,
    }
}

/// Product quadrature for the invariant measure: Gauss–Legendre in
/// `t = mu_z` and the trapezoid rule in `arg z`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub points: Vec<SpherePoint>,
    pub weights: Vec<f64>,
}

impl QuadratureGrid {
    pub fn integrate<F>(&self, mut f: F) -> Complex64
    where
        F: FnMut(&SpherePoint) -> Complex64,
    {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| f(p) * *w)
            .sum()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Quadrature exact for every Gram integrand of the `(B, m)` eigenspace.
///
/// Radial integrands are polynomials of degree `<= 2B+2m` in `t`, so
/// `n_radial >= B+m+1` Gauss–Legendre nodes are exact; `n_radial >= B+m+2`
/// is required to leave a margin for products against one more basis
/// element. `2(2B+2m)+1` angular nodes resolve every frequency `|j-k| <= 2B+2m`.
pub fn quadrature_grid(field: u32, level: u32, n_radial: usize) -> Result<QuadratureGrid> {
    let needed = (field + level + 2) as usize;
    if n_radial < needed {
        return domain(format!(
            "n_radial = {n_radial} is below B + m + 2 = {needed}, quadrature would not be exact"
        ));
    }
    let n_theta = 2 * (2 * field + 2 * level) as usize + 1;
    let (ts, tw) = gauss_legendre_unit(n_radial);
    let mut points = Vec::with_capacity(n_radial * n_theta);
    let mut weights = Vec::with_capacity(n_radial * n_theta);
    for (t, w) in ts.iter().zip(&tw) {
        let r = (t / (1.0 - t)).sqrt();
        for k in 0..n_theta {
            let theta = 2.0 * PI * k as f64 / n_theta as f64;
            points.push(SpherePoint::from_polar(r, theta));
            weights.push(w / n_theta as f64);
        }
    }
    Ok(QuadratureGrid { points, weights })
}

fn max_identity_deviation(matrix: &[Vec<Complex64>]) -> f64 {
    matrix
        .iter()
        .enumerate()
        .flat_map(|(j, row)| {
            row.iter().enumerate().map(move |(k, g)| {
                let delta = if j == k { 1.0 } else { 0.0 };
                (g - delta).norm()
            })
        })
        .fold(0.0, f64::max)
}

/// `max |G_jk - delta_jk|` for `G_jk = d int c_j conj(c_k) dmeasure`: the
/// resolution of identity in coordinates.
pub fn gram_identity_residual(field: u32, level: u32, n_radial: usize) -> Result<f64> {
    let grid = quadrature_grid(field, level, n_radial)?;
    let dim = EigenspaceSpec::new(field, level).dim;
    let states: Vec<CoherentStateCoeffs> = grid
        .points
        .iter()
        .map(|p| coherent_coeffs(field, level, p))
        .collect();
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (state, w) in states.iter().zip(&grid.weights) {
        let scaled = dim as f64 * w;
        for (j, cj) in state.coeffs.iter().enumerate() {
            for (k, ck) in state.coeffs.iter().enumerate() {
                gram[j][k] += cj * ck.conj() * scaled;
            }
        }
    }
    Ok(max_identity_deviation(&gram))
}

/// Orthogonality of the `h_j` and agreement of their norms with `rho_j`,
/// measured scale-free: `max |int h_j conj(h_k) dmeasure / sqrt(rho_j rho_k) - delta_jk|`.
pub fn orthogonality_residual(field: u32, level: u32, n_radial: usize) -> Result<f64> {
    let grid = quadrature_grid(field, level, n_radial)?;
    let spec = EigenspaceSpec::new(field, level);
    let inv_norms: Vec<f64> = (0..spec.dim as u32)
        .map(|j| (-0.5 * ln_rho(&spec, j)).exp())
        .collect();
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); spec.dim]; spec.dim];
    for (p, w) in grid.points.iter().zip(&grid.weights) {
        let values: Vec<Complex64> = (0..spec.dim as u32)
            .map(|j| h_unchecked(&spec, j, p) * inv_norms[j as usize])
            .collect();
        for (j, hj) in values.iter().enumerate() {
            for (k, hk) in values.iter().enumerate() {
                gram[j][k] += hj * hk.conj() * *w;
            }
        }
    }
    Ok(max_identity_deviation(&gram))
}

/// Isometry of the coherent state transform `W[f](z) = d^{1/2} <Phi_z, f>`
/// on each basis monomial: `max_j |int |W[phi_j]|^2 dmeasure - 1|`.
pub fn cst_isometry_residual(field: u32, level: u32, n_radial: usize) -> Result<f64> {
    let grid = quadrature_grid(field, level, n_radial)?;
    let dim = EigenspaceSpec::new(field, level).dim;
    let mut norms = vec![0.0; dim];
    for (p, w) in grid.points.iter().zip(&grid.weights) {
        let state = coherent_coeffs(field, level, p);
        for (j, c) in state.coeffs.iter().enumerate() {
            // <Phi_z, phi_j> = conj(c_j)
            let transform = c.conj() * (dim as f64).sqrt();
            norms[j] += transform.norm_sqr() * w;
        }
    }
    Ok(norms.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max))
}

/// Applies the monopole Hamiltonian
///
/// `H_B = -(1+|z|^2)^2 d_z d_zbar - B z (1+|z|^2) d_z + B zbar (1+|z|^2) d_zbar + B^2 (1+|z|^2) - B^2`
///
/// to `h_j` with second-order central differences in `x` and `y`.
pub fn apply_hamiltonian_fd(
    field: u32,
    level: u32,
    j: i64,
    z: Complex64,
    step: f64,
) -> Result<Complex64> {
    let spec = EigenspaceSpec::new(field, level);
    let j = spec.check_index(j)?;
    let f =
        |dx: f64, dy: f64| h_unchecked(&spec, j, &SpherePoint::Finite(z + Complex64::new(dx, dy)));
    let center = f(0.0, 0.0);
    let (xp, xm, yp, ym) = (f(step, 0.0), f(-step, 0.0), f(0.0, step), f(0.0, -step));
    let fx = (xp - xm) / (2.0 * step);
    let fy = (yp - ym) / (2.0 * step);
    let laplacian = (xp + xm + yp + ym - center * 4.0) / (step * step);
    let i = Complex64::i();
    let dz = (fx - i * fy) * 0.5;
    let dzbar = (fx + i * fy) * 0.5;
    let b = field as f64;
    let nz = 1.0 + z.norm_sqr();
    Ok(-laplacian * (0.25 * nz * nz) - z * dz * (b * nz)
        + z.conj() * dzbar * (b * nz)
        + center * (b * b * nz - b * b))
}

/// Relative residual `|H_B h_j - eps_m^B h_j| / |h_j|` at `z`.
pub fn eigen_residual(field: u32, level: u32, j: i64, z: Complex64, step: f64) -> Result<f64> {
    if step.is_nan() || step <= 0.0 {
        return domain(format!("finite-difference step {step} must be positive"));
    }
    let value = basis_h(field, level, j, &SpherePoint::Finite(z))?;
    if value.norm() < 1e-12 {
        return domain(format!(
            "|h_{j}(z)| = {:e} is too close to a zero of the eigenfunction",
            value.norm()
        ));
    }
    let eigenvalue = EigenspaceSpec::new(field, level).eigenvalue;
    let applied = apply_hamiltonian_fd(field, level, j, z, step)?;
    Ok((applied - value * eigenvalue).norm() / value.norm().max(1e-300))
}
