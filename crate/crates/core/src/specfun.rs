//! Special functions: log-factorials, terminating Gauss hypergeometric sums,
//! Jacobi polynomials with (possibly negative integer) parameters and the
//! `Q_{B,m,j}` polynomials of the Landau-level eigenbasis.

use std::sync::OnceLock;

use crate::error::{domain, Result};

const LN_FACTORIAL_TABLE_LEN: usize = 256;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(LN_FACTORIAL_TABLE_LEN);
        let mut acc = 0.0_f64;
        table.push(0.0);
        for k in 1..LN_FACTORIAL_TABLE_LEN {
            acc += (k as f64).ln();
            table.push(acc);
        }
        table
    })
}

/// `ln(n!)`.
///
/// Exact summation below 256, Stirling series with five correction terms
/// above (truncation error below `1e-25` there).
pub fn log_factorial(n: u64) -> f64 {
    if (n as usize) < LN_FACTORIAL_TABLE_LEN {
        return ln_factorial_table()[n as usize];
    }
    let x = n as f64 + 1.0;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // ln Gamma(x) asymptotic series
    let series = inv
        * (1.0 / 12.0
            - inv2
                * (1.0 / 360.0
                    - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// Arguments of `2F1(-m, b; c; t)`, a polynomial of degree `m` in `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermHypArgs {
    pub m: u32,
    pub b: f64,
    pub c: f64,
    pub t: f64,
}

/// Double-double number `hi + lo` with `|lo| <= ulp(hi)/2`, enough to carry
/// the alternating terms of a terminating `2F1` without losing the result
/// to cancellation.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// `a + b` exactly.
    fn sum_f64(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let e = (a - (s - bb)) + (b - bb);
        Self::renormalize(s, e)
    }

    fn renormalize(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, other: Self) -> Self {
        let s = Self::sum_f64(self.hi, other.hi);
        Self::renormalize(s.hi, s.lo + self.lo + other.lo)
    }

    fn mul(self, other: Self) -> Self {
        let p = self.hi * other.hi;
        let e = self.hi.mul_add(other.hi, -p);
        Self::renormalize(p, e + self.hi * other.lo + self.lo * other.hi)
    }

    fn div(self, other: Self) -> Self {
        let q = self.hi / other.hi;
        // remainder self - q * other, one Newton correction
        let r = self.add(other.mul(Self::from_f64(-q)));
        let q2 = r.hi / other.hi;
        Self::sum_f64(q, q2)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Terminating Gauss hypergeometric sum `sum_{k=0}^{m} (-m)_k (b)_k / ((c)_k k!) t^k`,
/// accumulated by term ratios.
pub fn hyp2f1_terminating(args: TermHypArgs) -> Result<f64> {
    hyp2f1_terminating_dd(args.m, args.b, args.c, DoubleDouble::from_f64(args.t))
        .map(DoubleDouble::to_f64)
}

/// The term-ratio recursion carried in double-double arithmetic. Terms
/// alternate in sign and can exceed the sum by many orders of magnitude
/// (`2F1(-12, 41; 21; 1/2)` has terms near `1e6` for a result of order one).
fn hyp2f1_terminating_dd(m: u32, b: f64, c: f64, t: DoubleDouble) -> Result<DoubleDouble> {
    if c <= 0.0 && c.fract() == 0.0 && -c < m as f64 {
        return domain(format!(
            "2F1 lower parameter c = {c} hits a zero Pochhammer factor before order {m}"
        ));
    }
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    for k in 0..m {
        let kf = k as f64;
        let num = DoubleDouble::sum_f64(kf, -(m as f64)).mul(DoubleDouble::sum_f64(b, kf));
        let den = DoubleDouble::sum_f64(c, kf).mul(DoubleDouble::from_f64(kf + 1.0));
        term = term.mul(num).div(den).mul(t);
        sum = sum.add(term);
    }
    Ok(sum)
}

/// Arguments of the Jacobi polynomial `P_n^{(a,b)}(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiArgs {
    pub n: u32,
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl JacobiArgs {
    pub fn new(n: u32, a: f64, b: f64, x: f64) -> Self {
        Self { n, a, b, x }
    }
}

/// True when `p` is an integer in `-n..=-1`, where the hypergeometric
/// representation built on the `p` slot degenerates to `0/0`.
fn blocks_slot(p: f64, n: u32) -> bool {
    p.fract() == 0.0 && p <= -1.0 && p >= -(n as f64)
}

/// `(p+1)_n / n!`
fn rising_over_factorial(p: f64, n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (p + k as f64) / k as f64)
}

/// `P_n^{(a,b)}(x)` through the terminating hypergeometric representation.
///
/// The representation is anchored at `x = 1` (slot `a`) or, through
/// `P_n^{(a,b)}(x) = (-1)^n P_n^{(b,a)}(-x)`, at `x = -1` (slot `b`).
/// A slot whose parameter is a negative integer `>= -n` is never used. When
/// both slots are usable the one with the smaller hypergeometric argument is
/// taken.
pub fn jacobi(args: JacobiArgs) -> Result<f64> {
    let JacobiArgs { n, a, b, x } = args;
    if n == 0 {
        return Ok(1.0);
    }
    let use_a = !blocks_slot(a, n);
    let use_b = !blocks_slot(b, n);
    let reflect = match (use_a, use_b) {
        (false, false) => {
            return domain(format!(
            "Jacobi parameters a = {a}, b = {b} are both negative integers within the degree {n}"
        ))
        }
        (true, false) => false,
        (false, true) => true,
        (true, true) => x < 0.0,
    };
    let (p, q, y, sign) = if reflect {
        (b, a, -x, if n % 2 == 0 { 1.0 } else { -1.0 })
    } else {
        (a, b, x, 1.0)
    };
    // (1 - y)/2 carried exactly
    let one_minus = DoubleDouble::sum_f64(1.0, -y);
    let t = DoubleDouble {
        hi: 0.5 * one_minus.hi,
        lo: 0.5 * one_minus.lo,
    };
    let hyp = hyp2f1_terminating_dd(n, n as f64 + p + q + 1.0, p + 1.0, t)?.to_f64();
    Ok(sign * rising_over_factorial(p, n) * hyp)
}

/// A Jacobi polynomial with its endpoint zeros split off:
///
/// `P_n^{(a,b)}(x) = sign * exp(ln_scale) * ((1-x)/2)^lower_power * ((1+x)/2)^upper_power * P(reduced)`.
///
/// For `a = -l` with `1 <= l <= n` the polynomial carries the factor
/// `((1-x)/2)^l`, and symmetrically for `b = -l`. Callers that multiply by
/// negative powers of `(1-x)/2` or `(1+x)/2` use the split form to cancel
/// them exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiFactorization {
    pub sign: f64,
    pub ln_scale: f64,
    pub lower_power: u32,
    pub upper_power: u32,
    pub reduced: JacobiArgs,
}

impl JacobiFactorization {
    pub fn value(&self) -> Result<f64> {
        let JacobiArgs { x, .. } = self.reduced;
        let lower = (0.5 * (1.0 - x)).powi(self.lower_power as i32);
        let upper = (0.5 * (1.0 + x)).powi(self.upper_power as i32);
        Ok(self.sign * self.ln_scale.exp() * lower * upper * jacobi(self.reduced)?)
    }
}

/// `ln|prod_{i<l} (n+p-i)/(n-i)|` and its sign: the scale of the split.
fn split_scale(n: u32, p: f64, l: u32) -> (f64, f64) {
    let mut ln_abs = 0.0;
    let mut sign = 1.0;
    for i in 0..l {
        let num = n as f64 + p - i as f64;
        if num < 0.0 {
            sign = -sign;
        }
        ln_abs += num.abs().ln() - ((n - i) as f64).ln();
    }
    (ln_abs, sign)
}

pub fn factor_jacobi(args: JacobiArgs) -> JacobiFactorization {
    let JacobiArgs { n, a, b, x } = args;
    let neg_int = |p: f64| -> Option<u32> {
        (p.fract() == 0.0 && p <= -1.0 && -p <= n as f64).then(|| (-p) as u32)
    };
    if let Some(l) = neg_int(a) {
        // P_n^{(-l,b)}(x) = C ((x-1)/2)^l P_{n-l}^{(l,b)}(x)
        let (ln_scale, sign) = split_scale(n, b, l);
        let parity = if l % 2 == 0 { 1.0 } else { -1.0 };
        return JacobiFactorization {
            sign: sign * parity,
            ln_scale,
            lower_power: l,
            upper_power: 0,
            reduced: JacobiArgs::new(n - l, l as f64, b, x),
        };
    }
    if let Some(l) = neg_int(b) {
        // P_n^{(a,-l)}(x) = C ((1+x)/2)^l P_{n-l}^{(a,l)}(x)
        let (ln_scale, sign) = split_scale(n, a, l);
        return JacobiFactorization {
            sign,
            ln_scale,
            lower_power: 0,
            upper_power: l,
            reduced: JacobiArgs::new(n - l, a, l as f64, x),
        };
    }
    JacobiFactorization {
        sign: 1.0,
        ln_scale: 0.0,
        lower_power: 0,
        upper_power: 0,
        reduced: args,
    }
}

/// `Q_{B,m,j}(t) = ((m+j)!/j!) 2F1(-m, 2B+m+1; j+1; t)`.
pub fn q_polynomial(b_field: u32, m: u32, j: u32, t: f64) -> f64 {
    let ratio = (log_factorial((m + j) as u64) - log_factorial(j as u64)).exp();
    let hyp = hyp2f1_terminating(TermHypArgs {
        m,
        b: (2 * b_field + m + 1) as f64,
        c: (j + 1) as f64,
        t,
    })
    .expect("c = j+1 is positive");
    ratio * hyp
}
