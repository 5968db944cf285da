//! Values frozen from an exact rational-arithmetic evaluation.

use approx::assert_relative_eq;
use gbd_core::gbd::{char_fn_closed, char_fn_direct, pmf_table, regime_boundaries, GbdParams};
use gbd_core::specfun::{jacobi, q_polynomial, JacobiArgs};
use gbd_core::sphere::norm_rho;

fn assert_table(field: u32, level: u32, mu: f64, expected: &[f64]) {
    let table = pmf_table(&GbdParams::new(field, level, mu).unwrap());
    assert_eq!(table.probs.len(), expected.len());
    for (j, (p, e)) in table.probs.iter().zip(expected).enumerate() {
        assert!(
            (p - e).abs() <= 1e-13,
            "B={field} m={level} mu={mu} j={j}: {p} vs {e}"
        );
    }
}

#[test]
fn pmf_tables() {
    assert_table(
        1,
        1,
        0.25,
        &[27.0 / 64.0, 0.0, 9.0 / 32.0, 0.25, 3.0 / 64.0],
    );
    assert_table(
        2,
        3,
        0.3,
        &[
            0.266827932,
            0.0,
            0.14823774,
            0.01882384,
            0.08326668,
            0.100166976,
            0.001323,
            0.13220496,
            0.17156286,
            0.06858432,
            0.009001692,
        ],
    );
    assert_table(
        3,
        2,
        0.7,
        &[
            0.0014467005,
            0.017222625,
            0.0796086225,
            0.17156286,
            0.150444945,
            0.015688134,
            0.056723625,
            0.14823774,
            0.0144120025,
            0.111178305,
            0.2334744405,
        ],
    );
}

#[test]
fn jacobi_values() {
    let cases = [
        (5, 2.0, 3.0, 0.3, 1.0942246875),
        (8, 0.5, 1.5, -0.7, -0.221101539140625),
        (20, 12.0, 20.0, 0.0, -74.3016586303711),
        (6, -4.0, 9.0, 0.25, -3.374176025390625),
        (10, 3.0, -2.0, -0.4, -0.1417729716),
    ];
    for (n, a, b, x, expected) in cases {
        let v = jacobi(JacobiArgs::new(n, a, b, x)).unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-12);
    }
}

#[test]
fn q_values() {
    assert_relative_eq!(q_polynomial(2, 3, 1, 0.3), -4.08, max_relative = 1e-13);
    assert_relative_eq!(q_polynomial(1, 2, 4, 0.2), 19.2, max_relative = 1e-13);
}

#[test]
fn characteristic_function_value() {
    let params = GbdParams::new(1, 1, 0.25).unwrap();
    for c in [char_fn_direct(&params, 0.7), char_fn_closed(&params, 0.7)] {
        assert_relative_eq!(c.re, 0.2993000605718852, max_relative = 1e-13);
        assert_relative_eq!(c.im, 0.508662647760031, max_relative = 1e-13);
    }
}

#[test]
fn norms() {
    let expected = [0.8, 0.2, 2.0 / 15.0, 0.2, 0.8];
    for (j, e) in expected.iter().enumerate() {
        assert_relative_eq!(norm_rho(1, 1, j as i64).unwrap(), *e, max_relative = 1e-14);
    }
}

#[test]
fn critical_radii() {
    let b = regime_boundaries(0, 2).unwrap();
    assert_relative_eq!(b.mu_minus, 0.2113248654051871, max_relative = 1e-13);
    assert_relative_eq!(b.mu_plus, 0.7886751345948129, max_relative = 1e-13);
    assert_relative_eq!(b.r_minus, 0.5176380902050415, max_relative = 1e-13);
    assert_relative_eq!(b.r_plus, 1.9318516525781366, max_relative = 1e-13);

    let b = regime_boundaries(2, 3).unwrap();
    assert_relative_eq!(b.r_minus, 0.26888618624689603, max_relative = 1e-12);
    assert_relative_eq!(b.r_plus, 2.434686883121852, max_relative = 1e-12);

    let b = regime_boundaries(6, 4).unwrap();
    assert_relative_eq!(b.r_minus * b.r_plus, 0.5, max_relative = 1e-13);

    let b = regime_boundaries(1, 1).unwrap();
    assert_relative_eq!(
        b.r_minus * b.r_plus,
        (1.0f64 / 3.0).sqrt(),
        max_relative = 1e-13
    );
}
