//! Exact rational reference values for polynomial inputs.

use hhv_core::bounds::{lhs_midpoint_corrected, lhs_trapezoid, lhs_trapezoid_corrected};
use hhv_core::corpus::{make_f_alpha_on, monomial, polynomial};
use hhv_core::numerics::integrate_with;
use hhv_core::{
    application_check, beta, check_bound, integrate, lemma1_check, lemma2_check, ApplicationId, BoundOptions, Interval,
    MonomialFamilyParam, QuadratureOptions, TheoremId, Variant,
};
use num_rational::Ratio;

type Q = Ratio<i128>;

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Polynomial with rational coefficients in increasing degree order.
#[derive(Clone, Debug)]
struct Poly(Vec<Q>);

impl Poly {
    fn from_ints(c: &[i128]) -> Self {
        Poly(c.iter().map(|&v| Q::from_integer(v)).collect())
    }

    fn eval(&self, x: Q) -> Q {
        self.0.iter().rev().fold(Q::from_integer(0), |acc, &c| acc * x + c)
    }

    fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * Q::from_integer(i as i128))
                .collect(),
        )
    }

    fn nth_derivative(&self, k: usize) -> Poly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    fn antiderivative(&self) -> Poly {
        let mut out = vec![Q::from_integer(0)];
        out.extend(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &c)| c / Q::from_integer(i as i128 + 1)),
        );
        Poly(out)
    }

    fn integral(&self, a: Q, b: Q) -> Q {
        let p = self.antiderivative();
        p.eval(b) - p.eval(a)
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly(vec![]);
        }
        let mut out = vec![Q::from_integer(0); self.0.len() + other.0.len() - 1];
        for (i, &x) in self.0.iter().enumerate() {
            for (j, &y) in other.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly(out)
    }

    /// `self(c0 + c1 * t)` as a polynomial in `t`.
    fn compose_affine(&self, c0: Q, c1: Q) -> Poly {
        let inner = Poly(vec![c0, c1]);
        self.0.iter().rev().fold(Poly(vec![]), |acc, &c| {
            let mut p = acc.mul(&inner);
            if p.0.is_empty() {
                p.0.push(c);
            } else {
                p.0[0] += c;
            }
            p
        })
    }

    fn to_smooth(&self, name: &str, domain: Interval<f64>) -> hhv_core::SmoothFunction64 {
        let c: Vec<f64> = self.0.iter().map(|&v| to_f64(v)).collect();
        polynomial(name, &c, domain)
    }
}

fn trapezoid_identity_exact(f: &Poly, a: Q, b: Q) -> (Q, Q) {
    let w = b - a;
    let d1 = f.derivative();
    let lhs = f.integral(a, b) / w + w / q(12, 1) * (d1.eval(b) - d1.eval(a)) - (f.eval(a) + f.eval(b)) / q(2, 1);
    // (λ(1-λ))^2 f''''(b + (a - b)λ)
    let s = Poly(vec![q(0, 1), q(1, 1), q(-1, 1)]);
    let integrand = s.mul(&s).mul(&f.nth_derivative(4).compose_affine(b, a - b));
    let rhs = w * w * w * w / q(24, 1) * integrand.integral(q(0, 1), q(1, 1));
    (lhs, rhs)
}

/// `(lhs, I_a, I_b)` of the midpoint identity.
fn midpoint_identity_exact(f: &Poly, a: Q, b: Q) -> (Q, Q, Q) {
    let w = b - a;
    let d1 = f.derivative();
    let lhs = f.eval((a + b) / q(2, 1)) - f.integral(a, b) / w + w / q(24, 1) * (d1.eval(b) - d1.eval(a));
    // λ(1 - 2λ)(1 + 2λ) = λ - 4λ^3
    let k = Poly(vec![q(0, 1), q(1, 1), q(0, 1), q(-4, 1)]);
    let d3 = f.nth_derivative(3);
    let ia = k.mul(&d3.compose_affine(b, a - b)).integral(q(0, 1), q(1, 2));
    let ib = k.mul(&d3.compose_affine(a, b - a)).integral(q(0, 1), q(1, 2));
    (lhs, ia, ib)
}

fn test_polys() -> Vec<Poly> {
    vec![
        Poly::from_ints(&[0, 0, 0, 0, 1]),
        Poly::from_ints(&[0, 0, 0, 0, 0, 1]),
        Poly::from_ints(&[3, -2, 0, 5, 1]),
        Poly::from_ints(&[1, 1, -1, 2, -3, 1]),
        Poly::from_ints(&[0, -4, 0, 1, 0, 0, 2]),
        Poly::from_ints(&[-1, 0, 2, 0, 0, 0, 0, 1]),
    ]
}

fn test_intervals() -> Vec<(Q, Q)> {
    vec![
        (q(0, 1), q(1, 1)),
        (q(-1, 2), q(3, 2)),
        (q(1, 1), q(2, 1)),
        (q(-1, 1), q(1, 3)),
    ]
}

fn iv(a: Q, b: Q) -> Interval<f64> {
    Interval::new(to_f64(a), to_f64(b)).unwrap()
}

fn close(x: f64, exact: Q, tol: f64) -> bool {
    (x - to_f64(exact)).abs() <= tol * to_f64(exact).abs().max(1.0)
}

#[test]
fn quadrature_reproduces_rational_integrals() {
    let high = Poly::from_ints(&[2, -1, 3, 0, -5, 1, 0, 4, -2, 1, 1]);
    for f in test_polys().iter().chain([&high]) {
        for (a, b) in test_intervals() {
            let i = iv(a, b);
            let g = f.to_smooth("p", i);
            let r = integrate(|x| g.eval(x), i, 1e-10).unwrap();
            assert!(r.converged);
            assert!(
                (r.value - to_f64(f.integral(a, b))).abs() <= 1e-12,
                "{f:?} on [{a}, {b}]: {} vs {}",
                r.value,
                f.integral(a, b)
            );
        }
    }
}

#[test]
fn trapezoid_identity_matches_rational_oracle() {
    let opts = QuadratureOptions::default();
    for f in test_polys() {
        for (a, b) in test_intervals() {
            let i = iv(a, b);
            let (lhs, rhs) = trapezoid_identity_exact(&f, a, b);
            assert_eq!(lhs, rhs, "exact identity fails for {f:?}");
            let r = lemma1_check(&f.to_smooth("p", i), i, &opts).unwrap();
            assert!(close(r.lhs, lhs, 1e-11), "{} vs {lhs}", r.lhs);
            assert!(close(r.rhs, rhs, 1e-11), "{} vs {rhs}", r.rhs);
        }
    }
}

#[test]
fn midpoint_identity_matches_rational_oracle() {
    let opts = QuadratureOptions::default();
    for f in test_polys() {
        for (a, b) in test_intervals() {
            let i = iv(a, b);
            let (lhs, ia, ib) = midpoint_identity_exact(&f, a, b);
            let w = b - a;
            assert_eq!(lhs, w * w * w / q(24, 1) * (ia - ib), "exact identity fails for {f:?}");
            let r = lemma2_check(&f.to_smooth("p", i), i, &opts).unwrap();
            assert!(close(r.lhs, lhs, 1e-11), "{} vs {lhs}", r.lhs);
            assert!(close(r.rhs, lhs, 1e-11), "{} vs {lhs}", r.rhs);
        }
    }
}

#[test]
fn quartic_reference_values() {
    let x4 = Poly::from_ints(&[0, 0, 0, 0, 1]);
    let (lhs, rhs) = trapezoid_identity_exact(&x4, q(0, 1), q(1, 1));
    assert_eq!((lhs, rhs), (q(1, 30), q(1, 30)));
    let (lhs, ia, ib) = midpoint_identity_exact(&x4, q(0, 1), q(1, 1));
    assert_eq!((lhs, ia, ib), (q(7, 240), q(11, 10), q(2, 5)));

    let unit: Interval<f64> = Interval::new(0.0, 1.0).unwrap();
    let f = monomial(4, unit);
    let opts = QuadratureOptions::default();
    let r = lemma1_check(&f, unit, &opts).unwrap();
    assert!((r.lhs - 1.0 / 30.0).abs() <= 1e-14 && r.residual.unwrap() <= 1e-10);
    let r = lemma2_check(&f, unit, &opts).unwrap();
    assert!((r.lhs - 7.0 / 240.0).abs() <= 1e-14 && r.residual.unwrap() <= 1e-10);

    // The two half-kernel integrals separately.
    let kern = |l: f64| l * (1.0 - 2.0 * l) * (1.0 + 2.0 * l);
    let half = Interval::new(0.0, 0.5).unwrap();
    let ia = integrate_with(|l| kern(l) * f.deriv(3, 1.0 - l), half, &opts).unwrap();
    let ib = integrate_with(|l| kern(l) * f.deriv(3, l), half, &opts).unwrap();
    assert!((ia.value - 1.1).abs() <= 1e-14);
    assert!((ib.value - 0.4).abs() <= 1e-14);
}

#[test]
fn kernel_constants() {
    // ∫_0^1 (λ(1-λ))^{2n} dλ for integer n, expanded exactly.
    let s = Poly(vec![q(0, 1), q(1, 1), q(-1, 1)]);
    let mut power = Poly::from_ints(&[1]);
    for n in 1..=5 {
        power = power.mul(&s).mul(&s);
        let exact = to_f64(power.integral(q(0, 1), q(1, 1)));
        let b = beta(2.0 * n as f64 + 1.0, 2.0 * n as f64 + 1.0).unwrap();
        assert!(
            (b - exact).abs() <= 1e-15 * exact.max(1e-300) * 100.0,
            "n = {n}: {b} vs {exact}"
        );
        if n == 1 {
            assert_eq!(power.integral(q(0, 1), q(1, 1)), q(1, 30));
        }
        if n == 2 {
            assert_eq!(power.integral(q(0, 1), q(1, 1)), q(1, 630));
        }
    }
}

#[test]
fn deviations_match_rational_oracle() {
    let opts = QuadratureOptions::default();
    for f in test_polys() {
        for (a, b) in test_intervals() {
            let i = iv(a, b);
            let g = f.to_smooth("p", i);
            let w = b - a;
            let d1 = f.derivative();
            let avg = f.integral(a, b) / w;
            let trap = (f.eval(a) + f.eval(b)) / q(2, 1) - avg;
            let trap_c = trap - w / q(12, 1) * (d1.eval(b) - d1.eval(a));
            let mid_c = f.eval((a + b) / q(2, 1)) - avg + w / q(24, 1) * (d1.eval(b) - d1.eval(a));
            assert!(close(lhs_trapezoid(&g, i, &opts).unwrap(), abs(trap), 1e-12));
            assert!(close(
                lhs_trapezoid_corrected(&g, i, &opts).unwrap(),
                abs(trap_c),
                1e-12
            ));
            assert!(close(lhs_midpoint_corrected(&g, i, &opts).unwrap(), abs(mid_c), 1e-12));
        }
    }
}

fn abs(x: Q) -> Q {
    if x < q(0, 1) {
        -x
    } else {
        x
    }
}

#[test]
fn quintic_on_unit_interval() {
    let unit: Interval<f64> = Interval::new(0.0, 1.0).unwrap();
    let r = check_bound(TheoremId::ME1, &monomial(5, unit), unit, None, &BoundOptions::default()).unwrap();
    assert!((r.lhs - 1.0 / 12.0).abs() <= 1e-15);
    assert!((r.rhs - 1.0 / 6.0).abs() <= 1e-15);
    assert!(r.pass);
}

/// At α = 1 the family member is x⁵/120, a polynomial, so both sides of the
/// cleared application inequalities are rational.
#[test]
fn applications_at_alpha_one_are_rational() {
    let (a, b) = (q(1, 1), q(2, 1));
    let w = b - a;
    let x5 = Poly::from_ints(&[0, 0, 0, 0, 0, 1]);
    let pi = q(120, 1);
    let f = Poly(x5.0.iter().map(|&c| c / pi).collect());
    let d1 = f.derivative();
    let avg = f.integral(a, b) / w;

    let trap_c = abs((f.eval(a) + f.eval(b)) / q(2, 1) - avg - w / q(12, 1) * (d1.eval(b) - d1.eval(a)));
    let me1_rhs = w.pow(4) / q(720, 1) * b;
    assert_eq!(q(12, 1) * pi * trap_c, q(3, 1));
    assert_eq!(q(12, 1) * pi * me1_rhs, q(4, 1));

    let mid_c = abs(f.eval((a + b) / q(2, 1)) - avg + w / q(24, 1) * (d1.eval(b) - d1.eval(a)));
    let me4_rhs = w.pow(3) / q(192, 1) * (b * b / q(2, 1));

    let d = application_check(ApplicationId::A3_1, Variant::Derived, 1.0f64, 2.0, 1.0, None, 1e-9).unwrap();
    assert!((d.lhs - 3.0).abs() <= 1e-12 && (d.rhs - 4.0).abs() <= 1e-12 && d.pass);
    let d = application_check(ApplicationId::A3_4, Variant::Derived, 1.0f64, 2.0, 1.0, None, 1e-9).unwrap();
    assert!(
        close(d.lhs, q(24, 1) * pi * mid_c, 1e-12),
        "{} vs {}",
        d.lhs,
        q(24, 1) * pi * mid_c
    );
    assert!(close(d.rhs, q(24, 1) * pi * me4_rhs, 1e-12));

    // Printed coefficients: 12·A(1, 32) - 12·L_5 - 1·4·5·5·L_3 with
    // A(1, 32) = 33/2, L_5 = 63/6, L_3 = 15/4.
    let printed = q(12, 1) * q(33, 2) - q(12, 1) * q(63, 6) - q(100, 1) * q(15, 4);
    assert_eq!(abs(printed), q(303, 1));
    let p = application_check(ApplicationId::A3_1, Variant::Paper, 1.0f64, 2.0, 1.0, None, 1e-9).unwrap();
    assert!((p.lhs - 303.0).abs() <= 1e-10);
    assert!((p.rhs - 2.0 * 120.0 / 60.0).abs() <= 1e-12);
    assert!(!p.pass);
}

#[test]
fn f_alpha_at_one_is_the_scaled_quintic() {
    let i = Interval::new(0.0, 2.0).unwrap();
    let f = make_f_alpha_on(MonomialFamilyParam::new(1.0).unwrap(), i).unwrap();
    let x5 = Poly::from_ints(&[0, 0, 0, 0, 0, 1]);
    for k in 0..=4 {
        let dk = x5.nth_derivative(k);
        for x in [q(0, 1), q(1, 3), q(3, 2), q(2, 1)] {
            assert!(close(f.deriv(k, to_f64(x)), dk.eval(x) / q(120, 1), 1e-14));
        }
    }
}
