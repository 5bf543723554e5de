//! Acceptance criteria, one PASS/FAIL line each.

use std::path::Path;
use std::process::Command;

use hhv::config::Kinds;
use hhv::{RunConfig, Status};
use hhv_core::bounds::{certify_derivative_power, ExponentKind};
use hhv_core::corpus::{make_f_alpha_on, monomial, sine};
use hhv_core::numerics::integrate_with;
use hhv_core::quasiconvex::reverify;
use hhv_core::{
    application_check, beta, builtin_corpus, check_bound, check_quasi_convex, lemma1_check, lemma2_check, rhs_bound,
    ApplicationId, BoundOptions, CorpusConfig, Interval, Interval64, MonomialFamilyParam, QuadratureOptions,
    SmoothFunction64, TheoremId, Variant,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn unit() -> Interval64 {
    Interval::new(0.0, 1.0).unwrap()
}

fn corpus() -> Vec<SmoothFunction64> {
    builtin_corpus(&CorpusConfig::default()).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

fn corpus_residuals(
    check: fn(&SmoothFunction64, Interval64, &QuadratureOptions<f64>) -> hhv_core::Result<hhv_core::IdentityReport64>,
) -> Result<(usize, f64), String> {
    let opts = QuadratureOptions::default();
    let (mut n, mut worst) = (0, 0.0f64);
    for f in corpus() {
        for i in f.domain().pair_grid(5) {
            let r = check(&f, i, &opts).map_err(|e| e.to_string())?;
            let res = r
                .residual
                .ok_or_else(|| format!("{} on [{}, {}] did not converge", f.name(), i.a(), i.b()))?;
            worst = worst.max(res);
            n += 1;
        }
    }
    ensure(n >= 30, format!("only {n} instances"))?;
    ensure(worst <= 1e-8, format!("worst residual {worst:e}"))?;
    Ok((n, worst))
}

fn identity_l1() -> Outcome {
    let f = monomial(4, unit());
    let r = lemma1_check(&f, unit(), &QuadratureOptions::default()).map_err(|e| e.to_string())?;
    let res = r.residual.ok_or("x^4 did not converge")?;
    ensure(
        (r.lhs - 1.0 / 30.0).abs() <= 1e-10 && (r.rhs - 1.0 / 30.0).abs() <= 1e-10,
        format!("sides {} {}", r.lhs, r.rhs),
    )?;
    ensure(res <= 1e-10, format!("x^4 residual {res:e}"))?;
    let (n, worst) = corpus_residuals(lemma1_check)?;
    Ok(format!(
        "x^4 sides 1/30, residual {res:.1e}; {n} instances, worst {worst:.1e}"
    ))
}

fn identity_l2() -> Outcome {
    let f = monomial(4, unit());
    let opts = QuadratureOptions::default();
    let r = lemma2_check(&f, unit(), &opts).map_err(|e| e.to_string())?;
    let res = r.residual.ok_or("x^4 did not converge")?;
    let target = 7.0 / 240.0;
    ensure(
        (r.lhs - target).abs() <= 1e-10 && (r.rhs - target).abs() <= 1e-10,
        format!("sides {} {}", r.lhs, r.rhs),
    )?;
    ensure(res <= 1e-10, format!("x^4 residual {res:e}"))?;
    let kern = |l: f64| l * (1.0 - 2.0 * l) * (1.0 + 2.0 * l);
    let half = Interval::new(0.0, 0.5).unwrap();
    let ia = integrate_with(|l| kern(l) * f.deriv(3, 1.0 - l), half, &opts)
        .map_err(|e| e.to_string())?
        .value;
    let ib = integrate_with(|l| kern(l) * f.deriv(3, l), half, &opts)
        .map_err(|e| e.to_string())?
        .value;
    ensure(
        (ia - 1.1).abs() <= 1e-10 && (ib - 0.4).abs() <= 1e-10,
        format!("I_a {ia}, I_b {ib}"),
    )?;
    let (n, worst) = corpus_residuals(lemma2_check)?;
    Ok(format!(
        "x^4 sides 7/240, I_a 11/10, I_b 2/5; {n} instances, worst {worst:.1e}"
    ))
}

fn constants() -> Outcome {
    let opts = QuadratureOptions::default();
    let kernel = |e: f64| {
        integrate_with(|l: f64| (l * (1.0 - l)).powf(e), unit(), &opts)
            .map(|r| r.value)
            .map_err(|e| e.to_string())
    };
    let k1 = kernel(2.0)?;
    ensure((k1 - 1.0 / 30.0).abs() <= 1e-10, format!("quadratic kernel {k1}"))?;
    let mut worst = 0.0f64;
    for p in [1.0, 1.5, 2.0, 3.0, 5.0] {
        let b = beta(2.0 * p + 1.0, 2.0 * p + 1.0).map_err(|e| e.to_string())?;
        let d = (b - kernel(2.0 * p)?).abs();
        ensure(d <= 1e-10, format!("p = {p}: |beta - integral| = {d:e}"))?;
        worst = worst.max(d);
    }
    Ok(format!("kernel 1/30; beta vs integral worst {worst:.1e}"))
}

fn dominance() -> Outcome {
    let mut cfg = RunConfig::default();
    cfg.theorems = TheoremId::ALL.iter().map(|t| t.tag().to_string()).collect();
    let report = hhv::run(&cfg, Kinds::BOUNDS, "verify-bound").map_err(|e| e.to_string())?;
    for f in corpus() {
        ensure(
            f.domain().pair_grid(cfg.grids.interval_points).len() >= 10,
            format!("{} has < 10 intervals", f.name()),
        )?;
    }
    let mut certified = 0;
    for b in &report.bounds {
        match b.status {
            Status::Pass => certified += 1,
            Status::RefutedHypothesis => {}
            s => {
                return Err(format!(
                    "{} {} on [{}, {}]: {}",
                    b.theorem,
                    b.function,
                    b.a,
                    b.b,
                    s.tag()
                ))
            }
        }
    }
    for t in TheoremId::ALL {
        ensure(
            report
                .bounds
                .iter()
                .any(|b| b.theorem == t.tag() && b.status == Status::Pass),
            format!("{t} never checked under a certified hypothesis"),
        )?;
    }
    Ok(format!(
        "{certified} certified instances all hold; {} skipped with refuted hypothesis",
        report.summary.refuted_hypothesis
    ))
}

fn sharpness() -> Outcome {
    let opts = BoundOptions::default();
    let x4 = monomial(4, unit());
    let mut worst = 0.0f64;
    for (t, e) in [
        (TheoremId::ME1, None),
        (TheoremId::ME3, Some(1.0)),
        (TheoremId::ME3, Some(2.0)),
        (TheoremId::ME3, Some(7.0)),
    ] {
        let r = check_bound(t, &x4, unit(), e, &opts).map_err(|e| e.to_string())?;
        ensure(
            (r.ratio - 1.0).abs() <= 1e-9 && r.pass,
            format!("{t} {e:?} ratio {}", r.ratio),
        )?;
        worst = worst.max((r.ratio - 1.0).abs());
    }
    let r = check_bound(TheoremId::ME1, &monomial(5, unit()), unit(), None, &opts).map_err(|e| e.to_string())?;
    let (dl, dr) = ((r.lhs - 1.0 / 12.0).abs(), (r.rhs - 1.0 / 6.0).abs());
    ensure(dl <= 1e-15 && dr <= 1e-15, format!("x^5 lhs {} rhs {}", r.lhs, r.rhs))?;
    Ok(format!(
        "x^4 ratio within {worst:.1e} of 1; x^5 lhs 1/12 (+{dl:.0e}), rhs 1/6 (+{dr:.0e})"
    ))
}

fn exponent_consistency() -> Outcome {
    let mut n = 0;
    for f in corpus() {
        for i in f.domain().pair_grid(5) {
            let at = |t, e| rhs_bound(t, &f, i, e).map_err(|e| e.to_string());
            ensure(
                at(TheoremId::ME3, Some(1.0))?.to_bits() == at(TheoremId::ME1, None)?.to_bits(),
                format!("ME3 {}", f.name()),
            )?;
            ensure(
                at(TheoremId::ME6, Some(1.0))?.to_bits() == at(TheoremId::ME4, None)?.to_bits(),
                format!("ME6 {}", f.name()),
            )?;
            n += 1;
        }
    }
    Ok(format!("bitwise equal on {n} instances"))
}

fn application_bridge() -> Outcome {
    let opts = BoundOptions::default();
    let mut points = 0;
    let mut worst = 0.0f64;
    for a in [0.5, 1.0, 2.0] {
        for d in [0.5, 1.0, 2.0] {
            for alpha in [0.25, 0.5, 1.0] {
                let b = a + d;
                let i = Interval::new(a, b).unwrap();
                let f = make_f_alpha_on(MonomialFamilyParam::new(alpha).unwrap(), i).unwrap();
                for app in ApplicationId::ALL {
                    let parent = app.parent();
                    let e = match parent.exponent_kind() {
                        ExponentKind::None => None,
                        _ => Some(2.0),
                    };
                    let c = app.clearing_constant(alpha).map_err(|e| e.to_string())?;
                    let v =
                        application_check(app, Variant::Derived, a, b, alpha, e, 1e-9).map_err(|e| e.to_string())?;
                    let r = check_bound(parent, &f, i, e, &opts).map_err(|e| e.to_string())?;
                    let dev = rel(v.lhs, c * r.lhs).max(rel(v.rhs, c * r.rhs));
                    ensure(
                        dev <= 1e-9,
                        format!("{app} at ({a}, {b}, {alpha}): relative gap {dev:e}"),
                    )?;
                    ensure(
                        v.pass == r.pass,
                        format!("{app} at ({a}, {b}, {alpha}): verdicts differ"),
                    )?;
                    worst = worst.max(dev);
                }
                points += 1;
            }
        }
    }
    ensure(points >= 27, format!("{points} grid points"))?;
    let v = application_check(ApplicationId::A3_1, Variant::Derived, 1.0f64, 2.0, 1.0, None, 1e-9)
        .map_err(|e| e.to_string())?;
    ensure(
        (v.lhs - 3.0).abs() <= 1e-12 && (v.rhs - 4.0).abs() <= 1e-12 && v.pass,
        format!("A3_1 derived {} vs {}", v.lhs, v.rhs),
    )?;
    Ok(format!(
        "{points} points, worst relative gap {worst:.1e}; A3_1 at (1, 2, 1): 3 <= 4"
    ))
}

fn discrepancy() -> Outcome {
    let v = application_check(ApplicationId::A3_1, Variant::Paper, 1.0f64, 2.0, 1.0, None, 1e-9)
        .map_err(|e| e.to_string())?;
    ensure(
        (v.lhs - 303.0).abs() <= 1e-10 && (v.rhs - 4.0).abs() <= 1e-12,
        format!("{} vs {}", v.lhs, v.rhs),
    )?;
    ensure(
        !v.pass && v.note == hhv_core::means::NOTE_PRINTED_REFUTED,
        "not reported as a fail with note",
    )?;

    let mut cfg = RunConfig::default();
    cfg.theorems = vec!["A3_1".into()];
    cfg.variants = vec!["paper".into()];
    cfg.application_intervals = vec![[1.0, 2.0]];
    cfg.alpha_grid = vec![1.0];
    let report = hhv::run(&cfg, Kinds::APPLICATIONS, "verify-application").map_err(|e| e.to_string())?;
    let rec = &report.applications[0];
    ensure(
        rec.status == Status::Fail && report.summary.exit_code() == 2,
        "runner masked the failure",
    )?;
    Ok(format!("printed form gives {} > {}: {}", v.lhs, v.rhs, rec.note))
}

fn certifier() -> Outcome {
    let tol = hhv_core::quasiconvex::DEFAULT_TOL;
    let grid = hhv_core::quasiconvex::DEFAULT_GRID;
    let mut n = 0;
    for alpha in [0.1, 0.25, 0.5, 0.75, 1.0] {
        for (a, b) in [(0.25, 4.0), (1.0, 2.0), (1e-3, 10.0)] {
            let c = check_quasi_convex(|x: f64| x.powf(alpha), Interval::new(a, b).unwrap(), grid, tol);
            ensure(c.is_certified(), format!("x^{alpha} on [{a}, {b}] refuted"))?;
            n += 1;
        }
    }
    let mut third = 0;
    for f in corpus().iter().filter(|f| f.name() != "sin") {
        for i in f.domain().pair_grid(5) {
            let c = certify_derivative_power(f, 3, 1.0, i, grid, tol);
            ensure(
                c.is_certified(),
                format!("|f'''| of {} on [{}, {}] refuted", f.name(), i.a(), i.b()),
            )?;
            third += 1;
        }
    }
    let pi = Interval::new(0.0, std::f64::consts::PI).unwrap();
    let s = sine(pi);
    let c = check_quasi_convex(|x| s.eval(x), pi, grid, tol);
    let w = c.counterexample.ok_or("sin on [0, pi] certified")?;
    ensure(reverify(|x| s.eval(x), &w, tol), "witness does not re-verify")?;
    Ok(format!(
        "x^alpha certified on {n} cases; |f'''| certified on {third} instances; sin refuted at x={:.3}, y={:.3}, lambda={:.3}",
        w.x, w.y, w.lambda
    ))
}

fn determinism_and_exit_codes() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hhv");
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let scan = |threads: &str| -> Result<(String, Option<i32>), String> {
        let o = Command::new(bin)
            .arg("scan")
            .env("HHV_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8(o.stdout).map_err(|e| e.to_string())?;
        let body = text
            .lines()
            .filter(|l| !l.contains("\"timestamp\""))
            .collect::<Vec<_>>()
            .join("\n");
        Ok((body, o.status.code()))
    };
    let (first, code) = scan("1")?;
    let (second, _) = scan("2")?;
    ensure(!first.is_empty() && first == second, "scan output differs between runs")?;
    ensure(code == Some(2), format!("default scan exited {code:?}"))?;

    for (cmd, fixture, want) in [
        ("verify-bound", "pass.toml", 0),
        ("verify-application", "fail.toml", 2),
        ("verify-bound", "refuted.toml", 2),
        ("scan", "nonconverged.toml", 3),
        ("verify-bound", "misconfig.toml", 1),
    ] {
        let o = Command::new(bin)
            .args([cmd, "--config"])
            .arg(fixtures.join(fixture))
            .env_remove("HHV_THREADS")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            o.status.code() == Some(want),
            format!("{fixture}: exit {:?}, want {want}", o.status.code()),
        )?;
    }
    Ok(format!(
        "two default scans identical ({} bytes); fixtures exit 0, 2, 2, 3, 1",
        first.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("identity L1 on x^4 and corpus", identity_l1),
        ("identity L2 on x^4 and corpus", identity_l2),
        ("kernel constants and beta", constants),
        ("bound dominance under certified hypotheses", dominance),
        ("sharpness witnesses", sharpness),
        ("q = 1 collapse", exponent_consistency),
        ("derived applications match parent bounds", application_bridge),
        ("printed A3_1 discrepancy surfaced", discrepancy),
        ("quasi-convexity certifier", certifier),
        ("determinism and exit codes", determinism_and_exit_codes),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
