//! Executes a validated configuration and assembles the report.
//!
//! Work items are enumerated in a fixed order (tag, corpus member,
//! interval, parameters) and evaluated in parallel with order-preserving
//! collection, so the report does not depend on the thread count.

use std::collections::{HashMap, HashSet};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use hhv_core::bounds::{check_bound_with, hypothesis_certificate, rhs_bound, ExponentKind};
use hhv_core::identities::check_identity;
use hhv_core::search::{best_exponent, worst_case_alpha};
use hhv_core::{
    application_check, builtin_corpus, BoundOptions, Certificate64, CorpusConfig, HhError, Interval, Interval64,
    QuadratureOptions, SearchOptions, SmoothFunction64, TheoremId, Verdict,
};
use rayon::prelude::*;

use crate::config::{Kinds, RunConfig, Selection, UsageError};
use crate::records::*;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "HHV_THREADS";

/// Builds the worker pool, honouring [`THREADS_ENV`].
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| UsageError::new(THREADS_ENV, format!("expected a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().context("cannot start worker pool")
}

/// Validates `cfg` for `kinds` and runs it on a pool sized by [`THREADS_ENV`].
pub fn run(cfg: &RunConfig, kinds: Kinds, command: &str) -> Result<RunReport> {
    let sel = cfg.validate(kinds)?;
    let pool = thread_pool()?;
    pool.install(|| Runner::new(cfg, sel, kinds)?.execute(command))
}

struct Instance {
    member: usize,
    interval: usize,
    range: Interval64,
}

struct Runner<'a> {
    cfg: &'a RunConfig,
    sel: Selection,
    kinds: Kinds,
    corpus: Vec<SmoothFunction64>,
    instances: Vec<Instance>,
    quadrature: QuadratureOptions<f64>,
}

fn iv(pair: [f64; 2]) -> Interval64 {
    Interval::new(pair[0], pair[1]).expect("validated interval")
}

fn selects(selector: &str, name: &str) -> bool {
    name == selector || name.strip_prefix(selector).is_some_and(|rest| rest.starts_with('('))
}

impl<'a> Runner<'a> {
    fn new(cfg: &'a RunConfig, sel: Selection, kinds: Kinds) -> Result<Self> {
        let d = &cfg.domains;
        let corpus_cfg = CorpusConfig {
            polynomial_domain: iv(d.polynomial),
            exp_domain: iv(d.exp),
            sin_domains: d.sin.iter().map(|&p| iv(p)).collect(),
            alpha_grid: cfg.alpha_grid.clone(),
            f_alpha_domain: iv(d.f_alpha),
        };
        let mut corpus = builtin_corpus(&corpus_cfg)?;
        if !cfg.corpus.is_empty() {
            if let Some(s) = cfg.corpus.iter().find(|s| !corpus.iter().any(|f| selects(s, f.name()))) {
                return Err(UsageError::new("corpus", format!("no corpus member matches {s:?}")).into());
            }
            corpus.retain(|f| cfg.corpus.iter().any(|s| selects(s, f.name())));
        }

        let mut instances = Vec::new();
        for (member, f) in corpus.iter().enumerate() {
            let ranges: Vec<Interval64> = if cfg.intervals.is_empty() {
                f.domain().pair_grid(cfg.grids.interval_points)
            } else {
                cfg.intervals
                    .iter()
                    .map(|&p| iv(p))
                    .filter(|i| f.domain().contains_interval(i))
                    .collect()
            };
            instances.extend(ranges.into_iter().enumerate().map(|(interval, range)| Instance {
                member,
                interval,
                range,
            }));
        }
        let needs_instances = (kinds.identities && !sel.identities.is_empty())
            || (kinds.bounds && !sel.theorems.is_empty())
            || (kinds.searches && sel.theorems.iter().any(|t| t.exponent_kind() == ExponentKind::P));
        if needs_instances && instances.is_empty() {
            return Err(UsageError::new(
                "intervals",
                "no interval lies inside the domain of a selected corpus member",
            )
            .into());
        }

        Ok(Self {
            cfg,
            sel,
            kinds,
            corpus,
            instances,
            quadrature: QuadratureOptions {
                abs_tol: cfg.tolerances.quadrature,
                max_evals: cfg.grids.max_evals,
            },
        })
    }

    fn execute(&self, command: &str) -> Result<RunReport> {
        let identities = if self.kinds.identities {
            self.identities()?
        } else {
            Vec::new()
        };
        let bounds = if self.kinds.bounds { self.bounds()? } else { Vec::new() };
        let applications = if self.kinds.applications {
            self.applications()?
        } else {
            Vec::new()
        };
        let searches = if self.kinds.searches {
            self.searches()?
        } else {
            Vec::new()
        };
        let mut report = RunReport {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            config: self.cfg.clone(),
            identities,
            bounds,
            applications,
            searches,
            summary: Summary::default(),
        };
        report.summary = report.tally();
        Ok(report)
    }

    fn exponents(&self, t: TheoremId) -> Vec<Option<f64>> {
        match t.exponent_kind() {
            ExponentKind::None => vec![None],
            ExponentKind::P => self.cfg.p_grid.iter().copied().map(Some).collect(),
            ExponentKind::Q => self.cfg.q_grid.iter().copied().map(Some).collect(),
        }
    }

    fn bound_options(&self) -> BoundOptions<f64> {
        BoundOptions {
            quadrature: self.quadrature,
            hypothesis_grid: self.cfg.grids.hypothesis,
            hypothesis_tol: self.cfg.tolerances.hypothesis,
            margin_tol: self.cfg.tolerances.margin,
        }
    }

    fn identities(&self) -> Result<Vec<IdentityRecord>> {
        let tasks: Vec<_> = self
            .sel
            .identities
            .iter()
            .flat_map(|&id| self.instances.iter().map(move |inst| (id, inst)))
            .collect();
        tasks
            .par_iter()
            .map(|&(id, inst)| {
                let f = &self.corpus[inst.member];
                let r = check_identity(id, f, inst.range, &self.quadrature)?;
                let status = match r.residual {
                    None => Status::NonConverged,
                    Some(res) if res <= self.cfg.tolerances.residual => Status::Pass,
                    Some(_) => Status::Fail,
                };
                Ok(IdentityRecord {
                    identity: id.tag().into(),
                    function: f.name().into(),
                    a: Num(inst.range.a()),
                    b: Num(inst.range.b()),
                    lhs: Num(r.lhs),
                    rhs: Num(r.rhs),
                    residual: r.residual.map(Num),
                    quadrature_error: Num(r.quadrature_error),
                    evaluations: r.evaluations,
                    status,
                })
            })
            .collect()
    }

    fn bounds(&self) -> Result<Vec<BoundRecord>> {
        let opts = self.bound_options();
        let mut tasks = Vec::new();
        for &t in &self.sel.theorems {
            for inst in &self.instances {
                for e in self.exponents(t) {
                    tasks.push((t, inst, e));
                }
            }
        }

        // Certificates depend only on (member, interval, order, power).
        type Key = (usize, usize, usize, u64);
        let key = |t: TheoremId, inst: &Instance, e: Option<f64>| -> Result<Key> {
            let power = t.hypothesis_exponent(e)?;
            Ok((inst.member, inst.interval, t.derivative_order(), power.to_bits()))
        };
        let mut seen = HashSet::new();
        let mut unique = Vec::new();
        for &(t, inst, e) in &tasks {
            let k = key(t, inst, e)?;
            if seen.insert(k) {
                unique.push((k, t, inst, e));
            }
        }
        let certificates: HashMap<Key, Certificate64> = unique
            .par_iter()
            .map(|&(k, t, inst, e)| {
                let c = hypothesis_certificate(t, &self.corpus[inst.member], inst.range, e, &opts)?;
                Ok((k, c))
            })
            .collect::<Result<_>>()?;

        tasks
            .par_iter()
            .map(|&(t, inst, e)| {
                let f = &self.corpus[inst.member];
                let cert = certificates[&key(t, inst, e)?];
                let hypothesis = HypothesisRecord {
                    verdict: match cert.verdict {
                        Verdict::Certified => "certified".into(),
                        Verdict::Refuted => "refuted".into(),
                    },
                    derivative_order: t.derivative_order(),
                    power: Num(t.hypothesis_exponent(e)?),
                    grid_size: cert.grid_size,
                    tol: Num(cert.tol),
                    max_violation: Num(cert.max_violation),
                    counterexample: cert.counterexample.map(|c| WitnessRecord {
                        x: Num(c.x),
                        y: Num(c.y),
                        lambda: Num(c.lambda),
                        mixed_value: Num(c.mixed_value),
                        endpoint_max: Num(c.endpoint_max),
                    }),
                };
                let base = BoundRecord {
                    theorem: t.tag().into(),
                    function: f.name().into(),
                    a: Num(inst.range.a()),
                    b: Num(inst.range.b()),
                    exponent: e.map(Num),
                    lhs: None,
                    rhs: Num(rhs_bound(t, f, inst.range, e)?),
                    margin: None,
                    ratio: None,
                    hypothesis,
                    status: Status::NonConverged,
                };
                match check_bound_with(t, f, inst.range, e, cert, &opts) {
                    Ok(r) => {
                        let status = if !cert.is_certified() {
                            Status::RefutedHypothesis
                        } else if r.pass {
                            Status::Pass
                        } else {
                            Status::Fail
                        };
                        Ok(BoundRecord {
                            lhs: Some(Num(r.lhs)),
                            rhs: Num(r.rhs),
                            margin: Some(Num(r.margin)),
                            ratio: Num::finite(r.ratio),
                            status,
                            ..base
                        })
                    }
                    Err(HhError::NotConverged { .. }) => Ok(base),
                    Err(e) => Err(e.into()),
                }
            })
            .collect()
    }

    fn applications(&self) -> Result<Vec<ApplicationRecord>> {
        let mut tasks = Vec::new();
        for &app in &self.sel.applications {
            for &variant in &self.sel.variants {
                for &pair in &self.cfg.application_intervals {
                    for &alpha in &self.cfg.alpha_grid {
                        for e in self.exponents(app.parent()) {
                            tasks.push((app, variant, pair, alpha, e));
                        }
                    }
                }
            }
        }
        tasks
            .par_iter()
            .map(|&(app, variant, [a, b], alpha, e)| {
                let v = application_check(app, variant, a, b, alpha, e, self.cfg.tolerances.margin)?;
                Ok(ApplicationRecord {
                    theorem: app.tag().into(),
                    variant: variant.tag().into(),
                    a: Num(a),
                    b: Num(b),
                    alpha: Num(alpha),
                    exponent: e.map(Num),
                    lhs: Num(v.lhs),
                    rhs: Num(v.rhs),
                    note: v.note,
                    status: if v.pass { Status::Pass } else { Status::Fail },
                })
            })
            .collect()
    }

    fn searches(&self) -> Result<Vec<SearchRecord>> {
        enum Task<'i> {
            Exponent(TheoremId, &'i Instance),
            Alpha(TheoremId, [f64; 2], Option<f64>),
        }
        let mut tasks = Vec::new();
        for &t in &self.sel.theorems {
            if t.exponent_kind() == ExponentKind::P {
                tasks.extend(self.instances.iter().map(|inst| Task::Exponent(t, inst)));
            }
            if t.tag().starts_with("ME") {
                for &pair in &self.cfg.application_intervals {
                    tasks.extend(self.exponents(t).into_iter().map(|e| Task::Alpha(t, pair, e)));
                }
            }
        }
        let opts = SearchOptions {
            seed_points: self.cfg.grids.seed_points,
            fallback_points: self.cfg.grids.fallback_points,
            quadrature: self.quadrature,
            zero_tol: self.cfg.tolerances.margin,
            ..SearchOptions::default()
        };
        let [plo, phi] = self.cfg.p_range;
        let [alo, ahi] = self.cfg.alpha_range;

        tasks
            .par_iter()
            .map(|task| {
                let (kind, t, function, range, exponent, bracket, result) = match *task {
                    Task::Exponent(t, inst) => {
                        let f = &self.corpus[inst.member];
                        let r = best_exponent(t, f, inst.range, (plo, phi), &opts);
                        (
                            "best_exponent",
                            t,
                            f.name().to_string(),
                            inst.range,
                            None,
                            [plo, phi],
                            r,
                        )
                    }
                    Task::Alpha(t, pair, e) => {
                        let range = iv(pair);
                        let r = worst_case_alpha(t, range, (alo, ahi), e, &opts);
                        ("worst_case_alpha", t, "f_alpha".to_string(), range, e, [alo, ahi], r)
                    }
                };
                let mut rec = SearchRecord {
                    kind: kind.into(),
                    theorem: t.tag().into(),
                    function,
                    a: Num(range.a()),
                    b: Num(range.b()),
                    exponent: exponent.map(Num),
                    range: [Num(bracket[0]), Num(bracket[1])],
                    params: Vec::new(),
                    objective: None,
                    iterations: 0,
                    converged: false,
                    fallback: false,
                    status: Status::NonConverged,
                };
                match result {
                    Ok(r) => {
                        rec.status = if !r.objective.is_finite() {
                            Status::Fail
                        } else if r.converged {
                            Status::Pass
                        } else {
                            Status::NonConverged
                        };
                        rec.params = r.params.into_iter().map(Num).collect();
                        rec.objective = Num::finite(r.objective);
                        rec.iterations = r.iterations;
                        rec.converged = r.converged;
                        rec.fallback = r.fallback;
                        Ok(rec)
                    }
                    Err(HhError::NotConverged { .. }) => Ok(rec),
                    Err(e) => Err(e.into()),
                }
            })
            .collect()
    }
}
