//! Run configuration: TOML file, command-line overrides and validation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hhv_core::{ApplicationId, IdentityId, Interval, TheoremId, Variant};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A configuration problem, reported with the offending field.
#[derive(Debug, Error, PartialEq)]
#[error("invalid `{field}`: {detail}")]
pub struct UsageError {
    pub field: String,
    pub detail: String,
}

impl UsageError {
    pub fn new(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(UsageError::new("format", format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Markdown => "markdown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute quadrature tolerance.
    pub quadrature: f64,
    /// Identity residual acceptance threshold.
    pub residual: f64,
    /// Allowed `lhs - rhs` overshoot for bounds and applications.
    pub margin: f64,
    /// Quasi-convexity violation threshold.
    pub hypothesis: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quadrature: 1e-10,
            residual: hhv_core::identities::DEFAULT_RESIDUAL_TOL,
            margin: hhv_core::bounds::DEFAULT_MARGIN_TOL,
            hypothesis: hhv_core::quasiconvex::DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grids {
    /// Nodes per axis of the quasi-convexity scan.
    pub hypothesis: usize,
    /// Nodes whose pairs form each member's default interval grid.
    pub interval_points: usize,
    pub seed_points: usize,
    pub fallback_points: usize,
    pub max_evals: usize,
}

impl Default for Grids {
    fn default() -> Self {
        Self {
            hypothesis: hhv_core::quasiconvex::DEFAULT_GRID,
            interval_points: 5,
            seed_points: 33,
            fallback_points: 200,
            max_evals: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Domains {
    pub polynomial: [f64; 2],
    pub exp: [f64; 2],
    pub sin: Vec<[f64; 2]>,
    pub f_alpha: [f64; 2],
}

impl Default for Domains {
    fn default() -> Self {
        Self {
            polynomial: [-1.0, 2.0],
            exp: [-1.0, 2.0],
            sin: vec![[0.0, std::f64::consts::PI]],
            f_alpha: [0.25, 4.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Corpus members by name (`x^3`, `x^4`, `x^5`, `exp`, `sin`,
    /// `f_alpha` or `f_alpha(<alpha>)`); empty selects all.
    pub corpus: Vec<String>,
    /// Explicit intervals `[a, b]` applied to every member whose domain
    /// contains them. Empty means each member's own pair grid.
    pub intervals: Vec<[f64; 2]>,
    /// Identity, theorem and application tags to run.
    pub theorems: Vec<String>,
    pub variants: Vec<String>,
    pub application_intervals: Vec<[f64; 2]>,
    pub p_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub p_range: [f64; 2],
    pub alpha_range: [f64; 2],
    pub tolerances: Tolerances,
    pub grids: Grids,
    pub domains: Domains,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            corpus: Vec::new(),
            intervals: Vec::new(),
            theorems: all_tags(),
            variants: vec!["paper".into(), "derived".into()],
            application_intervals: vec![[1.0, 2.0], [0.5, 1.5], [2.0, 4.0]],
            p_grid: vec![2.0],
            q_grid: vec![1.0, 2.0],
            alpha_grid: vec![0.25, 0.5, 0.75, 1.0],
            p_range: [1.01, 50.0],
            alpha_range: [0.01, 1.0],
            tolerances: Tolerances::default(),
            grids: Grids::default(),
            domains: Domains::default(),
            format: Format::Json,
            out: None,
        }
    }
}

fn all_tags() -> Vec<String> {
    IdentityId::ALL
        .iter()
        .map(|t| t.tag())
        .chain(TheoremId::ALL.iter().map(|t| t.tag()))
        .chain(ApplicationId::ALL.iter().map(|t| t.tag()))
        .map(String::from)
        .collect()
}

/// Tags split by kind, in canonical order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Selection {
    pub identities: Vec<IdentityId>,
    pub theorems: Vec<TheoremId>,
    pub applications: Vec<ApplicationId>,
    pub variants: Vec<Variant>,
}

/// Which record kinds a command produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Kinds {
    pub identities: bool,
    pub bounds: bool,
    pub applications: bool,
    pub searches: bool,
}

impl Kinds {
    pub const SCAN: Kinds = Kinds {
        identities: true,
        bounds: true,
        applications: true,
        searches: false,
    };
    pub const IDENTITIES: Kinds = Kinds {
        identities: true,
        bounds: false,
        applications: false,
        searches: false,
    };
    pub const BOUNDS: Kinds = Kinds {
        identities: false,
        bounds: true,
        applications: false,
        searches: false,
    };
    pub const APPLICATIONS: Kinds = Kinds {
        identities: false,
        bounds: false,
        applications: true,
        searches: false,
    };
    pub const SEARCHES: Kinds = Kinds {
        identities: false,
        bounds: false,
        applications: false,
        searches: true,
    };
}

/// Overrides taken from the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub theorems: Option<Vec<String>>,
    pub alpha_grid: Option<Vec<f64>>,
    pub intervals: Vec<[f64; 2]>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, UsageError> {
        toml::from_str(text).map_err(|e| UsageError::new("config", e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, anyhow::Error> {
        let text =
            std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", path.display()))?;
        Ok(Self::from_toml(&text)?)
    }

    pub fn apply(&mut self, o: Overrides) {
        if let Some(f) = o.format {
            self.format = f;
        }
        if o.out.is_some() {
            self.out = o.out;
        }
        if let Some(t) = o.tol {
            self.tolerances.quadrature = t;
        }
        if let Some(t) = o.theorems {
            self.theorems = t;
        }
        if let Some(g) = o.alpha_grid {
            self.alpha_grid = g;
        }
        if !o.intervals.is_empty() {
            self.application_intervals = o.intervals.clone();
            self.intervals = o.intervals;
        }
    }

    /// Checks every field and resolves the tag lists for a command
    /// producing `kinds`.
    pub fn validate(&self, kinds: Kinds) -> Result<Selection, UsageError> {
        let t = &self.tolerances;
        for (name, v) in [
            ("tolerances.quadrature", t.quadrature),
            ("tolerances.residual", t.residual),
            ("tolerances.margin", t.margin),
            ("tolerances.hypothesis", t.hypothesis),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(UsageError::new(name, format!("must be a positive number, got {v}")));
            }
        }
        let g = &self.grids;
        if g.hypothesis < 3 {
            return Err(UsageError::new("grids.hypothesis", "must be at least 3"));
        }
        if g.interval_points < 2 {
            return Err(UsageError::new("grids.interval_points", "must be at least 2"));
        }
        if g.seed_points < 3 || g.fallback_points < 3 {
            return Err(UsageError::new(
                "grids.seed_points",
                "search grids need at least 3 points",
            ));
        }
        if g.max_evals < 15 {
            return Err(UsageError::new("grids.max_evals", "must allow at least one panel (15)"));
        }

        let sel = self.selection(kinds)?;

        for iv in &self.intervals {
            check_interval("intervals", *iv)?;
        }
        let family_searches = kinds.searches && sel.theorems.iter().any(|t| t.tag().starts_with("ME"));
        if !sel.applications.is_empty() || family_searches {
            non_empty("application_intervals", &self.application_intervals)?;
            for iv in &self.application_intervals {
                check_interval("application_intervals", *iv)?;
                if iv[0] <= 0.0 {
                    return Err(UsageError::new(
                        "application_intervals",
                        format!("[{}, {}] must be positive", iv[0], iv[1]),
                    ));
                }
            }
        }
        check_interval("domains.polynomial", self.domains.polynomial)?;
        check_interval("domains.exp", self.domains.exp)?;
        for iv in &self.domains.sin {
            check_interval("domains.sin", *iv)?;
        }
        check_interval("domains.f_alpha", self.domains.f_alpha)?;
        if self.domains.f_alpha[0] <= 0.0 {
            return Err(UsageError::new("domains.f_alpha", "must be positive"));
        }

        non_empty("p_grid", &self.p_grid)?;
        if let Some(p) = self.p_grid.iter().find(|p| !(p.is_finite() && **p > 1.0)) {
            return Err(UsageError::new(
                "p_grid",
                format!("exponents must satisfy p > 1, got {p}"),
            ));
        }
        non_empty("q_grid", &self.q_grid)?;
        if let Some(q) = self.q_grid.iter().find(|q| !(q.is_finite() && **q >= 1.0)) {
            return Err(UsageError::new(
                "q_grid",
                format!("exponents must satisfy q >= 1, got {q}"),
            ));
        }
        non_empty("alpha_grid", &self.alpha_grid)?;
        if let Some(a) = self.alpha_grid.iter().find(|a| !(**a > 0.0 && **a <= 1.0)) {
            return Err(UsageError::new(
                "alpha_grid",
                format!("alpha must lie in (0, 1], got {a}"),
            ));
        }
        let [lo, hi] = self.p_range;
        if !(lo > 1.0 && hi > lo && hi.is_finite()) {
            return Err(UsageError::new(
                "p_range",
                format!("need 1 < lo < hi, got [{lo}, {hi}]"),
            ));
        }
        let [lo, hi] = self.alpha_range;
        if !(lo > 0.0 && hi > lo && hi <= 1.0) {
            return Err(UsageError::new(
                "alpha_range",
                format!("need 0 < lo < hi <= 1, got [{lo}, {hi}]"),
            ));
        }
        if !sel.applications.is_empty() && sel.variants.is_empty() {
            return Err(UsageError::new("variants", "must not be empty"));
        }
        Ok(sel)
    }

    fn selection(&self, kinds: Kinds) -> Result<Selection, UsageError> {
        if self.theorems.is_empty() {
            return Err(UsageError::new(
                "theorems",
                "must name at least one identity, theorem or application",
            ));
        }
        let mut sel = Selection::default();
        for tag in &self.theorems {
            let tag = tag.trim();
            if let Some(id) = IdentityId::parse(tag) {
                sel.identities.push(id);
            } else if let Some(t) = TheoremId::parse(tag) {
                sel.theorems.push(t);
            } else if let Some(a) = ApplicationId::parse(tag) {
                sel.applications.push(a);
            } else {
                return Err(UsageError::new("theorems", format!("unknown tag {tag:?}")));
            }
        }
        for v in &self.variants {
            sel.variants.push(
                Variant::parse(v.trim())
                    .ok_or_else(|| UsageError::new("variants", format!("unknown variant {v:?}")))?,
            );
        }
        if !kinds.identities {
            sel.identities.clear();
        }
        if !(kinds.bounds || kinds.searches) {
            sel.theorems.clear();
        }
        if !kinds.applications {
            sel.applications.clear();
        }
        if sel.identities.is_empty() && sel.theorems.is_empty() && sel.applications.is_empty() {
            return Err(UsageError::new("theorems", "no listed tag applies to this command"));
        }
        sel.identities.sort();
        sel.identities.dedup();
        sel.theorems.sort();
        sel.theorems.dedup();
        sel.applications.sort();
        sel.applications.dedup();
        sel.variants.sort();
        sel.variants.dedup();
        Ok(sel)
    }
}

fn check_interval(field: &str, iv: [f64; 2]) -> Result<Interval<f64>, UsageError> {
    Interval::new(iv[0], iv[1]).map_err(|e| UsageError::new(field, e.to_string()))
}

fn non_empty<V>(field: &str, v: &[V]) -> Result<(), UsageError> {
    if v.is_empty() {
        Err(UsageError::new(field, "must not be empty"))
    } else {
        Ok(())
    }
}

/// Parses `a:b`.
pub fn parse_interval(s: &str) -> Result<[f64; 2], UsageError> {
    let bad = || UsageError::new("interval", format!("expected a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let iv = [
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ];
    check_interval("interval", iv)?;
    Ok(iv)
}

/// Parses `start:stop:n` into `n` equally spaced values, endpoints included.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, UsageError> {
    let bad = || UsageError::new("alpha-grid", format!("expected start:stop:n, got {s:?}"));
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let [start, stop, n] = parts[..] else {
        return Err(bad());
    };
    let start: f64 = start.parse().map_err(|_| bad())?;
    let stop: f64 = stop.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![start]);
    }
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                stop
            } else {
                start + (stop - start) * i as f64 / (n - 1) as f64
            }
        })
        .collect())
}

/// Parses a comma-separated tag list.
pub fn parse_tags(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}
