//! End-to-end analysis of a colliding family: limit tower, multiplicities,
//! volume bounds, verdict and descriptor, plus the built-in example presets.

use serde::{Deserialize, Serialize};

use crate::descriptor::{descriptor_from_multiplicity, render};
use crate::error::{Error, Result};
use crate::family::{family_from_points, limit_tower, IdealFamily, LimitTower, PointFamily};
use crate::multiplicity::{graded_volume, stabilization_index, MultiplicityOptions, MultiplicityReport};
use crate::poly::{parse_eps_poly, parse_eps_scalar, MultiPoly, Rational, MAX_VARS};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Text,
    Json,
}

fn default_p_max() -> u32 {
    3
}

fn default_trials() -> u32 {
    MultiplicityOptions::default().trials
}

fn default_seed() -> u64 {
    MultiplicityOptions::default().seed
}

/// A family given either by point rows or by generators, both as strings in
/// `z1..zn` and the parameter `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    pub variables: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default = "default_p_max")]
    pub p_max: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_budget: Option<u32>,
    #[serde(default = "default_trials")]
    pub trials: u32,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputMode,
}

impl AnalysisConfig {
    pub fn from_points(rows: &[&[&str]], p_max: u32) -> Self {
        AnalysisConfig {
            variables: rows.first().map_or(0, |r| r.len()),
            points: Some(
                rows.iter()
                    .map(|r| r.iter().map(|s| s.to_string()).collect())
                    .collect(),
            ),
            generators: None,
            p_max,
            k_budget: None,
            trials: default_trials(),
            seed: default_seed(),
            output: OutputMode::Text,
        }
    }

    pub fn from_generators(variables: usize, gens: &[&str], p_max: u32) -> Self {
        AnalysisConfig {
            variables,
            points: None,
            generators: Some(gens.iter().map(|s| s.to_string()).collect()),
            ..AnalysisConfig::from_points(&[], p_max)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: AnalysisConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.variables == 0 {
            return Err(Error::InvalidConfig("variables must be at least 1".into()));
        }
        if self.variables > MAX_VARS - 2 {
            return Err(Error::InvalidConfig(format!(
                "at most {} variables are supported",
                MAX_VARS - 2
            )));
        }
        if self.p_max == 0 {
            return Err(Error::InvalidConfig("p_max must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        match (&self.points, &self.generators) {
            (Some(_), Some(_)) => Err(Error::InvalidConfig(
                "give either points or generators, not both".into(),
            )),
            (None, None) => Err(Error::InvalidConfig("give points or generators".into())),
            _ => Ok(()),
        }
    }

    pub fn multiplicity_options(&self) -> MultiplicityOptions {
        MultiplicityOptions {
            k_budget: self.k_budget,
            trials: self.trials,
            seed: self.seed,
            ..MultiplicityOptions::default()
        }
    }

    /// The ideal family, with warnings about recentering.
    pub fn family(&self) -> Result<(IdealFamily, Vec<Warning>)> {
        self.validate()?;
        let n = self.variables;
        let mut warnings = Vec::new();
        if let Some(rows) = &self.points {
            let mut points = Vec::with_capacity(rows.len());
            for row in rows {
                if row.len() != n {
                    return Err(Error::InvalidConfig(format!(
                        "point {:?} has {} coordinates, expected {n}",
                        row,
                        row.len()
                    )));
                }
                points.push(row.iter().map(|s| parse_eps_scalar(s)).collect::<Result<Vec<_>>>()?);
            }
            let mut pf = PointFamily::new(points)?;
            if !pf.is_colliding() {
                warnings.push(Warning::NonColliding);
            } else if pf.limit_points()[0].iter().any(|c| *c != Rational::from_integer(0.into())) {
                let (centered, shift) = pf.centered();
                warnings.push(Warning::Recentered {
                    shift: shift.iter().map(|c| c.to_string()).collect(),
                });
                pf = centered;
            }
            Ok((family_from_points(&pf)?, warnings))
        } else {
            let gens = self
                .generators
                .as_deref()
                .unwrap_or_default()
                .iter()
                .map(|s| parse_eps_poly(s, n))
                .collect::<Result<Vec<_>>>()?;
            Ok((IdealFamily::new(n, gens)?, warnings))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Warning {
    /// The points do not all tend to one limit.
    NonColliding,
    /// The common limit was moved to the origin.
    Recentered { shift: Vec<String> },
    /// The limit of `I_(1)` is not supported at a single point.
    VerdictSuppressed { reason: String },
    /// No `p <= p_max` reached `e(I_(p)) = p^n N`.
    BudgetExhausted { p_max: u32 },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::NonColliding => f.write_str("non-colliding: the points have several limits"),
            Warning::Recentered { shift } => write!(f, "recentered: shifted by ({})", shift.join(", ")),
            Warning::VerdictSuppressed { reason } => write!(f, "verdict-suppressed: {reason}"),
            Warning::BudgetExhausted { p_max } => {
                write!(f, "budget-exhausted: no stabilization for p <= {p_max}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    CompleteIntersection,
    StabilizedAt { p: u32 },
    BoundsOnly,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::CompleteIntersection => f.write_str("complete-intersection"),
            Verdict::StabilizedAt { p } => write!(f, "stabilized-at {p}"),
            Verdict::BoundsOnly => f.write_str("bounds-only"),
        }
    }
}

/// One level `I_(p)` of the tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerEntry {
    pub p: u32,
    pub generators: Vec<String>,
    pub length: u64,
    pub generic_length: u64,
    pub multiplicity: u64,
    /// `p^-n e(I_(p))`
    pub normalized: String,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorSummary {
    pub scale: u32,
    pub multiplicity: u64,
    pub mass: String,
    pub rendering: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub variables: usize,
    pub points: u64,
    pub tower: Vec<TowerEntry>,
    /// The volume lies in `[lower, upper]`.
    pub volume_lower: String,
    pub volume_upper: String,
    pub verdict: Verdict,
    pub descriptor: Option<DescriptorSummary>,
    pub warnings: Vec<Warning>,
}

impl AnalysisReport {
    pub fn entry(&self, p: u32) -> Option<&TowerEntry> {
        self.tower.iter().find(|t| t.p == p)
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.tower.iter().map(|t| t.multiplicity).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable report. Every number of the JSON form appears as a
    /// whitespace-separated token.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("variables: {}\n", self.variables));
        out.push_str(&format!("points: {}\n", self.points));
        out.push_str("tower:\n");
        out.push_str("  p length generic-length multiplicity normalized method\n");
        for t in &self.tower {
            out.push_str(&format!(
                "  {} {} {} {} {} {}\n",
                t.p, t.length, t.generic_length, t.multiplicity, t.normalized, t.method
            ));
        }
        for t in &self.tower {
            out.push_str(&format!("I_({}) = <{}>\n", t.p, t.generators.join(", ")));
        }
        out.push_str(&format!("volume: {} .. {}\n", self.volume_lower, self.volume_upper));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(d) = &self.descriptor {
            out.push_str(&format!("descriptor-scale: {}\n", d.scale));
            out.push_str(&format!("descriptor-multiplicity: {}\n", d.multiplicity));
            out.push_str(&format!("descriptor-mass: {}\n", d.mass));
            out.push_str(&format!("descriptor: {}\n", d.rendering));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

fn poly_strings(gens: &[MultiPoly<Rational>]) -> Vec<String> {
    gens.iter().map(|g| g.to_string()).collect()
}

fn summarize(tower: &LimitTower, reports: &[MultiplicityReport], normalized: &[Rational]) -> Vec<TowerEntry> {
    reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let p = i as u32 + 1;
            TowerEntry {
                p,
                generators: poly_strings(tower.limit(p).groebner().elements()),
                length: r.length,
                generic_length: tower.generic_length(p),
                multiplicity: r.multiplicity,
                normalized: normalized[i].to_string(),
                method: r.method.to_string(),
            }
        })
        .collect()
}

/// Family, tower, multiplicities, volume bounds, verdict and descriptor.
pub fn run_analyze(cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    let (fam, mut warnings) = cfg.family()?;
    let n = fam.dimension();
    let tower = limit_tower(&fam, cfg.p_max)?;
    tower.check_graded_inclusion()?;
    let points = tower.generic_length(1);
    let (bounds, reports) = graded_volume(&tower, &cfg.multiplicity_options())?;
    let mults: Vec<u64> = reports.iter().map(|r| r.multiplicity).collect();
    let normalized: Vec<Rational> = bounds.per_p.iter().map(|v| v.normalized.clone()).collect();

    let stabilized = match stabilization_index(&tower, &mults, points) {
        Ok(s) => Some(s),
        Err(Error::NotSinglePoint) => {
            warnings.push(Warning::VerdictSuppressed {
                reason: "the limit is not supported at a single point".into(),
            });
            None
        }
        Err(e) => return Err(e),
    };
    let verdict = match stabilized {
        None => Verdict::BoundsOnly,
        Some(_) if reports[0].complete_intersection => Verdict::CompleteIntersection,
        Some(Some(p)) => Verdict::StabilizedAt { p },
        Some(None) => {
            warnings.push(Warning::BudgetExhausted { p_max: cfg.p_max });
            Verdict::BoundsOnly
        }
    };

    let descriptor = if stabilized.is_some() {
        let p = match verdict {
            Verdict::CompleteIntersection => 1,
            Verdict::StabilizedAt { p } => p,
            Verdict::BoundsOnly => {
                let best = normalized.iter().min().expect("nonempty tower");
                normalized.iter().position(|v| v == best).expect("present") as u32 + 1
            }
        };
        let d = descriptor_from_multiplicity(tower.limit(p), p, mults[p as usize - 1])?;
        Some(DescriptorSummary {
            scale: p,
            multiplicity: d.multiplicity,
            mass: d.mass.to_string(),
            rendering: render(&d),
        })
    } else {
        None
    };

    Ok(AnalysisReport {
        variables: n,
        points,
        tower: summarize(&tower, &reports, &normalized),
        volume_lower: points.to_string(),
        volume_upper: bounds.upper_bound.to_string(),
        verdict,
        descriptor,
        warnings,
    })
}

/// Names accepted by [`run_preset`].
pub const PRESETS: [&str; 7] = [
    "two-point",
    "generic-3pt",
    "degenerate-3pt",
    "dqht-3pt",
    "4pt-square",
    "simplex-n2",
    "simplex-n3",
];

/// The configuration behind a preset, with `p_max` overridden when given.
pub fn preset_config(name: &str, p_max: Option<u32>) -> Result<AnalysisConfig> {
    let (rows, default_p): (&[&[&str]], u32) = match name {
        "two-point" => (&[&["0", "0"], &["e", "0"]], 3),
        "generic-3pt" => (&[&["0", "0"], &["e", "0"], &["0", "e"]], 3),
        "degenerate-3pt" => (&[&["0", "0"], &["e^2", "0"], &["0", "e"]], 3),
        "dqht-3pt" => (&[&["0", "0"], &["e^2", "0"], &["e^2/2", "e^3/2"]], 3),
        "4pt-square" => (&[&["0", "0"], &["e", "0"], &["0", "e"], &["e", "e"]], 3),
        "simplex-n2" => (&[&["0", "0"], &["e", "0"], &["0", "e"]], 3),
        "simplex-n3" => (
            &[&["0", "0", "0"], &["e", "0", "0"], &["0", "e", "0"], &["0", "0", "e"]],
            6,
        ),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(AnalysisConfig::from_points(rows, p_max.unwrap_or(default_p)))
}

pub fn run_preset(name: &str, p_max: Option<u32>) -> Result<AnalysisReport> {
    run_analyze(&preset_config(name, p_max)?)
}

/// Outcome of scanning `p = 1..=p_max` for `e(I_(p)) = p^n N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub variables: usize,
    pub points: u64,
    pub p_max: u32,
    pub first_stabilizing: Option<u32>,
    pub multiplicities: Vec<u64>,
    pub warnings: Vec<Warning>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let seq: Vec<String> = self.multiplicities.iter().map(|e| e.to_string()).collect();
        let mut out = format!(
            "variables: {}\npoints: {}\np-max: {}\nmultiplicities: {}\n",
            self.variables,
            self.points,
            self.p_max,
            seq.join(" ")
        );
        match self.first_stabilizing {
            Some(p) => out.push_str(&format!("first-stabilizing: {p}\n")),
            None => out.push_str("first-stabilizing: none\n"),
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

pub fn run_search_stabilization(cfg: &AnalysisConfig) -> Result<SearchReport> {
    let (fam, mut warnings) = cfg.family()?;
    let tower = limit_tower(&fam, cfg.p_max)?;
    let points = tower.generic_length(1);
    let (_, reports) = graded_volume(&tower, &cfg.multiplicity_options())?;
    let multiplicities: Vec<u64> = reports.iter().map(|r| r.multiplicity).collect();
    let first_stabilizing = stabilization_index(&tower, &multiplicities, points)?;
    if first_stabilizing.is_none() {
        warnings.push(Warning::BudgetExhausted { p_max: cfg.p_max });
    }
    Ok(SearchReport {
        variables: fam.dimension(),
        points,
        p_max: cfg.p_max,
        first_stabilizing,
        multiplicities,
        warnings,
    })
}
