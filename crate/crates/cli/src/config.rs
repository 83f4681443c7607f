//! Run configuration: flag parsing helpers and upfront validation. Every
//! name (construction, probe, format) is checked here, before any file or
//! probe work starts.

use std::path::PathBuf;

use micp_workbench::Tol;

use crate::CommonArgs;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Construction {
    Lemma2,
    PolygonTower,
    BoxTower,
}

impl Construction {
    pub fn parse(name: &str) -> Result<Self, String> {
        match name {
            "lemma2" => Ok(Self::Lemma2),
            "polygon-tower" => Ok(Self::PolygonTower),
            "box-tower" => Ok(Self::BoxTower),
            other => Err(format!(
                "unknown construction {other:?}; expected lemma2, polygon-tower or box-tower"
            )),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Lemma2 => "lemma2",
            Self::PolygonTower => "polygon-tower",
            Self::BoxTower => "box-tower",
        }
    }

    /// Probe suite for `verify`, in execution order.
    pub fn probe_names(self) -> &'static [&'static str] {
        match self {
            Self::Lemma2 => &[
                "midpoint-membership",
                "midpoint-convexity",
                "domain-equality",
                "cone-constancy",
            ],
            Self::PolygonTower => &["validity-sweep", "volume-concavity", "translation-classes"],
            Self::BoxTower => &[
                "midpoint-membership",
                "domain-equality",
                "volume-concavity",
                "translation-classes",
            ],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    fn parse(token: &str) -> Result<Self, String> {
        match token {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "svg" => Ok(Self::Svg),
            other => Err(format!("unknown format {other:?}; expected json, csv or svg")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Construct,
    Verify,
    Export,
}

/// Fully validated configuration for one run.
pub struct RunConfig {
    pub construction: Construction,
    pub i_max: u64,
    /// Inclusive integer range applied to each index coordinate; for
    /// lemma2 the second coordinate is widened to cover the parabola.
    pub z_box: (i64, i64),
    pub probes: Vec<&'static str>,
    pub seed: u64,
    pub tol: Tol,
    pub out: PathBuf,
    pub formats: Vec<Format>,
}

impl RunConfig {
    pub fn new(kind: CommandKind, args: &CommonArgs) -> Result<Self, String> {
        let construction = Construction::parse(&args.construction)?;

        let formats = match &args.format {
            None => vec![Format::Json],
            Some(spec) => {
                let mut out = Vec::new();
                for token in spec.split(',').filter(|t| !t.is_empty()) {
                    let f = Format::parse(token)?;
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
                if out.is_empty() {
                    return Err("empty --format list".into());
                }
                out
            }
        };
        if kind == CommandKind::Construct {
            if formats.contains(&Format::Csv) {
                return Err("construct writes json or svg; csv tables come from export".into());
            }
            if formats.contains(&Format::Svg) && construction == Construction::BoxTower {
                return Err("svg figures are defined for lemma2 and polygon-tower only".into());
            }
        }

        let known = construction.probe_names();
        let probes = match &args.probes {
            None => known.to_vec(),
            Some(spec) => {
                let mut out = Vec::new();
                for token in spec.split(',').filter(|t| !t.is_empty()) {
                    match known.iter().find(|k| **k == token) {
                        Some(k) => {
                            if !out.contains(k) {
                                out.push(*k);
                            }
                        }
                        None => {
                            return Err(format!(
                                "unknown probe {token:?} for {}; available: {}",
                                construction.name(),
                                known.join(", ")
                            ));
                        }
                    }
                }
                out
            }
        };

        let i_max = args.i_max.unwrap_or(8);
        if construction == Construction::PolygonTower && !(2..=100).contains(&i_max) {
            return Err("--i-max must lie in [2, 100]".into());
        }

        let z_box = match &args.z_box {
            None => match construction {
                Construction::Lemma2 => (0, 6),
                Construction::PolygonTower => (1, i_max as i64),
                Construction::BoxTower => (-5, 5),
            },
            Some(spec) => parse_z_box(spec)?,
        };
        match construction {
            // z2 spans up to hi^2, and index enumeration walks the box.
            Construction::Lemma2 if z_box.1 > 50 => {
                return Err("--z-box upper bound for lemma2 is limited to 50".into());
            }
            Construction::Lemma2 if z_box.1 < 0 => {
                return Err("the lemma2 index set lies in z1 >= 0; raise the --z-box upper bound".into());
            }
            Construction::PolygonTower if z_box.1 < 1 || z_box.0 > i_max as i64 => {
                return Err("--z-box does not overlap the tower indices [1, i-max]".into());
            }
            Construction::BoxTower if z_box.1 - z_box.0 > 10_000 => {
                return Err("--z-box range for box-tower is limited to 10000 values".into());
            }
            _ => {}
        }

        let tol = match args.tol {
            None => Tol::default(),
            Some(t) if t.is_finite() && t > 0.0 => Tol(t),
            Some(t) => return Err(format!("--tol must be a positive finite number, got {t}")),
        };

        Ok(RunConfig {
            construction,
            i_max,
            z_box,
            probes,
            seed: args.seed,
            tol,
            out: args.out.clone(),
            formats,
        })
    }

    /// Tower indices selected by the run: the z range clipped to [1, i_max].
    pub fn tower_range(&self) -> (u64, u64) {
        let lo = self.z_box.0.max(1) as u64;
        let hi = self.z_box.1.max(0).min(self.i_max as i64) as u64;
        (lo, hi)
    }
}

fn parse_z_box(spec: &str) -> Result<(i64, i64), String> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("--z-box expects \"lo,hi\", got {spec:?}"));
    }
    let lo: i64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("--z-box bound {:?} is not an integer", parts[0]))?;
    let hi: i64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("--z-box bound {:?} is not an integer", parts[1]))?;
    if lo > hi {
        return Err(format!("--z-box range is empty: {lo} > {hi}"));
    }
    Ok((lo, hi))
}
