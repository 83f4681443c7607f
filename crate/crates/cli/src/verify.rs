//! `verify`: run the selected probe suite, write `summary.json` and
//! `probes.csv`, and exit 0 only when every probe passes. Wall time goes
//! to stdout, never into the artifacts, which stay byte-identical across
//! worker counts.

use std::fs;
use std::time::Instant;

use serde::Serialize;

use micp_workbench::analysis::{
    cone_constancy_probe, domain_equality_probe, interior_lattice_pairs,
    interior_lattice_samples, midpoint_convexity_probe, translation_classes,
    volume_concavity_probe, DirectionGrid,
};
use micp_workbench::constructions::{BoxTower, ParabolaTower, PolygonTower};
use micp_workbench::formulation::{convexity_spot_check, Formulation, LatticeBox};
use micp_workbench::geometry::ConvexPolygon;
use micp_workbench::parallel::worker_count_from_env;
use micp_workbench::report::{ProbeReport, ShapeClassReport};
use micp_workbench::scalar::{format_sig12, lattice_to_scalars};
use micp_workbench::{Scalar, Tol};

use crate::artifacts::{write_json, CsvTable};
use crate::config::{Construction, RunConfig};
use crate::construct::lemma2_region;
use crate::CliError;

#[derive(Serialize)]
struct ProbeRow {
    #[serde(flatten)]
    report: ProbeReport,
    passed: bool,
}

#[derive(Serialize)]
struct Summary {
    schema: u32,
    construction: &'static str,
    seed: u64,
    tol: f64,
    z_box: [i64; 2],
    probes: Vec<ProbeRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    shape_classes: Vec<ShapeClassReport>,
    overall_pass: bool,
    metadata: &'static str,
}

fn metadata(construction: Construction) -> &'static str {
    match construction {
        Construction::Lemma2 => {
            "midpoint-membership samples the formulation oracle; midpoint-convexity and \
             domain-equality evaluate slice infima on a seeded direction grid; \
             cone-constancy compares slice recession cones at interior points"
        }
        Construction::PolygonTower => {
            "validity-sweep tests every body vertex against every cone section; \
             volume-concavity compares root areas over consecutive index triples; \
             translation-classes groups the slices by translation equivalence"
        }
        Construction::BoxTower => {
            "midpoint-membership samples the formulation oracle; domain-equality compares \
             slice support finiteness; volume-concavity checks that the prism keeps \
             constant root area; translation-classes confirms a single slice shape"
        }
    }
}

fn probe_error(name: &str, err: impl std::fmt::Display) -> CliError {
    CliError::Probe(format!("probe {name} could not run: {err}"))
}

fn run_lemma2_probe(
    cfg: &RunConfig,
    name: &str,
    workers: usize,
) -> Result<ProbeReport, CliError> {
    let tower = ParabolaTower;
    let region = lemma2_region(cfg);
    let tol = cfg.tol;
    match name {
        "midpoint-membership" => Ok(convexity_spot_check(&tower, &region, 400, cfg.seed, tol)),
        "midpoint-convexity" => {
            let pairs = interior_lattice_pairs(&tower, &region, 60, cfg.seed.wrapping_add(1), tol);
            let grid = DirectionGrid::seeded(4, 32, cfg.seed.wrapping_add(2))
                .expect("valid grid parameters");
            midpoint_convexity_probe(&tower, &grid, &pairs, workers, tol)
                .map_err(|e| probe_error(name, e))
        }
        "domain-equality" => {
            let samples =
                interior_lattice_samples(&tower, &region, 40, cfg.seed.wrapping_add(3), tol);
            let grid = DirectionGrid::seeded(4, 32, cfg.seed.wrapping_add(4))
                .expect("valid grid parameters");
            domain_equality_probe(&tower, &grid, &samples, tol).map_err(|e| probe_error(name, e))
        }
        "cone-constancy" => {
            let mut samples: Vec<Vec<Scalar>> =
                interior_lattice_samples(&tower, &region, 30, cfg.seed.wrapping_add(5), tol)
                    .iter()
                    .map(|z| lattice_to_scalars(z))
                    .collect();
            // Two non-lattice interior points: constancy holds over the
            // whole relative interior, not only at integers.
            samples.push(vec![Scalar::from_ratio(3, 2), Scalar::from_int(4)]);
            samples.push(vec![Scalar::from_ratio(5, 2), Scalar::from_int(7)]);
            cone_constancy_probe(&tower, &samples, tol).map_err(|e| probe_error(name, e))
        }
        other => unreachable!("unvalidated probe {other}"),
    }
}

fn tower_slices(
    f: &dyn Formulation,
    range: (i64, i64),
    tol: Tol,
) -> Result<Vec<(Vec<i64>, ConvexPolygon)>, CliError> {
    (range.0..=range.1)
        .map(|z| {
            let poly = f
                .slice(&[Scalar::from_int(z)], tol)
                .map_err(|e| probe_error("translation-classes", e))?
                .as_polygon()
                .ok_or_else(|| probe_error("translation-classes", "slice is not a polygon"))?;
            Ok((vec![z], poly))
        })
        .collect()
}

fn class_outcome(
    construction: &str,
    family_len: usize,
    expected: usize,
    report: ShapeClassReport,
) -> (ProbeReport, Option<ShapeClassReport>) {
    let mut probe = ProbeReport::new(construction, "translation-classes");
    let got = report.class_count();
    probe.record_outcome(
        &format!("classes={got}"),
        &format!("{family_len} slices should fall into {expected} translation classes"),
        got == expected,
    );
    (probe, Some(report))
}

fn run_tower_probe(
    cfg: &RunConfig,
    name: &str,
    workers: usize,
) -> Result<(ProbeReport, Option<ShapeClassReport>), CliError> {
    let tower = PolygonTower::new(cfg.i_max).expect("validated i_max");
    let (lo, hi) = cfg.tower_range();
    let tol = cfg.tol;
    match name {
        "validity-sweep" => {
            let report = tower
                .validity_sweep((lo, hi), (lo, hi), workers, tol)
                .map_err(|e| probe_error(name, e))?;
            Ok((report, None))
        }
        "volume-concavity" => {
            let triples: Vec<[Vec<i64>; 3]> = (lo + 1..hi)
                .map(|i| {
                    let i = i as i64;
                    [vec![i - 1], vec![i], vec![i + 1]]
                })
                .collect();
            let report = volume_concavity_probe(&tower, &triples, workers, tol)
                .map_err(|e| probe_error(name, e))?;
            Ok((report, None))
        }
        "translation-classes" => {
            let family = tower_slices(&tower, (lo as i64, hi as i64), tol)?;
            let classes =
                translation_classes(&family, tol).map_err(|e| probe_error(name, e))?;
            // Distinct side counts: every body is its own class.
            let expected = family.len();
            Ok(class_outcome("polygon-tower", family.len(), expected, classes))
        }
        other => unreachable!("unvalidated probe {other}"),
    }
}

fn run_box_probe(
    cfg: &RunConfig,
    name: &str,
    workers: usize,
) -> Result<(ProbeReport, Option<ShapeClassReport>), CliError> {
    let (lo, hi) = cfg.z_box;
    let tower = BoxTower::new(Scalar::one(), lo, hi)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let region = LatticeBox::new(vec![lo], vec![hi]).expect("validated z box");
    let tol = cfg.tol;
    match name {
        "midpoint-membership" => {
            Ok((convexity_spot_check(&tower, &region, 400, cfg.seed, tol), None))
        }
        "domain-equality" => {
            let grid = DirectionGrid::planar(32).expect("valid grid parameters");
            let samples: Vec<Vec<i64>> = (lo..=hi).map(|z| vec![z]).collect();
            let report =
                domain_equality_probe(&tower, &grid, &samples, tol).map_err(|e| probe_error(name, e))?;
            Ok((report, None))
        }
        "volume-concavity" => {
            let triples: Vec<[Vec<i64>; 3]> =
                (lo + 1..hi).map(|z| [vec![z - 1], vec![z], vec![z + 1]]).collect();
            let report = volume_concavity_probe(&tower, &triples, workers, tol)
                .map_err(|e| probe_error(name, e))?;
            Ok((report, None))
        }
        "translation-classes" => {
            let family = tower_slices(&tower, (lo, hi), tol)?;
            let classes =
                translation_classes(&family, tol).map_err(|e| probe_error(name, e))?;
            Ok(class_outcome("box-tower", family.len(), 1, classes))
        }
        other => unreachable!("unvalidated probe {other}"),
    }
}

pub fn run(cfg: &RunConfig) -> Result<i32, CliError> {
    let started = Instant::now();
    fs::create_dir_all(&cfg.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", cfg.out.display())))?;
    let workers = worker_count_from_env();

    let mut rows: Vec<ProbeRow> = Vec::new();
    let mut shape_classes: Vec<ShapeClassReport> = Vec::new();
    for name in &cfg.probes {
        let (report, classes) = match cfg.construction {
            Construction::Lemma2 => (run_lemma2_probe(cfg, name, workers)?, None),
            Construction::PolygonTower => run_tower_probe(cfg, name, workers)?,
            Construction::BoxTower => run_box_probe(cfg, name, workers)?,
        };
        if let Some(c) = classes {
            shape_classes.push(c);
        }
        let passed = report.passed();
        rows.push(ProbeRow { report, passed });
    }
    let overall_pass = rows.iter().all(|r| r.passed);

    let summary = Summary {
        schema: 1,
        construction: cfg.construction.name(),
        seed: cfg.seed,
        tol: cfg.tol.0,
        z_box: [cfg.z_box.0, cfg.z_box.1],
        probes: rows,
        shape_classes,
        overall_pass,
        metadata: metadata(cfg.construction),
    };
    write_json(&cfg.out.join("summary.json"), &summary)?;

    let mut table = CsvTable::new(&["probe", "case", "slack", "verdict"]);
    for row in &summary.probes {
        let r = &row.report;
        for v in &r.violations {
            table.row(&[r.probe.clone(), v.case.clone(), format_sig12(v.slack), "fail".into()]);
        }
        let slack = r.min_slack.map(format_sig12).unwrap_or_default();
        let verdict = if row.passed { "pass" } else { "fail" };
        table.row(&[r.probe.clone(), "summary".into(), slack, verdict.into()]);
    }
    table.write(&cfg.out.join("probes.csv"))?;

    for row in &summary.probes {
        let r = &row.report;
        println!(
            "probe {}: {} ({} cases, {} skipped, min slack {})",
            r.probe,
            if row.passed { "pass" } else { "fail" },
            r.cases,
            r.skipped,
            r.min_slack.map(format_sig12).unwrap_or_else(|| "n/a".into()),
        );
    }
    println!(
        "verify {}: {} in {:.2}s",
        cfg.construction.name(),
        if overall_pass { "pass" } else { "fail" },
        started.elapsed().as_secs_f64(),
    );

    Ok(if overall_pass { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_failing_report_fails_the_class_outcome() {
        let mut labels = Vec::new();
        let mut classes = Vec::new();
        for i in 0..3 {
            labels.push(format!("z=[{i}]"));
            classes.push(vec![i]);
        }
        let report = ShapeClassReport {
            notion: "translation".into(),
            labels,
            classes,
        };
        let (probe, kept) = class_outcome("box-tower", 3, 1, report);
        assert!(!probe.passed());
        assert_eq!(kept.unwrap().class_count(), 3);
    }
}
