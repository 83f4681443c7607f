//! `export`: emit CSV tables for a prior run directory. Closed-form
//! columns are recomputed; probe slacks are read from the run's
//! `summary.json` when present.

use std::fs;
use std::path::Path;

use micp_workbench::constructions::parabola_tower::boundary_ray;
use micp_workbench::constructions::polygon_tower::{body, radius, side_count};
use micp_workbench::constructions::BoxTower;
use micp_workbench::scalar::format_sig12;
use micp_workbench::Scalar;

use crate::artifacts::CsvTable;
use crate::config::{Construction, RunConfig};
use crate::CliError;

fn tower_table(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let mut table = CsvTable::new(&["i", "r", "g", "area", "h"]);
    let (lo, hi) = cfg.tower_range();
    for i in lo..=hi {
        let poly = body(i).map_err(|e| CliError::Config(format!("cannot build body {i}: {e}")))?;
        let area = poly.area().to_f64();
        table.row(&[
            i.to_string(),
            radius(i).to_string(),
            side_count(i).expect("side count for validated i").to_string(),
            format_sig12(area),
            format_sig12(area.sqrt()),
        ]);
    }
    Ok(table)
}

fn cone_table(cfg: &RunConfig) -> CsvTable {
    let mut table = CsvTable::new(&["c", "d1", "d2", "d3", "d4"]);
    for c in 0..=cfg.z_box.1.max(0) as u64 {
        let ray = boundary_ray(c);
        let mut row = vec![c.to_string()];
        row.extend(ray.iter().map(|v| v.to_string()));
        table.row(&row);
    }
    table
}

fn slice_table(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let tower = BoxTower::new(Scalar::one(), cfg.z_box.0, cfg.z_box.1)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let area = tower.square().area();
    let mut table = CsvTable::new(&["z", "area", "h"]);
    for z in cfg.z_box.0..=cfg.z_box.1 {
        table.row(&[
            z.to_string(),
            area.to_string(),
            format_sig12(area.to_f64().sqrt()),
        ]);
    }
    Ok(table)
}

/// One row per selected probe found in the prior verify summary; header
/// only when nothing was selected or no summary exists.
fn probe_slack_table(cfg: &RunConfig, summary: &Path) -> Result<CsvTable, CliError> {
    let mut table = CsvTable::new(&["probe", "slack"]);
    if !summary.is_file() {
        return Ok(table);
    }
    let bytes = fs::read(summary)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", summary.display())))?;
    let value: serde_json::Value = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Io(format!("cannot parse {}: {e}", summary.display())))?;
    let probes = value
        .get("probes")
        .and_then(|p| p.as_array())
        .cloned()
        .unwrap_or_default();
    for probe in probes {
        let name = probe.get("probe").and_then(|n| n.as_str()).unwrap_or_default();
        if !cfg.probes.contains(&name) {
            continue;
        }
        let slack = probe
            .get("min_slack")
            .and_then(|s| s.as_f64())
            .map(format_sig12)
            .unwrap_or_default();
        table.row(&[name.to_string(), slack]);
    }
    Ok(table)
}

pub fn run(cfg: &RunConfig) -> Result<i32, CliError> {
    if !cfg.out.is_dir() {
        return Err(CliError::Io(format!("missing run directory: {}", cfg.out.display())));
    }
    let instance = cfg.out.join("instance.json");
    let summary = cfg.out.join("summary.json");
    if !instance.is_file() && !summary.is_file() {
        return Err(CliError::Io(format!(
            "no prior run artifacts (instance.json or summary.json) in {}",
            cfg.out.display()
        )));
    }

    let (file, table) = match cfg.construction {
        Construction::PolygonTower => ("tower_table.csv", tower_table(cfg)?),
        Construction::Lemma2 => ("cone_table.csv", cone_table(cfg)),
        Construction::BoxTower => ("slice_table.csv", slice_table(cfg)?),
    };
    let path = cfg.out.join(file);
    table.write(&path)?;
    println!("wrote {}", path.display());

    let path = cfg.out.join("probe_slacks.csv");
    probe_slack_table(cfg, &summary)?.write(&path)?;
    println!("wrote {}", path.display());

    Ok(0)
}
