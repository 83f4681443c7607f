//! `construct`: write a JSON description of the selected instance and,
//! for the two nontrivial constructions, an optional SVG figure.

use std::fs;

use serde::Serialize;

use micp_workbench::constructions::parabola_tower::boundary_ray;
use micp_workbench::constructions::polygon_tower::{body, radius, side_count};
use micp_workbench::constructions::{BoxTower, ParabolaTower};
use micp_workbench::formulation::{Formulation, LatticeBox, RegionClass};
use micp_workbench::scalar::{format_sig12, lattice_to_scalars};
use micp_workbench::Scalar;

use crate::artifacts::{write_json, SvgCanvas};
use crate::config::{Construction, Format, RunConfig};
use crate::CliError;

#[derive(Serialize)]
struct Lemma2Slice {
    z: Vec<i64>,
    region: &'static str,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    recession_ray: Option<Vec<i64>>,
}

#[derive(Serialize)]
struct Lemma2Instance {
    schema: u32,
    construction: &'static str,
    dims: [usize; 3],
    z_box: [[i64; 2]; 2],
    metadata: &'static str,
    slices: Vec<Lemma2Slice>,
    cone_directions: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct TowerBody {
    i: u64,
    radius: Scalar,
    sides: u64,
    area: String,
    vertices: Vec<[Scalar; 2]>,
}

#[derive(Serialize)]
struct TowerInstance {
    schema: u32,
    construction: &'static str,
    i_max: u64,
    z_box: [i64; 2],
    metadata: &'static str,
    bodies: Vec<TowerBody>,
}

#[derive(Serialize)]
struct BoxSlice {
    z: i64,
    vertices: Vec<[Scalar; 2]>,
}

#[derive(Serialize)]
struct BoxInstance {
    schema: u32,
    construction: &'static str,
    side: Scalar,
    z_box: [i64; 2],
    metadata: &'static str,
    slices: Vec<BoxSlice>,
}

/// Index region of the parabola tower for this run: the z box clamped to
/// the first quadrant, with the second coordinate widened to reach the
/// parabola at the upper bound.
pub fn lemma2_region(cfg: &RunConfig) -> LatticeBox {
    let lo1 = cfg.z_box.0.max(0);
    let hi1 = cfg.z_box.1.max(0);
    let lo2 = if cfg.z_box.0 <= 0 { 0 } else { cfg.z_box.0 * cfg.z_box.0 };
    let hi2 = (hi1 * hi1).max(lo2);
    LatticeBox::new(vec![lo1, lo2], vec![hi1, hi2]).expect("validated z box")
}

fn lemma2_lattice(cfg: &RunConfig) -> Vec<Vec<i64>> {
    ParabolaTower.lattice_points(&lemma2_region(cfg), cfg.tol)
}

fn lemma2_instance(cfg: &RunConfig) -> Lemma2Instance {
    let tower = ParabolaTower;
    let dims = tower.dims();
    let points = lemma2_lattice(cfg);
    let mut slices = Vec::new();
    let mut cone_directions = Vec::new();
    for z in points {
        let zs = lattice_to_scalars(&z);
        let region = match tower.index_classify(&zs, cfg.tol) {
            RegionClass::Interior => "interior",
            _ => "boundary",
        };
        let on_parabola = z[1] == z[0] * z[0];
        let (kind, ray) = if on_parabola {
            let ray = boundary_ray(z[0] as u64);
            cone_directions.push(ray.clone());
            ("ray", Some(ray))
        } else {
            ("wedge", None)
        };
        slices.push(Lemma2Slice { z, region, kind, recession_ray: ray });
    }
    let lo1 = cfg.z_box.0.max(0);
    let hi1 = cfg.z_box.1.max(0);
    Lemma2Instance {
        schema: 1,
        construction: "lemma2",
        dims: [dims.n, dims.p, dims.d],
        z_box: [[lo1, hi1], [if cfg.z_box.0 <= 0 { 0 } else { lo1 * lo1 }, hi1 * hi1]],
        metadata: "slices at index lattice points; parabola points carry the primitive \
                   recession ray of their line slice, all other slices share the wedge \
                   x1=x2=0, 0<=x4<=x3",
        slices,
        cone_directions,
    }
}

fn tower_instance(cfg: &RunConfig) -> Result<TowerInstance, CliError> {
    let (lo, hi) = cfg.tower_range();
    let mut bodies = Vec::new();
    for i in lo..=hi {
        let poly = body(i)
            .map_err(|e| CliError::Config(format!("cannot build body {i}: {e}")))?
            .translate(&[Scalar::from_int(i as i64), Scalar::zero()]);
        bodies.push(TowerBody {
            i,
            radius: radius(i),
            sides: side_count(i).expect("side count for validated i"),
            area: format_sig12(poly.area().to_f64()),
            vertices: poly.vertices().to_vec(),
        });
    }
    Ok(TowerInstance {
        schema: 1,
        construction: "polygon-tower",
        i_max: cfg.i_max,
        z_box: [cfg.z_box.0, cfg.z_box.1],
        metadata: "regular bodies on circumradius i/(2(i+1)), shifted by i along the first \
                   axis; side counts are the certified minimal apothem counts",
        bodies,
    })
}

fn box_instance(cfg: &RunConfig) -> Result<BoxInstance, CliError> {
    let tower = BoxTower::new(Scalar::one(), cfg.z_box.0, cfg.z_box.1)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let square = tower.square();
    let slices = (cfg.z_box.0..=cfg.z_box.1)
        .map(|z| BoxSlice { z, vertices: square.vertices().to_vec() })
        .collect();
    Ok(BoxInstance {
        schema: 1,
        construction: "box-tower",
        side: tower.side().clone(),
        z_box: [cfg.z_box.0, cfg.z_box.1],
        metadata: "a prism: every slice is the same square, so the tower has exactly one \
                   translation class",
        slices,
    })
}

fn tower_svg(cfg: &RunConfig) -> Result<String, CliError> {
    let (lo, hi) = cfg.tower_range();
    let mut canvas = SvgCanvas::new();
    for i in lo..=hi {
        let poly = body(i)
            .map_err(|e| CliError::Config(format!("cannot build body {i}: {e}")))?;
        let pts: Vec<(f64, f64)> = poly
            .vertices()
            .iter()
            .map(|v| (v[0].to_f64() + i as f64, v[1].to_f64()))
            .collect();
        canvas.polygon(&pts);
        canvas.marker((i as f64, 0.0));
    }
    Ok(canvas.finish())
}

fn lemma2_svg(cfg: &RunConfig) -> String {
    let mut canvas = SvgCanvas::new();
    let hi = cfg.z_box.1.max(0) as u64;
    canvas.marker((0.0, 0.0));
    for c in 0..=hi {
        // The fan of slice directions in the (x3, x4)-plane.
        let tip = ((1 + c) as f64, c as f64);
        canvas.segment((0.0, 0.0), tip);
        canvas.marker(tip);
    }
    canvas.finish()
}

pub fn run(cfg: &RunConfig) -> Result<i32, CliError> {
    fs::create_dir_all(&cfg.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", cfg.out.display())))?;

    if cfg.formats.contains(&Format::Json) {
        let path = cfg.out.join("instance.json");
        match cfg.construction {
            Construction::Lemma2 => write_json(&path, &lemma2_instance(cfg))?,
            Construction::PolygonTower => write_json(&path, &tower_instance(cfg)?)?,
            Construction::BoxTower => write_json(&path, &box_instance(cfg)?)?,
        }
        println!("wrote {}", path.display());
    }

    if cfg.formats.contains(&Format::Svg) {
        let text = match cfg.construction {
            Construction::PolygonTower => tower_svg(cfg)?,
            Construction::Lemma2 => lemma2_svg(cfg),
            Construction::BoxTower => unreachable!("rejected during validation"),
        };
        let path = cfg.out.join("figure.svg");
        crate::artifacts::write_bytes(&path, text.as_bytes())?;
        println!("wrote {}", path.display());
    }

    Ok(0)
}
