//! Probes for consequences of convexity that a valid slice family cannot
//! escape. Each probe returns a [`ProbeReport`]; a violation is a concrete
//! witness that the probed family is not the slice family of any single
//! convex set.

use crate::analysis::grid::DirectionGrid;
use crate::error::WorkbenchError;
use crate::formulation::{Formulation, LatticeBox, RegionClass};
use crate::geometry::{ConvexPolygon, HPolyhedron};
use crate::parallel::map_ordered;
use crate::report::ProbeReport;
use crate::scalar::{lattice_to_scalars, ExtReal, Scalar, Tol};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Infimum of `c . x` over the slice at `z`: finite, `-inf` when the slice
/// is unbounded against `c`, `+inf` when the slice is empty.
pub fn fc_infimum(
    f: &dyn Formulation,
    c: &[Scalar],
    z: &[Scalar],
    tol: Tol,
) -> Result<ExtReal> {
    let slice = f.slice(z, tol)?;
    if slice.is_empty() {
        return Ok(ExtReal::PosInf);
    }
    let h = slice
        .as_polyhedron()
        .ok_or_else(|| WorkbenchError::Internal("slice has no polyhedral form".into()))?;
    if c.len() != h.dim() {
        return Err(WorkbenchError::DimensionMismatch { expected: h.dim(), got: c.len() });
    }
    let neg: Vec<Scalar> = c.iter().map(|v| -v).collect();
    Ok(h.support(&neg, tol)?.neg())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FinitenessTag {
    NegInf,
    Finite,
    PosInf,
}

impl FinitenessTag {
    fn of(e: &ExtReal) -> FinitenessTag {
        match e {
            ExtReal::NegInf => FinitenessTag::NegInf,
            ExtReal::Finite(_) => FinitenessTag::Finite,
            ExtReal::PosInf => FinitenessTag::PosInf,
        }
    }
}

/// Worker-local probe outcome, merged into the report in input order so the
/// result is independent of the worker count.
enum Record {
    Slack { case: String, detail: &'static str, slack: f64 },
    Outcome { case: String, detail: &'static str, ok: bool },
    Skip,
}

fn merge(report: &mut ProbeReport, records: Vec<Record>, tol: Tol) {
    for r in records {
        match r {
            Record::Slack { case, detail, slack } => {
                report.record_slack(&case, detail, slack, tol.0)
            }
            Record::Outcome { case, detail, ok } => report.record_outcome(&case, detail, ok),
            Record::Skip => report.record_skip(),
        }
    }
}

/// Checks `f_c((z+w)/2) <= (f_c(z) + f_c(w)) / 2` over every grid direction
/// and every supplied index pair with an integer midpoint.
///
/// Extended-real conventions: an empty endpoint slice (`+inf`) makes the
/// pair uninformative and is skipped; `-inf` on the right makes the
/// inequality vacuous; `+inf` at the midpoint with finite endpoints is a
/// violation.
pub fn midpoint_convexity_probe(
    f: &dyn Formulation,
    grid: &DirectionGrid,
    pairs: &[(Vec<i64>, Vec<i64>)],
    workers: usize,
    tol: Tol,
) -> Result<ProbeReport> {
    let dims = f.dims();
    if grid.dim() != dims.n {
        return Err(WorkbenchError::DimensionMismatch { expected: dims.n, got: grid.dim() });
    }
    let mut report = ProbeReport::new(f.name(), "midpoint-convexity");
    let outcomes = map_ordered(workers, pairs, |(z, w)| -> Result<Vec<Record>> {
        let mut recs = Vec::new();
        if z.len() != dims.d || w.len() != dims.d {
            return Err(WorkbenchError::DimensionMismatch {
                expected: dims.d,
                got: z.len().max(w.len()),
            });
        }
        if z.iter().zip(w).any(|(a, b)| (a + b) % 2 != 0) {
            recs.push(Record::Skip);
            return Ok(recs);
        }
        let mid: Vec<i64> = z.iter().zip(w).map(|(a, b)| (a + b) / 2).collect();
        let (zs, ws, ms) =
            (lattice_to_scalars(z), lattice_to_scalars(w), lattice_to_scalars(&mid));
        if !f.index_contains(&ms, tol) {
            recs.push(Record::Skip);
            return Ok(recs);
        }
        for (j, c) in grid.directions().iter().enumerate() {
            let fz = fc_infimum(f, c, &zs, tol)?;
            let fw = fc_infimum(f, c, &ws, tol)?;
            if matches!(fz, ExtReal::PosInf) || matches!(fw, ExtReal::PosInf) {
                recs.push(Record::Skip);
                continue;
            }
            let case = format!("pair z={z:?} w={w:?} dir-{j}");
            if matches!(fz, ExtReal::NegInf) || matches!(fw, ExtReal::NegInf) {
                recs.push(Record::Outcome {
                    case,
                    detail: "right side unbounded below, inequality vacuous",
                    ok: true,
                });
                continue;
            }
            match fc_infimum(f, c, &ms, tol)? {
                ExtReal::PosInf => recs.push(Record::Outcome {
                    case,
                    detail: "midpoint slice empty while both endpoint slices are not",
                    ok: false,
                }),
                ExtReal::NegInf => recs.push(Record::Outcome {
                    case,
                    detail: "midpoint infimum unbounded below, inequality holds",
                    ok: true,
                }),
                ExtReal::Finite(fm) => {
                    let rhs = (fz.finite().unwrap() + fw.finite().unwrap()).half();
                    recs.push(Record::Slack {
                        case,
                        detail: "endpoint average minus midpoint infimum",
                        slack: (&rhs - &fm).to_f64(),
                    });
                }
            }
        }
        Ok(recs)
    });
    for recs in outcomes {
        merge(&mut report, recs?, tol);
    }
    Ok(report)
}

/// Checks that the finiteness pattern of the slice infima is the same at
/// every interior sample, direction by direction. Samples outside the
/// interior of the index set are skipped.
pub fn domain_equality_probe(
    f: &dyn Formulation,
    grid: &DirectionGrid,
    samples: &[Vec<i64>],
    tol: Tol,
) -> Result<ProbeReport> {
    let dims = f.dims();
    if grid.dim() != dims.n {
        return Err(WorkbenchError::DimensionMismatch { expected: dims.n, got: grid.dim() });
    }
    let mut report = ProbeReport::new(f.name(), "domain-equality");
    let mut interior = Vec::new();
    for z in samples {
        let zs = lattice_to_scalars(z);
        if f.index_classify(&zs, tol) == RegionClass::Interior {
            interior.push(zs);
        } else {
            report.record_skip();
        }
    }
    if interior.len() < 2 {
        return Ok(report);
    }
    for (j, c) in grid.directions().iter().enumerate() {
        let mut tags = Vec::with_capacity(interior.len());
        for zs in &interior {
            tags.push(FinitenessTag::of(&fc_infimum(f, c, zs, tol)?));
        }
        let ok = tags.iter().all(|t| *t == tags[0]);
        report.record_outcome(
            &format!("direction-{j}"),
            "support-domain finiteness pattern varies across interior samples",
            ok,
        );
    }
    Ok(report)
}

/// Checks that all sampled slices share one recession cone. The samples may
/// be any real index points with certified slices; callers choose whether to
/// stay in the interior (where equality must hold) or deliberately include
/// boundary points (where it may fail).
pub fn cone_constancy_probe(
    f: &dyn Formulation,
    samples: &[Vec<Scalar>],
    tol: Tol,
) -> Result<ProbeReport> {
    let mut report = ProbeReport::new(f.name(), "cone-constancy");
    let mut reference: Option<(usize, HPolyhedron)> = None;
    for (idx, z) in samples.iter().enumerate() {
        let slice = f.slice(z, tol)?;
        if slice.is_empty() {
            report.record_skip();
            continue;
        }
        let Some(h) = slice.as_polyhedron() else {
            report.record_skip();
            continue;
        };
        let cone = h.recession_cone(tol)?;
        match &reference {
            None => reference = Some((idx, cone)),
            Some((ref_idx, ref_cone)) => {
                let ok = HPolyhedron::cones_equal(ref_cone, &cone, tol)?;
                report.record_outcome(
                    &format!("sample-{idx}"),
                    &format!("recession cone differs from the one at sample-{ref_idx}"),
                    ok,
                );
            }
        }
    }
    Ok(report)
}

/// Checks concavity of the root-volume `h(z) = Vol(A_z)^(1/2)` on integer
/// triples `(a, m, b)` with `m` the midpoint, through the two-step chain
///
/// ```text
/// h(m) >= Vol(A_a/2 + A_b/2)^(1/2) >= h(a)/2 + h(b)/2
/// ```
///
/// whose first step is set inclusion and second is the Brunn-Minkowski
/// inequality. Triples whose slices are not planar polygons are skipped.
pub fn volume_concavity_probe(
    f: &dyn Formulation,
    triples: &[[Vec<i64>; 3]],
    workers: usize,
    tol: Tol,
) -> Result<ProbeReport> {
    let mut report = ProbeReport::new(f.name(), "volume-concavity");
    let half = Scalar::from_ratio(1, 2);
    let outcomes = map_ordered(workers, triples, |triple| -> Result<Vec<Record>> {
        let mut recs = Vec::new();
        let mut polys: Vec<ConvexPolygon> = Vec::with_capacity(3);
        for z in triple {
            match f.slice(&lattice_to_scalars(z), tol)?.as_polygon() {
                Some(p) => polys.push(p),
                None => {
                    recs.push(Record::Skip);
                    return Ok(recs);
                }
            }
        }
        let h = |p: &ConvexPolygon| p.area().to_f64().max(0.0).sqrt();
        let (ha, hm, hb) = (h(&polys[0]), h(&polys[1]), h(&polys[2]));
        let mix = polys[0]
            .scale(&half)?
            .minkowski_sum(&polys[2].scale(&half)?, tol);
        let hmix = h(&mix);
        let case = format!("triple {:?} {:?} {:?}", triple[0], triple[1], triple[2]);
        recs.push(Record::Slack {
            case: format!("{case} inclusion"),
            detail: "middle root-volume minus half-sum root-volume",
            slack: hm - hmix,
        });
        recs.push(Record::Slack {
            case: format!("{case} brunn-minkowski"),
            detail: "half-sum root-volume minus endpoint root-volume average",
            slack: hmix - 0.5 * (ha + hb),
        });
        recs.push(Record::Slack {
            case: format!("{case} midpoint"),
            detail: "middle root-volume minus endpoint root-volume average",
            slack: hm - 0.5 * (ha + hb),
        });
        Ok(recs)
    });
    for recs in outcomes {
        merge(&mut report, recs?, tol);
    }
    Ok(report)
}

/// Seeded draw of `count` interior lattice points of the index set inside
/// `region` (with replacement).
pub fn interior_lattice_samples(
    f: &dyn Formulation,
    region: &LatticeBox,
    count: usize,
    seed: u64,
    tol: Tol,
) -> Vec<Vec<i64>> {
    let interior: Vec<Vec<i64>> = f
        .lattice_points(region, tol)
        .into_iter()
        .filter(|z| f.index_classify(&lattice_to_scalars(z), tol) == RegionClass::Interior)
        .collect();
    if interior.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| interior[rng.gen_range(0..interior.len())].clone())
        .collect()
}

/// Seeded draw of `count` interior lattice pairs whose coordinatewise sums
/// are even, so midpoints are again lattice points; pairs whose midpoint
/// leaves the interior are rejected during sampling.
pub fn interior_lattice_pairs(
    f: &dyn Formulation,
    region: &LatticeBox,
    count: usize,
    seed: u64,
    tol: Tol,
) -> Vec<(Vec<i64>, Vec<i64>)> {
    let interior: Vec<Vec<i64>> = f
        .lattice_points(region, tol)
        .into_iter()
        .filter(|z| f.index_classify(&lattice_to_scalars(z), tol) == RegionClass::Interior)
        .collect();
    let mut out = Vec::new();
    if interior.is_empty() {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut budget = count.saturating_mul(400);
    while out.len() < count && budget > 0 {
        budget -= 1;
        let a = &interior[rng.gen_range(0..interior.len())];
        let b = &interior[rng.gen_range(0..interior.len())];
        if a.iter().zip(b).any(|(x, y)| (x + y) % 2 != 0) {
            continue;
        }
        let mid: Vec<i64> = a.iter().zip(b).map(|(x, y)| (x + y) / 2).collect();
        if f.index_classify(&lattice_to_scalars(&mid), tol) == RegionClass::Interior {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}
