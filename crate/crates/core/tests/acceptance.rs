//! Acceptance gate for the workbench. Each test covers one numbered
//! criterion, pins its tolerances, and prints a single summary line on
//! success (visible with `--nocapture`); the harness line per test is the
//! pass/fail verdict for that criterion.

mod common;

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use micp_workbench::analysis::{
    affine_equivalent, combinatorially_equivalent, domain_equality_probe, fc_infimum,
    homothety_between, interior_lattice_pairs, interior_lattice_samples,
    midpoint_convexity_probe, translation_classes, translation_equivalent, DirectionGrid,
    volume_concavity_probe,
};
use micp_workbench::constructions::fixtures::{interleaved_squares, OriginHalflineFixture};
use micp_workbench::constructions::parabola_tower::boundary_ray;
use micp_workbench::constructions::polygon_tower::{
    apothem_ratio, body, chord_value, radius, side_count,
};
use micp_workbench::constructions::{BoxTower, ParabolaTower, PolygonTower};
use micp_workbench::formulation::{Formulation, LatticeBox};
use micp_workbench::geometry::{Constraint, ConvexPolygon, HPolyhedron};
use micp_workbench::parallel::worker_count_from_env;
use micp_workbench::scalar::lattice_to_scalars;
use micp_workbench::{ExtReal, Scalar, Tol};

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

/// Index region large enough to hold every interior lattice point the
/// seeded samplers need for the parabola tower.
fn parabola_region() -> LatticeBox {
    LatticeBox::new(vec![0, 0], vec![8, 80]).expect("valid region")
}

/// The common recession cone of every slice away from the parabola:
/// x1 = x2 = 0, 0 <= x4 <= x3.
fn interior_wedge() -> HPolyhedron {
    let z = Scalar::zero;
    let o = Scalar::one;
    HPolyhedron::new(
        4,
        vec![
            Constraint::eq(vec![o(), z(), z(), z()], z()),
            Constraint::eq(vec![z(), o(), z(), z()], z()),
            Constraint::le(vec![z(), z(), z(), -o()], z()),
            Constraint::le(vec![z(), z(), -o(), o()], z()),
        ],
    )
    .expect("wedge is consistent")
}

#[test]
fn criterion_1_slice_cones_distinct_on_the_parabola_constant_inside() {
    let tol = Tol::default();
    let tower = ParabolaTower;

    // Boundary points (c, c^2), c = 0..=50: each slice cone is a single ray
    // and the primitive generators are pairwise distinct integers.
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for c in 0u64..=50 {
        let z = vec![int(c as i64), int((c * c) as i64)];
        let cone = tower.recession_cone(&z, tol).expect("boundary cone");
        let ray = cone
            .primitive_ray(tol)
            .expect("ray extraction")
            .expect("boundary cone is one ray");
        let expected: Vec<BigInt> = boundary_ray(c).into_iter().map(BigInt::from).collect();
        assert_eq!(ray, expected, "primitive ray at c = {c}");
        rays.push(ray);
    }
    for a in 0..rays.len() {
        for b in a + 1..rays.len() {
            assert_ne!(rays[a], rays[b], "cones at c = {a} and c = {b} coincide");
        }
    }

    // 100 seeded interior lattice points all share the wedge cone.
    let wedge = interior_wedge();
    let samples = interior_lattice_samples(&tower, &parabola_region(), 100, 101, tol);
    assert_eq!(samples.len(), 100);
    for z in &samples {
        let cone = tower
            .recession_cone(&lattice_to_scalars(z), tol)
            .expect("interior cone");
        assert!(
            HPolyhedron::cones_equal(&cone, &wedge, tol).expect("cone comparison"),
            "cone at interior point {z:?} is not the wedge"
        );
    }

    // Sanity: the equality test itself separates distinct boundary cones.
    let cone0 = tower.recession_cone(&[int(0), int(0)], tol).unwrap();
    let cone1 = tower.recession_cone(&[int(1), int(1)], tol).unwrap();
    assert!(!HPolyhedron::cones_equal(&cone0, &cone1, tol).unwrap());

    println!(
        "criterion 1: PASS (51 boundary cones pairwise distinct, {} interior cones equal the wedge)",
        samples.len()
    );
}

#[test]
fn criterion_2_truncated_oracle_matches_the_closed_form_with_witness() {
    let tol = Tol::default();
    let tower = ParabolaTower;
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_814);

    let mut members = 0usize;
    let mut rejections = 0usize;
    for trial in 0..10_000 {
        let z1 = rng.gen_range(0..=4i64);
        let z2 = if rng.gen_bool(0.5) {
            z1 * z1
        } else {
            rng.gen_range(z1 * z1..=z1 * z1 + 6)
        };
        let zi = vec![z1, z2];
        let zs = lattice_to_scalars(&zi);

        let draw = |rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64| {
            ratio(rng.gen_range(lo * den..=hi * den), den)
        };
        let x1 = if rng.gen_bool(0.8) { int(z1) } else { draw(&mut rng, -1, 5, 4) };
        let x2 = if rng.gen_bool(0.8) { int(z2) } else { draw(&mut rng, -1, 20, 4) };
        let x3 = draw(&mut rng, 0, 6, 8);
        let x4 = match rng.gen_range(0..3u8) {
            // Free draw that can undershoot 0 or overshoot x3.
            0 => draw(&mut rng, -1, 7, 8),
            // On one of the pinned boundary ratios k/(1+k).
            1 => {
                let k = rng.gen_range(0..=4i64);
                &x3 * &ratio(k, k + 1)
            }
            // Somewhere in [0, x3].
            _ => &x3 * &ratio(rng.gen_range(0..=8), 8),
        };
        let x = vec![x1, x2, x3, x4];

        let y = tower.witness_y(&x, &zi, tol);
        let via_witness = tower.member_m(&x, &y, &zs, tol);
        let closed = tower.closed_form_member(&x, &zi, tol);
        assert_eq!(
            via_witness, closed,
            "trial {trial}: oracle disagreement at x = {x:?}, z = {zi:?}"
        );
        if closed {
            members += 1;
        } else {
            rejections += 1;
        }
    }
    // The sampler must exercise both directions of the equivalence.
    assert!(members >= 1_500, "only {members} member samples");
    assert!(rejections >= 1_500, "only {rejections} rejected samples");

    println!(
        "criterion 2: PASS (10000 samples, {members} members and {rejections} rejections, zero disagreements)"
    );
}

#[test]
fn criterion_3_slice_infima_are_midpoint_convex_with_equal_domains() {
    let tol = Tol(1e-9);
    let tower = ParabolaTower;
    let region = parabola_region();
    let workers = worker_count_from_env();
    let grid = DirectionGrid::seeded(4, 64, 707).expect("direction grid");

    let pairs = interior_lattice_pairs(&tower, &region, 100, 414, tol);
    assert_eq!(pairs.len(), 100);
    let report = midpoint_convexity_probe(&tower, &grid, &pairs, workers, tol)
        .expect("midpoint convexity probe");
    assert!(
        report.passed(),
        "midpoint convexity violated: {:?}",
        report.violations.first()
    );
    assert!(report.cases > 0);
    if let Some(m) = report.min_slack {
        assert!(m >= -1e-9, "min slack {m} below tolerance");
    }

    let samples = interior_lattice_samples(&tower, &region, 50, 515, tol);
    assert_eq!(samples.len(), 50);
    let domains = domain_equality_probe(&tower, &grid, &samples, tol).expect("domain probe");
    assert!(
        domains.passed(),
        "domain finiteness pattern varies: {:?}",
        domains.violations.first()
    );

    // Half-line fixture: the infimum is exactly 0 at z = 0 and unbounded
    // for every z in (0, 1], so no convex extension through z = 0 exists.
    let fixture = OriginHalflineFixture;
    let c = vec![Scalar::one()];
    match fc_infimum(&fixture, &c, &[Scalar::zero()], tol).expect("value at 0") {
        ExtReal::Finite(v) => {
            assert!(v.is_exact());
            assert_eq!(v.raw_cmp(&Scalar::zero()), Ordering::Equal);
        }
        other => panic!("expected a finite value at z = 0, got {other:?}"),
    }
    for den in [4i64, 2, 1] {
        let value = fc_infimum(&fixture, &c, &[ratio(1, den)], tol).expect("value on (0,1]");
        assert!(
            matches!(value, ExtReal::NegInf),
            "expected an unbounded slice at z = 1/{den}, got {value:?}"
        );
    }

    println!(
        "criterion 3: PASS (100 pairs x 64 directions convex, 50-sample domains equal, half-line fixture pinned)"
    );
}

#[test]
fn criterion_4_polygon_radii_side_counts_and_separation() {
    // Pinned small side counts.
    assert_eq!(side_count(1).unwrap(), 4);
    assert_eq!(side_count(2).unwrap(), 9);
    assert_eq!(side_count(3).unwrap(), 15);

    let mut prev = 0u64;
    for i in 1..=100u64 {
        let g = side_count(i).expect("certified side count");

        // Independent float oracle for minimality: smallest m >= 3 whose
        // apothem ratio cos(pi/m) clears the target.
        let target = apothem_ratio(i).unwrap().to_f64();
        let mut m = 3u64;
        while (PI / m as f64).cos() < target {
            m += 1;
        }
        assert_eq!(g, m, "side count at i = {i} disagrees with the float scan");

        assert!(g > prev, "side counts must increase strictly at i = {i}");
        prev = g;
    }

    for i in 2..=100u64 {
        let g = side_count(i).unwrap();
        let r = radius(i).to_f64();

        // Every vertex sits on the circumscribed circle.
        let poly = body(i).expect("body polygon");
        assert_eq!(poly.vertex_count() as u64, g);
        for v in poly.vertices() {
            let norm = (v[0].to_f64().powi(2) + v[1].to_f64().powi(2)).sqrt();
            assert!(
                (norm - r).abs() <= 1e-12,
                "vertex norm {norm} differs from r({i}) = {r}"
            );
        }

        // The inscribed ball of the body covers the chord midpoint value.
        let apothem = r * (PI / g as f64).cos();
        let mid = chord_value(i, &int(i as i64)).to_f64();
        assert!(
            apothem >= mid - 1e-12,
            "apothem {apothem} at i = {i} undershoots the chord value {mid}"
        );
    }

    // Exact disjointness of consecutive bodies after the unit shift:
    // 1 - r(i) - r(i+1) = (1/(i+1) + 1/(i+2)) / 2 > 0.
    for i in 1..=100u64 {
        let gap = &(&Scalar::one() - &radius(i)) - &radius(i + 1);
        assert!(gap.is_exact());
        assert_eq!(gap.raw_cmp(&Scalar::zero()), Ordering::Greater);
        let closed_form = &ratio(1, (i + 1) as i64) + &ratio(1, (i + 2) as i64);
        let closed_form = &closed_form * &ratio(1, 2);
        assert_eq!(gap.raw_cmp(&closed_form), Ordering::Equal);
    }

    println!(
        "criterion 4: PASS (side counts certified to i = 100, vertex radii within 1e-12, exact separation)"
    );
}

#[test]
fn criterion_5_cone_sections_capture_exactly_their_own_bodies() {
    let tol = Tol(1e-9);
    let tower = PolygonTower::new(40).expect("tower");
    let report = tower
        .validity_sweep((1, 40), (1, 40), worker_count_from_env(), tol)
        .expect("validity sweep");
    assert!(
        report.passed(),
        "sweep violation: {:?}",
        report.violations.first()
    );
    assert!(report.cases > 0);
    if let Some(m) = report.min_slack {
        assert!(m >= -1e-9, "min sweep slack {m}");
    }

    println!(
        "criterion 5: PASS (40 x 40 sweep, {} cases, min slack {:?})",
        report.cases, report.min_slack
    );
}

#[test]
fn criterion_6_root_area_is_concave_along_both_towers() {
    let workers = worker_count_from_env();
    let half = ratio(1, 2);

    // Prism: every slack is exactly zero and the root areas agree to 1e-12.
    let tol = Tol(1e-12);
    let boxes = BoxTower::default();
    let triples: Vec<[Vec<i64>; 3]> =
        (-4..=4).map(|z| [vec![z - 1], vec![z], vec![z + 1]]).collect();
    let report = volume_concavity_probe(&boxes, &triples, workers, tol).expect("box probe");
    assert!(report.passed(), "{:?}", report.violations.first());
    assert_eq!(report.min_slack, Some(0.0));
    for z in -4..=4i64 {
        let slice = |w: i64| {
            boxes
                .slice(&[int(w)], tol)
                .expect("box slice")
                .as_polygon()
                .expect("square slice")
        };
        let (a, m, b) = (slice(z - 1), slice(z), slice(z + 1));
        let mix = a.scale(&half).unwrap().minkowski_sum(&b.scale(&half).unwrap(), tol);
        let hm = m.area().to_f64().sqrt();
        let hmix = mix.area().to_f64().sqrt();
        let avg = 0.5 * (a.area().to_f64().sqrt() + b.area().to_f64().sqrt());
        assert!((hm - hmix).abs() <= 1e-12, "inclusion gap at z = {z}");
        assert!((hmix - avg).abs() <= 1e-12, "mix gap at z = {z}");
        assert!((hm - avg).abs() <= 1e-12, "midpoint gap at z = {z}");
    }

    // Polygon tower: concavity holds with slack down to the 1e-9 gate,
    // including the refined chain through the Minkowski mix.
    let tol = Tol(1e-9);
    let tower = PolygonTower::new(52).expect("tower");
    let triples: Vec<[Vec<i64>; 3]> =
        (2..=50).map(|i| [vec![i - 1], vec![i], vec![i + 1]]).collect();
    let report = volume_concavity_probe(&tower, &triples, workers, tol).expect("tower probe");
    assert!(report.passed(), "{:?}", report.violations.first());
    assert_eq!(report.cases, 49 * 3);
    assert_eq!(report.skipped, 0);
    if let Some(m) = report.min_slack {
        assert!(m >= -1e-9, "min concavity slack {m}");
    }

    println!(
        "criterion 6: PASS (prism slacks exactly zero, 49 tower triples concave through the mix chain)"
    );
}

#[test]
fn criterion_7_minkowski_mixes_and_translation_classes() {
    let tol = Tol::default();
    let half = ratio(1, 2);

    let square = ConvexPolygon::new(vec![
        [int(0), int(0)],
        [int(1), int(0)],
        [int(1), int(1)],
        [int(0), int(1)],
    ])
    .unwrap();

    // Translate: the root-area inequality is tight and a homothety with
    // unit scale certifies the shared shape.
    let shifted = square.translate(&[int(3), int(-2)]);
    let mix = square
        .scale(&half)
        .unwrap()
        .minkowski_sum(&shifted.scale(&half).unwrap(), tol);
    let gap = mix.area().to_f64().sqrt()
        - 0.5 * (square.area().to_f64().sqrt() + shifted.area().to_f64().sqrt());
    assert!(gap.abs() <= 1e-12, "translate mix gap {gap}");
    let (scale, _) = homothety_between(&square, &shifted, tol).expect("translates are homothetic");
    assert_eq!(scale.raw_cmp(&Scalar::one()), Ordering::Equal);

    // Equal-area triangle: the mix area is exactly 5/4, the root-area gap
    // exceeds 0.1, and no homothety exists.
    let triangle = ConvexPolygon::new(vec![[int(0), int(0)], [int(2), int(0)], [int(0), int(1)]])
        .unwrap();
    assert_eq!(triangle.area().raw_cmp(&Scalar::one()), Ordering::Equal);
    let mix = square
        .scale(&half)
        .unwrap()
        .minkowski_sum(&triangle.scale(&half).unwrap(), tol);
    assert!((mix.area().to_f64() - 1.25).abs() <= 1e-9);
    assert_eq!(mix.area().raw_cmp(&ratio(5, 4)), Ordering::Equal);

    // Independent oracle: hull of all pairwise vertex sums.
    let mut sums = Vec::new();
    for p in square.scale(&half).unwrap().vertices() {
        for q in triangle.scale(&half).unwrap().vertices() {
            sums.push([&p[0] + &q[0], &p[1] + &q[1]]);
        }
    }
    let oracle = ConvexPolygon::new(common::convex_hull(sums)).unwrap();
    assert!(oracle.same_cycle(&mix, tol));
    assert_eq!(oracle.area().raw_cmp(&mix.area()), Ordering::Equal);

    let gap = mix.area().to_f64().sqrt()
        - 0.5 * (square.area().to_f64().sqrt() + triangle.area().to_f64().sqrt());
    assert!(gap >= 0.1, "square/triangle mix gap {gap} too small");
    assert!(homothety_between(&square, &triangle, tol).is_none());

    // Every prism slice shares one translation class.
    let boxes = BoxTower::default();
    let family: Vec<(Vec<i64>, ConvexPolygon)> = (-5..=5)
        .map(|z| {
            let poly = boxes
                .slice(&[int(z)], tol)
                .expect("box slice")
                .as_polygon()
                .expect("square slice");
            (vec![z], poly)
        })
        .collect();
    let classes = translation_classes(&family, tol).expect("class report");
    assert_eq!(classes.class_count(), 1);

    // The interleaved family needs exactly two classes, within the 2^d cap.
    let family = interleaved_squares(-5, 5);
    let classes = translation_classes(&family, tol).expect("class report");
    assert_eq!(classes.class_count(), 2);
    assert!(classes.class_count() <= 2usize.pow(1));

    println!(
        "criterion 7: PASS (tight translate mix, strict triangle mix at 5/4, class counts 1 and 2)"
    );
}

#[test]
fn criterion_8_equivalence_hierarchy_on_random_pairs() {
    let tol = Tol::default();
    let mut rng = ChaCha8Rng::seed_from_u64(88);

    let mut translations = 0usize;
    let mut affinities = 0usize;
    let mut comb = 0usize;
    for trial in 0..500usize {
        let p = common::random_polygon(&mut rng, 8);
        let q = match trial % 3 {
            0 => {
                let t = [ratio(rng.gen_range(-12..=12), 2), ratio(rng.gen_range(-12..=12), 2)];
                p.translate(&t)
            }
            1 => {
                // Random rational map with positive determinant.
                let entry = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(-4..=4i64), 2);
                let (a, b, c, d) = loop {
                    let (a, b, c, d) =
                        (entry(&mut rng), entry(&mut rng), entry(&mut rng), entry(&mut rng));
                    let det = &(&a * &d) - &(&b * &c);
                    if det.raw_cmp(&Scalar::zero()) == Ordering::Greater {
                        break (a, b, c, d);
                    }
                };
                let mapped = p
                    .vertices()
                    .iter()
                    .map(|v| {
                        [
                            &(&a * &v[0]) + &(&b * &v[1]),
                            &(&c * &v[0]) + &(&d * &v[1]),
                        ]
                    })
                    .collect();
                ConvexPolygon::new(mapped).expect("affine image stays convex")
            }
            _ => common::random_polygon(&mut rng, 8),
        };

        let t = translation_equivalent(&p, &q, tol);
        let a = affine_equivalent(&p, &q, tol);
        let c = combinatorially_equivalent(&p, &q);
        if t {
            assert!(a, "trial {trial}: translation equivalence without affine");
            translations += 1;
        }
        if a {
            assert!(c, "trial {trial}: affine equivalence without matching type");
            affinities += 1;
        }
        if c {
            comb += 1;
        }
        match trial % 3 {
            0 => assert!(t, "trial {trial}: constructed translate not recognized"),
            1 => assert!(a, "trial {trial}: constructed affine image not recognized"),
            _ => {}
        }
    }
    assert!(translations >= 100, "only {translations} translation pairs");
    assert!(affinities >= 150, "only {affinities} affine pairs");
    assert!(comb >= affinities);

    // The first ten tower bodies have strictly increasing side counts, so
    // they are pairwise combinatorially inequivalent.
    let bodies: Vec<ConvexPolygon> = (1..=10).map(|i| body(i).unwrap()).collect();
    for a in 0..bodies.len() {
        for b in a + 1..bodies.len() {
            assert!(
                !combinatorially_equivalent(&bodies[a], &bodies[b]),
                "bodies {} and {} share a combinatorial type",
                a + 1,
                b + 1
            );
        }
    }

    println!(
        "criterion 8: PASS (500 pairs: {translations} translations, {affinities} affine, hierarchy preserved; 10 bodies pairwise distinct)"
    );
}
