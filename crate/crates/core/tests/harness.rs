use unicover::validate::{batch, make_curve, place_in_covering, standard_batch, CoveringRegion, CurveKind, Mutation, DEFAULT_SAMPLES};
use unicover::{construct, PrecisionContext};

fn region() -> CoveringRegion {
    let c = PrecisionContext::new(30).unwrap();
    let report = construct(&c.parse("1.3").unwrap().to_radians(), c).unwrap();
    CoveringRegion::from_report(&report).unwrap()
}

#[test]
fn thousand_curves_fit_and_every_tenfold_removal_is_caught() {
    let r = region();
    let specs = standard_batch(1000, 2024);
    let base = batch(&specs, &r, DEFAULT_SAMPLES).unwrap();
    assert_eq!(base.contained, 1000, "{:?}", base.failures.first());
    assert_eq!(base.case_counts[0], 0);
    // all three placement cases occur
    assert!(base.case_counts[1..].iter().all(|&n| n > 0), "{:?}", base.case_counts);
    for m in [
        Mutation::InflateWxy { factor: 10.0 },
        Mutation::DeepenCut { triangle: 2, factor: 10.0 },
        Mutation::DeepenCut { triangle: 4, factor: 10.0 },
        Mutation::ShrinkArc { center: 'O', factor: 10.0 },
        Mutation::ShrinkArc { center: 'N', factor: 10.0 },
    ] {
        let s = batch(&specs, &r.mutated(m), DEFAULT_SAMPLES).unwrap();
        assert!(!s.failures.is_empty(), "{m:?} went undetected");
    }
}

#[test]
fn reuleaux_triangle_escapes_an_overcut_covering() {
    // the placement puts the triangle's corners on B, D and F, so the sliver
    // near A must grow past 10³ before it reaches the opposite arc
    let curve = make_curve(CurveKind::Reuleaux { n: 3 }).unwrap();
    let escaped = |factor: f64| {
        let r = region().mutated(Mutation::InflateWxy { factor });
        (0..100)
            .map(|i| place_in_covering(i, &curve, i as f64 * 0.0628, &r, DEFAULT_SAMPLES))
            .filter(|p| !p.contained)
            .count()
    };
    assert_eq!(escaped(1000.0), 0);
    assert!(escaped(3000.0) > 0);
}

#[test]
fn overcut_covering_fails_the_mixed_batch() {
    let r = region().mutated(Mutation::InflateWxy { factor: 1000.0 });
    let s = batch(&standard_batch(200, 7), &r, 6000).unwrap();
    assert!(!s.failures.is_empty());
    assert!(s.failures.iter().all(|f| f.max_violation > 1e-10));
}

#[test]
fn even_reuleaux_polygons_are_rejected() {
    assert!(make_curve(CurveKind::Reuleaux { n: 6 }).is_err());
    assert!(make_curve(CurveKind::PerturbedReuleaux { n: 8, seed: 1 }).is_err());
}
