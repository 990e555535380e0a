use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troplag::constructions::{
    klein_threshold, rp2_curve, triangle_check, trop_family, visible_segment, Fit, TriangleVerdict,
};
use troplag::diagram::{BaseDiagram, HomologyModel};
use troplag::homology::{
    audin_check, mod2_class, pontryagin_square, sweep_parity_at, witness_lines, AudinVerdict,
    SweepDirection,
};
use troplag::lattice::{frac, int, IntVec, RatPoint};
use troplag::sampling::random_rp2_instance;
use troplag::topology::{analyze, build_presentation, oracle_classify, EndKind};
use troplag::Error;

#[test]
fn family_invariants() {
    for ell in 1..=8u64 {
        let f = trop_family(ell).unwrap();
        let a = analyze(&f.diagram, &f.curve).unwrap();
        assert_eq!(a.class, f.expected, "ell={ell}");
        assert_eq!(
            oracle_classify(&build_presentation(&f.diagram, &f.curve).unwrap()).unwrap(),
            f.expected
        );
        assert_eq!(a.multiplicities.len() as u64, 4 * ell);
        assert!(a.multiplicities.iter().all(|(_, m)| *m == 5));
        assert_eq!(a.count(EndKind::CrossCap) as u64, 4 * ell + 2);
        assert_eq!(a.class.euler_char, -20 * ell as i64);
        for dir in [SweepDirection::Horizontal, SweepDirection::Vertical] {
            let lines = witness_lines(&f.diagram, &f.curve, dir).unwrap();
            let expected = u8::from(dir == SweepDirection::Vertical);
            for t in lines.iter().take(2) {
                assert_eq!(
                    sweep_parity_at(&f.diagram, &f.curve, dir, t)
                        .unwrap()
                        .parity,
                    expected
                );
            }
        }
        let class = mod2_class(&f.diagram, &f.curve).unwrap();
        let p2 = pontryagin_square(f.diagram.homology(), &class.lift()).unwrap();
        assert_eq!(audin_check(p2, a.class.euler_char), AudinVerdict::Pass);
    }
}

#[test]
fn klein_bottle_class_and_audin() {
    let r = BaseDiagram::rectangle(int(4), frac(5, 2)).unwrap();
    let c = visible_segment(&r, IntVec::new(2, 1), &RatPoint::new(int(2), frac(5, 4))).unwrap();
    let a = analyze(&r, &c).unwrap();
    assert_eq!(a.count(EndKind::CrossCap), 2);
    let class = mod2_class(&r, &c).unwrap();
    assert_eq!(class.coefficients, vec![1, 0]);
    let p2 = pontryagin_square(r.homology(), &class.lift()).unwrap();
    assert_eq!(audin_check(p2, a.class.euler_char), AudinVerdict::Pass);
}

#[test]
fn triangle_equalities_are_violations() {
    let (one, two) = (int(1), int(2));
    for (a, b, c) in [(&two, &one, &one), (&one, &two, &one), (&one, &one, &two)] {
        assert!(
            matches!(triangle_check(a, b, c).unwrap(), TriangleVerdict::Violated(v) if v.len() == 1)
        );
    }
}

#[test]
fn rp2_iff_triangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut checked, mut excluded) = (0, 0);
    for _ in 0..200 {
        let (a, b, c, s) = random_rp2_instance(&mut rng);
        let satisfied = triangle_check(&a, &b, &c).unwrap() == TriangleVerdict::Satisfied;
        let is_rp2 = match rp2_curve(a, b, c, s) {
            Ok((d, curve)) => {
                analyze(&d, &curve).unwrap().class.common_name() == Some("real projective plane")
            }
            Err(Error::DegenerateConstruction(m)) if m.contains("corner") => {
                excluded += 1;
                continue;
            }
            Err(Error::DegenerateConstruction(_)) => false,
            Err(e) => panic!("{e}"),
        };
        assert_eq!(is_rp2, satisfied);
        checked += 1;
    }
    assert!(
        checked >= 150,
        "only {checked} usable triples ({excluded} degenerate)"
    );
}

#[test]
fn klein_threshold_matches_construction() {
    // centred anchor: the line fits exactly when klein_threshold says so
    for (w, h) in [
        (int(4), frac(5, 2)),
        (int(2), int(1)),
        (int(2), frac(3, 2)),
        (int(6), frac(31, 10)),
        (int(6), int(3)),
    ] {
        let r = BaseDiagram::rectangle(w.clone(), h.clone()).unwrap();
        let anchor = RatPoint::new(&w / int(2), &h / int(2));
        let fits = visible_segment(&r, IntVec::new(2, 1), &anchor).is_ok();
        assert_eq!(
            fits,
            klein_threshold(&w, &h).unwrap() == Fit::Fits,
            "{w} x {h}"
        );
    }
}

proptest! {
    #[test]
    fn pontryagin_square_ignores_the_lift(
        c in proptest::collection::vec(-50i64..50, 3),
        x in proptest::collection::vec(-50i64..50, 3),
    ) {
        for model in [HomologyModel::product_of_spheres(), HomologyModel::triple_blowup()] {
            let n = model.rank();
            let base = &c[..n];
            let lifted: Vec<i64> = base.iter().zip(&x).map(|(ci, xi)| ci + 2 * xi).collect();
            prop_assert_eq!(
                pontryagin_square(&model, base).unwrap(),
                pontryagin_square(&model, &lifted).unwrap()
            );
        }
    }
}
