//! The acceptance gate: eleven criteria, one PASS/FAIL line each.
//! Every comparison is exact (integers and rationals); no floating tolerance
//! is used anywhere except in the SVG text, which is compared byte for byte.

mod common;

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplag::constructions::{
    genus_bound, klein_threshold_lambda, rp2_curve, squeeze_check, triangle_check, trop_family,
    Fit, GenusBound, GenusWitness, SqueezeVerdict, ThresholdRule, TriangleVerdict,
};
use troplag::homology::{
    audin_check, mod2_class, pontryagin_square, sweep_parity_at, witness_lines, AudinVerdict,
    SweepDirection,
};
use troplag::sampling::{random_curve, random_rp2_instance, random_unimodular_map};
use troplag::topology::{analyze, build_presentation, classify, oracle_classify, EndKind};
use troplag::tropical::{end_multiplicity, validate};
use troplag::{frac, int, BaseDiagram, HomologyModel, RatPoint, Rational, Terminal, TropicalCurve};
use troplag_cli::{parse, serialize, Document};

use common::{figure, golden_dir, troplag, BUNDLED};

/// All numeric comparisons below are exact.
const TOLERANCE: i64 = 0;
const FAMILY_RANGE: std::ops::RangeInclusive<u64> = 1..=5;
const RANDOM_LIFTS: usize = 100;
const RANDOM_TRIPLES: usize = 200;
const RANDOM_CURVES: usize = 500;
const RANDOM_MAPS: usize = 100;
const MAX_VERTICES: usize = 6;
const SEED: u64 = 0x7201_1a95;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn exact(a: i64, b: i64) -> bool {
    (a - b).abs() <= TOLERANCE
}

fn load(name: &str) -> Document {
    parse(&std::fs::read_to_string(figure(name)).unwrap()).unwrap()
}

fn sole(doc: &Document) -> &TropicalCurve {
    &doc.curves[0].curve
}

fn single_vertex_curves() -> Outcome {
    let left = troplag(&["topology", &figure("fig1_left.trop")]);
    ensure!(left.code == 0, "fig1_left exit {}", left.code);
    ensure!(
        left.stdout
            .contains("closed nonorientable, chi=1, k=1 (real projective plane)"),
        "fig1_left report: {}",
        left.stdout
    );
    let doc = load("fig1_left.trop");
    let c = classify(&doc.diagram, sole(&doc)).map_err(|e| e.to_string())?;
    ensure!(
        c.closed && !c.orientable && exact(c.euler_char, 1) && c.nonorientable_genus == Some(1),
        "{c:?}"
    );

    let right = troplag(&["topology", &figure("fig1_right.trop")]);
    ensure!(right.code == 0, "fig1_right exit {}", right.code);
    ensure!(
        right.stdout.contains("boundary circles=1 (disc)"),
        "fig1_right report: {}",
        right.stdout
    );
    let doc = load("fig1_right.trop");
    let c = classify(&doc.diagram, sole(&doc)).map_err(|e| e.to_string())?;
    ensure!(
        c.boundary_circles == 1 && c.orientable && exact(c.euler_char, 1),
        "{c:?}"
    );
    Ok("left RP2 (k=1), right disc".into())
}

fn klein_bottles() -> Outcome {
    // landings recomputed from anchor ± t·(2,1) with t = w/4
    for (file, w, h) in [
        ("fig2_klein.trop", int(4), frac(5, 2)),
        ("fig4_cylinder.trop", int(2), frac(3, 2)),
    ] {
        let doc = load(file);
        ensure!(
            doc.diagram == BaseDiagram::rectangle(w.clone(), h.clone()).unwrap(),
            "{file}: wrong rectangle"
        );
        let t = &w / int(4);
        let (cx, cy) = (&w / int(2), &h / int(2));
        let expected = [
            RatPoint::new(&cx + &t * int(2), &cy + &t),
            RatPoint::new(&cx - &t * int(2), &cy - &t),
        ];
        let c = sole(&doc);
        for (e, want) in c.ends.iter().zip(&expected) {
            ensure!(
                e.terminal
                    == Terminal::Boundary {
                        landing: want.clone()
                    },
                "{file}: end {} lands elsewhere",
                e.id
            );
            let mu = end_multiplicity(&doc.diagram, e).map_err(|e| e.to_string())?;
            ensure!(exact(mu, 2), "{file}: end {} has mu={mu}", e.id);
        }
        let k = classify(&doc.diagram, c).map_err(|e| e.to_string())?;
        ensure!(
            k.closed && !k.orientable && exact(k.euler_char, 0) && k.nonorientable_genus == Some(2),
            "{file}: {k:?}"
        );
    }
    Ok("both instances: closed, chi=0, k=2, mu=(2,2)".into())
}

fn family_pipeline() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_troplag");
    for ell in FAMILY_RANGE {
        let gen = Command::new(exe)
            .args(["gen-family", &ell.to_string()])
            .stdout(Stdio::piped())
            .spawn()
            .map_err(|e| e.to_string())?;
        let check = Command::new(exe)
            .args(["topology", "-"])
            .stdin(gen.stdout.unwrap())
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            check.status.code() == Some(0),
            "ell={ell}: exit {:?}",
            check.status.code()
        );
        let report = String::from_utf8(check.stdout).unwrap();
        let ell = ell as i64;
        let count = |needle: &str| report.lines().filter(|l| l.contains(needle)).count() as i64;
        ensure!(
            report.contains(&format!("  vertices: {}\n", 4 * ell)),
            "ell={ell}: vertex count"
        );
        ensure!(
            exact(count(": m = 5,"), 4 * ell),
            "ell={ell}: m=5 lines {}",
            count(": m = 5,")
        );
        ensure!(
            exact(count(": m = "), 4 * ell),
            "ell={ell}: other multiplicities present"
        );
        ensure!(
            report.contains(&format!("double points surgered = {}\n", 8 * ell)),
            "ell={ell}: double points"
        );
        ensure!(
            report.contains(&format!("cross-caps {},", 4 * ell + 2)),
            "ell={ell}: cross-caps"
        );
        ensure!(
            report.contains(&format!("  chi = {} (", -20 * ell)),
            "ell={ell}: chi"
        );
        ensure!(
            report.contains(&format!(
                "closed nonorientable, chi={}, k={}",
                -20 * ell,
                20 * ell + 2
            )),
            "ell={ell}: class line"
        );
    }
    Ok(format!(
        "gen-family | topology - exact for ell={FAMILY_RANGE:?}"
    ))
}

/// Direct recount of crossings with the line, independent of the library's sweep code.
fn brute_parity(d: &BaseDiagram, c: &TropicalCurve, dir: SweepDirection, at: &Rational) -> i64 {
    let coord = |p: &RatPoint| match dir {
        SweepDirection::Horizontal => p.y.clone(),
        SweepDirection::Vertical => p.x.clone(),
    };
    let mut segments: Vec<(RatPoint, RatPoint)> = Vec::new();
    for e in &c.edges {
        segments.push((
            c.vertex(&e.from).unwrap().position.clone(),
            c.vertex(&e.to).unwrap().position.clone(),
        ));
    }
    for e in &c.ends {
        segments.push((c.end_start(e).unwrap().clone(), c.end_stop(d, e).unwrap()));
    }
    let mut total = 0i64;
    for (p, q) in segments {
        let (a, b) = (coord(&p), coord(&q));
        if (&a < at && at < &b) || (&b < at && at < &a) {
            // local intersection number with the fibre sphere: the lattice
            // length of the segment's projection onto the line direction
            let (dx, dy) = (&q.x - &p.x, &q.y - &p.y);
            let (along, across) = match dir {
                SweepDirection::Horizontal => (dx, dy),
                SweepDirection::Vertical => (dy, dx),
            };
            // reduced along/across = n/g means the primitive direction is ±(n, g)
            let ratio = along / across;
            let n = ratio.numer().clone();
            total += n.abs().to_i64().unwrap();
        }
    }
    total.rem_euclid(2)
}

fn parities() -> Outcome {
    for ell in FAMILY_RANGE {
        let f = trop_family(ell).map_err(|e| e.to_string())?;
        for (dir, want) in [
            (SweepDirection::Horizontal, 0u8),
            (SweepDirection::Vertical, 1u8),
        ] {
            let lines = witness_lines(&f.diagram, &f.curve, dir).map_err(|e| e.to_string())?;
            ensure!(lines.len() >= 2, "ell={ell}: fewer than two witness lines");
            for at in &lines[..2] {
                let p =
                    sweep_parity_at(&f.diagram, &f.curve, dir, at).map_err(|e| e.to_string())?;
                ensure!(
                    p.parity == want,
                    "ell={ell} {dir:?} at {at}: parity {}",
                    p.parity
                );
                let oracle = brute_parity(&f.diagram, &f.curve, dir, at);
                ensure!(
                    exact(oracle, want as i64),
                    "ell={ell} {dir:?} at {at}: recount gives {oracle}"
                );
            }
        }
    }
    Ok("horizontal 0, vertical 1 at two witness lines each, recount agrees".into())
}

fn pontryagin() -> Outcome {
    let s2 = HomologyModel::product_of_spheres();
    let x = HomologyModel::triple_blowup();
    let p = |m: &HomologyModel, c: &[i64]| pontryagin_square(m, c).map_err(|e| e.to_string());
    ensure!(p(&s2, &[0, 1])? == 0, "(0,1)");
    ensure!(p(&s2, &[1, 1])? == 2, "(1,1)");
    ensure!(p(&x, &[1, 1, 1])? == 1, "(1,1,1)");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_LIFTS {
        for (m, base) in [
            (&s2, vec![0, 1]),
            (&s2, vec![1, 1]),
            (&x, vec![1, 1, 1]),
            (&s2, vec![1, 0]),
        ] {
            let lift: Vec<i64> = base
                .iter()
                .map(|c| c + 2 * rng.gen_range(-1000..=1000))
                .collect();
            // Q(c,c) mod 4 recomputed directly
            let form = m.intersection_form();
            let q: i64 = (0..lift.len())
                .flat_map(|i| (0..lift.len()).map(move |j| (i, j)))
                .map(|(i, j)| lift[i] * form[i][j] * lift[j])
                .sum();
            let want = p(m, &base)?;
            ensure!(p(m, &lift)? == want, "lift {lift:?} changes P2");
            ensure!(q.rem_euclid(4) as u8 == want, "direct Q(c,c) for {lift:?}");
        }
    }
    Ok(format!(
        "values 0, 2, 1; {RANDOM_LIFTS} random lifts per class agree"
    ))
}

fn audin() -> Outcome {
    let mut checked = Vec::new();
    let doc = load("fig1_left.trop");
    let class = doc.curves[0]
        .class
        .clone()
        .ok_or("fig1_left has no class")?;
    let chi = classify(&doc.diagram, sole(&doc))
        .map_err(|e| e.to_string())?
        .euler_char;
    let p2 = pontryagin_square(doc.diagram.homology(), &class).map_err(|e| e.to_string())?;
    ensure!(
        audin_check(p2, chi) == AudinVerdict::Pass,
        "fig1_left: P2={p2} chi={chi}"
    );
    checked.push("fig1_left".to_string());
    let mut swept: Vec<(String, BaseDiagram, TropicalCurve)> = Vec::new();
    for file in ["fig2_klein.trop", "fig4_cylinder.trop", "fig3_family2.trop"] {
        let doc = load(file);
        swept.push((file.into(), doc.diagram.clone(), sole(&doc).clone()));
    }
    for ell in FAMILY_RANGE {
        let f = trop_family(ell).map_err(|e| e.to_string())?;
        swept.push((format!("family{ell}"), f.diagram, f.curve));
    }
    for (name, d, c) in &swept {
        let class = mod2_class(d, c).map_err(|e| format!("{name}: {e}"))?;
        let p2 = pontryagin_square(d.homology(), &class.lift()).map_err(|e| e.to_string())?;
        let chi = classify(d, c).map_err(|e| e.to_string())?.euler_char;
        ensure!(
            audin_check(p2, chi) == AudinVerdict::Pass,
            "{name}: P2={p2} chi={chi}"
        );
        checked.push(name.clone());
    }
    ensure!(
        audin_check(0, -1) == AudinVerdict::Fail,
        "synthetic (0,-1) passed"
    );
    Ok(format!(
        "pass on {} closed curves, fail on (P2=0, chi=-1)",
        checked.len()
    ))
}

fn triangles() -> Outcome {
    ensure!(
        triangle_check(&int(1), &int(1), &int(1)) == Ok(TriangleVerdict::Satisfied),
        "(1,1,1)"
    );
    ensure!(
        matches!(
            triangle_check(&frac(2, 3), &frac(5, 3), &frac(2, 3)),
            Ok(TriangleVerdict::Violated(_))
        ),
        "(2/3,5/3,2/3)"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..20 {
        let (p, q, _, _) = random_rp2_instance(&mut rng);
        for (a, b, c) in [
            (&p + &q, p.clone(), q.clone()),
            (p.clone(), &p + &q, q.clone()),
            (p.clone(), q.clone(), &p + &q),
        ] {
            ensure!(
                matches!(triangle_check(&a, &b, &c), Ok(TriangleVerdict::Violated(_))),
                "equality case ({a},{b},{c}) not violated"
            );
        }
    }
    let (mut agree, mut excluded, mut rp2s) = (0, 0, 0);
    for _ in 0..RANDOM_TRIPLES {
        let (a, b, c, s) = random_rp2_instance(&mut rng);
        let satisfied = triangle_check(&a, &b, &c).unwrap() == TriangleVerdict::Satisfied;
        let is_rp2 = match rp2_curve(a.clone(), b.clone(), c.clone(), s) {
            Ok((d, curve)) => {
                classify(&d, &curve)
                    .map_err(|e| e.to_string())?
                    .common_name()
                    == Some("real projective plane")
            }
            Err(troplag::Error::DegenerateConstruction(m)) if m.contains("corner") => {
                excluded += 1;
                continue;
            }
            Err(troplag::Error::DegenerateConstruction(_)) => false,
            Err(e) => return Err(format!("({a},{b},{c}): {e}")),
        };
        ensure!(
            is_rp2 == satisfied,
            "({a},{b},{c}): rp2={is_rp2} satisfied={satisfied}"
        );
        agree += 1;
        rp2s += usize::from(is_rp2);
    }
    Ok(format!(
        "RP2 iff satisfied on {agree} triples ({rp2s} RP2), {excluded} corner landings excluded"
    ))
}

fn thresholds() -> Outcome {
    let s = ThresholdRule::Statement;
    let g = |l: Rational, r| genus_bound(&l, r).map_err(|e| e.to_string());
    ensure!(
        g(frac(3, 2), s)?
            == GenusBound {
                k: 2,
                witness: GenusWitness::KleinBottle
            },
        "3/2"
    );
    ensure!(
        g(int(5), s)?
            == GenusBound {
                k: 22,
                witness: GenusWitness::Family(1)
            },
        "5"
    );
    ensure!(
        g(int(12), s)?
            == GenusBound {
                k: 42,
                witness: GenusWitness::Family(2)
            },
        "12"
    );
    ensure!(
        g(int(11), s)?.witness == GenusWitness::Family(1),
        "11 statement"
    );
    ensure!(
        g(int(11), ThresholdRule::Proof)?.witness == GenusWitness::Family(2),
        "11 proof"
    );
    let cli = troplag(&["genus-bound", "11", "--threshold=proof"]);
    ensure!(
        cli.code == 0 && cli.stdout.contains("ell = 2"),
        "cli --threshold=proof: {}",
        cli.stdout
    );
    ensure!(
        squeeze_check(&int(1)) == Ok(SqueezeVerdict::NoneByVisibleConstruction),
        "squeeze 1"
    );
    ensure!(
        matches!(
            squeeze_check(&frac(101, 100)),
            Ok(SqueezeVerdict::VisibleKleinBottleExists { .. })
        ),
        "squeeze 101/100"
    );
    ensure!(
        klein_threshold_lambda(&int(2)) == Ok(Fit::DoesNotFit),
        "lambda=2 fits"
    );
    ensure!(
        klein_threshold_lambda(&frac(1999, 1000)) == Ok(Fit::Fits),
        "lambda=1999/1000 does not fit"
    );
    Ok("genus_bound, squeeze and klein threshold boundaries as required".into())
}

fn bundled_curves() -> Vec<(String, BaseDiagram, TropicalCurve)> {
    BUNDLED
        .iter()
        .map(|f| {
            let doc = load(f);
            (f.to_string(), doc.diagram.clone(), sole(&doc).clone())
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let mut cases = bundled_curves();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_CURVES {
        let (d, c) = random_curve(&mut rng, MAX_VERTICES);
        cases.push((format!("random #{i}"), d, c));
    }
    for (name, d, c) in &cases {
        let engine = classify(d, c).map_err(|e| format!("{name}: {e}"))?;
        let oracle = build_presentation(d, c)
            .and_then(|p| oracle_classify(&p))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            engine == oracle,
            "{name}: engine {engine:?} oracle {oracle:?}"
        );
    }
    Ok(format!(
        "{} bundled + {RANDOM_CURVES} random curves agree on every field",
        BUNDLED.len()
    ))
}

fn unimodular_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let bundled = bundled_curves();
    for i in 0..RANDOM_MAPS {
        let (d, c) = if i < bundled.len() {
            (bundled[i].1.clone(), bundled[i].2.clone())
        } else {
            random_curve(&mut rng, MAX_VERTICES)
        };
        let m = random_unimodular_map(&mut rng);
        let d2 = d.transformed(&m).map_err(|e| e.to_string())?;
        let c2 = c.transformed(&m).map_err(|e| e.to_string())?;
        ensure!(
            validate(&d, &c).is_valid() == validate(&d2, &c2).is_valid(),
            "#{i}: validation changed"
        );
        let (a, b) = (
            analyze(&d, &c).map_err(|e| e.to_string())?,
            analyze(&d2, &c2).map_err(|e| e.to_string())?,
        );
        ensure!(
            a.multiplicities == b.multiplicities,
            "#{i}: multiplicities changed"
        );
        for (e, f) in c.ends.iter().zip(&c2.ends) {
            if let Terminal::Boundary { .. } = e.terminal {
                ensure!(
                    end_multiplicity(&d, e).ok() == end_multiplicity(&d2, f).ok(),
                    "#{i}: mu of {} changed",
                    e.id
                );
            }
        }
        ensure!(a.chi.total() == b.chi.total(), "#{i}: chi changed");
        ensure!(a.class == b.class, "#{i}: class changed");
        ensure!(
            a.count(EndKind::CrossCap) == b.count(EndKind::CrossCap),
            "#{i}: end kinds changed"
        );
    }
    Ok(format!(
        "{RANDOM_MAPS} maps (bundled figures and random curves)"
    ))
}

fn format_and_render() -> Outcome {
    for file in BUNDLED {
        let text = std::fs::read_to_string(figure(file)).unwrap();
        let doc = parse(&text).map_err(|e| format!("{file}: {e}"))?;
        ensure!(
            parse(&serialize(&doc)).as_ref() == Ok(&doc),
            "{file}: round trip changed the document"
        );
        let a = troplag(&["render", &figure(file)]);
        let b = troplag(&["render", &figure(file)]);
        ensure!(
            a.code == 0 && a.stdout == b.stdout,
            "{file}: render not deterministic"
        );
        let golden_path = golden_dir().join(file.replace(".trop", ".svg"));
        let golden = std::fs::read_to_string(&golden_path)
            .map_err(|e| format!("{}: {e}", golden_path.display()))?;
        ensure!(a.stdout == golden, "{file}: SVG differs from golden");
    }
    Ok(format!(
        "{} documents round-trip; SVGs deterministic and equal to goldens",
        BUNDLED.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("single-vertex curves", single_vertex_curves),
        ("klein bottle", klein_bottles),
        ("family", family_pipeline),
        ("parities", parities),
        ("pontryagin squares", pontryagin),
        ("audin congruence", audin),
        ("triangle inequalities", triangles),
        ("thresholds", thresholds),
        ("oracle equivalence", oracle_equivalence),
        ("unimodular invariance", unimodular_invariance),
        ("format", format_and_render),
    ];
    let total = Instant::now();
    let mut failed = 0;
    let mut out = std::io::stdout().lock();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        let line = match result {
            Ok(detail) => format!("criterion {:>2} {name}: PASS ({detail}) [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                format!("criterion {:>2} {name}: FAIL ({why}) [{ms} ms]", i + 1)
            }
        };
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(
        out,
        "acceptance: {} of {} criteria passed in {} ms",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_millis()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
