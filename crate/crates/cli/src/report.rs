//! Line-oriented reports. Every number is printed next to what it was computed from.

use troplag::constructions::{
    genus_bound, squeeze_check, triangle_check, GenusWitness, SqueezeVerdict, ThresholdRule,
    TriangleInequality, TriangleVerdict,
};
use troplag::homology::{
    audin_check, genus_spectrum, mod2_class, pontryagin_square, sweep_parity, witness_lines,
    AudinVerdict, Mod2Class, SweepDirection,
};
use troplag::topology::{analyze, EndKind};
use troplag::tropical::{end_multiplicity, landing_edge, validate, vertex_double_points};
use troplag::{BaseDiagram, Rational, Terminal};

use crate::format::{int_tuple, Document, NamedCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    CheckFailed,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::CheckFailed => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub status: Status,
}

struct Builder {
    text: String,
    status: Status,
}

impl Builder {
    fn new() -> Self {
        Builder {
            text: String::new(),
            status: Status::Pass,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn worsen(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    fn finish(self) -> Report {
        Report {
            text: self.text,
            status: self.status,
        }
    }
}

fn header(b: &mut Builder, doc: &Document) {
    b.line(format!("diagram: {}", doc.diagram.name()));
    if doc.curves.is_empty() {
        b.line("no curves");
    }
}

pub fn validate_report(doc: &Document) -> Report {
    let mut b = Builder::new();
    header(&mut b, doc);
    for nc in &doc.curves {
        let report = validate(&doc.diagram, &nc.curve);
        if report.is_valid() {
            b.line(format!("curve {}: valid", nc.name));
        } else {
            b.worsen(Status::CheckFailed);
            b.line(format!(
                "curve {}: invalid ({} issues)",
                nc.name,
                report.issues.len()
            ));
            for issue in &report.issues {
                b.line(format!("  - {issue}"));
            }
        }
    }
    b.finish()
}

fn end_line(d: &BaseDiagram, nc: &NamedCurve, i: usize, kind: EndKind) -> String {
    let e = &nc.curve.ends[i];
    match &e.terminal {
        Terminal::Node(n) => format!("    {}: {} at node {n} (chi +1)", e.id, kind.label()),
        Terminal::Boundary { landing } => {
            let mu = end_multiplicity(d, e).expect("classified");
            let edge = landing_edge(d, e).expect("classified");
            format!(
                "    {}: {}, mu = {mu} at {landing} on edge {edge} (chi {:+})",
                e.id,
                kind.label(),
                kind.euler_contribution()
            )
        }
    }
}

pub fn topology_report(doc: &Document) -> Report {
    let mut b = Builder::new();
    header(&mut b, doc);
    let d = &doc.diagram;
    for nc in &doc.curves {
        b.line(format!("curve {}", nc.name));
        let a = match analyze(d, &nc.curve) {
            Ok(a) => a,
            Err(e) => {
                b.worsen(Status::CheckFailed);
                b.line(format!("  error: {e}"));
                continue;
            }
        };
        b.line(format!("  vertices: {}", a.multiplicities.len()));
        for (v, (id, m)) in nc.curve.vertices.iter().zip(&a.multiplicities) {
            let dp = vertex_double_points(*m).expect("odd multiplicity");
            b.line(format!(
                "    {id} at {}: m = {m}, double points = {dp}",
                v.position
            ));
        }
        b.line(format!(
            "  ends: {} (node-caps {}, cross-caps {}, collars {})",
            a.end_kinds.len(),
            a.count(EndKind::DiscCap),
            a.count(EndKind::CrossCap),
            a.count(EndKind::Collar)
        ));
        for (i, (_, kind)) in a.end_kinds.iter().enumerate() {
            b.line(end_line(d, nc, i, *kind));
        }
        b.line(format!(
            "  double points surgered = {}",
            a.class.double_points_surgered
        ));
        b.line(format!(
            "  chi = {} (vertices {:+}, caps {:+}, surgeries {:+})",
            a.chi.total(),
            a.chi.vertices,
            a.chi.caps,
            a.chi.surgeries
        ));
        b.line(format!("  {}", a.class));
    }
    b.finish()
}

fn basis(d: &BaseDiagram) -> String {
    format!("({})", d.homology().basis_labels().join(","))
}

enum ClassSource {
    Sweeps(Mod2Class),
    Assigned(Vec<i64>),
}

/// The class of a curve: from line sweeps when the diagram has them, else as assigned.
fn class_of(b: &mut Builder, d: &BaseDiagram, nc: &NamedCurve) -> Option<ClassSource> {
    let model = d.homology();
    if let Some(assigned) = &nc.class {
        if assigned.len() != model.rank() {
            b.worsen(Status::InputError);
            b.line(format!(
                "  error: assigned class {} has {} coefficients, basis {} has {}",
                int_tuple(assigned),
                assigned.len(),
                basis(d),
                model.rank()
            ));
            return None;
        }
    }
    if model.horizontal_sweep_class().is_some() && model.vertical_sweep_class().is_some() {
        for dir in [SweepDirection::Horizontal, SweepDirection::Vertical] {
            let (name, axis) = match dir {
                SweepDirection::Horizontal => ("horizontal", "y"),
                SweepDirection::Vertical => ("vertical", "x"),
            };
            match sweep_parity(d, &nc.curve, dir) {
                Ok(p) => {
                    let lines = witness_lines(d, &nc.curve, dir)
                        .map(|l| l.len())
                        .unwrap_or(0);
                    b.line(format!(
                        "  {name} sweep: parity {} at {axis} = {} (midpoint of the widest of {lines} gaps)",
                        p.parity, p.witness_line_coordinate
                    ));
                }
                Err(e) => {
                    b.worsen(Status::CheckFailed);
                    b.line(format!("  error: {e}"));
                    return None;
                }
            }
        }
        let class = match mod2_class(d, &nc.curve) {
            Ok(c) => c,
            Err(e) => {
                b.worsen(Status::CheckFailed);
                b.line(format!("  error: {e}"));
                return None;
            }
        };
        b.line(format!(
            "  class mod 2 = {class} in basis {} from the sweeps",
            basis(d)
        ));
        if let Some(assigned) = &nc.class {
            if Mod2Class::from_integral(assigned) != class {
                b.worsen(Status::CheckFailed);
                b.line(format!(
                    "  assigned class {} disagrees with the sweeps mod 2",
                    int_tuple(assigned)
                ));
            }
        }
        return Some(ClassSource::Sweeps(class));
    }
    match &nc.class {
        Some(assigned) => {
            b.line(format!(
                "  class = {} in basis {} as assigned (mod 2: {})",
                int_tuple(assigned),
                basis(d),
                Mod2Class::from_integral(assigned)
            ));
            Some(ClassSource::Assigned(assigned.clone()))
        }
        None => {
            b.worsen(Status::InputError);
            b.line("  error: this diagram has no line sweeps; assign the class with a `class (...)` line");
            None
        }
    }
}

fn pontryagin_line(b: &mut Builder, d: &BaseDiagram, source: &ClassSource) -> Option<u8> {
    let lift = match source {
        ClassSource::Sweeps(c) => c.lift(),
        ClassSource::Assigned(v) => v.clone(),
    };
    let model = d.homology();
    match (model.pair(&lift, &lift), pontryagin_square(model, &lift)) {
        (Ok(q), Ok(p2)) => {
            b.line(format!(
                "  P2 = {p2} (Q(c,c) = {q} for the lift c = {})",
                int_tuple(&lift)
            ));
            Some(p2)
        }
        (Err(e), _) | (_, Err(e)) => {
            b.worsen(Status::InputError);
            b.line(format!("  error: {e}"));
            None
        }
    }
}

pub fn homology_report(doc: &Document) -> Report {
    let mut b = Builder::new();
    header(&mut b, doc);
    for nc in &doc.curves {
        b.line(format!("curve {}", nc.name));
        if let Some(source) = class_of(&mut b, &doc.diagram, nc) {
            pontryagin_line(&mut b, &doc.diagram, &source);
        }
    }
    b.finish()
}

pub fn audin_report(doc: &Document) -> Report {
    let mut b = Builder::new();
    header(&mut b, doc);
    for nc in &doc.curves {
        b.line(format!("curve {}", nc.name));
        let class = match analyze(&doc.diagram, &nc.curve) {
            Ok(a) => a.class,
            Err(e) => {
                b.worsen(Status::CheckFailed);
                b.line(format!("  error: {e}"));
                continue;
            }
        };
        b.line(format!("  {class}"));
        if !class.closed || class.orientable {
            b.line("  audin: not applicable (needs a closed nonorientable surface)");
            continue;
        }
        let Some(source) = class_of(&mut b, &doc.diagram, nc) else {
            continue;
        };
        let Some(p2) = pontryagin_line(&mut b, &doc.diagram, &source) else {
            continue;
        };
        let chi = class.euler_char;
        let verdict = audin_check(p2, chi);
        let word = match verdict {
            AudinVerdict::Pass => "pass",
            AudinVerdict::Fail => {
                b.worsen(Status::CheckFailed);
                "fail"
            }
        };
        b.line(format!(
            "  audin: {word} (P2 = {p2}, chi mod 4 = {})",
            chi.rem_euclid(4)
        ));
        if verdict == AudinVerdict::Pass {
            let k = class.nonorientable_genus.expect("closed nonorientable");
            if let Ok(spectrum) = genus_spectrum(k) {
                b.line(format!("  genera allowed from k = {k}: {spectrum}"));
            }
        }
    }
    b.finish()
}

pub fn triangle_report(a: &Rational, b_: &Rational, c: &Rational) -> Report {
    let mut b = Builder::new();
    let all = [
        TriangleInequality::A,
        TriangleInequality::B,
        TriangleInequality::C,
    ];
    let list = |v: &[TriangleInequality]| {
        v.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    match triangle_check(a, b_, c) {
        Ok(TriangleVerdict::Satisfied) => b.line(format!("satisfied: {}", list(&all))),
        Ok(TriangleVerdict::Violated(v)) => {
            b.worsen(Status::CheckFailed);
            b.line(format!("violated: {}", list(&v)));
        }
        Err(e) => {
            b.worsen(Status::InputError);
            b.line(format!("error: {e}"));
        }
    }
    b.line(format!(
        "  a = {a}, b = {b_}, c = {c}; b+c = {}, c+a = {}, a+b = {}",
        b_ + c,
        c + a,
        a + b_
    ));
    b.finish()
}

pub fn genus_bound_report(lambda: &Rational, rule: ThresholdRule) -> Report {
    let mut b = Builder::new();
    match genus_bound(lambda, rule) {
        Ok(g) => match g.witness {
            GenusWitness::KleinBottle => {
                b.line(format!(
                    "k <= {} (visible Klein bottle: lambda = {lambda} < 2)",
                    g.k
                ));
            }
            GenusWitness::Family(ell) => {
                let (offset, name) = match rule {
                    ThresholdRule::Statement => (2, "statement"),
                    ThresholdRule::Proof => (1, "proof"),
                };
                b.line(format!(
                    "k <= {} (tropical family ell = {ell}: lambda = {lambda} < {} = 10*{ell}+{offset}, {name} threshold; k = 20*{ell}+2)",
                    g.k,
                    10 * ell + offset
                ));
            }
        },
        Err(e) => {
            b.worsen(Status::InputError);
            b.line(format!("error: {e}"));
        }
    }
    b.finish()
}

pub fn squeeze_report(interval: &Rational) -> Report {
    let mut b = Builder::new();
    match squeeze_check(interval) {
        Ok(SqueezeVerdict::VisibleKleinBottleExists { curve, .. }) => {
            let landings: Vec<String> = curve
                .ends
                .iter()
                .filter_map(|e| match &e.terminal {
                    Terminal::Boundary { landing } => Some(landing.to_string()),
                    Terminal::Node(_) => None,
                })
                .collect();
            b.line(format!(
                "exists: visible Klein bottle over the direction (2,1) segment from {} to {} in the 2 x {interval} rectangle",
                landings[1], landings[0]
            ));
        }
        Ok(SqueezeVerdict::NoneByVisibleConstruction) => {
            b.worsen(Status::CheckFailed);
            b.line(format!(
                "none by visible construction: |I| = {interval} <= 1"
            ));
            b.line("  known result, not computed here: for |I| <= 1 any Lagrangian Klein bottle in this class induces the zero map on H1 with rational coefficients");
        }
        Err(e) => {
            b.worsen(Status::InputError);
            b.line(format!("error: {e}"));
        }
    }
    b.finish()
}
