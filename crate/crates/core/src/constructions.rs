//! Named curves and the thresholds that govern when they exist.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::diagram::{BaseDiagram, DiagramKind, Location};
use crate::error::{Error, Result};
use crate::lattice::{frac, int, IntVec, RatPoint, Rational};
use crate::topology::SurfaceClass;
use crate::tropical::{validate, EndSource, Terminal, TropicalCurve};

/// Vertexless curve along the line through `anchor` with `direction`, in a
/// rectangle. Both ends must land in the open interiors of the vertical sides.
pub fn visible_segment(
    d: &BaseDiagram,
    direction: IntVec,
    anchor: &RatPoint,
) -> Result<TropicalCurve> {
    if !d.is_rectangle() {
        return Err(Error::UnsupportedDiagram(
            "visible segments are built in rectangles".to_string(),
        ));
    }
    if !direction.is_primitive() {
        return Err(Error::NonPrimitiveDirection {
            x: direction.x,
            y: direction.y,
        });
    }
    if d.contains(anchor) != Location::Interior {
        return Err(Error::InvalidInput(format!(
            "anchor {anchor} is not inside the rectangle"
        )));
    }
    let backward = IntVec::new(-direction.x, -direction.y);
    let mut curve = TropicalCurve::new();
    for (id, dir) in [("fwd", direction), ("back", backward)] {
        let landing = d
            .ray_exit(anchor, dir)
            .ok_or_else(|| Error::DoesNotFit("line does not leave the rectangle".to_string()))?;
        match d.contains(&landing) {
            // right and left sides
            Location::OnBoundaryEdge(1) | Location::OnBoundaryEdge(3) => {}
            Location::OnCorner(_) => {
                return Err(Error::DoesNotFit(format!(
                    "line exits through the corner {landing}"
                )))
            }
            _ => {
                return Err(Error::DoesNotFit(format!(
                    "line exits through a horizontal side at {landing}"
                )))
            }
        }
        curve.add_end(
            id,
            EndSource::Point(anchor.clone()),
            dir,
            1,
            Terminal::Boundary { landing },
        )?;
    }
    Ok(curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fit {
    Fits,
    DoesNotFit,
}

/// Whether a slope-1/2 segment can span a `w × h` rectangle with both ends
/// strictly inside the vertical sides: `h > w/2`.
pub fn klein_threshold(w: &Rational, h: &Rational) -> Result<Fit> {
    if !w.is_positive() || !h.is_positive() {
        return Err(Error::InvalidInput(format!(
            "rectangle dimensions must be positive, got {w} x {h}"
        )));
    }
    Ok(if h * int(2) > *w {
        Fit::Fits
    } else {
        Fit::DoesNotFit
    })
}

/// [`klein_threshold`] for `(S²×S², ω_λ)`, modelled by the `2λ × 2` rectangle.
pub fn klein_threshold_lambda(lambda: &Rational) -> Result<Fit> {
    klein_threshold(&(lambda * int(2)), &int(2))
}

/// The single-vertex curve in `X_{a,b,c}` with default node placement.
pub fn rp2_curve(
    a: Rational,
    b: Rational,
    c: Rational,
    s: Rational,
) -> Result<(BaseDiagram, TropicalCurve)> {
    let d = BaseDiagram::x_abc(a, b, c, s)?;
    let curve = rp2_curve_on(&d)?;
    Ok((d, curve))
}

/// The single-vertex curve in a triple blow-up diagram: a vertex at `(a, b)`
/// with ends up to the first node, right to the second, and down-left along
/// `(−1,−1)` to wherever it first meets the boundary.
pub fn rp2_curve_on(d: &BaseDiagram) -> Result<TropicalCurve> {
    let DiagramKind::Xabc { a, b, .. } = d.kind() else {
        return Err(Error::UnsupportedDiagram(
            "the RP² curve lives in a triple blow-up diagram".to_string(),
        ));
    };
    let degenerate = |msg: alloc::string::String| Err(Error::DegenerateConstruction(msg));
    let vertex = RatPoint::new(a.clone(), b.clone());
    match d.contains(&vertex) {
        Location::Interior => {}
        other => {
            return degenerate(format!(
                "vertex {vertex} is not inside the diagram ({other:?})"
            ))
        }
    }
    if d.nodes()[0].position.y <= *b {
        return degenerate(format!(
            "node {} is not above the vertex",
            d.nodes()[0].position
        ));
    }
    if d.nodes()[1].position.x <= *a {
        return degenerate(format!(
            "node {} is not right of the vertex",
            d.nodes()[1].position
        ));
    }
    let third = IntVec::new(-1, -1);
    let landing = d
        .ray_exit(&vertex, third)
        .expect("interior ray leaves the polygon");
    if let Location::OnCorner(_) = d.contains(&landing) {
        return degenerate(format!("third end runs into the corner {landing}"));
    }
    let mut curve = TropicalCurve::new();
    curve.add_vertex("v", vertex);
    curve.add_end(
        "to_a",
        EndSource::Vertex("v".into()),
        IntVec::new(0, 1),
        1,
        Terminal::Node(0),
    )?;
    curve.add_end(
        "to_b",
        EndSource::Vertex("v".into()),
        IntVec::new(1, 0),
        1,
        Terminal::Node(1),
    )?;
    curve.add_end(
        "third",
        EndSource::Vertex("v".into()),
        third,
        1,
        Terminal::Boundary { landing },
    )?;
    let report = validate(d, &curve);
    if let Some(issue) = report.issues.first() {
        return degenerate(format!("constructed curve is invalid: {issue}"));
    }
    Ok(curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleInequality {
    /// `a < b + c`
    A,
    /// `b < c + a`
    B,
    /// `c < a + b`
    C,
}

impl fmt::Display for TriangleInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriangleInequality::A => "a < b+c",
            TriangleInequality::B => "b < c+a",
            TriangleInequality::C => "c < a+b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangleVerdict {
    Satisfied,
    Violated(Vec<TriangleInequality>),
}

/// Strict triangle inequalities on the blow-up sizes; equality is a violation.
pub fn triangle_check(a: &Rational, b: &Rational, c: &Rational) -> Result<TriangleVerdict> {
    if !a.is_positive() || !b.is_positive() || !c.is_positive() {
        return Err(Error::InvalidInput(format!(
            "sizes must be positive, got a={a} b={b} c={c}"
        )));
    }
    let mut violated = Vec::new();
    if a >= &(b + c) {
        violated.push(TriangleInequality::A);
    }
    if b >= &(c + a) {
        violated.push(TriangleInequality::B);
    }
    if c >= &(a + b) {
        violated.push(TriangleInequality::C);
    }
    Ok(if violated.is_empty() {
        TriangleVerdict::Satisfied
    } else {
        TriangleVerdict::Violated(violated)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub ell: u64,
    pub diagram: BaseDiagram,
    pub curve: TropicalCurve,
    pub expected: SurfaceClass,
}

/// The periodic family in the `(10ℓ+2) × 3` rectangle.
///
/// Each period of width 10 has four vertices of multiplicity 5 joined by
/// edges alternating between directions `(3,1)` and `(2,−1)`, with one end
/// per vertex going down along `(−1,−2)` or up along `(1,2)`. All ends meet
/// the boundary with multiplicity 2.
pub fn trop_family(ell: u64) -> Result<FamilyInstance> {
    if ell == 0 {
        return Err(Error::InvalidInput(
            "the family starts at ell = 1".to_string(),
        ));
    }
    let l = i64::try_from(ell).map_err(|_| Error::Overflow)?;
    let width = l
        .checked_mul(10)
        .and_then(|w| w.checked_add(2))
        .ok_or(Error::Overflow)?;
    let diagram = BaseDiagram::rectangle(int(width), int(3))?;
    let mut curve = TropicalCurve::new();

    let mut ids = Vec::new();
    for j in 0..l {
        let base = 10 * j;
        for (k, (x, y)) in [(2, 1), (5, 2), (7, 1), (10, 2)].into_iter().enumerate() {
            let id = format!("v{}", 4 * j as usize + k + 1);
            curve.add_vertex(id.clone(), RatPoint::from_ints(base + x, y));
            ids.push((id, y));
        }
    }
    for (i, pair) in ids.windows(2).enumerate() {
        curve.add_edge(format!("e{}", i + 1), &pair[0].0, &pair[1].0, 1)?;
    }
    let first = &ids[0].0;
    let last = &ids[ids.len() - 1].0;
    curve.add_end(
        "left",
        EndSource::Vertex(first.clone()),
        IntVec::new(-2, 1),
        1,
        Terminal::Boundary {
            landing: RatPoint::from_ints(0, 2),
        },
    )?;
    curve.add_end(
        "right",
        EndSource::Vertex(last.clone()),
        IntVec::new(2, -1),
        1,
        Terminal::Boundary {
            landing: RatPoint::from_ints(width, 1),
        },
    )?;
    for (i, (id, y)) in ids.iter().enumerate() {
        let p = curve.vertex(id).unwrap().position.clone();
        let (name, dir, landing) = if *y == 1 {
            (
                "down",
                IntVec::new(-1, -2),
                RatPoint::new(&p.x - frac(1, 2), int(0)),
            )
        } else {
            (
                "up",
                IntVec::new(1, 2),
                RatPoint::new(&p.x + frac(1, 2), int(3)),
            )
        };
        curve.add_end(
            format!("{name}{}", i + 1),
            EndSource::Vertex(id.clone()),
            dir,
            1,
            Terminal::Boundary { landing },
        )?;
    }

    let expected = SurfaceClass {
        closed: true,
        orientable: false,
        euler_char: -20 * l,
        nonorientable_genus: Some(20 * ell + 2),
        orientable_genus: None,
        boundary_circles: 0,
        double_points_surgered: 8 * ell,
    };
    Ok(FamilyInstance {
        ell,
        diagram,
        curve,
        expected,
    })
}

/// Which λ threshold the family bound uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdRule {
    /// `λ < 10ℓ + 2`
    #[default]
    Statement,
    /// `λ < 10ℓ + 1`
    Proof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusWitness {
    KleinBottle,
    Family(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusBound {
    pub k: u64,
    pub witness: GenusWitness,
}

/// Upper bound on the minimal nonorientable genus in `(S²×S², ω_λ)` for the
/// class of the sphere over a horizontal segment.
pub fn genus_bound(lambda: &Rational, rule: ThresholdRule) -> Result<GenusBound> {
    if !lambda.is_positive() {
        return Err(Error::InvalidInput(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if lambda < &int(2) {
        return Ok(GenusBound {
            k: 2,
            witness: GenusWitness::KleinBottle,
        });
    }
    let offset = match rule {
        ThresholdRule::Statement => int(2),
        ThresholdRule::Proof => int(1),
    };
    // smallest ℓ ≥ 1 with λ < 10ℓ + offset
    let q = (lambda - offset) / int(10);
    let ell = q
        .numer()
        .div_floor(q.denom())
        .to_u64()
        .ok_or(Error::Overflow)?
        + 1;
    Ok(GenusBound {
        k: 20 * ell + 2,
        witness: GenusWitness::Family(ell),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SqueezeVerdict {
    VisibleKleinBottleExists {
        diagram: BaseDiagram,
        curve: TropicalCurve,
    },
    /// No visible Klein bottle fits. For `|I| ≤ 1` any Lagrangian Klein bottle
    /// in the class is also known to induce zero on `H₁(·; ℚ)`; reports cite
    /// this fact without computing it.
    NoneByVisibleConstruction,
}

/// Whether the slope-1/2 Klein bottle fits in `S² × (cylinder of area |I|)`,
/// modelled by the `2 × |I|` rectangle with its horizontal sides removed.
pub fn squeeze_check(interval_length: &Rational) -> Result<SqueezeVerdict> {
    if !interval_length.is_positive() {
        return Err(Error::InvalidInput(format!(
            "interval length must be positive, got {interval_length}"
        )));
    }
    if interval_length <= &int(1) {
        return Ok(SqueezeVerdict::NoneByVisibleConstruction);
    }
    let diagram = BaseDiagram::rectangle(int(2), interval_length.clone())?;
    let anchor = RatPoint::new(int(1), interval_length / int(2));
    let curve = visible_segment(&diagram, IntVec::new(2, 1), &anchor)?;
    Ok(SqueezeVerdict::VisibleKleinBottleExists { diagram, curve })
}
