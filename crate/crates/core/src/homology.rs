//! Mod-2 classes of tropical Lagrangians, Pontryagin squares and the Audin congruence.
//!
//! In a rectangle the class is read off by sweeping with a generic horizontal
//! or vertical line. A segment with direction `d` crossing a line with
//! direction `t` meets the sphere over that line `|d·t|` times (its fibre
//! circle is `rot90(d)`, the sphere's is `t`), so the parity of the sum over
//! all crossings is the mod-2 intersection number with that sphere.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::diagram::{BaseDiagram, DiagramKind, HomologyModel};
use crate::error::{Error, Result};
use crate::lattice::{int, rot90, wedge, IntVec, RatPoint, Rational};
use crate::tropical::{validate, TropicalCurve};

/// Minimal nonorientable genus of a nullhomologous Lagrangian when
/// `[ω]·c₁ > 0`: six. A known value, not something this crate computes.
pub const NULLHOMOLOGOUS_MINIMAL_GENUS: u64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mod2Class {
    pub coefficients: Vec<u8>,
}

impl Mod2Class {
    pub fn zero(rank: usize) -> Self {
        Mod2Class {
            coefficients: alloc::vec![0; rank],
        }
    }

    /// The 0/1 integral lift.
    pub fn lift(&self) -> Vec<i64> {
        self.coefficients.iter().map(|&c| c as i64).collect()
    }

    pub fn from_integral(c: &[i64]) -> Self {
        Mod2Class {
            coefficients: c.iter().map(|x| x.rem_euclid(2) as u8).collect(),
        }
    }
}

impl fmt::Display for Mod2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SweepDirection {
    /// Lines `y = const`.
    Horizontal,
    /// Lines `x = const`.
    Vertical,
}

impl SweepDirection {
    /// Primitive direction of the sweep line.
    pub fn line_direction(self) -> IntVec {
        match self {
            SweepDirection::Horizontal => IntVec::new(1, 0),
            SweepDirection::Vertical => IntVec::new(0, 1),
        }
    }

    fn coordinate(self, p: &RatPoint) -> &Rational {
        match self {
            SweepDirection::Horizontal => &p.y,
            SweepDirection::Vertical => &p.x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParity {
    pub direction: SweepDirection,
    pub parity: u8,
    pub witness_line_coordinate: Rational,
}

fn rectangle_extent(d: &BaseDiagram, dir: SweepDirection) -> Result<Rational> {
    match d.kind() {
        DiagramKind::Rectangle { width, height } => Ok(match dir {
            SweepDirection::Horizontal => height.clone(),
            SweepDirection::Vertical => width.clone(),
        }),
        _ => Err(Error::UnsupportedDiagram(
            "line sweeps are only defined for rectangle diagrams".to_string(),
        )),
    }
}

fn curve_segments(d: &BaseDiagram, c: &TropicalCurve) -> Result<Vec<(RatPoint, RatPoint, IntVec)>> {
    validate(d, c).into_result()?;
    let mut out = Vec::new();
    for e in &c.edges {
        let p = c.vertex(&e.from).expect("validated").position.clone();
        let q = c.vertex(&e.to).expect("validated").position.clone();
        out.push((p, q, e.direction));
    }
    for e in &c.ends {
        let p = c.end_start(e).expect("validated").clone();
        let q = c.end_stop(d, e).expect("validated");
        out.push((p, q, e.direction));
    }
    Ok(out)
}

fn critical_coordinates(
    d: &BaseDiagram,
    segments: &[(RatPoint, RatPoint, IntVec)],
    dir: SweepDirection,
) -> Result<BTreeSet<Rational>> {
    let extent = rectangle_extent(d, dir)?;
    let mut set = BTreeSet::new();
    set.insert(Rational::zero());
    set.insert(extent);
    for (p, q, _) in segments {
        set.insert(dir.coordinate(p).clone());
        set.insert(dir.coordinate(q).clone());
    }
    Ok(set)
}

/// Generic sweep-line coordinates: the midpoints of the gaps between
/// consecutive critical coordinates, widest gap first (ties: lowest first).
pub fn witness_lines(
    d: &BaseDiagram,
    c: &TropicalCurve,
    dir: SweepDirection,
) -> Result<Vec<Rational>> {
    let segments = curve_segments(d, c)?;
    let critical: Vec<Rational> = critical_coordinates(d, &segments, dir)?
        .into_iter()
        .collect();
    let mut gaps: Vec<(Rational, Rational)> = critical
        .windows(2)
        .map(|w| (&w[1] - &w[0], (&w[0] + &w[1]) / int(2)))
        .collect();
    gaps.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(gaps.into_iter().map(|(_, mid)| mid).collect())
}

/// Parity of intersection with the sphere over the line at `coordinate`.
pub fn sweep_parity_at(
    d: &BaseDiagram,
    c: &TropicalCurve,
    dir: SweepDirection,
    coordinate: &Rational,
) -> Result<SweepParity> {
    let segments = curve_segments(d, c)?;
    let critical = critical_coordinates(d, &segments, dir)?;
    let extent = rectangle_extent(d, dir)?;
    if !coordinate.is_positive() || coordinate >= &extent || critical.contains(coordinate) {
        return Err(Error::InvalidInput(format!(
            "sweep line at {coordinate} is not generic"
        )));
    }
    let t = dir.line_direction();
    let mut total: i128 = 0;
    for (p, q, direction) in &segments {
        let (a, b) = (dir.coordinate(p), dir.coordinate(q));
        let crosses = (a < coordinate && coordinate < b) || (b < coordinate && coordinate < a);
        if crosses {
            // |rot90(d) ∧ t| = |d·t|
            total += wedge(rot90(*direction)?, t).abs();
        }
    }
    Ok(SweepParity {
        direction: dir,
        parity: (total % 2) as u8,
        witness_line_coordinate: coordinate.clone(),
    })
}

/// Sweep parity at the deterministic witness line (midpoint of the widest gap).
pub fn sweep_parity(
    d: &BaseDiagram,
    c: &TropicalCurve,
    dir: SweepDirection,
) -> Result<SweepParity> {
    let lines = witness_lines(d, c, dir)?;
    sweep_parity_at(d, c, dir, &lines[0])
}

/// Solves `A·x = b` over GF(2); `None` unless the solution is unique.
fn solve_gf2(mut rows: Vec<(Vec<u8>, u8)>, n: usize) -> Option<Vec<u8>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r].0[col] == 1) else {
            continue;
        };
        rows.swap(pivot_row, r);
        for r in 0..rows.len() {
            if r != pivot_row && rows[r].0[col] == 1 {
                let (src, rhs) = rows[pivot_row].clone();
                for (x, s) in rows[r].0.iter_mut().zip(&src) {
                    *x ^= s;
                }
                rows[r].1 ^= rhs;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|(_, rhs)| *rhs == 1) || pivots.len() < n {
        return None;
    }
    let mut x = alloc::vec![0u8; n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r].1;
    }
    Some(x)
}

/// Mod-2 class of the tropical Lagrangian over `c`, resolved through the
/// intersection form from the two sweep parities.
pub fn mod2_class(d: &BaseDiagram, c: &TropicalCurve) -> Result<Mod2Class> {
    let model = d.homology();
    let (Some(hclass), Some(vclass)) =
        (model.horizontal_sweep_class(), model.vertical_sweep_class())
    else {
        return Err(Error::UnsupportedDiagram(
            "diagram has no sweep classes".to_string(),
        ));
    };
    let h = sweep_parity(d, c, SweepDirection::Horizontal)?.parity;
    let v = sweep_parity(d, c, SweepDirection::Vertical)?.parity;
    let n = model.rank();
    let row = |class: &[i64]| -> Vec<u8> {
        (0..n)
            .map(|j| {
                let s: i64 = (0..n)
                    .map(|i| class[i] * model.intersection_form()[i][j])
                    .sum();
                s.rem_euclid(2) as u8
            })
            .collect()
    };
    solve_gf2(alloc::vec![(row(hclass), h), (row(vclass), v)], n)
        .map(|coefficients| Mod2Class { coefficients })
        .ok_or_else(|| Error::InvalidClass("sweeps do not determine a unique class".to_string()))
}

/// `Q(c, c) mod 4` for an integral lift `c`; depends only on `c mod 2`.
pub fn pontryagin_square(model: &HomologyModel, integral_class: &[i64]) -> Result<u8> {
    if integral_class.len() != model.rank() {
        return Err(Error::InvalidClass(format!(
            "class has {} coefficients, basis has {}",
            integral_class.len(),
            model.rank()
        )));
    }
    let q = model.pair(integral_class, integral_class)?;
    Ok(q.rem_euclid(4) as u8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AudinVerdict {
    Pass,
    Fail,
}

/// `P₂(β) ≡ χ(L) (mod 4)`.
pub fn audin_check(p2: u8, chi: i64) -> AudinVerdict {
    if (chi - p2 as i64).rem_euclid(4) == 0 {
        AudinVerdict::Pass
    } else {
        AudinVerdict::Fail
    }
}

/// Realisable nonorientable genera `{k, k+4, k+8, …}` above a minimum `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusSpectrum {
    pub base: u64,
    pub step: u64,
}

impl GenusSpectrum {
    pub fn contains(&self, k: u64) -> bool {
        k >= self.base && (k - self.base).is_multiple_of(self.step)
    }

    pub fn first(&self, n: usize) -> Vec<u64> {
        (0..n as u64).map(|i| self.base + i * self.step).collect()
    }
}

impl fmt::Display for GenusSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}, {}, {}, ...}}",
            self.base,
            self.base + self.step,
            self.base + 2 * self.step
        )
    }
}

pub fn genus_spectrum(k_min: u64) -> Result<GenusSpectrum> {
    if k_min == 0 {
        return Err(Error::InvalidInput(
            "nonorientable genus is at least 1".to_string(),
        ));
    }
    Ok(GenusSpectrum {
        base: k_min,
        step: 4,
    })
}
