//! Perfect-entangler classification.
//!
//! Two criteria are implemented. The geometric one needs the Weyl point:
//! `c1 + c2 ≥ π/2` and `c2 + c3 ≤ π/2`, applied in the half chamber
//! `c1 ≤ π/2` (points beyond are mirrored first). The invariant one needs
//! only `(|G1|, G2)`: `|G1| ≤ 1/4` and `−1 ≤ G2 ≤ 1`, so it applies to any
//! matrix. [`verify_theorems`] sweeps a lattice over the chamber and reports
//! every point where the relations between the two criteria fail.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::canonical::{in_weyl_chamber, invariant_tags, mirror, GateRecord, WeylPoint};
use crate::entangling::{ep_closed_form, ep_operator_exact, EP_MAX};
use crate::error::{Error, Result};
use crate::invariants::{g1_complex_closed, g2_closed, invariants_from_matrix, LocalInvariants};
use crate::linalg::Mat4;
use crate::par::{self, Execution};
use crate::tolerance::PE_BOUNDARY;

/// Smallest entangling power of a perfect entangler.
pub const EP_PE_MIN: f64 = 1.0 / 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PeRoute {
    Geometric,
    Invariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeVerdict {
    pub is_pe: bool,
    pub route: PeRoute,
    /// Signed slack of each inequality; nonnegative means satisfied.
    /// Geometric: `(c1+c2−π/2, π/2−c2−c3)` in radians at the half-chamber point.
    /// Invariant: `(1/4−|G1|, G2+1, 1−G2)`.
    pub margins: Vec<f64>,
}

impl PeVerdict {
    fn from_margins(route: PeRoute, margins: Vec<f64>) -> Self {
        let is_pe = margins.iter().all(|&m| m >= -PE_BOUNDARY);
        Self { is_pe, route, margins }
    }

    /// Whether any inequality is within the boundary tolerance of equality.
    pub fn on_boundary(&self) -> bool {
        self.margins.iter().any(|m| m.abs() <= PE_BOUNDARY)
    }
}

/// Geometric criterion. Points with `c1 > π/2` are mirrored to `[π − c1, c2, c3]` first.
pub fn is_pe_geometric(p: WeylPoint) -> Result<PeVerdict> {
    if !in_weyl_chamber(p) {
        return Err(Error::OutsideChamber(p));
    }
    let q = if p.c1 <= FRAC_PI_2 { p } else { mirror(p) };
    Ok(PeVerdict::from_margins(
        PeRoute::Geometric,
        vec![q.c1 + q.c2 - FRAC_PI_2, FRAC_PI_2 - q.c2 - q.c3],
    ))
}

/// Invariant criterion; depends on `g1` only through its modulus.
pub fn is_pe_invariant(inv: &LocalInvariants) -> PeVerdict {
    let g1_abs = inv.g1.norm();
    PeVerdict::from_margins(PeRoute::Invariant, vec![0.25 - g1_abs, inv.g2 + 1.0, 1.0 - inv.g2])
}

#[derive(Clone, Copy, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum GateInput {
    Point(WeylPoint),
    Matrix(Mat4),
}

/// Full record for a gate.
///
/// A Weyl point is classified by both criteria, which must agree. A matrix
/// is classified from its invariants alone, with `e_P` from the operator
/// formula.
pub fn classify_gate(input: GateInput) -> Result<GateRecord> {
    match input {
        GateInput::Point(p) => {
            let geometric = is_pe_geometric(p)?;
            let record = GateRecord::from_point(None, p);
            let invariant = is_pe_invariant(&record.invariants);
            if geometric.is_pe != invariant.is_pe {
                return Err(Error::TheoremViolation {
                    point: p,
                    geometric_pe: geometric.is_pe,
                    geometric_margins: geometric.margins,
                    invariant_pe: invariant.is_pe,
                    invariant_margins: invariant.margins,
                });
            }
            Ok(record)
        }
        GateInput::Matrix(u) => {
            let invariants = invariants_from_matrix(&u)?;
            let ep = ep_operator_exact(&u)?;
            Ok(GateRecord {
                name: None,
                matrix: u,
                point: None,
                invariants,
                ep,
                pe_verdict: is_pe_invariant(&invariants).is_pe,
                tags: invariant_tags(&invariants),
            })
        }
    }
}

/// Point `(i, j, k)` of the `n³` sweep lattice over
/// `[0, π] × [0, π/2] × [0, π/2]`, endpoints included.
pub fn lattice_point(n: usize, i: usize, j: usize, k: usize) -> WeylPoint {
    let step = 1.0 / (n - 1) as f64;
    WeylPoint::new(
        PI * (i as f64 * step),
        FRAC_PI_2 * (j as f64 * step),
        FRAC_PI_2 * (k as f64 * step),
    )
}

/// Every lattice point inside the chamber, in lattice order (c1 slowest).
pub fn chamber_lattice(n: usize) -> Vec<WeylPoint> {
    chamber_lattice_with(n, Execution::default())
}

pub fn chamber_lattice_with(n: usize, exec: Execution) -> Vec<WeylPoint> {
    par::map_indices(exec, n, |i| {
        let mut row = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let p = lattice_point(n, i, j, k);
                if in_weyl_chamber(p) {
                    row.push(p);
                }
            }
        }
        row
    })
    .into_iter()
    .flatten()
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Geometric PE ⇒ −1 ≤ G2 ≤ 1.
    T1,
    /// Geometric non-PE with |G1| ≤ 1/4 ⇒ G2 outside [−1, 1].
    T2,
    /// Geometric verdict equals invariant verdict.
    Eq,
    /// Geometric PE ⇒ 1/6 ≤ e_P ≤ 2/9.
    Range,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::T1, Check::T2, Check::Eq, Check::Range];

    pub fn name(self) -> &'static str {
        match self {
            Check::T1 => "T1",
            Check::T2 => "T2",
            Check::Eq => "EQ",
            Check::Range => "RANGE",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All quantities the sweep computes at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointEvaluation {
    pub point: WeylPoint,
    pub g1_abs: f64,
    pub g2: f64,
    pub ep: f64,
    pub geometric: PeVerdict,
    pub invariant: PeVerdict,
}

impl PointEvaluation {
    pub fn new(p: WeylPoint) -> Result<Self> {
        let geometric = is_pe_geometric(p)?;
        let inv = LocalInvariants {
            g1: g1_complex_closed(p),
            g2: g2_closed(p),
        };
        Ok(Self {
            point: p,
            g1_abs: inv.g1_abs(),
            g2: inv.g2,
            ep: ep_closed_form(p),
            invariant: is_pe_invariant(&inv),
            geometric,
        })
    }

    pub fn on_boundary(&self) -> bool {
        self.geometric.on_boundary() || self.invariant.on_boundary()
    }

    /// Whether `check` holds here; `None` when it does not apply (premise
    /// false, or a boundary point exempt from T2/EQ).
    pub fn check(&self, check: Check) -> Option<bool> {
        let tol = PE_BOUNDARY;
        let geo = self.geometric.is_pe;
        match check {
            Check::T1 => geo.then(|| (-1.0 - tol..=1.0 + tol).contains(&self.g2)),
            Check::T2 => (!geo && !self.on_boundary() && self.g1_abs <= 0.25 + tol)
                .then(|| self.g2 < -1.0 + tol || self.g2 > 1.0 - tol),
            Check::Eq => (!self.on_boundary()).then_some(geo == self.invariant.is_pe),
            Check::Range => geo.then(|| (EP_PE_MIN - tol..=EP_MAX + tol).contains(&self.ep)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub check: Check,
    pub evaluation: PointEvaluation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub grid_n: usize,
    pub lattice_points: usize,
    pub chamber_points: usize,
    pub geometric_pe: usize,
    pub invariant_pe: usize,
    /// Points where the check applied, per check (T1, T2, EQ, RANGE).
    pub checked: [usize; 4],
    /// Points with a margin within tolerance of zero, exempt from T2 and EQ.
    pub boundary_points: Vec<WeylPoint>,
    /// Violations in lattice order; a point may appear once per failed check.
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    pub fn violation_count(&self, check: Check) -> usize {
        self.violations.iter().filter(|v| v.check == check).count()
    }

    pub fn checked_count(&self, check: Check) -> usize {
        self.checked[Check::ALL.iter().position(|&c| c == check).unwrap_or(0)]
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn boundary_fraction(&self) -> f64 {
        self.boundary_points.len() as f64 / self.lattice_points as f64
    }
}

pub const MIN_GRID: usize = 10;

/// Sweeps the `grid_n³` lattice, keeping chamber points, and checks T1, T2,
/// EQ and RANGE at each.
pub fn verify_theorems(grid_n: usize) -> Result<TheoremReport> {
    verify_theorems_with(grid_n, Execution::default())
}

/// [`verify_theorems`] with an explicit execution mode.
pub fn verify_theorems_with(grid_n: usize, exec: Execution) -> Result<TheoremReport> {
    if grid_n < MIN_GRID {
        return Err(Error::OutOfRange {
            what: "grid_n",
            value: grid_n as f64,
            range: ">= 10",
        });
    }
    let points = chamber_lattice_with(grid_n, exec);
    let evaluations = par::map_indices(exec, points.len(), |idx| PointEvaluation::new(points[idx]));
    let mut report = TheoremReport {
        grid_n,
        lattice_points: grid_n * grid_n * grid_n,
        chamber_points: points.len(),
        geometric_pe: 0,
        invariant_pe: 0,
        checked: [0; 4],
        boundary_points: Vec::new(),
        violations: Vec::new(),
    };
    for evaluation in evaluations {
        let evaluation = evaluation?;
        report.geometric_pe += usize::from(evaluation.geometric.is_pe);
        report.invariant_pe += usize::from(evaluation.invariant.is_pe);
        if evaluation.on_boundary() {
            report.boundary_points.push(evaluation.point);
        }
        for (slot, check) in Check::ALL.into_iter().enumerate() {
            match evaluation.check(check) {
                Some(true) => report.checked[slot] += 1,
                Some(false) => {
                    report.checked[slot] += 1;
                    report.violations.push(Violation {
                        check,
                        evaluation: evaluation.clone(),
                    });
                }
                None => {}
            }
        }
    }
    Ok(report)
}
