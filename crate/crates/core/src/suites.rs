//! Verification suites and sweeps that back the command-line tool.

use std::f64::consts::FRAC_PI_4;

use crate::canonical::{canonical_gate, edge_point, named_gate, EdgeId, WeylPoint};
use crate::classify::{chamber_lattice, PointEvaluation};
use crate::entangling::{ep_closed_form, ep_from_g1_abs, ep_monte_carlo, ep_operator_exact, EpEstimate};
use crate::error::{Error, Result};
use crate::invariants::{g1_abs_closed, g2_closed, g2_closed_product_form, invariants_from_matrix};
use crate::par::{self, Execution};
use crate::rng::Xoshiro256;
use crate::sampling::chamber_point;

/// One row of a chamber or edge sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub point: WeylPoint,
    pub g1_abs: f64,
    pub g2: f64,
    pub ep: f64,
    pub pe_geometric: bool,
    pub pe_invariant: bool,
}

impl From<PointEvaluation> for ScanRow {
    fn from(e: PointEvaluation) -> Self {
        ScanRow {
            point: e.point,
            g1_abs: e.g1_abs,
            g2: e.g2,
            ep: e.ep,
            pe_geometric: e.geometric.is_pe,
            pe_invariant: e.invariant.is_pe,
        }
    }
}

fn rows_for(points: &[WeylPoint]) -> Result<Vec<ScanRow>> {
    par::map_indices(Execution::default(), points.len(), |i| {
        PointEvaluation::new(points[i]).map(ScanRow::from)
    })
    .into_iter()
    .collect()
}

/// Chamber points of the `grid_n³` lattice, in lattice order.
pub fn scan_chamber(grid_n: usize) -> Result<Vec<ScanRow>> {
    if grid_n < 2 {
        return Err(Error::OutOfRange {
            what: "grid_n",
            value: grid_n as f64,
            range: ">= 2",
        });
    }
    rows_for(&chamber_lattice(grid_n))
}

/// `steps` evenly spaced points along an edge, `t = 0` to `t = 1`.
pub fn scan_edge(edge: EdgeId, steps: usize) -> Result<Vec<ScanRow>> {
    if steps < 2 {
        return Err(Error::OutOfRange {
            what: "steps",
            value: steps as f64,
            range: ">= 2",
        });
    }
    let points = (0..steps)
        .map(|k| edge_point(edge, k as f64 / (steps - 1) as f64))
        .collect::<Result<Vec<_>>>()?;
    rows_for(&points)
}

/// Worst disagreement between independent routes over random chamber points.
#[derive(Clone, Debug, PartialEq)]
pub struct RoutesReport {
    pub n: usize,
    pub seed: u64,
    /// e_P closed form vs (2/9)(1 − |G1|).
    pub ep_closed_vs_g1: f64,
    /// e_P closed form vs the operator formula on the canonical matrix.
    pub ep_closed_vs_operator: f64,
    /// The two closed forms of G2.
    pub g2_forms: f64,
    /// Closed-form (|G1|, G2) vs the magic-basis route on the canonical matrix.
    pub invariants_closed_vs_matrix: f64,
}

impl RoutesReport {
    pub const EP_CLOSED_TOL: f64 = 1e-12;
    pub const EP_OPERATOR_TOL: f64 = 1e-10;
    pub const G2_FORMS_TOL: f64 = 1e-12;
    pub const MATRIX_TOL: f64 = 1e-10;

    /// `(label, observed, tolerance)` for every comparison.
    pub fn comparisons(&self) -> [(&'static str, f64, f64); 4] {
        [
            (
                "ep closed form vs |G1| relation",
                self.ep_closed_vs_g1,
                Self::EP_CLOSED_TOL,
            ),
            (
                "ep closed form vs operator formula",
                self.ep_closed_vs_operator,
                Self::EP_OPERATOR_TOL,
            ),
            ("G2 product form vs cosine form", self.g2_forms, Self::G2_FORMS_TOL),
            (
                "invariants closed form vs matrix",
                self.invariants_closed_vs_matrix,
                Self::MATRIX_TOL,
            ),
        ]
    }

    pub fn passed(&self) -> bool {
        self.comparisons().iter().all(|(_, got, tol)| *got < *tol)
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct RouteErrors {
    closed_vs_g1: f64,
    closed_vs_operator: f64,
    g2_forms: f64,
    matrix: f64,
}

impl RouteErrors {
    fn max(self, o: RouteErrors) -> RouteErrors {
        RouteErrors {
            closed_vs_g1: self.closed_vs_g1.max(o.closed_vs_g1),
            closed_vs_operator: self.closed_vs_operator.max(o.closed_vs_operator),
            g2_forms: self.g2_forms.max(o.g2_forms),
            matrix: self.matrix.max(o.matrix),
        }
    }
}

fn route_errors(p: WeylPoint) -> Result<RouteErrors> {
    let ep = ep_closed_form(p);
    let u = canonical_gate(p);
    let inv = invariants_from_matrix(&u)?;
    Ok(RouteErrors {
        closed_vs_g1: (ep - ep_from_g1_abs(g1_abs_closed(p))?).abs(),
        closed_vs_operator: (ep - ep_operator_exact(&u)?).abs(),
        g2_forms: (g2_closed(p) - g2_closed_product_form(p)).abs(),
        matrix: (inv.g1_abs() - g1_abs_closed(p))
            .abs()
            .max((inv.g2 - g2_closed(p)).abs()),
    })
}

/// `n` random chamber points drawn from `seed`.
pub fn random_chamber_points(n: usize, seed: u64) -> Vec<WeylPoint> {
    let mut rng = Xoshiro256::seed_from_u64(seed);
    (0..n).map(|_| chamber_point(&mut rng)).collect()
}

pub fn verify_routes(n: usize, seed: u64) -> Result<RoutesReport> {
    verify_routes_with(n, seed, Execution::default())
}

pub fn verify_routes_with(n: usize, seed: u64, exec: Execution) -> Result<RoutesReport> {
    let points = random_chamber_points(n, seed);
    let errors = par::map_indices(exec, points.len(), |i| route_errors(points[i]));
    let mut worst = RouteErrors::default();
    for e in errors {
        worst = worst.max(e?);
    }
    Ok(RoutesReport {
        n,
        seed,
        ep_closed_vs_g1: worst.closed_vs_g1,
        ep_closed_vs_operator: worst.closed_vs_operator,
        g2_forms: worst.g2_forms,
        invariants_closed_vs_matrix: worst.matrix,
    })
}

/// Monte-Carlo estimate of one gate against its analytic value.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloRow {
    pub name: String,
    pub point: WeylPoint,
    pub analytic: f64,
    pub estimate: EpEstimate,
}

impl MonteCarloRow {
    /// Allowed |mean − analytic|: the larger of 3 standard errors and 5e−3.
    pub fn tolerance(&self) -> f64 {
        (3.0 * self.estimate.std_err).max(5e-3)
    }

    pub fn deviation(&self) -> f64 {
        (self.estimate.mean - self.analytic).abs()
    }

    pub fn passed(&self) -> bool {
        let within = self.deviation() <= self.tolerance();
        // A local gate leaves every product state unentangled.
        let exact_zero = self.analytic != 0.0 || self.name != "IDENTITY" || self.estimate.mean == 0.0;
        within && exact_zero
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarloReport {
    pub n_samples: usize,
    pub seed: u64,
    pub rows: Vec<MonteCarloRow>,
}

impl MonteCarloReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(MonteCarloRow::passed)
    }
}

/// Catalog gates checked by [`verify_montecarlo`], plus one random chamber point.
pub const MONTE_CARLO_GATES: [&str; 6] = ["IDENTITY", "SWAP", "CNOT_CLASS", "DCNOT", "SQRT_SWAP", "B_GATE"];

pub fn verify_montecarlo(n_samples: usize, seed: u64) -> Result<MonteCarloReport> {
    let mut targets: Vec<(String, WeylPoint)> = MONTE_CARLO_GATES
        .iter()
        .map(|name| named_gate(name).map(|r| (name.to_string(), r.point.unwrap_or(WeylPoint::new(0.0, 0.0, 0.0)))))
        .collect::<Result<_>>()?;
    let random = random_chamber_points(1, seed)[0];
    targets.push(("RANDOM".to_string(), random));
    let rows = targets
        .into_iter()
        .map(|(name, point)| {
            let estimate = ep_monte_carlo(&canonical_gate(point), n_samples, seed)?;
            Ok(MonteCarloRow {
                name,
                point,
                analytic: ep_closed_form(point),
                estimate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonteCarloReport { n_samples, seed, rows })
}

/// `(1/4) sin²(πt/2)`, the common |G1| profile of LQ, LN and A2P.
pub fn lower_edge_g1_profile(t: f64) -> f64 {
    let s = (2.0 * FRAC_PI_4 * t).sin();
    0.25 * s * s
}
