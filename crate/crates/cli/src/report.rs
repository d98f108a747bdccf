//! Rendering of analyses, sweeps and suite reports as text, CSV and JSON.

use std::fmt::Write as _;

use nonlocal_core::canonical::{catalog_point, CATALOG_NAMES};
use nonlocal_core::classify::{Check, TheoremReport};
use nonlocal_core::suites::{MonteCarloReport, RoutesReport, ScanRow};
use nonlocal_core::{
    classify_gate, ep_closed_form, ep_from_g1_abs, ep_monte_carlo, ep_operator_exact, in_weyl_chamber, is_pe_geometric,
    is_pe_invariant, named_gate, EpEstimate, GateInput, GateRecord, Mat4, PeVerdict, WeylPoint,
};
use serde::Serialize;

use crate::format::{short, sig};
use crate::matrix_file::MatrixFile;

#[allow(clippy::large_enum_variant)]
pub enum AnalyzeTarget {
    Name(String),
    Point(WeylPoint),
    Matrix { name: Option<String>, matrix: Mat4 },
}

/// Everything `analyze` reports about one gate.
pub struct Analysis {
    pub record: GateRecord,
    pub ep_closed: Option<f64>,
    pub ep_g1_relation: f64,
    pub ep_operator: f64,
    pub monte_carlo: Option<EpEstimate>,
    pub invariant: PeVerdict,
    pub geometric: Option<PeVerdict>,
}

impl Analysis {
    pub fn run(target: AnalyzeTarget, mc: Option<(usize, u64)>) -> nonlocal_core::Result<Analysis> {
        let (record, geometric) = match target {
            AnalyzeTarget::Name(name) => {
                let named = named_gate(&name)?;
                let p = catalog_point(&name)?;
                if in_weyl_chamber(p) {
                    // Cross-checks both criteria.
                    classify_gate(GateInput::Point(p))?;
                    (named, Some(is_pe_geometric(p)?))
                } else {
                    (named, None)
                }
            }
            AnalyzeTarget::Point(p) => {
                let record = classify_gate(GateInput::Point(p))?;
                (record, Some(is_pe_geometric(p)?))
            }
            AnalyzeTarget::Matrix { name, matrix } => {
                let mut record = classify_gate(GateInput::Matrix(matrix))?;
                record.name = name;
                (record, None)
            }
        };
        let ep_operator = ep_operator_exact(&record.matrix)?;
        let ep_g1_relation = ep_from_g1_abs(record.invariants.g1_abs())?;
        let monte_carlo = match mc {
            Some((n, seed)) => Some(ep_monte_carlo(&record.matrix, n, seed)?),
            None => None,
        };
        Ok(Analysis {
            ep_closed: record.point.map(ep_closed_form),
            ep_g1_relation,
            ep_operator,
            monte_carlo,
            invariant: is_pe_invariant(&record.invariants),
            geometric,
            record,
        })
    }

    pub fn to_text(&self) -> String {
        let r = &self.record;
        let mut s = String::new();
        let _ = writeln!(s, "gate        {}", r.name.as_deref().unwrap_or("(anonymous)"));
        if let Some(p) = r.point {
            let _ = writeln!(
                s,
                "point       [{}, {}, {}]",
                sig(p.c1, 12),
                sig(p.c2, 12),
                sig(p.c3, 12)
            );
        }
        let g1 = r.invariants.g1;
        let _ = writeln!(
            s,
            "G1          {} {} {}i",
            sig(g1.re, 12),
            if g1.im < 0.0 { "-" } else { "+" },
            sig(g1.im.abs(), 12)
        );
        let _ = writeln!(s, "|G1|        {}", sig(g1.norm(), 12));
        let _ = writeln!(s, "G2          {}", sig(r.invariants.g2, 12));
        if let Some(ep) = self.ep_closed {
            let _ = writeln!(s, "ep closed   {}", sig(ep, 12));
        }
        let _ = writeln!(s, "ep |G1|     {}", sig(self.ep_g1_relation, 12));
        let _ = writeln!(s, "ep operator {}", sig(self.ep_operator, 12));
        if let Some(mc) = &self.monte_carlo {
            let _ = writeln!(
                s,
                "ep monte-carlo {} ± {} (n = {}, seed = {})",
                sig(mc.mean, 12),
                sig(mc.std_err, 4),
                mc.n_samples,
                mc.seed
            );
        }
        let _ = writeln!(s, "PE          {}", if r.pe_verdict { "yes" } else { "no" });
        let _ = writeln!(
            s,
            "  invariant margins (1/4-|G1|, G2+1, 1-G2): {}",
            margins(&self.invariant.margins)
        );
        if let Some(g) = &self.geometric {
            let _ = writeln!(
                s,
                "  geometric margins (c1+c2-pi/2, pi/2-c2-c3): {}",
                margins(&g.margins)
            );
        }
        let tags: Vec<String> = r.tags.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            s,
            "tags        {}",
            if tags.is_empty() {
                "-".to_string()
            } else {
                tags.join(" ")
            }
        );
        s
    }

    pub fn to_json(&self) -> String {
        let r = &self.record;
        let doc = AnalysisJson {
            name: r.name.clone(),
            point: r.point.map(|p| p.as_array()),
            matrix: MatrixFile::from_matrix(None, &r.matrix).matrix,
            g1: [r.invariants.g1.re, r.invariants.g1.im],
            g1_abs: r.invariants.g1_abs(),
            g2: r.invariants.g2,
            ep: EpJson {
                closed_form: self.ep_closed,
                g1_relation: self.ep_g1_relation,
                operator: self.ep_operator,
                monte_carlo: self.monte_carlo.map(|m| MonteCarloJson {
                    mean: m.mean,
                    std_err: m.std_err,
                    n_samples: m.n_samples,
                    seed: m.seed,
                }),
            },
            pe: PeJson {
                is_pe: r.pe_verdict,
                invariant: verdict_json(&self.invariant),
                geometric: self.geometric.as_ref().map(verdict_json),
            },
            tags: r.tags.iter().map(ToString::to_string).collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("analysis serializes");
        text.push('\n');
        text
    }
}

fn margins(m: &[f64]) -> String {
    let parts: Vec<String> = m.iter().map(|x| sig(*x, 6)).collect();
    format!("({})", parts.join(", "))
}

#[derive(Serialize)]
struct AnalysisJson {
    name: Option<String>,
    point: Option<[f64; 3]>,
    matrix: Vec<Vec<[f64; 2]>>,
    g1: [f64; 2],
    g1_abs: f64,
    g2: f64,
    ep: EpJson,
    pe: PeJson,
    tags: Vec<String>,
}

#[derive(Serialize)]
struct EpJson {
    closed_form: Option<f64>,
    g1_relation: f64,
    operator: f64,
    monte_carlo: Option<MonteCarloJson>,
}

#[derive(Serialize)]
struct MonteCarloJson {
    mean: f64,
    std_err: f64,
    n_samples: usize,
    seed: u64,
}

#[derive(Serialize)]
struct PeJson {
    is_pe: bool,
    invariant: VerdictJson,
    geometric: Option<VerdictJson>,
}

#[derive(Serialize)]
struct VerdictJson {
    is_pe: bool,
    margins: Vec<f64>,
}

fn verdict_json(v: &PeVerdict) -> VerdictJson {
    VerdictJson {
        is_pe: v.is_pe,
        margins: v.margins.clone(),
    }
}

pub const SCAN_HEADER: &str = "c1,c2,c3,g1_abs,g2,ep,pe_geometric,pe_invariant";

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut s = String::with_capacity(64 * (rows.len() + 1));
    s.push_str(SCAN_HEADER);
    s.push('\n');
    for r in rows {
        push_row(&mut s, r);
    }
    s
}

fn push_row(s: &mut String, r: &ScanRow) {
    let _ = writeln!(
        s,
        "{},{},{},{},{},{},{},{}",
        sig(r.point.c1, 12),
        sig(r.point.c2, 12),
        sig(r.point.c3, 12),
        sig(r.g1_abs, 12),
        sig(r.g2, 12),
        sig(r.ep, 12),
        r.pe_geometric,
        r.pe_invariant
    );
}

/// One line per catalog entry; parametrized families are shown at a
/// representative parameter.
pub fn catalog_listing() -> String {
    let mut s = String::new();
    for entry in CATALOG_NAMES {
        let name = match entry {
            "SPE:<phi>" => "SPE:0.3927",
            "SWAP_ALPHA:<alpha>" => "SWAP_ALPHA:0.5",
            other => other,
        };
        let rec = match named_gate(name) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let p = rec.point.unwrap_or(WeylPoint::new(0.0, 0.0, 0.0));
        let _ = writeln!(
            s,
            "{} [{}, {}, {}] ep={} |g1|={} g2={} {}",
            rec.name.as_deref().unwrap_or(name),
            short(p.c1),
            short(p.c2),
            short(p.c3),
            short(rec.ep),
            short(rec.invariants.g1_abs()),
            short(rec.invariants.g2),
            if rec.pe_verdict { "PE" } else { "non-PE" }
        );
    }
    s
}

pub fn theorems_text(r: &TheoremReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "theorem sweep: grid {} ({} lattice points, {} in chamber)",
        r.grid_n, r.lattice_points, r.chamber_points
    );
    let _ = writeln!(
        s,
        "perfect entanglers: geometric {}, invariant {}",
        r.geometric_pe, r.invariant_pe
    );
    let _ = writeln!(
        s,
        "boundary points (exempt from T2, EQ): {} ({:.2}% of lattice)",
        r.boundary_points.len(),
        100.0 * r.boundary_fraction()
    );
    for check in Check::ALL {
        let _ = writeln!(
            s,
            "{:<6} checked {:>7}  violations {:>6}",
            check.name(),
            r.checked_count(check),
            r.violation_count(check)
        );
    }
    for v in &r.violations {
        let e = &v.evaluation;
        let _ = writeln!(
            s,
            "violation {} at [{}, {}, {}]: |g1|={} g2={} ep={} geometric={} {} invariant={} {}",
            v.check,
            sig(e.point.c1, 12),
            sig(e.point.c2, 12),
            sig(e.point.c3, 12),
            sig(e.g1_abs, 12),
            sig(e.g2, 12),
            sig(e.ep, 12),
            e.geometric.is_pe,
            margins(&e.geometric.margins),
            e.invariant.is_pe,
            margins(&e.invariant.margins)
        );
    }
    let _ = writeln!(s, "{} violations", r.violations.len());
    s
}

/// Violations and boundary points, one row each, with the scan columns.
pub fn theorems_csv(r: &TheoremReport) -> String {
    let mut s = format!("kind,{SCAN_HEADER}\n");
    for v in &r.violations {
        s.push_str(v.check.name());
        s.push(',');
        push_row(&mut s, &ScanRow::from(v.evaluation.clone()));
    }
    for &p in &r.boundary_points {
        if let Ok(e) = nonlocal_core::classify::PointEvaluation::new(p) {
            s.push_str("BOUNDARY,");
            push_row(&mut s, &ScanRow::from(e));
        }
    }
    s
}

pub fn routes_text(r: &RoutesReport) -> String {
    let mut s = format!("route agreement over {} random chamber points (seed {})\n", r.n, r.seed);
    for (label, got, tol) in r.comparisons() {
        let _ = writeln!(
            s,
            "{:<38} max discrepancy {:<22} tolerance {:<7} {}",
            label,
            sig(got, 6),
            format!("{tol:e}"),
            if got < tol { "PASS" } else { "FAIL" }
        );
    }
    let failed = r.comparisons().iter().filter(|(_, g, t)| g >= t).count();
    let _ = writeln!(s, "{failed} violations");
    s
}

pub fn routes_csv(r: &RoutesReport) -> String {
    let mut s = String::from("comparison,max_discrepancy,tolerance,pass\n");
    for (label, got, tol) in r.comparisons() {
        let _ = writeln!(s, "{},{},{},{}", label, sig(got, 12), sig(tol, 12), got < tol);
    }
    s
}

pub fn montecarlo_text(r: &MonteCarloReport) -> String {
    let mut s = format!(
        "Monte-Carlo entangling power, n = {} per gate, seed {}\n",
        r.n_samples, r.seed
    );
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{:<11} [{}, {}, {}] analytic {:<14} estimate {:<14} ± {:<10} |dev| {:<10} tol {:<10} {}",
            row.name,
            short(row.point.c1),
            short(row.point.c2),
            short(row.point.c3),
            sig(row.analytic, 8),
            sig(row.estimate.mean, 8),
            sig(row.estimate.std_err, 3),
            sig(row.deviation(), 3),
            sig(row.tolerance(), 3),
            if row.passed() { "PASS" } else { "FAIL" }
        );
    }
    let failed = r.rows.iter().filter(|row| !row.passed()).count();
    let _ = writeln!(s, "{failed} violations");
    s
}

pub fn montecarlo_csv(r: &MonteCarloReport) -> String {
    let mut s = String::from("gate,c1,c2,c3,analytic,mean,std_err,n_samples,seed,pass\n");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            row.name,
            sig(row.point.c1, 12),
            sig(row.point.c2, 12),
            sig(row.point.c3, 12),
            sig(row.analytic, 12),
            sig(row.estimate.mean, 12),
            sig(row.estimate.std_err, 12),
            row.estimate.n_samples,
            row.estimate.seed,
            row.passed()
        );
    }
    s
}
