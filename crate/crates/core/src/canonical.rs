//! Weyl-chamber points, the canonical two-qubit gate, the named-gate catalog
//! and the parametrized edges of the perfect-entangler polyhedron.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use crate::entangling::ep_closed_form;
use crate::error::{Error, Result};
use crate::invariants::{g1_complex_closed, g2_closed, LocalInvariants};
use crate::linalg::{Mat4, C64, I, ZERO};
use crate::tolerance;

/// Geometrical point `[c1, c2, c3]` (radians) of a two-qubit gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylPoint {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl WeylPoint {
    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|c| c.is_finite())
    }

    pub fn max_abs_diff(&self, other: &WeylPoint) -> f64 {
        (self.c1 - other.c1)
            .abs()
            .max((self.c2 - other.c2).abs())
            .max((self.c3 - other.c3).abs())
    }
}

impl fmt::Display for WeylPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.c1, self.c2, self.c3)
    }
}

/// Matrix of the canonical gate at `p`, including its global phase.
///
/// With `c± = cos((c1 ± c2)/2)`, `s± = sin((c1 ± c2)/2)` and `e = e^{-i c3/2}`:
///
/// ```text
/// | e c-        0          0        -i e s- |
/// | 0         e* c+     -i e* s+     0      |
/// | 0        -i e* s+    e* c+       0      |
/// | -i e s-     0          0         e c-   |
/// ```
pub fn canonical_gate(p: WeylPoint) -> Mat4 {
    let half_sum = 0.5 * (p.c1 + p.c2);
    let half_diff = 0.5 * (p.c1 - p.c2);
    let (s_plus, c_plus) = half_sum.sin_cos();
    let (s_minus, c_minus) = half_diff.sin_cos();
    let outer = C64::from_polar(1.0, -0.5 * p.c3);
    let inner = outer.conj();
    let a = outer * c_minus;
    let b = -I * outer * s_minus;
    let c = inner * c_plus;
    let d = -I * inner * s_plus;
    Mat4::from_rows([
        [a, ZERO, ZERO, b],
        [ZERO, c, d, ZERO],
        [ZERO, d, c, ZERO],
        [b, ZERO, ZERO, a],
    ])
}

/// `c1 ≥ c2 ≥ c3 ≥ 0` and `c1 + c2 ≤ π`, each with 1e−12 slack.
pub fn in_weyl_chamber(p: WeylPoint) -> bool {
    let t = tolerance::CHAMBER;
    p.is_finite() && p.c1 >= p.c2 - t && p.c2 >= p.c3 - t && p.c3 >= -t && p.c1 + p.c2 <= PI + t
}

/// `[π − c1, c2, c3]`, sorted into descending order.
pub fn mirror(p: WeylPoint) -> WeylPoint {
    let mut c = [PI - p.c1, p.c2, p.c3];
    c.sort_by(|a, b| b.total_cmp(a));
    WeylPoint::new(c[0], c[1], c[2])
}

/// Named edges of the perfect-entangler polyhedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeId {
    QP,
    MN,
    PN,
    LQ,
    LN,
    A2P,
}

impl EdgeId {
    pub const ALL: [EdgeId; 6] = [EdgeId::QP, EdgeId::MN, EdgeId::PN, EdgeId::LQ, EdgeId::LN, EdgeId::A2P];

    pub fn name(self) -> &'static str {
        match self {
            EdgeId::QP => "QP",
            EdgeId::MN => "MN",
            EdgeId::PN => "PN",
            EdgeId::LQ => "LQ",
            EdgeId::LN => "LN",
            EdgeId::A2P => "A2P",
        }
    }

    pub fn parse(s: &str) -> Option<EdgeId> {
        EdgeId::ALL
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(s.trim()))
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Point at parameter `t ∈ [0, 1]` along edge `e`.
///
/// LN and A2P are straight segments between their end vertices
/// L=[π/2,0,0], N=[3π/4,π/4,π/4], A2=[π/2,π/2,0], P=[π/4,π/4,π/4].
pub fn edge_point(e: EdgeId, t: f64) -> Result<WeylPoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange {
            what: "edge parameter t",
            value: t,
            range: "[0, 1]",
        });
    }
    let q = t * FRAC_PI_4;
    Ok(match e {
        EdgeId::QP => WeylPoint::new(FRAC_PI_4, FRAC_PI_4, q),
        EdgeId::MN => WeylPoint::new(3.0 * FRAC_PI_4, FRAC_PI_4, q),
        EdgeId::PN => WeylPoint::new(FRAC_PI_4 + t * FRAC_PI_2, FRAC_PI_4, FRAC_PI_4),
        EdgeId::LQ => WeylPoint::new(FRAC_PI_2 - q, q, 0.0),
        EdgeId::LN => WeylPoint::new(FRAC_PI_2 + q, q, q),
        EdgeId::A2P => WeylPoint::new(FRAC_PI_2 - q, FRAC_PI_2 - q, q),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// Special perfect entangler, |G1| = 0.
    Spe,
    /// Zero entangling power, |G1| = 1.
    ZeroEp,
    Edge(EdgeId),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Spe => f.write_str("SPE"),
            Tag::ZeroEp => f.write_str("ZERO_EP"),
            Tag::Edge(e) => write!(f, "EDGE_{e}"),
        }
    }
}

/// A gate together with everything computed about it.
#[derive(Clone, Debug, PartialEq)]
pub struct GateRecord {
    pub name: Option<String>,
    pub matrix: Mat4,
    pub point: Option<WeylPoint>,
    pub invariants: LocalInvariants,
    pub ep: f64,
    pub pe_verdict: bool,
    pub tags: BTreeSet<Tag>,
}

impl GateRecord {
    /// Record for a Weyl point with invariants and e_P from the closed forms.
    /// The PE verdict uses the invariant criterion; [`crate::classify_gate`]
    /// additionally cross-checks it against the geometric one.
    pub(crate) fn from_point(name: Option<String>, p: WeylPoint) -> GateRecord {
        let invariants = LocalInvariants {
            g1: g1_complex_closed(p),
            g2: g2_closed(p),
        };
        let ep = ep_closed_form(p);
        let pe_verdict = crate::classify::is_pe_invariant(&invariants).is_pe;
        let mut tags = invariant_tags(&invariants);
        for e in EdgeId::ALL {
            if on_edge(e, p) {
                tags.insert(Tag::Edge(e));
            }
        }
        GateRecord {
            name,
            matrix: canonical_gate(p),
            point: Some(p),
            invariants,
            ep,
            pe_verdict,
            tags,
        }
    }
}

pub(crate) fn invariant_tags(inv: &LocalInvariants) -> BTreeSet<Tag> {
    let mut tags = BTreeSet::new();
    let g1_abs = inv.g1.norm();
    if g1_abs < 1e-9 {
        tags.insert(Tag::Spe);
    }
    if (1.0 - g1_abs).abs() < 1e-9 {
        tags.insert(Tag::ZeroEp);
    }
    tags
}

/// Whether `p` lies on edge `e` (within 1e−9 rad).
fn on_edge(e: EdgeId, p: WeylPoint) -> bool {
    const TOL: f64 = 1e-9;
    let (Ok(start), Ok(end)) = (edge_point(e, 0.0), edge_point(e, 1.0)) else {
        return false;
    };
    // Every edge is a straight segment: project p onto it.
    let d = [end.c1 - start.c1, end.c2 - start.c2, end.c3 - start.c3];
    let r = [p.c1 - start.c1, p.c2 - start.c2, p.c3 - start.c3];
    let len2: f64 = d.iter().map(|x| x * x).sum();
    let t = (r.iter().zip(&d).map(|(a, b)| a * b).sum::<f64>() / len2).clamp(0.0, 1.0);
    match edge_point(e, t) {
        Ok(q) => q.max_abs_diff(&p) < TOL,
        Err(_) => false,
    }
}

/// Catalog entries, in listing order. Parametrized entries show their
/// parameter name in angle brackets.
pub const CATALOG_NAMES: [&str; 9] = [
    "IDENTITY",
    "SWAP",
    "CNOT_CLASS",
    "DCNOT",
    "ISWAP_CLASS",
    "SQRT_SWAP",
    "B_GATE",
    "SPE:<phi>",
    "SWAP_ALPHA:<alpha>",
];

/// Weyl point of a catalog entry. Names are case-insensitive; `SPE` and
/// `SWAP_ALPHA` take a decimal argument after a colon (`SPE:0.7854`).
pub fn catalog_point(name: &str) -> Result<WeylPoint> {
    let trimmed = name.trim();
    let (base, arg) = match trimmed.split_once(':') {
        Some((b, a)) => (b.trim(), Some(a.trim())),
        None => (trimmed, None),
    };
    let upper = base.to_ascii_uppercase();
    let parse_arg = |what: &str| -> Result<f64> {
        let raw = arg.ok_or_else(|| Error::MalformedGateName(format!("{what} needs an argument, e.g. {what}:0.5")))?;
        raw.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::MalformedGateName(trimmed.to_string()))
    };
    let no_arg = |p: WeylPoint| -> Result<WeylPoint> {
        match arg {
            None => Ok(p),
            Some(_) => Err(Error::MalformedGateName(trimmed.to_string())),
        }
    };
    match upper.as_str() {
        "IDENTITY" => no_arg(WeylPoint::new(0.0, 0.0, 0.0)),
        "SWAP" => no_arg(WeylPoint::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)),
        "CNOT_CLASS" => no_arg(spe(0.0)),
        "DCNOT" | "ISWAP_CLASS" => no_arg(WeylPoint::new(FRAC_PI_2, FRAC_PI_2, 0.0)),
        "SQRT_SWAP" => no_arg(WeylPoint::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4)),
        "B_GATE" => no_arg(spe(FRAC_PI_4)),
        "SPE" => Ok(spe(parse_arg("SPE")?)),
        "SWAP_ALPHA" => {
            let alpha = parse_arg("SWAP_ALPHA")?;
            let c = alpha * FRAC_PI_2;
            Ok(WeylPoint::new(c, c, c))
        }
        _ => Err(Error::UnknownGate {
            name: trimmed.to_string(),
            valid: CATALOG_NAMES.join(", "),
        }),
    }
}

fn spe(phi: f64) -> WeylPoint {
    WeylPoint::new(FRAC_PI_2, phi, 0.0)
}

/// Catalog lookup, returning a fully populated record.
pub fn named_gate(name: &str) -> Result<GateRecord> {
    let p = catalog_point(name)?;
    Ok(GateRecord::from_point(Some(canonical_name(name)), p))
}

fn canonical_name(name: &str) -> String {
    match name.trim().split_once(':') {
        Some((b, a)) => format!("{}:{}", b.trim().to_ascii_uppercase(), a.trim()),
        None => name.trim().to_ascii_uppercase(),
    }
}
