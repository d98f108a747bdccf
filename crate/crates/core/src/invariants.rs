//! Local invariants `G1` (complex) and `G2` (real).
//!
//! Two independent routes: closed forms in the Weyl coordinates, and trace
//! formulas in the magic basis that work for any 4×4 unitary, including
//! ones whose Weyl point is unknown.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::canonical::WeylPoint;
use crate::error::{Error, Result};
use crate::linalg::{det4, Mat4, C64, ONE, ZERO};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalInvariants {
    pub g1: C64,
    pub g2: f64,
}

impl LocalInvariants {
    pub fn g1_abs(&self) -> f64 {
        self.g1.norm()
    }

    /// Largest componentwise difference (|Δg1|, |Δg2|).
    pub fn max_abs_diff(&self, other: &LocalInvariants) -> f64 {
        (self.g1 - other.g1).norm().max((self.g2 - other.g2).abs())
    }
}

/// `cos²c1 cos²c2 cos²c3` and `sin²c1 sin²c2 sin²c3`.
fn cos_sin_products(p: WeylPoint) -> (f64, f64) {
    let (s1, c1) = p.c1.sin_cos();
    let (s2, c2) = p.c2.sin_cos();
    let (s3, c3) = p.c3.sin_cos();
    let cc = c1 * c2 * c3;
    let ss = s1 * s2 * s3;
    (cc * cc, ss * ss)
}

/// `|G1| = cos²c1 cos²c2 cos²c3 + sin²c1 sin²c2 sin²c3`.
pub fn g1_abs_closed(p: WeylPoint) -> f64 {
    let (a, b) = cos_sin_products(p);
    a + b
}

/// Complex `G1` at a Weyl point:
/// `cos²c1 cos²c2 cos²c3 − sin²c1 sin²c2 sin²c3 − (i/4) sin2c1 sin2c2 sin2c3`.
///
/// The sign of the imaginary part is the one produced by
/// [`invariants_from_matrix`] applied to [`crate::canonical_gate`]; the
/// modulus is `A + B` because `(A − B)² + 4AB = (A + B)²` and
/// `(sin2c1 sin2c2 sin2c3 / 4)² = 4AB`.
pub fn g1_complex_closed(p: WeylPoint) -> C64 {
    let (a, b) = cos_sin_products(p);
    let im = -0.25 * (2.0 * p.c1).sin() * (2.0 * p.c2).sin() * (2.0 * p.c3).sin();
    C64::new(a - b, im)
}

/// `G2 = cos2c1 + cos2c2 + cos2c3`.
pub fn g2_closed(p: WeylPoint) -> f64 {
    (2.0 * p.c1).cos() + (2.0 * p.c2).cos() + (2.0 * p.c3).cos()
}

/// `G2 = 4 cos²c1 cos²c2 cos²c3 − 4 sin²c1 sin²c2 sin²c3 − cos2c1 cos2c2 cos2c3`,
/// equal to [`g2_closed`] by a trigonometric identity.
pub fn g2_closed_product_form(p: WeylPoint) -> f64 {
    let (a, b) = cos_sin_products(p);
    4.0 * a - 4.0 * b - (2.0 * p.c1).cos() * (2.0 * p.c2).cos() * (2.0 * p.c3).cos()
}

/// Columns are the magic basis:
/// `Q = (1/√2)·[[1,0,0,i],[0,i,1,0],[0,i,−1,0],[1,0,0,−i]]`.
pub fn magic_basis() -> Mat4 {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let ih = C64::new(0.0, FRAC_1_SQRT_2);
    Mat4::from_rows([
        [h, ZERO, ZERO, ih],
        [ZERO, ih, h, ZERO],
        [ZERO, ih, -h, ZERO],
        [h, ZERO, ZERO, -ih],
    ])
}

/// Invariants of an arbitrary two-qubit unitary.
///
/// With `u_B = Q†uQ` and `m = u_Bᵀ u_B`:
/// `G1 = tr²(m) / (16 det u)` and `G2 = (tr²(m) − tr(m²)) / (4 det u)`.
/// Dividing by `det u` makes both independent of the global phase.
pub fn invariants_from_matrix(u: &Mat4) -> Result<LocalInvariants> {
    u.check_unitary(tolerance::INGEST_UNITARITY)?;
    invariants_unchecked(u)
}

pub(crate) fn invariants_unchecked(u: &Mat4) -> Result<LocalInvariants> {
    let q = magic_basis();
    let ub = q.adjoint() * *u * q;
    let m = ub.transpose() * ub;
    let det = det4(u);
    let tr = m.trace();
    let tr_sq = tr * tr;
    let g1 = tr_sq / (det * 16.0);
    let g2 = (tr_sq - (m * m).trace()) / (det * 4.0);
    if g2.im.abs() >= tolerance::IMAGINARY_RESIDUE {
        return Err(Error::InconsistentInvariant { residue: g2.im.abs() });
    }
    Ok(LocalInvariants { g1, g2: g2.re })
}

/// Whether `G1(u†)` equals `conj(G1(u))` within 1e−9.
pub fn g1_conjugate_check(u: &Mat4) -> Result<bool> {
    let forward = invariants_from_matrix(u)?;
    let inverse = invariants_from_matrix(&u.adjoint())?;
    Ok((inverse.g1 - forward.g1.conj()).norm() < 1e-9)
}

/// `G1` and `G2` of the identity, for reference.
pub const IDENTITY_INVARIANTS: LocalInvariants = LocalInvariants { g1: ONE, g2: 3.0 };

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_gate;
    use crate::linalg::swap;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    const P0: WeylPoint = WeylPoint::new(0.0, 0.0, 0.0);
    const SWAP_PT: WeylPoint = WeylPoint::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2);

    #[test]
    fn g1_abs_examples() {
        assert_eq!(g1_abs_closed(P0), 1.0);
        for eta in [0.0, 0.3, FRAC_PI_4, 1.0] {
            assert_abs_diff_eq!(
                g1_abs_closed(WeylPoint::new(FRAC_PI_4, FRAC_PI_4, eta)),
                0.25,
                epsilon = 1e-15
            );
        }
        for phi in [0.0, 0.2, FRAC_PI_4, FRAC_PI_2] {
            assert_abs_diff_eq!(g1_abs_closed(WeylPoint::new(FRAC_PI_2, phi, 0.0)), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn g1_complex_examples() {
        assert_eq!(g1_complex_closed(P0), ONE);
        assert!((g1_complex_closed(SWAP_PT) - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(g1_complex_closed(WeylPoint::new(FRAC_PI_2, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn g2_examples() {
        assert_eq!(g2_closed(P0), 3.0);
        assert_abs_diff_eq!(g2_closed(SWAP_PT), -3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            g2_closed(WeylPoint::new(FRAC_PI_2, FRAC_PI_2, 0.0)),
            -1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(g2_closed_product_form(SWAP_PT), -3.0, epsilon = 1e-15);
    }

    #[test]
    fn matrix_route_examples() {
        let s = invariants_from_matrix(&swap()).unwrap();
        assert!((s.g1 - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert_abs_diff_eq!(s.g2, -3.0, epsilon = 1e-12);

        let id = invariants_from_matrix(&Mat4::identity()).unwrap();
        assert!(id.max_abs_diff(&IDENTITY_INVARIANTS) < 1e-12);

        // G2 = cos π + cos(π/2) + cos 0 = 0 on B_GATE; G2 = 1 only at the CNOT end of the SPE family.
        let spe = invariants_from_matrix(&canonical_gate(WeylPoint::new(FRAC_PI_2, FRAC_PI_4, 0.0))).unwrap();
        assert!(spe.g1.norm() < 1e-12);
        assert_abs_diff_eq!(spe.g2, 0.0, epsilon = 1e-12);
        let cnot = invariants_from_matrix(&canonical_gate(WeylPoint::new(FRAC_PI_2, 0.0, 0.0))).unwrap();
        assert!(cnot.g1.norm() < 1e-12);
        assert_abs_diff_eq!(cnot.g2, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn matrix_route_matches_complex_closed_form() {
        for p in [
            WeylPoint::new(0.3, 0.2, 0.1),
            WeylPoint::new(1.2, 0.7, 0.4),
            WeylPoint::new(2.5, 0.5, 0.2),
        ] {
            let m = invariants_from_matrix(&canonical_gate(p)).unwrap();
            assert!(
                (m.g1 - g1_complex_closed(p)).norm() < 1e-12,
                "{p}: {} vs {}",
                m.g1,
                g1_complex_closed(p)
            );
        }
    }

    #[test]
    fn phase_does_not_matter() {
        let u = canonical_gate(WeylPoint::new(1.1, 0.6, 0.2));
        let a = invariants_from_matrix(&u).unwrap();
        let b = invariants_from_matrix(&u.scale(C64::from_polar(1.0, 0.77))).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = Mat4::identity().scale(C64::new(2.0, 0.0));
        assert!(matches!(invariants_from_matrix(&m), Err(Error::NonUnitary { .. })));
    }

    #[test]
    fn conjugate_check_examples() {
        assert!(g1_conjugate_check(&swap()).unwrap());
        assert!(g1_conjugate_check(&canonical_gate(WeylPoint::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4))).unwrap());
        assert!(g1_conjugate_check(&canonical_gate(WeylPoint::new(1.0, 0.5, 0.25))).unwrap());
    }
}
