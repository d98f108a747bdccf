//! Haar-random states and unitaries, and uniform points in the Weyl chamber.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::canonical::{in_weyl_chamber, WeylPoint};
use crate::linalg::{Matrix, StateVec2, C64, ZERO};
use crate::rng::Xoshiro256;

pub fn complex_normal(rng: &mut Xoshiro256) -> C64 {
    let (re, im) = rng.normal_pair();
    C64::new(re, im)
}

/// Haar-random single-qubit state: two complex Gaussians, normalized.
pub fn haar_qubit(rng: &mut Xoshiro256) -> StateVec2 {
    let a = complex_normal(rng);
    let b = complex_normal(rng);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    StateVec2::from_raw([a / norm, b / norm])
}

/// Haar-random `N×N` unitary: Gram–Schmidt on the columns of a complex
/// Gaussian matrix.
pub fn haar_unitary<const N: usize>(rng: &mut Xoshiro256) -> Matrix<N> {
    let mut cols = [[ZERO; N]; N];
    for col in cols.iter_mut() {
        for z in col.iter_mut() {
            *z = complex_normal(rng);
        }
    }
    for j in 0..N {
        // Two passes keep the columns orthogonal to machine precision.
        for _ in 0..2 {
            for k in 0..j {
                let proj: C64 = (0..N).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..N {
                    let sub = proj * cols[k][i];
                    cols[j][i] -= sub;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    Matrix::from_fn(|r, c| cols[c][r])
}

/// Uniform point of the Weyl chamber, by rejection from the bounding box
/// `[0, π] × [0, π/2] × [0, π/2]`.
pub fn chamber_point(rng: &mut Xoshiro256) -> WeylPoint {
    loop {
        let p = WeylPoint::new(
            rng.uniform(0.0, PI),
            rng.uniform(0.0, FRAC_PI_2),
            rng.uniform(0.0, FRAC_PI_2),
        );
        if in_weyl_chamber(p) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Mat2, Mat4};

    #[test]
    fn sampled_unitaries_are_unitary() {
        let mut rng = Xoshiro256::seed_from_u64(5);
        for _ in 0..100 {
            assert!(haar_unitary::<2>(&mut rng).unitarity_defect() < 1e-13);
            assert!(haar_unitary::<4>(&mut rng).unitarity_defect() < 1e-13);
        }
        let _: Mat2 = haar_unitary(&mut rng);
        let _: Mat4 = haar_unitary(&mut rng);
    }

    #[test]
    fn sampled_states_are_normalized() {
        let mut rng = Xoshiro256::seed_from_u64(9);
        for _ in 0..100 {
            assert!((haar_qubit(&mut rng).norm_sqr() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn chamber_points_are_in_chamber() {
        let mut rng = Xoshiro256::seed_from_u64(1);
        for _ in 0..1000 {
            assert!(in_weyl_chamber(chamber_point(&mut rng)));
        }
    }
}
