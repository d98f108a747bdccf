//! Entangling power `e_P`: the mean linear entropy a gate produces from
//! uniformly distributed product states.
//!
//! Three routes are provided: closed forms in the Weyl coordinates, the
//! exact 16-dimensional operator formula for any unitary, and a seeded
//! Monte-Carlo average.

use std::sync::OnceLock;

use crate::canonical::WeylPoint;
use crate::error::{Error, Result};
use crate::linalg::{
    kron, partial_trace, product_state, swap_swap, transposition_t13, Mat16, Mat4, StateVec4, Subsystem,
};
use crate::par::{self, Execution};
use crate::rng::Xoshiro256;
use crate::sampling::haar_qubit;
use crate::tolerance;

/// Upper end of the entangling-power range.
pub const EP_MAX: f64 = 2.0 / 9.0;

/// Linear entropies below this are rounding residue of a product state.
pub const PRODUCT_STATE_FLOOR: f64 = 1e-14;

/// Smallest Monte-Carlo sample count accepted.
pub const MIN_SAMPLES: usize = 100;

/// Samples per Monte-Carlo block. Block `b` always draws from RNG substream
/// `b`, so the estimate does not depend on how blocks are scheduled.
pub const MC_BLOCK: usize = 4096;

/// `1 − tr(ρ_A²)` of a normalized two-qubit state.
pub fn linear_entropy(psi: &StateVec4) -> f64 {
    linear_entropy_of(psi, Subsystem::A)
}

/// Same quantity computed from either reduced density matrix.
pub fn linear_entropy_of(psi: &StateVec4, side: Subsystem) -> f64 {
    let rho = partial_trace(psi, side);
    let purity: f64 = rho.rows().iter().flatten().map(|z| z.norm_sqr()).sum();
    let e = 1.0 - purity;
    if e < PRODUCT_STATE_FLOOR {
        0.0
    } else {
        e
    }
}

/// `e_P = (2/9)(1 − |G1|)`.
pub fn ep_from_g1_abs(g1_abs: f64) -> Result<f64> {
    const SLACK: f64 = 1e-9;
    if !(g1_abs.is_finite() && (-SLACK..=1.0 + SLACK).contains(&g1_abs)) {
        return Err(Error::OutOfRange {
            what: "|G1|",
            value: g1_abs,
            range: "[0, 1]",
        });
    }
    Ok(EP_MAX * (1.0 - g1_abs))
}

/// `e_P = (1/18)[3 − (cos2c1 cos2c2 + cos2c2 cos2c3 + cos2c3 cos2c1)]`.
pub fn ep_closed_form(p: WeylPoint) -> f64 {
    let (a, b, c) = ((2.0 * p.c1).cos(), (2.0 * p.c2).cos(), (2.0 * p.c3).cos());
    (3.0 - (a * b + b * c + c * a)) / 18.0
}

struct OperatorConstants {
    t: Mat16,
    /// S†TS
    t_swapped: Mat16,
    /// R = T + S†TS
    r: Mat16,
}

fn operator_constants() -> &'static OperatorConstants {
    static CONSTANTS: OnceLock<OperatorConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        let t = transposition_t13();
        let s = swap_swap();
        let t_swapped = s.adjoint() * t * s;
        OperatorConstants {
            t,
            t_swapped,
            r: t + t_swapped,
        }
    })
}

fn real_trace(m: &Mat16) -> Result<f64> {
    let tr = m.trace();
    if tr.im.abs() >= tolerance::IMAGINARY_RESIDUE {
        return Err(Error::ImaginaryTrace { residue: tr.im.abs() });
    }
    Ok(tr.re)
}

/// Both forms of the operator formula, `(two_trace, single_trace)`.
///
/// With `A = u⊗u`, `T = T₁,₃`, `S = SWAP⊗SWAP`:
/// two-trace `5/9 − [tr(A†TAT) + tr(A†S†TSAT)]/36`,
/// single-trace `5/9 − tr(A†RAT)/36` with `R = T + S†TS`.
pub fn ep_operator_forms(u: &Mat4) -> Result<(f64, f64)> {
    u.check_unitary(tolerance::INGEST_UNITARITY)?;
    let k = operator_constants();
    let a: Mat16 = kron(u, u);
    let a_dag = a.adjoint();
    let at = a * k.t;
    let direct = real_trace(&(a_dag * k.t * at))?;
    let swapped = real_trace(&(a_dag * k.t_swapped * at))?;
    let combined = real_trace(&(a_dag * k.r * at))?;
    let two_trace = 5.0 / 9.0 - (direct + swapped) / 36.0;
    let single_trace = 5.0 / 9.0 - combined / 36.0;
    Ok((two_trace, single_trace))
}

/// Exact entangling power of any two-qubit unitary from the 16-dimensional
/// operator formula, with the two algebraic forms cross-checked.
pub fn ep_operator_exact(u: &Mat4) -> Result<f64> {
    let (two_trace, single_trace) = ep_operator_forms(u)?;
    if (two_trace - single_trace).abs() > tolerance::OPERATOR_SELF_CHECK {
        return Err(Error::OperatorRouteMismatch {
            two_trace,
            single_trace,
        });
    }
    Ok(two_trace)
}

/// Monte-Carlo estimate of the entangling power.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpEstimate {
    pub mean: f64,
    /// Sample standard deviation over √n.
    pub std_err: f64,
    pub n_samples: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: u64,
    mean: f64,
    /// Sum of squared deviations from the mean.
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(a: Moments, b: Moments) -> Moments {
        if a.count == 0 {
            return b;
        }
        if b.count == 0 {
            return a;
        }
        let count = a.count + b.count;
        let n = count as f64;
        let delta = b.mean - a.mean;
        let mean = a.mean + delta * (b.count as f64 / n);
        let m2 = a.m2 + b.m2 + delta * delta * (a.count as f64 * b.count as f64 / n);
        Moments { count, mean, m2 }
    }
}

/// Pairwise reduction in a fixed tree shape.
fn merge_pairwise(parts: &[Moments]) -> Moments {
    match parts.len() {
        0 => Moments::default(),
        1 => parts[0],
        n => {
            let (lo, hi) = parts.split_at(n / 2);
            Moments::merge(merge_pairwise(lo), merge_pairwise(hi))
        }
    }
}

/// Averages the linear entropy of `u(|ψ1⟩⊗|ψ2⟩)` over `n_samples` pairs of
/// independent Haar-random qubit states. Deterministic for a fixed seed and
/// identical with or without the `parallel` feature.
pub fn ep_monte_carlo(u: &Mat4, n_samples: usize, seed: u64) -> Result<EpEstimate> {
    ep_monte_carlo_with(u, n_samples, seed, Execution::default())
}

/// [`ep_monte_carlo`] with an explicit execution mode.
pub fn ep_monte_carlo_with(u: &Mat4, n_samples: usize, seed: u64, exec: Execution) -> Result<EpEstimate> {
    if n_samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: n_samples,
            min: MIN_SAMPLES,
        });
    }
    u.check_unitary(tolerance::INGEST_UNITARITY)?;
    let n_blocks = n_samples.div_ceil(MC_BLOCK);
    let blocks = par::map_indices(exec, n_blocks, |b| {
        let mut rng = Xoshiro256::for_stream(seed, b as u64);
        let len = MC_BLOCK.min(n_samples - b * MC_BLOCK);
        let mut acc = Moments::default();
        for _ in 0..len {
            let a = haar_qubit(&mut rng);
            let b = haar_qubit(&mut rng);
            let out = u.mul_vec(&product_state(&a, &b));
            acc.push(linear_entropy(&out));
        }
        acc
    });
    let total = merge_pairwise(&blocks);
    let n = total.count as f64;
    let variance = if total.count > 1 { total.m2 / (n - 1.0) } else { 0.0 };
    Ok(EpEstimate {
        mean: total.mean,
        std_err: (variance.max(0.0) / n).sqrt(),
        n_samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_gate;
    use crate::linalg::{swap, C64, ZERO};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn linear_entropy_examples() {
        assert_eq!(linear_entropy(&StateVec4::basis(0)), 0.0);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let bell = StateVec4::new([h, ZERO, ZERO, h]).unwrap();
        assert_abs_diff_eq!(linear_entropy(&bell), 0.5, epsilon = 1e-15);
        let psi = StateVec4::new([
            C64::new((1.0f64 / 3.0).sqrt(), 0.0),
            ZERO,
            ZERO,
            C64::new((2.0f64 / 3.0).sqrt(), 0.0),
        ])
        .unwrap();
        assert_abs_diff_eq!(linear_entropy(&psi), 4.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn linear_entropy_is_symmetric() {
        let mut rng = Xoshiro256::seed_from_u64(3);
        for _ in 0..100 {
            let u: Mat4 = crate::sampling::haar_unitary(&mut rng);
            let psi = u.mul_vec(&StateVec4::basis(0));
            let a = linear_entropy_of(&psi, Subsystem::A);
            let b = linear_entropy_of(&psi, Subsystem::B);
            assert!((a - b).abs() < 1e-12);
            assert!((0.0..=0.5 + 1e-12).contains(&a));
        }
    }

    #[test]
    fn g1_relation_examples() {
        assert_eq!(ep_from_g1_abs(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(ep_from_g1_abs(0.0).unwrap(), 2.0 / 9.0, epsilon = 1e-16);
        assert_abs_diff_eq!(ep_from_g1_abs(0.25).unwrap(), 1.0 / 6.0, epsilon = 1e-16);
        assert!(ep_from_g1_abs(1.1).is_err());
        assert!(ep_from_g1_abs(-0.01).is_err());
        assert!(ep_from_g1_abs(f64::NAN).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ep_closed_form(WeylPoint::new(0.0, 0.0, 0.0)), 0.0);
        assert_abs_diff_eq!(
            ep_closed_form(WeylPoint::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2)),
            0.0,
            epsilon = 1e-15
        );
        for k in 0..=10 {
            let eta = k as f64 * FRAC_PI_2 / 10.0;
            let p = WeylPoint::new(FRAC_PI_4 + eta, FRAC_PI_4, FRAC_PI_4);
            assert_abs_diff_eq!(ep_closed_form(p), 1.0 / 6.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn operator_examples() {
        assert_abs_diff_eq!(ep_operator_exact(&Mat4::identity()).unwrap(), 0.0, epsilon = 1e-14);
        let cnot_class = canonical_gate(WeylPoint::new(FRAC_PI_2, 0.0, 0.0));
        assert_abs_diff_eq!(ep_operator_exact(&cnot_class).unwrap(), 2.0 / 9.0, epsilon = 1e-10);
        let sqrt_swap = canonical_gate(WeylPoint::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_4));
        assert_abs_diff_eq!(ep_operator_exact(&sqrt_swap).unwrap(), 1.0 / 6.0, epsilon = 1e-10);
        assert_abs_diff_eq!(ep_operator_exact(&swap()).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn operator_forms_agree() {
        let mut rng = Xoshiro256::seed_from_u64(11);
        for _ in 0..20 {
            let u: Mat4 = crate::sampling::haar_unitary(&mut rng);
            let (a, b) = ep_operator_forms(&u).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn monte_carlo_identity_is_exactly_zero() {
        let est = ep_monte_carlo(&Mat4::identity(), 10_000, 1).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_err, 0.0);
        assert_eq!(est.n_samples, 10_000);
    }

    #[test]
    fn monte_carlo_rejects_small_n_and_non_unitary() {
        assert!(matches!(
            ep_monte_carlo(&Mat4::identity(), 99, 0),
            Err(Error::TooFewSamples { got: 99, min: 100 })
        ));
        let bad = Mat4::identity().scale(C64::new(0.5, 0.0));
        assert!(matches!(ep_monte_carlo(&bad, 1000, 0), Err(Error::NonUnitary { .. })));
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let u = canonical_gate(WeylPoint::new(1.0, 0.4, 0.1));
        let a = ep_monte_carlo(&u, 9000, 77).unwrap();
        let b = ep_monte_carlo(&u, 9000, 77).unwrap();
        let c = ep_monte_carlo(&u, 9000, 78).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let parts: Vec<Moments> = xs
            .chunks(97)
            .map(|c| {
                let mut m = Moments::default();
                c.iter().for_each(|&x| m.push(x));
                m
            })
            .collect();
        let merged = merge_pairwise(&parts);
        assert_eq!(merged.count, whole.count);
        assert!((merged.mean - whole.mean).abs() < 1e-12);
        assert!((merged.m2 - whole.m2).abs() < 1e-9);
    }
}
