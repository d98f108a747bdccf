//! Dense complex matrices and state vectors at the fixed sizes a two-qubit
//! analysis needs: 2 (one qubit), 4 (two qubits) and 16 (two copies of a
//! two-qubit gate).
//!
//! Basis ordering: a two-qubit ket |q1,q0⟩ has index `q1·2 + q0`, a
//! four-qubit ket |a,b,c,d⟩ has index `a·8 + b·4 + c·2 + d`. Qubit `q1`
//! (the high bit) is subsystem A.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix of fixed dimension `N`, stored row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize> {
    data: [[C64; N]; N],
}

pub type Mat2 = Matrix<2>;
pub type Mat4 = Matrix<4>;
pub type Mat16 = Matrix<16>;

impl<const N: usize> Matrix<N> {
    pub const DIM: usize = N;

    pub fn zeros() -> Self {
        Self { data: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_rows(data: [[C64; N]; N]) -> Self {
        Self { data }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = [[ZERO; N]; N];
        for (r, row) in data.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = f(r, c);
            }
        }
        Self { data }
    }

    /// Permutation matrix sending basis vector `j` to `perm(j)`.
    pub fn permutation(perm: impl Fn(usize) -> usize) -> Self {
        let mut m = Self::zeros();
        for j in 0..N {
            m.data[perm(j)][j] = ONE;
        }
        m
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|r, c| self.data[c][r].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.data[c][r])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|r, c| self.data[r][c].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.data[i][i]).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::from_fn(|r, c| self.data[r][c] * k)
    }

    /// Hilbert–Schmidt scalar product ⟨self, other⟩ = tr(self† other).
    pub fn hs_inner(&self, other: &Self) -> C64 {
        let mut acc = ZERO;
        for r in 0..N {
            for c in 0..N {
                acc += self.data[r][c].conj() * other.data[r][c];
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..N {
            for c in 0..N {
                worst = worst.max((self.data[r][c] - other.data[r][c]).norm());
            }
        }
        worst
    }

    /// Largest entry modulus of U†U − I.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn check_unitary(&self, tolerance: f64) -> Result<()> {
        let defect = self.unitarity_defect();
        if defect.is_finite() && defect <= tolerance {
            Ok(())
        } else {
            Err(Error::NonUnitary { defect, tolerance })
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul_vec(&self, v: &StateVec<N>) -> StateVec<N> {
        let mut out = [ZERO; N];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = &self.data[r];
            let mut acc = ZERO;
            for c in 0..N {
                acc += row[c] * v.amps[c];
            }
            *slot = acc;
        }
        StateVec { amps: out }
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r][c]
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<const N: usize> Mul for &Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, rhs: Self) -> Matrix<N> {
        // i-k-j order walks both operands row-wise.
        let mut out = [[ZERO; N]; N];
        for (i, out_row) in out.iter_mut().enumerate() {
            for k in 0..N {
                let a = self.data[i][k];
                if a == ZERO {
                    continue;
                }
                let b_row = &rhs.data[k];
                for j in 0..N {
                    out_row[j] += a * b_row[j];
                }
            }
        }
        Matrix { data: out }
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.data[r][c] + rhs.data[r][c])
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.data[r][c] - rhs.data[r][c])
    }
}

impl<const N: usize> fmt::Debug for Matrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{N}> [")?;
        for row in &self.data {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product. `P` must equal `M·N`; this is checked at compile time.
pub fn kron<const M: usize, const N: usize, const P: usize>(a: &Matrix<M>, b: &Matrix<N>) -> Matrix<P> {
    const { assert!(P == M * N, "kron output dimension must be M·N") };
    Matrix::from_fn(|r, c| a.data[r / N][c / N] * b.data[r % N][c % N])
}

/// Determinant of a 4×4 matrix by Laplace expansion along the first two
/// rows (sum over complementary 2×2 minors).
pub fn det4(a: &Mat4) -> C64 {
    let m = &a.data;
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    // Column pairs (c0,c1) with their complements and the sign of the
    // permutation (c0,c1,d0,d1).
    const PAIRS: [((usize, usize), (usize, usize), f64); 6] = [
        ((0, 1), (2, 3), 1.0),
        ((0, 2), (1, 3), -1.0),
        ((0, 3), (1, 2), 1.0),
        ((1, 2), (0, 3), 1.0),
        ((1, 3), (0, 2), -1.0),
        ((2, 3), (0, 1), 1.0),
    ];
    PAIRS
        .iter()
        .map(|&((c0, c1), (d0, d1), sign)| minor(0, 1, c0, c1) * minor(2, 3, d0, d1) * sign)
        .sum()
}

/// The two-qubit SWAP gate.
pub fn swap() -> Mat4 {
    Mat4::permutation(|j| ((j & 1) << 1) | (j >> 1))
}

/// T₁,₃ on four qubits: |a,b,c,d⟩ ↦ |c,b,a,d⟩.
pub fn transposition_t13() -> Mat16 {
    Mat16::permutation(|j| {
        let (a, b, c, d) = (j >> 3 & 1, j >> 2 & 1, j >> 1 & 1, j & 1);
        c << 3 | b << 2 | a << 1 | d
    })
}

/// SWAP ⊗ SWAP on four qubits: |a,b,c,d⟩ ↦ |b,a,d,c⟩.
pub fn swap_swap() -> Mat16 {
    kron(&swap(), &swap())
}

/// Normalized pure state of dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVec<const N: usize> {
    amps: [C64; N],
}

pub type StateVec2 = StateVec<2>;
pub type StateVec4 = StateVec<4>;

impl<const N: usize> StateVec<N> {
    /// Wraps amplitudes that must already have unit norm (within 1e−12).
    pub fn new(amps: [C64; N]) -> Result<Self> {
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        let defect = (norm_sqr - 1.0).abs();
        if defect.is_finite() && defect <= tolerance::INTERNAL_UNITARITY {
            Ok(Self { amps })
        } else {
            Err(Error::NotNormalized { defect })
        }
    }

    /// Rescales nonzero amplitudes to unit norm.
    pub fn normalized(amps: [C64; N]) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { defect: 1.0 });
        }
        Ok(Self {
            amps: amps.map(|z| z / norm),
        })
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; N];
        amps[index] = ONE;
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[C64; N] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub(crate) fn from_raw(amps: [C64; N]) -> Self {
        Self { amps }
    }
}

/// |a⟩ ⊗ |b⟩ with `a` on subsystem A (high bit).
pub fn product_state(a: &StateVec2, b: &StateVec2) -> StateVec4 {
    let (x, y) = (a.amps, b.amps);
    StateVec {
        amps: [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced density matrix of `keep`, tracing out the other qubit.
pub fn partial_trace(psi: &StateVec4, keep: Subsystem) -> Mat2 {
    let a = &psi.amps;
    // amplitude of |i⟩_keep |k⟩_other
    let amp = |i: usize, k: usize| match keep {
        Subsystem::A => a[i * 2 + k],
        Subsystem::B => a[k * 2 + i],
    };
    Mat2::from_fn(|i, j| (0..2).map(|k| amp(i, k) * amp(j, k).conj()).sum())
}

/// U|ψ⟩ for a unitary `u` (checked at the ingestion tolerance).
pub fn apply(u: &Mat4, psi: &StateVec4) -> Result<StateVec4> {
    u.check_unitary(tolerance::INGEST_UNITARITY)?;
    Ok(u.mul_vec(psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn trace_and_det_of_identity() {
        assert_eq!(Mat4::identity().trace(), c(4.0, 0.0));
        assert_eq!(det4(&Mat4::identity()), c(1.0, 0.0));
    }

    #[test]
    fn det_of_swap_is_minus_one() {
        assert_eq!(det4(&swap()), c(-1.0, 0.0));
    }

    #[test]
    fn det_matches_product_of_diagonal_and_scaling() {
        let d = Mat4::from_fn(|r, cc| if r == cc { c(r as f64 + 1.0, 0.5) } else { ZERO });
        let expect = c(1.0, 0.5) * c(2.0, 0.5) * c(3.0, 0.5) * c(4.0, 0.5);
        assert_abs_diff_eq!((det4(&d) - expect).norm(), 0.0, epsilon = 1e-12);
        // det(kA) = k⁴ det(A)
        let k = c(0.3, -1.1);
        let lhs = det4(&d.scale(k));
        let rhs = k.powi(4) * det4(&d);
        assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn kron_of_identities() {
        let k: Mat4 = kron(&Mat2::identity(), &Mat2::identity());
        assert_eq!(k, Mat4::identity());
    }

    #[test]
    fn kron_of_swaps_permutes_pairs() {
        let s = swap_swap();
        // |a,b,c,d⟩ = |1,0,0,1⟩ (index 9) ↦ |0,1,1,0⟩ (index 6)
        assert_eq!(s[(6, 9)], ONE);
        assert_eq!(s * s, Mat16::identity());
    }

    #[test]
    fn hs_inner_examples() {
        assert_eq!(Mat4::identity().hs_inner(&Mat4::identity()), c(4.0, 0.0));
        assert_eq!(Mat4::identity().hs_inner(&swap()), c(2.0, 0.0));
    }

    #[test]
    fn t13_examples() {
        let t = transposition_t13();
        let e = |i| StateVec::<16>::basis(i);
        assert_eq!(t.mul_vec(&e(0)), e(0));
        // |1000⟩ -> |0010⟩
        assert_eq!(t.mul_vec(&e(0b1000)), e(0b0010));
        assert_eq!(t * t, Mat16::identity());
    }

    #[test]
    fn t13_is_permutation() {
        let t = transposition_t13();
        for r in 0..16 {
            let ones = (0..16).filter(|&cc| t[(r, cc)] == ONE).count();
            let zeros = (0..16).filter(|&cc| t[(r, cc)] == ZERO).count();
            assert_eq!((ones, zeros), (1, 15));
            assert_eq!((0..16).filter(|&rr| t[(rr, r)] == ONE).count(), 1);
        }
    }

    #[test]
    fn partial_trace_of_product_and_bell() {
        let rho = partial_trace(&StateVec4::basis(0), Subsystem::A);
        assert_eq!(rho, Mat2::from_rows([[ONE, ZERO], [ZERO, ZERO]]));

        let h = c(FRAC_1_SQRT_2, 0.0);
        let bell = StateVec4::new([h, ZERO, ZERO, h]).unwrap();
        for side in [Subsystem::A, Subsystem::B] {
            let rho = partial_trace(&bell, side);
            assert!(rho.max_abs_diff(&Mat2::identity().scale(c(0.5, 0.0))) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_unequal_superposition() {
        let psi = StateVec4::new([c((1.0f64 / 3.0).sqrt(), 0.0), ZERO, ZERO, c((2.0f64 / 3.0).sqrt(), 0.0)]).unwrap();
        let rho = partial_trace(&psi, Subsystem::A);
        let expect = Mat2::from_rows([[c(1.0 / 3.0, 0.0), ZERO], [ZERO, c(2.0 / 3.0, 0.0)]]);
        assert!(rho.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_the_right_qubit() {
        // |0⟩_A ⊗ |1⟩_B
        let psi = StateVec4::basis(0b01);
        assert_eq!(partial_trace(&psi, Subsystem::A)[(0, 0)], ONE);
        assert_eq!(partial_trace(&psi, Subsystem::B)[(1, 1)], ONE);
    }

    #[test]
    fn apply_identity_and_swap() {
        let psi = StateVec4::normalized([c(0.1, 0.2), c(-0.3, 0.0), c(0.0, 0.7), c(0.5, -0.5)]).unwrap();
        assert_eq!(apply(&Mat4::identity(), &psi).unwrap(), psi);
        assert_eq!(apply(&swap(), &StateVec4::basis(0b01)).unwrap(), StateVec4::basis(0b10));
    }

    #[test]
    fn apply_rejects_non_unitary() {
        let m = Mat4::identity().scale(c(1.1, 0.0));
        match apply(&m, &StateVec4::basis(0)) {
            Err(Error::NonUnitary { defect, .. }) => assert_abs_diff_eq!(defect, 0.21, epsilon = 1e-12),
            other => panic!("expected NonUnitary, got {other:?}"),
        }
    }

    #[test]
    fn state_constructor_checks_norm() {
        assert!(StateVec2::new([ONE, ONE]).is_err());
        assert!(StateVec2::normalized([ZERO, ZERO]).is_err());
        assert!(StateVec2::new([ONE, ZERO]).is_ok());
    }
}
