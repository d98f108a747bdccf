//! Reproducible random numbers.
//!
//! The generator is xoshiro256** seeded through SplitMix64. Both are written
//! out here so that a seed produces the same stream on every platform and
//! every version of this crate, independent of third-party RNG crates.
//!
//! Bit-exact definition:
//!
//! * `splitmix64(state)`: `state += 0x9E3779B97F4A7C15`; `z = state`;
//!   `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`;
//!   `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`; return `z ^ (z >> 31)`
//!   (all arithmetic wrapping mod 2⁶⁴).
//! * [`Xoshiro256::seed_from_u64(s)`]: the four state words are four
//!   consecutive `splitmix64` outputs starting from state `s`.
//! * [`Xoshiro256::for_stream(seed, stream)`]: first `k = splitmix64` output
//!   from state `seed`, then `seed_from_u64(k ^ (stream * 0xD1B54A32D192ED03))`.
//!   Monte-Carlo block `b` of a run with seed `s` uses `for_stream(s, b)`.
//! * `next_u64`: `result = rotl(s1 * 5, 7) * 9`; `t = s1 << 17`;
//!   `s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)`.
//! * `next_f64`: `(next_u64 >> 11) * 2⁻⁵³`, uniform on [0, 1).
//! * `normal_pair`: Box–Muller on two uniforms `u, v`:
//!   `r = sqrt(-2 ln(1 - u))`, `θ = 2π v`, returns `(r cos θ, r sin θ)`.

use std::f64::consts::TAU;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_MIX: u64 = 0xD1B5_4A32_D192_ED03;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xoshiro256 {
    s: [u64; 4],
}

impl Xoshiro256 {
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self { s }
    }

    /// Independent substream `stream` of the run seeded with `seed`.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let mut sm = seed;
        let key = splitmix64(&mut sm);
        Self::seed_from_u64(key ^ stream.wrapping_mul(STREAM_MIX))
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Two independent standard normal deviates.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u = self.next_f64();
        let v = self.next_f64();
        let r = (-2.0 * (1.0 - u).ln()).sqrt();
        let (sin, cos) = (TAU * v).sin_cos();
        (r * cos, r * sin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // Published SplitMix64 outputs for seed 0.
        let mut s = 0u64;
        assert_eq!(splitmix64(&mut s), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(&mut s), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(splitmix64(&mut s), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn xoshiro_reference_values() {
        // xoshiro256** reference implementation with state {1, 2, 3, 4}.
        let mut rng = Xoshiro256 { s: [1, 2, 3, 4] };
        let got: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
        assert_eq!(got, vec![11520, 0, 1509978240, 1215971899390074240]);
    }

    #[test]
    fn streams_differ_and_repeat() {
        let a: Vec<u64> = {
            let mut r = Xoshiro256::for_stream(7, 0);
            (0..8).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = Xoshiro256::for_stream(7, 1);
            (0..8).map(|_| r.next_u64()).collect()
        };
        let a2: Vec<u64> = {
            let mut r = Xoshiro256::for_stream(7, 0);
            (0..8).map(|_| r.next_u64()).collect()
        };
        assert_ne!(a, b);
        assert_eq!(a, a2);
    }

    #[test]
    fn uniform_and_normal_moments() {
        let mut rng = Xoshiro256::seed_from_u64(123);
        let n = 200_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n / 2 {
            let (x, y) = rng.normal_pair();
            s1 += x + y;
            s2 += x * x + y * y;
        }
        let mean = s1 / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
        let u: f64 = (0..n).map(|_| rng.next_f64()).sum::<f64>() / n as f64;
        assert!((u - 0.5).abs() < 0.005);
    }
}
