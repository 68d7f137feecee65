//! Seeded random biquaternion matrices for tests, examples and the verify suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex_linalg::C64;
use crate::matrix::BqMatrix;
use crate::scalar::Biquaternion;

/// Deterministic sampler over a ChaCha8 stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Components with real and imaginary parts in `{-5, ..., 5}`.
    pub fn int_scalar(&mut self) -> Biquaternion {
        let mut parts = [[0.0; 2]; 4];
        for p in parts.iter_mut().flatten() {
            *p = self.rng.gen_range(-5i32..=5) as f64;
        }
        Biquaternion::from_parts(parts)
    }

    /// Components drawn uniformly from the closed unit disk.
    pub fn disk_scalar(&mut self) -> Biquaternion {
        Biquaternion::from_components(std::array::from_fn(|_| self.disk()))
    }

    pub fn disk(&mut self) -> C64 {
        loop {
            let z = C64::new(
                self.rng.gen_range(-1.0..=1.0),
                self.rng.gen_range(-1.0..=1.0),
            );
            if z.norm_sqr() <= 1.0 {
                return z;
            }
        }
    }

    pub fn int_matrix(&mut self, rows: usize, cols: usize) -> BqMatrix {
        BqMatrix::from_fn(rows, cols, |_, _| self.int_scalar())
    }

    pub fn disk_matrix(&mut self, rows: usize, cols: usize) -> BqMatrix {
        BqMatrix::from_fn(rows, cols, |_, _| self.disk_scalar())
    }

    /// Integer-grid square matrix whose central determinant is bounded away from 0.
    pub fn invertible_matrix(&mut self, n: usize) -> BqMatrix {
        loop {
            let a = self.int_matrix(n, n);
            if a.rank().twice_rank == 2 * n {
                return a;
            }
        }
    }

    /// Product of an `m×r` and an `r×n` disk matrix, so `rank ≤ r`.
    pub fn low_rank_matrix(&mut self, rows: usize, cols: usize, inner: usize) -> BqMatrix {
        let l = self.disk_matrix(rows, inner);
        let r = self.disk_matrix(inner, cols);
        l.matmul(&r).expect("inner dimensions agree")
    }

    /// Zero divisor `s (1 + i e1) t` with `s, t` drawn from the disk, so
    /// the 1×1 matrix has half-integer rank.
    pub fn zero_divisor(&mut self) -> Biquaternion {
        let z = Biquaternion::new(C64::ONE, C64::new(0.0, 1.0), C64::ZERO, C64::ZERO);
        self.disk_scalar() * z * self.disk_scalar()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = Sampler::new(7).int_matrix(3, 2);
        let b = Sampler::new(7).int_matrix(3, 2);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).int_matrix(3, 2));
    }

    #[test]
    fn grid_and_disk_ranges() {
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let q = s.int_scalar();
            for z in q.components() {
                assert!(z.re.fract() == 0.0 && z.re.abs() <= 5.0 && z.im.abs() <= 5.0);
            }
            assert!(s.disk().norm() <= 1.0);
        }
        assert_eq!(s.invertible_matrix(3).rank().twice_rank, 6);
        assert!(s.low_rank_matrix(4, 4, 2).rank().twice_rank <= 4);
        assert!(s.zero_divisor().is_zero_divisor());
    }
}
