//! Seeded random unitaries and states for property checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c, ComplexMatrix, C64};
use crate::state::{DensityMatrix, PureState};

/// Deterministic generator used by the verification suites.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unitary: Gram-Schmidt on a complex Gaussian matrix, with the
/// column phases fixed so the distribution is exactly Haar.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for q in &cols {
            let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut data = vec![c(0.0, 0.0); n * n];
    for (k, col) in cols.iter().enumerate() {
        for i in 0..n {
            data[i * n + k] = col[i];
        }
    }
    ComplexMatrix::new(n, data).expect("finite entries")
}

/// Uniformly random point on SU(2) as Euler-free 2x2 matrix.
pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let (mut a, mut b) = (gaussian(rng), gaussian(rng));
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    a /= norm;
    b /= norm;
    ComplexMatrix::new(2, vec![a, -b.conj(), b, a.conj()]).expect("finite entries")
}

/// Haar-random pure state.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> PureState {
    let n: usize = dims.iter().product();
    let amps = (0..n).map(|_| gaussian(rng)).collect();
    PureState::normalized(dims, amps).expect("nonzero Gaussian vector")
}

/// Random full-rank mixed state `G G^dagger / Tr(G G^dagger)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let g = ComplexMatrix::new(n, (0..n * n).map(|_| gaussian(rng)).collect()).expect("finite");
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(dims, m.scale_real(1.0 / tr)).expect("Gram matrices are PSD")
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::new(n, (0..n * n).map(|_| gaussian(rng)).collect()).expect("finite");
    (&g + &g.adjoint()).scale_real(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = seeded(3);
        for n in 1..=8 {
            assert!(random_unitary(&mut rng, n).unitarity_defect() < 1e-12);
        }
        assert!(random_su2(&mut rng).unitarity_defect() < 1e-14);
    }

    #[test]
    fn same_seed_same_stream() {
        let a = random_unitary(&mut seeded(11), 4);
        let b = random_unitary(&mut seeded(11), 4);
        assert_eq!(a, b);
    }
}
