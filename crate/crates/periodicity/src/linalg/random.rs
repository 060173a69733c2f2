//! Random ensembles for sweeps and property tests.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{ComplexMatrix, DensityMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_vec(dim, data).expect("square by construction")
}

/// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = (0..dim).map(|j| (0..dim).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..dim {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let proj: Complex64 = done[k].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                *x -= proj * y;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    g.add(&g.adjoint()).expect("same dim").scale_real(0.5)
}

/// Full-rank mixed state G G† / tr.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> DensityMatrix {
    let dim = dims.iter().product();
    let g = ginibre(rng, dim);
    let m = g.mul_unchecked(&g.adjoint());
    let tr = m.trace().re;
    DensityMatrix::from_parts(m.scale_real(1.0 / tr), dims).expect("dims match")
}

pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> DensityMatrix {
    let dim: usize = dims.iter().product();
    let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
    DensityMatrix::pure(&v, dims).expect("nonzero vector")
}

/// Random traceless Hermitian operator.
pub fn random_traceless<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, dim);
    let shift = h.trace().re / dim as f64;
    h.sub(&ComplexMatrix::identity(dim).scale_real(shift)).expect("same dim")
}
