use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};

const MAX_SWEEPS: usize = 64;
const CONVERGENCE: f64 = 1e-14;

/// Eigen-decomposition of a Hermitian matrix. `values` ascend; column j of `vectors`
/// belongs to `values[j]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// V diag(f(λ)) V†
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &w) in fv.iter().enumerate() {
                    acc += v[(i, k)] * v[(j, k)].conj() * w;
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|x| x)
    }
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi. Each rotation J = P·R, where P = diag(1, e^{-iφ}) makes the
/// (p,q) entry real and R is the classic real rotation that zeroes it.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    if !h.is_hermitian(1e-9) {
        return Err(LinalgError::NotHermitian);
    }
    let n = h.dim();
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let target = CONVERGENCE * h.frobenius_norm();

    let mut sweeps = 0;
    while off_diagonal_mass(&a) > target {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let z = a[(p, q)];
    let mag = z.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = z / mag; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // columns: A ← A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    // rows: A ← J† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
}

/// Spectral functions accepted by [`matrix_fn`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFunction {
    /// -ln x; requires a strictly positive spectrum.
    NegLog,
    /// e^{-β x}, unnormalised.
    ExpScaled(f64),
}

const NEG_LOG_FLOOR: f64 = 1e-14;

pub fn matrix_fn(h: &ComplexMatrix, f: MatrixFunction) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(h)?;
    match f {
        MatrixFunction::NegLog => {
            if let Some(&min) = eig.values.first() {
                if min <= NEG_LOG_FLOOR {
                    return Err(LinalgError::Singular(min));
                }
            }
            Ok(eig.map(|x| -x.ln()))
        }
        MatrixFunction::ExpScaled(beta) => Ok(eig.map(|x| (-beta * x).exp())),
    }
}

/// Eigenvalues (unit modulus) and eigenvectors of a unitary matrix.
///
/// The Hermitian combination (U+U†)/2 + c·(U−U†)/(2i) shares U's eigenvectors for any
/// real c because both parts commute with U. An irrational c keeps distinct eigenphases
/// from landing on the same eigenvalue of the combination. Eigenvalues of U are then
/// read off as v†Uv.
pub fn unitary_eig(u: &ComplexMatrix) -> Result<(Vec<Complex64>, ComplexMatrix), LinalgError> {
    if !u.is_unitary(1e-9) {
        return Err(LinalgError::NotUnitary);
    }
    let n = u.dim();
    let ud = u.adjoint();
    let c = std::f64::consts::SQRT_2 - 1.0 / std::f64::consts::PI;
    let mut h = ComplexMatrix::zeros(n);
    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5 * c);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = (u[(i, j)] + ud[(i, j)]) * half + (u[(i, j)] - ud[(i, j)]) * minus_half_i;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let m = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            h[(i, j)] = m;
            h[(j, i)] = m.conj();
        }
    }
    let eig = hermitian_eig(&h)?;
    let v = eig.vectors;
    let uv = u.mul_unchecked(&v);
    let lambdas = (0..n)
        .map(|k| (0..n).map(|r| v[(r, k)].conj() * uv[(r, k)]).sum::<Complex64>())
        .map(|l: Complex64| l / l.norm())
        .collect();
    Ok((lambdas, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_hermitian, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_input_sorted() {
        let e = hermitian_eig(&ComplexMatrix::diag_real(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = hermitian_eig(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [2, 3, 5, 8, 16, 32] {
            let h = random_hermitian(&mut rng, dim);
            let e = hermitian_eig(&h).unwrap();
            assert!(e.reconstruct().max_abs_diff(&h).unwrap() <= 1e-9, "dim {dim}");
            let vtv = e.vectors.adjoint().mul_unchecked(&e.vectors);
            assert!(vtv.max_abs_diff(&ComplexMatrix::identity(dim)).unwrap() <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(&mut rng, 4);
        let h = ComplexMatrix::diag_real(&[1.0, 1.0, -2.0, -2.0]).conjugate_by(&u).unwrap();
        let e = hermitian_eig(&h).unwrap();
        assert!(e.reconstruct().max_abs_diff(&h).unwrap() <= 1e-9);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(LinalgError::NotHermitian)));
    }

    #[test]
    fn neg_log_of_half_identity() {
        let m = matrix_fn(&ComplexMatrix::diag_real(&[0.5, 0.5]), MatrixFunction::NegLog).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!(m.max_abs_diff(&ComplexMatrix::diag_real(&[ln2, ln2])).unwrap() < 1e-15);
    }

    #[test]
    fn exp_scaled_at_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = random_hermitian(&mut rng, 4);
        let m = matrix_fn(&h, MatrixFunction::ExpScaled(0.0)).unwrap();
        assert!(m.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-12);
    }

    #[test]
    fn neg_log_exp_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(&mut rng, 4);
        let beta = 0.7;
        let back = matrix_fn(&matrix_fn(&h, MatrixFunction::ExpScaled(beta)).unwrap(), MatrixFunction::NegLog)
            .unwrap();
        assert!(back.max_abs_diff(&h.scale_real(beta)).unwrap() < 1e-9);
    }

    #[test]
    fn neg_log_refuses_pure_state() {
        let p = ComplexMatrix::diag_real(&[1.0, 0.0]);
        assert!(matches!(matrix_fn(&p, MatrixFunction::NegLog), Err(LinalgError::Singular(_))));
    }

    #[test]
    fn unitary_eigs_diagonalise() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for dim in [2, 4, 8, 16] {
            let u = random_unitary(&mut rng, dim);
            let (lam, v) = unitary_eig(&u).unwrap();
            let mut d = ComplexMatrix::zeros(dim);
            for (i, l) in lam.iter().enumerate() {
                d[(i, i)] = *l;
            }
            let back = v.mul_unchecked(&d).mul_unchecked(&v.adjoint());
            assert!(back.max_abs_diff(&u).unwrap() < 1e-9, "dim {dim}");
        }
    }
}
