//! S_n from the eigenphases of U agrees with the weighted sum over simulated R_k.

use periodicity::bounds::{evaluate_inequality, sn_coefficients, SpectralForm};
use periodicity::linalg::random::{random_density, random_unitary};
use periodicity::series::RecurrenceSeries;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let u = random_unitary(&mut rng, 8);
    let rho = random_density(&mut rng, vec![2, 2, 2]);
    let form = SpectralForm::new(&u, &rho)?;

    let mut cur = rho.matrix().clone();
    let mut r = vec![rho.purity()];
    for _ in 0..40 {
        cur = cur.conjugate_by(&u)?;
        r.push(rho.matrix().trace_product(&cur)?.re);
    }
    let series = RecurrenceSeries::exact(r)?;
    for n in [2, 10, 40] {
        let direct = evaluate_inequality(&sn_coefficients(n)?, &series)?;
        println!("S_{n}: direct {direct:.12e}  spectral {:.12e}", form.sn(n));
    }
    println!("R_1000 from the spectrum alone: {:.6}", form.recurrence(1000));
    Ok(())
}
