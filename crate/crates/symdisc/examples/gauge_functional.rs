//! The gauge functional of 𝔾ₙ: agreement with the maximum root modulus and
//! the homogeneity law h(πλ z) = |λ|·h(z).
//!
//! ```bash
//! cargo run -p symdisc --example gauge_functional
//! ```

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdisc::geometry::{pi_action, poly_from_sym_point, symdisc_gauge, symmetrize, SymPoint, Weights};
use symdisc::poly::{max_root_modulus, Tolerances};

fn main() -> symdisc::Result<()> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    println!("gauge of σ(0.5, 0.5, 0.5):");
    let s = symmetrize(&[Complex64::new(0.5, 0.0); 3])?;
    println!("  h = {:.12}  (max root modulus is exactly 0.5)", symdisc_gauge(&s, &tol)?);

    println!();
    println!("random σ-points: gauge vs root oracle, and homogeneity");
    let mut worst_oracle = 0.0_f64;
    let mut worst_homog = 0.0_f64;
    for trial in 0..50u64 {
        let n = 3 + (trial as usize % 4);
        let roots: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::from_polar(
                    0.2 + 1.2 * rng.random::<f64>(),
                    std::f64::consts::TAU * rng.random::<f64>(),
                )
            })
            .collect();
        let s = symmetrize(&roots)?;
        let h = symdisc_gauge(&s, &tol)?;
        let m = max_root_modulus(&poly_from_sym_point(&s), &tol, trial)?;
        worst_oracle = worst_oracle.max((h - m).abs());

        let lambda = Complex64::from_polar(
            0.2 + 1.3 * rng.random::<f64>(),
            std::f64::consts::TAU * rng.random::<f64>(),
        );
        let scaled = pi_action(&Weights::symdisc(n), lambda, s.coords())?;
        let hs = symdisc_gauge(&SymPoint::new(scaled)?, &tol)?;
        worst_homog = worst_homog.max((hs - lambda.norm() * h).abs());
    }
    println!("  max |gauge − max root modulus| over 50 points: {worst_oracle:.3e}");
    println!("  max |h(πλ z) − |λ|·h(z)|       over 50 points: {worst_homog:.3e}");
    Ok(())
}
