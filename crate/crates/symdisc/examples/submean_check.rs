//! Sub-mean-value spot checks of log h: the gauge of 𝔾₃ passes (its log is
//! plurisubharmonic), the dented ball fails by a wide margin.
//!
//! ```bash
//! cargo run -p symdisc --example submean_check
//! ```

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symdisc::geometry::{
    dented_ball_gauge, in_symmetrized_polydisc, log_gauge_submean_check, symmetrize, SymPoint,
    Weights,
};
use symdisc::poly::{Tolerances, Verdict};

fn main() -> symdisc::Result<()> {
    let tol = Tolerances::default();
    let w3 = Weights::symdisc(3);
    let member = |z: &[Complex64]| {
        let s = SymPoint::new(z.to_vec()).expect("finite");
        in_symmetrized_polydisc(&s, &tol).expect("monic").verdict != Verdict::NotAllInside
    };

    println!("𝔾₃  (pseudoconvex: every check passes)");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for trial in 0..5u64 {
        let roots: Vec<Complex64> = (0..3)
            .map(|_| {
                Complex64::from_polar(
                    0.3 + 0.4 * rng.random::<f64>(),
                    std::f64::consts::TAU * rng.random::<f64>(),
                )
            })
            .collect();
        let s = symmetrize(&roots)?;
        let direction = vec![
            Complex64::new(0.6, 0.2),
            Complex64::new(-0.3, 0.5),
            Complex64::new(0.1, -0.4),
        ];
        let report = log_gauge_submean_check(
            member,
            &w3,
            s.coords(),
            &direction,
            0.01,
            64,
            &tol,
            trial,
        )?;
        println!(
            "  trial {trial}: log h(z) = {:+.9}, circle mean = {:+.9}, pass = {}",
            report.lhs, report.rhs, report.pass
        );
    }

    println!();
    println!("dented ball (not pseudoconvex: the dent breaks the inequality)");
    let wd = Weights::new(vec![1, 1])?;
    let dent = |z: &[Complex64]| dented_ball_gauge(z, 1.0, 400.0) < 1.0;
    let z = vec![Complex64::new(0.3, 0.0), Complex64::new(0.3, 0.0)];
    let direction = vec![
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
    ];
    let report = log_gauge_submean_check(dent, &wd, &z, &direction, 0.05, 64, &tol, 0)?;
    println!(
        "  log h(z) = {:+.9}, circle mean = {:+.9}, pass = {}  (violation {:+.3})",
        report.lhs,
        report.rhs,
        report.pass,
        report.lhs - report.rhs
    );
    Ok(())
}
