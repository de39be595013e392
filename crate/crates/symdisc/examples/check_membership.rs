//! Membership of points in the symmetrized polydisc and its slices, decided
//! three independent ways: Cohn recursion, root oracle, and (for n = 3, 4
//! slices) the closed-form defining functions.
//!
//! ```bash
//! cargo run -p symdisc --example check_membership
//! ```

use num_complex::Complex64;
use symdisc::cli::format_complex;
use symdisc::geometry::{
    in_symmetrized_polydisc, r_value, slice_membership_closed_form, slice_poly, symmetrize,
    SliceCoords,
};
use symdisc::poly::{cohn_all_roots_in_disc, oracle_all_roots_in_disc, Tolerances};

fn main() -> symdisc::Result<()> {
    let tol = Tolerances::default();

    println!("== σ-points of 𝔾₃ ==");
    for roots in [
        [0.5, 0.5, 0.5],
        [0.99, 0.5, -0.7],
        [1.2, 0.1, 0.1],
    ] {
        let z: Vec<Complex64> = roots.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let s = symmetrize(&z)?;
        let loc = in_symmetrized_polydisc(&s, &tol)?;
        let coords: Vec<String> = s.coords().iter().map(format_complex).collect();
        println!("roots {roots:?} -> σ = ({}) -> {}", coords.join(", "), loc.verdict);
    }

    println!();
    println!("== n = 3 slice points (p, q), polynomial ζ³ + pζ + q ==");
    let cases = [
        ("origin", Complex64::ZERO, Complex64::ZERO),
        ("inside", Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)),
        (
            "witness midpoint",
            Complex64::new(0.0, 0.649519052838329),
            Complex64::new(0.25, 0.25),
        ),
        (
            "boundary endpoint",
            Complex64::from_polar(0.75, 2.0 * std::f64::consts::PI / 3.0),
            Complex64::new(0.5, 0.0),
        ),
    ];
    for (label, p, q) in cases {
        let sc = SliceCoords::new(3, vec![p, q])?;
        let poly = slice_poly(&sc);
        let cohn = cohn_all_roots_in_disc(&poly, &tol)?;
        let oracle = oracle_all_roots_in_disc(&poly, &tol, 0)?;
        let closed = slice_membership_closed_form(3, p, q, &tol)?;
        println!(
            "{label:>18}: cohn {:<13} oracle {:<13} closed-form {:<13} r = {:+.6e}, max |root| = {:.6}",
            cohn.verdict.to_string(),
            oracle.verdict.to_string(),
            closed.verdict.to_string(),
            r_value(p, q),
            oracle.max_modulus_estimate.unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
