//! Builds a non-convexity certificate for every slice set G₃ … G₁₂, runs
//! the independent verifier on each, and shows a JSON round trip.
//!
//! ```bash
//! cargo run -p symdisc --example certificate_roundtrip
//! ```

use symdisc::certificates::{build_certificate, verify_certificate, NonConvexityCertificate};
use symdisc::poly::Tolerances;

fn main() -> symdisc::Result<()> {
    let tol = Tolerances::default();
    for n in 3..=12 {
        let cert = build_certificate(n, None, &tol, 0)?;
        let report = verify_certificate(&cert, &tol, 1);
        println!(
            "n={n:>2}  family={:<18}  q'={}  h_mid={:.9}  epsilon={:.3e}  verify: {}",
            cert.family.to_string(),
            cert.q_prime,
            cert.h_mid,
            cert.epsilon,
            if report.pass { "PASS" } else { "FAIL" },
        );
        if !report.pass {
            println!("{}", report.failures());
        }
    }

    println!();
    println!("certificate JSON for n = 3:");
    let cert = build_certificate(3, None, &tol, 0)?;
    let json = cert.to_json();
    println!("{json}");
    let back = NonConvexityCertificate::from_json(&json)?;
    assert_eq!(back, cert, "round trip is bit-exact");
    Ok(())
}
