//! The two (1,2)-balanced example domains D = {|z₁|² + |z₂+z₁²| < 1} and
//! G = {|z₁|² + |z₂| < 1}: the polynomial change of variables Ξ identifies
//! them, both are stable under π_λ, and the midpoint probe comes back empty
//! on both: G is a sum of convex functions, and D satisfies the same
//! midpoint inequality through the parallelogram identity.
//!
//! ```bash
//! cargo run -p symdisc --example balanced_domains
//! ```

use symdisc::certificates::balanced_example_check;

fn main() -> symdisc::Result<()> {
    let report = balanced_example_check(100_000, 200_000, 0)?;
    println!("samples per check:        {}", report.samples);
    println!("Ξ-equivalence failures:   {} (banded skips: {})",
        report.xi_equivalence_failures, report.xi_banded_skips);
    println!("π_λ stability failures:   D: {}, G: {}",
        report.d_balanced_failures, report.g_balanced_failures);
    println!(
        "probe on D: found = {:?} in {} trials",
        report.probe_d.found.as_ref().map(|h| h.trial),
        report.probe_d.trials_run
    );
    println!(
        "probe on G: found = {:?} in {} trials",
        report.probe_g.found.as_ref().map(|h| h.trial),
        report.probe_g.trials_run
    );
    println!();
    println!("full report as JSON:");
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}
