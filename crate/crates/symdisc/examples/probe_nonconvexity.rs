//! Randomized midpoint probes: the n = 3 slice set yields a violation within
//! a few hundred pairs, the convex comparison domain yields none.
//!
//! ```bash
//! cargo run -p symdisc --example probe_nonconvexity
//! ```

use symdisc::certificates::{
    example_g_membership, example_g_sampler, g3_slice_sampler, midpoint_probe,
};
use symdisc::cli::format_complex;
use symdisc::geometry::{r_value, slice_membership_closed_form};
use symdisc::poly::Tolerances;

fn main() {
    let tol = Tolerances::default();

    let report = midpoint_probe(
        |z| slice_membership_closed_form(3, z[0], z[1], &tol).expect("closed form"),
        g3_slice_sampler(tol.clone()),
        1_000_000,
        0,
    );
    match &report.found {
        Some(hit) => {
            println!("G₃ slice: violation at trial {}", hit.trial);
            println!(
                "  a        = ({}, {})",
                format_complex(&hit.a[0]),
                format_complex(&hit.a[1])
            );
            println!(
                "  b        = ({}, {})",
                format_complex(&hit.b[0]),
                format_complex(&hit.b[1])
            );
            println!(
                "  midpoint = ({}, {})  with r = {:+.6e} > 0",
                format_complex(&hit.midpoint[0]),
                format_complex(&hit.midpoint[1]),
                r_value(hit.midpoint[0], hit.midpoint[1])
            );
        }
        None => println!("G₃ slice: no violation found (unexpected)"),
    }

    println!();
    let report = midpoint_probe(
        |z| example_g_membership(z, &tol),
        example_g_sampler(),
        1_000_000,
        0,
    );
    println!(
        "convex domain {{|z₁|² + |z₂| < 1}}: found = {:?} after {} trials",
        report.found.map(|h| h.trial),
        report.trials_run
    );
}
