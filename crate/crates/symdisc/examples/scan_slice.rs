//! Plot-ready CSV scan of the n = 3 slice: the sign change of r along each
//! q-row traces the boundary curve p = 1 − q² for real parameters.
//!
//! ```bash
//! cargo run -p symdisc --example scan_slice > g3_scan.csv
//! ```

use num_complex::Complex64;
use symdisc::geometry::{r_value, slice_membership_closed_form};
use symdisc::poly::Tolerances;

fn main() -> symdisc::Result<()> {
    let tol = Tolerances::default();
    let steps = 60;
    println!("re_p,im_p,re_q,im_q,r_or_s,verdict");
    for qi in 0..steps {
        let q = Complex64::new(qi as f64 / (steps - 1) as f64, 0.0);
        for pi in 0..steps {
            let p = Complex64::new(1.2 * pi as f64 / (steps - 1) as f64, 0.0);
            let verdict = slice_membership_closed_form(3, p, q, &tol)?.verdict;
            println!("{},{},{},{},{},{}", p.re, p.im, q.re, q.im, r_value(p, q), verdict);
        }
    }
    Ok(())
}
