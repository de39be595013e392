//! Independent all-roots oracle: Weierstrass (Durand–Kerner) simultaneous
//! iteration.
//!
//! Simultaneous iteration is used instead of deflation because deflation
//! compounds error on clustered roots. The start configuration is a circle of
//! radius `1.1 ×` the Cauchy bound with a seed-derived phase offset, which
//! makes runs reproducible.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Poly, RootLocation, Tolerances, Verdict};
use crate::{Error, Result};

/// Residual guarantee of [`find_roots`]: `|p(root)|` stays below this times
/// the evaluation magnitude `max(Σ_k |a_k||root|^{n−k}, max|coeff|)` for
/// every reported root. For roots of modulus ≲ 1 this is the plain
/// `|p(root)| / max|coeff|` bound; the magnitude factor keeps the bound
/// meaningful for far-out roots, where Horner rounding alone is proportional
/// to it.
pub const ROOT_RESIDUAL_BOUND: f64 = 1e-8;

/// Horner value together with the running magnitude `Σ_k |a_k||z|^{n−k}`
/// that bounds its floating-point noise.
fn eval_with_magnitude(p: &Poly, z: Complex64) -> (Complex64, f64) {
    let zn = z.norm();
    let mut acc = Complex64::ZERO;
    let mut mag = 0.0;
    for &c in p.coeffs() {
        acc = acc * z + c;
        mag = mag * zn + c.norm();
    }
    (acc, mag)
}

/// `1 + max_{j≥1} |a_j / a₀|`: every root has modulus at most this.
pub fn cauchy_bound(p: &Poly) -> f64 {
    let lead = p.leading().norm();
    let max_rest = p.coeffs()[1..]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    1.0 + max_rest / lead
}

/// All `n` roots of `p` (with multiplicity) via simultaneous iteration.
///
/// Trailing zero coefficients are split off first; they contribute exact
/// roots at the origin and would otherwise slow the iteration down as an
/// artificial cluster. The iteration stops when either the largest update
/// falls below `root_iter_tol` or every residual is already far below the
/// guaranteed bound; it fails with the best iterate attached if
/// `root_iter_max` sweeps are exhausted.
pub fn find_roots(p: &Poly, tol: &Tolerances, seed: u64) -> Result<Vec<Complex64>> {
    tol.validate()?;
    let p = p.normalize()?;
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }

    // Exact zero roots: strip trailing zero coefficients.
    let trailing = p
        .coeffs()
        .iter()
        .rev()
        .take_while(|c| c.re == 0.0 && c.im == 0.0)
        .count();
    let mut roots = vec![Complex64::ZERO; trailing];
    let work = Poly::new(p.coeffs()[..p.coeffs().len() - trailing].to_vec())?;
    let d = work.degree();
    if d == 0 {
        return Ok(roots);
    }

    // Monic working copy; roots are unchanged.
    let lead = work.leading();
    let monic = Poly::new(work.coeffs().iter().map(|c| c / lead).collect())?;
    let scale = monic.max_coeff_modulus();
    let residual_stop = tol.root_iter_tol * scale * d as f64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    let radius = 1.1 * cauchy_bound(&monic);
    let mut z: Vec<Complex64> = (0..d)
        .map(|i| Complex64::from_polar(radius, std::f64::consts::TAU * i as f64 / d as f64 + phase))
        .collect();

    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < tol.root_iter_max {
        sweeps += 1;
        let mut max_step = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::ONE;
            for j in 0..d {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let mut step = monic.eval(z[i]) / denom;
            if !step.re.is_finite() || !step.im.is_finite() {
                // Collided iterates; nudge apart and retry next sweep.
                z[i] += Complex64::from_polar(1e-9 * radius, i as f64);
                step = Complex64::ZERO;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        let scale_pos = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
        if max_step < tol.root_iter_tol * scale_pos {
            converged = true;
            break;
        }
        // Multiple roots stall the steps while the residuals keep dropping.
        if z.iter().all(|&r| monic.eval(r).norm() < residual_stop) {
            converged = true;
            break;
        }
    }

    let residuals: Vec<f64> = z
        .iter()
        .map(|&r| {
            let (value, magnitude) = eval_with_magnitude(&monic, r);
            value.norm() / magnitude.max(scale)
        })
        .collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if !converged || worst >= ROOT_RESIDUAL_BOUND {
        return Err(Error::RootsDidNotConverge {
            sweeps,
            best: z,
            residuals,
            worst_residual: worst,
        });
    }
    roots.extend(z);
    Ok(roots)
}

/// Largest root modulus of `p`, computed through [`find_roots`].
pub fn max_root_modulus(p: &Poly, tol: &Tolerances, seed: u64) -> Result<f64> {
    Ok(find_roots(p, tol, seed)?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max))
}

/// Oracle-side membership verdict: compares the maximum root modulus with 1
/// inside the same boundary band as the Cohn recursion and records the
/// estimate.
pub fn oracle_all_roots_in_disc(p: &Poly, tol: &Tolerances, seed: u64) -> Result<RootLocation> {
    let p = p.normalize()?;
    if p.degree() == 0 {
        return Ok(RootLocation::all_inside());
    }
    let m = max_root_modulus(&p, tol, seed)?;
    let verdict = if m < 1.0 - tol.boundary_band {
        Verdict::AllInside
    } else if m > 1.0 + tol.boundary_band {
        Verdict::NotAllInside
    } else {
        Verdict::Indeterminate
    };
    Ok(RootLocation {
        verdict,
        max_modulus_estimate: Some(m),
        failing_stage: None,
    })
}
