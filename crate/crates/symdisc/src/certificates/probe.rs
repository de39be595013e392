//! Randomized midpoint probe for convexity violations, and the
//! `(1,2)`-balanced example-domain checks.
//!
//! The probe draws pairs of margin-interior points from a caller-supplied
//! sampler and reports the first pair whose midpoint is outside with margin.
//! For the slice sets the samplers are biased toward the known non-convex
//! boundary region (shrunk points of the boundary families), where violating
//! pairs are dense; a uniform interior sampler would almost never land two
//! points in the shallow dimple at once.
//!
//! The example domains are `D = {|z₁|² + |z₂ + z₁²| < 1}` and
//! `G = {|z₁|² + |z₂| < 1}`, linked by the polynomial map
//! `Ξ(z₁, z₂) = (z₁, z₂ − z₁²)`: since `|(z₂ − z₁²) + z₁²| = |z₂|`, one has
//! `z ∈ G ⟺ Ξ(z) ∈ D` identically. `G` is convex (its defining value is a
//! sum of convex functions). `D` looks bent, but it is convex too: writing
//! `m = (a+b)/2`, the parallelogram identity
//! `|m₁|² = (|a₁|² + |b₁|²)/2 − |(a₁−b₁)/2|²` and the expansion
//! `m₂ + m₁² = ((a₂+a₁²) + (b₂+b₁²))/2 − ((a₁−b₁)/2)²` give
//! `value_D(m) ≤ (value_D(a) + value_D(b))/2`, with the two correction terms
//! cancelling. The probe outcome on `D` is therefore expected to be "none
//! found"; it is recorded, not asserted.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{pi_action, Weights};
use crate::poly::{RootLocation, Tolerances, Verdict};
use crate::Result;

/// A convexity violation found by [`midpoint_probe`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeHit {
    #[serde(with = "crate::complex_pairs")]
    pub a: Vec<Complex64>,
    #[serde(with = "crate::complex_pairs")]
    pub b: Vec<Complex64>,
    #[serde(with = "crate::complex_pairs")]
    pub midpoint: Vec<Complex64>,
    /// 1-based index of the finding trial.
    pub trial: u64,
}

/// Probe outcome: the first violation found, or exhaustion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeReport {
    pub found: Option<ProbeHit>,
    pub trials_run: u64,
}

/// Draws `trials` pairs from `sampler` and returns the first whose midpoint
/// the membership function locates outside with margin.
///
/// The sampler must yield points satisfying `member` with margin; this is
/// not re-checked per trial. Deterministic given the seed.
pub fn midpoint_probe<M, S>(member: M, mut sampler: S, trials: u64, seed: u64) -> ProbeReport
where
    M: Fn(&[Complex64]) -> RootLocation,
    S: FnMut(&mut ChaCha8Rng) -> Vec<Complex64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let a = sampler(&mut rng);
        let b = sampler(&mut rng);
        let midpoint: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| (x + y) / 2.0).collect();
        if member(&midpoint).verdict == Verdict::NotAllInside {
            return ProbeReport {
                found: Some(ProbeHit {
                    a,
                    b,
                    midpoint,
                    trial,
                }),
                trials_run: trial,
            };
        }
    }
    ProbeReport {
        found: None,
        trials_run: trials,
    }
}

/// Margin-interior sampler for the `n = 3` slice set, biased toward the
/// non-convex region: a point of the boundary family
/// `(p'e^{iθ}, q'e^{i(3θ/2 + sπ)})`, `p' = 1 − q'²` (where `r = 0` exactly),
/// shrunk inward by a small random `π_{1−ε}`. Re-draws until the closed-form
/// membership is `AllInside`.
pub fn g3_slice_sampler(tol: Tolerances) -> impl FnMut(&mut ChaCha8Rng) -> Vec<Complex64> {
    move |rng: &mut ChaCha8Rng| loop {
        let q_prime = 0.35 + 0.3 * rng.random::<f64>();
        let p_prime = 1.0 - q_prime * q_prime;
        let theta = std::f64::consts::TAU * 2.0 * rng.random::<f64>();
        let branch = if rng.random::<bool>() { std::f64::consts::PI } else { 0.0 };
        let phi = 1.5 * theta + branch;
        // log-uniform shrink in [1e-5, 1e-3]
        let eps = 10f64.powf(-5.0 + 2.0 * rng.random::<f64>());
        let f = 1.0 - eps;
        let p = Complex64::from_polar(p_prime * f * f, theta);
        let q = Complex64::from_polar(q_prime * f * f * f, phi);
        if crate::geometry::slice_membership_closed_form(3, p, q, &tol)
            .expect("n=3 has a closed form")
            .verdict
            == Verdict::AllInside
        {
            return vec![p, q];
        }
    }
}

/// Margin-interior sampler for the `n = 4` slice set; boundary family
/// `(p'e^{iθ}, q'e^{i(4θ + 2πs)/3})`, `p' = (1−q')√(1+q')` (where `s = 0`
/// exactly), shrunk inward.
pub fn g4_slice_sampler(tol: Tolerances) -> impl FnMut(&mut ChaCha8Rng) -> Vec<Complex64> {
    move |rng: &mut ChaCha8Rng| loop {
        let q_prime = 0.25 + 0.3 * rng.random::<f64>();
        let p_prime = (1.0 - q_prime) * (1.0 + q_prime).sqrt();
        let theta = std::f64::consts::TAU * 3.0 * rng.random::<f64>();
        let branch = std::f64::consts::TAU / 3.0 * rng.random_range(0..3) as f64;
        let phi = 4.0 * theta / 3.0 + branch;
        let eps = 10f64.powf(-5.0 + 2.0 * rng.random::<f64>());
        let f = 1.0 - eps;
        let p = Complex64::from_polar(p_prime * f * f * f, theta);
        let q = Complex64::from_polar(q_prime * f * f * f * f, phi);
        if crate::geometry::slice_membership_closed_form(4, p, q, &tol)
            .expect("n=4 has a closed form")
            .verdict
            == Verdict::AllInside
        {
            return vec![p, q];
        }
    }
}

/// Defining value of `D`: `|z₁|² + |z₂ + z₁²|`.
pub fn example_d_value(z: &[Complex64]) -> f64 {
    z[0].norm_sqr() + (z[1] + z[0] * z[0]).norm()
}

/// Defining value of `G`: `|z₁|² + |z₂|`.
pub fn example_g_value(z: &[Complex64]) -> f64 {
    z[0].norm_sqr() + z[1].norm()
}

fn banded_verdict(margin: f64, band: f64) -> RootLocation {
    let verdict = if margin > band {
        Verdict::AllInside
    } else if margin < -band {
        Verdict::NotAllInside
    } else {
        Verdict::Indeterminate
    };
    RootLocation {
        verdict,
        max_modulus_estimate: None,
        failing_stage: None,
    }
}

/// Banded membership of `D`.
pub fn example_d_membership(z: &[Complex64], tol: &Tolerances) -> RootLocation {
    banded_verdict(1.0 - example_d_value(z), tol.boundary_band)
}

/// Banded membership of `G`.
pub fn example_g_membership(z: &[Complex64], tol: &Tolerances) -> RootLocation {
    banded_verdict(1.0 - example_g_value(z), tol.boundary_band)
}

/// `Ξ(z₁, z₂) = (z₁, z₂ − z₁²)`; maps `G` biholomorphically onto `D`.
pub fn xi_map(z: &[Complex64]) -> Vec<Complex64> {
    vec![z[0], z[1] - z[0] * z[0]]
}

const EXAMPLE_SAMPLER_MARGIN: f64 = 1e-6;

/// Uniform margin-interior sampler for `G`: `z₁` uniform in the unit disc,
/// `z₂` uniform in the disc of the remaining radius.
pub fn example_g_sampler() -> impl FnMut(&mut ChaCha8Rng) -> Vec<Complex64> {
    move |rng: &mut ChaCha8Rng| loop {
        let z1 = Complex64::from_polar(
            rng.random::<f64>().sqrt(),
            std::f64::consts::TAU * rng.random::<f64>(),
        );
        let cap = 1.0 - EXAMPLE_SAMPLER_MARGIN - z1.norm_sqr();
        if cap <= 0.0 {
            continue;
        }
        let z2 = Complex64::from_polar(
            cap * rng.random::<f64>().sqrt(),
            std::f64::consts::TAU * rng.random::<f64>(),
        );
        return vec![z1, z2];
    }
}

/// Uniform margin-interior sampler for `D`; pushes a `G` sample through `Ξ`.
pub fn example_d_sampler() -> impl FnMut(&mut ChaCha8Rng) -> Vec<Complex64> {
    let mut g = example_g_sampler();
    move |rng: &mut ChaCha8Rng| xi_map(&g(rng))
}

/// Report of [`balanced_example_check`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BalancedExampleReport {
    pub samples: u64,
    pub probe_trials: u64,
    pub seed: u64,
    /// Box samples where membership of `z` in `G` and of `Ξ(z)` in `D`
    /// disagreed (boundary-banded cases are skipped, and counted below).
    pub xi_equivalence_failures: u64,
    pub xi_banded_skips: u64,
    /// Samples where `π_λ` with `|λ| ≤ 1` left the domain.
    pub d_balanced_failures: u64,
    pub g_balanced_failures: u64,
    pub probe_d: ProbeReport,
    pub probe_g: ProbeReport,
}

/// Checks the pair of `(1,2)`-balanced example domains:
///
/// 1. `z ∈ G ⟺ Ξ(z) ∈ D` on random box samples (an algebraic identity, so
///    zero failures are expected outside the boundary band);
/// 2. stability of both domains under `π_λ`, `|λ| ≤ 1`, on interior samples;
/// 3. a midpoint probe on each domain. `G` is convex; `D` is convex as well
///    (see the module notes), so both probes are expected to come back
///    empty; the outcome is recorded either way.
pub fn balanced_example_check(
    samples: u64,
    probe_trials: u64,
    seed: u64,
) -> Result<BalancedExampleReport> {
    let tol = Tolerances::default();
    let weights = Weights::new(vec![1, 2])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut xi_failures = 0;
    let mut xi_skips = 0;
    for _ in 0..samples {
        let z = [
            Complex64::new(2.4 * rng.random::<f64>() - 1.2, 2.4 * rng.random::<f64>() - 1.2),
            Complex64::new(2.4 * rng.random::<f64>() - 1.2, 2.4 * rng.random::<f64>() - 1.2),
        ];
        let in_g = example_g_membership(&z, &tol);
        let in_d = example_d_membership(&xi_map(&z), &tol);
        if in_g.verdict == Verdict::Indeterminate || in_d.verdict == Verdict::Indeterminate {
            xi_skips += 1;
            continue;
        }
        if in_g.verdict != in_d.verdict {
            xi_failures += 1;
        }
    }

    let mut d_failures = 0;
    let mut g_failures = 0;
    {
        let mut sample_g = example_g_sampler();
        let mut sample_d = example_d_sampler();
        for _ in 0..samples {
            let lambda = Complex64::from_polar(
                rng.random::<f64>(),
                std::f64::consts::TAU * rng.random::<f64>(),
            );
            let zg = sample_g(&mut rng);
            if example_g_value(&pi_action(&weights, lambda, &zg)?) >= 1.0 {
                g_failures += 1;
            }
            let zd = sample_d(&mut rng);
            if example_d_value(&pi_action(&weights, lambda, &zd)?) >= 1.0 {
                d_failures += 1;
            }
        }
    }

    let probe_d = midpoint_probe(
        |z| example_d_membership(z, &tol),
        example_d_sampler(),
        probe_trials,
        seed ^ 0xd,
    );
    let probe_g = midpoint_probe(
        |z| example_g_membership(z, &tol),
        example_g_sampler(),
        probe_trials,
        seed ^ 0x9,
    );

    Ok(BalancedExampleReport {
        samples,
        probe_trials,
        seed,
        xi_equivalence_failures: xi_failures,
        xi_banded_skips: xi_skips,
        d_balanced_failures: d_failures,
        g_balanced_failures: g_failures,
        probe_d,
        probe_g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{r_value, s_value, slice_membership_closed_form};

    #[test]
    fn probe_zero_trials_finds_nothing() {
        let tol = Tolerances::default();
        let report = midpoint_probe(
            |z| example_g_membership(z, &tol),
            example_g_sampler(),
            0,
            0,
        );
        assert!(report.found.is_none());
        assert_eq!(report.trials_run, 0);
    }

    #[test]
    fn probe_finds_g3_violation() {
        let tol = Tolerances::default();
        let report = midpoint_probe(
            |z| slice_membership_closed_form(3, z[0], z[1], &tol).expect("closed form"),
            g3_slice_sampler(tol.clone()),
            1_000_000,
            0,
        );
        let hit = report.found.expect("violation exists near the witness");
        // Endpoints are interior, midpoint exterior: re-check both.
        for point in [&hit.a, &hit.b] {
            assert_eq!(
                slice_membership_closed_form(3, point[0], point[1], &tol)
                    .unwrap()
                    .verdict,
                Verdict::AllInside
            );
        }
        assert!(r_value(hit.midpoint[0], hit.midpoint[1]) > tol.boundary_band);
    }

    #[test]
    fn probe_finds_g4_violation() {
        let tol = Tolerances::default();
        let report = midpoint_probe(
            |z| slice_membership_closed_form(4, z[0], z[1], &tol).expect("closed form"),
            g4_slice_sampler(tol.clone()),
            1_000_000,
            0,
        );
        let hit = report.found.expect("violation exists near the witness");
        assert!(s_value(hit.midpoint[0], hit.midpoint[1]) > tol.boundary_band);
    }

    #[test]
    fn probe_on_convex_wedge_finds_nothing() {
        let tol = Tolerances::default();
        let report = midpoint_probe(
            |z| example_g_membership(z, &tol),
            example_g_sampler(),
            20_000,
            1,
        );
        assert!(report.found.is_none());
    }

    #[test]
    fn xi_equivalence_is_an_identity() {
        let report = balanced_example_check(5_000, 10_000, 7).unwrap();
        assert_eq!(report.xi_equivalence_failures, 0);
        assert_eq!(report.d_balanced_failures, 0);
        assert_eq!(report.g_balanced_failures, 0);
        assert!(report.probe_g.found.is_none());
    }

    #[test]
    fn samplers_yield_margin_interior_points() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut g3 = g3_slice_sampler(tol.clone());
        let mut g4 = g4_slice_sampler(tol.clone());
        let mut d = example_d_sampler();
        for _ in 0..200 {
            let p = g3(&mut rng);
            assert_eq!(
                slice_membership_closed_form(3, p[0], p[1], &tol).unwrap().verdict,
                Verdict::AllInside
            );
            let p = g4(&mut rng);
            assert_eq!(
                slice_membership_closed_form(4, p[0], p[1], &tol).unwrap().verdict,
                Verdict::AllInside
            );
            let p = d(&mut rng);
            assert!(example_d_value(&p) < 1.0);
        }
    }
}
