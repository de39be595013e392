//! Non-convexity certificates for the slice sets `Gₙ`, `n ≥ 3`.
//!
//! A certificate consists of two strictly interior slice points together
//! with their exactly-computed midpoint, verified strictly exterior: a
//! finite, independently re-checkable witness that `Gₙ` is not convex. The
//! explicit `n = 3, 4` witness families sit on the slice boundary; the
//! `π_{1−ε}` shrink turns them into margined interior points while scaling
//! the midpoint gauge multiplicatively, and the degree-raising substitutions
//! `z^j·f₃(z^k)`, `ζ·f₄(ζ)` and `f₄(ζ²)` embed the low cases into every
//! `n ≥ 5`.

mod probe;

pub use probe::{
    balanced_example_check, example_d_membership, example_d_sampler, example_d_value,
    example_g_membership, example_g_sampler, example_g_value, g3_slice_sampler, g4_slice_sampler,
    midpoint_probe, xi_map, BalancedExampleReport, ProbeHit, ProbeReport,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{
    r_value, s_value, shrink_slice, slice_gauge, slice_poly, SliceCoords,
};
use crate::poly::{
    cohn_all_roots_in_disc, max_root_modulus, oracle_all_roots_in_disc, RootLocation, Tolerances,
    Verdict,
};
use crate::{Error, Result};

/// Hard cap of the ε-shrink; the witness margins are small, so the shrink
/// never needs to be larger.
const EPSILON_CAP: f64 = 1e-3;

/// Which construction produced a witness pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessFamily {
    /// Boundary pair of the `n = 3` slice at parameter `q'`.
    G3Direct,
    /// Boundary pair of the `n = 4` slice at parameter `q'`.
    G4Direct,
    /// `n = 3k + j` via the zeros of `z^j·f₃(z^k)`.
    LiftG3 { k: u32, j: u32 },
    /// `n = 5` via `ζ·f₄(ζ)`.
    LiftG4Zeta,
    /// `n = 8` via `f₄(ζ²)`.
    LiftG4Square,
}

impl std::fmt::Display for WitnessFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessFamily::G3Direct => write!(f, "g3_direct"),
            WitnessFamily::G4Direct => write!(f, "g4_direct"),
            WitnessFamily::LiftG3 { k, j } => write!(f, "lift_g3(k={k}, j={j})"),
            WitnessFamily::LiftG4Zeta => write!(f, "lift_g4_zeta"),
            WitnessFamily::LiftG4Square => write!(f, "lift_g4_square"),
        }
    }
}

/// Two boundary slice points and their coordinate-wise midpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessPair {
    pub n: usize,
    pub family: WitnessFamily,
    pub q_prime: f64,
    pub a: SliceCoords,
    pub b: SliceCoords,
    pub midpoint: SliceCoords,
}

fn polar(modulus: f64, angle: f64) -> Complex64 {
    Complex64::from_polar(modulus, angle)
}

/// The `n = 3` witness pair: `a = (p'e^{2πi/3}, q')`,
/// `b = (p'e^{πi/3}, q'e^{πi/2})` with `p' = 1 − q'²`. Both satisfy
/// `r = 0`, and the midpoint leaves the closed slice set for suitable `q'`.
///
/// The midpoint is computed as the coordinate mean and cross-checked against
/// its closed polar form `(p'·cos(π/6)·e^{πi/2}, q'·cos(π/4)·e^{πi/4})`.
pub fn witness_g3(q_prime: f64) -> Result<WitnessPair> {
    if !(q_prime > 0.0 && q_prime < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "q_prime outside (0,1): {q_prime}"
        )));
    }
    use std::f64::consts::PI;
    let p_prime = 1.0 - q_prime * q_prime;
    let a = SliceCoords::new(
        3,
        vec![polar(p_prime, 2.0 * PI / 3.0), Complex64::new(q_prime, 0.0)],
    )?;
    let b = SliceCoords::new(
        3,
        vec![polar(p_prime, PI / 3.0), polar(q_prime, PI / 2.0)],
    )?;
    let midpoint = a.midpoint(&b)?;

    let closed_form = [
        polar(p_prime * (PI / 6.0).cos(), PI / 2.0),
        polar(q_prime * (PI / 4.0).cos(), PI / 4.0),
    ];
    for (mean, closed) in midpoint.free.iter().zip(&closed_form) {
        assert!(
            (mean - closed).norm() < 1e-12,
            "midpoint mean and polar form disagree: {mean} vs {closed}"
        );
    }

    Ok(WitnessPair {
        n: 3,
        family: WitnessFamily::G3Direct,
        q_prime,
        a,
        b,
        midpoint,
    })
}

/// The `n = 4` witness pair: `a = (p'e^{πi/2}, q')`,
/// `b = (p'e^{πi/4}, q'e^{πi/3})` with `p' = (1−q')√(1+q')`; both satisfy
/// `s = 0`. Midpoint closed form:
/// `(p'·cos(π/8)·e^{3πi/8}, q'·cos(π/6)·e^{πi/6})`.
pub fn witness_g4(q_prime: f64) -> Result<WitnessPair> {
    if !(0.0..1.0).contains(&q_prime) {
        return Err(Error::InvalidParameter(format!(
            "q_prime outside [0,1): {q_prime}"
        )));
    }
    use std::f64::consts::PI;
    let p_prime = (1.0 - q_prime) * (1.0 + q_prime).sqrt();
    let a = SliceCoords::new(
        4,
        vec![polar(p_prime, PI / 2.0), Complex64::new(q_prime, 0.0)],
    )?;
    let b = SliceCoords::new(
        4,
        vec![polar(p_prime, PI / 4.0), polar(q_prime, PI / 3.0)],
    )?;
    let midpoint = a.midpoint(&b)?;

    let closed_form = [
        polar(p_prime * (PI / 8.0).cos(), 3.0 * PI / 8.0),
        polar(q_prime * (PI / 6.0).cos(), PI / 6.0),
    ];
    for (mean, closed) in midpoint.free.iter().zip(&closed_form) {
        assert!(
            (mean - closed).norm() < 1e-12,
            "midpoint mean and polar form disagree: {mean} vs {closed}"
        );
    }

    Ok(WitnessPair {
        n: 4,
        family: WitnessFamily::G4Direct,
        q_prime,
        a,
        b,
        midpoint,
    })
}

/// Free coefficients `(p, q)` of a degree-3 or degree-4 witness slice point.
fn base_pq(c: &SliceCoords) -> (Complex64, Complex64) {
    let len = c.free.len();
    (c.free[len - 2], c.free[len - 1])
}

/// Places `(p, q)` as the coefficients of `z^j·f₃(z^k)`: `p` at index `2k`,
/// `q` at index `3k`, zeros elsewhere, total degree `n = 3k + j`.
fn lift_g3_point(c: &SliceCoords, k: u32, j: u32) -> Result<SliceCoords> {
    let (p, q) = base_pq(c);
    let n = (3 * k + j) as usize;
    let m = n / 2;
    let mut free = vec![Complex64::ZERO; n - m];
    free[2 * k as usize - (m + 1)] = p;
    free[3 * k as usize - (m + 1)] = q;
    SliceCoords::new(n, free)
}

/// Lifts an `n = 3` witness pair to `n = 3k + j` via the zeros of
/// `z^j·f₃(z^k)`: roots become `k`-th roots plus `j` zeros, so root location
/// is preserved and the maximum root modulus is raised to the power `1/k`.
///
/// Admissible combinations: `(j = 0, k ≥ 1)`, `(j = 1, k ≥ 2)`,
/// `(j = 2, k ≥ 3)`: exactly those for which every nonzero coefficient
/// index `2k, 3k` exceeds `⌊n/2⌋`. The placement is linear, so the lifted
/// midpoint equals the lift of the midpoint exactly.
pub fn lift_g3(pair: &WitnessPair, k: u32, j: u32) -> Result<WitnessPair> {
    if pair.n != 3 {
        return Err(Error::InvalidParameter(
            "lift_g3 needs an n=3 witness pair".into(),
        ));
    }
    let admissible = match j {
        0 => k >= 1,
        1 => k >= 2,
        2 => k >= 3,
        _ => false,
    };
    if !admissible {
        return Err(Error::InadmissibleLift { k, j });
    }
    Ok(WitnessPair {
        n: (3 * k + j) as usize,
        family: WitnessFamily::LiftG3 { k, j },
        q_prime: pair.q_prime,
        a: lift_g3_point(&pair.a, k, j)?,
        b: lift_g3_point(&pair.b, k, j)?,
        midpoint: lift_g3_point(&pair.midpoint, k, j)?,
    })
}

/// Target of [`lift_g4`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftG4Variant {
    /// `ζ·f₄(ζ)`: degree 5, `p` at `a₃`, `q` at `a₄`.
    Zeta,
    /// `f₄(ζ²)`: degree 8, `p` at `a₆`, `q` at `a₈`.
    Square,
}

/// Lifts an `n = 4` witness pair to `n = 5` or `n = 8`; the added roots are
/// a zero (`Zeta`) or square roots of the original roots (`Square`), so root
/// location is preserved.
pub fn lift_g4(pair: &WitnessPair, variant: LiftG4Variant) -> Result<WitnessPair> {
    if pair.n != 4 {
        return Err(Error::InvalidParameter(
            "lift_g4 needs an n=4 witness pair".into(),
        ));
    }
    let lift_point = |c: &SliceCoords| -> Result<SliceCoords> {
        let (p, q) = base_pq(c);
        match variant {
            LiftG4Variant::Zeta => {
                // n = 5, m = 2: free = (a₃, a₄, a₅) = (p, q, 0).
                SliceCoords::new(5, vec![p, q, Complex64::ZERO])
            }
            LiftG4Variant::Square => {
                // n = 8, m = 4: free = (a₅, …, a₈) = (0, p, 0, q).
                SliceCoords::new(
                    8,
                    vec![Complex64::ZERO, p, Complex64::ZERO, q],
                )
            }
        }
    };
    Ok(WitnessPair {
        n: if variant == LiftG4Variant::Zeta { 5 } else { 8 },
        family: if variant == LiftG4Variant::Zeta {
            WitnessFamily::LiftG4Zeta
        } else {
            WitnessFamily::LiftG4Square
        },
        q_prime: pair.q_prime,
        a: lift_point(&pair.a)?,
        b: lift_point(&pair.b)?,
        midpoint: lift_point(&pair.midpoint)?,
    })
}

/// Default family and `q'` for each `n ≥ 3`, following the case split
/// `n = 3, 4` direct; `n = 3k`, `3k+1 (k≥2)`, `3k+2 (k≥3)` via [`lift_g3`];
/// `n = 5, 8` via [`lift_g4`].
pub fn default_family(n: usize) -> Result<(WitnessFamily, f64)> {
    match n {
        0..=2 => Err(Error::DimensionTooSmall),
        3 => Ok((WitnessFamily::G3Direct, 0.5)),
        4 => Ok((WitnessFamily::G4Direct, 0.4)),
        5 => Ok((WitnessFamily::LiftG4Zeta, 0.4)),
        8 => Ok((WitnessFamily::LiftG4Square, 0.4)),
        _ => {
            let family = match n % 3 {
                0 => WitnessFamily::LiftG3 {
                    k: (n / 3) as u32,
                    j: 0,
                },
                1 => WitnessFamily::LiftG3 {
                    k: ((n - 1) / 3) as u32,
                    j: 1,
                },
                _ => WitnessFamily::LiftG3 {
                    k: ((n - 2) / 3) as u32,
                    j: 2,
                },
            };
            Ok((family, 0.5))
        }
    }
}

/// Reconstructs the witness pair of a certificate from its provenance
/// fields.
pub fn witness_for(n: usize, family: &WitnessFamily, q_prime: f64) -> Result<WitnessPair> {
    let pair = match family {
        WitnessFamily::G3Direct => witness_g3(q_prime)?,
        WitnessFamily::G4Direct => witness_g4(q_prime)?,
        WitnessFamily::LiftG3 { k, j } => lift_g3(&witness_g3(q_prime)?, *k, *j)?,
        WitnessFamily::LiftG4Zeta => lift_g4(&witness_g4(q_prime)?, LiftG4Variant::Zeta)?,
        WitnessFamily::LiftG4Square => lift_g4(&witness_g4(q_prime)?, LiftG4Variant::Square)?,
    };
    if pair.n != n {
        return Err(Error::InvalidParameter(format!(
            "family {family} produces n={}, certificate claims n={n}",
            pair.n
        )));
    }
    Ok(pair)
}

/// The three stored membership verdicts of a certificate (Cohn recursion).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateVerdicts {
    pub a_interior: RootLocation,
    pub b_interior: RootLocation,
    pub mid_exterior: RootLocation,
}

/// Serializable, independently re-checkable witness that `Gₙ` is not convex.
///
/// `a_interior = π_{1−ε}(a)` and `b_interior = π_{1−ε}(b)` are strictly
/// inside with margin, and `mid_exterior` (their coordinate-wise mean,
/// exact in floating point) is strictly outside with margin. `h_mid` is the
/// gauge of the unshrunk midpoint, so `(1−ε)·h_mid > 1` pins the exterior
/// margin of the shrunk midpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonConvexityCertificate {
    /// Schema version; always 1.
    pub v: u32,
    pub n: usize,
    pub family: WitnessFamily,
    pub q_prime: f64,
    pub epsilon: f64,
    pub tolerances: Tolerances,
    #[serde(with = "crate::complex_pairs")]
    pub a_interior: Vec<Complex64>,
    #[serde(with = "crate::complex_pairs")]
    pub b_interior: Vec<Complex64>,
    #[serde(with = "crate::complex_pairs")]
    pub mid_exterior: Vec<Complex64>,
    pub h_mid: f64,
    pub verdicts: CertificateVerdicts,
}

impl NonConvexityCertificate {
    pub fn a_interior_coords(&self) -> Result<SliceCoords> {
        SliceCoords::new(self.n, self.a_interior.clone())
    }

    pub fn b_interior_coords(&self) -> Result<SliceCoords> {
        SliceCoords::new(self.n, self.b_interior.clone())
    }

    pub fn mid_exterior_coords(&self) -> Result<SliceCoords> {
        SliceCoords::new(self.n, self.mid_exterior.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("malformed certificate JSON: {e}")))
    }
}

/// Builds a verified non-convexity certificate for `Gₙ`.
///
/// The family is chosen by [`default_family`] unless `q_prime` overrides the
/// parameter. With `δ = h_mid − 1`, the shrink is
/// `ε = min(δ/(2(1+δ)), 1e−3)`, which leaves the shrunk midpoint at gauge
/// `≥ 1 + δ/2`. The result is deterministic given `(n, q_prime, tol, seed)`
/// and has already passed [`verify_certificate`].
pub fn build_certificate(
    n: usize,
    q_prime: Option<f64>,
    tol: &Tolerances,
    seed: u64,
) -> Result<NonConvexityCertificate> {
    tol.validate()?;
    let (family, default_q) = default_family(n)?;
    let q = q_prime.unwrap_or(default_q);
    let pair = witness_for(n, &family, q)?;

    let h_mid = slice_gauge(&pair.midpoint, tol)?;
    let delta = h_mid - 1.0;
    if delta <= 2.0 * tol.boundary_band {
        return Err(Error::InvalidParameter(format!(
            "witness midpoint is not exterior with usable margin at q'={q}: h_mid = {h_mid}"
        )));
    }
    let epsilon = (delta / (2.0 * (1.0 + delta))).min(EPSILON_CAP);

    let a_interior = shrink_slice(&pair.a, epsilon);
    let b_interior = shrink_slice(&pair.b, epsilon);
    // Averaging the shrunk endpoints makes the mean identity exact in
    // floating point; it agrees with shrinking the midpoint to within an ulp.
    let mid_exterior = a_interior.midpoint(&b_interior)?;

    let verdicts = CertificateVerdicts {
        a_interior: cohn_all_roots_in_disc(&slice_poly(&a_interior), tol)?,
        b_interior: cohn_all_roots_in_disc(&slice_poly(&b_interior), tol)?,
        mid_exterior: cohn_all_roots_in_disc(&slice_poly(&mid_exterior), tol)?,
    };

    let cert = NonConvexityCertificate {
        v: 1,
        n,
        family,
        q_prime: q,
        epsilon,
        tolerances: tol.clone(),
        a_interior: a_interior.free,
        b_interior: b_interior.free,
        mid_exterior: mid_exterior.free,
        h_mid,
        verdicts,
    };

    let report = verify_certificate(&cert, tol, seed);
    if !report.pass {
        return Err(Error::InvalidParameter(format!(
            "built certificate failed verification:\n{}",
            report.failures()
        )));
    }
    Ok(cert)
}

/// One named check of a verification run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of [`verify_certificate`]: the certificate stands only if every
/// check passed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.pass &= pass;
        self.checks.push(VerifyCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    pub fn failures(&self) -> String {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn max_coord_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Independent re-check of a certificate, point by point and method by
/// method: reconstructs the witness from the provenance fields, recomputes
/// all three verdicts with both the Cohn recursion and the root oracle,
/// re-evaluates the gauge of the midpoint, checks the exact midpoint
/// linearity and the ε-margin inequality, and re-evaluates the `r`/`s`
/// closed forms on the underlying degree-3/4 pair. Failures are report
/// entries, never errors.
pub fn verify_certificate(
    cert: &NonConvexityCertificate,
    tol: &Tolerances,
    seed: u64,
) -> VerifyReport {
    let mut report = VerifyReport {
        pass: true,
        checks: Vec::new(),
    };
    let band = tol.boundary_band;

    // Schema and parameter sanity.
    let schema_ok = cert.v == 1
        && cert.n >= 3
        && cert.epsilon > 0.0
        && cert.epsilon < 1.0
        && cert.tolerances.validate().is_ok()
        && cert.a_interior.len() == cert.n - cert.n / 2
        && cert.b_interior.len() == cert.n - cert.n / 2
        && cert.mid_exterior.len() == cert.n - cert.n / 2;
    report.push(
        "schema",
        schema_ok,
        format!("v={}, n={}, epsilon={}", cert.v, cert.n, cert.epsilon),
    );
    if !schema_ok {
        return report;
    }

    // Witness reconstruction from (n, family, q').
    let pair = match witness_for(cert.n, &cert.family, cert.q_prime) {
        Ok(p) => p,
        Err(e) => {
            report.push("family", false, format!("reconstruction failed: {e}"));
            return report;
        }
    };
    report.push("family", true, format!("{}", cert.family));

    // Stored interior points must be the π_{1−ε} shrink of the witness.
    let a_shrunk = shrink_slice(&pair.a, cert.epsilon);
    let b_shrunk = shrink_slice(&pair.b, cert.epsilon);
    let d_a = max_coord_distance(&a_shrunk.free, &cert.a_interior);
    let d_b = max_coord_distance(&b_shrunk.free, &cert.b_interior);
    report.push(
        "witness_coordinates",
        d_a < 1e-12 && d_b < 1e-12,
        format!("max deviation a: {d_a:.3e}, b: {d_b:.3e}"),
    );

    // Exact mean identity on the stored coordinates.
    let exact_mean = cert
        .mid_exterior
        .iter()
        .zip(cert.a_interior.iter().zip(&cert.b_interior))
        .all(|(m, (a, b))| {
            let mean = (a + b) / 2.0;
            m.re == mean.re && m.im == mean.im
        });
    report.push(
        "midpoint_linearity",
        exact_mean,
        "mid_exterior must equal (a_interior + b_interior)/2 to the last bit".into(),
    );

    // Slice validity: nonzero indices beyond m = ⌊n/2⌋, guaranteed by the
    // coordinate layout, re-checked on the reconstructed witness.
    let m_floor = cert.n / 2;
    let indices_ok = [&pair.a, &pair.b, &pair.midpoint]
        .iter()
        .all(|c| c.nonzero_indices().iter().all(|&j| j > m_floor));
    report.push(
        "slice_condition",
        indices_ok,
        format!("nonzero indices of {} exceed {m_floor}", cert.family),
    );

    // Membership of the three points, via the Cohn recursion…
    let located = |coords: &[Complex64]| -> Result<RootLocation> {
        let sc = SliceCoords::new(cert.n, coords.to_vec())?;
        cohn_all_roots_in_disc(&slice_poly(&sc), tol)
    };
    let cohn_a = located(&cert.a_interior);
    let cohn_b = located(&cert.b_interior);
    let cohn_m = located(&cert.mid_exterior);
    let cohn_interior_ok = matches!(
        (&cohn_a, &cohn_b),
        (Ok(a), Ok(b)) if a.verdict == Verdict::AllInside && b.verdict == Verdict::AllInside
    );
    report.push(
        "interior_cohn",
        cohn_interior_ok,
        format!("a: {:?}, b: {:?}", cohn_a.as_ref().map(|l| l.verdict), cohn_b.as_ref().map(|l| l.verdict)),
    );
    let cohn_mid_ok = matches!(&cohn_m, Ok(m) if m.verdict == Verdict::NotAllInside);
    report.push(
        "exterior_cohn",
        cohn_mid_ok,
        format!("midpoint: {:?}", cohn_m.as_ref().map(|l| l.verdict)),
    );

    // …and via the root oracle.
    let oracle_at = |coords: &[Complex64]| -> Result<RootLocation> {
        let sc = SliceCoords::new(cert.n, coords.to_vec())?;
        oracle_all_roots_in_disc(&slice_poly(&sc), tol, seed)
    };
    let oa = oracle_at(&cert.a_interior);
    let ob = oracle_at(&cert.b_interior);
    let om = oracle_at(&cert.mid_exterior);
    let oracle_interior_ok = matches!(
        (&oa, &ob),
        (Ok(a), Ok(b)) if a.verdict == Verdict::AllInside && b.verdict == Verdict::AllInside
    );
    let oracle_mid_ok = matches!(&om, Ok(m) if m.verdict == Verdict::NotAllInside);
    report.push(
        "interior_oracle",
        oracle_interior_ok,
        format!(
            "max moduli a: {:?}, b: {:?}",
            oa.as_ref().ok().and_then(|l| l.max_modulus_estimate),
            ob.as_ref().ok().and_then(|l| l.max_modulus_estimate)
        ),
    );
    report.push(
        "exterior_oracle",
        oracle_mid_ok,
        format!(
            "max modulus midpoint: {:?}",
            om.as_ref().ok().and_then(|l| l.max_modulus_estimate)
        ),
    );

    // Stored verdict classes must match what we just recomputed.
    let stored_ok = match (&cohn_a, &cohn_b, &cohn_m) {
        (Ok(a), Ok(b), Ok(m)) => {
            cert.verdicts.a_interior.verdict == a.verdict
                && cert.verdicts.b_interior.verdict == b.verdict
                && cert.verdicts.mid_exterior.verdict == m.verdict
        }
        _ => false,
    };
    report.push(
        "stored_verdicts",
        stored_ok,
        "stored verdict classes match recomputation".into(),
    );

    // Gauge of the unshrunk midpoint, by bisection and by the oracle.
    match slice_gauge(&pair.midpoint, tol) {
        Ok(h) => {
            report.push(
                "h_mid",
                (h - cert.h_mid).abs() < 1e-9,
                format!("recomputed {h}, stored {}", cert.h_mid),
            );
        }
        Err(e) => report.push("h_mid", false, format!("gauge failed: {e}")),
    }
    match max_root_modulus(&slice_poly(&pair.midpoint), tol, seed) {
        Ok(m) => report.push(
            "h_mid_oracle",
            (m - cert.h_mid).abs() < 1e-6,
            format!("oracle max modulus {m}, stored h_mid {}", cert.h_mid),
        ),
        Err(e) => report.push("h_mid_oracle", false, format!("oracle failed: {e}")),
    }

    // ε-margin inequality.
    let margin = (1.0 - cert.epsilon) * cert.h_mid;
    report.push(
        "epsilon_margin",
        margin > 1.0 + band,
        format!("(1−ε)·h_mid = {margin}"),
    );

    // Witness endpoints sit on the slice boundary: gauge ≈ 1, and the
    // closed forms vanish on the underlying degree-3/4 pair.
    let endpoint_gauges: Result<(f64, f64)> = (|| {
        Ok((slice_gauge(&pair.a, tol)?, slice_gauge(&pair.b, tol)?))
    })();
    match endpoint_gauges {
        Ok((ha, hb)) => report.push(
            "endpoint_boundary",
            (ha - 1.0).abs() < 1e-6 && (hb - 1.0).abs() < 1e-6,
            format!("gauge a: {ha}, gauge b: {hb}"),
        ),
        Err(e) => report.push("endpoint_boundary", false, format!("gauge failed: {e}")),
    }

    let base = match &cert.family {
        WitnessFamily::G3Direct | WitnessFamily::LiftG3 { .. } => witness_g3(cert.q_prime),
        WitnessFamily::G4Direct
        | WitnessFamily::LiftG4Zeta
        | WitnessFamily::LiftG4Square => witness_g4(cert.q_prime),
    };
    match base {
        Ok(base_pair) => {
            let eval = if base_pair.n == 3 { r_value } else { s_value };
            let (pa, qa) = base_pq(&base_pair.a);
            let (pb, qb) = base_pq(&base_pair.b);
            let va = eval(pa, qa).abs();
            let vb = eval(pb, qb).abs();
            report.push(
                "endpoint_closed_form",
                va < 1e-12 && vb < 1e-12,
                format!("|defining value| at endpoints: {va:.3e}, {vb:.3e}"),
            );
        }
        Err(e) => report.push("endpoint_closed_form", false, format!("{e}")),
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::find_roots;

    #[test]
    fn witness_g3_matches_displayed_values() {
        let w = witness_g3(0.5).unwrap();
        let (pa, qa) = base_pq(&w.a);
        assert!((pa - polar(0.75, 2.0 * std::f64::consts::PI / 3.0)).norm() < 1e-15);
        assert_eq!(qa, Complex64::new(0.5, 0.0));
        let (p0, q0) = base_pq(&w.midpoint);
        assert!((p0 - Complex64::new(0.0, 0.649519052838329)).norm() < 1e-12);
        assert!((q0 - Complex64::new(0.25, 0.25)).norm() < 1e-12);

        let sum = p0.norm() + q0.norm();
        let radical = (3.0 * 3.0_f64.sqrt() + 2.0 * 2.0_f64.sqrt()) / 8.0;
        assert!((sum - radical).abs() < 1e-12);
        assert!((sum - 1.003072444).abs() < 1e-9);
    }

    #[test]
    fn witness_g3_endpoints_are_boundary() {
        for q in [0.2, 0.35, 0.5, 0.8] {
            let w = witness_g3(q).unwrap();
            let (pa, qa) = base_pq(&w.a);
            let (pb, qb) = base_pq(&w.b);
            assert!(r_value(pa, qa).abs() < 1e-12);
            assert!(r_value(pb, qb).abs() < 1e-12);
        }
        assert!(witness_g3(0.0).is_err());
        assert!(witness_g3(1.0).is_err());
        assert!(witness_g3(-0.5).is_err());
    }

    #[test]
    fn witness_g4_matches_displayed_values() {
        let w = witness_g4(0.4).unwrap();
        let (p0, q0) = base_pq(&w.midpoint);
        let pp = 0.6 * 1.4_f64.sqrt();
        let expect_p0 = polar(
            pp * (std::f64::consts::PI / 8.0).cos(),
            3.0 * std::f64::consts::PI / 8.0,
        );
        assert!((p0 - expect_p0).norm() < 1e-12);
        assert!((q0 - Complex64::new(0.3, 0.1 * 3.0_f64.sqrt())).norm() < 1e-12);

        let sum = p0.norm() + q0.norm();
        let radical = (3.0 * (7.0 * (2.0 + 2.0_f64.sqrt()) / 5.0).sqrt() + 2.0 * 3.0_f64.sqrt()) / 10.0;
        assert!((sum - radical).abs() < 1e-12);

        let (pa, qa) = base_pq(&w.a);
        let (pb, qb) = base_pq(&w.b);
        assert!(s_value(pa, qa).abs() < 1e-12);
        assert!(s_value(pb, qb).abs() < 1e-12);
    }

    #[test]
    fn witness_g4_degenerate_parameter() {
        let w = witness_g4(0.0).unwrap();
        let (pa, qa) = base_pq(&w.a);
        assert!((pa - polar(1.0, std::f64::consts::PI / 2.0)).norm() < 1e-15);
        assert_eq!(qa, Complex64::ZERO);
        assert!(s_value(pa, qa).abs() < 1e-12);
    }

    #[test]
    fn lift_g3_placement_and_identity() {
        let w = witness_g3(0.5).unwrap();

        let id = lift_g3(&w, 1, 0).unwrap();
        assert_eq!(id.n, 3);
        assert_eq!(id.a.free, w.a.free);
        assert_eq!(id.midpoint.free, w.midpoint.free);

        // k = 2, j = 1: n = 7, p at a₄, q at a₆, i.e. ζ⁷ + pζ³ + qζ.
        let lifted = lift_g3(&w, 2, 1).unwrap();
        assert_eq!(lifted.n, 7);
        let (p, q) = base_pq(&w.a);
        assert_eq!(lifted.a.coeff(4), p);
        assert_eq!(lifted.a.coeff(6), q);
        assert_eq!(lifted.a.nonzero_indices(), vec![4, 6]);

        assert!(matches!(
            lift_g3(&w, 1, 1),
            Err(Error::InadmissibleLift { k: 1, j: 1 })
        ));
        assert!(matches!(
            lift_g3(&w, 2, 2),
            Err(Error::InadmissibleLift { k: 2, j: 2 })
        ));
        assert!(lift_g3(&w, 1, 3).is_err());
    }

    #[test]
    fn lift_commutes_with_midpoint_exactly() {
        let w = witness_g3(0.37).unwrap();
        let lifted = lift_g3(&w, 3, 2).unwrap();
        let mean_of_lifts = lifted.a.midpoint(&lifted.b).unwrap();
        assert_eq!(lifted.midpoint.free, mean_of_lifts.free);
    }

    #[test]
    fn lift_g3_root_modulus_law() {
        let tol = Tolerances::default();
        let w = witness_g3(0.5).unwrap();
        let base_mod = max_root_modulus(&slice_poly(&w.midpoint), &tol, 0).unwrap();
        for (k, j) in [(2u32, 0u32), (2, 1), (3, 0)] {
            let lifted = lift_g3(&w, k, j).unwrap();
            let lifted_mod = max_root_modulus(&slice_poly(&lifted.midpoint), &tol, 0).unwrap();
            assert!(
                (lifted_mod - base_mod.powf(1.0 / k as f64)).abs() < 1e-6,
                "k={k} j={j}: {lifted_mod} vs {}",
                base_mod.powf(1.0 / k as f64)
            );
        }
    }

    #[test]
    fn lift_g4_placements() {
        let w = witness_g4(0.4).unwrap();
        let (p, q) = base_pq(&w.a);

        let zeta = lift_g4(&w, LiftG4Variant::Zeta).unwrap();
        assert_eq!(zeta.n, 5);
        assert_eq!(zeta.a.coeff(3), p);
        assert_eq!(zeta.a.coeff(4), q);
        assert_eq!(zeta.a.nonzero_indices(), vec![3, 4]);

        let square = lift_g4(&w, LiftG4Variant::Square).unwrap();
        assert_eq!(square.n, 8);
        assert_eq!(square.a.coeff(6), p);
        assert_eq!(square.a.coeff(8), q);
        assert_eq!(square.a.nonzero_indices(), vec![6, 8]);

        // The lifted midpoint stays outside.
        let tol = Tolerances::default();
        for pair in [&zeta, &square] {
            let loc = cohn_all_roots_in_disc(&slice_poly(&pair.midpoint), &tol).unwrap();
            assert_eq!(loc.verdict, Verdict::NotAllInside);
        }
        assert!(lift_g4(&witness_g3(0.5).unwrap(), LiftG4Variant::Zeta).is_err());
    }

    #[test]
    fn build_certificate_families() {
        let tol = Tolerances::default();
        assert!(matches!(
            build_certificate(2, None, &tol, 0),
            Err(Error::DimensionTooSmall)
        ));

        let c3 = build_certificate(3, None, &tol, 0).unwrap();
        assert_eq!(c3.family, WitnessFamily::G3Direct);
        assert!(c3.h_mid > 1.0);
        assert_eq!(c3.verdicts.a_interior.verdict, Verdict::AllInside);
        assert_eq!(c3.verdicts.b_interior.verdict, Verdict::AllInside);
        assert_eq!(c3.verdicts.mid_exterior.verdict, Verdict::NotAllInside);

        let c8 = build_certificate(8, None, &tol, 0).unwrap();
        assert_eq!(c8.family, WitnessFamily::LiftG4Square);
        let sc = c8.mid_exterior_coords().unwrap();
        assert_eq!(sc.nonzero_indices(), vec![6, 8]);

        let c12 = build_certificate(12, None, &tol, 0).unwrap();
        assert_eq!(c12.family, WitnessFamily::LiftG3 { k: 4, j: 0 });
    }

    #[test]
    fn build_rejects_parameters_without_exterior_midpoint() {
        // The n=3 witness midpoint leaves the closed slice set only for a
        // window of q'; outside it the build must refuse, not fabricate.
        let tol = Tolerances::default();
        let err = build_certificate(3, Some(0.1), &tol, 0).unwrap_err();
        assert!(err.to_string().contains("not exterior"), "{err}");
    }

    #[test]
    fn certificates_verify_for_small_n() {
        let tol = Tolerances::default();
        for n in 3..=6 {
            let cert = build_certificate(n, None, &tol, 1).unwrap();
            let report = verify_certificate(&cert, &tol, 2);
            assert!(report.pass, "n={n}: {}", report.failures());
        }
    }

    #[test]
    fn oversized_epsilon_fails_verification() {
        let tol = Tolerances::default();
        let mut cert = build_certificate(3, None, &tol, 0).unwrap();
        // Rebuild the interior points with a destructive shrink.
        let pair = witness_for(cert.n, &cert.family, cert.q_prime).unwrap();
        cert.epsilon = 0.5;
        let a = shrink_slice(&pair.a, 0.5);
        let b = shrink_slice(&pair.b, 0.5);
        let mid = a.midpoint(&b).unwrap();
        cert.a_interior = a.free;
        cert.b_interior = b.free;
        cert.mid_exterior = mid.free;
        let report = verify_certificate(&cert, &tol, 0);
        assert!(!report.pass);
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert!(failed.contains(&"exterior_cohn"), "failed: {failed:?}");
        assert!(failed.contains(&"epsilon_margin"));
    }

    #[test]
    fn tampered_midpoint_fails_linearity() {
        let tol = Tolerances::default();
        let mut cert = build_certificate(3, None, &tol, 0).unwrap();
        cert.mid_exterior[0] += Complex64::new(1e-13, 0.0);
        let report = verify_certificate(&cert, &tol, 0);
        assert!(!report.pass);
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "midpoint_linearity" && !c.pass));
    }

    #[test]
    fn certificate_json_roundtrip_is_exact() {
        let tol = Tolerances::default();
        let cert = build_certificate(7, None, &tol, 3).unwrap();
        let json = cert.to_json();
        let back = NonConvexityCertificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), json);
        assert!(verify_certificate(&back, &tol, 4).pass);
    }

    #[test]
    fn certificate_rejects_malformed_json() {
        let tol = Tolerances::default();
        let cert = build_certificate(3, None, &tol, 0).unwrap();
        let json = cert.to_json();
        let truncated = &json[..json.len() / 2];
        assert!(NonConvexityCertificate::from_json(truncated).is_err());
    }

    #[test]
    fn interior_points_have_small_residual_roots() {
        let tol = Tolerances::default();
        let cert = build_certificate(5, None, &tol, 0).unwrap();
        let sc = cert.a_interior_coords().unwrap();
        let p = slice_poly(&sc);
        for root in find_roots(&p, &tol, 0).unwrap() {
            assert!(root.norm() < 1.0);
        }
    }
}
