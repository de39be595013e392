//! Complex polynomials, the Schur transform and the Cohn recursion.
//!
//! A [`Poly`] stores coefficients in descending powers: `coeffs[j]` multiplies
//! `ζ^(n−j)`, so `coeffs[0]` is the leading and `coeffs[n]` the constant
//! coefficient. The recursion in [`cohn_all_roots_in_disc`] decides the
//! tri-state question "do all roots lie in the open unit disc" with an
//! explicit numerical boundary band; [`roots`] provides the independent
//! all-roots oracle used to cross-check every verdict.

mod roots;

pub use roots::{cauchy_bound, find_roots, max_root_modulus, oracle_all_roots_in_disc};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{ensure_finite, Error, Result};

/// Numerical tolerances shared by the root-location machinery.
///
/// `boundary_band` is the half-width of the zone around every strict
/// inequality inside which a verdict is declared [`Verdict::Indeterminate`]
/// instead of guessed; the remaining fields control the root oracle and the
/// gauge bisection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Indeterminate band around each strict inequality of the recursion.
    pub boundary_band: f64,
    /// Step tolerance of the simultaneous root iteration.
    pub root_iter_tol: f64,
    /// Maximum number of root-iteration sweeps.
    pub root_iter_max: usize,
    /// Relative tolerance of the gauge bisection.
    pub bisect_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            boundary_band: 1e-9,
            root_iter_tol: 1e-13,
            root_iter_max: 200,
            bisect_tol: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if self.boundary_band > 0.0
            && self.root_iter_tol > 0.0
            && self.root_iter_max > 0
            && self.bisect_tol > 0.0
        {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "tolerances must be strictly positive".into(),
            ))
        }
    }
}

/// Tri-state answer to "all roots in the open unit disc".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AllInside,
    NotAllInside,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::AllInside => "AllInside",
            Verdict::NotAllInside => "NotAllInside",
            Verdict::Indeterminate => "Indeterminate",
        };
        f.write_str(s)
    }
}

/// Root-location verdict with diagnostic payload.
///
/// `failing_stage` is the recursion depth of the first non-`AllInside`
/// decision; `max_modulus_estimate` is filled by oracle-based verdicts only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootLocation {
    pub verdict: Verdict,
    pub max_modulus_estimate: Option<f64>,
    pub failing_stage: Option<usize>,
}

impl RootLocation {
    pub fn all_inside() -> Self {
        Self {
            verdict: Verdict::AllInside,
            max_modulus_estimate: None,
            failing_stage: None,
        }
    }

    fn at_stage(verdict: Verdict, stage: usize) -> Self {
        Self {
            verdict,
            max_modulus_estimate: None,
            failing_stage: Some(stage),
        }
    }
}

/// Complex polynomial in descending coefficient order.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial from descending-power coefficients. Rejects empty
    /// and non-finite input; leading zeros are allowed until [`Poly::normalize`].
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        ensure_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    /// Monic `ζ^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[0] = Complex64::ONE;
        Self { coeffs }
    }

    /// Expands `∏ (ζ − r)` over the given roots; the result is monic.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::ONE];
        for r in roots {
            coeffs.push(Complex64::ZERO);
            for j in (1..coeffs.len()).rev() {
                let carry = coeffs[j - 1] * r;
                coeffs[j] -= carry;
            }
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `len − 1`; meaningful as the algebraic degree once leading zeros are
    /// trimmed.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn constant(&self) -> Complex64 {
        *self.coeffs.last().expect("coeffs nonempty")
    }

    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Trims leading zeros and divides by the maximum coefficient modulus.
    /// The root set is unchanged; the rescaling guards the Cohn recursion
    /// against overflow and underflow.
    pub fn normalize(&self) -> Result<Poly> {
        let first = self
            .coeffs
            .iter()
            .position(|c| c.re != 0.0 || c.im != 0.0)
            .ok_or(Error::ZeroPolynomial)?;
        let trimmed = &self.coeffs[first..];
        let scale = trimmed.iter().map(|c| c.norm()).fold(0.0, f64::max);
        Ok(Poly {
            coeffs: trimmed.iter().map(|c| c / scale).collect(),
        })
    }

    /// Horner evaluation in descending-power accumulation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in &self.coeffs {
            acc = acc * z + c;
        }
        acc
    }

    /// Coefficients reversed and conjugated: the polynomial with `conj(a_{n−j})`
    /// at `ζ^{n−j}`. Its roots are the reflections of the original roots
    /// through the unit circle. The output is not trimmed even when the new
    /// leading coefficient vanishes.
    pub fn reversed_conjugate(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    /// One step of the Schur recursion:
    /// `f*(ζ) = (conj(a₀)·f(ζ) − aₙ·conj-reversal(f)(ζ)) / ζ`.
    ///
    /// The constant term of the numerator is `conj(a₀)aₙ − aₙconj(a₀) = 0`
    /// identically, so the division by `ζ` is performed by dropping that
    /// coefficient, never by polynomial division. The resulting leading
    /// coefficient is `|a₀|² − |aₙ|²`, real up to rounding.
    pub fn schur_transform(&self) -> Result<Poly> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let a0_conj = self.coeffs[0].conj();
        let an = self.coeffs[n];
        let coeffs = (0..n)
            .map(|j| a0_conj * self.coeffs[j] - an * self.coeffs[n - j].conj())
            .collect();
        Ok(Poly { coeffs })
    }

    /// Conjugates every coefficient; the root multiset is conjugated.
    pub fn conjugate(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.degree();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({} + {}i)", c.re, c.im)?;
            if n - j > 0 {
                write!(f, "·ζ^{}", n - j)?;
            }
        }
        Ok(())
    }
}

/// Cohn recursion: all roots of `p` lie in the open unit disc iff
/// `|a₀| > |aₙ|` and all roots of the Schur transform do.
///
/// Each strict inequality is tested against `tol.boundary_band`; a margin
/// inside the band yields [`Verdict::Indeterminate`] with the stage recorded.
/// Every stage is renormalized so the band retains its meaning at depth.
pub fn cohn_all_roots_in_disc(p: &Poly, tol: &Tolerances) -> Result<RootLocation> {
    let band = tol.boundary_band;
    let mut cur = p.normalize()?;
    let mut stage = 0usize;
    loop {
        match cur.degree() {
            // Nonzero constants vacuously have all roots inside.
            0 => return Ok(RootLocation::all_inside()),
            1 => {
                let margin = cur.coeffs[0].norm() - cur.coeffs[1].norm();
                return Ok(if margin > band {
                    RootLocation::all_inside()
                } else if margin < -band {
                    RootLocation::at_stage(Verdict::NotAllInside, stage)
                } else {
                    RootLocation::at_stage(Verdict::Indeterminate, stage)
                });
            }
            _ => {
                let margin = cur.coeffs[0].norm() - cur.constant().norm();
                if margin > band {
                    cur = cur.schur_transform()?.normalize()?;
                    stage += 1;
                } else if margin < -band {
                    return Ok(RootLocation::at_stage(Verdict::NotAllInside, stage));
                } else {
                    return Ok(RootLocation::at_stage(Verdict::Indeterminate, stage));
                }
            }
        }
    }
}
