//! The symmetrization map, membership in the symmetrized polydisc and its
//! coordinate slices, and the weighted scaling action.
//!
//! Membership in `𝔾ₙ = σₙ(𝔻ⁿ)` is equivalent to all roots of the Vieta
//! bridge polynomial lying in the open unit disc, so every membership
//! question reduces to [`cohn_all_roots_in_disc`] or the root oracle. For the
//! `n = 3, 4` coordinate slices the closed-form defining functions
//! [`r_value`] and [`s_value`] give a third, independent route.
//!
//! Coordinate conventions: a [`SymPoint`] stores `s_k = σ_{n,k}`, and the
//! bridge polynomial applies the Vieta signs `(−1)^k`. The slice sets use raw
//! monic coefficients `a_j` with no sign flip; certificates always use the
//! raw-coefficient convention.

mod gauge;

pub use gauge::{
    dented_ball_gauge, gauge_h, log_gauge_submean_check, slice_gauge, slice_gauge_member,
    symdisc_gauge, symdisc_gauge_member, SubmeanReport, SUBMEAN_SLACK,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::{cohn_all_roots_in_disc, Poly, RootLocation, Tolerances, Verdict};
use crate::{ensure_finite, Error, Result};

/// A point of `ℂⁿ` in σ-coordinates `(s₁, …, sₙ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymPoint {
    #[serde(with = "crate::complex_pairs")]
    coords: Vec<Complex64>,
}

impl SymPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("SymPoint needs n >= 1".into()));
        }
        ensure_finite(&coords)?;
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Quasi-balanced exponents `k₁ ≤ … ≤ kₙ` defining the action
/// `πλ(z) = (λ^{k₁}z₁, …, λ^{kₙ}zₙ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weights {
    k: Vec<u32>,
}

impl Weights {
    pub fn new(k: Vec<u32>) -> Result<Self> {
        if k.is_empty() || k[0] == 0 || k.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(
                "weights must be positive and nondecreasing".into(),
            ));
        }
        Ok(Self { k })
    }

    /// Weights `(1, 2, …, n)` of the symmetrized n-disc.
    pub fn symdisc(n: usize) -> Self {
        Self {
            k: (1..=n as u32).collect(),
        }
    }

    /// Weights `(m+1, …, n)` carried by the free slice coefficients.
    pub fn slice(n: usize) -> Self {
        let m = n / 2;
        Self {
            k: (m as u32 + 1..=n as u32).collect(),
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.k
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }
}

/// A point of the coordinate slice `{a₁ = … = a_m = 0}`, `m = ⌊n/2⌋`, of the
/// monic coefficient space: only `(a_{m+1}, …, aₙ)` are free.
///
/// All nonzero coefficient indices exceed `m`, which is exactly the slice
/// condition `2k_{m+1} > kₙ` at weights `(1, …, n)` that makes non-convexity
/// of the slice meaningful for the ambient domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceCoords {
    pub n: usize,
    #[serde(with = "crate::complex_pairs")]
    pub free: Vec<Complex64>,
}

impl SliceCoords {
    pub fn new(n: usize, free: Vec<Complex64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall);
        }
        let m = n / 2;
        if free.len() != n - m {
            return Err(Error::InvalidParameter(format!(
                "slice for n={n} needs {} free coefficients, got {}",
                n - m,
                free.len()
            )));
        }
        ensure_finite(&free)?;
        Ok(Self { n, free })
    }

    /// First free index: `m + 1`.
    pub fn first_index(&self) -> usize {
        self.n / 2 + 1
    }

    /// Coefficient `a_j`, zero for `j ≤ m`.
    pub fn coeff(&self, j: usize) -> Complex64 {
        if j > self.n / 2 && j <= self.n {
            self.free[j - self.first_index()]
        } else {
            Complex64::ZERO
        }
    }

    /// Indices `j` with `a_j ≠ 0`.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        let first = self.first_index();
        self.free
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(i, _)| first + i)
            .collect()
    }

    /// Coordinate-wise arithmetic mean with another slice point.
    pub fn midpoint(&self, other: &SliceCoords) -> Result<SliceCoords> {
        if self.n != other.n {
            return Err(Error::InvalidParameter("slice dimensions differ".into()));
        }
        SliceCoords::new(
            self.n,
            self.free
                .iter()
                .zip(&other.free)
                .map(|(a, b)| (a + b) / 2.0)
                .collect(),
        )
    }
}

/// Elementary symmetric functions `s_k = σ_{n,k}(z)` via the stable one-pass
/// recurrence: multiply out `∏ (1 + z_j t)` accumulating coefficients.
pub fn symmetrize(z: &[Complex64]) -> Result<SymPoint> {
    if z.is_empty() {
        return Err(Error::InvalidParameter("symmetrize needs n >= 1".into()));
    }
    ensure_finite(z)?;
    let mut s = vec![Complex64::ZERO; z.len()];
    for (count, &zj) in z.iter().enumerate() {
        for k in (1..=count).rev() {
            let carry = s[k - 1] * zj;
            s[k] += carry;
        }
        s[0] += zj;
    }
    SymPoint::new(s)
}

/// Vieta bridge: the monic polynomial `ζⁿ + Σ (−1)^k s_k ζ^{n−k}` whose root
/// multiset is the σ-fibre of `s`.
pub fn poly_from_sym_point(s: &SymPoint) -> Poly {
    let mut coeffs = Vec::with_capacity(s.dim() + 1);
    coeffs.push(Complex64::ONE);
    let mut sign = -1.0;
    for &sk in s.coords() {
        coeffs.push(sk * sign);
        sign = -sign;
    }
    Poly::new(coeffs).expect("finite by construction")
}

/// Membership of `s` in `𝔾ₙ` through the Cohn recursion on the bridge
/// polynomial.
pub fn in_symmetrized_polydisc(s: &SymPoint, tol: &Tolerances) -> Result<RootLocation> {
    cohn_all_roots_in_disc(&poly_from_sym_point(s), tol)
}

/// The monic degree-`n` polynomial `ζⁿ + Σ_{j>m} a_j ζ^{n−j}` of a slice
/// point.
pub fn slice_poly(c: &SliceCoords) -> Poly {
    let mut coeffs = vec![Complex64::ZERO; c.n + 1];
    coeffs[0] = Complex64::ONE;
    for (i, &a) in c.free.iter().enumerate() {
        coeffs[c.first_index() + i] = a;
    }
    Poly::new(coeffs).expect("finite by construction")
}

/// Defining function of the `n = 3` slice:
/// `r(p,q) = |p̄q(1−|q|²) − p²q̄| + |p|² − (1−|q|²)²`.
///
/// All roots of `ζ³ + pζ + q` lie in the open unit disc iff `|q| < 1` and
/// `r(p,q) < 0`.
pub fn r_value(p: Complex64, q: Complex64) -> f64 {
    let one_minus_q2 = 1.0 - q.norm_sqr();
    let bracket = p.conj() * q * one_minus_q2 - p * p * q.conj();
    bracket.norm() + p.norm_sqr() - one_minus_q2 * one_minus_q2
}

/// Defining function of the `n = 4` slice:
/// `s(p,q) = (1−|q|²)|p̄q((1−|q|²)²−|p|²) − p³q̄²| + |p|⁴|q|² − ((1−|q|²)²−|p|²)²`.
///
/// All roots of `ζ⁴ + pζ + q` lie in the open unit disc iff `|p| + |q|² < 1`
/// and `s(p,q) < 0`.
pub fn s_value(p: Complex64, q: Complex64) -> f64 {
    let q2 = q.norm_sqr();
    let one_minus_q2 = 1.0 - q2;
    let a = one_minus_q2 * one_minus_q2 - p.norm_sqr();
    let bracket = p.conj() * q * a - p * p * p * (q.conj() * q.conj());
    one_minus_q2 * bracket.norm() + p.norm_sqr() * p.norm_sqr() * q2 - a * a
}

/// Closed-form slice membership for `n ∈ {3, 4}`: both defining inequalities
/// must hold with margin beyond the boundary band for `AllInside`, one must
/// fail with margin for `NotAllInside`, anything inside the band is
/// `Indeterminate`.
pub fn slice_membership_closed_form(
    n: usize,
    p: Complex64,
    q: Complex64,
    tol: &Tolerances,
) -> Result<RootLocation> {
    let band = tol.boundary_band;
    let margins = match n {
        3 => [1.0 - q.norm(), -r_value(p, q)],
        4 => [1.0 - (p.norm() + q.norm_sqr()), -s_value(p, q)],
        _ => {
            return Err(Error::InvalidParameter(format!(
                "no closed form for n={n}; only n=3 and n=4"
            )))
        }
    };
    let verdict = if margins.iter().all(|&m| m > band) {
        Verdict::AllInside
    } else if margins.iter().any(|&m| m < -band) {
        Verdict::NotAllInside
    } else {
        Verdict::Indeterminate
    };
    Ok(RootLocation {
        verdict,
        max_modulus_estimate: None,
        failing_stage: None,
    })
}

/// The weighted scaling `πλ(z) = (λ^{k₁}z₁, …, λ^{kₙ}zₙ)`.
pub fn pi_action(w: &Weights, lambda: Complex64, z: &[Complex64]) -> Result<Vec<Complex64>> {
    if w.len() != z.len() {
        return Err(Error::InvalidParameter(
            "weights and point must have equal length".into(),
        ));
    }
    Ok(w.exponents()
        .iter()
        .zip(z)
        .map(|(&k, &zi)| lambda.powu(k) * zi)
        .collect())
}

/// `π_{1−ε}` on a slice point; coefficient `a_j` carries weight `j`.
pub fn shrink_slice(c: &SliceCoords, epsilon: f64) -> SliceCoords {
    let factor = 1.0 - epsilon;
    let first = c.first_index();
    SliceCoords {
        n: c.n,
        free: c
            .free
            .iter()
            .enumerate()
            .map(|(i, &a)| a * factor.powi((first + i) as i32))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{find_roots, max_root_modulus};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetrize_examples() {
        let s = symmetrize(&[Complex64::ZERO; 4]).unwrap();
        assert!(s.coords().iter().all(|c| c.norm() == 0.0));

        let s = symmetrize(&[c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0)]).unwrap();
        assert_eq!(s.coords()[0], c(0.0, 0.5));
        assert_eq!(s.coords()[1], c(-0.25, 0.0));
        assert_eq!(s.coords()[2], c(0.0, -0.125));
    }

    #[test]
    fn vieta_bridge_examples() {
        let s = SymPoint::new(vec![c(0.0, 0.5), c(-0.25, 0.0), c(0.0, -0.125)]).unwrap();
        let p = poly_from_sym_point(&s);
        assert_eq!(
            p.coeffs(),
            &[c(1.0, 0.0), c(0.0, -0.5), c(-0.25, 0.0), c(0.0, 0.125)]
        );

        let zero = SymPoint::new(vec![Complex64::ZERO; 5]).unwrap();
        assert_eq!(poly_from_sym_point(&zero), Poly::monomial(5));
    }

    #[test]
    fn sigma_roundtrip_recovers_roots() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..200u64 {
            let n = 1 + (trial as usize % 8);
            let z: Vec<Complex64> = (0..n)
                .map(|_| {
                    Complex64::from_polar(
                        0.999 * rng.random::<f64>().sqrt(),
                        std::f64::consts::TAU * rng.random::<f64>(),
                    )
                })
                .collect();
            let p = poly_from_sym_point(&symmetrize(&z).unwrap());
            let roots = find_roots(&p, &tol, trial).unwrap();
            crate::testutil::assert_multiset_close(&roots, &z, 1e-7);
        }
    }

    #[test]
    fn membership_examples() {
        let tol = Tolerances::default();
        let zero = SymPoint::new(vec![Complex64::ZERO; 3]).unwrap();
        assert_eq!(
            in_symmetrized_polydisc(&zero, &tol).unwrap().verdict,
            Verdict::AllInside
        );

        let s = symmetrize(&[c(0.99, 0.0), c(0.5, 0.0), c(-0.7, 0.0)]).unwrap();
        assert_eq!(
            in_symmetrized_polydisc(&s, &tol).unwrap().verdict,
            Verdict::AllInside
        );

        let s = symmetrize(&[c(1.2, 0.0), c(0.1, 0.0), c(0.1, 0.0)]).unwrap();
        assert_eq!(
            in_symmetrized_polydisc(&s, &tol).unwrap().verdict,
            Verdict::NotAllInside
        );
    }

    #[test]
    fn slice_poly_examples() {
        let p = c(0.3, -0.2);
        let q = c(-0.1, 0.4);
        let s3 = slice_poly(&SliceCoords::new(3, vec![p, q]).unwrap());
        assert_eq!(s3.coeffs(), &[Complex64::ONE, Complex64::ZERO, p, q]);

        let s4 = slice_poly(&SliceCoords::new(4, vec![p, q]).unwrap());
        assert_eq!(
            s4.coeffs(),
            &[Complex64::ONE, Complex64::ZERO, Complex64::ZERO, p, q]
        );

        // n = 7 with a₄ = p, a₆ = q is the expansion of ζ·f₃(ζ²).
        let s7 = slice_poly(
            &SliceCoords::new(7, vec![p, Complex64::ZERO, q, Complex64::ZERO]).unwrap(),
        );
        let mut expect = vec![Complex64::ZERO; 8];
        expect[0] = Complex64::ONE;
        expect[4] = p;
        expect[6] = q;
        assert_eq!(s7.coeffs(), &expect);
    }

    #[test]
    fn r_value_examples() {
        assert_eq!(r_value(Complex64::ZERO, Complex64::ZERO), -1.0);
        // q' = 0.5, p' = 1 − q'²: exactly on the boundary.
        assert!(r_value(c(0.75, 0.0), c(0.5, 0.0)).abs() < 1e-15);

        let r = r_value(c(0.0, 0.649519053), c(0.25, 0.25));
        assert!((r - 6.340e-3).abs() < 1e-5);
    }

    #[test]
    fn s_value_examples() {
        assert_eq!(s_value(Complex64::ZERO, Complex64::ZERO), -1.0);
        let qp = 0.4_f64;
        let pp = (1.0 - qp) * (1.0 + qp).sqrt();
        assert!(s_value(c(pp, 0.0), c(qp, 0.0)).abs() < 1e-12);

        // Midpoint of the n = 4 witness family at q' = 0.4.
        let p0 = Complex64::from_polar(
            pp * (std::f64::consts::PI / 8.0).cos(),
            3.0 * std::f64::consts::PI / 8.0,
        );
        let q0 = c(0.3, 0.1 * 3_f64.sqrt());
        let s = s_value(p0, q0);
        assert!((s - 2.345e-3).abs() < 1e-5);
    }

    #[test]
    fn closed_form_membership_examples() {
        let tol = Tolerances::default();
        for n in [3, 4] {
            assert_eq!(
                slice_membership_closed_form(n, Complex64::ZERO, Complex64::ZERO, &tol)
                    .unwrap()
                    .verdict,
                Verdict::AllInside
            );
            assert_eq!(
                slice_membership_closed_form(n, c(2.0, 0.0), Complex64::ZERO, &tol)
                    .unwrap()
                    .verdict,
                Verdict::NotAllInside
            );
        }
        let boundary_p = Complex64::from_polar(0.75, 2.0 * std::f64::consts::PI / 3.0);
        assert_eq!(
            slice_membership_closed_form(3, boundary_p, c(0.5, 0.0), &tol)
                .unwrap()
                .verdict,
            Verdict::Indeterminate
        );
        assert!(slice_membership_closed_form(5, Complex64::ZERO, Complex64::ZERO, &tol).is_err());
    }

    #[test]
    fn pi_action_examples() {
        let w = Weights::new(vec![1, 2, 3]).unwrap();
        let z = vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        assert_eq!(pi_action(&w, Complex64::ONE, &z).unwrap(), z);
        assert!(pi_action(&w, Complex64::ZERO, &z)
            .unwrap()
            .iter()
            .all(|v| v.norm() == 0.0));
        assert_eq!(
            pi_action(&w, c(0.5, 0.0), &z).unwrap(),
            vec![c(0.5, 0.0), c(0.25, 0.0), c(0.125, 0.0)]
        );
        assert!(pi_action(&w, Complex64::ONE, &z[..2]).is_err());
    }

    #[test]
    fn three_way_agreement_sample() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..400u64 {
            let n = if trial % 2 == 0 { 3 } else { 4 };
            let p = Complex64::from_polar(
                1.5 * rng.random::<f64>(),
                std::f64::consts::TAU * rng.random::<f64>(),
            );
            let q = Complex64::from_polar(
                1.5 * rng.random::<f64>(),
                std::f64::consts::TAU * rng.random::<f64>(),
            );
            let closed = slice_membership_closed_form(n, p, q, &tol).unwrap();
            let sp = slice_poly(&SliceCoords::new(n, vec![p, q]).unwrap());
            let cohn = cohn_all_roots_in_disc(&sp, &tol).unwrap();
            let m = max_root_modulus(&sp, &tol, trial).unwrap();
            if closed.verdict == Verdict::Indeterminate
                || cohn.verdict == Verdict::Indeterminate
                || (m - 1.0).abs() <= 1e-6
            {
                continue;
            }
            let oracle = if m < 1.0 {
                Verdict::AllInside
            } else {
                Verdict::NotAllInside
            };
            assert_eq!(closed.verdict, cohn.verdict, "closed vs cohn at ({p}, {q})");
            assert_eq!(cohn.verdict, oracle, "cohn vs oracle at ({p}, {q})");
        }
    }

    #[test]
    fn slice_helpers() {
        let sc = SliceCoords::new(7, vec![c(1.0, 0.0), Complex64::ZERO, c(2.0, 0.0), Complex64::ZERO])
            .unwrap();
        assert_eq!(sc.first_index(), 4);
        assert_eq!(sc.nonzero_indices(), vec![4, 6]);
        assert_eq!(sc.coeff(4), c(1.0, 0.0));
        assert_eq!(sc.coeff(2), Complex64::ZERO);
        assert!(SliceCoords::new(2, vec![]).is_err());
        assert!(SliceCoords::new(3, vec![Complex64::ZERO]).is_err());
    }

    #[test]
    fn sym_point_serializes_as_pairs() {
        let s = SymPoint::new(vec![c(0.5, -0.25), c(0.0, 1.0)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[[0.5,-0.25],[0.0,1.0]]");
        let back: SymPoint = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    fn arb_complex(range: f64) -> impl Strategy<Value = Complex64> {
        (-range..range, -range..range).prop_map(|(re, im)| Complex64::new(re, im))
    }

    proptest! {
        // σ is invariant under permutation of the input (up to rounding from
        // the different accumulation order).
        #[test]
        fn symmetrize_permutation_invariant(
            z in proptest::collection::vec(arb_complex(1.0), 1..8),
            rotate in 0usize..8,
        ) {
            let mut perm = z.clone();
            perm.rotate_left(rotate % z.len());
            let a = symmetrize(&z).unwrap();
            let b = symmetrize(&perm).unwrap();
            for (x, y) in a.coords().iter().zip(b.coords()) {
                prop_assert!((x - y).norm() < 1e-12);
            }
        }
    }
}
