//! Root location in the unit disc and the geometry of the symmetrized polydisc.
//!
//! The crate has three layers:
//!
//! * [`poly`]: complex polynomial arithmetic, the Schur transform and the Cohn
//!   recursion deciding whether all roots lie in the open unit disc, plus an
//!   independent all-roots oracle (Weierstrass simultaneous iteration).
//! * [`geometry`]: the symmetrization map `σₙ`, membership in the symmetrized
//!   `n`-disc `𝔾ₙ` and its coordinate slices (Cohn recursion, root oracle, and
//!   closed forms for the `n = 3, 4` slices), the weighted scaling action `πλ`,
//!   and the gauge functional of a quasi-balanced domain together with a
//!   numerical sub-mean-value check of `log h`.
//! * [`certificates`]: machine-verifiable certificates that the slice sets
//!   `Gₙ` are not convex for every `n ≥ 3`, a randomized midpoint probe for
//!   convexity violations of arbitrary domains, and the `(1,2)`-balanced
//!   example-domain checks.
//!
//! Every randomized operation takes an explicit seed and is deterministic
//! given it. All values are immutable and freely shareable across threads.
//!
//! The `symdisc` binary exposes the same functionality as subcommands
//! (`check`, `certificate`, `verify`, `scan`, `probe`); see the README. The
//! `examples/` directory carries one runnable example per capability:
//!
//! ```bash
//! cargo run -p symdisc --example check_membership
//! cargo run -p symdisc --example certificate_roundtrip
//! cargo run -p symdisc --example gauge_functional
//! cargo run -p symdisc --example submean_check
//! cargo run -p symdisc --example probe_nonconvexity
//! cargo run -p symdisc --example scan_slice
//! cargo run -p symdisc --example balanced_domains
//! ```

pub mod certificates;
pub mod cli;
pub mod geometry;
pub mod poly;

pub use num_complex::Complex64;

pub use poly::{
    cauchy_bound, cohn_all_roots_in_disc, find_roots, max_root_modulus, oracle_all_roots_in_disc,
    Poly, RootLocation, Tolerances, Verdict,
};

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Every coefficient of the input polynomial is zero.
    #[error("zero polynomial")]
    ZeroPolynomial,
    /// The Schur transform needs degree at least one.
    #[error("cannot transform constant")]
    ConstantPolynomial,
    /// A coefficient or coordinate is NaN or infinite.
    #[error("non-finite input")]
    NonFiniteInput,
    /// Simultaneous root iteration ran out of sweeps. Carries the best
    /// iterate and its residuals for diagnosis.
    #[error("root iteration did not converge after {sweeps} sweeps (worst residual {worst_residual:.3e})")]
    RootsDidNotConverge {
        sweeps: usize,
        best: Vec<Complex64>,
        residuals: Vec<f64>,
        worst_residual: f64,
    },
    /// The membership predicate never changed along the scaling ray, so the
    /// domain is not bounded and balanced in the required sense.
    #[error("not a bounded balanced domain along this ray")]
    GaugeBracketFailed,
    /// Slice dimension below the smallest supported case.
    #[error("n must be >= 3")]
    DimensionTooSmall,
    /// The degree-raising substitution does not respect the slice condition.
    #[error("inadmissible (k, j) combination: k={k}, j={j}")]
    InadmissibleLift { k: u32, j: u32 },
    /// Catch-all for argument validation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(values: &[Complex64]) -> Result<()> {
    if values.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteInput)
    }
}


/// Serialize `Complex64` sequences as JSON arrays of `[re, im]` pairs.
pub(crate) mod complex_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], ser: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(de)?;
        Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }
}
