//! Per-level envelope solver.
//!
//! For level n the method solves the three-equation system
//!
//! ```text
//! E = T(p0) + V(x0),      x0 p0 = Q_n,      p0 T'(p0) = x0 V'(x0)
//! ```
//!
//! in natural units. Eliminating p0 = Q_n/x0 reduces the quantization and
//! motion equations to a single transcendental equation in x0. For the
//! soft-Coulomb model the motion equation in s = x0² reads
//! s² = Q_n²(s + D²)^(3/2), which has exactly one positive root; it is
//! bracketed and polished by a Newton-safeguarded bisection. The quartic
//! closed form exists but is numerically useless and is not implemented.
//!
//! The solved (x0, p0) define tangent quadratic envelopes of T and V whose
//! oscillator Hamiltonian reproduces E exactly through <p²> = p0²,
//! <x²> = x0².

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{quantization_number, Convexity, DomainKind, HamiltonianModel};
use crate::roots;

/// Default absolute tolerance on the system residuals.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Iteration cap for the inner root search.
pub const MAX_ITERATIONS: usize = 200;
/// Smallest soft-Coulomb bias accepted by [`solve_level`]; the root equation
/// conditioning degrades in the near-Coulomb regime below this.
pub const MIN_SOFT_COULOMB_BIAS: f64 = 1e-6;

/// Whether an envelope energy bounds the true eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundCharacter {
    UpperBound,
    LowerBound,
    Exact,
    Unknown,
}

impl BoundCharacter {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundCharacter::UpperBound => "upper",
            BoundCharacter::LowerBound => "lower",
            BoundCharacter::Exact => "exact",
            BoundCharacter::Unknown => "unknown",
        }
    }
}

/// Solved level of the three-equation system.
#[derive(Clone, Debug)]
pub struct EtSolution {
    pub n: usize,
    pub domain: DomainKind,
    /// Quantization number Q_n.
    pub q: f64,
    /// Mean inter-particle distance.
    pub x0: f64,
    /// Mean momentum.
    pub p0: f64,
    pub energy: f64,
    pub bound_character: BoundCharacter,
    /// (|x0 p0 - Q_n|, |p0 T'(p0) - x0 V'(x0)|).
    pub residuals: (f64, f64),
}

impl EtSolution {
    /// Oscillator scale lambda = sqrt(Q_n)/x0 of the approximate eigenfunction.
    pub fn lambda(&self) -> f64 {
        self.q.sqrt() / self.x0
    }
}

/// Tangent quadratic envelopes of T and V at (p0, x0).
///
/// t_coeffs = (T(p0), T'(p0)/(2 p0), p0) and v_coeffs = (V(x0), V'(x0)/(2 x0), x0)
/// define T~(p) = t0 + t1 (p² - p0²) and V~(x) = v0 + v1 (x² - x0²).
#[derive(Clone, Copy, Debug)]
pub struct EnvelopePair {
    pub t_coeffs: (f64, f64, f64),
    pub v_coeffs: (f64, f64, f64),
}

impl EnvelopePair {
    pub fn t_tilde(&self, p: f64) -> f64 {
        let (t0, t1, p0) = self.t_coeffs;
        t0 + t1 * (p * p - p0 * p0)
    }

    pub fn v_tilde(&self, x: f64) -> f64 {
        let (v0, v1, x0) = self.v_coeffs;
        v0 + v1 * (x * x - x0 * x0)
    }
}

/// Classify the bound character from the declared convexities of b_T and b_V.
///
/// Both concave (or one concave, one linear) gives an upper bound; dually for
/// convex. Both linear is the oscillator itself, solved exactly. Any other
/// combination carries no guarantee.
pub fn classify_bound(model: &HamiltonianModel) -> BoundCharacter {
    use Convexity::*;
    match (model.kinetic.b_convexity, model.potential.b_convexity) {
        (Linear, Linear) => BoundCharacter::Exact,
        (Concave | Linear, Concave) | (Concave, Linear) => BoundCharacter::UpperBound,
        (Convex | Linear, Convex) | (Convex, Linear) => BoundCharacter::LowerBound,
        _ => BoundCharacter::Unknown,
    }
}

/// Solve the per-level system for `model` at level `n`.
///
/// Residuals of both system equations are driven below `tol` (absolute).
pub fn solve_level(model: &HamiltonianModel, n: usize, tol: f64) -> Result<EtSolution> {
    if !model.supports_et {
        return Err(Error::UnsupportedModel {
            label: model.label.clone(),
            reason: "potential derivative is singular at the solution".into(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Usage(format!("tolerance must be positive, got {tol}")));
    }
    let domain = model.domain();
    let q = quantization_number(n, domain);

    let x0 = if model.label == "soft-coulomb" {
        let d = model.parameter("D").expect("soft-coulomb carries D");
        if d < MIN_SOFT_COULOMB_BIAS {
            return Err(Error::UnsupportedModel {
                label: model.label.clone(),
                reason: format!(
                    "bias D = {d:e} below {MIN_SOFT_COULOMB_BIAS:e}; the root equation is \
                     ill-conditioned in the near-Coulomb regime"
                ),
            });
        }
        solve_soft_coulomb_x0(q, d)?
    } else {
        solve_generic_x0(model, q, tol)?
    };

    let p0 = q / x0;
    let energy = model.t(p0) + model.v(x0);
    let residual_q = (x0 * p0 - q).abs();
    let residual_motion = (p0 * model.t_prime(p0) - x0 * model.v_prime(x0)).abs();
    if residual_q > tol || residual_motion > tol {
        return Err(Error::NoConvergence {
            iterations: MAX_ITERATIONS,
            residual: residual_q.max(residual_motion),
        });
    }
    Ok(EtSolution {
        n,
        domain,
        q,
        x0,
        p0,
        energy,
        bound_character: classify_bound(model),
        residuals: (residual_q, residual_motion),
    })
}

/// Root of s² = Q²(s + D²)^(3/2) in s = x0²; unique positive solution.
fn solve_soft_coulomb_x0(q: f64, d: f64) -> Result<f64> {
    let q2 = q * q;
    let d2 = d * d;
    let f = |s: f64| s * s - q2 * (s + d2).powf(1.5);
    let df = |s: f64| 2.0 * s - 1.5 * q2 * (s + d2).sqrt();
    // f(0) = -Q²D³ < 0; grow the upper end from the asymptotic scales.
    let s_hi = 4.0 * (q2 * d2 * d).max(q2 * q2);
    let bracket = roots::expand_bracket(&f, 0.0, s_hi, "soft-coulomb root equation")?;
    // tol_f = 0 runs to the floating point floor; the system residuals are
    // re-validated by solve_level.
    let s = roots::newton_bisect(&f, &df, bracket, 0.0, MAX_ITERATIONS)?;
    Ok(s.sqrt())
}

/// Generic path: eliminate p0 = Q/x0 and solve the motion equation
/// g(x) = x V'(x) - (Q/x) T'(Q/x) = 0 on the open half line.
fn solve_generic_x0(model: &HamiltonianModel, q: f64, tol: f64) -> Result<f64> {
    let g = |x: f64| {
        let p = q / x;
        x * model.v_prime(x) - p * model.t_prime(p)
    };
    // The kinetic term dominates as x -> 0+ for every registered model, so g
    // starts negative and the first sign change brackets the root.
    let bracket = roots::scan_bracket(&g, 1e-9, 1e12, "envelope motion equation")?;
    roots::secant_bisect(&g, bracket, 0.5 * tol, MAX_ITERATIONS)
}

/// Build the tangent quadratic envelopes at a solved level.
pub fn build_envelopes(model: &HamiltonianModel, sol: &EtSolution) -> EnvelopePair {
    let (x0, p0) = (sol.x0, sol.p0);
    EnvelopePair {
        t_coeffs: (model.t(p0), model.t_prime(p0) / (2.0 * p0), p0),
        v_coeffs: (model.v(x0), model.v_prime(x0) / (2.0 * x0), x0),
    }
}

/// Oscillator expectation of the envelope Hamiltonian through
/// <p²> = p0², <x²> = x0²; equals the solved energy identically.
pub fn envelope_expectation(sol: &EtSolution, env: &EnvelopePair) -> f64 {
    let (t0, t1, p0) = env.t_coeffs;
    let (v0, v1, x0) = env.v_coeffs;
    t0 + t1 * (sol.p0 * sol.p0 - p0 * p0) + v0 + v1 * (sol.x0 * sol.x0 - x0 * x0)
}

/// Asymptotic regimes of the soft-Coulomb envelope energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsymptoticRegime {
    /// n >> 1 at moderate D: the bias drops out of the leading term.
    LargeN,
    /// Small n at large D: the well is effectively harmonic.
    SmallNLargeD,
}

/// Closed-form asymptotic soft-Coulomb envelope energies.
///
/// LargeN returns -2/(2n+1)²; SmallNLargeD returns (n + 1/2)/D^(3/2) - 1/D.
pub fn asymptotic_energy(regime: AsymptoticRegime, n: usize, d: f64) -> f64 {
    debug_assert!(d > 0.0);
    match regime {
        AsymptoticRegime::LargeN => {
            let m = 2.0 * n as f64 + 1.0;
            -2.0 / (m * m)
        }
        AsymptoticRegime::SmallNLargeD => (n as f64 + 0.5) / d.powf(1.5) - 1.0 / d,
    }
}
