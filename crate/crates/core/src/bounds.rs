//! Closed-form benchmark spectra.
//!
//! Two families:
//!
//! * Soft-Coulomb comparators on the full line: the Coulomb spectrum
//!   E = -2/(n_o + 1)² bounds odd-sector levels from below, and the
//!   harmonic expansion E = (n + 1/2)/D^(3/2) - 1/D bounds every level from
//!   above (comparison theorem, the quadratic well sits above the true one).
//!
//! * The half-line trio: the Hulthen well -k/(e^(ax) - 1) is squeezed
//!   between -k/(ax) (below) and -k e^(-ax) (above), and all three have
//!   closed-form spectra. The exponential well quantizes through zeros of
//!   the Bessel function J_nu in the *order*: J_nu(2 sqrt(2k)/a) = 0 with
//!   E = -a² nu²/8. The Hulthen spectrum is E = -(k/(a n_b) - a n_b/2)²/2
//!   for n_b = 1, 2, ... while k/(a n_b) > a n_b/2; it was transcribed from
//!   the standard solution and is validated against the grid oracle by the
//!   acceptance suite before anything downstream trusts it.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Which closed form produced a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSource {
    CoulombLower,
    HarmonicUpper,
    HulthenExact,
    ExpWellExact,
    CoulombHalfExact,
}

/// A closed-form spectrum with its per-level applicability.
#[derive(Clone, Debug)]
pub struct BoundSpectrum {
    pub source: BoundSource,
    /// (level index, energy), strictly increasing in energy.
    pub levels: Vec<(usize, f64)>,
}

impl BoundSpectrum {
    pub fn energy(&self, n: usize) -> Option<f64> {
        self.levels
            .iter()
            .find(|(level, _)| *level == n)
            .map(|&(_, e)| e)
    }
}

/// Coulomb lower bound for the n-th odd-sector state: -2/(n_o + 1)² with
/// n_o = 2n + 1.
pub fn coulomb_lower(n: usize) -> f64 {
    let n_odd = (2 * n + 1) as f64;
    -2.0 / ((n_odd + 1.0) * (n_odd + 1.0))
}

/// Coulomb lower bound attached to a full-line level index: defined only
/// when that level is odd (its wavefunction vanishes at the origin).
pub fn coulomb_lower_for_level(n: usize) -> Option<f64> {
    if n % 2 == 1 {
        let m = (n + 1) as f64;
        Some(-2.0 / (m * m))
    } else {
        None
    }
}

/// Harmonic upper bound (n + 1/2)/D^(3/2) - 1/D for the soft-Coulomb level n.
pub fn harmonic_upper(n: usize, d: f64) -> Result<f64> {
    if d <= 0.0 {
        return Err(Error::NonPositiveBias(d));
    }
    Ok((n as f64 + 0.5) / d.powf(1.5) - 1.0 / d)
}

/// Number of bound states of the Hulthen well: n_b with (a n_b)² < 2k.
pub fn hulthen_bound_states(k: f64, a: f64) -> usize {
    let nu_max = (2.0 * k).sqrt() / a;
    let floor = nu_max.floor();
    let mut count = floor as usize;
    if nu_max - floor < 1e-12 && count > 0 {
        count -= 1; // marginal level with kappa = 0 is not bound
    }
    count
}

/// Exact Hulthen level n (0-indexed): E = -kappa²/2 with
/// kappa = k/(a n_b) - a n_b/2, n_b = n + 1.
pub fn hulthen_exact(n: usize, k: f64, a: f64) -> Result<f64> {
    check_positive(k, a)?;
    if n >= hulthen_bound_states(k, a) {
        return Err(Error::NoBoundState {
            level: n,
            model: "hulthen".into(),
        });
    }
    let nb = (n + 1) as f64;
    let kappa = k / (a * nb) - a * nb / 2.0;
    Ok(-0.5 * kappa * kappa)
}

/// Exact half-line Coulomb level n for V = -k/(ax): E = -(k/a)²/(2 (n+1)²).
pub fn coulomb_half_exact(n: usize, k: f64, a: f64) -> Result<f64> {
    check_positive(k, a)?;
    let nb = (n + 1) as f64;
    let g = k / a;
    Ok(-g * g / (2.0 * nb * nb))
}

fn check_positive(k: f64, a: f64) -> Result<()> {
    if k <= 0.0 {
        return Err(Error::NonPositiveParameter {
            name: "k",
            value: k,
        });
    }
    if a <= 0.0 {
        return Err(Error::NonPositiveParameter {
            name: "a",
            value: a,
        });
    }
    Ok(())
}

/// Bessel function of the first kind with real non-negative order, by the
/// ascending series sum_m (-1)^m (x/2)^(nu+2m) / (m! Gamma(nu+m+1)).
///
/// Adequate for the moderate arguments used here (x up to ~40); the largest
/// term is O((x/2)^(2m*)/(m*!)²) so ~3 digits are lost to cancellation at
/// x ~ 14, leaving f64 results good to ~1e-12.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    debug_assert!(nu >= 0.0 && x > 0.0);
    let half = 0.5 * x;
    let mut term = (nu * half.ln() - ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    let half2 = half * half;
    for m in 1..200 {
        let mf = m as f64;
        term *= -half2 / (mf * (nu + mf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) && m as f64 > half {
            break;
        }
    }
    sum
}

/// Number of bound states of the exponential well -k e^(-ax): the count of
/// positive-order solutions of J_nu(2 sqrt(2k)/a) = 0, which equals the
/// number of J_0 zeros below that argument.
pub fn exp_well_bound_states(k: f64, a: f64) -> usize {
    let z = 2.0 * (2.0 * k).sqrt() / a;
    // J_0 zeros are ~pi apart; scan on a fine grid.
    let steps = (z / 0.05).ceil() as usize;
    let mut count = 0;
    let mut prev = bessel_j(0.0, 1e-12);
    for i in 1..=steps {
        let u = 1e-12 + (z - 1e-12) * i as f64 / steps as f64;
        let cur = bessel_j(0.0, u);
        if prev * cur < 0.0 {
            count += 1;
        }
        prev = cur;
    }
    count
}

/// Exact exponential-well level n: E = -a² nu_n²/8 where nu_0 > nu_1 > ...
/// are the positive-order roots of J_nu(2 sqrt(2k)/a) = 0 in descending
/// order (the deepest state has the largest order).
pub fn exp_well_exact(n: usize, k: f64, a: f64) -> Result<f64> {
    check_positive(k, a)?;
    let z = 2.0 * (2.0 * k).sqrt() / a;
    let f = |nu: f64| bessel_j(nu, z);
    // J_nu(z) > 0 once nu >= z (the first zero j_{nu,1} exceeds nu); walk the
    // order down from there and bisect each sign change.
    let mut roots = Vec::new();
    let step = 0.02;
    let mut nu_hi = z;
    let mut f_hi = f(nu_hi);
    while nu_hi > step {
        let nu_lo = (nu_hi - step).max(1e-9);
        let f_lo = f(nu_lo);
        if f_hi * f_lo < 0.0 {
            let (mut a_, mut b_) = (nu_lo, nu_hi);
            let (mut fa, _) = (f_lo, f_hi);
            for _ in 0..200 {
                let m = 0.5 * (a_ + b_);
                let fm = f(m);
                if fa * fm <= 0.0 {
                    b_ = m;
                } else {
                    a_ = m;
                    fa = fm;
                }
                if (b_ - a_) < 1e-13 * (1.0 + a_.abs()) {
                    break;
                }
            }
            roots.push(0.5 * (a_ + b_));
            if roots.len() > n {
                break;
            }
        }
        nu_hi = nu_lo;
        f_hi = f_lo;
    }
    if n >= roots.len() {
        return Err(Error::NoBoundState {
            level: n,
            model: "exp-well".into(),
        });
    }
    let nu = roots[n];
    Ok(-a * a * nu * nu / 8.0)
}

/// Analytic bracket around the exact Hulthen level n.
#[derive(Clone, Copy, Debug)]
pub struct HulthenBracket {
    /// Half-line Coulomb level (potential below, energies below).
    pub lower: f64,
    /// Exact Hulthen level, exposed for cross-validation.
    pub exact: f64,
    /// Exponential-well level (potential above, energies above).
    pub upper: f64,
}

/// Bracket the Hulthen level n between the Coulomb-half and exponential-well
/// spectra. Errors with NoBoundState when any of the three closed forms has
/// no n-th level.
pub fn hulthen_bracket(n: usize, k: f64, a: f64) -> Result<HulthenBracket> {
    check_positive(k, a)?;
    if n >= exp_well_bound_states(k, a) {
        return Err(Error::NoBoundState {
            level: n,
            model: "exp-well".into(),
        });
    }
    Ok(HulthenBracket {
        lower: coulomb_half_exact(n, k, a)?,
        exact: hulthen_exact(n, k, a)?,
        upper: exp_well_exact(n, k, a)?,
    })
}

/// Assemble a [`BoundSpectrum`] for the requested source and level count.
pub fn bound_spectrum(
    source: BoundSource,
    d_or_k: f64,
    a: Option<f64>,
    n_levels: usize,
) -> Result<BoundSpectrum> {
    let mut levels = Vec::with_capacity(n_levels);
    for n in 0..n_levels {
        let e = match source {
            BoundSource::CoulombLower => coulomb_lower(n),
            BoundSource::HarmonicUpper => harmonic_upper(n, d_or_k)?,
            BoundSource::HulthenExact => hulthen_exact(n, d_or_k, a.unwrap_or(1.0))?,
            BoundSource::ExpWellExact => exp_well_exact(n, d_or_k, a.unwrap_or(1.0))?,
            BoundSource::CoulombHalfExact => coulomb_half_exact(n, d_or_k, a.unwrap_or(1.0))?,
        };
        levels.push((n, e));
    }
    for w in levels.windows(2) {
        debug_assert!(w[1].1 > w[0].1, "spectrum must increase with n");
    }
    Ok(BoundSpectrum { source, levels })
}
