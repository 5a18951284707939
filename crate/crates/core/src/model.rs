//! Domain types and the model registry.
//!
//! A two-body Hamiltonian H = T(p) + V(x) in dimensionless form is described
//! by a [`KineticSpec`] and a [`PotentialSpec`]: evaluation closures for the
//! function and its derivative, plus declared convexity metadata for the
//! auxiliary functions b_T(p²) = T(p) and b_V(x²) = V(x). The convexity signs
//! decide whether envelope energies are upper bounds, lower bounds, or exact,
//! so they are declared per model rather than inferred by sampling (a sample
//! can never certify a global sign).
//!
//! Everything here is immutable after construction and the closures must be
//! pure, so models can be shared freely across threads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shared evaluation closure for T(p), V(x) and their derivatives.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Domain of the position variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    /// x ranges over the whole real line; V must be even.
    FullLine,
    /// x ranges over (0, +inf); wavefunctions vanish at x = 0.
    HalfLine,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainKind::FullLine => write!(f, "full-line"),
            DomainKind::HalfLine => write!(f, "half-line"),
        }
    }
}

/// Sign of b'' for b_T(p²) = T(p) or b_V(x²) = V(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convexity {
    Concave,
    Linear,
    Convex,
    /// b'' changes sign over the domain; no bound statement possible.
    Indefinite,
}

/// Effective oscillator quantization number Q_n.
///
/// Q_n = n + 1/2 on the full line; on the half line only odd oscillator
/// states survive the Dirichlet condition at x = 0, so Q_n = (2n + 1) + 1/2.
pub fn quantization_number(n: usize, domain: DomainKind) -> f64 {
    match domain {
        DomainKind::FullLine => n as f64 + 0.5,
        DomainKind::HalfLine => (2 * n + 1) as f64 + 0.5,
    }
}

/// Oscillator index behind level `n`: n on the full line, 2n+1 on the half line.
pub fn oscillator_index(n: usize, domain: DomainKind) -> usize {
    match domain {
        DomainKind::FullLine => n,
        DomainKind::HalfLine => 2 * n + 1,
    }
}

/// Kinetic part T(p). Expected even in p.
#[derive(Clone)]
pub struct KineticSpec {
    pub value: RealFn,
    pub derivative: RealFn,
    pub b_convexity: Convexity,
}

/// Potential part V(x). Even in x on the full line.
#[derive(Clone)]
pub struct PotentialSpec {
    pub value: RealFn,
    pub derivative: RealFn,
    pub b_convexity: Convexity,
    pub domain: DomainKind,
}

/// A registered Hamiltonian H = T(p) + V(x).
#[derive(Clone)]
pub struct HamiltonianModel {
    pub kinetic: KineticSpec,
    pub potential: PotentialSpec,
    pub label: String,
    /// Named parameters, keyed by the conventional symbols ("D", "k", "a").
    pub parameters: BTreeMap<String, f64>,
    /// False for models whose V' is singular at the envelope solution
    /// (pure Coulomb on the full line); such models are registered for
    /// bound formulas only.
    pub supports_et: bool,
}

impl fmt::Debug for HamiltonianModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HamiltonianModel")
            .field("label", &self.label)
            .field("parameters", &self.parameters)
            .field("domain", &self.potential.domain)
            .field("supports_et", &self.supports_et)
            .finish()
    }
}

impl HamiltonianModel {
    pub fn domain(&self) -> DomainKind {
        self.potential.domain
    }

    pub fn t(&self, p: f64) -> f64 {
        (self.kinetic.value)(p)
    }

    pub fn t_prime(&self, p: f64) -> f64 {
        (self.kinetic.derivative)(p)
    }

    pub fn v(&self, x: f64) -> f64 {
        (self.potential.value)(x)
    }

    pub fn v_prime(&self, x: f64) -> f64 {
        (self.potential.derivative)(x)
    }

    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters.get(name).copied()
    }

    /// Consistency checks on the declared closures: T even, V even on the
    /// full line, and both derivatives matching a centered difference at the
    /// given probe points (h = 1e-5, relative tolerance 1e-6).
    pub fn validate(&self, probes: &[f64]) -> Result<()> {
        let h = 1e-5;
        for &x in probes {
            let p = x.abs().max(1e-3);
            let t_even = (self.t(p) - self.t(-p)).abs();
            if t_even > 1e-12 {
                return Err(Error::UnsupportedModel {
                    label: self.label.clone(),
                    reason: format!("kinetic term is not even at p = {p} (diff {t_even:e})"),
                });
            }
            let td = (self.t(p + h) - self.t(p - h)) / (2.0 * h);
            let t_ref = self.t_prime(p);
            if (td - t_ref).abs() > 1e-6 * (1.0 + t_ref.abs()) {
                return Err(Error::UnsupportedModel {
                    label: self.label.clone(),
                    reason: format!("kinetic derivative inconsistent at p = {p}"),
                });
            }

            let x = match self.domain() {
                DomainKind::FullLine => x,
                DomainKind::HalfLine => x.abs().max(10.0 * h),
            };
            if self.domain() == DomainKind::FullLine {
                let v_even = (self.v(x) - self.v(-x)).abs();
                if v_even > 1e-12 {
                    return Err(Error::UnsupportedModel {
                        label: self.label.clone(),
                        reason: format!("potential is not even at x = {x} (diff {v_even:e})"),
                    });
                }
            }
            let vd = (self.v(x + h) - self.v(x - h)) / (2.0 * h);
            let v_ref = self.v_prime(x);
            if (vd - v_ref).abs() > 1e-6 * (1.0 + v_ref.abs()) {
                return Err(Error::UnsupportedModel {
                    label: self.label.clone(),
                    reason: format!("potential derivative inconsistent at x = {x}"),
                });
            }
        }
        Ok(())
    }
}

/// Nonrelativistic kinetic term T(p) = p²/2; b_T is linear.
pub fn nonrel_kinetic() -> KineticSpec {
    KineticSpec {
        value: Arc::new(|p| 0.5 * p * p),
        derivative: Arc::new(|p| p),
        b_convexity: Convexity::Linear,
    }
}

/// Soft-Coulomb potential V(x) = -1/sqrt(x² + D²) on the full line.
///
/// b_V(z) = -(z + D²)^(-1/2) is concave, so with a quadratic kinetic term
/// the envelope energies are upper bounds.
pub fn make_soft_coulomb(d: f64) -> Result<HamiltonianModel> {
    if d <= 0.0 {
        return Err(Error::NonPositiveBias(d));
    }
    let d2 = d * d;
    Ok(HamiltonianModel {
        kinetic: nonrel_kinetic(),
        potential: PotentialSpec {
            value: Arc::new(move |x| -1.0 / (x * x + d2).sqrt()),
            derivative: Arc::new(move |x| x * (x * x + d2).powf(-1.5)),
            b_convexity: Convexity::Concave,
            domain: DomainKind::FullLine,
        },
        label: "soft-coulomb".into(),
        parameters: BTreeMap::from([("D".to_string(), d)]),
        supports_et: true,
    })
}

/// Pure Coulomb potential V(x) = -1/|x| on the full line.
///
/// Registered for the analytic lower-bound formulas only: V' is undefined
/// at the origin, so `supports_et` is false.
pub fn make_pure_coulomb() -> HamiltonianModel {
    HamiltonianModel {
        kinetic: nonrel_kinetic(),
        potential: PotentialSpec {
            value: Arc::new(|x| -1.0 / x.abs()),
            derivative: Arc::new(|x| x.signum() / (x * x)),
            b_convexity: Convexity::Concave,
            domain: DomainKind::FullLine,
        },
        label: "pure-coulomb".into(),
        parameters: BTreeMap::new(),
        supports_et: false,
    }
}

/// Harmonic expansion of the soft-Coulomb well about x = 0:
/// V(x) = x²/(2D³) - 1/D. b_V is linear, so envelope energies are exact.
pub fn make_harmonic_approx(d: f64) -> Result<HamiltonianModel> {
    if d <= 0.0 {
        return Err(Error::NonPositiveBias(d));
    }
    let d3 = d * d * d;
    Ok(HamiltonianModel {
        kinetic: nonrel_kinetic(),
        potential: PotentialSpec {
            value: Arc::new(move |x| 0.5 * x * x / d3 - 1.0 / d),
            derivative: Arc::new(move |x| x / d3),
            b_convexity: Convexity::Linear,
            domain: DomainKind::FullLine,
        },
        label: "harmonic-approx".into(),
        parameters: BTreeMap::from([("D".to_string(), d)]),
        supports_et: true,
    })
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value <= 0.0 {
        return Err(Error::NonPositiveParameter { name, value });
    }
    Ok(())
}

/// Hulthen potential V(x) = -k/(e^(ax) - 1) on the half line.
///
/// b_V is concave (V'' - V'/x < 0 on x > 0), so envelope energies are
/// upper bounds.
pub fn make_hulthen(k: f64, a: f64) -> Result<HamiltonianModel> {
    require_positive("k", k)?;
    require_positive("a", a)?;
    Ok(HamiltonianModel {
        kinetic: nonrel_kinetic(),
        potential: PotentialSpec {
            value: Arc::new(move |x| -k / (a * x).exp_m1()),
            derivative: Arc::new(move |x| {
                let e = (a * x).exp_m1();
                k * a * (a * x).exp() / (e * e)
            }),
            b_convexity: Convexity::Concave,
            domain: DomainKind::HalfLine,
        },
        label: "hulthen".into(),
        parameters: BTreeMap::from([("k".to_string(), k), ("a".to_string(), a)]),
        supports_et: true,
    })
}

/// Exponential well V(x) = -k e^(-ax) on the half line; bounds the Hulthen
/// potential from above.
pub fn make_exp_well(k: f64, a: f64) -> Result<HamiltonianModel> {
    require_positive("k", k)?;
    require_positive("a", a)?;
    Ok(HamiltonianModel {
        kinetic: nonrel_kinetic(),
        potential: PotentialSpec {
            value: Arc::new(move |x| -k * (-a * x).exp()),
            derivative: Arc::new(move |x| k * a * (-a * x).exp()),
            b_convexity: Convexity::Concave,
            domain: DomainKind::HalfLine,
        },
        label: "exp-well".into(),
        parameters: BTreeMap::from([("k".to_string(), k), ("a".to_string(), a)]),
        supports_et: true,
    })
}

/// Half-line Coulomb potential V(x) = -k/(ax); bounds the Hulthen potential
/// from below.
pub fn make_coulomb_half(k: f64, a: f64) -> Result<HamiltonianModel> {
    require_positive("k", k)?;
    require_positive("a", a)?;
    Ok(HamiltonianModel {
        kinetic: nonrel_kinetic(),
        potential: PotentialSpec {
            value: Arc::new(move |x| -k / (a * x)),
            derivative: Arc::new(move |x| k / (a * x * x)),
            b_convexity: Convexity::Concave,
            domain: DomainKind::HalfLine,
        },
        label: "coulomb-half".into(),
        parameters: BTreeMap::from([("k".to_string(), k), ("a".to_string(), a)]),
        supports_et: true,
    })
}

/// Labels accepted by [`model_from_label`], in registry order.
pub const MODEL_LABELS: [&str; 6] = [
    "soft-coulomb",
    "pure-coulomb",
    "harmonic-approx",
    "hulthen",
    "exp-well",
    "coulomb-half",
];

/// Build a registry model from its CLI label and a parameter map.
pub fn model_from_label(
    label: &str,
    parameters: &BTreeMap<String, f64>,
) -> Result<HamiltonianModel> {
    let get = |name: &'static str| -> Result<f64> {
        parameters
            .get(name)
            .copied()
            .ok_or_else(|| Error::MissingParameter {
                label: label.to_string(),
                name,
            })
    };
    match label {
        "soft-coulomb" => make_soft_coulomb(get("D")?),
        "pure-coulomb" => Ok(make_pure_coulomb()),
        "harmonic-approx" => make_harmonic_approx(get("D")?),
        "hulthen" => make_hulthen(get("k")?, get("a")?),
        "exp-well" => make_exp_well(get("k")?, get("a")?),
        "coulomb-half" => make_coulomb_half(get("k")?, get("a")?),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quantization_numbers_match_both_schemes() {
        assert_eq!(quantization_number(0, DomainKind::FullLine), 0.5);
        assert_eq!(quantization_number(2, DomainKind::FullLine), 2.5);
        assert_eq!(quantization_number(1, DomainKind::HalfLine), 3.5);
        assert_eq!(quantization_number(0, DomainKind::HalfLine), 1.5);
    }

    #[test]
    fn quantization_number_strictly_increasing() {
        for domain in [DomainKind::FullLine, DomainKind::HalfLine] {
            for n in 0..1000 {
                assert!(quantization_number(n + 1, domain) > quantization_number(n, domain));
            }
        }
    }

    #[test]
    fn soft_coulomb_values() {
        let m = make_soft_coulomb(2.0).unwrap();
        assert_relative_eq!(m.v(0.0), -0.5, epsilon = 1e-15);
        assert_relative_eq!(m.v(2.0), -1.0 / 8.0_f64.sqrt(), epsilon = 1e-15);
        let m1 = make_soft_coulomb(1.0).unwrap();
        assert_relative_eq!(m1.v_prime(1.0), 2.0_f64.powf(-1.5), epsilon = 1e-15);
    }

    #[test]
    fn soft_coulomb_rejects_nonpositive_bias() {
        let err = make_soft_coulomb(0.0).unwrap_err();
        assert_eq!(err.name(), "NonPositiveBias");
        assert!(make_soft_coulomb(-1.0).is_err());
    }

    #[test]
    fn registry_labels_resolve() {
        let mut params = BTreeMap::new();
        params.insert("D".to_string(), 2.0);
        params.insert("k".to_string(), 1.0);
        params.insert("a".to_string(), 0.2);
        for label in MODEL_LABELS {
            let m = model_from_label(label, &params).unwrap();
            assert_eq!(m.label, label);
        }
        assert_eq!(
            model_from_label("nope", &params).unwrap_err().name(),
            "UnknownModel"
        );
        assert_eq!(
            model_from_label("soft-coulomb", &BTreeMap::new())
                .unwrap_err()
                .name(),
            "MissingParameter"
        );
    }

    #[test]
    fn registry_models_validate() {
        let probes = [0.3, 0.7, 1.1, 2.9, 4.3];
        let mut params = BTreeMap::new();
        params.insert("D".to_string(), 1.5);
        params.insert("k".to_string(), 1.0);
        params.insert("a".to_string(), 0.2);
        for label in MODEL_LABELS {
            if label == "pure-coulomb" {
                continue; // derivative check would probe the |x| kink region
            }
            model_from_label(label, &params)
                .unwrap()
                .validate(&probes)
                .unwrap();
        }
    }

    #[test]
    fn pure_coulomb_is_flagged_et_unsupported() {
        assert!(!make_pure_coulomb().supports_et);
    }

    #[test]
    fn hulthen_rejects_bad_parameters() {
        assert_eq!(
            make_hulthen(0.0, 0.2).unwrap_err().name(),
            "NonPositiveParameter"
        );
        assert_eq!(
            make_hulthen(1.0, -0.2).unwrap_err().name(),
            "NonPositiveParameter"
        );
    }
}
