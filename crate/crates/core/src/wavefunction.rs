//! Oscillator eigenfunctions of the envelope Hamiltonian.
//!
//! Level n carries the approximate eigenfunction
//!
//! ```text
//! psi_n(x) = (lambda²/pi)^(1/4) / sqrt(2^n n!) H_n(lambda x) exp(-lambda² x²/2)
//! ```
//!
//! with lambda = sqrt(Q_n)/x0. On the half line the surviving odd oscillator
//! state (index 2n+1) is multiplied by sqrt(2) to stay normalized on (0, inf).
//! The solved (x0, p0) are exactly the root-mean-square position and momentum
//! of these states: <x²> = x0², <p²> = p0².

use crate::envelope::EtSolution;
use crate::error::{Error, Result};
use crate::model::{oscillator_index, DomainKind};

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence
/// H_{k+1} = 2z H_k - 2k H_{k-1}. Overflows f64 near n ~ 150 at large |z|;
/// use [`hermite_normalized`] for wavefunction work.
pub fn hermite_eval(n: usize, z: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * z,
        _ => {
            let mut prev = 1.0;
            let mut cur = 2.0 * z;
            for k in 1..n {
                let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Rescaled Hermite value H_n(z)/sqrt(2^n n!), evaluated by the stabilized
/// recurrence h_{k+1} = sqrt(2/(k+1)) z h_k - sqrt(k/(k+1)) h_{k-1}. Safe far
/// beyond the n ~ 150 overflow of the raw recurrence.
pub fn hermite_normalized(n: usize, z: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => std::f64::consts::SQRT_2 * z,
        _ => {
            let mut prev = 1.0;
            let mut cur = std::f64::consts::SQRT_2 * z;
            for k in 1..n {
                let kf = k as f64;
                let next = (2.0 / (kf + 1.0)).sqrt() * z * cur - (kf / (kf + 1.0)).sqrt() * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Sampled approximate eigenfunction with normalization metadata.
#[derive(Clone, Debug)]
pub struct WavefunctionSample {
    pub n: usize,
    pub lambda: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub domain: DomainKind,
    /// Trapezoid estimate of the squared norm on the grid.
    pub norm_estimate: f64,
}

impl WavefunctionSample {
    /// Strict sign changes of the sampled values, exact zeros skipped.
    pub fn node_count(&self) -> usize {
        let scale = self
            .values
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        let mut count = 0;
        let mut last_sign = 0i8;
        for &v in &self.values {
            if v.abs() <= 1e-12 * scale {
                continue;
            }
            let s = if v > 0.0 { 1 } else { -1 };
            if last_sign != 0 && s != last_sign {
                count += 1;
            }
            last_sign = s;
        }
        count
    }

    /// Largest deviation from psi(-x) = (-1)^n psi(x) over mirrored grid
    /// pairs; None unless the grid is symmetric about the origin.
    pub fn parity_error(&self) -> Option<f64> {
        if self.domain != DomainKind::FullLine {
            return None;
        }
        let len = self.grid.len();
        let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
        let mut worst = 0.0_f64;
        for i in 0..len {
            let j = len - 1 - i;
            if (self.grid[i] + self.grid[j]).abs() > 1e-9 * (1.0 + self.grid[i].abs()) {
                return None;
            }
            worst = worst.max((self.values[i] - sign * self.values[j]).abs());
        }
        Some(worst)
    }
}

/// Evaluate the level's eigenfunction at a point (no grid bookkeeping).
pub fn eval_wavefunction(sol: &EtSolution, x: f64) -> f64 {
    let lambda = sol.lambda();
    let m = oscillator_index(sol.n, sol.domain);
    let z = lambda * x;
    let norm = (lambda * lambda / std::f64::consts::PI).powf(0.25);
    let half_line_factor = match sol.domain {
        DomainKind::FullLine => 1.0,
        DomainKind::HalfLine => std::f64::consts::SQRT_2,
    };
    half_line_factor * norm * hermite_normalized(m, z) * (-0.5 * z * z).exp()
}

/// Default sampling grid: 2001 points over [-8/lambda, 8/lambda] on the full
/// line, [0, 8/lambda] on the half line. Captures all but ~1e-12 of the
/// probability mass for moderate n.
pub fn default_grid(sol: &EtSolution) -> Vec<f64> {
    let span = 8.0 / sol.lambda();
    let n_points = 2001;
    match sol.domain {
        DomainKind::FullLine => (0..n_points)
            .map(|i| -span + 2.0 * span * i as f64 / (n_points - 1) as f64)
            .collect(),
        DomainKind::HalfLine => (0..n_points)
            .map(|i| span * i as f64 / (n_points - 1) as f64)
            .collect(),
    }
}

fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..grid.len() {
        acc += 0.5 * (grid[i] - grid[i - 1]) * (values[i] + values[i - 1]);
    }
    acc
}

/// Sample the level's eigenfunction on a strictly increasing grid.
pub fn sample_wavefunction(sol: &EtSolution, grid: &[f64]) -> Result<WavefunctionSample> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NonMonotoneGrid);
    }
    if sol.domain == DomainKind::HalfLine {
        if let Some(&x) = grid.iter().find(|&&x| x < 0.0) {
            return Err(Error::DomainViolation(x));
        }
    }
    let values: Vec<f64> = grid.iter().map(|&x| eval_wavefunction(sol, x)).collect();
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    let norm_estimate = trapezoid(grid, &sq);
    Ok(WavefunctionSample {
        n: sol.n,
        lambda: sol.lambda(),
        grid: grid.to_vec(),
        values,
        domain: sol.domain,
        norm_estimate,
    })
}

/// Quadrature check of <x²> = x0² and <p²> = p0² on a sampled level.
///
/// <x²> is the trapezoid of x²|psi|²; <p²> the trapezoid of |psi'|² with
/// psi' from 4th-order centered differences, which keeps the quadrature
/// error well below the 1e-4 comparison tolerance. The grid must be uniform
/// and wide enough that the Gaussian tail mass beyond the edges is < 1e-8.
pub fn moment_check(sample: &WavefunctionSample, sol: &EtSolution) -> Result<(f64, f64)> {
    if sample.n != sol.n || (sample.lambda - sol.lambda()).abs() > 1e-12 * sol.lambda() {
        return Err(Error::QuadratureFailure(
            "sample was not generated from this solution".into(),
        ));
    }
    let grid = &sample.grid;
    let values = &sample.values;
    let len = grid.len();
    if len < 9 {
        return Err(Error::GridTooNarrow(1.0));
    }
    let h = (grid[len - 1] - grid[0]) / (len - 1) as f64;
    if grid
        .windows(2)
        .any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h)
    {
        return Err(Error::QuadratureFailure(
            "moment check requires a uniform grid".into(),
        ));
    }

    // Gaussian bound on the missing tail mass: psi(x_e)²/(2 lambda² x_e) per
    // open edge, valid once lambda·x_e >= 1.
    let lambda = sample.lambda;
    let mut tail = 0.0;
    let mut edges = vec![(grid[len - 1], values[len - 1])];
    if sample.domain == DomainKind::FullLine {
        edges.push((grid[0], values[0]));
    }
    for (xe, ve) in edges {
        let xe = xe.abs();
        if lambda * xe < 1.0 {
            return Err(Error::GridTooNarrow(1.0));
        }
        tail += ve * ve / (2.0 * lambda * lambda * xe);
    }
    if tail > 1e-8 {
        return Err(Error::GridTooNarrow(tail));
    }

    let x2_values: Vec<f64> = grid
        .iter()
        .zip(values)
        .map(|(&x, &v)| x * x * v * v)
        .collect();
    let x2 = trapezoid(grid, &x2_values);

    // |psi'|² on the interior; the two skipped points at each edge carry
    // negligible mass by the tail bound above.
    let mut dgrid = Vec::with_capacity(len - 4);
    let mut dsq = Vec::with_capacity(len - 4);
    for i in 2..len - 2 {
        let d = (-values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] + values[i - 2])
            / (12.0 * h);
        dgrid.push(grid[i]);
        dsq.push(d * d);
    }
    let p2 = trapezoid(&dgrid, &dsq);

    Ok((x2, p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{solve_level, DEFAULT_TOL};
    use crate::model::{make_harmonic_approx, make_hulthen, make_soft_coulomb};
    use approx::assert_relative_eq;

    #[test]
    fn hermite_reference_values() {
        assert_eq!(hermite_eval(0, 1.7), 1.0);
        assert_eq!(hermite_eval(2, 1.0), 2.0); // 4z² - 2
        // H_5(z) = 32 z^5 - 160 z³ + 120 z, symbolic recurrence expansion.
        assert_relative_eq!(hermite_eval(5, 0.5), 41.0, epsilon = 1e-12);
        // H_3(z) = 8 z³ - 12 z.
        assert_relative_eq!(
            hermite_eval(3, -0.8),
            8.0 * (-0.8f64).powi(3) - 12.0 * -0.8,
            epsilon = 1e-12
        );
    }

    #[test]
    fn normalized_recurrence_matches_raw_for_small_n() {
        for n in 0..=12 {
            let mut fact = 1.0_f64;
            for k in 1..=n {
                fact *= k as f64;
            }
            let scale = (2.0_f64.powi(n as i32) * fact).sqrt();
            for &z in &[0.0, 0.3, -1.1, 2.7] {
                assert_relative_eq!(
                    hermite_normalized(n, z),
                    hermite_eval(n, z) / scale,
                    epsilon = 1e-11,
                    max_relative = 1e-11
                );
            }
        }
    }

    #[test]
    fn normalized_recurrence_survives_large_n() {
        // The raw recurrence overflows long before n = 400.
        let v = hermite_normalized(400, 1.3);
        assert!(v.is_finite());
    }

    #[test]
    fn ground_state_is_normalized_gaussian() {
        let model = make_harmonic_approx(1.0).unwrap();
        let sol = solve_level(&model, 0, DEFAULT_TOL).unwrap();
        let sample = sample_wavefunction(&sol, &default_grid(&sol)).unwrap();
        assert_relative_eq!(sample.norm_estimate, 1.0, epsilon = 1e-6);
        // Peak at the origin.
        let peak = sample
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .unwrap()
            .0;
        assert!((sample.grid[peak]).abs() < 1e-9);
        assert_eq!(sample.node_count(), 0);
    }

    #[test]
    fn first_excited_soft_coulomb_is_odd_with_one_node() {
        let model = make_soft_coulomb(2.0).unwrap();
        let sol = solve_level(&model, 1, DEFAULT_TOL).unwrap();
        let sample = sample_wavefunction(&sol, &default_grid(&sol)).unwrap();
        assert_eq!(sample.node_count(), 1);
        assert!(sample.parity_error().unwrap() < 1e-10);
        assert_relative_eq!(sample.norm_estimate, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn node_count_matches_level_up_to_ten() {
        let model = make_soft_coulomb(2.0).unwrap();
        for n in 0..=10 {
            let sol = solve_level(&model, n, DEFAULT_TOL).unwrap();
            let sample = sample_wavefunction(&sol, &default_grid(&sol)).unwrap();
            assert_eq!(sample.node_count(), n, "level {n}");
            assert!(sample.parity_error().unwrap() < 1e-10, "level {n}");
        }
    }

    #[test]
    fn half_line_sample_carries_sqrt2_and_vanishes_at_origin() {
        let model = make_hulthen(1.0, 0.2).unwrap();
        let sol = solve_level(&model, 0, DEFAULT_TOL).unwrap();
        let sample = sample_wavefunction(&sol, &default_grid(&sol)).unwrap();
        assert_relative_eq!(sample.norm_estimate, 1.0, epsilon = 1e-6);
        assert_eq!(sample.values[0], 0.0); // odd oscillator index at x = 0
        let err = sample_wavefunction(&sol, &[-1.0, 0.0, 1.0]).unwrap_err();
        assert_eq!(err.name(), "DomainViolation");
    }

    #[test]
    fn grid_validation_errors() {
        let model = make_soft_coulomb(2.0).unwrap();
        let sol = solve_level(&model, 0, DEFAULT_TOL).unwrap();
        assert_eq!(sample_wavefunction(&sol, &[]).unwrap_err().name(), "EmptyGrid");
        assert_eq!(
            sample_wavefunction(&sol, &[0.0, 1.0, 1.0]).unwrap_err().name(),
            "NonMonotoneGrid"
        );
    }

    #[test]
    fn moments_reproduce_x0_p0() {
        // Exact oscillator identity on a quadratic; quadrature-limited
        // agreement for the soft-Coulomb envelope states.
        let model = make_harmonic_approx(2.0).unwrap();
        let sol = solve_level(&model, 0, DEFAULT_TOL).unwrap();
        let sample = sample_wavefunction(&sol, &default_grid(&sol)).unwrap();
        let (x2, p2) = moment_check(&sample, &sol).unwrap();
        assert_relative_eq!(x2, sol.x0 * sol.x0, epsilon = 1e-6, max_relative = 1e-6);
        assert_relative_eq!(p2, sol.p0 * sol.p0, epsilon = 1e-6, max_relative = 1e-6);

        for (d, n) in [(2.0, 3), (0.5, 0)] {
            let model = make_soft_coulomb(d).unwrap();
            let sol = solve_level(&model, n, DEFAULT_TOL).unwrap();
            let sample = sample_wavefunction(&sol, &default_grid(&sol)).unwrap();
            let (x2, p2) = moment_check(&sample, &sol).unwrap();
            assert_relative_eq!(x2, sol.x0 * sol.x0, max_relative = 1e-4);
            assert_relative_eq!(p2, sol.p0 * sol.p0, max_relative = 1e-4);
        }
    }

    #[test]
    fn narrow_grid_is_rejected() {
        let model = make_soft_coulomb(2.0).unwrap();
        let sol = solve_level(&model, 0, DEFAULT_TOL).unwrap();
        let span = 2.0 / sol.lambda();
        let grid: Vec<f64> = (0..501)
            .map(|i| -span + 2.0 * span * i as f64 / 500.0)
            .collect();
        let sample = sample_wavefunction(&sol, &grid).unwrap();
        assert_eq!(
            moment_check(&sample, &sol).unwrap_err().name(),
            "GridTooNarrow"
        );
    }

    #[test]
    fn orthonormal_family_at_fixed_lambda() {
        // Trapezoid <m|n> = delta_mn within 1e-6 for m, n <= 8.
        let lambda = 0.7;
        let span = 14.0 / lambda;
        let grid: Vec<f64> = (0..4001)
            .map(|i| -span + 2.0 * span * i as f64 / 4000.0)
            .collect();
        let psi = |m: usize, x: f64| {
            (lambda * lambda / std::f64::consts::PI).powf(0.25)
                * hermite_normalized(m, lambda * x)
                * (-0.5 * lambda * lambda * x * x).exp()
        };
        for m in 0..=8 {
            for n in m..=8 {
                let prod: Vec<f64> = grid.iter().map(|&x| psi(m, x) * psi(n, x)).collect();
                let overlap = trapezoid(&grid, &prod);
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!(
                    (overlap - expected).abs() < 1e-6,
                    "<{m}|{n}> = {overlap}"
                );
            }
        }
    }

    #[test]
    fn tails_decay_as_gaussians() {
        // log|psi| / x² approaches -lambda²/2 in the far tail.
        let model = make_soft_coulomb(2.0).unwrap();
        let sol = solve_level(&model, 0, DEFAULT_TOL).unwrap();
        let lambda = sol.lambda();
        for &mult in &[4.0, 5.0] {
            let x = mult / lambda;
            let psi = eval_wavefunction(&sol, x).abs();
            let rate = psi.ln() / (x * x);
            // Prefactor corrections fall off like ln(x)/x².
            assert!(
                (rate + 0.5 * lambda * lambda).abs() < 0.05 * lambda * lambda,
                "x = {x}: rate {rate}"
            );
        }
    }
}
