//! Tangent quadratic envelopes of the soft-Coulomb well for the four lowest
//! levels. Each envelope touches the potential at its own mean distance x0
//! and lies above it everywhere else, which is what makes the per-level
//! oscillator energies upper bounds.
//!
//!     cargo run --example envelope_curves

use et_spectra::envelope::{build_envelopes, envelope_expectation, solve_level, DEFAULT_TOL};
use et_spectra::model::make_soft_coulomb;

fn main() -> et_spectra::Result<()> {
    let model = make_soft_coulomb(2.0)?;
    println!("{:>2}  {:>10}  {:>12}  {:>12}  {:>10}", "n", "x0", "V(x0)", "V~(0)-V(0)", "E");
    for n in 0..4 {
        let sol = solve_level(&model, n, DEFAULT_TOL)?;
        let env = build_envelopes(&model, &sol);

        // Tangency at x0, domination elsewhere.
        let tangency = (env.v_tilde(sol.x0) - model.v(sol.x0)).abs();
        assert!(tangency < 1e-12);
        let mut worst = 0.0_f64;
        for i in 0..=2000 {
            let x = -5.0 * sol.x0 + 10.0 * sol.x0 * i as f64 / 2000.0;
            worst = worst.min(env.v_tilde(x) - model.v(x));
        }
        assert!(worst >= -1e-12, "envelope dipped below the potential");

        // The oscillator expectation of the envelope Hamiltonian is the
        // envelope energy itself.
        assert!((envelope_expectation(&sol, &env) - sol.energy).abs() < 1e-12);

        println!(
            "{n:>2}  {:>10.5}  {:>12.7}  {:>12.7}  {:>10.6}",
            sol.x0,
            model.v(sol.x0),
            env.v_tilde(0.0) - model.v(0.0),
            sol.energy,
        );
    }
    println!("\neach envelope is tangent at its x0 and strictly above the well elsewhere");
    Ok(())
}
