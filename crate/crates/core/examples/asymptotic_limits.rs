//! The two closed-form limits of the soft-Coulomb envelope energies: the
//! bias drops out at large n (Coulomb-like -2/(2n+1)²), and small-n levels
//! of a wide well reduce to the harmonic spectrum.
//!
//!     cargo run --example asymptotic_limits

use et_spectra::envelope::{asymptotic_energy, solve_level, AsymptoticRegime, DEFAULT_TOL};
use et_spectra::model::make_soft_coulomb;

fn main() -> et_spectra::Result<()> {
    println!("large-n limit at D = 1:");
    let model = make_soft_coulomb(1.0)?;
    for n in [5, 10, 20, 40] {
        let sol = solve_level(&model, n, DEFAULT_TOL)?;
        let asym = asymptotic_energy(AsymptoticRegime::LargeN, n, 1.0);
        println!(
            "  n={n:>2}: E = {:+.8}  vs  -2/(2n+1)² = {asym:+.8}  (rel gap {:.1e})",
            sol.energy,
            ((sol.energy - asym) / asym).abs()
        );
    }

    println!("\nsmall-n limit at growing D (level 0):");
    for d in [2.0, 5.0, 25.0] {
        let model = make_soft_coulomb(d)?;
        let sol = solve_level(&model, 0, DEFAULT_TOL)?;
        let ho = asymptotic_energy(AsymptoticRegime::SmallNLargeD, 0, d);
        println!(
            "  D={d:>4}: E = {:+.8}  vs  (n+1/2)/D^(3/2) - 1/D = {ho:+.8}  (rel gap {:.1e})",
            sol.energy,
            ((sol.energy - ho) / ho).abs()
        );
    }
    println!("\nboth gaps shrink toward their limits, and the envelope stays below the harmonic bound");
    Ok(())
}
