//! Level-by-level energies of the soft-Coulomb well at D = 2 from four
//! engines: the envelope solver, the grid oracle, and the two closed-form
//! comparison spectra. The envelope values are upper bounds; the Coulomb
//! values bound odd levels from below.
//!
//!     cargo run --example spectrum_table

use et_spectra::bounds::{coulomb_lower_for_level, harmonic_upper};
use et_spectra::envelope::{solve_level, DEFAULT_TOL};
use et_spectra::fgh::{fgh_solve, GridSpec};
use et_spectra::model::make_soft_coulomb;

fn main() -> et_spectra::Result<()> {
    let d = 2.0;
    let levels = 10;
    let model = make_soft_coulomb(d)?;
    let spec = GridSpec::new(769, 160.0, model.domain())?;
    let oracle = fgh_solve(&model, &spec, levels)?;

    println!("soft-coulomb, D = {d}");
    println!("{:>2}  {:>13}  {:>13}  {:>13}  {:>13}", "n", "E_et", "E_fgh", "E_coulomb", "E_ho");
    for n in 0..levels {
        let et = solve_level(&model, n, DEFAULT_TOL)?;
        let coulomb = coulomb_lower_for_level(n)
            .map(|e| format!("{e:>13.8}"))
            .unwrap_or_else(|| format!("{:>13}", "-"));
        println!(
            "{n:>2}  {:>13.8}  {:>13.8}  {coulomb}  {:>13.8}",
            et.energy,
            oracle.eigenvalues[n],
            harmonic_upper(n, d)?,
        );
        assert!(et.energy >= oracle.eigenvalues[n], "envelope bound violated");
    }
    println!("\nevery E_et sits above E_fgh (upper bound), every E_coulomb below (odd sector)");
    Ok(())
}
