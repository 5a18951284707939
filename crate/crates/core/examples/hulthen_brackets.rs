//! The exactly solvable half-line trio: the Hulthen well is squeezed between
//! the half-line Coulomb well (below) and the exponential well (above), and
//! all three spectra are known in closed form. The grid oracle lands inside
//! every bracket, and its refined eigenvalues reproduce the closed form.
//!
//!     cargo run --example hulthen_brackets

use et_spectra::bounds::{exp_well_bound_states, hulthen_bound_states, hulthen_bracket};
use et_spectra::fgh::{refined_eigenvalue, GridSpec};
use et_spectra::model::make_hulthen;

fn main() -> et_spectra::Result<()> {
    let (k, a) = (1.0, 0.2);
    let model = make_hulthen(k, a)?;
    println!(
        "bound states: hulthen {}, exp-well {}, coulomb-half inf",
        hulthen_bound_states(k, a),
        exp_well_bound_states(k, a),
    );
    println!(
        "{:>2}  {:>12}  {:>12}  {:>12}  {:>12}",
        "n", "E_lower", "E_exact", "E_fgh*", "E_upper"
    );
    for (n, x_max) in [(0, 4.0), (1, 8.0), (2, 14.0)] {
        let br = hulthen_bracket(n, k, a)?;
        // Modest ladder for a quick run; the acceptance suite uses a denser
        // one to reach ~1e-6.
        let base = GridSpec::new(257, x_max, model.domain())?;
        let refined = refined_eigenvalue(&model, &base, n)?;
        println!(
            "{n:>2}  {:>12.7}  {:>12.7}  {:>12.7}  {:>12.7}",
            br.lower, br.exact, refined.energy, br.upper
        );
        assert!(br.lower <= refined.energy && refined.energy <= br.upper);
        assert!((refined.energy - br.exact).abs() < 1e-3);
    }
    println!("\n(E_fgh* is the grid-ladder value; it matches the closed form)");
    Ok(())
}
