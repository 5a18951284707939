//! Grid-refinement behavior of the oracle. On a well analytic in a strip
//! (soft-Coulomb) the eigenvalues converge spectrally; on a well with a
//! boundary singularity (Hulthen) plain sampling is second order and the
//! Richardson ladder recovers the digits.
//!
//!     cargo run --example fgh_convergence

use et_spectra::bounds::hulthen_exact;
use et_spectra::fgh::{convergence_sweep, refined_eigenvalue, GridSpec};
use et_spectra::model::{make_hulthen, make_soft_coulomb};

fn main() -> et_spectra::Result<()> {
    let model = make_soft_coulomb(0.5)?;
    let base = GridSpec::new(129, 12.0, model.domain())?;
    println!("soft-coulomb D=0.5, refinement ladder (levels 0..2):");
    let sweep = convergence_sweep(&model, &base, 3)?;
    for (r, step) in sweep.steps.iter().enumerate() {
        let deltas = step
            .deltas
            .as_ref()
            .map(|d| {
                d.iter()
                    .map(|x| format!("{x:.1e}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_else(|| "-".into());
        println!(
            "  r{r}: {:>5} points, x_max {:>5}: E0 = {:+.10}  deltas: {deltas}",
            step.spec.n_points, step.spec.x_max, step.eigenvalues[0]
        );
    }
    let final_est = sweep.final_result.convergence_estimate.unwrap();
    println!("  final convergence estimate: {:.2e}\n", final_est[0]);

    let hulthen = make_hulthen(1.0, 0.2)?;
    let exact = hulthen_exact(2, 1.0, 0.2)?;
    let base = GridSpec::new(257, 14.0, hulthen.domain())?;
    let refined = refined_eigenvalue(&hulthen, &base, 2)?;
    println!("hulthen k=1 a=0.2, level 2 (closed form {exact:.9}):");
    for (i, raw) in refined.raw.iter().enumerate() {
        println!("  grid {i}: E = {raw:+.9}  (error {:+.2e})", raw - exact);
    }
    println!(
        "  ladder value: {:+.9}  (error {:+.2e}, certificate {:.1e})",
        refined.energy,
        refined.energy - exact,
        refined.certificate
    );
    Ok(())
}
