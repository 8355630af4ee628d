//! How strongly the pull-in voltage of a bridge depends on the assumed
//! residual stress — the curve a designer consults before trusting any
//! single-point prediction.
//!
//! The scan runs the stress points in parallel (each one is an
//! independent voltage sweep); set `PULLIN_THREADS` to cap the pool.
//!
//! Run with `cargo run --release --example stress_sensitivity`.

use std::error::Error;

use pullin::domain::catalog::lookup;
use pullin::solver::{prestress_sensitivity, SolverConfig};
use pullin::units::{mpa_to_pa, pa_to_mpa};

fn main() -> Result<(), Box<dyn Error>> {
    let spec = lookup("geom5/sample1")?.specimen;
    let cfg = SolverConfig::default();

    let sigmas_mpa: Vec<f64> = (0..=10).map(|i| 5.0 * i as f64).collect();
    let sigmas_pa: Vec<f64> = sigmas_mpa.iter().map(|&m| mpa_to_pa(m)).collect();
    let rows = prestress_sensitivity(&spec, &sigmas_pa, &cfg)?;

    println!("{} (E = 80 GPa assumed)\n", spec.name);
    println!(
        "{:>12} {:>10} {:>14}",
        "sigma0_MPa", "V_PI (V)", "dV/dsigma"
    );
    let mut prev: Option<(f64, f64)> = None;
    for (sigma, v_pi) in &rows {
        let slope = match prev {
            Some((s0, v0)) => format!("{:>14.3}", (v_pi - v0) / (pa_to_mpa(*sigma) - s0)),
            None => format!("{:>14}", "-"),
        };
        println!("{:>12.1} {:>10.3} {}", pa_to_mpa(*sigma), v_pi, slope);
        prev = Some((pa_to_mpa(*sigma), *v_pi));
    }

    println!(
        "\nThe curve is steep and sub-linear: at this geometry a 5 MPa error in\n\
         the assumed stress moves the prediction by several volts, which is why\n\
         the inverse problem (see `identify_stress`) is well conditioned."
    );
    Ok(())
}
