//! Pull-in of a clamped-clamped bridge carrying its published residual
//! stress, compared against the measured collapse window.
//!
//! A bridge cannot relax the biaxial film stress it was plated with, so
//! it sits flat but pre-tensioned. The tension stiffens the transverse
//! response and pushes pull-in to a much higher voltage than the bare
//! bending stiffness would give — which is exactly what makes pull-in a
//! usable stress probe.
//!
//! The sweep also shows the classic shape of the instability: the
//! midspan deflection grows a little faster than V² until, at about a
//! third of the gap, the electrostatic softening outruns the structure
//! and the equilibrium disappears.
//!
//! Run with `cargo run --example bridge_pullin`.

use std::error::Error;

use pullin::domain::catalog::lookup;
use pullin::solver::{sweep_and_bracket, SolverConfig, SweepOutcome};
use pullin::units::{m_to_um, pa_to_mpa};

fn main() -> Result<(), Box<dyn Error>> {
    let entry = lookup("geom5/sample1")?;
    let sigma0 = entry
        .published_prestress
        .expect("bridges carry a published residual stress");
    let spec = entry.specimen.with_residual_stress(sigma0);

    println!(
        "{}: L = {:.1} um, g0 = {:.3} um, sigma0 = {:.0} MPa (published)",
        spec.name,
        m_to_um(spec.length),
        m_to_um(spec.gap0),
        pa_to_mpa(sigma0),
    );

    let cfg = SolverConfig::default();
    let outcome = sweep_and_bracket(&spec, &cfg)?;
    let p = match outcome {
        SweepOutcome::PullIn(p) => p,
        SweepOutcome::NoPullIn { v_max, .. } => {
            return Err(format!("still stable at {v_max} V — raise v_max").into())
        }
    };

    // The last few stable points of the upward march.
    println!("\n{:>8} {:>16} {:>12}", "V", "midspan (um)", "min gap (um)");
    let marched: Vec<_> = p
        .trace
        .iter()
        .filter(|r| r.converged && r.voltage <= p.v_low)
        .collect();
    for r in marched.iter().rev().take(6).rev() {
        println!(
            "{:>8.3} {:>16.4} {:>12.4}",
            r.voltage,
            m_to_um(r.deflection),
            m_to_um(r.min_gap)
        );
    }

    let last = marched.last().expect("at least the start converged");
    println!(
        "\npull-in bracket [{:.3}, {:.3}] V -> V_PI = {:.3} V (measured {:.0}-{:.0} V)",
        p.v_low, p.v_high, p.v_pi, entry.measured_vpi.0, entry.measured_vpi.1
    );
    println!(
        "deflection at the last stable voltage: {:.3} um = {:.3} of the gap\n\
         (a rigid plate folds at exactly 1/3; a bridge's midspan runs a bit\n\
         deeper because the rest of the span lags its deepest point)",
        m_to_um(last.deflection),
        last.deflection / spec.gap0,
    );
    Ok(())
}
